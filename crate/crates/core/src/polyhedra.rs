//! Regular subdivisions of Δ-matroid polytopes: lifted points, lower
//! hulls, cell dimensions, facet adjacency and an exact edge oracle.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_e, format_rational, parse_rational, rat, Rational, Subset};
use crate::delta_matroid::{is_delta_matroid, is_even, DeltaMatroid, DirectionVector};
use crate::error::{Error, Result};
use crate::linalg::{rank, rref, solve, Matrix};
use crate::lp::{maximize, LpOutcome};

/// Heights `w_λ` on the bases of a Δ-matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    n: usize,
    values: BTreeMap<Subset, Rational>,
}

impl WeightVector {
    pub fn new(n: usize, values: BTreeMap<Subset, Rational>) -> Self {
        WeightVector { n, values }
    }

    pub fn zero(m: &DeltaMatroid) -> Self {
        WeightVector {
            n: m.n(),
            values: m.bases().iter().map(|&b| (b, Rational::zero())).collect(),
        }
    }

    /// Weights on all of `E(n)` read off in canonical order.
    pub fn from_e_vector(n: usize, v: &[Rational]) -> Result<Self> {
        let e = enumerate_e(n)?;
        if e.len() != v.len() {
            return Err(Error::WrongSize {
                got: v.len(),
                expected: e.len(),
            });
        }
        Ok(WeightVector {
            n,
            values: e.into_iter().zip(v.iter().cloned()).collect(),
        })
    }

    /// `Σ_{λ ∈ S} f_λ` on `E(n)`.
    pub fn indicator(n: usize, support: &[Subset]) -> Result<Self> {
        let e = enumerate_e(n)?;
        Ok(WeightVector {
            n,
            values: e
                .into_iter()
                .map(|s| (s, if support.contains(&s) { Rational::one() } else { Rational::zero() }))
                .collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> Option<&Rational> {
        self.values.get(&s)
    }

    pub fn values(&self) -> &BTreeMap<Subset, Rational> {
        &self.values
    }

    /// Restricts to the bases of `m`; fails if one is missing.
    pub fn restrict(&self, m: &DeltaMatroid) -> Result<WeightVector> {
        let mut values = BTreeMap::new();
        for &b in m.bases() {
            values.insert(b, self.values.get(&b).cloned().ok_or(Error::WeightKeys)?);
        }
        Ok(WeightVector { n: self.n, values })
    }

    /// `w + ⟨u, e_λ⟩`.
    pub fn shear(&self, u: &DirectionVector) -> WeightVector {
        WeightVector {
            n: self.n,
            values: self.values.iter().map(|(&s, x)| (s, x + u.pair(s))).collect(),
        }
    }

    /// JSON object keyed by subset strings with `"p/q"` values.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .values
            .iter()
            .map(|(s, x)| (s.to_string(), serde_json::Value::String(format_rational(x))))
            .collect();
        serde_json::Value::Object(map)
    }

    /// Parses a JSON object keyed by subset strings; values may be strings
    /// or integers. Unlisted members of `E(n)` get weight 0.
    pub fn from_json(n: usize, v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Invalid("weights must be a JSON object".into()))?;
        let mut values: BTreeMap<Subset, Rational> =
            enumerate_e(n)?.into_iter().map(|s| (s, Rational::zero())).collect();
        for (k, x) in obj {
            let s: Subset = k.parse()?;
            if !values.contains_key(&s) {
                return Err(Error::WeightKeys);
            }
            let r = match x {
                serde_json::Value::String(t) => parse_rational(t)?,
                serde_json::Value::Number(num) => parse_rational(&num.to_string())?,
                _ => return Err(Error::ParseRational(x.to_string())),
            };
            values.insert(s, r);
        }
        Ok(WeightVector { n, values })
    }
}

/// A cell of a subdivision, stored by its vertex label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub label: Vec<Subset>,
}

impl Cell {
    pub fn new<I: IntoIterator<Item = Subset>>(label: I) -> Self {
        let mut label: Vec<Subset> = label.into_iter().collect();
        label.sort();
        label.dedup();
        Cell { label }
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.label.binary_search(&s).is_ok()
    }

    pub fn intersection(&self, other: &Cell) -> Cell {
        Cell {
            label: self.label.iter().filter(|s| other.contains(**s)).copied().collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Cell) -> bool {
        self.label.iter().all(|s| other.contains(*s))
    }

    pub fn as_matroid(&self, n: usize) -> Result<DeltaMatroid> {
        DeltaMatroid::new(n, self.label.iter().copied())
    }

    pub fn strings(&self) -> Vec<String> {
        self.label.iter().map(|s| s.to_string()).collect()
    }
}

/// Dimension of the affine hull of `{e_λ : λ ∈ label}`.
pub fn cell_dimension(n: usize, c: &Cell) -> usize {
    affine_dimension(n, &c.label)
}

fn affine_dimension(n: usize, pts: &[Subset]) -> usize {
    let Some(first) = pts.first() else {
        return 0;
    };
    let base = first.indicator(n);
    let diffs: Matrix = pts[1..]
        .iter()
        .map(|s| s.indicator(n).iter().zip(&base).map(|(a, b)| rat(a - b)).collect())
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs)
    }
}

/// Exchange axiom plus evenness.
pub fn exchange_oracle(n: usize, c: &Cell) -> bool {
    is_delta_matroid(n, &c.label).unwrap_or(false) && is_even(&c.label)
}

/// Edges of `conv{e_λ : λ ∈ label}`. A pair is an edge iff its midpoint
/// has no convex representation putting weight on another vertex.
pub fn edges_of_cell(c: &Cell) -> Vec<(Subset, Subset)> {
    let mut out = Vec::new();
    for (ia, &a) in c.label.iter().enumerate() {
        for &b in &c.label[ia + 1..] {
            if is_edge(&c.label, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn is_edge(label: &[Subset], a: Subset, b: Subset) -> bool {
    let d = a.sym_diff(b);
    // Any representation of the midpoint stays in the smallest cube face
    // containing a and b.
    let fixed = a.difference(d);
    let others: Vec<Subset> = label
        .iter()
        .copied()
        .filter(|&s| s != a && s != b && s.difference(d) == fixed)
        .collect();
    if others.is_empty() {
        return true;
    }
    let coords: Vec<usize> = d.elements().collect();
    let pts: Vec<Subset> = [a, b].into_iter().chain(others.iter().copied()).collect();
    let two = rat(2);
    let mut rows: Matrix = coords
        .iter()
        .map(|&i| {
            pts.iter()
                .map(|s| if s.contains(i) { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    let mut rhs: Vec<Rational> = coords
        .iter()
        .map(|&i| {
            let k = a.contains(i) as i64 + b.contains(i) as i64;
            rat(k) / &two
        })
        .collect();
    rows.push(vec![Rational::one(); pts.len()]);
    rhs.push(Rational::one());
    let mut cost = vec![Rational::one(); pts.len()];
    cost[0] = Rational::zero();
    cost[1] = Rational::zero();
    match maximize(&rows, &rhs, &cost) {
        LpOutcome::Optimal { value, .. } => value.is_zero(),
        _ => unreachable!("the midpoint representation is always feasible and bounded"),
    }
}

/// Every edge of the cell is parallel to some `±e_i ± e_j` with `i ≠ j`.
pub fn edge_oracle(c: &Cell) -> bool {
    edges_of_cell(c).iter().all(|(a, b)| a.sym_diff(*b).len() == 2)
}

/// A regular (or transcribed) subdivision of `Q_M`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    matroid: DeltaMatroid,
    weights: Option<WeightVector>,
    dim: usize,
    cells: Vec<Cell>,
    facet_pairs: Vec<(usize, usize, Cell)>,
}

impl Subdivision {
    /// Builds the subdivision from given maximal cells in the given order.
    pub fn from_cells(matroid: DeltaMatroid, cells: Vec<Cell>) -> Self {
        let n = matroid.n();
        let dim = affine_dimension(n, matroid.bases());
        let facet_pairs = facet_pairs(n, dim, &cells);
        Subdivision {
            matroid,
            weights: None,
            dim,
            cells,
            facet_pairs,
        }
    }

    pub fn matroid(&self) -> &DeltaMatroid {
        &self.matroid
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    pub fn weights(&self) -> Option<&WeightVector> {
        self.weights.as_ref()
    }

    /// Dimension of `Q_M`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn facet_pairs(&self) -> &[(usize, usize, Cell)] {
        &self.facet_pairs
    }

    /// Edges of the adjacency graph as sorted index pairs.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        self.facet_pairs.iter().map(|(i, j, _)| (*i, *j)).collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .facet_pairs
            .iter()
            .filter_map(|&(i, j, _)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.facet_pairs.iter().any(|(x, y, _)| *x == i && *y == j)
    }

    /// Every maximal cell passes the exchange and evenness checks.
    pub fn is_matroidal(&self) -> bool {
        self.cells.iter().all(|c| exchange_oracle(self.n(), c))
    }

    /// Union of cell labels equals `B(M)`.
    pub fn covers(&self) -> bool {
        self.matroid.bases().iter().all(|&b| self.cells.iter().any(|c| c.contains(b)))
    }

    /// Face of the subdivision selected by `u`: `argmin w_λ + ⟨u, e_λ⟩`.
    /// Requires weights.
    pub fn select_cell(&self, u: &DirectionVector) -> Result<Cell> {
        let w = self.weights.as_ref().ok_or(Error::WeightKeys)?;
        select_cell(&self.matroid, w, u)
    }

    /// Maximal-cell index of `select_cell` when it is a maximal cell.
    pub fn cell_index(&self, c: &Cell) -> Option<usize> {
        self.cells.iter().position(|x| x == c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n(),
            "cells": self.cells.iter().map(|c| c.strings()).collect::<Vec<_>>(),
            "edges": self.graph_edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        })
    }

    /// Graphviz rendering of the adjacency graph.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        for (i, c) in self.cells.iter().enumerate() {
            let _ = writeln!(s, "  M{i} [label=\"M{i}: {}\"];", c.strings().join(","));
        }
        for (i, j) in self.graph_edges() {
            let _ = writeln!(s, "  M{i} -- M{j};");
        }
        s.push_str("}\n");
        s
    }
}

fn facet_pairs(n: usize, dim: usize, cells: &[Cell]) -> Vec<(usize, usize, Cell)> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    for i in 0..cells.len() {
        for j in (i + 1)..cells.len() {
            let inter = cells[i].intersection(&cells[j]);
            if !inter.label.is_empty() && cell_dimension(n, &inter) == dim - 1 {
                out.push((i, j, inter));
            }
        }
    }
    out
}

/// `argmin_λ (w_λ + ⟨u, e_λ⟩)` over `B(M)`.
pub fn select_cell(m: &DeltaMatroid, w: &WeightVector, u: &DirectionVector) -> Result<Cell> {
    let vals: Vec<Rational> = m
        .bases()
        .iter()
        .map(|&b| w.get(b).cloned().ok_or(Error::WeightKeys).map(|x| x + u.pair(b)))
        .collect::<Result<_>>()?;
    let min = vals.iter().min().cloned().ok_or(Error::EmptyBasisFamily)?;
    Ok(Cell::new(
        m.bases().iter().zip(&vals).filter(|(_, v)| **v == min).map(|(b, _)| *b),
    ))
}

/// Regular subdivision of `Q_M` induced by `w`, via the lower hull of the
/// lifted points. Cells are sorted by label.
pub fn regular_subdivision(m: &DeltaMatroid, w: &WeightVector) -> Result<Subdivision> {
    let n = m.n();
    let w = w.restrict(m)?;
    let bases = m.bases();
    let npts = bases.len();
    if npts > 32 {
        return Err(Error::Invalid("at most 32 bases supported".into()));
    }

    // Chart on the affine hull: pivot coordinates of the difference space.
    let base = bases[0].indicator(n);
    let diffs: Matrix = bases
        .iter()
        .map(|s| s.indicator(n).iter().zip(&base).map(|(a, b)| rat(a - b)).collect())
        .collect();
    let (_, pivots) = rref(&diffs);
    let d = pivots.len();

    // Heights scaled to integers do not change the subdivision.
    let heights: Vec<Rational> = bases.iter().map(|b| w.get(*b).unwrap().clone()).collect();

    let cells = if d == 0 || heights.iter().all(|h| *h == heights[0]) {
        vec![Cell::new(bases.iter().copied())]
    } else {
        // Rows [x_λ | 1] in the chart.
        let rows: Matrix = bases
            .iter()
            .map(|s| {
                let mut r: Vec<Rational> = pivots
                    .iter()
                    .map(|&p| if s.contains(p) { Rational::one() } else { Rational::zero() })
                    .collect();
                r.push(Rational::one());
                r
            })
            .collect();
        lower_facets(&rows, &heights, d)
            .into_iter()
            .map(|mask| Cell::new((0..npts).filter(|k| mask >> k & 1 == 1).map(|k| bases[k])))
            .collect()
    };
    let mut cells = cells;
    cells.sort();
    let facet_pairs = facet_pairs(n, d, &cells);
    Ok(Subdivision {
        matroid: m.clone(),
        weights: Some(w),
        dim: d,
        cells,
        facet_pairs,
    })
}

/// Contact sets (as bitmasks) of the lower facets of the lifted points.
fn lower_facets(rows: &Matrix, heights: &[Rational], d: usize) -> Vec<u32> {
    let npts = rows.len();
    let k = d + 1;
    let mut found: Vec<u32> = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > npts {
        return found;
    }
    loop {
        let mask: u32 = idx.iter().fold(0, |m, &i| m | (1 << i));
        if !found.iter().any(|f| f & mask == mask) {
            let a: Matrix = idx.iter().map(|&i| rows[i].clone()).collect();
            let b: Vec<Rational> = idx.iter().map(|&i| heights[i].clone()).collect();
            if let Some(coef) = solve(&a, &b) {
                let mut contact = 0u32;
                let mut below = false;
                for p in 0..npts {
                    let val: Rational = rows[p].iter().zip(&coef).map(|(x, c)| x * c).sum();
                    let slack = &heights[p] - val;
                    if slack.is_negative() {
                        below = true;
                        break;
                    }
                    if slack.is_zero() {
                        contact |= 1 << p;
                    }
                }
                if !below {
                    found.push(contact);
                }
            }
        }
        // Next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return found;
            }
            i -= 1;
            if idx[i] != i + npts - k {
                break;
            }
            if i == 0 {
                return found;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(b: &[&str]) -> Cell {
        Cell::new(b.iter().map(|s| s.parse::<Subset>().unwrap()))
    }

    fn delta4() -> DeltaMatroid {
        DeltaMatroid::full(4).unwrap()
    }

    fn sub(s: &[&str]) -> Vec<Subset> {
        s.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn trivial_subdivision() {
        for n in 1..=5 {
            let m = DeltaMatroid::full(n).unwrap();
            let s = regular_subdivision(&m, &WeightVector::zero(&m)).unwrap();
            assert_eq!(s.cells().len(), 1);
            assert!(s.is_matroidal() && s.covers());
        }
        assert_eq!(regular_subdivision(&delta4(), &WeightVector::zero(&delta4())).unwrap().dim(), 4);
        assert_eq!(
            regular_subdivision(&DeltaMatroid::full(5).unwrap(), &WeightVector::zero(&DeltaMatroid::full(5).unwrap()))
                .unwrap()
                .dim(),
            5
        );
    }

    #[test]
    fn single_ray_in_delta4() {
        let w = WeightVector::indicator(4, &sub(&["03", "12"])).unwrap();
        let s = regular_subdivision(&delta4(), &w).unwrap();
        let expected = vec![
            cell(&["", "01", "02", "03", "13", "23", "0123"]),
            cell(&["", "01", "02", "12", "13", "23", "0123"]),
        ];
        let mut got = s.cells().to_vec();
        got.sort();
        let mut exp = expected.clone();
        exp.sort();
        assert_eq!(got, exp);
        assert_eq!(s.graph_edges().len(), 1);
        for c in s.cells() {
            assert_eq!(cell_dimension(4, c), 4);
        }
    }

    #[test]
    fn select_cell_examples() {
        let w = WeightVector::indicator(4, &sub(&["03", "12"])).unwrap();
        let s = regular_subdivision(&delta4(), &w).unwrap();
        // Minus the slope of the lower facet through the cell without 03.
        let h = crate::combinatorics::ratio(1, 2);
        let u = DirectionVector(vec![h.clone(), -h.clone(), -h.clone(), h.clone()]);
        let c = s.select_cell(&u).unwrap();
        assert_eq!(c, cell(&["", "01", "02", "12", "13", "23", "0123"]));
        assert!(s.cell_index(&c).is_some());
        // A small u positive on coordinate 3 selects a lower-dimensional face.
        let eps = crate::combinatorics::ratio(1, 10);
        let u = DirectionVector(vec![Rational::zero(), Rational::zero(), Rational::zero(), eps]);
        let c = s.select_cell(&u).unwrap();
        assert_eq!(c, cell(&["", "01", "02"]));
        assert!(s.cells().iter().filter(|m| c.is_subset_of(m)).count() == 2);

        let mut vals = BTreeMap::new();
        for (k, x) in enumerate_e(4).unwrap().into_iter().enumerate() {
            vals.insert(x, rat(k as i64 + 1));
        }
        let w = WeightVector::new(4, vals);
        let c = select_cell(&delta4(), &w, &DirectionVector::zero(4)).unwrap();
        assert_eq!(c, cell(&[""]));

        let z = WeightVector::zero(&delta4());
        let u = DirectionVector::from_i64(&[3, -1, 2, 5]);
        let c = select_cell(&delta4(), &z, &u).unwrap();
        assert_eq!(c.label, delta4().face_matroid(&u).bases());
    }

    #[test]
    fn dimensions() {
        assert_eq!(cell_dimension(4, &cell(&["01"])), 0);
        assert_eq!(cell_dimension(4, &cell(&["", "01"])), 1);
    }

    #[test]
    fn edges() {
        let e = edges_of_cell(&cell(&["", "01"]));
        assert_eq!(e, vec![(Subset::EMPTY, "01".parse().unwrap())]);
        let k = cell(&["0", "1", "012", "013", "014", "034", "134", "01234"]);
        assert!(edges_of_cell(&k).contains(&("0".parse().unwrap(), "1".parse().unwrap())));
        assert!(edge_oracle(&k) && exchange_oracle(5, &k));
        // {∅, 01, 02, 12} is a tetrahedron; {∅, 01, 23, 0123} a square.
        assert_eq!(edges_of_cell(&cell(&["", "01", "02", "12"])).len(), 6);
        let es = edges_of_cell(&cell(&["", "01", "23", "0123"]));
        assert_eq!(es.len(), 4);
        assert!(!es.contains(&(Subset::EMPTY, "0123".parse().unwrap())));
        // A non-matroidal cell: segment direction e0+e1+e2+e3.
        let bad = cell(&["", "0123"]);
        assert!(!edge_oracle(&bad) && !exchange_oracle(4, &bad));
    }

    #[test]
    fn weight_json_round_trip() {
        let w = WeightVector::indicator(4, &sub(&["03", "12"])).unwrap();
        let back = WeightVector::from_json(4, &w.to_json()).unwrap();
        assert_eq!(w, back);
    }
}
