//! Families of maximal cells of a matroid subdivision, affine coordinate
//! presentations of their strata, and the smoothness certifier.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::combinatorics::{enumerate_e, format_rational, Subset};
use crate::delta_matroid::DeltaMatroid;
use crate::error::{Error, Result};
use crate::polyhedra::{Cell, Subdivision};
use crate::wick::{pfaffian, Poly, SkewMatrix};

/// A nonempty set of maximal cells of a subdivision, by index.
#[derive(Clone, Debug)]
pub struct CellFamily<'a> {
    sub: &'a Subdivision,
    members: Vec<usize>,
}

impl<'a> CellFamily<'a> {
    pub fn new(sub: &'a Subdivision, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::Invalid("empty cell family".into()));
        }
        if let Some(&bad) = members.iter().find(|&&i| i >= sub.cells().len()) {
            return Err(Error::Invalid(format!("cell index {bad} out of range")));
        }
        Ok(CellFamily { sub, members })
    }

    /// Every maximal cell.
    pub fn all(sub: &'a Subdivision) -> Self {
        CellFamily {
            sub,
            members: (0..sub.cells().len()).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn subdivision(&self) -> &Subdivision {
        self.sub
    }

    fn cells(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.members.iter().map(|&i| &self.sub.cells()[i])
    }

    /// `⋃_Q B(M_Q)`.
    pub fn basis_union(&self) -> BTreeSet<Subset> {
        self.cells().flat_map(|c| c.label.iter().copied()).collect()
    }

    pub fn basis_covering(&self) -> bool {
        let union = self.basis_union();
        self.sub.matroid().bases().iter().all(|b| union.contains(b))
    }

    /// `⋂_Q B(M_Q)`, in canonical order.
    pub fn common_bases(&self) -> Vec<Subset> {
        let mut it = self.cells();
        let first = it.next().expect("family is nonempty");
        let mut common: Vec<Subset> = first.label.clone();
        for c in it {
            common.retain(|b| c.contains(*b));
        }
        common.sort();
        common
    }

    /// The least common basis, if any.
    pub fn basis_intersecting(&self) -> Option<Subset> {
        self.common_bases().first().copied()
    }

    /// Cells of the family having `beta` as a basis.
    pub fn cells_with(&self, beta: Subset) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&i| self.sub.cells()[i].contains(beta))
            .collect()
    }

    /// Whether the cells of the family containing `beta` induce a
    /// connected subgraph of the adjacency graph.
    pub fn connected_for(&self, beta: Subset) -> bool {
        let verts = self.cells_with(beta);
        let Some(&start) = verts.first() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for w in self.sub.neighbors(v) {
                if verts.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == verts.len()
    }

    pub fn basis_connecting(&self) -> bool {
        self.basis_union().into_iter().all(|b| self.connected_for(b))
    }

    /// Affine presentation after twisting so that `common` becomes `[n]`.
    pub fn affine_presentation(&self, common: Subset) -> Result<AffinePresentation> {
        let n = self.sub.n();
        if self.cells().any(|c| !c.contains(common)) {
            return Err(Error::NotCommonBasis(common.to_string()));
        }
        let twist = common.complement(n);
        let twisted: Vec<DeltaMatroid> = self
            .cells()
            .map(|c| c.as_matroid(n)?.twist(twist))
            .collect::<Result<_>>()?;
        presentation_of(n, common, twist, &self.members, &twisted)
    }
}

/// How the relations of a presentation look.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealClass {
    Zero,
    Principal,
    Other,
}

impl IdealClass {
    pub fn as_str(self) -> &'static str {
        match self {
            IdealClass::Zero => "zero",
            IdealClass::Principal => "principal",
            IdealClass::Other => "other",
        }
    }
}

/// A relation together with the cells it comes from.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub poly: Poly,
    pub cells: Vec<usize>,
}

/// Variables, relations and semigroup generators of the affine coordinate
/// ring of a family of strata.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePresentation {
    pub n: usize,
    pub common: Subset,
    pub twist: Subset,
    pub variables: Vec<(usize, usize)>,
    pub relations: Vec<Relation>,
    pub semigroup_gens: Vec<Poly>,
}

/// `x_ij` is a coordinate of `M` iff `[n] ∖ ij` is a basis.
pub fn matroid_variables(m: &DeltaMatroid) -> BTreeSet<(usize, usize)> {
    let n = m.n();
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if m.contains(Subset::pair(i, j).complement(n)) {
                out.insert((i, j));
            }
        }
    }
    out
}

/// Presentation of a single Δ-matroid that has `[n]` as a basis.
pub fn matroid_presentation(m: &DeltaMatroid) -> Result<AffinePresentation> {
    let n = m.n();
    if !m.contains(Subset::full(n)) {
        return Err(Error::NotCommonBasis(Subset::full(n).to_string()));
    }
    presentation_of(n, Subset::full(n), Subset::EMPTY, &[0], std::slice::from_ref(m))
}

fn presentation_of(
    n: usize,
    common: Subset,
    twist: Subset,
    labels: &[usize],
    matroids: &[DeltaMatroid],
) -> Result<AffinePresentation> {
    let x = SkewMatrix::generic(n);
    let pf: BTreeMap<Subset, Poly> = enumerate_e(n)?
        .into_iter()
        .map(|l| (l, pfaffian(&x, l.complement(n))))
        .collect();
    let mut variables = BTreeSet::new();
    let mut relations: Vec<Relation> = Vec::new();
    let mut normals: Vec<Poly> = Vec::new();
    let mut gens: Vec<Poly> = Vec::new();
    let mut gen_normals: BTreeSet<Poly> = BTreeSet::new();
    for (&label, m) in labels.iter().zip(matroids) {
        let vars = matroid_variables(m);
        variables.extend(vars.iter().copied());
        let keep = |i: usize, j: usize| vars.contains(&(i, j));
        for (lambda, p) in &pf {
            let sub = p.restrict(&keep);
            if sub.is_zero() {
                continue;
            }
            if m.contains(*lambda) {
                if sub.len() == 1 && sub.terms().keys().next().map(|k| k.degree()) == Some(0) {
                    continue;
                }
                if gen_normals.insert(sign_normal(&sub)) {
                    gens.push(sign_normal(&sub));
                }
            } else {
                let normal = sub.unit_normal();
                match normals.iter().position(|r| *r == normal) {
                    Some(k) => {
                        if !relations[k].cells.contains(&label) {
                            relations[k].cells.push(label);
                        }
                    }
                    None => {
                        normals.push(normal);
                        relations.push(Relation {
                            poly: sign_normal(&sub),
                            cells: vec![label],
                        });
                    }
                }
            }
        }
    }
    Ok(AffinePresentation {
        n,
        common,
        twist,
        variables: variables.into_iter().collect(),
        relations,
        semigroup_gens: gens,
    })
}

fn sign_normal(p: &Poly) -> Poly {
    match p.terms().values().next() {
        Some(c) if c.is_negative() => -p.clone(),
        _ => p.clone(),
    }
}

fn var_name(i: usize, j: usize) -> String {
    format!("{i:x}{j:x}")
}

fn poly_json(p: &Poly) -> Value {
    Value::Object(
        p.terms()
            .iter()
            .map(|(m, c)| (m.to_string(), Value::String(format_rational(c))))
            .collect(),
    )
}

impl AffinePresentation {
    pub fn class(&self) -> IdealClass {
        match self.relations.len() {
            0 => IdealClass::Zero,
            1 => IdealClass::Principal,
            _ => IdealClass::Other,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "common": self.common.to_string(),
            "twist": self.twist.to_string(),
            "variables": self.variables.iter().map(|&(i, j)| var_name(i, j)).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| json!({
                "terms": poly_json(&r.poly),
                "cells": r.cells,
            })).collect::<Vec<_>>(),
            "class": self.class().as_str(),
            "semigroup": self.semigroup_gens.iter().map(poly_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for AffinePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.variables.iter().map(|&(i, j)| format!("x{}", var_name(i, j))).collect();
        writeln!(f, "twist {:?}, variables {}", self.twist, vars.join(" "))?;
        if self.relations.is_empty() {
            writeln!(f, "relations: none")?;
        }
        for r in &self.relations {
            writeln!(f, "relation {} (cells {:?})", r.poly, r.cells)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Certification

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// A single maximal cell.
    Trivial,
    /// All maximal cells share the basis `common`.
    BasisIntersecting { common: Subset },
    /// Removing `excluded`, whose two neighbours `triangle` are adjacent,
    /// leaves a basis-covering family sharing `common`.
    AllButOne {
        excluded: usize,
        common: Subset,
        triangle: [usize; 2],
    },
    /// No rule applies. `family` is a largest basis-connecting family with
    /// a common basis `common`, and `presentation` its affine presentation.
    Undecided {
        family: Vec<usize>,
        common: Subset,
        presentation: Box<AffinePresentation>,
    },
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::Trivial => "Trivial",
            Certificate::BasisIntersecting { .. } => "BasisIntersecting",
            Certificate::AllButOne { .. } => "AllButOne",
            Certificate::Undecided { .. } => "Undecided",
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self, Certificate::Undecided { .. })
    }

    /// Re-checks the defining predicate of the tag against `sub`.
    pub fn verify(&self, sub: &Subdivision) -> bool {
        match self {
            Certificate::Trivial => sub.cells().len() == 1,
            Certificate::BasisIntersecting { common } => sub.cells().iter().all(|c| c.contains(*common)),
            Certificate::AllButOne {
                excluded,
                common,
                triangle,
            } => {
                let mut nb = sub.neighbors(*excluded);
                nb.sort_unstable();
                let rest: Vec<usize> = (0..sub.cells().len()).filter(|i| i != excluded).collect();
                let Ok(fam) = CellFamily::new(sub, rest) else {
                    return false;
                };
                nb == triangle.to_vec()
                    && sub.adjacent(triangle[0], triangle[1])
                    && fam.basis_covering()
                    && fam.cells().all(|c| c.contains(*common))
            }
            Certificate::Undecided {
                family,
                common,
                presentation,
            } => CellFamily::new(sub, family.iter().copied())
                .map(|f| f.basis_connecting() && f.cells().all(|c| c.contains(*common)))
                .unwrap_or(false)
                && presentation.common == *common,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Certificate::Trivial => json!({ "tag": "Trivial" }),
            Certificate::BasisIntersecting { common } => json!({
                "tag": "BasisIntersecting",
                "common": common.to_string(),
            }),
            Certificate::AllButOne {
                excluded,
                common,
                triangle,
            } => json!({
                "tag": "AllButOne",
                "excluded": excluded,
                "common": common.to_string(),
                "triangle": triangle,
            }),
            Certificate::Undecided {
                family,
                common,
                presentation,
            } => json!({
                "tag": "Undecided",
                "family": family,
                "common": common.to_string(),
                "presentation": presentation.to_json(),
            }),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Trivial => write!(f, "Trivial"),
            Certificate::BasisIntersecting { common } => write!(f, "BasisIntersecting (common basis {common:?})"),
            Certificate::AllButOne {
                excluded,
                common,
                triangle,
            } => write!(
                f,
                "AllButOne (excluded M{excluded}, triangle {}-{}, common basis {common:?})",
                triangle[0], triangle[1]
            ),
            Certificate::Undecided {
                family,
                common,
                presentation,
            } => write!(
                f,
                "Undecided (family {family:?}, common basis {common:?}, {} relation(s), {})",
                presentation.relations.len(),
                presentation.class().as_str()
            ),
        }
    }
}

/// Applies, in order: one cell; a basis shared by all cells; a cell whose
/// removal leaves a basis-covering, basis-intersecting family and whose two
/// neighbours are adjacent. Otherwise reports the largest basis-connecting
/// family with a common basis, together with its presentation.
pub fn certify_smooth(sub: &Subdivision) -> Result<Certificate> {
    if !sub.is_matroidal() {
        return Err(Error::NotMatroidal);
    }
    let k = sub.cells().len();
    if k == 1 {
        return Ok(Certificate::Trivial);
    }
    let all = CellFamily::all(sub);
    if let Some(common) = all.basis_intersecting() {
        return Ok(Certificate::BasisIntersecting { common });
    }
    let mut best: Option<(Subset, usize, [usize; 2])> = None;
    for q in 0..k {
        let mut nb = sub.neighbors(q);
        nb.sort_unstable();
        if nb.len() != 2 || !sub.adjacent(nb[0], nb[1]) {
            continue;
        }
        let rest = CellFamily::new(sub, (0..k).filter(|&i| i != q))?;
        if !rest.basis_covering() {
            continue;
        }
        if let Some(common) = rest.basis_intersecting() {
            if best.is_none_or(|(b, _, _)| common < b) {
                best = Some((common, q, [nb[0], nb[1]]));
            }
        }
    }
    if let Some((common, excluded, triangle)) = best {
        return Ok(Certificate::AllButOne {
            excluded,
            common,
            triangle,
        });
    }
    let n = sub.n();
    let full = Subset::full(n);
    let mut choice: Option<(Subset, Vec<usize>)> = None;
    for beta in all.basis_union() {
        let fam = CellFamily::new(sub, all.cells_with(beta))?;
        if !fam.basis_connecting() {
            continue;
        }
        let better = match &choice {
            None => true,
            Some((b, f)) => {
                fam.members.len() > f.len() || (fam.members.len() == f.len() && beta == full && *b != full)
            }
        };
        if better {
            choice = Some((beta, fam.members.clone()));
        }
    }
    let (common, family) = choice.ok_or_else(|| Error::Invalid("no basis-connecting family".into()))?;
    let presentation = CellFamily::new(sub, family.iter().copied())?.affine_presentation(common)?;
    Ok(Certificate::Undecided {
        family,
        common,
        presentation: Box::new(presentation),
    })
}
