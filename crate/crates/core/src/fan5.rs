//! The fan `Σ₅` of the tropical spinor variety `TS₅°`: its 36 rays, the
//! lineality space, the twenty orbit representatives with their
//! dimensions and Gale-rank recipes, and the checks built on them.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::combinatorics::{enumerate_e, rat, ratio, ParityIndex, Rational, Subset};
use crate::delta_matroid::{group_elements, GroupElement};
use crate::error::{Error, Result};
use crate::linalg::{dot, kernel, rank, reduce_mod, rref, Matrix};
use crate::polyhedra::WeightVector;

/// A vector in `R^{E(5)}`, coordinates `f_λ` in canonical order.
pub type AmbientVector = Vec<Rational>;

/// Rays `r₀..r₁₅` are the coordinate vectors `f_λ` for these subsets.
pub const SINGLE_RAYS: [&str; 16] = [
    "0", "1", "2", "3", "4", "012", "013", "023", "123", "014", "024", "124", "034", "134", "234", "01234",
];

/// Rays `r₁₆..r₂₅` are `f_i + f_j + f_k + f_ijk`, and `r₂₆..r₃₅` their
/// negatives, for these triples.
pub const TRIPLE_RAYS: [&str; 10] = ["012", "013", "023", "123", "014", "024", "124", "034", "134", "234"];

/// One row of the representative table.
#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub index: i32,
    pub rays: Vec<usize>,
    pub dim: usize,
    /// Cones `g·τ_k` as (group word, k); `None` for maximal cones.
    pub recipes: Option<Vec<(String, usize)>>,
}

const TABLE: &[(i32, &[usize], usize, Option<&[(&str, usize)]>)] = &[
    (-1, &[], 5, Some(&[("t_23", 15), ("s_(13)t_03", 15)])),
    (0, &[26], 6, Some(&[("s_(12)", 15), ("s_(34)", 15), ("s_(12)(34)", 15)])),
    (1, &[4], 6, Some(&[("s_(142)t_14", 15), ("s_(024)t_03", 15)])),
    (2, &[3, 4], 7, Some(&[("s_(021)t_34", 16), ("s_(02)(34)", 16)])),
    (3, &[4, 5], 7, Some(&[("s_(032)(14)t_23", 15), ("s_(02)(13)", 15)])),
    (4, &[4, 26], 7, Some(&[("e", 15), ("s_(012)", 15), ("s_(12)", 15)])),
    (5, &[4, 5, 9], 8, Some(&[("e", 16), ("s_(243)t_23", 17)])),
    (6, &[4, 9, 26], 8, Some(&[("e", 15), ("s_(03)(142)t_02", 17), ("s_(03)(142)t_03", 17)])),
    (7, &[4, 6, 26], 8, Some(&[("s_(012)", 15), ("s_(12)", 15)])),
    (8, &[3, 4, 5], 8, Some(&[("e", 16), ("e", 17)])),
    (9, &[3, 4, 26], 8, Some(&[("s_(04132)t_03", 17), ("s_(032)(14)t_03", 17)])),
    (10, &[4, 7, 8, 9], 9, Some(&[("e", 15), ("s_(23)", 15)])),
    (11, &[3, 4, 6, 9], 9, None),
    (12, &[3, 4, 5, 25], 9, Some(&[("e", 17), ("s_(34)", 17)])),
    (13, &[3, 4, 5, 6], 9, Some(&[("s_(12)", 16), ("s_(01)(34)", 16)])),
    (14, &[3, 4, 6, 26], 9, Some(&[("s_(03)(14)t_03", 17), ("s_(0314)t_03", 17)])),
    (15, &[4, 7, 8, 9, 26], 10, None),
    (16, &[3, 4, 5, 7, 9], 10, None),
    (17, &[3, 4, 5, 6, 25], 10, None),
    (18, &[3, 4, 6, 9, 26], 10, None),
];

/// Result of one Gale-rank certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub row: i32,
    pub dim: usize,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Result of the star checks for `τ = cone{r₃, r₄, r₆, r₉}`.
#[derive(Clone, Debug, Serialize)]
pub struct GlueReport {
    pub identity_holds: bool,
    pub outside_lineality: bool,
    pub generators_fix_tau: bool,
    pub orbit_of_r25: Vec<usize>,
    pub orbit_ok: bool,
    /// `(m, μ, witness)` for any twist `t_μ·S_m` containing a pattern
    /// `{f_k, f_l, f_ijk, f_ijl}`; empty when none exists.
    pub star_witnesses: Vec<(usize, String, Vec<String>)>,
}

impl GlueReport {
    pub fn pass(&self) -> bool {
        self.identity_holds && self.outside_lineality && self.generators_fix_tau && self.orbit_ok
    }
}

/// Per-dimension orbit data.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub fvector: Vec<usize>,
    pub orbit_counts: Vec<usize>,
    pub orbit_sizes: Vec<(i32, usize)>,
    pub representatives_inequivalent: bool,
}

pub struct Sigma5 {
    index: ParityIndex,
    rays: Vec<AmbientVector>,
    lineality: Vec<AmbientVector>,
    lin_rref: (Matrix, Vec<usize>),
    reps: Vec<Representative>,
}

/// Loads the hardcoded fan data.
pub fn load_sigma5() -> Sigma5 {
    let index = ParityIndex::new(5).expect("n = 5 is in range");
    let e = index.subsets().to_vec();
    let f = |s: &str| -> AmbientVector {
        let sub: Subset = s.parse().expect("table subset");
        let mut v = vec![Rational::zero(); e.len()];
        v[index.index_of(sub).expect("odd subset of [5]")] = rat(1);
        v
    };
    let add = |a: &AmbientVector, b: &AmbientVector| -> AmbientVector { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut rays: Vec<AmbientVector> = SINGLE_RAYS.iter().map(|s| f(s)).collect();
    let triples: Vec<AmbientVector> = TRIPLE_RAYS
        .iter()
        .map(|t| {
            let sub: Subset = t.parse().unwrap();
            let mut v = f(t);
            for i in sub.elements() {
                v = add(&v, &f(&i.to_string()));
            }
            v
        })
        .collect();
    rays.extend(triples.iter().cloned());
    rays.extend(triples.iter().map(|v| v.iter().map(|x| -x).collect()));

    let mut lineality: Vec<AmbientVector> = (0..5)
        .map(|i| e.iter().map(|s| rat(s.contains(i) as i64)).collect())
        .collect();
    lineality.push(vec![rat(1); e.len()]);
    let lin_rref = rref(&lineality);

    let reps = TABLE
        .iter()
        .map(|(i, r, d, rec)| Representative {
            index: *i,
            rays: r.to_vec(),
            dim: *d,
            recipes: rec.map(|v| v.iter().map(|(w, k)| (w.to_string(), *k)).collect()),
        })
        .collect();
    Sigma5 {
        index,
        rays,
        lineality,
        lin_rref,
        reps,
    }
}

impl Sigma5 {
    pub fn index(&self) -> &ParityIndex {
        &self.index
    }

    pub fn rays(&self) -> &[AmbientVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &AmbientVector {
        &self.rays[i]
    }

    pub fn lineality(&self) -> &[AmbientVector] {
        &self.lineality
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.reps
    }

    pub fn representative(&self, index: i32) -> Option<&Representative> {
        self.reps.iter().find(|r| r.index == index)
    }

    /// `f_λ` as an ambient vector.
    pub fn f(&self, s: Subset) -> Result<AmbientVector> {
        let k = self
            .index
            .index_of(s)
            .ok_or_else(|| Error::Invalid(format!("{s} is not in E(5)")))?;
        let mut v = vec![Rational::zero(); self.index.len()];
        v[k] = rat(1);
        Ok(v)
    }

    /// Dimension of `span L` inside `R^{E(5)}`.
    pub fn lineality_rank(&self) -> usize {
        self.lin_rref.1.len()
    }

    /// Membership in `span{ℓ₀,…,ℓ₅}`.
    pub fn in_lineality(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Canonical representative of `v + span L`.
    pub fn reduce(&self, v: &[Rational]) -> AmbientVector {
        reduce_mod(v, &self.lin_rref.0, &self.lin_rref.1)
    }

    /// `g·v` with `g·f_λ = f_{g(λ)}`.
    pub fn act(&self, g: &GroupElement, v: &[Rational]) -> AmbientVector {
        let mut out = vec![Rational::zero(); v.len()];
        for (k, s) in self.index.subsets().iter().enumerate() {
            let t = self.index.index_of(g.apply(*s)).expect("G5 preserves E(5)");
            out[t] = v[k].clone();
        }
        out
    }

    /// Index of the ray congruent to `v` modulo `L`.
    pub fn ray_index_mod_l(&self, v: &[Rational]) -> Option<usize> {
        let r = self.reduce(v);
        (0..self.rays.len()).find(|&i| self.reduce(&self.rays[i]) == r)
    }

    /// Image of a ray set under `g`, re-expressed as ray indices.
    pub fn translate(&self, g: &GroupElement, rays: &[usize]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = rays
            .iter()
            .map(|&i| {
                self.ray_index_mod_l(&self.act(g, &self.rays[i]))
                    .ok_or_else(|| Error::UnresolvedRecipe(format!("{g:?} · r{i}")))
            })
            .collect::<Result<_>>()?;
        out.sort();
        Ok(out)
    }

    /// Rays of the cone named by a recipe `(word, k)`, i.e. `word·τ_k`.
    pub fn resolve(&self, word: &str, k: usize) -> Result<Vec<usize>> {
        let base = self
            .representative(k as i32)
            .ok_or_else(|| Error::UnresolvedRecipe(format!("τ{k}")))?;
        let g = GroupElement::parse(5, word).map_err(|_| Error::UnresolvedRecipe(word.to_string()))?;
        self.translate(&g, &base.rays)
    }

    /// Rows: the given rays followed by `ℓ₀..ℓ₅`.
    fn cone_rows(&self, rays: &[usize]) -> Matrix {
        rays.iter()
            .map(|&i| self.rays[i].clone())
            .chain(self.lineality.iter().cloned())
            .collect()
    }

    /// `dim(span(rays) + span L)` in the 16-dimensional ambient space.
    pub fn cone_span_dim(&self, rays: &[usize]) -> usize {
        rank(&self.cone_rows(rays))
    }

    /// Stacks kernels of `[rays(σ); L]` for each `σ` in `cones` and
    /// compares the rank with `16 − (dim + 1)`.
    pub fn gale_rank(&self, row: i32, dim: usize, cones: &[Vec<usize>]) -> RankReport {
        let cols = self.index.len();
        let mut stacked: Matrix = Vec::new();
        for sigma in cones {
            stacked.extend(kernel(&self.cone_rows(sigma), cols));
        }
        let r = if stacked.is_empty() { 0 } else { rank(&stacked) };
        let expected = cols - (dim + 1);
        RankReport {
            row,
            dim,
            rank: r,
            expected,
            pass: r == expected,
        }
    }

    /// Gale-rank certificate for a table row; `Ok(None)` for maximal rows.
    pub fn gale_rank_check(&self, row: i32) -> Result<Option<RankReport>> {
        let rep = self
            .representative(row)
            .ok_or_else(|| Error::UnresolvedRecipe(format!("τ{row}")))?;
        let Some(recipes) = &rep.recipes else {
            return Ok(None);
        };
        let cones = recipes
            .iter()
            .map(|(w, k)| self.resolve(w, *k))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(self.gale_rank(row, rep.dim, &cones)))
    }

    /// `dim(span(τ) + L) = Dim + 1` for every row.
    pub fn dim_consistency(&self) -> Vec<(i32, usize, usize)> {
        self.reps
            .iter()
            .map(|r| (r.index, r.dim + 1, self.cone_span_dim(&r.rays)))
            .collect()
    }

    /// Sum of the representative's rays, as weights on `E(5)`.
    pub fn interior_point(&self, row: i32) -> Result<WeightVector> {
        let rep = self
            .representative(row)
            .ok_or_else(|| Error::UnresolvedRecipe(format!("τ{row}")))?;
        self.ray_sum(&rep.rays)
    }

    pub fn ray_sum(&self, rays: &[usize]) -> Result<WeightVector> {
        let mut v = vec![Rational::zero(); self.index.len()];
        for &i in rays {
            let r = self.rays.get(i).ok_or_else(|| Error::UnresolvedRecipe(format!("r{i}")))?;
            for (x, y) in v.iter_mut().zip(r) {
                *x += y;
            }
        }
        WeightVector::from_e_vector(5, &v)
    }

    /// For every element of `G₅`, the induced permutation of ray indices.
    pub fn ray_permutations(&self) -> Result<Vec<Vec<usize>>> {
        let reduced: Vec<AmbientVector> = self.rays.iter().map(|r| self.reduce(r)).collect();
        let lookup: HashMap<AmbientVector, usize> =
            reduced.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        if lookup.len() != self.rays.len() {
            return Err(Error::Invalid("rays are not distinct modulo L".into()));
        }
        group_elements(5)?
            .iter()
            .map(|g| {
                (0..self.rays.len())
                    .map(|i| {
                        lookup
                            .get(&self.reduce(&self.act(g, &self.rays[i])))
                            .copied()
                            .ok_or_else(|| Error::UnresolvedRecipe(format!("{g:?} · r{i}")))
                    })
                    .collect()
            })
            .collect()
    }

    /// Orbit sizes of the representatives and the resulting f-vector by
    /// dimension 5..=10.
    pub fn orbit_fvector(&self) -> Result<OrbitReport> {
        let perms = self.ray_permutations()?;
        let mut fvector = vec![0; 6];
        let mut counts = vec![0; 6];
        let mut sizes = Vec::new();
        let mut orbits: Vec<HashSet<Vec<usize>>> = Vec::new();
        for rep in &self.reps {
            let key: BTreeSet<usize> = rep.rays.iter().copied().collect();
            let mut orbit: HashSet<Vec<usize>> = HashSet::new();
            let mut stab = 0;
            for p in &perms {
                let img: BTreeSet<usize> = key.iter().map(|&i| p[i]).collect();
                if img == key {
                    stab += 1;
                }
                orbit.insert(img.into_iter().collect());
            }
            let size = perms.len() / stab;
            debug_assert_eq!(size, orbit.len());
            fvector[rep.dim - 5] += size;
            counts[rep.dim - 5] += 1;
            sizes.push((rep.index, size));
            orbits.push(orbit);
        }
        let inequivalent = self.reps.iter().enumerate().all(|(a, ra)| {
            let key: Vec<usize> = {
                let mut k = ra.rays.clone();
                k.sort();
                k
            };
            orbits.iter().enumerate().all(|(b, o)| a == b || !o.contains(&key))
        });
        Ok(OrbitReport {
            fvector,
            orbit_counts: counts,
            orbit_sizes: sizes,
            representatives_inequivalent: inequivalent,
        })
    }

    /// Checks around `τ = cone{r₃, r₄, r₆, r₉}`: the decomposition of its
    /// interior point, that it is not in `L`, and the orbit of `r₂₅` under
    /// the stabilizer generators.
    pub fn glue_check(&self) -> Result<GlueReport> {
        let sum = |idx: &[usize]| -> AmbientVector {
            let mut v = vec![Rational::zero(); self.index.len()];
            for &i in idx {
                for (x, y) in v.iter_mut().zip(&self.rays[i]) {
                    *x += y;
                }
            }
            v
        };
        let w = sum(&[3, 4, 6, 9]);
        let mut rhs = sum(&[25, 26]);
        let coeffs = [-1, -1, 1, 1, 1, -1];
        let half = ratio(1, 2);
        for (c, l) in coeffs.iter().zip(&self.lineality) {
            for (x, y) in rhs.iter_mut().zip(l) {
                *x -= &half * rat(*c) * y;
            }
        }
        let identity_holds = w == rhs;
        let outside_lineality = !self.in_lineality(&w);

        let gens: Vec<GroupElement> = ["s_(01)", "s_(34)", "t_01", "t_34", "s_(03)(14)t_03"]
            .iter()
            .map(|g| GroupElement::parse(5, g))
            .collect::<Result<_>>()?;
        let tau = vec![3, 4, 6, 9];
        let mut generators_fix_tau = true;
        for g in &gens {
            generators_fix_tau &= self.translate(g, &tau)? == tau;
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        let mut queue = VecDeque::from([25usize]);
        orbit.insert(25);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let j = self.translate(g, &[i])?[0];
                if orbit.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        let orbit_of_r25: Vec<usize> = orbit.into_iter().collect();
        let orbit_ok = orbit_of_r25 == vec![25, 26];
        Ok(GlueReport {
            identity_holds,
            outside_lineality,
            generators_fix_tau,
            orbit_of_r25,
            orbit_ok,
            star_witnesses: self.star_pattern_search()?,
        })
    }

    /// Coordinate rays `f_λ` among the rays of `τ_m`.
    pub fn single_support(&self, m: i32) -> Result<Vec<Subset>> {
        let rep = self
            .representative(m)
            .ok_or_else(|| Error::UnresolvedRecipe(format!("τ{m}")))?;
        Ok(rep
            .rays
            .iter()
            .filter(|&&i| i < SINGLE_RAYS.len())
            .map(|&i| SINGLE_RAYS[i].parse().unwrap())
            .collect())
    }

    /// Exhaustive search over even `μ` and `m ∈ {15, 16, 17}` for
    /// `t_μ·S_m ⊇ {f_k, f_l, f_ijk, f_ijl}` with `i, j, k, l` distinct.
    pub fn star_pattern_search(&self) -> Result<Vec<(usize, String, Vec<String>)>> {
        let evens: Vec<Subset> = (0u32..32).map(Subset::from_bits).filter(|s| s.len() % 2 == 0).collect();
        let mut out = Vec::new();
        for m in [15usize, 16, 17] {
            let s = self.single_support(m as i32)?;
            for &mu in &evens {
                let img: BTreeSet<Subset> = s.iter().map(|x| x.sym_diff(mu)).collect();
                for i in 0..5 {
                    for j in (i + 1)..5 {
                        for k in 0..5 {
                            for l in (k + 1)..5 {
                                if [i, j].contains(&k) || [i, j].contains(&l) {
                                    continue;
                                }
                                let pat = [
                                    Subset::singleton(k),
                                    Subset::singleton(l),
                                    Subset::pair(i, j).insert(k),
                                    Subset::pair(i, j).insert(l),
                                ];
                                if pat.iter().all(|p| img.contains(p)) {
                                    out.push((m, mu.to_string(), pat.iter().map(|p| p.to_string()).collect()));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Rays `r₀..r₃` of the fan of `TS₄°`, each `f_a + f_b`.
pub const N4_RAYS: [[&str; 2]; 4] = [["", "0123"], ["01", "23"], ["02", "13"], ["03", "12"]];

/// `Σ r_i` over the given `n = 4` ray indices, as weights on `E(4)`.
pub fn n4_ray_sum(rays: &[usize]) -> Result<WeightVector> {
    let mut values: std::collections::BTreeMap<Subset, Rational> =
        enumerate_e(4)?.into_iter().map(|s| (s, Rational::zero())).collect();
    for &i in rays {
        let pair = N4_RAYS.get(i).ok_or_else(|| Error::UnresolvedRecipe(format!("r{i}")))?;
        for s in pair {
            *values.get_mut(&s.parse::<Subset>()?).expect("element of E(4)") += rat(1);
        }
    }
    Ok(WeightVector::new(4, values))
}

/// The `n = 4` data: rays, lineality and the three functionals `v₀, v₁, v₂`.
#[derive(Clone, Debug, Serialize)]
pub struct N4Report {
    pub annihilates: Vec<bool>,
    pub span_dim: usize,
    pub dependency: Vec<String>,
}

impl N4Report {
    pub fn pass(&self) -> bool {
        self.annihilates.iter().all(|&b| b) && self.span_dim == 2
    }
}

pub fn n4_invariance_check() -> Result<N4Report> {
    let e = enumerate_e(4)?;
    let vec_of = |terms: &[(&str, i64)]| -> Result<AmbientVector> {
        let mut v = vec![Rational::zero(); e.len()];
        for (s, c) in terms {
            let sub: Subset = s.parse()?;
            let k = e.iter().position(|x| *x == sub).ok_or_else(|| Error::Invalid(s.to_string()))?;
            v[k] += rat(*c);
        }
        Ok(v)
    };
    let rays: Vec<AmbientVector> = N4_RAYS
        .iter()
        .map(|[a, b]| vec_of(&[(a, 1), (b, 1)]))
        .collect::<Result<_>>()?;
    let mut lin: Vec<AmbientVector> = (0..4)
        .map(|i| e.iter().map(|s| rat(s.contains(i) as i64)).collect())
        .collect();
    lin.push(vec![rat(1); e.len()]);
    let v = [
        vec_of(&[("01", 1), ("02", -1), ("13", -1), ("23", 1)])?,
        vec_of(&[("", 1), ("02", -1), ("13", -1), ("0123", 1)])?,
        vec_of(&[("", 1), ("01", -1), ("23", -1), ("0123", 1)])?,
    ];
    // σ_i = cone{r_i, r₃} + L.
    let annihilates = (0..3)
        .map(|i| {
            [&rays[i], &rays[3]]
                .into_iter()
                .chain(lin.iter())
                .all(|x| dot(&v[i], x).is_zero())
        })
        .collect();
    let stack: Matrix = v.to_vec();
    let span_dim = rank(&stack);
    let dep = kernel(&crate::linalg::transpose(&stack), 3);
    let dependency = dep
        .first()
        .map(|d| d.iter().map(crate::combinatorics::format_rational).collect())
        .unwrap_or_default();
    Ok(N4Report {
        annihilates,
        span_dim,
        dependency,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s5() -> Sigma5 {
        load_sigma5()
    }

    #[test]
    fn table_shape() {
        let s = s5();
        assert_eq!(s.rays().len(), 36);
        assert_eq!(s.lineality().len(), 6);
        assert_eq!(s.representatives().len(), 20);
        // In N = R^{E(5)}/R·ℓ₅ the lineality space is 5-dimensional.
        assert_eq!(s.lineality_rank() - 1, 5);
        let r25 = s.ray(25);
        let expected: Vec<Subset> = ["2", "3", "4", "234"].iter().map(|x| x.parse().unwrap()).collect();
        for (k, sub) in s.index().subsets().iter().enumerate() {
            assert_eq!(r25[k], rat(expected.contains(sub) as i64));
        }
        let t11 = s.representative(11).unwrap();
        assert_eq!((t11.rays.clone(), t11.dim), (vec![3, 4, 6, 9], 9));
    }

    #[test]
    fn lineality_examples() {
        let s = s5();
        let g = GroupElement::parse(5, "t_02").unwrap();
        let lhs: AmbientVector = s.act(&g, s.ray(25)).iter().zip(s.ray(35)).map(|(a, b)| a - b).collect();
        let rhs: AmbientVector = s.lineality()[1].iter().zip(&s.lineality()[5]).map(|(a, b)| b - a).collect();
        assert_eq!(lhs, rhs);
        assert!(s.in_lineality(&lhs));
        assert!(s.in_lineality(&s.lineality()[3]));
        assert!(!s.in_lineality(s.ray(0)));
    }

    #[test]
    fn group_preserves_lineality() {
        let s = s5();
        for w in ["s_(01)", "s_(01234)", "t_01", "t_34"] {
            let g = GroupElement::parse(5, w).unwrap();
            for l in s.lineality() {
                assert!(s.in_lineality(&s.act(&g, l)));
            }
        }
    }

    #[test]
    fn gale_examples() {
        let s = s5();
        let r2 = s.gale_rank_check(2).unwrap().unwrap();
        assert!(r2.pass);
        assert_eq!(r2.rank, 8);
        let rm1 = s.gale_rank_check(-1).unwrap().unwrap();
        assert!(rm1.pass);
        assert_eq!(rm1.rank, 10);
        assert!(s.gale_rank_check(15).unwrap().is_none());
        // Dropping a cone loses the certificate.
        let one = s.resolve("s_(021)t_34", 16).unwrap();
        assert!(!s.gale_rank(2, 7, &[one]).pass);
        assert!(s.resolve("x", 16).is_err());
    }

    #[test]
    fn n4_data() {
        let r = n4_invariance_check().unwrap();
        assert!(r.pass(), "{r:?}");
    }

    #[test]
    fn star_support_sets() {
        let s = s5();
        let names = |m: i32| -> Vec<String> { s.single_support(m).unwrap().iter().map(|x| x.to_string()).collect() };
        assert_eq!(names(15), vec!["4", "023", "123", "014"]);
        assert_eq!(names(16), vec!["3", "4", "012", "023", "014"]);
        assert_eq!(names(17), vec!["3", "4", "012", "013"]);
        assert_eq!(names(18), vec!["3", "4", "013", "014"]);
    }
}
