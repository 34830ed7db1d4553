//! Even Δ-matroids, face matroids, twists and the symmetry group
//! `G_n = S_n ⋉ (S_2)^{n-1}` acting on `E(n)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{check_ground, enumerate_e, Rational, Subset};
use crate::error::{Error, Result};

/// A Δ-matroid on `[n]`, stored as a sorted, deduplicated basis family.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DeltaMatroid {
    n: usize,
    bases: Vec<Subset>,
}

impl DeltaMatroid {
    /// Builds the family without checking the exchange axiom.
    pub fn new<I: IntoIterator<Item = Subset>>(n: usize, bases: I) -> Result<Self> {
        check_ground(n)?;
        let mut b: Vec<Subset> = bases.into_iter().collect();
        if b.is_empty() {
            return Err(Error::EmptyBasisFamily);
        }
        for s in &b {
            if !s.lies_in(n) {
                return Err(Error::ElementOutOfRange {
                    element: 31 - s.bits().leading_zeros() as usize,
                    n,
                });
            }
        }
        b.sort();
        b.dedup();
        Ok(DeltaMatroid { n, bases: b })
    }

    /// Builds the family and rejects it unless it is an even Δ-matroid.
    pub fn checked<I: IntoIterator<Item = Subset>>(n: usize, bases: I) -> Result<Self> {
        let m = Self::new(n, bases)?;
        if !is_delta_matroid(n, &m.bases)? || !is_even(&m.bases) {
            return Err(Error::Invalid("family is not an even Δ-matroid".into()));
        }
        Ok(m)
    }

    pub fn parse(n: usize, bases: &[&str]) -> Result<Self> {
        let b = bases.iter().map(|s| s.parse()).collect::<Result<Vec<Subset>>>()?;
        Self::new(n, b)
    }

    /// The Δ-matroid with every member of `E(n)` as a basis; its polytope
    /// is the Δ-hypersimplex.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(n, enumerate_e(n)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.bases.binary_search(&s).is_ok()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn satisfies_exchange(&self) -> bool {
        exchange_holds(&self.bases)
    }

    pub fn is_even(&self) -> bool {
        is_even(&self.bases)
    }

    /// Bases minimizing `⟨u, e_λ⟩`.
    pub fn face_matroid(&self, u: &DirectionVector) -> DeltaMatroid {
        let values: Vec<Rational> = self.bases.iter().map(|&b| u.pair(b)).collect();
        let min = values.iter().min().cloned().unwrap_or_else(Rational::zero);
        let bases = self
            .bases
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == min)
            .map(|(b, _)| *b)
            .collect();
        DeltaMatroid { n: self.n, bases }
    }

    /// The twist `{β Δ μ : β ∈ B(M)}` by an even subset `μ`.
    pub fn twist(&self, mu: Subset) -> Result<DeltaMatroid> {
        if !mu.len().is_multiple_of(2) {
            return Err(Error::OddTwist(mu.to_string()));
        }
        DeltaMatroid::new(self.n, self.bases.iter().map(|b| b.sym_diff(mu)))
    }

    /// Basis strings sorted as strings; the comparison key for orbit
    /// representatives.
    pub fn sorted_strings(&self) -> Vec<String> {
        let mut v: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        v.sort();
        v
    }
}

impl fmt::Debug for DeltaMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, b) in self.bases.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "}}")
    }
}

fn exchange_holds(bases: &[Subset]) -> bool {
    let set: HashSet<Subset> = bases.iter().copied().collect();
    for &mu in bases {
        for &nu in bases {
            let d = mu.sym_diff(nu);
            for i in d.elements() {
                // {i} ∪ {j} is {i} when j = i.
                let ok = d.elements().any(|j| {
                    set.contains(&mu.sym_diff(Subset::singleton(i).union(Subset::singleton(j))))
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Symmetric exchange axiom: for all `μ, ν ∈ B` and `i ∈ μΔν` there is
/// `j ∈ μΔν` with `μ Δ {i, j} ∈ B` (for `j = i` this is `μ Δ {i}`).
pub fn is_delta_matroid(n: usize, bases: &[Subset]) -> Result<bool> {
    check_ground(n)?;
    if bases.is_empty() {
        return Err(Error::EmptyBasisFamily);
    }
    if bases.iter().any(|b| !b.lies_in(n)) {
        return Ok(false);
    }
    Ok(exchange_holds(bases))
}

pub fn is_even(bases: &[Subset]) -> bool {
    match bases.first() {
        None => true,
        Some(first) => bases.iter().all(|b| b.sym_diff(*first).len() % 2 == 0),
    }
}

/// A linear functional `u ∈ Q^n` on the ambient space of `Q_M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectionVector(pub Vec<Rational>);

impl DirectionVector {
    pub fn zero(n: usize) -> Self {
        DirectionVector(vec![Rational::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        DirectionVector(v.iter().map(|&x| crate::combinatorics::rat(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `⟨u, e_λ⟩`.
    pub fn pair(&self, s: Subset) -> Rational {
        s.elements()
            .filter(|&i| i < self.0.len())
            .fold(Rational::zero(), |acc, i| acc + &self.0[i])
    }

    /// Negates the coordinates in `mu`.
    pub fn flip_on(&self, mu: Subset) -> Self {
        DirectionVector(
            self.0
                .iter()
                .enumerate()
                .map(|(i, x)| if mu.contains(i) { -x.clone() } else { x.clone() })
                .collect(),
        )
    }
}

/// An element of `G_n` in normal form: it maps `λ ↦ perm(λ Δ twist)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub perm: Vec<usize>,
    pub twist: Subset,
}

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement {
            perm: (0..n).collect(),
            twist: Subset::EMPTY,
        }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// The coordinate permutation `s_τ`.
    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::ParseGroupElement(format!("{perm:?}")));
            }
            seen[p] = true;
        }
        Ok(GroupElement {
            perm,
            twist: Subset::EMPTY,
        })
    }

    /// The twist `t_μ`.
    pub fn twist_by(n: usize, mu: Subset) -> Result<Self> {
        if !mu.len().is_multiple_of(2) {
            return Err(Error::OddTwist(mu.to_string()));
        }
        if !mu.lies_in(n) {
            return Err(Error::Invalid(format!("twist {mu} outside [{n}]")));
        }
        Ok(GroupElement {
            perm: (0..n).collect(),
            twist: mu,
        })
    }

    pub fn apply(&self, s: Subset) -> Subset {
        s.sym_diff(self.twist).permute(&self.perm)
    }

    pub fn apply_matroid(&self, m: &DeltaMatroid) -> DeltaMatroid {
        DeltaMatroid::new(m.n(), m.bases().iter().map(|&b| self.apply(b)))
            .expect("group action preserves nonempty families")
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// `self ∘ other`: act with `other` first, then with `self`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n() != other.n() {
            return Err(Error::MismatchedGroundSize(self.n(), other.n()));
        }
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let twist = other.twist.sym_diff(self.twist.permute(&other.inverse_perm()));
        Ok(GroupElement { perm, twist })
    }

    pub fn inverse(&self) -> GroupElement {
        // (p, t)^{-1} maps λ ↦ p^{-1}(λ) Δ t = p^{-1}(λ Δ p(t)).
        GroupElement {
            perm: self.inverse_perm(),
            twist: self.twist.permute(&self.perm),
        }
    }

    /// Parses words such as `s_(021)t_34`, `s_(03)(142)t_02`, `t_23`,
    /// `s_(12)` or `e` (identity). Factors compose right to left.
    pub fn parse(n: usize, word: &str) -> Result<Self> {
        let err = || Error::ParseGroupElement(word.to_string());
        let w: String = word.chars().filter(|c| !c.is_whitespace() && *c != '·' && *c != '*').collect();
        let mut factors = Vec::new();
        let chars: Vec<char> = w.chars().collect();
        let mut k = 0;
        if w.is_empty() || w == "e" || w == "id" {
            return Ok(Self::identity(n));
        }
        while k < chars.len() {
            match chars[k] {
                's' => {
                    k += 1;
                    if chars.get(k) == Some(&'_') {
                        k += 1;
                    }
                    let mut perm: Vec<usize> = (0..n).collect();
                    let mut cycles = Vec::new();
                    while chars.get(k) == Some(&'(') {
                        let close = chars[k..].iter().position(|&c| c == ')').ok_or_else(err)? + k;
                        let cyc: Vec<usize> = chars[k + 1..close]
                            .iter()
                            .map(|c| c.to_digit(16).map(|d| d as usize).ok_or_else(err))
                            .collect::<Result<_>>()?;
                        cycles.push(cyc);
                        k = close + 1;
                    }
                    if cycles.is_empty() {
                        return Err(err());
                    }
                    // Disjoint cycles in product; compose right to left anyway.
                    for cyc in cycles.iter().rev() {
                        if cyc.iter().any(|&c| c >= n) {
                            return Err(err());
                        }
                        let mut step: Vec<usize> = (0..n).collect();
                        for (a, b) in cyc.iter().zip(cyc.iter().cycle().skip(1)) {
                            step[*a] = *b;
                        }
                        perm = perm.iter().map(|&p| step[p]).collect();
                    }
                    factors.push(GroupElement::permutation(perm).map_err(|_| err())?);
                }
                't' => {
                    k += 1;
                    if chars.get(k) == Some(&'_') {
                        k += 1;
                    }
                    let start = k;
                    while k < chars.len() && chars[k].is_ascii_hexdigit() {
                        k += 1;
                    }
                    let s: String = chars[start..k].iter().collect();
                    let mu: Subset = s.parse().map_err(|_| err())?;
                    factors.push(GroupElement::twist_by(n, mu)?);
                }
                _ => return Err(err()),
            }
        }
        let mut g = Self::identity(n);
        for f in &factors {
            g = g.compose(f)?;
        }
        Ok(g)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, t_{})", self.perm, self.twist)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out.sort();
    out
}

/// All `n!·2^{n-1}` elements of `G_n` in normal form.
pub fn group_elements(n: usize) -> Result<Vec<GroupElement>> {
    if n > 6 {
        return Err(Error::GroupTooLarge(n));
    }
    check_ground(n)?;
    let twists: Vec<Subset> = (0u32..(1 << n))
        .map(Subset::from_bits)
        .filter(|s| s.len() % 2 == 0)
        .collect();
    let mut out = Vec::new();
    for perm in permutations(n) {
        for &t in &twists {
            out.push(GroupElement {
                perm: perm.clone(),
                twist: t,
            });
        }
    }
    Ok(out)
}

/// Order of the subgroup of `Sym(E(n))` generated by all `s_τ` and `t_μ`,
/// found by closing the generator set under composition of the induced
/// permutations of `E(n)`.
pub fn closure_order(n: usize) -> Result<usize> {
    let e = enumerate_e(n)?;
    let pos = |s: Subset| e.binary_search(&s).unwrap();
    let as_perm = |g: &GroupElement| -> Vec<u16> { e.iter().map(|&s| pos(g.apply(s)) as u16).collect() };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(i, j);
            gens.push(as_perm(&GroupElement::permutation(p)?));
            gens.push(as_perm(&GroupElement::twist_by(n, Subset::pair(i, j))?));
        }
    }
    let id: Vec<u16> = (0..e.len() as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for h in &gens {
            let gh: Vec<u16> = g.iter().map(|&x| h[x as usize]).collect();
            if seen.insert(gh.clone()) {
                queue.push_back(gh);
            }
        }
    }
    Ok(seen.len())
}

/// Lexicographically least member of the `G_n`-orbit, comparing sorted
/// basis-string lists.
pub fn canonical_form(m: &DeltaMatroid) -> Result<DeltaMatroid> {
    if m.n() > 5 {
        return Err(Error::GroupTooLarge(m.n()));
    }
    Ok(group_elements(m.n())?
        .iter()
        .map(|g| g.apply_matroid(m))
        .min_by(|a, b| a.sorted_strings().cmp(&b.sorted_strings()))
        .expect("group is nonempty"))
}

/// All images of `m` under `G_n`.
pub fn orbit(m: &DeltaMatroid) -> Result<BTreeSet<DeltaMatroid>> {
    if m.n() > 5 {
        return Err(Error::GroupTooLarge(m.n()));
    }
    Ok(group_elements(m.n())?.iter().map(|g| g.apply_matroid(m)).collect())
}

pub fn equivalent(a: &DeltaMatroid, b: &DeltaMatroid) -> Result<bool> {
    if a.n() != b.n() {
        return Ok(false);
    }
    Ok(orbit(a)?.contains(b))
}
