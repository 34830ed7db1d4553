//! Pfaffians, Wick vectors and the quadrics `P(μ, ν)` cutting out the
//! spinor variety, together with Plücker minors of `[I | X]`, fundamental
//! circuits and a Laurent-polynomial model of a valued field.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{enumerate_e, format_rational, parse_rational, rat, sign_count, ParityIndex, Rational, Subset};
use crate::delta_matroid::{DeltaMatroid, DirectionVector};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Matrix};
use crate::polyhedra::WeightVector;

/// Coefficient rings used for matrix entries.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

// ---------------------------------------------------------------------------
// Laurent polynomials in t

/// A Laurent polynomial in `t` with rational coefficients; stands in for an
/// element of a valued field with valuation `val` = least exponent.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentScalar {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c·t^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentScalar { terms }
    }

    pub fn t_power(e: i64) -> Self {
        Self::monomial(e, Rational::one())
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    /// Least exponent; `None` for zero.
    pub fn val(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient of `t^{val}`.
    pub fn initial_coefficient(&self) -> Rational {
        self.terms.values().next().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(e, c)| (e.to_string(), serde_json::Value::String(format_rational(c))))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Invalid("Laurent scalar must be an object".into()))?;
        let mut out = LaurentScalar::zero();
        for (k, c) in obj {
            let e: i64 = k.parse().map_err(|_| Error::Invalid(format!("exponent {k:?}")))?;
            let c = c.as_str().ok_or_else(|| Error::ParseRational(c.to_string()))?;
            out = out + LaurentScalar::monomial(e, parse_rational(c)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({})t^{e}", format_rational(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for LaurentScalar {
    fn zero() -> Self {
        LaurentScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentScalar {
    fn one() -> Self {
        LaurentScalar::constant(Rational::one())
    }
}

impl Add for LaurentScalar {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            let entry = self.terms.entry(e).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&e);
            }
        }
        self
    }
}

impl Neg for LaurentScalar {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentScalar {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for LaurentScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for LaurentScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = LaurentScalar::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out = out + LaurentScalar::monomial(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Polynomials in the entries x_ij

/// A monomial in the variables `x_ij`, `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(BTreeMap<(usize, usize), u32>);

impl Monomial {
    pub fn var(i: usize, j: usize) -> Self {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Monomial(BTreeMap::from([((a, b), 1)]))
    }

    pub fn exponents(&self) -> &BTreeMap<(usize, usize), u32> {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (k, e) in &other.0 {
            *out.entry(*k).or_insert(0) += e;
        }
        Monomial(out)
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(k, e)| other.0.get(k).map(|f| (*k, (*e).min(*f))))
                .collect(),
        )
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (k, e) in &other.0 {
            let v = out.get_mut(k).expect("divisor divides");
            *v -= e;
            if *v == 0 {
                out.remove(k);
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for ((i, j), e) in &self.0 {
            write!(f, "x{i:x}{j:x}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial over the rationals in the variables `x_ij`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn var(i: usize, j: usize) -> Self {
        Poly {
            terms: BTreeMap::from([(Monomial::var(i, j), Rational::one())]),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::default(), c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Variables occurring in some term.
    pub fn variables(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.terms.keys().flat_map(|m| m.0.keys().copied()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Sets the variables failing `keep` to zero.
    pub fn restrict(&self, keep: &dyn Fn(usize, usize) -> bool) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0.keys().all(|&(i, j)| keep(i, j)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Divides out the monomial content and scales so that the leading
    /// coefficient (in term order) is 1. Two polynomials agree up to sign
    /// and monomial units iff their normal forms agree.
    pub fn unit_normal(&self) -> Poly {
        let Some(first) = self.terms.keys().next() else {
            return Poly::zero();
        };
        let g = self.terms.keys().fold(first.clone(), |g, m| g.gcd(m));
        let divided: BTreeMap<Monomial, Rational> = self.terms.iter().map(|(m, c)| (m.div(&g), c.clone())).collect();
        let lead = divided.values().next().cloned().unwrap();
        Poly {
            terms: divided.into_iter().map(|(m, c)| (m, c / &lead)).collect(),
        }
    }

    /// Evaluates at given values of the variables (missing ones are 0).
    pub fn eval(&self, values: &HashMap<(usize, usize), Rational>) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (k, e) in &m.0 {
                let v = values.get(k).cloned().unwrap_or_else(Rational::zero);
                for _ in 0..*e {
                    t *= &v;
                }
            }
            acc + t
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono = m.to_string();
            if a.is_one() && mono != "1" {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{}", format_rational(&a))?;
            } else {
                write!(f, "{}{mono}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rational::one())
    }
}

impl Add for Poly {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            let entry = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&m);
            }
        }
        self
    }
}

impl Neg for Poly {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for Poly {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out = out
                    + Poly {
                        terms: BTreeMap::from([(m1.mul(m2), c1 * c2)]),
                    };
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Skew-symmetric matrices and Pfaffians

/// A skew-symmetric `n × n` matrix, stored by its strict upper triangle.
#[derive(Clone, PartialEq)]
pub struct SkewMatrix<R> {
    n: usize,
    upper: Vec<R>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl<R: Ring> SkewMatrix<R> {
    pub fn zero(n: usize) -> Self {
        SkewMatrix {
            n,
            upper: vec![R::zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// Builds the matrix from `f(i, j)` for `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                upper.push(f(i, j));
            }
        }
        SkewMatrix { n, upper }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `x_ij`, with `x_ji = −x_ij` and `x_ii = 0`.
    pub fn get(&self, i: usize, j: usize) -> R {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => -self.upper[pair_index(self.n, j, i)].clone(),
            std::cmp::Ordering::Equal => R::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        if i < j {
            let k = pair_index(self.n, i, j);
            self.upper[k] = v;
        } else if j < i {
            let k = pair_index(self.n, j, i);
            self.upper[k] = -v;
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SkewMatrix<S> {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    /// The dense `n × n` matrix.
    pub fn dense(&self) -> Vec<Vec<R>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

impl<R: Ring> fmt::Debug for SkewMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SkewMatrix").field("n", &self.n).field("upper", &self.upper).finish()
    }
}

impl SkewMatrix<Rational> {
    /// Entries drawn uniformly from `{-range..=range} / {1..=den}`.
    pub fn random<G: Rng>(n: usize, rng: &mut G, range: i64, den: i64) -> Self {
        SkewMatrix::from_fn(n, |_, _| {
            crate::combinatorics::ratio(rng.gen_range(-range..=range), rng.gen_range(1..=den))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = serde_json::Map::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    entries.insert(Subset::pair(i, j).to_string(), serde_json::Value::String(format_rational(&v)));
                }
            }
        }
        serde_json::json!({ "n": self.n, "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let n = v["n"].as_u64().ok_or_else(|| Error::Invalid("missing n".into()))? as usize;
        crate::combinatorics::check_ground(n)?;
        let mut x = SkewMatrix::zero(n);
        if let Some(obj) = v["entries"].as_object() {
            for (k, val) in obj {
                let s: Subset = k.parse()?;
                let e: Vec<usize> = s.elements().collect();
                if e.len() != 2 || e[1] >= n {
                    return Err(Error::Invalid(format!("entry key {k:?}")));
                }
                let r = parse_rational(val.as_str().ok_or_else(|| Error::ParseRational(val.to_string()))?)?;
                x.set(e[0], e[1], r);
            }
        }
        Ok(x)
    }
}

impl SkewMatrix<Poly> {
    /// The matrix of variables `x_ij`.
    pub fn generic(n: usize) -> Self {
        SkewMatrix::from_fn(n, Poly::var)
    }
}

/// `Pf(X[λ])` by expansion along the first row; `Pf(∅) = 1`, odd → 0.
pub fn pfaffian<R: Ring>(x: &SkewMatrix<R>, lambda: Subset) -> R {
    let elems: Vec<usize> = lambda.elements().collect();
    pf_rec(x, &elems)
}

fn pf_rec<R: Ring>(x: &SkewMatrix<R>, elems: &[usize]) -> R {
    if elems.is_empty() {
        return R::one();
    }
    if elems.len() % 2 == 1 {
        return R::zero();
    }
    let a = elems[0];
    let mut acc = R::zero();
    for k in 1..elems.len() {
        let entry = x.get(a, elems[k]);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = elems[1..].iter().enumerate().filter(|(p, _)| *p + 1 != k).map(|(_, &e)| e).collect();
        let term = entry * pf_rec(x, &rest);
        acc = if k % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}

/// Determinant by Laplace expansion along rows, memoized on the set of
/// columns still available. Works over any commutative ring.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let k = m.len();
    if k == 0 {
        return R::one();
    }
    let mut memo: HashMap<u32, R> = HashMap::new();
    det_rec(m, 0, (1u32 << k) - 1, &mut memo)
}

fn det_rec<R: Ring>(m: &[Vec<R>], row: usize, cols: u32, memo: &mut HashMap<u32, R>) -> R {
    if row == m.len() {
        return R::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = R::zero();
    let mut pos = 0;
    for c in 0..m.len() {
        if cols >> c & 1 == 0 {
            continue;
        }
        let e = &m[row][c];
        if !e.is_zero() {
            let t = e.clone() * det_rec(m, row + 1, cols & !(1 << c), memo);
            acc = if pos % 2 == 0 { acc + t } else { acc - t };
        }
        pos += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// `X[rows, cols]` as a dense matrix.
pub fn submatrix<R: Ring>(x: &SkewMatrix<R>, rows: Subset, cols: Subset) -> Vec<Vec<R>> {
    rows.elements().map(|i| cols.elements().map(|j| x.get(i, j)).collect()).collect()
}

// ---------------------------------------------------------------------------
// Wick vectors

/// Coordinates `q_λ`, `λ ∈ E(n)`, in canonical order.
#[derive(Clone, PartialEq, Debug)]
pub struct WickVector<R> {
    n: usize,
    q: Vec<R>,
}

impl<R: Ring> WickVector<R> {
    pub fn new(n: usize, q: Vec<R>) -> Result<Self> {
        let expected = enumerate_e(n)?.len();
        if q.len() != expected {
            return Err(Error::WrongSize { got: q.len(), expected });
        }
        Ok(WickVector { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[R] {
        &self.q
    }

    /// `q_λ`; zero off `E(n)`.
    pub fn get(&self, lambda: Subset) -> R {
        let idx = ParityIndex::new(self.n).expect("valid n");
        match idx.index_of(lambda) {
            Some(k) => self.q[k].clone(),
            None => R::zero(),
        }
    }

    pub fn entries(&self) -> Vec<(Subset, R)> {
        enumerate_e(self.n).expect("valid n").into_iter().zip(self.q.iter().cloned()).collect()
    }

    pub fn support(&self) -> Vec<Subset> {
        self.entries().into_iter().filter(|(_, v)| !v.is_zero()).map(|(s, _)| s).collect()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WickVector<S> {
        WickVector {
            n: self.n,
            q: self.q.iter().map(f).collect(),
        }
    }
}

/// `q_λ = Pf(X[[n] ∖ λ])` for `λ ∈ E(n)`.
pub fn wick_vector<R: Ring>(x: &SkewMatrix<R>) -> WickVector<R> {
    let n = x.n();
    let q = enumerate_e(n)
        .expect("valid n")
        .into_iter()
        .map(|l| pfaffian(x, l.complement(n)))
        .collect();
    WickVector { n, q }
}

/// The Δ-matroid `{λ : q_λ ≠ 0}`.
pub fn matroid_of_wick<R: Ring>(q: &WickVector<R>) -> Result<DeltaMatroid> {
    let supp = q.support();
    if supp.is_empty() {
        return Err(Error::ZeroVector);
    }
    DeltaMatroid::new(q.n(), supp)
}

// ---------------------------------------------------------------------------
// Quadrics

/// `Σ sign·q_η·q_λ`; each term stores `η ≤ λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quadric {
    pub mu: Subset,
    pub nu: Subset,
    pub terms: Vec<(i32, Subset, Subset)>,
}

impl Quadric {
    /// `P(μ, ν)`; `None` when `|μ Δ ν| < 4` or the parities are wrong.
    pub fn new(n: usize, mu: Subset, nu: Subset) -> Option<Quadric> {
        if (n - mu.len()).is_multiple_of(2) || (n - nu.len()).is_multiple_of(2) || mu.sym_diff(nu).len() < 4 {
            return None;
        }
        let mut terms = Vec::new();
        for i in nu.difference(mu).elements() {
            terms.push(ordered(sign_count(i, mu, nu), mu.insert(i), nu.remove(i)));
        }
        for j in mu.difference(nu).elements() {
            terms.push(ordered(sign_count(j, nu, mu), mu.remove(j), nu.insert(j)));
        }
        terms.sort_by_key(|t| (t.1, t.2));
        Some(Quadric { mu, nu, terms })
    }

    /// Terms with the first sign made positive.
    pub fn sign_normalized(&self) -> Vec<(i32, Subset, Subset)> {
        let flip = self.terms.first().map(|t| t.0 < 0).unwrap_or(false);
        self.terms
            .iter()
            .map(|&(s, a, b)| (if flip { -s } else { s }, a, b))
            .collect()
    }

    pub fn eval<R: Ring>(&self, q: &WickVector<R>) -> R {
        self.terms.iter().fold(R::zero(), |acc, &(s, a, b)| {
            let t = q.get(a) * q.get(b);
            if s > 0 {
                acc + t
            } else {
                acc - t
            }
        })
    }

    pub fn same_up_to_sign(&self, other: &Quadric) -> bool {
        self.sign_normalized() == other.sign_normalized()
    }
}

fn ordered(s: i32, a: Subset, b: Subset) -> (i32, Subset, Subset) {
    if a <= b {
        (s, a, b)
    } else {
        (s, b, a)
    }
}

impl fmt::Display for Quadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(s, a, b)) in self.terms.iter().enumerate() {
            if k == 0 {
                if s < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if s < 0 { " - " } else { " + " })?;
            }
            write!(f, "q{a:?}q{b:?}")?;
        }
        Ok(())
    }
}

/// Generators of `I_n`: one quadric per unordered admissible pair,
/// deduplicated up to overall sign. Empty for `n < 4`.
pub fn quadric_generators(n: usize) -> Vec<Quadric> {
    if !(4..=crate::combinatorics::MAX_GROUND).contains(&n) {
        return Vec::new();
    }
    let odd: Vec<Subset> = (0u32..(1 << n))
        .map(Subset::from_bits)
        .filter(|s| (n - s.len()) % 2 == 1)
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (a, &mu) in odd.iter().enumerate() {
        for &nu in &odd[a + 1..] {
            if let Some(p) = Quadric::new(n, mu, nu) {
                if seen.insert(p.sign_normalized()) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Terms of `P` minimizing `w_η + w_λ`.
pub fn initial_form(p: &Quadric, w: &WeightVector) -> Result<Quadric> {
    let weight = |s: Subset| w.get(s).cloned().ok_or(Error::WeightKeys);
    let vals: Vec<Rational> = p
        .terms
        .iter()
        .map(|&(_, a, b)| Ok(weight(a)? + weight(b)?))
        .collect::<Result<_>>()?;
    let Some(min) = vals.iter().min().cloned() else {
        return Ok(p.clone());
    };
    Ok(Quadric {
        mu: p.mu,
        nu: p.nu,
        terms: p.terms.iter().zip(&vals).filter(|(_, v)| **v == min).map(|(t, _)| *t).collect(),
    })
}

/// Every generator of `I_n` vanishes at `q`.
pub fn check_quadrics<R: Ring>(q: &WickVector<R>) -> bool {
    quadric_generators(q.n()).iter().all(|p| p.eval(q).is_zero())
}

// ---------------------------------------------------------------------------
// The ground set J = [n] ⊔ [n]* and Plücker minors of [I | X]

/// A subset of `J = [n] ⊔ [n]*`: bit `i` is `i`, bit `n + i` is `i*`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JSet {
    n: usize,
    bits: u32,
}

impl JSet {
    pub fn new(n: usize, bits: u32) -> Self {
        JSet { n, bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n
    }

    /// The transversal `μ̄ = μ ∪ {i* : i ∉ μ}`.
    pub fn transversal(n: usize, mu: Subset) -> Self {
        let comp = mu.complement(n).bits();
        JSet {
            n,
            bits: mu.bits() | (comp << n),
        }
    }

    pub fn element(n: usize, j: usize) -> Self {
        JSet { n, bits: 1 << j }
    }

    pub fn contains(self, j: usize) -> bool {
        self.bits >> j & 1 == 1
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// `τ ∩ [n]`.
    pub fn unstarred(self) -> Subset {
        Subset::from_bits(self.bits & ((1 << self.n) - 1))
    }

    pub fn is_admissible(self) -> bool {
        let low = self.bits & ((1 << self.n) - 1);
        let high = self.bits >> self.n;
        low & high == 0
    }

    pub fn is_transversal(self) -> bool {
        self.is_admissible() && self.len() == self.n
    }

    pub fn sym_diff(self, other: JSet) -> JSet {
        JSet {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }
}

/// `j ↦ j*` on indices of `J`.
pub fn star(n: usize, j: usize) -> usize {
    if j < n {
        j + n
    } else {
        j - n
    }
}

/// Name of an element of `J`, e.g. `3` or `3*`.
pub fn j_name(n: usize, j: usize) -> String {
    if j < n {
        format!("{j:x}")
    } else {
        format!("{:x}*", j - n)
    }
}

impl fmt::Debug for JSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements().map(|j| j_name(self.n, j)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// `{i, i*, j, j*}` as a set.
pub fn ii_jj(n: usize, i: usize, j: usize) -> JSet {
    JSet::new(n, (1 << i) | (1 << star(n, i)) | (1 << j) | (1 << star(n, j)))
}

/// Column `c ∈ J` of `W = [I | X]`.
fn w_column<R: Ring>(x: &SkewMatrix<R>, c: usize) -> Vec<R> {
    let n = x.n();
    if c < n {
        (0..n).map(|r| if r == c { R::one() } else { R::zero() }).collect()
    } else {
        (0..n).map(|r| x.get(r, c - n)).collect()
    }
}

/// `det W[[n], τ]` with columns taken in the order `0,…,n−1,0*,…,(n−1)*`.
pub fn plucker_minor<R: Ring>(x: &SkewMatrix<R>, tau: JSet) -> Result<R> {
    let n = x.n();
    if tau.len() != n {
        return Err(Error::WrongSize {
            got: tau.len(),
            expected: n,
        });
    }
    let cols: Vec<Vec<R>> = tau.elements().map(|c| w_column(x, c)).collect();
    let m: Vec<Vec<R>> = (0..n).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    Ok(determinant(&m))
}

/// Bases of the symmetric matroid `M̄`.
pub fn symmetric_bases(m: &DeltaMatroid) -> Vec<JSet> {
    m.bases().iter().map(|&b| JSet::transversal(m.n(), b)).collect()
}

/// `γ̄(τ, j) = {i ∈ τ : τ Δ {i, i*, j, j*} ∈ B(M̄)} ∪ {j}`.
pub fn fundamental_circuit(m: &DeltaMatroid, tau: JSet, j: usize) -> Result<JSet> {
    let n = m.n();
    let bases = symmetric_bases(m);
    if !bases.contains(&tau) {
        return Err(Error::NotABasis(format!("{tau:?}")));
    }
    if tau.contains(j) || j >= 2 * n {
        return Err(Error::Invalid(format!("{} lies in τ", j_name(n, j))));
    }
    let mut bits = 1u32 << j;
    for i in tau.elements() {
        if bases.contains(&tau.sym_diff(ii_jj(n, i, j))) {
            bits |= 1 << i;
        }
    }
    Ok(JSet::new(n, bits))
}

/// `γ(τ, j) = {i ∈ τ : p_{τ Δ ij} ≠ 0} ∪ {j}` from the Plücker vector of
/// the row space of `[I | X]`.
pub fn plucker_circuit(x: &SkewMatrix<Rational>, tau: JSet, j: usize) -> Result<JSet> {
    let n = x.n();
    if plucker_minor(x, tau)?.is_zero() {
        return Err(Error::NotABasis(format!("{tau:?}")));
    }
    let mut bits = 1u32 << j;
    for i in tau.elements() {
        let swapped = JSet::new(n, (tau.bits() & !(1 << i)) | (1 << j));
        if !plucker_minor(x, swapped)?.is_zero() {
            bits |= 1 << i;
        }
    }
    Ok(JSet::new(n, bits))
}

/// A linear form `Σ c_k y_k` over `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    pub n: usize,
    pub coefficients: BTreeMap<usize, Rational>,
}

impl LinearForm {
    pub fn support(&self) -> JSet {
        JSet::new(
            self.n,
            self.coefficients
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .fold(0, |b, (k, _)| b | (1 << k)),
        )
    }

    /// Value on a vector indexed by `J`.
    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, (k, c)| acc + c * &v[*k])
    }

    pub fn dense(&self) -> Vec<Rational> {
        (0..2 * self.n)
            .map(|k| self.coefficients.get(&k).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }
}

/// Row `r` of `[I | X]` as a vector indexed by `J`.
pub fn w_row(x: &SkewMatrix<Rational>, r: usize) -> Vec<Rational> {
    let n = x.n();
    (0..2 * n)
        .map(|c| {
            if c < n {
                rat((c == r) as i64)
            } else {
                x.get(r, c - n)
            }
        })
        .collect()
}

/// A fixed matrix whose Wick coordinates are all nonzero; it fixes the
/// signs of circuit forms.
fn reference_matrix(n: usize) -> SkewMatrix<Rational> {
    use rand::SeedableRng;
    let mut seed = 0u64;
    loop {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed + seed);
        let x = SkewMatrix::random(n, &mut rng, 9, 1);
        if wick_vector(&x).values().iter().all(|v| !v.is_zero()) {
            return x;
        }
        seed += 1;
    }
}

/// Signs `ε_i` with `m_γ = q_μ y_j + Σ_i ε_i q_{ν_i} y_i` vanishing on the
/// row space, read off the null-space form of the reference matrix.
fn circuit_signs(n: usize, tau: JSet, j: usize) -> BTreeMap<usize, i32> {
    let x = reference_matrix(n);
    let q = wick_vector(&x);
    let cols: Vec<usize> = tau.elements().chain(std::iter::once(j)).collect();
    // Rows of W restricted to τ ∪ j; its kernel is the form.
    let m: Matrix = (0..n)
        .map(|r| {
            let row = w_row(&x, r);
            cols.iter().map(|&c| row[c].clone()).collect()
        })
        .collect();
    let k = kernel(&m, cols.len());
    let v = &k[0];
    let last = v.len() - 1;
    let scale = q.get(tau.unstarred()) / &v[last];
    let mut out = BTreeMap::new();
    for (p, &i) in cols[..last].iter().enumerate() {
        let c = &v[p] * &scale;
        let target = q.get(tau.sym_diff(ii_jj(n, i, j)).unstarred());
        if c.is_zero() || target.is_zero() {
            continue;
        }
        out.insert(i, if (c / target).is_positive() { 1 } else { -1 });
    }
    out
}

/// `m_γ` for the fundamental circuit of `(τ, j)`: coefficient `q_{τ∩[n]}`
/// on `y_j` and `±q_{(τ Δ ii*jj*)∩[n]}` on `y_i`.
pub fn circuit_form(q: &WickVector<Rational>, tau: JSet, j: usize) -> Result<LinearForm> {
    let n = q.n();
    let m = matroid_of_wick(q)?;
    if !symmetric_bases(&m).contains(&tau) {
        return Err(Error::NotABasis(format!("{tau:?}")));
    }
    if tau.contains(j) || j >= 2 * n {
        return Err(Error::Invalid(format!("{} lies in τ", j_name(n, j))));
    }
    let signs = circuit_signs(n, tau, j);
    let mut coefficients = BTreeMap::new();
    coefficients.insert(j, q.get(tau.unstarred()));
    for i in tau.elements() {
        let v = q.get(tau.sym_diff(ii_jj(n, i, j)).unstarred());
        if v.is_zero() {
            continue;
        }
        let s = signs.get(&i).copied().unwrap_or(1);
        coefficients.insert(i, if s > 0 { v } else { -v });
    }
    Ok(LinearForm { n, coefficients })
}

/// `|det X[λ∖i, λ∖j]|` against the Pfaffian products, for every `λ ⊆ [n]`
/// and distinct `i, j ∈ λ`. When `|λ|` is odd the product is
/// `Pf(X[λ∖i])·Pf(X[λ∖j])`; when even it is `Pf(X[λ])·Pf(X[λ∖ij])`.
pub fn check_cayley(x: &SkewMatrix<Rational>) -> bool {
    let n = x.n();
    (0u32..(1 << n)).map(Subset::from_bits).all(|lambda| {
        let el: Vec<usize> = lambda.elements().collect();
        el.iter().all(|&i| {
            el.iter().filter(|&&j| j != i).all(|&j| {
                let (mu, nu) = (lambda.remove(i), lambda.remove(j));
                let d = determinant(&submatrix(x, mu, nu));
                let d2 = determinant(&submatrix(x, nu, mu));
                let rhs = if mu.len() % 2 == 0 {
                    pfaffian(x, mu) * pfaffian(x, nu)
                } else {
                    pfaffian(x, lambda) * pfaffian(x, lambda.remove(i).remove(j))
                };
                d.abs() == rhs.abs() && d2.abs() == d.abs()
            })
        })
    })
}

/// `|p_{τ Δ ij}| = |q_{τ∩[n]}·q_{(τ Δ ii*jj*)∩[n]}|` for every transversal
/// `τ` with `n − |τ∩[n]|` even, `i ∈ τ`, `j ∉ τ`.
pub fn check_plucker_products(x: &SkewMatrix<Rational>) -> bool {
    let n = x.n();
    let q = wick_vector(x);
    enumerate_e(n).expect("valid n").into_iter().all(|mu| {
        let tau = JSet::transversal(n, mu);
        tau.elements().all(|i| {
            (0..2 * n).filter(|&j| !tau.contains(j)).all(|j| {
                let swapped = JSet::new(n, (tau.bits() & !(1 << i)) | (1 << j));
                let p = plucker_minor(x, swapped).expect("size n");
                let other = tau.sym_diff(ii_jj(n, i, j));
                let rhs = if other.is_transversal() {
                    q.get(mu) * q.get(other.unstarred())
                } else {
                    Rational::zero()
                };
                p.abs() == rhs.abs()
            })
        })
    })
}

/// Outcome of the circuit checks for one matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CircuitReport {
    pub pairs: usize,
    pub circuits_equal: bool,
    pub forms_vanish: bool,
    pub supports_match: bool,
    pub full_rank: bool,
}

impl CircuitReport {
    pub fn pass(&self) -> bool {
        self.circuits_equal && self.forms_vanish && self.supports_match && self.full_rank
    }
}

/// For every basis transversal `τ` and `j ∉ τ`: Plücker circuit equals the
/// symmetric-matroid circuit, `m_γ` vanishes on the rows of `[I | X]` with
/// support `γ`, and the `n` forms of each `τ` have rank `n`.
pub fn check_circuits(x: &SkewMatrix<Rational>) -> CircuitReport {
    let n = x.n();
    let q = wick_vector(x);
    let m = matroid_of_wick(&q).expect("q_[n] = 1");
    let rows: Vec<Vec<Rational>> = (0..n).map(|r| w_row(x, r)).collect();
    let mut rep = CircuitReport {
        pairs: 0,
        circuits_equal: true,
        forms_vanish: true,
        supports_match: true,
        full_rank: true,
    };
    for tau in symmetric_bases(&m) {
        let mut forms = Vec::new();
        for j in (0..2 * n).filter(|&j| !tau.contains(j)) {
            rep.pairs += 1;
            let gbar = fundamental_circuit(&m, tau, j).expect("basis");
            let g = plucker_circuit(x, tau, j).expect("basis");
            rep.circuits_equal &= g == gbar;
            let f = circuit_form(&q, tau, j).expect("basis");
            rep.forms_vanish &= rows.iter().all(|r| f.eval(r).is_zero());
            rep.supports_match &= f.support() == gbar;
            forms.push(f.dense());
        }
        rep.full_rank &= crate::linalg::rank(&forms) == n;
    }
    rep
}

// ---------------------------------------------------------------------------
// Valued layer

/// `w_λ = val(q_λ)` on the support of `qt`.
pub fn valuation_weights(qt: &WickVector<LaurentScalar>) -> Result<WeightVector> {
    let values: BTreeMap<Subset, Rational> = qt
        .entries()
        .into_iter()
        .filter_map(|(s, v)| v.val().map(|e| (s, rat(e))))
        .collect();
    if values.is_empty() {
        return Err(Error::ZeroVector);
    }
    Ok(WeightVector::new(qt.n(), values))
}

/// Initial coefficients of `qt` on `B(M_u^w)`, zero elsewhere; `w` must be
/// the valuation vector of `qt`.
pub fn valued_initial(
    qt: &WickVector<LaurentScalar>,
    u: &DirectionVector,
    w: &WeightVector,
) -> Result<WickVector<Rational>> {
    let vals = valuation_weights(qt)?;
    if vals.values() != w.values() {
        return Err(Error::WeightKeys);
    }
    let m = matroid_of_wick(qt)?;
    let cell = crate::polyhedra::select_cell(&m, w, u)?;
    let q = qt
        .entries()
        .into_iter()
        .map(|(s, v)| if cell.contains(s) { v.initial_coefficient() } else { Rational::zero() })
        .collect();
    WickVector::new(qt.n(), q)
}

/// `B(M_u^w)` for the valuation vector of `qt`.
pub fn valued_cell(qt: &WickVector<LaurentScalar>, u: &DirectionVector) -> Result<Vec<Subset>> {
    let w = valuation_weights(qt)?;
    let m = matroid_of_wick(qt)?;
    Ok(crate::polyhedra::select_cell(&m, &w, u)?.label)
}
