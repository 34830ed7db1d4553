//! Subsets of `[n] = {0, .., n-1}` as bitmasks, the parity-filtered family
//! `E(n)`, the quadric sign function, and the exact rational type.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number. Always kept in lowest terms by `num-rational`.
pub type Rational = BigRational;

pub const MAX_GROUND: usize = 16;

const DIGITS: &[u8; 16] = b"0123456789abcdef";

pub fn check_ground(n: usize) -> Result<()> {
    if (1..=MAX_GROUND).contains(&n) {
        Ok(())
    } else {
        Err(Error::GroundSize(n))
    }
}

/// A subset of `[n]`, bit `i` set iff `i` is a member.
///
/// The ground size is not stored; operations that need it take `n`
/// explicitly. Ordering is the canonical one: by the integer value of
/// the mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut bits = 0u32;
        for e in elements {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            bits |= 1 << e;
        }
        Ok(Subset(bits))
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Subset((1 << i) | (1 << j))
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && (self.0 >> i) & 1 == 1
    }

    pub fn insert(self, i: usize) -> Self {
        Subset(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn sym_diff(self, other: Subset) -> Self {
        Subset(self.0 ^ other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn lies_in(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    /// Members in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| (bits >> i) & 1 == 1)
    }

    /// Indicator vector `e_λ` in `{0,1}^n`.
    pub fn indicator(self, n: usize) -> Vec<i64> {
        (0..n).map(|i| i64::from(self.contains(i))).collect()
    }

    /// Image under a permutation of `[n]` given as `perm[i] = image of i`.
    pub fn permute(self, perm: &[usize]) -> Self {
        Subset(self.elements().fold(0, |acc, i| acc | (1 << perm[i])))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::from_str(s)
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Accepts the juxtaposition convention (`"013"`); `""` and `"∅"`
    /// denote the empty set. Elements 10..15 are written `a`..`f`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "∅" || t == "{}" {
            return Ok(Subset::EMPTY);
        }
        let mut bits = 0u32;
        for ch in t.chars() {
            let d = ch
                .to_digit(16)
                .ok_or_else(|| Error::ParseSubset(s.to_string()))? as usize;
            if bits & (1 << d) != 0 {
                return Err(Error::ParseSubset(s.to_string()));
            }
            bits |= 1 << d;
        }
        Ok(Subset(bits))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.elements() {
            write!(f, "{}", DIGITS[i] as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The family `E(n)` of subsets `λ ⊆ [n]` with `n - |λ|` even, in
/// canonical (bitmask) order, with constant-time position lookup.
#[derive(Clone, Debug)]
pub struct ParityIndex {
    n: usize,
    order: Vec<Subset>,
    position: Vec<u32>,
}

impl ParityIndex {
    pub fn new(n: usize) -> Result<Self> {
        let order = enumerate_e(n)?;
        let mut position = vec![u32::MAX; 1 << n];
        for (k, s) in order.iter().enumerate() {
            position[s.bits() as usize] = k as u32;
        }
        Ok(ParityIndex { n, order, position })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn subsets(&self) -> &[Subset] {
        &self.order
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        if !s.lies_in(self.n) {
            return None;
        }
        match self.position[s.bits() as usize] {
            u32::MAX => None,
            k => Some(k as usize),
        }
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index_of(s).is_some()
    }
}

pub fn in_e(n: usize, s: Subset) -> bool {
    s.lies_in(n) && (n - s.len()).is_multiple_of(2)
}

/// All `λ ⊆ [n]` with `n - |λ|` even, sorted by bitmask value.
pub fn enumerate_e(n: usize) -> Result<Vec<Subset>> {
    check_ground(n)?;
    Ok((0u32..(1u32 << n))
        .map(Subset)
        .filter(|s| (n - s.len()).is_multiple_of(2))
        .collect())
}

/// `(-1)^ℓ` where `ℓ = #{j ∈ ν : i < j} + #{j' ∈ μ : i > j'}`.
pub fn sign_count(i: usize, mu: Subset, nu: Subset) -> i32 {
    let above = nu.elements().filter(|&j| j > i).count();
    let below = mu.elements().filter(|&j| j < i).count();
    if (above + below) % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::ParseRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| err())?)),
    }
}

/// `"p/q"` with `q > 0` in lowest terms, or `"p"` when `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter for rationals as strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Subset {
        x.parse().unwrap()
    }

    #[test]
    fn e4_matches_variable_list() {
        let e: Vec<String> = enumerate_e(4).unwrap().iter().map(|x| format!("{x:?}")).collect();
        assert_eq!(e, ["∅", "01", "02", "12", "03", "13", "23", "0123"]);
    }

    #[test]
    fn e5_is_odd_subsets() {
        let e = enumerate_e(5).unwrap();
        assert_eq!(e.len(), 16);
        assert!(e.iter().all(|x| x.len() % 2 == 1));
        let names: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        let printed = [
            "0", "1", "012", "2", "013", "023", "123", "3", "014", "024", "124", "034", "134",
            "234", "4", "01234",
        ];
        let mut a = names.clone();
        let mut b: Vec<String> = printed.iter().map(|x| x.to_string()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn e1_and_range() {
        assert_eq!(enumerate_e(1).unwrap(), vec![s("0")]);
        assert!(enumerate_e(0).is_err());
        assert!(enumerate_e(17).is_err());
        for n in 1..=10 {
            assert_eq!(enumerate_e(n).unwrap().len(), 1 << (n - 1));
        }
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign_count(1, s("0"), s("123")), -1);
        assert_eq!(sign_count(2, s("0"), s("123")), 1);
        assert_eq!(sign_count(0, s("123"), s("0")), 1);
    }

    #[test]
    fn sym_diff_identity_exhaustive() {
        for n in 1..=5 {
            let all = 1u32 << n;
            for a in 0..all {
                for b in 0..all {
                    let (x, y) = (Subset(a), Subset(b));
                    assert_eq!(x.sym_diff(y), x.union(y).difference(x.intersection(y)));
                    assert_eq!(x.sym_diff(x), Subset::EMPTY);
                }
            }
        }
    }

    #[test]
    fn e_closed_under_even_twists() {
        for n in 1..=5 {
            let idx = ParityIndex::new(n).unwrap();
            for mu in (0u32..(1 << n)).map(Subset).filter(|m| m.len() % 2 == 0) {
                for l in idx.subsets() {
                    assert!(idx.contains(l.sym_diff(mu)));
                }
            }
        }
    }

    #[test]
    fn subset_text_round_trip() {
        assert_eq!(s("013").to_string(), "013");
        assert_eq!(s(""), Subset::EMPTY);
        assert_eq!(s("∅"), Subset::EMPTY);
        assert_eq!(s("af").elements().collect::<Vec<_>>(), vec![10, 15]);
        assert!(Subset::parse("0x").is_err());
        assert!(Subset::parse("00").is_err());
    }

    #[test]
    fn rational_text() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-2").unwrap()), "-2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
