//! Small exact linear programs: two-phase tableau simplex over the
//! rationals with Bland's anti-cycling rule.

use num_traits::{Signed, Zero};

use crate::combinatorics::Rational;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: Rational, x: Vec<Rational> },
}

struct Tableau {
    rows: Matrix,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    obj: Vec<Rational>,
    obj_value: Rational,
}

impl Tableau {
    fn set_objective(&mut self, c: &[Rational]) {
        let cols = c.len();
        let mut obj: Vec<Rational> = c.iter().map(|x| -x.clone()).collect();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (j, o) in obj.iter_mut().enumerate().take(cols) {
                *o += &c[b] * &self.rows[i][j];
            }
            value += &c[b] * &self.rhs[i];
        }
        self.obj = obj;
        self.obj_value = value;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, y) in self.obj.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.obj_value -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland pivots over the columns allowed by `allowed`. Returns
    /// false when unbounded.
    fn optimize(&mut self, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let entering = (0..self.obj.len()).find(|&j| allowed(j) && self.obj[j].is_negative());
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &Matrix, b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let nvars = c.len();
    let total = nvars + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Rational> = row
            .iter()
            .map(|x| if flip { -x.clone() } else { x.clone() })
            .collect();
        r.resize(total, Rational::zero());
        r[nvars + i] = Rational::from_integer(1.into());
        rows.push(r);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (nvars..total).collect(),
        obj: Vec::new(),
        obj_value: Rational::zero(),
    };

    // Phase 1: maximize -(sum of artificials).
    let mut phase1 = vec![Rational::zero(); total];
    for x in phase1.iter_mut().skip(nvars) {
        *x = Rational::from_integer((-1).into());
    }
    t.set_objective(&phase1);
    t.optimize(&|_| true);
    if t.obj_value.is_negative() {
        return LpOutcome::Infeasible;
    }

    // Drive artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= nvars {
            match (0..nvars).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = c.to_vec();
    cost.resize(total, Rational::zero());
    t.set_objective(&cost);
    if !t.optimize(&|j| j < nvars) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); nvars];
    for (r, &bv) in t.basis.iter().enumerate() {
        if bv < nvars {
            x[bv] = t.rhs[r].clone();
        }
    }
    LpOutcome::Optimal {
        value: t.obj_value.clone(),
        x,
    }
}
