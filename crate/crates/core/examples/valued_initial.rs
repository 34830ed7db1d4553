//! A 4×4 skew matrix over Laurent polynomials with x03 = x12 = t. Its
//! valuation vector induces the two-cell subdivision of Δ(4); each generic
//! direction selects one cell, realized by the initial Wick vector.

use spinortrop::combinatorics::rat;
use spinortrop::delta_matroid::{DeltaMatroid, DirectionVector};
use spinortrop::polyhedra::regular_subdivision;
use spinortrop::wick::{check_quadrics, matroid_of_wick, valuation_weights, valued_initial, wick_vector};
use spinortrop::wick::{LaurentScalar, SkewMatrix};

fn main() {
    let mut x = SkewMatrix::from_fn(4, |i, j| LaurentScalar::constant(rat((2 * i + 3 * j) as i64 - 2)));
    x.set(0, 3, LaurentScalar::t_power(1));
    x.set(1, 2, LaurentScalar::t_power(1));
    let qt = wick_vector(&x);
    let w = valuation_weights(&qt).unwrap();
    println!("val(q) = {}", w.to_json());
    let sub = regular_subdivision(&DeltaMatroid::full(4).unwrap(), &w).unwrap();
    for (i, c) in sub.cells().iter().enumerate() {
        println!("M{i}: {{{}}}", c.strings().join(", "));
    }
    for u in [[1, 0, 0, -1], [-1, 0, 0, 1], [0, 2, -1, 0]] {
        let r = valued_initial(&qt, &DirectionVector::from_i64(&u), &w).unwrap();
        let m = matroid_of_wick(&r).unwrap();
        println!("u = {u:?}: realizes {:?}, quadrics vanish {}", m.sorted_strings(), check_quadrics(&r));
    }
}
