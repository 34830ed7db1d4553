//! Wick vector of a random skew-symmetric 5×5 matrix: the quadrics vanish,
//! its Δ-matroid is even, and fundamental circuits of [I | X] match those of
//! the symmetric matroid.

use num_traits::Zero;
use rand::SeedableRng;
use spinortrop::Rational;
use spinortrop::wick::{check_circuits, check_quadrics, matroid_of_wick, wick_vector, SkewMatrix};

fn main() {
    let seed = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut x = SkewMatrix::random(5, &mut rng, 4, 1);
    x.set(0, 1, Rational::zero());
    x.set(2, 3, Rational::zero());
    println!("X = {}", x.to_json());
    let q = wick_vector(&x);
    for (s, v) in q.entries() {
        println!("  q[{s:?}] = {v}");
    }
    let m = matroid_of_wick(&q).unwrap();
    println!("quadrics vanish: {}", check_quadrics(&q));
    println!("matroid: {:?}, even: {}", m.sorted_strings(), m.is_even());
    println!("circuits: {:?}", check_circuits(&x));
}
