//! Gale-rank certificates for the non-maximal cones of Σ₅, the dimension
//! column, the star gluing check and the n = 4 functionals.

use spinortrop::fan5::{load_sigma5, n4_invariance_check};

fn main() {
    let s5 = load_sigma5();
    for rep in s5.representatives() {
        match s5.gale_rank_check(rep.index).unwrap() {
            Some(r) => println!("τ{:<3} dim {:>2}  rank {:>2} / {:>2}  {}", r.row, r.dim, r.rank, r.expected, r.pass),
            None => println!("τ{:<3} dim {:>2}  maximal", rep.index, rep.dim),
        }
    }
    let bad: Vec<_> = s5.dim_consistency().into_iter().filter(|(_, a, b)| a != b).collect();
    println!("dimension mismatches: {bad:?}");
    let glue = s5.glue_check().unwrap();
    println!("glue: {glue:?}");
    println!("n = 4: {:?}", n4_invariance_check().unwrap());
}
