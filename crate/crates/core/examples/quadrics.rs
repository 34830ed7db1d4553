//! Prints the quadrics cutting out the spinor variety for n = 4, 5 and their
//! initial forms for two weights on E(4).

use spinortrop::polyhedra::WeightVector;
use spinortrop::wick::{initial_form, quadric_generators};
use spinortrop::Subset;

fn main() {
    for n in [4, 5] {
        let gens = quadric_generators(n);
        println!("n = {n}: {} generators", gens.len());
        for p in &gens {
            println!("  {p}");
        }
    }
    let p = &quadric_generators(4)[0];
    for support in [&["03", "12"][..], &["02", "12", "03", "13"]] {
        let subsets: Vec<Subset> = support.iter().map(|s| s.parse().unwrap()).collect();
        let w = WeightVector::indicator(4, &subsets).unwrap();
        println!("in_w with w = 1 on {support:?}: {}", initial_form(p, &w).unwrap());
    }
}
