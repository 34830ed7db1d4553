//! Face counts of Σ₅ modulo lineality and their G₅-orbits.

use spinortrop::delta_matroid::closure_order;
use spinortrop::fan5::load_sigma5;

fn main() {
    let rep = load_sigma5().orbit_fvector().unwrap();
    println!("f-vector            {:?}", rep.fvector);
    println!("orbits by dimension {:?}", rep.orbit_counts);
    for (row, size) in &rep.orbit_sizes {
        println!("  τ{row}: orbit of size {size}");
    }
    println!("|G5| = {}", closure_order(5).unwrap());
}
