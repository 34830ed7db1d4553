//! Recomputes one subdivision of Δ(5) from the sum of the rays of its cone
//! and prints it as Graphviz. Pass the representative index (default 10).

use spinortrop::delta_matroid::DeltaMatroid;
use spinortrop::fan5::load_sigma5;
use spinortrop::polyhedra::regular_subdivision;

fn main() {
    let index: i32 = std::env::args().nth(1).map(|a| a.parse().expect("integer index")).unwrap_or(10);
    let s5 = load_sigma5();
    let rep = s5.representative(index).expect("index between -1 and 18");
    let w = s5.interior_point(index).unwrap();
    let sub = regular_subdivision(&DeltaMatroid::full(5).unwrap(), &w).unwrap();
    eprintln!("rays {:?}: {} maximal cells, matroidal {}", rep.rays, sub.cells().len(), sub.is_matroidal());
    print!("{}", sub.to_dot(&format!("subdivision {index}")));
}
