//! The two nontrivial matroid subdivisions of Δ(4), computed from the ray
//! sums r3 and r2+r3.

use spinortrop::delta_matroid::DeltaMatroid;
use spinortrop::fan5::n4_ray_sum;
use spinortrop::polyhedra::regular_subdivision;

fn main() {
    let full = DeltaMatroid::full(4).unwrap();
    for (name, rays) in [("r3", vec![3]), ("r2+r3", vec![2, 3])] {
        let sub = regular_subdivision(&full, &n4_ray_sum(&rays).unwrap()).unwrap();
        println!("w = {name}, matroidal: {}", sub.is_matroidal());
        for (i, c) in sub.cells().iter().enumerate() {
            println!("  M{i}: {{{}}}", c.strings().join(", "));
        }
        println!("  edges: {:?}", sub.graph_edges());
    }
}
