use std::collections::BTreeMap;

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use spinortrop::combinatorics::{enumerate_e, rat};
use spinortrop::delta_matroid::{group_elements, DeltaMatroid, DirectionVector, GroupElement};
use spinortrop::fixtures::FixtureSource;
use spinortrop::polyhedra::{edge_oracle, exchange_oracle, regular_subdivision, Cell, WeightVector};
use spinortrop::wick::{
    check_cayley, check_circuits, check_plucker_products, check_quadrics, determinant, matroid_of_wick, pfaffian,
    submatrix, valuation_weights, valued_initial, wick_vector, LaurentScalar, SkewMatrix,
};
use spinortrop::{Rational, Subset};

fn small_weights(n: usize, raw: &[i64]) -> WeightVector {
    let e = enumerate_e(n).unwrap();
    WeightVector::from_e_vector(n, &raw[..e.len()].iter().map(|&v| rat(v)).collect::<Vec<_>>()).unwrap()
}

fn group_image(g: &GroupElement, w: &WeightVector) -> WeightVector {
    let values: BTreeMap<Subset, Rational> = w.values().iter().map(|(s, v)| (g.apply(*s), v.clone())).collect();
    WeightVector::new(w.n(), values)
}

fn laurent(terms: &[(i64, i64)]) -> LaurentScalar {
    terms
        .iter()
        .fold(LaurentScalar::zero(), |acc, &(e, c)| acc + LaurentScalar::monomial(e, rat(c)))
}

fn fixture_cells() -> Vec<Cell> {
    FixtureSource::bundled()
        .appendix()
        .unwrap()
        .subdivisions
        .iter()
        .flat_map(|e| e.cell_list())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_skew_matrices_satisfy_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = SkewMatrix::random(5, &mut rng, 7, 4);
        let q = wick_vector(&x);
        prop_assert!(check_quadrics(&q));
        let m = matroid_of_wick(&q).unwrap();
        prop_assert!(m.satisfies_exchange() && m.is_even());
        prop_assert!(check_cayley(&x));
        prop_assert!(check_plucker_products(&x));
        prop_assert!(check_circuits(&x).pass());
    }

    #[test]
    fn sparse_skew_matrices_satisfy_identities(seed in any::<u64>(), zeros in prop::collection::vec(0usize..10, 0..7)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut x = SkewMatrix::random(5, &mut rng, 3, 1);
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| ((i + 1)..5).map(move |j| (i, j))).collect();
        for k in zeros {
            x.set(pairs[k].0, pairs[k].1, Rational::zero());
        }
        let q = wick_vector(&x);
        prop_assert!(check_quadrics(&q));
        prop_assert!(check_circuits(&x).pass());
    }

    #[test]
    fn pfaffian_squares_to_determinant(seed in any::<u64>(), bits in 0u32..64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = SkewMatrix::random(6, &mut rng, 9, 9);
        let l = Subset::from_bits(bits);
        let p = pfaffian(&x, l);
        prop_assert_eq!(determinant(&submatrix(&x, l, l)), p.clone() * p);
    }

    #[test]
    fn laurent_ring_axioms(
        a in prop::collection::vec((-3i64..4, -5i64..6), 0..4),
        b in prop::collection::vec((-3i64..4, -5i64..6), 0..4),
        c in prop::collection::vec((-3i64..4, -5i64..6), 0..4),
    ) {
        let (a, b, c) = (laurent(&a), laurent(&b), laurent(&c));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * LaurentScalar::one(), a.clone());
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!((a.clone() * b.clone()).val(), Some(a.val().unwrap() + b.val().unwrap()));
        }
    }

    #[test]
    fn valued_initial_realizes_cell(seed in any::<u64>(), u in prop::collection::vec(-3i64..4, 5)) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = SkewMatrix::from_fn(5, |_, _| {
            LaurentScalar::monomial(rng.gen_range(-1..3), rat(rng.gen_range(1..6)))
                + LaurentScalar::monomial(rng.gen_range(-1..3), rat(rng.gen_range(-5..6)))
        });
        let qt = wick_vector(&x);
        prop_assert!(check_quadrics(&qt));
        let w = valuation_weights(&qt).unwrap();
        let u = DirectionVector::from_i64(&u);
        let r = valued_initial(&qt, &u, &w).unwrap();
        prop_assert!(check_quadrics(&r));
        let m = matroid_of_wick(&qt).unwrap();
        let cell = spinortrop::polyhedra::select_cell(&m, &w, &u).unwrap();
        prop_assert_eq!(r.support(), cell.label);
    }

    #[test]
    fn shear_leaves_subdivision_unchanged(raw in prop::collection::vec(0i64..4, 8), u in prop::collection::vec(-3i64..4, 4), c in -5i64..5) {
        let full = DeltaMatroid::full(4).unwrap();
        let w = small_weights(4, &raw);
        let sheared = w.shear(&DirectionVector::from_i64(&u));
        let shifted = WeightVector::new(4, sheared.values().iter().map(|(s, v)| (*s, v + rat(c))).collect());
        let a = regular_subdivision(&full, &w).unwrap();
        let b = regular_subdivision(&full, &shifted).unwrap();
        prop_assert_eq!(a.cells(), b.cells());
    }

    #[test]
    fn subdivisions_cover_and_oracles_agree(raw in prop::collection::vec(0i64..3, 16)) {
        let full = DeltaMatroid::full(5).unwrap();
        let w = small_weights(5, &raw);
        let sub = regular_subdivision(&full, &w).unwrap();
        prop_assert!(sub.covers());
        for c in sub.cells() {
            prop_assert_eq!(exchange_oracle(5, c), edge_oracle(c));
        }
    }

    #[test]
    fn subdivision_is_equivariant(raw in prop::collection::vec(0i64..3, 8), k in 0usize..192) {
        let full = DeltaMatroid::full(4).unwrap();
        let g = &group_elements(4).unwrap()[k];
        let w = small_weights(4, &raw);
        let a = regular_subdivision(&full, &w).unwrap();
        let b = regular_subdivision(&full, &group_image(g, &w)).unwrap();
        let mut moved: Vec<Cell> = a.cells().iter().map(|c| Cell::new(c.label.iter().map(|&s| g.apply(s)))).collect();
        moved.sort_by(|x, y| x.label.cmp(&y.label));
        let mut got = b.cells().to_vec();
        got.sort_by(|x, y| x.label.cmp(&y.label));
        prop_assert_eq!(moved, got);
    }

    #[test]
    fn face_matroids_stay_even(cell in 0usize..149, u in prop::collection::vec(-2i64..3, 5)) {
        let cells = fixture_cells();
        let m = cells[cell % cells.len()].as_matroid(5).unwrap();
        let f = m.face_matroid(&DirectionVector::from_i64(&u));
        prop_assert!(f.satisfies_exchange() && f.is_even());
        for b in f.bases() {
            prop_assert!(m.contains(*b));
        }
    }

    #[test]
    fn group_images_of_cells_are_matroidal(cell in 0usize..149, k in 0usize..1920) {
        let cells = fixture_cells();
        let g = &group_elements(5).unwrap()[k];
        let c = &cells[cell % cells.len()];
        let image = Cell::new(c.label.iter().map(|&s| g.apply(s)));
        prop_assert!(exchange_oracle(5, &image));
        prop_assert!(edge_oracle(&image));
    }
}

#[test]
fn fixture_cell_count() {
    assert_eq!(fixture_cells().len(), 149);
}
