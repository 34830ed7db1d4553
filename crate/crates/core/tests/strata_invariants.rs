use spinortrop::fixtures::FixtureSource;
use spinortrop::strata::{certify_smooth, matroid_variables, CellFamily, Certificate};
use spinortrop::Subset;

#[test]
fn facet_variables_are_contained_in_cell_variables() {
    let fix = FixtureSource::bundled().appendix().unwrap();
    let mut checked = 0;
    for e in &fix.subdivisions {
        let sub = e.subdivision().unwrap();
        for (i, j, facet) in sub.facet_pairs() {
            for &q in [i, j] {
                let cell = &sub.cells()[q];
                for &beta in &facet.label {
                    let twist = beta.complement(5);
                    let cm = cell.as_matroid(5).unwrap().twist(twist).unwrap();
                    let fm = facet.as_matroid(5).unwrap().twist(twist).unwrap();
                    assert!(matroid_variables(&fm).is_subset(&matroid_variables(&cm)));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn all_but_one_complement_is_basis_connecting() {
    let fix = FixtureSource::bundled().appendix().unwrap();
    for e in &fix.subdivisions {
        let sub = e.subdivision().unwrap();
        assert!(CellFamily::all(&sub).basis_connecting(), "{}", e.index);
        assert!(CellFamily::all(&sub).basis_covering(), "{}", e.index);
        if let Certificate::AllButOne { excluded, common, .. } = certify_smooth(&sub).unwrap() {
            let rest = CellFamily::new(&sub, (0..sub.cells().len()).filter(|&q| q != excluded)).unwrap();
            assert!(rest.basis_connecting(), "{}", e.index);
            assert!(rest.common_bases().contains(&common));
            assert!(!sub.cells()[excluded].contains(Subset::singleton(0)));
        }
    }
}

#[test]
fn certificate_json_shape() {
    let fix = FixtureSource::bundled().appendix().unwrap();
    let sub = fix.entry(0).unwrap().subdivision().unwrap();
    let json = certify_smooth(&sub).unwrap().to_json();
    assert_eq!(json["tag"], "AllButOne");
    assert_eq!(json["excluded"], 0);
    assert_eq!(json["common"], "0");
    assert_eq!(json["triangle"].as_array().unwrap().len(), 2);
}
