use llfact_core::groups::{build_group, GroupSpec};
use num_bigint::BigUint;

fn specs() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D2", "D3", "D4", "D5", "G(3,1,1)", "G(3,1,2)", "G(3,1,3)", "G(4,1,3)",
        "G(3,3,3)", "G(4,4,3)", "G(5,5,3)", "G(6,6,3)", "G(3,3,4)", "G(4,4,4)", "H3", "H4", "F4", "E6"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    v.extend((3..=12).map(GroupSpec::I2));
    v
}

#[test]
fn degree_data_matches_construction() {
    for spec in specs() {
        let g = build_group(spec).unwrap();
        let n = g.rank();
        let h = g.coxeter_number() as u64;
        let refl: u32 = g.degrees().iter().map(|d| d - 1).sum();
        assert_eq!(g.reflections().len(), refl as usize, "{spec}: reflection count");
        assert_eq!(BigUint::from(g.enumerated_order().unwrap()), *g.order(), "{spec}: order");
        assert_eq!(g.coxeter().order(), h, "{spec}: order of c");
        assert_eq!(g.reflection_length(g.coxeter()).unwrap(), n, "{spec}: length of c");
        for r in g.reflections() {
            assert_eq!(r.fixed_space_codim(), 1, "{spec}: reflection codim");
            assert!(r.order() >= 2);
        }
    }
}
