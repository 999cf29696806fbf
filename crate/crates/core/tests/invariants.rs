//! Randomized invariants over small groups.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use llfact_core::facto::{
    count_fact_by_composition, count_fact_k, compositions, enumerate_factorizations, hurwitz_move,
    enumerate_reduced_decompositions, Direction, Factorization,
};
use llfact_core::ncp::{build_nc, NcPoset};
use llfact_core::{build_group, Element, Group, GroupSpec};

const NAMES: [&str; 8] = ["A3", "B3", "D4", "H3", "F4", "G(3,3,3)", "G(3,1,3)", "I2(7)"];

fn posets() -> &'static Vec<NcPoset> {
    static P: OnceLock<Vec<NcPoset>> = OnceLock::new();
    P.get_or_init(|| {
        NAMES
            .iter()
            .map(|s| build_nc(Arc::new(build_group(s.parse::<GroupSpec>().unwrap()).unwrap())).unwrap())
            .collect()
    })
}

fn reduced() -> &'static Vec<Vec<Factorization>> {
    static R: OnceLock<Vec<Vec<Factorization>>> = OnceLock::new();
    R.get_or_init(|| posets().iter().map(|p| enumerate_reduced_decompositions(p.group()).unwrap()).collect())
}

fn element(g: &Group, i: usize) -> &Element {
    let t = g.length_table().unwrap();
    t.element(i % t.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn serialization_round_trips(k in 0..NAMES.len(), i in any::<usize>()) {
        let g = posets()[k].group();
        let w = element(g, i);
        prop_assert_eq!(&Element::from_bytes(&w.to_bytes()).unwrap(), w);
    }

    #[test]
    fn multiplication_is_associative(k in 0..NAMES.len(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let g = posets()[k].group();
        let (x, y, z) = (element(g, a), element(g, b), element(g, c));
        prop_assert_eq!(g.multiply(&g.multiply(x, y), z), g.multiply(x, &g.multiply(y, z)));
        prop_assert!(g.multiply(x, &g.inverse(x)).is_identity());
    }

    #[test]
    fn poset_order_matches_the_length_criterion(k in 0..NAMES.len(), a in any::<usize>(), b in any::<usize>()) {
        let nc = &posets()[k];
        let (u, v) = (a % nc.len(), b % nc.len());
        let g = nc.group();
        prop_assert_eq!(nc.leq(u, v), g.absolute_leq(nc.element(u), nc.element(v)).unwrap());
    }

    #[test]
    fn hurwitz_moves_invert(k in 0..NAMES.len(), pick in any::<usize>(), pos in any::<usize>()) {
        let reds = &reduced()[k];
        let f = &reds[pick % reds.len()];
        let g = posets()[k].group();
        let i = pos % (f.len() - 1);
        let there = hurwitz_move(g, f, i, Direction::Forward).unwrap();
        prop_assert_eq!(&hurwitz_move(g, &there, i, Direction::Backward).unwrap(), f);
        // the move stays inside Red(c)
        prop_assert!(Factorization::new(g, there.factors().to_vec()).is_ok());
    }

    #[test]
    fn factorization_rejects_wrong_products(k in 0..NAMES.len(), pick in any::<usize>()) {
        let reds = &reduced()[k];
        let f = &reds[pick % reds.len()];
        let g = posets()[k].group();
        let mut factors = f.factors().to_vec();
        factors.swap(0, 1);
        let swapped_product = factors.iter().fold(g.identity().clone(), |acc, x| g.multiply(&acc, x));
        prop_assert_eq!(Factorization::new(g, factors).is_ok(), &swapped_product == g.coxeter());
    }
}

#[test]
fn chain_counts_match_direct_enumeration() {
    for nc in posets() {
        let g = nc.group();
        let n = g.rank();
        for k in 1..=n {
            let mut total = 0usize;
            for comp in compositions(n, k) {
                let direct = enumerate_factorizations(g, &comp).unwrap().len();
                assert_eq!(count_fact_by_composition(nc, &comp).unwrap(), direct.into(), "{:?} {comp:?}", g.spec());
                total += direct;
            }
            assert_eq!(count_fact_k(nc, k).unwrap(), total.into(), "{:?} k={k}", g.spec());
        }
    }
}

#[test]
fn nc_is_a_lattice_interval() {
    for nc in posets() {
        let top = nc.top();
        for u in 0..nc.len() {
            assert!(nc.leq(0, u) && nc.leq(u, top) && nc.leq(u, u));
            for v in nc.above(u) {
                if v != u {
                    assert!(!nc.leq(v, u), "antisymmetry in {:?}", nc.group().spec());
                }
            }
        }
    }
}
