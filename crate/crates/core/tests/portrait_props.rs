use std::collections::BTreeSet;

use proptest::prelude::*;
use quaddyn::portrait::catalog::GAMMA_0;
use quaddyn::portrait::{enumerate_generic, minimal_extensions};
use quaddyn::{Catalog, CycleStructure, Portrait};

fn functional_graph() -> impl Strategy<Value = Portrait> {
    (1usize..=14)
        .prop_flat_map(|n| prop::collection::vec(0..n, n))
        .prop_map(|s| Portrait::new(s).unwrap())
}

fn graph_and_perm() -> impl Strategy<Value = (Portrait, Vec<usize>)> {
    functional_graph().prop_flat_map(|p| {
        let perm: Vec<usize> = (0..p.n()).collect();
        (Just(p), Just(perm).prop_shuffle())
    })
}

// Forward-closed subsets of catalog portraits are quadratic portraits.
fn quadratic_portrait() -> impl Strategy<Value = Portrait> {
    let bases: Vec<Portrait> = Catalog::builtin()
        .entries()
        .iter()
        .map(|e| e.portrait.clone())
        .collect();
    (
        prop::sample::select(bases),
        prop::collection::vec(any::<bool>(), 32),
    )
        .prop_map(|(p, mask)| {
            let mut keep = vec![false; p.n()];
            for v in (0..p.n()).filter(|&v| mask[v % mask.len()]) {
                let mut x = v;
                while !keep[x] {
                    keep[x] = true;
                    x = p.succ()[x];
                }
            }
            let index: Vec<Option<usize>> = keep
                .iter()
                .scan(0, |k, &b| {
                    Some(b.then(|| {
                        *k += 1;
                        *k - 1
                    }))
                })
                .collect();
            let succ = (0..p.n())
                .filter(|&v| keep[v])
                .map(|v| index[p.succ()[v]].unwrap())
                .collect();
            Portrait::new(succ).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_survives_relabelling((p, perm) in graph_and_perm()) {
        let q = p.relabel(&perm).unwrap();
        prop_assert_eq!(p.canonical_form(), q.canonical_form());
        prop_assert!(p.is_isomorphic(&q));
    }
}

proptest! {
    #[test]
    fn generic_closure_is_idempotent(p in quadratic_portrait()) {
        prop_assert!(p.is_quadratic());
        let g = p.generic_closure().unwrap();
        prop_assert!(g.is_generic_quadratic());
        prop_assert!(g.contains_subportrait(&p));
        prop_assert_eq!(g.generic_closure().unwrap().canonical_form(), g.canonical_form());
    }
}

fn properly_contains(big: &Portrait, small: &Portrait) -> bool {
    big.n() > small.n() && big.contains_subportrait(small)
}

// Minimal proper extensions from the direct construction agree with the ones
// read off an exhaustive enumeration.
#[test]
fn minimal_extensions_match_enumeration() {
    const MAX_CYCLE: u32 = 3;
    let cat = Catalog::builtin();
    for label in GAMMA_0 {
        let p = cat.portrait(label).unwrap();
        let base = p.cycle_structure();
        let mut allowed = vec![base.clone()];
        for len in 1..=MAX_CYCLE {
            let mut l = base.lengths().to_vec();
            // fixed points arrive in pairs
            l.extend(std::iter::repeat_n(len, if len == 1 { 2 } else { 1 }));
            allowed.push(CycleStructure::new(l).unwrap());
        }
        let bound = p.n() + 2 * MAX_CYCLE as usize;
        let above: Vec<Portrait> = enumerate_generic(bound, &allowed)
            .unwrap()
            .into_iter()
            .filter(|q| properly_contains(q, p))
            .collect();
        let minimal: BTreeSet<String> = above
            .iter()
            .filter(|q| !above.iter().any(|r| properly_contains(q, r)))
            .map(|q| q.canonical_form())
            .collect();
        let direct: BTreeSet<String> = minimal_extensions(p, MAX_CYCLE)
            .unwrap()
            .iter()
            .map(|q| q.canonical_form())
            .collect();
        assert_eq!(direct, minimal, "{label}");
    }
}
