use std::collections::BTreeSet;

use proptest::prelude::*;

use digraph_pfd::oracle::{
    brute_force_strong_pfd, enumerate_connected_digraphs, random_connected_digraph, random_prime_digraph,
    random_relabel, seeded_rng, OracleConfig,
};
use digraph_pfd::products::strong_product;
use digraph_pfd::strong::strong_pfd;
use digraph_pfd::{canonical_form, CanonicalForm, Digraph, ProductKind};

/// Every labeled digraph on `n` vertices, built from arc bitmasks.
fn labeled(n: usize) -> Vec<Digraph> {
    let slots: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    (0u32..1 << slots.len())
        .map(|mask| {
            Digraph::new(n, slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a)).unwrap()
        })
        .collect()
}

#[test]
fn enumeration_agrees_with_canonicalize_then_filter() {
    for n in 1..=3 {
        let direct: BTreeSet<CanonicalForm> =
            enumerate_connected_digraphs(n).unwrap().iter().map(|g| canonical_form(g).unwrap()).collect();
        let all_forms: BTreeSet<CanonicalForm> = labeled(n).iter().map(|g| canonical_form(g).unwrap()).collect();
        let filtered: BTreeSet<CanonicalForm> =
            all_forms.into_iter().filter(|f| f.to_digraph().is_connected()).collect();
        assert_eq!(direct, filtered, "n = {n}");
    }
    assert_eq!(enumerate_connected_digraphs(3).unwrap().len(), 13);
}

#[test]
fn enumeration_counts_on_four_vertices() {
    let graphs = enumerate_connected_digraphs(4).unwrap();
    assert_eq!(graphs.len(), 199);
    assert!(graphs.iter().all(|g| g.is_connected() && g.vertex_count() == 4));
}

#[test]
fn oracle_splits_three_factor_products() {
    let cfg = OracleConfig::default();
    let p2 = Digraph::directed_path(2);
    let g = strong_product(&[p2.clone(), p2.clone(), Digraph::complete(2)]).unwrap().into_graph();
    let f = brute_force_strong_pfd(&g, &cfg).unwrap();
    assert_eq!(f.factors.len(), 3);
    assert!(f.reconstructs(&g, ProductKind::Strong));
}

#[test]
fn sampled_primes_stay_prime_under_the_fast_path() {
    let cfg = OracleConfig::default();
    for seed in 0..20 {
        let g = random_prime_digraph(2..=6, seed, &cfg).unwrap();
        assert!(strong_pfd(&g).unwrap().is_prime(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn oracle_reconstructs_and_ignores_labels(n in 1usize..=8, seed in any::<u64>(), density in 0.1f64..0.9) {
        let mut rng = seeded_rng(seed);
        let g = random_connected_digraph(&mut rng, n, density);
        let cfg = OracleConfig::default();
        let f = brute_force_strong_pfd(&g, &cfg).unwrap();
        prop_assert!(f.reconstructs(&g, ProductKind::Strong));
        let h = brute_force_strong_pfd(&random_relabel(&mut rng, &g), &cfg).unwrap();
        prop_assert_eq!(f.canonical_factors().unwrap(), h.canonical_factors().unwrap());
        prop_assert_eq!(f.canonical_factors().unwrap(), strong_pfd(&g).unwrap().canonical_factors().unwrap());
    }
}
