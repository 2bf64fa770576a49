mod common;

use common::Oracle;
use dcc_core::cover::defects;
use dcc_core::graph::degeneracy;
use dcc_core::random::{random_cover, random_graph, random_maximal_cover, DetRng};
use dcc_core::solver::{
    contribution_set, enumerate_colorings, enumerate_colorings_with_budget, find_coloring,
    find_coloring_with_budget, greedy_color, hub_feasible, ContributionSet,
};
use dcc_core::{Coloring, Cover, DefectConstraint, Graph, SolverError};
use proptest::prelude::*;

fn small_instance(seed: u64) -> (Cover, Vec<usize>, DefectConstraint, Vec<Option<usize>>, Coloring) {
    let mut rng = DetRng::new(seed);
    let n = 1 + rng.below(7);
    let graph = random_graph(n, 1, 2, &mut rng);
    let sizes: Vec<usize> = (0..n).map(|_| 1 + rng.below(3)).collect();
    let cover = random_cover(graph, sizes, &mut rng);
    let d = rng.below(3);
    let mut k = DefectConstraint::uniform(d);
    let mut caps = vec![d; n];
    let mut pins = vec![None; n];
    let mut pin = Coloring::empty(n);
    for v in 0..n {
        match rng.below(5) {
            0 => {
                caps[v] = 0;
                k = k.with_cap(v, 0);
            }
            1 => {
                let c = rng.below(cover.list_size(v));
                pins[v] = Some(c);
                pin.set(v, c);
            }
            _ => {}
        }
    }
    (cover, caps, k, pins, pin)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn search_agrees_with_enumeration(seed in any::<u64>()) {
        let (cover, caps, k, pins, pin) = small_instance(seed);
        let cert = find_coloring(&cover, &k, &pin).unwrap();
        prop_assert_eq!(cert.is_feasible(), Oracle::new(&cover).exists(&caps, &pins));
        prop_assert!(cert.verify(&cover, &k, &pin));
    }

    #[test]
    fn enumeration_count_matches(seed in any::<u64>()) {
        let (cover, caps, k, _, _) = small_instance(seed);
        let all = enumerate_colorings(&cover, &k).unwrap();
        prop_assert_eq!(all.len(), Oracle::new(&cover).count(&caps));
        for phi in &all {
            prop_assert!(k.admits(&defects(&cover, phi)));
        }
    }

    #[test]
    fn greedy_on_degeneracy_plus_one_lists(seed in any::<u64>()) {
        let mut rng = DetRng::new(seed);
        let n = 2 + rng.below(25);
        let graph = random_graph(n, 1, 3, &mut rng);
        let order = degeneracy(&graph);
        let cover = random_maximal_cover(graph, vec![order.degeneracy + 1; n], &mut rng);
        let phi = greedy_color(&cover, &order).unwrap();
        prop_assert!(phi.is_total());
        prop_assert!(defects(&cover, &phi).iter().all(|&d| d == 0));
    }

    #[test]
    fn hub_dp_matches_the_product(seed in any::<u64>()) {
        let mut rng = DetRng::new(seed);
        let copies: Vec<ContributionSet> = (0..1 + rng.below(4))
            .map(|_| ContributionSet {
                pairs: (0..rng.below(4)).map(|_| (rng.below(3), rng.below(3))).collect(),
            })
            .collect();
        let (cap1, cap2) = (rng.below(5), rng.below(5));
        let mut sums = vec![(0usize, 0usize)];
        for c in &copies {
            sums = sums
                .iter()
                .flat_map(|&(s, t)| c.pairs.iter().map(move |&(a, b)| (s + a, t + b)))
                .collect();
        }
        let expected = sums.iter().any(|&(s, t)| s <= cap1 && t <= cap2);
        let got = hub_feasible(&copies, cap1, cap2);
        prop_assert_eq!(got.feasible, expected);
        if let Some(sel) = got.selection {
            prop_assert_eq!(sel.len(), copies.len());
            prop_assert!(sel.iter().zip(&copies).all(|(p, c)| c.pairs.contains(p)));
            prop_assert!(sel.iter().map(|p| p.0).sum::<usize>() <= cap1);
            prop_assert!(sel.iter().map(|p| p.1).sum::<usize>() <= cap2);
        }
    }
}

#[test]
fn contribution_set_matches_enumeration() {
    for seed in 0..40 {
        let mut rng = DetRng::new(seed);
        let n = 3 + rng.below(4);
        let graph = random_graph(n, 1, 2, &mut rng);
        let cover = random_maximal_cover(graph, vec![2; n], &mut rng);
        let d = rng.below(2);
        let oracle = Oracle::new(&cover);
        let mut pins = vec![None; n];
        pins[0] = Some(0);
        pins[1] = Some(1);
        let mut expected = std::collections::BTreeSet::new();
        oracle.each(&pins, |c| {
            let def = oracle.defects(c);
            if (2..n).all(|v| def[v] <= d) {
                expected.insert((def[0], def[1]));
            }
            true
        });
        let got = contribution_set(&cover, 0, 1, (0, 1), d).unwrap();
        assert_eq!(got.pairs, expected, "seed {seed}");
    }
}

#[test]
fn tiny_budget_is_reported() {
    let g = Graph::from_edges(6, &(0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).collect::<Vec<_>>()).unwrap();
    let cover = Cover::identity(g, 2);
    let k = DefectConstraint::uniform(0);
    let empty = Coloring::empty(6);
    assert!(matches!(
        find_coloring_with_budget(&cover, &k, &empty, 3),
        Err(SolverError::BudgetExceeded(3))
    ));
    assert!(matches!(
        enumerate_colorings_with_budget(&cover, &k, 3),
        Err(SolverError::BudgetExceeded(3))
    ));
}

#[test]
fn tampered_witness_fails_verification() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let cover = Cover::identity(g, 3);
    let k = DefectConstraint::uniform(0);
    let empty = Coloring::empty(3);
    let cert = find_coloring(&cover, &k, &empty).unwrap();
    assert!(cert.verify(&cover, &k, &empty));
    let mut bad = cert.clone();
    if let dcc_core::Certificate::Coloring { coloring, .. } = &mut bad {
        let c0 = coloring.get(0).unwrap();
        coloring.set(1, c0);
    }
    assert!(!bad.verify(&cover, &k, &empty));
    let other_pin = Coloring::from_pins(3, &[(2, (cert.coloring().unwrap().get(2).unwrap() + 1) % 3)]);
    assert!(!cert.verify(&cover, &k, &other_pin));
}

#[test]
fn greedy_rejects_short_lists() {
    let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    let order = degeneracy(&g);
    assert_eq!(order.degeneracy, 2);
    assert!(greedy_color(&Cover::identity(g, 2), &order).is_err());
}
