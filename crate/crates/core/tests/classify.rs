mod common;

use common::{all_matchings, Oracle};
use dcc_core::classify::{
    assemble_light_extension, bad_pair_census, classify_residual, find_light_pair, is_twisted, is_wedged,
    is_wedged_1212, is_wedged_1222, residual, verify_bad_kind, BadClause, BadKind, Census, CensusEntry,
    Classification, A, C,
};
use dcc_core::cover::{defects, isomorphic, Matchings};
use dcc_core::gadgets::{assemble_t_k, build_r, build_t5, t, t_copy_vertices, twisted_r_cover};
use dcc_core::random::{random_maximal_cover, DetRng};
use dcc_core::Cover;

/// Every cover of the diamond with the given list sizes, maximal or not.
fn all_diamond_covers(sizes: [usize; 4]) -> Vec<Cover> {
    let g = build_r();
    let mut out = vec![Matchings::new()];
    for &(a, b) in g.edges() {
        let options = all_matchings(sizes[a], sizes[b]);
        out = out
            .into_iter()
            .flat_map(|m| {
                options.iter().map(move |pairs| {
                    let mut m = m.clone();
                    m.insert((a, b), pairs.clone());
                    m
                })
            })
            .collect();
    }
    out.into_iter().map(|m| Cover::new(g.clone(), sizes.to_vec(), m).unwrap()).collect()
}

fn one_defective(cover: &Cover, free: Option<usize>) -> bool {
    let mut caps = vec![1; cover.vertex_count()];
    if let Some(v) = free {
        caps[v] = 0;
    }
    Oracle::new(cover).exists(&caps, &[])
}

#[test]
fn diamond_profile_counts() {
    assert_eq!(all_diamond_covers([1, 2, 1, 2]).len(), 567);
    assert_eq!(all_diamond_covers([1, 2, 2, 2]).len(), 3087);
}

#[test]
fn twisted_and_wedged_on_every_1212_cover() {
    let twisted_ref = twisted_r_cover();
    let mut maximal = 0;
    let mut twisted_count = 0;
    for cover in all_diamond_covers([1, 2, 1, 2]) {
        let twisted = is_twisted(&cover).unwrap().is_some();
        let wedged = is_wedged_1212(&cover).unwrap().is_some();
        if twisted {
            twisted_count += 1;
            assert!(wedged);
            assert!(!one_defective(&cover, None));
        }
        if !cover.is_maximal() {
            continue;
        }
        maximal += 1;
        assert_eq!(twisted, isomorphic(&cover, &twisted_ref).is_some());
        assert_eq!(one_defective(&cover, None), !twisted);
        if !wedged {
            assert!(one_defective(&cover, Some(A)));
            assert!(one_defective(&cover, Some(C)));
        }
    }
    assert_eq!(maximal, 1 << 5);
    assert!(twisted_count > 0);
}

#[test]
fn single_color_vertex_covers_of_profile_1222() {
    let mut c_not_free = 0;
    let mut maximal = 0;
    for cover in all_diamond_covers([1, 2, 2, 2]) {
        if !cover.is_maximal() {
            continue;
        }
        maximal += 1;
        if is_wedged_1222(&cover).unwrap().is_none() {
            assert!(one_defective(&cover, Some(A)));
        }
        if !one_defective(&cover, Some(C)) {
            c_not_free += 1;
        }
        // Restricting c to one color: if that is twisted, the other
        // restriction is not wedged and admits a proper coloring.
        for kept in 0..2 {
            let restrict = |color: usize| {
                let mut keep: Vec<Vec<usize>> = (0..4).map(|v| (0..cover.list_size(v)).collect()).collect();
                keep[C] = vec![color];
                cover.restrict_lists(&keep).cover
            };
            if is_twisted(&restrict(kept)).unwrap().is_none() {
                continue;
            }
            let other = restrict(1 - kept);
            assert!(is_wedged_1212(&other).unwrap().is_none());
            let mut pins = vec![None; 4];
            pins[C] = Some(1 - kept);
            assert!(Oracle::new(&cover).exists(&[0; 4], &pins));
        }
    }
    assert_eq!(maximal, 1 << 5);
    // Some maximal covers leave c with a conflict in every 1-defective
    // coloring.
    assert!(c_not_free > 0);
}

#[test]
fn cover_where_c_always_has_a_conflict() {
    // a1~b1, a1~d2, b1~c2, b2~c1, b1~d1, b2~d2, c1~d2, c2~d1
    let mut m = Matchings::new();
    m.insert((0, 1), vec![(0, 0)]);
    m.insert((0, 3), vec![(0, 1)]);
    m.insert((1, 2), vec![(0, 1), (1, 0)]);
    m.insert((1, 3), vec![(0, 0), (1, 1)]);
    m.insert((2, 3), vec![(0, 1), (1, 0)]);
    let cover = Cover::new(build_r(), vec![1, 2, 2, 2], m).unwrap();
    assert!(cover.is_maximal());
    let oracle = Oracle::new(&cover);
    let mut found = Vec::new();
    oracle.each(&[], |c| {
        let d = oracle.defects(c);
        if d.iter().all(|&x| x <= 1) {
            found.push((c.to_vec(), d));
        }
        true
    });
    let colorings: Vec<Vec<usize>> = found.iter().map(|(c, _)| c.clone()).collect();
    assert_eq!(colorings, vec![vec![0, 1, 0, 0], vec![0, 1, 1, 0]]);
    assert!(found.iter().all(|(_, d)| d[C] == 1));
    assert!(is_wedged(&cover).unwrap().is_none());
}

fn residual_cover(sizes: [usize; 7], pairs: &[((usize, usize), (usize, usize))]) -> Cover {
    let graph = build_t5().induced(&t::INTERNAL);
    let mut m = Matchings::new();
    for &((a, i), (b, j)) in pairs {
        let (key, p) = if a < b { ((a, b), (i, j)) } else { ((b, a), (j, i)) };
        m.entry(key).or_default().push(p);
    }
    Cover::new(graph, sizes.to_vec(), m).unwrap()
}

#[test]
fn both_halves_wedged_is_one_bad() {
    use residual::*;
    // Each half is the 1-2-2-2 wedge with z as its single-color vertex.
    let mut pairs = Vec::new();
    for (b, c, d) in [(U1, X, V1), (U2, Y, V2)] {
        pairs.extend([
            ((Z, 0), (b, 0)),
            ((Z, 0), (d, 0)),
            ((c, 0), (b, 1)),
            ((b, 1), (d, 1)),
            ((d, 1), (c, 1)),
        ]);
    }
    let rc = residual_cover([2, 1, 2, 2, 2, 2, 2], &pairs);
    let class = classify_residual(&rc).unwrap();
    let kind = class.bad_kind().expect("bad").clone();
    assert_eq!(kind.clause, BadClause::One);
    assert!(verify_bad_kind(&rc, &kind));
    // Dropping one wedge edge makes the pair good.
    let rc2 = residual_cover([2, 1, 2, 2, 2, 2, 2], &pairs[1..]);
    assert_eq!(classify_residual(&rc2).unwrap(), Classification::Good);
    assert!(!verify_bad_kind(&rc2, &kind));
}

#[test]
fn crossed_twists_are_four_bad() {
    use residual::*;
    let twist = |a: usize, b: usize, zc: usize, d: usize| {
        vec![
            ((a, 0), (b, 0)),
            ((b, 0), (d, 1)),
            ((d, 1), (Z, zc)),
            ((Z, zc), (b, 1)),
            ((b, 1), (d, 0)),
            ((d, 0), (a, 0)),
        ]
    };
    let mut pairs = twist(X, U1, 0, V1);
    pairs.extend(twist(Y, U2, 1, V2));
    let rc = residual_cover([1, 2, 1, 2, 2, 2, 2], &pairs);
    let kind = classify_residual(&rc).unwrap().bad_kind().expect("bad").clone();
    assert_eq!(kind.clause, BadClause::Four);
    assert_eq!(kind.z_orders, vec![(0, 1)]);
    assert!(verify_bad_kind(&rc, &kind));
    let mut forged = kind.clone();
    forged.z_orders = vec![(1, 0)];
    assert!(!verify_bad_kind(&rc, &forged));
    // Both twists on the same z-color: no order works.
    let mut same = twist(X, U1, 0, V1);
    same.extend(twist(Y, U2, 0, V2));
    let rc_same = residual_cover([1, 2, 1, 2, 2, 2, 2], &same);
    assert_eq!(classify_residual(&rc_same).unwrap(), Classification::Good);
}

fn synthetic(entries: &[((usize, usize), BadClause)]) -> Census {
    let mut census = Census { entries: Default::default() };
    for a in 0..3 {
        for b in 0..3 {
            census.entries.insert((a, b), CensusEntry { classification: Classification::Good, pair_type: None });
        }
    }
    for &(p, clause) in entries {
        let kind = BadKind { clause, r1: None, r2: None, z_orders: Vec::new() };
        census.entries.insert(p, CensusEntry { pair_type: Some(kind.pair_type()), classification: Classification::Bad(kind) });
    }
    census
}

#[test]
fn census_invariants_flag_forbidden_layouts() {
    use BadClause::*;
    assert!(synthetic(&[]).invariant_violations().is_empty());
    assert!(synthetic(&[((0, 0), Four), ((1, 1), TwoTwisted)]).invariant_violations().is_empty());
    // Two 1-2 pairs sharing a coordinate, or disjoint.
    assert_eq!(synthetic(&[((0, 0), Four), ((0, 1), Four)]).invariant_violations().len(), 1);
    assert_eq!(synthetic(&[((0, 0), Four), ((1, 1), Four)]).invariant_violations().len(), 1);
    // Two 2-1 pairs sharing a coordinate.
    assert_eq!(synthetic(&[((0, 0), One), ((1, 0), One)]).invariant_violations().len(), 1);
    // 1-1 pairs may share coordinates, but a full line of them is too many.
    let line = synthetic(&[((0, 0), TwoWedged), ((0, 1), FiveTwisted), ((0, 2), TwoTwisted)]);
    assert_eq!(line.invariant_violations().len(), 2);
    let seven: Vec<_> = (0..7).map(|i| ((i / 3, i % 3), TwoWedged)).collect();
    assert!(synthetic(&seven).invariant_violations().iter().any(|v| v.contains("more than 6")));
}

#[test]
fn census_on_random_covers_matches_per_pair_classification() {
    for seed in 0..30 {
        let mut rng = DetRng::new(seed);
        let tc = random_maximal_cover(build_t5(), vec![3; 9], &mut rng);
        let census = bad_pair_census(&tc).unwrap();
        assert!(census.bad_count() <= 6);
        assert!(census.invariant_violations().is_empty());
        for (&(a, b), entry) in &census.entries {
            let sub = tc.subcover(&dcc_core::classify::hub_pin(a, b)).unwrap();
            assert_eq!(classify_residual(&sub.cover).unwrap(), entry.classification);
            if let Some(kind) = entry.classification.bad_kind() {
                assert!(verify_bad_kind(&sub.cover, kind));
            }
        }
    }
}

#[test]
fn light_pair_bookkeeping_on_random_t4() {
    for seed in 0..10 {
        let mut rng = DetRng::new(seed);
        let copies: Vec<Cover> = (0..4).map(|_| random_maximal_cover(build_t5(), vec![3; 9], &mut rng)).collect();
        let tkc = assemble_t_k(&copies).unwrap();
        let light = find_light_pair(&tkc).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let by_copy = copies
                    .iter()
                    .filter(|c| bad_pair_census(c).unwrap().entries[&(a, b)].classification.is_bad())
                    .count();
                assert_eq!(light.counts[a][b], by_copy);
                assert!(light.counts[light.pair.0][light.pair.1] <= by_copy);
            }
        }
        assert!(light.bad_copies.len() <= 2);
        if let Some(phi) = assemble_light_extension(&tkc, &light).unwrap() {
            let d = defects(&tkc, &phi);
            assert!(d.iter().all(|&x| x <= 1));
            assert_eq!(phi.get(t::U), Some(light.pair.0));
            assert_eq!(phi.get(t::V), Some(light.pair.1));
            for (m, _) in copies.iter().enumerate() {
                assert!(t_copy_vertices(m).iter().all(|&w| phi.get(w).is_some()));
            }
        }
    }
}

#[test]
fn detectors_reject_other_graphs() {
    let tri = Cover::identity(dcc_core::Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(), 2);
    assert!(is_twisted(&tri).is_err());
    assert!(classify_residual(&Cover::identity(build_r(), 2)).is_err());
    assert!(bad_pair_census(&Cover::identity(build_t5(), 2)).is_err());
}
