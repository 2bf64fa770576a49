//! The registered claims and the procedure that checks each one.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use dcc_core::cover::{max_defect, permutations};
use dcc_core::gadgets::{self, t, t3};
use dcc_core::graph::degeneracy;
use dcc_core::io::{coloring_map, CoverFile};
use dcc_core::outerplanar::{color_outerplanar, lowest_outer_edge, OuterplaneGraph};
use dcc_core::random::{random_maximal_cover, DetRng};
use dcc_core::solver::{contribution_set, find_coloring, greedy_color, hub_feasible, ContributionSet, DefectConstraint};
use dcc_core::{Coloring, Cover};

use crate::error::CliError;
use crate::fuzz::{self, check_outer_edge_contracts};
use crate::report::{Check, Report};

/// Claim id and a one-line statement of what its procedure establishes.
pub const CLAIMS: &[(&str, &str)] = &[
    ("lemma-3.1", "the bad cover of the lower-bound gadget admits no 3-defective coloring with both hubs conflict-free"),
    ("thm-1.2", "the 63-copy gadget has a 3-fold cover with no 3-defective coloring"),
    ("cor-g63-4corr", "the 63-copy gadget is 3-degenerate and greedy colors random 4-fold covers properly"),
    ("thm-4.1", "outerplane near triangulations extend any pinned outer edge under the endpoint contract"),
    ("thm-1.4-tight", "the fan cover has a 3-defective but no 2-defective coloring"),
    ("lemma-5.8", "random 3-fold covers of T are bad for at most six hub pairs and obey the pair-type rules"),
    ("lemma-good", "good hub pairs extend 1-defectively with both hubs conflict-free"),
    ("lemma-bad", "bad hub pairs extend 1-defectively with one hub taking at most one conflict"),
    ("lemma-8.1", "every rotation cover blocks its hub pin for all 16 hub colors"),
    ("lemma-8.2", "H(sigma) blocks every diagonal pin (i, sigma(i))"),
    ("thm-t4-not-4corr", "the partition cover of T(4) admits no proper coloring"),
];

pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|(id, _)| *id)
}

/// Runs the procedure for `claim`. Unknown ids are an error; failures inside
/// a procedure (e.g. an exhausted node budget) give an `error` report.
pub fn verify(claim: &str, seed: u64) -> Result<Report, CliError> {
    if !claim_ids().any(|c| c == claim) {
        return Err(CliError::UnknownClaim(claim.to_string()));
    }
    let start = Instant::now();
    let result = match claim {
        "lemma-3.1" => lemma_3_1(),
        "thm-1.2" => thm_1_2(),
        "cor-g63-4corr" => cor_g63(seed),
        "thm-4.1" => thm_4_1(seed),
        "thm-1.4-tight" => thm_1_4_tight(),
        "lemma-5.8" => from_fuzz(&["lemma-5.8", "lemma-6.x"], 10_000, seed),
        "lemma-good" => from_fuzz(&["lemma-good"], 2_000, seed),
        "lemma-bad" => from_fuzz(&["lemma-bad"], 2_000, seed),
        "lemma-8.1" => lemma_8_1(),
        "lemma-8.2" => lemma_8_2(),
        "thm-t4-not-4corr" => t4_not_4corr(),
        _ => unreachable!(),
    };
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(match result {
        Ok(checks) => Report::from_checks(claim, seed, checks, elapsed),
        Err(e) => Report::error(claim, seed, &e.to_string(), elapsed),
    })
}

fn cover_json(cover: &Cover) -> serde_json::Value {
    serde_json::to_value(CoverFile::from_cover(cover, None)).expect("serializes")
}

/// Checks of several fuzz targets, ids prefixed by target.
fn from_fuzz(targets: &[&str], iters: u64, seed: u64) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for &target in targets {
        let report = fuzz::fuzz(target, iters, seed, None)?;
        out.extend(report.checks.into_iter().map(|mut c| {
            c.id = format!("{target}/{}", c.id);
            c
        }));
    }
    Ok(out)
}

fn lemma_3_1() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for alpha in 1..=3 {
        for beta in 1..=3 {
            let cover = gadgets::build_bad_cover_t3(alpha, beta)?;
            let n = cover.vertex_count();
            let pin = Coloring::from_pins(n, &[(t3::U, alpha - 1), (t3::V, beta - 1)]);
            let k = DefectConstraint::uniform(3).with_cap(t3::U, 0).with_cap(t3::V, 0);
            let cert = find_coloring(&cover, &k, &pin)?;
            let mut check = Check::new(
                format!("pair-{alpha}-{beta}"),
                !cert.is_feasible(),
                format!("search over the internal vertices, {} nodes", cert.stats().nodes),
            );
            if let Some(phi) = cert.coloring() {
                check.detail = "found a 3-defective coloring with both hubs conflict-free".into();
                check = check.with_counterexample(json!({
                    "cover": cover_json(&cover),
                    "coloring": coloring_map(phi),
                }));
            }
            out.push(check);

            // With both hubs conflict-free, every z must take the middle color
            // and no x or y may.
            let sub = cover.subcover(&pin)?;
            let forced = (0..sub.cover.vertex_count()).all(|i| {
                let orig = sub.vertex_map[i];
                let colors = &sub.color_map[i];
                if t3::Z.contains(&orig) {
                    colors == &[1]
                } else {
                    !colors.contains(&1)
                }
            });
            out.push(Check::new(
                format!("pair-{alpha}-{beta}-forced-colors"),
                forced,
                "residual lists after the hub pin".to_string(),
            ));
        }
    }
    Ok(out)
}

/// Contribution sets of all 63 copies for every hub pair, then the hub DP
/// with both hub caps at 3. Identical copy covers share their sets.
fn thm_1_2() -> Result<Vec<Check>, CliError> {
    let g63 = gadgets::build_g63();
    let copies = 9 * gadgets::G63_COPIES_PER_PAIR;
    let copy_covers: Vec<Cover> = (0..copies)
        .map(|c| g63.cover.induced(&gadgets::g63_copy_vertices(c)).cover)
        .collect();
    let mut distinct: Vec<Cover> = Vec::new();
    let class: Vec<usize> = copy_covers
        .iter()
        .map(|c| match distinct.iter().position(|d| d == c) {
            Some(i) => i,
            None => {
                distinct.push(c.clone());
                distinct.len() - 1
            }
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
    let jobs: Vec<(usize, (usize, usize))> =
        (0..distinct.len()).flat_map(|d| pairs.iter().map(move |&p| (d, p))).collect();
    let sets: Vec<ContributionSet> = jobs
        .par_iter()
        .map(|&(d, p)| contribution_set(&distinct[d], t3::U, t3::V, p, 3))
        .collect::<Result<_, _>>()?;
    let set_of = |d: usize, p: (usize, usize)| &sets[d * pairs.len() + pairs.iter().position(|&q| q == p).unwrap()];

    let mut out = vec![Check::new(
        "copies",
        copy_covers.len() == 63,
        format!("{} copies, {} distinct copy covers", copy_covers.len(), distinct.len()),
    )];
    for &(a, b) in &pairs {
        let per_copy: Vec<ContributionSet> = class.iter().map(|&d| set_of(d, (a, b)).clone()).collect();
        let blocked = per_copy.iter().filter(|s| !s.contains(0, 0)).count();
        let sel = hub_feasible(&per_copy, 3, 3);
        let mut check = Check::new(
            format!("pair-{}-{}", a + 1, b + 1),
            !sel.feasible,
            format!("{blocked} copies cannot leave both hubs conflict-free; hub DP with caps (3, 3) is infeasible"),
        );
        if let Some(selection) = sel.selection {
            check.detail = "hub DP found a selection within the caps".into();
            check = check.with_counterexample(json!({ "pair": [a, b], "selection": selection }));
        }
        out.push(check);
    }
    Ok(out)
}

fn cor_g63(seed: u64) -> Result<Vec<Check>, CliError> {
    let g63 = gadgets::build_g63();
    let graph = g63.cover.graph().clone();
    let order = degeneracy(&graph);
    let mut out = vec![Check::new(
        "degeneracy",
        order.degeneracy == 3 && order.verify(&graph),
        format!("degeneracy {} (peel order re-checked)", order.degeneracy),
    )];
    let n = graph.vertex_count();
    let results: Vec<(u64, bool, Option<Cover>)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let cover = random_maximal_cover(graph.clone(), vec![4; n], &mut DetRng::for_iteration(seed, i));
            let phi = greedy_color(&cover, &order)?;
            let ok = phi.is_total() && max_defect(&cover, &phi) == 0;
            Ok((i, ok, (!ok).then_some(cover)))
        })
        .collect::<Result<_, CliError>>()?;
    let failed: Vec<&(u64, bool, Option<Cover>)> = results.iter().filter(|r| !r.1).collect();
    let mut check = Check::new(
        "greedy-4-fold",
        failed.is_empty(),
        format!("{} random 4-fold covers, {} not properly colored", results.len(), failed.len()),
    );
    if let Some((i, _, Some(cover))) = failed.first() {
        check = check.with_counterexample(json!({ "iteration": i, "cover": cover_json(cover) }));
    }
    out.push(check);
    Ok(out)
}

fn thm_4_1(seed: u64) -> Result<Vec<Check>, CliError> {
    let fan = gadgets::build_fan_gadget();
    let outer = fan.outer_cycle.clone().expect("fan has an outer cycle");
    let og = OuterplaneGraph::new(fan.cover.graph().clone(), outer)?;
    let phi = color_outerplanar(&og, &fan.cover)?;
    let d = max_defect(&fan.cover, &phi);
    let mut out = vec![Check::new("fan-3-defective", phi.is_total() && d <= 3, format!("max defect {d}"))];
    let (u, v) = lowest_outer_edge(&og).expect("fan has outer edges");
    let results = check_outer_edge_contracts(&og, &fan.cover, u, v)?;
    for prop in ["endpoint-contract", "oracle-agrees"] {
        let mine: Vec<&(&str, bool, String)> = results.iter().filter(|r| r.0 == prop).collect();
        let bad: Vec<&String> = mine.iter().filter(|r| !r.1).map(|r| &r.2).collect();
        out.push(Check::new(
            format!("fan-{prop}"),
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} pinned runs", mine.len())
            } else {
                bad.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("; ")
            },
        ));
    }
    out.extend(from_fuzz(&["thm-4.1"], 500, seed)?);
    Ok(out)
}

fn thm_1_4_tight() -> Result<Vec<Check>, CliError> {
    let fan = gadgets::build_fan_gadget();
    let n = fan.cover.vertex_count();
    let cert = find_coloring(&fan.cover, &DefectConstraint::uniform(2), &Coloring::empty(n))?;
    let mut no2 = Check::new(
        "no-2-defective",
        !cert.is_feasible(),
        format!("exhaustive search, {} nodes", cert.stats().nodes),
    );
    if let Some(phi) = cert.coloring() {
        no2 = no2.with_counterexample(json!({ "coloring": coloring_map(phi) }));
    }
    let og = OuterplaneGraph::new(fan.cover.graph().clone(), fan.outer_cycle.clone().unwrap())?;
    let phi = color_outerplanar(&og, &fan.cover)?;
    let d = max_defect(&fan.cover, &phi);
    Ok(vec![
        no2,
        Check::new("3-defective-witness", phi.is_total() && d <= 3, format!("outerplanar coloring, max defect {d}")),
    ])
}

/// Proper-coloring search on a 4-fold cover of `T` with the hubs pinned.
fn blocked(cover: &Cover, alpha: usize, beta: usize) -> Result<(bool, Option<Coloring>), CliError> {
    let pin = Coloring::from_pins(9, &[(t::U, alpha), (t::V, beta)]);
    let cert = find_coloring(cover, &DefectConstraint::uniform(0), &pin)?;
    Ok((!cert.is_feasible(), cert.coloring().cloned()))
}

fn blocked_check(id: String, cover: &Cover, alpha: usize, beta: usize) -> Result<Check, CliError> {
    let (ok, phi) = blocked(cover, alpha, beta)?;
    let mut check = Check::new(id, ok, format!("pin ({}, {})", alpha + 1, beta + 1));
    if let Some(phi) = phi {
        check = check.with_counterexample(json!({ "cover": cover_json(cover), "coloring": coloring_map(&phi) }));
    }
    Ok(check)
}

/// All orderings (i, j, k; l), which include the four rotations.
fn lemma_8_1() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for p in permutations(4) {
        let (i, j, k, l) = (p[0] + 1, p[1] + 1, p[2] + 1, p[3] + 1);
        for alpha in 1..=4 {
            for beta in 1..=4 {
                let cover = gadgets::build_h_rot(i, j, k, l, alpha, beta)?;
                out.push(blocked_check(format!("order-{i}{j}{k}{l}-pin-{alpha}-{beta}"), &cover, alpha - 1, beta - 1)?);
            }
        }
    }
    Ok(out)
}

/// Every sigma in S4 (a superset of any random sample), every diagonal pin.
fn lemma_8_2() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for p in permutations(4) {
        let sigma = [p[0] + 1, p[1] + 1, p[2] + 1, p[3] + 1];
        let cover = gadgets::build_h_sigma(sigma)?;
        let tag: String = sigma.iter().map(|s| s.to_string()).collect();
        for i in 0..4 {
            out.push(blocked_check(format!("sigma-{tag}-pin-{}", i + 1), &cover, i, sigma[i] - 1)?);
        }
    }
    Ok(out)
}

fn t4_not_4corr() -> Result<Vec<Check>, CliError> {
    let t4 = gadgets::build_t4_counterexample();
    let table = gadgets::PARTITION_TABLE;
    let mut out = Vec::new();
    let mut hits = [[0usize; 4]; 4];
    for row in &table {
        for (i, &j) in row.iter().enumerate() {
            hits[i][j - 1] += 1;
        }
    }
    out.push(Check::new(
        "partition",
        hits.iter().flatten().all(|&h| h == 1),
        "each hub pair lies in exactly one copy's permutation".to_string(),
    ));
    for alpha in 0..4 {
        for beta in 0..4 {
            let m = table.iter().position(|row| row[alpha] == beta + 1).expect("partition covers the pair");
            let copy = gadgets::t_copy_cover(&t4.cover, m);
            let mut check = blocked_check(format!("pin-{}-{}", alpha + 1, beta + 1), &copy, alpha, beta)?;
            check.detail = format!("{}, blocked by copy {}", check.detail, m + 1);
            out.push(check);
        }
    }
    let n = t4.cover.vertex_count();
    let cert = find_coloring(&t4.cover, &DefectConstraint::uniform(0), &Coloring::empty(n))?;
    out.push(Check::new(
        "whole-cover",
        !cert.is_feasible(),
        format!("direct search on all {n} vertices, {} nodes", cert.stats().nodes),
    ));
    Ok(out)
}
