//! Seeded property fuzzing. Iteration `i` of a run draws its instance from
//! `DetRng::for_iteration(seed, i)`, so any failure is reproduced by the
//! (target, seed, iteration) triple alone; the failing cover is written out
//! as well.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use dcc_core::classify::{
    self, bad_pair_census, find_light_pair, hub_extension, is_twisted, is_wedged_1212, is_wedged_1222,
};
use dcc_core::cover::{defects, max_defect};
use dcc_core::gadgets::{self, r, t};
use dcc_core::io::CoverFile;
use dcc_core::outerplanar::{color_near_triangulation, endpoint_contract_holds, lowest_outer_edge, OuterplaneGraph};
use dcc_core::random::{random_cover, random_maximal_cover, random_near_triangulation, DetRng};
use dcc_core::solver::{find_coloring, DefectConstraint};
use dcc_core::{Coloring, Cover, VertexId};

use crate::error::CliError;
use crate::report::{Check, Report};

/// Fuzz targets and the properties each one checks.
pub const TARGETS: &[(&str, &[&str])] = &[
    ("lemma-5.2", &["one-defective-iff-not-twisted", "not-wedged-frees-a", "twisted-is-wedged"]),
    ("lemma-5.4", &["c-can-be-free", "not-wedged-frees-a"]),
    ("lemma-5.6", &["other-side-not-wedged", "proper-with-kept-color"]),
    ("lemma-5.8", &["at-most-six-bad-pairs", "pair-type-rules"]),
    ("lemma-6.x", &["pair-type-rules", "bad-witnesses-verify"]),
    ("lemma-good", &["good-pair-extends"]),
    ("lemma-bad", &["bad-pair-extends-u", "bad-pair-extends-v"]),
    ("thm-4.1", &["endpoint-contract", "oracle-agrees"]),
    ("thm-5.10-light-pair", &["light-pair-exists", "assembled-extension", "one-defective-coloring"]),
];

pub fn target_names() -> impl Iterator<Item = &'static str> {
    TARGETS.iter().map(|(n, _)| *n)
}

struct Failure {
    property: &'static str,
    detail: String,
    cover: Cover,
    outer_cycle: Option<Vec<VertexId>>,
    context: serde_json::Value,
}

#[derive(Default)]
struct IterResult {
    checked: BTreeMap<&'static str, u64>,
    failures: Vec<Failure>,
}

impl IterResult {
    fn check(&mut self, property: &'static str, ok: bool, cover: &Cover, detail: impl FnOnce() -> (String, serde_json::Value)) {
        *self.checked.entry(property).or_default() += 1;
        if !ok {
            let (detail, context) = detail();
            self.failures.push(Failure {
                property,
                detail,
                cover: cover.clone(),
                outer_cycle: None,
                context,
            });
        }
    }
}

type Runner = fn(&mut DetRng) -> Result<IterResult, CliError>;

fn runner(target: &str) -> Option<Runner> {
    Some(match target {
        "lemma-5.2" => lemma_5_2,
        "lemma-5.4" => lemma_5_4,
        "lemma-5.6" => lemma_5_6,
        "lemma-5.8" => lemma_5_8,
        "lemma-6.x" => lemma_6_x,
        "lemma-good" => lemma_good,
        "lemma-bad" => lemma_bad,
        "thm-4.1" => thm_4_1,
        "thm-5.10-light-pair" => light_pair,
        _ => return None,
    })
}

/// Runs `iters` instances of `target`. Failures become failed checks and,
/// when `reproducer_dir` is given, one JSON file each.
pub fn fuzz(target: &str, iters: u64, seed: u64, reproducer_dir: Option<&Path>) -> Result<Report, CliError> {
    let start = Instant::now();
    let run = runner(target).ok_or_else(|| CliError::UnknownTarget(target.to_string()))?;
    let properties = TARGETS.iter().find(|(n, _)| *n == target).unwrap().1;
    let results: Vec<IterResult> = (0..iters)
        .into_par_iter()
        .map(|i| run(&mut DetRng::for_iteration(seed, i)))
        .collect::<Result<_, _>>()?;

    let mut checks = Vec::new();
    for &prop in properties {
        let checked: u64 = results.iter().map(|r| r.checked.get(prop).copied().unwrap_or(0)).sum();
        let failing: Vec<(u64, &Failure)> = results
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.failures.iter().filter(|f| f.property == prop).map(move |f| (i as u64, f)))
            .collect();
        let mut check = Check::new(
            prop,
            failing.is_empty(),
            format!("{checked} cases in {iters} instances, {} failures", failing.len()),
        );
        if let Some(&(i, f)) = failing.first() {
            check.detail = format!("{}; first at iteration {i}: {}", check.detail, f.detail);
            check = check.with_counterexample(reproducer(target, seed, i, f));
        }
        checks.push(check);
    }
    if let Some(dir) = reproducer_dir {
        for (i, r) in results.iter().enumerate() {
            for f in &r.failures {
                write_reproducer(dir, target, seed, i as u64, f)?;
            }
        }
    }
    Ok(Report::from_checks(target, seed, checks, start.elapsed().as_millis() as u64))
}

fn reproducer(target: &str, seed: u64, iteration: u64, f: &Failure) -> serde_json::Value {
    json!({
        "target": target,
        "seed": seed,
        "iteration": iteration,
        "property": f.property,
        "detail": f.detail,
        "context": f.context,
        "cover": CoverFile::from_cover(&f.cover, f.outer_cycle.clone()),
    })
}

fn write_reproducer(dir: &Path, target: &str, seed: u64, iteration: u64, f: &Failure) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::file(dir, e))?;
    let path = dir.join(format!("{target}-seed{seed}-iter{iteration}-{}.json", f.property));
    let mut text = serde_json::to_string_pretty(&reproducer(target, seed, iteration, f)).expect("serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::file(&path, e))
}

fn feasible(cover: &Cover, k: &DefectConstraint, pin: &Coloring) -> Result<bool, CliError> {
    Ok(find_coloring(cover, k, pin)?.is_feasible())
}

fn lemma_5_2(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let rc = random_maximal_cover(gadgets::build_r(), vec![1, 2, 1, 2], rng);
    let mut out = IterResult::default();
    let n = rc.vertex_count();
    let twisted = is_twisted(&rc)?.is_some();
    let wedged = is_wedged_1212(&rc)?.is_some();
    let one_def = feasible(&rc, &DefectConstraint::uniform(1), &Coloring::empty(n))?;
    out.check("one-defective-iff-not-twisted", one_def != twisted, &rc, || {
        (format!("twisted={twisted}, 1-defective coloring exists={one_def}"), json!({}))
    });
    if twisted {
        out.check("twisted-is-wedged", wedged, &rc, || ("twisted but not wedged".into(), json!({})));
    }
    if !wedged {
        // Neither orientation is wedged, so either single-color vertex can be `a`.
        for a in [r::A, r::C] {
            let ok = feasible(&rc, &DefectConstraint::uniform(1).with_cap(a, 0), &Coloring::empty(n))?;
            out.check("not-wedged-frees-a", ok, &rc, || {
                (format!("not wedged, yet no 1-defective coloring with vertex {a} conflict-free"), json!({ "free": a }))
            });
        }
    }
    Ok(out)
}

/// Random maximal cover of `R` with one single-color vertex `a` among the
/// non-adjacent pair; returns it with `(a, c)`.
fn random_1222(rng: &mut DetRng) -> (Cover, VertexId, VertexId) {
    let (a, c) = if rng.below(2) == 0 { (r::A, r::C) } else { (r::C, r::A) };
    let mut sizes = vec![2; 4];
    sizes[a] = 1;
    (random_maximal_cover(gadgets::build_r(), sizes, rng), a, c)
}

fn lemma_5_4(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let (rc, a, c) = random_1222(rng);
    let mut out = IterResult::default();
    let n = rc.vertex_count();
    let ok = feasible(&rc, &DefectConstraint::uniform(1).with_cap(c, 0), &Coloring::empty(n))?;
    out.check("c-can-be-free", ok, &rc, || {
        ("no 1-defective coloring with c conflict-free".into(), json!({ "a": a, "c": c }))
    });
    if is_wedged_1222(&rc)?.is_none() {
        let ok = feasible(&rc, &DefectConstraint::uniform(1).with_cap(a, 0), &Coloring::empty(n))?;
        out.check("not-wedged-frees-a", ok, &rc, || {
            ("not wedged, yet no 1-defective coloring with a conflict-free".into(), json!({ "a": a, "c": c }))
        });
    }
    Ok(out)
}

fn lemma_5_6(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let (rc, a, c) = random_1222(rng);
    let mut out = IterResult::default();
    let n = rc.vertex_count();
    let keep_only = |color: usize| {
        let mut keep: Vec<Vec<usize>> = (0..n).map(|v| (0..rc.list_size(v)).collect()).collect();
        keep[c] = vec![color];
        rc.restrict_lists(&keep).cover
    };
    for dropped in 0..2 {
        let kept = 1 - dropped;
        // Dropping `dropped` leaves only `kept` at c.
        if is_twisted(&keep_only(kept))?.is_none() {
            continue;
        }
        let other = keep_only(dropped);
        let ctx = json!({ "a": a, "c": c, "twisted_with_c_color": kept });
        out.check("other-side-not-wedged", is_wedged_1212(&other)?.is_none(), &rc, || {
            ("the restriction to the other color of c is wedged".into(), ctx.clone())
        });
        let pin = Coloring::from_pins(n, &[(c, dropped)]);
        let ok = feasible(&rc, &DefectConstraint::uniform(0), &pin)?;
        out.check("proper-with-kept-color", ok, &rc, || {
            (format!("no proper coloring with c colored {dropped}"), ctx.clone())
        });
    }
    Ok(out)
}

fn random_t_cover(rng: &mut DetRng) -> Cover {
    random_maximal_cover(gadgets::build_t5(), vec![3; 9], rng)
}

fn lemma_5_8(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let tc = random_t_cover(rng);
    let census = bad_pair_census(&tc)?;
    let mut out = IterResult::default();
    let bad = census.bad_pairs();
    out.check("at-most-six-bad-pairs", bad.len() <= 6, &tc, || {
        (format!("{} bad pairs", bad.len()), json!({ "bad_pairs": bad }))
    });
    let violations = census.invariant_violations();
    out.check("pair-type-rules", violations.is_empty(), &tc, || {
        (violations.join("; "), json!({ "violations": violations }))
    });
    Ok(out)
}

fn lemma_6_x(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let tc = random_t_cover(rng);
    let census = bad_pair_census(&tc)?;
    let mut out = IterResult::default();
    let violations = census.invariant_violations();
    out.check("pair-type-rules", violations.is_empty(), &tc, || {
        (violations.join("; "), json!({ "violations": violations }))
    });
    for (&(alpha, beta), entry) in &census.entries {
        let Some(kind) = entry.classification.bad_kind() else { continue };
        let sub = tc.subcover(&classify::hub_pin(alpha, beta))?;
        out.check("bad-witnesses-verify", classify::verify_bad_kind(&sub.cover, kind), &tc, || {
            (format!("witness for {} at ({alpha}, {beta}) does not re-check", kind.clause.name()), json!({ "pair": [alpha, beta] }))
        });
    }
    Ok(out)
}

fn lemma_good(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let tc = random_t_cover(rng);
    let census = bad_pair_census(&tc)?;
    let mut out = IterResult::default();
    for (&(alpha, beta), entry) in &census.entries {
        if entry.classification.is_bad() {
            continue;
        }
        let ok = hub_extension(&tc, alpha, beta, 0, 0)?.is_some();
        out.check("good-pair-extends", ok, &tc, || {
            ("good pair without a 1-defective extension keeping both hubs free".into(), json!({ "pair": [alpha, beta] }))
        });
    }
    Ok(out)
}

fn lemma_bad(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let tc = random_t_cover(rng);
    let census = bad_pair_census(&tc)?;
    let mut out = IterResult::default();
    for (&(alpha, beta), entry) in &census.entries {
        if !entry.classification.is_bad() {
            continue;
        }
        let ctx = json!({ "pair": [alpha, beta], "kind": entry.classification.name() });
        let u_ok = hub_extension(&tc, alpha, beta, 1, 0)?.is_some();
        out.check("bad-pair-extends-u", u_ok, &tc, || ("no extension with def(u) <= 1, def(v) = 0".into(), ctx.clone()));
        let v_ok = hub_extension(&tc, alpha, beta, 0, 1)?.is_some();
        out.check("bad-pair-extends-v", v_ok, &tc, || ("no extension with def(u) = 0, def(v) <= 1".into(), ctx.clone()));
    }
    Ok(out)
}

/// Caps the endpoint contract allows for a pinned outer edge.
fn contract_caps(cover: &Cover, u: VertexId, v: VertexId, pin: (usize, usize)) -> (usize, usize) {
    if cover.conflicts((u, pin.0), (v, pin.1)) {
        (1, 2)
    } else {
        (0, 1)
    }
}

/// Checks the endpoint contract for all four pins of `uv` in both
/// orientations and confirms each time that the solver agrees such a
/// coloring exists.
pub fn check_outer_edge_contracts(
    g: &OuterplaneGraph,
    cover: &Cover,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<(&'static str, bool, String)>, CliError> {
    let n = cover.vertex_count();
    let mut out = Vec::new();
    for (p, q) in [(u, v), (v, u)] {
        for a in 0..2 {
            for b in 0..2 {
                let phi = color_near_triangulation(g, cover, p, q, (a, b))?;
                let pinned = phi.get(p) == Some(a) && phi.get(q) == Some(b);
                let ok = pinned && endpoint_contract_holds(cover, &phi, p, q);
                out.push((
                    "endpoint-contract",
                    ok,
                    format!("edge ({p}, {q}) pin ({a}, {b}): defects {:?}", defects(cover, &phi)),
                ));
                let (cu, cv) = contract_caps(cover, p, q, (a, b));
                let k = DefectConstraint::uniform(3).with_cap(p, cu).with_cap(q, cv);
                let pin = Coloring::from_pins(n, &[(p, a), (q, b)]);
                let oracle = find_coloring(cover, &k, &pin)?.is_feasible();
                out.push((
                    "oracle-agrees",
                    oracle == ok,
                    format!("edge ({p}, {q}) pin ({a}, {b}): algorithm {ok}, solver {oracle}"),
                ));
            }
        }
    }
    Ok(out)
}

fn thm_4_1(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let n = 3 + rng.below(10);
    let (graph, outer) = random_near_triangulation(n, rng);
    let maximal = rng.below(2) == 0;
    let cover = if maximal {
        random_maximal_cover(graph.clone(), vec![2; n], rng)
    } else {
        random_cover(graph.clone(), vec![2; n], rng)
    };
    let og = OuterplaneGraph::new(graph, outer.clone())?;
    let (u, v) = lowest_outer_edge(&og).expect("n >= 3");
    let mut out = IterResult::default();
    for (prop, ok, detail) in check_outer_edge_contracts(&og, &cover, u, v)? {
        out.check(prop, ok, &cover, || (detail, json!({ "edge": [u, v] })));
    }
    for f in &mut out.failures {
        f.outer_cycle = Some(outer.clone());
    }
    Ok(out)
}

fn light_pair(rng: &mut DetRng) -> Result<IterResult, CliError> {
    let copies = 4;
    let tkc = random_maximal_cover(gadgets::build_t_k(copies)?, vec![3; 2 + 7 * copies], rng);
    let mut out = IterResult::default();
    let light = match find_light_pair(&tkc) {
        Ok(l) => l,
        Err(classify::ClassifyError::NoLightPair { counts }) => {
            out.check("light-pair-exists", false, &tkc, || {
                ("every hub pair is bad for three or more copies".into(), json!({ "counts": counts }))
            });
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    out.check("light-pair-exists", true, &tkc, || unreachable!());
    let phi = classify::assemble_light_extension(&tkc, &light)?;
    let ok = phi.as_ref().is_some_and(|phi| {
        phi.is_total()
            && phi.get(t::U) == Some(light.pair.0)
            && phi.get(t::V) == Some(light.pair.1)
            && max_defect(&tkc, phi) <= 1
    });
    // The statement itself, independent of the proof route: a witness
    // from the assembly, otherwise a direct search.
    let direct = ok
        || feasible(&tkc, &DefectConstraint::uniform(1), &Coloring::empty(tkc.vertex_count()))?;
    out.check("one-defective-coloring", direct, &tkc, || {
        ("no 1-defective coloring of the whole cover".into(), json!({}))
    });
    out.check("assembled-extension", ok, &tkc, || {
        (
            format!("pair {:?} with bad copies {:?} did not assemble a 1-defective coloring", light.pair, light.bad_copies),
            json!({ "pair": [light.pair.0, light.pair.1], "bad_copies": light.bad_copies }),
        )
    });
    Ok(out)
}
