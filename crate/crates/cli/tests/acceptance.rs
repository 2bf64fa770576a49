//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criteria 7 and 8 check statements that random search falsifies (see the
//! README section on falsified statements). They still print FAIL; they
//! are listed in `KNOWN_FALSIFIED` so the run as a whole only fails on an
//! unexpected outcome, including one of them starting to pass.

use std::collections::BTreeMap;
use std::time::Instant;

use dcc_cli::commands::{gadget_text, GadgetFormat};
use dcc_cli::{claims, fuzz, with_threads, Report, Verdict};
use dcc_core::gadgets::GADGET_NAMES;
use dcc_core::io::{cover_from_json, cover_to_json};
use dcc_core::random::{random_cover, random_graph, DetRng};
use dcc_core::solver::{find_coloring, DefectConstraint};
use dcc_core::{Coloring, Cover};

const KNOWN_FALSIFIED: &[u32] = &[7, 8];

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_reports(reports: &[Report]) -> Outcome {
    let passed = reports.iter().all(|r| r.verdict == Verdict::Verified);
    let mut parts = Vec::new();
    for r in reports {
        let failed: Vec<String> = r.failed_checks().map(|c| format!("{} ({})", c.id, c.detail)).collect();
        if failed.is_empty() {
            parts.push(format!("{} {:?} [{} checks]", r.claim, r.verdict, r.checks.len()));
        } else {
            parts.push(format!("{} {:?}: {}", r.claim, r.verdict, failed.join("; ")));
        }
    }
    Outcome {
        passed,
        detail: parts.join(" | "),
    }
}

fn verify(claim: &str, seed: u64) -> Report {
    claims::verify(claim, seed).expect("registered claim")
}

fn fuzz_run(target: &str, iters: u64, seed: u64) -> Report {
    fuzz::fuzz(target, iters, seed, None).expect("registered target")
}

fn criterion_3() -> Outcome {
    from_reports(&[verify("cor-g63-4corr", 0)])
}

fn criterion_6() -> Outcome {
    from_reports(&[verify("lemma-5.8", 7)])
}

fn criterion_7() -> Outcome {
    let reports: Vec<Report> = ["lemma-5.2", "lemma-5.4", "lemma-5.6", "lemma-good", "lemma-bad"]
        .iter()
        .map(|t| fuzz_run(t, 2000, 0))
        .collect();
    from_reports(&reports)
}

fn criterion_8() -> Outcome {
    let r = fuzz_run("thm-5.10-light-pair", 10_000, 0);
    let needed = ["light-pair-exists", "assembled-extension"];
    let passed = r.checks.iter().filter(|c| needed.contains(&c.id.as_str())).all(|c| c.passed);
    let detail = r
        .checks
        .iter()
        .map(|c| format!("{}: {}", c.id, c.detail.split("; first").next().unwrap()))
        .collect::<Vec<_>>()
        .join(" | ");
    Outcome { passed, detail }
}

fn criterion_9() -> Outcome {
    from_reports(&[verify("lemma-8.1", 0), verify("lemma-8.2", 0), verify("thm-t4-not-4corr", 0)])
}

/// Plain enumeration of every total coloring; returns whether one meets
/// the caps and pins.
fn brute_force(cover: &Cover, caps: &[usize], pin: &Coloring) -> bool {
    let n = cover.vertex_count();
    let sizes = cover.list_sizes();
    if sizes.iter().any(|&s| s == 0) {
        return false;
    }
    let mut colors = vec![0usize; n];
    loop {
        let pinned_ok = (0..n).all(|v| pin.get(v).map_or(true, |c| c == colors[v]));
        if pinned_ok {
            let ok = (0..n).all(|v| {
                let conflicts = cover
                    .graph()
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| cover.conflicts((v, colors[v]), (w, colors[w])))
                    .count();
                conflicts <= caps[v]
            });
            if ok {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < sizes[i] {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

fn criterion_10() -> Outcome {
    let mut problems = Vec::new();

    // Round trip of every gadget file.
    for &name in GADGET_NAMES {
        let mut params = BTreeMap::new();
        if name == "t-k" {
            params.insert("k".to_string(), "4".to_string());
        }
        let text = gadget_text(name, &params, GadgetFormat::Json).expect("gadget builds");
        match cover_from_json(&text) {
            Ok((cover, outer)) => {
                if cover_to_json(&cover, outer.as_deref()) != text {
                    problems.push(format!("{name}: re-emitted file differs"));
                }
                if cover.validate().is_err() {
                    problems.push(format!("{name}: parsed cover does not validate"));
                }
            }
            Err(e) => problems.push(format!("{name}: {e}")),
        }
    }

    // Solver against plain enumeration.
    let mut feasible = 0;
    for i in 0..1000u64 {
        let mut rng = DetRng::for_iteration(10, i);
        let n = 1 + rng.below(9);
        let graph = random_graph(n, 1, 2, &mut rng);
        let sizes: Vec<usize> = (0..n).map(|_| 1 + rng.below(3)).collect();
        let cover = random_cover(graph, sizes, &mut rng);
        let d = rng.below(3);
        let mut k = DefectConstraint::uniform(d);
        let mut caps = vec![d; n];
        let mut pin = Coloring::empty(n);
        for v in 0..n {
            match rng.below(6) {
                0 => {
                    caps[v] = 0;
                    k = k.with_cap(v, 0);
                }
                1 => pin.set(v, rng.below(cover.list_size(v))),
                _ => {}
            }
        }
        let cert = find_coloring(&cover, &k, &pin).expect("small instance");
        let expected = brute_force(&cover, &caps, &pin);
        feasible += expected as usize;
        if cert.is_feasible() != expected || !cert.verify(&cover, &k, &pin) {
            problems.push(format!("solver instance {i}: solver {}, enumeration {expected}", cert.is_feasible()));
        }
    }

    // Same reports on one thread and on several.
    let run = || {
        vec![
            fuzz_run("lemma-6.x", 300, 3).without_timing(),
            verify("thm-4.1", 3).without_timing(),
            verify("lemma-8.2", 3).without_timing(),
        ]
    };
    let one = with_threads(1, run).expect("pool");
    let four = with_threads(4, run).expect("pool");
    if one != four {
        problems.push("reports differ between 1 and 4 threads".to_string());
    }

    Outcome {
        passed: problems.is_empty(),
        detail: if problems.is_empty() {
            format!(
                "{} gadget files round-trip; 1000 solver instances agree with enumeration ({feasible} feasible); reports identical on 1 and 4 threads",
                GADGET_NAMES.len()
            )
        } else {
            problems.join("; ")
        },
    }
}

fn main() {
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome>)> = vec![
        (1, "bad gadget cover blocks conflict-free hubs", Box::new(|| from_reports(&[verify("lemma-3.1", 0)]))),
        (2, "63-copy gadget has no 3-defective coloring", Box::new(|| from_reports(&[verify("thm-1.2", 0)]))),
        (3, "63-copy gadget: degeneracy 3, greedy 4-fold", Box::new(criterion_3)),
        (4, "outerplanar colorer and endpoint contract", Box::new(|| from_reports(&[verify("thm-4.1", 0)]))),
        (5, "fan cover has no 2-defective coloring", Box::new(|| from_reports(&[verify("thm-1.4-tight", 0)]))),
        (6, "census: at most 6 bad pairs, pair-type rules", Box::new(criterion_6)),
        (7, "diamond lemmas and good/bad extensions", Box::new(criterion_7)),
        (8, "light pair and assembled extension on T(4)", Box::new(criterion_8)),
        (9, "rotation covers, H(sigma), T(4) partition cover", Box::new(criterion_9)),
        (10, "round trip, solver completeness, determinism", Box::new(criterion_10)),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut unexpected = 0;
    for (n, title, run) in &criteria {
        if only.is_some_and(|o| o != *n) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FALSIFIED.contains(n);
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        let note = match (outcome.passed, known) {
            (false, true) => " (known falsified statement)",
            (true, true) => " (listed as known falsified but passed)",
            _ => "",
        };
        println!("criterion {n:>2}: {status}{note} [{secs:.1}s] {title}: {}", outcome.detail);
        if outcome.passed == known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria with unexpected outcome");
        std::process::exit(1);
    }
}
