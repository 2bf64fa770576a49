//! File-level commands: solve, classify and gadget export.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::json;

use dcc_core::classify::{self, bad_pair_census, classify_residual, is_twisted, is_wedged, Census};
use dcc_core::gadgets::{self, build_gadget};
use dcc_core::io::{certificate_to_json, cover_from_json, cover_to_json};
use dcc_core::solver::{find_coloring, Certificate, DefectConstraint};
use dcc_core::{Coloring, Cover, VertexId};

use crate::error::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::file(path, e))
}

pub fn read_cover(path: &Path) -> Result<(Cover, Option<Vec<VertexId>>), CliError> {
    Ok(cover_from_json(&read_file(path)?)?)
}

/// Splits `key=value`.
pub fn split_assignment(s: &str) -> Result<(&str, &str), CliError> {
    s.split_once('=')
        .filter(|(k, v)| !k.is_empty() && !v.is_empty())
        .ok_or_else(|| CliError::Usage(format!("expected key=value, got `{s}`")))
}

/// A vertex given by id or by label.
pub fn resolve_vertex(cover: &Cover, s: &str) -> Result<VertexId, CliError> {
    if let Ok(v) = s.parse::<usize>() {
        if v < cover.vertex_count() {
            return Ok(v);
        }
    }
    cover
        .graph()
        .vertex_by_label(s)
        .ok_or_else(|| CliError::Usage(format!("no vertex `{s}`")))
}

fn parse_number(s: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("`{s}` is not a non-negative integer")))
}

/// Solves `cover` for a d-defective coloring with per-vertex caps
/// (`v=K`) and pins (`v=i`, local color index).
pub fn solve(cover: &Cover, defect: usize, caps: &[String], pins: &[String]) -> Result<Certificate, CliError> {
    let mut k = DefectConstraint::uniform(defect);
    for c in caps {
        let (v, cap) = split_assignment(c)?;
        k = k.with_cap(resolve_vertex(cover, v)?, parse_number(cap)?);
    }
    let mut pin = Coloring::empty(cover.vertex_count());
    for p in pins {
        let (v, i) = split_assignment(p)?;
        pin.set(resolve_vertex(cover, v)?, parse_number(i)?);
    }
    pin.check_in_lists(cover)?;
    Ok(find_coloring(cover, &k, &pin)?)
}

pub fn solve_to_json(cover: &Cover, defect: usize, caps: &[String], pins: &[String]) -> Result<String, CliError> {
    Ok(certificate_to_json(&solve(cover, defect, caps, pins)?))
}

fn census_json(census: &Census) -> serde_json::Value {
    let pairs: Vec<serde_json::Value> = census
        .entries
        .iter()
        .map(|(&(alpha, beta), e)| {
            json!({
                "alpha": alpha,
                "beta": beta,
                "class": e.classification.name(),
                "pair_type": e.pair_type.map(|t| t.name()),
            })
        })
        .collect();
    json!({
        "kind": "census",
        "pairs": pairs,
        "bad_count": census.bad_count(),
        "violations": census.invariant_violations(),
    })
}

/// Classifies a cover by shape: a cover of `R` gets the detector verdicts,
/// a residual cover its good/bad class, a 3-fold cover of `T` its census.
pub fn classify_cover(cover: &Cover) -> Result<serde_json::Value, CliError> {
    let g = cover.graph();
    if g.vertex_count() == 4 && g.edge_count() == 5 {
        let twisted = match is_twisted(cover) {
            Ok(w) => Some(w.is_some()),
            Err(classify::ClassifyError::Profile { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        let wedged = match is_wedged(cover) {
            Ok(w) => Some(w.is_some()),
            Err(classify::ClassifyError::Profile { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        return Ok(json!({ "kind": "diamond", "twisted": twisted, "wedged": wedged }));
    }
    if g.vertex_count() == 7 {
        let c = classify_residual(cover)?;
        return Ok(json!({ "kind": "residual", "class": c.name() }));
    }
    let census = bad_pair_census(cover)?;
    Ok(census_json(&census))
}

/// `name=value` gadget parameters.
pub fn parse_params(params: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    params
        .iter()
        .map(|p| split_assignment(p).map(|(k, v)| (k.to_string(), v.to_string())))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetFormat {
    Json,
    Dot,
}

pub fn gadget_text(name: &str, params: &BTreeMap<String, String>, format: GadgetFormat) -> Result<String, CliError> {
    if !gadgets::GADGET_NAMES.contains(&name) {
        return Err(gadgets::GadgetError::UnknownGadget(name.to_string()).into());
    }
    let g = build_gadget(name, params)?;
    Ok(match format {
        GadgetFormat::Json => cover_to_json(&g.cover, g.outer_cycle.as_deref()),
        GadgetFormat::Dot => g.cover.graph().to_dot(),
    })
}
