//! JSON formats: the cover file (optionally with an outer cycle) and the
//! coloring certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{Coloring, Cover, CoverError, Matchings};
use crate::graph::{Graph, GraphError, VertexId};
use crate::solver::{Certificate, SearchStats};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("vertex ids must be 0..n in order; found {found} at position {position}")]
    NonDenseIds { position: usize, found: usize },
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(VertexId, VertexId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("certificate names vertex `{0}`, which is not an id of the cover")]
    BadVertexKey(String),
    #[error("unknown certificate kind `{0}`")]
    BadKind(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub list_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub u: usize,
    pub v: usize,
    pub matching: Vec<[usize; 2]>,
}

/// On-disk cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer_cycle: Option<Vec<usize>>,
}

impl CoverFile {
    pub fn from_cover(cover: &Cover, outer_cycle: Option<Vec<VertexId>>) -> Self {
        let g = cover.graph();
        CoverFile {
            vertices: g
                .vertices()
                .map(|v| VertexEntry {
                    id: v,
                    label: g.label(v).map(str::to_string),
                    list_size: cover.list_size(v),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|&(a, b)| EdgeEntry {
                    u: a,
                    v: b,
                    matching: cover.matching(a, b).into_iter().map(|(i, j)| [i, j]).collect(),
                })
                .collect(),
            outer_cycle,
        }
    }

    /// Builds and validates the cover.
    pub fn to_cover(&self) -> Result<Cover, IoError> {
        for (position, v) in self.vertices.iter().enumerate() {
            if v.id != position {
                return Err(IoError::NonDenseIds {
                    position,
                    found: v.id,
                });
            }
        }
        let labels = self.vertices.iter().map(|v| v.label.clone()).collect();
        let edges: Vec<_> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        let graph = Graph::with_labels(labels, &edges)?;
        let mut matchings = Matchings::new();
        for e in &self.edges {
            let pairs = e.matching.iter().map(|&[i, j]| (i, j)).collect();
            if matchings.insert((e.u, e.v), pairs).is_some() {
                return Err(IoError::DuplicateEdge(e.u, e.v));
            }
        }
        let sizes = self.vertices.iter().map(|v| v.list_size).collect();
        Ok(Cover::new(graph, sizes, matchings)?)
    }
}

/// Canonical pretty JSON for a cover.
pub fn cover_to_json(cover: &Cover, outer_cycle: Option<&[VertexId]>) -> String {
    let file = CoverFile::from_cover(cover, outer_cycle.map(<[VertexId]>::to_vec));
    let mut s = serde_json::to_string_pretty(&file).expect("cover files always serialize");
    s.push('\n');
    s
}

/// Parses and validates a cover file, returning the outer cycle if present.
pub fn cover_from_json(text: &str) -> Result<(Cover, Option<Vec<VertexId>>), IoError> {
    let file: CoverFile = serde_json::from_str(text)?;
    let cover = file.to_cover()?;
    Ok((cover, file.outer_cycle))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsEntry {
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub kind: String,
    /// Vertex id (as a string key) to local color index.
    pub coloring: Option<BTreeMap<String, usize>>,
    pub stats: StatsEntry,
}

fn stats_entry(s: SearchStats) -> StatsEntry {
    StatsEntry {
        nodes: s.nodes,
        elapsed_ms: s.elapsed_ms.min(u64::MAX as u128) as u64,
    }
}

/// Coloring as a map keyed by decimal vertex id; uncolored vertices are
/// left out.
pub fn coloring_map(phi: &Coloring) -> BTreeMap<String, usize> {
    phi.assigned().map(|(v, c)| (v.to_string(), c)).collect()
}

pub fn certificate_file(cert: &Certificate) -> CertificateFile {
    match cert {
        Certificate::Coloring { coloring, stats } => CertificateFile {
            kind: "coloring".into(),
            coloring: Some(coloring_map(coloring)),
            stats: stats_entry(*stats),
        },
        Certificate::Infeasible { stats } => CertificateFile {
            kind: "infeasible".into(),
            coloring: None,
            stats: stats_entry(*stats),
        },
    }
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    let mut s = serde_json::to_string_pretty(&certificate_file(cert)).expect("certificates serialize");
    s.push('\n');
    s
}

/// Parses a certificate for a cover with `n` vertices.
pub fn certificate_from_json(text: &str, n: usize) -> Result<Certificate, IoError> {
    let file: CertificateFile = serde_json::from_str(text)?;
    let stats = SearchStats {
        nodes: file.stats.nodes,
        elapsed_ms: file.stats.elapsed_ms as u128,
    };
    match file.kind.as_str() {
        "coloring" => {
            let mut phi = Coloring::empty(n);
            for (k, c) in file.coloring.unwrap_or_default() {
                let v: usize = k.parse().map_err(|_| IoError::BadVertexKey(k.clone()))?;
                if v >= n {
                    return Err(IoError::BadVertexKey(k));
                }
                phi.set(v, c);
            }
            Ok(Certificate::Coloring { coloring: phi, stats })
        }
        "infeasible" => Ok(Certificate::Infeasible { stats }),
        other => Err(IoError::BadKind(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_round_trip() {
        let g = Graph::from_named(&["a", "b"], &[("a", "b")]).unwrap();
        let c = Cover::identity(g, 2);
        let text = cover_to_json(&c, None);
        let (back, outer) = cover_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert!(outer.is_none());
        assert_eq!(cover_to_json(&back, None), text);
    }

    #[test]
    fn invalid_files_are_rejected() {
        let sparse = r#"{"vertices":[{"id":1,"list_size":1}],"edges":[]}"#;
        assert!(matches!(cover_from_json(sparse), Err(IoError::NonDenseIds { .. })));
        let bad_matching = r#"{"vertices":[{"id":0,"list_size":2},{"id":1,"list_size":2}],
            "edges":[{"u":0,"v":1,"matching":[[0,0],[0,1]]}]}"#;
        assert!(matches!(cover_from_json(bad_matching), Err(IoError::Cover(_))));
        assert!(matches!(cover_from_json("{"), Err(IoError::Json(_))));
    }

    #[test]
    fn certificate_round_trip() {
        let cert = Certificate::Coloring {
            coloring: Coloring::from_total(&[1, 0]),
            stats: SearchStats { nodes: 3, elapsed_ms: 0 },
        };
        let text = certificate_to_json(&cert);
        assert!(text.contains("\"kind\": \"coloring\""));
        assert_eq!(certificate_from_json(&text, 2).unwrap(), cert);
        let inf = Certificate::Infeasible { stats: SearchStats::default() };
        assert_eq!(certificate_from_json(&certificate_to_json(&inf), 2).unwrap(), inf);
    }
}
