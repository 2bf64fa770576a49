//! Finite simple undirected graphs with dense vertex ids, plus degeneracy
//! orderings.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

/// Dense vertex identifier, assigned in insertion order starting at 0.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge endpoint {0} is not a vertex")]
    UnknownEndpoint(VertexId),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("vertex label `{0}` used twice")]
    DuplicateLabel(String),
}

/// A validated simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Option<String>>,
    adj: Vec<Vec<VertexId>>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a graph on vertices `0..n`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::with_labels(vec![None; n], edges)
    }

    /// Builds a graph whose vertex `i` carries `labels[i]`.
    pub fn with_labels(
        labels: Vec<Option<String>>,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let n = labels.len();
        let mut seen = HashMap::new();
        for label in labels.iter().flatten() {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(GraphError::DuplicateLabel(label.clone()));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::UnknownEndpoint(a));
            }
            if b >= n {
                return Err(GraphError::UnknownEndpoint(b));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            let key = (a.min(b), a.max(b));
            if !set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            labels,
            adj,
            edges: set.into_iter().collect(),
        })
    }

    /// Builds a graph from named vertices and edges given by name.
    pub fn from_named(names: &[&str], edges: &[(&str, &str)]) -> Result<Self, GraphError> {
        let index: HashMap<&str, VertexId> =
            names.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| GraphError::UnknownLabel(s.to_string()))
        };
        let ids = edges
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::with_labels(names.iter().map(|s| Some(s.to_string())).collect(), &ids)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.adj.len()
    }

    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Label if present, otherwise the numeric id.
    pub fn name(&self, v: VertexId) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_string)
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Subgraph induced by `keep`, renumbered in the given order. Returns the
    /// new graph; new vertex `i` is old vertex `keep[i]`.
    pub fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut pos = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b)| (pos[a], pos[b]))
            .collect();
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::with_labels(labels, &edges).expect("induced subgraph of a simple graph is simple")
    }

    /// Same vertices with extra edges; edges already present are skipped.
    pub fn with_extra_edges(&self, extra: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let mut all = self.edges.clone();
        for &(a, b) in extra {
            if !self.has_edge(a, b) && !all.contains(&(a.min(b), a.max(b))) {
                all.push((a.min(b), a.max(b)));
            }
        }
        Graph::with_labels(self.labels.clone(), &all)
    }

    /// Graphviz DOT. Node ids are vertex ids; labels go in a `name` attribute.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            match self.label(v) {
                Some(l) => writeln!(out, "  {v} [name=\"{}\"];", l.replace('"', "\\\"")).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for &(a, b) in &self.edges {
            writeln!(out, "  {a} -- {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// A min-degree peeling order. Every vertex has at most `degeneracy`
/// neighbors that appear *later* in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrder {
    pub order: Vec<VertexId>,
    pub degeneracy: usize,
}

impl DegeneracyOrder {
    /// Re-scans the order against `g`: the order must be a permutation and
    /// each vertex may have at most `degeneracy` later neighbors.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        self.order.iter().enumerate().all(|(i, &v)| {
            g.neighbors(v).iter().filter(|&&w| pos[w] > i).count() <= self.degeneracy
        })
    }
}

/// Repeatedly removes a vertex of minimum remaining degree, smallest id first.
pub fn degeneracy(g: &Graph) -> DegeneracyOrder {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, VertexId)> = g.vertices().map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut best = 0;
    while let Some((d, v)) = queue.pop_first() {
        best = best.max(d);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    DegeneracyOrder {
        order,
        degeneracy: best,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn k2_from_names() {
        let g = Graph::from_named(&["a", "b"], &[("a", "b")]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.vertex_by_label("b"), Some(1));
    }

    #[test]
    fn rejects_loops_duplicates_and_unknown_endpoints() {
        assert_eq!(
            Graph::from_named(&["a"], &[("a", "a")]),
            Err(GraphError::Loop(0))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::UnknownEndpoint(2))
        );
        assert_eq!(
            Graph::from_named(&["a"], &[("a", "q")]),
            Err(GraphError::UnknownLabel("q".into()))
        );
    }

    #[test]
    fn degeneracy_small_cases() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(degeneracy(&k2).degeneracy, 1);
        let c5 = cycle(5);
        let d = degeneracy(&c5);
        assert_eq!(d.degeneracy, 2);
        assert!(d.verify(&c5));
        // ties break on the smallest id
        assert_eq!(d.order[0], 0);
    }

    #[test]
    fn verify_rejects_a_bad_order() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let mut d = degeneracy(&k4);
        assert_eq!(d.degeneracy, 3);
        d.degeneracy = 2;
        assert!(!d.verify(&k4));
    }

    #[test]
    fn induced_keeps_labels() {
        let g = Graph::from_named(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        let h = g.induced(&[2, 1]);
        assert_eq!(h.label(0), Some("c"));
        assert_eq!(h.edges(), &[(0, 1)]);
    }

    #[test]
    fn dot_lists_every_edge() {
        let g = Graph::from_named(&["a", "b"], &[("a", "b")]).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("name=\"a\""));
    }
}
