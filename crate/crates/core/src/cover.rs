//! Correspondence covers: per-vertex color lists plus a matching on every
//! edge of the base graph.
//!
//! A color is a pair `(vertex, local index)`, so the lists partition the
//! color set and are independent by construction. The only condition a
//! cover can actually violate is the matching condition, plus out-of-range
//! indices in hand-written input.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// `(vertex, local index)`.
pub type Color = (VertexId, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("invalid cover: {0}")]
    Invalid(ValidationReport),
    #[error("vertex {vertex} has no color {color} (list size {size})")]
    ColorOutOfList {
        vertex: VertexId,
        color: usize,
        size: usize,
    },
    #[error("partial coloring has {got} entries, graph has {expected} vertices")]
    WrongLength { expected: usize, got: usize },
    #[error("partial coloring is not proper: {0:?} conflicts with {1:?}")]
    ImproperPartial(Color, Color),
    #[error("list of vertex {vertex} has {size} colors, need {needed}")]
    ListTooShort {
        vertex: VertexId,
        size: usize,
        needed: usize,
    },
}

/// Which clause of the cover definition a violation breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// Every color belongs to exactly one list.
    Partition,
    /// No cover edge inside a single list.
    IndependentLists,
    /// Cross edges between two lists form a matching, empty on non-edges.
    Matching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub clause: Clause,
    pub colors: Vec<Color>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self
            .violations
            .iter()
            .map(|v| format!("{:?}: {}", v.clause, v.detail))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Matched color pairs for the edge `(a, b)`, `a < b`, as `(a-side, b-side)`.
pub type Matchings = BTreeMap<(VertexId, VertexId), Vec<(usize, usize)>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    graph: Graph,
    list_sizes: Vec<usize>,
    matchings: Matchings,
    /// `partner[v][k][i]`: the color of the `k`-th neighbor of `v` matched to
    /// `(v, i)`. Only meaningful for valid covers.
    partner: Vec<Vec<Vec<Option<usize>>>>,
}

impl Cover {
    /// Builds and validates.
    pub fn new(graph: Graph, list_sizes: Vec<usize>, matchings: Matchings) -> Result<Self, CoverError> {
        let c = Self::unchecked(graph, list_sizes, matchings);
        c.validate().map_err(CoverError::Invalid)?;
        Ok(c)
    }

    /// Builds without validating. Keys are normalised so the smaller id
    /// comes first; pairs are sorted and empty matchings dropped.
    pub fn unchecked(graph: Graph, mut list_sizes: Vec<usize>, matchings: Matchings) -> Self {
        list_sizes.resize(graph.vertex_count(), 0);
        let mut norm: Matchings = BTreeMap::new();
        for ((a, b), pairs) in matchings {
            let (key, flip) = if a <= b { ((a, b), false) } else { ((b, a), true) };
            let entry = norm.entry(key).or_default();
            entry.extend(pairs.into_iter().map(|(i, j)| if flip { (j, i) } else { (i, j) }));
        }
        norm.retain(|_, p| !p.is_empty());
        for pairs in norm.values_mut() {
            pairs.sort_unstable();
            pairs.dedup();
        }
        let partner = build_partner(&graph, &list_sizes, &norm);
        Cover {
            graph,
            list_sizes,
            matchings: norm,
            partner,
        }
    }

    /// Cover with every list `0..k` and the identity matching on every edge.
    pub fn identity(graph: Graph, k: usize) -> Self {
        let matchings = graph
            .edges()
            .iter()
            .map(|&e| (e, (0..k).map(|i| (i, i)).collect()))
            .collect();
        let n = graph.vertex_count();
        Self::unchecked(graph, vec![k; n], matchings)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn list_size(&self, v: VertexId) -> usize {
        self.list_sizes[v]
    }

    pub fn list_sizes(&self) -> &[usize] {
        &self.list_sizes
    }

    pub fn matchings(&self) -> &Matchings {
        &self.matchings
    }

    /// Pairs on edge `a`-`b` oriented as `(a-side, b-side)`.
    pub fn matching(&self, a: VertexId, b: VertexId) -> Vec<(usize, usize)> {
        if a <= b {
            self.matchings.get(&(a, b)).cloned().unwrap_or_default()
        } else {
            self.matchings
                .get(&(b, a))
                .map(|p| p.iter().map(|&(i, j)| (j, i)).collect())
                .unwrap_or_default()
        }
    }

    /// Number of cover edges.
    pub fn cover_edge_count(&self) -> usize {
        self.matchings.values().map(Vec::len).sum()
    }

    /// Color of the `k`-th neighbor of `v` matched to `(v, i)`.
    #[inline]
    pub fn partner_at(&self, v: VertexId, k: usize, i: usize) -> Option<usize> {
        self.partner[v][k][i]
    }

    /// Color of `w` matched to `(v, i)`, if `vw` is an edge and `(v, i)` is matched.
    pub fn partner(&self, v: VertexId, i: usize, w: VertexId) -> Option<usize> {
        let k = self.graph.neighbors(v).binary_search(&w).ok()?;
        self.partner[v][k].get(i).copied().flatten()
    }

    pub fn conflicts(&self, a: Color, b: Color) -> bool {
        self.partner(a.0, a.1, b.0) == Some(b.1)
    }

    /// Checks all three clauses of the cover definition.
    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let n = self.graph.vertex_count();
        for (&(a, b), pairs) in &self.matchings {
            if a >= n || b >= n {
                violations.push(Violation {
                    clause: Clause::Partition,
                    colors: vec![],
                    detail: format!("matching on unknown vertex pair {a}-{b}"),
                });
                continue;
            }
            if a == b {
                violations.push(Violation {
                    clause: Clause::IndependentLists,
                    colors: pairs.iter().flat_map(|&(i, j)| [(a, i), (a, j)]).collect(),
                    detail: format!("cover edges inside the list of vertex {a}"),
                });
                continue;
            }
            if !self.graph.has_edge(a, b) {
                violations.push(Violation {
                    clause: Clause::Matching,
                    colors: pairs.iter().flat_map(|&(i, j)| [(a, i), (b, j)]).collect(),
                    detail: format!("cover edges between non-adjacent vertices {a} and {b}"),
                });
                continue;
            }
            for &(i, j) in pairs {
                if i >= self.list_sizes[a] {
                    violations.push(Violation {
                        clause: Clause::Partition,
                        colors: vec![(a, i)],
                        detail: format!("color {i} is not in the list of vertex {a}"),
                    });
                }
                if j >= self.list_sizes[b] {
                    violations.push(Violation {
                        clause: Clause::Partition,
                        colors: vec![(b, j)],
                        detail: format!("color {j} is not in the list of vertex {b}"),
                    });
                }
            }
            for side in 0..2 {
                let mut seen = BTreeMap::new();
                for &(i, j) in pairs {
                    let (mine, other) = if side == 0 { ((a, i), (b, j)) } else { ((b, j), (a, i)) };
                    if let Some(prev) = seen.insert(mine, other) {
                        violations.push(Violation {
                            clause: Clause::Matching,
                            colors: vec![mine, prev, other],
                            detail: format!(
                                "color {mine:?} is matched to both {prev:?} and {other:?}"
                            ),
                        });
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }

    /// Keeps only the listed local colors at each vertex, renumbered in the
    /// given order. `keep[v]` must hold distinct in-range indices.
    pub fn restrict_lists(&self, keep: &[Vec<usize>]) -> Subcover {
        let vertices: Vec<VertexId> = self.graph.vertices().collect();
        self.induced_with_lists(&vertices, keep)
    }

    /// The cover induced on `vertices` (full lists), renumbered in order.
    pub fn induced(&self, vertices: &[VertexId]) -> Subcover {
        let keep: Vec<Vec<usize>> = self
            .graph
            .vertices()
            .map(|v| (0..self.list_sizes[v]).collect())
            .collect();
        self.induced_with_lists(vertices, &keep)
    }

    fn induced_with_lists(&self, vertices: &[VertexId], keep: &[Vec<usize>]) -> Subcover {
        let graph = self.graph.induced(vertices);
        let color_map: Vec<Vec<usize>> = vertices.iter().map(|&v| keep[v].clone()).collect();
        let mut new_index: Vec<Vec<Option<usize>>> = self
            .graph
            .vertices()
            .map(|v| vec![None; self.list_sizes[v]])
            .collect();
        for (&v, kept) in vertices.iter().zip(&color_map) {
            for (ni, &oi) in kept.iter().enumerate() {
                new_index[v][oi] = Some(ni);
            }
        }
        let mut matchings: Matchings = BTreeMap::new();
        for (na, nb) in graph.edges().iter().copied() {
            let (a, b) = (vertices[na], vertices[nb]);
            let pairs: Vec<_> = self
                .matching(a, b)
                .into_iter()
                .filter_map(|(i, j)| Some((new_index[a][i]?, new_index[b][j]?)))
                .collect();
            matchings.insert((na, nb), pairs);
        }
        let sizes = color_map.iter().map(Vec::len).collect();
        Subcover {
            cover: Cover::unchecked(graph, sizes, matchings),
            vertex_map: vertices.to_vec(),
            color_map,
        }
    }

    /// The subcover induced by a proper partial coloring: colored vertices
    /// are removed and every color conflicting with a used color is deleted.
    pub fn subcover(&self, phi: &Coloring) -> Result<Subcover, CoverError> {
        phi.check_in_lists(self)?;
        let used: Vec<Color> = phi.assigned().collect();
        for (x, &a) in used.iter().enumerate() {
            for &b in &used[x + 1..] {
                if self.conflicts(a, b) {
                    return Err(CoverError::ImproperPartial(a, b));
                }
            }
        }
        let mut keep: Vec<Vec<usize>> = self
            .graph
            .vertices()
            .map(|v| (0..self.list_sizes[v]).collect())
            .collect();
        for &(v, i) in &used {
            for (k, &w) in self.graph.neighbors(v).iter().enumerate() {
                if let Some(j) = self.partner[v][k][i] {
                    keep[w].retain(|&c| c != j);
                }
            }
        }
        let rest: Vec<VertexId> = self.graph.vertices().filter(|&v| phi.get(v).is_none()).collect();
        Ok(self.induced_with_lists(&rest, &keep))
    }

    /// Extends every matching to a maximal one by pairing unmatched colors
    /// in ascending local-index order.
    pub fn maximalize(&self) -> Cover {
        let mut matchings = self.matchings.clone();
        for &(a, b) in self.graph.edges() {
            let pairs = matchings.entry((a, b)).or_default();
            let free_a: Vec<usize> = (0..self.list_sizes[a])
                .filter(|i| !pairs.iter().any(|p| p.0 == *i))
                .collect();
            let free_b: Vec<usize> = (0..self.list_sizes[b])
                .filter(|j| !pairs.iter().any(|p| p.1 == *j))
                .collect();
            pairs.extend(free_a.into_iter().zip(free_b));
        }
        Cover::unchecked(self.graph.clone(), self.list_sizes.clone(), matchings)
    }

    /// True when no matching can be extended.
    pub fn is_maximal(&self) -> bool {
        self.graph.edges().iter().all(|&(a, b)| {
            let pairs = self.matching(a, b);
            pairs.len() == self.list_sizes[a].min(self.list_sizes[b])
        })
    }

    /// Deletes the highest-indexed colors until every list has exactly `k`.
    /// Surviving colors keep their local index.
    pub fn trim(&self, k: usize) -> Result<Cover, CoverError> {
        for v in self.graph.vertices() {
            if self.list_sizes[v] < k {
                return Err(CoverError::ListTooShort {
                    vertex: v,
                    size: self.list_sizes[v],
                    needed: k,
                });
            }
        }
        let keep: Vec<Vec<usize>> = self.graph.vertices().map(|_| (0..k).collect()).collect();
        Ok(self.restrict_lists(&keep).cover)
    }

    /// Same cover with extra graph edges carrying empty matchings.
    pub fn with_extra_edges(&self, extra: &[(VertexId, VertexId)]) -> Result<Cover, crate::graph::GraphError> {
        let graph = self.graph.with_extra_edges(extra)?;
        Ok(Cover::unchecked(graph, self.list_sizes.clone(), self.matchings.clone()))
    }
}

fn build_partner(graph: &Graph, sizes: &[usize], matchings: &Matchings) -> Vec<Vec<Vec<Option<usize>>>> {
    let mut partner: Vec<Vec<Vec<Option<usize>>>> = graph
        .vertices()
        .map(|v| vec![vec![None; sizes[v]]; graph.degree(v)])
        .collect();
    for (&(a, b), pairs) in matchings {
        let (Ok(ka), Ok(kb)) = (
            graph.neighbors(a).binary_search(&b),
            graph.neighbors(b).binary_search(&a),
        ) else {
            continue;
        };
        for &(i, j) in pairs {
            if i < sizes[a] && j < sizes[b] {
                partner[a][ka][i] = Some(j);
                partner[b][kb][j] = Some(i);
            }
        }
    }
    partner
}

/// A cover cut out of a larger one, with the maps back to the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subcover {
    pub cover: Cover,
    /// New vertex `i` is original vertex `vertex_map[i]`.
    pub vertex_map: Vec<VertexId>,
    /// New color `(i, c)` is original color `(vertex_map[i], color_map[i][c])`.
    pub color_map: Vec<Vec<usize>>,
}

impl Subcover {
    /// Writes a coloring of the subcover into `base`, a coloring of the
    /// original cover (typically the partial coloring the subcover came from).
    pub fn lift_into(&self, sub: &Coloring, base: &mut Coloring) {
        for (i, &v) in self.vertex_map.iter().enumerate() {
            if let Some(c) = sub.get(i) {
                base.set(v, self.color_map[i][c]);
            }
        }
    }

    /// New local index of original color `(vertex_map[i], orig)`.
    pub fn local_index(&self, i: usize, orig: usize) -> Option<usize> {
        self.color_map[i].iter().position(|&c| c == orig)
    }
}

/// A partial map from vertices to local color indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<Option<usize>>);

impl Coloring {
    pub fn empty(n: usize) -> Self {
        Coloring(vec![None; n])
    }

    pub fn from_total(colors: &[usize]) -> Self {
        Coloring(colors.iter().map(|&c| Some(c)).collect())
    }

    pub fn from_pins(n: usize, pins: &[(VertexId, usize)]) -> Self {
        let mut c = Self::empty(n);
        for &(v, i) in pins {
            c.set(v, i);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> Option<usize> {
        self.0[v]
    }

    pub fn set(&mut self, v: VertexId, c: usize) {
        self.0[v] = Some(c);
    }

    pub fn unset(&mut self, v: VertexId) {
        self.0[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.0
    }

    /// Assigned `(vertex, color)` pairs in vertex order.
    pub fn assigned(&self) -> impl Iterator<Item = Color> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// Every assigned color lies in its vertex's list.
    pub fn check_in_lists(&self, cover: &Cover) -> Result<(), CoverError> {
        if self.0.len() != cover.vertex_count() {
            return Err(CoverError::WrongLength {
                expected: cover.vertex_count(),
                got: self.0.len(),
            });
        }
        for (v, c) in self.assigned() {
            if c >= cover.list_size(v) {
                return Err(CoverError::ColorOutOfList {
                    vertex: v,
                    color: c,
                    size: cover.list_size(v),
                });
            }
        }
        Ok(())
    }
}

/// Per-vertex count of neighbors whose assigned color conflicts with the
/// vertex's own. Uncolored vertices and neighbors contribute nothing.
pub fn defects(cover: &Cover, phi: &Coloring) -> Vec<usize> {
    let g = cover.graph();
    g.vertices()
        .map(|v| {
            let Some(i) = phi.get(v) else { return 0 };
            g.neighbors(v)
                .iter()
                .enumerate()
                .filter(|&(k, &w)| {
                    phi.get(w).is_some() && cover.partner_at(v, k, i) == phi.get(w)
                })
                .count()
        })
        .collect()
}

/// Maximum defect over all vertices (0 for an empty graph).
pub fn max_defect(cover: &Cover, phi: &Coloring) -> usize {
    defects(cover, phi).into_iter().max().unwrap_or(0)
}

/// A witness that two covers are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverIsomorphism {
    /// Vertex `v` of the first cover goes to `vertex_map[v]`.
    pub vertex_map: Vec<VertexId>,
    /// Color `(v, i)` goes to `(vertex_map[v], color_maps[v][i])`.
    pub color_maps: Vec<Vec<usize>>,
}

impl CoverIsomorphism {
    /// Re-checks the witness edge by edge.
    pub fn verify(&self, c1: &Cover, c2: &Cover) -> bool {
        let n = c1.vertex_count();
        if c2.vertex_count() != n || self.vertex_map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for v in 0..n {
            let t = self.vertex_map[v];
            if t >= n || hit[t] || c1.list_size(v) != c2.list_size(t) {
                return false;
            }
            hit[t] = true;
            let mut perm = self.color_maps[v].clone();
            perm.sort_unstable();
            if perm != (0..c1.list_size(v)).collect::<Vec<_>>() {
                return false;
            }
        }
        if c1.graph().edge_count() != c2.graph().edge_count()
            || c1.cover_edge_count() != c2.cover_edge_count()
        {
            return false;
        }
        c1.graph().edges().iter().all(|&(a, b)| {
            let (ta, tb) = (self.vertex_map[a], self.vertex_map[b]);
            c2.graph().has_edge(ta, tb)
                && c1.matching(a, b).iter().all(|&(i, j)| {
                    c2.conflicts(
                        (ta, self.color_maps[a][i]),
                        (tb, self.color_maps[b][j]),
                    )
                })
        })
    }
}

/// Searches for a base-graph isomorphism together with per-list color
/// bijections carrying the cover edges of `c1` exactly onto those of `c2`.
pub fn isomorphic(c1: &Cover, c2: &Cover) -> Option<CoverIsomorphism> {
    let (g1, g2) = (c1.graph(), c2.graph());
    let n = g1.vertex_count();
    if g2.vertex_count() != n
        || g1.edge_count() != g2.edge_count()
        || c1.cover_edge_count() != c2.cover_edge_count()
    {
        return None;
    }
    let signature = |c: &Cover| {
        let mut s: Vec<_> = c
            .graph()
            .vertices()
            .map(|v| (c.list_size(v), c.graph().degree(v)))
            .collect();
        s.sort_unstable();
        s
    };
    if signature(c1) != signature(c2) {
        return None;
    }

    // Visit vertices of c1 breadth-first so each new vertex has mapped
    // neighbors to check against as early as possible.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in g1.vertices() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut head = order.len();
        order.push(s);
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g1.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let mut search = IsoSearch {
        c1,
        c2,
        order,
        vertex_map: vec![usize::MAX; n],
        used: vec![false; n],
        color_maps: vec![Vec::new(); n],
        perms: BTreeMap::new(),
    };
    if search.extend(0) {
        Some(CoverIsomorphism {
            vertex_map: search.vertex_map,
            color_maps: search.color_maps,
        })
    } else {
        None
    }
}

struct IsoSearch<'a> {
    c1: &'a Cover,
    c2: &'a Cover,
    order: Vec<VertexId>,
    vertex_map: Vec<VertexId>,
    used: Vec<bool>,
    color_maps: Vec<Vec<usize>>,
    perms: BTreeMap<usize, Vec<Vec<usize>>>,
}

impl IsoSearch<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let (g1, g2) = (self.c1.graph(), self.c2.graph());
        let k = self.c1.list_size(v);
        let perms = self
            .perms
            .entry(k)
            .or_insert_with(|| permutations(k))
            .clone();
        for t in g2.vertices() {
            if self.used[t]
                || self.c2.list_size(t) != k
                || g2.degree(t) != g1.degree(v)
            {
                continue;
            }
            let mapped: Vec<VertexId> = self.order[..depth].to_vec();
            if mapped
                .iter()
                .any(|&p| g1.has_edge(v, p) != g2.has_edge(t, self.vertex_map[p]))
            {
                continue;
            }
            self.vertex_map[v] = t;
            self.used[t] = true;
            for perm in &perms {
                let consistent = g1.neighbors(v).iter().all(|&p| {
                    let tp = self.vertex_map[p];
                    if tp == usize::MAX {
                        return true;
                    }
                    (0..k).all(|i| {
                        let img = self
                            .c1
                            .partner(v, i, p)
                            .map(|j| self.color_maps[p][j]);
                        img == self.c2.partner(t, perm[i], tp)
                    })
                });
                if consistent {
                    self.color_maps[v] = perm.clone();
                    if self.extend(depth + 1) {
                        return true;
                    }
                }
            }
            self.color_maps[v].clear();
            self.vertex_map[v] = usize::MAX;
            self.used[t] = false;
        }
        false
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}
