//! Outerplane graphs given by their outer cycle, fan triangulation of the
//! interior faces, and the recursive 3-defective colorer for 2-fold covers
//! of near triangulations with its endpoint-defect contract.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::cover::{defects, Coloring, Cover, CoverError};
use crate::graph::{Graph, GraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OuterplanarError {
    #[error("outer cycle is not a permutation of the vertices")]
    BadCycle,
    #[error("edge {0}-{1} crosses another chord")]
    Crossing(VertexId, VertexId),
    #[error("interior face {0:?} is not a triangle")]
    NotTriangulated(Vec<VertexId>),
    #[error("{0}-{1} is not an outer-cycle edge")]
    NotOuterEdge(VertexId, VertexId),
    #[error("vertex {vertex} has {size} colors, need at least 2")]
    ListTooShort { vertex: VertexId, size: usize },
    #[error("cover is on a different graph")]
    GraphMismatch,
    /// The recursion met a configuration its invariants rule out.
    #[error("recursion invariant broken: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A graph together with the cyclic order of its outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OuterplaneGraph {
    graph: Graph,
    outer: Vec<VertexId>,
    pos: Vec<usize>,
}

impl OuterplaneGraph {
    /// Checks that `outer` lists every vertex once and that no two chords
    /// cross. Consecutive outer vertices need not be adjacent yet;
    /// [`near_triangulate`] adds the missing cycle edges.
    pub fn new(graph: Graph, outer: Vec<VertexId>) -> Result<Self, OuterplanarError> {
        let n = graph.vertex_count();
        if outer.len() != n {
            return Err(OuterplanarError::BadCycle);
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in outer.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(OuterplanarError::BadCycle);
            }
            pos[v] = i;
        }
        let og = OuterplaneGraph { graph, outer, pos };
        og.faces()?;
        Ok(og)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn outer_cycle(&self) -> &[VertexId] {
        &self.outer
    }

    /// Whether `a` and `b` are consecutive on the outer cycle.
    pub fn is_outer_pair(&self, a: VertexId, b: VertexId) -> bool {
        let n = self.outer.len();
        if n < 2 || a >= n || b >= n || a == b {
            return false;
        }
        let d = (self.pos[a] + n - self.pos[b]) % n;
        d == 1 || d == n - 1
    }

    /// Edges joining non-consecutive outer vertices.
    pub fn chords(&self) -> Vec<(VertexId, VertexId)> {
        self.graph
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| !self.is_outer_pair(a, b))
            .collect()
    }

    /// Interior faces as vertex lists in outer-cycle order, found by
    /// splitting the outer polygon along chords.
    pub fn faces(&self) -> Result<Vec<Vec<VertexId>>, OuterplanarError> {
        let n = self.outer.len();
        if n < 3 {
            return Ok(Vec::new());
        }
        let chords = self.chords();
        let mut used = 0usize;
        let mut faces = Vec::new();
        let mut stack = vec![self.outer.clone()];
        while let Some(poly) = stack.pop() {
            let index: HashMap<VertexId, usize> = poly.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let m = poly.len();
            let mut split = None;
            'find: for (i, &a) in poly.iter().enumerate() {
                for &b in self.graph.neighbors(a) {
                    if let Some(&j) = index.get(&b) {
                        if j > i + 1 && !(i == 0 && j == m - 1) {
                            split = Some((i, j));
                            break 'find;
                        }
                    }
                }
            }
            match split {
                Some((i, j)) => {
                    used += 1;
                    stack.push(poly[i..=j].to_vec());
                    let mut other = poly[j..].to_vec();
                    other.extend_from_slice(&poly[..=i]);
                    stack.push(other);
                }
                None => faces.push(poly),
            }
        }
        if used != chords.len() {
            // some chord never lay inside a single face: it crosses another
            let inside: BTreeSet<(VertexId, VertexId)> = faces
                .iter()
                .flat_map(|f| {
                    let k = f.len();
                    (0..k).map(move |i| {
                        let (a, b) = (f[i], f[(i + 1) % k]);
                        (a.min(b), a.max(b))
                    })
                })
                .collect();
            let bad = chords.iter().find(|c| !inside.contains(c)).copied().unwrap_or(chords[0]);
            return Err(OuterplanarError::Crossing(bad.0, bad.1));
        }
        faces.sort();
        Ok(faces)
    }

    /// Every outer pair is an edge and every interior face is a triangle.
    pub fn is_near_triangulation(&self) -> bool {
        let n = self.outer.len();
        n >= 3
            && (0..n).all(|i| self.graph.has_edge(self.outer[i], self.outer[(i + 1) % n]))
            && self.faces().is_ok_and(|f| f.iter().all(|face| face.len() == 3))
    }
}

/// Adds missing outer-cycle edges and fans every interior face from its
/// lowest-id vertex. New edges carry empty matchings, so colorings and
/// defects transfer unchanged between input and output.
pub fn near_triangulate(
    g: &OuterplaneGraph,
    c: &Cover,
) -> Result<(OuterplaneGraph, Cover), OuterplanarError> {
    if c.graph().edges() != g.graph().edges() || c.vertex_count() != g.graph().vertex_count() {
        return Err(OuterplanarError::GraphMismatch);
    }
    let n = g.outer.len();
    let mut extra = Vec::new();
    if n >= 3 {
        for i in 0..n {
            let (a, b) = (g.outer[i], g.outer[(i + 1) % n]);
            if !g.graph.has_edge(a, b) {
                extra.push((a, b));
            }
        }
        for face in g.faces()? {
            let k = face.len();
            let apex_at = (0..k).min_by_key(|&i| face[i]).unwrap();
            let apex = face[apex_at];
            for step in 2..k - 1 {
                let w = face[(apex_at + step) % k];
                extra.push((apex.min(w), apex.max(w)));
            }
        }
    }
    let graph = g.graph.with_extra_edges(&extra)?;
    let cover = c.with_extra_edges(&extra)?;
    let og = OuterplaneGraph::new(graph, g.outer.clone())?;
    Ok((og, cover))
}

/// A contiguous arc of the outer cycle, from `first` to `last` stepping in
/// direction `dir`.
#[derive(Debug, Clone, Copy)]
struct Arc {
    first: usize,
    last: usize,
    forward: bool,
}

impl Arc {
    fn offset(&self, n: usize, p: usize) -> usize {
        if self.forward {
            (p + n - self.first) % n
        } else {
            (self.first + n - p) % n
        }
    }

    fn len(&self, n: usize) -> usize {
        self.offset(n, self.last) + 1
    }

    fn at(&self, n: usize, i: usize) -> usize {
        if self.forward {
            (self.first + i) % n
        } else {
            (self.first + n - i % n) % n
        }
    }
}

/// Lowest color of `w` not matched to `(v, cv)`, preferring one also free of
/// `(v2, cv2)` when given.
fn avoid(cover: &Cover, w: VertexId, v: VertexId, cv: usize, second: Option<(VertexId, usize)>) -> Option<usize> {
    let free = |i: usize, (x, cx): (VertexId, usize)| !cover.conflicts((w, i), (x, cx));
    let options: Vec<usize> = (0..cover.list_size(w)).filter(|&i| free(i, (v, cv))).collect();
    if let Some(s) = second {
        if let Some(&i) = options.iter().find(|&&i| free(i, s)) {
            return Some(i);
        }
    }
    options.first().copied()
}

/// Extends the pin of the outer edge `uv` to a 3-defective coloring of a
/// near triangulation with `def(u) <= 1, def(v) <= 2` when the pinned
/// colors conflict and `def(u) = 0, def(v) <= 1` otherwise.
pub fn color_near_triangulation(
    g: &OuterplaneGraph,
    cover: &Cover,
    u: VertexId,
    v: VertexId,
    pin: (usize, usize),
) -> Result<Coloring, OuterplanarError> {
    let n = g.outer.len();
    if cover.vertex_count() != n || cover.graph().edges() != g.graph.edges() {
        return Err(OuterplanarError::GraphMismatch);
    }
    if !g.is_outer_pair(u, v) || !g.graph.has_edge(u, v) {
        return Err(OuterplanarError::NotOuterEdge(u, v));
    }
    for w in g.graph.vertices() {
        if cover.list_size(w) < 2 {
            return Err(OuterplanarError::ListTooShort {
                vertex: w,
                size: cover.list_size(w),
            });
        }
    }
    if !g.is_near_triangulation() {
        let faces = g.faces()?;
        let bad = faces.into_iter().find(|f| f.len() != 3).unwrap_or_default();
        return Err(OuterplanarError::NotTriangulated(bad));
    }
    let mut phi = Coloring::from_pins(n, &[(u, pin.0), (v, pin.1)]);
    phi.check_in_lists(cover)?;

    // The arc runs from u away from v and ends at v.
    let forward = g.outer[(g.pos[u] + 1) % n] != v;
    let mut stack = vec![Arc {
        first: g.pos[u],
        last: g.pos[v],
        forward,
    }];
    while let Some(arc) = stack.pop() {
        let m = arc.len(n);
        if m <= 2 {
            continue;
        }
        let vert = |i: usize| g.outer[arc.at(n, i)];
        let (au, av) = (vert(0), vert(m - 1));
        let cu = phi.get(au).expect("arc endpoints are colored");
        let cv = phi.get(av).expect("arc endpoints are colored");
        if m == 3 {
            let x = vert(1);
            let c = avoid(cover, x, au, cu, Some((av, cv)))
                .ok_or_else(|| OuterplanarError::Invariant(format!("no color of {x} avoids {au}")))?;
            phi.set(x, c);
            continue;
        }
        // Largest arc index of a neighbor of u strictly inside the arc.
        let far = g
            .graph
            .neighbors(au)
            .iter()
            .map(|&w| arc.offset(n, g.pos[w]))
            .filter(|&o| o >= 1 && o <= m - 2)
            .max()
            .ok_or_else(|| OuterplanarError::Invariant(format!("{au} has no neighbor in its arc")))?;
        if far == 1 {
            // u has only x1 and v in this polygon: color x1 off u, recurse
            // on the polygon without u with v leading.
            let x = vert(1);
            let c = avoid(cover, x, au, cu, None)
                .ok_or_else(|| OuterplanarError::Invariant(format!("no color of {x} avoids {au}")))?;
            phi.set(x, c);
            if !g.graph.has_edge(x, av) {
                return Err(OuterplanarError::Invariant(format!("{x} and {av} are not adjacent")));
            }
            stack.push(Arc {
                first: g.pos[av],
                last: g.pos[x],
                forward: !arc.forward,
            });
        } else {
            let z = vert(far);
            if !g.graph.has_edge(av, z) {
                return Err(OuterplanarError::Invariant(format!("{av} is not adjacent to {z}")));
            }
            let c = avoid(cover, z, au, cu, None)
                .ok_or_else(|| OuterplanarError::Invariant(format!("no color of {z} avoids {au}")))?;
            phi.set(z, c);
            stack.push(Arc {
                first: g.pos[au],
                last: g.pos[z],
                forward: arc.forward,
            });
            stack.push(Arc {
                first: g.pos[av],
                last: g.pos[z],
                forward: !arc.forward,
            });
        }
    }
    debug_assert!(phi.is_total());
    Ok(phi)
}

/// Outer edge used by [`color_outerplanar`]: the lexicographically least
/// `(min, max)` pair of consecutive outer vertices.
pub fn lowest_outer_edge(g: &OuterplaneGraph) -> Option<(VertexId, VertexId)> {
    let n = g.outer.len();
    (0..n)
        .filter(|_| n >= 2)
        .map(|i| {
            let (a, b) = (g.outer[i], g.outer[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
        .min()
}

/// A 3-defective coloring of any outerplane graph under a cover with lists
/// of at least two colors.
pub fn color_outerplanar(g: &OuterplaneGraph, cover: &Cover) -> Result<Coloring, OuterplanarError> {
    let n = g.graph.vertex_count();
    for w in g.graph.vertices() {
        if cover.list_size(w) < 2 {
            return Err(OuterplanarError::ListTooShort {
                vertex: w,
                size: cover.list_size(w),
            });
        }
    }
    if n < 3 {
        let mut phi = Coloring::empty(n);
        if n >= 1 {
            phi.set(0, 0);
        }
        if n == 2 {
            let c = avoid(cover, 1, 0, 0, None).unwrap_or(0);
            phi.set(1, c);
        }
        return Ok(phi);
    }
    let (tg, tc) = near_triangulate(g, cover)?;
    let (u, v) = lowest_outer_edge(&tg).expect("at least three outer vertices");
    let phi = color_near_triangulation(&tg, &tc, u, v, (0, 0))?;
    debug_assert!(defects(cover, &phi).iter().all(|&d| d <= 3));
    Ok(phi)
}

/// Whether `phi` meets the endpoint bounds for the pinned outer edge `uv`.
pub fn endpoint_contract_holds(cover: &Cover, phi: &Coloring, u: VertexId, v: VertexId) -> bool {
    let d = defects(cover, phi);
    let (Some(cu), Some(cv)) = (phi.get(u), phi.get(v)) else {
        return false;
    };
    let within = d.iter().all(|&x| x <= 3);
    if cover.conflicts((u, cu), (v, cv)) {
        within && d[u] <= 1 && d[v] <= 2
    } else {
        within && d[u] == 0 && d[v] <= 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::max_defect;

    fn polygon(n: usize) -> OuterplaneGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        OuterplaneGraph::new(Graph::from_edges(n, &edges).unwrap(), (0..n).collect()).unwrap()
    }

    #[test]
    fn triangle_is_unchanged_and_square_gains_one_chord() {
        let t = polygon(3);
        let (t2, _) = near_triangulate(&t, &Cover::identity(t.graph().clone(), 2)).unwrap();
        assert_eq!(t2.graph().edges(), t.graph().edges());
        let s = polygon(4);
        let (s2, c2) = near_triangulate(&s, &Cover::identity(s.graph().clone(), 2)).unwrap();
        assert_eq!(s2.graph().edge_count(), 5);
        assert!(s2.graph().has_edge(0, 2));
        assert!(c2.matching(0, 2).is_empty());
        assert!(s2.is_near_triangulation());
    }

    #[test]
    fn crossing_chords_are_rejected() {
        let mut edges: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
        edges.push((0, 2));
        edges.push((1, 3));
        let g = Graph::from_edges(4, &edges).unwrap();
        assert!(matches!(
            OuterplaneGraph::new(g, vec![0, 1, 2, 3]),
            Err(OuterplanarError::Crossing(..))
        ));
    }

    #[test]
    fn triangle_with_non_conflicting_pins() {
        let t = polygon(3);
        let c = Cover::identity(t.graph().clone(), 2);
        let phi = color_near_triangulation(&t, &c, 0, 1, (0, 1)).unwrap();
        let d = defects(&c, &phi);
        assert_eq!(d[0], 0);
        assert!(d[1] <= 1);
        assert!(endpoint_contract_holds(&c, &phi, 0, 1));
    }

    #[test]
    fn non_outer_edge_is_rejected() {
        let s = polygon(4);
        let (s2, c2) = near_triangulate(&s, &Cover::identity(s.graph().clone(), 2)).unwrap();
        assert!(matches!(
            color_near_triangulation(&s2, &c2, 0, 2, (0, 0)),
            Err(OuterplanarError::NotOuterEdge(0, 2))
        ));
    }

    #[test]
    fn tiny_graphs() {
        let one = OuterplaneGraph::new(Graph::from_edges(1, &[]).unwrap(), vec![0]).unwrap();
        let c = Cover::identity(one.graph().clone(), 2);
        assert_eq!(color_outerplanar(&one, &c).unwrap(), Coloring::from_total(&[0]));
        let two = OuterplaneGraph::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), vec![0, 1]).unwrap();
        let c = Cover::identity(two.graph().clone(), 2);
        let phi = color_outerplanar(&two, &c).unwrap();
        assert_eq!(max_defect(&c, &phi), 0);
    }

    #[test]
    fn path_gets_cycle_edges() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let og = OuterplaneGraph::new(g, vec![0, 1, 2, 3, 4]).unwrap();
        let c = Cover::identity(og.graph().clone(), 2);
        let phi = color_outerplanar(&og, &c).unwrap();
        assert!(max_defect(&c, &phi) <= 3);
    }
}
