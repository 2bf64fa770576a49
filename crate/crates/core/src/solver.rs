//! Exact engines: defect-capped backtracking, a brute-force enumeration
//! oracle, greedy coloring along a degeneracy order, and the per-copy
//! contribution sets plus hub DP used for multi-copy gadgets.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use thiserror::Error;

use crate::cover::{defects, Cover, CoverError, Coloring};
use crate::graph::{DegeneracyOrder, VertexId};

/// Default node budget for searches and enumerations.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_NODE_BUDGET`].
pub const NODE_BUDGET_ENV: &str = "DCC_NODE_BUDGET";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("greedy coloring got stuck at vertex {0}")]
    GreedyStuck(VertexId),
}

/// Node budget from the environment, or the default.
pub fn node_budget() -> u64 {
    std::env::var(NODE_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// A global defect cap with optional per-vertex overrides.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DefectConstraint {
    pub global_cap: usize,
    pub per_vertex: BTreeMap<VertexId, usize>,
}

impl DefectConstraint {
    pub fn uniform(d: usize) -> Self {
        DefectConstraint {
            global_cap: d,
            per_vertex: BTreeMap::new(),
        }
    }

    pub fn with_cap(mut self, v: VertexId, cap: usize) -> Self {
        self.per_vertex.insert(v, cap);
        self
    }

    pub fn cap(&self, v: VertexId) -> usize {
        self.per_vertex.get(&v).copied().unwrap_or(self.global_cap)
    }

    /// Every defect is within its cap.
    pub fn admits(&self, defects: &[usize]) -> bool {
        defects.iter().enumerate().all(|(v, &d)| d <= self.cap(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// A total coloring meeting every cap.
    Coloring { coloring: Coloring, stats: SearchStats },
    /// The search space was exhausted.
    Infeasible { stats: SearchStats },
}

impl Certificate {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Certificate::Coloring { coloring, .. } => Some(coloring),
            Certificate::Infeasible { .. } => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Certificate::Coloring { .. })
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Certificate::Coloring { stats, .. } | Certificate::Infeasible { stats } => *stats,
        }
    }

    /// Recomputes defects from scratch. Infeasibility certificates carry no
    /// witness and always pass.
    pub fn verify(&self, cover: &Cover, k: &DefectConstraint, pin: &Coloring) -> bool {
        match self {
            Certificate::Infeasible { .. } => true,
            Certificate::Coloring { coloring, .. } => {
                coloring.is_total()
                    && coloring.check_in_lists(cover).is_ok()
                    && pin.assigned().all(|(v, c)| coloring.get(v) == Some(c))
                    && k.admits(&defects(cover, coloring))
            }
        }
    }
}

/// Incremental search state shared by the backtracking engines.
struct State<'a> {
    cover: &'a Cover,
    caps: Vec<usize>,
    color: Vec<Option<usize>>,
    def: Vec<usize>,
}

impl<'a> State<'a> {
    fn new(cover: &'a Cover, caps: Vec<usize>) -> Self {
        let n = cover.vertex_count();
        State {
            cover,
            caps,
            color: vec![None; n],
            def: vec![0; n],
        }
    }

    /// Whether `(v, i)` can be added without pushing any defect past its cap.
    fn fits(&self, v: VertexId, i: usize) -> bool {
        let mut own = 0;
        for (k, &w) in self.cover.graph().neighbors(v).iter().enumerate() {
            if let Some(cw) = self.color[w] {
                if self.cover.partner_at(v, k, i) == Some(cw) {
                    own += 1;
                    if own > self.caps[v] || self.def[w] + 1 > self.caps[w] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, v: VertexId, i: usize) {
        self.color[v] = Some(i);
        for (k, &w) in self.cover.graph().neighbors(v).iter().enumerate() {
            if let Some(cw) = self.color[w] {
                if self.cover.partner_at(v, k, i) == Some(cw) {
                    self.def[v] += 1;
                    self.def[w] += 1;
                }
            }
        }
    }

    fn unassign(&mut self, v: VertexId) {
        let i = self.color[v].take().expect("unassign of an uncolored vertex");
        for (k, &w) in self.cover.graph().neighbors(v).iter().enumerate() {
            if let Some(cw) = self.color[w] {
                if self.cover.partner_at(v, k, i) == Some(cw) {
                    self.def[v] -= 1;
                    self.def[w] -= 1;
                }
            }
        }
    }

    /// Places the pins one by one; false if they already break a cap.
    fn place_pins(&mut self, pin: &Coloring) -> bool {
        let mut ok = true;
        for (v, c) in pin.assigned() {
            if !self.fits(v, c) {
                ok = false;
            }
            self.assign(v, c);
        }
        ok && (0..self.def.len()).all(|v| self.def[v] <= self.caps[v])
    }

    fn snapshot(&self) -> Coloring {
        Coloring::from_total(&self.color.iter().map(|c| c.unwrap()).collect::<Vec<_>>())
    }
}

/// Deterministic backtracking for a total coloring extending `pin` with
/// every defect within its cap.
pub fn find_coloring(
    cover: &Cover,
    k: &DefectConstraint,
    pin: &Coloring,
) -> Result<Certificate, SolverError> {
    find_coloring_with_budget(cover, k, pin, node_budget())
}

pub fn find_coloring_with_budget(
    cover: &Cover,
    k: &DefectConstraint,
    pin: &Coloring,
    budget: u64,
) -> Result<Certificate, SolverError> {
    pin.check_in_lists(cover)?;
    let start = Instant::now();
    let caps = cover.graph().vertices().map(|v| k.cap(v)).collect();
    let mut state = State::new(cover, caps);
    let mut nodes = 0u64;
    let found = state.place_pins(pin) && backtrack(&mut state, &mut nodes, budget)?;
    let stats = SearchStats {
        nodes,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok(if found {
        Certificate::Coloring {
            coloring: state.snapshot(),
            stats,
        }
    } else {
        Certificate::Infeasible { stats }
    })
}

/// Fail-first: branch on the uncolored vertex with the fewest colors that
/// still fit (ties to the smallest id), trying colors in list order.
fn backtrack(state: &mut State<'_>, nodes: &mut u64, budget: u64) -> Result<bool, SolverError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(SolverError::BudgetExceeded(budget));
    }
    let n = state.color.len();
    let mut best: Option<(usize, VertexId)> = None;
    for v in 0..n {
        if state.color[v].is_some() {
            continue;
        }
        let options = (0..state.cover.list_size(v))
            .filter(|&i| state.fits(v, i))
            .count();
        if best.is_none_or(|(b, _)| options < b) {
            best = Some((options, v));
            if options == 0 {
                return Ok(false);
            }
        }
    }
    let Some((_, v)) = best else {
        return Ok(true);
    };
    for i in 0..state.cover.list_size(v) {
        if state.fits(v, i) {
            state.assign(v, i);
            if backtrack(state, nodes, budget)? {
                return Ok(true);
            }
            state.unassign(v);
        }
    }
    Ok(false)
}

/// Every total coloring meeting the caps, in lexicographic order (vertex 0
/// most significant). Plain odometer with defects recomputed from scratch
/// at each leaf; meant as an oracle for small instances.
pub fn enumerate_colorings(cover: &Cover, k: &DefectConstraint) -> Result<Vec<Coloring>, SolverError> {
    enumerate_colorings_with_budget(cover, k, node_budget())
}

pub fn enumerate_colorings_with_budget(
    cover: &Cover,
    k: &DefectConstraint,
    budget: u64,
) -> Result<Vec<Coloring>, SolverError> {
    let sizes = cover.list_sizes();
    let mut total: u64 = 1;
    for &s in sizes {
        total = total.saturating_mul(s as u64);
        if total > budget {
            return Err(SolverError::BudgetExceeded(budget));
        }
    }
    if total == 0 {
        return Ok(Vec::new());
    }
    let n = sizes.len();
    let mut digits = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let phi = Coloring::from_total(&digits);
        if k.admits(&defects(cover, &phi)) {
            out.push(phi);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < sizes[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Proper coloring along the reverse of a degeneracy order: each vertex
/// has at most `degeneracy` colored neighbors when its turn comes.
pub fn greedy_color(cover: &Cover, order: &DegeneracyOrder) -> Result<Coloring, SolverError> {
    let g = cover.graph();
    for v in g.vertices() {
        if cover.list_size(v) < order.degeneracy + 1 {
            return Err(CoverError::ListTooShort {
                vertex: v,
                size: cover.list_size(v),
                needed: order.degeneracy + 1,
            }
            .into());
        }
    }
    let mut phi = Coloring::empty(g.vertex_count());
    for &v in order.order.iter().rev() {
        let blocked: Vec<usize> = g
            .neighbors(v)
            .iter()
            .enumerate()
            .filter_map(|(k, &w)| {
                let cw = phi.get(w)?;
                (0..cover.list_size(v)).find(|&i| cover.partner_at(v, k, i) == Some(cw))
            })
            .collect();
        let c = (0..cover.list_size(v))
            .find(|i| !blocked.contains(i))
            .ok_or(SolverError::GreedyStuck(v))?;
        phi.set(v, c);
    }
    Ok(phi)
}

/// Achievable `(defect of hub1, defect of hub2)` pairs over all colorings
/// of one gadget copy with the hubs pinned.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ContributionSet {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl ContributionSet {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }
}

/// Enumerates every coloring of the non-hub vertices of `copy` with all
/// their defects at most `d` (conflicts with the pinned hubs included) and
/// records the hub defects, which are counted but not capped.
pub fn contribution_set(
    copy: &Cover,
    hub1: VertexId,
    hub2: VertexId,
    hub_colors: (usize, usize),
    d: usize,
) -> Result<ContributionSet, SolverError> {
    let pin = Coloring::from_pins(copy.vertex_count(), &[(hub1, hub_colors.0), (hub2, hub_colors.1)]);
    pin.check_in_lists(copy)?;
    let caps: Vec<usize> = copy
        .graph()
        .vertices()
        .map(|v| if v == hub1 || v == hub2 { usize::MAX / 2 } else { d })
        .collect();
    let mut state = State::new(copy, caps);
    let mut set = ContributionSet::default();
    if !state.place_pins(&pin) {
        return Ok(set);
    }
    // Vertices next to the hubs first, then by id.
    let g = copy.graph();
    let mut order: Vec<VertexId> = g.vertices().filter(|&v| v != hub1 && v != hub2).collect();
    order.sort_by_key(|&v| {
        let near = g.has_edge(v, hub1) as usize + g.has_edge(v, hub2) as usize;
        (std::cmp::Reverse(near), v)
    });
    let budget = node_budget();
    let mut nodes = 0u64;
    enumerate_leaves(&mut state, &order, 0, &mut nodes, budget, &mut |s| {
        set.pairs.insert((s.def[hub1], s.def[hub2]));
    })?;
    Ok(set)
}

fn enumerate_leaves(
    state: &mut State<'_>,
    order: &[VertexId],
    depth: usize,
    nodes: &mut u64,
    budget: u64,
    visit: &mut dyn FnMut(&State<'_>),
) -> Result<(), SolverError> {
    *nodes += 1;
    if *nodes > budget {
        return Err(SolverError::BudgetExceeded(budget));
    }
    let Some(&v) = order.get(depth) else {
        visit(state);
        return Ok(());
    };
    for i in 0..state.cover.list_size(v) {
        if state.fits(v, i) {
            state.assign(v, i);
            enumerate_leaves(state, order, depth + 1, nodes, budget, visit)?;
            state.unassign(v);
        }
    }
    Ok(())
}

/// Result of the hub DP: a choice of one pair per copy within the caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HubSelection {
    pub feasible: bool,
    /// `selection[i]` is the pair taken from copy `i` when feasible.
    pub selection: Option<Vec<(usize, usize)>>,
}

/// Whether one pair can be picked from each set with coordinate sums
/// within `(cap1, cap2)`. Dynamic program over reachable partial sums.
pub fn hub_feasible(copies: &[ContributionSet], cap1: usize, cap2: usize) -> HubSelection {
    // layers[i] maps a reachable sum after i copies to (previous sum, pair).
    let mut layers: Vec<BTreeMap<(usize, usize), ((usize, usize), (usize, usize))>> =
        Vec::with_capacity(copies.len() + 1);
    let mut first = BTreeMap::new();
    first.insert((0, 0), ((0, 0), (0, 0)));
    layers.push(first);
    for set in copies {
        let prev = layers.last().unwrap();
        let mut next = BTreeMap::new();
        for &(s1, s2) in prev.keys() {
            for &(a, b) in &set.pairs {
                let t = (s1 + a, s2 + b);
                if t.0 <= cap1 && t.1 <= cap2 {
                    next.entry(t).or_insert(((s1, s2), (a, b)));
                }
            }
        }
        if next.is_empty() {
            return HubSelection {
                feasible: false,
                selection: None,
            };
        }
        layers.push(next);
    }
    let mut state = *layers.last().unwrap().keys().next().unwrap();
    let mut selection = Vec::with_capacity(copies.len());
    for layer in layers.iter().skip(1).rev() {
        let (prev, pair) = layer[&state];
        selection.push(pair);
        state = prev;
    }
    selection.reverse();
    HubSelection {
        feasible: true,
        selection: Some(selection),
    }
}
