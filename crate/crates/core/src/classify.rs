//! Twisted/wedged detectors on covers of the diamond `R`, the good/bad
//! classification of residual covers of `T - {u, v}`, the bad-pair census
//! of a 3-fold cover of `T`, and the light-pair argument for `T(k)`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::cover::{permutations, Color, Coloring, Cover, CoverError};
use crate::gadgets::{self, t};
use crate::graph::VertexId;
use crate::solver::{self, DefectConstraint, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("base graph is not K4 minus an edge")]
    NotDiamond,
    #[error("list sizes {got:?} do not fit the {wanted} profile")]
    Profile { wanted: &'static str, got: Vec<usize> },
    #[error("cover is not on the residual graph T - {{u, v}}")]
    NotResidual,
    #[error("cover is not a 3-fold cover of T")]
    NotTCover,
    #[error("cover is not a cover of T(k)")]
    NotTkCover,
    #[error("no hub pair is bad for at most two copies; counts {counts:?}")]
    NoLightPair { counts: Vec<Vec<usize>> },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Role indices into an [`RLabeling`]; `a` and `c` are the non-adjacent pair.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// Vertices of a cover playing the roles `a, b, c, d`, and for each role
/// the local indices standing for pattern colors 1, 2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RLabeling {
    pub roles: [VertexId; 4],
    pub colors: [Vec<usize>; 4],
}

impl RLabeling {
    fn color(&self, role: usize, p: usize) -> Color {
        (self.roles[role], self.colors[role][p])
    }

    /// Maps vertices and colors through a subcover's maps.
    fn lift(&self, vertex_map: &[VertexId], color_map: &[Vec<usize>]) -> RLabeling {
        let mut out = self.clone();
        for r in 0..4 {
            let v = self.roles[r];
            out.roles[r] = vertex_map[v];
            out.colors[r] = self.colors[r].iter().map(|&c| color_map[v][c]).collect();
        }
        out
    }
}

/// A cover-edge pattern between role colors, 0-based pattern colors.
struct Pattern {
    name: &'static str,
    /// Required sizes of (a, b, c, d).
    sizes: [usize; 4],
    required: &'static [(usize, usize, usize, usize)],
    optional: &'static [(usize, usize, usize, usize)],
    min_optional: usize,
}

const TWISTED: Pattern = Pattern {
    name: "twisted 1-2-1-2",
    sizes: [1, 2, 1, 2],
    // a1 b1 d2 c1 b2 d1 a1
    required: &[
        (A, 0, B, 0),
        (B, 0, D, 1),
        (D, 1, C, 0),
        (C, 0, B, 1),
        (B, 1, D, 0),
        (D, 0, A, 0),
    ],
    optional: &[],
    min_optional: 0,
};

const WEDGED_1212: Pattern = Pattern {
    name: "wedged 1-2-1-2",
    sizes: [1, 2, 1, 2],
    required: &[(A, 0, B, 0), (A, 0, D, 0)],
    optional: &[(B, 1, D, 1), (C, 0, B, 1), (C, 0, D, 1)],
    min_optional: 2,
};

const WEDGED_1222: Pattern = Pattern {
    name: "wedged 1-2-2-2",
    sizes: [1, 2, 2, 2],
    required: &[
        (A, 0, B, 0),
        (A, 0, D, 0),
        (C, 0, B, 1),
        (B, 1, D, 1),
        (D, 1, C, 1),
    ],
    optional: &[],
    min_optional: 0,
};

impl Pattern {
    fn holds(&self, cover: &Cover, lab: &RLabeling) -> bool {
        let hit = |&(r1, p1, r2, p2): &(usize, usize, usize, usize)| {
            cover.conflicts(lab.color(r1, p1), lab.color(r2, p2))
        };
        self.required.iter().all(hit)
            && self.optional.iter().filter(|e| hit(e)).count() >= self.min_optional
    }

    /// Searches every role assignment and color ordering consistent with
    /// the list sizes.
    fn search(&self, rc: &Cover) -> Result<Option<RLabeling>, ClassifyError> {
        let (ac, bd) = diamond_pairs(rc)?;
        let sizes = rc.list_sizes();
        let mut assignments = Vec::new();
        for (a, c) in [(ac[0], ac[1]), (ac[1], ac[0])] {
            for (b, d) in [(bd[0], bd[1]), (bd[1], bd[0])] {
                let roles = [a, b, c, d];
                if (0..4).all(|r| sizes[roles[r]] == self.sizes[r]) {
                    assignments.push(roles);
                }
            }
        }
        if assignments.is_empty() {
            return Err(ClassifyError::Profile {
                wanted: self.name,
                got: sizes.to_vec(),
            });
        }
        for roles in assignments {
            let perms: Vec<Vec<Vec<usize>>> =
                roles.iter().map(|&v| permutations(sizes[v])).collect();
            for pa in &perms[A] {
                for pb in &perms[B] {
                    for pc in &perms[C] {
                        for pd in &perms[D] {
                            let lab = RLabeling {
                                roles,
                                colors: [pa.clone(), pb.clone(), pc.clone(), pd.clone()],
                            };
                            if self.holds(rc, &lab) {
                                return Ok(Some(lab));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

/// The non-adjacent pair and the adjacent pair of a diamond.
fn diamond_pairs(rc: &Cover) -> Result<([VertexId; 2], [VertexId; 2]), ClassifyError> {
    let g = rc.graph();
    if g.vertex_count() != 4 || g.edge_count() != 5 {
        return Err(ClassifyError::NotDiamond);
    }
    let missing = (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
        .find(|&(a, b)| !g.has_edge(a, b))
        .ok_or(ClassifyError::NotDiamond)?;
    let rest: Vec<VertexId> = (0..4).filter(|&v| v != missing.0 && v != missing.1).collect();
    Ok(([missing.0, missing.1], [rest[0], rest[1]]))
}

/// Twisted cover of `R` with list sizes (1, 2, 1, 2).
pub fn is_twisted(rc: &Cover) -> Result<Option<RLabeling>, ClassifyError> {
    TWISTED.search(rc)
}

/// Wedged cover of `R` with list sizes (1, 2, 1, 2).
pub fn is_wedged_1212(rc: &Cover) -> Result<Option<RLabeling>, ClassifyError> {
    WEDGED_1212.search(rc)
}

/// Wedged cover of `R` with list sizes (1, 2, 2, 2).
pub fn is_wedged_1222(rc: &Cover) -> Result<Option<RLabeling>, ClassifyError> {
    WEDGED_1222.search(rc)
}

/// Wedged in whichever sense fits the list sizes (`|L(c)|` 1 or 2).
pub fn is_wedged(rc: &Cover) -> Result<Option<RLabeling>, ClassifyError> {
    let (ac, _) = diamond_pairs(rc)?;
    if rc.list_size(ac[0]) + rc.list_size(ac[1]) == 2 {
        is_wedged_1212(rc)
    } else {
        is_wedged_1222(rc)
    }
}

/// Vertex ids of the residual graph `T - {u, v}` as produced by
/// [`Cover::subcover`] on a cover of `T` with both hubs colored.
pub mod residual {
    pub const X: usize = 0;
    pub const Z: usize = 1;
    pub const Y: usize = 2;
    pub const U1: usize = 3;
    pub const V1: usize = 4;
    pub const U2: usize = 5;
    pub const V2: usize = 6;
    /// First diamond, (a, b, c, d) = (x, u1, z, v1).
    pub const R1: [usize; 4] = [X, U1, Z, V1];
    /// Second diamond, (a, b, c, d) = (z, u2, y, v2).
    pub const R2: [usize; 4] = [Z, U2, Y, V2];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BadClause {
    One,
    TwoTwisted,
    TwoWedged,
    ThreeTwisted,
    ThreeWedged,
    Four,
    FiveTwisted,
    FiveWedged,
}

impl BadClause {
    pub fn pair_type(self) -> PairType {
        match self {
            BadClause::One | BadClause::ThreeTwisted | BadClause::ThreeWedged => PairType::TwoOne,
            BadClause::TwoTwisted
            | BadClause::TwoWedged
            | BadClause::FiveTwisted
            | BadClause::FiveWedged => PairType::OneOne,
            BadClause::Four => PairType::OneTwo,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BadClause::One => "1-bad",
            BadClause::TwoTwisted => "2-bad(i)",
            BadClause::TwoWedged => "2-bad(ii)",
            BadClause::ThreeTwisted => "3-bad(i)",
            BadClause::ThreeWedged => "3-bad(ii)",
            BadClause::Four => "4-bad",
            BadClause::FiveTwisted => "5-bad(i)",
            BadClause::FiveWedged => "5-bad(ii)",
        }
    }
}

impl fmt::Display for BadClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `ℓ(x)-ℓ(z)` signature of a bad pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairType {
    TwoOne,
    OneOne,
    OneTwo,
}

impl PairType {
    pub fn name(self) -> &'static str {
        match self {
            PairType::TwoOne => "2-1",
            PairType::OneOne => "1-1",
            PairType::OneTwo => "1-2",
        }
    }

    /// `ℓ(x) = 1`.
    pub fn x_is_one(self) -> bool {
        self != PairType::TwoOne
    }

    /// `ℓ(z) = 1`.
    pub fn z_is_one(self) -> bool {
        self != PairType::OneTwo
    }
}

impl fmt::Display for PairType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Detector witnesses in residual coordinates. For a 4-bad cover, `r1` and
/// `r2` belong to the first order listed in `z_orders`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadKind {
    pub clause: BadClause,
    pub r1: Option<RLabeling>,
    pub r2: Option<RLabeling>,
    /// 4-bad only: every ordered pair `(z1, z2)` of residual z-colors with
    /// R1 minus `z2` and R2 minus `z1` both twisted.
    pub z_orders: Vec<(usize, usize)>,
}

impl BadKind {
    pub fn pair_type(&self) -> PairType {
        self.clause.pair_type()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Good,
    Bad(BadKind),
}

impl Classification {
    pub fn is_bad(&self) -> bool {
        matches!(self, Classification::Bad(_))
    }

    pub fn bad_kind(&self) -> Option<&BadKind> {
        match self {
            Classification::Good => None,
            Classification::Bad(k) => Some(k),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::Good => "good",
            Classification::Bad(k) => k.clause.name(),
        }
    }
}

fn check_residual(rc: &Cover) -> Result<(), ClassifyError> {
    let expected = gadgets::build_t5().induced(&t::INTERNAL);
    if rc.graph().edges() != expected.edges() {
        return Err(ClassifyError::NotResidual);
    }
    let s = rc.list_sizes();
    use residual::*;
    let ok = [U1, V1, U2, V2].iter().all(|&w| s[w] == 2)
        && [X, Z, Y].iter().all(|&w| (1..=2).contains(&s[w]));
    if ok {
        Ok(())
    } else {
        Err(ClassifyError::Profile {
            wanted: "residual (x, z, y in 1..=2; u1, v1, u2, v2 = 2)",
            got: s.to_vec(),
        })
    }
}

/// Runs a detector on the diamond `half` of `rc`, optionally keeping only
/// the listed z-colors, and lifts the witness to residual coordinates.
fn detect_on(
    rc: &Cover,
    half: [VertexId; 4],
    keep_z: Option<usize>,
    detector: fn(&Cover) -> Result<Option<RLabeling>, ClassifyError>,
) -> Result<Option<RLabeling>, ClassifyError> {
    let mut keep: Vec<Vec<usize>> = rc.graph().vertices().map(|v| (0..rc.list_size(v)).collect()).collect();
    if let Some(zc) = keep_z {
        keep[residual::Z] = vec![zc];
    }
    let restricted = rc.restrict_lists(&keep);
    let sub = restricted.cover.induced(&half);
    let found = detector(&sub.cover)?;
    Ok(found.map(|lab| {
        let lab = lab.lift(&sub.vertex_map, &sub.color_map);
        lab.lift(&restricted.vertex_map, &restricted.color_map)
    }))
}

/// Good, or the first matching bad clause in numerical order.
pub fn classify_residual(rc: &Cover) -> Result<Classification, ClassifyError> {
    check_residual(rc)?;
    use residual::*;
    let (lx, lz, ly) = (rc.list_size(X), rc.list_size(Z), rc.list_size(Y));
    let bad = |clause, r1, r2| {
        Ok(Classification::Bad(BadKind {
            clause,
            r1,
            r2,
            z_orders: Vec::new(),
        }))
    };
    let wedged_pair = || -> Result<Option<(RLabeling, RLabeling)>, ClassifyError> {
        let Some(w1) = detect_on(rc, R1, None, is_wedged)? else {
            return Ok(None);
        };
        Ok(detect_on(rc, R2, None, is_wedged)?.map(|w2| (w1, w2)))
    };
    match (lx, lz, ly) {
        (2, 1, 2) => {
            if let Some((w1, w2)) = wedged_pair()? {
                return bad(BadClause::One, Some(w1), Some(w2));
            }
        }
        (1, 1, 2) => {
            if let Some(t1) = detect_on(rc, R1, None, is_twisted)? {
                return bad(BadClause::TwoTwisted, Some(t1), None);
            }
            if let Some((w1, w2)) = wedged_pair()? {
                return bad(BadClause::TwoWedged, Some(w1), Some(w2));
            }
        }
        (2, 1, 1) => {
            if let Some(t2) = detect_on(rc, R2, None, is_twisted)? {
                return bad(BadClause::ThreeTwisted, None, Some(t2));
            }
            if let Some((w1, w2)) = wedged_pair()? {
                return bad(BadClause::ThreeWedged, Some(w1), Some(w2));
            }
        }
        (1, 2, 1) => {
            let mut orders = Vec::new();
            let mut first = None;
            for (z1, z2) in [(0, 1), (1, 0)] {
                // R1 minus z2 keeps z1; R2 minus z1 keeps z2.
                let t1 = detect_on(rc, R1, Some(z1), is_twisted)?;
                let t2 = detect_on(rc, R2, Some(z2), is_twisted)?;
                if let (Some(t1), Some(t2)) = (t1, t2) {
                    orders.push((z1, z2));
                    first.get_or_insert((t1, t2));
                }
            }
            if let Some((t1, t2)) = first {
                return Ok(Classification::Bad(BadKind {
                    clause: BadClause::Four,
                    r1: Some(t1),
                    r2: Some(t2),
                    z_orders: orders,
                }));
            }
        }
        (1, 1, 1) => {
            if let Some(t1) = detect_on(rc, R1, None, is_twisted)? {
                return bad(BadClause::FiveTwisted, Some(t1), None);
            }
            if let Some(t2) = detect_on(rc, R2, None, is_twisted)? {
                return bad(BadClause::FiveTwisted, None, Some(t2));
            }
            if let Some((w1, w2)) = wedged_pair()? {
                return bad(BadClause::FiveWedged, Some(w1), Some(w2));
            }
        }
        _ => {}
    }
    Ok(Classification::Good)
}

/// Re-checks a bad witness against the residual cover it came from.
pub fn verify_bad_kind(rc: &Cover, kind: &BadKind) -> bool {
    let z_size = rc.list_size(residual::Z);
    let pattern_for = |lab: &RLabeling, twisted: bool| -> bool {
        let sizes: Vec<usize> = lab.colors.iter().map(Vec::len).collect();
        let pattern = if twisted {
            &TWISTED
        } else if sizes[C] == 1 {
            &WEDGED_1212
        } else {
            &WEDGED_1222
        };
        sizes == pattern.sizes && pattern.holds(rc, lab)
    };
    let in_half = |lab: &RLabeling, half: [VertexId; 4]| {
        let mut a = lab.roles;
        let mut b = half;
        a.sort_unstable();
        b.sort_unstable();
        a == b
    };
    let both = |twisted: bool| match (&kind.r1, &kind.r2) {
        (Some(a), Some(b)) => {
            in_half(a, residual::R1)
                && in_half(b, residual::R2)
                && pattern_for(a, twisted)
                && pattern_for(b, twisted)
        }
        _ => false,
    };
    match kind.clause {
        BadClause::One | BadClause::TwoWedged | BadClause::ThreeWedged | BadClause::FiveWedged => {
            both(false)
        }
        BadClause::TwoTwisted => kind
            .r1
            .as_ref()
            .is_some_and(|l| in_half(l, residual::R1) && pattern_for(l, true)),
        BadClause::ThreeTwisted => kind
            .r2
            .as_ref()
            .is_some_and(|l| in_half(l, residual::R2) && pattern_for(l, true)),
        BadClause::FiveTwisted => {
            kind.r1
                .as_ref()
                .is_some_and(|l| in_half(l, residual::R1) && pattern_for(l, true))
                || kind
                    .r2
                    .as_ref()
                    .is_some_and(|l| in_half(l, residual::R2) && pattern_for(l, true))
        }
        BadClause::Four => {
            let Some(&(z1, z2)) = kind.z_orders.first() else {
                return false;
            };
            z_size == 2
                && z1 != z2
                && both(true)
                && kind.r1.as_ref().is_some_and(|l| z_colors(l) == Some(vec![z1]))
                && kind.r2.as_ref().is_some_and(|l| z_colors(l) == Some(vec![z2]))
        }
    }
}

fn z_colors(lab: &RLabeling) -> Option<Vec<usize>> {
    let r = lab.roles.iter().position(|&r| r == residual::Z)?;
    Some(lab.colors[r].clone())
}

/// Census entry for one hub pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub classification: Classification,
    pub pair_type: Option<PairType>,
}

/// Classification of every hub pair `(alpha, beta)` (0-based local indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub entries: BTreeMap<(usize, usize), CensusEntry>,
}

impl Census {
    pub fn bad_pairs(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, e)| e.classification.is_bad())
            .map(|(&p, _)| p)
            .collect()
    }

    pub fn bad_count(&self) -> usize {
        self.bad_pairs().len()
    }

    fn type_of(&self, p: (usize, usize)) -> Option<PairType> {
        self.entries.get(&p).and_then(|e| e.pair_type)
    }

    /// Violations of the counting lemmas; empty when all hold.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let bad = self.bad_pairs();
        if bad.len() > 6 {
            out.push(format!("{} bad pairs, more than 6", bad.len()));
        }
        let n = 3;
        // Two bad pairs sharing a coordinate: not both 1-2, not both 2-1.
        for (i, &p) in bad.iter().enumerate() {
            for &q in &bad[i + 1..] {
                let shared = p.0 == q.0 || p.1 == q.1;
                let (tp, tq) = (self.type_of(p).unwrap(), self.type_of(q).unwrap());
                if shared && tp == tq && tp != PairType::OneOne {
                    out.push(format!("{p:?} and {q:?} share a coordinate and are both {tp}"));
                }
                if p.0 != q.0 && p.1 != q.1 && tp == PairType::OneTwo && tq == PairType::OneTwo {
                    out.push(format!("{p:?} and {q:?} are disjoint and both 1-2"));
                }
            }
        }
        // Three bad pairs on one line: not all 1-*, not all *-1.
        for fixed in 0..n {
            for row in [true, false] {
                let line: Vec<(usize, usize)> = (0..n)
                    .map(|o| if row { (fixed, o) } else { (o, fixed) })
                    .collect();
                let types: Option<Vec<PairType>> = line.iter().map(|&p| self.type_of(p)).collect();
                let Some(types) = types else { continue };
                if types.iter().all(|t| t.x_is_one()) {
                    out.push(format!("{line:?} are all of type 1-*"));
                }
                if types.iter().all(|t| t.z_is_one()) {
                    out.push(format!("{line:?} are all of type *-1"));
                }
            }
        }
        out
    }
}

/// Partial coloring of `T` with the hubs pinned to `(alpha, beta)`.
pub fn hub_pin(alpha: usize, beta: usize) -> Coloring {
    Coloring::from_pins(9, &[(t::U, alpha), (t::V, beta)])
}

fn check_t_cover(tc: &Cover) -> Result<(), ClassifyError> {
    if tc.graph().edges() != gadgets::build_t5().edges() || tc.list_sizes().iter().any(|&s| s != 3) {
        return Err(ClassifyError::NotTCover);
    }
    Ok(())
}

/// Classifies all nine hub pairs of a 3-fold cover of `T`.
pub fn bad_pair_census(tc: &Cover) -> Result<Census, ClassifyError> {
    check_t_cover(tc)?;
    let mut entries = BTreeMap::new();
    for alpha in 0..3 {
        for beta in 0..3 {
            let sub = tc.subcover(&hub_pin(alpha, beta))?;
            let classification = classify_residual(&sub.cover)?;
            let pair_type = classification.bad_kind().map(BadKind::pair_type);
            entries.insert(
                (alpha, beta),
                CensusEntry {
                    classification,
                    pair_type,
                },
            );
        }
    }
    Ok(Census { entries })
}

/// A 1-defective extension of the hub pin to `T` with the given hub caps,
/// or `None` if there is none.
pub fn hub_extension(
    tc: &Cover,
    alpha: usize,
    beta: usize,
    cap_u: usize,
    cap_v: usize,
) -> Result<Option<Coloring>, ClassifyError> {
    let k = DefectConstraint::uniform(1).with_cap(t::U, cap_u).with_cap(t::V, cap_v);
    let cert = solver::find_coloring(tc, &k, &hub_pin(alpha, beta))?;
    Ok(cert.coloring().cloned())
}

/// A hub pair bad for few copies of `T` in a cover of `T(k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightPair {
    pub pair: (usize, usize),
    /// Copies bad for `pair`, ascending.
    pub bad_copies: Vec<usize>,
    /// `counts[alpha][beta]`: number of copies bad for the pair.
    pub counts: Vec<Vec<usize>>,
    pub censuses: Vec<Census>,
}

fn copies_of(tkc: &Cover) -> Result<usize, ClassifyError> {
    let n = tkc.vertex_count();
    if n < 9 || (n - 2) % 7 != 0 {
        return Err(ClassifyError::NotTkCover);
    }
    let k = (n - 2) / 7;
    let expected = gadgets::build_t_k(k).map_err(|_| ClassifyError::NotTkCover)?;
    if tkc.graph().edges() != expected.edges() {
        return Err(ClassifyError::NotTkCover);
    }
    Ok(k)
}

/// Censuses every copy and returns the pair bad for the fewest copies
/// (first in lexicographic order on ties). Errors if that is more than two.
pub fn find_light_pair(tkc: &Cover) -> Result<LightPair, ClassifyError> {
    let k = copies_of(tkc)?;
    let censuses = (0..k)
        .map(|m| bad_pair_census(&gadgets::t_copy_cover(tkc, m)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut counts = vec![vec![0; 3]; 3];
    for c in &censuses {
        for (a, b) in c.bad_pairs() {
            counts[a][b] += 1;
        }
    }
    let pair = (0..3)
        .flat_map(|a| (0..3).map(move |b| (a, b)))
        .min_by_key(|&(a, b)| (counts[a][b], a, b))
        .unwrap();
    if counts[pair.0][pair.1] > 2 {
        return Err(ClassifyError::NoLightPair { counts });
    }
    let bad_copies = (0..k)
        .filter(|&m| censuses[m].entries[&pair].classification.is_bad())
        .collect();
    Ok(LightPair {
        pair,
        bad_copies,
        counts,
        censuses,
    })
}

/// Per-copy extensions of the light pair glued into a coloring of `T(k)`:
/// the first bad copy may give `u` one defect, the second may give `v`
/// one, good copies give neither hub a defect. `None` if some copy has no
/// such extension.
pub fn assemble_light_extension(tkc: &Cover, light: &LightPair) -> Result<Option<Coloring>, ClassifyError> {
    let k = copies_of(tkc)?;
    let (alpha, beta) = light.pair;
    let mut phi = Coloring::empty(tkc.vertex_count());
    for m in 0..k {
        let caps = match light.bad_copies.iter().position(|&b| b == m) {
            Some(0) => (1, 0),
            Some(_) => (0, 1),
            None => (0, 0),
        };
        let copy = gadgets::t_copy_cover(tkc, m);
        let Some(ext) = hub_extension(&copy, alpha, beta, caps.0, caps.1)? else {
            return Ok(None);
        };
        let map = gadgets::t_copy_vertices(m);
        for (w, c) in ext.assigned() {
            phi.set(map[w], c);
        }
    }
    Ok(Some(phi))
}
