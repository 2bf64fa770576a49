//! Constructors for every gadget graph and cover used by the verification
//! suite.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::cover::{Cover, Matchings};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("unknown gadget `{0}`")]
    UnknownGadget(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("fixture line {line}: {msg}")]
    Fixture { line: usize, msg: String },
}

/// Name, parameters and origin of a constructed gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetSpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub provenance: String,
}

/// A constructed gadget: its cover (graph-only gadgets get an identity
/// cover) and, for outerplane gadgets, the outer cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub spec: GadgetSpec,
    pub cover: Cover,
    pub outer_cycle: Option<Vec<VertexId>>,
}

fn spec(name: &str, params: &[(&str, String)], provenance: &str) -> GadgetSpec {
    GadgetSpec {
        name: name.to_string(),
        params: params
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        provenance: provenance.to_string(),
    }
}

/// Vertex ids of the diamond `R` (K4 minus the edge `ac`).
pub mod r {
    pub const A: usize = 0;
    pub const B: usize = 1;
    pub const C: usize = 2;
    pub const D: usize = 3;
}

/// Vertex ids of the two-diamond gadget `T`.
pub mod t {
    pub const U: usize = 0;
    pub const V: usize = 1;
    pub const X: usize = 2;
    pub const Z: usize = 3;
    pub const Y: usize = 4;
    pub const U1: usize = 5;
    pub const V1: usize = 6;
    pub const U2: usize = 7;
    pub const V2: usize = 8;
    pub const NAMES: [&str; 9] = ["u", "v", "x", "z", "y", "u1", "v1", "u2", "v2"];
    /// Non-hub vertices in id order.
    pub const INTERNAL: [usize; 7] = [X, Z, Y, U1, V1, U2, V2];
    /// First diamond as (a, b, c, d) = (x, u1, z, v1).
    pub const R1: [usize; 4] = [X, U1, Z, V1];
    /// Second diamond as (a, b, c, d) = (y, u2, z, v2).
    pub const R2: [usize; 4] = [Y, U2, Z, V2];
}

/// K4 minus the edge `ac`.
pub fn build_r() -> Graph {
    Graph::from_named(
        &["a", "b", "c", "d"],
        &[("a", "b"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
    )
    .expect("static gadget")
}

fn cover_from_pairs(graph: Graph, sizes: Vec<usize>, pairs: &[((usize, usize), (usize, usize))]) -> Cover {
    let mut m = Matchings::new();
    for &((a, i), (b, j)) in pairs {
        let (key, pair) = if a < b { ((a, b), (i, j)) } else { ((b, a), (j, i)) };
        m.entry(key).or_default().push(pair);
    }
    Cover::new(graph, sizes, m).expect("static gadget cover")
}

/// The twisted cover of `R`: lists (1, 2, 1, 2) and the cover 6-cycle
/// a1 b1 d2 c1 b2 d1.
pub fn twisted_r_cover() -> Cover {
    use r::*;
    cover_from_pairs(
        build_r(),
        vec![1, 2, 1, 2],
        &[
            ((A, 0), (B, 0)),
            ((B, 0), (D, 1)),
            ((D, 1), (C, 0)),
            ((C, 0), (B, 1)),
            ((B, 1), (D, 0)),
            ((D, 0), (A, 0)),
        ],
    )
}

/// Wedged cover of `R` with lists (1, 2, 2, 2): b1 ~ a1 ~ d1 and
/// c1 ~ b2 ~ d2 ~ c2.
pub fn wedged_r_cover_1222() -> Cover {
    use r::*;
    cover_from_pairs(
        build_r(),
        vec![1, 2, 2, 2],
        &[
            ((A, 0), (B, 0)),
            ((A, 0), (D, 0)),
            ((C, 0), (B, 1)),
            ((B, 1), (D, 1)),
            ((D, 1), (C, 1)),
        ],
    )
}

/// The gadget `T`: diamonds R1 = T[x, u1, v1, z] and R2 = T[z, u2, v2, y]
/// sharing `z`, with hubs `u`, `v` where N(u) = {x, u1, z, u2, y} and
/// N(v) = {x, v1, z, v2, y}.
pub fn build_t5() -> Graph {
    let (names, edges) = t5_edges();
    Graph::from_named(&names, &edges).expect("static gadget")
}

fn t5_edges() -> ([&'static str; 9], Vec<(&'static str, &'static str)>) {
    let edges = vec![
        ("x", "u1"),
        ("x", "v1"),
        ("u1", "v1"),
        ("u1", "z"),
        ("v1", "z"),
        ("z", "u2"),
        ("z", "v2"),
        ("u2", "v2"),
        ("u2", "y"),
        ("v2", "y"),
        ("u", "x"),
        ("u", "u1"),
        ("u", "z"),
        ("u", "u2"),
        ("u", "y"),
        ("v", "x"),
        ("v", "v1"),
        ("v", "z"),
        ("v", "v2"),
        ("v", "y"),
    ];
    (t::NAMES, edges)
}

/// Ids in `T(k)` of copy `m`'s vertices, indexed by the ids of [`t`].
pub fn t_copy_vertices(m: usize) -> [VertexId; 9] {
    let mut out = [0; 9];
    out[t::U] = 0;
    out[t::V] = 1;
    for (r, &w) in t::INTERNAL.iter().enumerate() {
        out[w] = 2 + 7 * m + r;
    }
    out
}

/// `k` copies of `T` with all `u` identified and all `v` identified.
pub fn build_t_k(k: usize) -> Result<Graph, GadgetError> {
    if k < 1 {
        return Err(GadgetError::BadParameter("T(k) needs k >= 1".into()));
    }
    let base = build_t5();
    let mut labels = vec![Some("u".to_string()), Some("v".to_string())];
    for m in 0..k {
        for &w in &t::INTERNAL {
            labels.push(Some(if k == 1 {
                t::NAMES[w].to_string()
            } else {
                format!("{}#{}", t::NAMES[w], m + 1)
            }));
        }
    }
    let mut edges = Vec::with_capacity(20 * k);
    for m in 0..k {
        let map = t_copy_vertices(m);
        edges.extend(base.edges().iter().map(|&(a, b)| (map[a], map[b])));
    }
    Graph::with_labels(labels, &edges).map_err(|e| GadgetError::BadParameter(e.to_string()))
}

/// Cover of `T(k)` assembled from one cover of `T` per copy. The hub lists
/// must agree across copies.
pub fn assemble_t_k(copies: &[Cover]) -> Result<Cover, GadgetError> {
    let graph = build_t_k(copies.len())?;
    let mut sizes = vec![0; graph.vertex_count()];
    let mut m = Matchings::new();
    for (idx, c) in copies.iter().enumerate() {
        let map = t_copy_vertices(idx);
        for w in 0..9 {
            let s = c.list_size(w);
            if (w == t::U || w == t::V) && idx > 0 && sizes[map[w]] != s {
                return Err(GadgetError::BadParameter("hub lists differ between copies".into()));
            }
            sizes[map[w]] = s;
        }
        for (&(a, b), pairs) in c.matchings() {
            let (ma, mb) = (map[a], map[b]);
            let (key, flip) = if ma < mb { ((ma, mb), false) } else { ((mb, ma), true) };
            m.entry(key)
                .or_default()
                .extend(pairs.iter().map(|&(i, j)| if flip { (j, i) } else { (i, j) }));
        }
    }
    Cover::new(graph, sizes, m).map_err(|e| GadgetError::BadParameter(e.to_string()))
}

/// The cover of copy `m` of `T(k)`, renumbered onto the ids of [`t`].
pub fn t_copy_cover(cover: &Cover, m: usize) -> Cover {
    cover.induced(&t_copy_vertices(m)).cover
}

const T3_FIXTURE: &str = include_str!("../fixtures/t3_bad_cover.txt");

/// Vertex ids of the lower-bound gadget for 3-defective 3-fold covers.
pub mod t3 {
    pub const U: usize = 0;
    pub const V: usize = 1;
    /// `z1..z5` are `Z[0]..Z[4]`.
    pub const Z: [usize; 5] = [2, 3, 4, 5, 6];
    pub const X: [usize; 4] = [7, 8, 9, 10];
    pub const Y: [usize; 4] = [11, 12, 13, 14];
    pub const VERTEX_COUNT: usize = 15;
}

struct Fixture {
    names: Vec<String>,
    sizes: Vec<usize>,
    pairs: Vec<((usize, usize), (usize, usize))>,
    edges: Vec<(usize, usize)>,
}

fn parse_fixture(text: &str) -> Result<Fixture, GadgetError> {
    let mut fx = Fixture {
        names: Vec::new(),
        sizes: Vec::new(),
        pairs: Vec::new(),
        edges: Vec::new(),
    };
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| GadgetError::Fixture {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "vertex" if words.len() == 3 => {
                fx.names.push(words[1].to_string());
                fx.sizes.push(words[2].parse().map_err(|_| err("bad list size"))?);
            }
            "edge" if words.len() >= 3 => {
                let find = |n: &str| {
                    fx.names
                        .iter()
                        .position(|s| s == n)
                        .ok_or_else(|| err(&format!("unknown vertex {n}")))
                };
                let (a, b) = (find(words[1])?, find(words[2])?);
                fx.edges.push((a, b));
                for p in &words[3..] {
                    let (i, j) = p.split_once(':').ok_or_else(|| err("expected i:j"))?;
                    let i: usize = i.parse().map_err(|_| err("bad color"))?;
                    let j: usize = j.parse().map_err(|_| err("bad color"))?;
                    if i == 0 || j == 0 {
                        return Err(err("colors are 1-based"));
                    }
                    fx.pairs.push(((a, i - 1), (b, j - 1)));
                }
            }
            _ => return Err(err("expected `vertex` or `edge`")),
        }
    }
    Ok(fx)
}

fn t3_fixture() -> Fixture {
    let fx = parse_fixture(T3_FIXTURE).expect("checked-in fixture parses");
    debug_assert_eq!(fx.names.len(), t3::VERTEX_COUNT);
    fx
}

/// The lower-bound gadget graph (15 vertices).
pub fn build_t3_gadget() -> Graph {
    let fx = t3_fixture();
    Graph::with_labels(fx.names.into_iter().map(Some).collect(), &fx.edges).expect("fixture graph")
}

/// The cover of the lower-bound gadget that is bad for `(alpha, beta)`
/// (1-based). Hub lists have three colors; only `alpha` at `u` and `beta`
/// at `v` carry cross edges, the other hub colors are left unmatched.
pub fn build_bad_cover_t3(alpha: usize, beta: usize) -> Result<Cover, GadgetError> {
    for (name, val) in [("alpha", alpha), ("beta", beta)] {
        if !(1..=3).contains(&val) {
            return Err(GadgetError::BadParameter(format!("{name} must be in 1..=3")));
        }
    }
    let fx = t3_fixture();
    let graph = Graph::with_labels(fx.names.into_iter().map(Some).collect(), &fx.edges)
        .expect("fixture graph");
    let mut sizes = fx.sizes;
    sizes[t3::U] = 3;
    sizes[t3::V] = 3;
    let hub_color = |(v, c): (usize, usize)| match v {
        t3::U => (v, alpha - 1),
        t3::V => (v, beta - 1),
        _ => (v, c),
    };
    let pairs: Vec<_> = fx
        .pairs
        .into_iter()
        .map(|(a, b)| (hub_color(a), hub_color(b)))
        .collect();
    Ok(cover_from_pairs(graph, sizes, &pairs))
}

/// Number of copies of the lower-bound gadget per hub pair in [`build_g63`].
pub const G63_COPIES_PER_PAIR: usize = 7;

/// Ids in the 63-copy gadget of copy `c`'s vertices, indexed by [`t3`] ids.
pub fn g63_copy_vertices(c: usize) -> Vec<VertexId> {
    let mut out = vec![0, 1];
    out.extend((0..t3::VERTEX_COUNT - 2).map(|r| 2 + 13 * c + r));
    out
}

/// Hub pair `(alpha, beta)` (1-based) whose bad cover copy `c` carries.
pub fn g63_copy_pair(c: usize) -> (usize, usize) {
    let p = c / G63_COPIES_PER_PAIR;
    (p / 3 + 1, p % 3 + 1)
}

/// The per-copy cover used in [`build_g63`]: the bad cover for the copy's
/// pair with its hub matchings completed by [`Cover::maximalize`].
pub fn g63_copy_cover(c: usize) -> Cover {
    let (a, b) = g63_copy_pair(c);
    build_bad_cover_t3(a, b).expect("pair in range").maximalize()
}

/// 63 copies of the lower-bound gadget sharing both hubs; seven copies are
/// bad for each of the nine hub pairs. Every list has three colors.
pub fn build_g63() -> Gadget {
    let base = build_t3_gadget();
    let copies = 9 * G63_COPIES_PER_PAIR;
    let mut labels = vec![Some("u".to_string()), Some("v".to_string())];
    let mut edges = Vec::new();
    let mut m = Matchings::new();
    for c in 0..copies {
        let map = g63_copy_vertices(c);
        for w in 2..t3::VERTEX_COUNT {
            labels.push(Some(format!("{}#{}", base.label(w).unwrap(), c + 1)));
        }
        edges.extend(base.edges().iter().map(|&(a, b)| (map[a], map[b])));
        let cover = g63_copy_cover(c);
        for (&(a, b), pairs) in cover.matchings() {
            let (ma, mb) = (map[a], map[b]);
            let (key, flip) = if ma < mb { ((ma, mb), false) } else { ((mb, ma), true) };
            m.entry(key)
                .or_default()
                .extend(pairs.iter().map(|&(i, j)| if flip { (j, i) } else { (i, j) }));
        }
    }
    let graph = Graph::with_labels(labels, &edges).expect("copies are disjoint apart from hubs");
    let n = graph.vertex_count();
    Gadget {
        spec: spec(
            "g63",
            &[],
            "63 copies of the lower-bound gadget, 7 bad copies per hub pair",
        ),
        cover: Cover::new(graph, vec![3; n], m).expect("valid cover"),
        outer_cycle: None,
    }
}

/// Fan vertex ids: apex `u` is 0, `z_i` is `i` (1..=12), `y_i` is `12 + i`
/// (1..=11).
pub mod fan {
    pub const U: usize = 0;
    pub const LEN: usize = 12;
    pub fn z(i: usize) -> usize {
        i
    }
    pub fn y(i: usize) -> usize {
        12 + i
    }
}

/// Fan of length 12 with an ear `y_i` on every path edge. All matchings are
/// the identity on two colors except `y_i z_(i+1)`, which swaps them.
pub fn build_fan_gadget() -> Gadget {
    let mut names = vec!["u".to_string()];
    names.extend((1..=fan::LEN).map(|i| format!("z{i}")));
    names.extend((1..fan::LEN).map(|i| format!("y{i}")));
    let mut edges = Vec::new();
    let mut m = Matchings::new();
    let identity = vec![(0, 0), (1, 1)];
    for i in 1..fan::LEN {
        edges.push((fan::z(i), fan::z(i + 1)));
        m.insert((fan::z(i), fan::z(i + 1)), identity.clone());
    }
    for i in 1..=fan::LEN {
        edges.push((fan::U, fan::z(i)));
        m.insert((fan::U, fan::z(i)), identity.clone());
    }
    for i in 1..fan::LEN {
        edges.push((fan::z(i), fan::y(i)));
        m.insert((fan::z(i), fan::y(i)), identity.clone());
        edges.push((fan::z(i + 1), fan::y(i)));
        m.insert((fan::z(i + 1), fan::y(i)), vec![(0, 1), (1, 0)]);
    }
    let graph = Graph::with_labels(names.into_iter().map(Some).collect(), &edges).expect("fan");
    let n = graph.vertex_count();
    let mut outer = vec![fan::U];
    for i in 1..fan::LEN {
        outer.push(fan::z(i));
        outer.push(fan::y(i));
    }
    outer.push(fan::z(fan::LEN));
    Gadget {
        spec: spec(
            "fan",
            &[],
            "outerplanar fan of length 12 with swapped ear matchings",
        ),
        cover: Cover::new(graph, vec![2; n], m).expect("valid cover"),
        outer_cycle: Some(outer),
    }
}

fn check_index(name: &str, v: usize) -> Result<usize, GadgetError> {
    if (1..=4).contains(&v) {
        Ok(v - 1)
    } else {
        Err(GadgetError::BadParameter(format!("{name} must be in 1..=4, got {v}")))
    }
}

/// Cover edges of the rotation cover with parameters `(i, j, k; l)` at the
/// hub colors `(alpha, beta)`, all 1-based.
fn rotation_pairs(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    alpha: usize,
    beta: usize,
) -> Result<Vec<((usize, usize), (usize, usize))>, GadgetError> {
    let (i, j, k, l) = (
        check_index("i", i)?,
        check_index("j", j)?,
        check_index("k", k)?,
        check_index("l", l)?,
    );
    let (alpha, beta) = (check_index("alpha", alpha)?, check_index("beta", beta)?);
    let mut seen = [i, j, k, l];
    seen.sort_unstable();
    if seen != [0, 1, 2, 3] {
        return Err(GadgetError::BadParameter("i, j, k, l must be distinct".into()));
    }
    use t::*;
    let mut pairs = vec![
        ((U, alpha), (X, i)),
        ((U, alpha), (Z, j)),
        ((U, alpha), (Y, k)),
        ((U, alpha), (U1, l)),
        ((U, alpha), (U2, l)),
    ];
    for w in [X, V1, Z, V2, Y] {
        pairs.push(((V, beta), (w, l)));
    }
    Ok(pairs)
}

fn identity_internal_pairs(k: usize) -> Vec<((usize, usize), (usize, usize))> {
    let g = build_t5();
    g.edges()
        .iter()
        .filter(|&&(a, b)| a != t::U && a != t::V && b != t::U && b != t::V)
        .flat_map(|&(a, b)| (0..k).map(move |c| ((a, c), (b, c))))
        .collect()
}

/// 4-fold cover of `T`: `(u, alpha)` sees `(x, i)`, `(z, j)`, `(y, k)`,
/// `(u1, l)` and `(u2, l)`; `(v, beta)` sees color `l` on every neighbor of
/// `v`; identity matchings inside `T - {u, v}`. All indices 1-based.
pub fn build_h_rot(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    alpha: usize,
    beta: usize,
) -> Result<Cover, GadgetError> {
    let mut pairs = rotation_pairs(i, j, k, l, alpha, beta)?;
    pairs.extend(identity_internal_pairs(4));
    Ok(cover_from_pairs(build_t5(), vec![4; 9], &pairs))
}

/// `(i, i+1, i+2; i+3)` with wrap-around on `1..=4`.
pub fn rotation(i: usize) -> (usize, usize, usize, usize) {
    let step = |s: usize| (i - 1 + s) % 4 + 1;
    (step(0), step(1), step(2), step(3))
}

/// Union of the four rotation covers, rotation `i` placed at hub colors
/// `(i, sigma(i))`. `sigma` is given as `[sigma(1), .., sigma(4)]`.
pub fn build_h_sigma(sigma: [usize; 4]) -> Result<Cover, GadgetError> {
    let mut sorted = sigma;
    sorted.sort_unstable();
    if sorted != [1, 2, 3, 4] {
        return Err(GadgetError::BadParameter(format!(
            "{sigma:?} is not a permutation of 1..=4"
        )));
    }
    let mut pairs = identity_internal_pairs(4);
    for i in 1..=4 {
        let (a, b, c, d) = rotation(i);
        pairs.extend(rotation_pairs(a, b, c, d, i, sigma[i - 1])?);
    }
    Ok(cover_from_pairs(build_t5(), vec![4; 9], &pairs))
}

/// Partition of `[4] x [4]` into four permutations; copy `m` of the
/// counterexample uses column `m`. Entry `[m][i - 1]` is the partner of `i`.
pub const PARTITION_TABLE: [[usize; 4]; 4] = [
    [1, 2, 3, 4],
    [4, 1, 2, 3],
    [3, 4, 1, 2],
    [2, 3, 4, 1],
];

/// 4-fold cover of `T(4)` whose copy `m` carries `H(sigma_m)` for the
/// permutations of [`PARTITION_TABLE`].
pub fn build_t4_counterexample() -> Gadget {
    let copies: Vec<Cover> = PARTITION_TABLE
        .iter()
        .map(|&sigma| build_h_sigma(sigma).expect("table rows are permutations"))
        .collect();
    Gadget {
        spec: spec(
            "t4-counterexample",
            &[],
            "T(4) with copy m covered by H(A_m) for a partition of [4]x[4] into permutations",
        ),
        cover: assemble_t_k(&copies).expect("hub lists agree"),
        outer_cycle: None,
    }
}

/// Registered gadget names for the command line.
pub const GADGET_NAMES: &[&str] = &[
    "r",
    "r-twisted",
    "r-wedged",
    "t",
    "t-k",
    "t3",
    "t3-bad",
    "g63",
    "fan",
    "h-rot",
    "h-sigma",
    "t4-counterexample",
];

fn param(params: &BTreeMap<String, String>, key: &str, default: Option<usize>) -> Result<usize, GadgetError> {
    match params.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| GadgetError::BadParameter(format!("{key}={v} is not an integer"))),
        None => default.ok_or_else(|| GadgetError::BadParameter(format!("missing parameter {key}"))),
    }
}

/// Builds a registered gadget by name. Graph-only gadgets come with the
/// identity cover of `fold` colors (default 3).
pub fn build_gadget(name: &str, params: &BTreeMap<String, String>) -> Result<Gadget, GadgetError> {
    let owned: Vec<(&str, String)> = params.iter().map(|(k, v)| (k.as_str(), v.clone())).collect();
    let graph_only = |graph: Graph, provenance: &str| -> Result<Gadget, GadgetError> {
        let fold = param(params, "fold", Some(3))?;
        Ok(Gadget {
            spec: spec(name, &owned, provenance),
            cover: Cover::identity(graph, fold),
            outer_cycle: None,
        })
    };
    match name {
        "r" => graph_only(build_r(), "K4 minus the edge ac"),
        "t" => graph_only(build_t5(), "two diamonds sharing z, hubs u and v"),
        "t-k" => graph_only(build_t_k(param(params, "k", None)?)?, "k copies of T sharing u and v"),
        "t3" => graph_only(build_t3_gadget(), "lower-bound gadget from the checked-in fixture"),
        "r-twisted" => Ok(Gadget {
            spec: spec(name, &owned, "twisted cover of R"),
            cover: twisted_r_cover(),
            outer_cycle: None,
        }),
        "r-wedged" => Ok(Gadget {
            spec: spec(name, &owned, "wedged cover of R with |L(c)| = 2"),
            cover: wedged_r_cover_1222(),
            outer_cycle: None,
        }),
        "t3-bad" => Ok(Gadget {
            spec: spec(name, &owned, "bad cover of the lower-bound gadget"),
            cover: build_bad_cover_t3(param(params, "alpha", Some(1))?, param(params, "beta", Some(1))?)?,
            outer_cycle: None,
        }),
        "g63" => Ok(build_g63()),
        "fan" => Ok(build_fan_gadget()),
        "h-rot" => Ok(Gadget {
            spec: spec(name, &owned, "rotation cover of T"),
            cover: build_h_rot(
                param(params, "i", Some(1))?,
                param(params, "j", Some(2))?,
                param(params, "k", Some(3))?,
                param(params, "l", Some(4))?,
                param(params, "alpha", Some(1))?,
                param(params, "beta", Some(1))?,
            )?,
            outer_cycle: None,
        }),
        "h-sigma" => {
            let raw = params.get("sigma").map(String::as_str).unwrap_or("1234");
            let digits: Vec<usize> = raw
                .chars()
                .filter(|c| c.is_ascii_digit())
                .map(|c| c.to_digit(10).unwrap() as usize)
                .collect();
            let sigma: [usize; 4] = digits
                .try_into()
                .map_err(|_| GadgetError::BadParameter(format!("sigma={raw} needs four digits")))?;
            Ok(Gadget {
                spec: spec(name, &owned, "union of the four rotation covers"),
                cover: build_h_sigma(sigma)?,
                outer_cycle: None,
            })
        }
        "t4-counterexample" => Ok(build_t4_counterexample()),
        other => Err(GadgetError::UnknownGadget(other.to_string())),
    }
}
