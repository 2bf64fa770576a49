//! Plain enumeration oracle, built from the raw matchings only.
#![allow(dead_code)]

use std::collections::HashSet;

use dcc_core::Cover;

pub struct Oracle {
    pub sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    pairs: HashSet<(usize, usize, usize, usize)>,
}

impl Oracle {
    pub fn new(cover: &Cover) -> Self {
        let mut pairs = HashSet::new();
        for (&(a, b), m) in cover.matchings() {
            for &(i, j) in m {
                pairs.insert((a, i, b, j));
                pairs.insert((b, j, a, i));
            }
        }
        Oracle {
            sizes: cover.list_sizes().to_vec(),
            edges: cover.graph().edges().to_vec(),
            pairs,
        }
    }

    pub fn defects(&self, colors: &[usize]) -> Vec<usize> {
        let mut d = vec![0; self.sizes.len()];
        for &(a, b) in &self.edges {
            if self.pairs.contains(&(a, colors[a], b, colors[b])) {
                d[a] += 1;
                d[b] += 1;
            }
        }
        d
    }

    /// Calls `f` on every total coloring agreeing with `pins`; stops early
    /// when `f` returns false.
    pub fn each(&self, pins: &[Option<usize>], mut f: impl FnMut(&[usize]) -> bool) {
        let n = self.sizes.len();
        if self.sizes.iter().any(|&s| s == 0) {
            return;
        }
        let mut colors: Vec<usize> = (0..n).map(|v| pins.get(v).copied().flatten().unwrap_or(0)).collect();
        loop {
            if !f(&colors) {
                return;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return;
                }
                if pins.get(i).copied().flatten().is_none() {
                    colors[i] += 1;
                    if colors[i] < self.sizes[i] {
                        break;
                    }
                    colors[i] = 0;
                }
                i += 1;
            }
        }
    }

    pub fn exists(&self, caps: &[usize], pins: &[Option<usize>]) -> bool {
        let mut found = false;
        self.each(pins, |c| {
            found = self.defects(c).iter().zip(caps).all(|(d, k)| d <= k);
            !found
        });
        found
    }

    pub fn count(&self, caps: &[usize]) -> usize {
        let mut count = 0;
        self.each(&[], |c| {
            if self.defects(c).iter().zip(caps).all(|(d, k)| d <= k) {
                count += 1;
            }
            true
        });
        count
    }
}

/// Every partial matching between lists of sizes `p` and `q`.
pub fn all_matchings(p: usize, q: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(i: usize, p: usize, q: usize, used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if i == p {
            out.push(cur.clone());
            return;
        }
        go(i + 1, p, q, used, cur, out);
        for j in 0..q {
            if !used[j] {
                used[j] = true;
                cur.push((i, j));
                go(i + 1, p, q, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, p, q, &mut vec![false; q], &mut Vec::new(), &mut out);
    out
}

pub fn is_maximal_matching(p: usize, q: usize, m: &[(usize, usize)]) -> bool {
    m.len() == p.min(q)
}
