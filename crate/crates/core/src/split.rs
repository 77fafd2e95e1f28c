//! Split graph recognition, certificates and small forbidden induced subgraphs.
//!
//! A graph is split iff it has no induced `C4`, `C5` or `2K2`. Recognition uses the
//! degree sequence: order vertices by non-increasing degree and let `m` be the
//! largest index with `d_m >= m - 1` (1-based). The graph is split iff the first
//! `m` vertices form a clique and the rest a stable set, which is also what the
//! Hammer–Simeone equality tests arithmetically.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    pub clique: VertexSet,
    pub stable: VertexSet,
}

impl SplitCertificate {
    /// Checks partition, clique and stable-set conditions against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        self.clique.is_disjoint(&self.stable)
            && self.clique.len() + self.stable.len() == g.n()
            && self.clique.last().is_none_or(|v| v < g.n())
            && self.stable.last().is_none_or(|v| v < g.n())
            && g.is_clique_slice(&self.clique.to_vec())
            && g.is_stable_slice(&self.stable.to_vec())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SmallObstructionKind {
    #[serde(rename = "2K2")]
    TwoK2,
    C4,
    C5,
}

/// An induced `C4`/`C5` (vertices in cycle order) or `2K2` (edge `v0v1`, edge `v2v3`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallObstruction {
    pub kind: SmallObstructionKind,
    pub vertices: Vec<usize>,
}

impl SmallObstruction {
    /// Checks the full edge/non-edge pattern of the witness in `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        let expected_len = match self.kind {
            SmallObstructionKind::TwoK2 | SmallObstructionKind::C4 => 4,
            SmallObstructionKind::C5 => 5,
        };
        if vs.len() != expected_len || vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if vs[i] == vs[j] {
                    return false;
                }
                let want = match self.kind {
                    SmallObstructionKind::TwoK2 => (i, j) == (0, 1) || (i, j) == (2, 3),
                    _ => j == i + 1 || (i == 0 && j == vs.len() - 1),
                };
                if g.has_edge(vs[i], vs[j]) != want {
                    return false;
                }
            }
        }
        true
    }
}

/// Vertices sorted by non-increasing degree (ties by id) and the clique prefix length.
fn degree_order(g: &Graph) -> (Vec<usize>, Vec<usize>, usize) {
    let degs = g.degrees();
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| degs[b].cmp(&degs[a]).then(a.cmp(&b)));
    let m = order
        .iter()
        .enumerate()
        .filter(|&(i, &v)| degs[v] >= i)
        .map(|(i, _)| i + 1)
        .max()
        .unwrap_or(0);
    (order, degs, m)
}

/// Returns a clique/stable partition of `g`, or `None` if `g` is not split.
pub fn find_split_partition(g: &Graph) -> Option<SplitCertificate> {
    let (order, _, m) = degree_order(g);
    let (head, tail) = order.split_at(m);
    if !g.is_clique_slice(head) {
        return None;
    }
    let mut clique: VertexSet = head.iter().copied().collect();
    let mut stable: VertexSet = tail.iter().copied().collect();
    if g.is_stable_slice(tail) {
        return Some(SplitCertificate { clique, stable });
    }
    // A tail vertex adjacent to the whole head may still be the one breaking stability.
    let boundary = tail
        .iter()
        .copied()
        .find(|&v| head.iter().all(|&u| g.has_edge(u, v)))?;
    stable.remove(boundary);
    if g.is_stable_slice(&stable.to_vec()) {
        clique.insert(boundary);
        return Some(SplitCertificate { clique, stable });
    }
    None
}

/// Hammer–Simeone: `sum_{i<=m} d_i == m(m-1) + sum_{i>m} d_i`.
pub fn is_split_by_degrees(g: &Graph) -> bool {
    let (order, degs, m) = degree_order(g);
    let head: usize = order[..m].iter().map(|&v| degs[v]).sum();
    let tail: usize = order[m..].iter().map(|&v| degs[v]).sum();
    head == m * m.saturating_sub(1) + tail
}

pub fn is_split(g: &Graph) -> bool {
    find_split_partition(g).is_some()
}

/// Finds an induced `2K2`, `C4` or `C5`, searched in that order.
///
/// `2K2` witnesses are the first pair of edges `(a,b) < (c,d)` in lexicographic
/// edge order with no edges between them. Cycle witnesses are the
/// lexicographically least vertex sequence that starts at the minimum vertex of
/// the cycle and whose second vertex is smaller than its last.
///
/// The search runs directly on `g`, so `None` is an independent proof of
/// splitness rather than a restatement of [`is_split`].
pub fn find_small_obstruction(g: &Graph) -> Option<SmallObstruction> {
    search_small_obstruction(g)
}

/// Same witness as [`find_small_obstruction`], skipping the search on split graphs.
pub(crate) fn small_obstruction_if_not_split(g: &Graph) -> Option<SmallObstruction> {
    if is_split(g) {
        return None;
    }
    let found = search_small_obstruction(g);
    debug_assert!(found.is_some(), "non-split graph without a small obstruction");
    found
}

fn search_small_obstruction(g: &Graph) -> Option<SmallObstruction> {
    find_two_k2(g)
        .map(|vertices| SmallObstruction {
            kind: SmallObstructionKind::TwoK2,
            vertices,
        })
        .or_else(|| {
            find_induced_cycle(g, 4).map(|vertices| SmallObstruction {
                kind: SmallObstructionKind::C4,
                vertices,
            })
        })
        .or_else(|| {
            find_induced_cycle(g, 5).map(|vertices| SmallObstruction {
                kind: SmallObstructionKind::C5,
                vertices,
            })
        })
}

fn find_two_k2(g: &Graph) -> Option<Vec<usize>> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if c == a || c == b || d == a || d == b {
                continue;
            }
            if !g.has_edge(a, c) && !g.has_edge(a, d) && !g.has_edge(b, c) && !g.has_edge(b, d) {
                return Some(vec![a, b, c, d]);
            }
        }
    }
    None
}

fn find_induced_cycle(g: &Graph, len: usize) -> Option<Vec<usize>> {
    let mut path = Vec::with_capacity(len);
    for start in 0..g.n() {
        path.clear();
        path.push(start);
        if extend_cycle(g, len, &mut path) {
            return Some(path);
        }
    }
    None
}

fn extend_cycle(g: &Graph, len: usize, path: &mut Vec<usize>) -> bool {
    let start = path[0];
    let tail = *path.last().unwrap();
    let pos = path.len();
    let candidates: Vec<usize> = g.neighbors(tail).filter(|&v| v > start).collect();
    for v in candidates {
        if path.contains(&v) {
            continue;
        }
        // v may touch only the tail, plus the start when it closes the cycle
        let closes = pos == len - 1;
        let ok = path[..pos - 1].iter().enumerate().all(|(i, &u)| {
            let adj = g.has_edge(u, v);
            if i == 0 && closes {
                adj
            } else {
                !adj
            }
        });
        if !ok {
            continue;
        }
        if closes && path[1] > v {
            continue;
        }
        path.push(v);
        if closes || extend_cycle(g, len, path) {
            return true;
        }
        path.pop();
    }
    false
}
