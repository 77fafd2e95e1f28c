//! Brute-force oracles shared by the integration tests. Graphs are read into
//! plain `u32` adjacency masks so none of the library's own routines are reused.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use svd_core::generate::weight_palette;
use svd_core::{
    Graph, PathKind, PathObstruction, SmallObstruction, SmallObstructionKind, VertexSet, Weight, WeightMap,
};

pub fn masks(g: &Graph) -> Vec<u32> {
    assert!(g.n() <= 32);
    (0..g.n())
        .map(|u| {
            (0..g.n())
                .filter(|&v| g.has_edge(u, v))
                .fold(0, |m, v| m | 1 << v)
        })
        .collect()
}

pub fn set_mask(s: &VertexSet) -> u32 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

pub fn is_clique(adj: &[u32], s: u32) -> bool {
    bits(s).all(|v| adj[v] & s == s & !(1 << v))
}

pub fn is_stable(adj: &[u32], s: u32) -> bool {
    bits(s).all(|v| adj[v] & s == 0)
}

pub fn bits(mut s: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let v = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(v)
    })
}

/// Split by definition: some clique `K` inside `alive` leaves a stable remainder.
pub fn split_by_partition(adj: &[u32], alive: u32) -> bool {
    let mut k = alive;
    loop {
        if is_clique(adj, k) && is_stable(adj, alive & !k) {
            return true;
        }
        if k == 0 {
            return false;
        }
        k = (k - 1) & alive;
    }
}

fn induced(adj: &[u32], vs: &[usize], want: impl Fn(usize, usize) -> bool) -> bool {
    let mut seen = 0u32;
    for &v in vs {
        if v >= adj.len() || seen & 1 << v != 0 {
            return false;
        }
        seen |= 1 << v;
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if (adj[vs[i]] >> vs[j] & 1 == 1) != want(i, j) {
                return false;
            }
        }
    }
    true
}

pub fn small_pattern_holds(adj: &[u32], obs: &SmallObstruction) -> bool {
    let vs = &obs.vertices;
    match obs.kind {
        SmallObstructionKind::TwoK2 => {
            vs.len() == 4 && induced(adj, vs, |i, j| (i, j) == (0, 1) || (i, j) == (2, 3))
        }
        SmallObstructionKind::C4 | SmallObstructionKind::C5 => {
            let len = if obs.kind == SmallObstructionKind::C4 {
                4
            } else {
                5
            };
            vs.len() == len && induced(adj, vs, |i, j| j == i + 1 || (i == 0 && j == len - 1))
        }
    }
}

pub fn path_pattern_holds(adj: &[u32], obs: &PathObstruction, k: usize) -> bool {
    let n = adj.len();
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let view: Vec<u32> = match obs.kind {
        PathKind::Pk => adj.to_vec(),
        PathKind::CoPk => (0..n).map(|v| !adj[v] & full & !(1 << v)).collect(),
    };
    obs.vertices.len() == k && induced(&view, &obs.vertices, |i, j| j == i + 1)
}

/// Any induced 2K2, C4 or C5 among the vertices of `alive`, by exhaustive subset scan.
pub fn has_forbidden_subgraph(adj: &[u32], alive: u32) -> bool {
    let vs: Vec<usize> = bits(alive).collect();
    let sub_edges = |s: &[usize]| {
        let mut deg = vec![0; s.len()];
        let mut m = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if adj[s[i]] >> s[j] & 1 == 1 {
                    deg[i] += 1;
                    deg[j] += 1;
                    m += 1;
                }
            }
        }
        (m, deg)
    };
    for a in 0..vs.len() {
        for b in a + 1..vs.len() {
            for c in b + 1..vs.len() {
                for d in c + 1..vs.len() {
                    let s = [vs[a], vs[b], vs[c], vs[d]];
                    let (m, deg) = sub_edges(&s);
                    // 2K2: two edges, all degrees one. C4: four edges, all degrees two.
                    if (m == 2 || m == 4) && deg.iter().all(|&x| x == m / 2) {
                        return true;
                    }
                    for e in d + 1..vs.len() {
                        let s = [vs[a], vs[b], vs[c], vs[d], vs[e]];
                        let (m, deg) = sub_edges(&s);
                        // 2-regular on five vertices is exactly C5
                        if m == 5 && deg.iter().all(|&x| x == 2) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn full_mask(n: usize) -> u32 {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Minimum-weight hitting set by scanning every subset of vertices.
pub fn brute_svd(g: &Graph, w: &WeightMap) -> Weight {
    let adj = masks(g);
    let all = full_mask(g.n());
    let mut best: Option<Weight> = None;
    for x in 0..=all {
        let wx: Weight = bits(x).map(|v| w.get(v).clone()).sum();
        if best.as_ref().is_some_and(|b| &wx >= b) {
            continue;
        }
        if split_by_partition(&adj, all & !x) {
            best = Some(wx);
        }
    }
    best.expect("deleting everything leaves a split graph")
}

/// Minimum-weight vertex cover by scanning every subset of vertices.
pub fn brute_vc(g: &Graph, w: &WeightMap) -> Weight {
    let adj = masks(g);
    let all = full_mask(g.n());
    (0..=all)
        .filter(|&c| is_stable(&adj, all & !c))
        .map(|c| bits(c).map(|v| w.get(v).clone()).sum::<Weight>())
        .min()
        .unwrap()
}

/// Every labeled graph on `n` vertices, indexed by a bitmask over vertex pairs.
pub fn labeled_graph(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if code >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn palette_weights(rng: &mut ChaCha8Rng, n: usize) -> WeightMap {
    let palette = weight_palette();
    WeightMap::new(
        (0..n)
            .map(|_| palette[rng.gen_range(0..palette.len())].clone())
            .collect(),
    )
    .unwrap()
}
