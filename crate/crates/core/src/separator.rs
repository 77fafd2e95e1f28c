//! Clique–stable set separators: families of cuts `(A, B)` such that every clique
//! `K` and disjoint stable set `S` have some cut with `K ⊆ A` and `S ⊆ B`.
//!
//! Two generators are provided. The exhaustive family lists all `2^n` cuts. The
//! recursive family splits on a pure pair `(P, Q)`: when `P` and `Q` are
//! anticomplete no clique meets both, so the families of `G - P` and `G - Q`
//! lifted with the removed side appended to `B` cover every pair; the complete
//! case is symmetric with `A`. Correctness holds for any pure pair; pair sizes
//! only drive the family size.

use indexmap::IndexSet;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::SolverError;
use crate::graph::{Graph, IndexMap, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Cut {
    /// The cut with `a` on the clique side and every other vertex of `0..n` on the stable side.
    pub fn from_side(n: usize, a: VertexSet) -> Self {
        let b = (0..n).filter(|&v| !a.contains(v)).collect();
        Cut { a, b }
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        self.a.is_disjoint(&self.b)
            && self.a.len() + self.b.len() == n
            && self.a.last().is_none_or(|v| v < n)
            && self.b.last().is_none_or(|v| v < n)
    }

    /// `clique ⊆ a` and `stable ⊆ b`.
    pub fn separates(&self, clique: &VertexSet, stable: &VertexSet) -> bool {
        clique.is_subset(&self.a) && stable.is_subset(&self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    Exhaustive,
    Recursive,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SeparatorStats {
    pub size: usize,
    pub depth: usize,
    pub pure_pair_sizes: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorFamily {
    pub cuts: Vec<Cut>,
    pub generator: Generator,
    pub stats: SeparatorStats,
}

pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 16;
pub const EXHAUSTIVE_VERIFY_LIMIT: usize = 12;
pub const DEFAULT_BASE_SIZE: usize = 4;

pub fn default_min_pair_fraction() -> BigRational {
    BigRational::new(1.into(), 10.into())
}

fn all_cuts(n: usize) -> Vec<Cut> {
    (0u64..1 << n)
        .map(|mask| Cut::from_side(n, (0..n).filter(|&v| mask >> v & 1 == 1).collect()))
        .collect()
}

/// All `2^n` cuts, ordered by the bitmask of `A`.
pub fn exhaustive_separator(g: &Graph, limit: usize) -> Result<SeparatorFamily, SolverError> {
    if g.n() > limit {
        return Err(SolverError::InstanceTooLarge {
            what: "exhaustive separator",
            n: g.n(),
            limit,
        });
    }
    let cuts = all_cuts(g.n());
    Ok(SeparatorFamily {
        stats: SeparatorStats {
            size: cuts.len(),
            depth: 0,
            pure_pair_sizes: Vec::new(),
        },
        cuts,
        generator: Generator::Exhaustive,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Complete,
    Anticomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePair {
    pub a: VertexSet,
    pub b: VertexSet,
    pub kind: PairKind,
}

impl PurePair {
    pub fn min_side(&self) -> usize {
        self.a.len().min(self.b.len())
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let want = self.kind == PairKind::Complete;
        !self.a.is_empty()
            && !self.b.is_empty()
            && self.a.is_disjoint(&self.b)
            && self
                .a
                .iter()
                .all(|u| self.b.iter().all(|v| g.has_edge(u, v) == want))
    }
}

/// Seeds examined per kind by [`find_pure_pair`].
const PURE_PAIR_SEEDS: usize = 64;

/// Greedily grows a pure pair from a seed pair.
fn grow_pair(g: &Graph, u: usize, v: usize, kind: PairKind) -> PurePair {
    let want = kind == PairKind::Complete;
    let n = g.n();
    let mut side = vec![0u8; n];
    side[u] = 1;
    side[v] = 2;
    // fits_a[x]: x agrees with every member of B; fits_b[x]: with every member of A
    let mut fits_a: Vec<bool> = (0..n).map(|x| side[x] == 0 && g.has_edge(x, v) == want).collect();
    let mut fits_b: Vec<bool> = (0..n).map(|x| side[x] == 0 && g.has_edge(x, u) == want).collect();
    let (mut a, mut b) = (vec![u], vec![v]);
    loop {
        let grow_a = a.len() <= b.len();
        let (fits_self, fits_other) = if grow_a {
            (&fits_a, &fits_b)
        } else {
            (&fits_b, &fits_a)
        };
        // keep as many options open for the other side as possible
        let best = (0..n)
            .filter(|&x| fits_self[x])
            .map(|x| {
                let kept = (0..n)
                    .filter(|&y| y != x && fits_other[y] && g.has_edge(x, y) == want)
                    .count();
                (kept, x)
            })
            .max_by(|p, q| p.0.cmp(&q.0).then(q.1.cmp(&p.1)));
        let Some((_, x)) = best else {
            break;
        };
        fits_a[x] = false;
        fits_b[x] = false;
        if grow_a {
            a.push(x);
            for y in 0..n {
                if fits_b[y] && g.has_edge(x, y) != want {
                    fits_b[y] = false;
                }
            }
        } else {
            b.push(x);
            for y in 0..n {
                if fits_a[y] && g.has_edge(x, y) != want {
                    fits_a[y] = false;
                }
            }
        }
    }
    PurePair {
        a: a.into_iter().collect(),
        b: b.into_iter().collect(),
        kind,
    }
}

/// Finds a complete or anticomplete pair, aiming for `min(|a|, |b|) >= min_size`.
///
/// Seeds are the first edges and non-edges in lexicographic order, interleaved;
/// the largest grown pair wins, ties going to the earlier seed. Requires `n >= 2`.
pub fn find_pure_pair(g: &Graph, min_size: usize) -> PurePair {
    assert!(g.n() >= 2, "a pure pair needs two vertices");
    let edges = g.edges().take(PURE_PAIR_SEEDS).map(|e| (e, PairKind::Complete));
    let non_edges = g
        .complement()
        .edges()
        .take(PURE_PAIR_SEEDS)
        .map(|e| (e, PairKind::Anticomplete))
        .collect::<Vec<_>>();
    let mut seeds = Vec::new();
    let mut ne = non_edges.into_iter();
    for e in edges {
        seeds.push(e);
        seeds.extend(ne.next());
    }
    seeds.extend(ne);

    let mut best: Option<PurePair> = None;
    for ((u, v), kind) in seeds {
        let pair = grow_pair(g, u, v, kind);
        if best.as_ref().is_none_or(|b| pair.min_side() > b.min_side()) {
            let done = pair.min_side() >= min_size;
            best = Some(pair);
            if done {
                break;
            }
        }
    }
    best.expect("two distinct vertices always form a pure pair")
}

struct RecursiveBuilder<'a> {
    base_size: usize,
    min_pair_fraction: &'a BigRational,
    stats: SeparatorStats,
}

impl RecursiveBuilder<'_> {
    /// Cuts over local ids `0..g.n()`, canonicalized as sorted `A` sides.
    fn build(&mut self, g: &Graph, depth: usize) -> Vec<VertexSet> {
        self.stats.depth = self.stats.depth.max(depth);
        let n = g.n();
        if n <= self.base_size || n < 2 {
            return all_cuts(n).into_iter().map(|c| c.a).collect();
        }
        let target = (self.min_pair_fraction * BigRational::from_integer(n.into()))
            .ceil()
            .to_integer()
            .to_usize()
            .unwrap_or(1)
            .max(1);
        let pair = find_pure_pair(g, target);
        self.stats.pure_pair_sizes.push((pair.a.len(), pair.b.len()));

        let mut out: IndexSet<VertexSet> = IndexSet::new();
        for removed in [&pair.a, &pair.b] {
            let (sub, map) = g.delete_vertices(removed).expect("pair vertices are in range");
            for local_a in self.build(&sub, depth + 1) {
                let mut a = map.lift(&local_a);
                if pair.kind == PairKind::Complete {
                    a.extend(removed.iter());
                }
                out.insert(a);
            }
        }
        out.into_iter().collect()
    }
}

/// Separator family built by pure-pair recursion down to exhaustive families on
/// at most `base_size` vertices. Always valid; duplicate cuts are dropped in
/// first-seen order.
pub fn recursive_separator(g: &Graph, base_size: usize, min_pair_fraction: &BigRational) -> SeparatorFamily {
    let mut builder = RecursiveBuilder {
        base_size,
        min_pair_fraction,
        stats: SeparatorStats::default(),
    };
    let sides = builder.build(g, 0);
    let cuts: Vec<Cut> = sides.into_iter().map(|a| Cut::from_side(g.n(), a)).collect();
    builder.stats.size = cuts.len();
    SeparatorFamily {
        cuts,
        generator: Generator::Recursive,
        stats: builder.stats,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

/// A clique and disjoint stable set that no cut of the family separates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub clique: VertexSet,
    pub stable: VertexSet,
}

fn mask_of(s: &VertexSet) -> u64 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn set_of(mask: u64) -> VertexSet {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// All subsets of `0..n` that are cliques (or stable sets when `stable`), as bitmasks.
fn enumerate_homogeneous(g: &Graph, stable: bool) -> Vec<u64> {
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            let row = (0..n).filter(|&u| g.has_edge(v, u)).fold(0u64, |m, u| m | 1 << u);
            if stable {
                !row & !(1 << v) & ((1u64 << n) - 1)
            } else {
                row
            }
        })
        .collect();
    let mut out = vec![0u64];
    let mut i = 0;
    // extend each set only by vertices above its maximum, so each appears once
    while i < out.len() {
        let s = out[i];
        let lo = if s == 0 {
            0
        } else {
            64 - s.leading_zeros() as usize
        };
        for v in lo..n {
            if adj[v] & s == s {
                out.push(s | 1 << v);
            }
        }
        i += 1;
    }
    out
}

fn lex_key(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Checks that `f` separates every disjoint clique/stable pair of `g`.
///
/// Exhaustive mode enumerates every pair (including empty sets) and reports the
/// lexicographically least unseparated one. Sampled mode draws random maximal
/// disjoint pairs.
pub fn verify_separator(
    g: &Graph,
    f: &SeparatorFamily,
    mode: VerifyMode,
) -> Result<Option<Counterexample>, SolverError> {
    match mode {
        VerifyMode::Exhaustive => verify_exhaustive(g, f),
        VerifyMode::Sampled { count, seed } => Ok(verify_sampled(g, f, count, seed)),
    }
}

fn verify_exhaustive(g: &Graph, f: &SeparatorFamily) -> Result<Option<Counterexample>, SolverError> {
    let n = g.n();
    if n > EXHAUSTIVE_VERIFY_LIMIT {
        return Err(SolverError::InstanceTooLarge {
            what: "exhaustive separator verification",
            n,
            limit: EXHAUSTIVE_VERIFY_LIMIT,
        });
    }
    let sides: Vec<u64> = f.cuts.iter().map(|c| mask_of(&c.a)).collect();
    let mut cliques = enumerate_homogeneous(g, false);
    let mut stables = enumerate_homogeneous(g, true);
    cliques.sort_by_key(|&m| lex_key(m));
    stables.sort_by_key(|&m| lex_key(m));
    for &k in &cliques {
        let candidates: Vec<u64> = sides.iter().copied().filter(|&a| k & !a == 0).collect();
        for &s in &stables {
            if s & k != 0 {
                continue;
            }
            if !candidates.iter().any(|&a| s & a == 0) {
                return Ok(Some(Counterexample {
                    clique: set_of(k),
                    stable: set_of(s),
                }));
            }
        }
    }
    Ok(None)
}

fn verify_sampled(g: &Graph, f: &SeparatorFamily, count: usize, seed: u64) -> Option<Counterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..count {
        order.shuffle(&mut rng);
        let split = rng.gen_range(0..=n);
        let mut clique = Vec::new();
        for &v in &order[..split] {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        let mut stable = Vec::new();
        for &v in &order[split..] {
            if stable.iter().all(|&u| !g.has_edge(u, v)) {
                stable.push(v);
            }
        }
        let clique: VertexSet = clique.into_iter().collect();
        let stable: VertexSet = stable.into_iter().collect();
        if !f.cuts.iter().any(|c| c.separates(&clique, &stable)) {
            return Some(Counterexample { clique, stable });
        }
    }
    None
}

/// Lifts cuts of `G - removed` to cuts of `G`, putting `removed` on the given side.
pub fn lift_cuts(
    cuts: &[Cut],
    map: &IndexMap,
    ambient_n: usize,
    removed: &VertexSet,
    onto_a: bool,
) -> Vec<Cut> {
    cuts.iter()
        .map(|c| {
            let mut a = map.lift(&c.a);
            if onto_a {
                a.extend(removed.iter());
            }
            Cut::from_side(ambient_n, a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ratio;

    #[test]
    fn separates_examples() {
        let full = Cut::from_side(4, VertexSet::full(4));
        assert!(full.separates(&VertexSet::from([0, 1]), &VertexSet::new()));
        let none = Cut::from_side(4, VertexSet::new());
        assert!(!none.separates(&VertexSet::from([2]), &VertexSet::new()));
        let c = Cut::from_side(4, VertexSet::from([0, 1]));
        assert!(c.separates(&VertexSet::from([0, 1]), &VertexSet::from([2])));
    }

    #[test]
    fn exhaustive_sizes() {
        assert_eq!(exhaustive_separator(&Graph::empty(3), 16).unwrap().cuts.len(), 8);
        let zero = exhaustive_separator(&Graph::empty(0), 16).unwrap();
        assert_eq!(
            zero.cuts,
            vec![Cut {
                a: VertexSet::new(),
                b: VertexSet::new()
            }]
        );
        let one = exhaustive_separator(&Graph::empty(1), 16).unwrap();
        assert_eq!(one.cuts.len(), 2);
        assert!(one.cuts.contains(&Cut::from_side(1, VertexSet::from([0]))));
        assert!(one.cuts.contains(&Cut::from_side(1, VertexSet::new())));
        assert!(exhaustive_separator(&Graph::empty(17), 16).is_err());
    }

    #[test]
    fn pure_pair_on_complete_bipartite() {
        for m in 1..=4 {
            let g = Graph::complete_bipartite(m, m);
            let p = find_pure_pair(&g, m);
            assert!(p.verify(&g));
            assert_eq!(p.kind, PairKind::Complete);
            assert_eq!((p.a.len(), p.b.len()), (m, m));
        }
    }

    #[test]
    fn pure_pair_on_edgeless() {
        let g = Graph::empty(8);
        let p = find_pure_pair(&g, 4);
        assert!(p.verify(&g));
        assert_eq!(p.kind, PairKind::Anticomplete);
        assert_eq!((p.a.len(), p.b.len()), (4, 4));
    }

    #[test]
    fn pure_pair_on_two_vertices() {
        let g = Graph::path(2);
        let p = find_pure_pair(&g, 1);
        assert_eq!(
            p,
            PurePair {
                a: VertexSet::from([0]),
                b: VertexSet::from([1]),
                kind: PairKind::Complete
            }
        );
    }

    #[test]
    fn recursive_below_base_is_exhaustive() {
        let g = Graph::cycle(4);
        let r = recursive_separator(&g, 4, &ratio(1, 10));
        assert_eq!(r.cuts, exhaustive_separator(&g, 16).unwrap().cuts);
    }

    #[test]
    fn recursive_families_verify() {
        let c5 = Graph::cycle(5);
        for g in [Graph::empty(8), c5.join(&c5), Graph::path(4), Graph::complete(9)] {
            let f = recursive_separator(&g, 2, &ratio(1, 4));
            assert!(f.cuts.iter().all(|c| c.is_partition_of(g.n())));
            assert_eq!(verify_separator(&g, &f, VerifyMode::Exhaustive).unwrap(), None);
            assert_eq!(f.stats.size, f.cuts.len());
        }
        let g = Graph::empty(8);
        let f = recursive_separator(&g, 4, &ratio(1, 10));
        assert_eq!(verify_separator(&g, &f, VerifyMode::Exhaustive).unwrap(), None);
    }

    #[test]
    fn missing_cut_is_reported() {
        let g = Graph::path(2);
        let f = SeparatorFamily {
            cuts: vec![Cut::from_side(2, VertexSet::full(2))],
            generator: Generator::Exhaustive,
            stats: SeparatorStats::default(),
        };
        let cx = verify_separator(&g, &f, VerifyMode::Exhaustive).unwrap().unwrap();
        assert!(cx.clique.is_empty());
        assert_eq!(cx.stable.len(), 1);
        let sampled = verify_separator(&g, &f, VerifyMode::Sampled { count: 50, seed: 1 }).unwrap();
        assert!(sampled.is_some());
    }

    #[test]
    fn enumeration_counts() {
        // P4: cliques = empty, 4 singletons, 3 edges
        assert_eq!(enumerate_homogeneous(&Graph::path(4), false).len(), 8);
        // stable sets of P4: empty, 4 singletons, {0,2},{0,3},{1,3}
        assert_eq!(enumerate_homogeneous(&Graph::path(4), true).len(), 8);
    }

    #[test]
    fn sampled_mode_accepts_valid_family() {
        let g = Graph::cycle(20);
        let f = recursive_separator(&g, 4, &ratio(1, 10));
        assert_eq!(
            verify_separator(&g, &f, VerifyMode::Sampled { count: 200, seed: 7 }).unwrap(),
            None
        );
    }

    #[test]
    fn exhaustive_verification_guard() {
        let g = Graph::empty(13);
        let f = recursive_separator(&g, 4, &ratio(1, 10));
        assert!(verify_separator(&g, &f, VerifyMode::Exhaustive).is_err());
    }
}
