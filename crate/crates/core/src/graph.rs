//! Dense undirected simple graphs, vertex sets and exact vertex weights.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GraphError;

/// Exact nonnegative vertex weight.
pub type Weight = BigRational;

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// Undirected simple graph on vertices `0..n`, stored as dense adjacency bit rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Path `0-1-...-(k-1)`.
    pub fn path(k: usize) -> Self {
        let mut g = Graph::empty(k);
        for v in 1..k {
            g.set_edge(v - 1, v);
        }
        g
    }

    /// Cycle `0-1-...-(k-1)-0`. Requires `k >= 3`.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "a cycle needs at least three vertices");
        let mut g = Graph::path(k);
        g.set_edge(0, k - 1);
        g
    }

    /// Two disjoint edges `0-1` and `2-3`.
    pub fn two_k2() -> Self {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).expect("valid edges")
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Disjoint union of `self` and `other` with every cross pair joined.
    pub fn join(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n);
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + self.n, v + self.n);
        }
        for u in 0..self.n {
            for v in self.n..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `{u, v}`. Re-adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.set_edge(u, v);
        Ok(())
    }

    #[inline]
    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        match s.last() {
            Some(v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    /// Adjacency row of `v` as little-endian bit words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            let (src, dst) = (self.row(u), &mut g.bits[u * g.words..(u + 1) * g.words]);
            for (d, s) in dst.iter_mut().zip(src) {
                *d = !s;
            }
            g.bits[u * g.words + u / WORD] &= !(1 << (u % WORD));
            if let Some(last) = dst_last_mask(self.n) {
                g.bits[(u + 1) * g.words - 1] &= last;
            }
        }
        g
    }

    /// Subgraph induced by `s`; new vertex `i` is the `i`-th smallest member of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, IndexMap), GraphError> {
        self.check_set(s)?;
        let map = IndexMap::new(s.iter().collect(), self.n);
        Ok((self.induced_by_sorted(map.to_old()), map))
    }

    /// `G - x`.
    pub fn delete_vertices(&self, x: &VertexSet) -> Result<(Graph, IndexMap), GraphError> {
        self.check_set(x)?;
        let keep: VertexSet = (0..self.n).filter(|v| !x.contains(*v)).collect();
        self.induced_subgraph(&keep)
    }

    pub(crate) fn induced_by_sorted(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(self.is_clique_slice(&s.to_vec()))
    }

    pub fn is_stable(&self, s: &VertexSet) -> Result<bool, GraphError> {
        self.check_set(s)?;
        Ok(self.is_stable_slice(&s.to_vec()))
    }

    pub(crate) fn is_clique_slice(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub(crate) fn is_stable_slice(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }
}

fn dst_last_mask(n: usize) -> Option<u64> {
    match n % WORD {
        0 => None,
        r => Some((1u64 << r) - 1),
    }
}

pub(crate) fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + b)
            }
        })
    })
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// A set of vertex ids, iterated in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        self.0.remove(&v)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[usize; N]> for VertexSet {
    fn from(a: [usize; N]) -> Self {
        a.into_iter().collect()
    }
}

impl Extend<usize> for VertexSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

/// Bijection between the vertices of an induced subgraph and the ambient ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    to_old: Vec<usize>,
    to_new: Vec<Option<usize>>,
}

impl IndexMap {
    /// `to_old` must be strictly increasing and below `ambient_n`.
    pub fn new(to_old: Vec<usize>, ambient_n: usize) -> Self {
        let mut to_new = vec![None; ambient_n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        IndexMap { to_old, to_new }
    }

    pub fn identity(n: usize) -> Self {
        IndexMap::new((0..n).collect(), n)
    }

    pub fn old(&self, new: usize) -> usize {
        self.to_old[new]
    }

    pub fn new_of(&self, old: usize) -> Option<usize> {
        self.to_new.get(old).copied().flatten()
    }

    pub fn to_old(&self) -> &[usize] {
        &self.to_old
    }

    pub fn lift(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_old[v]).collect()
    }

    pub fn lift_vec(&self, vs: &[usize]) -> Vec<usize> {
        vs.iter().map(|&v| self.to_old[v]).collect()
    }

    /// Maps ambient ids to local ids, dropping ids outside the subgraph.
    pub fn restrict(&self, s: &VertexSet) -> VertexSet {
        s.iter().filter_map(|v| self.new_of(v)).collect()
    }

    /// Composes `self` (a map out of an intermediate graph) after `inner`.
    pub fn compose(&self, inner: &IndexMap) -> IndexMap {
        let ambient = self.to_new.len();
        IndexMap::new(inner.to_old.iter().map(|&v| self.to_old[v]).collect(), ambient)
    }
}

/// Exact nonnegative rational weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightMap(Vec<Weight>);

impl WeightMap {
    pub fn new(weights: Vec<Weight>) -> Result<Self, GraphError> {
        if let Some(v) = weights.iter().position(|w| w.is_negative()) {
            return Err(GraphError::NegativeWeight(v));
        }
        Ok(WeightMap(weights))
    }

    pub fn unit(n: usize) -> Self {
        WeightMap(vec![Weight::one(); n])
    }

    /// Weights given as `(numerator, denominator)` pairs.
    pub fn from_ratios(ratios: &[(i64, i64)]) -> Result<Self, GraphError> {
        WeightMap::new(ratios.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &Weight {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub(crate) fn get_mut(&mut self, v: usize) -> &mut Weight {
        &mut self.0[v]
    }

    /// `w(x)`, the exact sum over `x`.
    pub fn set_weight(&self, x: &VertexSet) -> Weight {
        x.iter().fold(Weight::zero(), |acc, v| acc + &self.0[v])
    }

    pub fn total(&self) -> Weight {
        self.0.iter().fold(Weight::zero(), |acc, w| acc + w)
    }

    /// Weights of the vertices of an induced subgraph, in local order.
    pub fn restrict(&self, map: &IndexMap) -> WeightMap {
        WeightMap(map.to_old().iter().map(|&v| self.0[v].clone()).collect())
    }

    pub fn zeros(&self) -> VertexSet {
        (0..self.0.len()).filter(|&v| self.0[v].is_zero()).collect()
    }

    /// Multiplies every weight by the least common multiple of the denominators
    /// and returns the resulting integers, if they all fit in an `i128`.
    pub(crate) fn scaled_integers(&self) -> Option<Vec<i128>> {
        use num_integer::Integer;
        let lcm = self.0.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        self.0
            .iter()
            .map(|w| {
                let scaled = w.numer() * (&lcm / w.denom());
                i128::try_from(scaled).ok()
            })
            .collect()
    }
}

/// Convenience constructor for `p/q`.
pub fn ratio(p: i64, q: i64) -> Weight {
    Weight::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a weight as `num/den`, or a bare integer when the denominator is one.
pub fn format_weight(w: &Weight) -> String {
    if w.is_integer() {
        w.numer().to_string()
    } else {
        format!("{}/{}", w.numer(), w.denom())
    }
}

/// Parses `num/den` or a bare integer. Decimals are rejected.
pub fn parse_weight(s: &str) -> Option<Weight> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Weight::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn is_path_graph(g: &Graph) -> bool {
        let n = g.n();
        let degs = g.degrees();
        g.edge_count() + 1 == n
            && degs.iter().filter(|&&d| d == 1).count() == 2
            && degs.iter().all(|&d| d <= 2)
    }

    #[test]
    fn complement_of_triangle_is_empty() {
        let c = Graph::complete(3).complement();
        assert_eq!(c, Graph::empty(3));
    }

    #[test]
    fn c5_is_self_complementary() {
        let c = Graph::cycle(5).complement();
        assert_eq!(c.edge_count(), 5);
        assert!(c.degrees().iter().all(|&d| d == 2));
        // 2-regular on five vertices is necessarily C5
    }

    #[test]
    fn complement_clears_padding_bits() {
        for n in [1, 63, 64, 65, 130] {
            let c = Graph::empty(n).complement();
            assert_eq!(c.edge_count(), n * (n - 1) / 2);
            assert_eq!(c.complement(), Graph::empty(n));
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let c4 = Graph::cycle(4);
        let (p3, map) = c4.induced_subgraph(&set(&[0, 1, 2])).unwrap();
        assert_eq!(p3, Graph::path(3));
        assert_eq!(map.to_old(), &[0, 1, 2]);

        let (same, _) = c4.induced_subgraph(&VertexSet::full(4)).unwrap();
        assert_eq!(same, c4);

        let (none, _) = c4.induced_subgraph(&VertexSet::new()).unwrap();
        assert_eq!(none.n(), 0);

        assert_eq!(
            c4.induced_subgraph(&set(&[1, 7])).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 7, n: 4 }
        );
    }

    #[test]
    fn delete_vertices_examples() {
        let (p4, _) = Graph::cycle(5).delete_vertices(&set(&[0])).unwrap();
        assert!(is_path_graph(&p4));
        assert_eq!(p4.n(), 4);

        let g = Graph::cycle(5);
        assert_eq!(g.delete_vertices(&VertexSet::new()).unwrap().0, g);

        for v in 0..4 {
            let (h, _) = Graph::two_k2().delete_vertices(&set(&[v])).unwrap();
            assert_eq!(h.n(), 3);
            assert_eq!(h.edge_count(), 1);
        }
        assert!(g.delete_vertices(&set(&[5])).is_err());
    }

    #[test]
    fn clique_and_stable_examples() {
        let c4 = Graph::cycle(4);
        assert!(c4.is_clique(&VertexSet::new()).unwrap());
        assert!(c4.is_stable(&VertexSet::new()).unwrap());
        assert!(c4.is_clique(&set(&[0, 1])).unwrap());
        assert!(c4.is_stable(&set(&[0, 2])).unwrap());
        assert!(!c4.is_stable(&set(&[0, 1])).unwrap());
        assert!(c4.is_clique(&set(&[9])).is_err());
    }

    #[test]
    fn set_weight_examples() {
        let w = WeightMap::from_ratios(&[(1, 1), (1, 2), (3, 1)]).unwrap();
        assert_eq!(w.set_weight(&set(&[0, 2])), ratio(4, 1));
        assert_eq!(w.set_weight(&VertexSet::new()), Weight::zero());
        assert_eq!(WeightMap::unit(7).set_weight(&set(&[1, 3, 5])), ratio(3, 1));
    }

    #[test]
    fn negative_weights_rejected() {
        assert_eq!(
            WeightMap::from_ratios(&[(1, 1), (-1, 3)]).unwrap_err(),
            GraphError::NegativeWeight(1)
        );
    }

    #[test]
    fn self_loops_rejected() {
        assert_eq!(
            Graph::from_edges(3, &[(1, 1)]).unwrap_err(),
            GraphError::SelfLoop(1)
        );
    }

    #[test]
    fn weight_text_forms() {
        assert_eq!(parse_weight("3/2"), Some(ratio(3, 2)));
        assert_eq!(parse_weight("4"), Some(ratio(4, 1)));
        assert_eq!(parse_weight("6/4"), Some(ratio(3, 2)));
        assert_eq!(parse_weight("1.5"), None);
        assert_eq!(parse_weight("1/0"), None);
        assert_eq!(format_weight(&ratio(3, 2)), "3/2");
        assert_eq!(format_weight(&ratio(8, 2)), "4");
    }

    #[test]
    fn scaled_integers_preserve_ratios() {
        let w = WeightMap::from_ratios(&[(1, 2), (5, 3), (2, 1)]).unwrap();
        assert_eq!(w.scaled_integers(), Some(vec![3, 10, 12]));
    }
}
