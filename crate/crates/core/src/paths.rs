//! Induced paths `P_k` in a graph or its complement, and the choice of `k` from epsilon.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::SolverError;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PathKind {
    Pk,
    CoPk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathObstruction {
    pub kind: PathKind,
    pub vertices: Vec<usize>,
}

impl PathObstruction {
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Independent pattern check: consecutive pairs adjacent, all other pairs not
    /// (in `g` for `Pk`, in the complement for `CoPk`).
    pub fn verify(&self, g: &Graph) -> bool {
        let flip = self.kind == PathKind::CoPk;
        is_induced_path(g, &self.vertices, flip)
    }
}

pub(crate) fn is_induced_path(g: &Graph, vs: &[usize], in_complement: bool) -> bool {
    if vs.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut edges = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] == vs[j] {
                return false;
            }
            let adj = g.has_edge(vs[i], vs[j]) != in_complement;
            if adj {
                if j != i + 1 {
                    return false;
                }
                edges += 1;
            }
        }
    }
    edges + 1 == vs.len().max(1)
}

/// Upper limit on the number of search-tree nodes an induced path search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    max_nodes: u64,
}

impl SearchBudget {
    pub const DEFAULT_NODES: u64 = 10_000_000;

    pub fn new(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
        }
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(Self::DEFAULT_NODES)
    }
}

/// Smallest `k >= 5` with `2k / (k - 4) <= 2 + epsilon`, checked exactly.
pub fn choose_k(epsilon: &BigRational) -> Result<usize, SolverError> {
    if !epsilon.is_positive() {
        return Err(SolverError::NonPositiveEpsilon);
    }
    let four = BigRational::from_integer(4.into());
    let eight = BigRational::from_integer(8.into());
    let guess = (four + eight / epsilon).ceil().to_integer();
    let mut k = guess.to_usize().unwrap_or(usize::MAX).max(5);
    while !k_satisfies(k, epsilon) {
        k += 1;
    }
    while k > 5 && k_satisfies(k - 1, epsilon) {
        k -= 1;
    }
    Ok(k)
}

/// `2k / (k - 4) <= 2 + epsilon`, false for `k <= 4`.
pub fn k_satisfies(k: usize, epsilon: &BigRational) -> bool {
    if k <= 4 {
        return false;
    }
    let lhs = BigRational::new((2 * k).into(), (k - 4).into());
    let rhs = BigRational::from_integer(2.into()) + epsilon;
    !epsilon.is_zero() && lhs <= rhs
}

struct PathSearch<'a> {
    g: &'a Graph,
    k: usize,
    nodes: u64,
    max_nodes: u64,
    path: Vec<usize>,
    // blocked[v] counts path vertices other than the tail adjacent to or equal to v
    blocked: Vec<u32>,
}

impl PathSearch<'_> {
    fn tick(&mut self) -> Result<(), SolverError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(SolverError::BudgetExceeded {
                max_nodes: self.max_nodes,
            })
        } else {
            Ok(())
        }
    }

    fn block(&mut self, v: usize, delta: i32) {
        self.blocked[v] = (self.blocked[v] as i32 + delta) as u32;
        for u in self.g.neighbors(v) {
            self.blocked[u] = (self.blocked[u] as i32 + delta) as u32;
        }
    }

    /// Vertices reachable from the tail through unblocked vertices, capped at `need`.
    fn reachable_at_least(&self, need: usize) -> bool {
        let tail = *self.path.last().unwrap();
        let n = self.g.n();
        let mut seen = vec![false; n];
        seen[tail] = true;
        let mut stack = vec![tail];
        let mut count = 0;
        while let Some(u) = stack.pop() {
            for v in self.g.neighbors(u) {
                if !seen[v] && self.blocked[v] == 0 && !self.path.contains(&v) {
                    seen[v] = true;
                    count += 1;
                    if count >= need {
                        return true;
                    }
                    stack.push(v);
                }
            }
        }
        false
    }

    fn extend(&mut self) -> Result<bool, SolverError> {
        self.tick()?;
        let len = self.path.len();
        let start = self.path[0];
        let tail = self.path[len - 1];
        if len == self.k {
            return Ok(self.k == 1 || tail > start);
        }
        if !self.reachable_at_least(self.k - len) {
            return Ok(false);
        }
        let candidates: Vec<usize> = self
            .g
            .neighbors(tail)
            .filter(|&v| self.blocked[v] == 0 && !self.path.contains(&v))
            .collect();
        for v in candidates {
            if len + 1 == self.k && self.k > 1 && v < start {
                continue;
            }
            // the old tail becomes interior: its neighborhood is now off limits
            self.block(tail, 1);
            self.path.push(v);
            if self.extend()? {
                return Ok(true);
            }
            self.path.pop();
            self.block(tail, -1);
        }
        Ok(false)
    }
}

/// Depth-first search for an induced path on `k` vertices.
///
/// Returns `Ok(None)` only after the search tree has been exhausted. Paths are
/// reported from the smaller endpoint; the first one found in increasing
/// extension order wins.
pub fn find_induced_path(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<Option<Vec<usize>>, SolverError> {
    assert!(k >= 1, "path order must be positive");
    if k > g.n() {
        return Ok(None);
    }
    let mut search = PathSearch {
        g,
        k,
        nodes: 0,
        max_nodes: budget.max_nodes(),
        path: Vec::with_capacity(k),
        blocked: vec![0; g.n()],
    };
    for start in 0..g.n() {
        search.path.clear();
        search.path.push(start);
        if search.extend()? {
            return Ok(Some(search.path));
        }
    }
    Ok(None)
}

/// Searches for an induced `P_k` in `g`, then in the complement of `g`.
pub fn find_pk_or_copk(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<Option<PathObstruction>, SolverError> {
    if let Some(vertices) = find_induced_path(g, k, budget)? {
        return Ok(Some(PathObstruction {
            kind: PathKind::Pk,
            vertices,
        }));
    }
    Ok(
        find_induced_path(&g.complement(), k, budget)?.map(|vertices| PathObstruction {
            kind: PathKind::CoPk,
            vertices,
        }),
    )
}
