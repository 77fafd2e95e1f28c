//! Weighted vertex cover: local-ratio 2-approximation and an exact branch and bound.

use std::ops::Sub;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{GraphError, SolverError};
use crate::graph::{Graph, VertexSet, Weight, WeightMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverMethod {
    TwoApprox,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub cover: VertexSet,
    pub weight: Weight,
    pub method: CoverMethod,
}

pub fn is_vertex_cover(g: &Graph, cover: &VertexSet) -> bool {
    g.edges().all(|(u, v)| cover.contains(u) || cover.contains(v))
}

fn check_weights(g: &Graph, w: &WeightMap) -> Result<(), GraphError> {
    if w.len() != g.n() {
        return Err(GraphError::WeightLength {
            weights: w.len(),
            n: g.n(),
        });
    }
    Ok(())
}

/// Local ratio over edges in lexicographic order, then reverse-delete.
pub(crate) fn local_ratio_cover<W>(g: &Graph, weights: &[W]) -> Vec<usize>
where
    W: Clone + Ord + Zero,
    for<'a> &'a W: Sub<&'a W, Output = W>,
{
    let mut residual = weights.to_vec();
    for (u, v) in g.edges() {
        if residual[u].is_zero() || residual[v].is_zero() {
            continue;
        }
        let t = residual[u].clone().min(residual[v].clone());
        residual[u] = &residual[u] - &t;
        residual[v] = &residual[v] - &t;
    }
    let mut in_cover: Vec<bool> = residual.iter().map(Zero::is_zero).collect();

    let mut order: Vec<usize> = (0..g.n()).filter(|&v| in_cover[v]).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(b.cmp(&a)));
    for v in order {
        if g.neighbors(v).all(|u| in_cover[u]) {
            in_cover[v] = false;
        }
    }
    (0..g.n()).filter(|&v| in_cover[v]).collect()
}

/// Weighted 2-approximate vertex cover, inclusion-minimal and deterministic.
pub fn vc_two_approx(g: &Graph, w: &WeightMap) -> Result<CoverResult, GraphError> {
    check_weights(g, w)?;
    // integer weights give identical decisions, since scaling preserves every comparison
    let cover: VertexSet = match w.scaled_integers() {
        Some(ints) => local_ratio_cover(g, &ints),
        None => local_ratio_cover(g, w.as_slice()),
    }
    .into_iter()
    .collect();
    Ok(CoverResult {
        weight: w.set_weight(&cover),
        cover,
        method: CoverMethod::TwoApprox,
    })
}

pub const DEFAULT_EXACT_VC_LIMIT: usize = 24;

struct ExactVc<'a> {
    g: &'a Graph,
    w: &'a [Weight],
    best: Option<(Weight, Vec<usize>)>,
}

impl ExactVc<'_> {
    /// Disjoint edges among undecided vertices, each charged its lighter endpoint.
    fn lower_bound(&self, undecided: &[bool]) -> Weight {
        let mut used = vec![false; self.g.n()];
        let mut lb = Weight::zero();
        for (u, v) in self.g.edges() {
            if undecided[u] && undecided[v] && !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                lb += self.w[u].clone().min(self.w[v].clone());
            }
        }
        lb
    }

    fn better(&self, weight: &Weight, cover: &[usize]) -> bool {
        match &self.best {
            None => true,
            Some((bw, bc)) => weight < bw || (weight == bw && cover < bc.as_slice()),
        }
    }

    fn search(&mut self, undecided: &mut Vec<bool>, chosen: &mut Vec<usize>, weight: Weight) {
        if let Some((bw, _)) = &self.best {
            if &weight + self.lower_bound(undecided) > *bw {
                return;
            }
        }
        let pick = (0..self.g.n())
            .filter(|&v| undecided[v])
            .map(|v| (self.g.neighbors(v).filter(|&u| undecided[u]).count(), v))
            .filter(|&(d, _)| d > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        let Some((_, v)) = pick else {
            let mut cover = chosen.clone();
            cover.sort_unstable();
            if self.better(&weight, &cover) {
                self.best = Some((weight, cover));
            }
            return;
        };

        // v in the cover
        undecided[v] = false;
        chosen.push(v);
        self.search(undecided, chosen, &weight + &self.w[v]);
        chosen.pop();

        // v out: all its undecided neighbors in
        let nbrs: Vec<usize> = self.g.neighbors(v).filter(|&u| undecided[u]).collect();
        let mut extra = Weight::zero();
        for &u in &nbrs {
            undecided[u] = false;
            chosen.push(u);
            extra += &self.w[u];
        }
        self.search(undecided, chosen, weight + extra);
        for &u in &nbrs {
            undecided[u] = true;
            chosen.pop();
        }
        undecided[v] = true;
    }
}

/// Minimum-weight vertex cover by branching on a maximum-degree vertex.
///
/// Ties go to the lexicographically least cover among those the branching
/// produces; these are exactly the inclusion-minimal optima when all weights
/// are positive.
pub fn vc_exact(g: &Graph, w: &WeightMap, limit: usize) -> Result<CoverResult, SolverError> {
    check_weights(g, w)?;
    if g.n() > limit {
        return Err(SolverError::InstanceTooLarge {
            what: "exact vertex cover",
            n: g.n(),
            limit,
        });
    }
    let mut solver = ExactVc {
        g,
        w: w.as_slice(),
        best: None,
    };
    solver.search(&mut vec![true; g.n()], &mut Vec::new(), Weight::zero());
    let (weight, cover) = solver.best.expect("the full vertex set is always a cover");
    Ok(CoverResult {
        cover: cover.into_iter().collect(),
        weight,
        method: CoverMethod::Exact,
    })
}
