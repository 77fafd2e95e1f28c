//! Split vertex deletion solvers: an exact oracle, the local-ratio 5-approximation
//! and the (2+ε)-approximation that enforces {P_k, co-P_k}-freeness by local ratio
//! and finishes with vertex covers over a clique–stable set separator.

use std::ops::Sub;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GraphError, SolverError};
use crate::graph::{Graph, IndexMap, VertexSet, Weight, WeightMap};
use crate::paths::{choose_k, find_pk_or_copk, PathObstruction, SearchBudget};
use crate::separator::{
    default_min_pair_fraction, exhaustive_separator, recursive_separator, Cut, SeparatorFamily,
    DEFAULT_BASE_SIZE, DEFAULT_EXHAUSTIVE_LIMIT,
};
use crate::split::{
    find_split_partition, small_obstruction_if_not_split, SmallObstruction, SplitCertificate,
};
use crate::vertex_cover::local_ratio_cover;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    Small(SmallObstruction),
    Path(PathObstruction),
}

impl Obstruction {
    pub fn vertices(&self) -> &[usize] {
        match self {
            Obstruction::Small(o) => &o.vertices,
            Obstruction::Path(o) => &o.vertices,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub obstruction: Obstruction,
    pub t: Weight,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalRatioTrace {
    pub layers: Vec<Layer>,
    pub zero_weight_initial: VertexSet,
}

impl LocalRatioTrace {
    /// `residual + Σ t · 1[layer vertices]`, which must equal the original weights.
    pub fn reconstruct(&self, residual: &WeightMap) -> WeightMap {
        let mut w = residual.clone();
        for layer in &self.layers {
            for &v in layer.obstruction.vertices() {
                *w.get_mut(v) += &layer.t;
            }
        }
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Exact,
    FiveApprox,
    TwoPlusEps,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::FiveApprox => "five",
            Algorithm::TwoPlusEps => "tpe",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HittingSetResult {
    pub x: VertexSet,
    /// `w(x)` under the original weights.
    pub weight: Weight,
    pub certificate: SplitCertificate,
    pub trace: LocalRatioTrace,
    /// Weights left after every local-ratio layer (the original weights for the exact solver).
    pub residual: WeightMap,
    pub algorithm: Algorithm,
    pub k_used: Option<usize>,
    pub chosen_cut: Option<Cut>,
    pub family_size: Option<usize>,
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

/// Certificate for `G - x` in ambient ids, or a remaining obstruction.
pub fn verify_hitting_set(g: &Graph, x: &VertexSet) -> Result<SplitCertificate, SolverError> {
    let (rest, map) = g.delete_vertices(x)?;
    match find_split_partition(&rest) {
        Some(cert) => Ok(SplitCertificate {
            clique: map.lift(&cert.clique),
            stable: map.lift(&cert.stable),
        }),
        None => {
            let mut witness =
                small_obstruction_if_not_split(&rest).expect("non-split graphs have an obstruction");
            witness.vertices = map.lift_vec(&witness.vertices);
            Err(SolverError::NotAHittingSet { witness })
        }
    }
}

/// Drops vertices from `x` while it stays a hitting set, trying the heaviest
/// first (ties by higher id). The result is inclusion-minimal.
pub fn prune_minimal(g: &Graph, x: &VertexSet, w: &WeightMap) -> Result<VertexSet, SolverError> {
    check_weights(g, w)?;
    verify_hitting_set(g, x)?;
    let mut order = x.to_vec();
    order.sort_by(|&a, &b| w.get(b).cmp(w.get(a)).then(b.cmp(&a)));
    let mut kept = x.clone();
    for v in order {
        kept.remove(v);
        if verify_hitting_set(g, &kept).is_err() {
            kept.insert(v);
        }
    }
    Ok(kept)
}

/// Positive-weight part of the instance during local ratio.
struct Residual {
    weights: WeightMap,
    x: VertexSet,
    trace: LocalRatioTrace,
}

impl Residual {
    fn new(w: &WeightMap) -> Self {
        let zeros = w.zeros();
        Residual {
            weights: w.clone(),
            x: zeros.clone(),
            trace: LocalRatioTrace {
                layers: Vec::new(),
                zero_weight_initial: zeros,
            },
        }
    }

    fn graph(&self, g: &Graph) -> (Graph, IndexMap) {
        g.delete_vertices(&self.x).expect("x stays in range")
    }

    /// Subtracts the minimum residual weight over the obstruction (ambient ids).
    fn apply(&mut self, obstruction: Obstruction) {
        let vs = obstruction.vertices();
        let t = vs
            .iter()
            .map(|&v| self.weights.get(v))
            .min()
            .expect("obstructions are nonempty")
            .clone();
        debug_assert!(t.is_positive());
        for &v in vs {
            let r = self.weights.get_mut(v);
            *r -= &t;
            if r.is_zero() {
                self.x.insert(v);
            }
        }
        self.trace.layers.push(Layer { obstruction, t });
    }
}

/// The local-ratio 5-approximation over induced `2K2`, `C4` and `C5`.
pub fn five_approx(g: &Graph, w: &WeightMap, prune: bool) -> Result<HittingSetResult, SolverError> {
    check_weights(g, w)?;
    let mut res = Residual::new(w);
    loop {
        let (rest, map) = res.graph(g);
        let Some(mut obs) = small_obstruction_if_not_split(&rest) else {
            break;
        };
        obs.vertices = map.lift_vec(&obs.vertices);
        res.apply(Obstruction::Small(obs));
    }
    finish(g, w, res, Algorithm::FiveApprox, prune, None, None, None)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    g: &Graph,
    w: &WeightMap,
    res: Residual,
    algorithm: Algorithm,
    prune: bool,
    k_used: Option<usize>,
    chosen_cut: Option<Cut>,
    family_size: Option<usize>,
) -> Result<HittingSetResult, SolverError> {
    let x = if prune {
        prune_minimal(g, &res.x, w)?
    } else {
        res.x
    };
    let certificate = verify_hitting_set(g, &x)?;
    Ok(HittingSetResult {
        weight: w.set_weight(&x),
        x,
        certificate,
        trace: res.trace,
        residual: res.weights,
        algorithm,
        k_used,
        chosen_cut,
        family_size,
    })
}

/// How the separator family of the final stage is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeparatorStrategy {
    Exhaustive {
        limit: usize,
    },
    Recursive {
        base_size: usize,
        min_pair_fraction: BigRational,
    },
}

impl SeparatorStrategy {
    pub fn exhaustive() -> Self {
        SeparatorStrategy::Exhaustive {
            limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }

    pub fn recursive() -> Self {
        SeparatorStrategy::Recursive {
            base_size: DEFAULT_BASE_SIZE,
            min_pair_fraction: default_min_pair_fraction(),
        }
    }

    pub fn build(&self, g: &Graph) -> Result<SeparatorFamily, SolverError> {
        match self {
            SeparatorStrategy::Exhaustive { limit } => exhaustive_separator(g, *limit),
            SeparatorStrategy::Recursive {
                base_size,
                min_pair_fraction,
            } => Ok(recursive_separator(g, *base_size, min_pair_fraction)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPlusEpsOptions {
    pub epsilon: BigRational,
    pub separator: SeparatorStrategy,
    pub budget: SearchBudget,
    pub prune: bool,
}

impl TwoPlusEpsOptions {
    pub fn new(epsilon: BigRational, separator: SeparatorStrategy) -> Self {
        TwoPlusEpsOptions {
            epsilon,
            separator,
            budget: SearchBudget::default(),
            prune: false,
        }
    }
}

/// Best cut of the family: vertex covers of the complement of `G[A]` and of `G[B]`,
/// minimized by total weight then cut index.
fn best_cut<W>(g: &Graph, weights: &[W], family: &SeparatorFamily) -> (usize, VertexSet)
where
    W: Clone + Ord + Zero + Send + Sync,
    for<'a> &'a W: Sub<&'a W, Output = W>,
{
    let evaluate = |cut: &Cut| -> (W, VertexSet) {
        let mut total = W::zero();
        let mut hit = VertexSet::new();
        for (side, complement) in [(&cut.a, true), (&cut.b, false)] {
            let vs = side.to_vec();
            let mut sub = g.induced_by_sorted(&vs);
            if complement {
                sub = sub.complement();
            }
            let ws: Vec<W> = vs.iter().map(|&v| weights[v].clone()).collect();
            for i in local_ratio_cover(&sub, &ws) {
                total = total + ws[i].clone();
                hit.insert(vs[i]);
            }
        }
        (total, hit)
    };
    let (index, (_, hit)) = family
        .cuts
        .par_iter()
        .enumerate()
        .map(|(i, cut)| (i, evaluate(cut)))
        .min_by(|(i, (wi, _)), (j, (wj, _))| wi.cmp(wj).then(i.cmp(j)))
        .expect("separator families are nonempty");
    (index, hit)
}

/// Deterministic (2+ε)-approximation.
///
/// Zero-weight vertices are deleted, then induced `P_k` and co-`P_k` are removed
/// by local ratio with `k` the smallest value satisfying `2k/(k-4) <= 2+ε`.
/// On the positive-weight residual a separator family is built, and for each cut
/// `(A, B)` a 2-approximate cover of the complement of `G[A]` plus one of `G[B]`
/// is computed; the cheapest pair is added.
pub fn two_plus_eps(
    g: &Graph,
    w: &WeightMap,
    opts: &TwoPlusEpsOptions,
) -> Result<HittingSetResult, SolverError> {
    check_weights(g, w)?;
    let k = choose_k(&opts.epsilon)?;
    let mut res = Residual::new(w);
    loop {
        let (rest, map) = res.graph(g);
        if k > rest.n() {
            break;
        }
        match find_pk_or_copk(&rest, k, opts.budget) {
            Ok(Some(mut path)) => {
                path.vertices = map.lift_vec(&path.vertices);
                res.apply(Obstruction::Path(path));
            }
            Ok(None) => break,
            Err(err @ SolverError::BudgetExceeded { .. }) => {
                if find_split_partition(&rest).is_some() {
                    return finish(g, w, res, Algorithm::TwoPlusEps, opts.prune, Some(k), None, None);
                }
                return Err(err);
            }
            Err(err) => return Err(err),
        }
    }

    let (rest, map) = res.graph(g);
    let family = opts.separator.build(&rest)?;
    let local = res.weights.restrict(&map);
    // scaling to integers preserves every comparison the covers make
    let (index, hit) = match local.scaled_integers() {
        Some(ints) => best_cut(&rest, &ints, &family),
        None => best_cut(&rest, local.as_slice(), &family),
    };
    res.x.extend(map.lift(&hit).iter());
    let cut = &family.cuts[index];
    let chosen = Cut {
        a: map.lift(&cut.a),
        b: map.lift(&cut.b),
    };
    let size = family.cuts.len();
    finish(
        g,
        w,
        res,
        Algorithm::TwoPlusEps,
        opts.prune,
        Some(k),
        Some(chosen),
        Some(size),
    )
}

pub const DEFAULT_EXACT_SVD_LIMIT: usize = 20;

/// Branch and bound over small obstructions of `G - x`, with `forbidden`
/// vertices never deleted.
struct ExactSvd<'a> {
    g: &'a Graph,
    w: &'a WeightMap,
}

impl ExactSvd<'_> {
    fn obstruction(&self, x: &VertexSet) -> Option<Vec<usize>> {
        let (rest, map) = self.g.delete_vertices(x).expect("in range");
        small_obstruction_if_not_split(&rest).map(|o| map.lift_vec(&o.vertices))
    }

    /// Weight of a packing of vertex-disjoint obstructions, each charged its
    /// lightest deletable vertex; `None` if some obstruction is fully forbidden.
    fn lower_bound(&self, x: &VertexSet, forbidden: &[bool]) -> Option<Weight> {
        let mut removed = x.clone();
        let mut lb = Weight::zero();
        while let Some(obs) = self.obstruction(&removed) {
            let cheapest = obs
                .iter()
                .filter(|&&v| !forbidden[v])
                .map(|&v| self.w.get(v))
                .min()?;
            lb += cheapest;
            removed.extend(obs);
        }
        Some(lb)
    }

    /// Minimum weight of a hitting set extending `x` and avoiding `forbidden`,
    /// or `None` if none costs at most `cap` (strictly less when `strict`).
    fn search(
        &self,
        x: &mut VertexSet,
        weight: &Weight,
        forbidden: &mut Vec<bool>,
        cap: &mut Option<Weight>,
        strict: bool,
        best: &mut Option<VertexSet>,
    ) {
        let Some(lb) = self.lower_bound(x, forbidden) else {
            return;
        };
        if let Some(c) = cap.as_ref() {
            let bound = weight + &lb;
            if bound > *c || (strict && bound == *c) {
                return;
            }
        }
        let Some(obs) = self.obstruction(x) else {
            *cap = Some(weight.clone());
            *best = Some(x.clone());
            return;
        };
        let mut newly_forbidden = Vec::new();
        for &v in &obs {
            if forbidden[v] {
                continue;
            }
            x.insert(v);
            self.search(x, &(weight + self.w.get(v)), forbidden, cap, strict, best);
            x.remove(v);
            if best.is_some() && !strict {
                break;
            }
            // later branches keep v, so each hitting set is reached once
            forbidden[v] = true;
            newly_forbidden.push(v);
        }
        for v in newly_forbidden {
            forbidden[v] = false;
        }
    }

    fn optimum(&self) -> Weight {
        let mut cap = None;
        let mut best = None;
        self.search(
            &mut VertexSet::new(),
            &Weight::zero(),
            &mut vec![false; self.g.n()],
            &mut cap,
            true,
            &mut best,
        );
        cap.expect("deleting everything is a hitting set")
    }

    /// Whether some hitting set containing `forced`, avoiding `forbidden`, weighs at most `opt`.
    fn feasible(&self, forced: &VertexSet, forbidden: &[bool], opt: &Weight) -> bool {
        let mut cap = Some(opt.clone());
        let mut best = None;
        let weight = self.w.set_weight(forced);
        if weight > *opt {
            return false;
        }
        self.search(
            &mut forced.clone(),
            &weight,
            &mut forbidden.to_vec(),
            &mut cap,
            false,
            &mut best,
        );
        best.is_some()
    }
}

/// Minimum-weight hitting set. Ties go to the lexicographically least optimal set.
pub fn exact_svd(g: &Graph, w: &WeightMap, limit: usize) -> Result<HittingSetResult, SolverError> {
    check_weights(g, w)?;
    if g.n() > limit {
        return Err(SolverError::InstanceTooLarge {
            what: "exact split vertex deletion",
            n: g.n(),
            limit,
        });
    }
    let solver = ExactSvd { g, w };
    let opt = solver.optimum();

    // fix membership vertex by vertex in increasing id order
    let mut forced = VertexSet::new();
    let mut forbidden = vec![false; g.n()];
    for v in 0..g.n() {
        if w.set_weight(&forced) == opt && solver.obstruction(&forced).is_none() {
            break;
        }
        forced.insert(v);
        if !solver.feasible(&forced, &forbidden, &opt) {
            forced.remove(v);
            forbidden[v] = true;
        }
    }
    debug_assert_eq!(w.set_weight(&forced), opt);
    let certificate = verify_hitting_set(g, &forced)?;
    Ok(HittingSetResult {
        weight: opt,
        x: forced,
        certificate,
        trace: LocalRatioTrace::default(),
        residual: w.clone(),
        algorithm: Algorithm::Exact,
        k_used: None,
        chosen_cut: None,
        family_size: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ratio;
    use crate::split::is_split;

    fn brute_force_opt(g: &Graph, w: &WeightMap) -> (Weight, VertexSet) {
        (0u32..1 << g.n())
            .map(|m| (0..g.n()).filter(|&v| m >> v & 1 == 1).collect::<VertexSet>())
            .filter(|x| is_split(&g.delete_vertices(x).unwrap().0))
            .map(|x| (w.set_weight(&x), x))
            .min()
            .unwrap()
    }

    fn tpe_exhaustive(eps: (i64, i64)) -> TwoPlusEpsOptions {
        TwoPlusEpsOptions::new(ratio(eps.0, eps.1), SeparatorStrategy::exhaustive())
    }

    #[test]
    fn exact_examples() {
        let r = exact_svd(&Graph::path(4), &WeightMap::unit(4), 20).unwrap();
        assert!(r.x.is_empty());
        assert!(r.weight.is_zero());
        let r = exact_svd(&Graph::cycle(4), &WeightMap::unit(4), 20).unwrap();
        assert_eq!(r.weight, ratio(1, 1));
        assert_eq!(r.x, VertexSet::from([0]));
        // P6 - {1} is an isolated vertex plus P4, which is split
        let p6 = exact_svd(&Graph::path(6), &WeightMap::unit(6), 20).unwrap();
        assert_eq!(p6.weight, brute_force_opt(&Graph::path(6), &WeightMap::unit(6)).0);
        assert_eq!(p6.weight, ratio(1, 1));
        assert_eq!(
            exact_svd(&Graph::path(7), &WeightMap::unit(7), 20)
                .unwrap()
                .weight,
            ratio(2, 1)
        );
        assert!(exact_svd(&Graph::empty(21), &WeightMap::unit(21), 20).is_err());
    }

    #[test]
    fn exact_matches_brute_force_with_lex_ties() {
        let g = Graph::from_edges(7, &[(0, 1), (2, 3), (4, 5), (5, 6), (6, 4), (1, 4), (3, 6)]).unwrap();
        for w in [
            WeightMap::unit(7),
            WeightMap::from_ratios(&[(1, 2), (5, 3), (2, 1), (1, 1), (3, 1), (1, 2), (1, 1)]).unwrap(),
            WeightMap::from_ratios(&[(0, 1), (1, 1), (1, 1), (0, 1), (1, 1), (2, 1), (1, 1)]).unwrap(),
        ] {
            let (opt, lex) = brute_force_opt(&g, &w);
            let r = exact_svd(&g, &w, 20).unwrap();
            assert_eq!(r.weight, opt);
            assert_eq!(r.x, lex);
        }
    }

    #[test]
    fn five_approx_examples() {
        let r = five_approx(&Graph::path(4), &WeightMap::unit(4), false).unwrap();
        assert!(r.x.is_empty());
        let r = five_approx(&Graph::cycle(4), &WeightMap::unit(4), false).unwrap();
        assert_eq!(r.x, VertexSet::full(4));
        assert_eq!(r.weight, ratio(4, 1));
        assert_eq!(r.trace.layers.len(), 1);
        let r = five_approx(&Graph::cycle(4), &WeightMap::unit(4), true).unwrap();
        assert_eq!(r.weight, ratio(1, 1));
    }

    #[test]
    fn zero_weight_vertices_are_free() {
        let w = WeightMap::from_ratios(&[(0, 1), (1, 1), (1, 1), (1, 1)]).unwrap();
        let r = five_approx(&Graph::cycle(4), &w, false).unwrap();
        assert_eq!(r.x, VertexSet::from([0]));
        assert!(r.weight.is_zero());
        assert_eq!(r.trace.zero_weight_initial, VertexSet::from([0]));
        let r = two_plus_eps(&Graph::cycle(4), &w, &tpe_exhaustive((1, 1))).unwrap();
        assert!(r.weight.is_zero());
    }

    #[test]
    fn tpe_split_graph_is_untouched() {
        let g = Graph::complete(5);
        let r = two_plus_eps(&g, &WeightMap::unit(5), &tpe_exhaustive((1, 1))).unwrap();
        assert!(r.x.is_empty());
        assert_eq!(r.k_used, Some(12));
    }

    #[test]
    fn tpe_c4_best_cut() {
        let r = two_plus_eps(&Graph::cycle(4), &WeightMap::unit(4), &tpe_exhaustive((1, 1))).unwrap();
        assert!(r.weight <= ratio(2, 1));
        assert!(r.trace.layers.is_empty());
        assert_eq!(r.family_size, Some(16));
    }

    #[test]
    fn tpe_p12_layer() {
        let g = Graph::path(12);
        let r = two_plus_eps(&g, &WeightMap::unit(12), &tpe_exhaustive((1, 1))).unwrap();
        assert_eq!(r.trace.layers.len(), 1);
        assert_eq!(r.x, VertexSet::full(12));
        let opt = exact_svd(&g, &WeightMap::unit(12), 20).unwrap().weight;
        assert!(r.weight <= ratio(3, 1) * opt);
        assert_eq!(r.trace.reconstruct(&r.residual), WeightMap::unit(12));
    }

    #[test]
    fn tpe_budget_failure_is_loud() {
        let g = Graph::cycle(40);
        let mut opts = TwoPlusEpsOptions::new(ratio(1, 1), SeparatorStrategy::recursive());
        opts.budget = SearchBudget::new(2);
        assert!(matches!(
            two_plus_eps(&g, &WeightMap::unit(40), &opts),
            Err(SolverError::BudgetExceeded { .. })
        ));
        // a split residual is still answered
        let g = Graph::complete(40);
        assert!(two_plus_eps(&g, &WeightMap::unit(40), &opts)
            .unwrap()
            .x
            .is_empty());
    }

    #[test]
    fn prune_examples() {
        let c4 = Graph::cycle(4);
        let w = WeightMap::unit(4);
        assert_eq!(prune_minimal(&c4, &VertexSet::full(4), &w).unwrap().len(), 1);
        assert_eq!(
            prune_minimal(&c4, &VertexSet::from([2]), &w).unwrap(),
            VertexSet::from([2])
        );
        assert!(
            prune_minimal(&Graph::path(3), &VertexSet::new(), &WeightMap::unit(3))
                .unwrap()
                .is_empty()
        );
        assert!(matches!(
            prune_minimal(&c4, &VertexSet::new(), &w),
            Err(SolverError::NotAHittingSet { .. })
        ));
    }

    #[test]
    fn verify_hitting_set_examples() {
        let c5 = Graph::cycle(5);
        for v in 0..5 {
            let cert = verify_hitting_set(&c5, &VertexSet::from([v])).unwrap();
            assert!(!cert.clique.contains(v) && !cert.stable.contains(v));
            assert_eq!(cert.clique.len() + cert.stable.len(), 4);
        }
        match verify_hitting_set(&c5, &VertexSet::new()) {
            Err(SolverError::NotAHittingSet { witness }) => {
                assert_eq!(witness.kind, crate::split::SmallObstructionKind::C5)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify_hitting_set(&Graph::two_k2(), &VertexSet::from([3])).is_ok());
    }
}
