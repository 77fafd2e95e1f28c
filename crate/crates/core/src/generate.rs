//! Seeded instance generators.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{format_weight, parse_weight, ratio, Graph, VertexSet, Weight, WeightMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator parameters: {0}")]
pub struct GenError(pub String);

pub(crate) mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_weight(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_weight(&s).ok_or_else(|| serde::de::Error::custom(format!("invalid rational `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    /// Erdős–Rényi `G(n, p)`.
    Er {
        n: usize,
        #[serde(with = "rational_str")]
        p: BigRational,
    },
    /// A split graph on `n_clique + n_stable` vertices plus `n_extra` vertices
    /// joined to every other vertex independently with probability `noise`.
    PlantedSplit {
        n_clique: usize,
        n_stable: usize,
        n_extra: usize,
        #[serde(with = "rational_str")]
        noise: BigRational,
    },
    Path {
        k: usize,
    },
    Cycle {
        k: usize,
    },
    TwoK2,
}

impl GenKind {
    pub fn label(&self) -> String {
        match self {
            GenKind::Er { n, p } => format!("er(n={n},p={})", format_weight(p)),
            GenKind::PlantedSplit {
                n_clique,
                n_stable,
                n_extra,
                noise,
            } => format!(
                "planted_split(k={n_clique},s={n_stable},x={n_extra},noise={})",
                format_weight(noise)
            ),
            GenKind::Path { k } => format!("path(k={k})"),
            GenKind::Cycle { k } => format!("cycle(k={k})"),
            GenKind::TwoK2 => "two_k2".to_owned(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GenKind::Er { n, .. } => *n,
            GenKind::PlantedSplit {
                n_clique,
                n_stable,
                n_extra,
                ..
            } => n_clique + n_stable + n_extra,
            GenKind::Path { k } | GenKind::Cycle { k } => *k,
            GenKind::TwoK2 => 4,
        }
    }
}

/// How vertex weights are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightScheme {
    #[default]
    Unit,
    /// Uniform over `{1, 1/2, 2, 3, 5/3}`.
    Palette,
}

pub fn weight_palette() -> [Weight; 5] {
    [ratio(1, 1), ratio(1, 2), ratio(2, 1), ratio(3, 1), ratio(5, 3)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub weights: WeightMap,
    pub label: String,
    pub seed: u64,
    /// A known hitting set, when the generator plants one.
    pub planted: Option<VertexSet>,
}

fn probability(p: &BigRational, what: &str) -> Result<(u64, u64), GenError> {
    if p.is_negative() || *p > BigRational::one() {
        return Err(GenError(format!("{what} must lie in [0, 1]")));
    }
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(GenError(format!("{what} has too large a denominator"))),
    }
}

fn coin(rng: &mut ChaCha8Rng, (num, den): (u64, u64)) -> bool {
    rng.gen_range(0..den) < num
}

/// Builds the instance described by `kind`; identical `(kind, scheme, seed)` give identical output.
pub fn gen_instance(kind: &GenKind, scheme: WeightScheme, seed: u64) -> Result<Instance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planted = None;
    let graph = match kind {
        GenKind::Er { n, p } => {
            let p = probability(p, "p")?;
            let mut g = Graph::empty(*n);
            for u in 0..*n {
                for v in u + 1..*n {
                    if coin(&mut rng, p) {
                        g.add_edge(u, v).expect("in range");
                    }
                }
            }
            g
        }
        GenKind::PlantedSplit {
            n_clique,
            n_stable,
            n_extra,
            noise,
        } => {
            let q = probability(noise, "noise")?;
            let core = n_clique + n_stable;
            let n = core + n_extra;
            let mut labels: Vec<usize> = (0..n).collect();
            labels.shuffle(&mut rng);
            let mut g = Graph::empty(n);
            for u in 0..*n_clique {
                for v in u + 1..*n_clique {
                    g.add_edge(labels[u], labels[v]).expect("in range");
                }
                for v in *n_clique..core {
                    if rng.gen::<bool>() {
                        g.add_edge(labels[u], labels[v]).expect("in range");
                    }
                }
            }
            for x in core..n {
                for v in 0..x {
                    if coin(&mut rng, q) {
                        g.add_edge(labels[x], labels[v]).expect("in range");
                    }
                }
            }
            planted = Some(if noise.is_zero() {
                VertexSet::new()
            } else {
                labels[core..].iter().copied().collect()
            });
            g
        }
        GenKind::Path { k } => Graph::path(*k),
        GenKind::Cycle { k } => {
            if *k < 3 {
                return Err(GenError("cycles need k >= 3".to_owned()));
            }
            Graph::cycle(*k)
        }
        GenKind::TwoK2 => Graph::two_k2(),
    };
    let weights = match scheme {
        WeightScheme::Unit => WeightMap::unit(graph.n()),
        WeightScheme::Palette => {
            let palette = weight_palette();
            WeightMap::new(
                (0..graph.n())
                    .map(|_| palette[rng.gen_range(0..palette.len())].clone())
                    .collect(),
            )
            .expect("palette weights are positive")
        }
    };
    Ok(Instance {
        graph,
        weights,
        label: kind.label(),
        seed,
        planted,
    })
}
