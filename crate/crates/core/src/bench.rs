//! Experiment runner: generate instances, run solvers, compare against the exact
//! oracle and emit deterministic CSV/JSON reports.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{gen_instance, rational_str, GenKind, Instance, WeightScheme};
use crate::graph::{format_weight, Weight};
use crate::paths::{choose_k, SearchBudget};
use crate::separator::{DEFAULT_BASE_SIZE, DEFAULT_EXHAUSTIVE_LIMIT};
use crate::solver::{
    exact_svd, five_approx, two_plus_eps, HittingSetResult, SeparatorStrategy, TwoPlusEpsOptions,
};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bench config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bench config: {0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatorChoice {
    #[default]
    Exhaustive,
    Recursive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub kind: GenKind,
    #[serde(default)]
    pub weights: WeightScheme,
}

fn default_algorithms() -> Vec<String> {
    vec!["exact".into(), "five".into(), "tpe".into()]
}

fn default_epsilons() -> Vec<BigRational> {
    vec![BigRational::one()]
}

fn default_exact_limit() -> usize {
    16
}

fn default_budget() -> u64 {
    SearchBudget::DEFAULT_NODES
}

mod rational_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_weight))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "rational_str")] BigRational);
        Ok(Vec::<Wrap>::deserialize(d)?.into_iter().map(|w| w.0).collect())
    }
}

/// Bench configuration, usually read from TOML.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub seeds: Vec<u64>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<String>,
    #[serde(default = "default_epsilons", with = "rational_list")]
    pub epsilons: Vec<BigRational>,
    #[serde(default)]
    pub separator: SeparatorChoice,
    /// The exact oracle runs only on instances with at most this many vertices.
    #[serde(default = "default_exact_limit")]
    pub exact_limit: usize,
    #[serde(default)]
    pub prune: bool,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Wall-clock timings make reports non-reproducible, so they are opt-in.
    #[serde(default)]
    pub timing: bool,
    pub instances: Vec<InstanceSpec>,
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: BenchConfig = toml::from_str(text)?;
        for a in &cfg.algorithms {
            if !matches!(a.as_str(), "exact" | "five" | "tpe") {
                return Err(ConfigError::Invalid(format!("unknown algorithm `{a}`")));
            }
        }
        for e in &cfg.epsilons {
            choose_k(e).map_err(|err| ConfigError::Invalid(err.to_string()))?;
        }
        if cfg.seeds.is_empty() {
            return Err(ConfigError::Invalid("no seeds".into()));
        }
        Ok(cfg)
    }

    fn strategy(&self) -> SeparatorStrategy {
        match self.separator {
            SeparatorChoice::Exhaustive => SeparatorStrategy::Exhaustive {
                limit: DEFAULT_EXHAUSTIVE_LIMIT,
            },
            SeparatorChoice::Recursive => SeparatorStrategy::Recursive {
                base_size: DEFAULT_BASE_SIZE,
                min_pair_fraction: crate::separator::default_min_pair_fraction(),
            },
        }
    }
}

/// One row of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentRecord {
    pub instance: String,
    pub generator: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub algorithm: String,
    pub epsilon: Option<String>,
    pub k: Option<usize>,
    pub weight: Option<String>,
    pub exact: Option<String>,
    pub ratio: Option<String>,
    pub planted: Option<String>,
    pub family_size: Option<usize>,
    pub runtime_ms: Option<String>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgorithmSummary {
    pub rows: usize,
    pub errors: usize,
    pub with_ratio: usize,
    pub max_ratio: Option<String>,
    pub mean_ratio: Option<String>,
    pub max_ratio_decimal: Option<String>,
    pub mean_ratio_decimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub records: Vec<ExperimentRecord>,
    pub summary: BTreeMap<String, AlgorithmSummary>,
}

/// `result / exact`; defined as 1 when both are zero.
pub fn approximation_ratio(result: &Weight, exact: &Weight) -> Option<BigRational> {
    if exact.is_zero() {
        result.is_zero().then(BigRational::one)
    } else {
        Some(result / exact)
    }
}

fn decimal(r: &BigRational) -> String {
    use num_traits::ToPrimitive;
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

struct Job {
    index: usize,
    spec: InstanceSpec,
    seed: u64,
}

fn run_instance(cfg: &BenchConfig, job: &Job) -> Vec<ExperimentRecord> {
    let id = format!("{:04}-s{}", job.index, job.seed);
    let base = |algorithm: &str| ExperimentRecord {
        instance: id.clone(),
        generator: job.spec.kind.label(),
        n: job.spec.kind.vertex_count(),
        m: 0,
        seed: job.seed,
        algorithm: algorithm.to_owned(),
        epsilon: None,
        k: None,
        weight: None,
        exact: None,
        ratio: None,
        planted: None,
        family_size: None,
        runtime_ms: None,
        error: None,
    };
    let inst: Instance = match gen_instance(&job.spec.kind, job.spec.weights, job.seed) {
        Ok(inst) => inst,
        Err(e) => {
            let mut r = base("generate");
            r.error = Some(e.to_string());
            return vec![r];
        }
    };
    let (g, w) = (&inst.graph, &inst.weights);
    let planted = inst.planted.as_ref().map(|p| format_weight(&w.set_weight(p)));

    let exact = (g.n() <= cfg.exact_limit).then(|| {
        let start = Instant::now();
        let res = exact_svd(g, w, cfg.exact_limit);
        (res, start.elapsed())
    });
    let exact_weight = exact
        .as_ref()
        .and_then(|(r, _)| r.as_ref().ok())
        .map(|r| r.weight.clone());

    let record = |algorithm: &str,
                  epsilon: Option<&BigRational>,
                  outcome: &Result<HittingSetResult, crate::SolverError>,
                  elapsed: std::time::Duration| {
        let mut r = base(algorithm);
        r.m = g.edge_count();
        r.epsilon = epsilon.map(format_weight);
        r.planted = planted.clone();
        r.exact = exact_weight.as_ref().map(format_weight);
        if cfg.timing {
            r.runtime_ms = Some(format!("{:.3}", elapsed.as_secs_f64() * 1e3));
        }
        match outcome {
            Ok(res) => {
                r.k = res.k_used;
                r.weight = Some(format_weight(&res.weight));
                r.family_size = res.family_size;
                r.ratio = exact_weight
                    .as_ref()
                    .and_then(|e| approximation_ratio(&res.weight, e))
                    .map(|q| format_weight(&q));
            }
            Err(e) => r.error = Some(e.to_string()),
        }
        r
    };

    let mut rows = Vec::new();
    for algo in &cfg.algorithms {
        match algo.as_str() {
            "exact" => match &exact {
                Some((res, elapsed)) => rows.push(record("exact", None, res, *elapsed)),
                None => {
                    let mut r = base("exact");
                    r.m = g.edge_count();
                    r.error = Some(format!(
                        "skipped: n = {} exceeds exact_limit {}",
                        g.n(),
                        cfg.exact_limit
                    ));
                    rows.push(r);
                }
            },
            "five" => {
                let start = Instant::now();
                let res = five_approx(g, w, cfg.prune);
                rows.push(record("five", None, &res, start.elapsed()));
            }
            "tpe" => {
                for eps in &cfg.epsilons {
                    let mut opts = TwoPlusEpsOptions::new(eps.clone(), cfg.strategy());
                    opts.budget = SearchBudget::new(cfg.budget);
                    opts.prune = cfg.prune;
                    let start = Instant::now();
                    let res = two_plus_eps(g, w, &opts);
                    rows.push(record("tpe", Some(eps), &res, start.elapsed()));
                }
            }
            _ => unreachable!("validated in from_toml"),
        }
    }
    rows
}

fn summarize(records: &[ExperimentRecord]) -> BTreeMap<String, AlgorithmSummary> {
    let mut groups: BTreeMap<String, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        let key = match &r.epsilon {
            Some(e) => format!("{}(eps={e})", r.algorithm),
            None => r.algorithm.clone(),
        };
        groups.entry(key).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(key, rows)| {
            let ratios: Vec<BigRational> = rows
                .iter()
                .filter_map(|r| r.ratio.as_deref())
                .map(|s| crate::graph::parse_weight(s).expect("ratios are written as rationals"))
                .collect();
            let max = ratios.iter().max().cloned();
            let mean = (!ratios.is_empty()).then(|| {
                ratios.iter().fold(BigRational::zero(), |a, b| a + b)
                    / BigRational::from_integer(ratios.len().into())
            });
            let summary = AlgorithmSummary {
                rows: rows.len(),
                errors: rows.iter().filter(|r| r.error.is_some()).count(),
                with_ratio: ratios.len(),
                max_ratio_decimal: max.as_ref().map(decimal),
                mean_ratio_decimal: mean.as_ref().map(decimal),
                max_ratio: max.as_ref().map(format_weight),
                mean_ratio: mean.as_ref().map(format_weight),
            };
            (key, summary)
        })
        .collect()
}

/// Runs every (instance, seed, algorithm) row. Instances run in parallel; rows are
/// ordered by instance id, then by the configured algorithm order.
pub fn run_experiment(cfg: &BenchConfig) -> BenchReport {
    let jobs: Vec<Job> = cfg
        .instances
        .iter()
        .enumerate()
        .flat_map(|(index, spec)| {
            cfg.seeds.iter().map(move |&seed| Job {
                index,
                spec: spec.clone(),
                seed,
            })
        })
        .collect();
    let records: Vec<ExperimentRecord> = jobs
        .par_iter()
        .map(|job| run_instance(cfg, job))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let summary = summarize(&records);
    BenchReport { records, summary }
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).expect("records serialize");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!(
                "{} {} {}{} weight={} exact={} ratio={}{}\n",
                r.instance,
                r.generator,
                r.algorithm,
                r.epsilon
                    .as_ref()
                    .map(|e| format!("(eps={e})"))
                    .unwrap_or_default(),
                r.weight.as_deref().unwrap_or("-"),
                r.exact.as_deref().unwrap_or("-"),
                r.ratio.as_deref().unwrap_or("-"),
                r.error
                    .as_ref()
                    .map(|e| format!(" error={e}"))
                    .unwrap_or_default(),
            ));
        }
        for (k, s) in &self.summary {
            out.push_str(&format!(
                "summary {k}: rows={} errors={} max_ratio={} mean_ratio={}\n",
                s.rows,
                s.errors,
                s.max_ratio_decimal.as_deref().unwrap_or("-"),
                s.mean_ratio_decimal.as_deref().unwrap_or("-"),
            ));
        }
        out
    }
}
