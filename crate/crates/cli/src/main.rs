use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use svd_core::bench::{run_experiment, BenchConfig};
use svd_core::generate::{gen_instance, GenKind, WeightScheme};
use svd_core::io::{parse_instance, parse_separator, write_instance, write_separator, ResultJson};
use svd_core::separator::{
    default_min_pair_fraction, Generator, SeparatorStats, DEFAULT_BASE_SIZE, DEFAULT_EXHAUSTIVE_LIMIT,
};
use svd_core::solver::DEFAULT_EXACT_SVD_LIMIT;
use svd_core::{
    exact_svd, exhaustive_separator, find_small_obstruction, find_split_partition, five_approx,
    format_weight, parse_weight, recursive_separator, two_plus_eps, verify_separator, Graph,
    HittingSetResult, SearchBudget, SeparatorFamily, SeparatorStrategy, SolverError, TwoPlusEpsOptions,
    VerifyMode, Weight, WeightMap,
};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_SOLVER: u8 = 3;

#[derive(Parser)]
#[command(name = "svd", version, about = "Split vertex deletion solvers and tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Exact,
    Five,
    Tpe,
}

#[derive(Clone, Copy, ValueEnum)]
enum SepKind {
    Exhaustive,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weights {
    Unit,
    Palette,
}

fn rational(s: &str) -> Result<Weight, String> {
    parse_weight(s).ok_or_else(|| format!("`{s}` is not a rational (use num/den or an integer)"))
}

#[derive(Subcommand)]
enum Command {
    /// Report whether the instance graph is split, with a certificate or an obstruction
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute a hitting set
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "tpe")]
        algo: Algo,
        #[arg(long, value_parser = rational, default_value = "1")]
        epsilon: Weight,
        #[arg(long, value_enum, default_value = "recursive")]
        separator: SepKind,
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = SearchBudget::DEFAULT_NODES)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_EXACT_SVD_LIMIT)]
        exact_limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build or verify clique–stable set separator families
    Separator {
        #[command(subcommand)]
        action: SeparatorAction,
    },
    /// Generate an instance file on stdout
    Gen {
        #[command(subcommand)]
        kind: GenCommand,
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        #[arg(long, value_enum, default_value = "unit", global = true)]
        weights: Weights,
    },
    /// Run a TOML experiment configuration
    Bench {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum SeparatorAction {
    /// Write a separator family for the instance graph
    Build {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "recursive")]
        generator: SepKind,
        #[arg(long, default_value_t = DEFAULT_BASE_SIZE)]
        base_size: usize,
        #[arg(long, value_parser = rational)]
        min_pair_fraction: Option<Weight>,
    },
    /// Check that a family separates every clique/stable-set pair
    Verify {
        file: PathBuf,
        family: PathBuf,
        /// Check this many random pairs instead of all of them
        #[arg(long)]
        sampled: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational)]
        p: Weight,
    },
    PlantedSplit {
        #[arg(long)]
        n_clique: usize,
        #[arg(long)]
        n_stable: usize,
        #[arg(long)]
        n_extra: usize,
        #[arg(long, value_parser = rational)]
        noise: Weight,
    },
    Path {
        #[arg(long)]
        k: usize,
    },
    Cycle {
        #[arg(long)]
        k: usize,
    },
    TwoK2,
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Display) -> Failure {
    Failure {
        code,
        msg: msg.to_string(),
    }
}

fn solver_failure(e: SolverError) -> Failure {
    fail(EXIT_SOLVER, e)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(Graph, WeightMap), Failure> {
    parse_instance(&read(path)?).map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn one_based(vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().map(|v| v + 1).collect()
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn check(file: &Path, format: Format) -> Result<String, Failure> {
    let (g, _) = load_instance(file)?;
    let out = match find_split_partition(&g) {
        Some(cert) => {
            let (k, s) = (one_based(cert.clique.iter()), one_based(cert.stable.iter()));
            match format {
                Format::Json => json!({"split": true, "clique": k, "stable": s}).to_string(),
                Format::Csv => format!("split,clique,stable\ntrue,{},{}", join(&k), join(&s)),
                Format::Text => format!("split\nclique: {}\nstable: {}", join(&k), join(&s)),
            }
        }
        None => {
            let obs = find_small_obstruction(&g).expect("non-split graphs have an obstruction");
            let kind = serde_json::to_value(obs.kind).unwrap();
            let kind = kind.as_str().unwrap();
            let vs = one_based(obs.vertices.iter().copied());
            match format {
                Format::Json => json!({"split": false, "obstruction": kind, "vertices": vs}).to_string(),
                Format::Csv => format!("split,obstruction,vertices\nfalse,{kind},{}", join(&vs)),
                Format::Text => format!("not split\nobstruction {kind}: {}", join(&vs)),
            }
        }
    };
    Ok(out + "\n")
}

fn strategy(kind: SepKind) -> SeparatorStrategy {
    match kind {
        SepKind::Exhaustive => SeparatorStrategy::exhaustive(),
        SepKind::Recursive => SeparatorStrategy::recursive(),
    }
}

fn render_result(r: &HittingSetResult, format: Format) -> String {
    let view = ResultJson::from(r);
    match format {
        Format::Json => serde_json::to_string_pretty(&view).expect("serializes") + "\n",
        Format::Csv => format!(
            "algorithm,weight,k,family_size,x\n{},{},{},{},{}\n",
            view.algorithm,
            view.weight,
            view.k_used.map(|k| k.to_string()).unwrap_or_default(),
            view.family_size.map(|f| f.to_string()).unwrap_or_default(),
            join(&view.x)
        ),
        Format::Text => {
            let mut out = format!(
                "algorithm: {}\nweight: {}\nx: {}\n",
                view.algorithm,
                view.weight,
                join(&view.x)
            );
            out.push_str(&format!(
                "clique: {}\nstable: {}\n",
                join(&view.certificate.clique),
                join(&view.certificate.stable)
            ));
            if let Some(k) = view.k_used {
                out.push_str(&format!("k: {k}\nlayers: {}\n", view.layers.len()));
            }
            if let Some(f) = view.family_size {
                out.push_str(&format!("separator cuts: {f}\n"));
            }
            out
        }
    }
}

fn separator_build(
    file: &Path,
    generator: SepKind,
    base_size: usize,
    fraction: Option<Weight>,
) -> Result<String, Failure> {
    let (g, _) = load_instance(file)?;
    let family = match generator {
        SepKind::Exhaustive => exhaustive_separator(&g, DEFAULT_EXHAUSTIVE_LIMIT).map_err(solver_failure)?,
        SepKind::Recursive => {
            recursive_separator(&g, base_size, &fraction.unwrap_or_else(default_min_pair_fraction))
        }
    };
    Ok(write_separator(&family))
}

fn separator_verify(
    file: &Path,
    family: &Path,
    sampled: Option<usize>,
    seed: u64,
) -> Result<String, Failure> {
    let (g, _) = load_instance(file)?;
    let cuts = parse_separator(&read(family)?, g.n())
        .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", family.display())))?;
    let family = SeparatorFamily {
        stats: SeparatorStats {
            size: cuts.len(),
            ..Default::default()
        },
        cuts,
        generator: Generator::Exhaustive,
    };
    let mode = match sampled {
        Some(count) => VerifyMode::Sampled { count, seed },
        None => VerifyMode::Exhaustive,
    };
    match verify_separator(&g, &family, mode).map_err(solver_failure)? {
        None => Ok(format!("ok: {} cuts\n", family.cuts.len())),
        Some(cx) => Err(fail(
            EXIT_SOLVER,
            format!(
                "counterexample: clique {{{}}} stable {{{}}}",
                join(&one_based(cx.clique.iter())),
                join(&one_based(cx.stable.iter()))
            ),
        )),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Check { file, format } => check(&file, format),
        Command::Solve {
            file,
            algo,
            epsilon,
            separator,
            prune,
            budget,
            exact_limit,
            format,
        } => {
            let (g, w) = load_instance(&file)?;
            let result = match algo {
                Algo::Exact => exact_svd(&g, &w, exact_limit),
                Algo::Five => five_approx(&g, &w, prune),
                Algo::Tpe => {
                    let mut opts = TwoPlusEpsOptions::new(epsilon, strategy(separator));
                    opts.budget = SearchBudget::new(budget);
                    opts.prune = prune;
                    if opts.epsilon <= Weight::from_integer(0.into()) {
                        return Err(fail(EXIT_USAGE, "--epsilon must be positive"));
                    }
                    two_plus_eps(&g, &w, &opts)
                }
            }
            .map_err(solver_failure)?;
            Ok(render_result(&result, format))
        }
        Command::Separator { action } => match action {
            SeparatorAction::Build {
                file,
                generator,
                base_size,
                min_pair_fraction,
            } => separator_build(&file, generator, base_size, min_pair_fraction),
            SeparatorAction::Verify {
                file,
                family,
                sampled,
                seed,
            } => separator_verify(&file, &family, sampled, seed),
        },
        Command::Gen { kind, seed, weights } => {
            let kind = match kind {
                GenCommand::Er { n, p } => GenKind::Er { n, p },
                GenCommand::PlantedSplit {
                    n_clique,
                    n_stable,
                    n_extra,
                    noise,
                } => GenKind::PlantedSplit {
                    n_clique,
                    n_stable,
                    n_extra,
                    noise,
                },
                GenCommand::Path { k } => GenKind::Path { k },
                GenCommand::Cycle { k } => GenKind::Cycle { k },
                GenCommand::TwoK2 => GenKind::TwoK2,
            };
            let scheme = match weights {
                Weights::Unit => WeightScheme::Unit,
                Weights::Palette => WeightScheme::Palette,
            };
            let inst = gen_instance(&kind, scheme, seed).map_err(|e| fail(EXIT_USAGE, e))?;
            let mut comments = vec![format!("{} seed={seed}", inst.label)];
            if let Some(p) = &inst.planted {
                comments.push(format!(
                    "planted {} weight {}",
                    join(&one_based(p.iter())),
                    format_weight(&inst.weights.set_weight(p))
                ));
            }
            Ok(write_instance(&inst.graph, &inst.weights, &comments))
        }
        Command::Bench { config, format } => {
            let cfg = BenchConfig::from_toml(&read(&config)?)
                .map_err(|e| fail(EXIT_PARSE, format!("{}: {e}", config.display())))?;
            let report = run_experiment(&cfg);
            Ok(match format {
                Format::Csv => report.to_csv(),
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("svd: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
