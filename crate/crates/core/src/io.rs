//! Text formats and JSON output.
//!
//! Instance files are line oriented with 1-based vertex ids:
//!
//! ```text
//! c optional comment
//! p svd <n> <m>
//! w <vertex> <num/den | integer>
//! e <u> <v>
//! ```
//!
//! Vertices without a `w` line weigh 1. Separator families use one cut per
//! line, `A: 1 2 | B: 3 4`, also 1-based.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{format_weight, parse_weight, Graph, VertexSet, Weight, WeightMap};
use crate::separator::{Cut, SeparatorFamily};
use crate::solver::{HittingSetResult, Obstruction};
use crate::split::SplitCertificate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: negative weight on vertex {v}")]
    NegativeWeight { line: usize, v: usize },
    #[error("missing `p svd <n> <m>` header")]
    MissingHeader,
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn parse_vertex(tok: Option<&str>, n: usize, line: usize) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing vertex id"))?;
    let v: usize = tok
        .parse()
        .map_err(|_| syntax(line, format!("invalid vertex id `{tok}`")))?;
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| syntax(line, format!("invalid {what} in header")))
}

pub fn parse_instance(text: &str) -> Result<(Graph, WeightMap), ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty(0);
    let mut weights: Vec<Option<Weight>> = Vec::new();
    let mut edges = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else {
            continue;
        };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second header"));
                }
                if toks.next() != Some("svd") {
                    return Err(syntax(line, "expected `p svd <n> <m>`"));
                }
                let n = parse_count(toks.next(), line, "vertex count")?;
                let m = parse_count(toks.next(), line, "edge count")?;
                header = Some((n, m));
                graph = Graph::empty(n);
                weights = vec![None; n];
            }
            "w" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let v = parse_vertex(toks.next(), n, line)?;
                let tok = toks.next().ok_or_else(|| syntax(line, "missing weight"))?;
                let w = parse_weight(tok).ok_or_else(|| syntax(line, format!("invalid weight `{tok}`")))?;
                if w < Weight::from_integer(0.into()) {
                    return Err(ParseError::NegativeWeight { line, v: v + 1 });
                }
                if weights[v].replace(w).is_some() {
                    return Err(syntax(line, format!("second weight for vertex {}", v + 1)));
                }
            }
            "e" => {
                let (n, _) = header.ok_or(ParseError::MissingHeader)?;
                let u = parse_vertex(toks.next(), n, line)?;
                let v = parse_vertex(toks.next(), n, line)?;
                if u == v {
                    return Err(ParseError::SelfLoop { line, v: v + 1 });
                }
                if graph.has_edge(u, v) {
                    return Err(ParseError::DuplicateEdge {
                        line,
                        u: u + 1,
                        v: v + 1,
                    });
                }
                graph.add_edge(u, v).expect("checked above");
                edges += 1;
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }

    let (_, m) = header.ok_or(ParseError::MissingHeader)?;
    if m != edges {
        return Err(ParseError::EdgeCount {
            declared: m,
            found: edges,
        });
    }
    let weights = weights
        .into_iter()
        .map(|w| w.unwrap_or_else(|| Weight::from_integer(1.into())))
        .collect();
    Ok((
        graph,
        WeightMap::new(weights).expect("weights checked nonnegative"),
    ))
}

/// Writes every weight and every edge; `comments` become leading `c` lines.
pub fn write_instance(g: &Graph, w: &WeightMap, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        out.push_str(&format!("c {c}\n"));
    }
    out.push_str(&format!("p svd {} {}\n", g.n(), g.edge_count()));
    for v in 0..g.n() {
        out.push_str(&format!("w {} {}\n", v + 1, format_weight(w.get(v))));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

fn join_ids(s: &VertexSet) -> String {
    s.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn write_separator(f: &SeparatorFamily) -> String {
    f.cuts
        .iter()
        .map(|c| {
            let a = join_ids(&c.a);
            let b = join_ids(&c.b);
            format!(
                "A:{}{a} | B:{}{b}\n",
                if a.is_empty() { "" } else { " " },
                if b.is_empty() { "" } else { " " }
            )
        })
        .collect()
}

/// Parses a separator family for a graph on `n` vertices. Every cut must
/// partition `0..n`.
pub fn parse_separator(text: &str, n: usize) -> Result<Vec<Cut>, ParseError> {
    let mut cuts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('c') {
            continue;
        }
        let (a, b) = raw
            .split_once('|')
            .ok_or_else(|| syntax(line, "expected `A: ... | B: ...`"))?;
        let a = a
            .trim()
            .strip_prefix("A:")
            .ok_or_else(|| syntax(line, "missing `A:`"))?;
        let b = b
            .trim()
            .strip_prefix("B:")
            .ok_or_else(|| syntax(line, "missing `B:`"))?;
        let side = |s: &str| -> Result<VertexSet, ParseError> {
            s.split_whitespace()
                .map(|t| parse_vertex(Some(t), n, line))
                .collect()
        };
        let cut = Cut {
            a: side(a)?,
            b: side(b)?,
        };
        if !cut.is_partition_of(n) {
            return Err(syntax(line, format!("cut is not a partition of 1..={n}")));
        }
        cuts.push(cut);
    }
    Ok(cuts)
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub clique: Vec<usize>,
    pub stable: Vec<usize>,
}

impl From<&SplitCertificate> for CertificateJson {
    fn from(c: &SplitCertificate) -> Self {
        CertificateJson {
            clique: one_based(&c.clique),
            stable: one_based(&c.stable),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LayerJson {
    pub kind: String,
    pub vertices: Vec<usize>,
    pub t: String,
}

#[derive(Debug, Serialize)]
pub struct CutJson {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// JSON view of a [`HittingSetResult`]: 1-based ids, weights as rational strings.
#[derive(Debug, Serialize)]
pub struct ResultJson {
    pub algorithm: &'static str,
    pub x: Vec<usize>,
    pub weight: String,
    pub certificate: CertificateJson,
    pub k_used: Option<usize>,
    pub chosen_cut: Option<CutJson>,
    pub family_size: Option<usize>,
    pub zero_weight_initial: Vec<usize>,
    pub layers: Vec<LayerJson>,
}

impl From<&HittingSetResult> for ResultJson {
    fn from(r: &HittingSetResult) -> Self {
        ResultJson {
            algorithm: r.algorithm.name(),
            x: one_based(&r.x),
            weight: format_weight(&r.weight),
            certificate: (&r.certificate).into(),
            k_used: r.k_used,
            chosen_cut: r.chosen_cut.as_ref().map(|c| CutJson {
                a: one_based(&c.a),
                b: one_based(&c.b),
            }),
            family_size: r.family_size,
            zero_weight_initial: one_based(&r.trace.zero_weight_initial),
            layers: r
                .trace
                .layers
                .iter()
                .map(|l| LayerJson {
                    kind: match &l.obstruction {
                        Obstruction::Small(o) => {
                            serde_json::to_value(o.kind).unwrap().as_str().unwrap().to_owned()
                        }
                        Obstruction::Path(p) => {
                            serde_json::to_value(p.kind).unwrap().as_str().unwrap().to_owned()
                        }
                    },
                    vertices: l.obstruction.vertices().iter().map(|v| v + 1).collect(),
                    t: format_weight(&l.t),
                })
                .collect(),
        }
    }
}
