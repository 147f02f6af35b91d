use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use kmchev::arith::{bruhat_factor, reduce_to_unit_generators, sl2_step, stabilizes_zform, DEFAULT_MOVE_BUDGET};
use kmchev::chevgroup::parse_word;
use kmchev::rational::{parse_rational, Q};
use kmchev::{Error, Evaluator, GeneralizedCartanMatrix, ModuleCollection, RootCatalog, TruncatedModule};

use crate::json;

#[derive(Parser, Debug)]
#[command(name = "kmchev", version, about = "Exact Kac-Moody Chevalley groups on truncated highest-weight modules")]
pub struct Cli {
    /// Seed for sampling helpers; no command currently samples.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classification, determinant, symmetrizer and lattice index.
    Classify { gcm: PathBuf },
    /// Real roots up to a height, with their canonical witnesses.
    Roots {
        gcm: PathBuf,
        #[arg(long)]
        height: i64,
    },
    /// Weight-space dimensions of a truncated module.
    Module {
        gcm: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        depth: u32,
        /// Also emit integral bases and the action matrices of e_i, f_i.
        #[arg(long)]
        zbasis: bool,
    },
    /// Evaluates a word on one module.
    Eval {
        gcm: PathBuf,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        word: String,
        /// Depth through which the matrix is printed (default: deepest determined).
        #[arg(long)]
        probe: Option<u32>,
    },
    /// Whether a word and its inverse preserve the integral form.
    CheckIntegral {
        gcm: PathBuf,
        /// Highest weights separated by `;` (default: the fundamental weights).
        #[arg(long)]
        lambdas: Option<String>,
        #[arg(long)]
        depth: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        probe: Option<u32>,
    },
    /// Factors a word as (integral word) * (Borel word).
    Factor {
        gcm: PathBuf,
        #[arg(long)]
        word: String,
        /// Move budget (default: $KMCHEV_BUDGET, else 10000).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        lambdas: Option<String>,
        /// Truncation depth of the certificate modules.
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Rank-one step: (p q; r s) = gamma * upper with gamma integral.
    #[command(name = "sl2-step")]
    Sl2Step {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Rewrites an integral word over the unit generators x(+-i,1).
    Reduce {
        gcm: PathBuf,
        #[arg(long)]
        word: String,
    },
}

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Out = std::result::Result<Value, Failure>;

fn read_gcm(path: &Path) -> std::result::Result<(GeneralizedCartanMatrix, Option<Value>), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{} is not JSON: {e}", path.display())))?;
    let bad = || Failure::Usage(format!("{}: expected {{\"matrix\": [[int, ...], ...]}}", path.display()));
    let rows = value.get("matrix").and_then(Value::as_array).ok_or_else(bad)?;
    let mut entries = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(bad)?;
        entries.push(row.iter().map(|x| x.as_i64().ok_or_else(bad)).collect::<std::result::Result<Vec<_>, _>>()?);
    }
    let labels = value.get("labels").cloned();
    Ok((GeneralizedCartanMatrix::validate(entries)?, labels))
}

fn parse_weight(text: &str, rank: usize) -> std::result::Result<Vec<i64>, Failure> {
    let v = text
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("bad weight `{text}`: expected comma-separated integers")))?;
    if v.len() != rank {
        return Err(Failure::Usage(format!("weight `{text}` has {} entries, rank is {rank}", v.len())));
    }
    Ok(v)
}

fn collection(a: &GeneralizedCartanMatrix, lambdas: Option<&str>, depth: u32) -> std::result::Result<ModuleCollection, Failure> {
    Ok(match lambdas {
        None => ModuleCollection::fundamental(a, depth)?,
        Some(text) => {
            let ws = text.split(';').map(|t| parse_weight(t, a.rank())).collect::<std::result::Result<Vec<_>, _>>()?;
            ModuleCollection::build(a, &ws, depth)?
        }
    })
}

fn parse_q(text: &str) -> std::result::Result<Q, Failure> {
    match parse_rational(text) {
        Some(Ok(x)) => Ok(x),
        Some(Err(())) => Err(Failure::Domain(Error::ZeroDenominator { line: 1, column: text.find('/').map_or(1, |k| k + 2) })),
        None => Err(Failure::Usage(format!("`{text}` is not a rational number"))),
    }
}

fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(n) => json!(n),
        Err(_) => json::big(x),
    }
}

fn budget(flag: Option<usize>) -> std::result::Result<usize, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("KMCHEV_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("KMCHEV_BUDGET=`{v}` is not a count"))),
        Err(_) => Ok(DEFAULT_MOVE_BUDGET),
    }
}

pub fn run(cli: &Cli) -> Out {
    match &cli.command {
        Command::Classify { gcm } => classify(gcm),
        Command::Roots { gcm, height } => roots(gcm, *height),
        Command::Module { gcm, lambda, depth, zbasis } => module(gcm, lambda, *depth, *zbasis),
        Command::Eval { gcm, lambda, depth, word, probe } => eval(gcm, lambda, *depth, word, *probe),
        Command::CheckIntegral { gcm, lambdas, depth, word, probe } => {
            check_integral(gcm, lambdas.as_deref(), *depth, word, *probe)
        }
        Command::Factor { gcm, word, budget: b, lambdas, depth } => {
            let (a, _) = read_gcm(gcm)?;
            let coll = collection(&a, lambdas.as_deref(), *depth)?;
            let g = parse_word(word)?;
            let f = bruhat_factor(&coll, &g, budget(*b)?)?;
            Ok(json!({
                "gamma": f.gamma.to_string(),
                "b": f.b.to_string(),
                "certificate_depth": f.certificate_depth,
                "moves": f.moves,
            }))
        }
        Command::Sl2Step { p, q, r, s } => {
            let m = [[parse_q(p)?, parse_q(q)?], [parse_q(r)?, parse_q(s)?]];
            let step = sl2_step(&m)?;
            Ok(json!({
                "gamma": step.gamma.iter().map(|row| row.iter().map(int_value).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "upper": step.upper.iter().map(|row| json::rats(row)).collect::<Vec<_>>(),
            }))
        }
        Command::Reduce { gcm, word } => {
            let (a, _) = read_gcm(gcm)?;
            let g = parse_word(word)?;
            let r = reduce_to_unit_generators(&a, &g)?;
            Ok(json!({
                "word": r.to_string(),
                "length": r.len(),
                "letters": r.letters().iter().map(|l| json!({
                    "index": l.index + 1,
                    "sign": match l.sign { kmchev::Sign::Plus => "+", kmchev::Sign::Minus => "-" },
                    "inverse": l.inverse,
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

fn classify(path: &Path) -> Out {
    let (a, labels) = read_gcm(path)?;
    let class = a.classify()?;
    Ok(json!({
        "type": class.to_string(),
        "rank": a.rank(),
        "det": json::big(&a.determinant()),
        "index": a.lattice_index().to_string(),
        "symmetrizer": json::rats(&a.symmetrize()?),
        "labels": labels,
    }))
}

fn roots(path: &Path, height: i64) -> Out {
    let (a, _) = read_gcm(path)?;
    let catalog = RootCatalog::new(a);
    let list: Vec<Value> = catalog
        .real_roots(height)
        .iter()
        .map(|r| {
            json!({
                "coords": r.root.coords(),
                "height": r.root.height(),
                "witness": {
                    "word": r.witness.word.0.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "simple": r.witness.simple + 1,
                },
            })
        })
        .collect();
    Ok(Value::Array(list))
}

fn module(path: &Path, lambda: &str, depth: u32, zbasis: bool) -> Out {
    let (a, _) = read_gcm(path)?;
    let lambda = parse_weight(lambda, a.rank())?;
    let m = TruncatedModule::build(&a, &lambda, depth)?;
    let mut weights = Vec::new();
    for w in 0..m.num_weights() {
        let k = m.depth_of(w).to_vec();
        let dim = m.dim_at(w);
        if dim == 0 {
            continue;
        }
        let mut entry = json!({"depth": k, "dim": dim});
        if zbasis {
            let zb = m.zbasis(&k)?;
            entry["zbasis"] = json!({
                "monomials": zb.monomials.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "vectors": zb.vectors.iter().map(|v| json::rats(v)).collect::<Vec<_>>(),
            });
            let e: Vec<Value> = (0..a.rank()).map(|i| m.e_matrix(w, i).map(json::matrix).unwrap_or(Value::Null)).collect();
            let f: Vec<Value> = (0..a.rank()).map(|i| m.f_matrix(w, i).map(json::matrix).unwrap_or(Value::Null)).collect();
            entry["e"] = Value::Array(e);
            entry["f"] = Value::Array(f);
        }
        weights.push(entry);
    }
    Ok(json!({
        "lambda": lambda,
        "depth": depth,
        "total_dim": m.total_dim(),
        "weights": weights,
    }))
}

fn eval(path: &Path, lambda: &str, depth: u32, word: &str, probe: Option<u32>) -> Out {
    let (a, _) = read_gcm(path)?;
    let lambda = parse_weight(lambda, a.rank())?;
    let g = parse_word(word)?;
    g.validate(&a)?;
    let m = Arc::new(TruncatedModule::build(&a, &lambda, depth)?);
    let op = Evaluator::new(m.clone()).eval(&g)?;
    let valid = op.valid_depth();
    let p = match (probe, valid) {
        (Some(p), Some(v)) if p <= v => p,
        (None, Some(v)) => v,
        _ => {
            return Err(Error::DepthOutOfRange { depth: vec![probe.unwrap_or(0)], max: valid.unwrap_or(0) }.into());
        }
    };
    let basis: Vec<Value> = (0..m.num_weights())
        .filter(|&w| m.depth_of(w).iter().sum::<i64>() <= p as i64 && m.dim_at(w) > 0)
        .map(|w| json!({"depth": m.depth_of(w), "dim": m.dim_at(w)}))
        .collect();
    Ok(json!({
        "word": g.to_string(),
        "valid_depth": valid,
        "probe_depth": p,
        "basis": basis,
        "matrix": json::matrix(&op.dense(p)),
        "integral": op.is_integral_through(p),
    }))
}

fn check_integral(path: &Path, lambdas: Option<&str>, depth: u32, word: &str, probe: Option<u32>) -> Out {
    let (a, _) = read_gcm(path)?;
    let coll = collection(&a, lambdas, depth)?;
    let g = parse_word(word)?;
    let p = probe.unwrap_or(depth);
    let v = stabilizes_zform(&coll, &g, p)?;
    let mut out = json::verdict(&v);
    out["word"] = json!(g.to_string());
    out["probe_depth"] = json!(p);
    out["modules"] = json!(coll.modules().iter().map(|m| m.lambda().to_vec()).collect::<Vec<_>>());
    Ok(out)
}

