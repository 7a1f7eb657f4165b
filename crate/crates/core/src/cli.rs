//! Command-line front end. Every command reads and writes JSON with
//! rationals as exact strings and 1-based indices.
//!
//! Exit codes: 0 success, 1 input error, 2 structural precondition failure,
//! 3 not Rota–Baxter, 4 unsupported weight, 5 budget exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::canonical::{self, CanonicalAlgebra};
use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::matrix::Matrix;
use crate::oracle::{self, FamilyDescriptor, GridSpec, Shape};
use crate::rb::{self, LinearOperator};
use crate::scalar::{self, Scalar};
use crate::weight0::{self, Classification0, RB0Family};
use crate::weight1::{self, Classification1, RB1NonTriCandidate, RB1TriFamily, Sign};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_STRUCTURAL: i32 = 2;
pub const EXIT_NOT_RB: i32 = 3;
pub const EXIT_WEIGHT: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "evorb", about = "Rota-Baxter operators on nilpotent evolution algebras")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bring a maximal-nilindex algebra to canonical form.
    Normalize { algebra: PathBuf },
    /// Check the Rota-Baxter identity for an operator.
    Verify {
        algebra: PathBuf,
        operator: PathBuf,
        #[arg(long, default_value = "0")]
        weight: String,
    },
    /// Match an operator against the weight-0 or weight-1 families.
    Classify {
        algebra: PathBuf,
        operator: PathBuf,
        #[arg(long, default_value = "0")]
        weight: String,
    },
    /// Exact orbit of alpha under f(x) = x^2/(2x+1).
    Orbit {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
    /// Exhaustive grid search plus completeness check.
    Search {
        algebra: PathBuf,
        #[arg(long, default_value = "0")]
        weight: String,
        /// Comma-separated rationals; defaults to -2..2 in steps of 1/2.
        #[arg(long, allow_hyphen_values = true)]
        grid_values: Option<String>,
        /// full | upper | diag-lastcol | const-diag
        #[arg(long, default_value = "upper")]
        shape: String,
        #[arg(long, default_value_t = oracle::DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub n: usize,
    pub a: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorDocument {
    pub n: usize,
    pub r: Vec<Vec<String>>,
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.rows().map(|row| row.iter().map(scalar::format).collect()).collect()
}

fn parse_matrix(n: usize, rows: &[Vec<String>]) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
    }
    let parsed = rows
        .iter()
        .map(|row| {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            row.iter().map(|s| scalar::parse(s)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

impl AlgebraDocument {
    pub fn from_matrix(m: &Matrix) -> Self {
        Self { n: m.dim(), a: matrix_strings(m) }
    }

    pub fn to_algebra(&self) -> Result<EvolutionAlgebra> {
        EvolutionAlgebra::new(parse_matrix(self.n, &self.a)?)
    }
}

impl OperatorDocument {
    pub fn from_operator(r: &LinearOperator) -> Self {
        Self { n: r.dim(), r: matrix_strings(r.matrix()) }
    }

    pub fn to_operator(&self) -> Result<LinearOperator> {
        Ok(LinearOperator::new(parse_matrix(self.n, &self.r)?))
    }
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar::format).collect()
}

/// JSON form of a family descriptor.
pub fn descriptor_to_json(d: &FamilyDescriptor) -> Value {
    match d {
        FamilyDescriptor::Weight0(RB0Family::FamilyK { k, alpha, betas }) => {
            json!({"tag": "FamilyK", "k": k, "alpha": scalar::format(alpha), "betas": strings(betas)})
        }
        FamilyDescriptor::Weight0(RB0Family::FamilyN { betas }) => json!({"tag": "FamilyN", "betas": strings(betas)}),
        FamilyDescriptor::Triangular(f) => json!({
            "regime": "triangular",
            "alpha": scalar::format(&f.alpha),
            "beta": scalar::format(&f.beta),
            "i0": f.i0,
        }),
        FamilyDescriptor::NonTriangular(c) => json!({
            "regime": "non-triangular",
            "diag": scalar::format(&c.diag_value),
            "betas": strings(&c.betas),
            "minus_signs": c.signs.iter().filter(|(_, s)| **s == Sign::Minus).map(|(p, _)| [p.0, p.1]).collect::<Vec<_>>(),
        }),
    }
}

/// Inverse of [`descriptor_to_json`].
pub fn descriptor_from_json(v: &Value) -> Result<FamilyDescriptor> {
    let bad = |what: &str| Error::Parse(format!("descriptor: {what}"));
    let text =
        |key: &str| -> Result<Scalar> { scalar::parse(v.get(key).and_then(Value::as_str).ok_or_else(|| bad(key))?) };
    let list = |key: &str| -> Result<Vec<Scalar>> {
        v.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(key))?
            .iter()
            .map(|x| scalar::parse(x.as_str().ok_or_else(|| bad(key))?))
            .collect()
    };
    if let Some(tag) = v.get("tag").and_then(Value::as_str) {
        return match tag {
            "FamilyK" => Ok(FamilyDescriptor::Weight0(RB0Family::FamilyK {
                k: v.get("k").and_then(Value::as_u64).ok_or_else(|| bad("k"))? as usize,
                alpha: text("alpha")?,
                betas: list("betas")?,
            })),
            "FamilyN" => Ok(FamilyDescriptor::Weight0(RB0Family::FamilyN { betas: list("betas")? })),
            other => Err(bad(other)),
        };
    }
    match v.get("regime").and_then(Value::as_str) {
        Some("triangular") => Ok(FamilyDescriptor::Triangular(RB1TriFamily {
            alpha: text("alpha")?,
            beta: text("beta")?,
            i0: v.get("i0").and_then(Value::as_u64).map(|x| x as usize),
        })),
        Some("non-triangular") => {
            let pairs: Vec<(usize, usize)> = serde_json::from_value(v.get("minus_signs").cloned().unwrap_or(json!([])))
                .map_err(|e| Error::Parse(e.to_string()))?;
            Ok(FamilyDescriptor::NonTriangular(RB1NonTriCandidate {
                diag_value: text("diag")?,
                betas: list("betas")?,
                signs: pairs.into_iter().map(|p| (p, Sign::Minus)).collect(),
            }))
        }
        _ => Err(bad("missing tag or regime")),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::DimensionMismatch { .. } | Error::InvalidFamily(_) => EXIT_INPUT,
        Error::UnsupportedWeight(_) => EXIT_WEIGHT,
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_STRUCTURAL,
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_algebra(path: &PathBuf) -> Result<EvolutionAlgebra> {
    read_json::<AlgebraDocument>(path)?.to_algebra()
}

fn read_canonical(path: &PathBuf) -> Result<CanonicalAlgebra> {
    CanonicalAlgebra::new(read_algebra(path)?.into_structure())
}

fn read_operator(path: &PathBuf) -> Result<LinearOperator> {
    read_json::<OperatorDocument>(path)?.to_operator()
}

/// Weight for classification: exactly 0 or 1.
fn classification_weight(s: &str) -> Result<u8> {
    let w = scalar::parse(s)?;
    if w == scalar::zero() {
        Ok(0)
    } else if w == scalar::one() {
        Ok(1)
    } else {
        Err(Error::UnsupportedWeight(s.to_string()))
    }
}

fn pairs_json(p: &[(usize, usize)]) -> Value {
    json!(p.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>())
}

fn normalize(path: &PathBuf) -> Result<(i32, Value)> {
    let alg = read_algebra(path)?;
    let (canon, change) = canonical::canonicalize(&alg)?;
    let ia: Vec<(usize, usize)> = canon.index_set().iter().collect();
    Ok((
        EXIT_OK,
        json!({
            "canonical": AlgebraDocument::from_matrix(canon.structure()),
            "basis_change": matrix_strings(change.matrix()),
            "index_set": pairs_json(&ia),
        }),
    ))
}

fn verify(alg: &PathBuf, op: &PathBuf, weight: &str) -> Result<(i32, Value)> {
    let alg = read_algebra(alg)?;
    let r = read_operator(op)?;
    let theta = scalar::parse(weight)?;
    let report = rb::rb_residual_full(&alg, &r, &theta)?;
    let failing = report.failing_pairs();
    let first = report.first_failure().map(|(_, v)| strings(v));
    let code = if failing.is_empty() { EXIT_OK } else { EXIT_NOT_RB };
    Ok((code, json!({"is_rb": failing.is_empty(), "failing_pairs": pairs_json(&failing), "first_residual": first})))
}

fn not_rb(pair: (usize, usize), residual: &[Scalar]) -> (i32, Value) {
    (EXIT_NOT_RB, json!({"tag": "NotRB", "pair": [pair.0, pair.1], "residual": strings(residual)}))
}

fn classify(alg: &PathBuf, op: &PathBuf, weight: &str) -> Result<(i32, Value)> {
    let w = classification_weight(weight)?;
    let c = read_canonical(alg)?;
    let r = read_operator(op)?;
    if r.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: r.dim() });
    }
    let unmatched = (EXIT_OK, json!({"tag": "Unmatched"}));
    Ok(if w == 0 {
        match weight0::classify0(&c, &r)? {
            Classification0::Family(f) => (EXIT_OK, descriptor_to_json(&FamilyDescriptor::Weight0(f))),
            Classification0::NotRb { pair, residual } => not_rb(pair, &residual),
            Classification0::Unmatched => unmatched,
        }
    } else {
        match weight1::classify1(&c, &r)? {
            Classification1::Triangular(f) => (EXIT_OK, descriptor_to_json(&FamilyDescriptor::Triangular(f))),
            Classification1::NonTriangular(f) => (EXIT_OK, descriptor_to_json(&FamilyDescriptor::NonTriangular(f))),
            Classification1::NotRb { pair, residual } => not_rb(pair, &residual),
            Classification1::Unmatched => unmatched,
        }
    })
}

fn orbit(alpha: &str, steps: usize) -> Result<(i32, Value)> {
    let o = weight1::f_orbit(&scalar::parse(alpha)?, steps);
    Ok((EXIT_OK, json!({"seed": scalar::format(&o.seed), "values": strings(&o.values), "hit_pole": o.hit_pole})))
}

fn search(alg: &PathBuf, weight: &str, grid_values: Option<&str>, shape: &str, budget: u128) -> Result<(i32, Value)> {
    let w = classification_weight(weight)?;
    let shape: Shape = shape.parse()?;
    let values = match grid_values {
        Some(csv) => csv.split(',').filter(|s| !s.trim().is_empty()).map(scalar::parse).collect::<Result<Vec<_>>>()?,
        None => scalar::grid(2, &[1, 2]),
    };
    let c = read_canonical(alg)?;
    let spec = GridSpec::shaped(c.dim(), shape, &values).with_budget(budget);
    let theta = if w == 0 { scalar::zero() } else { scalar::one() };
    let found = oracle::grid_search(c.algebra(), &theta, &spec)?;
    let report = if w == 0 {
        oracle::completeness_check(c.algebra(), &theta, &found, oracle::weight0_classifier(&c))
    } else {
        oracle::completeness_check(c.algebra(), &theta, &found, oracle::weight1_classifier(&c))
    };
    let ops = |v: &[LinearOperator]| v.iter().map(|r| matrix_strings(r.matrix())).collect::<Vec<_>>();
    let classified: Vec<Value> = report
        .classified
        .iter()
        .map(|(r, d)| json!({"operator": matrix_strings(r.matrix()), "family": descriptor_to_json(d)}))
        .collect();
    let stats: BTreeMap<&str, u128> = [
        ("grid_points", spec.count()),
        ("found", report.found.len() as u128),
        ("classified", report.classified.len() as u128),
        ("counterexamples", report.counterexamples.len() as u128),
    ]
    .into();
    Ok((
        EXIT_OK,
        json!({
            "found": ops(&report.found),
            "classified": classified,
            "counterexamples": ops(&report.counterexamples),
            "stats": stats,
        }),
    ))
}

fn dispatch(cli: &Cli) -> Result<(i32, Value)> {
    match &cli.command {
        Command::Normalize { algebra } => normalize(algebra),
        Command::Verify { algebra, operator, weight } => verify(algebra, operator, weight),
        Command::Classify { algebra, operator, weight } => classify(algebra, operator, weight),
        Command::Orbit { alpha, steps } => orbit(alpha, *steps),
        Command::Search { algebra, weight, grid_values, shape, budget } => {
            search(algebra, weight, grid_values.as_deref(), shape, *budget)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code and the text that should be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let (code, value) = match dispatch(&cli) {
        Ok(x) => x,
        Err(e) => (exit_code(&e), json!({"error": e.kind(), "message": e.to_string()})),
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n";
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &text) {
            return (EXIT_INPUT, format!("cannot write {}: {e}\n", path.display()));
        }
        return (code, String::new());
    }
    (code, text)
}
