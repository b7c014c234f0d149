//! `diffalg`: differential polynomials, series and law checks from the shell.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use diffalg::diff_laws::suite::run_laws;
use diffalg::free_diff::d_shift_n;
use diffalg::hurwitz::{delta_eval, omega_eval, psi, psi_inv, ring_eval, sadd, sderive, smul, sunit, Flavor, Series, SeriesError};
use diffalg::parse::{parse_diffpoly, parse_poly, ParseError};
use diffalg::polynomial::{Poly, VarName};
use diffalg::rota_baxter::{rb_D, rb_P, rb_d_raw, rb_mul, RBElem, RBRaw};
use diffalg::Rational;

#[derive(Parser)]
#[command(name = "diffalg", version, about = "Exact differential algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Hurwitz,
    Power,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Hurwitz => Flavor::Hurwitz,
            FlavorArg::Power => Flavor::Power,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesOp {
    Add,
    Mul,
    Derive,
    Unit,
}

#[derive(Clone, Copy, ValueEnum)]
enum RbOp {
    Shuffle,
    Mul,
    #[value(name = "P")]
    P,
    #[value(name = "D")]
    D,
    #[value(name = "Draw")]
    Draw,
}

#[derive(Subcommand)]
enum Verb {
    /// Apply the free derivation `n` times to a differential polynomial.
    Diff {
        expr: String,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Multiply two differential polynomials.
    Mul { a: String, b: String },
    /// Evaluate a polynomial at series given as a JSON object `{"x": [..]}`.
    Eval {
        expr: String,
        env: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Hurwitz series arithmetic.
    Hurwitz(SeriesArgs),
    /// Power series arithmetic.
    Power(SeriesArgs),
    /// Convert a series between the power and Hurwitz flavors.
    Psi {
        series: String,
        #[arg(long, value_enum)]
        from: FlavorArg,
        #[arg(long, value_enum)]
        to: Option<FlavorArg>,
        /// Truncation order; defaults to the length of the input.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run every shipped law check.
    Laws {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
    },
    /// Rota-Baxter operations on JSON input.
    Rb {
        #[arg(long, value_enum)]
        op: RbOp,
        input: String,
    },
}

#[derive(clap::Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    op: SeriesOp,
    #[arg(long, default_value_t = 8)]
    order: usize,
    operands: Vec<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Series(#[from] SeriesError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read stdin: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// A finished command: what to print and whether every law held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

impl Outcome {
    fn value(verb: &str, result: impl ToString) -> Self {
        let result = result.to_string();
        Outcome {
            json: json!({ "schema": 1, "verb": verb, "result": result }),
            text: result,
            ok: true,
        }
    }
}

fn read_arg(arg: &str) -> Result<String, CliError> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s)?;
    Ok(s.trim().to_string())
}

fn parse_series(src: &str, flavor: Flavor) -> Result<Series<Rational>, CliError> {
    let inner = src
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| CliError::Usage(format!("expected a series like [1,2,3], found `{src}`")))?;
    let coeffs = inner
        .split(',')
        .map(|c| c.parse::<Rational>().map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Series::new(coeffs, flavor))
}

fn json_rational(v: &Value) -> Result<Rational, CliError> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(CliError::Usage(format!("expected a rational, found {other}"))),
    };
    s.parse().map_err(|e: diffalg::scalars::ParseRationalError| CliError::Usage(e.to_string()))
}

fn json_env(src: &str, order: usize, flavor: Flavor) -> Result<BTreeMap<VarName, Series<Rational>>, CliError> {
    let Value::Object(map) = serde_json::from_str(src)? else {
        return Err(CliError::Usage("environment must be a JSON object".into()));
    };
    let mut env = BTreeMap::new();
    for (k, v) in map {
        let name = VarName::new(&k).map_err(|e| CliError::Usage(e.to_string()))?;
        let Value::Array(items) = v else {
            return Err(CliError::Usage(format!("`{k}` must map to an array")));
        };
        let coeffs = items.iter().map(json_rational).collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(CliError::Usage(format!("`{k}` maps to an empty series")));
        }
        env.insert(name, Series::new(coeffs, flavor).resize(order));
    }
    Ok(env)
}

fn diff(expr: &str, n: u64) -> Result<Outcome, CliError> {
    let p = parse_diffpoly(&read_arg(expr)?)?;
    Ok(Outcome::value("diff", d_shift_n(&p, n)))
}

fn mul(a: &str, b: &str) -> Result<Outcome, CliError> {
    let p = parse_diffpoly(&read_arg(a)?)?;
    let q = parse_diffpoly(&read_arg(b)?)?;
    Ok(Outcome::value("mul", &p * &q))
}

fn show_vec(v: &[Rational]) -> String {
    Series::new(v.to_vec(), Flavor::Hurwitz).to_string()
}

fn eval(expr: &str, env: &str, order: usize) -> Result<Outcome, CliError> {
    let p: Poly<VarName> = parse_poly(&read_arg(expr)?)?;
    let env_src = read_arg(env)?;
    let h_env = json_env(&env_src, order, Flavor::Hurwitz)?;
    let p_env = json_env(&env_src, order, Flavor::Power)?;
    let omega = (0..=order)
        .map(|n| omega_eval(&p, &h_env, n))
        .collect::<Result<Vec<_>, _>>()?;
    let delta = (0..=order)
        .map(|n| delta_eval(&p, &p_env, n))
        .collect::<Result<Vec<_>, _>>()?;
    let h_ring = ring_eval(&p, &h_env, order, Flavor::Hurwitz)?;
    let p_ring = ring_eval(&p, &p_env, order, Flavor::Power)?;
    let ok = h_ring.coeffs() == omega.as_slice() && p_ring.coeffs() == delta.as_slice();
    let (omega, delta) = (show_vec(&omega), show_vec(&delta));
    let text = format!(
        "omega {omega}\nhurwitz-ring {h_ring}\ndelta {delta}\npower-ring {p_ring}\nagree {ok}"
    );
    let json = json!({
        "schema": 1,
        "verb": "eval",
        "omega": omega,
        "hurwitz_ring": h_ring.to_string(),
        "delta": delta,
        "power_ring": p_ring.to_string(),
        "agree": ok,
    });
    Ok(Outcome { text, json, ok })
}

fn series(verb: &str, flavor: Flavor, args: &SeriesArgs) -> Result<Outcome, CliError> {
    let operands = args
        .operands
        .iter()
        .map(|s| Ok(parse_series(&read_arg(s)?, flavor)?.resize(args.order)))
        .collect::<Result<Vec<_>, CliError>>()?;
    let arity = match args.op {
        SeriesOp::Add | SeriesOp::Mul => 2,
        SeriesOp::Derive => 1,
        SeriesOp::Unit => 0,
    };
    if operands.len() != arity {
        return Err(CliError::Usage(format!(
            "this operation takes {arity} series, got {}",
            operands.len()
        )));
    }
    let out = match args.op {
        SeriesOp::Add => sadd(&operands[0], &operands[1])?,
        SeriesOp::Mul => smul(&operands[0], &operands[1])?,
        SeriesOp::Derive => sderive(&operands[0])?,
        SeriesOp::Unit => sunit(args.order, flavor),
    };
    Ok(Outcome::value(verb, out))
}

fn convert(src: &str, from: Flavor, to: Option<Flavor>, order: Option<usize>) -> Result<Outcome, CliError> {
    let mut f = parse_series(&read_arg(src)?, from)?;
    if let Some(order) = order {
        f = f.resize(order);
    }
    let to = to.unwrap_or(match from {
        Flavor::Hurwitz => Flavor::Power,
        Flavor::Power => Flavor::Hurwitz,
    });
    let out = match (from, to) {
        (Flavor::Power, Flavor::Hurwitz) => psi(&f)?,
        (Flavor::Hurwitz, Flavor::Power) => psi_inv(&f)?,
        _ => f,
    };
    Ok(Outcome::value("psi", out))
}

fn laws(seed: u64, trials: u64) -> Outcome {
    let reports = run_laws(seed, trials);
    let ok = reports.iter().all(|r| r.pass);
    let text = reports.iter().map(|r| r.to_json()).collect::<Vec<_>>().join("\n");
    let json = json!({
        "schema": 1,
        "reports": reports.iter().map(|r| serde_json::to_value(r).expect("reports serialize")).collect::<Vec<_>>(),
    });
    Outcome { text, json, ok }
}

fn json_poly(v: &Value) -> Result<Poly<VarName>, CliError> {
    match v {
        Value::String(s) => Ok(parse_poly(s)?),
        Value::Number(_) => Ok(Poly::constant(json_rational(v)?)),
        other => Err(CliError::Usage(format!("expected a polynomial string, found {other}"))),
    }
}

fn json_word(v: &Value) -> Result<Vec<Poly<VarName>>, CliError> {
    let Value::Array(letters) = v else {
        return Err(CliError::Usage(format!("expected a word (array of letters), found {v}")));
    };
    letters.iter().map(json_poly).collect()
}

/// An element is an array of `{"coeff", "word", "tail"}` objects; `coeff`
/// defaults to 1, `word` to the empty word and `tail` to 1.
fn json_rb(v: &Value) -> Result<RBElem, CliError> {
    let Value::Array(terms) = v else {
        return Err(CliError::Usage(format!("expected an array of terms, found {v}")));
    };
    let mut out = RBElem::zero();
    for t in terms {
        let coeff = t.get("coeff").map(json_rational).transpose()?.unwrap_or_else(Rational::one);
        let word = t.get("word").map(json_word).transpose()?.unwrap_or_default();
        let tail = t.get("tail").map(json_poly).transpose()?.unwrap_or_else(Poly::one);
        out = out.add(&RBElem::pure(&word, &tail).scale(&coeff));
    }
    Ok(out)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::Usage(format!("missing field `{key}`")))
}

fn show_raw(r: &RBRaw) -> String {
    if r.is_zero() {
        return "0".into();
    }
    r.terms()
        .map(|(w, m, x, c)| {
            let letters = w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
            format!("{c}*([{letters}], {m}) (x) {x}")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn rb(op: RbOp, input: &str) -> Result<Outcome, CliError> {
    let v: Value = serde_json::from_str(&read_arg(input)?)?;
    let out = match op {
        RbOp::Shuffle => {
            let u = RBElem::pure(&json_word(field(&v, "u")?)?, &Poly::one());
            let w = RBElem::pure(&json_word(field(&v, "v")?)?, &Poly::one());
            rb_mul(&u, &w).to_string()
        }
        RbOp::Mul => rb_mul(&json_rb(field(&v, "a")?)?, &json_rb(field(&v, "b")?)?).to_string(),
        RbOp::P => rb_P(&json_rb(&v)?).to_string(),
        RbOp::D => rb_D(&json_rb(&v)?).to_string(),
        RbOp::Draw => show_raw(&rb_d_raw(&json_rb(&v)?)),
    };
    Ok(Outcome::value("rb", out))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.verb {
        Verb::Diff { expr, n } => diff(expr, *n),
        Verb::Mul { a, b } => mul(a, b),
        Verb::Eval { expr, env, order } => eval(expr, env, *order),
        Verb::Hurwitz(args) => series("hurwitz", Flavor::Hurwitz, args),
        Verb::Power(args) => series("power", Flavor::Power, args),
        Verb::Psi { series, from, to, order } => convert(series, (*from).into(), to.map(Into::into), *order),
        Verb::Laws { seed, trials } => Ok(laws(*seed, *trials)),
        Verb::Rb { op, input } => rb(*op, input),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
