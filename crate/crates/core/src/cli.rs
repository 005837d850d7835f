//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{fmt_rational, rational_to_f64};
use crate::billiard::{carrier_from_form, quadratic_symbolic, rational_orbit};
use crate::dataset::{density_curve, natext_orbit, phi_curve, KINDS};
use crate::error::{Error, Result};
use crate::io::{json_f64, json_vec3};
use crate::lorentz::{QuadForm, Vec3Z};
use crate::minkowski::{guard_digits_from, phi_exact, phi_truncated_f64};
use crate::partition::{load_partition, UnimodularPartition};
use crate::spectral::{jsr_bounds, sigma_from_partition};
use crate::symbolic::SymbolicWord;
use crate::verify::run_all;

/// Environment variable overriding the guard digits of float inputs.
pub const PRECISION_ENV: &str = "BILLIARDS_PRECISION";

#[derive(Parser, Debug)]
#[command(name = "billiards", version, about = "Billiard maps on pythagorean partitions of the circle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PartitionArg {
    /// Built-in name (square, example-5.3, example-7.5) or path to a JSON file
    #[arg(long, default_value = "square")]
    pub partition: String,
}

#[derive(Args, Debug, Clone)]
pub struct OutArg {
    /// Write the result here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct OrbitStart {
    /// Rational starting point a,b,c
    #[arg(long, allow_hyphen_values = true)]
    pub triple: Option<String>,
    /// Binary quadratic form q1,q2,q3 whose roots start the orbit
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    /// Carrier vector v1,v2,v3 of a quadratic point
    #[arg(long, allow_hyphen_values = true)]
    pub carrier: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a partition and print its covectors
    Check {
        #[command(flatten)]
        partition: PartitionArg,
    },
    /// Run the randomized invariant suites
    Verify {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Symbolic orbit of a rational or quadratic point
    Orbit {
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        start: OrbitStart,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Value of the conjugacy at a word or an argument in [0,1)
    Phi {
        #[command(flatten)]
        partition: PartitionArg,
        /// Eventually periodic word "prefix:cycle"
        #[arg(long, conflicts_with = "x", required_unless_present = "x")]
        word: Option<String>,
        /// Normalized argument
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Alphabet size for --word (defaults to the partition size)
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 25)]
        depth: usize,
    },
    /// Write a dataset (CSV for curves, JSON for orbit and jsr)
    Dataset {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 25)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        triple: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        carrier: Option<String>,
        #[arg(long, default_value_t = 100_000)]
        max_steps: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Joint spectral radius bracket and Hölder exponent
    Jsr {
        #[command(flatten)]
        partition: PartitionArg,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Result of a command: text for standard output and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, status: 0 }
    }
}

fn parse_ints(s: &str) -> Result<[BigInt; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("expected three comma-separated integers, got '{s}'")));
    }
    let mut out: [BigInt; 3] = Default::default();
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| Error::Parse(format!("bad integer '{p}'")))?;
    }
    Ok(out)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check_json(p: &UnimodularPartition) -> Value {
    let intervals: Vec<Value> = p
        .intervals()
        .iter()
        .map(|iv| {
            json!({
                "t": json_vec3(iv.t.vec()),
                "t_next": json_vec3(iv.t_next.vec()),
                "w": json_vec3(&iv.w),
                "parity": format!("{:?}", iv.parity).to_lowercase(),
            })
        })
        .collect();
    json!({
        "valid": true,
        "m": p.size(),
        "intervals": intervals,
        "arclength_sum": json_f64(p.arclength_sum()),
    })
}

/// Orbit of a triple, a form or a carrier, as JSON.
pub fn orbit_json(p: &UnimodularPartition, triple: Option<&str>, form: Option<&str>, carrier: Option<&str>, cap: usize) -> Result<Value> {
    if let Some(t) = triple {
        let [a, b, c] = parse_ints(t)?;
        let t = crate::partition::normalize_triple(&Vec3Z::new(a, b, c))?;
        let o = rational_orbit(p, &t, cap)?;
        let mut v = o.to_json();
        v["kind"] = json!("rational");
        return Ok(v);
    }
    let v = if let Some(f) = form {
        let [q1, q2, q3] = parse_ints(f)?;
        carrier_from_form(&QuadForm::new(q1, q2, q3))
    } else if let Some(c) = carrier {
        let [a, b, c] = parse_ints(c)?;
        Vec3Z::new(a, b, c)
    } else {
        return Err(Error::InvalidParameter("one of --triple, --form, --carrier is required".into()));
    };
    let o = quadratic_symbolic(p, &v, cap)?;
    let mut j = o.to_json();
    j["kind"] = json!("quadratic");
    Ok(j)
}

fn phi_json(p: &UnimodularPartition, word: Option<&str>, x: Option<f64>, m: Option<usize>, depth: usize, precision: Option<&str>) -> Result<Value> {
    if let Some(w) = word {
        let w = SymbolicWord::parse(w)?;
        let m = m.unwrap_or_else(|| p.size());
        let q = phi_exact(&w, m)?;
        return Ok(json!({
            "word": w.to_string(),
            "m": m,
            "exact": fmt_rational(&q),
            "value": json_f64(rational_to_f64(&q)),
            "error_bound": 0.0,
        }));
    }
    let x = x.ok_or_else(|| Error::InvalidParameter("one of --word, --x is required".into()))?;
    let guard = guard_digits_from(precision);
    let v = phi_truncated_f64(p, x, depth, guard)?;
    Ok(json!({
        "x": json_f64(x),
        "depth": depth,
        "guard_digits": guard,
        "value": json_f64(v.value()),
        "error_bound": json_f64(v.error_bound()),
    }))
}

fn emit(text: String, out: &OutArg) -> Result<Outcome> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}

/// Runs a parsed command. `precision` is the value of [`PRECISION_ENV`].
pub fn run(cli: &Cli, precision: Option<&str>) -> Result<Outcome> {
    match &cli.command {
        Command::Check { partition } => {
            let p = load_partition(&partition.partition)?;
            Ok(Outcome::ok(pretty(&check_json(&p))))
        }
        Command::Verify { partition, seed, cases, out } => {
            let p = load_partition(&partition.partition)?;
            let rep = run_all(&p, *seed, *cases);
            let mut o = emit(pretty(&rep.to_json()), out)?;
            if !rep.passed() {
                o.status = 1;
            }
            Ok(o)
        }
        Command::Orbit { partition, start, max_steps, out } => {
            let p = load_partition(&partition.partition)?;
            let v = orbit_json(&p, start.triple.as_deref(), start.form.as_deref(), start.carrier.as_deref(), *max_steps)?;
            emit(pretty(&v), out)
        }
        Command::Phi { partition, word, x, m, depth } => {
            let p = load_partition(&partition.partition)?;
            Ok(Outcome::ok(pretty(&phi_json(&p, word.as_deref(), *x, *m, *depth, precision)?)))
        }
        Command::Dataset {
            partition,
            kind,
            samples,
            depth,
            seed,
            triple,
            form,
            carrier,
            max_steps,
            max_len,
            tol,
            out,
        } => {
            let p = load_partition(&partition.partition)?;
            let text = match kind.as_str() {
                "phi-curve" => phi_curve(&p, *samples, *depth)?,
                "density-curve" => density_curve(&p, *samples)?,
                "natext-orbit" => natext_orbit(&p, *samples, *seed)?,
                "orbit" => pretty(&orbit_json(&p, triple.as_deref(), form.as_deref(), carrier.as_deref(), *max_steps)?),
                "jsr" => pretty(&jsr_bounds(&sigma_from_partition(&p)?, *max_len, *tol)?.to_json()),
                other => {
                    return Err(Error::InvalidParameter(format!("unknown dataset kind '{other}', expected one of {}", KINDS.join(", "))))
                }
            };
            emit(text, out)
        }
        Command::Jsr { partition, max_len, tol, out } => {
            let p = load_partition(&partition.partition)?;
            let rep = jsr_bounds(&sigma_from_partition(&p)?, *max_len, *tol)?;
            emit(pretty(&rep.to_json()), out)
        }
    }
}

/// Parses arguments, runs the command and prints the outcome. Errors go to
/// standard error with status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let precision = std::env::var(PRECISION_ENV).ok();
    match run(&cli, precision.as_deref()) {
        Ok(o) => {
            print!("{}", o.text);
            o.status
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
