//! Command-line front end.
//!
//! Every command is a pure function of its arguments: the same argv (and
//! seed) always produces byte-identical output.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::cusp::CuspShape;
use crate::drilling::{drilling_floor, genericity_report, FillingParams, ReportOptions};
use crate::error::Error;
use crate::fibonacci::{family_table, write_csv};
use crate::slope::{farey_walk, intersection_number, is_farey_neighbor, Slope};
use crate::tunnel::{estimate_tunnel, estimate_tunnel_with_meridian, Mode};
use crate::verify::verify_trig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dehnfill", version, about = "Slope, cusp and tunnel-length computations for Dehn fillings")]
struct Cli {
    /// Print reals at full double precision instead of 6 significant digits.
    #[arg(long, global = true)]
    full: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection number of two slopes and whether they are Farey neighbors.
    Slope {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Length, normalized length, waist and shortest longitude on a cusp torus.
    Cusp {
        /// JSON file or built-in name (v3227_T0, v3227_T1).
        #[arg(long)]
        shape: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
    },
    /// Genericity report for filling along a slope.
    Generic {
        #[arg(long)]
        shape: String,
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Target tunnel length for the S³ construction.
        #[arg(long = "target-L", default_value_t = 0.0, allow_negative_numbers = true)]
        target_l: f64,
        /// Drilling threshold K(J, ε); defaults to 4√2π.
        #[arg(long)]
        threshold: Option<f64>,
    },
    /// Tunnel-length bracket from the shortest-longitude length.
    Estimate {
        #[arg(long = "lambda-length", allow_negative_numbers = true)]
        lambda_length: f64,
        /// Meridian length on the maximal cusp, to sharpen the tube radius.
        #[arg(long = "mu-length")]
        mu_length: Option<f64>,
        #[arg(long)]
        asymptotic: bool,
    },
    /// Table of the Fibonacci filling family.
    Family {
        #[arg(long = "n-from")]
        n_from: u64,
        #[arg(long = "n-to")]
        n_to: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Seeded random walk on the Farey graph.
    Farey {
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the triangle identities with explicit half-plane constructions.
    TrigVerify {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Formats a real to 6 significant digits, or exactly with `full`.
pub fn format_real(x: f64, full: bool) -> String {
    let y = round_real(x, full);
    if y != 0.0 && (y.abs() < 1e-4 || y.abs() >= 1e16) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}

fn round_real(x: f64, full: bool) -> f64 {
    if full || !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

fn round_json(v: Value, full: bool) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_real(n.as_f64().expect("f64 number"), full);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_json(x, full)).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, x)| (k, round_json(x, full))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T, full: bool) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&round_json(v, full)).expect("values serialize")
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SlopeSyntax(_) | Error::ShapeFormat(_) | Error::UnknownShape(_) => Failure::Parse(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn load_shape(arg: &str) -> Result<CuspShape, Failure> {
    if let Ok(shape) = CuspShape::builtin(arg) {
        return Ok(shape);
    }
    let text = std::fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("cannot read shape {arg:?}: {e}")))?;
    Ok(CuspShape::from_json(&text)?)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let full = cli.full;
    let num = |x: f64| format_real(x, full);
    let text = match cli.command {
        Command::Slope { a, b } => {
            let (a, b): (Slope, Slope) = (a.parse()?, b.parse()?);
            format!(
                "intersection: {}\nfarey_neighbor: {}\n",
                intersection_number(&a, &b),
                is_farey_neighbor(&a, &b)
            )
        }
        Command::Cusp { shape, slope } => {
            let shape = load_shape(&shape)?;
            let s: Slope = slope.parse()?;
            let lambda = shape.shortest_longitude(&s);
            format!(
                "length: {}\nnormalized_length: {}\nwaist: {}\nshortest_longitude: {}\nlongitude_length: {}\n",
                num(shape.slope_length(&s)),
                num(shape.normalized_length(&s)),
                num(shape.waist_size()),
                lambda,
                num(shape.slope_length(&lambda)),
            )
        }
        Command::Generic {
            shape,
            slope,
            target_l,
            threshold,
        } => {
            let shape = load_shape(&shape)?;
            let s: Slope = slope.parse()?;
            let lambda = shape.shortest_longitude(&s);
            let params = FillingParams::from_max_cusp(shape.slope_length(&s), shape.slope_length(&lambda), shape.normalized_length(&s));
            let options = ReportOptions {
                target_length: target_l,
                drilling_threshold: threshold.unwrap_or_else(drilling_floor),
            };
            to_json(&genericity_report(&params, &options), full) + "\n"
        }
        Command::Estimate {
            lambda_length,
            mu_length,
            asymptotic,
        } => {
            let mode = if asymptotic { Mode::Asymptotic } else { Mode::Quantified };
            let est = match mu_length {
                Some(mu) => estimate_tunnel_with_meridian(lambda_length, mu, mode)?,
                None => estimate_tunnel(lambda_length, mode)?,
            };
            to_json(&est, full) + "\n"
        }
        Command::Family { n_from, n_to, csv } => {
            let rows = family_table(n_from, n_to)?;
            if csv {
                let mut buf = Vec::new();
                write_csv(&rows, &mut buf, num)?;
                String::from_utf8(buf).expect("CSV output is UTF-8")
            } else {
                to_json(&rows, full) + "\n"
            }
        }
        Command::Farey { start, steps, seed } => {
            let start: Slope = start.parse()?;
            format!("{}\n", farey_walk(&start, steps, seed))
        }
        Command::TrigVerify { trials, seed } => to_json(&verify_trig(trials, seed), full) + "\n",
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Domain(format!("cannot write output: {e}")))
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code:
/// 0 on success, 1 when a precondition fails, 2 when input cannot be parsed.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DOMAIN
        }
    }
}
