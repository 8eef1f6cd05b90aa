//! Command-line front end.
//!
//! Exit codes: 0 when everything checked holds, 1 when an identity or a
//! convergence bound fails, 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::carlitz::{
    carlitz_from_associated, check_proposition1, check_theorem1, check_theorem4, integer_poly,
    random_associated,
};
use crate::classical::{check_cor4, check_q1_limits, series_beta, SeriesReport};
use crate::error::Error;
use crate::exactalg::{parse_rational, IntPoly, RatFunc, Rational};
use crate::qbernoulli::{
    check_cor2_grid, check_cor3_grid, check_cor5_prop5, check_cor6, check_prop3, check_prop4,
    check_symbolic_eq5, check_thm2, check_thm2_grid, check_thm3_grid, check_thm5, check_thm5_grid,
    check_thm7, check_tower, power_sum_direct, tower_assoc, tower_closed, tower_row, PowerSumTable,
};
use crate::qsymbols::{check_stirling, q_stirling2_row};
use crate::report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qcarlitz", version, about = "Exact Carlitz q-Bernoulli numbers, q-power sums and identity checks")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Thm5,
    Prop1,
    Prop3,
    Prop4,
    Cor2,
    Cor3,
    #[value(name = "cor5-prop5")]
    Cor5Prop5,
    Thm7,
    Cor6,
    Symbolic,
    #[value(name = "q1-limits")]
    Q1Limits,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print β_0^(r) .. β_n^(r).
    Table {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Print the q-Stirling numbers S_q(n, 0..=n).
    Stirling {
        #[arg(long)]
        n: usize,
    },
    /// Run identity checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        r_max: usize,
        /// Largest N in the power-sum grids.
        #[arg(long = "N-max", default_value_t = 6)]
        big_n_max: usize,
        /// Seed for the random sequences of the thm1 and prop1 suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate Σ_{k<N} q^{rk} [k]^n, symbolically or at a rational q.
    Powersum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_parser = rational_arg)]
        q: Option<Rational>,
    },
    /// Sum the series for β_n^(r) at a rational |q| < 1.
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_parser = rational_arg)]
        q: Rational,
        #[arg(long, value_parser = rational_arg)]
        tol: Rational,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn poly_json(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

fn ratfunc_json(f: &RatFunc) -> Value {
    json!({ "num": poly_json(f.numer()), "den": poly_json(f.denom()) })
}

fn rational_json(v: &Rational) -> Value {
    json!({ "num": v.numer().to_string(), "den": v.denom().to_string() })
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the given streams. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Output { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Output::ok(text)
            }
        }
    };
    // a closed pipe should not turn a pass into a panic
    let _ = out.write_all(result.stdout.as_bytes());
    let _ = err.write_all(result.stderr.as_bytes());
    result.code
}

fn dispatch(cli: Cli) -> Output {
    let f = cli.format;
    match cli.command {
        Command::Table { r, n } => cmd_table(r, n, f),
        Command::Stirling { n } => cmd_stirling(n, f),
        Command::Verify { suite, n_max, r_max, big_n_max, seed } => {
            cmd_verify(suite, n_max, r_max, big_n_max, seed, f)
        }
        Command::Powersum { n, r, big_n, q } => cmd_powersum(n, r, big_n, q.as_ref(), f),
        Command::Series { n, r, q, tol } => cmd_series(n, r, &q, &tol, f),
    }
}

fn cmd_table(r: usize, n_max: usize, f: Format) -> Output {
    let row = tower_row(r, n_max);
    let text = match f {
        Format::Text => row.values().iter().map(|v| format!("{v}\n")).collect(),
        Format::Json => {
            let rows: Vec<Value> = row
                .values()
                .iter()
                .enumerate()
                .map(|(n, v)| json!({ "n": n, "num": poly_json(v.numer()), "den": poly_json(v.denom()) }))
                .collect();
            format!("{}\n", json!({ "r": r, "values": rows }))
        }
    };
    Output::ok(text)
}

fn cmd_stirling(n: usize, f: Format) -> Output {
    let row = q_stirling2_row(n);
    let text = match f {
        Format::Text => row
            .entries
            .iter()
            .enumerate()
            .map(|(k, v)| format!("S_q({n},{k}) = {v}\n"))
            .collect(),
        Format::Json => {
            let entries: Vec<Value> = row
                .entries
                .iter()
                .enumerate()
                .map(|(k, v)| json!({ "k": k, "value": ratfunc_json(v) }))
                .collect();
            format!("{}\n", json!({ "n": n, "entries": entries }))
        }
    };
    Output::ok(text)
}

/// The reports making up one suite.
pub fn suite_reports(name: &str, n_max: usize, r_max: usize, big_n_max: usize, seed: u64) -> Option<Vec<Report>> {
    let suite = Suite::from_str(name, false).ok()?;
    Some(run_suite(suite, n_max, r_max, big_n_max, seed))
}

fn run_suite(suite: Suite, n_max: usize, r_max: usize, big_n_max: usize, seed: u64) -> Vec<Report> {
    let table = || PowerSumTable::new(n_max, r_max + 1, big_n_max);
    match suite {
        Suite::Thm1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<Report> = (0..20)
                .map(|i| check_theorem1(&format!("random {i}"), &random_associated(&mut rng, n_max)))
                .collect();
            for r in 0..=r_max {
                out.push(check_theorem1(&format!("tower r={r}"), &tower_assoc(r, n_max)));
            }
            out
        }
        Suite::Thm2 => vec![check_thm2_grid(&table(), n_max, r_max, big_n_max)],
        Suite::Thm3 => vec![check_thm3_grid(&table(), n_max, r_max, big_n_max)],
        Suite::Thm4 => vec![
            check_theorem4(&integer_poly(&[0, 1]), 0, n_max),
            check_theorem4(&integer_poly(&[1, 1]), 1, n_max),
            check_theorem4(&integer_poly(&[1]), 2, n_max),
        ],
        Suite::Thm5 => vec![check_thm5_grid(&table(), n_max, r_max, big_n_max)],
        Suite::Prop1 => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<Report> = (0..=r_max)
                .map(|r| check_proposition1(&format!("tower r={r}"), &tower_row(r, n_max)))
                .collect();
            for i in 0..5 {
                let s = carlitz_from_associated(&random_associated(&mut rng, n_max));
                out.push(check_proposition1(&format!("random {i}"), &s));
            }
            out
        }
        Suite::Prop3 => vec![check_prop3(r_max, n_max.min(5), n_max)],
        Suite::Prop4 => vec![check_prop4(n_max.min(6))],
        Suite::Cor2 => vec![check_cor2_grid(&table(), n_max, big_n_max)],
        Suite::Cor3 => vec![check_cor3_grid(&table(), n_max, big_n_max)],
        Suite::Cor5Prop5 => vec![check_cor5_prop5(r_max.max(1), n_max)],
        Suite::Thm7 => vec![
            check_stirling(n_max),
            check_tower(&tower_closed(r_max, n_max)),
            check_thm7(n_max, r_max.max(1)),
        ],
        Suite::Cor6 => vec![check_cor6(n_max)],
        Suite::Symbolic => vec![check_symbolic_eq5(n_max, r_max)],
        Suite::Q1Limits => {
            let grid = [Rational::new(1.into(), 2.into()), Rational::new(3.into(), 4.into())];
            let tol = Rational::new(1.into(), 1_000_000.into());
            let mut out = vec![check_q1_limits(n_max, r_max.max(1))];
            for n in 1..=n_max.min(4) {
                for r in 1..=r_max.max(1) {
                    out.push(check_cor4(n, r, &grid, &tol));
                }
            }
            out
        }
        Suite::All => Suite::value_variants()
            .iter()
            .filter(|s| **s != Suite::All)
            .flat_map(|s| run_suite(*s, n_max, r_max, big_n_max, seed))
            .collect(),
    }
}

fn cmd_verify(suite: Suite, n_max: usize, r_max: usize, big_n_max: usize, seed: u64, f: Format) -> Output {
    if big_n_max == 0 {
        return Output::usage("--N-max must be at least 1");
    }
    let reports = run_suite(suite, n_max, r_max, big_n_max, seed);
    let passed = reports.iter().all(Report::passed);
    let checked: usize = reports.iter().map(Report::checked).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    let name = suite.to_possible_value().expect("no skipped variants").get_name().to_string();
    let text = match f {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| format!("{r}\n")).collect();
            s.push_str(&format!(
                "{} suite {name}: {checked} checked, {failed} failed\n",
                if passed { "PASS" } else { "FAIL" }
            ));
            s
        }
        Format::Json => format!(
            "{}\n",
            json!({ "suite": name, "passed": passed, "checked": checked, "failed": failed, "reports": reports })
        ),
    };
    Output {
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
        stdout: text,
        stderr: String::new(),
    }
}

fn cmd_powersum(n: usize, r: usize, big_n: usize, q: Option<&Rational>, f: Format) -> Output {
    if r == 0 {
        return Output::usage("--r must be at least 1");
    }
    if big_n == 0 {
        return Output::usage("--N must be at least 1");
    }
    let value = match power_sum_direct(n, r, big_n) {
        Ok(v) => v,
        Err(e) => return Output::usage(e),
    };
    let mut cross = check_thm2(n, r, big_n).expect("arguments validated");
    if n >= 1 {
        cross.extend(check_thm5(n, r, big_n).expect("arguments validated"));
    }
    if !cross.passed() {
        return Output {
            code: EXIT_FAILURE,
            stdout: String::new(),
            stderr: format!("closed-form cross-check failed\n{cross}\n"),
        };
    }
    let (text_value, json_value) = match q {
        None => (value.to_string(), ratfunc_json(&value)),
        Some(q0) => match value.eval(q0) {
            Ok(v) => (v.to_string(), rational_json(&v)),
            Err(e) => return Output::usage(e),
        },
    };
    let text = match f {
        Format::Text => format!("{text_value}\n"),
        Format::Json => format!(
            "{}\n",
            json!({ "n": n, "r": r, "N": big_n, "q": q.map(rational_json), "value": json_value })
        ),
    };
    Output::ok(text)
}

fn series_text(s: &SeriesReport) -> String {
    format!(
        "n = {}\nr = {}\nq0 = {}\nterms_used = {}\npartial_sum = {}\ntail_bound = {}\nexact_value = {}\nwithin_bound = {}\n",
        s.n,
        s.r,
        s.q0,
        s.terms_used,
        s.partial_sum,
        s.tail_bound,
        s.exact_value,
        s.within_bound()
    )
}

fn cmd_series(n: usize, r: usize, q: &Rational, tol: &Rational, f: Format) -> Output {
    let s = match series_beta(n, r, q, tol) {
        Ok(s) => s,
        Err(e @ (Error::InvalidQ(_) | Error::InvalidTolerance(_) | Error::InvalidArgument(_))) => {
            return Output::usage(e)
        }
        Err(e) => {
            return Output {
                code: EXIT_FAILURE,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let text = match f {
        Format::Text => series_text(&s),
        Format::Json => {
            let mut v = serde_json::to_value(&s).expect("plain data");
            v["within_bound"] = Value::Bool(s.within_bound());
            format!("{v}\n")
        }
    };
    Output {
        code: if s.within_bound() { EXIT_OK } else { EXIT_FAILURE },
        stdout: text,
        stderr: String::new(),
    }
}
