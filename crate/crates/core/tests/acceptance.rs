//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any of them fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcarlitz::carlitz::{check_theorem1, check_theorem4, integer_poly, random_associated};
use qcarlitz::classical::{check_q1_limits, series_beta};
use qcarlitz::exactalg::{IntPoly, RatFunc, Rational};
use qcarlitz::qbernoulli::{
    check_cor5_prop5, check_cor6, check_power_sums, check_prop3, check_prop4,
    check_symbolic_eq5, check_thm7, check_tower, tower_closed,
};
use qcarlitz::qsymbols::check_stirling;
use qcarlitz::report::Report;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rf(n: &[i64], d: &[i64]) -> RatFunc {
    RatFunc::new(IntPoly::from_i64s(n), IntPoly::from_i64s(d)).unwrap()
}

fn summarize(report: &Report) -> Result<String, String> {
    if report.passed() {
        Ok(format!("{} checks", report.checked()))
    } else {
        let first: Vec<String> = report
            .failures()
            .take(3)
            .map(|e| format!("{}: {:?}", e.label, e.outcome))
            .collect();
        Err(first.join("; "))
    }
}

fn carlitz_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut report = Report::new("round trip");
    for i in 0..50 {
        // length 8 means indices 0..=7
        let a = random_associated(&mut rng, 7);
        report.extend(check_theorem1(&format!("seq {i}"), &a));
    }
    summarize(&report)
}

fn power_sums() -> Result<String, String> {
    summarize(&check_power_sums(8, 3, 6))
}

fn tower_triple() -> Result<String, String> {
    let tower = tower_closed(4, 10);
    let mut report = check_tower(&tower);
    report.extend(check_thm7(10, 4));
    report.check("β_1 = -1/(q+1)", tower.number(1, 1) == &rf(&[-1], &[1, 1]), || {
        tower.number(1, 1).to_string()
    });
    let beta2 = &rf(&[0, 1], &[1, 1]) / &rf(&[1, 1, 1], &[1]);
    report.check("β_2 = q/((q+1)(q^2+q+1))", tower.number(1, 2) == &beta2, || {
        tower.number(1, 2).to_string()
    });
    summarize(&report)
}

fn symbolic_suite() -> Result<String, String> {
    let mut report = check_symbolic_eq5(12, 4);
    report.extend(check_theorem4(&integer_poly(&[0, 1]), 0, 12));
    report.extend(check_theorem4(&integer_poly(&[1, 1]), 1, 12));
    report.extend(check_theorem4(&integer_poly(&[1]), 2, 12));
    summarize(&report)
}

fn stirling_machinery() -> Result<String, String> {
    let mut report = check_stirling(15);
    report.extend(check_prop3(3, 5, 8));
    report.extend(check_prop4(6));
    report.extend(check_cor5_prop5(4, 8));
    report.extend(check_cor6(10));
    summarize(&report)
}

fn classical_limits() -> Result<String, String> {
    summarize(&check_q1_limits(12, 4))
}

fn series() -> Result<String, String> {
    let tol = rat(1, 1_000_000_000);
    let mut report = Report::new("series");
    for q0 in [rat(1, 2), rat(1, 3), rat(-1, 2)] {
        for n in 1..=4 {
            for r in 0..=3 {
                let label = format!("n={n} r={r} q={q0}");
                match series_beta(n, r, &q0, &tol) {
                    Ok(s) => report.check(label, s.within_bound() && s.tail_bound < tol, || {
                        format!("error {} bound {}", s.error(), s.tail_bound)
                    }),
                    Err(e) => report.fail(label, e.to_string()),
                }
            }
        }
    }
    match series_beta(2, 1, &rat(1, 2), &tol) {
        Ok(s) => report.check(
            "anchor (2, 1, 1/2) -> 4/21",
            s.exact_value == rat(4, 21) && (&s.partial_sum - rat(4, 21)).abs() <= tol,
            || format!("exact {} partial {}", s.exact_value, s.partial_sum),
        ),
        Err(e) => report.fail("anchor", e.to_string()),
    }
    summarize(&report)
}

fn run_cli(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_qcarlitz")).args(args).output().unwrap();
    (o.status.code(), String::from_utf8_lossy(&o.stdout).into_owned())
}

fn field(text: &str, name: &str) -> Option<Rational> {
    let prefix = format!("{name} = ");
    let line = text.lines().find(|l| l.starts_with(&prefix))?;
    line[prefix.len()..].parse().ok()
}

fn cli_contract() -> Result<String, String> {
    let mut report = Report::new("cli");
    let (code, out) = run_cli(&["table", "--r", "1", "--n", "2"]);
    report.check("table", code == Some(0) && out == "1\n-1/(q + 1)\nq/(q^3 + 2*q^2 + 2*q + 1)\n", || {
        format!("{code:?} {out:?}")
    });
    let (code, out) = run_cli(&["table", "--r", "0", "--n", "1"]);
    report.check("table r=0", code == Some(0) && out == "1\n0\n", || format!("{code:?} {out:?}"));
    let (code, _) = run_cli(&["table", "--r", "-1", "--n", "2"]);
    report.check("table r=-1", code == Some(2), || format!("{code:?}"));

    let (code, out) = run_cli(&["powersum", "--n", "0", "--r", "1", "--N", "3"]);
    report.check("powersum", code == Some(0) && out == "q^2 + q + 1\n", || format!("{code:?} {out:?}"));
    let (code, out) = run_cli(&["powersum", "--n", "2", "--r", "2", "--N", "2", "--q", "1/2"]);
    report.check("powersum at q", code == Some(0) && out == "1/4\n", || format!("{code:?} {out:?}"));
    let (code, _) = run_cli(&["powersum", "--n", "1", "--r", "0", "--N", "3"]);
    report.check("powersum r=0", code == Some(2), || format!("{code:?}"));

    let (code, out) = run_cli(&["series", "--n", "2", "--r", "1", "--q", "1/2", "--tol", "1/1000000"]);
    let close = field(&out, "partial_sum")
        .is_some_and(|p| (p - rat(4, 21)).abs() <= rat(1, 1_000_000));
    report.check("series 4/21", code == Some(0) && close, || format!("{code:?} {out:?}"));
    let (code, out) = run_cli(&["series", "--n", "1", "--r", "1", "--q", "1/3", "--tol", "1/1000"]);
    let close = field(&out, "partial_sum").is_some_and(|p| (p + rat(3, 4)).abs() <= rat(1, 1000))
        && field(&out, "exact_value") == Some(rat(-3, 4));
    report.check("series -3/4", code == Some(0) && close, || format!("{code:?} {out:?}"));
    let (code, _) = run_cli(&["series", "--n", "1", "--r", "1", "--q", "2", "--tol", "1/10"]);
    report.check("series q=2", code == Some(2), || format!("{code:?}"));

    let start = Instant::now();
    let (code, out) = run_cli(&["verify", "--suite", "all", "--n-max", "8", "--r-max", "3"]);
    let elapsed = start.elapsed();
    report.check("verify all", code == Some(0) && elapsed < Duration::from_secs(300), || {
        let tail: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).take(3).collect();
        format!("{code:?} in {elapsed:?}: {}", tail.join("; "))
    });
    summarize(&report).map(|s| format!("{s}, verify all in {:.1}s", elapsed.as_secs_f64()))
}

type Criterion = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("Carlitz round trip, 50 random sequences of length 8", carlitz_round_trip),
        ("power-sum closed forms, n <= 8, r <= 3, N <= 6", power_sums),
        ("tower triple agreement, n <= 10, r <= 4", tower_triple),
        ("symbolic umbral identities, n <= 12", symbolic_suite),
        ("Stirling machinery", stirling_machinery),
        ("q -> 1 limits", classical_limits),
        ("series convergence, tail bound < 1e-9", series),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
