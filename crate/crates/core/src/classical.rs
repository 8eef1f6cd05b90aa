//! Classical limits: Bernoulli and Stirling numbers, substitution `q := 1`,
//! and the convergent series for `β_n^(r)` when `|q| < 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{RatFunc, Rational};
use crate::qbernoulli::{beta_r_number_closed, cor6_weight, tower_row};
use crate::qsymbols::{binomial, q_stirling2_rows};
use crate::report::Report;

/// Stirling numbers of the second kind, rows `0..=n_max`.
pub fn classical_stirling2_rows(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let row = (0..=n)
            .map(|k| {
                let left = if k >= 1 { prev.get(k - 1).cloned().unwrap_or_default() } else { BigInt::zero() };
                let right = prev.get(k).cloned().unwrap_or_default() * BigInt::from(k);
                left + right
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `S(n, k)`, zero for `k > n`.
pub fn classical_stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    classical_stirling2_rows(n)[n][k].clone()
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn rat(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `B_n = Σ_k (-1)^k k!/(k+1) S(n, k)`, with `B_1 = -1/2`.
pub fn classical_bernoulli(n: usize) -> Rational {
    let row = &classical_stirling2_rows(n)[n];
    row.iter().enumerate().fold(rat(0), |acc, (k, s)| {
        let t = Rational::new(factorial(k) * s, BigInt::from(k + 1));
        if k % 2 == 1 {
            acc - t
        } else {
            acc + t
        }
    })
}

/// `B_0..=B_n` from `Σ_{k<m} C(m,k) B_k = 0` (`m >= 2`), independent of
/// the Stirling numbers.
pub fn bernoulli_by_recurrence(n_max: usize) -> Vec<Rational> {
    let mut b = vec![rat(1)];
    for m in 1..=n_max {
        // Σ_{k<=m} C(m+1,k) B_k = 0
        let s = (0..m).fold(rat(0), |acc, k| acc + &b[k] * rat(binomial(m + 1, k)));
        b.push(-s / rat(binomial(m + 1, m)));
    }
    b
}

/// Substitutes `q := 1` into the canonical form.
pub fn eval_at_q1(f: &RatFunc) -> Result<Rational> {
    f.eval(&rat(1)).map_err(|e| match e {
        Error::PoleAtPoint(_) => Error::PoleAtOne,
        other => other,
    })
}

/// The `q = 1` limits: `β_n^(r)|_{q=1} = B_n` for `1 <= r <= r_max`, the
/// pole of `η_n` for `n >= 2`, the Stirling numbers, and the classical
/// identity `B_n + B_{n+1} = Σ_k (-1)^k k!/(k+2) S(n,k)` with its q-version
/// evaluated at `q = 1`.
pub fn check_q1_limits(n_max: usize, r_max: usize) -> Report {
    let mut report = Report::new("q1-limits");
    let b = bernoulli_by_recurrence(n_max + 1);
    let b_stirling: Vec<Rational> = (0..=n_max + 1).map(classical_bernoulli).collect();
    report.check("Bernoulli: Stirling form = recurrence", b == b_stirling, || {
        "Stirling form and recurrence disagree".into()
    });

    let s = classical_stirling2_rows(n_max);
    let sq = q_stirling2_rows(n_max);
    for n in 0..=n_max {
        let ok = (0..=n).all(|k| eval_at_q1(&sq[n].get(k)).ok() == Some(rat(s[n][k].clone())));
        report.check(format!("S_q(n,k) at q=1 n={n}"), ok, || "row differs".into());
    }

    for r in 1..=r_max {
        let row = tower_row(r, n_max + 1);
        for (n, bn) in b.iter().enumerate().take(n_max + 1) {
            let label = format!("β_n^(r) at q=1 r={r} n={n}");
            match eval_at_q1(row.value(n)) {
                Ok(v) => report.check(label, &v == bn, || format!("{v} != {bn}")),
                Err(e) => report.fail(label, e.to_string()),
            }
        }
    }

    let eta = tower_row(0, n_max);
    for n in 0..=n_max {
        let got = eval_at_q1(eta.value(n));
        let label = format!("η_n at q=1 n={n}");
        if n >= 2 {
            report.check(label, got == Err(Error::PoleAtOne), || format!("expected a pole, got {got:?}"));
        } else {
            report.check(label, got.is_ok(), || format!("{got:?}"));
        }
    }

    let beta = tower_row(1, n_max + 1);
    let q = RatFunc::q();
    for n in 0..=n_max {
        let classical_rhs = (0..=n).fold(rat(0), |acc, k| {
            let t = Rational::new(factorial(k) * &s[n][k], BigInt::from(k + 2));
            if k % 2 == 1 {
                acc - t
            } else {
                acc + t
            }
        });
        let lhs = &b[n] + &b[n + 1];
        report.check(format!("B_n + B_(n+1) n={n}"), lhs == classical_rhs, || {
            format!("{lhs} != {classical_rhs}")
        });
        let q_lhs = eval_at_q1(&(beta.value(n) + &(&q * beta.value(n + 1))));
        let q_rhs: Result<Rational> = (0..=n).try_fold(rat(0), |acc, k| {
            Ok(acc + eval_at_q1(&cor6_weight(k))? * eval_at_q1(&sq[n].get(k))?)
        });
        let ok = matches!((&q_lhs, &q_rhs), (Ok(a), Ok(c)) if *a == lhs && *c == classical_rhs);
        report.check(format!("q-version at q=1 n={n}"), ok, || {
            format!("{q_lhs:?} / {q_rhs:?}")
        });
    }
    report
}

/// Truncated series for `β_n^(r)` at a rational `q0` with `|q0| < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub n: usize,
    pub r: usize,
    #[serde(serialize_with = "ser_rational")]
    pub q0: Rational,
    pub terms_used: usize,
    #[serde(serialize_with = "ser_rational")]
    pub partial_sum: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub tail_bound: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub exact_value: Rational,
}

fn ser_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", &v.numer().to_string())?;
    st.serialize_field("den", &v.denom().to_string())?;
    st.end()
}

impl SeriesReport {
    pub fn error(&self) -> Rational {
        (&self.partial_sum - &self.exact_value).abs()
    }

    /// `|partial_sum - exact_value| <= tail_bound`.
    pub fn within_bound(&self) -> bool {
        self.error() <= self.tail_bound
    }
}

/// Bound on the tail after `K` terms. Each term is at most
/// `(n + 2r) |q|^{mk} (1 - |q|)^{1-n}` in absolute value (`m = max(r, 1)`),
/// because `|[k]| <= 1/(1 - |q|)` for either sign of `q`; summing the
/// geometric tail and rounding the constant up to `n + 2r + 2` gives this.
pub fn series_tail_bound(n: usize, r: usize, q_abs: &Rational, k: usize) -> Rational {
    let m = r.max(1) as i32;
    let one = rat(1);
    let base = (&one - q_abs).pow(1 - n as i32);
    rat(n as i64 + 2 * r as i64 + 2) * base * q_abs.pow(m * k as i32) / (&one - q_abs.pow(m))
}

/// Sums the series until the tail bound drops below `tol`:
/// `Σ_k (r q^{rk} - (n+r) q^{(r+1)k}) [k]^{n-1}` for `r >= 1`, and
/// `(1-q)^{-n} - n Σ_k q^k [k]^{n-1}` for `r = 0`.
pub fn series_beta(n: usize, r: usize, q0: &Rational, tol: &Rational) -> Result<SeriesReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("series needs n >= 1".into()));
    }
    let q_abs = q0.abs();
    if q_abs >= rat(1) {
        return Err(Error::InvalidQ(q0.to_string()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidTolerance(tol.to_string()));
    }

    let mut k_terms = 0usize;
    let mut bound = series_tail_bound(n, r, &q_abs, 0);
    while bound >= *tol {
        k_terms += 1;
        bound = series_tail_bound(n, r, &q_abs, k_terms);
    }

    let one = rat(1);
    let (ri, ni) = (rat(r as i64), rat(n as i64));
    let mut sum = if r == 0 {
        (&one - q0).pow(-(n as i32))
    } else {
        rat(0)
    };
    let mut qk = one.clone(); // q^k
    let mut bracket = rat(0); // [k]
    for _ in 0..k_terms {
        let b = bracket.pow(n as i32 - 1);
        let term = if r == 0 {
            -(&ni * &qk * &b)
        } else {
            let qrk = qk.pow(r as i32);
            (&ri * &qrk - (&ni + &ri) * &qrk * &qk) * &b
        };
        sum += term;
        bracket += &qk;
        qk *= q0;
    }

    let exact_value = beta_r_number_closed(n, r).eval(q0)?;
    Ok(SeriesReport {
        n,
        r,
        q0: q0.clone(),
        terms_used: k_terms,
        partial_sum: sum,
        tail_bound: bound,
        exact_value,
    })
}

/// For each `q0` in the grid the truncated series is within its tail bound
/// of `β_n^(r)(q0)`, and `β_n^(r)|_{q=1} = B_n`; together these give the
/// double limit `q → 1^-` of the series.
pub fn check_cor4(n: usize, r: usize, q_grid: &[Rational], tol: &Rational) -> Report {
    let mut report = Report::new(format!("cor4 n={n} r={r}"));
    for q0 in q_grid {
        let label = format!("series at q={q0}");
        match series_beta(n, r, q0, tol) {
            Ok(s) => report.check(label, s.within_bound() && s.tail_bound < *tol, || {
                format!("error {} vs bound {}", s.error(), s.tail_bound)
            }),
            Err(e) => report.fail(label, e.to_string()),
        }
    }
    let bn = classical_bernoulli(n);
    match eval_at_q1(&beta_r_number_closed(n, r)) {
        Ok(v) => report.check("β_n^(r) at q=1 = B_n", v == bn, || format!("{v} != {bn}")),
        Err(e) => report.fail("β_n^(r) at q=1 = B_n", e.to_string()),
    }
    report
}
