//! q-power sums `S_{n,r}(N) = Σ_{k<N} q^{rk} [k]^n` and their closed
//! forms in terms of Carlitz-type sequences.

use num_bigint::BigInt;

use crate::carlitz::{carlitz_from_associated, AssociatedSeq, CarlitzSeq};
use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatFunc};
use crate::qsymbols::{q_bracket, q_bracket_poly};
use crate::report::Report;

use super::tower_row;

/// Brute-force `Σ_{k<N} q^{rk} [k]^n`. Needs `r >= 1` and `N >= 1`.
pub fn power_sum_direct(n: usize, r: usize, big_n: usize) -> Result<RatFunc> {
    if r == 0 {
        return Err(Error::InvalidArgument("power sums need r >= 1".into()));
    }
    if big_n == 0 {
        return Err(Error::InvalidArgument("power sums need N >= 1".into()));
    }
    Ok(RatFunc::from_poly(power_sum_poly(n, r, big_n)))
}

/// The same sum as an integer polynomial (any `r`, any `N`).
pub fn power_sum_poly(n: usize, r: usize, big_n: usize) -> IntPoly {
    (0..big_n).fold(IntPoly::zero(), |acc, k| {
        &acc + &(&IntPoly::q_pow(r * k) * &q_bracket_poly(k).pow(n as u32))
    })
}

/// Table of `S_{n,r}(N)` for `n <= n_max`, `r <= r_max`, `N <= n_top`
/// (`N = 0` included, where the sum is empty), built incrementally.
pub struct PowerSumTable {
    // sums[r][n][N]
    sums: Vec<Vec<Vec<IntPoly>>>,
}

impl PowerSumTable {
    pub fn new(n_max: usize, r_max: usize, n_top: usize) -> Self {
        let brackets: Vec<IntPoly> = (0..n_top).map(q_bracket_poly).collect();
        let sums = (0..=r_max)
            .map(|r| {
                let mut table = vec![vec![IntPoly::zero(); n_top + 1]; n_max + 1];
                for (k, b) in brackets.iter().enumerate() {
                    let mut term = IntPoly::q_pow(r * k);
                    for row in table.iter_mut() {
                        row[k + 1] = &row[k] + &term;
                        term = &term * b;
                    }
                }
                table
            })
            .collect();
        PowerSumTable { sums }
    }

    pub fn get(&self, n: usize, r: usize, big_n: usize) -> RatFunc {
        RatFunc::from_poly(self.sums[r][n][big_n].clone())
    }
}

/// The sequence of the first closed form: associated `1/((q-1)[k+r])`.
pub fn thm2_sequence(r: usize, n_max: usize) -> CarlitzSeq {
    let qm1 = RatFunc::q_minus_one();
    carlitz_from_associated(&AssociatedSeq::from_fn(n_max, |k| {
        (&qm1 * &q_bracket((k + r) as i64))
            .inv()
            .expect("k + r >= 1")
    }))
}

/// The sequence of the generalised closed form: associated
/// `(q-1)^{d-1} k(k-1)...(k-d+1)/[k+r-d]`, zero for `k < d`.
pub fn thm3_sequence(r: usize, d: usize, n_max: usize) -> CarlitzSeq {
    let scale = RatFunc::q_minus_one()
        .powi(d as i64 - 1)
        .expect("q - 1 is nonzero");
    carlitz_from_associated(&AssociatedSeq::from_fn(n_max, |k| {
        if k < d {
            return RatFunc::zero();
        }
        let falling = falling_factorial(k, d);
        (&scale / &q_bracket((k + r - d) as i64)).mul_int(&falling)
    }))
}

fn falling_factorial(n: usize, d: usize) -> BigInt {
    (0..d).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j))
}

/// `q^{sN} T_n(N) - T_n(0)`.
fn shifted_difference(seq: &CarlitzSeq, n: usize, s: usize, big_n: usize) -> RatFunc {
    let p = seq.poly(n);
    &(&RatFunc::q_pow((s * big_n) as i64) * &p.eval_int(big_n as i64)) - seq.value(n)
}

fn compare(report: &mut Report, label: String, lhs: &RatFunc, rhs: &RatFunc) {
    report.check(label, lhs == rhs, || format!("{lhs} != {rhs}"));
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidArgument(msg.into()))
    }
}

/// `Σ_{k<N} q^{rk}[k]^n = q^{rN} S_n(N) - S_n(0)`.
pub fn check_thm2(n: usize, r: usize, big_n: usize) -> Result<Report> {
    require(r >= 1 && big_n >= 1, "need r >= 1 and N >= 1")?;
    let mut report = Report::new("thm2");
    let seq = thm2_sequence(r, n);
    let lhs = power_sum_direct(n, r, big_n)?;
    compare(&mut report, format!("n={n} r={r} N={big_n}"), &lhs, &shifted_difference(&seq, n, r, big_n));
    Ok(report)
}

/// `Σ_{k<N} q^{rk}[k]^{n-d} = (q^{(r-d)N} T_n(N) - T_n(0)) / (n(n-1)...(n-d+1))`.
pub fn check_thm3(n: usize, r: usize, d: usize, big_n: usize) -> Result<Report> {
    require(r >= 1 && r >= d && n >= d && big_n >= 1, "need r >= max(d, 1), n >= d, N >= 1")?;
    let mut report = Report::new("thm3");
    let seq = thm3_sequence(r, d, n);
    thm3_entry(&mut report, &seq, n, r, d, big_n, &power_sum_direct(n - d, r, big_n)?);
    Ok(report)
}

fn thm3_entry(
    report: &mut Report,
    seq: &CarlitzSeq,
    n: usize,
    r: usize,
    d: usize,
    big_n: usize,
    lhs: &RatFunc,
) {
    let num = shifted_difference(seq, n, r - d, big_n);
    let rhs = num
        .checked_div(&RatFunc::from_integer(falling_factorial(n, d)))
        .expect("n >= d so the falling factorial is nonzero");
    compare(report, format!("n={n} r={r} d={d} N={big_n}"), lhs, &rhs);
}

/// `Σ_{k<N} q^k [k]^{n-1} = (η_n(N) - η_n)/n`.
pub fn check_cor2(n: usize, big_n: usize) -> Result<Report> {
    require(n >= 1 && big_n >= 1, "need n, N >= 1")?;
    let mut report = Report::new("cor2");
    let eta = tower_row(0, n);
    cor2_entry(&mut report, &eta, n, big_n, &power_sum_direct(n - 1, 1, big_n)?);
    Ok(report)
}

fn cor2_entry(report: &mut Report, eta: &CarlitzSeq, n: usize, big_n: usize, lhs: &RatFunc) {
    let rhs = shifted_difference(eta, n, 0, big_n)
        .checked_div(&RatFunc::from_i64(n as i64))
        .expect("n >= 1");
    compare(report, format!("n={n} N={big_n}"), lhs, &rhs);
}

/// `n Σ q^{2k}[k]^{n-1} + (q-1) Σ q^k[k]^n = q^N β_n(N) - β_n`.
pub fn check_cor3(n: usize, big_n: usize) -> Result<Report> {
    require(n >= 1 && big_n >= 1, "need n, N >= 1")?;
    let mut report = Report::new("cor3");
    let beta = tower_row(1, n);
    let lhs = cor3_lhs(
        n,
        &power_sum_direct(n - 1, 2, big_n)?,
        &power_sum_direct(n, 1, big_n)?,
    );
    compare(&mut report, format!("n={n} N={big_n}"), &lhs, &shifted_difference(&beta, n, 1, big_n));
    Ok(report)
}

fn cor3_lhs(n: usize, s2: &RatFunc, s1: &RatFunc) -> RatFunc {
    &s2.mul_i64(n as i64) + &(&RatFunc::q_minus_one() * s1)
}

/// `n Σ q^{(r+1)k}[k]^{n-1} + (q-1) r Σ q^{rk}[k]^n = q^{rN} β^(r)_n(N) - β^(r)_n`.
/// For `r = 0` the second sum has coefficient zero and is not evaluated.
pub fn check_thm5(n: usize, r: usize, big_n: usize) -> Result<Report> {
    require(n >= 1 && big_n >= 1, "need n, N >= 1")?;
    let mut report = Report::new("thm5");
    let row = tower_row(r, n);
    let first = power_sum_direct(n - 1, r + 1, big_n)?;
    let second = if r == 0 {
        RatFunc::zero()
    } else {
        power_sum_direct(n, r, big_n)?
    };
    let lhs = thm5_lhs(n, r, &first, &second);
    compare(&mut report, format!("n={n} r={r} N={big_n}"), &lhs, &shifted_difference(&row, n, r, big_n));
    Ok(report)
}

fn thm5_lhs(n: usize, r: usize, first: &RatFunc, second: &RatFunc) -> RatFunc {
    let mut lhs = first.mul_i64(n as i64);
    if r > 0 {
        lhs = &lhs + &(&RatFunc::q_minus_one() * second).mul_i64(r as i64);
    }
    lhs
}

/// `Σ q^{rk}[k]^n = q^{rN} S_n(N) - S_n(0)` on `n <= n_max`,
/// `1 <= r <= r_max`, `1 <= N <= n_top`.
pub fn check_thm2_grid(table: &PowerSumTable, n_max: usize, r_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("thm2");
    for r in 1..=r_max {
        let seq = thm2_sequence(r, n_max);
        for n in 0..=n_max {
            for big_n in 1..=n_top {
                compare(
                    &mut report,
                    format!("n={n} r={r} N={big_n}"),
                    &table.get(n, r, big_n),
                    &shifted_difference(&seq, n, r, big_n),
                );
            }
        }
    }
    report
}

/// The generalised closed form for `d <= min(r, 2)`, `d <= n <= n_max`,
/// `1 <= r <= r_max`, `1 <= N <= n_top`.
pub fn check_thm3_grid(table: &PowerSumTable, n_max: usize, r_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("thm3");
    for r in 1..=r_max {
        for d in 0..=r.min(2) {
            let seq = thm3_sequence(r, d, n_max);
            for n in d..=n_max {
                for big_n in 1..=n_top {
                    thm3_entry(&mut report, &seq, n, r, d, big_n, &table.get(n - d, r, big_n));
                }
            }
        }
    }
    report
}

/// `Σ q^k[k]^{n-1} = (η_n(N) - η_n)/n` for `1 <= n <= n_max`, `1 <= N <= n_top`.
pub fn check_cor2_grid(table: &PowerSumTable, n_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("cor2");
    let eta = tower_row(0, n_max);
    for n in 1..=n_max {
        for big_n in 1..=n_top {
            cor2_entry(&mut report, &eta, n, big_n, &table.get(n - 1, 1, big_n));
        }
    }
    report
}

/// The `β` power-sum identity for `1 <= n <= n_max`, `1 <= N <= n_top`.
pub fn check_cor3_grid(table: &PowerSumTable, n_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("cor3");
    let beta = tower_row(1, n_max);
    for n in 1..=n_max {
        for big_n in 1..=n_top {
            let lhs = cor3_lhs(n, &table.get(n - 1, 2, big_n), &table.get(n, 1, big_n));
            compare(&mut report, format!("n={n} N={big_n}"), &lhs, &shifted_difference(&beta, n, 1, big_n));
        }
    }
    report
}

/// The `β^(r)` power-sum identity for `0 <= r <= r_max`, `1 <= n <= n_max`,
/// `1 <= N <= n_top`.
pub fn check_thm5_grid(table: &PowerSumTable, n_max: usize, r_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("thm5");
    for r in 0..=r_max {
        let row = tower_row(r, n_max);
        for n in 1..=n_max {
            for big_n in 1..=n_top {
                let second = if r == 0 {
                    RatFunc::zero()
                } else {
                    table.get(n, r, big_n)
                };
                let lhs = thm5_lhs(n, r, &table.get(n - 1, r + 1, big_n), &second);
                compare(
                    &mut report,
                    format!("n={n} r={r} N={big_n}"),
                    &lhs,
                    &shifted_difference(&row, n, r, big_n),
                );
            }
        }
    }
    report
}

/// Every power-sum closed form on one grid, sharing the brute-force table.
pub fn check_power_sums(n_max: usize, r_max: usize, n_top: usize) -> Report {
    let table = PowerSumTable::new(n_max, r_max + 1, n_top);
    let mut all = Report::new("power sums");
    all.extend(check_thm2_grid(&table, n_max, r_max, n_top));
    all.extend(check_thm3_grid(&table, n_max, r_max, n_top));
    all.extend(check_cor2_grid(&table, n_max, n_top));
    all.extend(check_cor3_grid(&table, n_max, n_top));
    all.extend(check_thm5_grid(&table, n_max, r_max, n_top));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_examples() {
        assert_eq!(
            power_sum_direct(0, 1, 3).unwrap(),
            RatFunc::from_poly(IntPoly::from_i64s(&[1, 1, 1]))
        );
        // q*[1] + q^2*[2]
        assert_eq!(
            power_sum_direct(1, 1, 3).unwrap(),
            RatFunc::from_poly(IntPoly::from_i64s(&[0, 1, 1, 1]))
        );
        assert_eq!(power_sum_direct(2, 2, 2).unwrap(), RatFunc::q_pow(2));
        assert!(power_sum_direct(3, 1, 1).unwrap().is_zero());
        assert!(power_sum_direct(1, 0, 3).is_err());
    }

    #[test]
    fn table_matches_direct() {
        let t = PowerSumTable::new(4, 3, 5);
        for n in 0..=4 {
            for r in 1..=3 {
                for big_n in 1..=5 {
                    assert_eq!(t.get(n, r, big_n), power_sum_direct(n, r, big_n).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_instances() {
        assert!(check_thm2(0, 1, 1).unwrap().passed());
        assert!(check_thm3(3, 1, 1, 4).unwrap().passed());
        assert!(check_thm3(4, 2, 2, 3).unwrap().passed());
        assert!(check_cor2(3, 4).unwrap().passed());
        assert!(check_cor3(1, 1).unwrap().passed());
        assert!(check_cor3(1, 2).unwrap().passed());
        assert!(check_thm5(3, 0, 3).unwrap().passed());
        assert!(check_thm5(2, 4, 3).unwrap().passed());
        assert!(check_thm3(1, 1, 2, 3).is_err());
    }

    #[test]
    fn small_grid() {
        let report = check_power_sums(5, 2, 4);
        assert!(report.passed(), "{report}");
    }
}
