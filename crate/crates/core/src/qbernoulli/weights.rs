//! The weights `φ_r(q, k)` expressing `β_n^(r)` through the q-Stirling
//! numbers, and the machinery behind them: the interpolating
//! q-polynomials `f_r(q, k, X)`, their limits `g_r(q, k)`, and the
//! q-partial-fraction decomposition of `q^{kX}/[X]_{k+1}`.

use crate::error::{Error, Result};
use crate::exactalg::RatFunc;
use crate::qsymbols::{
    bracket_x_falling, bracket_x_minus, bracket_x_power, q_binomial, q_bracket, q_factorial,
    q_falling_int, q_stirling2_rows, QExpPoly, StirlingRowQ,
};
use crate::report::Report;

use super::tower_row;

fn triangular(k: usize) -> i64 {
    (k * k.saturating_sub(1) / 2) as i64
}

fn signed_q_factorial(k: usize) -> RatFunc {
    let f = RatFunc::from_poly(q_factorial(k));
    if k % 2 == 1 {
        -f
    } else {
        f
    }
}

fn require_r(r: usize) -> Result<()> {
    if r == 0 {
        Err(Error::InvalidArgument("order r must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `f_r(q, k, X) = q^{k(k-1)/2} (Σ_ℓ q^{(r-ℓ-1)X + (ℓ+1)k} [r-1]_ℓ/[k+r]_{ℓ+1}) [X]_{k+1}`.
pub fn f_r_closed(r: usize, k: usize) -> Result<QExpPoly> {
    require_r(r)?;
    let kr = (k + r) as i64;
    let terms = (0..r).fold(QExpPoly::zero(), |acc, l| {
        let c = &(&RatFunc::q_pow(((l + 1) * k) as i64) * &q_falling_int(r as i64 - 1, l))
            / &q_falling_int(kr, l + 1);
        &acc + &QExpPoly::monomial(c, r - l - 1)
    });
    Ok((&terms * &bracket_x_falling(k + 1)).scale(&RatFunc::q_pow(triangular(k))))
}

/// `q^{k(k-1)/2} Σ_{i<N} q^{ir} [i]_k`.
pub fn f_r_brute(r: usize, k: usize, big_n: usize) -> RatFunc {
    let terms: Vec<RatFunc> = (0..big_n)
        .map(|i| &RatFunc::q_pow((i * r) as i64) * &q_falling_int(i as i64, k))
        .collect();
    &RatFunc::sum_of(&terms) * &RatFunc::q_pow(triangular(k))
}

/// Closed form against brute force for `r <= r_max`, `k <= k_max`,
/// `1 <= N <= n_top`, plus the vanishing at `X = 0`.
pub fn check_prop3(r_max: usize, k_max: usize, n_top: usize) -> Report {
    let mut report = Report::new("prop3");
    for r in 1..=r_max {
        for k in 0..=k_max {
            let f = f_r_closed(r, k).expect("r >= 1");
            report.check(format!("r={r} k={k} X=0"), f.eval_int(0).is_zero(), || {
                "f_r does not vanish at 0".into()
            });
            for big_n in 1..=n_top {
                let closed = f.eval_int(big_n as i64);
                let brute = f_r_brute(r, k, big_n);
                report.check(format!("r={r} k={k} N={big_n}"), closed == brute, || {
                    format!("{closed} != {brute}")
                });
            }
        }
    }
    report
}

/// Coefficients of `q^{kX}/[X]_{k+1} = Σ_i α_{k,i}/[X - i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractionQ {
    pub k: usize,
    pub alphas: Vec<RatFunc>,
}

/// `α_{k,i} = (-1)^{k-i} [k,i] q^{(k²+k)/2 + (i²-i)/2} / [k]!`.
pub fn partial_fraction_q(k: usize) -> PartialFractionQ {
    let fact = RatFunc::from_poly(q_factorial(k));
    let alphas = (0..=k)
        .map(|i| {
            let b = RatFunc::from_poly(q_binomial(k, i).expect("i <= k"));
            let e = ((k * k + k) / 2) as i64 + triangular(i);
            let a = &(&b * &RatFunc::q_pow(e)) / &fact;
            if (k - i) % 2 == 1 {
                -a
            } else {
                a
            }
        })
        .collect();
    PartialFractionQ { k, alphas }
}

impl PartialFractionQ {
    /// `Σ_i α_{k,i} Π_{j≠i} [X - j]`, which equals `q^{kX}`.
    pub fn multiplied_through(&self) -> QExpPoly {
        let factors: Vec<QExpPoly> = (0..=self.k as i64).map(bracket_x_minus).collect();
        self.alphas.iter().enumerate().fold(QExpPoly::zero(), |acc, (i, a)| {
            let prod = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(QExpPoly::one(), |p, (_, f)| &p * f);
            &acc + &prod.scale(a)
        })
    }

    /// `Σ_i α_{k,i}/[m - i]` for an integer `m` outside `0..=k`.
    pub fn eval_at(&self, m: i64) -> Result<RatFunc> {
        let terms = self
            .alphas
            .iter()
            .enumerate()
            .map(|(i, a)| a.checked_div(&q_bracket(m - i as i64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RatFunc::sum_of(&terms))
    }
}

/// The decomposition identity in multiplied-through form, `k <= k_max`.
pub fn check_prop4(k_max: usize) -> Report {
    let mut report = Report::new("prop4");
    for k in 0..=k_max {
        let lhs = QExpPoly::monomial(RatFunc::one(), k);
        let rhs = partial_fraction_q(k).multiplied_through();
        report.check(format!("k={k}"), lhs == rhs, || format!("{rhs} != y^{k}"));
    }
    report
}

/// `g_r(q, k) = (-1)^k [k]! Σ_{i<r} q^{ik} [r-1]_i/[k+r]_{i+1}`.
pub fn g_r_sum_form(r: usize, k: usize) -> Result<RatFunc> {
    require_r(r)?;
    let kr = (k + r) as i64;
    let terms: Vec<RatFunc> = (0..r)
        .map(|i| {
            &(&RatFunc::q_pow((i * k) as i64) * &q_falling_int(r as i64 - 1, i))
                / &q_falling_int(kr, i + 1)
        })
        .collect();
    Ok(&signed_q_factorial(k) * &RatFunc::sum_of(&terms))
}

/// `g_r(q, k) = (-1)^k [k]! [r-1]! q^{1-r}
/// Σ_{i<r} (q-1)^i q^{i(i+1)/2 - i(r-1)} / ([r-1-i]! [k+i+1])`.
pub fn g_r_fraction_form(r: usize, k: usize) -> Result<RatFunc> {
    require_r(r)?;
    let qm1 = RatFunc::q_minus_one();
    let terms: Vec<RatFunc> = (0..r)
        .map(|i| {
            let e = (i * (i + 1) / 2) as i64 - (i * (r - 1)) as i64;
            let num = &qm1.powi(i as i64).expect("nonnegative power") * &RatFunc::q_pow(e);
            let den = &RatFunc::from_poly(q_factorial(r - 1 - i)) * &q_bracket((k + i + 1) as i64);
            &num / &den
        })
        .collect();
    let pre = &(&signed_q_factorial(k) * &RatFunc::from_poly(q_factorial(r - 1)))
        * &RatFunc::q_pow(1 - r as i64);
    Ok(&pre * &RatFunc::sum_of(&terms))
}

/// `lim_{X→0} f_r(q, k, X)/[X]`: divide the closed form exactly by `[X]`
/// and evaluate at `X = 0`.
pub fn g_r_limit_form(r: usize, k: usize) -> Result<RatFunc> {
    let f = f_r_closed(r, k)?;
    let (quot, rem) = f.div_rem(&bracket_x_power(1))?;
    if !rem.is_zero() {
        return Err(Error::NonDivisible);
    }
    Ok(quot.eval_int(0))
}

/// `(-1)^k [k]! Σ_i q^{-ir} [r-1]_i Σ_j α_{i,j}/[k+r-j]`, the expansion
/// through the q-partial fractions.
pub fn g_r_partial_fraction_form(r: usize, k: usize) -> Result<RatFunc> {
    require_r(r)?;
    let terms = (0..r)
        .map(|i| {
            let inner = partial_fraction_q(i).eval_at((k + r) as i64)?;
            Ok(&(&RatFunc::q_pow(-((i * r) as i64)) * &q_falling_int(r as i64 - 1, i)) * &inner)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(&signed_q_factorial(k) * &RatFunc::sum_of(&terms))
}

/// `g_r(q, k)`.
pub fn g_r(r: usize, k: usize) -> Result<RatFunc> {
    g_r_sum_form(r, k)
}

/// `φ_r(q, k)`; the same function as `g_r`. At `k = 0` the same formula is
/// used.
pub fn phi_r(r: usize, k: usize) -> Result<RatFunc> {
    g_r_sum_form(r, k)
}

/// All constructions of `g_r` agree for `r <= r_max`, `k <= k_max`.
pub fn check_cor5_prop5(r_max: usize, k_max: usize) -> Report {
    let mut report = Report::new("cor5-prop5");
    for r in 1..=r_max {
        for k in 0..=k_max {
            let base = g_r_sum_form(r, k).expect("r >= 1");
            let others = [
                ("fraction form", g_r_fraction_form(r, k)),
                ("limit form", g_r_limit_form(r, k)),
                ("partial fractions", g_r_partial_fraction_form(r, k)),
            ];
            for (name, v) in others {
                let label = format!("r={r} k={k} {name}");
                match v {
                    Ok(v) => report.check(label, v == base, || format!("{v} != {base}")),
                    Err(e) => report.fail(label, e.to_string()),
                }
            }
        }
    }
    report
}

fn phi_stirling_sum(r: usize, row: &StirlingRowQ) -> RatFunc {
    let terms: Vec<RatFunc> = (0..=row.n)
        .map(|k| &phi_r(r, k).expect("r >= 1") * &row.get(k))
        .collect();
    RatFunc::sum_of(&terms)
}

/// `β_n^(r) = Σ_k φ_r(q, k) S_q(n, k)`.
pub fn beta_r_via_stirling(n: usize, r: usize) -> Result<RatFunc> {
    require_r(r)?;
    let rows = q_stirling2_rows(n);
    Ok(phi_stirling_sum(r, &rows[n]))
}

/// The Stirling expansion against the closed form, `1 <= r <= r_max`,
/// `n <= n_max`.
pub fn check_thm7(n_max: usize, r_max: usize) -> Report {
    let mut report = Report::new("thm7");
    let rows = q_stirling2_rows(n_max);
    for r in 1..=r_max {
        let beta = tower_row(r, n_max);
        for (n, row) in rows.iter().enumerate() {
            let s = phi_stirling_sum(r, row);
            report.check(format!("r={r} n={n}"), &s == beta.value(n), || {
                format!("{s} != {}", beta.value(n))
            });
        }
    }
    report
}

/// `(-1)^k [k]!/[k+2]`.
pub fn cor6_weight(k: usize) -> RatFunc {
    &signed_q_factorial(k) / &q_bracket(k as i64 + 2)
}

/// `β_n + q β_{n+1} = Σ_k (-1)^k [k]!/[k+2] S_q(n, k)` for `n <= n_max`,
/// together with `(q φ_2 - φ_1)/(q - 1) = (-1)^k [k]!/[k+2]`.
pub fn check_cor6(n_max: usize) -> Report {
    let mut report = Report::new("cor6");
    let beta = tower_row(1, n_max + 1);
    let rows = q_stirling2_rows(n_max);
    let q = RatFunc::q();
    for k in 0..=n_max {
        let combined = (&(&q * &phi_r(2, k).expect("r >= 1")) - &phi_r(1, k).expect("r >= 1"))
            .checked_div(&RatFunc::q_minus_one())
            .expect("q - 1 is nonzero");
        report.check(format!("weight k={k}"), combined == cor6_weight(k), || {
            format!("{combined} != {}", cor6_weight(k))
        });
    }
    for (n, row) in rows.iter().enumerate() {
        let lhs = beta.value(n) + &(&q * beta.value(n + 1));
        let terms: Vec<RatFunc> = (0..=n).map(|k| &cor6_weight(k) * &row.get(k)).collect();
        let rhs = RatFunc::sum_of(&terms);
        report.check(format!("n={n}"), lhs == rhs, || format!("{lhs} != {rhs}"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;
    use crate::qsymbols::q_bracket_poly;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64s(n), IntPoly::from_i64s(d)).unwrap()
    }

    #[test]
    fn f_r_geometric_case() {
        // r = 1, k = 0: Σ_{i<N} q^i = [N]
        let f = f_r_closed(1, 0).unwrap();
        assert_eq!(f, bracket_x_power(1));
        for n in 1..6 {
            assert_eq!(f_r_brute(1, 0, n), RatFunc::from_poly(q_bracket_poly(n)));
        }
    }

    #[test]
    fn f_r_by_hand() {
        // r = 2, k = 1, N = 3: q^2*[1] + q^4*[2]
        let expected = &RatFunc::q_pow(2) + &(&RatFunc::q_pow(4) * &q_bracket(2));
        assert_eq!(f_r_brute(2, 1, 3), expected);
        assert_eq!(f_r_closed(2, 1).unwrap().eval_int(3), expected);
    }

    #[test]
    fn power_sum_weights_match_brute_force() {
        let report = check_prop3(3, 4, 6);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn partial_fraction_small_cases() {
        assert_eq!(partial_fraction_q(0).alphas, vec![RatFunc::one()]);
        let p1 = partial_fraction_q(1);
        assert_eq!(p1.alphas[1], RatFunc::q());
        assert_eq!(p1.alphas[0], -RatFunc::q());
    }

    #[test]
    fn partial_fraction_matches_residues() {
        // α_ℓ = q^{kℓ} / Π_{j≠ℓ} [ℓ - j], obtained by clearing [X - ℓ]
        for k in 0..=6usize {
            let p = partial_fraction_q(k);
            for l in 0..=k {
                let den = (0..=k)
                    .filter(|&j| j != l)
                    .fold(RatFunc::one(), |acc, j| &acc * &q_bracket(l as i64 - j as i64));
                let residue = &RatFunc::q_pow((k * l) as i64) / &den;
                assert_eq!(p.alphas[l], residue, "k={k} l={l}");
            }
        }
    }

    #[test]
    fn partial_fractions_multiply_through() {
        let report = check_prop4(6);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn g_one_is_carlitz_weight() {
        for k in 0..=6 {
            let expected = &signed_q_factorial(k) / &q_bracket(k as i64 + 1);
            assert_eq!(g_r(1, k).unwrap(), expected);
            assert_eq!(g_r_fraction_form(1, k).unwrap(), expected);
        }
    }

    #[test]
    fn phi_two_closed() {
        for k in 0..=6 {
            let inner = &q_bracket(k as i64 + 1).inv().unwrap()
                + &(&RatFunc::q_minus_one() / &q_bracket(k as i64 + 2));
            let expected = &(&signed_q_factorial(k) * &RatFunc::q_pow(-1)) * &inner;
            assert_eq!(phi_r(2, k).unwrap(), expected);
        }
    }

    #[test]
    fn g_two_at_zero() {
        // 1/[2] + [1]_1/[2]_2 = 2/[2]
        let by_hand = &RatFunc::from_i64(2) / &q_bracket(2);
        assert_eq!(g_r(2, 0).unwrap(), by_hand);
        assert_eq!(g_r_fraction_form(2, 0).unwrap(), by_hand);
    }

    #[test]
    fn all_g_forms_agree() {
        let report = check_cor5_prop5(4, 6);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn stirling_examples() {
        assert!(beta_r_via_stirling(0, 1).unwrap().is_one());
        assert_eq!(beta_r_via_stirling(2, 1).unwrap(), rf(&[0, 1], &[1, 2, 2, 1]));
        let report = check_thm7(6, 3);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn stirling_weighted_bernoulli_small() {
        let report = check_cor6(6);
        assert!(report.passed(), "{report}");
        // n = 0: β_0 + qβ_1 = 1/(q+1)
        let beta = tower_row(1, 1);
        let lhs = beta.value(0) + &(&RatFunc::q() * beta.value(1));
        assert_eq!(lhs, rf(&[1], &[1, 1]));
    }
}
