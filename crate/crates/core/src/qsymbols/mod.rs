//! q-combinatorial primitives and the ring of q-polynomials.
//!
//! Everything here is exact. `[k]` is the q-integer `1 + q + ... + q^{k-1}`
//! (extended to negative `k` as a Laurent polynomial), `[X]` is
//! `(y - 1)/(q - 1)` with `y = q^X`, and `[X]_k` is the falling product
//! `[X][X-1]...[X-k+1]`.

mod qexp;

pub use qexp::QExpPoly;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatFunc};
use crate::report::Report;

/// Ordinary binomial coefficient `C(n, k)`, zero outside `0..=n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `[k]` for `k >= 0` as an integer polynomial.
pub fn q_bracket_poly(k: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); k])
}

/// `[k] = (q^k - 1)/(q - 1)` for any integer `k`.
pub fn q_bracket(k: i64) -> RatFunc {
    if k >= 0 {
        RatFunc::from_poly(q_bracket_poly(k as usize))
    } else {
        let m = k.unsigned_abs() as usize;
        // [-m] = -q^{-m} [m]
        -(&RatFunc::from_poly(q_bracket_poly(m)) * &RatFunc::q_pow(k))
    }
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn q_factorial(n: usize) -> IntPoly {
    (1..=n).fold(IntPoly::one(), |acc, k| &acc * &q_bracket_poly(k))
}

/// Gaussian binomial coefficient `[n]! / ([k]! [n-k]!)`.
pub fn q_binomial(n: usize, k: usize) -> Result<IntPoly> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("q-binomial ({n}, {k})")));
    }
    let k = k.min(n - k);
    // After step i the accumulator is the q-binomial (n-k+i, i).
    let mut acc = IntPoly::one();
    for i in 1..=k {
        acc = (&acc * &q_bracket_poly(n - k + i))
            .div_exact(&q_bracket_poly(i))
            .expect("q-binomial quotient is a polynomial");
    }
    Ok(acc)
}

/// `[n]_k = [n][n-1]...[n-k+1]` for any integer `n`.
pub fn q_falling_int(n: i64, k: usize) -> RatFunc {
    let mut acc = RatFunc::one();
    for j in 0..k as i64 {
        let b = q_bracket(n - j);
        if b.is_zero() {
            return RatFunc::zero();
        }
        acc = &acc * &b;
    }
    acc
}

/// `[X]^n` as a q-polynomial of degree `n`.
pub fn bracket_x_power(n: usize) -> QExpPoly {
    let scale = RatFunc::q_minus_one().powi(-(n as i64)).expect("q - 1 is nonzero");
    let coeffs = (0..=n)
        .map(|m| {
            let mut c = binomial(n, m);
            if (n - m) % 2 == 1 {
                c = -c;
            }
            scale.mul_int(&c)
        })
        .collect();
    QExpPoly::from_coeffs(coeffs)
}

/// `[X - j] = (q^{-j} y - 1)/(q - 1)`.
pub fn bracket_x_minus(j: i64) -> QExpPoly {
    let inv = RatFunc::q_minus_one().inv().expect("q - 1 is nonzero");
    QExpPoly::from_coeffs(vec![-&inv, &RatFunc::q_pow(-j) * &inv])
}

/// `[X]_k` as a q-polynomial of degree `k`.
pub fn bracket_x_falling(k: usize) -> QExpPoly {
    (0..k as i64).fold(QExpPoly::one(), |acc, j| &acc * &bracket_x_minus(j))
}

/// `(Δ^n P)(0) = Σ_k (-1)^{n-k} C(n,k) P(k)`, given `values[k] = P(k)`.
pub fn finite_difference_iter(values: &[RatFunc], n: usize) -> Result<RatFunc> {
    if values.len() < n + 1 {
        return Err(Error::InsufficientValues {
            needed: n + 1,
            got: values.len(),
        });
    }
    let terms: Vec<RatFunc> = (0..=n)
        .map(|k| {
            let mut c = binomial(n, k);
            if (n - k) % 2 == 1 {
                c = -c;
            }
            values[k].mul_int(&c)
        })
        .collect();
    Ok(RatFunc::sum_of(&terms))
}

/// `u_n = Σ_k C(n,k) v_k`.
pub fn binomial_transform(v: &[RatFunc]) -> Vec<RatFunc> {
    (0..v.len())
        .map(|n| {
            let terms: Vec<RatFunc> = (0..=n).map(|k| v[k].mul_int(&binomial(n, k))).collect();
            RatFunc::sum_of(&terms)
        })
        .collect()
}

/// Inverse of [`binomial_transform`]: `v_n = Σ_k (-1)^{n-k} C(n,k) u_k`.
pub fn binomial_inversion(u: &[RatFunc]) -> Vec<RatFunc> {
    (0..u.len())
        .map(|n| finite_difference_iter(u, n).expect("prefix is long enough"))
        .collect()
}

/// Row `n` of the Carlitz q-Stirling numbers of the second kind,
/// `S_q(n, 0..=n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingRowQ {
    pub n: usize,
    pub entries: Vec<RatFunc>,
}

impl StirlingRowQ {
    /// `S_q(n, k)`, zero for `k > n`.
    pub fn get(&self, k: usize) -> RatFunc {
        self.entries.get(k).cloned().unwrap_or_default()
    }
}

/// The weighted falling basis `q^{k(k-1)/2} [X]_k`, `k = 0..=n_max`.
pub fn weighted_falling_basis(n_max: usize) -> Vec<QExpPoly> {
    let mut basis = Vec::with_capacity(n_max + 1);
    let mut falling = QExpPoly::one();
    for k in 0..=n_max {
        if k > 0 {
            falling = &falling * &bracket_x_minus(k as i64 - 1);
        }
        let w = RatFunc::q_pow((k * k.saturating_sub(1) / 2) as i64);
        basis.push(falling.scale(&w));
    }
    basis
}

/// Expresses `target` (of degree at most `basis.len() - 1`) in the
/// weighted falling basis by back substitution from the top degree.
fn solve_in_falling_basis(target: &QExpPoly, basis: &[QExpPoly]) -> Result<Vec<RatFunc>> {
    let n = target.degree().unwrap_or(0);
    if n >= basis.len() {
        return Err(Error::IndexOutOfRange(format!(
            "degree {n} exceeds falling basis"
        )));
    }
    let mut residual = target.clone();
    let mut out = vec![RatFunc::zero(); n + 1];
    for k in (0..=n).rev() {
        let lead = basis[k].coeff(k);
        let c = residual.coeff(k).checked_div(&lead)?;
        if !c.is_zero() {
            residual = &residual - &basis[k].scale(&c);
        }
        out[k] = c;
    }
    if !residual.is_zero() {
        return Err(Error::CrossCheck("falling-basis solve left a residual".into()));
    }
    Ok(out)
}

/// `S_q(n, k)` via the triangular change of basis
/// `[X]^n = Σ_k q^{k(k-1)/2} S_q(n,k) [X]_k`.
pub fn q_stirling2_row(n: usize) -> StirlingRowQ {
    let basis = weighted_falling_basis(n);
    stirling_row_with_basis(n, &basis)
}

/// Rows `0..=n_max`, sharing one falling basis.
pub fn q_stirling2_rows(n_max: usize) -> Vec<StirlingRowQ> {
    let basis = weighted_falling_basis(n_max);
    (0..=n_max).map(|n| stirling_row_with_basis(n, &basis)).collect()
}

fn stirling_row_with_basis(n: usize, basis: &[QExpPoly]) -> StirlingRowQ {
    let entries = solve_in_falling_basis(&bracket_x_power(n), basis)
        .expect("[X]^n lies in the span of the falling basis");
    StirlingRowQ { n, entries }
}

/// Re-expands a q-Stirling row: `Σ_k q^{k(k-1)/2} S_q(n,k) [X]_k`.
pub fn expand_stirling_row(row: &StirlingRowQ, basis: &[QExpPoly]) -> QExpPoly {
    row.entries
        .iter()
        .zip(basis)
        .fold(QExpPoly::zero(), |acc, (s, b)| &acc + &b.scale(s))
}

/// Both sides of the Gauss binomial formula at a fixed `(x, y)` with
/// symbolic `q`: `(Π_{k<n} (x + q^k y), Σ_k q^{k(k-1)/2} [n,k] x^{n-k} y^k)`.
pub fn gauss_binomial_sides(n: usize, x: &RatFunc, y: &RatFunc) -> (RatFunc, RatFunc) {
    let product = (0..n).fold(RatFunc::one(), |acc, k| {
        &acc * &(x + &(&RatFunc::q_pow(k as i64) * y))
    });
    let terms: Vec<RatFunc> = (0..=n)
        .map(|k| {
            let qb = RatFunc::from_poly(q_binomial(n, k).expect("k <= n"));
            let w = RatFunc::q_pow((k * k.saturating_sub(1) / 2) as i64);
            let xp = x.powi((n - k) as i64).expect("nonnegative power");
            let yp = y.powi(k as i64).expect("nonnegative power");
            &(&(&w * &qb) * &xp) * &yp
        })
        .collect();
    (product, RatFunc::sum_of(&terms))
}

/// The change of basis round-trips for `n <= n_max`, and the rows obey
/// `S_q(n+1,k) = S_q(n,k-1) + [k] S_q(n,k)`.
pub fn check_stirling(n_max: usize) -> Report {
    let mut report = Report::new("stirling");
    let basis = weighted_falling_basis(n_max + 1);
    let rows: Vec<StirlingRowQ> = (0..=n_max + 1)
        .map(|n| stirling_row_with_basis(n, &basis))
        .collect();
    for row in rows.iter().take(n_max + 1) {
        let n = row.n;
        let back = expand_stirling_row(row, &basis);
        report.check(format!("basis round-trip n={n}"), back == bracket_x_power(n), || {
            "re-expansion differs from [X]^n".into()
        });
        let ok = (1..=n + 1).all(|k| {
            rows[n + 1].get(k) == &row.get(k - 1) + &(&q_bracket(k as i64) * &row.get(k))
        });
        report.check(format!("recurrence n={n}"), ok, || "recurrence fails".into());
    }
    report
}
