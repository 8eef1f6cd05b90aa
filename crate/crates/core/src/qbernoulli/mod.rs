//! Extended Carlitz q-Bernoulli numbers and polynomials.
//!
//! Row `r` of the tower is the Carlitz-type sequence with associated
//! sequence `(k + r)/[k + r]`; row 0 is Carlitz's `η`, row 1 his `β`.
//! The closed form is the source of truth; the recursion through the
//! item-3 transform is kept as an independent cross-check.

mod powersums;
mod weights;

pub use powersums::*;
pub use weights::*;

use crate::carlitz::{
    carlitz_from_associated, carlitz_reconstruct_thm1, transform_p1_item3, umbral_qt_plus_one,
    AssociatedSeq, CarlitzSeq, ZERO_INDEX_CONVENTION,
};
use crate::error::{Error, Result};
use crate::exactalg::RatFunc;
use crate::qsymbols::{binomial, q_bracket, QExpPoly};
use crate::report::Report;

/// `(k + r)/[k + r]` for `k = 0..=n_max`.
pub fn tower_assoc(r: usize, n_max: usize) -> AssociatedSeq {
    AssociatedSeq::from_fn(n_max, |k| tower_weight(k + r))
}

fn tower_weight(m: usize) -> RatFunc {
    if m == 0 {
        RatFunc::from_i64(ZERO_INDEX_CONVENTION)
    } else {
        &RatFunc::from_i64(m as i64) / &q_bracket(m as i64)
    }
}

/// Row `r` of the tower up to `n_max`, from the closed form.
pub fn tower_row(r: usize, n_max: usize) -> CarlitzSeq {
    carlitz_from_associated(&tower_assoc(r, n_max))
}

/// `β_n^(r)(X)` from the closed form.
pub fn beta_r_poly_closed(n: usize, r: usize) -> QExpPoly {
    tower_row(r, n).poly(n).clone()
}

/// `β_n^(r) = (q-1)^{-n} Σ_k (-1)^{n-k} C(n,k) (k+r)/[k+r]`, summed
/// directly as numbers.
pub fn beta_r_number_closed(n: usize, r: usize) -> RatFunc {
    let terms: Vec<RatFunc> = (0..=n)
        .map(|k| {
            let mut c = binomial(n, k);
            if (n - k) % 2 == 1 {
                c = -c;
            }
            tower_weight(k + r).mul_int(&c)
        })
        .collect();
    let scale = RatFunc::q_minus_one()
        .powi(-(n as i64))
        .expect("q - 1 is nonzero");
    &RatFunc::sum_of(&terms) * &scale
}

/// `β_n^(r)` and `β_n^(r)(X)` for `r <= r_max`, `n <= n_max`.
#[derive(Clone, Debug)]
pub struct BernoulliTower {
    pub r_max: usize,
    pub n_max: usize,
    rows: Vec<CarlitzSeq>,
}

impl BernoulliTower {
    /// `β_n^(r)`.
    pub fn number(&self, r: usize, n: usize) -> &RatFunc {
        self.rows[r].value(n)
    }

    /// `β_n^(r)(X)`.
    pub fn poly(&self, r: usize, n: usize) -> &QExpPoly {
        self.rows[r].poly(n)
    }

    pub fn row(&self, r: usize) -> &CarlitzSeq {
        &self.rows[r]
    }

    pub fn numbers(&self, r: usize) -> &[RatFunc] {
        self.rows[r].values()
    }
}

/// Builds the tower from the closed form without any cross-checks.
pub fn tower_closed(r_max: usize, n_max: usize) -> BernoulliTower {
    BernoulliTower {
        r_max,
        n_max,
        rows: (0..=r_max).map(|r| tower_row(r, n_max)).collect(),
    }
}

/// Builds the tower and cross-checks it against the recursive
/// construction, the value recursion and the number form. Any
/// disagreement is returned as an error carrying the failed checks.
pub fn build_tower(r_max: usize, n_max: usize) -> Result<BernoulliTower> {
    let tower = tower_closed(r_max, n_max);
    let report = check_tower(&tower);
    if report.passed() {
        Ok(tower)
    } else {
        let lines: Vec<String> = report
            .failures()
            .map(|e| format!("{}: {:?}", e.label, e.outcome))
            .collect();
        Err(Error::CrossCheck(lines.join("; ")))
    }
}

/// Rows obtained from `η` by applying the item-3 transform `r` times.
pub fn tower_recursive(r_max: usize, n_max: usize) -> Result<Vec<CarlitzSeq>> {
    let mut current = tower_row(0, n_max + r_max);
    let mut rows = vec![current.truncated(n_max)];
    for _ in 0..r_max {
        current = transform_p1_item3(&current)?;
        rows.push(current.truncated(n_max));
    }
    Ok(rows)
}

/// Closed form vs recursion, `β^(r+1)_n = β^(r)_n + (q-1) β^(r)_{n+1}`,
/// the number form, and the symbolic form `Σ C(n,k) β_k q^{kX} [X]^{n-k}`.
pub fn check_tower(tower: &BernoulliTower) -> Report {
    let mut report = Report::new("tower");
    let (r_max, n_max) = (tower.r_max, tower.n_max);
    match tower_recursive(r_max, n_max) {
        Ok(rec) => {
            for (r, row) in rec.iter().enumerate() {
                report.check(format!("r={r} recursive = closed"), row == tower.row(r), || {
                    "rows differ".into()
                });
            }
        }
        Err(e) => report.fail("recursive construction", e.to_string()),
    }
    // one extra value per row for the value recursion
    let wide: Vec<CarlitzSeq> = (0..=r_max).map(|r| tower_row(r, n_max + 1)).collect();
    let qm1 = RatFunc::q_minus_one();
    for r in 0..r_max {
        let ok = (0..=n_max)
            .all(|n| wide[r + 1].value(n) == &(wide[r].value(n) + &(&qm1 * wide[r].value(n + 1))));
        report.check(format!("r={r} value recursion"), ok, || {
            "β^(r+1)_n != β^(r)_n + (q-1)β^(r)_{n+1}".into()
        });
    }
    for r in 0..=r_max {
        let ok = (0..=n_max).all(|n| &beta_r_number_closed(n, r) == tower.number(r, n));
        report.check(format!("r={r} number form"), ok, || "numbers differ".into());
        let rebuilt = carlitz_reconstruct_thm1(tower.numbers(r));
        report.check(format!("r={r} symbolic form"), rebuilt == tower.row(r).polys(), || {
            "symbolic form differs".into()
        });
    }
    report
}

/// The umbral identities of the tower: `(qη+1)^n = η^n` for `n >= 2`,
/// `q(qβ+1)^n - β^n = δ_{n,1}` for `n >= 1`, `β_n = η_n + (q-1)η_{n+1}`,
/// and `q^r(qβ^(r)+1)^n = (β^(r))^n` for `n >= 2`. The `n = 1` residual of
/// the last identity is recorded for `r != 1`, not asserted.
pub fn check_symbolic_eq5(n_max: usize, r_max: usize) -> Report {
    let mut report = Report::new("symbolic");
    let r_top = r_max.max(1);
    let rows: Vec<CarlitzSeq> = (0..=r_top).map(|r| tower_row(r, n_max + 1)).collect();
    let eta = rows[0].values();
    let beta = rows[1].values();

    report.check("η_0 = 1, η_1 = 0", eta[0].is_one() && eta[1].is_zero(), || {
        format!("η_0 = {}, η_1 = {}", eta[0], eta[1])
    });
    report.check("β_0 = 1", beta[0].is_one(), || format!("β_0 = {}", beta[0]));
    for n in 2..=n_max {
        let lhs = umbral_qt_plus_one(eta, n);
        report.check(format!("(qη+1)^n = η^n n={n}"), lhs == eta[n], || {
            format!("residual {}", &lhs - &eta[n])
        });
    }
    let q = RatFunc::q();
    for n in 1..=n_max {
        let residual = &(&q * &umbral_qt_plus_one(beta, n)) - &beta[n];
        let expected = if n == 1 { RatFunc::one() } else { RatFunc::zero() };
        report.check(format!("q(qβ+1)^n - β^n = δ n={n}"), residual == expected, || {
            format!("residual {residual}")
        });
    }
    let qm1 = RatFunc::q_minus_one();
    for n in 0..=n_max {
        let rhs = &eta[n] + &(&qm1 * &eta[n + 1]);
        report.check(format!("β_n = η_n + (q-1)η_(n+1) n={n}"), beta[n] == rhs, || {
            format!("residual {}", &beta[n] - &rhs)
        });
    }
    for (r, row) in rows.iter().enumerate().take(r_max + 1) {
        let t = row.values();
        let qr = RatFunc::q_pow(r as i64);
        for n in 1..=n_max {
            let residual = &(&qr * &umbral_qt_plus_one(t, n)) - &t[n];
            let label = format!("q^r(qβ^(r)+1)^n = (β^(r))^n r={r} n={n}");
            if n >= 2 {
                report.check(label, residual.is_zero(), || format!("residual {residual}"));
            } else {
                report.record(label, residual.to_string());
            }
        }
    }
    report
}
