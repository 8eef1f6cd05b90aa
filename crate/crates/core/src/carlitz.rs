//! Carlitz-type q-polynomial sequences.
//!
//! A Carlitz-type sequence is determined by its associated sequence
//! `(a_k)`:
//!
//! ```text
//! T_n(X) = (q - 1)^{-n} Σ_k (-1)^{n-k} C(n,k) a_k q^{kX}
//! ```
//!
//! Equivalently (the Appell-like symbolic form) it is determined by its
//! values at zero `t_n = T_n(0)` through
//! `T_n(X) = Σ_k C(n,k) t_k q^{kX} [X]^{n-k}`. Both directions are
//! implemented independently so they can be checked against each other.
//!
//! Sequences are finite prefixes `T_0 .. T_{n_max}`; transforms that read
//! index `n + 1` return a prefix that is one shorter.

use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatFunc, Rational};
use crate::qsymbols::{binomial, bracket_x_power, q_bracket, QExpPoly};
use crate::report::Report;

/// Finite prefix `a_0 .. a_{n_max}` of an associated sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedSeq(Vec<RatFunc>);

impl AssociatedSeq {
    pub fn new(a: Vec<RatFunc>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidArgument(
                "associated sequence needs at least one term".into(),
            ));
        }
        Ok(AssociatedSeq(a))
    }

    /// Builds `a_0 .. a_{n_max}` from a closure.
    pub fn from_fn(n_max: usize, f: impl FnMut(usize) -> RatFunc) -> Self {
        AssociatedSeq((0..=n_max).map(f).collect())
    }

    pub fn terms(&self) -> &[RatFunc] {
        &self.0
    }

    pub fn n_max(&self) -> usize {
        self.0.len() - 1
    }
}

/// A Carlitz-type sequence together with its values at zero and its
/// associated sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarlitzSeq {
    polys: Vec<QExpPoly>,
    values: Vec<RatFunc>,
    assoc: AssociatedSeq,
}

impl CarlitzSeq {
    fn from_parts(polys: Vec<QExpPoly>, assoc: AssociatedSeq) -> Self {
        debug_assert_eq!(polys.len(), assoc.0.len());
        let values = polys.iter().map(|p| p.eval_int(0)).collect();
        CarlitzSeq {
            polys,
            values,
            assoc,
        }
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn polys(&self) -> &[QExpPoly] {
        &self.polys
    }

    pub fn poly(&self, n: usize) -> &QExpPoly {
        &self.polys[n]
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    pub fn value(&self, n: usize) -> &RatFunc {
        &self.values[n]
    }

    pub fn assoc(&self) -> &AssociatedSeq {
        &self.assoc
    }

    /// Keeps `T_0 .. T_{n_max}`.
    pub fn truncated(&self, n_max: usize) -> Self {
        let len = (n_max + 1).min(self.polys.len());
        CarlitzSeq {
            polys: self.polys[..len].to_vec(),
            values: self.values[..len].to_vec(),
            assoc: AssociatedSeq(self.assoc.0[..len].to_vec()),
        }
    }
}

fn signed_binomial(n: usize, k: usize) -> num_bigint::BigInt {
    let c = binomial(n, k);
    if (n - k) % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Builds `T_n` for `n <= n_max` straight from the definition.
pub fn carlitz_from_associated(a: &AssociatedSeq) -> CarlitzSeq {
    let inv = RatFunc::q_minus_one().inv().expect("q - 1 is nonzero");
    let mut scale = RatFunc::one();
    let polys = (0..=a.n_max())
        .map(|n| {
            if n > 0 {
                scale = &scale * &inv;
            }
            let coeffs = (0..=n)
                .map(|k| (&a.0[k] * &scale).mul_int(&signed_binomial(n, k)))
                .collect();
            QExpPoly::from_coeffs(coeffs)
        })
        .collect();
    CarlitzSeq::from_parts(polys, a.clone())
}

/// The symbolic form `T_n(X) = Σ_k C(n,k) t_k q^{kX} [X]^{n-k}`.
pub fn carlitz_reconstruct_thm1(values: &[RatFunc]) -> Vec<QExpPoly> {
    let powers: Vec<QExpPoly> = (0..values.len()).map(bracket_x_power).collect();
    (0..values.len())
        .map(|n| {
            (0..=n).fold(QExpPoly::zero(), |acc, k| {
                let c = values[k].mul_int(&binomial(n, k));
                if c.is_zero() {
                    acc
                } else {
                    &acc + &powers[n - k].mul_y_pow(k).scale(&c)
                }
            })
        })
        .collect()
}

/// `a_n = Σ_k C(n,k) (q-1)^k t_k`.
pub fn associated_from_values(values: &[RatFunc]) -> Result<AssociatedSeq> {
    let qm1 = RatFunc::q_minus_one();
    let mut pow = RatFunc::one();
    let weighted: Vec<RatFunc> = values
        .iter()
        .enumerate()
        .map(|(k, t)| {
            if k > 0 {
                pow = &pow * &qm1;
            }
            t * &pow
        })
        .collect();
    AssociatedSeq::new(crate::qsymbols::binomial_transform(&weighted))
}

/// Item 1: `(q^X n T_{n-1}(X))_n`, associated `((q-1) k a_{k-1})_k`.
pub fn transform_p1_item1(s: &CarlitzSeq) -> CarlitzSeq {
    let qm1 = RatFunc::q_minus_one();
    let n_max = s.n_max();
    let polys = (0..=n_max)
        .map(|n| {
            if n == 0 {
                QExpPoly::zero()
            } else {
                s.polys[n - 1].mul_y_pow(1).scale_i64(n as i64)
            }
        })
        .collect();
    let assoc = AssociatedSeq::from_fn(n_max, |k| {
        if k == 0 {
            RatFunc::zero()
        } else {
            (&qm1 * &s.assoc.0[k - 1]).mul_i64(k as i64)
        }
    });
    CarlitzSeq::from_parts(polys, assoc)
}

/// Item 2 (requires `a_0 = 0`): `(q^{-X} T_{n+1}(X) / (n+1))_n`,
/// associated `(a_{k+1} / ((q-1)(k+1)))_k`.
pub fn transform_p1_item2(s: &CarlitzSeq) -> Result<CarlitzSeq> {
    if !s.assoc.0[0].is_zero() {
        return Err(Error::NonDivisible);
    }
    if s.n_max() == 0 {
        return Err(Error::InvalidArgument(
            "item 2 needs T_1; sequence has only T_0".into(),
        ));
    }
    let qm1 = RatFunc::q_minus_one();
    let n_max = s.n_max() - 1;
    let polys = (0..=n_max)
        .map(|n| {
            let d = s.polys[n + 1].divide_by_y()?;
            Ok(d.scale(&RatFunc::from_i64(n as i64 + 1).inv()?))
        })
        .collect::<Result<Vec<_>>>()?;
    let assoc = (0..=n_max)
        .map(|k| s.assoc.0[k + 1].checked_div(&qm1.mul_i64(k as i64 + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CarlitzSeq::from_parts(polys, AssociatedSeq(assoc)))
}

/// `T_n + (q - 1) T_{n+1}` before the division by `q^X`. Its constant
/// coefficient is always zero for a Carlitz-type sequence.
pub fn item3_numerator(s: &CarlitzSeq, n: usize) -> QExpPoly {
    &s.polys[n] + &s.polys[n + 1].scale(&RatFunc::q_minus_one())
}

/// Item 3: `(q^{-X}(T_n + (q-1) T_{n+1}))_n`, associated `(a_{k+1})_k`.
///
/// A `NonDivisible` error here means the input was not Carlitz-type.
pub fn transform_p1_item3(s: &CarlitzSeq) -> Result<CarlitzSeq> {
    if s.n_max() == 0 {
        return Err(Error::InvalidArgument(
            "item 3 needs T_1; sequence has only T_0".into(),
        ));
    }
    let n_max = s.n_max() - 1;
    let polys = (0..=n_max)
        .map(|n| item3_numerator(s, n).divide_by_y())
        .collect::<Result<Vec<_>>>()?;
    let assoc = AssociatedSeq(s.assoc.0[1..].to_vec());
    Ok(CarlitzSeq::from_parts(polys, assoc))
}

/// Item 4: `(n (T_{n-1} + (q-1) T_n))_n`, associated `((q-1) k a_k)_k`.
pub fn transform_p1_item4(s: &CarlitzSeq) -> CarlitzSeq {
    let qm1 = RatFunc::q_minus_one();
    let n_max = s.n_max();
    let polys = (0..=n_max)
        .map(|n| {
            if n == 0 {
                QExpPoly::zero()
            } else {
                (&s.polys[n - 1] + &s.polys[n].scale(&qm1)).scale_i64(n as i64)
            }
        })
        .collect();
    let assoc = AssociatedSeq::from_fn(n_max, |k| (&qm1 * &s.assoc.0[k]).mul_i64(k as i64));
    CarlitzSeq::from_parts(polys, assoc)
}

/// Umbral expansion of `(q t + 1)^n`: `Σ_k C(n,k) q^k t_k`.
pub fn umbral_qt_plus_one(values: &[RatFunc], n: usize) -> RatFunc {
    let terms: Vec<RatFunc> = (0..=n)
        .map(|k| (&values[k] * &RatFunc::q_pow(k as i64)).mul_int(&binomial(n, k)))
        .collect();
    RatFunc::sum_of(&terms)
}

/// Value used for `P(k)/[k + r]` at `k = r = 0`, where the quotient is
/// undefined. It never affects the identity being checked: that term is
/// multiplied by `q^{k+r} - 1 = 0`. The value `1` is the usual
/// convention for `k/[k]`.
pub const ZERO_INDEX_CONVENTION: i64 = 1;

/// Associated sequence `P(k)/[k + r]`, `k = 0..=n_max`, with the
/// convention above at `k = r = 0`.
pub fn polynomial_over_bracket(p_coeffs: &[Rational], r: usize, n_max: usize) -> AssociatedSeq {
    let p = rational_poly(p_coeffs);
    AssociatedSeq::from_fn(n_max, |k| {
        if k + r == 0 {
            RatFunc::from_i64(ZERO_INDEX_CONVENTION)
        } else {
            let pk = eval_rational_poly(&p, k);
            &RatFunc::from_rational(&pk) / &q_bracket((k + r) as i64)
        }
    })
}

fn rational_poly(c: &[Rational]) -> Vec<Rational> {
    let mut v = c.to_vec();
    while v.last().is_some_and(|x| *x == Rational::from_integer(0.into())) {
        v.pop();
    }
    v
}

fn eval_rational_poly(p: &[Rational], k: usize) -> Rational {
    let x = Rational::from_integer(k.into());
    p.iter()
        .rev()
        .fold(Rational::from_integer(0.into()), |acc, c| acc * &x + c)
}

/// Checks `q^r (q t + 1)^n = t^n` for `d < n <= n_max`, where `t_n` are the
/// values of the Carlitz-type sequence associated to `P(k)/[k + r]` and
/// `d = deg P`. Residuals for `n <= d` are recorded, not asserted.
pub fn check_theorem4(p_coeffs: &[Rational], r: usize, n_max: usize) -> Report {
    let p = rational_poly(p_coeffs);
    let d = p.len().saturating_sub(1);
    let seq = carlitz_from_associated(&polynomial_over_bracket(&p, r, n_max));
    let qr = RatFunc::q_pow(r as i64);
    let mut report = Report::new(format!("thm4 P={} r={r}", format_rational_poly(&p)));
    for n in 0..=n_max {
        let lhs = &qr * &umbral_qt_plus_one(seq.values(), n);
        let rhs = seq.value(n);
        let label = format!("n={n}");
        if n > d {
            report.check(label, &lhs == rhs, || format!("residual {}", &lhs - rhs));
        } else {
            report.record(label, (&lhs - rhs).to_string());
        }
    }
    report
}

fn format_rational_poly(p: &[Rational]) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| **c != Rational::from_integer(0.into()))
        .map(|(i, c)| match i {
            0 => format!("{c}"),
            1 => format!("{c}*k"),
            _ => format!("{c}*k^{i}"),
        })
        .collect();
    terms.join("+")
}

/// Integer-coefficient polynomial `P`, convenience for the checkers.
pub fn integer_poly(c: &[i64]) -> Vec<Rational> {
    c.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Checks the four transforms of a Carlitz-type sequence against their
/// stated associated sequences, plus the composition identities.
pub fn check_proposition1(name: &str, s: &CarlitzSeq) -> Report {
    let mut report = Report::new(format!("prop1 {name}"));
    let agrees = |t: &CarlitzSeq| carlitz_from_associated(t.assoc()).polys() == t.polys();

    let i1 = transform_p1_item1(s);
    report.check("item1 associated sequence", agrees(&i1), || {
        "polys differ from the stated associated sequence".into()
    });
    let i1_n0 = i1.poly(0).is_zero();
    report.check("item1 n=0 is zero", i1_n0, || "T'_0 != 0".into());

    match transform_p1_item2(&i1) {
        Ok(back) => {
            report.check("item2 associated sequence", agrees(&back), || {
                "polys differ from the stated associated sequence".into()
            });
            // item2(item1(S)) has associated (q-1)(k+1) a_k / ((q-1)(k+1)) = a_k
            let expected = s.truncated(back.n_max());
            report.check("item2 after item1 recovers S", back == expected, || {
                "composition differs".into()
            });
        }
        Err(e) => report.fail("item2 after item1", e.to_string()),
    }

    if s.n_max() >= 1 {
        for n in 0..s.n_max() {
            let c = item3_numerator(s, n).coeff(0);
            report.check(format!("item3 cancellation n={n}"), c.is_zero(), || {
                format!("constant coefficient {c}")
            });
        }
        match transform_p1_item3(s) {
            Ok(i3) => {
                report.check("item3 associated sequence", agrees(&i3), || {
                    "polys differ from the stated associated sequence".into()
                });
                let recursion = (0..=i3.n_max()).all(|n| {
                    i3.value(n) == &(s.value(n) + &(&RatFunc::q_minus_one() * s.value(n + 1)))
                });
                report.check("item3 value recursion", recursion, || {
                    "t'_n != t_n + (q-1) t_{n+1}".into()
                });
                let i4 = transform_p1_item4(s);
                report.check("item4 associated sequence", agrees(&i4), || {
                    "polys differ from the stated associated sequence".into()
                });
                let composed = transform_p1_item1(&i3);
                report.check("item4 = item1 after item3", composed == i4.truncated(composed.n_max()), || {
                    "composition differs".into()
                });
            }
            Err(e) => report.fail("item3", e.to_string()),
        }
    }
    report
}

/// Checks both directions of the Appell-type characterisation for one
/// sequence, plus the value/associated duality.
pub fn check_theorem1(name: &str, a: &AssociatedSeq) -> Report {
    let mut report = Report::new(format!("thm1 {name}"));
    let seq = carlitz_from_associated(a);
    let rebuilt = carlitz_reconstruct_thm1(seq.values());
    for (n, (got, want)) in rebuilt.iter().zip(seq.polys()).enumerate() {
        report.check(format!("n={n} symbolic form"), got == want, || {
            "definition and symbolic forms differ".into()
        });
    }
    match associated_from_values(seq.values()) {
        Ok(back) => report.check("associated from values", &back == a, || {
            "value extraction is not inverted".into()
        }),
        Err(e) => report.fail("associated from values", e.to_string()),
    }
    report
}

/// Deterministic pseudo-random associated sequence with small rational
/// function entries `(c0 + c1 q) / (d0 + d1 q + q^2)`.
pub fn random_associated(rng: &mut impl rand::Rng, n_max: usize) -> AssociatedSeq {
    AssociatedSeq::from_fn(n_max, |_| {
        let num = IntPoly::from_i64s(&[rng.gen_range(-5..=5), rng.gen_range(-5..=5)]);
        let den = IntPoly::from_i64s(&[rng.gen_range(1..=4), rng.gen_range(-3..=3), 1]);
        RatFunc::new(num, den).expect("monic denominator")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::IntPoly;
    use crate::qsymbols::bracket_x_power;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(IntPoly::from_i64s(n), IntPoly::from_i64s(d)).unwrap()
    }

    fn eta_assoc(n_max: usize) -> AssociatedSeq {
        polynomial_over_bracket(&integer_poly(&[0, 1]), 0, n_max)
    }

    fn beta_assoc(n_max: usize) -> AssociatedSeq {
        polynomial_over_bracket(&integer_poly(&[1, 1]), 1, n_max)
    }

    #[test]
    fn eta_first_values() {
        let s = carlitz_from_associated(&eta_assoc(1));
        assert_eq!(s.poly(0), &QExpPoly::one());
        assert_eq!(s.value(0), &RatFunc::one());
        assert_eq!(s.value(1), &RatFunc::zero());
    }

    #[test]
    fn constant_associated_gives_bracket_powers() {
        let c = rf(&[3, 1], &[2]);
        let s = carlitz_from_associated(&AssociatedSeq::from_fn(5, |_| c.clone()));
        for n in 0..=5 {
            assert_eq!(s.poly(n), &bracket_x_power(n).scale(&c));
            if n >= 1 {
                assert!(s.value(n).is_zero());
            }
        }
    }

    #[test]
    fn beta_one() {
        let s = carlitz_from_associated(&beta_assoc(1));
        assert_eq!(s.value(1), &rf(&[-1], &[1, 1]));
    }

    #[test]
    fn reconstruct_from_unit_values() {
        let mut vals = vec![RatFunc::zero(); 5];
        vals[0] = RatFunc::one();
        let polys = carlitz_reconstruct_thm1(&vals);
        for (n, p) in polys.iter().enumerate() {
            assert_eq!(p, &bracket_x_power(n));
        }
    }

    #[test]
    fn associated_from_unit_values() {
        let vals = vec![RatFunc::one(), RatFunc::zero(), RatFunc::zero()];
        let a = associated_from_values(&vals).unwrap();
        assert_eq!(a.terms(), &[RatFunc::one(), RatFunc::one(), RatFunc::one()]);
        // the geometric associated sequence comes from all-ones values
        let ones = vec![RatFunc::one(); 3];
        let qm1 = RatFunc::q_minus_one();
        let b = associated_from_values(&ones).unwrap();
        assert_eq!(b.terms()[1], &qm1 + &RatFunc::one());
        assert_eq!(b.terms()[2], &(&qm1 * &qm1) + &(&qm1.mul_i64(2) + &RatFunc::one()));
    }

    #[test]
    fn beta_values_give_beta_associated() {
        let s = carlitz_from_associated(&beta_assoc(6));
        assert_eq!(&associated_from_values(s.values()).unwrap(), s.assoc());
    }

    #[test]
    fn item1_on_bracket_powers() {
        let s = carlitz_from_associated(&AssociatedSeq::from_fn(4, |_| RatFunc::one()));
        let t = transform_p1_item1(&s);
        assert!(t.poly(0).is_zero());
        for n in 1..=4 {
            assert_eq!(
                t.poly(n),
                &bracket_x_power(n - 1).mul_y_pow(1).scale_i64(n as i64)
            );
        }
    }

    #[test]
    fn item1_of_eta_associated() {
        let t = transform_p1_item1(&carlitz_from_associated(&eta_assoc(4)));
        let qm1 = RatFunc::q_minus_one();
        assert!(t.assoc().terms()[0].is_zero());
        // k = 1: (q-1)*1*a_0 with a_0 = 1 by convention
        assert_eq!(t.assoc().terms()[1], qm1);
        for k in 2..=4usize {
            let expected = (&qm1 * &(&RatFunc::from_i64(k as i64 - 1) / &q_bracket(k as i64 - 1)))
                .mul_i64(k as i64);
            assert_eq!(t.assoc().terms()[k], expected);
        }
    }

    #[test]
    fn item2_examples() {
        let a = AssociatedSeq::new(vec![RatFunc::zero(), RatFunc::q_minus_one()]).unwrap();
        let t = transform_p1_item2(&carlitz_from_associated(&a)).unwrap();
        assert_eq!(t.assoc().terms(), &[RatFunc::one()]);
        let bad = carlitz_from_associated(&eta_assoc(3));
        assert_eq!(transform_p1_item2(&bad), Err(Error::NonDivisible));
    }

    #[test]
    fn item3_maps_eta_to_beta() {
        let eta = carlitz_from_associated(&eta_assoc(6));
        let beta = carlitz_from_associated(&beta_assoc(5));
        let t = transform_p1_item3(&eta).unwrap();
        assert_eq!(t, beta);
    }

    #[test]
    fn item4_examples() {
        let beta = carlitz_from_associated(&beta_assoc(5));
        let t = transform_p1_item4(&beta);
        assert!(t.poly(0).is_zero());
        let qm1 = RatFunc::q_minus_one();
        for k in 0..=5usize {
            let expected = (&qm1
                * &(&RatFunc::from_i64(k as i64 + 1) / &q_bracket(k as i64 + 1)))
                .mul_i64(k as i64);
            assert_eq!(t.assoc().terms()[k], expected);
        }
        assert_eq!(carlitz_from_associated(t.assoc()).polys(), t.polys());
    }

    #[test]
    fn transforms_on_eta_and_beta() {
        for (name, a) in [("eta", eta_assoc(6)), ("beta", beta_assoc(6))] {
            let report = check_proposition1(name, &carlitz_from_associated(&a));
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn polynomial_over_bracket_families() {
        let cases = [(integer_poly(&[0, 1]), 0), (integer_poly(&[1, 1]), 1), (integer_poly(&[1]), 2)];
        for (p, r) in cases {
            let report = check_theorem4(&p, r, 8);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn symbolic_form_on_random_sequences() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for i in 0..5 {
            let a = random_associated(&mut rng, 6);
            let report = check_theorem1(&format!("random {i}"), &a);
            assert!(report.passed(), "{report}");
        }
    }
}
