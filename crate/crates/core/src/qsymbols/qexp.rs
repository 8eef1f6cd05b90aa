use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, RatFunc};

/// A q-polynomial: a polynomial in `y = q^X` whose coefficients lie in
/// `Q(q)`, stored in ascending powers of `y`. Its degree is the degree in
/// `y`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QExpPoly {
    coeffs: Vec<RatFunc>,
}

impl QExpPoly {
    pub fn zero() -> Self {
        QExpPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * y^m`.
    pub fn monomial(c: RatFunc, m: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![RatFunc::zero(); m + 1];
        coeffs[m] = c;
        QExpPoly { coeffs }
    }

    /// `y = q^X`.
    pub fn y() -> Self {
        Self::monomial(RatFunc::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        QExpPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> RatFunc {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero q-polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_i64(c)).collect())
    }

    /// Multiplies by `y^m = q^{mX}`.
    pub fn mul_y_pow(&self, m: usize) -> Self {
        if self.is_zero() || m == 0 {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        QExpPoly { coeffs }
    }

    /// Substitutes `y := v`.
    pub fn eval_y(&self, v: &RatFunc) -> RatFunc {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        let mut pow = RatFunc::one();
        for (m, c) in self.coeffs.iter().enumerate() {
            if m > 0 {
                pow = &pow * v;
            }
            if !c.is_zero() {
                terms.push(c * &pow);
            }
        }
        RatFunc::sum_of(&terms)
    }

    /// Value at the integer point `X = n`, i.e. `y := q^n`.
    pub fn eval_int(&self, n: i64) -> RatFunc {
        let terms: Vec<RatFunc> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| c * &RatFunc::q_pow(n * m as i64))
            .collect();
        RatFunc::sum_of(&terms)
    }

    /// `X -> X + j`: the coefficient of `y^m` picks up `q^{jm}`.
    pub fn shift(&self, j: i64) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| c * &RatFunc::q_pow(j * m as i64))
                .collect(),
        )
    }

    /// `Q` with `Q * y = self`; fails unless the constant coefficient is 0.
    pub fn divide_by_y(&self) -> Result<Self> {
        match self.coeffs.first() {
            None => Ok(Self::zero()),
            Some(c) if !c.is_zero() => Err(Error::NonDivisible),
            Some(_) => Ok(QExpPoly {
                coeffs: self.coeffs[1..].to_vec(),
            }),
        }
    }

    /// Euclidean division in `Q(q)[y]`; returns `(quotient, remainder)`.
    pub fn div_rem(&self, d: &QExpPoly) -> Result<(QExpPoly, QExpPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![RatFunc::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let qc = top * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] = &rem[i + j] - &(&qc * dc);
                }
            }
            quot[i] = qc;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }
}

impl fmt::Display for QExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match m {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*y")?,
                _ => write!(f, "({c})*y^{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QExpPoly({self})")
    }
}

impl From<RatFunc> for QExpPoly {
    fn from(c: RatFunc) -> Self {
        QExpPoly::constant(c)
    }
}

impl From<IntPoly> for QExpPoly {
    fn from(p: IntPoly) -> Self {
        QExpPoly::constant(RatFunc::from_poly(p))
    }
}

fn zip_with(a: &QExpPoly, b: &QExpPoly, op: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> QExpPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = RatFunc::zero();
    QExpPoly::from_coeffs(
        (0..n)
            .map(|i| {
                op(
                    a.coeffs.get(i).unwrap_or(&zero),
                    b.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect(),
    )
}

impl Add<&QExpPoly> for &QExpPoly {
    type Output = QExpPoly;
    fn add(self, rhs: &QExpPoly) -> QExpPoly {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub<&QExpPoly> for &QExpPoly {
    type Output = QExpPoly;
    fn sub(self, rhs: &QExpPoly) -> QExpPoly {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Mul<&QExpPoly> for &QExpPoly {
    type Output = QExpPoly;
    fn mul(self, rhs: &QExpPoly) -> QExpPoly {
        if self.is_zero() || rhs.is_zero() {
            return QExpPoly::zero();
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut buckets: Vec<Vec<RatFunc>> = vec![Vec::new(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    buckets[i + j].push(a * b);
                }
            }
        }
        QExpPoly::from_coeffs(buckets.iter().map(RatFunc::sum_of).collect())
    }
}

impl Neg for &QExpPoly {
    type Output = QExpPoly;
    fn neg(self) -> QExpPoly {
        QExpPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<QExpPoly> for QExpPoly {
            type Output = QExpPoly;
            fn $method(self, rhs: QExpPoly) -> QExpPoly {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&QExpPoly> for QExpPoly {
            type Output = QExpPoly;
            fn $method(self, rhs: &QExpPoly) -> QExpPoly {
                (&self).$method(rhs)
            }
        }
        impl $imp<QExpPoly> for &QExpPoly {
            type Output = QExpPoly;
            fn $method(self, rhs: QExpPoly) -> QExpPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: i64) -> RatFunc {
        RatFunc::from_i64(v)
    }

    #[test]
    fn eval_monomial_y() {
        assert_eq!(QExpPoly::y().eval_int(5), RatFunc::q_pow(5));
        assert_eq!(QExpPoly::y().eval_int(-2), RatFunc::q_pow(-2));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(QExpPoly::y().shift(1), QExpPoly::monomial(RatFunc::q(), 1));
        let k = QExpPoly::constant(c(7));
        assert_eq!(k.shift(3), k);
    }

    #[test]
    fn divide_by_y_examples() {
        let y2 = QExpPoly::monomial(RatFunc::one(), 2);
        assert_eq!(y2.divide_by_y().unwrap(), QExpPoly::y());
        assert_eq!(QExpPoly::zero().divide_by_y().unwrap(), QExpPoly::zero());
        let p = &QExpPoly::one() + &QExpPoly::y();
        assert_eq!(p.divide_by_y(), Err(Error::NonDivisible));
    }

    #[test]
    fn div_rem_by_linear() {
        // (y^2 - 1) = (y - 1)(y + 1)
        let a = QExpPoly::from_coeffs(vec![c(-1), c(0), c(1)]);
        let d = QExpPoly::from_coeffs(vec![c(-1), c(1)]);
        let (quot, rem) = a.div_rem(&d).unwrap();
        assert_eq!(quot, QExpPoly::from_coeffs(vec![c(1), c(1)]));
        assert!(rem.is_zero());
    }
}
