//! Dense univariate polynomials in `q` over the integers.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Polynomial in `q` with arbitrary-precision integer coefficients,
/// stored in ascending order of degree. The highest stored coefficient
/// is never zero; the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    /// `q^n`.
    pub fn q_pow(n: usize) -> Self {
        Self::monomial(BigInt::one(), n)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^n`.
    pub fn shift_up(&self, n: usize) -> Self {
        if self.is_zero() || n == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        debug_assert!(!c.is_zero());
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar_exact(&c)
        }
    }

    /// Exact quotient `self / d` in `Z[q]`, or `None` if `d` does not divide
    /// `self` there.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let sd = self.degree()?;
        if sd < dd {
            return None;
        }
        let lead = d.leading()?;
        if d.is_one() {
            return Some(self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &qc * dc;
                }
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by nonzero `d`: a remainder of
    /// `lc(d)^e * self` for some `e >= 0`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let lead = d.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let top = rem.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = rem.len() - dd;
            // rem <- lead * rem - top * q^shift * d (topterm already removed)
            let g = top.gcd(lead);
            let mul_rem = lead / &g;
            let mul_d = &top / &g;
            if !mul_rem.is_one() {
                for c in rem.iter_mut() {
                    *c *= &mul_rem;
                }
            }
            for (j, dc) in d.coeffs[..dd].iter().enumerate() {
                if !dc.is_zero() {
                    rem[shift + j] -= &mul_d * dc;
                }
            }
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        IntPoly::from_coeffs(rem)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(d) = self.degree() else {
            return Rational::zero();
        };
        // Homogenised Horner: sum c_i p^i s^(d-i), then divide by s^d.
        let p = x.numer();
        let s = x.denom();
        let mut acc = BigInt::zero();
        let mut s_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &s_pow;
            s_pow *= s;
        }
        let den = num_traits::pow(s.clone(), d);
        Rational::new(acc, den)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (d, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{d}")?,
                (_, false) => write!(f, "{mag}*q^{d}")?,
            }
        }
        Ok(())
    }

    /// Whether the printed form needs parentheses when used as a
    /// numerator.
    pub(crate) fn needs_parens_as_numerator(&self) -> bool {
        self.term_count() > 1
    }

    /// Whether the printed form needs parentheses when used as a
    /// denominator: anything but a bare integer or a bare power of `q`.
    pub(crate) fn needs_parens_as_denominator(&self) -> bool {
        match self.term_count() {
            0 | 1 => {
                let lead = self.leading().expect("nonzero denominator");
                self.degree() != Some(0) && !lead.abs().is_one()
            }
            _ => true,
        }
    }
}

/// Primitive gcd of `a` and `b` with positive leading coefficient.
/// `poly_gcd(0, 0)` is the zero polynomial; a nonzero constant common
/// divisor is reported as `1`.
pub fn poly_gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return b.primitive_part();
    }
    if b.is_zero() {
        return a.primitive_part();
    }
    if a.is_constant() || b.is_constant() {
        return IntPoly::one();
    }
    let (mut x, mut y) = if a.degree() >= b.degree() {
        (a.primitive_part(), b.primitive_part())
    } else {
        (b.primitive_part(), a.primitive_part())
    };
    // Fast path: y divides x.
    if x.div_exact(&y).is_some() {
        return y;
    }
    while !y.is_zero() {
        if y.is_constant() {
            return IntPoly::one();
        }
        let r = x.pseudo_rem(&y).primitive_part();
        x = y;
        y = r;
    }
    x.primitive_part()
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(BigInt::from(c))
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(mut self) -> IntPoly {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
        impl $imp<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
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

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 1]), &p(&[1, 1])), p(&[1]));
        assert_eq!(poly_gcd(&p(&[0, 2, 2]), &p(&[0, 4])), p(&[0, 1]));
    }

    #[test]
    fn gcd_of_zero() {
        assert!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()).is_zero());
        assert_eq!(poly_gcd(&IntPoly::zero(), &p(&[2, -4])), p(&[-1, 2]));
    }

    #[test]
    fn gcd_nontrivial_common_factor() {
        // (q^2+q+1)(q+1)^2 and (q^2+q+1)(q-1)
        let c = p(&[1, 1, 1]);
        let a = &c * &p(&[1, 2, 1]);
        let b = &c * &p(&[-1, 1]);
        assert_eq!(poly_gcd(&a, &b), c);
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(p(&[1, 2, 2, 1]).to_string(), "q^3 + 2*q^2 + 2*q + 1");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(p(&[0, -1, 0, -3]).to_string(), "-3*q^3 - q");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn eval_at_rational() {
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(p(&[1, 1, 1]).eval(&half), Rational::new(7.into(), 4.into()));
        assert_eq!(IntPoly::zero().eval(&half), Rational::zero());
    }
}
