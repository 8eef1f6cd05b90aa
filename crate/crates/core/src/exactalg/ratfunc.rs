//! The rational function field `Q(q)` in canonical form.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{poly_gcd, IntPoly};
use super::Rational;
use crate::error::{Error, Result};

/// Reduced quotient of two integer polynomials in `q`.
///
/// Canonical form: numerator and denominator are coprime as polynomials,
/// their integer contents are jointly coprime, and the denominator has a
/// positive leading coefficient. Zero is `0 / 1`. Two values are equal as
/// fractions exactly when they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Normalises `num / den`.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return Ok(Self::from_coprime(num, den));
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        Ok(Self::from_coprime(num, den))
    }

    /// Finishes normalisation of a pair already coprime over `Q`.
    fn from_coprime(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let c = num.content().gcd(&den.content());
        let negate = den.leading().is_some_and(Signed::is_negative);
        let c = if negate { -c } else { c };
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(IntPoly::q())
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i64) -> Self {
        let m = n.unsigned_abs() as usize;
        if n >= 0 {
            Self::from_poly(IntPoly::q_pow(m))
        } else {
            RatFunc {
                num: IntPoly::one(),
                den: IntPoly::q_pow(m),
            }
        }
    }

    /// `q - 1`.
    pub fn q_minus_one() -> Self {
        Self::from_poly(IntPoly::from_i64s(&[-1, 1]))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn from_integer(c: BigInt) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_integer(BigInt::from(c))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_coprime(
            IntPoly::constant(r.numer().clone()),
            IntPoly::constant(r.denom().clone()),
        )
    }

    pub fn numer(&self) -> &IntPoly {
        &self.num
    }

    pub fn denom(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Whether the value is an integer polynomial (denominator `1`).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(c)` if the value is a rational constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(Rational::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn mul_int(&self, c: &BigInt) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self::from_coprime(self.num.scale(c), self.den.clone())
    }

    pub fn mul_i64(&self, c: i64) -> Self {
        self.mul_int(&BigInt::from(c))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let m = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidArgument(format!("exponent {e} too large")))?;
        Ok(RatFunc {
            num: base.num.pow(m),
            den: base.den.pow(m),
        }
        .renormalize_sign())
    }

    fn renormalize_sign(self) -> Self {
        // Powers of a canonical pair stay coprime; only content and sign
        // may need fixing.
        Self::from_coprime(self.num, self.den)
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(q0.to_string()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Sum of many terms with a single final reduction: the running
    /// denominator is the lcm of the terms' denominators.
    pub fn sum_of<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = &'a RatFunc>,
    {
        let mut num = IntPoly::zero();
        let mut den = IntPoly::one();
        for t in terms {
            if t.is_zero() {
                continue;
            }
            if t.den == den {
                num += &t.num;
                continue;
            }
            let g = poly_gcd(&den, &t.den);
            let t_cof = t.den.div_exact(&g).expect("gcd divides");
            let d_cof = den.div_exact(&g).expect("gcd divides");
            if t_cof.is_one() {
                num += &(&t.num * &d_cof);
            } else {
                num = &num * &t_cof + &t.num * &d_cof;
                den = &den * &t_cof;
            }
        }
        // The running pair is not reduced and may have content or sign
        // mismatches; `new` handles all of it.
        Self::new(num, den).expect("nonzero denominator")
    }

    fn add_impl(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        if self.den.is_one() {
            return Self::from_coprime(&self.num * &rhs.den + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return Self::from_coprime(&rhs.num * &self.den + &self.num, self.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &self.num * &rhs.den + &rhs.num * &self.den;
            return Self::from_coprime(num, &self.den * &rhs.den);
        }
        let a_cof = self.den.div_exact(&g).expect("gcd divides");
        let b_cof = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &self.num * &b_cof + &rhs.num * &a_cof;
        if num.is_zero() {
            return Self::zero();
        }
        // Any common factor of num and a_cof*b_cof*g divides g.
        let h = poly_gcd(&num, &g);
        if h.is_one() {
            Self::from_coprime(num, &(&a_cof * &b_cof) * &g)
        } else {
            let num = num.div_exact(&h).expect("gcd divides");
            let g = g.div_exact(&h).expect("gcd divides");
            Self::from_coprime(num, &(&a_cof * &b_cof) * &g)
        }
    }

    fn mul_impl(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                rhs.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_one() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                rhs.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        Self::from_coprime(&a * &c, &b * &d)
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.needs_parens_as_numerator() {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if self.den.needs_parens_as_denominator() {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_i64(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(rhs)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self.add_impl(&-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.mul_impl(rhs)
    }
}

/// Panics on division by zero; see [`RatFunc::checked_div`].
impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $imp<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl<'a> Sum<&'a RatFunc> for RatFunc {
    fn sum<I: Iterator<Item = &'a RatFunc>>(iter: I) -> RatFunc {
        RatFunc::sum_of(iter)
    }
}

impl Sum<RatFunc> for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> RatFunc {
        let terms: Vec<RatFunc> = iter.collect();
        RatFunc::sum_of(&terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_examples() {
        let f = rf(&[-1, 0, 1], &[-1, 1]);
        assert_eq!((f.numer(), f.denom()), (&p(&[1, 1]), &p(&[1])));
        let f = rf(&[0], &[7, 7]);
        assert_eq!((f.numer(), f.denom()), (&p(&[]), &p(&[1])));
        let f = rf(&[2, 2], &[4]);
        assert_eq!((f.numer(), f.denom()), (&p(&[1, 1]), &p(&[2])));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(RatFunc::new(p(&[1]), IntPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn negative_leading_denominator_is_flipped() {
        let f = rf(&[1], &[1, -1]);
        assert_eq!((f.numer(), f.denom()), (&p(&[-1]), &p(&[-1, 1])));
    }

    #[test]
    fn field_op_examples() {
        let a = rf(&[1], &[-1, 1]);
        assert_eq!(&a + &RatFunc::one(), rf(&[0, 1], &[-1, 1]));
        let b = RatFunc::from_poly(p(&[1, 1]));
        assert_eq!(&b * &b.inv().unwrap(), RatFunc::one());
        let c = rf(&[-1, 1], &[1, 1]);
        assert_eq!(c.powi(2).unwrap(), rf(&[1, -2, 1], &[1, 2, 1]));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(RatFunc::one().checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
        assert_eq!(RatFunc::zero().powi(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf(&[0, 1], &[1, 1]).eval(&rat(1, 2)), Ok(rat(1, 3)));
        assert_eq!(rf(&[1, 1], &[1]).eval(&rat(-1, 1)), Ok(rat(0, 1)));
        assert!(matches!(
            rf(&[1], &[-1, 1]).eval(&rat(1, 1)),
            Err(Error::PoleAtPoint(_))
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(rf(&[-1], &[1, 1]).to_string(), "-1/(q + 1)");
        assert_eq!(rf(&[0, 1], &[1, 2, 2, 1]).to_string(), "q/(q^3 + 2*q^2 + 2*q + 1)");
        assert_eq!(rf(&[1, 1], &[2]).to_string(), "(q + 1)/2");
        assert_eq!(RatFunc::q_pow(-3).to_string(), "1/q^3");
        assert_eq!(rf(&[1], &[0, 2]).to_string(), "1/(2*q)");
        assert_eq!(RatFunc::zero().to_string(), "0");
    }

    #[test]
    fn sum_of_matches_pairwise_addition() {
        let terms = vec![
            rf(&[1], &[1, 1]),
            rf(&[0, 1], &[1, 1, 1]),
            rf(&[-2], &[1, 2, 2, 1]),
            rf(&[3], &[2]),
            rf(&[1], &[1, 1]),
        ];
        let pairwise = terms.iter().fold(RatFunc::zero(), |acc, t| &acc + t);
        assert_eq!(RatFunc::sum_of(&terms), pairwise);
    }
}
