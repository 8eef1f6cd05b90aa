//! Exact arithmetic: big integers, rationals, integer polynomials in `q`
//! and the rational function field `Q(q)`.

mod poly;
mod ratfunc;

pub use num_bigint::BigInt;
pub use poly::{poly_gcd, IntPoly};
pub use ratfunc::RatFunc;

/// Exact rational number with positive denominator in lowest terms.
pub type Rational = num_rational::BigRational;

use crate::error::{Error, Result};

/// Builds `num / den` as a reduced [`RatFunc`].
pub fn ratfunc_normalize(num: IntPoly, den: IntPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

/// Exact value of `f` at `q = q0`.
pub fn ratfunc_eval(f: &RatFunc, q0: &Rational) -> Result<Rational> {
    f.eval(q0)
}

/// Parses a rational literal `p`, `-p`, `+p`, `p/s` with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a rational literal: {s:?}"));
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
        return Err(bad());
    }
    let n: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rational_literals() {
        let r = |n: i64, d: i64| Rational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/2").unwrap(), r(1, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), r(-1, 2));
        assert_eq!(parse_rational("+3").unwrap(), r(3, 1));
        assert_eq!(parse_rational("4/8").unwrap(), r(1, 2));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
    }
}
