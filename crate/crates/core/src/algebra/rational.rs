//! Exact rationals. Everything in the engine is computed over `Q`; there is no
//! floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `(-1)^e` as a rational.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Parses `"3"`, `"-3"`, `"3/4"` or `"-3/4"`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Canonical text form: `n` or `n/d` with positive denominator.
pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Coefficient prefix for printing a term: empty for 1, `-` for -1.
pub(crate) fn coefficient_prefix(c: &Q) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else if c.is_negative() {
        format!("-{}*", fmt_rational(&-c))
    } else {
        format!("{}*", fmt_rational(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let x = frac(6, -4);
        assert_eq!(fmt_rational(&x), "-3/2");
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(parse_rational(" -3/2 "), Some(x));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&q(7)), "7");
    }

    #[test]
    fn signs() {
        assert_eq!(sign(3), q(-1));
        assert_eq!(sign(-2), q(1));
    }
}
