//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The scalar field of every operator in the crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `p/q`, normalized. Panics on a zero denominator.
pub fn frac(p: i64, q: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

pub fn is_unit(x: &Q) -> bool {
    x.is_integer() && x.numer().abs().is_one()
}

/// Canonical text form: `p` for integers, `p/q` with `q > 0` otherwise.
pub fn to_canonical(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `int` or `int/posint`. Returns `None` on malformed text and
/// `Some(Err(()))` on a zero denominator.
pub fn parse_rational(text: &str) -> Option<Result<Q, ()>> {
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<BigInt>().ok().map(|n| Ok(Q::from_integer(n))),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim();
            if q.starts_with('-') || q.starts_with('+') {
                return None;
            }
            let q = q.parse::<BigInt>().ok()?;
            if q.is_zero() {
                Some(Err(()))
            } else {
                Some(Ok(Q::new(p, q)))
            }
        }
    }
}

/// `base^exp` for a possibly negative exponent; `base` must be nonzero when `exp < 0`.
pub fn pow(base: &Q, exp: i64) -> Q {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    use num_integer::Integer;
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
