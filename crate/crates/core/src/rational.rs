//! Exact rational helpers on top of `num-rational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = num_rational::BigRational;

/// `num / den` as a normalized rational.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Canonical text form: `"p/q"` in lowest terms, integers without denominator.
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Dot product of an integer vector with a rational vector.
pub fn dot_iq(a: &[i64], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, _)| **x != 0)
        .fold(Q::zero(), |acc, (x, y)| acc + y * BigInt::from(*x))
}

/// Least common multiple of all denominators.
pub fn common_denominator(xs: &[Q]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a nonzero rational vector to the primitive integer vector on the same ray.
pub fn primitive_ray(xs: &[Q]) -> Vec<BigInt> {
    let d = common_denominator(xs);
    let ints: Vec<BigInt> = xs.iter().map(|x| (x * &d).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn floor_i64(x: &Q) -> i64 {
    i64::try_from(x.floor().to_integer()).expect("value out of i64 range")
}

pub fn ceil_i64(x: &Q) -> i64 {
    i64::try_from(x.ceil().to_integer()).expect("value out of i64 range")
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        i64::try_from(x.to_integer()).ok()
    } else {
        None
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
