//! Exact rational scalars.
//!
//! Every computation in this crate runs over the field of rationals with
//! arbitrary-precision numerators and denominators. `BigRational` already
//! normalizes to lowest terms with a positive denominator, so it is used
//! directly as the scalar type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// `p/q` reduced. Panics on `q == 0`; use [`parse`] for untrusted input.
pub fn rat(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parse the wire format: `"p/q"` or a bare integer, optional leading sign.
pub fn parse(s: &str) -> Result<Scalar> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Canonical wire string: `"p/q"` in lowest terms with `q > 0`, or `"p"` when `q = 1`.
pub fn format(x: &Scalar) -> String {
    x.to_string()
}

/// `x^e` for a non-negative exponent, by repeated squaring.
pub fn pow(x: &Scalar, e: u64) -> Scalar {
    let mut base = x.clone();
    let mut acc = one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rationals `p/q` with `|p| <= max_num` and `q` drawn from `denominators`, deduplicated and sorted.
pub fn grid(max_num: i64, denominators: &[i64]) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = denominators
        .iter()
        .flat_map(|&q| (-max_num * q..=max_num * q).map(move |p| rat(p, q)))
        .filter(|x| x.abs() <= int(max_num))
        .collect();
    out.sort();
    out.dedup();
    out
}
