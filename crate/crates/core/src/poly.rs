//! Dense univariate polynomials with integer coefficients and exact
//! rational-root search.

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Coefficients in ascending degree; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<BigInt>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64(&[c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0.iter().rev().fold(Scalar::zero(), |acc, c| acc * x + Scalar::from_integer(c.clone()))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    /// All distinct rational roots, ascending.
    ///
    /// Factors of `x` are split off first; the remaining candidates are
    /// `±p/q` with `p | a_0` and `q | a_d`, each confirmed by exact
    /// evaluation. Divisors are found by trial division, so the trailing and
    /// leading coefficients should be of modest size.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        let Some(_) = self.degree() else {
            return Vec::new();
        };
        let shift = self.0.iter().take_while(|c| c.is_zero()).count();
        let mut roots = Vec::new();
        if shift > 0 {
            roots.push(Scalar::zero());
        }
        let reduced = Poly(self.0[shift..].to_vec());
        if reduced.degree().unwrap_or(0) > 0 {
            let lead = reduced.0.last().expect("nonzero");
            let tail = &reduced.0[0];
            for p in divisors(tail) {
                for q in divisors(lead) {
                    for sign in [1i64, -1] {
                        let cand = Scalar::new(&p * BigInt::from(sign), q.clone());
                        if reduced.eval(&cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

/// Positive divisors of `|n|`, `n != 0`.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).cloned().unwrap_or_default() + rhs.0.get(i).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &rhs.scale(&BigInt::from(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn roots_of_factored_cubic() {
        // (2x - 1)(x + 3)x = 2x^3 + 5x^2 - 3x
        let p = Poly::from_i64(&[0, -3, 5, 2]);
        assert_eq!(p.rational_roots(), vec![int(-3), int(0), rat(1, 2)]);
    }

    #[test]
    fn irreducible_quadratic_has_none() {
        assert!(Poly::from_i64(&[1, 2, 2]).rational_roots().is_empty());
        assert!(Poly::from_i64(&[-2, 0, 1]).rational_roots().is_empty());
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = &Poly::from_i64(&[1, 1]) * &Poly::from_i64(&[1, 1]);
        assert_eq!(p.rational_roots(), vec![int(-1)]);
        assert!(Poly::new(vec![]).rational_roots().is_empty());
        assert!(Poly::constant(5).rational_roots().is_empty());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_i64(&[1, 2]);
        let b = Poly::from_i64(&[-1, 0, 3]);
        assert_eq!(&a * &b, Poly::from_i64(&[-1, -2, 3, 6]));
        assert_eq!(&a - &a, Poly::new(vec![]));
        assert_eq!((&a + &b).eval(&int(2)), int(16));
    }

    #[test]
    fn divisor_listing() {
        let d: Vec<i64> = divisors(&BigInt::from(-12)).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
    }
}
