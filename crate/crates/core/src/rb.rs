//! Linear operators and the Rota–Baxter identity
//!
//! ```text
//! R(x) R(y) = R( R(x) y + x R(y) + θ x y )
//! ```
//!
//! By bilinearity it suffices to check basis pairs `(e_i, e_j)` with
//! `i <= j`. [`rb_residual_full`] does exactly that and nothing more; it is
//! the reference every other check in the crate is measured against.
//! [`rb_residual_reduced`] evaluates the scalar system an upper triangular
//! operator must satisfy on a canonical algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::canonical::CanonicalAlgebra;
use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::matrix::{self, Matrix, Vector};
use crate::scalar::Scalar;

/// Rota–Baxter weight θ.
pub type Weight = Scalar;

/// Linear operator with row `i` holding `R(e_i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOperator(Matrix);

impl LinearOperator {
    pub fn new(m: Matrix) -> Self {
        Self(m)
    }

    pub fn zero(n: usize) -> Self {
        Self(Matrix::zeros(n))
    }

    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self(Matrix::from_i64(rows))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `r_{i,j}`, 1-based.
    pub fn r(&self, i: usize, j: usize) -> &Scalar {
        &self.0[(i - 1, j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.0[(i - 1, j - 1)] = v;
    }

    /// `R(x)` for coordinates `x` in the natural basis.
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.0.left_apply(x)
    }

    /// `(r_{1,1}, ..., r_{n,n})`.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.dim()).map(|i| self.0[(i, i)].clone()).collect()
    }

    /// `(r_{1,n}, ..., r_{n-1,n})`.
    pub fn last_column(&self) -> Vec<Scalar> {
        let n = self.dim();
        (0..n - 1).map(|i| self.0[(i, n - 1)].clone()).collect()
    }

    /// True iff `r_{i,j} = 0` whenever `i < j < n`.
    pub fn is_triangular_regime(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n.saturating_sub(1)).all(|j| self.0[(i, j)].is_zero()))
    }
}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{:?}", self.0)
    }
}

pub fn is_upper_triangular(r: &LinearOperator) -> bool {
    first_below_diagonal(r).is_none()
}

fn first_below_diagonal(r: &LinearOperator) -> Option<(usize, usize)> {
    let n = r.dim();
    (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| !r.0[(i, j)].is_zero()).map(|(i, j)| (i + 1, j + 1))
}

/// Residual vectors of the identity on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualReport {
    /// Keyed by 1-based `(i, j)`, `i <= j`, iterated lexicographically.
    pub entries: BTreeMap<(usize, usize), Vector>,
}

impl ResidualReport {
    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|v| matrix::is_zero_vector(v))
    }

    pub fn failing_pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|(_, v)| !matrix::is_zero_vector(v)).map(|(&k, _)| k).collect()
    }

    pub fn first_failure(&self) -> Option<((usize, usize), &Vector)> {
        self.entries.iter().find(|(_, v)| !matrix::is_zero_vector(v)).map(|(&k, v)| (k, v))
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Vector> {
        self.entries.get(&(i, j))
    }
}

fn check_dims(alg: &EvolutionAlgebra, r: &LinearOperator) -> Result<()> {
    if alg.dim() != r.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: r.dim() });
    }
    Ok(())
}

/// `R(e_i)R(e_j) - R(R(e_i)e_j + e_iR(e_j) + θ e_ie_j)` for 0-based `i, j`.
pub(crate) fn pair_residual(alg: &EvolutionAlgebra, r: &LinearOperator, theta: &Weight, i: usize, j: usize) -> Vector {
    let ri = r.0.row(i);
    let rj = r.0.row(j);
    let mut lhs = alg.multiply_unchecked(ri, rj);

    // R(e_i) e_j = r_{i,j} e_j^2 and e_i R(e_j) = r_{j,i} e_i^2.
    let n = alg.dim();
    let mut inner = matrix::zero_vector(n);
    let mut on_j_sq = ri[j].clone();
    let mut on_i_sq = rj[i].clone();
    if i == j {
        // R(e_i)e_i + e_iR(e_i) + θ e_i^2 = (2 r_{i,i} + θ) e_i^2
        on_j_sq = &on_j_sq + &on_i_sq + theta;
        on_i_sq = Scalar::zero();
    }
    if !on_j_sq.is_zero() {
        for (o, a) in inner.iter_mut().zip(alg.square_of_basis(j)) {
            if !a.is_zero() {
                *o += &on_j_sq * a;
            }
        }
    }
    if !on_i_sq.is_zero() {
        for (o, a) in inner.iter_mut().zip(alg.square_of_basis(i)) {
            if !a.is_zero() {
                *o += &on_i_sq * a;
            }
        }
    }
    let rhs = r.apply(&inner);
    for (l, x) in lhs.iter_mut().zip(rhs) {
        if !x.is_zero() {
            *l -= x;
        }
    }
    lhs
}

/// Residual of the identity on every basis pair `i <= j`.
pub fn rb_residual_full(alg: &EvolutionAlgebra, r: &LinearOperator, theta: &Weight) -> Result<ResidualReport> {
    check_dims(alg, r)?;
    let n = alg.dim();
    let entries = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .map(|(i, j)| ((i + 1, j + 1), pair_residual(alg, r, theta, i, j)))
        .collect();
    Ok(ResidualReport { entries })
}

/// Whether `r` is a Rota–Baxter operator of weight `theta` on `alg`.
pub fn is_rb(alg: &EvolutionAlgebra, r: &LinearOperator, theta: &Weight) -> Result<bool> {
    check_dims(alg, r)?;
    Ok(first_failing_pair(alg, r, theta).is_none())
}

/// First failing basis pair (1-based), checking `(n, n)` before the rest in
/// lexicographic order. `None` when the identity holds.
pub(crate) fn first_failing_pair(alg: &EvolutionAlgebra, r: &LinearOperator, theta: &Weight) -> Option<(usize, usize)> {
    let n = alg.dim();
    std::iter::once((n - 1, n - 1))
        .chain((0..n).flat_map(|i| (i..n).map(move |j| (i, j))).filter(|&p| p != (n - 1, n - 1)))
        .find(|&(i, j)| !matrix::is_zero_vector(&pair_residual(alg, r, theta, i, j)))
        .map(|(i, j)| (i + 1, j + 1))
}

/// One scalar equation of the reduced system, 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReducedKey {
    /// `Σ_{k=i}^{m-1} a_{k,m} r_{i,k}^2 = (2r_{i,i}+θ) Σ_{k=i}^{m-1} a_{i,k+1} r_{k+1,m}`, `i < m`.
    Square { i: usize, m: usize },
    /// `Σ_{k=j}^{m-1} r_{i,k} r_{j,k} a_{k,m} = r_{i,j} Σ_{k=j}^{m-1} a_{j,k+1} r_{k+1,m}`, `i < j < m`.
    Mixed { i: usize, j: usize, m: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedResidual {
    pub key: ReducedKey,
    /// Left side minus right side.
    pub value: Scalar,
}

/// Reduced scalar system for an upper triangular operator on a canonical algebra.
pub fn rb_residual_reduced(c: &CanonicalAlgebra, r: &LinearOperator, theta: &Weight) -> Result<Vec<ReducedResidual>> {
    check_dims(c.algebra(), r)?;
    if let Some((i, j)) = first_below_diagonal(r) {
        return Err(Error::NotUpperTriangular(i, j));
    }
    let n = c.dim();
    let a = |i: usize, j: usize| c.a(i, j);
    let rr = |i: usize, j: usize| r.r(i, j);
    let mut out = Vec::new();
    for i in 1..=n {
        for m in i + 1..=n {
            let mut lhs = Scalar::zero();
            let mut sum = Scalar::zero();
            for k in i..m {
                lhs += a(k, m) * rr(i, k) * rr(i, k);
                sum += a(i, k + 1) * rr(k + 1, m);
            }
            let factor = rr(i, i) * Scalar::from_integer(2.into()) + theta;
            out.push(ReducedResidual { key: ReducedKey::Square { i, m }, value: lhs - factor * sum });
        }
        for j in i + 1..=n {
            for m in j + 1..=n {
                let mut lhs = Scalar::zero();
                let mut sum = Scalar::zero();
                for k in j..m {
                    lhs += rr(i, k) * rr(j, k) * a(k, m);
                    sum += a(j, k + 1) * rr(k + 1, m);
                }
                out.push(ReducedResidual { key: ReducedKey::Mixed { i, j, m }, value: lhs - rr(i, j) * sum });
            }
        }
    }
    out.sort_by_key(|x| x.key);
    Ok(out)
}

/// `λR`; `R` has weight `θ` iff `λR` has weight `λθ`.
pub fn weight_rescale(r: &LinearOperator, lambda: &Scalar) -> Result<LinearOperator> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    if lambda.is_one() {
        return Ok(r.clone());
    }
    Ok(LinearOperator(r.0.scale(lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn zero() -> Scalar {
        int(0)
    }

    #[test]
    fn zero_operator_is_rb_for_any_weight() {
        let c = CanonicalAlgebra::with_entries(5, &[(1, 3, int(2))]).unwrap();
        for theta in [int(0), int(1), rat(-7, 3)] {
            assert!(rb_residual_full(c.algebra(), &LinearOperator::zero(5), &theta).unwrap().is_zero());
        }
    }

    #[test]
    fn diagonal_weight_zero_on_three() {
        let c = CanonicalAlgebra::chain(3);
        let r = LinearOperator::new(Matrix::diagonal(&[int(4), int(2), int(1)]));
        assert!(rb_residual_full(c.algebra(), &r, &zero()).unwrap().is_zero());
    }

    #[test]
    fn lower_entry_breaks_pair_two_two() {
        let c = CanonicalAlgebra::chain(2);
        let r = LinearOperator::from_i64(&[&[0, 0], &[1, 0]]);
        let rep = rb_residual_full(c.algebra(), &r, &zero()).unwrap();
        assert_eq!(rep.get(2, 2).unwrap(), &vec![int(0), int(1)]);
        // (1,2) also fails: 0 on the left, R(r_{2,1} e_1^2) = e_1 on the right.
        assert_eq!(rep.failing_pairs(), vec![(1, 2), (2, 2)]);
        assert_eq!(rep.get(1, 2).unwrap(), &vec![int(-1), int(0)]);
    }

    #[test]
    fn is_rb_examples() {
        let c3 = CanonicalAlgebra::chain(3);
        let r = LinearOperator::from_i64(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]);
        assert!(is_rb(c3.algebra(), &r, &int(1)).unwrap());
        let c2 = CanonicalAlgebra::chain(2);
        assert!(is_rb(c2.algebra(), &LinearOperator::from_i64(&[&[2, 5], &[0, 1]]), &zero()).unwrap());
        let id = LinearOperator::identity(3);
        let rep = rb_residual_full(c3.algebra(), &id, &zero()).unwrap();
        assert!(!rep.is_zero());
        // (1,1): e2 on the left, R(2 e2) = 2 e2 on the right.
        assert_eq!(rep.first_failure().unwrap(), ((1, 1), &vec![int(0), int(-1), int(0)]));
    }

    #[test]
    fn dimension_mismatch() {
        let c = CanonicalAlgebra::chain(3);
        assert_eq!(
            is_rb(c.algebra(), &LinearOperator::zero(2), &zero()),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn reduced_on_orbit_diagonal() {
        let c = CanonicalAlgebra::chain(3);
        let r = LinearOperator::new(Matrix::diagonal(&[int(1), rat(1, 3), rat(1, 15)]));
        let red = rb_residual_reduced(&c, &r, &int(1)).unwrap();
        assert!(red.iter().all(|x| x.value.is_zero()));
    }

    #[test]
    fn reduced_identity_on_two() {
        let c = CanonicalAlgebra::chain(2);
        let red = rb_residual_reduced(&c, &LinearOperator::identity(2), &zero()).unwrap();
        assert_eq!(red, vec![ReducedResidual { key: ReducedKey::Square { i: 1, m: 2 }, value: int(-1) }]);
    }

    #[test]
    fn reduced_rejects_lower_entries() {
        let c = CanonicalAlgebra::chain(3);
        let r = LinearOperator::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 3, 1]]);
        assert_eq!(rb_residual_reduced(&c, &r, &zero()), Err(Error::NotUpperTriangular(3, 2)));
    }

    #[test]
    fn upper_triangular_predicate() {
        assert!(is_upper_triangular(&LinearOperator::new(Matrix::diagonal(&[int(1), int(2)]))));
        assert!(!is_upper_triangular(&LinearOperator::from_i64(&[&[0, 0], &[1, 0]])));
        assert!(is_upper_triangular(&LinearOperator::zero(4)));
    }

    #[test]
    fn rescale_examples() {
        let c2 = CanonicalAlgebra::chain(2);
        let r = LinearOperator::from_i64(&[&[2, 5], &[0, 1]]);
        assert_eq!(weight_rescale(&r, &int(1)).unwrap(), r);
        let scaled = weight_rescale(&r, &int(3)).unwrap();
        assert_eq!(scaled, LinearOperator::from_i64(&[&[6, 15], &[0, 3]]));
        assert!(is_rb(c2.algebra(), &scaled, &zero()).unwrap());
        assert_eq!(weight_rescale(&r, &zero()), Err(Error::ZeroScale));

        let tri = LinearOperator::new(Matrix::from_rows(vec![vec![int(1), int(7)], vec![int(0), rat(1, 3)]]).unwrap());
        assert!(is_rb(c2.algebra(), &tri, &int(1)).unwrap());
        let doubled = weight_rescale(&tri, &int(2)).unwrap();
        assert!(is_rb(c2.algebra(), &doubled, &int(2)).unwrap());
        assert!(!is_rb(c2.algebra(), &doubled, &int(1)).unwrap());
    }
}
