//! Reduction of a nilpotent evolution algebra of maximal nilindex to the
//! canonical multiplication table
//!
//! ```text
//! e_i^2 = e_{i+1} + Σ_{j=i+2}^{n-1} a_{i,j} e_j   (i <= n-3)
//! e_{n-2}^2 = e_{n-1},  e_{n-1}^2 = e_n,  e_n^2 = 0
//! ```
//!
//! and extraction of the index set `I_A = {(i,j) : i+1 < j < n, a_{i,j} != 0}`.
//!
//! The reduction runs in three steps, each returning the basis change it
//! applied: a topological relabeling that makes the structure matrix
//! strictly upper triangular, a diagonal rescaling that makes the
//! superdiagonal all ones, and a shear `e_i -> e_i + b_i e_n` that clears the
//! last column.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::matrix::{self, Matrix};
use crate::scalar::{self, Scalar};

/// Invertible change of basis. Row `k` holds the coordinates of the new
/// basis vector `e'_k` in the old basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange(Matrix);

impl BasisChange {
    pub fn identity(n: usize) -> Self {
        Self(Matrix::identity(n))
    }

    pub fn new(m: Matrix) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.0.dim())
    }

    /// Apply `self` first, then `next` (expressed in the basis produced by `self`).
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange(next.0.mul(&self.0))
    }

    /// Structure matrix of `alg` in the new basis. Fails unless the new
    /// basis is natural, i.e. distinct new basis vectors multiply to zero.
    pub fn apply(&self, alg: &EvolutionAlgebra) -> Result<EvolutionAlgebra> {
        let n = alg.dim();
        if self.0.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: self.0.dim() });
        }
        let inv = self.0.inverse().ok_or(Error::SingularBasisChange)?;
        for k in 0..n {
            for l in k + 1..n {
                let p = alg.multiply_unchecked(self.0.row(k), self.0.row(l));
                if !matrix::is_zero_vector(&p) {
                    return Err(Error::NotNatural(k + 1, l + 1));
                }
            }
        }
        let rows = (0..n)
            .map(|k| {
                let sq = alg.multiply_unchecked(self.0.row(k), self.0.row(k));
                inv.left_apply(&sq)
            })
            .collect();
        EvolutionAlgebra::new(Matrix::from_rows(rows)?)
    }
}

/// Strictly upper triangular structure matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawStructureMatrix(Matrix);

impl RawStructureMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            for j in 0..=i {
                if !m[(i, j)].is_zero() {
                    return Err(Error::InvariantViolation(format!(
                        "raw structure matrix must be strictly upper triangular; entry ({},{}) is nonzero",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn algebra(&self) -> EvolutionAlgebra {
        EvolutionAlgebra::new(self.0.clone()).expect("raw matrices have n >= 2")
    }

    fn check_superdiagonal(&self) -> Result<()> {
        for i in 0..self.dim() - 1 {
            if self.0[(i, i + 1)].is_zero() {
                return Err(Error::ZeroSuperdiagonal(i + 1, i + 2));
            }
        }
        Ok(())
    }
}

/// An algebra whose structure matrix is in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalAlgebra(EvolutionAlgebra);

impl CanonicalAlgebra {
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.dim();
        let alg = EvolutionAlgebra::new(m)?;
        let a = alg.structure();
        for i in 0..n {
            for j in 0..n {
                let x = &a[(i, j)];
                let ok = if j == i + 1 {
                    x.is_one()
                } else if j <= i || j == n - 1 {
                    x.is_zero()
                } else {
                    true
                };
                if !ok {
                    return Err(Error::NotCanonical(format!("entry ({},{}) = {}", i + 1, j + 1, scalar::format(x))));
                }
            }
        }
        Ok(Self(alg))
    }

    /// The canonical algebra of dimension `n` with `a_{i,j}` set from
    /// `entries` (1-based, each with `i + 1 < j < n`).
    pub fn with_entries(n: usize, entries: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut m = Matrix::zeros(n);
        for i in 0..n.saturating_sub(1) {
            m[(i, i + 1)] = Scalar::one();
        }
        for (i, j, v) in entries {
            if !(*i >= 1 && i + 1 < *j && *j < n) {
                return Err(Error::NotCanonical(format!("({i},{j}) is not an off-band position")));
            }
            m[(i - 1, j - 1)] = v.clone();
        }
        Self::new(m)
    }

    /// The chain algebra `e_i^2 = e_{i+1}` with empty index set.
    pub fn chain(n: usize) -> Self {
        Self::with_entries(n, &[]).expect("chain algebra is canonical")
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn algebra(&self) -> &EvolutionAlgebra {
        &self.0
    }

    pub fn structure(&self) -> &Matrix {
        self.0.structure()
    }

    /// `a_{i,j}` with 1-based indices.
    pub fn a(&self, i: usize, j: usize) -> &Scalar {
        &self.0.structure()[(i - 1, j - 1)]
    }

    pub fn index_set(&self) -> IndexSet {
        index_set(self)
    }
}

/// `I_A` as 1-based pairs in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IndexSet(BTreeSet<(usize, usize)>);

impl IndexSet {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self(pairs.into_iter().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.0.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// Partners `j` with `(i, j)` in the set.
    pub fn row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.0.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    /// Partners `k` with `(k, j)` in the set.
    pub fn column(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().filter(move |&&(_, c)| c == j).map(|&(k, _)| k)
    }

    /// Largest first coordinate.
    pub fn i0_max(&self) -> Result<usize> {
        self.0.iter().map(|&(i, _)| i).max().ok_or(Error::EmptyIndexSet)
    }
}

pub fn index_set(c: &CanonicalAlgebra) -> IndexSet {
    let n = c.dim();
    let a = c.structure();
    IndexSet(
        (0..n)
            .flat_map(|i| (i + 2..n.saturating_sub(1)).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .map(|(i, j)| (i + 1, j + 1))
            .collect(),
    )
}

pub fn i0_max(s: &IndexSet) -> Result<usize> {
    s.i0_max()
}

/// Relabel the natural basis along a topological order of the dependency
/// graph (edge `i -> j` when `a_{i,j} != 0`), ties broken by ascending
/// original index. The result is strictly upper triangular.
pub fn triangularize(alg: &EvolutionAlgebra) -> Result<(RawStructureMatrix, BasisChange)> {
    let order = topological_order(alg.structure())?;
    let n = alg.dim();
    let mut p = Matrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        p[(new, old)] = Scalar::one();
    }
    let change = BasisChange(p);
    let relabeled = change.apply(alg)?;
    Ok((RawStructureMatrix::new(relabeled.into_structure())?, change))
}

fn topological_order(a: &Matrix) -> Result<Vec<usize>> {
    let n = a.dim();
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if !a[(i, j)].is_zero() {
                indegree[j] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(v)) = ready.pop() {
        order.push(v);
        for j in 0..n {
            if !a[(v, j)].is_zero() {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(Reverse(j));
                }
            }
        }
    }
    if order.len() < n {
        let stuck = (0..n).find(|&v| indegree[v] > 0).unwrap_or(0);
        return Err(Error::CycleFound(stuck + 1));
    }
    Ok(order)
}

/// Diagonal rescaling making every superdiagonal entry 1.
///
/// With `e'_1 = e_1` and `e'_{k+1} = d_k^2 ã_{k,k+1} e_{k+1}`, the scale of
/// `e'_k` is `Π_{j<k} ã_{j,j+1}^{2^{k-1-j}}`.
pub fn rescale_superdiagonal(raw: &RawStructureMatrix) -> Result<(RawStructureMatrix, BasisChange)> {
    raw.check_superdiagonal()?;
    let n = raw.dim();
    let a = raw.matrix();
    let mut d = vec![Scalar::one(); n];
    for k in 0..n - 1 {
        d[k + 1] = &d[k] * &d[k] * &a[(k, k + 1)];
    }
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        let sq = &d[i] * &d[i];
        for j in i + 1..n {
            if !a[(i, j)].is_zero() {
                out[(i, j)] = &sq * &a[(i, j)] / &d[j];
            }
        }
    }
    Ok((RawStructureMatrix(out), BasisChange(Matrix::diagonal(&d))))
}

/// Shear `e'_i = e_i + b_i e_n` (1 < i < n) clearing the last column, with
/// `b_{n-1} = ã_{n-2,n}` and `b_{i+1} = ã_{i,n} - Σ_{j=i+2}^{n-1} ã_{i,j} b_j`
/// evaluated from `i = n-2` down to `i = 1`.
pub fn eliminate_last_column(raw: &RawStructureMatrix) -> Result<(CanonicalAlgebra, BasisChange)> {
    let n = raw.dim();
    let a = raw.matrix();
    for i in 0..n - 1 {
        if !a[(i, i + 1)].is_one() {
            return Err(Error::InvariantViolation(format!("superdiagonal entry ({},{}) must be 1", i + 1, i + 2)));
        }
    }
    let b = shear_coefficients(a);
    let mut p = Matrix::identity(n);
    for i in 1..n - 1 {
        p[(i, n - 1)] = b[i].clone();
    }
    let change = BasisChange(p);
    let alg = change.apply(&raw.algebra())?;
    Ok((CanonicalAlgebra::new(alg.into_structure())?, change))
}

/// `b` indexed 0-based by basis position; entries 0 and n-1 stay zero.
fn shear_coefficients(a: &Matrix) -> Vec<Scalar> {
    let n = a.dim();
    let mut b = vec![Scalar::zero(); n];
    if n < 3 {
        return b;
    }
    // 0-based: row i in 0..=n-3 fixes b[i+1].
    for i in (0..=n - 3).rev() {
        let mut v = a[(i, n - 1)].clone();
        for j in i + 2..n - 1 {
            v -= &a[(i, j)] * &b[j];
        }
        b[i + 1] = v;
    }
    b
}

/// Full reduction: triangularize, rescale, clear the last column.
pub fn canonicalize(alg: &EvolutionAlgebra) -> Result<(CanonicalAlgebra, BasisChange)> {
    let n = alg.dim();
    let rank = alg.dim_square();
    if rank != n - 1 {
        return Err(Error::NotMaximalNilindex { rank, expected: n - 1 });
    }
    let (raw, p1) = triangularize(alg)?;
    let (unit, p2) = rescale_superdiagonal(&raw)?;
    let (canon, p3) = eliminate_last_column(&unit)?;
    Ok((canon, p1.then(&p2).then(&p3)))
}
