//! Weight-zero Rota–Baxter operators on canonical algebras.
//!
//! Every weight-0 operator is diagonal plus a last column. Writing
//! `k` for the first nonzero diagonal position among `1..n-1`:
//!
//! * `FamilyK(k, α, β_1..β_k)`: `r_{i,i} = 2^{n-i} α` for `i >= k`, zero
//!   before, `r_{i,n} = β_i` for `i <= k`, nothing else. When `I_A` is
//!   nonempty, `k > i_0 = max{i : (i,j) ∈ I_A}`.
//! * `FamilyN(β_1..β_n)`: `r_{i,n} = β_i` for every `i`, including the corner
//!   `r_{n,n} = β_n`, and nothing else.

use num_traits::Zero;

use crate::canonical::CanonicalAlgebra;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rb::{self, LinearOperator};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RB0Family {
    FamilyK { k: usize, alpha: Scalar, betas: Vec<Scalar> },
    FamilyN { betas: Vec<Scalar> },
}

/// Result of [`classify0`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification0 {
    Family(RB0Family),
    /// The identity fails; `pair` is the first failing basis pair.
    NotRb {
        pair: (usize, usize),
        residual: Vector,
    },
    /// Passes the identity but no family reproduces it. The classification
    /// theorem says this never happens; the oracle reports it as a counterexample.
    Unmatched,
}

/// One labeled equation of the weight-0 diagonal/last-column system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledResidual {
    pub label: String,
    pub value: Scalar,
}

impl LabeledResidual {
    fn new(label: String, value: Scalar) -> Self {
        Self { label, value }
    }
}

/// Residuals of the system a diagonal-plus-last-column operator satisfies
/// exactly when it is weight-0 Rota–Baxter:
///
/// ```text
/// r_ii^2 - 2 r_ii r_{i+1,i+1}                         i < n
/// r_ii^2 - 2 r_ii r_jj                                (i,j) ∈ I_A
/// r_ii (r_{i+1,n} + Σ_{(i,j)∈I_A} a_ij r_{j,n})        i < n-2
/// r_{n-2,n-2} r_{n-1,n}
/// ```
///
/// `diag` has length `n`; `lastcol` holds `r_{i,n}` for `i < n`.
pub fn residual_rb1101(c: &CanonicalAlgebra, diag: &[Scalar], lastcol: &[Scalar]) -> Result<Vec<LabeledResidual>> {
    let n = c.dim();
    if diag.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: diag.len() });
    }
    if lastcol.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: lastcol.len() });
    }
    let d = |i: usize| &diag[i - 1];
    let col = |i: usize| &lastcol[i - 1];
    let ia = c.index_set();
    let two = scalar::int(2);
    let mut out = Vec::new();
    for i in 1..n {
        out.push(LabeledResidual::new(format!("diag_chain({i})"), d(i) * d(i) - &two * d(i) * d(i + 1)));
    }
    for (i, j) in ia.iter() {
        out.push(LabeledResidual::new(format!("diag_index({i},{j})"), d(i) * d(i) - &two * d(i) * d(j)));
    }
    for i in 1..n.saturating_sub(2) {
        let mut inner = col(i + 1).clone();
        for j in ia.row(i) {
            inner += c.a(i, j) * col(j);
        }
        out.push(LabeledResidual::new(format!("last_column({i})"), d(i) * inner));
    }
    if n >= 3 {
        out.push(LabeledResidual::new("corner".into(), d(n - 2) * col(n - 1)));
    }
    Ok(out)
}

fn check_family(c: &CanonicalAlgebra, fam: &RB0Family) -> Result<()> {
    let n = c.dim();
    match fam {
        RB0Family::FamilyK { k, alpha, betas } => {
            if *k < 1 || *k >= n {
                return Err(Error::InvalidFamily(format!("k = {k} outside 1..{}", n - 1)));
            }
            if alpha.is_zero() {
                return Err(Error::InvalidFamily("alpha must be nonzero".into()));
            }
            if betas.len() != *k {
                return Err(Error::InvalidFamily(format!("expected {k} betas, got {}", betas.len())));
            }
            if let Ok(i0) = c.index_set().i0_max() {
                if *k <= i0 {
                    return Err(Error::InvalidFamily(format!("k = {k} must exceed i0 = {i0}")));
                }
            }
        }
        RB0Family::FamilyN { betas } => {
            if betas.len() != n {
                return Err(Error::InvalidFamily(format!("expected {n} betas, got {}", betas.len())));
            }
        }
    }
    Ok(())
}

pub fn generate_family0(c: &CanonicalAlgebra, fam: &RB0Family) -> Result<LinearOperator> {
    check_family(c, fam)?;
    let n = c.dim();
    let mut r = LinearOperator::new(Matrix::zeros(n));
    match fam {
        RB0Family::FamilyK { k, alpha, betas } => {
            for i in *k..=n {
                r.set(i, i, scalar::pow(&scalar::int(2), (n - i) as u64) * alpha);
            }
            for (i, b) in betas.iter().enumerate() {
                r.set(i + 1, n, b.clone());
            }
        }
        RB0Family::FamilyN { betas } => {
            for (i, b) in betas.iter().enumerate() {
                r.set(i + 1, n, b.clone());
            }
        }
    }
    Ok(r)
}

/// Family descriptor of a weight-0 operator.
///
/// Ties are broken so the map is a function: `FamilyN` iff `r_{i,i} = 0` for
/// all `i < n`, otherwise `FamilyK` with `k` the first nonzero diagonal
/// position.
pub fn classify0(c: &CanonicalAlgebra, r: &LinearOperator) -> Result<Classification0> {
    let report = rb::rb_residual_full(c.algebra(), r, &Scalar::zero())?;
    if let Some((pair, residual)) = report.first_failure() {
        return Ok(Classification0::NotRb { pair, residual: residual.clone() });
    }
    let n = c.dim();
    let fam = match (1..n).find(|&i| !r.r(i, i).is_zero()) {
        None => RB0Family::FamilyN { betas: (1..=n).map(|i| r.r(i, n).clone()).collect() },
        Some(k) => {
            RB0Family::FamilyK { k, alpha: r.r(n, n).clone(), betas: (1..=k).map(|i| r.r(i, n).clone()).collect() }
        }
    };
    match generate_family0(c, &fam) {
        Ok(g) if &g == r => Ok(Classification0::Family(fam)),
        _ => Ok(Classification0::Unmatched),
    }
}

/// All residuals of `residual_rb1101` are zero.
pub fn satisfies_rb1101(c: &CanonicalAlgebra, diag: &[Scalar], lastcol: &[Scalar]) -> Result<bool> {
    Ok(residual_rb1101(c, diag, lastcol)?.iter().all(|x| x.value.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn full_diagonal_on_three_frees_only_first_beta() {
        let c = CanonicalAlgebra::chain(3);
        for b in [int(0), rat(5, 2)] {
            assert!(satisfies_rb1101(&c, &[int(4), int(2), int(1)], &[b, int(0)]).unwrap());
        }
        // r_{2,3} != 0 with r_{1,1} != 0 breaks the corner equation, and the
        // full identity agrees: pair (1,1) leaves -8 e_3.
        let res = residual_rb1101(&c, &[int(4), int(2), int(1)], &[int(0), int(1)]).unwrap();
        assert_eq!(res.last().unwrap(), &LabeledResidual::new("corner".into(), int(4)));
        let r = LinearOperator::from_i64(&[&[4, 0, 0], &[0, 2, 1], &[0, 0, 1]]);
        let rep = rb::rb_residual_full(c.algebra(), &r, &int(0)).unwrap();
        assert_eq!(rep.first_failure().unwrap(), ((1, 1), &vec![int(0), int(0), int(-8)]));
    }

    #[test]
    fn unit_diagonal_breaks_chain() {
        let c = CanonicalAlgebra::chain(3);
        let res = residual_rb1101(&c, &[int(1), int(1), int(1)], &[int(0), int(0)]).unwrap();
        assert_eq!(res[0], LabeledResidual::new("diag_chain(1)".into(), int(-1)));
    }

    #[test]
    fn zero_diagonal_solves_everything() {
        let c = CanonicalAlgebra::with_entries(6, &[(1, 3, int(2)), (2, 5, int(-1))]).unwrap();
        let lastcol = vec![int(3), rat(1, 2), int(-4), int(7), int(1)];
        assert!(satisfies_rb1101(&c, &vec![int(0); 6], &lastcol).unwrap());
    }

    #[test]
    fn generate_remark_examples() {
        let c2 = CanonicalAlgebra::chain(2);
        let r = generate_family0(&c2, &RB0Family::FamilyK { k: 1, alpha: int(1), betas: vec![int(5)] }).unwrap();
        assert_eq!(r, LinearOperator::from_i64(&[&[2, 5], &[0, 1]]));

        let c3 = CanonicalAlgebra::chain(3);
        let r = generate_family0(&c3, &RB0Family::FamilyN { betas: vec![int(1), int(2), int(3)] }).unwrap();
        assert_eq!(r, LinearOperator::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[0, 0, 3]]));
    }

    #[test]
    fn generate_rejects_k_at_or_below_i0() {
        let c = CanonicalAlgebra::with_entries(5, &[(1, 3, int(1))]).unwrap();
        let fam = RB0Family::FamilyK { k: 1, alpha: int(1), betas: vec![int(0)] };
        assert!(matches!(generate_family0(&c, &fam), Err(Error::InvalidFamily(_))));
        let zero_alpha = RB0Family::FamilyK { k: 2, alpha: int(0), betas: vec![int(0); 2] };
        assert!(matches!(generate_family0(&c, &zero_alpha), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn classify_examples() {
        let c2 = CanonicalAlgebra::chain(2);
        assert_eq!(
            classify0(&c2, &LinearOperator::from_i64(&[&[2, 5], &[0, 1]])).unwrap(),
            Classification0::Family(RB0Family::FamilyK { k: 1, alpha: int(1), betas: vec![int(5)] })
        );
        assert_eq!(
            classify0(&c2, &LinearOperator::from_i64(&[&[0, 3], &[0, 7]])).unwrap(),
            Classification0::Family(RB0Family::FamilyN { betas: vec![int(3), int(7)] })
        );
        match classify0(&c2, &LinearOperator::identity(2)).unwrap() {
            Classification0::NotRb { pair, residual } => {
                assert_eq!(pair, (1, 1));
                assert_eq!(residual, vec![int(0), int(-1)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classify_round_trips_second_n3_set() {
        let c3 = CanonicalAlgebra::chain(3);
        let r = LinearOperator::from_i64(&[&[0, 0, 9], &[0, 6, -2], &[0, 0, 3]]);
        let Classification0::Family(fam) = classify0(&c3, &r).unwrap() else { panic!() };
        assert_eq!(fam, RB0Family::FamilyK { k: 2, alpha: int(3), betas: vec![int(9), int(-2)] });
        assert_eq!(generate_family0(&c3, &fam).unwrap(), r);
    }
}
