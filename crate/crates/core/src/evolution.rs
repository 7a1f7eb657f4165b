//! Evolution algebras over the rationals: multiplication in a natural basis,
//! the power sequence `E^k`, nilpotency and `dim(E^2)`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{self, rref, Matrix, Vector};

/// An evolution algebra given by its structure matrix in a natural basis.
///
/// Row `i` of the matrix holds the coordinates of `e_i^2`; products of
/// distinct basis vectors vanish.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvolutionAlgebra {
    structure: Matrix,
}

/// Outcome of the nilindex search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nilindex {
    /// Smallest `m` with `E^m = 0`.
    Index(usize),
    NotNilpotent,
    /// `E^cap != 0` but `cap` is below the universal bound `2^(n-1) + 1`,
    /// so nothing can be concluded.
    Inconclusive {
        cap: usize,
    },
}

impl EvolutionAlgebra {
    pub fn new(structure: Matrix) -> Result<Self> {
        if structure.dim() < 2 {
            return Err(Error::InvariantViolation(format!(
                "algebra dimension must be at least 2, got {}",
                structure.dim()
            )));
        }
        Ok(Self { structure })
    }

    pub fn dim(&self) -> usize {
        self.structure.dim()
    }

    pub fn structure(&self) -> &Matrix {
        &self.structure
    }

    pub fn into_structure(self) -> Matrix {
        self.structure
    }

    fn check_len(&self, v: &[crate::Scalar]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// `x · y = Σ_i x_i y_i e_i^2`.
    pub fn multiply(&self, x: &[crate::Scalar], y: &[crate::Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.multiply_unchecked(x, y))
    }

    pub(crate) fn multiply_unchecked(&self, x: &[crate::Scalar], y: &[crate::Scalar]) -> Vector {
        let n = self.dim();
        let mut out = matrix::zero_vector(n);
        for i in 0..n {
            if x[i].is_zero() || y[i].is_zero() {
                continue;
            }
            let c = &x[i] * &y[i];
            for (o, a) in out.iter_mut().zip(self.structure.row(i)) {
                if !a.is_zero() {
                    *o += &c * a;
                }
            }
        }
        out
    }

    /// `e_i^2` for a 0-based index.
    pub(crate) fn square_of_basis(&self, i: usize) -> &[crate::Scalar] {
        self.structure.row(i)
    }

    /// `dim(E·E)`, which equals the rank of the structure matrix.
    pub fn dim_square(&self) -> usize {
        self.structure.rank()
    }

    /// Basis of `E^k` in reduced row-echelon form.
    pub fn power_sequence(&self, k: usize) -> Vec<Vector> {
        assert!(k >= 1, "powers start at E^1");
        let mut powers = PowerSequence::new(self);
        powers.get(k).clone()
    }

    /// Smallest `m` with `E^m = 0`, searching up to `cap` (default `2^(n-1) + 1`).
    ///
    /// An `n`-dimensional nilpotent evolution algebra has nilindex at most
    /// `2^(n-1) + 1`, so reaching that power without vanishing proves the
    /// algebra is not nilpotent.
    pub fn nilindex(&self, cap: Option<usize>) -> Nilindex {
        let bound = max_nilindex(self.dim());
        let cap = cap.unwrap_or(bound).max(2);
        let mut powers = PowerSequence::new(self);
        for k in 1..=cap {
            if powers.get(k).is_empty() {
                return Nilindex::Index(k);
            }
        }
        if cap >= bound {
            Nilindex::NotNilpotent
        } else {
            Nilindex::Inconclusive { cap }
        }
    }
}

/// `2^(n-1) + 1`, saturating for absurd dimensions.
pub fn max_nilindex(n: usize) -> usize {
    1usize.checked_shl((n - 1) as u32).map_or(usize::MAX, |p| p.saturating_add(1))
}

/// Lazily computed `E^1, E^2, ...`, each stored as an RREF basis.
pub struct PowerSequence<'a> {
    alg: &'a EvolutionAlgebra,
    powers: Vec<Vec<Vector>>,
}

impl<'a> PowerSequence<'a> {
    pub fn new(alg: &'a EvolutionAlgebra) -> Self {
        let n = alg.dim();
        let full = (0..n).map(|i| matrix::basis_vector(n, i)).collect();
        Self { alg, powers: vec![full] }
    }

    /// Basis of `E^k`, `k >= 1`.
    pub fn get(&mut self, k: usize) -> &Vec<Vector> {
        while self.powers.len() < k {
            let next = self.powers.len() + 1;
            let mut spanning = Vec::new();
            for i in 1..=next / 2 {
                let left = &self.powers[i - 1];
                let right = &self.powers[next - i - 1];
                for u in left {
                    for v in right {
                        let p = self.alg.multiply_unchecked(u, v);
                        if !matrix::is_zero_vector(&p) {
                            spanning.push(p);
                        }
                    }
                }
            }
            self.powers.push(rref(spanning));
        }
        &self.powers[k - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn canonical(n: usize) -> EvolutionAlgebra {
        let mut a = Matrix::zeros(n);
        for i in 0..n - 1 {
            a[(i, i + 1)] = int(1);
        }
        EvolutionAlgebra::new(a).unwrap()
    }

    fn e(n: usize, i: usize) -> Vector {
        matrix::basis_vector(n, i - 1)
    }

    #[test]
    fn multiply_basis_squares() {
        let alg = canonical(3);
        assert_eq!(alg.multiply(&e(3, 1), &e(3, 1)).unwrap(), e(3, 2));
        assert_eq!(alg.multiply(&e(3, 1), &e(3, 2)).unwrap(), matrix::zero_vector(3));
        let s = vec![int(1), int(1), int(0)];
        assert_eq!(alg.multiply(&s, &s).unwrap(), vec![int(0), int(1), int(1)]);
    }

    #[test]
    fn multiply_rejects_wrong_length() {
        let alg = canonical(3);
        assert_eq!(alg.multiply(&e(2, 1), &e(3, 1)), Err(Error::DimensionMismatch { expected: 3, got: 2 }));
    }

    #[test]
    fn power_sequence_of_canonical_three() {
        let alg = canonical(3);
        assert_eq!(alg.power_sequence(1).len(), 3);
        assert_eq!(alg.power_sequence(2), vec![e(3, 2), e(3, 3)]);
        assert_eq!(alg.power_sequence(3), vec![e(3, 3)]);
        assert_eq!(alg.power_sequence(4), vec![e(3, 3)]);
        assert!(alg.power_sequence(5).is_empty());
    }

    #[test]
    fn nilindex_examples() {
        // E^2 = <e2>, E^3 = E^1 E^2 = <e2 e2> = 0.
        assert_eq!(canonical(2).nilindex(None), Nilindex::Index(3));
        assert_eq!(canonical(3).nilindex(None), Nilindex::Index(5));
        assert_eq!(canonical(4).nilindex(None), Nilindex::Index(9));
        let idem = EvolutionAlgebra::new(Matrix::from_i64(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(idem.nilindex(None), Nilindex::NotNilpotent);
        assert_eq!(EvolutionAlgebra::new(Matrix::zeros(3)).unwrap().nilindex(None), Nilindex::Index(2));
    }

    #[test]
    fn short_cap_is_inconclusive() {
        assert_eq!(canonical(4).nilindex(Some(6)), Nilindex::Inconclusive { cap: 6 });
        let idem = EvolutionAlgebra::new(Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap();
        assert_eq!(idem.nilindex(Some(3)), Nilindex::Inconclusive { cap: 3 });
    }

    #[test]
    fn dim_square_examples() {
        assert_eq!(canonical(5).dim_square(), 4);
        assert_eq!(EvolutionAlgebra::new(Matrix::zeros(4)).unwrap().dim_square(), 0);
        let mut a = canonical(4).into_structure();
        a[(1, 2)] = int(0);
        a[(0, 2)] = rat(3, 2);
        // rows: (0,1,3/2,0), 0, (0,0,0,1), 0 -> rank 2
        assert_eq!(EvolutionAlgebra::new(a).unwrap().dim_square(), 2);
    }

    #[test]
    fn dimension_one_rejected() {
        assert!(EvolutionAlgebra::new(Matrix::zeros(1)).is_err());
    }
}
