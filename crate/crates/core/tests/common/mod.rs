#![allow(dead_code)]

use evorb::canonical::CanonicalAlgebra;
use evorb::matrix::Matrix;
use evorb::rb::LinearOperator;
use evorb::scalar::{int, rat};
use evorb::Scalar;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Rational with numerator in `-num..=num` and denominator in `1..=den`.
pub fn rational(rng: &mut impl Rng, num: i64, den: i64) -> Scalar {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn nonzero_rational(rng: &mut impl Rng, num: i64, den: i64) -> Scalar {
    loop {
        let x = rational(rng, num, den);
        if x != int(0) {
            return x;
        }
    }
}

/// Canonical algebra of dimension `n` with each admissible off-band entry
/// present with probability `p`.
pub fn canonical(rng: &mut impl Rng, n: usize, p: f64) -> CanonicalAlgebra {
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in i + 2..n {
            if rng.gen_bool(p) {
                entries.push((i, j, nonzero_rational(rng, 3, 2)));
            }
        }
    }
    CanonicalAlgebra::with_entries(n, &entries).unwrap()
}

/// Strictly upper triangular with nonzero superdiagonal (so rank `n - 1`),
/// random entries above, then relabelled by a random permutation.
pub fn raw_maximal(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = if j == i + 1 {
                nonzero_rational(rng, 4, 3)
            } else if rng.gen_bool(0.5) {
                rational(rng, 4, 3)
            } else {
                int(0)
            };
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = m[(perm[i], perm[j])].clone();
        }
    }
    out
}

/// Sparse upper triangular operator with entries from `values`.
pub fn sparse_upper(rng: &mut impl Rng, n: usize, diag: Option<Scalar>, values: &[Scalar], p: f64) -> LinearOperator {
    let mut r = LinearOperator::zero(n);
    for i in 1..=n {
        let d = diag.clone().unwrap_or_else(|| values.choose(rng).unwrap().clone());
        r.set(i, i, d);
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                r.set(i, j, values.choose(rng).unwrap().clone());
            }
        }
    }
    r
}
