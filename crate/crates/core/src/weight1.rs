//! Weight-one Rota–Baxter operators.
//!
//! In the triangular regime (`r_{i,j} = 0` for `i < j < n`) the diagonal is
//! an orbit of `f(x) = x^2 / (2x + 1)`. Over the rationals the only periodic
//! points of `f` are `0` and `-1`: with `z(x) = (1 + x)/x` one has
//! `z(f(x)) = z(x)^2`, so a periodic rational point needs `z^(2^m) = z`.
//! A nonempty index set therefore forces a constant diagonal.
//!
//! Outside the triangular regime the diagonal is constant in `{0, -1}` and the
//! strictly upper part is governed by magnitude rules on the first row; those
//! rules give magnitudes only, so candidates are built for every sign pattern
//! and filtered through the full identity.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::canonical::{CanonicalAlgebra, IndexSet};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::rb::{self, LinearOperator};
use crate::scalar::{self, Scalar};
use crate::weight0::LabeledResidual;

/// `f(x) = x^2 / (2x + 1)`.
pub fn f_eval(x: &Scalar) -> Result<Scalar> {
    let den = x * scalar::int(2) + scalar::one();
    if den.is_zero() {
        return Err(Error::Pole);
    }
    Ok(x * x / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapOrbit {
    pub seed: Scalar,
    /// `f^0(seed), f^1(seed), ...`, truncated at the pole.
    pub values: Vec<Scalar>,
    pub hit_pole: bool,
}

pub fn f_orbit(x: &Scalar, steps: usize) -> MapOrbit {
    let mut values = vec![x.clone()];
    let mut hit_pole = false;
    for _ in 0..steps {
        match f_eval(values.last().expect("nonempty")) {
            Ok(y) => values.push(y),
            Err(_) => {
                hit_pole = true;
                break;
            }
        }
    }
    MapOrbit { seed: x.clone(), values, hit_pole }
}

/// `(P_m, Q_m)` with `f^m(x) = P_m(x) / Q_m(x)`: `P_1 = x^2`, `Q_1 = 2x + 1`,
/// `P_{m+1} = P_m^2`, `Q_{m+1} = Q_m (2 P_m + Q_m)`.
pub fn iterate_fraction(m: usize) -> (Poly, Poly) {
    assert!(m >= 1);
    let mut p = Poly::from_i64(&[0, 0, 1]);
    let mut q = Poly::from_i64(&[1, 2]);
    for _ in 1..m {
        let two_p = p.scale(&BigInt::from(2));
        q = &q * &(&two_p + &q);
        p = &p * &p;
    }
    (p, q)
}

/// Rational solutions of `f^m(x) = x`, from the numerator `P_m - x Q_m`.
pub fn periodic_points_rational(m: usize) -> BTreeSet<Scalar> {
    let (p, q) = iterate_fraction(m);
    let numerator = &p - &(&Poly::x() * &q);
    numerator
        .rational_roots()
        .into_iter()
        .filter(|x| !q.eval(x).is_zero())
        .filter(|x| f_orbit(x, m).values.get(m) == Some(x))
        .collect()
}

/// `I_1`, `I_2` and their gcd for a nonempty index set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicitySpec {
    /// `{j - i - 1 : (i,j) ∈ I_A}`
    pub i1: BTreeSet<usize>,
    /// `{|k - j| : (i,j), (i,k) ∈ I_A, j != k}`
    pub i2: BTreeSet<usize>,
    pub m: usize,
}

pub fn periodicity_spec(s: &IndexSet) -> Result<PeriodicitySpec> {
    if s.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    let i1: BTreeSet<usize> = s.iter().map(|(i, j)| j - i - 1).collect();
    let mut i2 = BTreeSet::new();
    for (i, j) in s.iter() {
        for k in s.row(i) {
            if k != j {
                i2.insert(j.abs_diff(k));
            }
        }
    }
    let m = i1.iter().chain(&i2).fold(0usize, |g, &x| g.gcd(&x));
    Ok(PeriodicitySpec { i1, i2, m })
}

/// Triangular weight-1 family: `R(e_1) = α e_1 + β e_n`, `R(e_i) = f^{i-1}(α) e_i`.
/// With a nonempty index set `α ∈ {0, -1}` and the diagonal is constant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RB1TriFamily {
    pub alpha: Scalar,
    pub beta: Scalar,
    /// `max{i : (i,j) ∈ I_A}`, absent for an empty index set.
    pub i0: Option<usize>,
}

pub fn generate_tri1(c: &CanonicalAlgebra, fam: &RB1TriFamily) -> Result<LinearOperator> {
    let n = c.dim();
    let ia = c.index_set();
    let diag = if ia.is_empty() {
        let orbit = f_orbit(&fam.alpha, n - 1);
        if orbit.hit_pole {
            return Err(Error::Pole);
        }
        orbit.values
    } else {
        if !(fam.alpha.is_zero() || fam.alpha == -scalar::one()) {
            return Err(Error::InvalidAlpha(scalar::format(&fam.alpha)));
        }
        vec![fam.alpha.clone(); n]
    };
    let mut r = LinearOperator::new(Matrix::diagonal(&diag));
    let corner = r.r(1, n) + &fam.beta;
    r.set(1, n, corner);
    Ok(r)
}

/// Residuals of the triangular-regime weight-1 system:
///
/// ```text
/// r_ii^2 - (2r_ii+1) r_{i+1,i+1}                         i < n
/// r_ii^2 - (2r_ii+1) r_jj                                (i,j) ∈ I_A
/// (2r_ii+1)(r_{i+1,n} + Σ_{(i,j)∈I_A} a_ij r_{j,n})       i < n-2
/// (2r_{n-2,n-2}+1) r_{n-1,n}
/// ```
pub fn residual_rb1110(c: &CanonicalAlgebra, diag: &[Scalar], lastcol: &[Scalar]) -> Result<Vec<LabeledResidual>> {
    let n = c.dim();
    if diag.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: diag.len() });
    }
    if lastcol.len() != n - 1 {
        return Err(Error::DimensionMismatch { expected: n - 1, got: lastcol.len() });
    }
    let d = |i: usize| &diag[i - 1];
    let col = |i: usize| &lastcol[i - 1];
    let lift = |i: usize| d(i) * scalar::int(2) + scalar::one();
    let ia = c.index_set();
    let mut out = Vec::new();
    for i in 1..n {
        out.push(labeled(format!("diag_chain({i})"), d(i) * d(i) - lift(i) * d(i + 1)));
    }
    for (i, j) in ia.iter() {
        out.push(labeled(format!("diag_index({i},{j})"), d(i) * d(i) - lift(i) * d(j)));
    }
    for i in 1..n.saturating_sub(2) {
        let mut inner = col(i + 1).clone();
        for j in ia.row(i) {
            inner += c.a(i, j) * col(j);
        }
        out.push(labeled(format!("last_column({i})"), lift(i) * inner));
    }
    if n >= 3 {
        out.push(labeled("corner".into(), lift(n - 2) * col(n - 1)));
    }
    Ok(out)
}

fn labeled(label: String, value: Scalar) -> LabeledResidual {
    LabeledResidual { label, value }
}

/// The eight equation groups an upper triangular weight-1 operator must
/// satisfy on a canonical algebra, written with the band structure of the
/// algebra made explicit.
pub fn residual_rb1111(c: &CanonicalAlgebra, r: &LinearOperator) -> Result<Vec<LabeledResidual>> {
    let n = c.dim();
    if r.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: r.dim() });
    }
    if !rb::is_upper_triangular(r) {
        let (i, j) = (1..=n)
            .flat_map(|i| (1..i).map(move |j| (i, j)))
            .find(|&(i, j)| !r.r(i, j).is_zero())
            .expect("below-diagonal entry");
        return Err(Error::NotUpperTriangular(i, j));
    }
    let ia = c.index_set();
    let x = |i: usize, j: usize| r.r(i, j);
    let a = |i: usize, j: usize| c.a(i, j);
    let lift = |i: usize| x(i, i) * scalar::int(2) + scalar::one();
    // r_{j+1,m} + Σ_{(j,k)∈I_A} a_{j,k} r_{k,m}
    let image = |j: usize, m: usize| {
        let mut s = x(j + 1, m).clone();
        for k in ia.row(j) {
            s += a(j, k) * x(k, m);
        }
        s
    };
    let mut out = Vec::new();
    for i in 1..n {
        out.push(labeled(format!("g1({i})"), x(i, i) * x(i, i) - lift(i) * x(i + 1, i + 1)));
    }
    for i in 1..n.saturating_sub(1) {
        out.push(labeled(format!("g2({i})"), x(i, n - 1) * x(i, n - 1) - lift(i) * image(i, n)));
    }
    for i in 1..=n {
        for m in i + 2..n {
            let mut lhs = x(i, m - 1) * x(i, m - 1);
            for k in ia.column(m).filter(|&k| k >= i) {
                lhs += a(k, m) * x(i, k) * x(i, k);
            }
            out.push(labeled(format!("g3({i},{m})"), lhs - lift(i) * image(i, m)));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for m in j + 1..n {
                let mut lhs = x(i, m - 1) * x(j, m - 1);
                // k = j included: a (j,m) ∈ I_A entry contributes r_{i,j} r_{j,j} a_{j,m}.
                for k in ia.column(m).filter(|&k| k >= j && k != m - 1) {
                    lhs += a(k, m) * x(i, k) * x(j, k);
                }
                out.push(labeled(format!("g4({i},{j},{m})"), lhs - x(i, j) * image(j, m)));
            }
        }
    }
    for i in 1..=n {
        for j in i + 1..n.saturating_sub(2) {
            out.push(labeled(format!("g5({i},{j})"), x(i, n - 1) * x(j, n - 1) - x(i, j) * image(j, n)));
        }
    }
    if n >= 3 {
        for i in 1..n - 2 {
            out.push(labeled(format!("g6({i})"), x(i, n - 2) * x(n - 2, n - 2) - x(i, n - 2) * x(n - 1, n - 1)));
            out.push(labeled(format!("g7({i})"), x(i, n - 1) * x(n - 2, n - 1) - x(i, n - 2) * x(n - 1, n)));
        }
    }
    for i in 1..n - 1 {
        out.push(labeled(format!("g8({i})"), x(i, n - 1) * x(n - 1, n - 1) - x(i, n - 1) * x(n, n)));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, x: Scalar) -> Scalar {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

/// Non-triangular weight-1 candidate.
///
/// `betas[m-2]` is `β_m = r_{1,m}` for `m = 2..n`. For `1 < i < j`,
/// `r_{i,j} = σ s_{i,j} β_{j-i+1}^{2^{i-1}}` where the global sign `σ` is `+`
/// for diagonal 0 and `-` for diagonal -1, and `s_{i,j}` comes from `signs`
/// (missing entries are `+`). With a nonempty index set only the superdiagonal
/// `r_{i,i+1} = σ s_{i,i+1} r_{1,2}^{2^{i-1}}` is generated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RB1NonTriCandidate {
    pub diag_value: Scalar,
    pub betas: Vec<Scalar>,
    pub signs: BTreeMap<(usize, usize), Sign>,
}

fn global_sign(diag_value: &Scalar) -> Result<Sign> {
    if diag_value.is_zero() {
        Ok(Sign::Plus)
    } else if *diag_value == -scalar::one() {
        Ok(Sign::Minus)
    } else {
        Err(Error::InvariantViolation(format!(
            "non-triangular diagonal must be 0 or -1, got {}",
            scalar::format(diag_value)
        )))
    }
}

/// `2^(i-1)` as an exponent.
fn doubling(i: usize) -> u64 {
    1u64 << (i - 1)
}

/// Expected `|β_m|` for `2 < m < n` from the leading nonzero first-row
/// entry, or `None` when every `β_2..β_{n-1}` vanishes.
pub fn beta_magnitudes(n: usize, betas: &[Scalar]) -> Option<Vec<(usize, Scalar)>> {
    let beta = |m: usize| &betas[m - 2];
    let lead = (2..n).find(|&m| !beta(m).is_zero())?;
    let k = lead - 1;
    let base = scalar::abs(beta(lead));
    let mut out = Vec::new();
    for m in lead + 1..n {
        let mag = if (m - 1) % k == 0 {
            // (2^{m-1} - 1) / (2^k - 1)
            let e = ((1u64 << (m - 1)) - 1) / ((1u64 << k) - 1);
            scalar::pow(&base, e)
        } else {
            Scalar::zero()
        };
        out.push((m, mag));
    }
    Some(out)
}

pub fn generate_nontri1(c: &CanonicalAlgebra, cand: &RB1NonTriCandidate) -> Result<LinearOperator> {
    let n = c.dim();
    let sigma = global_sign(&cand.diag_value)?;
    if cand.betas.len() != n - 1 {
        return Err(Error::InvariantViolation(format!("expected {} betas, got {}", n - 1, cand.betas.len())));
    }
    let beta = |m: usize| &cand.betas[m - 2];
    let sign_of = |i: usize, j: usize| cand.signs.get(&(i, j)).copied().unwrap_or(Sign::Plus);
    let ia = c.index_set();

    let mut r = LinearOperator::new(Matrix::diagonal(&vec![cand.diag_value.clone(); n]));
    for m in 2..=n {
        r.set(1, m, beta(m).clone());
    }
    if ia.is_empty() {
        if let Some(mags) = beta_magnitudes(n, &cand.betas) {
            for (m, mag) in mags {
                if scalar::abs(beta(m)) != mag {
                    return Err(Error::InvariantViolation(format!(
                        "|beta_{m}| must be {}, got {}",
                        scalar::format(&mag),
                        scalar::format(beta(m))
                    )));
                }
            }
        }
        for i in 2..=n {
            for j in i + 1..=n {
                let mag = scalar::pow(beta(j - i + 1), doubling(i));
                r.set(i, j, sigma.apply(sign_of(i, j).apply(mag)));
            }
        }
    } else {
        for i in 2..n {
            let mag = scalar::pow(beta(2), doubling(i));
            r.set(i, i + 1, sigma.apply(sign_of(i, i + 1).apply(mag)));
        }
    }
    if r.is_triangular_regime() {
        return Err(Error::InvariantViolation("candidate has no nonzero r_(i,j) with i < j < n".into()));
    }
    Ok(r)
}

/// Grid for [`search_nontri1`].
#[derive(Clone, Debug)]
pub struct NonTriGrid {
    /// Values tried for `β_2 = r_{1,2}`; zero is skipped.
    pub beta2: Vec<Scalar>,
    /// Values tried for the free corner `β_n = r_{1,n}`.
    pub corner: Vec<Scalar>,
}

/// Bounded search of the non-triangular regime: every candidate built from
/// the grid, both diagonals and every sign pattern, kept iff the full
/// identity holds. Sorted by operator, deduplicated.
pub fn search_nontri1(
    c: &CanonicalAlgebra,
    grid: &NonTriGrid,
    max_sign_patterns: u64,
) -> Result<Vec<(LinearOperator, RB1NonTriCandidate)>> {
    let n = c.dim();
    if n < 3 {
        return Ok(Vec::new());
    }
    let empty_ia = c.index_set().is_empty();
    let sign_positions: Vec<(usize, usize)> = if empty_ia {
        (2..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    } else {
        (2..n).map(|i| (i, i + 1)).collect()
    };
    // Signs of β_m for 2 < m < n are enumerated alongside.
    let free_beta_signs = if empty_ia { n - 3 } else { 0 };
    let bits = sign_positions.len() + free_beta_signs;
    let patterns = 1u64.checked_shl(bits as u32).unwrap_or(u64::MAX);
    if patterns > max_sign_patterns {
        return Err(Error::BudgetExceeded { needed: patterns as u128, budget: max_sign_patterns as u128 });
    }

    let mut found: BTreeMap<LinearOperator, RB1NonTriCandidate> = BTreeMap::new();
    for diag_value in [Scalar::zero(), -scalar::one()] {
        for b2 in grid.beta2.iter().filter(|b| !b.is_zero()) {
            for corner in &grid.corner {
                for pattern in 0..patterns {
                    let bit = |k: usize| pattern >> k & 1 == 1;
                    let mut betas = vec![Scalar::zero(); n - 1];
                    betas[0] = b2.clone();
                    betas[n - 2] = corner.clone();
                    if empty_ia {
                        for m in 3..n {
                            let mag = scalar::pow(&scalar::abs(b2), (1u64 << (m - 1)) - 1);
                            betas[m - 2] = if bit(sign_positions.len() + m - 3) { -mag } else { mag };
                        }
                    }
                    let signs = sign_positions
                        .iter()
                        .enumerate()
                        .map(|(k, &p)| (p, if bit(k) { Sign::Minus } else { Sign::Plus }))
                        .collect();
                    let cand = RB1NonTriCandidate { diag_value: diag_value.clone(), betas, signs };
                    let Ok(r) = generate_nontri1(c, &cand) else { continue };
                    if found.contains_key(&r) {
                        continue;
                    }
                    if rb::is_rb(c.algebra(), &r, &scalar::one())? {
                        found.insert(r, canonical_signs(cand));
                    }
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Drop sign entries that are `+` so equal operators get equal descriptors.
fn canonical_signs(mut cand: RB1NonTriCandidate) -> RB1NonTriCandidate {
    cand.signs.retain(|_, s| *s == Sign::Minus);
    cand
}

/// Result of [`classify1`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification1 {
    Triangular(RB1TriFamily),
    NonTriangular(RB1NonTriCandidate),
    NotRb {
        pair: (usize, usize),
        residual: Vector,
    },
    /// Passes the identity but matches none of the explicit forms.
    Unmatched,
}

pub fn classify1(c: &CanonicalAlgebra, r: &LinearOperator) -> Result<Classification1> {
    let report = rb::rb_residual_full(c.algebra(), r, &scalar::one())?;
    if let Some((pair, residual)) = report.first_failure() {
        return Ok(Classification1::NotRb { pair, residual: residual.clone() });
    }
    let n = c.dim();
    if r.is_triangular_regime() {
        let alpha = r.r(1, 1).clone();
        let fam = RB1TriFamily { beta: r.r(1, n).clone(), alpha, i0: c.index_set().i0_max().ok() };
        return Ok(match generate_tri1(c, &fam) {
            Ok(g) if &g == r => Classification1::Triangular(fam),
            _ => Classification1::Unmatched,
        });
    }
    let diag_value = r.r(1, 1).clone();
    let Ok(sigma) = global_sign(&diag_value) else {
        return Ok(Classification1::Unmatched);
    };
    let betas: Vec<Scalar> = (2..=n).map(|m| r.r(1, m).clone()).collect();
    let positions: Vec<(usize, usize)> = if c.index_set().is_empty() {
        (2..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
    } else {
        (2..n).map(|i| (i, i + 1)).collect()
    };
    let mut signs = BTreeMap::new();
    for (i, j) in positions {
        let mag = scalar::pow(&betas[j - i - 1], doubling(i));
        let plus = sigma.apply(mag.clone());
        let entry = r.r(i, j);
        if *entry == plus {
            continue;
        } else if *entry == -plus {
            signs.insert((i, j), Sign::Minus);
        } else {
            return Ok(Classification1::Unmatched);
        }
    }
    let cand = RB1NonTriCandidate { diag_value, betas, signs };
    Ok(match generate_nontri1(c, &cand) {
        Ok(g) if &g == r => Classification1::NonTriangular(cand),
        _ => Classification1::Unmatched,
    })
}

/// Float iteration of `f`, for spotting orbits that leave a neighbourhood.
pub fn f_iterate_f64(x: f64, steps: usize) -> f64 {
    (0..steps).fold(x, |y, _| y * y / (2.0 * y + 1.0))
}

/// `z(x) = (1 + x) / x`, the conjugacy taking `f` to squaring.
pub fn conjugacy(x: &Scalar) -> Option<Scalar> {
    if x.is_zero() {
        None
    } else {
        Some((scalar::one() + x) / x)
    }
}

/// Whether `x` is a value the triangular family with empty index set may start from.
pub fn admissible_alpha(x: &Scalar) -> bool {
    *x != scalar::rat(-1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(&int(0)).unwrap(), int(0));
        assert_eq!(f_eval(&int(-1)).unwrap(), int(-1));
        assert_eq!(f_eval(&int(1)).unwrap(), rat(1, 3));
        assert_eq!(f_eval(&rat(1, 3)).unwrap(), rat(1, 15));
        assert_eq!(f_eval(&rat(-1, 2)), Err(Error::Pole));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(f_orbit(&int(1), 2).values, vec![int(1), rat(1, 3), rat(1, 15)]);
        let z = f_orbit(&int(0), 5);
        assert_eq!(z.values, vec![int(0); 6]);
        assert!(!z.hit_pole);
        let p = f_orbit(&rat(-1, 2), 4);
        assert_eq!(p.values, vec![rat(-1, 2)]);
        assert!(p.hit_pole);
    }

    #[test]
    fn iterate_fraction_matches_orbit() {
        let (p, q) = iterate_fraction(3);
        for x in [int(1), rat(2, 7), int(-3)] {
            assert_eq!(p.eval(&x) / q.eval(&x), f_orbit(&x, 3).values[3]);
        }
        assert_eq!(p.degree(), Some(8));
        assert_eq!(q.degree(), Some(7));
    }

    #[test]
    fn periodic_points_small_m() {
        let expected: BTreeSet<Scalar> = [int(-1), int(0)].into_iter().collect();
        for m in 1..=3 {
            assert_eq!(periodic_points_rational(m), expected, "m = {m}");
        }
    }

    #[test]
    fn periodicity_examples() {
        let s = periodicity_spec(&IndexSet::from_pairs([(1, 3)])).unwrap();
        assert_eq!((s.i1, s.i2, s.m), ([1].into(), BTreeSet::new(), 1));
        let s = periodicity_spec(&IndexSet::from_pairs([(1, 4), (1, 6)])).unwrap();
        assert_eq!((s.i1, s.i2, s.m), ([2, 4].into(), [2].into(), 2));
        let s = periodicity_spec(&IndexSet::from_pairs([(2, 5)])).unwrap();
        assert_eq!((s.i1, s.i2, s.m), ([2].into(), BTreeSet::new(), 2));
        assert_eq!(periodicity_spec(&IndexSet::default()), Err(Error::EmptyIndexSet));
    }

    #[test]
    fn tri_examples() {
        let c2 = CanonicalAlgebra::chain(2);
        let fam = RB1TriFamily { alpha: int(1), beta: int(7), i0: None };
        let r = generate_tri1(&c2, &fam).unwrap();
        assert_eq!(
            r,
            LinearOperator::new(Matrix::from_rows(vec![vec![int(1), int(7)], vec![int(0), rat(1, 3)]]).unwrap())
        );
        assert!(rb::rb_residual_full(c2.algebra(), &r, &int(1)).unwrap().is_zero());

        let c4 = CanonicalAlgebra::chain(4);
        let r = generate_tri1(&c4, &RB1TriFamily { alpha: int(0), beta: rat(3, 2), i0: None }).unwrap();
        let mut expected = LinearOperator::zero(4);
        expected.set(1, 4, rat(3, 2));
        assert_eq!(r, expected);
        assert!(rb::is_rb(c4.algebra(), &r, &int(1)).unwrap());

        let c5 = CanonicalAlgebra::with_entries(5, &[(1, 3, int(1))]).unwrap();
        let bad = RB1TriFamily { alpha: int(1), beta: int(0), i0: Some(1) };
        assert_eq!(generate_tri1(&c5, &bad), Err(Error::InvalidAlpha("1".into())));
        let res = residual_rb1110(&c5, &vec![int(1); 5], &vec![int(0); 4]).unwrap();
        assert!(res.iter().any(|x| x.value == int(-2)));
        let pole = RB1TriFamily { alpha: rat(-1, 2), beta: int(0), i0: None };
        assert_eq!(generate_tri1(&c2, &pole), Err(Error::Pole));
    }

    #[test]
    fn rb1110_examples() {
        let c3 = CanonicalAlgebra::chain(3);
        let orbit = f_orbit(&int(1), 2).values;
        assert!(residual_rb1110(&c3, &orbit, &[int(5), int(0)]).unwrap().iter().all(|x| x.value.is_zero()));
        let c6 = CanonicalAlgebra::with_entries(6, &[(1, 3, int(2)), (2, 5, int(1))]).unwrap();
        let res = residual_rb1110(&c6, &vec![int(-1); 6], &[int(4), int(0), int(0), int(0), int(0)]).unwrap();
        assert!(res.iter().all(|x| x.value.is_zero()));
        // The corner forces r_{n-1,n} = 0 unless 2 r_{n-2,n-2} + 1 = 0.
        let res = residual_rb1110(&c6, &vec![int(-1); 6], &[int(0), int(0), int(0), int(0), int(1)]).unwrap();
        assert_eq!(res.last().unwrap().value, int(-1));
    }

    #[test]
    fn rb1111_examples() {
        let c3 = CanonicalAlgebra::chain(3);
        let good = LinearOperator::from_i64(&[&[0, 1, 9], &[0, 0, 1], &[0, 0, 0]]);
        assert!(residual_rb1111(&c3, &good).unwrap().iter().all(|x| x.value.is_zero()));
        let bad = LinearOperator::from_i64(&[&[0, 1, 9], &[0, 0, 2], &[0, 0, 0]]);
        assert!(residual_rb1111(&c3, &bad).unwrap().iter().any(|x| !x.value.is_zero()));
        assert!(!rb::is_rb(c3.algebra(), &bad, &int(1)).unwrap());
        assert_eq!(
            residual_rb1111(&c3, &LinearOperator::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]])),
            Err(Error::NotUpperTriangular(2, 1))
        );
    }

    #[test]
    fn nontri_examples() {
        let c3 = CanonicalAlgebra::chain(3);
        let cand = RB1NonTriCandidate { diag_value: int(0), betas: vec![int(1), int(4)], signs: BTreeMap::new() };
        let r = generate_nontri1(&c3, &cand).unwrap();
        assert_eq!(r, LinearOperator::from_i64(&[&[0, 1, 4], &[0, 0, 1], &[0, 0, 0]]));
        assert!(rb::is_rb(c3.algebra(), &r, &int(1)).unwrap());

        let b = rat(2, 3);
        let cand = RB1NonTriCandidate { diag_value: int(-1), betas: vec![b.clone(), int(0)], signs: BTreeMap::new() };
        let r = generate_nontri1(&c3, &cand).unwrap();
        assert_eq!(r.r(2, 3), &-(&b * &b));
        assert!(residual_rb1111(&c3, &r).unwrap().iter().all(|x| x.value.is_zero()));

        let c4 = CanonicalAlgebra::chain(4);
        let wrong =
            RB1NonTriCandidate { diag_value: int(0), betas: vec![int(2), int(7), int(0)], signs: BTreeMap::new() };
        assert!(matches!(generate_nontri1(&c4, &wrong), Err(Error::InvariantViolation(_))));
        let right =
            RB1NonTriCandidate { diag_value: int(0), betas: vec![int(2), int(-8), int(0)], signs: BTreeMap::new() };
        assert!(generate_nontri1(&c4, &right).is_ok());
    }
}
