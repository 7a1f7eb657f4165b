//! Brute-force oracle: exhaustive grid search through the full identity,
//! completeness checks against the classified families, and free-parameter
//! probes. Nothing here touches the reduced systems or the family
//! generators, so agreement with them is evidence rather than tautology.

use std::collections::{BTreeMap, BTreeSet};
use std::num::NonZeroUsize;

use crate::canonical::CanonicalAlgebra;
use crate::error::{Error, Result};
use crate::evolution::EvolutionAlgebra;
use crate::matrix::Matrix;
use crate::rb::{self, LinearOperator, Weight};
use crate::scalar::Scalar;
use crate::weight0::{self, Classification0, RB0Family};
use crate::weight1::{self, Classification1, RB1NonTriCandidate, RB1TriFamily};

pub const DEFAULT_BUDGET: u128 = 5_000_000;

/// Which entries of the operator vary over the grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Full,
    UpperTriangular,
    DiagonalLastColumn,
    /// One shared diagonal value plus the last column `r_{i,n}`, `i < n`.
    ConstantDiagonalTriangular,
}

impl std::str::FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Shape::Full),
            "upper" | "upper-triangular" => Ok(Shape::UpperTriangular),
            "diag-lastcol" | "diagonal-last-column" => Ok(Shape::DiagonalLastColumn),
            "const-diag" | "constant-diagonal-triangular" => Ok(Shape::ConstantDiagonalTriangular),
            other => Err(Error::Parse(format!("unknown shape {other:?}"))),
        }
    }
}

/// A set of 1-based positions that always carry the same value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub positions: Vec<(usize, usize)>,
    pub values: Vec<Scalar>,
}

impl Axis {
    pub fn single(pos: (usize, usize), values: Vec<Scalar>) -> Self {
        Self { positions: vec![pos], values }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
    pub axes: Vec<Axis>,
    pub budget: u128,
}

impl GridSpec {
    pub fn shaped(n: usize, shape: Shape, values: &[Scalar]) -> Self {
        let v = values.to_vec();
        let single = |p| Axis::single(p, v.clone());
        let axes = match shape {
            Shape::Full => (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).map(single).collect(),
            Shape::UpperTriangular => (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).map(single).collect(),
            Shape::DiagonalLastColumn => (1..=n).map(|i| (i, i)).chain((1..n).map(|i| (i, n))).map(single).collect(),
            Shape::ConstantDiagonalTriangular => {
                let diag = Axis { positions: (1..=n).map(|i| (i, i)).collect(), values: v.clone() };
                std::iter::once(diag).chain((1..n).map(|i| single((i, n)))).collect()
            }
        };
        Self { n, axes, budget: DEFAULT_BUDGET }
    }

    pub fn custom(n: usize, axes: Vec<Axis>) -> Self {
        Self { n, axes, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    /// Number of grid points; saturates rather than overflowing.
    pub fn count(&self) -> u128 {
        self.axes.iter().fold(1u128, |acc, a| acc.saturating_mul(a.values.len() as u128))
    }

    fn point(&self, mut index: u128) -> LinearOperator {
        let mut m = Matrix::zeros(self.n);
        // Last axis varies fastest.
        for axis in self.axes.iter().rev() {
            let len = axis.values.len() as u128;
            let v = &axis.values[(index % len) as usize];
            index /= len;
            for &(i, j) in &axis.positions {
                m[(i - 1, j - 1)] = v.clone();
            }
        }
        LinearOperator::new(m)
    }
}

fn check_budget(spec: &GridSpec) -> Result<u128> {
    let count = spec.count();
    if count > spec.budget {
        return Err(Error::BudgetExceeded { needed: count, budget: spec.budget });
    }
    Ok(count)
}

fn scan(alg: &EvolutionAlgebra, theta: &Weight, spec: &GridSpec, range: std::ops::Range<u128>) -> Vec<LinearOperator> {
    range.map(|k| spec.point(k)).filter(|r| rb::first_failing_pair(alg, r, theta).is_none()).collect()
}

/// Every grid operator passing the full identity, sorted and deduplicated.
pub fn grid_search(alg: &EvolutionAlgebra, theta: &Weight, spec: &GridSpec) -> Result<Vec<LinearOperator>> {
    let workers = std::thread::available_parallelism().map_or(1, NonZeroUsize::get);
    grid_search_partitioned(alg, theta, spec, workers)
}

/// [`grid_search`] with the index range split into `workers` contiguous chunks.
/// The result does not depend on `workers`.
pub fn grid_search_partitioned(
    alg: &EvolutionAlgebra,
    theta: &Weight,
    spec: &GridSpec,
    workers: usize,
) -> Result<Vec<LinearOperator>> {
    if spec.n != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: spec.n });
    }
    let count = check_budget(spec)?;
    let workers = (workers.max(1) as u128).min(count.max(1));
    let chunk = count.div_ceil(workers);
    let parts: Vec<Vec<LinearOperator>> = if workers == 1 {
        vec![scan(alg, theta, spec, 0..count)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let range = (w * chunk).min(count)..((w + 1) * chunk).min(count);
                    s.spawn(move || scan(alg, theta, spec, range))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    let merged: BTreeSet<LinearOperator> = parts.into_iter().flatten().collect();
    Ok(merged.into_iter().collect())
}

/// Family an operator was matched to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    Weight0(RB0Family),
    Triangular(RB1TriFamily),
    NonTriangular(RB1NonTriCandidate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub found: Vec<LinearOperator>,
    pub classified: BTreeMap<LinearOperator, FamilyDescriptor>,
    pub counterexamples: Vec<LinearOperator>,
}

/// Classifies each operator of `found` that passes the identity. Operators
/// the classifier cannot place are counterexamples to the classification.
pub fn completeness_check<F>(
    alg: &EvolutionAlgebra,
    theta: &Weight,
    found: &[LinearOperator],
    classifier: F,
) -> CompletenessReport
where
    F: Fn(&LinearOperator) -> Option<FamilyDescriptor>,
{
    let mut report = CompletenessReport { found: Vec::new(), classified: BTreeMap::new(), counterexamples: Vec::new() };
    for r in found {
        if r.dim() != alg.dim() || rb::first_failing_pair(alg, r, theta).is_some() {
            continue;
        }
        report.found.push(r.clone());
        match classifier(r) {
            Some(d) => {
                report.classified.insert(r.clone(), d);
            }
            None => report.counterexamples.push(r.clone()),
        }
    }
    report
}

pub fn weight0_classifier(c: &CanonicalAlgebra) -> impl Fn(&LinearOperator) -> Option<FamilyDescriptor> + '_ {
    move |r| match weight0::classify0(c, r) {
        Ok(Classification0::Family(f)) => Some(FamilyDescriptor::Weight0(f)),
        _ => None,
    }
}

pub fn weight1_classifier(c: &CanonicalAlgebra) -> impl Fn(&LinearOperator) -> Option<FamilyDescriptor> + '_ {
    move |r| match weight1::classify1(c, r) {
        Ok(Classification1::Triangular(f)) => Some(FamilyDescriptor::Triangular(f)),
        Ok(Classification1::NonTriangular(f)) => Some(FamilyDescriptor::NonTriangular(f)),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    Free,
    Constrained,
}

/// For each position, substitutes every grid value into `base` and reports
/// whether the identity survives all of them.
pub fn free_parameter_probe(
    alg: &EvolutionAlgebra,
    theta: &Weight,
    base: &LinearOperator,
    positions: &[(usize, usize)],
    values: &[Scalar],
) -> Result<BTreeMap<(usize, usize), ProbeVerdict>> {
    if !rb::is_rb(alg, base, theta)? {
        return Err(Error::InvariantViolation("probe base is not Rota-Baxter".into()));
    }
    let mut out = BTreeMap::new();
    for &(i, j) in positions {
        let mut r = base.clone();
        let free = values.iter().all(|v| {
            r.set(i, j, v.clone());
            rb::first_failing_pair(alg, &r, theta).is_none()
        });
        out.insert((i, j), if free { ProbeVerdict::Free } else { ProbeVerdict::Constrained });
    }
    Ok(out)
}

/// Whether some grid operator fails the identity; a grid where everything
/// passes says nothing.
pub fn has_negative_control(alg: &EvolutionAlgebra, theta: &Weight, spec: &GridSpec) -> bool {
    (0..spec.count()).any(|k| rb::first_failing_pair(alg, &spec.point(k), theta).is_some())
}
