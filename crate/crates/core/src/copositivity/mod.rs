//! Exact copositivity decisions via the minimum of `x^T a x` over the
//! standard simplex.
//!
//! The minimum is found by enumerating every nonempty support `σ` and
//! solving the bordered stationarity system
//!
//! ```text
//! [ 2 a(σ|σ)  1 ] [ x_σ ]   [ 0 ]
//! [ 1^T       0 ] [ λ   ] = [ 1 ]
//! ```
//!
//! Singular systems are skipped. This loses nothing: take a global
//! minimizer whose support is inclusion-minimal among all minimizers. If
//! its system were singular, a null direction `d` (with `1^T d = 0`) keeps
//! the form constant along `x + s d`, and moving until a coordinate hits
//! zero produces a minimizer with strictly smaller support. Supports of
//! size one are the simplex vertices, whose systems are never singular.
//!
//! The cost is `2^n - 1` small linear solves, which bounds the dimension
//! (see [`DEFAULT_MAX_DIM`]).

pub(crate) mod generators;

use std::cmp::Ordering;
use std::fmt;

pub use generators::{horn_matrix, random_boundary, random_copositive, sample_a_t};

use crate::dense::Dense;
use crate::error::{Error, Precondition, Result};
use crate::scalar::Scalar;
use crate::symspace::SymMatrix;

pub const DEFAULT_MAX_DIM: usize = 12;

/// Sorted set of 0-based indices. Displays 1-based, e.g. `{1,3}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(mut idx: Vec<usize>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Self(idx)
    }

    pub fn of<S: Scalar>(x: &[S]) -> Self {
        Self(
            x.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_negligible())
                .map(|(i, _)| i)
                .collect(),
        )
    }

    fn from_mask(mask: u32, n: usize) -> Self {
        Self((0..n).filter(|i| mask & (1 << i) != 0).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

/// Global minimum of `x^T a x` over `{x >= 0, sum x = 1}`.
///
/// `multiplier` is the `λ` of the bordered system, so `value = -λ/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexMinimum<S> {
    pub value: S,
    pub minimizer: Vec<S>,
    pub support: Support,
    pub multiplier: S,
}

/// A nonnegative zero of the quadratic form, normalized to the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelRay<S> {
    pub support: Support,
    pub representative: Vec<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConeStatus<S> {
    /// `witness^T a witness < 0`.
    Outside {
        witness: Vec<S>,
    },
    Boundary(KernelRay<S>),
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConeKind {
    Outside,
    Boundary,
    Interior,
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Outside => "outside",
            Self::Boundary => "boundary",
            Self::Interior => "interior",
        })
    }
}

impl<S: Scalar> ConeStatus<S> {
    /// Classifies by the sign of the minimum. In float mode `|value| <= τ`
    /// counts as boundary, which is a heuristic.
    pub fn from_minimum(min: &SimplexMinimum<S>) -> Self {
        match min.value.sign() {
            Ordering::Less => Self::Outside {
                witness: min.minimizer.clone(),
            },
            Ordering::Equal => Self::Boundary(KernelRay {
                support: min.support.clone(),
                representative: min.minimizer.clone(),
            }),
            Ordering::Greater => Self::Interior,
        }
    }

    pub fn kind(&self) -> ConeKind {
        match self {
            Self::Outside { .. } => ConeKind::Outside,
            Self::Boundary(_) => ConeKind::Boundary,
            Self::Interior => ConeKind::Interior,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership<S> {
    pub copositive: bool,
    /// The simplex minimizer, present when `copositive` is false.
    pub witness: Option<Vec<S>>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::DimensionCap { n, cap });
    }
    if n >= 32 {
        return Err(Error::DimensionCap { n, cap: 31 });
    }
    Ok(())
}

/// Stationary point of the form restricted to the relative interior of the
/// face with the given support, if the bordered system is nonsingular and
/// its solution is strictly positive.
fn face_candidate<S: Scalar>(a: &SymMatrix<S>, support: Support) -> Option<SimplexMinimum<S>> {
    let n = a.n();
    let idx = support.indices();
    let k = idx.len();
    if k == 1 {
        let s = idx[0];
        let mut x = vec![S::zero(); n];
        x[s] = S::one();
        let value = a.get(s, s).clone();
        let multiplier = -(value.clone() + value.clone());
        return Some(SimplexMinimum {
            value,
            minimizer: x,
            support,
            multiplier,
        });
    }
    let two = S::one() + S::one();
    let system = Dense::from_fn(k + 1, k + 1, |i, j| match (i < k, j < k) {
        (true, true) => two.clone() * a.get(idx[i], idx[j]).clone(),
        (true, false) | (false, true) => S::one(),
        (false, false) => S::zero(),
    });
    let mut rhs = vec![S::zero(); k + 1];
    rhs[k] = S::one();
    let sol = system.solve(&rhs)?;
    if !sol[..k].iter().all(Scalar::is_positive) {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for (&i, v) in idx.iter().zip(&sol) {
        x[i] = v.clone();
    }
    let value = a.quadratic_form(&x);
    Some(SimplexMinimum {
        value,
        minimizer: x,
        support,
        multiplier: sol[k].clone(),
    })
}

fn all_candidates<S: Scalar>(a: &SymMatrix<S>) -> impl Iterator<Item = SimplexMinimum<S>> + '_ {
    let n = a.n();
    (1u32..(1u32 << n)).filter_map(move |mask| face_candidate(a, Support::from_mask(mask, n)))
}

fn lex_compare<S: Scalar>(x: &[S], y: &[S]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.compare(b))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Value first, then lexicographically smallest support, then minimizer.
fn candidate_order<S: Scalar>(p: &SimplexMinimum<S>, q: &SimplexMinimum<S>) -> Ordering {
    p.value
        .compare(&q.value)
        .then_with(|| p.support.cmp(&q.support))
        .then_with(|| lex_compare(&p.minimizer, &q.minimizer))
}

pub fn simplex_minimize<S: Scalar>(a: &SymMatrix<S>) -> Result<SimplexMinimum<S>> {
    simplex_minimize_capped(a, DEFAULT_MAX_DIM)
}

pub fn simplex_minimize_capped<S: Scalar>(a: &SymMatrix<S>, cap: usize) -> Result<SimplexMinimum<S>> {
    check_cap(a.n(), cap)?;
    Ok(all_candidates(a)
        .min_by(candidate_order)
        .expect("vertices are always candidates"))
}

pub fn is_copositive<S: Scalar>(a: &SymMatrix<S>) -> Result<Membership<S>> {
    let min = simplex_minimize(a)?;
    let copositive = !min.value.is_negative();
    Ok(Membership {
        copositive,
        witness: (!copositive).then_some(min.minimizer),
    })
}

pub fn boundary_status<S: Scalar>(a: &SymMatrix<S>) -> Result<ConeStatus<S>> {
    Ok(ConeStatus::from_minimum(&simplex_minimize(a)?))
}

/// One zero of the form per support, sorted by support. Fails with
/// [`Error::NotCopositive`] if the form takes a negative value.
pub fn zero_support_rays<S: Scalar>(a: &SymMatrix<S>) -> Result<Vec<KernelRay<S>>> {
    check_cap(a.n(), DEFAULT_MAX_DIM)?;
    let mut rays = Vec::new();
    for c in all_candidates(a) {
        match c.value.sign() {
            Ordering::Less => return Err(Error::NotCopositive),
            Ordering::Equal => rays.push(KernelRay {
                support: c.support,
                representative: c.minimizer,
            }),
            Ordering::Greater => {}
        }
    }
    rays.sort_by(|p, q| p.support.cmp(&q.support));
    rays.dedup_by(|p, q| p.support == q.support);
    Ok(rays)
}

/// Returns `a xi`, after checking that `a` is copositive, `xi > 0`
/// entrywise and `xi^T a xi = 0`. A zero result on such inputs is the
/// expected first-order optimality condition.
pub fn kernel_residual<S: Scalar>(a: &SymMatrix<S>, xi: &[S]) -> Result<Vec<S>> {
    let n = a.n();
    if xi.len() != n {
        return Err(Error::PreconditionViolated(Precondition::VectorLength {
            expected: n,
            found: xi.len(),
        }));
    }
    if let Some(i) = xi.iter().position(|v| !v.is_positive()) {
        return Err(Error::PreconditionViolated(Precondition::NotStrictlyPositive {
            index: i + 1,
        }));
    }
    if !a.quadratic_form(xi).is_negligible() {
        return Err(Error::PreconditionViolated(Precondition::FormNonzero));
    }
    if !is_copositive(a)?.copositive {
        return Err(Error::PreconditionViolated(Precondition::NotCopositive));
    }
    Ok(a.mul_vec(xi))
}
