//! Instance-wise checks of the structural facts a cone preserver must
//! satisfy, run against random monomial congruences.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::copositivity::generators::rng;
use crate::copositivity::{
    boundary_status, horn_matrix, kernel_residual, random_boundary, sample_a_t, zero_support_rays, ConeKind, Support,
};
use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::scalar::Rational;
use crate::symspace::{basis_len, vectorize, ExactOp, SymMatrix};

use super::{decompose, monomial_operator, proof_pipeline_pi, random_monomial, Decomposition, MonomialCongruence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    /// The operator is invertible and its inverse is again a monomial congruence.
    Bijective,
    /// Boundary matrices map to boundary matrices, in both directions.
    BoundaryPreserved,
    /// Every boundary matrix has a nonzero nonnegative zero of its form.
    ZeroRayExists,
    /// A copositive `a` with `xi^T a xi = 0`, `xi > 0` has `a xi = 0`.
    KernelResidualZero,
    /// Matrices with one zero diagonal entry and positive elsewhere, and
    /// their images, lie on the boundary.
    ZeroDiagonalOnBoundary,
    /// The images of those matrices span a hyperplane.
    ImageSpanCodimOne,
    /// Those images all share the same zero rays.
    SharedKernel,
    /// The shared zero ray is `e_π(t)`, with `π` the one found by `decompose`.
    PiConsistent,
    /// Undoing the decomposed congruence leaves the identity.
    ReducesToIdentity,
    /// The Horn matrix is a boundary matrix and stays one (n = 5 only).
    HornBoundary,
}

impl Claim {
    pub fn label(self) -> &'static str {
        match self {
            Self::Bijective => "bijective",
            Self::BoundaryPreserved => "boundary-preserved",
            Self::ZeroRayExists => "zero-ray-exists",
            Self::KernelResidualZero => "kernel-residual-zero",
            Self::ZeroDiagonalOnBoundary => "zero-diagonal-on-boundary",
            Self::ImageSpanCodimOne => "image-span-codim-one",
            Self::SharedKernel => "shared-kernel",
            Self::PiConsistent => "pi-consistent",
            Self::ReducesToIdentity => "reduces-to-identity",
            Self::HornBoundary => "horn-boundary",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: Claim,
    pub checked: usize,
    /// Description of the first failing instance.
    pub failure: Option<String>,
}

impl ClaimResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimReport {
    pub n: usize,
    pub samples: usize,
    pub results: Vec<ClaimResult>,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(ClaimResult::passed)
    }

    pub fn get(&self, claim: Claim) -> Option<&ClaimResult> {
        self.results.iter().find(|r| r.claim == claim)
    }
}

struct Tally {
    results: Vec<ClaimResult>,
}

impl Tally {
    fn new(claims: &[Claim]) -> Self {
        Self {
            results: claims
                .iter()
                .map(|&claim| ClaimResult {
                    claim,
                    checked: 0,
                    failure: None,
                })
                .collect(),
        }
    }

    fn record(&mut self, claim: Claim, ok: bool, describe: impl FnOnce() -> String) {
        let r = self
            .results
            .iter_mut()
            .find(|r| r.claim == claim)
            .expect("claim registered");
        r.checked += 1;
        if !ok && r.failure.is_none() {
            r.failure = Some(describe());
        }
    }
}

const BOUNDARY_PER_SAMPLE: usize = 2;
const ZERO_DIAG_PER_INDEX: usize = 3;
const PIPELINE_SAMPLES: usize = 8;

fn status_kind(a: &SymMatrix<Rational>) -> Result<ConeKind> {
    Ok(boundary_status(a)?.kind())
}

/// Runs every claim against `samples` random monomial congruences of
/// dimension `n`. Failures are reported, not returned as errors.
pub fn claim_suite(n: usize, seed: u64, samples: usize) -> Result<ClaimReport> {
    let mut claims = vec![
        Claim::Bijective,
        Claim::BoundaryPreserved,
        Claim::ZeroRayExists,
        Claim::KernelResidualZero,
        Claim::ZeroDiagonalOnBoundary,
        Claim::ImageSpanCodimOne,
        Claim::SharedKernel,
        Claim::PiConsistent,
        Claim::ReducesToIdentity,
    ];
    if n == 5 {
        claims.push(Claim::HornBoundary);
    }
    let mut tally = Tally::new(&claims);
    let mut master = rng(seed);

    if n == 5 {
        let horn = horn_matrix();
        let kind = status_kind(&horn)?;
        tally.record(Claim::HornBoundary, kind == ConeKind::Boundary, || {
            format!("horn matrix classified {kind}")
        });
    }

    for s in 0..samples {
        let d = random_monomial(n, master.gen());
        let op = monomial_operator(&d)?;
        let ctx = |what: String| format!("sample {s}, {d}: {what}");

        let inverse = match op.invert() {
            Ok(inv) => inv,
            Err(_) => {
                tally.record(Claim::Bijective, false, || ctx("operator is singular".into()));
                continue;
            }
        };
        let inverse_is_monomial = decompose(&inverse).monomial().is_some();
        tally.record(Claim::Bijective, inverse_is_monomial, || {
            ctx("inverse is not a monomial congruence".into())
        });

        let mut boundary = Vec::new();
        for _ in 0..BOUNDARY_PER_SAMPLE {
            boundary.push(random_boundary(n, master.gen()));
        }
        if n == 5 {
            let horn = horn_matrix();
            check_images(&mut tally, Claim::HornBoundary, &op, &inverse, &horn, &ctx)?;
            let has_ray = !zero_support_rays(&horn)?.is_empty();
            tally.record(Claim::ZeroRayExists, has_ray, || {
                ctx("no zero ray for the horn matrix".into())
            });
        }
        for (a, xi) in &boundary {
            check_images(&mut tally, Claim::BoundaryPreserved, &op, &inverse, a, &ctx)?;
            for m in [a.clone(), op.apply(a)?, inverse.apply(a)?] {
                let has_ray = !zero_support_rays(&m)?.is_empty();
                tally.record(Claim::ZeroRayExists, has_ray, || ctx(format!("no zero ray for {m}")));
            }
            let residual_zero = kernel_residual(a, xi).is_ok_and(|r| r.iter().all(Zero::is_zero));
            tally.record(Claim::KernelResidualZero, residual_zero, || {
                ctx(format!("a = {a}, xi = {}", join(xi)))
            });
        }

        for t in 0..n {
            zero_diagonal_checks(&mut tally, &op, &inverse, &d, t, master.gen(), &ctx)?;
        }

        let undone = undo_decomposition(&op);
        let ok = undone.as_ref().is_ok_and(ExactOp::is_identity);
        tally.record(Claim::ReducesToIdentity, ok, || {
            ctx("op composed with the inverse congruence is not the identity".into())
        });
    }

    Ok(ClaimReport {
        n,
        samples,
        results: tally.results,
    })
}

/// `op ∘ μ` where `μ` inverts the congruence found by `decompose(op)`.
fn undo_decomposition(op: &ExactOp) -> Result<ExactOp> {
    match decompose(op) {
        Decomposition::Monomial(found) => op.compose(&monomial_operator(&found)?.invert()?),
        Decomposition::NotMonomial { .. } => Err(Error::Singular),
    }
}

fn check_images(
    tally: &mut Tally,
    claim: Claim,
    op: &ExactOp,
    inverse: &ExactOp,
    a: &SymMatrix<Rational>,
    ctx: &impl Fn(String) -> String,
) -> Result<()> {
    let before = status_kind(a)?;
    for (label, image) in [("forward", op.apply(a)?), ("inverse", inverse.apply(a)?)] {
        let after = status_kind(&image)?;
        let ok = before == ConeKind::Boundary && after == ConeKind::Boundary;
        tally.record(claim, ok, || {
            ctx(format!("{label} image of {a} is {after} (source {before})"))
        });
    }
    Ok(())
}

fn zero_diagonal_checks(
    tally: &mut Tally,
    op: &ExactOp,
    inverse: &ExactOp,
    d: &MonomialCongruence,
    t: usize,
    seed: u64,
    ctx: &impl Fn(String) -> String,
) -> Result<()> {
    let n = op.n();
    let big_n = basis_len(n);
    let count = ZERO_DIAG_PER_INDEX.max(big_n);
    let sources = sample_a_t(n, t, seed, count)?;
    let mut images = Vec::with_capacity(count);
    for a in &sources {
        let image = op.apply(a)?;
        let (src, img) = (status_kind(a)?, status_kind(&image)?);
        tally.record(
            Claim::ZeroDiagonalOnBoundary,
            src == ConeKind::Boundary && img == ConeKind::Boundary,
            || ctx(format!("t = {}: {a} is {src}, image is {img}", t + 1)),
        );
        images.push(image);
    }
    // inverse images of the same set also have a single zero diagonal entry
    for a in sources.iter().take(ZERO_DIAG_PER_INDEX) {
        let kind = status_kind(&inverse.apply(a)?)?;
        tally.record(Claim::ZeroDiagonalOnBoundary, kind == ConeKind::Boundary, || {
            ctx(format!("t = {}: inverse image of {a} is {kind}", t + 1))
        });
    }

    let span = Dense::from_fn(count, big_n, |i, j| vectorize(&images[i])[j].clone()).rank();
    tally.record(Claim::ImageSpanCodimOne, span + 1 == big_n, || {
        ctx(format!(
            "t = {}: images span dimension {span}, expected {}",
            t + 1,
            big_n - 1
        ))
    });

    let mut ray_sets = Vec::with_capacity(images.len());
    for image in &images {
        let supports: BTreeSet<Support> = zero_support_rays(image)?.into_iter().map(|r| r.support).collect();
        ray_sets.push(supports);
    }
    let shared = ray_sets.windows(2).all(|w| w[0] == w[1]);
    tally.record(Claim::SharedKernel, shared, || {
        ctx(format!("t = {}: zero-ray supports differ across images", t + 1))
    });

    let expected = d.perm().apply(t);
    let got = proof_pipeline_pi(op, t, seed, PIPELINE_SAMPLES);
    let consistent = matches!(got, Ok(j) if j == expected)
        && decompose(op)
            .monomial()
            .is_some_and(|found| found.perm().apply(t) == expected);
    tally.record(Claim::PiConsistent, consistent, || {
        ctx(format!(
            "t = {}: pipeline gave {got:?}, decompose gives {}",
            t + 1,
            expected + 1
        ))
    });
    Ok(())
}

fn join(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
