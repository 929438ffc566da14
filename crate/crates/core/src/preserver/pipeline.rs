use std::collections::BTreeSet;

use crate::copositivity::{sample_a_t, zero_support_rays, Support};
use crate::error::{Error, Inconclusive, Result};
use crate::symspace::ExactOp;

/// Recovers `π(t)` the way a preserver must expose it: the images of the
/// matrices with a single zero diagonal entry at `(t, t)` share one zero
/// ray, and that ray is a coordinate vector `e_π(t)`.
///
/// Draws `samples` such matrices, intersects the supports of the zero rays
/// of their images, and returns the index `j` (0-based) if the intersection
/// is exactly `{{j}}`.
pub fn proof_pipeline_pi(op: &ExactOp, t: usize, seed: u64, samples: usize) -> Result<usize> {
    let inconclusive = |why| Err(Error::PipelineInconclusive(why));
    if samples == 0 {
        return inconclusive(Inconclusive::NoSamples);
    }
    if !op.is_invertible() {
        return inconclusive(Inconclusive::NotBijective);
    }
    let mut shared: Option<BTreeSet<Support>> = None;
    for (k, a) in sample_a_t(op.n(), t, seed, samples)?.into_iter().enumerate() {
        let image = op.apply(&a)?;
        let rays = match zero_support_rays(&image) {
            Ok(rays) => rays,
            Err(Error::NotCopositive) => return inconclusive(Inconclusive::ImageNotCopositive { sample: k + 1 }),
            Err(e) => return Err(e),
        };
        let supports: BTreeSet<Support> = rays.into_iter().map(|r| r.support).collect();
        shared = Some(match shared {
            None => supports,
            Some(prev) => prev.intersection(&supports).cloned().collect(),
        });
    }
    let shared = shared.unwrap_or_default();
    let mut iter = shared.iter();
    match (iter.next(), iter.next()) {
        (None, _) => inconclusive(Inconclusive::EmptyIntersection),
        (Some(s), None) if s.len() == 1 => Ok(s.indices()[0]),
        _ => inconclusive(Inconclusive::NotSingleton {
            supports: shared.iter().map(Support::one_based).collect(),
        }),
    }
}
