//! Monomial congruences and the decomposition of linear operators on
//! symmetric matrices into them.
//!
//! A monomial congruence is `x -> m^T x m` where `m` has exactly one
//! nonzero entry `m[t][π(t)] = c_t > 0` per row. On the basis it acts as
//!
//! ```text
//! e_tt          -> c_t^2     e_π(t)π(t)
//! e_ij + e_ji   -> c_i c_j  (e_π(i)π(j) + e_π(j)π(i))
//! ```
//!
//! Scales are stored squared (`α_t = c_t^2`) so that an operator with
//! rational coefficients always has a rational representation, even when
//! an individual `c_t` is irrational.

mod certify;
mod claims;
mod pipeline;

use std::fmt;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;

pub use certify::{certify_preserver, counterexample_corpus, Direction, Verdict};
pub use claims::{claim_suite, Claim, ClaimReport, ClaimResult};
pub use pipeline::proof_pipeline_pi;

use crate::copositivity::generators::{positive_rational, rng};
use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::scalar::{int, rational_sqrt, Rational, Scalar};
use crate::symspace::{ExactOp, LinOp, SymBasisIndex, SymMatrix};

/// A permutation of `0..n`, stored as its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation(images));
            }
        }
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, t: usize) -> usize {
        self.0[t]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p] = i;
        }
        Self(inv)
    }

    /// Cycles of length at least two, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.0[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.0[next];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

/// One-line cycle notation, 1-based: `id`, `(1 2)`, `(1 3 2)(4 5)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialCongruence {
    perm: Permutation,
    squared_scales: Vec<Rational>,
}

impl MonomialCongruence {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: Permutation::identity(n),
            squared_scales: vec![int(1); n],
        }
    }

    /// From rational scales `c_t = m[t][π(t)]`.
    pub fn from_scales(perm: Permutation, scales: Vec<Rational>) -> Result<Self> {
        if let Some(t) = scales.iter().position(|c| !c.is_positive()) {
            return Err(Error::NonpositiveScale(t + 1));
        }
        let squared = scales.iter().map(|c| c * c).collect();
        Self::from_squared_scales(perm, squared)
    }

    /// From `α_t = c_t^2`; the `c_t` themselves may be irrational.
    pub fn from_squared_scales(perm: Permutation, squared_scales: Vec<Rational>) -> Result<Self> {
        if squared_scales.len() != perm.len() {
            return Err(Error::DimensionMismatch {
                expected: perm.len(),
                found: squared_scales.len(),
            });
        }
        if let Some(t) = squared_scales.iter().position(|a| !a.is_positive()) {
            return Err(Error::NonpositiveScale(t + 1));
        }
        Ok(Self { perm, squared_scales })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn squared_scales(&self) -> &[Rational] {
        &self.squared_scales
    }

    /// `c_t`, when it is rational.
    pub fn scale(&self, t: usize) -> Option<Rational> {
        rational_sqrt(&self.squared_scales[t])
    }

    /// `c_i c_j`, when it is rational.
    pub fn scale_product(&self, i: usize, j: usize) -> Option<Rational> {
        rational_sqrt(&(&self.squared_scales[i] * &self.squared_scales[j]))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_identity() && self.squared_scales.iter().all(One::is_one)
    }

    /// The monomial matrix `m`, when every scale is rational.
    pub fn matrix(&self) -> Option<Dense<Rational>> {
        let n = self.n();
        let mut m = Dense::zeros(n, n);
        for t in 0..n {
            m.set(t, self.perm.apply(t), self.scale(t)?);
        }
        Some(m)
    }
}

impl fmt::Display for MonomialCongruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha: Vec<String> = self.squared_scales.iter().map(ToString::to_string).collect();
        write!(f, "pi={}, alpha={}", self.perm, alpha.join(" "))
    }
}

/// Random permutation and scales with numerators and denominators in `1..=100`.
pub fn random_monomial(n: usize, seed: u64) -> MonomialCongruence {
    let mut rng = rng(seed);
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(&mut rng);
    let scales = (0..n).map(|_| positive_rational(&mut rng)).collect();
    MonomialCongruence::from_scales(Permutation(images), scales).expect("scales are positive")
}

/// The operator `x -> m^T x m` induced by `d`.
///
/// Fails when some product `c_i c_j` is irrational, since the operator then
/// has irrational coefficients.
pub fn monomial_operator(d: &MonomialCongruence) -> Result<ExactOp> {
    let n = d.n();
    let mut images = Vec::with_capacity(crate::symspace::basis_len(n));
    for b in SymBasisIndex::all(n) {
        let mut img = SymMatrix::zeros(n);
        match b {
            SymBasisIndex::Diag(t) => {
                let p = d.perm.apply(t);
                img.set(p, p, d.squared_scales[t].clone());
            }
            SymBasisIndex::OffDiag(i, j) => {
                let gamma = d
                    .scale_product(i, j)
                    .ok_or(Error::IrrationalScaleProduct(i + 1, j + 1))?;
                img.set(d.perm.apply(i), d.perm.apply(j), gamma);
            }
        }
        images.push(img);
    }
    LinOp::from_basis_images(n, &images)
}

/// The operator `x -> s^T x s` for an arbitrary square `s`.
pub fn congruence_operator<S: Scalar>(s: &Dense<S>) -> Result<LinOp<S>> {
    if s.rows != s.cols {
        return Err(Error::NotSquare {
            row: 1,
            len: s.cols,
            n: s.rows,
        });
    }
    let n = s.rows;
    let images: Vec<SymMatrix<S>> = SymBasisIndex::all(n).map(|b| b.element::<S>(n).congruence(s)).collect();
    LinOp::from_basis_images(n, &images)
}

/// Why an operator is not a monomial congruence. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotMonomialReason {
    NotBijective,
    DiagImageBad(usize),
    DiagScaleNonpositive(usize),
    PiNotInjective(usize, usize),
    OffDiagImageBad(usize, usize),
    OffDiagScaleMismatch(usize, usize),
}

impl fmt::Display for NotMonomialReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NotBijective => f.write_str("not bijective"),
            Self::DiagImageBad(t) => write!(f, "image of e{0}{0} is not a multiple of a diagonal unit", t + 1),
            Self::DiagScaleNonpositive(t) => write!(f, "image of e{0}{0} has a nonpositive scale", t + 1),
            Self::PiNotInjective(s, t) => {
                write!(f, "e{0}{0} and e{1}{1} map to the same diagonal position", s + 1, t + 1)
            }
            Self::OffDiagImageBad(i, j) => {
                write!(
                    f,
                    "image of e{0}{1}+e{1}{0} is not a multiple of the permuted unit",
                    i + 1,
                    j + 1
                )
            }
            Self::OffDiagScaleMismatch(i, j) => {
                write!(
                    f,
                    "image of e{0}{1}+e{1}{0} has a scale inconsistent with the diagonal",
                    i + 1,
                    j + 1
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decomposition {
    Monomial(MonomialCongruence),
    NotMonomial {
        reason: NotMonomialReason,
        /// The offending basis image; for a singular operator, a nonzero
        /// element of its kernel.
        witness: Option<SymMatrix<Rational>>,
    },
}

impl Decomposition {
    pub fn monomial(&self) -> Option<&MonomialCongruence> {
        match self {
            Self::Monomial(d) => Some(d),
            Self::NotMonomial { .. } => None,
        }
    }

    fn reject(reason: NotMonomialReason, witness: SymMatrix<Rational>) -> Self {
        Self::NotMonomial {
            reason,
            witness: Some(witness),
        }
    }
}

/// Reads `(π, α)` off the basis images and verifies that the operator is
/// exactly the induced monomial congruence.
pub fn decompose(op: &ExactOp) -> Decomposition {
    let n = op.n();
    if !op.is_invertible() {
        return Decomposition::NotMonomial {
            reason: NotMonomialReason::NotBijective,
            witness: op.kernel_element(),
        };
    }

    let mut targets = Vec::with_capacity(n);
    let mut alpha = Vec::with_capacity(n);
    for t in 0..n {
        let img = op.basis_image(SymBasisIndex::Diag(t));
        let Some(j) = single_diagonal_entry(&img) else {
            return Decomposition::reject(NotMonomialReason::DiagImageBad(t), img);
        };
        let a = img.get(j, j).clone();
        if !a.is_positive() {
            return Decomposition::reject(NotMonomialReason::DiagScaleNonpositive(t), img);
        }
        targets.push(j);
        alpha.push(a);
    }
    if let Some((s, t)) = first_collision(&targets) {
        return Decomposition::reject(
            NotMonomialReason::PiNotInjective(s, t),
            op.basis_image(SymBasisIndex::Diag(t)),
        );
    }

    for i in 0..n {
        for j in i + 1..n {
            let img = op.basis_image(SymBasisIndex::OffDiag(i, j));
            let (p, q) = (targets[i].min(targets[j]), targets[i].max(targets[j]));
            let stray = (0..n).any(|r| (r..n).any(|c| (r, c) != (p, q) && !img.get(r, c).is_zero()));
            if stray {
                return Decomposition::reject(NotMonomialReason::OffDiagImageBad(i, j), img);
            }
            let gamma = img.get(p, q);
            if !gamma.is_positive() || gamma * gamma != &alpha[i] * &alpha[j] {
                return Decomposition::reject(NotMonomialReason::OffDiagScaleMismatch(i, j), img);
            }
        }
    }

    let perm = Permutation(targets);
    Decomposition::Monomial(MonomialCongruence::from_squared_scales(perm, alpha).expect("validated above"))
}

/// Index of the only nonzero entry, if the matrix is a multiple of a diagonal unit.
fn single_diagonal_entry(a: &SymMatrix<Rational>) -> Option<usize> {
    let n = a.n();
    let mut found = None;
    for i in 0..n {
        for j in i..n {
            if a.get(i, j).is_zero() {
                continue;
            }
            if i != j || found.is_some() {
                return None;
            }
            found = Some(i);
        }
    }
    found
}

fn first_collision(targets: &[usize]) -> Option<(usize, usize)> {
    (0..targets.len())
        .flat_map(|t| (0..t).map(move |s| (s, t)))
        .find(|&(s, t)| targets[s] == targets[t])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::copositivity::{is_copositive, random_copositive};
    use crate::scalar::ratio;

    fn e(n: usize, i: usize, j: usize) -> SymMatrix<Rational> {
        if i == j {
            SymBasisIndex::Diag(i).element(n)
        } else {
            SymBasisIndex::OffDiag(i.min(j), i.max(j)).element(n)
        }
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn dense(rows: &[&[i64]]) -> Dense<Rational> {
        Dense::from_fn(rows.len(), rows[0].len(), |i, j| int(rows[i][j]))
    }

    #[test]
    fn permutation_notation() {
        assert_eq!(perm(&[0, 1, 2]).to_string(), "id");
        assert_eq!(perm(&[1, 0]).to_string(), "(1 2)");
        assert_eq!(perm(&[2, 0, 1, 4, 3]).to_string(), "(1 3 2)(4 5)");
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        let p = perm(&[2, 0, 1]);
        assert!(Permutation((0..3).map(|i| p.inverse().apply(p.apply(i))).collect()).is_identity());
    }

    #[test]
    fn identity_congruence() {
        let op = monomial_operator(&MonomialCongruence::identity(3)).unwrap();
        assert!(op.is_identity());
        assert!(MonomialCongruence::identity(3).is_identity());
    }

    #[test]
    fn swap_with_scales() {
        let d = MonomialCongruence::from_scales(perm(&[1, 0]), vec![int(1), int(2)]).unwrap();
        let op = monomial_operator(&d).unwrap();
        assert_eq!(op.apply(&e(2, 0, 0)).unwrap(), e(2, 1, 1));
        assert_eq!(op.apply(&e(2, 1, 1)).unwrap(), e(2, 0, 0).scale(&int(4)));
        assert_eq!(op.apply(&e(2, 0, 1)).unwrap(), e(2, 0, 1).scale(&int(2)));
        // agrees with the explicit congruence by m
        assert_eq!(congruence_operator(&d.matrix().unwrap()).unwrap(), op);
    }

    #[test]
    fn nonpositive_scales_rejected() {
        assert_eq!(
            MonomialCongruence::from_scales(perm(&[0, 1]), vec![int(1), int(0)]),
            Err(Error::NonpositiveScale(2))
        );
        assert_eq!(
            MonomialCongruence::from_scales(perm(&[0, 1]), vec![int(-1), int(1)]),
            Err(Error::NonpositiveScale(1))
        );
    }

    #[test]
    fn irrational_scale_products() {
        // α = (2, 2, 8): c = (√2, √2, 2√2), every product rational
        let d = MonomialCongruence::from_squared_scales(perm(&[0, 2, 1]), vec![int(2), int(2), int(8)]).unwrap();
        assert_eq!(d.scale(0), None);
        assert!(d.matrix().is_none());
        let op = monomial_operator(&d).unwrap();
        assert_eq!(decompose(&op), Decomposition::Monomial(d));

        let bad = MonomialCongruence::from_squared_scales(perm(&[0, 1]), vec![int(2), int(1)]).unwrap();
        assert_eq!(monomial_operator(&bad), Err(Error::IrrationalScaleProduct(1, 2)));
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_operator(&dense(&[&[1, 0], &[0, 1]])).unwrap().is_identity());
        let shear = congruence_operator(&dense(&[&[1, 1], &[0, 1]])).unwrap();
        let ones = SymMatrix::from_fn(2, |_, _| int(1));
        assert_eq!(shear.apply(&e(2, 0, 0)).unwrap(), ones);
    }

    #[test]
    fn monomial_operator_preserves_copositivity() {
        for seed in 0..10 {
            let d = random_monomial(3, seed);
            let op = monomial_operator(&d).unwrap();
            let a = random_copositive(3, 100 + seed);
            assert!(is_copositive(&op.apply(&a).unwrap()).unwrap().copositive);
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&LinOp::identity(3)),
            Decomposition::Monomial(MonomialCongruence::identity(3))
        );

        let d = MonomialCongruence::from_scales(perm(&[1, 0]), vec![int(1), int(2)]).unwrap();
        assert_eq!(decompose(&monomial_operator(&d).unwrap()), Decomposition::Monomial(d));

        let shear = congruence_operator(&dense(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(
            decompose(&shear),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::DiagImageBad(0),
                witness: Some(SymMatrix::from_fn(2, |_, _| int(1))),
            }
        );

        let spill = LinOp::from_basis_images(2, &[e(2, 0, 0).add(&e(2, 1, 1)), e(2, 1, 1), e(2, 0, 1)]).unwrap();
        assert!(matches!(
            decompose(&spill),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::DiagImageBad(0),
                ..
            }
        ));
    }

    #[test]
    fn decompose_rejection_reasons() {
        let singular = LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 0, 0), e(2, 0, 1)]).unwrap();
        match decompose(&singular) {
            Decomposition::NotMonomial {
                reason: NotMonomialReason::NotBijective,
                witness: Some(k),
            } => {
                assert!(singular.apply(&k).unwrap().is_zero());
            }
            other => panic!("unexpected {other:?}"),
        }

        let negative = LinOp::from_basis_images(2, &[e(2, 0, 0).scale(&int(-1)), e(2, 1, 1), e(2, 0, 1)]).unwrap();
        assert!(matches!(
            decompose(&negative),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::DiagScaleNonpositive(0),
                ..
            }
        ));

        let flipped = LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 1, 1), e(2, 0, 1).scale(&int(-1))]).unwrap();
        assert!(matches!(
            decompose(&flipped),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::OffDiagScaleMismatch(0, 1),
                ..
            }
        ));

        let stretched = LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 1, 1), e(2, 0, 1).scale(&ratio(3, 2))]).unwrap();
        assert!(matches!(
            decompose(&stretched),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::OffDiagScaleMismatch(0, 1),
                ..
            }
        ));

        let leaky = LinOp::from_basis_images(
            3,
            &[
                e(3, 0, 0),
                e(3, 1, 1),
                e(3, 2, 2),
                e(3, 0, 1).add(&e(3, 0, 2)),
                e(3, 0, 2),
                e(3, 1, 2),
            ],
        )
        .unwrap();
        assert!(matches!(
            decompose(&leaky),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::OffDiagImageBad(0, 1),
                ..
            }
        ));
    }

    #[test]
    fn collision_detection() {
        // unreachable through `decompose` (collisions make the operator
        // singular), so exercise the helper directly
        assert_eq!(first_collision(&[0, 1, 2]), None);
        assert_eq!(first_collision(&[2, 0, 2]), Some((0, 2)));
    }

    #[test]
    fn one_dimensional_operators() {
        let scale = |k: i64| LinOp::from_basis_images(1, &[SymMatrix::from_fn(1, |_, _| int(k))]).unwrap();
        assert_eq!(
            decompose(&scale(3)),
            Decomposition::Monomial(
                MonomialCongruence::from_squared_scales(Permutation::identity(1), vec![int(3)]).unwrap()
            )
        );
        assert!(matches!(
            decompose(&scale(-3)),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::DiagScaleNonpositive(0),
                ..
            }
        ));
        assert!(matches!(
            decompose(&scale(0)),
            Decomposition::NotMonomial {
                reason: NotMonomialReason::NotBijective,
                ..
            }
        ));
    }
}
