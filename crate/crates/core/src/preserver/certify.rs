use std::fmt;

use crate::copositivity::{horn_matrix, is_copositive, random_boundary, random_copositive};
use crate::error::Result;
use crate::scalar::{int, Rational};
use crate::symspace::{ExactOp, SymMatrix};

use super::{decompose, Decomposition, MonomialCongruence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// The operator itself maps a copositive matrix outside the cone.
    Forward,
    /// The inverse operator does.
    Inverse,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Forward => "forward",
            Self::Inverse => "inverse",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Preserver(MonomialCongruence),
    /// `counterexample` is copositive and `image` (its image under the
    /// operator or its inverse, per `direction`) is not.
    NotPreserver {
        counterexample: SymMatrix<Rational>,
        image: SymMatrix<Rational>,
        direction: Direction,
        decomposition: Decomposition,
    },
    /// Not a monomial congruence, hence not a preserver, but no explicit
    /// violation turned up among the candidates tried.
    NotMonomialNoWitness {
        decomposition: Decomposition,
        budget_spent: usize,
    },
}

/// The fixed candidates tried before any random ones, in order: every
/// `e_tt`, every `e_ii + e_jj - e_ij - e_ji`, every `e_ij + e_ji`, the
/// all-ones matrix, and for `n = 5` the Horn matrix. All are copositive.
pub fn counterexample_corpus(n: usize) -> Vec<SymMatrix<Rational>> {
    let mut out = Vec::new();
    for t in 0..n {
        let mut e = SymMatrix::zeros(n);
        e.set(t, t, int(1));
        out.push(e);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut d = SymMatrix::zeros(n);
            d.set(i, i, int(1));
            d.set(j, j, int(1));
            d.set(i, j, int(-1));
            out.push(d);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = SymMatrix::zeros(n);
            e.set(i, j, int(1));
            out.push(e);
        }
    }
    out.push(SymMatrix::from_fn(n, |_, _| int(1)));
    if n == 5 {
        out.push(horn_matrix());
    }
    out
}

/// A copositive matrix, its non-copositive image, and which map produced it.
type Hit = (SymMatrix<Rational>, SymMatrix<Rational>, Direction);

/// Random candidate `k`: alternates between the two generators.
fn random_candidate(n: usize, k: usize) -> SymMatrix<Rational> {
    let seed = k as u64;
    if k.is_multiple_of(2) || n < 2 {
        random_copositive(n, seed)
    } else {
        random_boundary(n, seed).0
    }
}

/// Decides whether `op` maps the copositive cone onto itself.
///
/// A monomial decomposition proves it does. Otherwise the operator is not a
/// preserver, and this searches the fixed corpus and then `budget` seeded
/// random copositive matrices for an explicit violation, checking each
/// candidate under `op` and then under its inverse. The first violation in
/// that order is reported.
pub fn certify_preserver(op: &ExactOp, budget: usize) -> Result<Verdict> {
    let decomposition = decompose(op);
    if let Decomposition::Monomial(d) = decomposition {
        return Ok(Verdict::Preserver(d));
    }
    let n = op.n();
    let inverse = op.invert().ok();

    let check = |a: SymMatrix<Rational>| -> Result<Option<Hit>> {
        let image = op.apply(&a)?;
        if !is_copositive(&image)?.copositive {
            return Ok(Some((a, image, Direction::Forward)));
        }
        if let Some(inv) = &inverse {
            let image = inv.apply(&a)?;
            if !is_copositive(&image)?.copositive {
                return Ok(Some((a, image, Direction::Inverse)));
            }
        }
        Ok(None)
    };

    let found = |(counterexample, image, direction)| Verdict::NotPreserver {
        counterexample,
        image,
        direction,
        decomposition: decomposition.clone(),
    };

    for a in counterexample_corpus(n) {
        if let Some(hit) = check(a)? {
            return Ok(found(hit));
        }
    }
    for k in 0..budget {
        if let Some(hit) = check(random_candidate(n, k))? {
            return Ok(found(hit));
        }
    }
    Ok(Verdict::NotMonomialNoWitness {
        decomposition,
        budget_spent: budget,
    })
}
