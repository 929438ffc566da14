//! Seeded generators for test instances. Every generator is deterministic
//! per seed (ChaCha8). Rational draws have numerators and denominators
//! bounded by 100; factors that get multiplied together are small integers
//! so the products stay short.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{int, Rational};
use crate::symspace::SymMatrix;

const MAX_MAGNITUDE: i64 = 100;
const MAX_FACTOR: i64 = 9;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn positive_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(1..=MAX_MAGNITUDE);
    let q = rng.gen_range(1..=MAX_MAGNITUDE);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn signed_factor(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(-MAX_FACTOR..=MAX_FACTOR))
}

fn positive_factor(rng: &mut impl Rng) -> Rational {
    int(rng.gen_range(1..=MAX_FACTOR))
}

fn nonnegative_rational(rng: &mut impl Rng) -> Rational {
    let p = rng.gen_range(0..=MAX_MAGNITUDE);
    let q = rng.gen_range(1..=MAX_MAGNITUDE);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// The 5x5 Horn matrix: copositive, on the boundary, and not a sum of a
/// positive semidefinite and an entrywise nonnegative matrix.
pub fn horn_matrix() -> SymMatrix<Rational> {
    const H: [[i64; 5]; 5] = [
        [1, -1, 1, 1, -1],
        [-1, 1, -1, 1, 1],
        [1, -1, 1, -1, 1],
        [1, 1, -1, 1, -1],
        [-1, 1, 1, -1, 1],
    ];
    SymMatrix::from_fn(5, |i, j| int(H[i][j]))
}

/// `count` matrices with a zero at `(t, t)` (0-based) and strictly
/// positive entries elsewhere.
pub fn sample_a_t(n: usize, t: usize, seed: u64, count: usize) -> Result<Vec<SymMatrix<Rational>>> {
    if n == 0 {
        return Err(Error::EmptyDimension);
    }
    if t >= n {
        return Err(Error::IndexOutOfRange { index: t + 1, n });
    }
    let mut rng = rng(seed);
    Ok((0..count)
        .map(|_| {
            SymMatrix::from_fn(n, |i, j| {
                if i == t && j == t {
                    int(0)
                } else {
                    positive_rational(&mut rng)
                }
            })
        })
        .collect())
}

/// `p^T p + r` with `p` a random `n x n` integer matrix and `r` a random
/// entrywise-nonnegative rational symmetric matrix.
///
/// This only reaches the PSD + nonnegative part of the copositive cone,
/// which is a strict subset for `n >= 5`.
pub fn random_copositive(n: usize, seed: u64) -> SymMatrix<Rational> {
    let mut rng = rng(seed);
    let p: Vec<Vec<Rational>> = (0..n)
        .map(|_| (0..n).map(|_| signed_factor(&mut rng)).collect())
        .collect();
    let r = SymMatrix::from_fn(n, |_, _| nonnegative_rational(&mut rng));
    let gram = SymMatrix::from_fn(n, |i, j| p.iter().fold(int(0), |acc, row| acc + &row[i] * &row[j]));
    gram.add(&r)
}

/// Draws a strictly positive integer `xi` and `n - 1` random integer rows
/// orthogonal to it, and returns `(q^T q, xi)`. The result is positive
/// semidefinite with `xi` in its kernel, hence on the copositive boundary.
/// For `n = 1` the matrix is zero.
pub fn random_boundary(n: usize, seed: u64) -> (SymMatrix<Rational>, Vec<Rational>) {
    let mut rng = rng(seed);
    let xi: Vec<Rational> = (0..n).map(|_| positive_factor(&mut rng)).collect();
    let xi_norm = dot(&xi, &xi);
    let rows: Vec<Vec<Rational>> = (1..n)
        .map(|_| {
            let r: Vec<Rational> = (0..n).map(|_| signed_factor(&mut rng)).collect();
            // (xi.xi) r - (r.xi) xi is orthogonal to xi without division
            let along = dot(&r, &xi);
            r.iter().zip(&xi).map(|(rk, xk)| &xi_norm * rk - &along * xk).collect()
        })
        .collect();
    let a = SymMatrix::from_fn(n, |i, j| rows.iter().fold(int(0), |acc, q| acc + &q[i] * &q[j]));
    (a, xi)
}

fn dot(x: &[Rational], y: &[Rational]) -> Rational {
    x.iter().zip(y).fold(int(0), |acc, (a, b)| acc + a * b)
}
