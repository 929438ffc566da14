//! Independent reference checks for the simplex minimum: a lattice grid
//! search and random simplex points. Neither touches the bordered systems.

#![allow(dead_code)]

use copos::{Rational, SymMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// `x^T a x`, computed entry by entry.
pub fn form(a: &SymMatrix<Rational>, x: &[Rational]) -> Rational {
    let n = a.n();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            acc += a.get(i, j) * &x[i] * &x[j];
        }
    }
    acc
}

/// Random symmetric matrix with entries `p/q`, `|p| <= num`, `1 <= q <= den`.
pub fn random_symmetric(rng: &mut impl Rng, n: usize, num: i64, den: i64) -> SymMatrix<Rational> {
    SymMatrix::from_fn(n, |_, _| {
        Rational::new(
            BigInt::from(rng.gen_range(-num..=num)),
            BigInt::from(rng.gen_range(1..=den)),
        )
    })
}

/// `a` scaled to an integer matrix: returns `(b, l)` with `b = l a`.
pub fn integer_scaled(a: &SymMatrix<Rational>) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = a.n();
    let l = a.row_major().iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let b = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (a.get(i, j) * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    (b, l)
}

/// Minimum of the form over the lattice points `k / d` of the simplex.
/// Returns the value and one minimizing point.
pub fn grid_min(a: &SymMatrix<Rational>, d: u32) -> (Rational, Vec<Rational>) {
    let n = a.n();
    let (b, l) = integer_scaled(a);
    let mut best: Option<(BigInt, Vec<u32>)> = None;
    let mut k = vec![0u32; n];
    compositions(n, d, &mut k, 0, &mut |k| {
        let mut v = BigInt::zero();
        for i in 0..n {
            if k[i] == 0 {
                continue;
            }
            for j in 0..n {
                v += &b[i][j] * k[i] * k[j];
            }
        }
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, k.to_vec()));
        }
    });
    let (v, k) = best.expect("nonempty simplex");
    let scale = Rational::new(BigInt::one(), l * BigInt::from(d) * BigInt::from(d));
    let point = k
        .iter()
        .map(|&ki| Rational::new(BigInt::from(ki), BigInt::from(d)))
        .collect();
    (Rational::from_integer(v) * scale, point)
}

fn compositions(n: usize, left: u32, k: &mut [u32], at: usize, f: &mut impl FnMut(&[u32])) {
    if at + 1 == n {
        k[at] = left;
        f(k);
        return;
    }
    for v in 0..=left {
        k[at] = v;
        compositions(n, left - v, k, at + 1, f);
    }
}

/// Upper bound on `grid_min - true_min`: every simplex point is within
/// `n / d` (in the 1-norm) of a lattice point, and the form is
/// `2 max|a_ij|`-Lipschitz in that norm.
pub fn grid_gap(a: &SymMatrix<Rational>, d: u32) -> Rational {
    let max = a.row_major().iter().map(|v| v.abs()).max().unwrap_or_default();
    max * Rational::from_integer(BigInt::from(2 * a.n() as u64)) / Rational::from_integer(BigInt::from(d))
}

/// Number of random simplex points at which the form drops below `value`.
/// Points are integer weight vectors; the comparison is exact, with an
/// f64 filter in front of it.
pub fn random_point_violations(a: &SymMatrix<Rational>, value: &Rational, points: usize, rng: &mut impl Rng) -> usize {
    let n = a.n();
    let (b, l) = integer_scaled(a);
    let small: Option<Vec<Vec<i128>>> = b.iter().map(|row| row.iter().map(|v| v.to_i128()).collect()).collect();
    let small = small.expect("entries fit in i128");
    let (p, q) = (value.numer().clone(), value.denom().clone());
    let target = value.to_f64().unwrap();
    let lf = l.to_f64().unwrap();
    let mut violations = 0;
    let mut k = vec![0i128; n];
    for _ in 0..points {
        let mut s = 0i128;
        for ki in k.iter_mut() {
            *ki = rng.gen_range(0..1000);
            s += *ki;
        }
        if s == 0 {
            continue;
        }
        let mut v = 0i128;
        for i in 0..n {
            for j in 0..n {
                v += small[i][j] * k[i] * k[j];
            }
        }
        let approx = v as f64 / (lf * (s * s) as f64);
        if approx - target > 1e-6 * (1.0 + target.abs()) {
            continue;
        }
        // v / (l s^2) >= p / q  <=>  q v >= p l s^2
        let lhs = &q * BigInt::from(v);
        let rhs = &p * &l * BigInt::from(s * s);
        if lhs < rhs {
            violations += 1;
        }
    }
    violations
}

pub fn on_simplex(x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative()) && x.iter().sum::<Rational>() == Rational::one()
}
