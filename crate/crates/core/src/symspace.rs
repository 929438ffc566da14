//! The space of real symmetric `n x n` matrices, its canonical basis, and
//! linear operators on it.
//!
//! Coordinates follow a fixed basis order: the diagonal units `e_tt` for
//! `t = 1..n`, then the symmetric units `e_ij + e_ji` for `i < j` in
//! lexicographic order. The coordinate of `e_ij + e_ji` is the raw entry
//! `a_ij` (no `sqrt(2)` weighting), which keeps congruence operators rational.
//!
//! All indices in this API are 0-based; `Display` impls print 1-based.

use std::fmt;

use crate::dense::Dense;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Number of basis elements for dimension `n`.
pub const fn basis_len(n: usize) -> usize {
    n * (n + 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymBasisIndex {
    Diag(usize),
    /// Always `i < j`.
    OffDiag(usize, usize),
}

impl SymBasisIndex {
    /// Position of this element in the canonical order.
    pub fn position(self, n: usize) -> usize {
        match self {
            Self::Diag(t) => t,
            // pairs (0, *) come first, n - 1 of them, then (1, *) ...
            Self::OffDiag(i, j) => n + i * n - i * (i + 1) / 2 + (j - i - 1),
        }
    }

    /// Enumerates the basis of dimension `n` in canonical order.
    pub fn all(n: usize) -> impl Iterator<Item = SymBasisIndex> {
        let diag = (0..n).map(SymBasisIndex::Diag);
        let off = (0..n).flat_map(move |i| (i + 1..n).map(move |j| SymBasisIndex::OffDiag(i, j)));
        diag.chain(off)
    }

    pub fn from_position(n: usize, k: usize) -> Option<Self> {
        Self::all(n).nth(k)
    }

    pub fn element<S: Scalar>(self, n: usize) -> SymMatrix<S> {
        let mut m = SymMatrix::zeros(n);
        match self {
            Self::Diag(t) => m.set(t, t, S::one()),
            Self::OffDiag(i, j) => m.set(i, j, S::one()),
        }
        m
    }
}

impl fmt::Display for SymBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Diag(t) => write!(f, "e{0}{0}", t + 1),
            Self::OffDiag(i, j) => write!(f, "e{}{}+e{}{}", i + 1, j + 1, j + 1, i + 1),
        }
    }
}

/// A symmetric matrix. Symmetry is enforced by every constructor.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<S> {
    n: usize,
    entries: Vec<S>,
}

impl<S: Scalar> SymMatrix<S> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            entries: vec![S::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Builds a matrix from its upper triangle; `f` is called with `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Validates shape and symmetry (exact, or within tolerance for floats).
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row: row + 1,
                    len: r.len(),
                    n,
                });
            }
            entries.extend(r);
        }
        Self::from_row_major(n, entries)
    }

    pub fn from_row_major(n: usize, entries: Vec<S>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        for i in 0..n {
            for j in i + 1..n {
                if !entries[i * n + j].approx_eq(&entries[j * n + i]) {
                    return Err(Error::Asymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        // Float inputs may be asymmetric within tolerance; mirror the upper triangle.
        let mut m = Self { n, entries };
        for i in 0..n {
            for j in i + 1..n {
                let v = m.entries[i * n + j].clone();
                m.entries[j * n + i] = v;
            }
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn row_major(&self) -> &[S] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.n).map(<[S]>::to_vec).collect()
    }

    pub fn to_dense(&self) -> Dense<S> {
        Dense {
            rows: self.n,
            cols: self.n,
            data: self.entries.clone(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymMatrix<T> {
        SymMatrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|v| v.clone() * k.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Self { n: self.n, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n);
        self.entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// `x^T a x`.
    pub fn quadratic_form(&self, x: &[S]) -> S {
        self.mul_vec(x)
            .into_iter()
            .zip(x)
            .fold(S::zero(), |acc, (ax, xi)| acc + ax * xi.clone())
    }

    /// Principal submatrix on the given (sorted) indices.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix<S> {
        SymMatrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// `p^T a p` for the permutation matrix with `p[perm[i], i] = 1`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        SymMatrix::from_fn(self.n, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// `s^T a s` for an arbitrary square `s`.
    pub fn congruence(&self, s: &Dense<S>) -> Self {
        assert_eq!(s.rows, self.n);
        assert_eq!(s.cols, self.n);
        let prod = s.transpose().mul(&self.to_dense()).mul(s);
        SymMatrix::from_fn(self.n, |i, j| prod.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_negligible)
    }
}

impl<S: Scalar> fmt::Display for SymMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Coordinates of `a` in the canonical basis.
pub fn vectorize<S: Scalar>(a: &SymMatrix<S>) -> Vec<S> {
    SymBasisIndex::all(a.n())
        .map(|b| match b {
            SymBasisIndex::Diag(t) => a.get(t, t).clone(),
            SymBasisIndex::OffDiag(i, j) => a.get(i, j).clone(),
        })
        .collect()
}

pub fn devectorize<S: Scalar>(n: usize, coords: &[S]) -> Result<SymMatrix<S>> {
    if coords.len() != basis_len(n) {
        return Err(Error::DimensionMismatch {
            expected: basis_len(n),
            found: coords.len(),
        });
    }
    let mut m = SymMatrix::zeros(n);
    for (b, v) in SymBasisIndex::all(n).zip(coords) {
        match b {
            SymBasisIndex::Diag(t) => m.set(t, t, v.clone()),
            SymBasisIndex::OffDiag(i, j) => m.set(i, j, v.clone()),
        }
    }
    Ok(m)
}

/// A linear operator on symmetric `n x n` matrices. Column `k` of the
/// coefficient matrix holds the coordinates of the image of basis element `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinOp<S> {
    n: usize,
    coeffs: Dense<S>,
}

pub type ExactOp = LinOp<Rational>;

impl<S: Scalar> LinOp<S> {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            coeffs: Dense::identity(basis_len(n)),
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Dense<S>) -> Result<Self> {
        let big_n = basis_len(n);
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if coeffs.rows != big_n || coeffs.cols != big_n {
            return Err(Error::DimensionMismatch {
                expected: big_n * big_n,
                found: coeffs.rows * coeffs.cols,
            });
        }
        Ok(Self { n, coeffs })
    }

    /// Operator sending the `k`-th basis element to `images[k]`.
    pub fn from_basis_images(n: usize, images: &[SymMatrix<S>]) -> Result<Self> {
        let big_n = basis_len(n);
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if images.len() != big_n {
            return Err(Error::WrongImageCount {
                expected: big_n,
                found: images.len(),
            });
        }
        let mut coeffs = Dense::zeros(big_n, big_n);
        for (k, img) in images.iter().enumerate() {
            if img.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: img.n(),
                });
            }
            for (row, v) in vectorize(img).into_iter().enumerate() {
                coeffs.set(row, k, v);
            }
        }
        Ok(Self { n, coeffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &Dense<S> {
        &self.coeffs
    }

    pub fn basis_image(&self, b: SymBasisIndex) -> SymMatrix<S> {
        let k = b.position(self.n);
        let col: Vec<S> = (0..self.coeffs.rows).map(|r| self.coeffs.get(r, k).clone()).collect();
        devectorize(self.n, &col).expect("column length matches basis")
    }

    pub fn apply(&self, a: &SymMatrix<S>) -> Result<SymMatrix<S>> {
        if a.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        devectorize(self.n, &self.coeffs.mul_vec(&vectorize(a)))
    }

    pub fn invert(&self) -> Result<Self> {
        let coeffs = self.coeffs.inverse().ok_or(Error::Singular)?;
        Ok(Self { n: self.n, coeffs })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.n != inner.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: inner.n,
            });
        }
        Ok(Self {
            n: self.n,
            coeffs: self.coeffs.mul(&inner.coeffs),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.is_identity()
    }

    pub fn is_invertible(&self) -> bool {
        self.coeffs.rank() == self.coeffs.rows
    }

    /// A nonzero matrix in the kernel, when the operator is singular.
    pub fn kernel_element(&self) -> Option<SymMatrix<S>> {
        let v = self.coeffs.null_vector()?;
        devectorize(self.n, &v).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn m(rows: &[&[i64]]) -> SymMatrix<Rational> {
        SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn e(n: usize, i: usize, j: usize) -> SymMatrix<Rational> {
        if i == j {
            SymBasisIndex::Diag(i).element(n)
        } else {
            SymBasisIndex::OffDiag(i.min(j), i.max(j)).element(n)
        }
    }

    fn swap_op() -> ExactOp {
        LinOp::from_basis_images(2, &[e(2, 1, 1), e(2, 0, 0), e(2, 0, 1)]).unwrap()
    }

    fn scale_e11(k: Rational) -> ExactOp {
        LinOp::from_basis_images(2, &[e(2, 0, 0).scale(&k), e(2, 1, 1), e(2, 0, 1)]).unwrap()
    }

    #[test]
    fn vectorize_examples() {
        assert_eq!(vectorize(&m(&[&[1, 2], &[2, 3]])), vec![int(1), int(3), int(2)]);
        assert_eq!(vectorize(&e(2, 0, 0)), vec![int(1), int(0), int(0)]);
        let v = vectorize(&e(3, 0, 2));
        assert_eq!(v, [0, 0, 0, 0, 1, 0].map(int).to_vec());
    }

    #[test]
    fn basis_positions_match_enumeration() {
        for n in 1..=7 {
            for (k, b) in SymBasisIndex::all(n).enumerate() {
                assert_eq!(b.position(n), k);
                assert_eq!(SymBasisIndex::from_position(n, k), Some(b));
            }
            assert_eq!(SymBasisIndex::all(n).count(), basis_len(n));
        }
    }

    #[test]
    fn asymmetric_rows_rejected() {
        let rows = vec![vec![int(1), int(2)], vec![int(3), int(1)]];
        assert_eq!(SymMatrix::from_rows(rows), Err(Error::Asymmetric { i: 1, j: 2 }));
        assert_eq!(SymMatrix::<Rational>::from_rows(vec![]), Err(Error::EmptyDimension));
        let ragged = vec![vec![int(1), int(2)], vec![int(2)]];
        assert!(matches!(SymMatrix::from_rows(ragged), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn float_symmetry_within_tolerance() {
        let rows = vec![vec![1.0, 2.0], vec![2.0 + 1e-12, 1.0]];
        assert!(SymMatrix::from_rows(rows).is_ok());
        let rows = vec![vec![1.0, 2.0], vec![2.1, 1.0]];
        assert!(SymMatrix::from_rows(rows).is_err());
    }

    #[test]
    fn from_basis_images_examples() {
        let two = LinOp::from_basis_images(1, &[m(&[&[2]])]).unwrap();
        assert_eq!(two.apply(&m(&[&[3]])).unwrap(), m(&[&[6]]));

        assert_eq!(
            swap_op().apply(&m(&[&[1, 2], &[2, 3]])).unwrap(),
            m(&[&[3, 2], &[2, 1]])
        );

        let singular = LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 0, 0), e(2, 0, 1)]).unwrap();
        assert!(!singular.is_invertible());
        assert_eq!(singular.invert(), Err(Error::Singular));
        let k = singular.kernel_element().unwrap();
        assert!(!k.is_zero());
        assert!(singular.apply(&k).unwrap().is_zero());
    }

    #[test]
    fn from_basis_images_errors() {
        assert_eq!(
            LinOp::from_basis_images(2, &[e(2, 0, 0)]),
            Err(Error::WrongImageCount { expected: 3, found: 1 })
        );
        assert_eq!(
            LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 1, 1), e(3, 0, 1)]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn apply_examples() {
        let a = m(&[&[5, -1, 2], &[-1, 0, 7], &[2, 7, 3]]);
        assert_eq!(LinOp::identity(3).apply(&a).unwrap(), a);
        assert_eq!(scale_e11(int(4)).apply(&e(2, 0, 0)).unwrap(), m(&[&[4, 0], &[0, 0]]));
        assert!(LinOp::identity(2).apply(&a).is_err());
    }

    #[test]
    fn invert_examples() {
        assert!(LinOp::<Rational>::identity(4).invert().unwrap().is_identity());
        // diagonal congruence with c = (1, 2): e11 -> e11, e22 -> 4 e22, off -> 2 off
        let d =
            LinOp::from_basis_images(2, &[e(2, 0, 0), e(2, 1, 1).scale(&int(4)), e(2, 0, 1).scale(&int(2))]).unwrap();
        let expected = LinOp::from_basis_images(
            2,
            &[
                e(2, 0, 0),
                e(2, 1, 1).scale(&ratio(1, 4)),
                e(2, 0, 1).scale(&ratio(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(d.invert().unwrap(), expected);
    }

    #[test]
    fn compose_examples() {
        let g = swap_op();
        assert_eq!(LinOp::identity(2).compose(&g).unwrap(), g);
        assert!(swap_op().compose(&swap_op()).unwrap().is_identity());
        assert!(scale_e11(int(4))
            .compose(&scale_e11(ratio(1, 4)))
            .unwrap()
            .is_identity());
        assert!(LinOp::<Rational>::identity(2).compose(&LinOp::identity(3)).is_err());
    }

    #[test]
    fn devectorize_wrong_length() {
        assert!(devectorize::<Rational>(2, &[int(1)]).is_err());
    }
}
