//! Row-major dense matrices and Gauss-Jordan elimination over a [`Scalar`].

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Dense<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Dense<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(S::zero(), |acc, (k, x)| acc + self.get(i, k).clone() * x.clone())
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let want = if i == j { S::one() } else { S::zero() };
                    self.get(i, j).approx_eq(&want)
                })
            })
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.choose_pivot(row, col) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = S::one() / self.get(row, col).clone();
            for j in col..self.cols {
                let v = self.get(row, j).clone() * inv.clone();
                self.set(row, j, v);
            }
            self.set(row, col, S::one());
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = self.get(r, j).clone() - factor.clone() * self.get(row, j).clone();
                    self.set(r, j, v);
                }
                self.set(r, col, S::zero());
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn choose_pivot(&self, from: usize, col: usize) -> Option<usize> {
        let candidates = (from..self.rows).filter(|&r| !self.get(r, col).is_negligible());
        if S::EXACT {
            return candidates.into_iter().next();
        }
        candidates.max_by(|&a, &b| {
            self.get(a, col)
                .pivot_weight()
                .total_cmp(&self.get(b, col).pivot_weight())
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Unique solution of `self * x = rhs`, or `None` if `self` is singular.
    pub fn solve(&self, rhs: &[S]) -> Option<Vec<S>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(self.rows, rhs.len());
        let n = self.rows;
        let mut aug = Self::from_fn(
            n,
            n + 1,
            |i, j| {
                if j < n {
                    self.get(i, j).clone()
                } else {
                    rhs[i].clone()
                }
            },
        );
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some((0..n).map(|i| aug.get(i, n).clone()).collect())
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// A nonzero vector `v` with `self * v = 0`, if one exists.
    pub fn null_vector(&self) -> Option<Vec<S>> {
        let mut r = self.clone();
        let pivots = r.rref();
        let free = (0..self.cols).find(|c| !pivots.contains(c))?;
        let mut v = vec![S::zero(); self.cols];
        v[free] = S::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r.get(row, free).clone();
        }
        Some(v)
    }
}
