use std::ops::{Add, Mul, Sub};

use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scaled(&self, s: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn without_row(&self, r: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        self.select_rows(&keep)
    }

    pub fn push_row(&mut self, row: &[F]) -> Result<()> {
        if self.rows > 0 && row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} for {} columns",
                row.len(),
                self.cols
            )));
        }
        self.cols = row.len();
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// `Σ |m_ij|^2`, returned as a (real-valued) field element.
    pub fn frobenius_sqr(&self) -> F {
        self.data
            .iter()
            .fold(F::zero(), |acc, x| acc + x.clone() * x.conj())
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_mul(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.cols)
            .map(|j| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .fold(F::zero(), |acc, (i, x)| acc + x.clone() * self.get(i, j).clone())
            })
            .collect())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(F, F) -> F) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    /// Rank of a nonempty matrix in this scalar's mode.
    pub fn rank(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::InvalidInput("rank of an empty matrix".into()));
        }
        Ok(F::rank_of(self))
    }

    /// Rank that treats an empty matrix as rank zero.
    pub(crate) fn rank_or_zero(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            F::rank_of(self)
        }
    }

    fn magnitude(&self) -> f64 {
        self.data
            .iter()
            .map(|x| x.to_float().norm())
            .fold(0.0, f64::max)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let scale = if F::MODE == super::Mode::Float {
            self.magnitude()
        } else {
            1.0
        };
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let best = (r..m.rows)
                .map(|i| (i, m.get(i, c).pivot_key(scale)))
                .filter(|&(_, k)| k > 0.0)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((p, _)) = best else { continue };
            m.swap_rows(r, p);
            let inv = F::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan inverse of a square matrix.
    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of {}x{}",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (reduced, pivots) = aug.rref_square_part(n);
        if pivots != n {
            return Err(Error::Singular);
        }
        aug = reduced;
        Ok(Self::from_fn(n, n, |i, j| aug.get(i, j + n).clone()))
    }

    // Gauss-Jordan restricted to the first `n` columns.
    fn rref_square_part(&self, n: usize) -> (Self, usize) {
        let scale = if F::MODE == super::Mode::Float {
            self.magnitude()
        } else {
            1.0
        };
        let mut m = self.clone();
        for c in 0..n {
            let best = (c..m.rows)
                .map(|i| (i, m.get(i, c).pivot_key(scale)))
                .filter(|&(_, k)| k > 0.0)
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((p, _)) = best else { return (m, c) };
            m.swap_rows(c, p);
            let inv = F::one() / m.get(c, c).clone();
            for j in 0..m.cols {
                let v = m.get(c, j).clone() * inv.clone();
                m.set(c, j, v);
            }
            for i in 0..m.rows {
                if i == c || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        (m, n)
    }

    /// Basis of `{x : self · x = 0}`, one vector per column.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Self::from_fn(self.cols, free.len(), |i, k| {
            let f = free[k];
            if i == f {
                F::one()
            } else if let Some(pr) = pivots.iter().position(|&p| p == i) {
                -r.get(pr, f).clone()
            } else {
                F::zero()
            }
        })
    }
}

impl<F: Scalar> Mul for &Mat<F> {
    type Output = Mat<F>;

    fn mul(self, rhs: &Mat<F>) -> Mat<F> {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl<F: Scalar> Add for &Mat<F> {
    type Output = Mat<F>;

    fn add(self, rhs: &Mat<F>) -> Mat<F> {
        self.zip_with(rhs, |a, b| a + b).expect("matrix dimensions agree")
    }
}

impl<F: Scalar> Sub for &Mat<F> {
    type Output = Mat<F>;

    fn sub(self, rhs: &Mat<F>) -> Mat<F> {
        self.zip_with(rhs, |a, b| a - b).expect("matrix dimensions agree")
    }
}
