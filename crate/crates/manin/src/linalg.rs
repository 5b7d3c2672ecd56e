//! Dense exact linear algebra over the rationals: Gaussian elimination in
//! reduced row-echelon form, kernels, solving, and canonical subspaces.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Zero-row matrix with a definite column count (empty bases need one).
    pub fn empty(cols: usize) -> Self {
        Matrix {
            rows: 0,
            cols,
            data: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if self.cols != v.len() {
            return Err(Error::ShapeMismatch(self.rows, self.cols, v.len(), 1));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row-echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(pivot_row) = (r..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pivot_row);
            let inv = m.get(r, col).clone();
            for j in 0..m.cols {
                let v = m.get(r, j) / &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
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

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : self * x = 0}, one kernel vector per row.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(pi, f).clone();
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Matrix::empty(self.cols)
        } else {
            Matrix::from_rows(rows)
        }
    }

    /// One particular solution of self * x = rhs, if consistent.
    pub fn solve(&self, rhs: &[Rational]) -> Result<Vec<Rational>> {
        if rhs.len() != self.rows {
            return Err(Error::ShapeMismatch(self.rows, self.cols, rhs.len(), 1));
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(pi, self.cols).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, self.cols, self.rows,
            ));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// exp of a nilpotent matrix (exact: the series terminates).
    pub fn exp_nilpotent(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                self.rows, self.cols, self.cols, self.rows,
            ));
        }
        let n = self.rows;
        let mut sum = Matrix::identity(n);
        let mut power = Matrix::identity(n);
        let mut factorial = Rational::one();
        for k in 1..=n {
            power = power.mul(self)?;
            if power.is_zero() {
                return Ok(sum);
            }
            factorial *= crate::scalar::from_int(k as i64);
            sum = sum.add(&power.scale(&(Rational::one() / &factorial)))?;
        }
        Err(Error::NotNilpotent)
    }
}

/// A linear subspace of Q^n in canonical form: the stored basis matrix is the
/// reduced row-echelon form of any spanning set, so two subspaces are equal
/// iff their `Subspace` values are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ambient), "bad row length");
        if rows.is_empty() {
            return Subspace {
                ambient,
                basis: Matrix::empty(ambient),
            };
        }
        Subspace::from_matrix(ambient, &Matrix::from_rows(rows))
    }

    pub fn from_matrix(ambient: usize, m: &Matrix) -> Self {
        assert_eq!(m.cols(), ambient);
        let (r, pivots) = m.rref();
        let rows = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = if pivots.is_empty() {
            Matrix::empty(ambient)
        } else {
            Matrix::from_rows(rows)
        };
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::empty(ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rem = v.to_vec();
        for i in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&j| !self.basis.get(i, j).is_zero())
                .expect("canonical basis has no zero rows");
            if rem[pivot].is_zero() {
                continue;
            }
            let factor = rem[pivot].clone();
            for j in 0..self.ambient {
                rem[j] = &rem[j] - &factor * self.basis.get(i, j);
            }
        }
        rem.iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(self.ambient, other.ambient));
        }
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Subspace::from_matrix(self.ambient, &stacked))
    }

    /// Annihilator in the dual coordinates: {xi : xi(v) = 0 for all v here}.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_matrix(self.ambient, &self.basis.kernel())
    }

    /// Computed as the annihilator of the sum of annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(self.ambient, other.ambient));
        }
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Coordinates for a quotient Q^n / h: a projection matrix with kernel
/// exactly h and a section with projection ∘ section = identity. The
/// complement is spanned by the standard basis vectors at the non-pivot
/// columns of h's canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    projection: Matrix, // m x n, m = n - dim h
    section: Matrix,    // n x m
}

impl QuotientMap {
    pub fn new(h: &Subspace) -> Self {
        let n = h.ambient();
        let d = h.dim();
        let m = n - d;
        let pivots: Vec<usize> = (0..d)
            .map(|i| {
                (0..n)
                    .find(|&j| !h.basis().get(i, j).is_zero())
                    .expect("canonical basis row is nonzero")
            })
            .collect();
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        // rows of the completed basis: h-basis first, then unit vectors at
        // the free columns; coordinates of v are (B^T)^{-1} v
        let mut b = Matrix::zero(n, n);
        for i in 0..d {
            for j in 0..n {
                b.set(i, j, h.basis().get(i, j).clone());
            }
        }
        for (i, &f) in free.iter().enumerate() {
            b.set(d + i, f, Rational::one());
        }
        let coords = b
            .transpose()
            .inverse()
            .expect("completed basis is invertible");
        let mut projection = Matrix::zero(m, n);
        for i in 0..m {
            for j in 0..n {
                projection.set(i, j, coords.get(d + i, j).clone());
            }
        }
        let mut section = Matrix::zero(n, m);
        for (i, &f) in free.iter().enumerate() {
            section.set(f, i, Rational::one());
        }
        QuotientMap {
            projection,
            section,
        }
    }

    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    pub fn section(&self) -> &Matrix {
        &self.section
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, w: &[Rational]) -> Result<Vec<Rational>> {
        self.section.mul_vec(w)
    }
}
