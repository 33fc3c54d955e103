use std::fmt;

use crate::par;
use crate::scalars::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, s: &F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Mat { rows, cols, data }
    }

    /// Build from nested rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Mat { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn column_vector(v: Vec<F>) -> Self {
        let n = v.len();
        Mat { rows: n, cols: 1, data: v }
    }

    pub fn row_vector(v: Vec<F>) -> Self {
        let n = v.len();
        Mat { rows: 1, cols: n, data: v }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    /// `self[i][j] += v`.
    pub fn add_at(&mut self, i: usize, j: usize, v: &F) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add(v);
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.data.iter().enumerate().all(|(k, x)| {
                if k / self.cols == k % self.cols {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
    }

    /// Coordinates of the first entry where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.shape(), other.shape(), "comparing matrices of different shapes");
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.cols, k % self.cols))
    }

    pub fn trace(&self) -> F {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).fold(F::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat<G> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Mat<G>, E> {
        let data = self.data.iter().map(f).collect::<Result<_, _>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "adding matrices of different shapes");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "subtracting matrices of different shapes");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg)
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_one() {
            return self.clone();
        }
        self.map(|x| x.mul(s))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let (n, m, p) = (self.rows, self.cols, other.cols);
        let row = |i: usize| {
            let mut out = vec![F::zero(); p];
            for t in 0..m {
                let x = &self.data[i * m + t];
                if x.is_zero() {
                    continue;
                }
                let brow = &other.data[t * p..(t + 1) * p];
                for (o, y) in out.iter_mut().zip(brow) {
                    if !y.is_zero() {
                        *o = o.add(&x.mul(y));
                    }
                }
            }
            out
        };
        let rows = par::map_range(n, n * m * p, row);
        Mat { rows: n, cols: p, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// Kronecker product; the first factor is the major index.
    pub fn kron(&self, other: &Self) -> Self {
        let (ra, ca, rb, cb) = (self.rows, self.cols, other.rows, other.cols);
        if self.is_identity() && ra == 1 {
            return other.clone();
        }
        if other.is_identity() && rb == 1 {
            return self.clone();
        }
        let mut out = Mat::zeros(ra * rb, ca * cb);
        let width = ca * cb;
        for i in 0..ra {
            for j in 0..ca {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        let y = other.get(k, l);
                        if !y.is_zero() {
                            out.data[(i * rb + k) * width + j * cb + l] = x.mul(y);
                        }
                    }
                }
            }
        }
        out
    }

    /// `1_{left} ⊗ self ⊗ 1_{right}` without materializing the identities.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let (r, c) = self.shape();
        let rows = left * r * right;
        let cols = left * c * right;
        let mut out = Mat::zeros(rows, cols);
        for l in 0..left {
            for i in 0..r {
                for j in 0..c {
                    let x = self.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    for t in 0..right {
                        let row = (l * r + i) * right + t;
                        let col = (l * c + j) * right + t;
                        out.data[row * cols + col] = x.clone();
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Mat::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }
}

impl<F: Field> fmt::Debug for Mat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Left-fold Kronecker product.
pub fn kron_all<F: Field>(factors: &[&Mat<F>]) -> Mat<F> {
    let mut acc = Mat::identity(1);
    for m in factors {
        acc = acc.kron(m);
    }
    acc
}
