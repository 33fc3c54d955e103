use super::{LinalgError, Mat};
use crate::par;
use crate::scalars::Field;

/// A normalized sparse row: entry `idx[0]` is the pivot and equals one.
#[derive(Clone, Debug)]
struct PivotRow<F> {
    idx: Vec<usize>,
    val: Vec<F>,
}

impl<F: Field> PivotRow<F> {
    fn pivot(&self) -> usize {
        self.idx[0]
    }

    fn from_dense(v: &[F]) -> Option<Self> {
        let p = v.iter().position(|x| !x.is_zero())?;
        let s = v[p].inv().expect("nonzero pivot");
        let mut idx = Vec::new();
        let mut val = Vec::new();
        for (j, x) in v.iter().enumerate().skip(p) {
            if !x.is_zero() {
                idx.push(j);
                val.push(if j == p { F::one() } else { x.mul(&s) });
            }
        }
        Some(PivotRow { idx, val })
    }

    /// `v -= v[pivot] · self`.
    fn eliminate(&self, v: &mut [F]) {
        let c = &v[self.pivot()];
        if c.is_zero() {
            return;
        }
        let c = c.clone();
        for (j, x) in self.idx.iter().zip(&self.val) {
            v[*j] = v[*j].sub(&c.mul(x));
        }
    }
}

/// Incrementally built semi-echelon basis of a row space.
///
/// Every stored row has a pivot that is zero in all rows stored after it, so
/// reducing a vector against the rows in insertion order leaves it zero on
/// every pivot column. The residual is therefore a canonical representative
/// of the vector modulo the span.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    rows: Vec<PivotRow<F>>,
    is_pivot: Vec<bool>,
}

/// Rows reduced per parallel batch in [`Echelon::extend`].
const BATCH: usize = 64;

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), is_pivot: vec![false; ncols] }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(PivotRow::pivot).collect()
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&j| !self.is_pivot[j]).collect()
    }

    fn reduce_from(&self, v: &mut [F], start: usize) {
        for r in &self.rows[start..] {
            r.eliminate(v);
        }
    }

    /// Residual of `v` modulo the span.
    pub fn reduce(&self, mut v: Vec<F>) -> Vec<F> {
        assert_eq!(v.len(), self.ncols, "vector length");
        self.reduce_from(&mut v, 0);
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v.to_vec()).iter().all(F::is_zero)
    }

    /// Insert an already-reduced residual. Returns whether the rank grew.
    fn push_residual(&mut self, v: &[F]) -> bool {
        match PivotRow::from_dense(v) {
            Some(r) => {
                self.is_pivot[r.pivot()] = true;
                self.rows.push(r);
                true
            }
            None => false,
        }
    }

    /// Add `v` to the span. Returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        if self.is_full() {
            return false;
        }
        let v = self.reduce(v);
        self.push_residual(&v)
    }

    /// Add many vectors. Batches are reduced against the current basis in
    /// parallel and then inserted in order, which yields exactly the basis
    /// sequential insertion would.
    pub fn extend(&mut self, vs: impl IntoIterator<Item = Vec<F>>) {
        let mut it = vs.into_iter().peekable();
        while it.peek().is_some() && !self.is_full() {
            let batch: Vec<Vec<F>> = it.by_ref().take(BATCH).collect();
            let start = self.rows.len();
            let work = batch.len() * self.ncols * (start + 1);
            let mut batch = batch;
            let this = &*self;
            par::for_each_mut(&mut batch, work, |v| this.reduce_from(v, 0));
            for mut v in batch {
                self.reduce_from(&mut v, start);
                self.push_residual(&v);
                if self.is_full() {
                    break;
                }
            }
        }
    }

    /// Fully reduced row echelon form of the span (pivots ascending).
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].pivot());
        let mut dense: Vec<Vec<F>> = order
            .iter()
            .map(|&i| {
                let mut v = vec![F::zero(); self.ncols];
                let r = &self.rows[i];
                for (j, x) in r.idx.iter().zip(&r.val) {
                    v[*j] = x.clone();
                }
                v
            })
            .collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.rows[i].pivot()).collect();
        // back-substitute from the last pivot upward
        for k in (0..dense.len()).rev() {
            let (head, tail) = dense.split_at_mut(k);
            let pr = &tail[0];
            let p = pivots[k];
            let work = head.len() * self.ncols;
            par::for_each_mut(head, work, |row| {
                let c = row[p].clone();
                if !c.is_zero() {
                    for (x, y) in row.iter_mut().zip(pr.iter()) {
                        if !y.is_zero() {
                            *x = x.sub(&c.mul(y));
                        }
                    }
                }
            });
        }
        let n = dense.len();
        let m = Mat::from_vec(n, self.ncols, dense.into_iter().flatten().collect());
        (m, pivots)
    }

    /// The stored basis as dense rows, in insertion order.
    pub fn basis(&self) -> Mat<F> {
        let mut m = Mat::zeros(self.rows.len(), self.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.idx.iter().zip(&r.val) {
                m.set(i, *j, x.clone());
            }
        }
        m
    }
}

/// Rank of a matrix.
pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut e = Echelon::new(m.cols());
    e.extend(m.row_vecs());
    e.rank()
}

/// Rank of the span of a list of vectors of equal length `ncols`.
pub fn row_space_rank<F: Field>(ncols: usize, rows: impl IntoIterator<Item = Vec<F>>) -> usize {
    let mut e = Echelon::new(ncols);
    e.extend(rows);
    e.rank()
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(m: &Mat<F>) -> (Mat<F>, Vec<usize>) {
    let mut e = Echelon::new(m.cols());
    e.extend(m.row_vecs());
    e.rref()
}

/// Columns spanning the null space `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(m: &Mat<F>) -> Mat<F> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut k = Mat::zeros(n, free.len());
    for (c, &f) in free.iter().enumerate() {
        k.set(f, c, F::one());
        for (i, &p) in pivots.iter().enumerate() {
            let x = r.get(i, f);
            if !x.is_zero() {
                k.set(p, c, x.neg());
            }
        }
    }
    k
}

/// Some solution `x` of `a x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Option<Mat<F>> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let aug = a.hstack(b);
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&p| p >= a.cols()) {
        return None;
    }
    let mut x = Mat::zeros(a.cols(), b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(i, a.cols() + j).clone());
        }
    }
    Some(x)
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(m: &Mat<F>) -> Result<Mat<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    solve(m, &Mat::identity(n)).ok_or(LinalgError::Singular)
}

/// Whether every column of `sub` lies in the column space of `sup`.
pub fn column_space_contains<F: Field>(sup: &Mat<F>, sub: &Mat<F>) -> bool {
    assert_eq!(sup.rows(), sub.rows(), "column spaces of different ambient dimension");
    let mut e = Echelon::new(sup.rows());
    e.extend(sup.column_vecs());
    sub.column_vecs().into_iter().all(|v| e.contains(&v))
}
