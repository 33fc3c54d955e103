//! Two-colour Hecke calculus on `V^{⊗k} ⊗ W^{⊗l}` and the projector `P`
//! onto the `(k,l)` component.
//!
//! `R_i` acts on the `V` factors numbered from the right: `R_1` is the pair
//! adjacent to the `W` block. `R*_i` acts on the `W` factors from the left,
//! and `X = 1 ⊗ cD ⊗ 1` sits at the interface.

mod projector;
mod relations;

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::bqd::{Bqd, K};
use crate::linalg::Mat;
use crate::scalars::{derived_constants, BaseField, Field, Mode, ScalarError};

pub use projector::{recurrence_alphas, solve_p, verify_p_properties, ProjectorResult};
pub use relations::{symmetrizer_nonvanishing_demo, verify_contraction_identities, verify_hecke_relations};

/// Default bound on `k+l` in numeric mode.
pub const NUMERIC_BOUND: usize = 5;
/// Default bound on `k+l` in symbolic mode.
pub const SYMBOLIC_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeckeError {
    #[error("degree ({k},{l}) exceeds the bound k+l <= {bound}")]
    DegreeBoundExceeded { k: usize, l: usize, bound: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("no linear combination of the candidates annihilates X")]
    NoSolution,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Which tensor block a symmetrizer acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    V,
    W,
}

fn pw(n: usize) -> usize {
    3usize.pow(n as u32)
}

/// The operators on `V^{⊗k} ⊗ W^{⊗l}` for one BQD.
#[derive(Clone, Debug)]
pub struct HeckeContext<B: BaseField> {
    bqd: Bqd<B>,
    k: usize,
    l: usize,
    q: K<B>,
    qi: K<B>,
    kappa: K<B>,
    r: Vec<Mat<K<B>>>,
    rs: Vec<Mat<K<B>>>,
    x: Option<Mat<K<B>>>,
}

/// Build every operator, with the default bound for the scalar mode.
pub fn build_context<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> Result<HeckeContext<B>, HeckeError> {
    let bound = match B::MODE {
        Mode::Numeric => NUMERIC_BOUND,
        Mode::Symbolic => SYMBOLIC_BOUND,
    };
    build_context_bounded(bqd, k, l, bound)
}

pub fn build_context_bounded<B: BaseField>(
    bqd: &Bqd<B>,
    k: usize,
    l: usize,
    bound: usize,
) -> Result<HeckeContext<B>, HeckeError> {
    if k + l > bound {
        return Err(HeckeError::DegreeBoundExceeded { k, l, bound });
    }
    let q = bqd.q().clone();
    let qi = q.inv()?;
    let (kappa, _) = derived_constants(&q)?;
    let qq = q.add(&qi);
    let r_local = Mat::scalar(9, &q).sub(&bqd.a().mul(bqd.A()).scale(&qq));
    let rs_local = Mat::scalar(9, &qi).sub(&bqd.b().mul(bqd.B()).scale(&qq));
    let r = (1..k).map(|i| r_local.embed(pw(k - i - 1), pw(i - 1 + l))).collect();
    let rs = (1..l).map(|i| rs_local.embed(pw(k + i - 1), pw(l - i - 1))).collect();
    let x = (k >= 1 && l >= 1).then(|| bqd.c().mul(bqd.D()).embed(pw(k - 1), pw(l - 1)));
    Ok(HeckeContext { bqd: bqd.clone(), k, l, q, qi, kappa, r, rs, x })
}

impl<B: BaseField> HeckeContext<B> {
    pub fn bqd(&self) -> &Bqd<B> {
        &self.bqd
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// `3^{k+l}`.
    pub fn dim(&self) -> usize {
        pw(self.k + self.l)
    }

    pub fn q(&self) -> &K<B> {
        &self.q
    }

    pub fn kappa(&self) -> &K<B> {
        &self.kappa
    }

    pub fn identity(&self) -> Mat<K<B>> {
        Mat::identity(self.dim())
    }

    /// `R_i` for `1 ≤ i ≤ k−1`.
    pub fn r(&self, i: usize) -> &Mat<K<B>> {
        &self.r[i - 1]
    }

    /// `R*_i` for `1 ≤ i ≤ l−1`.
    pub fn rstar(&self, i: usize) -> &Mat<K<B>> {
        &self.rs[i - 1]
    }

    /// `R_i⁻¹ = R_i − (q − q⁻¹)`.
    pub fn r_inv(&self, i: usize) -> Mat<K<B>> {
        self.r(i).sub(&Mat::scalar(self.dim(), &self.q.sub(&self.qi)))
    }

    /// `R*_i⁻¹ = R*_i − (q⁻¹ − q)`.
    pub fn rstar_inv(&self, i: usize) -> Mat<K<B>> {
        self.rstar(i).sub(&Mat::scalar(self.dim(), &self.qi.sub(&self.q)))
    }

    /// `X`, present when `k, l ≥ 1`.
    pub fn x(&self) -> Option<&Mat<K<B>>> {
        self.x.as_ref()
    }

    fn gens(&self, side: Side) -> (&[Mat<K<B>>], &K<B>) {
        match side {
            Side::V => (&self.r, &self.q),
            Side::W => (&self.rs, &self.qi),
        }
    }

    /// `S_k` (or `S*_l`) by the bubble-sort factorization.
    pub fn symmetrizer(&self, side: Side) -> Mat<K<B>> {
        let (g, t) = self.gens(side);
        murphy(g, t, self.dim())
    }

    /// `Σ_w t^{ℓ(w)} R_w` over the symmetric group, for cross-checking.
    pub fn symmetrizer_direct(&self, side: Side) -> Mat<K<B>> {
        let (g, t) = self.gens(side);
        direct_sum(g, t, self.dim())
    }

    /// `S*_{l−1}` on the `l−1` rightmost factors.
    pub fn s_tilde_star(&self) -> Mat<K<B>> {
        let g = if self.rs.is_empty() { &[][..] } else { &self.rs[1..] };
        murphy(g, &self.qi, self.dim())
    }

    fn check_t(&self, a: usize, b: usize) -> Result<(), HeckeError> {
        if self.x.is_none() || a >= self.l || b >= self.k {
            return Err(HeckeError::IndexOutOfRange(format!(
                "T^{a}_{b} needs a < l = {} and b < k = {}",
                self.l, self.k
            )));
        }
        Ok(())
    }

    /// `T^a_b = R*_a ⋯ R*_1 X R_1 ⋯ R_b`.
    pub fn t(&self, a: usize, b: usize) -> Result<Mat<K<B>>, HeckeError> {
        self.check_t(a, b)?;
        let mut m = self.x.clone().expect("checked");
        for i in 1..=a {
            m = self.rstar(i).mul(&m);
        }
        for i in 1..=b {
            m = m.mul(self.r(i));
        }
        Ok(m)
    }

    /// Every `T^a_b`, indexed `[a][b]`.
    pub fn t_table(&self) -> Vec<Vec<Mat<K<B>>>> {
        if self.x.is_none() {
            return Vec::new();
        }
        (0..self.l).map(|a| (0..self.k).map(|b| self.t(a, b).expect("in range")).collect()).collect()
    }

    /// `U_m`; zero when `m > min(k, l)`.
    pub fn u(&self, m: usize) -> Result<Mat<K<B>>, HeckeError> {
        if m == 0 {
            return Err(HeckeError::IndexOutOfRange("U_m needs m >= 1".into()));
        }
        Ok(self.u_sum(&self.t_table(), m, |_| true))
    }

    /// Terms of `U_m` whose last lower index satisfies `keep`.
    pub(crate) fn u_sum(&self, table: &[Vec<Mat<K<B>>>], m: usize, keep: impl Fn(usize) -> bool) -> Mat<K<B>> {
        let mut acc = Mat::zeros(self.dim(), self.dim());
        if m == 0 || m > self.k.min(self.l) {
            return acc;
        }
        for a in increasing(self.l, m) {
            for mut b in increasing(self.k, m) {
                b.reverse();
                if !keep(b[m - 1]) {
                    continue;
                }
                let exp: i64 = a.iter().zip(&b).map(|(&x, &y)| y as i64 - x as i64).sum();
                let w = self.q.pow(exp as i32).expect("q is invertible");
                let mut term = table[a[0]][b[0]].clone();
                for j in 1..m {
                    term = term.mul(&table[a[j]][b[j]]);
                }
                acc = acc.add(&term.scale(&w));
            }
        }
        acc
    }
}

/// Strictly increasing `m`-tuples from `0..n`.
fn increasing(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, &mut Vec::new(), &mut out);
    out
}

/// `Π_{j=1}^{n−1} (1 + t g_j + t² g_j g_{j−1} + ⋯ + t^j g_j ⋯ g_1)`.
fn murphy<F: Field>(gens: &[Mat<F>], t: &F, dim: usize) -> Mat<F> {
    let mut acc = Mat::identity(dim);
    for j in 0..gens.len() {
        let mut factor = Mat::identity(dim);
        let mut word = Mat::identity(dim);
        let mut tp = F::one();
        for i in (0..=j).rev() {
            word = word.mul(&gens[i]);
            tp = tp.mul(t);
            factor = factor.add(&word.scale(&tp));
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// Sum over the Cayley graph of the symmetric group, reached breadth first
/// so every element gets a reduced word.
fn direct_sum<F: Field>(gens: &[Mat<F>], t: &F, dim: usize) -> Mat<F> {
    let n = gens.len() + 1;
    let start: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([(start, Mat::identity(dim), F::one())]);
    let mut acc = Mat::zeros(dim, dim);
    while let Some((w, m, tp)) = queue.pop_front() {
        acc = acc.add(&m.scale(&tp));
        for (i, g) in gens.iter().enumerate() {
            let mut next = w.clone();
            next.swap(i, i + 1);
            if seen.insert(next.clone()) {
                queue.push_back((next, m.mul(g), tp.mul(t)));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests;
