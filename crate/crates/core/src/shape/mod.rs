//! Graded dimensions of the shape algebra `ℳ`, its dual `𝒩` and the
//! algebra `𝒢`, by exact rank computations.

mod engine;

use serde::Serialize;
use thiserror::Error;

pub use engine::{Block, GradedQuotient, QuadRelation, QuadraticAlgebraSpec};

use crate::bqd::{export_presentation, make_derived, Bqd, Generator, K};
use crate::linalg::{Echelon, Mat};
use crate::par;
use crate::scalars::{BaseField, Field, ScalarError};

/// Default bound on `k+l` for [`dim_free_ideal_component`].
pub const FREE_IDEAL_BOUND: usize = 4;
/// Default bound on `k+l` for [`dim_g_component`].
pub const G_BOUND: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("degree ({k},{l}) exceeds the bound k+l <= {bound}")]
    DegreeBoundExceeded { k: usize, l: usize, bound: usize },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// One graded piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComponentResult {
    pub k: usize,
    pub l: usize,
    pub ambient: usize,
    pub ideal_rank: usize,
    pub quotient: usize,
}

impl ComponentResult {
    fn new(k: usize, l: usize, ambient: usize, quotient: usize) -> Self {
        ComponentResult { k, l, ambient, ideal_rank: ambient - quotient, quotient }
    }
}

/// `d_{(k,l)} = (k+1)(l+1)(k+l+2)/2`.
pub fn expected_dim(k: usize, l: usize) -> usize {
    (k + 1) * (l + 1) * (k + l + 2) / 2
}

/// `Σ_{k+l ≤ n} d_{(k,l)}²` for `n = 0..=maxn`.
pub fn filtration_dims(maxn: usize) -> Vec<usize> {
    let mut acc = 0;
    (0..=maxn)
        .map(|n| {
            acc += (0..=n).map(|k| expected_dim(k, n - k).pow(2)).sum::<usize>();
            acc
        })
        .collect()
}

/// Monomials `x₁ᵃx₂ᵇx₃ᶜ y₂ᵐ y₁ⁿ` and `x₁ᵃx₂ᵇ y₃ᵐ y₂ᵖ y₁ⁿ` (`m ≥ 1`) of
/// multidegree `(k, l)`.
pub fn count_normal_monomials(k: usize, l: usize) -> usize {
    let mut count = 0;
    for a in 0..=k {
        for b in 0..=k - a {
            let c = k - a - b;
            // first shape: any split of l between y₂ and y₁
            count += l + 1;
            // second shape: no x₃, at least one y₃
            if c == 0 {
                count += (1..=l).map(|m| l - m + 1).sum::<usize>();
            }
        }
    }
    count
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn unit_vectors<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

fn vw_blocks(names: [&str; 2]) -> Vec<Block> {
    vec![
        Block { tag: names[0].into(), dim: 3, deg: (1, 0) },
        Block { tag: names[1].into(), dim: 3, deg: (0, 1) },
    ]
}

/// `ℳ` in the reduced form `(TV ⊗ TW)/I'`: the slot `WV` is killed and
/// `Im a`, `Im c`, `Im b` are imposed in slots `VV`, `VW`, `WW`.
pub fn m_spec<B: BaseField>(bqd: &Bqd<B>) -> QuadraticAlgebraSpec<K<B>> {
    let mut s = QuadraticAlgebraSpec::new(vw_blocks(["V", "W"]));
    s.add_span(0, 0, bqd.a().column_vecs());
    s.add_span(0, 1, bqd.c().column_vecs());
    s.add_span(1, 1, bqd.b().column_vecs());
    s.kill_slot(1, 0);
    s
}

/// `𝒩` in reduced form: `Im τA`, `Im τD`, `Im τB` in `V*V*`, `V*W*`,
/// `W*W*`, with `W*V*` killed.
pub fn n_spec<B: BaseField>(bqd: &Bqd<B>) -> QuadraticAlgebraSpec<K<B>> {
    let mut s = QuadraticAlgebraSpec::new(vw_blocks(["V*", "W*"]));
    s.add_span(0, 0, bqd.A().row_vecs());
    s.add_span(0, 1, bqd.D().row_vecs());
    s.add_span(1, 1, bqd.B().row_vecs());
    s.kill_slot(1, 0);
    s
}

/// `𝒢` on `T = V*⊗V` and `U = W*⊗W`, with the relations of the
/// alternative presentation taken in top degree.
pub fn g_spec<B: BaseField>(bqd: &Bqd<B>) -> Result<QuadraticAlgebraSpec<K<B>>, ScalarError> {
    let blocks = vec![
        Block { tag: "T".into(), dim: 9, deg: (1, 0) },
        Block { tag: "U".into(), dim: 9, deg: (0, 1) },
    ];
    let mut s = QuadraticAlgebraSpec::new(blocks);
    let doc = export_presentation(bqd)?;
    let split = |g: usize| match Generator::from_index(g) {
        Generator::T(..) => (0, g),
        Generator::U(..) => (1, g - 9),
    };
    for r in &doc.alt_relations {
        let mut terms: Vec<(usize, usize, Vec<K<B>>)> = Vec::new();
        for t in r.terms.iter().filter(|t| t.word.len() == 2) {
            let (g, x) = split(t.word[0]);
            let (h, y) = split(t.word[1]);
            let pos = match terms.iter().position(|(a, b, _)| (*a, *b) == (g, h)) {
                Some(p) => p,
                None => {
                    terms.push((g, h, vec![K::<B>::zero(); 81]));
                    terms.len() - 1
                }
            };
            let v = &mut terms[pos].2[9 * x + y];
            *v = v.add(&t.coef);
        }
        if !terms.is_empty() {
            s.relations.push(QuadRelation { terms });
        }
    }
    Ok(s)
}

/// Quotient dimensions of `ℳ`, `𝒩` or `𝒢` over a range of degrees,
/// sharing the lower pieces.
pub struct Sweep<B: BaseField> {
    engine: GradedQuotient<K<B>>,
    block_dim: usize,
}

impl<B: BaseField> Sweep<B> {
    pub fn m(bqd: &Bqd<B>) -> Self {
        Sweep { engine: GradedQuotient::new(m_spec(bqd)), block_dim: 3 }
    }

    pub fn n(bqd: &Bqd<B>) -> Self {
        Sweep { engine: GradedQuotient::new(n_spec(bqd)), block_dim: 3 }
    }

    pub fn g(bqd: &Bqd<B>) -> Result<Self, ScalarError> {
        Ok(Sweep { engine: GradedQuotient::new(g_spec(bqd)?), block_dim: 9 })
    }

    /// For `ℳ`/`𝒩` the ambient is `V^{⊗k}⊗W^{⊗l}`; for `𝒢` it is the
    /// free algebra component.
    pub fn component(&mut self, k: usize, l: usize) -> ComponentResult {
        let q = self.engine.dim(k, l);
        let n = k + l;
        let ambient = if self.block_dim == 3 {
            3usize.pow(n as u32)
        } else {
            binom(n, k) * 9usize.pow(n as u32)
        };
        ComponentResult::new(k, l, ambient, q)
    }

    /// Every `(k, l)` with `k + l ≤ max_total`, ordered by total degree then `k` descending.
    pub fn up_to(&mut self, max_total: usize) -> Vec<ComponentResult> {
        let mut out = Vec::new();
        for n in 0..=max_total {
            for k in (0..=n).rev() {
                out.push(self.component(k, n - k));
            }
        }
        out
    }
}

pub fn dim_m_component<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> ComponentResult {
    Sweep::m(bqd).component(k, l)
}

pub fn dim_n_component<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> ComponentResult {
    Sweep::n(bqd).component(k, l)
}

pub fn dim_g_component<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> Result<ComponentResult, ShapeError> {
    dim_g_component_bounded(bqd, k, l, G_BOUND)
}

pub fn dim_g_component_bounded<B: BaseField>(
    bqd: &Bqd<B>,
    k: usize,
    l: usize,
    bound: usize,
) -> Result<ComponentResult, ShapeError> {
    if k + l > bound {
        return Err(ShapeError::DegreeBoundExceeded { k, l, bound });
    }
    Ok(Sweep::g(bqd)?.component(k, l))
}

/// Words in `{V, W}` with `k` letters `V` and `l` letters `W`, in
/// lexicographic order (`V < W`).
pub fn words(k: usize, l: usize) -> Vec<Vec<bool>> {
    let n = k + l;
    let mut out: Vec<Vec<bool>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == l)
        .map(|m| (0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// The ideal of `ℳ` in the free algebra `T(V⊕W)`: `Im a`, `Im b`, `Im c`,
/// `Im d` and both forms `x + (q+q⁻¹)F(x)`, `y + (q+q⁻¹)G(y)` of the
/// mixed relations, inserted at every adjacent slot.
pub fn dim_free_ideal_component<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> Result<ComponentResult, ShapeError> {
    dim_free_ideal_component_bounded(bqd, k, l, FREE_IDEAL_BOUND)
}

pub fn dim_free_ideal_component_bounded<B: BaseField>(
    bqd: &Bqd<B>,
    k: usize,
    l: usize,
    bound: usize,
) -> Result<ComponentResult, ShapeError> {
    if k + l > bound {
        return Err(ShapeError::DegreeBoundExceeded { k, l, bound });
    }
    let n = k + l;
    let dv = make_derived(bqd)?;
    let q = bqd.q();
    let qq = q.add(&q.inv()?);
    let f = dv.F.mat().scale(&qq);
    let g = dv.G.mat().scale(&qq);
    let ws = words(k, l);
    let block = 3usize.pow(n as u32);
    let ambient = ws.len() * block;
    let offset = |w: &[bool]| ws.binary_search_by(|x| x.as_slice().cmp(w)).expect("word") * block;

    // local generators: (vector in the slot of this word, optional partner in the swapped word)
    type Local<T> = Vec<(Vec<T>, Option<Vec<T>>)>;
    let slot_gens = |pair: (bool, bool)| -> Local<K<B>> {
        match pair {
            (false, false) => bqd.a().column_vecs().into_iter().map(|v| (v, None)).collect(),
            (true, true) => bqd.b().column_vecs().into_iter().map(|v| (v, None)).collect(),
            (false, true) => {
                let mut out: Local<K<B>> = vec![(bqd.c().column(0), None)];
                out.extend(unit_vectors(9).into_iter().zip(f.column_vecs()).map(|(u, p)| (u, Some(p))));
                out
            }
            (true, false) => {
                let mut out: Local<K<B>> = vec![(bqd.d().column(0), None)];
                out.extend(unit_vectors(9).into_iter().zip(g.column_vecs()).map(|(u, p)| (u, Some(p))));
                out
            }
        }
    };
    let mut jobs = Vec::new();
    for w in &ws {
        for p in 0..n.saturating_sub(1) {
            jobs.push((w.clone(), p));
        }
    }
    let rows: Vec<Vec<Vec<K<B>>>> = par::map_slice(&jobs, jobs.len() * ambient * 10, |(w, p)| {
        let p = *p;
        let left = 3usize.pow(p as u32);
        let right = 3usize.pow((n - p - 2) as u32);
        let own = offset(w);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        let other = offset(&swapped);
        let mut out = Vec::new();
        for (v, partner) in slot_gens((w[p], w[p + 1])) {
            for li in 0..left {
                for ri in 0..right {
                    let mut row = vec![K::<B>::zero(); ambient];
                    for r in 0..9 {
                        let at = (li * 9 + r) * right + ri;
                        if !v[r].is_zero() {
                            row[own + at] = v[r].clone();
                        }
                        if let Some(pv) = &partner {
                            if !pv[r].is_zero() {
                                row[other + at] = row[other + at].add(&pv[r]);
                            }
                        }
                    }
                    out.push(row);
                }
            }
        }
        out
    });
    let mut ech = Echelon::new(ambient);
    ech.extend(rows.into_iter().flatten());
    Ok(ComponentResult { k, l, ambient, ideal_rank: ech.rank(), quotient: ambient - ech.rank() })
}

/// Columns spanning `I'_{(k,l)} ⊆ V^{⊗k}⊗W^{⊗l}` directly.
pub fn ideal_span_m<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> Mat<K<B>> {
    let n = k + l;
    let id = |e: usize| Mat::<K<B>>::identity(3usize.pow(e as u32));
    let mut cols: Vec<Mat<K<B>>> = Vec::new();
    for i in 0..k.saturating_sub(1) {
        cols.push(id(i).kron(bqd.a()).kron(&id(n - i - 2)));
    }
    if k >= 1 && l >= 1 {
        cols.push(id(k - 1).kron(bqd.c()).kron(&id(l - 1)));
    }
    for j in 0..l.saturating_sub(1) {
        cols.push(id(k + j).kron(bqd.b()).kron(&id(n - k - j - 2)));
    }
    let rows = 3usize.pow(n as u32);
    cols.into_iter().fold(Mat::zeros(rows, 0), |acc, m| acc.hstack(&m))
}

/// `dim I'_{(k,l)}` by direct rank, for cross-checking the sweep.
pub fn direct_m_quotient<B: BaseField>(bqd: &Bqd<B>, k: usize, l: usize) -> ComponentResult {
    let span = ideal_span_m(bqd, k, l);
    let ambient = span.rows();
    let mut ech = Echelon::new(ambient);
    ech.extend(span.column_vecs());
    ComponentResult::new(k, l, ambient, ambient - ech.rank())
}
