use serde::Serialize;

use super::{HeckeContext, HeckeError, Side};
use crate::bqd::K;
use crate::linalg::{column_space_contains, rank, solve, Mat};
use crate::report::Report;
use crate::scalars::{q_factorial, q_integer, BaseField, Field};
use crate::shape::{expected_dim, ideal_span_m};

const PROJ: &str = "projector";

/// `P = α₀ SS* + Σ_m α_m S U_m S*`.
#[derive(Clone, Debug)]
pub struct ProjectorResult<B: BaseField> {
    pub p: Mat<K<B>>,
    /// From the linear solve.
    pub alphas: Vec<K<B>>,
    /// From the closed recurrence.
    pub recurrence: Vec<K<B>>,
    pub rank: usize,
    /// Dimension of the solution space left after normalization; the free
    /// coefficients are set to zero.
    pub ambiguity: usize,
}

/// Summary for reports.
#[derive(Clone, Debug, Serialize)]
pub struct ProjectorSummary {
    pub k: usize,
    pub l: usize,
    pub alphas: Vec<String>,
    pub rank: usize,
    pub expected: usize,
    pub ambiguity: usize,
}

impl<B: BaseField> ProjectorResult<B> {
    pub fn summary(&self, k: usize, l: usize) -> ProjectorSummary {
        ProjectorSummary {
            k,
            l,
            alphas: self.alphas.iter().map(ToString::to_string).collect(),
            rank: self.rank,
            expected: expected_dim(k, l),
            ambiguity: self.ambiguity,
        }
    }
}

/// `α₀ = ([k]_{q²}! [l]_{q⁻²}!)⁻¹` and
/// `α_m q^{−2l} [k+l−m+2]_{q²} + α_{m−1} [m]_{q⁻²} = 0`.
pub fn recurrence_alphas<B: BaseField>(ctx: &HeckeContext<B>) -> Result<Vec<K<B>>, HeckeError> {
    let (k, l) = (ctx.k, ctx.l);
    let q2 = ctx.q.mul(&ctx.q);
    let qm2 = ctx.qi.mul(&ctx.qi);
    let mut out = vec![q_factorial(k, &q2).mul(&q_factorial(l, &qm2)).inv()?];
    let lead = qm2.pow(l as i32)?;
    for m in 1..=k.min(l) {
        let den = lead.mul(&q_integer(k + l - m + 2, &q2));
        let next = out[m - 1].mul(&q_integer(m, &qm2)).neg().div(&den)?;
        out.push(next);
    }
    Ok(out)
}

/// Solve `(Σ α_m M_m) X = 0` with `M₀ = SS*`, `M_m = S U_m S*` and the
/// normalization `α₀ [k]_{q²}! [l]_{q⁻²}! = 1`.
pub fn solve_p<B: BaseField>(ctx: &HeckeContext<B>) -> Result<ProjectorResult<B>, HeckeError> {
    let (k, l) = (ctx.k, ctx.l);
    let s = ctx.symmetrizer(Side::V);
    let ss = ctx.symmetrizer(Side::W);
    let mut cands = vec![s.mul(&ss)];
    if k.min(l) >= 1 {
        let t = ctx.t_table();
        for m in 1..=k.min(l) {
            cands.push(s.mul(&ctx.u_sum(&t, m, |_| true)).mul(&ss));
        }
    }
    let q2 = ctx.q.mul(&ctx.q);
    let qm2 = ctx.qi.mul(&ctx.qi);
    let norm = q_factorial(k, &q2).mul(&q_factorial(l, &qm2));
    let n = cands.len();
    let images: Vec<Mat<K<B>>> = match ctx.x() {
        Some(x) => cands.iter().map(|c| c.mul(x)).collect(),
        None => Vec::new(),
    };
    let entries = images.first().map_or(0, |m| m.data().len());
    let system = Mat::from_fn(entries + 1, n, |i, j| {
        if i == entries {
            if j == 0 { norm.clone() } else { K::<B>::zero() }
        } else {
            images[j].data()[i].clone()
        }
    });
    let mut rhs = Mat::zeros(entries + 1, 1);
    rhs.set(entries, 0, K::<B>::one());
    let sol = solve(&system, &rhs).ok_or(HeckeError::NoSolution)?;
    let alphas: Vec<K<B>> = (0..n).map(|i| sol.get(i, 0).clone()).collect();
    let ambiguity = n - rank(&system);
    let mut p = Mat::zeros(ctx.dim(), ctx.dim());
    for (c, a) in cands.iter().zip(&alphas) {
        p = p.add(&c.scale(a));
    }
    let rank = rank(&p);
    Ok(ProjectorResult { p, alphas, recurrence: recurrence_alphas(ctx)?, rank, ambiguity })
}

/// `PR_i = qP`, `PR*_i = q⁻¹P`, `PX = 0`, idempotence, rank, and
/// `Im(P−1) ⊆ I' ⊆ Ker P` for the ideal of the shape algebra.
pub fn verify_p_properties<B: BaseField>(ctx: &HeckeContext<B>, res: &ProjectorResult<B>) -> Report {
    let (k, l) = (ctx.k, ctx.l);
    let mut rep = Report::new(format!("{} projector (k,l) = ({k},{l})", ctx.bqd.name()));
    let p = &res.p;
    rep.check("linear solve = recurrence", PROJ, res.alphas == res.recurrence, || {
        format!("{:?} vs {:?}", res.alphas, res.recurrence)
    });
    let qp = p.scale(&ctx.q);
    for i in 1..k {
        rep.check_eq(format!("P R{i} = q P"), PROJ, &p.mul(ctx.r(i)), &qp);
    }
    let qip = p.scale(&ctx.qi);
    for i in 1..l {
        rep.check_eq(format!("P R*{i} = q^-1 P"), PROJ, &p.mul(ctx.rstar(i)), &qip);
    }
    if let Some(x) = ctx.x() {
        rep.check_eq("P X = 0", PROJ, &p.mul(x), &Mat::zeros(ctx.dim(), ctx.dim()));
    }
    rep.check_eq("P^2 = P", PROJ, &p.mul(p), p);
    let d = expected_dim(k, l);
    rep.check("rank P = d", PROJ, res.rank == d, || format!("rank {} vs {d}", res.rank));
    let pm1 = p.sub(&ctx.identity());
    let r1 = rank(&pm1);
    rep.check("rank P + rank(P-1) = dim", PROJ, res.rank + r1 == ctx.dim(), || {
        format!("{} + {r1} vs {}", res.rank, ctx.dim())
    });
    let span = ideal_span_m(&ctx.bqd, k, l);
    rep.check("Im(P-1) in I'", PROJ, column_space_contains(&span, &pm1), || "not contained".into());
    rep.check("P I' = 0", PROJ, p.mul(&span).is_zero(), || "P does not kill I'".into());
    rep
}
