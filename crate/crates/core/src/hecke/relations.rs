use super::{build_context_bounded, HeckeContext, HeckeError, Side};
use crate::bqd::{Bqd, K};
use crate::linalg::{column_space_contains, Mat};
use crate::report::Report;
use crate::scalars::{q_factorial, q_integer, BaseField, Field};

const HECKE: &str = "Hecke relations";
const INTERFACE: &str = "interface relations";
const SYM: &str = "symmetrizers";
const TREL: &str = "T relations";
const CONTRACTION: &str = "contraction identities";

/// Largest `k` for which the symmetrizer is also summed over the whole group.
const DIRECT_SUM_MAX: usize = 4;

impl<B: BaseField> HeckeContext<B> {
    /// Columns spanning `Σ_i Im a_i` (or `Σ_i Im b_i`).
    pub fn insertion_span(&self, side: Side) -> Mat<K<B>> {
        let (k, l) = (self.k, self.l);
        let p = |n: usize| 3usize.pow(n as u32);
        let maps: Vec<Mat<K<B>>> = match side {
            Side::V => (1..k).map(|i| self.bqd.a().embed(p(k - i - 1), p(i - 1 + l))).collect(),
            Side::W => (1..l).map(|i| self.bqd.b().embed(p(k + i - 1), p(l - i - 1))).collect(),
        };
        maps.iter().fold(Mat::zeros(self.dim(), 0), |acc, m| acc.hstack(m))
    }

    fn scalar(&self, s: &K<B>) -> Mat<K<B>> {
        Mat::scalar(self.dim(), s)
    }

    /// `Σ_{a ∈ range} q^{−a} T^a_0`.
    fn t_column_sum(&self, table: &[Vec<Mat<K<B>>>], range: std::ops::Range<usize>) -> Mat<K<B>> {
        let mut acc = Mat::zeros(self.dim(), self.dim());
        let mut w = self.qi.pow(range.start as i32).expect("q is invertible");
        for a in range {
            acc = acc.add(&table[a][0].scale(&w));
            w = w.mul(&self.qi);
        }
        acc
    }
}

/// Every relation among `R_i`, `R*_i`, `X`, the symmetrizers and the `T^a_b`.
pub fn verify_hecke_relations<B: BaseField>(ctx: &HeckeContext<B>) -> Report {
    let mut rep = Report::new(format!("{} (k,l) = ({},{})", ctx.bqd.name(), ctx.k, ctx.l));
    hecke_algebra(ctx, &mut rep);
    interface(ctx, &mut rep);
    symmetrizers(ctx, &mut rep);
    t_relations(ctx, &mut rep);
    rep
}

fn hecke_algebra<B: BaseField>(ctx: &HeckeContext<B>, rep: &mut Report) {
    let (k, l) = (ctx.k, ctx.l);
    let (q, qi) = (&ctx.q, &ctx.qi);
    let zero = Mat::zeros(ctx.dim(), ctx.dim());
    for i in 1..k {
        let r = ctx.r(i);
        let lhs = r.sub(&ctx.scalar(q)).mul(&r.add(&ctx.scalar(qi)));
        rep.check_eq(format!("(R{i} - q)(R{i} + 1/q) = 0"), HECKE, &lhs, &zero);
    }
    for i in 1..l {
        let r = ctx.rstar(i);
        let lhs = r.sub(&ctx.scalar(qi)).mul(&r.add(&ctx.scalar(q)));
        rep.check_eq(format!("(R*{i} - 1/q)(R*{i} + q) = 0"), HECKE, &lhs, &zero);
    }
    for (tag, n, g) in [("R", k, &ctx.r), ("R*", l, &ctx.rs)] {
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (&g[i - 1], &g[i]);
            rep.check_eq(
                format!("{tag}{i} {tag}{} {tag}{i} braid", i + 1),
                HECKE,
                &a.mul(b).mul(a),
                &b.mul(a).mul(b),
            );
        }
        for i in 1..n {
            for j in i + 2..n {
                let (a, b) = (&g[i - 1], &g[j - 1]);
                rep.check_eq(format!("{tag}{i} {tag}{j} = {tag}{j} {tag}{i}"), HECKE, &a.mul(b), &b.mul(a));
            }
        }
    }
    for i in 1..k {
        for j in 1..l {
            let (a, b) = (ctx.r(i), ctx.rstar(j));
            rep.check_eq(format!("R{i} R*{j} = R*{j} R{i}"), HECKE, &a.mul(b), &b.mul(a));
        }
    }
}

fn interface<B: BaseField>(ctx: &HeckeContext<B>, rep: &mut Report) {
    let Some(x) = ctx.x() else { return };
    let (k, l) = (ctx.k, ctx.l);
    for i in 2..k {
        rep.check_eq(format!("X R{i} = R{i} X"), INTERFACE, &x.mul(ctx.r(i)), &ctx.r(i).mul(x));
    }
    for i in 2..l {
        rep.check_eq(format!("X R*{i} = R*{i} X"), INTERFACE, &x.mul(ctx.rstar(i)), &ctx.rstar(i).mul(x));
    }
    rep.check_eq("X^2 = kappa X", INTERFACE, &x.mul(x), &x.scale(&ctx.kappa));
    let q3 = ctx.q.pow(3).expect("q is invertible");
    let qm3 = ctx.qi.pow(3).expect("q is invertible");
    if k >= 2 {
        rep.check_eq("X R1 X = q^3 X", INTERFACE, &x.mul(ctx.r(1)).mul(x), &x.scale(&q3));
    }
    if l >= 2 {
        rep.check_eq("X R*1 X = q^-3 X", INTERFACE, &x.mul(ctx.rstar(1)).mul(x), &x.scale(&qm3));
    }
    if k >= 2 && l >= 2 {
        let (r, rs) = (ctx.r(1), ctx.rstar(1));
        let xrrx = x.mul(r).mul(rs).mul(x);
        rep.check_eq("X R1 R*1 X R1 = X R1 R*1 X R*1^-1", INTERFACE, &xrrx.mul(r), &xrrx.mul(&ctx.rstar_inv(1)));
        let rhs = ctx.r_inv(1).mul(x).mul(r).mul(rs).mul(x);
        rep.check_eq("R*1 X R1 R*1 X = R1^-1 X R1 R*1 X", INTERFACE, &rs.mul(x).mul(r).mul(rs).mul(x), &rhs);
    }
}

fn symmetrizers<B: BaseField>(ctx: &HeckeContext<B>, rep: &mut Report) {
    let q2 = ctx.q.mul(&ctx.q);
    let qm2 = ctx.qi.mul(&ctx.qi);
    for (side, tag, n, t, t2) in [(Side::V, "S", ctx.k, &ctx.q, &q2), (Side::W, "S*", ctx.l, &ctx.qi, &qm2)] {
        let s = ctx.symmetrizer(side);
        if (2..=DIRECT_SUM_MAX).contains(&n) {
            rep.check_eq(format!("{tag} factorized = {tag} summed"), SYM, &s, &ctx.symmetrizer_direct(side));
        }
        let gens = match side {
            Side::V => &ctx.r,
            Side::W => &ctx.rs,
        };
        let ts = s.scale(t);
        for (i, g) in gens.iter().enumerate() {
            let i = i + 1;
            let gname = if side == Side::V { "R" } else { "R*" };
            rep.check_eq(format!("{gname}{i} {tag} = t {tag}"), SYM, &g.mul(&s), &ts);
            rep.check_eq(format!("{tag} {gname}{i} = t {tag}"), SYM, &s.mul(g), &ts);
        }
        if n >= 2 {
            let rest = s.sub(&ctx.scalar(&q_factorial(n, t2)));
            let span = ctx.insertion_span(side);
            rep.check(format!("{tag} - [{n}]! lies in the insertions"), SYM, column_space_contains(&span, &rest), || {
                "image not contained".into()
            });
        }
    }
}

fn t_relations<B: BaseField>(ctx: &HeckeContext<B>, rep: &mut Report) {
    if ctx.x().is_none() {
        return;
    }
    let (k, l, q, qi) = (ctx.k, ctx.l, &ctx.q, &ctx.qi);
    let t = ctx.t_table();
    let qmq = q.sub(qi);
    for a in 0..l {
        for b in 0..k {
            let tab = &t[a][b];
            for p in 1..k {
                let lhs = tab.mul(ctx.r(p));
                let rhs = if p < b {
                    ctx.r(p + 1).mul(tab)
                } else if p == b {
                    tab.scale(&qmq).add(&t[a][b - 1])
                } else if p == b + 1 {
                    t[a][b + 1].clone()
                } else {
                    ctx.r(p).mul(tab)
                };
                rep.check_eq(format!("T^{a}_{b} R{p}"), TREL, &lhs, &rhs);
            }
            for p in 1..l {
                let lhs = ctx.rstar(p).mul(tab);
                let rhs = if p < a {
                    tab.mul(ctx.rstar(p + 1))
                } else if p == a {
                    tab.scale(&qmq.neg()).add(&t[a - 1][b])
                } else if p == a + 1 {
                    t[a + 1][b].clone()
                } else {
                    tab.mul(ctx.rstar(p))
                };
                rep.check_eq(format!("R*{p} T^{a}_{b}"), TREL, &lhs, &rhs);
            }
        }
    }
    let q3 = q.pow(3).expect("q is invertible");
    let qm3 = qi.pow(3).expect("q is invertible");
    for a in 0..l {
        for b in 0..k {
            for c in 0..l {
                for d in 0..k {
                    let lhs = t[a][b].mul(&t[c][d]);
                    let id = format!("T^{a}_{b} T^{c}_{d}");
                    if a >= c && c >= 1 && b >= 1 {
                        let rhs = ctx.r_inv(1).mul(&t[c - 1][b]).mul(&t[a][d]);
                        rep.check_eq(format!("{id} (upper)"), TREL, &lhs, &rhs);
                    }
                    if d >= b && b >= 1 && c >= 1 {
                        let rhs = t[a][d].mul(&t[c][b - 1]).mul(&ctx.rstar_inv(1));
                        rep.check_eq(format!("{id} (lower)"), TREL, &lhs, &rhs);
                    }
                    if c == 0 && b >= 1 {
                        let mut rhs = t[a][d].scale(&q3);
                        for p in (2..=b).rev() {
                            rhs = ctx.r(p).mul(&rhs);
                        }
                        rep.check_eq(id, TREL, &lhs, &rhs);
                    } else if b == 0 && c >= 1 {
                        let mut rhs = t[a][d].scale(&qm3);
                        for p in (2..=c).rev() {
                            rhs = rhs.mul(ctx.rstar(p));
                        }
                        rep.check_eq(id, TREL, &lhs, &rhs);
                    } else if b == 0 && c == 0 {
                        rep.check_eq(id, TREL, &lhs, &t[a][d].scale(&ctx.kappa));
                    }
                }
            }
        }
    }
    let x = ctx.x().expect("checked");
    let lhs = ctx.symmetrizer(Side::W).mul(x);
    let rhs = ctx.t_column_sum(&t, 0..l).mul(&ctx.s_tilde_star());
    rep.check_eq("S* X = (sum q^-a T^a_0) S~*", TREL, &lhs, &rhs);
}

/// The three contraction identities behind the recurrence for `α_m`, and
/// their sum `S U_m S* X`, checked directly for `0 ≤ m ≤ min(k,l)`.
pub fn verify_contraction_identities<B: BaseField>(ctx: &HeckeContext<B>) -> Report {
    let mut rep = Report::new(format!("{} (k,l) = ({},{})", ctx.bqd.name(), ctx.k, ctx.l));
    let Some(x) = ctx.x() else { return rep };
    let (k, l, q, qi) = (ctx.k, ctx.l, &ctx.q, &ctx.qi);
    let q2 = q.mul(q);
    let qm2 = qi.mul(qi);
    let t = ctx.t_table();
    let s = ctx.symmetrizer(Side::V);
    let ss = ctx.symmetrizer(Side::W);
    let st = ctx.s_tilde_star();
    let mmax = k.min(l);
    let u_prime: Vec<Mat<K<B>>> = (0..=mmax + 1).map(|m| ctx.u_sum(&t, m, |b| b == 0)).collect();
    let sand = |u: &Mat<K<B>>| s.mul(u).mul(&st);
    for m in 0..=mmax {
        let um = if m == 0 { ctx.identity() } else { ctx.u_sum(&t, m, |_| true) };
        let next = sand(&u_prime[m + 1]).scale(&q_integer(m + 1, &qm2));
        if m >= 1 {
            let up = &u_prime[m];
            let upp = um.sub(up);
            let base = sand(up);
            let lhs = s.mul(up).mul(&ctx.t_column_sum(&t, 0..l)).mul(&st);
            let c1 = q2.mul(&q_integer(l + 2, &qm2));
            rep.check_eq(format!("m={m}: S U'_m sum_all S~*"), CONTRACTION, &lhs, &base.scale(&c1));
            let lhs = s.mul(&upp).mul(&ctx.t_column_sum(&t, 0..m.min(l))).mul(&st);
            let c2 = q2.mul(&q2).mul(&q_integer(k - m, &q2));
            rep.check_eq(format!("m={m}: S U''_m sum_low S~*"), CONTRACTION, &lhs, &base.scale(&c2));
            let lhs = s.mul(&upp).mul(&ctx.t_column_sum(&t, m.min(l)..l)).mul(&st);
            rep.check_eq(format!("m={m}: S U''_m sum_high S~*"), CONTRACTION, &lhs, &next);
        }
        let lhs = s.mul(&um).mul(&ss).mul(x);
        let c = qm2.pow(l as i32).expect("q is invertible").mul(&q_integer(k + l + 2 - m, &q2));
        let rhs = sand(&u_prime[m]).scale(&c).add(&next);
        rep.check_eq(format!("m={m}: S U_m S* X"), CONTRACTION, &lhs, &rhs);
    }
    rep
}

/// Nonvanishing of `S_n` and `[n]_{q²}!` for `2 ≤ n ≤ kmax`, together with
/// the contractions `(1,D)(R,1)(1,c) = q³` (with `R` on the two `V` factors
/// next to `W`) and `(1,D)(S_n,1)(1,c) = (q⁻² + [n+1]_{q²}) S_{n−1}`.
pub fn symmetrizer_nonvanishing_demo<B: BaseField>(bqd: &Bqd<B>, kmax: usize) -> Result<Report, HeckeError> {
    let mut rep = Report::new(format!("{} symmetrizers up to {kmax}", bqd.name()));
    let q = bqd.q().clone();
    let q2 = q.mul(&q);
    for n in 2..=kmax {
        let wide = build_context_bounded(bqd, n, 1, usize::MAX)?;
        let low = build_context_bounded(bqd, n - 1, 0, usize::MAX)?;
        let sn = wide.symmetrizer(Side::V);
        rep.check(format!("S_{n} != 0"), SYM, !sn.is_zero(), || "S is zero".into());
        let fact = q_factorial(n, &q2);
        rep.check(format!("[{n}]_q^2! != 0"), SYM, !fact.is_zero(), || "vanishes".into());
        let id = Mat::<K<B>>::identity(low.dim());
        let insert = id.kron(bqd.c());
        let contract = id.kron(bqd.D());
        let q3 = q.pow(3)?;
        rep.check_eq(
            format!("(1,D)(R,1)(1,c) = q^3 on V^{}", n - 1),
            SYM,
            &contract.mul(wide.r(1)).mul(&insert),
            &id.scale(&q3),
        );
        let coef = q.inv()?.pow(2)?.add(&q_integer(n + 1, &q2));
        let rhs = low.symmetrizer(Side::V).scale(&coef);
        rep.check_eq(format!("(1,D)(S_{n},1)(1,c)"), SYM, &contract.mul(&sn).mul(&insert), &rhs);
    }
    Ok(rep)
}
