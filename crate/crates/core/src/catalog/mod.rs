//! The classified families, their parameters and admissibility conditions,
//! and the pipeline `e, E ↦ (A, a, B, b)`.

mod derive;
mod templates;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bqd::{make_derived, Bqd, BqdError, K};
use crate::report::Report;
use crate::scalars::{guard_q, BaseField, Cyc, Field, QTag, Rational, ScalarError};

pub use derive::{base_tensors, derive_maps_from_e_e, normalize, BaseTensors, Candidate};
pub use templates::{distinct_perms, levi_civita, monomials, type_id_verbatim, Cubic, CubicSpec};

const CONDITIONS: &str = "case conditions";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case {case} has no parameter `{name}` (parameters: {expected})")]
    UnknownParam { case: CaseId, name: String, expected: String },
    #[error("case {case}: condition {condition} violated")]
    CaseConditionViolated { case: CaseId, condition: String },
    #[error("the pairing is degenerate")]
    DegeneratePairing,
    #[error("normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("Q matches no normal form")]
    NotABqdQ,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Bqd(#[from] BqdError),
}

macro_rules! cases {
    ($($var:ident => $name:literal),* $(,)?) => {
        /// The 24 classified cases.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CaseId { $($var),* }

        impl CaseId {
            pub const ALL: [CaseId; 24] = [$(CaseId::$var),*];

            pub fn as_str(self) -> &'static str {
                match self { $(CaseId::$var => $name),* }
            }
        }
    };
}

cases! {
    Ia => "I.a", Ib => "I.b", Ic => "I.c", Id => "I.d", Ie => "I.e", If => "I.f",
    Ig => "I.g", Ih => "I.h", IeStar => "I.e*", IpA => "I'.a", IpB => "I'.b",
    IIa => "II.a", IIb => "II.b", IIpA => "II'.a",
    IIIa => "III.a", IIIaStar => "III.a*", IIIb => "III.b", IIIbStar => "III.b*",
    IIIc => "III.c", IIIcStar => "III.c*", IIIpA => "III'.a", IIIpB => "III'.b",
    IVa => "IV.a", IVb => "IV.b",
}

impl CaseId {
    /// Jordan type of `Q`.
    pub fn qtag(self) -> QTag {
        use CaseId::*;
        match self {
            Ia | Ib | Ic | Id | Ie | If | Ig | Ih | IeStar | IpA | IpB => QTag::I,
            IIa | IIb | IIpA => QTag::II,
            IIIa | IIIaStar | IIIb | IIIbStar | IIIc | IIIcStar | IIIpA | IIIpB => QTag::III,
            IVa | IVb => QTag::IV,
        }
    }

    /// Whether `ω` is a primitive cube root of unity.
    pub fn primed(self) -> bool {
        matches!(self, CaseId::IpA | CaseId::IpB | CaseId::IIpA | CaseId::IIIpA | CaseId::IIIpB)
    }

    pub fn is_elliptic(self) -> bool {
        self == CaseId::Ih
    }

    pub fn param_names(self) -> &'static [&'static str] {
        use CaseId::*;
        match self {
            Ie => &["alpha"],
            Ih => &["alpha", "beta", "gamma", "alpha'", "beta'", "gamma'"],
            IpA => &["t"],
            IIa | IIpA => &["q", "beta"],
            IIb => &["p"],
            IIIa | IIIb | IIIpA | IIIpB => &["gamma"],
            IIIc => &["beta'"],
            _ => &[],
        }
    }

    /// Human-readable admissibility constraints.
    pub fn constraints(self) -> &'static str {
        use CaseId::*;
        match self {
            Ie => "alpha != 0, 1, -1",
            Ih => "gamma, gamma' != 0; gamma^3+(alpha+beta)^3 != 0 (and primed); alpha != beta (and primed); \
                   alpha*alpha'+beta*beta'+gamma*gamma' != 0; three elliptic equations",
            IpA => "t^2-t+1 != 0",
            IIa | IIpA => "q != 0, 1, -1; beta != 0",
            IIb => "p != 0, 1, -1 (q = p^3)",
            _ => "none",
        }
    }

    /// Map an alias such as `beta2` or `beta_prime` to the canonical name.
    fn canonical_param(self, name: &str) -> Option<&'static str> {
        let n = name.trim();
        let n = n.strip_suffix("_prime").or_else(|| n.strip_suffix('2')).map(|b| format!("{b}'")).unwrap_or(n.into());
        self.param_names().iter().copied().find(|p| *p == n)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, CatalogError> {
        let t = s.trim();
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str() == t || c.as_str().replace('\'', "p") == t || c.as_str().replace('*', "star") == t)
            .ok_or_else(|| CatalogError::UnknownCase(s.to_string()))
    }
}

/// The Jordan type of `Q`, with `q` for type II.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QType<B: BaseField> {
    pub tag: QTag,
    pub q: Option<K<B>>,
}

/// A case together with values for its parameters, in
/// [`CaseId::param_names`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSpec<B: BaseField> {
    pub case: CaseId,
    pub params: Vec<K<B>>,
}

fn rat<B: BaseField>(n: i64, d: i64) -> K<B> {
    K::<B>::from_rational(&Rational::new(n, d).expect("nonzero denominator"))
}

fn int<B: BaseField>(n: i64) -> K<B> {
    K::<B>::from_int(n)
}

impl<B: BaseField> CaseSpec<B> {
    /// The default parameters. In symbolic mode the deformation parameter
    /// (`q`, or `p` for II.b) defaults to the indeterminate.
    pub fn default_for(case: CaseId) -> Self {
        use CaseId::*;
        let sym_q = Cyc::<B>::q_indeterminate();
        let params = match case {
            Ie => vec![int(2)],
            Ih => vec![int(0), int(1), int(1), int(0), int(1), int(1)],
            IpA => vec![int(3)],
            IIa | IIpA => vec![sym_q.unwrap_or_else(|| int(2)), int(3)],
            IIb => vec![sym_q.unwrap_or_else(|| int(2))],
            IIIa | IIIb | IIIpA | IIIpB | IIIc => vec![int(5)],
            _ => vec![],
        };
        CaseSpec { case, params }
    }

    /// Defaults overridden by named values.
    pub fn with_params(case: CaseId, named: &[(&str, K<B>)]) -> Result<Self, CatalogError> {
        let mut spec = Self::default_for(case);
        for (name, value) in named {
            let canon = case.canonical_param(name).ok_or_else(|| CatalogError::UnknownParam {
                case,
                name: name.to_string(),
                expected: case.param_names().join(", "),
            })?;
            let i = case.param_names().iter().position(|p| *p == canon).expect("known name");
            spec.params[i] = value.clone();
        }
        Ok(spec)
    }

    pub fn param(&self, name: &str) -> &K<B> {
        let i = self.case.param_names().iter().position(|p| *p == name).expect("parameter name");
        &self.params[i]
    }

    /// `q` of the resulting datum.
    pub fn q(&self) -> Result<K<B>, ScalarError> {
        Ok(match self.case {
            CaseId::IIa | CaseId::IIpA => self.params[0].clone(),
            CaseId::IIb => self.params[0].pow(3)?,
            _ => K::<B>::one(),
        })
    }

    /// `I.e(alpha=2)`, or just `I.a` without parameters.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.case.to_string();
        }
        let parts: Vec<String> =
            self.case.param_names().iter().zip(&self.params).map(|(n, v)| format!("{n}={v}")).collect();
        format!("{}({})", self.case, parts.join(", "))
    }

    /// Defaults plus, for each parameter, three admissible values. For I.h
    /// the grid is `α = α' = 0`, `β = β' = γ = γ' = s`.
    pub fn grid(case: CaseId) -> Vec<Self> {
        use CaseId::*;
        let base = Self::default_for(case);
        let values: Vec<Vec<K<B>>> = match case {
            Ie => vec![vec![int(2), int(-3), rat(1, 2)]],
            IpA => vec![vec![int(3), int(-2), rat(1, 3)]],
            IIa | IIpA => vec![vec![int(2), int(3), rat(-1, 2)], vec![int(3), int(-2), rat(1, 5)]],
            IIb => vec![vec![int(2), int(-3), rat(1, 2)]],
            IIIa | IIIb | IIIpA | IIIpB => vec![vec![int(5), int(-1), rat(2, 3)]],
            IIIc => vec![vec![int(5), int(0), rat(-1, 2)]],
            Ih => {
                let mut out = vec![base];
                for s in [int(1), int(2), int(-3)] {
                    let z = K::<B>::zero();
                    out.push(CaseSpec { case, params: vec![z.clone(), s.clone(), s.clone(), z, s.clone(), s] });
                }
                out.dedup();
                return out;
            }
            _ => vec![],
        };
        let mut out = vec![base.clone()];
        for (i, vs) in values.iter().enumerate() {
            for v in vs {
                let mut s = base.clone();
                s.params[i] = v.clone();
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Evaluate every admissibility condition of a case exactly.
pub fn check_case_conditions<B: BaseField>(spec: &CaseSpec<B>) -> Report {
    use CaseId::*;
    let mut r = Report::new(format!("{}: conditions", spec.label()));
    let nonzero = |r: &mut Report, id: &str, v: K<B>| {
        r.check(id, CONDITIONS, !v.is_zero(), || format!("value {v}"));
    };
    let zero = |r: &mut Report, id: &str, v: K<B>| {
        r.check(id, CONDITIONS, v.is_zero(), || format!("value {v}"));
    };
    match spec.q() {
        Ok(q) => {
            let g = guard_q(&q, spec.case.qtag());
            r.check("q admissible", CONDITIONS, g.is_ok(), || g.unwrap_err().to_string());
        }
        Err(e) => r.check("q admissible", CONDITIONS, false, || e.to_string()),
    }
    let one = K::<B>::one();
    match spec.case {
        Ie => {
            let a = spec.param("alpha");
            nonzero(&mut r, "alpha != 0", a.clone());
            nonzero(&mut r, "alpha != 1", a.sub(&one));
            nonzero(&mut r, "alpha != -1", a.add(&one));
        }
        Ih => {
            let p = &spec.params;
            let (a, b, g, a2, b2, g2) = (&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]);
            let cube = |x: &K<B>| x.mul(x).mul(x);
            let sq = |x: &K<B>| x.mul(x);
            nonzero(&mut r, "gamma != 0", g.clone());
            nonzero(&mut r, "gamma' != 0", g2.clone());
            nonzero(&mut r, "gamma^3+(alpha+beta)^3 != 0", cube(g).add(&cube(&a.add(b))));
            nonzero(&mut r, "gamma'^3+(alpha'+beta')^3 != 0", cube(g2).add(&cube(&a2.add(b2))));
            nonzero(&mut r, "alpha != beta", a.sub(b));
            nonzero(&mut r, "alpha' != beta'", a2.sub(b2));
            let (aa, bb, gg) = (a.mul(a2), b.mul(b2), g.mul(g2));
            nonzero(&mut r, "alpha alpha'+beta beta'+gamma gamma' != 0", aa.add(&bb).add(&gg));
            let two = int::<B>(2);
            let e1 = sq(&aa)
                .add(&sq(&bb))
                .add(&sq(&gg))
                .sub(&two.mul(&aa.mul(&bb).add(&aa.mul(&gg)).add(&bb.mul(&gg))));
            zero(&mut r, "elliptic equation 1", e1);
            let e2 = sq(a).mul(b2).mul(g2).add(&sq(b).mul(a2).mul(g2)).add(&sq(g).mul(a2).mul(b2));
            zero(&mut r, "elliptic equation 2", e2);
            let e3 = sq(a2).mul(b).mul(g).add(&sq(b2).mul(a).mul(g)).add(&sq(g2).mul(a).mul(b));
            zero(&mut r, "elliptic equation 3", e3);
        }
        IpA => {
            let t = spec.param("t");
            nonzero(&mut r, "t^2-t+1 != 0", t.mul(t).sub(t).add(&one));
        }
        IIa | IIpA => {
            let q = spec.param("q");
            nonzero(&mut r, "beta != 0", spec.param("beta").clone());
            nonzero(&mut r, "1+q^2 != 0", one.add(&q.mul(q)));
        }
        IIb => nonzero(&mut r, "p != 0", spec.param("p").clone()),
        _ => {}
    }
    r
}

/// Build `e` and `E` of the case (unnormalized).
pub fn case_tensors<B: BaseField>(spec: &CaseSpec<B>) -> Result<(Cubic<B>, Cubic<B>), CatalogError> {
    use CaseId::*;
    let p = &spec.params;
    Ok(match spec.case {
        Ia | Ib | Ic | Id | Ie | If | Ig | IeStar => {
            let (s, big_s) = templates::type_i_specs(spec.case, p.first());
            (s.to_tensor(false), big_s.to_tensor(true))
        }
        Ih => templates::type_ih(p),
        IpA | IpB => templates::type_i_prime(spec.case, p.first()),
        IIa | IIpA => templates::type_ii(spec.case, &p[0], &p[1])?,
        IIb => templates::type_ii(spec.case, &spec.q()?, &p[0])?,
        IIIa | IIIaStar | IIIb | IIIbStar | IIIc | IIIcStar => templates::type_iii(spec.case, p.first()),
        IIIpA | IIIpB => templates::type_iii_prime(spec.case, &p[0]),
        IVa | IVb => templates::type_iv(spec.case),
    })
}

/// Build, derive and normalize the datum of a case.
pub fn instantiate<B: BaseField>(spec: &CaseSpec<B>) -> Result<Bqd<B>, CatalogError> {
    let conditions = check_case_conditions(spec);
    if let Some(c) = conditions.failures().next() {
        return Err(CatalogError::CaseConditionViolated { case: spec.case, condition: c.id.clone() });
    }
    let (e, big_e) = case_tensors(spec)?;
    let q = spec.q()?;
    let base = base_tensors::<B>(spec.case.qtag(), &q)?;
    let candidate = derive_maps_from_e_e(&spec.label(), &q, &e, &big_e, &base)?;
    normalize(candidate)
}

/// Classify `Q` by its Jordan type.
pub fn detect_q_type<B: BaseField>(bqd: &Bqd<B>) -> Result<QType<B>, CatalogError> {
    let q_mat = make_derived(bqd)?.Q.into_mat();
    let n = q_mat.sub(&crate::linalg::Mat::identity(3));
    if n.is_zero() {
        return Ok(QType { tag: QTag::I, q: None });
    }
    let n2 = n.mul(&n);
    if n2.is_zero() {
        return Ok(QType { tag: QTag::III, q: None });
    }
    if n2.mul(&n).is_zero() {
        return Ok(QType { tag: QTag::IV, q: None });
    }
    // characteristic polynomial x³ − e₁x² + e₂x − e₃ against (x−q⁻²)(x−1)(x−q²)
    let m = |i: usize, j: usize| q_mat.get(i, j).clone();
    let e1 = q_mat.trace();
    let minor = |a: usize, b: usize| m(a, a).mul(&m(b, b)).sub(&m(a, b).mul(&m(b, a)));
    let e2 = minor(0, 1).add(&minor(0, 2)).add(&minor(1, 2));
    let e3 = m(0, 0)
        .mul(&minor(1, 2))
        .sub(&m(0, 1).mul(&m(1, 0).mul(&m(2, 2)).sub(&m(1, 2).mul(&m(2, 0)))))
        .add(&m(0, 2).mul(&m(1, 0).mul(&m(2, 1)).sub(&m(1, 1).mul(&m(2, 0)))));
    let q = bqd.q();
    let q2 = q.mul(q);
    let kappa = q2.inv()?.add(&K::<B>::one()).add(&q2);
    if e1 == kappa && e2 == kappa && e3.is_one() {
        return Ok(QType { tag: QTag::II, q: Some(q.clone()) });
    }
    Err(CatalogError::NotABqdQ)
}

#[cfg(test)]
mod tests;
