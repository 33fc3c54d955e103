use super::{verify_coh, Bqd, BqdError, K};
use crate::linalg::{inverse, Mat};
use crate::scalars::{BaseField, Field};

fn ensure_valid<B: BaseField>(out: Bqd<B>) -> Result<Bqd<B>, BqdError> {
    let first = verify_coh(&out).failures().next().map(|c| c.id.clone());
    match first {
        None => Ok(out),
        Some(id) => Err(BqdError::AxiomViolation(id)),
    }
}

/// Conjugate every tensor by `gV` on `V` and `gW` on `W`.
///
/// The input is not required to satisfy the axioms, and no re-verification
/// is done: the transport is an exact change of basis.
pub fn apply_base_change<B: BaseField>(
    bqd: &Bqd<B>,
    gv: &Mat<K<B>>,
    gw: &Mat<K<B>>,
) -> Result<Bqd<B>, BqdError> {
    if gv.shape() != (3, 3) || gw.shape() != (3, 3) {
        return Err(BqdError::SingularMatrix);
    }
    let gvi = inverse(gv).map_err(|_| BqdError::SingularMatrix)?;
    let gwi = inverse(gw).map_err(|_| BqdError::SingularMatrix)?;
    let [a_up, a, b_up, b, c_up, c, d_up, d] = bqd.mats();
    let mats = [
        gw.mul(&a_up).mul(&gvi.kron(&gvi)),
        gv.kron(gv).mul(&a).mul(&gwi),
        gv.mul(&b_up).mul(&gwi.kron(&gwi)),
        gw.kron(gw).mul(&b).mul(&gvi),
        c_up.mul(&gwi.kron(&gvi)),
        gv.kron(gw).mul(&c),
        d_up.mul(&gvi.kron(&gwi)),
        gw.kron(gv).mul(&d),
    ];
    Bqd::from_mats(bqd.name(), bqd.q().clone(), bqd.omega().clone(), mats)
}

/// The two-parameter rescaling `(μ, σ)`; the result is re-verified.
pub fn apply_rescale<B: BaseField>(bqd: &Bqd<B>, mu: &K<B>, sigma: &K<B>) -> Result<Bqd<B>, BqdError> {
    if mu.is_zero() || sigma.is_zero() {
        return Err(BqdError::ZeroScale);
    }
    let mi = mu.inv()?;
    let si = sigma.inv()?;
    let [a_up, a, b_up, b, c_up, c, d_up, d] = bqd.mats();
    let mats = [
        a_up.scale(mu),
        a.scale(&mi),
        b_up.scale(&sigma.mul(&mi)),
        b.scale(&mu.mul(&si)),
        c_up.scale(sigma),
        c.scale(&si),
        d_up.scale(sigma),
        d.scale(&si),
    ];
    let out = Bqd::from_mats(bqd.name(), bqd.q().clone(), bqd.omega().clone(), mats)?;
    if verify_coh(bqd).all_pass() {
        ensure_valid(out)
    } else {
        Ok(out)
    }
}

/// Exchange the roles of `V` and `W`.
pub fn dynkin_flip<B: BaseField>(bqd: &Bqd<B>) -> Bqd<B> {
    let [a_up, a, b_up, b, c_up, c, d_up, d] = bqd.mats();
    Bqd::from_mats(bqd.name(), bqd.q().clone(), bqd.omega().clone(), [b_up, b, a_up, a, d_up, d, c_up, c])
        .expect("flip preserves shapes")
}
