use super::{as3, eye, Bqd, K};
use crate::linalg::{Factor, Mat, Signature, TMap};
use crate::scalars::{derived_constants, BaseField, Field, ScalarError};

/// Maps and constants derived from the structure tensors.
#[allow(non_snake_case)]
#[derive(Clone, Debug)]
pub struct Derived<B: BaseField> {
    /// `(A,1)(1,a) : V⊗W → W⊗V`
    pub F: TMap<K<B>>,
    /// `(1,A)(a,1) : W⊗V → V⊗W`
    pub G: TMap<K<B>>,
    /// `q − (q+q⁻¹)aA` on `V⊗V`
    pub R: TMap<K<B>>,
    /// `q⁻¹ − (q⁻¹+q)bB` on `W⊗W`
    pub Rstar: TMap<K<B>>,
    /// `c♭D♯`
    pub Q: TMap<K<B>>,
    /// `d♭C♯`
    pub Qinv: TMap<K<B>>,
    /// The `W`-side analogue `d` contracted against `C`.
    pub QW: TMap<K<B>>,
    pub QWinv: TMap<K<B>>,
    /// `C(A,1) : V⊗V⊗V → 1`
    pub E: TMap<K<B>>,
    /// `(1,a)c : 1 → V⊗V⊗V`
    pub e: TMap<K<B>>,
    pub kappa: K<B>,
    pub rho: K<B>,
}

fn tm<B: BaseField>(dom: &[Factor], cod: &[Factor], m: Mat<K<B>>) -> TMap<K<B>> {
    TMap::new(Signature::new(dom.iter().copied()), Signature::new(cod.iter().copied()), m)
        .expect("derived map shape")
}

/// Compute every derived map. Only shapes are assumed, not the axioms.
pub fn make_derived<B: BaseField>(bqd: &Bqd<B>) -> Result<Derived<B>, ScalarError> {
    use Factor::{V, W};
    let i3 = eye::<B>(3);
    let q = bqd.q();
    let qi = q.inv()?;
    let qq = q.add(&qi);
    let (kappa, rho) = derived_constants(q)?;

    let f = bqd.A().kron(&i3).mul(&i3.kron(bqd.a()));
    let g = i3.kron(bqd.A()).mul(&bqd.a().kron(&i3));
    let r = Mat::scalar(9, q).sub(&bqd.a().mul(bqd.A()).scale(&qq));
    let rs = Mat::scalar(9, &qi).sub(&bqd.b().mul(bqd.B()).scale(&qq));

    let (cm, cc, dm, dd) = (as3(bqd.c()), as3(bqd.C()), as3(bqd.d()), as3(bqd.D()));
    let qv = cm.mul(&dd.transpose());
    let qvi = dm.transpose().mul(&cc);
    let qw = dm.mul(&cc.transpose());
    let qwi = cm.transpose().mul(&dd);

    let big_e = bqd.C().mul(&bqd.A().kron(&i3));
    let small_e = i3.kron(bqd.a()).mul(bqd.c());

    Ok(Derived {
        F: tm(&[V, W], &[W, V], f),
        G: tm(&[W, V], &[V, W], g),
        R: tm(&[V, V], &[V, V], r),
        Rstar: tm(&[W, W], &[W, W], rs),
        Q: tm(&[V], &[V], qv),
        Qinv: tm(&[V], &[V], qvi),
        QW: tm(&[W], &[W], qw),
        QWinv: tm(&[W], &[W], qwi),
        E: tm(&[V, V, V], &[], big_e),
        e: tm(&[], &[V, V, V], small_e),
        kappa,
        rho,
    })
}
