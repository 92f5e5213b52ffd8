//! Automorphisms of the polynomial Weyl algebra and the transport z ↦ −q²∂_q, ∂ ↦ −1/q.

use crate::coeff::{Coeff, Subring};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::Algebra;
use crate::lpoly::LaurentPoly;
use crate::reps::{build_with_algebra, classify, Classification, Family, Representation, Triple};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

type Op = DiffOp<LaurentPoly>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeylKind {
    /// z ↦ z, ∂ ↦ αz^n + ∂
    Phi,
    /// z ↦ z + α∂^n, ∂ ↦ ∂
    PhiPrime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeylAuto {
    pub kind: WeylKind,
    pub n: u32,
    pub alpha: Scalar,
}

fn zpow(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(Scalar::one(), k)
}

/// Σ_{j,k} a_{jk} Z^k ∘ D^j for P = Σ_j (Σ_k a_{jk} z^k) ∂^j with polynomial coefficients.
fn substitute(p: &Op, zimg: &Op, dimg: &Op) -> Result<Op> {
    let mut zpows: Vec<Op> = vec![DiffOp::one()];
    let mut out = DiffOp::zero();
    let mut dpow = DiffOp::one();
    for (j, xi) in p.coeffs().iter().enumerate() {
        if j > 0 {
            dpow = dpow.compose(dimg);
        }
        if xi.is_zero() {
            continue;
        }
        if !xi.is_in(Subring::Polynomials)? {
            return Err(Error::NotInRing("coefficients must be polynomials in z".into()));
        }
        for (k, a) in xi.terms() {
            let k = *k as usize;
            while zpows.len() <= k {
                let next = zpows.last().unwrap().compose(zimg);
                zpows.push(next);
            }
            out = out.add(&zpows[k].compose(&dpow).scale(a));
        }
    }
    Ok(out)
}

pub fn apply_weyl_auto(w: &WeylAuto, p: &Op) -> Result<Op> {
    let z = DiffOp::mult(zpow(1));
    let d = DiffOp::d();
    let (zi, di) = match w.kind {
        WeylKind::Phi => (z, d.add(&DiffOp::mult(zpow(w.n as i64).scale(&w.alpha)))),
        WeylKind::PhiPrime => (z.add(&DiffOp::d().pow(w.n).scale(&w.alpha)), d),
    };
    substitute(p, &zi, &di)
}

/// z ↦ −q²∂_q, ∂ ↦ −1/q, with z^a∂^b sent to (−q²∂_q)^a ∘ (−1/q)^b.
pub fn fourier_transport(p: &Op) -> Result<Op> {
    let zq = DiffOp::term(zpow(2).scale(&Scalar::from_int(-1)), 1);
    let dq = DiffOp::mult(zpow(-1).scale(&Scalar::from_int(-1)));
    substitute(p, &zq, &dq)
}

/// ρ̂(L_i) = (−q²∂_q)^{i+1}∘(1/q) + (b(−q²∂_q) + ic)∘(−q²∂_q)^i, the transport of the first-order
/// family (z, b, c). L_{−1} needs b(0) = c.
pub fn build_hat_rep(b: &LaurentPoly, c: &Scalar, lo: i64, hi: i64) -> Result<Representation<LaurentPoly>> {
    if !b.is_polynomial() {
        return Err(Error::NotInRing("b must be a polynomial".into()));
    }
    if lo < -1 {
        return Err(Error::OutOfSupport { index: lo, algebra: Algebra::WittPos.to_string() });
    }
    if lo == -1 && b.coeff(0) != *c {
        return Err(Error::Precondition(format!("rho(L_-1) needs b(0) = c, got b(0) = {}", b.coeff(0))));
    }
    let t = Triple::new(zpow(1), b.clone(), c.clone());
    let max = lo.abs().max(hi.abs());
    let src = build_with_algebra(Family::R1, Algebra::Witt, &t, max)?;
    let mut images = BTreeMap::new();
    for i in lo..=hi {
        images.insert(i, fourier_transport(src.image(i)?)?);
    }
    Ok(Representation { algebra: Algebra::WittPos, images, central: None })
}

/// Classification of a transported family; only first-order ρ̂(L_0) is covered.
pub fn classify_hat(r: &Representation<LaurentPoly>) -> Result<Classification<LaurentPoly>> {
    let n0 = r.image(0)?.order().unwrap_or(0);
    if n0 != 1 {
        return Err(Error::OrderViolation(format!("order of rho(L_0) is {n0}; the classification needs order 1")));
    }
    classify(r)
}
