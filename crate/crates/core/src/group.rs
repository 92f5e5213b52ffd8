//! Semilinear group Aut(C((z))) ⋉ C((z))* acting on triples and representations, and the
//! normal forms over C[[z]].
//!
//! An element g = (φ, s) acts on functions by f ↦ (s·f)∘φ⁻¹: first the homothety, then the
//! substitution. Products follow (φ₁, s₁)·(φ₂, s₂) = (φ₁∘φ₂, (s₁∘φ₂)·s₂).

use crate::coeff::{Coeff, Subring};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::laurent::LaurentTrunc;
use crate::lie::{pochhammer_poly, poly_mul, Algebra};
use crate::lpoly::LaurentPoly;
use crate::reps::{build, chevalley_transport, classify, Family, Representation, Triple};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

type Series = LaurentTrunc;

#[derive(Clone, Debug)]
pub struct SemilinearElem {
    pub phi: Series,
    pub s: Series,
}

fn z() -> Series {
    Series::monomial(Scalar::one(), 1)
}

impl SemilinearElem {
    pub fn new(phi: Series, s: Series) -> Result<Self> {
        if phi.valuation()? != 1 {
            return Err(Error::NonInvertibleSubstitution("phi must have valuation 1".into()));
        }
        if s.valuation()? != 0 {
            return Err(Error::NonInvertible("homothety ratio must be a unit".into()));
        }
        Ok(SemilinearElem { phi, s })
    }

    pub fn identity() -> Self {
        SemilinearElem { phi: z(), s: Series::constant(Scalar::one()) }
    }

    pub fn substitution(phi: Series) -> Result<Self> {
        Self::new(phi, Series::constant(Scalar::one()))
    }

    pub fn homothety(s: Series) -> Result<Self> {
        Self::new(z(), s)
    }

    pub fn is_identity(&self) -> bool {
        self.phi.is_exact() && self.phi == z() && self.s.is_exact() && self.s == Series::constant(Scalar::one())
    }

    /// φ⁻¹, exact for the identity substitution.
    pub fn phi_inverse(&self) -> Result<Series> {
        if self.phi.is_exact() && self.phi == z() {
            return Ok(z());
        }
        self.phi.compositional_inverse()
    }

    pub fn mul(&self, o: &SemilinearElem) -> Result<SemilinearElem> {
        Ok(SemilinearElem { phi: self.phi.compose(&o.phi)?, s: self.s.compose(&o.phi)?.mul(&o.s) })
    }

    pub fn inverse(&self) -> Result<SemilinearElem> {
        let psi = self.phi_inverse()?;
        let s = self.s.compose(&psi)?.inv()?;
        Ok(SemilinearElem { phi: psi, s })
    }

    /// The action on a function: f ↦ (s·f)∘φ⁻¹.
    pub fn apply(&self, f: &Series) -> Result<Series> {
        self.s.mul(f).compose(&self.phi_inverse()?)
    }
}

/// (h, b, c) ↦ (h∘φ⁻¹, (b + (h/h′)(s′/s))∘φ⁻¹, c).
pub fn act_on_triple(g: &SemilinearElem, t: &Triple<Series>) -> Result<Triple<Series>> {
    let hp = t.h.derive();
    let shift = t.h.mul(&hp.inv()?).mul(&g.s.derive()).mul(&g.s.inv()?);
    let b = t.b.add(&shift);
    let psi = g.phi_inverse()?;
    Ok(Triple { h: t.h.compose(&psi)?, b: b.compose(&psi)?, c: t.c.clone(), lambda: t.lambda.clone() })
}

/// γ∘P∘γ⁻¹ for a single operator.
pub fn conjugate_op(g: &SemilinearElem, p: &DiffOp<Series>) -> Result<DiffOp<Series>> {
    let mut q = p.clone();
    let one = Series::constant(Scalar::one());
    if !(g.s.is_exact() && g.s == one) {
        q = DiffOp::mult(g.s.clone()).compose(&q).compose(&DiffOp::mult(g.s.inv()?));
    }
    if g.phi.is_exact() && g.phi == z() {
        return Ok(q);
    }
    // f ↦ f∘ψ turns ξ into ξ∘ψ and ∂ into (1/ψ′)∂.
    let psi = g.phi_inverse()?;
    let d = DiffOp::from_coeffs(vec![Series::zero(), psi.derive().inv()?]);
    let mut out = DiffOp::zero();
    let mut dpow = DiffOp::one();
    for (j, xi) in q.coeffs().iter().enumerate() {
        if j > 0 {
            dpow = dpow.compose(&d);
        }
        if xi.is_tracked_zero() && xi.is_exact() {
            continue;
        }
        out = out.add(&dpow.left_mul(&xi.compose(&psi)?));
    }
    Ok(out)
}

pub fn conjugate_rep(g: &SemilinearElem, r: &Representation<Series>) -> Result<Representation<Series>> {
    let images = r.images.iter().map(|(i, p)| Ok((*i, conjugate_op(g, p)?))).collect::<Result<BTreeMap<_, _>>>()?;
    let central = r.central.as_ref().map(|k| conjugate_op(g, k)).transpose()?;
    Ok(Representation { algebra: r.algebra, images, central })
}

/// The sl2 automorphism L_{−1} ↦ L_{−1}, L_0 ↦ L_0 + aL_{−1}, L_1 ↦ L_1 + 2aL_0 + a²L_{−1},
/// which moves an S1 triple to (h + a, (h + a)(b − c)/h + c, c).
pub fn shift_rep<C: Coeff>(r: &Representation<C>, a: &Scalar) -> Result<Representation<C>> {
    if r.algebra != Algebra::Sl2 {
        return Err(Error::Precondition("the shift is an automorphism of sl2 only".into()));
    }
    let m = r.image(-1)?;
    let l0 = r.image(0)?;
    let l1 = r.image(1)?;
    let two_a = a * &Scalar::from_int(2);
    let mut images = BTreeMap::new();
    images.insert(-1, m.clone());
    images.insert(0, l0.add(&m.scale(a)));
    images.insert(1, l1.add(&l0.scale(&two_a)).add(&m.scale(&(a * a))));
    Ok(Representation { algebra: Algebra::Sl2, images, central: None })
}

/// s with s(0) = 1 and s′/s = g, by coefficientwise integration.
pub fn exp_integral(g: &Series) -> Result<Series> {
    if !g.is_in(Subring::PowerSeries)? {
        return Err(Error::NoCanonicalForm("log-derivative has a pole at 0".into()));
    }
    let prec = if g.is_exact() { crate::laurent::DEFAULT_PREC } else { g.prec() + 1 };
    let n = prec.max(1) as usize;
    let gc: Vec<Scalar> = (0..n as i64).map(|e| g.coeff(e).unwrap_or_else(Scalar::zero)).collect();
    let mut s = vec![Scalar::one()];
    for k in 1..n {
        let mut acc = Scalar::zero();
        for j in 0..k {
            if !gc[j].is_zero() && !s[k - 1 - j].is_zero() {
                acc = &acc + &(&gc[j] * &s[k - 1 - j]);
            }
        }
        s.push(&acc / &Scalar::from_int(k as i64));
    }
    Ok(Series::from_terms(0, s, prec))
}

#[derive(Clone, Debug)]
pub struct NormalFormS1 {
    /// The Chevalley involution was applied first (ν(h) < 0).
    pub theta: bool,
    /// The sl2 shift a = −h(0).
    pub shift: Scalar,
    pub element: SemilinearElem,
    pub c: Scalar,
}

impl NormalFormS1 {
    pub fn canonical_triple(&self) -> Triple<Series> {
        Triple::new(z(), Series::constant(self.c.clone()), self.c.clone())
    }

    /// Undoes the reduction on the canonical images; the result should equal the input.
    pub fn reconstruct(&self) -> Result<Representation<Series>> {
        let canon = build(Family::S1, &self.canonical_triple(), 1)?;
        let back = conjugate_rep(&self.element.inverse()?, &canon)?;
        let unshifted = shift_rep(&back, &(-&self.shift))?;
        Ok(if self.theta { chevalley_transport(&unshifted, Algebra::Sl2) } else { unshifted })
    }
}

fn s1_data(r: &Representation<Series>) -> Result<Triple<Series>> {
    let cl = classify(&r.restrict_sl2()?)?;
    if cl.family != Family::S1 {
        return Err(Error::Precondition(format!("expected an S1 representation, found {}", cl.family)));
    }
    cl.triple().ok_or_else(|| Error::Degenerate("c undetermined".into()))
}

/// Reduces an S1 representation over C[[z]] to the canonical ⟨∂, z∂ − c, z²∂ − 2cz⟩.
pub fn normal_form_s1(r: &Representation<Series>) -> Result<NormalFormS1> {
    let mut cur = r.restrict_sl2()?;
    let mut t = s1_data(&cur)?;
    let theta = t.h.valuation()? < 0;
    if theta {
        cur = chevalley_transport(&cur, Algebra::Sl2);
        t = s1_data(&cur)?;
    }
    let a = -t.h.coeff(0).ok_or_else(|| Error::InsufficientPrecision("h(0) unknown".into()))?;
    if !a.is_zero() {
        cur = shift_rep(&cur, &a)?;
        t = s1_data(&cur)?;
    }
    if t.h.valuation()? != 1 {
        return Err(Error::NoCanonicalForm("h - h(0) does not have valuation 1".into()));
    }
    let sub = SemilinearElem::substitution(t.h.clone())?;
    let t1 = act_on_triple(&sub, &t)?;
    // with h = z the homothety must solve z s′/s = c − b
    let g = Series::constant(t1.c.clone()).sub(&t1.b).mul(&Series::monomial(Scalar::one(), -1));
    let s = exp_integral(&g)?;
    let hom = SemilinearElem::homothety(s)?;
    let element = hom.mul(&sub)?;
    let out = NormalFormS1 { theta, shift: a, element, c: t.c.clone() };
    let back = out.reconstruct()?;
    let input = r.restrict_sl2()?;
    for i in -1..=1 {
        if !back.image(i)?.equals_checked(input.image(i)?)? {
            return Err(Error::ConstraintViolated(format!("re-conjugation does not reproduce L_{i}")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalFormS0 {
    /// (z⁻², 1/4, −1/4)
    Case1,
    /// (z⁻¹, b, c) with b² − b − c(c+1) = 0
    Case2 { b: Scalar, kappa: Scalar },
    /// ((a + z)⁻¹, 0, c)
    Case3 { a: Scalar, kappa: Scalar, c_candidates: Vec<Scalar> },
}

/// Canonical form of an S0 representation over C[[z]], read off from ν(h).
pub fn normal_form_s0(r: &Representation<Series>) -> Result<NormalFormS0> {
    let cl = classify(&r.restrict_sl2()?)?;
    if cl.family != Family::S0 {
        return Err(Error::Precondition(format!("expected an S0 representation, found {}", cl.family)));
    }
    let kappa = cl.kappa.clone();
    match cl.h.valuation()? {
        -2 => {
            if kappa != Scalar::from_frac(-3, 16) {
                return Err(Error::ConstraintViolated(format!("c(c+1) = {kappa}, expected -3/16")));
            }
            Ok(NormalFormS0::Case1)
        }
        -1 => {
            let b = cl.b.coeff(0).ok_or_else(|| Error::InsufficientPrecision("b(0) unknown".into()))?;
            if !(&(&(&b * &b) - &b) - &kappa).is_zero() {
                return Err(Error::ConstraintViolated(format!("b = {b} violates b^2 - b - c(c+1) = 0")));
            }
            Ok(NormalFormS0::Case2 { b, kappa })
        }
        0 => {
            let h0 = cl.h.coeff(0).ok_or_else(|| Error::InsufficientPrecision("h(0) unknown".into()))?;
            Ok(NormalFormS0::Case3 { a: h0.inv()?, kappa, c_candidates: cl.c_candidates })
        }
        v => Err(Error::ValuationOutOfRange(format!("valuation of h is {v}, expected -2, -1 or 0"))),
    }
}

/// Free term A and z∂-coefficient B of z²ρ(L_2) for the triple (z⁻¹, b, ·) with branch λ.
pub fn witt_line_obstructions(b: &Scalar, lambda: &Scalar) -> Result<(Scalar, Scalar)> {
    let l = DiffOp::from_coeffs(vec![LaurentPoly::constant(b.clone()), LaurentPoly::monomial(Scalar::one(), 1)]);
    let shift = &(-lambda) - &Scalar::from_int(2);
    let p = poly_mul(&[lambda * &Scalar::from_int(2), Scalar::one()], &pochhammer_poly(&shift, 2)?);
    let op = DiffOp::poly_in(&l, &p);
    Ok((op.coeff(0).coeff(0), op.coeff(1).coeff(1)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum WittLineForm {
    /// (a + z, 0, c)
    R1 { a: Scalar, c: Scalar },
    /// (z⁻¹, b₀, c) with branch λ
    R0Pole { b0: Scalar, lambda: Scalar, kappa: Scalar },
    /// ((a + z)⁻¹, 0, c) with branch λ
    R0Regular { a: Scalar, lambda: Scalar, kappa: Scalar },
}

/// Canonical type of a Witt_> representation whose images preserve C[[z]].
pub fn classify_witt_over_powerseries(r: &Representation<Series>) -> Result<WittLineForm> {
    if r.algebra != Algebra::WittPos {
        return Err(Error::Precondition(format!("expected a Witt_> representation, got {}", r.algebra)));
    }
    // report the top-order offending term of the first offending image
    for (i, p) in &r.images {
        for (j, xi) in p.coeffs().iter().enumerate().rev() {
            if !xi.is_in(Subring::PowerSeries)? {
                let v = xi.valuation()?;
                let lead = xi.coeff(v).unwrap_or_else(Scalar::zero);
                return Err(Error::NoCanonicalForm(format!(
                    "rho(L_{i}) does not preserve C[[z]]: term ({lead})*z^{v}*d^{j}"
                )));
            }
        }
    }
    let cl = classify(r)?;
    match cl.family {
        Family::R1 => {
            let a = cl.h.coeff(0).ok_or_else(|| Error::InsufficientPrecision("h(0) unknown".into()))?;
            let c = cl.c.clone().ok_or_else(|| Error::Degenerate("c undetermined".into()))?;
            Ok(WittLineForm::R1 { a, c })
        }
        Family::R0 => {
            let lambda = cl.lambda.clone().ok_or_else(|| Error::AmbiguousBranch("lambda undetermined".into()))?;
            match cl.h.valuation()? {
                -1 => {
                    let b0 = cl.b.coeff(0).ok_or_else(|| Error::InsufficientPrecision("b(0) unknown".into()))?;
                    let (a_obs, b_obs) = witt_line_obstructions(&b0, &lambda)?;
                    if !a_obs.is_zero() || !b_obs.is_zero() {
                        return Err(Error::NoCanonicalForm(format!("obstructions A = {a_obs}, B = {b_obs}")));
                    }
                    Ok(WittLineForm::R0Pole { b0, lambda, kappa: cl.kappa })
                }
                0 => {
                    let h0 = cl.h.coeff(0).ok_or_else(|| Error::InsufficientPrecision("h(0) unknown".into()))?;
                    Ok(WittLineForm::R0Regular { a: h0.inv()?, lambda, kappa: cl.kappa })
                }
                v => Err(Error::NoCanonicalForm(format!("valuation of h is {v}"))),
            }
        }
        f => Err(Error::NoCanonicalForm(format!("family {f} has no C[[z]] form on Witt_>"))),
    }
}
