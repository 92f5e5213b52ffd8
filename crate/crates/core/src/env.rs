//! The enveloping-algebra map U(g) → Diff(V).

use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::{pochhammer_poly, poly_mul, PbwMonomial};
use crate::linalg::{determinant, rref};
use crate::reps::{first_order_l, Representation, Triple};
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Finite combination of words L_{i₁}L_{i₂}⋯ in Witt generators.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EnvElement {
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl EnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(s: Scalar) -> Self {
        Self::word(Vec::new(), s)
    }

    pub fn word(w: Vec<i64>, s: Scalar) -> Self {
        let mut e = Self::zero();
        e.push(w, s);
        e
    }

    pub fn pbw(m: PbwMonomial) -> Self {
        Self::word(m.word(), Scalar::one())
    }

    fn push(&mut self, w: Vec<i64>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(Scalar::zero);
        *slot = &*slot + &s;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, s) in &o.terms {
            out.push(w.clone(), s.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.push(w.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Scalar::from_int(-1)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, a) in &self.terms {
            for (w2, b) in &o.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.push(w, a * b);
            }
        }
        out
    }

    /// PBW normal form: every word with non-increasing indices, via L_iL_j = L_jL_i + (i−j)L_{i+j}.
    pub fn pbw_normal(&self) -> Self {
        let mut out = Self::zero();
        let mut work: Vec<(Vec<i64>, Scalar)> = self.terms.iter().map(|(w, s)| (w.clone(), s.clone())).collect();
        while let Some((w, s)) = work.pop() {
            match w.windows(2).position(|p| p[0] < p[1]) {
                None => out.push(w, s),
                Some(k) => {
                    let (i, j) = (w[k], w[k + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(k, k + 1);
                    work.push((swapped, s.clone()));
                    let mut merged = w[..k].to_vec();
                    merged.push(i + j);
                    merged.extend_from_slice(&w[k + 2..]);
                    work.push((merged, &s * &Scalar::from_int(i - j)));
                }
            }
        }
        out
    }

    /// Exponents (α, β, γ) when this is a single sl2 PBW monomial with coefficient 1.
    pub fn as_pbw(&self) -> Option<PbwMonomial> {
        let (w, s) = self.terms.iter().next().filter(|_| self.terms.len() == 1)?;
        if !s.is_one() {
            return None;
        }
        let count = |x: i64| w.iter().filter(|&&i| i == x).count() as u32;
        let m = PbwMonomial::new(count(1), count(0), count(-1));
        (m.word() == *w).then_some(m)
    }
}

impl fmt::Display for EnvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, s)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({s})")?;
            for i in w {
                write!(f, "*L[{i}]")?;
            }
        }
        Ok(())
    }
}

/// 4((L₀ − 1/2)² − L₋₁L₁) in PBW form: 4L₀² + 4L₀ + 1 − 4L₁L₋₁.
pub fn casimir_element() -> EnvElement {
    let four = Scalar::from_int(4);
    EnvElement::word(vec![0, 0], four.clone())
        .add(&EnvElement::word(vec![0], four.clone()))
        .add(&EnvElement::scalar(Scalar::one()))
        .add(&EnvElement::word(vec![1, -1], -&four))
}

pub fn env_image<C: Coeff>(e: &EnvElement, r: &Representation<C>) -> Result<DiffOp<C>> {
    let mut acc = DiffOp::zero();
    for (w, s) in e.terms() {
        let mut op = DiffOp::one();
        for i in w {
            op = op.compose(r.image(*i)?);
        }
        acc = acc.add(&op.scale(s));
    }
    Ok(acc)
}

/// ρ(L₁^α L₀^β L₋₁^γ) = h^{α−γ} P(L+c−α+γ+1, α) (L+γ)^β P(L−c, γ) for a first-order triple.
pub fn pbw_image_first_order<C: Coeff>(m: PbwMonomial, t: &Triple<C>) -> Result<DiffOp<C>> {
    let (a, b, g) = (m.a as i64, m.b as i64, m.c as i64);
    let l = first_order_l(&t.h, &t.b)?;
    let p1 = pochhammer_poly(&(&t.c + &Scalar::from_int(1 - a + g)), a)?;
    let mut mid = vec![Scalar::one()];
    for _ in 0..b {
        mid = poly_mul(&mid, &[Scalar::from_int(g), Scalar::one()]);
    }
    let p3 = pochhammer_poly(&(-&t.c), g)?;
    let poly = poly_mul(&poly_mul(&p1, &mid), &p3);
    Ok(DiffOp::poly_in(&l, &poly).left_mul(&t.h.powi(a - g)?))
}

/// ρ(C − (2c+1)²) = 0.
pub fn kernel_check<C: Coeff>(r: &Representation<C>, c: &Scalar) -> Result<bool> {
    let two_c1 = &(c * &Scalar::from_int(2)) + &Scalar::one();
    let e = casimir_element().sub(&EnvElement::scalar(&two_c1 * &two_c1));
    env_image(&e, r)?.is_zero_checked()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessTarget {
    ZPow(i64),
    D,
}

/// The three words L₋₁L_{k+1}, L₀L_k, L₁L_{k−1}.
fn quadratic_words(k: i64) -> [Vec<i64>; 3] {
    [vec![-1, k + 1], vec![0, k], vec![1, k - 1]]
}

/// ρ(L_a)ρ(L_j) = h^{a+j} p_a(L − j) p_j(L); returns the polynomial part in L.
fn product_poly(p: &dyn Fn(i64) -> Result<Vec<Scalar>>, a: i64, j: i64) -> Result<Vec<Scalar>> {
    let pa = p(a)?;
    // p_a(X − j) by Horner
    let mut shifted = vec![Scalar::zero()];
    for coef in pa.iter().rev() {
        shifted = poly_mul(&shifted, &[Scalar::from_int(-j), Scalar::one()]);
        shifted[0] = &shifted[0] + coef;
    }
    Ok(poly_mul(&shifted, &p(j)?))
}

/// Coefficients x with Σ x_m ρ(words_m) = h^k t(L).
fn solve_quadratic(
    p: &dyn Fn(i64) -> Result<Vec<Scalar>>,
    k: i64,
    target: &[Scalar],
) -> Result<EnvElement> {
    let words = quadratic_words(k);
    let polys: Vec<Vec<Scalar>> = words.iter().map(|w| product_poly(p, w[0], w[1])).collect::<Result<_>>()?;
    let deg = polys.iter().map(Vec::len).chain([target.len()]).max().unwrap_or(0);
    let at = |v: &[Scalar], d: usize| v.get(d).cloned().unwrap_or_else(Scalar::zero);
    let mut m: Vec<Vec<Scalar>> = (0..deg)
        .map(|d| {
            let mut row: Vec<Scalar> = polys.iter().map(|q| at(q, d)).collect();
            row.push(at(target, d));
            row
        })
        .collect();
    let pivots = rref(&mut m, 4);
    if pivots.contains(&3) || pivots.len() < 3 {
        return Err(Error::Degenerate(format!("no unique quadratic witness for k = {k}")));
    }
    let mut out = EnvElement::zero();
    for (r, w) in words.into_iter().enumerate() {
        out.push(w, m[r][3].clone());
    }
    Ok(out)
}

/// The matrix of q₁, q₂, q₃ for a first-order triple has determinant 2c(c+1).
fn first_order_det(c: &Scalar, k: i64) -> Result<Scalar> {
    let p = |i: i64| Ok(vec![c * &Scalar::from_int(i), Scalar::one()]);
    let rows: Vec<Vec<Scalar>> = quadratic_words(k)
        .iter()
        .map(|w| product_poly(&p, w[0], w[1]))
        .collect::<Result<_>>()?;
    let mt: Vec<Vec<Scalar>> = (0..3).map(|d| rows.iter().map(|q| q.get(d).cloned().unwrap_or_else(Scalar::zero)).collect()).collect();
    Ok(determinant(&mt))
}

/// z^e when the element is exactly a monomial z^{±1}.
fn unit_exponent<C: Coeff>(h: &C) -> Option<i64> {
    match h.laurent_terms()?.as_slice() {
        [(e, s)] if s.is_one() && e.abs() == 1 => Some(*e),
        _ => None,
    }
}

/// Element of U(Witt) mapping to z^k or ∂ under a first-order representation with h = z^{±1}.
pub fn surjectivity_witness<C: Coeff>(
    r: &Representation<C>,
    t: &Triple<C>,
    target: WitnessTarget,
) -> Result<EnvElement> {
    let e = unit_exponent(&t.h).ok_or_else(|| Error::Precondition("h must be z or 1/z".into()))?;
    let c = t.c.clone();
    let p = move |i: i64| Ok(vec![&c * &Scalar::from_int(i), Scalar::one()]);
    let power = |k: i64| -> Result<EnvElement> {
        if first_order_det(&t.c, k)?.is_zero() {
            return Err(Error::CasimirOne);
        }
        solve_quadratic(&p, k, &[Scalar::one()])
    };
    let (w, expect) = match target {
        WitnessTarget::ZPow(k) => (power(k * e)?, DiffOp::mult(C::z_pow(k)?)),
        WitnessTarget::D => {
            if e != 1 {
                return Err(Error::Precondition("the derivation witness needs h = z".into()));
            }
            // ρ(L₋₁) = −∂ + (b − c)/z
            let rest = t.b.sub(&C::from_scalar(t.c.clone()));
            let terms = rest.laurent_terms().ok_or_else(|| Error::NotInRing("b must be a polynomial".into()))?;
            let mut w = EnvElement::word(vec![-1], Scalar::from_int(-1));
            for (deg, s) in terms {
                if deg < 1 {
                    return Err(Error::ConstraintViolated("b(0) must equal c".into()));
                }
                w = w.add(&power(deg - 1)?.scale(&s));
            }
            (w, DiffOp::d())
        }
    };
    if !env_image(&w, r)?.equals_checked(&expect)? {
        return Err(Error::ConstraintViolated("witness does not expand to the target".into()));
    }
    Ok(w)
}

/// Element of U(Witt_>) mapping to h^k P(L − λ − k, k) for the triple (1/z, b, c) with branch λ.
pub fn surjectivity_witness_r0<C: Coeff>(r: &Representation<C>, t: &Triple<C>, k: i64) -> Result<EnvElement> {
    let lambda = t.check_branch()?;
    let kappa = &t.c * &(&t.c + &Scalar::one());
    let b0 = t
        .b
        .laurent_terms()
        .ok_or_else(|| Error::NotInRing("b must be a polynomial".into()))?
        .into_iter()
        .find(|(e, _)| *e == 0)
        .map(|(_, s)| s)
        .unwrap_or_else(Scalar::zero);
    if !(&(&(&b0 * &b0) - &b0) - &kappa).is_zero() {
        return Err(Error::ConstraintViolated(format!("b(0) = {b0} violates b(0)^2 - b(0) - c(c+1) = 0")));
    }
    if kappa.is_zero() {
        return Err(Error::CasimirOne);
    }
    let lam = lambda.clone();
    let p = move |i: i64| -> Result<Vec<Scalar>> {
        Ok(match i {
            -1 => vec![Scalar::one()],
            0 => vec![Scalar::zero(), Scalar::one()],
            _ => poly_mul(
                &[&lam * &Scalar::from_int(i), Scalar::one()],
                &pochhammer_poly(&(&(-&lam) - &Scalar::from_int(i)), i)?,
            ),
        })
    };
    let target = pochhammer_poly(&(&(-&lambda) - &Scalar::from_int(k)), k)?;
    let w = solve_quadratic(&p, k, &target)?;
    let l = first_order_l(&t.h, &t.b)?;
    let expect = DiffOp::poly_in(&l, &target).left_mul(&t.h.powi(k)?);
    let got = env_image(&w, r)?;
    if !got.equals_checked(&expect)? {
        return Err(Error::ConstraintViolated("witness does not expand to the target".into()));
    }
    Ok(w)
}
