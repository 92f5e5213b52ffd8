use super::verify::verify_brackets;
use super::Representation;
use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::Algebra;
use crate::par::Strategy;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct CompanionResult<C: Coeff> {
    /// Distinct roots α of q₂α² + q₁α = 0, zero first.
    pub roots: Vec<Scalar>,
    pub double_root: bool,
    /// Linear and quadratic operator coefficients of the residual.
    pub q1: DiffOp<C>,
    pub q2: DiffOp<C>,
    /// One extension per root, rebuilt up to the requested index.
    pub extensions: Vec<Representation<C>>,
    /// Whether each extension passed the bracket sweep.
    pub verified: Vec<bool>,
}

fn ad<C: Coeff>(x: &DiffOp<C>, y: &DiffOp<C>) -> DiffOp<C> {
    x.bracket(y)
}

/// ρ′(L_{i+2}) = ((−1)^i / i!) ad(ρ(L_1))^i ρ′(L_2).
fn extend<C: Coeff>(rep: &Representation<C>, l2: &DiffOp<C>, max: i64) -> Result<Representation<C>> {
    let l1 = rep.image(1)?;
    let mut images = BTreeMap::new();
    for i in -1..=1 {
        images.insert(i, rep.image(i)?.clone());
    }
    let mut cur = l2.clone();
    let mut fact = Scalar::one();
    images.insert(2, cur.clone());
    for i in 1..=(max - 2) {
        cur = ad(l1, &cur);
        fact = &fact * &Scalar::from_int(i);
        let sign = if i % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
        images.insert(i + 2, cur.scale(&(&sign / &fact)));
    }
    Ok(Representation { algebra: Algebra::WittPos, images, central: None })
}

/// Scalar r with a = r·b coefficientwise, if one exists.
fn scalar_ratio<C: Coeff>(a: &DiffOp<C>, b: &DiffOp<C>) -> Result<Option<Scalar>> {
    let mut ratio: Option<Scalar> = None;
    let n = a.coeffs().len().max(b.coeffs().len());
    for j in 0..n {
        let (x, y) = (a.coeff(j), b.coeff(j));
        if y.is_zero_checked()? {
            if !x.is_zero_checked()? {
                return Ok(None);
            }
            continue;
        }
        let Some(r) = x.div(&y)?.as_scalar() else { return Ok(None) };
        match &ratio {
            Some(prev) if *prev != r => return Ok(None),
            Some(_) => {}
            None => ratio = Some(r),
        }
    }
    Ok(ratio)
}

/// Deformations ρ′(L_2) = ρ(L_2) + αh² of an R0 representation compatible with
/// [ρ′(L_2), ρ′(L_3)] = −ρ′(L_5).
pub fn companion_extension<C: Coeff>(rep: &Representation<C>, h: &C, max: i64) -> Result<CompanionResult<C>> {
    if rep.algebra != Algebra::WittPos {
        return Err(Error::Precondition("companion extension needs a Witt_> representation".into()));
    }
    let l1 = rep.image(1)?;
    let a2 = rep.image(2)?.clone();
    let hh = DiffOp::mult(h.mul(h));
    let a3 = ad(l1, &a2).neg();
    let h3 = ad(l1, &hh).neg();
    let sixth = Scalar::from_frac(-1, 6);
    let a5 = ad(l1, &ad(l1, &a3)).scale(&Scalar::from_int(-1)).scale(&sixth);
    let h5 = ad(l1, &ad(l1, &h3)).scale(&Scalar::from_int(-1)).scale(&sixth);
    let r0 = ad(&a2, &a3).add(&a5);
    if !r0.is_zero_checked()? {
        return Err(Error::Precondition("input images do not satisfy [L_2, L_3] = -L_5".into()));
    }
    let q1 = ad(&a2, &h3).add(&ad(&hh, &a3)).add(&h5);
    let q2 = ad(&hh, &h3);

    let q1_zero = q1.is_zero_checked()?;
    let q2_zero = q2.is_zero_checked()?;
    let (roots, double_root) = match (q1_zero, q2_zero) {
        (true, true) => {
            return Err(Error::Degenerate("residual vanishes identically in alpha".into()));
        }
        (true, false) => (vec![Scalar::zero()], true),
        (false, true) => (vec![Scalar::zero()], false),
        (false, false) => match scalar_ratio(&q1, &q2)? {
            Some(r) => (vec![Scalar::zero(), -r], false),
            None => {
                return Err(Error::RootNotInField(format!(
                    "q2 alpha^2 + q1 alpha = 0 with q1 = {}, q2 = {} not proportional",
                    q1,
                    q2
                )))
            }
        },
    };

    let mut extensions = Vec::new();
    let mut verified = Vec::new();
    for a in &roots {
        let ext = extend(rep, &a2.add(&hh.scale(a)), max)?;
        verified.push(verify_brackets(&ext, max, Strategy::default()).all_pass());
        extensions.push(ext);
    }
    Ok(CompanionResult { roots, double_root, q1, q2, extensions, verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{build, Family, Triple};
    use crate::ratfunc::RatFunc;

    #[test]
    fn second_root_is_the_other_branch() {
        let c = Scalar::param("c");
        let h = RatFunc::z().add(&RatFunc::z_pow(2));
        let b = RatFunc::constant(Scalar::from_frac(1, 3));
        let t = Triple::new(h.clone(), b.clone(), c.clone()).with_lambda(c.clone());
        let rep = build(Family::R0, &t, 2).unwrap();
        let res = companion_extension(&rep, &h, 6).unwrap();
        assert_eq!(res.roots.len(), 2);
        assert!(res.roots[0].is_zero());
        let other = Triple::new(h.clone(), b, c.clone()).with_lambda(&(-&c) - &Scalar::one());
        let rep2 = build(Family::R0, &other, 6).unwrap();
        assert_eq!(res.extensions[1].images[&2], rep2.images[&2]);
        assert!(res.verified.iter().all(|v| *v));
    }

    #[test]
    fn half_is_a_double_root() {
        let c = Scalar::from_frac(-1, 2);
        let h = RatFunc::z();
        let t = Triple::new(h.clone(), RatFunc::zero(), c.clone()).with_lambda(c);
        let rep = build(Family::R0, &t, 2).unwrap();
        let res = companion_extension(&rep, &h, 6).unwrap();
        assert!(res.double_root);
        assert_eq!(res.roots, vec![Scalar::zero()]);
    }
}
