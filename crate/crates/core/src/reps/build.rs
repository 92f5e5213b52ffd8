use super::{Family, Representation, Triple};
use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::{chevalley, pochhammer_poly, poly_mul, Algebra};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// L = −(h/h′)∂ + b, the image of L_0.
pub fn first_order_l<C: Coeff>(h: &C, b: &C) -> Result<DiffOp<C>> {
    let hp = h.derive();
    if hp.is_zero() {
        return Err(Error::ZeroDerivative);
    }
    let a0 = h.mul(&hp.inv()?).neg();
    Ok(DiffOp::from_coeffs(vec![b.clone(), a0]))
}

fn h_pow<C: Coeff>(h: &C, i: i64) -> Result<C> {
    h.powi(i).map_err(|e| match e {
        Error::InsufficientPrecision(_) => e,
        _ => Error::NonInvertibleH,
    })
}

/// Builds the images of L_i for i in the algebra's support ∩ [−max, max].
pub fn build<C: Coeff>(family: Family, t: &Triple<C>, max: i64) -> Result<Representation<C>> {
    build_with_algebra(family, family.default_algebra(), t, max)
}

pub fn build_with_algebra<C: Coeff>(
    family: Family,
    algebra: Algebra,
    t: &Triple<C>,
    max: i64,
) -> Result<Representation<C>> {
    let shape = family.sl2_shape();
    let allowed = match shape {
        Family::S1 => true,
        Family::S0 => matches!(algebra, Algebra::Sl2 | Algebra::WittPos),
        _ => matches!(algebra, Algebra::Sl2 | Algebra::WittNeg),
    };
    if !allowed {
        return Err(Error::Precondition(format!("family {family} does not extend to {algebra}")));
    }
    let lambda = if algebra == Algebra::Sl2 || shape == Family::S1 { None } else { Some(t.check_branch()?) };
    let mut rep = match shape {
        Family::S1 => build_first_order(algebra, t, max)?,
        Family::S0 => build_positive(algebra, t, lambda.as_ref(), max)?,
        _ => build_negative(algebra, t, lambda.as_ref(), max)?,
    };
    if algebra == Algebra::Vir {
        rep.central = Some(DiffOp::zero());
    }
    Ok(rep)
}

/// R0 images with an arbitrary λ (no branch check); used for negative controls.
pub fn build_lambda_unchecked<C: Coeff>(t: &Triple<C>, lambda: &Scalar, max: i64) -> Result<Representation<C>> {
    build_positive(Algebra::WittPos, t, Some(lambda), max)
}

/// ρ(L_i) = h^i (L + i c).
fn build_first_order<C: Coeff>(algebra: Algebra, t: &Triple<C>, max: i64) -> Result<Representation<C>> {
    let l = first_order_l(&t.h, &t.b)?;
    let mut images = BTreeMap::new();
    for i in algebra.window(max) {
        let hi = h_pow(&t.h, i)?;
        let shifted = l.add(&DiffOp::scalar(&t.c * &Scalar::from_int(i)));
        images.insert(i, shifted.left_mul(&hi));
    }
    Ok(Representation { algebra, images, central: None })
}

/// Powers L^0..=L^n.
fn l_powers<C: Coeff>(l: &DiffOp<C>, n: usize) -> Vec<DiffOp<C>> {
    let mut v = vec![DiffOp::one()];
    for k in 1..=n {
        let next = v[k - 1].compose(l);
        v.push(next);
    }
    v
}

fn eval_poly<C: Coeff>(powers: &[DiffOp<C>], p: &[Scalar]) -> DiffOp<C> {
    let mut acc = DiffOp::zero();
    for (k, a) in p.iter().enumerate() {
        if !a.is_zero() {
            acc = acc.add(&powers[k].scale(a));
        }
    }
    acc
}

/// Coefficients of (X + iλ) P(X − λ − i, i).
fn positive_poly(lambda: &Scalar, i: i64) -> Result<Vec<Scalar>> {
    let shift = &(-lambda) - &Scalar::from_int(i);
    let p = pochhammer_poly(&shift, i)?;
    Ok(poly_mul(&[lambda * &Scalar::from_int(i), Scalar::one()], &p))
}

/// S0 on sl2, or R0 on Witt_> with branch λ.
fn build_positive<C: Coeff>(
    algebra: Algebra,
    t: &Triple<C>,
    lambda: Option<&Scalar>,
    max: i64,
) -> Result<Representation<C>> {
    let l = first_order_l(&t.h, &t.b)?;
    let window = algebra.window(max);
    let top = window.iter().copied().max().unwrap_or(0).max(1);
    let powers = l_powers(&l, (top + 1) as usize);
    let kappa = &t.c * &(&t.c + &Scalar::one());
    let mut images = BTreeMap::new();
    for i in window {
        let op = match i {
            -1 => DiffOp::mult(h_pow(&t.h, -1)?),
            0 => l.clone(),
            _ => {
                let p = match lambda {
                    Some(lam) => positive_poly(lam, i)?,
                    None => vec![-&kappa, Scalar::from_int(-1), Scalar::one()],
                };
                eval_poly(&powers, &p).left_mul(&h_pow(&t.h, i)?)
            }
        };
        images.insert(i, op);
    }
    Ok(Representation { algebra, images, central: None })
}

/// S2 / R2 through the Chevalley involution applied to (1/h, −b, c, λ).
fn build_negative<C: Coeff>(
    algebra: Algebra,
    t: &Triple<C>,
    lambda: Option<&Scalar>,
    max: i64,
) -> Result<Representation<C>> {
    let dual = Triple { h: h_pow(&t.h, -1)?, b: t.b.neg(), c: t.c.clone(), lambda: lambda.cloned() };
    let mirror = if algebra == Algebra::Sl2 { Algebra::Sl2 } else { Algebra::WittPos };
    let pos = build_positive(mirror, &dual, lambda, max)?;
    Ok(chevalley_transport(&pos, algebra))
}

/// ρ′(L_j) = (−1)^{j+1} ρ(L_{−j}).
pub fn chevalley_transport<C: Coeff>(rep: &Representation<C>, target: Algebra) -> Representation<C> {
    let images = rep
        .images
        .iter()
        .map(|(i, p)| {
            let (sign, j) = chevalley(*i);
            (j, if sign < 0 { p.neg() } else { p.clone() })
        })
        .collect();
    Representation { algebra: target, images, central: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    fn z() -> RatFunc {
        RatFunc::z()
    }

    #[test]
    fn s1_images_are_first_order() {
        let t = Triple::new(z(), RatFunc::constant(Scalar::param("b")), Scalar::param("c"));
        let rep = build(Family::R1, &t, 3).unwrap();
        for (i, p) in &rep.images {
            assert_eq!(p.order(), Some(1), "L_{i}");
        }
        // ρ(L_{-1}) = −∂ + (b − c)/z
        let expect = DiffOp::from_coeffs(vec![
            RatFunc::constant(&Scalar::param("b") - &Scalar::param("c")).mul(&RatFunc::z_pow(-1)),
            RatFunc::constant(Scalar::from_int(-1)),
        ]);
        assert_eq!(rep.images[&-1], expect);
    }

    #[test]
    fn r2_matches_direct_formula() {
        // ρ(L_i) = h^i (L + iλ) P(L + λ + 1, −i) for i < 0.
        let c = Scalar::param("c");
        let h = z().add(&RatFunc::z_pow(2));
        let b = RatFunc::constant(Scalar::from_frac(1, 3)).add(&z());
        let t = Triple::new(h.clone(), b.clone(), c.clone()).with_lambda(c.clone());
        let rep = build(Family::R2, &t, 3).unwrap();
        let l = first_order_l(&h, &b).unwrap();
        for i in -3..=-1i64 {
            let shift = &c + &Scalar::one();
            let p = pochhammer_poly(&shift, -i).unwrap();
            let p = poly_mul(&[&c * &Scalar::from_int(i), Scalar::one()], &p);
            let direct = DiffOp::poly_in(&l, &p).left_mul(&h.powi(i).unwrap());
            assert_eq!(rep.images[&i], direct, "L_{i}");
        }
        assert_eq!(rep.images[&1], DiffOp::mult(h));
    }

    #[test]
    fn invalid_branch_rejected() {
        let t = Triple::new(z(), RatFunc::zero(), Scalar::param("c")).with_lambda(Scalar::from_int(5));
        assert_eq!(build(Family::R0, &t, 2).unwrap_err(), Error::InvalidBranch);
    }

    #[test]
    fn constant_h_rejected() {
        let t = Triple::new(RatFunc::one(), RatFunc::zero(), Scalar::zero());
        assert_eq!(build(Family::S1, &t, 1).unwrap_err(), Error::ZeroDerivative);
    }
}
