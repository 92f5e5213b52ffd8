//! Rational functions C(z) with scalar coefficients.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

/// Reduced fraction with monic denominator.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UPoly::one())
    }

    pub fn z() -> Self {
        RatFunc::from_poly(UPoly::z())
    }

    pub fn constant(s: Scalar) -> Self {
        RatFunc::from_poly(UPoly::constant(s))
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunc { num: p, den: UPoly::one() }
    }

    /// z^k for any integer k.
    pub fn z_pow(k: i64) -> Self {
        let m = UPoly::monomial(Scalar::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc::from_poly(m)
        } else {
            RatFunc { num: UPoly::one(), den: m }
        }
    }

    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.degree() == Some(0) {
            let inv = den.lc().unwrap().inv().expect("nonzero");
            return RatFunc { num: num.scale(&inv), den: UPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lc = den.lc().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return RatFunc::from_poly(self.num.add(&o.num));
            }
            return Self::reduce(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc { num: self.num.mul(&o.den).add(&o.num), den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFunc { num: o.num.mul(&self.den).add(&self.num), den: self.den.clone() };
        }
        // Reduced inputs: only the common part of the denominators can cancel.
        let g = self.den.gcd(&o.den);
        if g.is_one() {
            let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return RatFunc { num, den: self.den.mul(&o.den) };
        }
        let d1 = self.den.div_exact(&g).unwrap();
        let d2 = o.den.div_exact(&g).unwrap();
        let num = self.num.mul(&d2).add(&o.num.mul(&d1));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap()) };
        Self::reduce_lc(num, d1.mul(&d2).mul(&g))
    }

    fn reduce_lc(num: UPoly, den: UPoly) -> RatFunc {
        let lc = den.lc().unwrap().clone();
        if lc.is_one() {
            return RatFunc { num, den };
        }
        let inv = lc.inv().unwrap();
        RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> RatFunc {
        if s.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if let Some(s) = o.as_scalar() {
            return self.scale(&s);
        }
        if let Some(s) = self.as_scalar() {
            return o.scale(&s);
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc::from_poly(self.num.mul(&o.num));
        }
        // Cross-cancel: gcd(n1, d2) and gcd(n2, d1).
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Self::reduce_lc(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce_lc(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn derive(&self) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derive());
        }
        // (n/d)' = (n' d - n d') / d^2, with the common factor of d and d' removed.
        let dp = self.den.derive();
        let g = self.den.gcd(&dp);
        let (dq, dpq) = if g.is_one() {
            (self.den.clone(), dp)
        } else {
            (self.den.div_exact(&g).unwrap(), dp.div_exact(&g).unwrap())
        };
        let num = self.num.derive().mul(&dq).sub(&self.num.mul(&dpq));
        Self::reduce(num, self.den.mul(&dq))
    }

    /// Valuation at z = 0.
    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.num.low_degree().unwrap() as i64 - self.den.low_degree().unwrap() as i64)
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        self.num.eval(x).checked_div(&self.den.eval(x))
    }

    /// f(g(z)).
    pub fn compose(&self, g: &RatFunc) -> Result<RatFunc> {
        let horner = |p: &UPoly| -> RatFunc {
            let mut acc = RatFunc::zero();
            for a in p.coeffs().iter().rev() {
                acc = acc.mul(g).add(&RatFunc::constant(a.clone()));
            }
            acc
        };
        horner(&self.num).div(&horner(&self.den))
    }

    pub fn map_scalars<F: Fn(&Scalar) -> Result<Scalar> + Copy>(&self, f: F) -> Result<RatFunc> {
        RatFunc::new(self.num.map_scalars(f)?, self.den.map_scalars(f)?)
    }

    /// Degree pair (numerator, denominator).
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0))
    }
}

fn cancel(n: &UPoly, d: &UPoly) -> (UPoly, UPoly) {
    if d.is_one() || n.degree() == Some(0) {
        return (n.clone(), d.clone());
    }
    let g = n.gcd(d);
    if g.is_one() {
        (n.clone(), d.clone())
    } else {
        (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, o: &RatFunc) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_derivative_of_geometric() {
        let f = RatFunc::one().div(&RatFunc::one().sub(&RatFunc::z())).unwrap();
        let expect = RatFunc::constant(Scalar::from_int(2))
            .div(&RatFunc::one().sub(&RatFunc::z()).powi(3).unwrap())
            .unwrap();
        assert_eq!(f.derive().derive(), expect);
    }

    #[test]
    fn valuation_of_quotient() {
        let n = RatFunc::z_pow(2).add(&RatFunc::z());
        let f = n.div(&RatFunc::z_pow(3)).unwrap();
        assert_eq!(f.valuation().unwrap(), -2);
    }

    #[test]
    fn reduces_common_factors() {
        let z = RatFunc::z();
        let one = RatFunc::one();
        let f = z.mul(&z).sub(&one).div(&z.add(&one)).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f, z.sub(&one));
    }
}
