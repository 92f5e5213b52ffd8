//! Laurent polynomials C[z, z⁻¹].

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::upoly::UPoly;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(s: Scalar) -> Self {
        LaurentPoly::monomial(s, 0)
    }

    pub fn monomial(s: Scalar, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(e, s);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Scalar)>>(it: I) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    /// Only monomials are units.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.len() {
            0 => Err(Error::DivisionByZero),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                Ok(LaurentPoly::monomial(c.inv()?, -e))
            }
            _ => Err(Error::NonInvertible("only monomials are units in C[z,1/z]".into())),
        }
    }

    pub fn derive(&self) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e - 1, c * &Scalar::from_int(*e))))
    }

    pub fn valuation(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroElement)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = LaurentPoly::constant(Scalar::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().next().map(|e| *e >= 0).unwrap_or(true)
    }

    pub fn from_ratfunc(f: &RatFunc) -> Result<Self> {
        let den = f.denom();
        let low = den.low_degree().unwrap_or(0);
        if den.degree() != Some(low) {
            return Err(Error::NotInRing(
                "denominator is not a monomial, so the value is not a Laurent polynomial".into(),
            ));
        }
        let inv = den.lc().unwrap().inv()?;
        Ok(LaurentPoly::from_terms(
            f.numer().coeffs().iter().enumerate().map(|(k, c)| (k as i64 - low as i64, c * &inv)),
        ))
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let low = self.terms.keys().next().copied().unwrap_or(0).min(0);
        let coeffs: Vec<Scalar> = match self.max_degree() {
            None => Vec::new(),
            Some(hi) => (low..=hi).map(|e| self.coeff(e)).collect(),
        };
        RatFunc::new(UPoly::from_coeffs(coeffs), UPoly::monomial(Scalar::one(), (-low) as usize))
            .expect("monomial denominator")
    }

    pub fn map_scalars<F: Fn(&Scalar) -> Result<Scalar>>(&self, f: F) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_are_units() {
        let m = LaurentPoly::monomial(Scalar::from_int(3), -2);
        assert_eq!(m.mul(&m.inv().unwrap()), LaurentPoly::constant(Scalar::one()));
        let p = m.add(&LaurentPoly::constant(Scalar::one()));
        assert!(p.inv().is_err());
    }

    #[test]
    fn ratfunc_roundtrip() {
        let p = LaurentPoly::from_terms([(-2, Scalar::from_int(3)), (1, Scalar::from_int(2))]);
        assert_eq!(LaurentPoly::from_ratfunc(&p.to_ratfunc()).unwrap(), p);
    }
}
