//! Coefficient rings for differential operators.

use crate::error::{Error, Result};
use crate::laurent::LaurentTrunc;
use crate::lpoly::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ring {
    /// C(z)
    RationalFunctions,
    /// C((z)), truncated
    LaurentSeries,
    /// C[z, 1/z]
    LaurentPolynomials,
}

impl Ring {
    pub fn name(&self) -> &'static str {
        match self {
            Ring::RationalFunctions => "C(z)",
            Ring::LaurentSeries => "C((z))",
            Ring::LaurentPolynomials => "C[z,1/z]",
        }
    }
}

/// Subrings usable as membership targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subring {
    PowerSeries,
    Polynomials,
    LaurentPolynomials,
}

/// Commutative differential ring of coefficients.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    const RING: Ring;

    fn zero() -> Self;
    fn from_scalar(s: Scalar) -> Self;
    /// The coordinate z.
    fn var() -> Self;
    fn is_zero(&self) -> bool;
    /// Zero test that refuses to answer when precision is too low.
    fn is_zero_checked(&self) -> Result<bool> {
        Ok(self.is_zero())
    }
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Scalar) -> Self;
    fn derive(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn valuation(&self) -> Result<i64>;
    fn as_scalar(&self) -> Option<Scalar>;
    /// Conversion from C(z); `prec` applies to truncated series only.
    fn from_ratfunc(f: &RatFunc, prec: i64) -> Result<Self>;
    /// Terms z^e when the element is a Laurent polynomial.
    fn laurent_terms(&self) -> Option<Vec<(i64, Scalar)>>;
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self>;

    fn one() -> Self {
        Self::from_scalar(Scalar::one())
    }

    /// The zero element known only modulo z^prec.
    /// Terms for the canonical text form.
    fn coeff_text(&self, var: crate::parse::VarName) -> crate::parse::CoeffText;

    fn big_o(prec: i64) -> Result<Self> {
        let _ = prec;
        Err(Error::NotInRing(format!("O-terms need the ring {}", Ring::LaurentSeries.name())))
    }

    fn z_pow(k: i64) -> Result<Self> {
        Self::var().powi(k)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Membership in a subring of C((z)).
    fn is_in(&self, target: Subring) -> Result<bool> {
        match target {
            Subring::PowerSeries => match self.valuation() {
                Ok(v) => Ok(v >= 0),
                Err(Error::ZeroElement) => Ok(true),
                Err(e) => Err(e),
            },
            Subring::Polynomials => Ok(self.laurent_terms().map(|t| t.iter().all(|(e, _)| *e >= 0)).unwrap_or(false)),
            Subring::LaurentPolynomials => Ok(self.laurent_terms().is_some()),
        }
    }
}

impl Coeff for RatFunc {
    fn coeff_text(&self, var: crate::parse::VarName) -> crate::parse::CoeffText {
        crate::parse::ratfunc_text(self, var)
    }
    const RING: Ring = Ring::RationalFunctions;

    fn zero() -> Self {
        RatFunc::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        RatFunc::constant(s)
    }
    fn var() -> Self {
        RatFunc::z()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::sub(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        RatFunc::scale(self, s)
    }
    fn derive(&self) -> Self {
        RatFunc::derive(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn valuation(&self) -> Result<i64> {
        RatFunc::valuation(self)
    }
    fn as_scalar(&self) -> Option<Scalar> {
        RatFunc::as_scalar(self)
    }
    fn from_ratfunc(f: &RatFunc, _prec: i64) -> Result<Self> {
        Ok(f.clone())
    }
    fn laurent_terms(&self) -> Option<Vec<(i64, Scalar)>> {
        LaurentPoly::from_ratfunc(self).ok().map(|p| p.terms().iter().map(|(e, c)| (*e, c.clone())).collect())
    }
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        RatFunc::map_scalars(self, f)
    }
    fn powi(&self, e: i64) -> Result<Self> {
        RatFunc::powi(self, e)
    }
    fn is_in(&self, target: Subring) -> Result<bool> {
        match target {
            Subring::PowerSeries => Ok(self.is_zero() || RatFunc::valuation(self)? >= 0),
            Subring::Polynomials => Ok(self.is_polynomial()),
            Subring::LaurentPolynomials => Ok(self.laurent_terms().is_some()),
        }
    }
}

impl Coeff for LaurentTrunc {
    fn coeff_text(&self, _var: crate::parse::VarName) -> crate::parse::CoeffText {
        crate::parse::series_text(self)
    }
    const RING: Ring = Ring::LaurentSeries;

    fn big_o(prec: i64) -> Result<Self> {
        Ok(LaurentTrunc::exact_zero_to(prec))
    }

    fn zero() -> Self {
        LaurentTrunc::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        LaurentTrunc::constant(s)
    }
    fn var() -> Self {
        LaurentTrunc::monomial(Scalar::one(), 1)
    }
    fn is_zero(&self) -> bool {
        self.is_tracked_zero()
    }
    fn is_zero_checked(&self) -> Result<bool> {
        LaurentTrunc::is_zero_checked(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentTrunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentTrunc::sub(self, o)
    }
    fn neg(&self) -> Self {
        LaurentTrunc::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentTrunc::mul(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        LaurentTrunc::scale(self, s)
    }
    fn derive(&self) -> Self {
        LaurentTrunc::derive(self)
    }
    fn inv(&self) -> Result<Self> {
        LaurentTrunc::inv(self)
    }
    fn valuation(&self) -> Result<i64> {
        LaurentTrunc::valuation(self)
    }
    fn as_scalar(&self) -> Option<Scalar> {
        if self.prec() < crate::laurent::MIN_CHECK_PREC {
            return None;
        }
        let t: Vec<_> = self.terms().collect();
        match t.as_slice() {
            [] => Some(Scalar::zero()),
            [(0, c)] => Some((*c).clone()),
            _ => None,
        }
    }
    fn from_ratfunc(f: &RatFunc, prec: i64) -> Result<Self> {
        LaurentTrunc::from_ratfunc(f, prec)
    }
    fn laurent_terms(&self) -> Option<Vec<(i64, Scalar)>> {
        self.is_exact().then(|| self.terms().map(|(e, c)| (e, c.clone())).collect())
    }
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        LaurentTrunc::map_scalars(self, f)
    }
    fn is_in(&self, target: Subring) -> Result<bool> {
        match target {
            Subring::PowerSeries => {
                if let Some((e, _)) = self.terms().next() {
                    return Ok(e >= 0);
                }
                if self.prec() <= 0 {
                    return Err(Error::InsufficientPrecision("negative part unknown".into()));
                }
                Ok(true)
            }
            Subring::Polynomials => Ok(self.laurent_terms().map(|t| t.iter().all(|(e, _)| *e >= 0)).unwrap_or(false)),
            Subring::LaurentPolynomials => Ok(self.is_exact()),
        }
    }
}

impl Coeff for LaurentPoly {
    fn coeff_text(&self, _var: crate::parse::VarName) -> crate::parse::CoeffText {
        crate::parse::lpoly_text(self)
    }
    const RING: Ring = Ring::LaurentPolynomials;

    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn from_scalar(s: Scalar) -> Self {
        LaurentPoly::constant(s)
    }
    fn var() -> Self {
        LaurentPoly::monomial(Scalar::one(), 1)
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        LaurentPoly::sub(self, o)
    }
    fn neg(&self) -> Self {
        LaurentPoly::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentPoly::mul(self, o)
    }
    fn scale(&self, s: &Scalar) -> Self {
        LaurentPoly::scale(self, s)
    }
    fn derive(&self) -> Self {
        LaurentPoly::derive(self)
    }
    fn inv(&self) -> Result<Self> {
        LaurentPoly::inv(self)
    }
    fn valuation(&self) -> Result<i64> {
        LaurentPoly::valuation(self)
    }
    fn as_scalar(&self) -> Option<Scalar> {
        LaurentPoly::as_scalar(self)
    }
    fn from_ratfunc(f: &RatFunc, _prec: i64) -> Result<Self> {
        LaurentPoly::from_ratfunc(f)
    }
    fn laurent_terms(&self) -> Option<Vec<(i64, Scalar)>> {
        Some(self.terms().iter().map(|(e, c)| (*e, c.clone())).collect())
    }
    fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        LaurentPoly::map_scalars(self, f)
    }
}

/// Dynamically tagged coefficient, used by the text and CLI front ends.
#[derive(Clone, Debug, PartialEq)]
pub enum CoeffElem {
    Rat(RatFunc),
    Series(LaurentTrunc),
    LPoly(LaurentPoly),
}

impl CoeffElem {
    pub fn ring(&self) -> Ring {
        match self {
            CoeffElem::Rat(_) => Ring::RationalFunctions,
            CoeffElem::Series(_) => Ring::LaurentSeries,
            CoeffElem::LPoly(_) => Ring::LaurentPolynomials,
        }
    }

    pub fn from_ratfunc(f: &RatFunc, ring: Ring, prec: i64) -> Result<Self> {
        Ok(match ring {
            Ring::RationalFunctions => CoeffElem::Rat(f.clone()),
            Ring::LaurentSeries => CoeffElem::Series(LaurentTrunc::from_ratfunc(f, prec)?),
            Ring::LaurentPolynomials => CoeffElem::LPoly(LaurentPoly::from_ratfunc(f)?),
        })
    }

    fn binary(
        &self,
        o: &Self,
        r: fn(&RatFunc, &RatFunc) -> RatFunc,
        s: fn(&LaurentTrunc, &LaurentTrunc) -> LaurentTrunc,
        l: fn(&LaurentPoly, &LaurentPoly) -> LaurentPoly,
    ) -> Result<Self> {
        match (self, o) {
            (CoeffElem::Rat(a), CoeffElem::Rat(b)) => Ok(CoeffElem::Rat(r(a, b))),
            (CoeffElem::Series(a), CoeffElem::Series(b)) => Ok(CoeffElem::Series(s(a, b))),
            (CoeffElem::LPoly(a), CoeffElem::LPoly(b)) => Ok(CoeffElem::LPoly(l(a, b))),
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.binary(o, RatFunc::add, LaurentTrunc::add, LaurentPoly::add)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.binary(o, RatFunc::mul, LaurentTrunc::mul, LaurentPoly::mul)
    }

    pub fn valuation(&self) -> Result<i64> {
        match self {
            CoeffElem::Rat(a) => a.valuation(),
            CoeffElem::Series(a) => a.valuation(),
            CoeffElem::LPoly(a) => a.valuation(),
        }
    }

    pub fn derive(&self) -> Self {
        match self {
            CoeffElem::Rat(a) => CoeffElem::Rat(a.derive()),
            CoeffElem::Series(a) => CoeffElem::Series(a.derive()),
            CoeffElem::LPoly(a) => CoeffElem::LPoly(a.derive()),
        }
    }

    pub fn is_in(&self, target: Subring) -> Result<bool> {
        match self {
            CoeffElem::Rat(a) => a.is_in(target),
            CoeffElem::Series(a) => a.is_in(target),
            CoeffElem::LPoly(a) => a.is_in(target),
        }
    }
}
