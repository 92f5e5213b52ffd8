//! Exact scalars: fractions of polynomials over Q(i) in formal parameters.

pub(crate) mod dense;
mod gauss;
mod modgcd;
mod mpoly;

pub use gauss::GaussRat;
pub use mpoly::{signed_parts, MPoly, Mono, Param};


use crate::error::{Error, Result};
use num_rational::BigRational;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Element of Q(i)(params). Denominators are monic in the leading monomial.
#[derive(Clone, Debug, Default)]
pub struct Scalar {
    num: MPoly,
    den: MPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::from_gauss(GaussRat::from_frac(n, d))
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Scalar { num: MPoly::constant(g), den: MPoly::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(GaussRat::from_rational(r))
    }

    pub fn i() -> Self {
        Scalar::from_gauss(GaussRat::i())
    }

    pub fn param(name: &str) -> Self {
        Scalar::from_poly(MPoly::var(Param::new(name)))
    }

    pub fn from_poly(p: MPoly) -> Self {
        Scalar { num: p, den: MPoly::one() }
    }

    pub fn new(num: MPoly, den: MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    fn normalize(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(k) = den.as_constant() {
            if k.is_one() {
                return Scalar { num, den };
            }
            let inv = k.inv().expect("nonzero denominator");
            return Scalar { num: num.scale(&inv), den: MPoly::one() };
        }
        if let Some(q) = num.div_exact(&den) {
            return Scalar { num: q, den: MPoly::one() };
        }
        let (mut num, mut den) = (num, den);
        let g = poly_gcd(&num, &den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let lc = den.leading().expect("nonzero").1.clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if den.is_one() {
            return Scalar { num, den: MPoly::one() };
        }
        Scalar { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Numeric value when the scalar involves no parameters.
    pub fn as_gauss(&self) -> Option<GaussRat> {
        if !self.den.is_one() {
            return None;
        }
        self.num.as_constant()
    }

    pub fn is_numeric(&self) -> bool {
        self.as_gauss().is_some()
    }

    /// Small integer value, if the scalar is one.
    pub fn as_i64(&self) -> Option<i64> {
        use num_traits::{ToPrimitive, Zero};
        let g = self.as_gauss()?;
        if !g.im.is_zero() || !g.re.is_integer() {
            return None;
        }
        g.re.to_integer().to_i64()
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v = self.num.params();
        v.extend(self.den.params());
        v.sort();
        v.dedup();
        v
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, o: &Scalar) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact square root when both numerator and denominator are squares.
    pub fn sqrt(&self) -> Option<Self> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Self::normalize(n, d))
    }

    /// Substitute a scalar value for a parameter.
    pub fn substitute(&self, p: Param, val: &Scalar) -> Result<Self> {
        let eval = |poly: &MPoly| -> Scalar {
            // Horner in p over the coefficients free of p.
            let deg = poly.degree_in(p);
            let mut slices: Vec<Vec<(Mono, GaussRat)>> = vec![Vec::new(); deg as usize + 1];
            for (m, c) in poly.terms() {
                let e = m.degree_in(p) as usize;
                let rest = Mono(m.0.iter().copied().filter(|(q, _)| *q != p).collect());
                slices[e].push((rest, c.clone()));
            }
            let mut acc = Scalar::zero();
            for s in slices.into_iter().rev() {
                acc = &(&acc * val) + &Scalar::from_poly(MPoly::from_terms(s));
            }
            acc
        };
        eval(&self.num).checked_div(&eval(&self.den))
    }

    /// Scale by a Gaussian rational.
    pub fn scale(&self, k: &GaussRat) -> Self {
        if k.is_zero() {
            return Scalar::zero();
        }
        Scalar { num: self.num.scale(k), den: self.den.clone() }
    }

    /// Text usable as a multiplicative factor, plus a sign flag.
    pub fn factor_parts(&self) -> (bool, String) {
        if self.den.is_one() {
            if let [(m, c)] = self.num.terms() {
                let (neg, mag) = signed_parts(c);
                let s = if m.is_one() {
                    
                    mag.to_string()
                } else if mag.is_one() {
                    m.to_string()
                } else {
                    format!("{mag}*{m}")
                };
                return (neg, s);
            }
            return (false, format!("({})", self.num));
        }
        let n = if self.num.terms().len() == 1 && self.num.terms()[0].0.is_one() {
            self.num.to_string()
        } else {
            format!("({})", self.num)
        };
        (false, format!("{n}/({})", self.den))
    }
}

fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let pa = a.params();
    let pb = b.params();
    if pa.len() == 1 && pb.len() <= 1 && (pb.is_empty() || pa == pb) {
        let p = pa[0];
        let ga = dense_gcd(a.to_dense(p).unwrap(), b.to_dense(p).unwrap());
        return MPoly::from_dense(p, &ga);
    }
    if pb.len() == 1 && pa.is_empty() {
        return MPoly::one();
    }
    MPoly::one()
}

fn dense_trim(v: &mut Vec<GaussRat>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Monic gcd of dense univariate polynomials over Q(i).
///
/// Real inputs use the modular algorithm. Otherwise a primitive pseudo-remainder sequence
/// over Z[i] runs: denominators are cleared once and the integer content is removed at every
/// step, which keeps coefficient growth polynomial.
pub fn dense_gcd(mut a: Vec<GaussRat>, mut b: Vec<GaussRat>) -> Vec<GaussRat> {
    dense_trim(&mut a);
    dense_trim(&mut b);
    let is_zero = |v: &Vec<GaussRat>| v.iter().all(|c| c.is_zero());
    if is_zero(&a) && is_zero(&b) {
        return vec![GaussRat::zero()];
    }
    if is_zero(&b) {
        return monic_dense(&a);
    }
    if is_zero(&a) {
        return monic_dense(&b);
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![GaussRat::one()];
    }
    if a.iter().chain(&b).all(GaussRat::is_real) {
        let (x, y) = (zi::real_part(&zi::from_rat(&a)), zi::real_part(&zi::from_rat(&b)));
        if let Some(g) = modgcd::gcd_int(&x, &y) {
            let g: Vec<GaussRat> =
                g.into_iter().map(|c| GaussRat::from_rational(BigRational::from_integer(c))).collect();
            return monic_dense(&g);
        }
    }
    let (mut x, mut y) = (zi::primitive(zi::from_rat(&a)), zi::primitive(zi::from_rat(&b)));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = zi::primitive(zi::prem(&x, &y));
        x = y;
        y = r;
        if y.len() == 1 {
            return vec![GaussRat::one()];
        }
    }
    monic_dense(&zi::to_rat(&x))
}

fn monic_dense(v: &[GaussRat]) -> Vec<GaussRat> {
    let inv = v.last().unwrap().inv().unwrap();
    v.iter().map(|c| c * &inv).collect()
}

/// Dense polynomials over the Gaussian integers, lowest degree first, no trailing zeros.
mod zi {
    use super::GaussRat;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    pub type Zi = (BigInt, BigInt);

    fn mul(a: &Zi, b: &Zi) -> Zi {
        (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
    }

    fn is_zero(a: &Zi) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }

    fn trim(v: &mut Vec<Zi>) {
        while v.last().is_some_and(is_zero) {
            v.pop();
        }
    }

    pub fn from_rat(v: &[GaussRat]) -> Vec<Zi> {
        let mut l = BigInt::one();
        for d in v.iter().flat_map(|c| [c.re.denom(), c.im.denom()]) {
            if !d.is_one() {
                l = l.lcm(d);
            }
        }
        let scale = |r: &BigRational| if r.denom().is_one() { r.numer() * &l } else { r.numer() * (&l / r.denom()) };
        let mut out: Vec<Zi> = v.iter().map(|c| (scale(&c.re), scale(&c.im))).collect();
        trim(&mut out);
        out
    }

    pub fn real_part(v: &[Zi]) -> Vec<BigInt> {
        v.iter().map(|(r, _)| r.clone()).collect()
    }

    pub fn to_rat(v: &[Zi]) -> Vec<GaussRat> {
        v.iter()
            .map(|(r, i)| GaussRat::new(BigRational::from_integer(r.clone()), BigRational::from_integer(i.clone())))
            .collect()
    }

    pub fn primitive(mut v: Vec<Zi>) -> Vec<Zi> {
        let mut g = BigInt::zero();
        for (r, i) in &v {
            g = g.gcd(r).gcd(i);
            if g.is_one() {
                return v;
            }
        }
        if g.is_zero() {
            return Vec::new();
        }
        for (r, i) in v.iter_mut() {
            *r = &*r / &g;
            *i = &*i / &g;
        }
        v
    }

    /// lc(b)^(deg a − deg b + 1) · a mod b.
    pub fn prem(a: &[Zi], b: &[Zi]) -> Vec<Zi> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db].clone();
        while r.len() > db {
            let top = r.last().unwrap().clone();
            let k = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c = mul(c, &lb);
            }
            for (i, bc) in b.iter().enumerate() {
                let t = mul(&top, bc);
                let e = &mut r[i + k];
                e.0 -= t.0;
                e.1 -= t.1;
            }
            r.pop();
            trim(&mut r);
        }
        r
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Scalar { num: self.num.add(&o.num), den: MPoly::one() };
            }
            return Scalar::normalize(self.num.add(&o.num), self.den.clone());
        }
        Scalar::normalize(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: MPoly::one() };
        }
        Scalar::normalize(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use `checked_div` for fallible division.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = if self.num.terms().len() == 1 { self.num.to_string() } else { format!("({})", self.num) };
        write!(f, "{n}/({})", self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_function_normalizes() {
        let c = Scalar::param("c");
        let x = &(&(&c * &c) - &Scalar::one()) / &(&c + &Scalar::one());
        assert_eq!(x, &c - &Scalar::one());
        assert!(x.denom().is_one());
        let y = &Scalar::one() / &(&c * &Scalar::from_int(2));
        assert_eq!(&y * &c, Scalar::from_frac(1, 2));
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let c = Scalar::param("c");
        let a = &(&c + &Scalar::one()) * &(&c - &Scalar::from_int(2));
        let b = &(&c + &Scalar::one()) * &(&c + &Scalar::from_int(3));
        let q = &a / &b;
        assert_eq!(q.denom().total_degree(), 1);
    }

    #[test]
    fn substitution() {
        let c = Scalar::param("c");
        let e = &(&c * &c) + &c;
        let v = e.substitute(Param::new("c"), &Scalar::from_frac(-1, 2)).unwrap();
        assert_eq!(v, Scalar::from_frac(-1, 4));
    }

    #[test]
    fn scalar_sqrt() {
        let c = Scalar::param("c");
        let t = &(&c * &Scalar::from_int(2)) + &Scalar::one();
        assert_eq!((&t * &t).sqrt(), Some(t));
    }
}
