//! Dense univariate polynomials in z over `Scalar`.

use crate::scalar::{dense_gcd, GaussRat, MPoly, Mono, Scalar};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    c: Vec<Scalar>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        UPoly::from_coeffs(vec![s])
    }

    pub fn z() -> Self {
        UPoly::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn monomial(s: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = s;
        UPoly::from_coeffs(v)
    }

    pub fn from_coeffs(mut c: Vec<Scalar>) -> Self {
        while c.last().map(|x| x.is_zero()).unwrap_or(false) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.c.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&Scalar> {
        self.c.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.c.len() {
            0 => Some(Scalar::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> UPoly {
        if s.is_zero() {
            return UPoly::zero();
        }
        if s.is_one() {
            return self.clone();
        }
        UPoly { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn shift(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Scalar::zero(); k];
        v.extend(self.c.iter().cloned());
        UPoly { c: v }
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        if let Some(v) = crate::scalar::dense::mul(&self.c, &o.c) {
            return UPoly::from_coeffs(v);
        }
        let mut v = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(v)
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derive(&self) -> UPoly {
        if self.c.len() <= 1 {
            return UPoly::zero();
        }
        UPoly::from_coeffs(
            self.c.iter().enumerate().skip(1).map(|(k, x)| x * &Scalar::from_int(k as i64)).collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * x) + a;
        }
        acc
    }

    /// p(q(z)).
    pub fn compose(&self, q: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// Division with remainder over the field of scalars.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().unwrap().inv().expect("nonzero");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let f = top * &inv;
            for (i, dc) in d.c.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&f * dc);
            }
            q[k] = f;
        }
        r.truncate(dd);
        (UPoly::from_coeffs(q), UPoly::from_coeffs(r))
    }

    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        if let Some(q) = crate::scalar::dense::div_exact_numeric(&self.c, &d.c) {
            return q.map(UPoly::from_coeffs);
        }
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        match self.lc() {
            Some(l) if !l.is_one() => self.scale(&l.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Monic gcd; numeric fast path when either side has numeric coefficients only.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || o.degree() == Some(0) {
            return UPoly::one();
        }
        if let Some(g) = numeric_gcd(self, o) {
            return g;
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn to_numeric(&self) -> Option<Vec<GaussRat>> {
        self.c.iter().map(|s| s.as_gauss()).collect()
    }

    pub fn from_numeric(v: &[GaussRat]) -> UPoly {
        UPoly::from_coeffs(v.iter().map(|g| Scalar::from_gauss(g.clone())).collect())
    }

    pub fn is_numeric(&self) -> bool {
        self.c.iter().all(|s| s.is_numeric())
    }

    /// Substitute a parameter in every coefficient.
    pub fn map_scalars<F: Fn(&Scalar) -> crate::error::Result<Scalar>>(&self, f: F) -> crate::error::Result<UPoly> {
        Ok(UPoly::from_coeffs(self.c.iter().map(f).collect::<crate::error::Result<_>>()?))
    }
}

/// Split coefficients (with trivial denominators) into per-parameter-monomial numeric polynomials.
fn numeric_components(p: &UPoly) -> Option<BTreeMap<MonoKey, Vec<GaussRat>>> {
    let mut out: BTreeMap<MonoKey, Vec<GaussRat>> = BTreeMap::new();
    let n = p.c.len();
    for (k, s) in p.c.iter().enumerate() {
        if !s.denom().is_one() {
            return None;
        }
        for (m, c) in s.numer().terms() {
            let e = out.entry(MonoKey(m.clone())).or_insert_with(|| vec![GaussRat::zero(); n]);
            e[k] = c.clone();
        }
    }
    Some(out)
}

#[derive(PartialEq, Eq, Clone)]
struct MonoKey(Mono);
impl Ord for MonoKey {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.0.cmp(&o.0)
    }
}
impl PartialOrd for MonoKey {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

fn numeric_gcd(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let (num, other) = if let Some(n) = a.to_numeric() {
        (n, b)
    } else {
        let n = b.to_numeric()?;
        (n, a)
    };
    let comps = numeric_components(other)?;
    let mut g = num;
    for (_, v) in comps {
        if g.len() <= 1 {
            break;
        }
        g = dense_gcd(g, v);
    }
    let g = if g.len() <= 1 { vec![GaussRat::one()] } else { g };
    let _ = MPoly::zero();
    Some(UPoly::from_numeric(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> UPoly {
        UPoly::from_coeffs(v.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        let a = zp(&[-1, 0, 1]);
        let b = zp(&[1, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q, zp(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&zp(&[-1, 1])), zp(&[-1, 1]));
    }

    #[test]
    fn symbolic_gcd() {
        let c = Scalar::param("c");
        let a = UPoly::from_coeffs(vec![-&c, Scalar::one()]).mul(&zp(&[1, 1]));
        let b = UPoly::from_coeffs(vec![-&c, Scalar::one()]).mul(&zp(&[2, 1]));
        assert_eq!(a.gcd(&b), UPoly::from_coeffs(vec![-&c, Scalar::one()]));
    }
}
