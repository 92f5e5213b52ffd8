//! Truncated Laurent series C((z)) with absolute precision tracking.

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;

/// Default working precision.
pub const DEFAULT_PREC: i64 = 24;
/// Zero tests below this precision are refused.
pub const MIN_CHECK_PREC: i64 = 4;
/// Precision marker for exactly known (finite) series.
pub const EXACT: i64 = i64::MAX;

/// Σ_{e ≥ start} a_e z^e + O(z^prec). `prec == EXACT` means no truncation.
#[derive(Clone, Debug)]
pub struct LaurentTrunc {
    start: i64,
    coeffs: Vec<Scalar>,
    prec: i64,
}

impl LaurentTrunc {
    pub fn zero() -> Self {
        LaurentTrunc { start: 0, coeffs: Vec::new(), prec: EXACT }
    }

    pub fn exact_zero_to(prec: i64) -> Self {
        LaurentTrunc { start: 0, coeffs: Vec::new(), prec }
    }

    pub fn constant(s: Scalar) -> Self {
        LaurentTrunc::from_terms(0, vec![s], EXACT)
    }

    pub fn monomial(s: Scalar, e: i64) -> Self {
        LaurentTrunc::from_terms(e, vec![s], EXACT)
    }

    pub fn from_terms(start: i64, coeffs: Vec<Scalar>, prec: i64) -> Self {
        let mut s = LaurentTrunc { start, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.prec != EXACT {
            let keep = (self.prec - self.start).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    pub fn with_prec(&self, p: i64) -> Self {
        LaurentTrunc::from_terms(self.start, self.coeffs.clone(), p.min(self.prec))
    }

    /// Coefficient of z^e; None when e is beyond the precision.
    pub fn coeff(&self, e: i64) -> Option<Scalar> {
        if e >= self.prec {
            return None;
        }
        let k = e - self.start;
        if k < 0 || k as usize >= self.coeffs.len() {
            return Some(Scalar::zero());
        }
        Some(self.coeffs[k as usize].clone())
    }

    /// (exponent, coefficient) for every stored nonzero term.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (self.start + k as i64, c))
    }

    /// All tracked coefficients vanish.
    pub fn is_tracked_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero_checked(&self) -> Result<bool> {
        if !self.coeffs.is_empty() {
            return Ok(false);
        }
        if self.prec < MIN_CHECK_PREC {
            return Err(Error::InsufficientPrecision(format!(
                "series known only modulo z^{}",
                self.prec
            )));
        }
        Ok(true)
    }

    /// First exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                Error::ZeroElement
            } else {
                Error::InsufficientPrecision(format!("all coefficients vanish below z^{}", self.prec))
            });
        }
        Ok(self.start)
    }

    /// Valuation, or the precision for a series that is zero to precision.
    fn effective_valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.start
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        if o.coeffs.is_empty() {
            return self.with_prec(prec);
        }
        if self.coeffs.is_empty() {
            return o.with_prec(prec);
        }
        let start = self.start.min(o.start);
        let end = (self.start + self.coeffs.len() as i64).max(o.start + o.coeffs.len() as i64);
        let end = if prec == EXACT { end } else { end.min(prec) };
        let mut v = Vec::with_capacity((end - start).max(0) as usize);
        for e in start..end {
            let a = self.stored(e);
            let b = o.stored(e);
            v.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => Scalar::zero(),
            });
        }
        LaurentTrunc::from_terms(start, v, prec)
    }

    fn stored(&self, e: i64) -> Option<&Scalar> {
        let k = e - self.start;
        if k < 0 {
            return None;
        }
        self.coeffs.get(k as usize)
    }

    pub fn neg(&self) -> Self {
        LaurentTrunc { start: self.start, coeffs: self.coeffs.iter().map(|c| -c).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return LaurentTrunc { start: 0, coeffs: Vec::new(), prec: self.prec };
        }
        LaurentTrunc { start: self.start, coeffs: self.coeffs.iter().map(|c| c * s).collect(), prec: self.prec }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let va = self.effective_valuation();
        let vb = o.effective_valuation();
        let prec = sat_add(self.prec, vb).min(sat_add(o.prec, va));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return LaurentTrunc { start: 0, coeffs: Vec::new(), prec };
        }
        let start = self.start + o.start;
        let mut len = self.coeffs.len() + o.coeffs.len() - 1;
        if prec != EXACT {
            len = len.min((prec - start).max(0) as usize);
        }
        if let Some(v) = crate::scalar::dense::mul_trunc(&self.coeffs, &o.coeffs, len) {
            return LaurentTrunc::from_terms(start, v, prec);
        }
        let mut v = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        LaurentTrunc::from_terms(start, v, prec)
    }

    /// Multiplicative inverse; exact non-monomials use `DEFAULT_PREC` relative precision.
    pub fn inv(&self) -> Result<Self> {
        self.inv_with_rel(DEFAULT_PREC)
    }

    pub fn inv_with_rel(&self, rel_default: i64) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                Error::DivisionByZero
            } else {
                Error::InsufficientPrecision("inverse of a series that vanishes to precision".into())
            });
        }
        let v = self.start;
        if self.is_exact() && self.coeffs.len() == 1 {
            let c = self.coeffs[0].inv()?;
            return Ok(LaurentTrunc::monomial(c, -v));
        }
        let rel = if self.is_exact() { rel_default } else { self.prec - v };
        let n = rel.max(0) as usize;
        let a0_inv = self.coeffs[0].inv()?;
        let mut w: Vec<Scalar> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                w.push(a0_inv.clone());
                continue;
            }
            let mut acc = Scalar::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[j];
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * &w[k - j]);
            }
            w.push(-&(&acc * &a0_inv));
        }
        Ok(LaurentTrunc::from_terms(-v, w, -v + rel))
    }

    pub fn derive(&self) -> Self {
        let prec = if self.is_exact() { EXACT } else { self.prec - 1 };
        if self.coeffs.is_empty() {
            return LaurentTrunc { start: 0, coeffs: Vec::new(), prec };
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let e = self.start + k as i64;
                c * &Scalar::from_int(e)
            })
            .collect();
        LaurentTrunc::from_terms(self.start - 1, v, prec)
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = LaurentTrunc::constant(Scalar::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Expansion of a rational function at z = 0 to absolute precision `prec`.
    pub fn from_ratfunc(f: &RatFunc, prec: i64) -> Result<Self> {
        if f.is_zero() {
            return Ok(LaurentTrunc::zero());
        }
        let num = poly_series(f.numer());
        if f.is_polynomial() {
            return Ok(num);
        }
        let den = poly_series(f.denom());
        let vd = den.valuation()?;
        let vn = num.valuation()?;
        let rel = prec - (vn - vd);
        let inv = den.inv_with_rel(rel.max(1))?;
        let out = num.mul(&inv);
        Ok(out.with_prec(prec))
    }

    /// Composition f(g) for g with valuation ≥ 1.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        let vg = g.valuation()?;
        if vg < 1 {
            return Err(Error::NonInvertibleSubstitution("inner series must have positive valuation".into()));
        }
        if self.coeffs.is_empty() {
            return Ok(LaurentTrunc { start: 0, coeffs: Vec::new(), prec: sat_mul(self.prec, vg) });
        }
        let vf = self.start;
        // Loss from g's truncation: f'(g)·O(z^{prec_g}).
        let g_loss = if g.is_exact() { EXACT } else { sat_add(g.prec, (vf - 1).min(0) * vg) };
        let f_loss = sat_mul(self.prec, vg);
        let target = g_loss.min(f_loss);
        let g_cap = if target == EXACT { g.clone() } else { g.with_prec(target.max(1)) };
        let mut acc = LaurentTrunc::zero();
        let mut pw = g_cap.powi(vf)?;
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&pw.scale(c));
            }
            pw = pw.mul(&g_cap);
            if target != EXACT {
                pw = pw.with_prec(target);
            }
        }
        Ok(if target == EXACT { acc } else { acc.with_prec(target) })
    }

    /// Compositional inverse of g with ν(g) = 1.
    pub fn compositional_inverse(&self) -> Result<Self> {
        if self.valuation()? != 1 {
            return Err(Error::NonInvertibleSubstitution("series must have valuation 1".into()));
        }
        let prec = if self.is_exact() { DEFAULT_PREC + 1 } else { self.prec };
        let a1 = self.coeff(1).unwrap();
        let a1_inv = a1.inv()?;
        // Fixed-point iteration ψ ← ψ + (z − g(ψ))/a1, gaining one order per step.
        let z = LaurentTrunc::monomial(Scalar::one(), 1);
        let mut psi = LaurentTrunc::monomial(a1_inv.clone(), 1).with_prec(2);
        for k in 2..prec {
            let target = (k + 1).min(prec);
            let psi_t = LaurentTrunc::from_terms(psi.start, psi.coeffs.clone(), target);
            let g_t = self.with_prec(target);
            let err = z.sub(&g_t.compose(&psi_t)?);
            psi = psi_t.add(&err.scale(&a1_inv)).with_prec(target);
        }
        Ok(psi)
    }

    pub fn map_scalars<F: Fn(&Scalar) -> Result<Scalar>>(&self, f: F) -> Result<Self> {
        Ok(LaurentTrunc::from_terms(
            self.start,
            self.coeffs.iter().map(f).collect::<Result<_>>()?,
            self.prec,
        ))
    }
}

fn poly_series(p: &crate::upoly::UPoly) -> LaurentTrunc {
    LaurentTrunc::from_terms(0, p.coeffs().to_vec(), EXACT)
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a.saturating_add(b)
    }
}

fn sat_mul(a: i64, k: i64) -> i64 {
    if a == EXACT {
        EXACT
    } else {
        a.saturating_mul(k)
    }
}

impl PartialEq for LaurentTrunc {
    /// Equality to the common precision.
    fn eq(&self, o: &Self) -> bool {
        let d = self.sub(o);
        d.coeffs.is_empty()
    }
}
