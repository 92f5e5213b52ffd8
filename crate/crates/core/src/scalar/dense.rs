//! Integer fast paths for dense univariate polynomials whose coefficients are real
//! polynomials in the parameters. Denominators are cleared once per operand, so the
//! inner loops run on `BigInt` without normalizing every product.

use super::gauss::GaussRat;
use super::mpoly::{MPoly, Mono};
use super::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Σ_k Σ_m n_{k,m} p^m z^k / den.
struct IntPoly {
    den: BigInt,
    coeffs: Vec<Vec<(Mono, BigInt)>>,
}

fn to_int(v: &[Scalar]) -> Option<IntPoly> {
    let mut den = BigInt::one();
    for s in v {
        if !s.den.is_one() {
            return None;
        }
        for (_, g) in s.num.terms() {
            if !g.is_real() {
                return None;
            }
            if !g.re.denom().is_one() {
                den = den.lcm(g.re.denom());
            }
        }
    }
    let coeffs = v
        .iter()
        .map(|s| {
            s.num
                .terms()
                .iter()
                .map(|(m, g)| {
                    let n = if den.is_one() { g.re.numer().clone() } else { g.re.numer() * (&den / g.re.denom()) };
                    (m.clone(), n)
                })
                .collect()
        })
        .collect();
    Some(IntPoly { den, coeffs })
}

fn scalar_from(terms: impl IntoIterator<Item = (Mono, BigInt)>, den: &BigInt) -> Scalar {
    let raw: Vec<(Mono, GaussRat)> = terms
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(m, n)| {
            let r = if den.is_one() { BigRational::from_integer(n) } else { BigRational::new(n, den.clone()) };
            (m, GaussRat::from_rational(r))
        })
        .collect();
    Scalar::from_poly(MPoly::from_terms(raw))
}

/// Product of coefficient vectors (lowest degree first), when both qualify.
pub(crate) fn mul(a: &[Scalar], b: &[Scalar]) -> Option<Vec<Scalar>> {
    mul_trunc(a, b, a.len() + b.len() - 1)
}

/// The first `n` coefficients of the product.
pub(crate) fn mul_trunc(a: &[Scalar], b: &[Scalar], n: usize) -> Option<Vec<Scalar>> {
    let (x, y) = (to_int(a)?, to_int(b)?);
    let numeric = x.coeffs.iter().chain(&y.coeffs).all(|c| c.iter().all(|(m, _)| m.is_one()));
    let den = &x.den * &y.den;
    if numeric {
        let dense = |p: &IntPoly| -> Vec<BigInt> {
            p.coeffs.iter().map(|c| c.first().map(|(_, n)| n.clone()).unwrap_or_default()).collect()
        };
        let (xd, yd) = (dense(&x), dense(&y));
        let mut acc = vec![BigInt::zero(); n];
        for (i, p) in xd.iter().enumerate().take(n) {
            if p.is_zero() {
                continue;
            }
            for (j, q) in yd.iter().enumerate().take(n.saturating_sub(i)) {
                if !q.is_zero() {
                    acc[i + j] += p * q;
                }
            }
        }
        return Some(acc.into_iter().map(|v| scalar_from([(Mono::one(), v)], &den)).collect());
    }
    let mut acc: Vec<HashMap<Mono, BigInt>> = vec![HashMap::new(); n];
    for (i, xs) in x.coeffs.iter().enumerate().take(n) {
        for (j, ys) in y.coeffs.iter().enumerate().take(n - i) {
            for (mx, nx) in xs {
                for (my, ny) in ys {
                    *acc[i + j].entry(mx.mul(my)).or_insert_with(BigInt::zero) += nx * ny;
                }
            }
        }
    }
    Some(acc.into_iter().map(|m| scalar_from(m, &den)).collect())
}

/// Exact quotient by a divisor with constant real coefficients.
/// `None`: the fast path does not apply. `Some(None)`: not divisible.
pub(crate) fn div_exact_numeric(a: &[Scalar], d: &[Scalar]) -> Option<Option<Vec<Scalar>>> {
    if d.len() < 2 || a.len() < d.len() {
        return None;
    }
    let dp = to_int(d)?;
    if dp.coeffs.iter().any(|c| c.iter().any(|(m, _)| !m.is_one())) {
        return None;
    }
    let ap = to_int(a)?;
    let mut dz: Vec<BigInt> = dp.coeffs.iter().map(|c| c.first().map(|(_, n)| n.clone()).unwrap_or_default()).collect();
    let mut content = BigInt::zero();
    for c in &dz {
        content = content.gcd(c);
    }
    for c in dz.iter_mut() {
        *c = &*c / &content;
    }
    let mut comps: HashMap<Mono, Vec<BigInt>> = HashMap::new();
    for (k, terms) in ap.coeffs.iter().enumerate() {
        for (m, n) in terms {
            comps.entry(m.clone()).or_insert_with(|| vec![BigInt::zero(); a.len()])[k] = n.clone();
        }
    }
    // a = Σ_m a_m p^m / den_a and d = (content / den_d)·dz with dz primitive, so by Gauss's
    // lemma each a_m / dz is integral when it exists.
    let qlen = a.len() - d.len() + 1;
    let dd = dz.len() - 1;
    let lc = dz[dd].clone();
    let mut quots: Vec<(Mono, Vec<BigInt>)> = Vec::with_capacity(comps.len());
    for (m, mut r) in comps {
        let mut q = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (f, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return Some(None);
            }
            for (i, dc) in dz.iter().enumerate() {
                r[k + i] -= &f * dc;
            }
            q[k] = f;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Some(None);
        }
        quots.push((m, q));
    }
    let den = &ap.den * &content;
    let out = (0..qlen)
        .map(|k| scalar_from(quots.iter().map(|(m, q)| (m.clone(), &q[k] * &dp.den)), &den))
        .collect();
    Some(Some(out))
}
