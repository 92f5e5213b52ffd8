//! Seeded generators shared by the acceptance harness and the property tests.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wittrep::coeff::Coeff;
use wittrep::laurent::LaurentTrunc;
use wittrep::lpoly::LaurentPoly;
use wittrep::ratfunc::RatFunc;
use wittrep::reps::{Family, Triple};
use wittrep::scalar::Scalar;
use wittrep::upoly::UPoly;

pub const SERIES_PREC: i64 = 24;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn formal_c() -> Scalar {
    Scalar::param("c")
}

pub fn small_int(r: &mut ChaCha8Rng) -> i64 {
    r.gen_range(-3..=3)
}

pub fn nonzero_int(r: &mut ChaCha8Rng) -> i64 {
    let k = r.gen_range(1..=3);
    if r.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_frac(r.gen_range(-6..=6), r.gen_range(1..=3))
}

pub fn upoly(r: &mut ChaCha8Rng, deg: usize) -> UPoly {
    UPoly::from_coeffs((0..=deg).map(|_| Scalar::from_int(small_int(r))).collect())
}

/// Numerator and denominator of degree ≤ `deg`; the denominator does not vanish at 0.
pub fn ratfunc(r: &mut ChaCha8Rng, deg: usize) -> RatFunc {
    loop {
        let (dn, dd) = (r.gen_range(0..=deg), r.gen_range(0..=deg));
        let num = upoly(r, dn);
        let mut den = upoly(r, dd);
        let lead = Scalar::from_int(nonzero_int(r));
        den = den.sub(&UPoly::constant(den.coeff(0))).add(&UPoly::constant(lead));
        if let Ok(f) = RatFunc::new(num, den) {
            return f;
        }
    }
}

/// A non-constant rational function, suitable as h.
pub fn ratfunc_h(r: &mut ChaCha8Rng, deg: usize) -> RatFunc {
    loop {
        let f = ratfunc(r, deg);
        if !f.derive().is_zero() {
            return f;
        }
    }
}

pub fn series_of(f: &RatFunc) -> LaurentTrunc {
    LaurentTrunc::from_ratfunc(f, SERIES_PREC).expect("denominator is a unit times a power of z")
}

/// Units of C[z, 1/z] with non-zero derivative.
pub fn lpoly_h(r: &mut ChaCha8Rng) -> LaurentPoly {
    let e = [-2, -1, 1, 2][r.gen_range(0..4)];
    LaurentPoly::monomial(Scalar::from_int(nonzero_int(r)), e)
}

pub fn lpoly(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=hi).map(|e| (e, Scalar::from_int(small_int(r)))))
}

/// λ drawn from the two admissible branches.
pub fn with_branch<C: Coeff>(r: &mut ChaCha8Rng, t: Triple<C>) -> Triple<C> {
    let lam = if r.gen_bool(0.5) { t.c.clone() } else { &(-&t.c) - &Scalar::one() };
    t.with_lambda(lam)
}

pub fn ratfunc_triple(r: &mut ChaCha8Rng, family: Family, c: Scalar) -> Triple<RatFunc> {
    let t = Triple::new(ratfunc_h(r, 3), ratfunc(r, 3), c);
    if family.needs_lambda() {
        with_branch(r, t)
    } else {
        t
    }
}

pub fn series_triple(r: &mut ChaCha8Rng, family: Family, c: Scalar) -> Triple<LaurentTrunc> {
    let t = ratfunc_triple(r, family, c);
    Triple { h: series_of(&t.h), b: series_of(&t.b), c: t.c, lambda: t.lambda }
}

pub fn lpoly_triple(r: &mut ChaCha8Rng, family: Family, c: Scalar) -> Triple<LaurentPoly> {
    let t = Triple::new(lpoly_h(r), lpoly(r, -3, 3), c);
    if family.needs_lambda() {
        with_branch(r, t)
    } else {
        t
    }
}
