//! Modular gcd of dense polynomials over Z (Brown's small-primes algorithm).
//!
//! A gcd of degree 0 modulo a prime that divides neither leading coefficient proves
//! the gcd over Q is 1. Otherwise images are combined by CRT and the candidate is
//! accepted only after exact division of both inputs.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

const PRIME_COUNT: usize = 256;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these bases are exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over F_p; inputs have no trailing zeros.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        let db = b.len() - 1;
        while a.len() > db {
            let q = mul_mod(*a.last().unwrap(), inv, p);
            let k = a.len() - 1 - db;
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                let e = &mut a[i + k];
                *e = if *e >= t { *e - t } else { *e + p - t };
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = pow_mod(*a.last().unwrap(), p - 2, p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

/// Exact test that `d` divides `a` in Q[x], for primitive `d`: by Gauss's lemma the
/// quotient is then integral, so every step must divide by lc(d) exactly.
fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let lc = &d[dd];
    while r.len() > dd {
        let top = r.last().unwrap();
        let (q, rem) = top.div_rem(lc);
        if !rem.is_zero() {
            return false;
        }
        let k = r.len() - 1 - dd;
        for (i, dc) in d.iter().enumerate() {
            r[i + k] -= &q * dc;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r.is_empty()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    if v.last().is_some_and(Signed::is_negative) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

/// Primitive gcd of non-constant integer polynomials (lowest degree first), or `None`
/// when the prime table runs out.
pub fn gcd_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let gamma = la.gcd(lb);
    let mut best: Option<(usize, BigInt, Vec<BigInt>)> = None;
    let mut last_sym: Option<Vec<BigInt>> = None;
    for &p in primes() {
        if reduce(la, p) == 0 || reduce(lb, p) == 0 {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bp: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(ap, bp, p);
        if g.len() == 1 {
            return Some(vec![BigInt::one()]);
        }
        let gm = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mul_mod(c, gm, p)).collect();
        let deg = g.len() - 1;
        let (m, h) = match best.take() {
            Some(prev) if deg > prev.0 => {
                // unlucky prime
                best = Some(prev);
                continue;
            }
            Some((d, m, h)) if deg == d => {
                let pb = BigInt::from(p);
                let minv = BigInt::from(pow_mod(reduce(&m, p), p - 2, p));
                let h: Vec<BigInt> = h
                    .iter()
                    .zip(&g)
                    .map(|(hc, &gc)| {
                        let diff = (BigInt::from(gc) - hc).mod_floor(&pb);
                        let t = (diff * &minv).mod_floor(&pb);
                        hc + &m * t
                    })
                    .collect();
                (m * pb, h)
            }
            _ => {
                last_sym = None;
                (BigInt::from(p), g.iter().map(|&c| BigInt::from(c)).collect())
            }
        };
        let half = &m >> 1;
        let sym: Vec<BigInt> = h.iter().map(|c| if c > &half { c - &m } else { c.clone() }).collect();
        let stable = last_sym.as_ref() == Some(&sym);
        last_sym = Some(sym.clone());
        best = Some((deg, m, h));
        if stable {
            let cand = primitive(sym);
            if divides(&cand, a) && divides(&cand, b) {
                return Some(cand);
            }
        }
    }
    None
}
