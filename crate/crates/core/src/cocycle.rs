//! Residues, the Gelfand–Fuks cocycle on C[z, 1/z][∂] and its pullback to Witt.

use crate::coeff::{Coeff, CoeffElem};
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::laurent::LaurentTrunc;
use crate::lie::vir_cocycle;
use crate::lpoly::LaurentPoly;
use crate::reps::{Representation, Triple};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Coefficient of z⁻¹.
pub fn residue(f: &CoeffElem) -> Result<Scalar> {
    match f {
        CoeffElem::LPoly(p) => Ok(p.coeff(-1)),
        CoeffElem::Series(s) => s
            .coeff(-1)
            .ok_or_else(|| Error::InsufficientPrecision(format!("series known only modulo z^{}", s.prec()))),
        CoeffElem::Rat(r) => match LaurentPoly::from_ratfunc(r) {
            Ok(p) => Ok(p.coeff(-1)),
            Err(_) => residue(&CoeffElem::Series(LaurentTrunc::from_ratfunc(r, 0)?)),
        },
    }
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| &acc * &Scalar::from_int(k))
}

fn laurent_coeffs<C: Coeff>(p: &DiffOp<C>) -> Result<Vec<LaurentPoly>> {
    p.coeffs()
        .iter()
        .map(|c| c.laurent_terms().map(LaurentPoly::from_terms).ok_or(Error::RingMismatch))
        .collect()
}

fn nth_derivative(f: &LaurentPoly, n: usize) -> LaurentPoly {
    (0..n).fold(f.clone(), |acc, _| acc.derive())
}

/// Σ m!n!/(m+n+1)! Res (∂^{n+1} f)(∂^m g) over the parts f∂^m of P and g∂^n of Q.
pub fn gf_cocycle<C: Coeff>(p: &DiffOp<C>, q: &DiffOp<C>) -> Result<Scalar> {
    let (ps, qs) = (laurent_coeffs(p)?, laurent_coeffs(q)?);
    let mut acc = Scalar::zero();
    for (m, f) in ps.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        for (n, g) in qs.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let res = nth_derivative(f, n + 1).mul(&nth_derivative(g, m)).coeff(-1);
            if res.is_zero() {
                continue;
            }
            let w = &(&factorial(m) * &factorial(n)) / &factorial(m + n + 1);
            acc = &acc + &(&w * &res);
        }
    }
    Ok(acc)
}

/// Pullback values ρ*Ψ_GF(L_i, L_j) on generator pairs.
#[derive(Clone, Debug, Default)]
pub struct CocycleTable {
    pub values: BTreeMap<(i64, i64), Scalar>,
}

impl CocycleTable {
    pub fn get(&self, i: i64, j: i64) -> Option<&Scalar> {
        self.values.get(&(i, j))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.values.iter().all(|((i, j), v)| self.get(*j, *i).map(|w| (v + w).is_zero()).unwrap_or(true))
    }
}

pub fn pullback_table<C: Coeff>(r: &Representation<C>, bound: i64) -> Result<CocycleTable> {
    let mut values = BTreeMap::new();
    for i in -bound..=bound {
        for j in -bound..=bound {
            if let (Some(p), Some(q)) = (r.images.get(&i), r.images.get(&j)) {
                values.insert((i, j), gf_cocycle(p, q)?);
            }
        }
    }
    Ok(CocycleTable { values })
}

#[derive(Clone, Debug)]
pub struct PullbackReport {
    /// ρ*Ψ_GF = coefficient·Ψ + coboundary.
    pub coefficient: Scalar,
    /// ρ*Ψ_GF(L_1, L_{−1}); the coboundary contributes i times this on (L_i, L_{−i}).
    pub coboundary: Scalar,
    pub valuation: i64,
    /// (1 − 3(2c+1)²)·v(h).
    pub casimir_form: Scalar,
    /// −2(1 − 6c + 6c²)·v(h).
    pub printed_form: Scalar,
    pub table: CocycleTable,
}

/// Proportionality constant of ρ*Ψ_GF against Ψ(L_i, L_{−i}) = (i³ − i)/12, coboundary removed.
pub fn pullback_coefficient<C: Coeff>(r: &Representation<C>, t: &Triple<C>) -> Result<PullbackReport> {
    let v = t.h.valuation()?;
    let table = pullback_table(r, 4)?;
    let val = |i: i64| {
        table.get(i, -i).cloned().ok_or_else(|| Error::Precondition(format!("image of L_{i} or L_{} missing", -i)))
    };
    let v1 = val(1)?;
    let mut coefficient: Option<Scalar> = None;
    for i in 2..=4 {
        let ratio = &(&val(i)? - &(&v1 * &Scalar::from_int(i))) / &vir_cocycle(i, -i);
        match &coefficient {
            Some(prev) if *prev != ratio => {
                return Err(Error::NotProportional(format!("ratio at i = {i} is {ratio}, expected {prev}")))
            }
            Some(_) => {}
            None => coefficient = Some(ratio),
        }
    }
    let c = &t.c;
    let vs = Scalar::from_int(v);
    let two_c1 = &(c * &Scalar::from_int(2)) + &Scalar::one();
    let casimir_form = &(&Scalar::one() - &(&Scalar::from_int(3) * &(&two_c1 * &two_c1))) * &vs;
    let six = Scalar::from_int(6);
    let inner = &(&Scalar::one() - &(&six * c)) + &(&six * &(c * c));
    let printed_form = &(&Scalar::from_int(-2) * &inner) * &vs;
    Ok(PullbackReport { coefficient: coefficient.expect("three ratios"), coboundary: v1, valuation: v, casimir_form, printed_form, table })
}

/// [ρ(L_2), ρ(L_{−2})] − 4ρ(L_0) = ρ(K)/2 vanishes, and so does any supplied ρ(K).
pub fn central_charge_zero_check<C: Coeff>(r: &Representation<C>) -> Result<bool> {
    let lhs = r.image(2)?.bracket(r.image(-2)?).sub(&r.image(0)?.scale(&Scalar::from_int(4)));
    if !lhs.is_zero_checked()? {
        return Ok(false);
    }
    match &r.central {
        Some(k) => k.is_zero_checked(),
        None => Ok(true),
    }
}
