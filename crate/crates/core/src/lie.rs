//! Structure data of sl(2), the Witt algebras and Virasoro.

use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    /// span{L_{-1}, L_0, L_1}
    Sl2,
    /// i ≥ −1
    WittPos,
    /// i ≤ 1
    WittNeg,
    Witt,
    /// Witt plus the central element K
    Vir,
}

impl Algebra {
    pub fn contains(&self, i: i64) -> bool {
        match self {
            Algebra::Sl2 => (-1..=1).contains(&i),
            Algebra::WittPos => i >= -1,
            Algebra::WittNeg => i <= 1,
            Algebra::Witt | Algebra::Vir => true,
        }
    }

    pub fn check(&self, i: i64) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::OutOfSupport { index: i, algebra: self.to_string() })
        }
    }

    /// Support ∩ [−max, max].
    pub fn window(&self, max: i64) -> Vec<i64> {
        (-max..=max).filter(|&i| self.contains(i)).collect()
    }

    /// [L_i, L_j] = (i − j) L_{i+j}, as (coefficient, index).
    pub fn bracket(&self, i: i64, j: i64) -> Result<(i64, i64)> {
        self.check(i)?;
        self.check(j)?;
        let k = i + j;
        if i != j {
            self.check(k)?;
        }
        Ok((i - j, k))
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "sl2" => Algebra::Sl2,
            "witt>" | "witt_pos" | "wittpos" => Algebra::WittPos,
            "witt<" | "witt_neg" | "wittneg" => Algebra::WittNeg,
            "witt" => Algebra::Witt,
            "vir" => Algebra::Vir,
            _ => return None,
        })
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algebra::Sl2 => "sl2",
            Algebra::WittPos => "witt>",
            Algebra::WittNeg => "witt<",
            Algebra::Witt => "witt",
            Algebra::Vir => "vir",
        })
    }
}

/// Virasoro cocycle (i³ − i)/12 · δ_{i+j,0}.
pub fn vir_cocycle(i: i64, j: i64) -> Scalar {
    if i + j != 0 {
        return Scalar::zero();
    }
    Scalar::from_frac(i * i * i - i, 12)
}

/// Chevalley involution L_i ↦ (−1)^{i+1} L_{−i}, as (sign, index).
pub fn chevalley(i: i64) -> (i64, i64) {
    let sign = if (i + 1).rem_euclid(2) == 0 { 1 } else { -1 };
    (sign, -i)
}

/// Pochhammer symbol on scalars, with the reciprocal extension for negative n.
pub fn pochhammer(f: &Scalar, n: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    if n >= 0 {
        for k in 0..n {
            acc = &acc * &(f + &Scalar::from_int(k));
        }
        Ok(acc)
    } else {
        for k in n..0 {
            acc = &acc * &(f + &Scalar::from_int(k));
        }
        acc.inv()
    }
}

/// Pochhammer symbol P(L + s, n) on an operator: Π_{k<n} (L + s + k).
pub fn pochhammer_op<C: Coeff>(l: &DiffOp<C>, shift: &Scalar, n: i64) -> Result<DiffOp<C>> {
    if n < 0 {
        return Err(Error::NegativePochhammer);
    }
    let mut acc = DiffOp::one();
    for k in 0..n {
        let factor = l.add(&DiffOp::scalar(shift + &Scalar::from_int(k)));
        acc = acc.compose(&factor);
    }
    Ok(acc)
}

/// Coefficients (low degree first) of Π_{k<n} (X + s + k) as a polynomial in X.
pub fn pochhammer_poly(shift: &Scalar, n: i64) -> Result<Vec<Scalar>> {
    if n < 0 {
        return Err(Error::NegativePochhammer);
    }
    let mut p = vec![Scalar::one()];
    for k in 0..n {
        p = poly_mul(&p, &[shift + &Scalar::from_int(k), Scalar::one()]);
    }
    Ok(p)
}

/// Product of scalar polynomials in X (low degree first).
pub fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Ordered monomial L_1^a L_0^b L_{-1}^c in U(sl2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbwMonomial {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl PbwMonomial {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        PbwMonomial { a, b, c }
    }

    /// The monomial as a left-to-right word of generator indices.
    pub fn word(&self) -> Vec<i64> {
        let mut w = vec![1; self.a as usize];
        w.extend(std::iter::repeat_n(0, self.b as usize));
        w.extend(std::iter::repeat_n(-1, self.c as usize));
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocycle_values() {
        assert_eq!(vir_cocycle(3, -3), Scalar::from_int(2));
        assert_eq!(vir_cocycle(2, -2), Scalar::from_frac(1, 2));
        assert_eq!(vir_cocycle(2, -1), Scalar::zero());
        assert_eq!(vir_cocycle(1, -1), Scalar::zero());
    }

    #[test]
    fn chevalley_signs() {
        assert_eq!(chevalley(0), (-1, 0));
        assert_eq!(chevalley(1), (1, -1));
        assert_eq!(chevalley(-1), (1, 1));
        assert_eq!(chevalley(2), (-1, -2));
    }

    #[test]
    fn chevalley_is_an_automorphism() {
        for i in -5..=5 {
            for j in -5..=5 {
                if i == j {
                    continue;
                }
                let (k, m) = Algebra::Witt.bracket(i, j).unwrap();
                let (si, ii) = chevalley(i);
                let (sj, jj) = chevalley(j);
                let (k2, m2) = Algebra::Witt.bracket(ii, jj).unwrap();
                let (sm, mm) = chevalley(m);
                assert_eq!(m2, mm);
                assert_eq!(si * sj * k2, k * sm);
            }
        }
    }

    #[test]
    fn pochhammer_negative_index() {
        let f = Scalar::param("f");
        let p = pochhammer(&f, -1).unwrap();
        assert_eq!(p, (&f - &Scalar::one()).inv().unwrap());
        let q = pochhammer(&f, 3).unwrap();
        assert_eq!(q, &(&f * &(&f + &Scalar::one())) * &(&f + &Scalar::from_int(2)));
    }

    #[test]
    fn support_checks() {
        assert!(Algebra::Sl2.bracket(1, 1).is_ok());
        assert!(Algebra::WittPos.bracket(-1, -1).is_ok());
        assert!(Algebra::WittNeg.bracket(2, 0).is_err());
    }
}
