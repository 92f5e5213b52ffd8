use super::Representation;
use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Basis of operators Σ_{j ≤ max_order} Σ_{|k| ≤ max_degree} x_{jk} z^k ∂^j commuting with
/// the images of L_{−1}, L_0, L_1. Negative powers of z enter the ansatz only when some
/// image has them.
pub fn centralizer_check<C: Coeff>(
    rep: &Representation<C>,
    max_order: usize,
    max_degree: i64,
) -> Result<Vec<DiffOp<C>>> {
    let gens: Vec<&DiffOp<C>> = rep.images.iter().filter(|(i, _)| i.abs() <= 1).map(|(_, p)| p).collect();
    let mut laurent = false;
    for g in &gens {
        for c in g.coeffs() {
            let t = c
                .laurent_terms()
                .ok_or_else(|| Error::NotInRing("centralizer needs Laurent-polynomial coefficients".into()))?;
            laurent |= t.iter().any(|(e, _)| *e < 0);
        }
    }
    let low = if laurent { -max_degree } else { 0 };
    let basis: Vec<(usize, i64)> =
        (0..=max_order).flat_map(|j| (low..=max_degree).map(move |k| (j, k))).collect();
    let n = basis.len();
    // (generator, ∂-power, z-power) -> row
    let mut rows: BTreeMap<(usize, usize, i64), Vec<Scalar>> = BTreeMap::new();
    for (col, &(j, k)) in basis.iter().enumerate() {
        let e = DiffOp::term(C::z_pow(k)?, j);
        for (g_idx, g) in gens.iter().enumerate() {
            let br = e.bracket(g);
            for (a, c) in br.coeffs().iter().enumerate() {
                for (exp, s) in c.laurent_terms().expect("Laurent coefficients") {
                    rows.entry((g_idx, a, exp)).or_insert_with(|| vec![Scalar::zero(); n])[col] = s;
                }
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    let ns = nullspace(&rows, n);
    Ok(ns
        .into_iter()
        .map(|v| {
            let mut acc = DiffOp::zero();
            for (x, &(j, k)) in v.iter().zip(&basis) {
                if !x.is_zero() {
                    acc = acc.add(&DiffOp::term(C::z_pow(k).expect("unit").scale(x), j));
                }
            }
            acc
        })
        .collect())
}
