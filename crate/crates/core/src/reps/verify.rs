use super::{Family, Representation};
use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::{vir_cocycle, Algebra};
use crate::par::{self, Strategy};
use crate::scalar::Scalar;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    Pass,
    Fail,
    /// The residual could not be decided (precision).
    Undecided,
}

#[derive(Clone, Debug)]
pub struct PairResult<C: Coeff> {
    pub i: i64,
    pub j: i64,
    pub status: PairStatus,
    /// [ρ(L_i), ρ(L_j)] − (i−j)ρ(L_{i+j}) − cocycle·ρ(K)
    pub residual: DiffOp<C>,
}

#[derive(Clone, Debug)]
pub struct BracketReport<C: Coeff> {
    pub pairs: Vec<PairResult<C>>,
}

impl<C: Coeff> BracketReport<C> {
    pub fn all_pass(&self) -> bool {
        self.pairs.iter().all(|p| p.status == PairStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairResult<C>> {
        self.pairs.iter().filter(|p| p.status != PairStatus::Pass)
    }
}

/// Checks every pair i < j with i, j, i + j among the available images in [−max, max].
pub fn verify_brackets<C: Coeff>(rep: &Representation<C>, max: i64, strategy: Strategy) -> BracketReport<C> {
    let idx: Vec<i64> = rep.indices().into_iter().filter(|i| i.abs() <= max).collect();
    let mut pairs = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            if rep.images.contains_key(&(i + j)) && (i + j).abs() <= max {
                pairs.push((i, j));
            }
        }
    }
    let results = par::map(&pairs, strategy, |&(i, j)| check_pair(rep, i, j));
    BracketReport { pairs: results }
}

fn check_pair<C: Coeff>(rep: &Representation<C>, i: i64, j: i64) -> PairResult<C> {
    let pi = &rep.images[&i];
    let pj = &rep.images[&j];
    let mut rhs = rep.images[&(i + j)].scale(&Scalar::from_int(i - j));
    if let (Algebra::Vir, Some(k)) = (rep.algebra, rep.central.as_ref()) {
        let w = vir_cocycle(i, j);
        if !w.is_zero() {
            rhs = rhs.add(&k.scale(&w));
        }
    }
    let lhs = pi.bracket(pj);
    let status = match lhs.equals_checked(&rhs) {
        Ok(true) => PairStatus::Pass,
        Ok(false) => PairStatus::Fail,
        Err(_) => PairStatus::Undecided,
    };
    PairResult { i, j, status, residual: lhs.sub(&rhs) }
}

/// 4((L₀ − 1/2)² − L₋₁L₁).
pub fn casimir_op<C: Coeff>(rep: &Representation<C>) -> Result<DiffOp<C>> {
    let l0 = rep.image(0)?.sub(&DiffOp::scalar(Scalar::from_frac(1, 2)));
    let prod = rep.image(-1)?.compose(rep.image(1)?);
    Ok(l0.compose(&l0).sub(&prod).scale(&Scalar::from_int(4)))
}

pub fn casimir_value<C: Coeff>(rep: &Representation<C>) -> Result<Scalar> {
    casimir_op(rep)?.as_scalar().ok_or(Error::NonScalarCasimir)
}

/// Order of ρ(L_i) for each family.
pub fn expected_order(family: Family, i: i64) -> i64 {
    match family.sl2_shape() {
        Family::S1 => 1,
        Family::S0 => i + 1,
        _ => 1 - i,
    }
}

/// a_i = h^{i+n_i} (−h′)^{−n_i}.
pub fn expected_symbol<C: Coeff>(family: Family, h: &C, i: i64) -> Result<C> {
    let n = expected_order(family, i);
    let minus_hp = h.derive().neg();
    Ok(h.powi(i + n)?.mul(&minus_hp.powi(-n)?))
}
