//! Representations by differential operators: construction, verification, classification.

mod build;
mod centralizer;
mod classify;
mod companion;
mod verify;

pub use build::{build, build_lambda_unchecked, build_with_algebra, chevalley_transport, first_order_l};
pub use centralizer::centralizer_check;
pub use classify::{classify, semi_level, Classification};
pub use companion::{companion_extension, CompanionResult};
pub use verify::{
    casimir_op, casimir_value, expected_order, expected_symbol, verify_brackets, BracketReport, PairResult,
    PairStatus,
};

use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::lie::Algebra;
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The six classified families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// sl2, order sequence (0, 1, 2)
    S0,
    /// sl2, order sequence (1, 1, 1)
    S1,
    /// sl2, order sequence (2, 1, 0)
    S2,
    /// Witt_>, orders i + 1
    R0,
    /// Witt, orders 1
    R1,
    /// Witt_<, orders 1 − i
    R2,
}

impl Family {
    pub fn default_algebra(&self) -> Algebra {
        match self {
            Family::S0 | Family::S1 | Family::S2 => Algebra::Sl2,
            Family::R0 => Algebra::WittPos,
            Family::R1 => Algebra::Witt,
            Family::R2 => Algebra::WittNeg,
        }
    }

    /// The sl2 family that this family restricts to.
    pub fn sl2_shape(&self) -> Family {
        match self {
            Family::S0 | Family::R0 => Family::S0,
            Family::S1 | Family::R1 => Family::S1,
            Family::S2 | Family::R2 => Family::S2,
        }
    }

    pub fn needs_lambda(&self) -> bool {
        matches!(self, Family::R0 | Family::R2)
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Some(match s.to_ascii_uppercase().as_str() {
            "S0" => Family::S0,
            "S1" => Family::S1,
            "S2" => Family::S2,
            "R0" => Family::R0,
            "R1" => Family::R1,
            "R2" => Family::R2,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Classification data (h, b, c) plus the branch λ for the Witt half-line families.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<C: Coeff> {
    pub h: C,
    pub b: C,
    pub c: Scalar,
    pub lambda: Option<Scalar>,
}

impl<C: Coeff> Triple<C> {
    pub fn new(h: C, b: C, c: Scalar) -> Self {
        Triple { h, b, c, lambda: None }
    }

    pub fn with_lambda(mut self, lambda: Scalar) -> Self {
        self.lambda = Some(lambda);
        self
    }

    /// λ ∈ {c, −c−1}.
    pub fn check_branch(&self) -> Result<Scalar> {
        let lam = self.lambda.clone().ok_or(Error::InvalidBranch)?;
        let other = &(-&self.c) - &Scalar::one();
        if lam == self.c || lam == other {
            Ok(lam)
        } else {
            Err(Error::InvalidBranch)
        }
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(Triple {
            h: self.h.map_scalars(f)?,
            b: self.b.map_scalars(f)?,
            c: f(&self.c)?,
            lambda: self.lambda.as_ref().map(f).transpose()?,
        })
    }
}

/// Images of the generators L_i, plus the central element for Virasoro.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<C: Coeff> {
    pub algebra: Algebra,
    pub images: BTreeMap<i64, DiffOp<C>>,
    pub central: Option<DiffOp<C>>,
}

impl<C: Coeff> Representation<C> {
    pub fn new(algebra: Algebra) -> Self {
        Representation { algebra, images: BTreeMap::new(), central: None }
    }

    pub fn from_images(algebra: Algebra, images: BTreeMap<i64, DiffOp<C>>) -> Result<Self> {
        for i in images.keys() {
            algebra.check(*i)?;
        }
        Ok(Representation { algebra, images, central: None })
    }

    pub fn image(&self, i: i64) -> Result<&DiffOp<C>> {
        self.images
            .get(&i)
            .ok_or_else(|| Error::Precondition(format!("image of L_{i} is not available")))
    }

    pub fn indices(&self) -> Vec<i64> {
        self.images.keys().copied().collect()
    }

    /// Restriction to a set of indices.
    pub fn restrict(&self, algebra: Algebra, keep: impl Fn(i64) -> bool) -> Self {
        Representation {
            algebra,
            images: self.images.iter().filter(|(i, _)| keep(**i)).map(|(i, p)| (*i, p.clone())).collect(),
            central: None,
        }
    }

    /// The sl2 part {L_{-1}, L_0, L_1}.
    pub fn restrict_sl2(&self) -> Result<Self> {
        for i in -1..=1 {
            self.image(i)?;
        }
        Ok(self.restrict(Algebra::Sl2, |i| i.abs() <= 1))
    }

    /// Apply `f` to every image.
    pub fn try_map<D: Coeff>(&self, f: impl Fn(&DiffOp<C>) -> Result<DiffOp<D>>) -> Result<Representation<D>> {
        Ok(Representation {
            algebra: self.algebra,
            images: self.images.iter().map(|(i, p)| Ok((*i, f(p)?))).collect::<Result<_>>()?,
            central: self.central.as_ref().map(&f).transpose()?,
        })
    }
}
