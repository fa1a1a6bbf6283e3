//! Lifting permutation monodromies to `B_n^{(1)}` (exactly, by integer linear
//! algebra) and to `B_n` (by bounded search, certified in quotients).

mod bn1;
mod bounded;
mod snf;

use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bn1::{linear_system, lift_to_bn1, obstruction_report, relator_product, Bn1Lift, LinearSystem, ObstructionReport};
pub use bounded::{lift_to_bn_bounded, BoundedOptions, BraidLift, LiftCertificate};
pub use snf::{smith_normal_form, Smith};

use crate::braid::{abelianize, AbelianizedBraidElement, BraidError, BraidWord, MAX_AB_STRANDS};
use crate::perm::Permutation;
use crate::surface::SurfaceMonodromy;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LiftError {
    #[error("no lift with the given peripheral targets")]
    NoSolution,
    #[error("malformed lift problem: {0}")]
    Malformed(String),
    #[error("no lift found within the bound ({explored} candidates examined)")]
    NotFoundWithinBound { explored: u64, exhausted: bool },
    #[error("peripheral target {puncture} is not splittable: {reason}")]
    PeripheralNotSplittable { puncture: usize, reason: String },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// A peripheral target: a braid word or an element of `B_n^{(1)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PeripheralTarget {
    Word(BraidWord),
    Element(AbelianizedBraidElement),
}

impl PeripheralTarget {
    pub fn abelianized(&self) -> AbelianizedBraidElement {
        match self {
            PeripheralTarget::Word(w) => abelianize(w),
            PeripheralTarget::Element(e) => e.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum LiftLevel {
    Bn1,
    BnBounded { len_max: usize },
}

impl FromStr for LiftLevel {
    type Err = LiftError;

    /// `bn1` or `bn:len=<k>`.
    fn from_str(s: &str) -> Result<Self, LiftError> {
        let s = s.trim();
        if s == "bn1" {
            return Ok(LiftLevel::Bn1);
        }
        if let Some(rest) = s.strip_prefix("bn:len=") {
            let len_max = rest
                .parse()
                .map_err(|_| LiftError::Malformed(format!("bad length in {s:?}")))?;
            return Ok(LiftLevel::BnBounded { len_max });
        }
        Err(LiftError::Malformed(format!("unknown lift level {s:?}")))
    }
}

/// A permutation monodromy together with peripheral targets.
#[derive(Clone, Debug)]
pub struct LiftProblem {
    pub monodromy: SurfaceMonodromy,
    pub peripheral: Vec<PeripheralTarget>,
    pub level: LiftLevel,
}

impl LiftProblem {
    pub fn new(monodromy: SurfaceMonodromy, peripheral: Vec<PeripheralTarget>, level: LiftLevel) -> Self {
        LiftProblem {
            monodromy,
            peripheral,
            level,
        }
    }

    pub fn strands(&self) -> Result<usize, LiftError> {
        let n = self
            .monodromy
            .group()
            .permutation_degree()
            .ok_or_else(|| LiftError::Malformed("target group has no permutation realization".into()))?;
        if n < 2 || (self.level == LiftLevel::Bn1 && n > MAX_AB_STRANDS) {
            return Err(LiftError::Malformed(format!("unsupported strand count {n}")));
        }
        Ok(n)
    }

    pub(crate) fn permutations(&self) -> Result<&[Permutation], LiftError> {
        self.monodromy
            .group()
            .permutations()
            .ok_or_else(|| LiftError::Malformed("target group has no permutation realization".into()))
    }

    /// Peripheral targets in `B_n^{(1)}`, checked against the monodromy.
    pub fn peripheral_elements(&self) -> Result<Vec<AbelianizedBraidElement>, LiftError> {
        let n = self.strands()?;
        let t = &self.monodromy;
        if self.peripheral.len() != t.punctures() {
            return Err(LiftError::Malformed(format!(
                "{} peripheral targets for {} punctures",
                self.peripheral.len(),
                t.punctures()
            )));
        }
        if !t.validate() {
            return Err(LiftError::Malformed("monodromy fails the relator".into()));
        }
        let perms = self.permutations()?;
        self.peripheral
            .iter()
            .zip(t.c_all())
            .enumerate()
            .map(|(j, (target, &c))| {
                let e = target.abelianized();
                if e.strands() != n || e.lk.len() != n * (n - 1) / 2 {
                    return Err(LiftError::Malformed(format!("peripheral target {j} has the wrong shape")));
                }
                if e.perm != perms[c] {
                    return Err(LiftError::Malformed(format!(
                        "peripheral target {j} projects to {} instead of {}",
                        e.perm, perms[c]
                    )));
                }
                Ok(e)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests;
