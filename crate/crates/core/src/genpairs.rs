//! Whether a stabiliser subgroup together with two maps generates ℕ^ℕ.
//!
//! A subsemigroup containing the stabiliser generates everything iff no
//! maximal subsemigroup containing that stabiliser contains it, so each
//! decider scans the relevant families and reports the first one holding
//! both maps.

use std::collections::BTreeSet;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::card::{Threshold, Tri};
use crate::classify::{classify, ClassifyError, Family, FilterOracle, Side};
use crate::mapexpr::MapExpr;
use crate::relcalc::MAX_N;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("only principal filters are supported, not {0}")]
    UnsupportedFilter(FilterOracle),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// The stabilised structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Context {
    /// The whole symmetric group.
    Sym,
    /// The pointwise stabiliser of a finite nonempty set.
    PointwiseStab(BTreeSet<u64>),
    /// The stabiliser of a filter.
    Filter(FilterOracle),
    /// The stabiliser of the partition into residues mod `n`.
    Partition(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Generates,
    DoesNotGenerate { witness: Family },
    Unknown { blocking: String },
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        match self {
            Decision::Generates => m.serialize_entry("answer", "generates")?,
            Decision::DoesNotGenerate { witness } => {
                m.serialize_entry("answer", "does_not_generate")?;
                m.serialize_entry(
                    "witness",
                    &serde_json::json!({
                        "family": witness.name(),
                        "params": witness.params(),
                        "display": witness.to_string(),
                    }),
                )?;
            }
            Decision::Unknown { blocking } => {
                m.serialize_entry("answer", "unknown")?;
                m.serialize_entry("blocking", blocking)?;
            }
        }
        m.end()
    }
}

/// The maximal subsemigroups containing the stabiliser of `context`, in the
/// order witnesses are searched.
pub fn families(context: &Context) -> Result<Vec<Family>, GenError> {
    let mut out = Family::SYMMETRIC.to_vec();
    match context {
        Context::Sym => {}
        Context::PointwiseStab(sigma) => {
            if sigma.is_empty() {
                return Err(GenError::InvalidParameters("Σ must be nonempty".into()));
            }
            if sigma.len() > 16 {
                return Err(GenError::InvalidParameters("Σ has more than 16 points".into()));
            }
            let points: Vec<u64> = sigma.iter().copied().collect();
            for mask in 1u32..1 << points.len() {
                let gamma: BTreeSet<u64> =
                    points.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
                out.extend(stab_families(&gamma, |side, mu| Family::F { side, gamma: gamma.clone(), mu }));
            }
        }
        Context::Filter(filter @ FilterOracle::Principal(gamma)) => {
            out.extend(stab_families(gamma, |side, mu| Family::U { side, filter: filter.clone(), mu }));
        }
        Context::Filter(filter) => return Err(GenError::UnsupportedFilter(filter.clone())),
        Context::Partition(n) => {
            if !(2..=MAX_N).contains(n) {
                return Err(GenError::InvalidParameters(format!("partition size {n} outside 2..={MAX_N}")));
            }
            out.extend([Side::One, Side::Two].map(|side| Family::A { side, n: *n }));
        }
    }
    Ok(out)
}

fn stab_families(gamma: &BTreeSet<u64>, make: impl Fn(Side, Threshold) -> Family) -> Vec<Family> {
    let mut out = Vec::new();
    for side in [Side::One, Side::Two] {
        for mu in Threshold::ALL {
            if side == Side::Two && mu == Threshold::Aleph0 && gamma.len() == 1 {
                continue;
            }
            out.push(make(side, mu));
        }
    }
    out
}

pub fn decide_pair(context: &Context, f: &MapExpr, g: &MapExpr) -> Result<Decision, GenError> {
    let mut blocking = None;
    for family in families(context)? {
        let answer = |e: &MapExpr| match classify(&family, e) {
            Ok(v) => Ok((v.answer, v.reason)),
            Err(ClassifyError::Undecidable(why)) => Ok((Tri::Unknown, why)),
            Err(ClassifyError::InvalidParameters(why)) => Err(GenError::InvalidParameters(why)),
        };
        let (in_f, why_f) = answer(f)?;
        let (in_g, why_g) = answer(g)?;
        match in_f & in_g {
            Tri::Yes => return Ok(Decision::DoesNotGenerate { witness: family }),
            Tri::Unknown if blocking.is_none() => {
                let why = if in_f == Tri::Unknown { why_f } else { why_g };
                blocking = Some(format!("{family}: {why}"));
            }
            _ => {}
        }
    }
    Ok(match blocking {
        Some(blocking) => Decision::Unknown { blocking },
        None => Decision::Generates,
    })
}

pub fn decide_sym_pair(f: &MapExpr, g: &MapExpr) -> Decision {
    decide_pair(&Context::Sym, f, g).expect("symmetric-group families are always valid")
}

pub fn decide_pointwise_stab_pair(sigma: &BTreeSet<u64>, f: &MapExpr, g: &MapExpr) -> Result<Decision, GenError> {
    decide_pair(&Context::PointwiseStab(sigma.clone()), f, g)
}

pub fn decide_filter_pair(filter: &FilterOracle, f: &MapExpr, g: &MapExpr) -> Result<Decision, GenError> {
    decide_pair(&Context::Filter(filter.clone()), f, g)
}

pub fn decide_partition_pair(n: usize, f: &MapExpr, g: &MapExpr) -> Result<Decision, GenError> {
    decide_pair(&Context::Partition(n), f, g)
}
