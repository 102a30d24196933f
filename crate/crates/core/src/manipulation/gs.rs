use serde::Serialize;

use super::ManipulationWitness;
use crate::error::{Error, Result};
use crate::scf::{Distances, Scf, TabularScf};

/// Result of the brute-force search for a manipulation.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GsOutcome {
    Witness(ManipulationWitness),
    /// `f` takes fewer than three values or depends on a single voter.
    NotApplicable {
        values: usize,
    },
}

impl GsOutcome {
    pub fn witness(&self) -> Option<&ManipulationWitness> {
        match self {
            GsOutcome::Witness(w) => Some(w),
            GsOutcome::NotApplicable { .. } => None,
        }
    }
}

/// The first manipulation pair in scan order (profiles by index, then
/// voters, then replacement rankings in Lehmer order), if any.
pub(crate) fn first_manipulation(t: &TabularScf) -> Option<ManipulationWitness> {
    for idx in 0..t.len() {
        let now = t.get(idx);
        for i in 0..t.n() {
            let c = t.code_at(idx, i);
            let xi = t.ranking(c);
            let base = xi.rank_of(now);
            for code in 0..t.radix() {
                if code != c && xi.rank_of(t.get(t.replace(idx, i, code))) < base {
                    return Some(ManipulationWitness {
                        x: t.profile(idx),
                        y: t.profile(t.replace(idx, i, code)),
                        voter: i,
                        r: None,
                    });
                }
            }
        }
    }
    None
}

/// A manipulation of any `f` that takes at least three values and is not a
/// function of a single voter. Finding none for such an `f` is reported as
/// a theorem violation.
pub fn gs_witness(f: &Scf, cap: u128) -> Result<GsOutcome> {
    let t = f.tabulate(cap)?;
    let values = t.values().len();
    if values < 3 || Distances::of_table(&t).to_dict == crate::exact::zero() {
        return Ok(GsOutcome::NotApplicable { values });
    }
    match first_manipulation(&t) {
        Some(w) => Ok(GsOutcome::Witness(w)),
        None => Err(Error::TheoremViolation(format!(
            "{} takes {values} values, is not a dictator, and has no manipulation point",
            f.name()
        ))),
    }
}
