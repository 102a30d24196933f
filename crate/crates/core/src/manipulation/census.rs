use std::io::Write;

use serde::Serialize;

use super::bounds::{
    four_manipulation_bound, manipulation_bound, BoundCheck, FOUR_MANIPULATION_FORMULA, MANIPULATION_FORMULA,
};
use super::{min_manipulation_span, ManipulationTable};
use crate::error::{domain, Error, Result};
use crate::exact::{ratio, FracJson};
use crate::ranking::Profile;
use crate::sampling::{run_blocks, Estimate, Fraction, Mode};
use crate::scf::{is_neutral, Distances, Scf};

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub manip: u64,
    pub r2: u64,
    pub r3: u64,
    pub r4: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fractions {
    pub manip: Fraction,
    pub r2: Fraction,
    pub r3: Fraction,
    pub r4: Fraction,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    /// Bound on the fraction of manipulation points.
    pub manipulation: BoundCheck,
    /// Bound on the fraction of 4-manipulation points.
    pub four_manipulation: BoundCheck,
}

/// Manipulation statistics of one function. Blocks wider than `q` are
/// capped at `q`, so for `q = 3` the `r4` count equals the `r3` count.
#[derive(Clone, Debug, Serialize)]
pub struct ManipulationCensus {
    pub rule: String,
    pub q: usize,
    pub n: usize,
    #[serde(flatten)]
    pub mode: Mode,
    /// Profiles enumerated, or samples drawn.
    pub total: u64,
    pub counts: Counts,
    pub fractions: Fractions,
    /// Exact distance to the dictators; absent in sampled mode.
    pub epsilon: Option<FracJson>,
    /// `None` when neutrality could not be decided exhaustively.
    pub neutral: Option<bool>,
    pub bounds: Option<Bounds>,
    /// `manip >= r4 >= r3 >= r2`.
    pub chain_holds: bool,
}

impl ManipulationCensus {
    /// False only when a bound whose hypotheses hold is violated.
    pub fn bounds_ok(&self) -> bool {
        self.bounds.as_ref().is_none_or(|b| b.manipulation.ok() && b.four_manipulation.ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("census serialises")
    }
}

pub fn census(f: &Scf, mode: Mode, cap: u128) -> Result<ManipulationCensus> {
    let (q, n) = (f.q(), f.n());
    match mode {
        Mode::Exact => {
            let t = f.tabulate(cap)?;
            let m = ManipulationTable::build(&t);
            let total = t.len();
            let counts = Counts { manip: m.count(), r2: m.count_r(2), r3: m.count_r(3), r4: m.count_r(4) };
            let frac = |c: u64| ratio(c, total);
            let manip = frac(counts.manip);
            let r4 = frac(counts.r4);
            let eps = Distances::of_table(&t).to_dict;
            let fs = Scf::tabular(t);
            let neutral = match is_neutral(&fs, Mode::Exact, cap) {
                Ok(v) => Some(v.is_neutral()),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            };
            let applicable = q >= 4 && neutral == Some(true);
            let bounds = Bounds {
                manipulation: BoundCheck::new(MANIPULATION_FORMULA, manipulation_bound(&eps, n, q), &manip, applicable),
                four_manipulation: BoundCheck::new(
                    FOUR_MANIPULATION_FORMULA,
                    four_manipulation_bound(&eps, n, q),
                    &r4,
                    applicable,
                ),
            };
            let chain_holds = counts.manip >= counts.r4 && counts.r4 >= counts.r3 && counts.r3 >= counts.r2;
            Ok(ManipulationCensus {
                rule: f.name(),
                q,
                n,
                mode,
                total,
                fractions: Fractions {
                    manip: Fraction::Exact(FracJson(manip)),
                    r2: Fraction::Exact(FracJson(frac(counts.r2))),
                    r3: Fraction::Exact(FracJson(frac(counts.r3))),
                    r4: Fraction::Exact(FracJson(r4)),
                },
                counts,
                epsilon: Some(FracJson(eps)),
                neutral,
                bounds: Some(bounds),
                chain_holds,
            })
        }
        Mode::Sampled { samples, seed } => {
            if samples == 0 {
                return domain("at least one sample is required");
            }
            let blocks = run_blocks(samples, seed, |rng, count| {
                let mut c = [0u64; 4];
                for _ in 0..count {
                    let x = Profile::random(rng, q, n);
                    if let Some(s) = min_manipulation_span(f, &x) {
                        c[0] += 1;
                        for (k, r) in (2..=4).enumerate() {
                            if s <= r {
                                c[k + 1] += 1;
                            }
                        }
                    }
                }
                c
            });
            let mut c = [0u64; 4];
            for b in blocks {
                for k in 0..4 {
                    c[k] += b[k];
                }
            }
            let est = |hits| Fraction::Sampled(Estimate::from_hits(hits, samples, seed));
            Ok(ManipulationCensus {
                rule: f.name(),
                q,
                n,
                mode,
                total: samples,
                fractions: Fractions { manip: est(c[0]), r2: est(c[1]), r3: est(c[2]), r4: est(c[3]) },
                counts: Counts { manip: c[0], r2: c[1], r3: c[2], r4: c[3] },
                epsilon: None,
                neutral: None,
                bounds: None,
                chain_holds: c[0] >= c[3] && c[3] >= c[2] && c[2] >= c[1],
            })
        }
    }
}

/// Writes `index,profile,winner,manipulable,min_span` for every profile.
pub fn write_profile_csv<W: Write>(f: &Scf, cap: u128, mut out: W) -> Result<()> {
    let t = f.tabulate(cap)?;
    let m = ManipulationTable::build(&t);
    writeln!(out, "index,profile,winner,manipulable,min_span")?;
    for idx in 0..t.len() {
        let span = m.min_span(idx).map_or(String::new(), |s| s.to_string());
        writeln!(out, "{idx},{},{},{},{span}", t.profile(idx), t.get(idx), m.is_manipulable(idx) as u8)?;
    }
    Ok(())
}
