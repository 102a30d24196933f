use rand::Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{ratio, Frac};
use crate::ranking::{rankings, Alt, Profile, Ranking};
use crate::sampling::{par_range_sum, run_blocks, Estimate};
use crate::scf::Scf;

/// How `Y` is drawn from `X` in a pair experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFlavor {
    /// Pick a voter uniformly and replace their ranking by a uniform one
    /// (which may equal the old ranking).
    ResetCoordinate,
    /// Pick a voter uniformly, a window of 4 consecutive positions uniformly,
    /// and a uniform permutation of the window (the identity included).
    AdjacentBlock4,
}

fn permute_window(x: &Ranking, start: usize, p: &Ranking) -> Ranking {
    let mut order = x.order().to_vec();
    for (k, &src) in p.order().iter().enumerate() {
        order[start + k] = x.order()[start + src as usize - 1];
    }
    Ranking::from_slice_unchecked(&order)
}

fn prefers_move(f: &Scf, x: &Profile, y: &Profile, i: usize) -> bool {
    let xi = x.voter(i);
    xi.rank_of(f.winner(y.voters())) < xi.rank_of(f.winner(x.voters()))
}

fn check_flavor(f: &Scf, flavor: PairFlavor) -> Result<()> {
    if flavor == PairFlavor::AdjacentBlock4 && f.q() < 4 {
        return domain(format!("4-blocks need q >= 4, got q={}", f.q()));
    }
    Ok(())
}

/// Monte Carlo estimate of `P((X, Y) is a manipulation pair)`.
pub fn estimate_pair_probability(f: &Scf, flavor: PairFlavor, samples: u64, seed: u64) -> Result<Estimate> {
    check_flavor(f, flavor)?;
    if samples == 0 {
        return domain("at least one sample is required");
    }
    let (q, n) = (f.q(), f.n());
    let windows: Vec<Ranking> = rankings(4).collect();
    let hits: u64 = run_blocks(samples, seed, |rng, count| {
        let mut hits = 0u64;
        for _ in 0..count {
            let x = Profile::random(rng, q, n);
            let i = rng.gen_range(0..n);
            let yi = match flavor {
                PairFlavor::ResetCoordinate => Ranking::random(rng, q),
                PairFlavor::AdjacentBlock4 => {
                    let start = rng.gen_range(0..=q - 4);
                    let p = &windows[rng.gen_range(0..windows.len())];
                    permute_window(x.voter(i), start, p)
                }
            };
            let y = x.with_voter(i, yi);
            if prefers_move(f, &x, &y, i) {
                hits += 1;
            }
        }
        hits
    })
    .into_iter()
    .sum();
    Ok(Estimate::from_hits(hits, samples, seed))
}

/// The same probability by full enumeration of the `(X, Y)` law.
pub fn exact_pair_probability(f: &Scf, flavor: PairFlavor, cap: u128) -> Result<Frac> {
    check_flavor(f, flavor)?;
    let t = f.tabulate(cap)?;
    let (q, n) = (t.q(), t.n());
    let radix = t.radix();
    let windows: Vec<Ranking> = rankings(4).collect();
    let hits = par_range_sum(t.len(), |range| {
        let mut hits = 0u64;
        for idx in range {
            let now = t.get(idx);
            for i in 0..n {
                let xi = *t.ranking(t.code_at(idx, i));
                let better = |code: u64| xi.rank_of(t.get(t.replace(idx, i, code))) < xi.rank_of(now);
                match flavor {
                    PairFlavor::ResetCoordinate => hits += (0..radix).filter(|&c| better(c)).count() as u64,
                    PairFlavor::AdjacentBlock4 => {
                        for start in 0..=q - 4 {
                            for p in &windows {
                                if better(t.code_of(&permute_window(&xi, start, p))) {
                                    hits += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
        hits
    });
    let per_profile = match flavor {
        PairFlavor::ResetCoordinate => n as u64 * radix,
        PairFlavor::AdjacentBlock4 => n as u64 * (q as u64 - 3) * 24,
    };
    Ok(ratio(hits, t.len() * per_profile))
}

/// One row of the plurality scaling table.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingRow {
    pub n: usize,
    /// Fraction of manipulation points.
    pub manip: Estimate,
    /// Fraction of profiles whose top plurality score beats the runner-up by
    /// at most one vote; every manipulation point is such a profile.
    pub near_tie: Estimate,
}

fn plurality_winner(q: usize, tops: &[Alt]) -> Alt {
    let mut score = [0u32; crate::ranking::MAX_Q + 1];
    for &a in tops {
        score[a as usize] += 1;
    }
    let best = *score[1..=q].iter().max().unwrap();
    tops.iter().copied().find(|&a| score[a as usize] == best).unwrap()
}

/// Plurality depends on ballots only through their top choices, so voter
/// `i` can reach exactly the outcomes obtained by changing their top.
fn plurality_manipulable(q: usize, x: &Profile) -> bool {
    let mut tops: Vec<Alt> = x.voters().iter().map(|r| r.top()).collect();
    let now = plurality_winner(q, &tops);
    for i in 0..tops.len() {
        let own = tops[i];
        let xi = x.voter(i);
        for b in 1..=q as Alt {
            if b == own {
                continue;
            }
            tops[i] = b;
            let w = plurality_winner(q, &tops);
            if xi.rank_of(w) < xi.rank_of(now) {
                return true;
            }
        }
        tops[i] = own;
    }
    false
}

fn near_tie(q: usize, x: &Profile) -> bool {
    if q < 2 {
        return true;
    }
    let mut score = vec![0u32; q + 1];
    for r in x.voters() {
        score[r.top() as usize] += 1;
    }
    score[1..].sort_unstable_by(|a, b| b.cmp(a));
    score[1] - score[2] <= 1
}

/// Estimated manipulation-point fraction of the leftmost-tie-break plurality
/// rule for each `n`, with `samples` draws per row.
pub fn plurality_scaling_experiment(q: usize, ns: &[usize], samples: u64, seed: u64) -> Result<Vec<ScalingRow>> {
    if samples < 1000 {
        return domain(format!("scaling rows need at least 1000 samples, got {samples}"));
    }
    if !(2..=crate::ranking::MAX_Q).contains(&q) || ns.contains(&0) {
        return domain(format!("invalid dimensions q={q}, ns={ns:?}"));
    }
    Ok(ns
        .iter()
        .map(|&n| {
            let counts = run_blocks(samples, seed, |rng, count| {
                let (mut m, mut t) = (0u64, 0u64);
                for _ in 0..count {
                    let x = Profile::random(rng, q, n);
                    m += plurality_manipulable(q, &x) as u64;
                    t += near_tie(q, &x) as u64;
                }
                (m, t)
            });
            let (m, t) = counts.into_iter().fold((0, 0), |(a, b), (c, d)| (a + c, b + d));
            ScalingRow {
                n,
                manip: Estimate::from_hits(m, samples, seed),
                near_tie: Estimate::from_hits(t, samples, seed),
            }
        })
        .collect())
}
