//! Manipulation points, `r`-manipulation points and manipulation pairs.
//!
//! A profile `x` is a manipulation point of `f` when some voter `i` can
//! report `y_i` instead of `x_i` and obtain a winner that `x_i` ranks higher.
//! It is an `r`-manipulation point when such a `y_i` arises from `x_i` by
//! permuting one block of at most `r` consecutive positions.

mod bounds;
mod census;
mod estimate;
mod gs;
mod table;

pub use bounds::{
    block4_pair_bound, four_manipulation_bound, manipulation_bound, reset_pair_bound, BoundCheck,
    FOUR_MANIPULATION_FORMULA, MANIPULATION_FORMULA,
};
pub use census::{census, write_profile_csv, Bounds, Counts, Fractions, ManipulationCensus};
pub use estimate::{
    estimate_pair_probability, exact_pair_probability, plurality_scaling_experiment, PairFlavor, ScalingRow,
};
pub(crate) use gs::first_manipulation;
pub use gs::{gs_witness, GsOutcome};
pub use table::ManipulationTable;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::ranking::{rankings, Profile, Ranking};
use crate::scf::Scf;

/// A manipulation pair `(x, y)`: the profiles differ only at `voter`, and
/// `x_voter` strictly prefers `f(y)` to `f(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManipulationWitness {
    #[serde(serialize_with = "as_text")]
    pub x: Profile,
    #[serde(serialize_with = "as_text")]
    pub y: Profile,
    pub voter: usize,
    /// Width of the smallest block of consecutive positions containing every
    /// change; absent for witnesses found by an unrestricted scan.
    pub r: Option<usize>,
}

fn as_text<S: serde::Serializer>(p: &Profile, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(p)
}

impl ManipulationWitness {
    /// Re-checks the witness against `f` from scratch.
    pub fn verify(&self, f: &Scf) -> bool {
        let Ok(true) = is_manipulation_pair(f, &self.x, &self.y) else {
            return false;
        };
        if self.x.differing_voters(&self.y) != [self.voter] {
            return false;
        }
        match self.r {
            Some(r) => move_span(self.x.voter(self.voter), self.y.voter(self.voter)) <= r,
            None => true,
        }
    }

    /// The smallest `r` for which this is an `r`-manipulation.
    pub fn span(&self) -> usize {
        move_span(self.x.voter(self.voter), self.y.voter(self.voter))
    }
}

impl fmt::Display for ManipulationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "voter {} moves {} -> {}", self.voter + 1, self.x, self.y)?;
        if let Some(r) = self.r {
            write!(f, " (r={r})")?;
        }
        Ok(())
    }
}

/// Width of the smallest window of positions outside which `x` and `y`
/// agree; 0 when they are equal.
pub fn move_span(x: &Ranking, y: &Ranking) -> usize {
    let (xo, yo) = (x.order(), y.order());
    let first = (0..xo.len()).find(|&k| xo[k] != yo[k]);
    let last = (0..xo.len()).rev().find(|&k| xo[k] != yo[k]);
    match (first, last) {
        (Some(lo), Some(hi)) => hi - lo + 1,
        _ => 0,
    }
}

fn check_dims(f: &Scf, x: &Profile) -> Result<()> {
    if x.q() != f.q() || x.n() != f.n() {
        return domain(format!(
            "profile has q={}, n={} but the function expects q={}, n={}",
            x.q(),
            x.n(),
            f.q(),
            f.n()
        ));
    }
    Ok(())
}

pub fn is_manipulation_pair(f: &Scf, x: &Profile, y: &Profile) -> Result<bool> {
    check_dims(f, x)?;
    check_dims(f, y)?;
    let diff = x.differing_voters(y);
    let [i] = diff.as_slice() else {
        return Ok(false);
    };
    let xi = x.voter(*i);
    Ok(xi.rank_of(f.winner(y.voters())) < xi.rank_of(f.winner(x.voters())))
}

/// First manipulation found by trying, for each voter in turn, every
/// ranking in Lehmer order.
pub fn is_manipulation_point(f: &Scf, x: &Profile) -> Result<Option<ManipulationWitness>> {
    check_dims(f, x)?;
    let current = f.winner(x.voters());
    let mut y = x.clone();
    for i in 0..x.n() {
        let xi = *x.voter(i);
        let now = xi.rank_of(current);
        for sigma in rankings(x.q()) {
            if sigma == xi {
                continue;
            }
            y.set_voter(i, sigma);
            if xi.rank_of(f.winner(y.voters())) < now {
                return Ok(Some(ManipulationWitness { x: x.clone(), y, voter: i, r: None }));
            }
        }
        y.set_voter(i, xi);
    }
    Ok(None)
}

/// Rankings reachable from `x` by permuting one block of 2..=`r`
/// consecutive positions, in scan order: window start, then window width,
/// then Lehmer order of the permutation applied to the window. Each result
/// appears once, at its first occurrence.
pub fn window_moves(x: &Ranking, r: usize) -> Vec<Ranking> {
    let q = x.q();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for start in 0..q {
        for width in 2..=r.min(q - start) {
            for p in rankings(width) {
                let mut order = x.order().to_vec();
                for (k, &src) in p.order().iter().enumerate() {
                    order[start + k] = x.order()[start + src as usize - 1];
                }
                let y = Ranking::from_slice_unchecked(&order);
                if y != *x && seen.insert(y) {
                    out.push(y);
                }
            }
        }
    }
    out
}

/// First `r`-manipulation of `x` in scan order: voter, then the order of
/// [`window_moves`].
pub fn is_r_manipulation_point(f: &Scf, x: &Profile, r: usize) -> Result<Option<ManipulationWitness>> {
    check_dims(f, x)?;
    if r < 2 || r > f.q() {
        return domain(format!("block size r={r} outside 2..={}", f.q()));
    }
    let current = f.winner(x.voters());
    let mut y = x.clone();
    for i in 0..x.n() {
        let xi = *x.voter(i);
        let now = xi.rank_of(current);
        for sigma in window_moves(&xi, r) {
            y.set_voter(i, sigma);
            if xi.rank_of(f.winner(y.voters())) < now {
                let span = move_span(&xi, &sigma);
                return Ok(Some(ManipulationWitness { x: x.clone(), y, voter: i, r: Some(span) }));
            }
        }
        y.set_voter(i, xi);
    }
    Ok(None)
}

/// Smallest block width over all manipulations available at `x`, or `None`
/// when `x` is not a manipulation point.
pub fn min_manipulation_span(f: &Scf, x: &Profile) -> Option<usize> {
    let current = f.winner(x.voters());
    let mut y = x.clone();
    let mut best: Option<usize> = None;
    for i in 0..x.n() {
        let xi = *x.voter(i);
        let now = xi.rank_of(current);
        for sigma in rankings(x.q()) {
            if sigma == xi {
                continue;
            }
            y.set_voter(i, sigma);
            if xi.rank_of(f.winner(y.voters())) < now {
                let s = move_span(&xi, &sigma);
                best = Some(best.map_or(s, |b| b.min(s)));
            }
        }
        y.set_voter(i, xi);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::{profiles, DEFAULT_PROFILE_CAP};
    use crate::scf::TabularScf;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn constant_and_dictator_are_never_manipulated() {
        for f in [Scf::constant(3, 2, 1).unwrap(), Scf::dictator_top(3, 2, 0).unwrap()] {
            let all: Vec<Profile> = profiles(3, 2, DEFAULT_PROFILE_CAP).unwrap().collect();
            for x in &all {
                assert!(is_manipulation_point(&f, x).unwrap().is_none());
                for y in &all {
                    assert!(!is_manipulation_pair(&f, x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn plurality_pair_matches_recomputation() {
        let f = Scf::plurality_leftmost(3, 3).unwrap();
        let x = p("1>2>3|2>1>3|3>2>1");
        let y = p("1>2>3|2>1>3|2>3>1");
        // x: one vote each, leftmost voter wins with 1; y: 2 has two votes
        let (fx, fy) = (f.evaluate(&x).unwrap(), f.evaluate(&y).unwrap());
        assert_eq!((fx, fy), (1, 2));
        let expected = x.voter(2).rank_of(fy) < x.voter(2).rank_of(fx);
        assert!(expected);
        assert_eq!(is_manipulation_pair(&f, &x, &y).unwrap(), expected);
        assert!(!is_manipulation_pair(&f, &y, &x).unwrap());
        assert!(!is_manipulation_pair(&f, &x, &x).unwrap());
    }

    #[test]
    fn span_examples() {
        let r = |s: &str| s.parse::<Ranking>().unwrap();
        assert_eq!(move_span(&r("1>2>3>4"), &r("1>2>3>4")), 0);
        assert_eq!(move_span(&r("1>2>3>4"), &r("2>1>3>4")), 2);
        assert_eq!(move_span(&r("1>2>3>4"), &r("4>2>3>1")), 4);
        assert_eq!(move_span(&r("1>2>3>4"), &r("1>3>4>2")), 3);
    }

    #[test]
    fn window_moves_counts() {
        let x = Ranking::identity(4);
        // adjacent transpositions only
        assert_eq!(window_moves(&x, 2).len(), 3);
        assert!(window_moves(&x, 4).len() == 23);
        for r in 2..=4 {
            for y in window_moves(&x, r) {
                assert!((2..=r).contains(&move_span(&x, &y)));
            }
        }
    }

    #[test]
    fn full_window_equals_unrestricted_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = Scf::tabular(TabularScf::random(&mut rng, 3, 2));
        for x in profiles(3, 2, DEFAULT_PROFILE_CAP).unwrap() {
            assert_eq!(
                is_r_manipulation_point(&f, &x, 3).unwrap().is_some(),
                is_manipulation_point(&f, &x).unwrap().is_some()
            );
        }
    }

    #[test]
    fn witnesses_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = Scf::tabular(TabularScf::random(&mut rng, 4, 1));
        for x in profiles(4, 1, DEFAULT_PROFILE_CAP).unwrap() {
            if let Some(w) = is_manipulation_point(&f, &x).unwrap() {
                assert!(w.verify(&f));
            }
            for r in 2..=4 {
                if let Some(w) = is_r_manipulation_point(&f, &x, r).unwrap() {
                    assert!(w.verify(&f) && w.span() <= r);
                    assert_eq!(Some(w.span()), w.r);
                }
            }
        }
    }

    #[test]
    fn min_span_agrees_with_scanner() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Scf::tabular(TabularScf::random(&mut rng, 4, 2));
        for idx in (0..576).step_by(7) {
            let x = Profile::from_index(idx, 4, 2).unwrap();
            let span = min_manipulation_span(&f, &x);
            for r in 2..=4 {
                let found = is_r_manipulation_point(&f, &x, r).unwrap().is_some();
                assert_eq!(found, span.is_some_and(|s| s <= r));
            }
        }
    }

    #[test]
    fn invalid_block_size() {
        let f = Scf::constant(3, 1, 1).unwrap();
        let x = p("1>2>3");
        assert!(is_r_manipulation_point(&f, &x, 1).is_err());
        assert!(is_r_manipulation_point(&f, &x, 4).is_err());
    }
}
