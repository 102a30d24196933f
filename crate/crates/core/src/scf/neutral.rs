use super::Scf;
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::ranking::{profile_count, Profile, Ranking};
use crate::sampling::{run_blocks, Mode};

/// Outcome of a neutrality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Neutrality {
    Neutral,
    /// `relabel(f(profile)) != f(relabel ∘ profile)`.
    Violated {
        relabel: Ranking,
        profile: Profile,
    },
}

impl Neutrality {
    pub fn is_neutral(&self) -> bool {
        matches!(self, Neutrality::Neutral)
    }
}

/// Checks `y(f(x)) = f(y x_1, ..., y x_n)` over every pair (exact mode, which
/// visits `(q!)^n * q!` pairs and respects `cap`) or over sampled pairs.
pub fn is_neutral(f: &Scf, mode: Mode, cap: u128) -> Result<Neutrality> {
    match mode {
        Mode::Exact => exhaustive(f, cap),
        Mode::Sampled { samples, seed } => Ok(sampled(f, samples, seed)),
    }
}

fn exhaustive(f: &Scf, cap: u128) -> Result<Neutrality> {
    let (q, n) = (f.q(), f.n());
    let needed = profile_count(q, n).saturating_mul(factorial(q) as u128);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    let t = f.tabulate(cap)?;
    let radix = t.radix();
    // relabel[y * radix + code] = code of y ∘ ranking(code)
    let relabel: Vec<u64> = t
        .all_rankings()
        .iter()
        .flat_map(|y| t.all_rankings().iter().map(move |r| crate::ranking::encode(&y.compose_unchecked(r)).0))
        .collect();
    let strides: Vec<u64> = (0..n).map(|i| t.stride(i)).collect();
    for idx in 0..t.len() {
        let codes: Vec<u64> = (0..n).map(|i| t.code_at(idx, i)).collect();
        let winner = t.get(idx);
        for (yc, y) in t.all_rankings().iter().enumerate() {
            let moved: u64 =
                codes.iter().zip(&strides).map(|(&c, &s)| relabel[yc * radix as usize + c as usize] * s).sum();
            if y.apply(winner) != t.get(moved) {
                return Ok(Neutrality::Violated { relabel: *y, profile: t.profile(idx) });
            }
        }
    }
    Ok(Neutrality::Neutral)
}

fn sampled(f: &Scf, samples: u64, seed: u64) -> Neutrality {
    let (q, n) = (f.q(), f.n());
    let found = run_blocks(samples, seed, |rng, count| {
        for _ in 0..count {
            let x = Profile::random(rng, q, n);
            let y = Ranking::random(rng, q);
            let moved: Vec<Ranking> = x.voters().iter().map(|r| y.compose_unchecked(r)).collect();
            if y.apply(f.winner(x.voters())) != f.winner(&moved) {
                return Some((y, x));
            }
        }
        None
    });
    match found.into_iter().flatten().next() {
        Some((relabel, profile)) => Neutrality::Violated { relabel, profile },
        None => Neutrality::Neutral,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranking::DEFAULT_PROFILE_CAP;

    #[test]
    fn constant_is_not_neutral() {
        let f = Scf::constant(3, 2, 2).unwrap();
        match is_neutral(&f, Mode::Exact, DEFAULT_PROFILE_CAP).unwrap() {
            Neutrality::Violated { relabel, .. } => assert_ne!(relabel.apply(2), 2),
            Neutrality::Neutral => panic!("constant reported neutral"),
        }
        let s = is_neutral(&f, Mode::Sampled { samples: 100, seed: 1 }, DEFAULT_PROFILE_CAP).unwrap();
        assert!(!s.is_neutral());
    }

    #[test]
    fn dictator_and_plurality_are_neutral() {
        let d = Scf::dictator_top(3, 2, 0).unwrap();
        assert!(is_neutral(&d, Mode::Exact, DEFAULT_PROFILE_CAP).unwrap().is_neutral());
        let p = Scf::plurality_leftmost(3, 3).unwrap();
        assert!(is_neutral(&p, Mode::Exact, DEFAULT_PROFILE_CAP).unwrap().is_neutral());
        let b = Scf::borda_voter1_tiebreak(4, 2).unwrap();
        assert!(is_neutral(&b, Mode::Exact, DEFAULT_PROFILE_CAP).unwrap().is_neutral());
        assert!(is_neutral(&b, Mode::Sampled { samples: 10_000, seed: 4 }, 0).unwrap().is_neutral());
    }

    #[test]
    fn exhaustive_respects_cap() {
        let p = Scf::plurality_leftmost(3, 3).unwrap();
        assert!(matches!(is_neutral(&p, Mode::Exact, 1000), Err(Error::CapExceeded { .. })));
    }
}
