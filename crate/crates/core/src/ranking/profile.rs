use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::{encode, Ranking, RankingIndex};
use crate::error::{domain, Error, Result};
use crate::exact::factorial;

/// Default cap on the number of profiles an exhaustive enumeration may visit.
pub const DEFAULT_PROFILE_CAP: u128 = 100_000_000;

/// One ranking per voter, all over the same `q` alternatives.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    voters: Vec<Ranking>,
}

impl Profile {
    pub fn new(voters: Vec<Ranking>) -> Result<Self> {
        let Some(first) = voters.first() else {
            return domain("a profile needs at least one voter");
        };
        let q = first.q();
        if voters.iter().any(|r| r.q() != q) {
            return domain("all rankings in a profile must have the same q");
        }
        Ok(Profile { voters })
    }

    pub(crate) fn from_vec_unchecked(voters: Vec<Ranking>) -> Self {
        Profile { voters }
    }

    pub fn q(&self) -> usize {
        self.voters[0].q()
    }

    pub fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn voters(&self) -> &[Ranking] {
        &self.voters
    }

    pub fn voter(&self, i: usize) -> &Ranking {
        &self.voters[i]
    }

    /// Copy with voter `i` replaced.
    pub fn with_voter(&self, i: usize, r: Ranking) -> Profile {
        let mut v = self.voters.clone();
        v[i] = r;
        Profile { voters: v }
    }

    pub(crate) fn set_voter(&mut self, i: usize, r: Ranking) {
        self.voters[i] = r;
    }

    /// Mixed-radix index over per-voter Lehmer codes, voter 0 most significant.
    pub fn index(&self) -> u64 {
        let radix = factorial(self.q());
        self.voters.iter().fold(0u64, |acc, r| acc * radix + encode(r).0)
    }

    pub fn from_index(index: u64, q: usize, n: usize) -> Result<Profile> {
        let total = profile_count(q, n);
        if n == 0 || index as u128 >= total {
            return domain(format!("profile index {index} outside 0..{total}"));
        }
        let radix = factorial(q);
        let mut rest = index;
        let mut voters = vec![Ranking::identity(q); n];
        for slot in voters.iter_mut().rev() {
            *slot = super::decode(RankingIndex(rest % radix), q)?;
            rest /= radix;
        }
        Ok(Profile { voters })
    }

    /// The coordinates where `self` and `other` differ.
    pub fn differing_voters(&self, other: &Profile) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.voters[k] != other.voters[k]).collect()
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, q: usize, n: usize) -> Profile {
        Profile { voters: (0..n).map(|_| Ranking::random(rng, q)).collect() }
    }
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, q: usize, n: usize) -> Profile {
    Profile::random(rng, q, n)
}

/// `(q!)^n`, saturating at `u128::MAX`.
pub fn profile_count(q: usize, n: usize) -> u128 {
    (factorial(q) as u128).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Iterator over all of `L_q^n` in index order.
pub struct ProfileIter {
    next: Option<Vec<Ranking>>,
}

impl Iterator for ProfileIter {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let q = cur[0].q();
        for k in (0..succ.len()).rev() {
            match succ[k].next_lex() {
                Some(r) => {
                    succ[k] = r;
                    self.next = Some(succ);
                    break;
                }
                None => succ[k] = Ranking::identity(q),
            }
        }
        Some(Profile { voters: cur })
    }
}

/// Enumerates `L_q^n`, refusing when `(q!)^n` exceeds `cap`.
pub fn profiles(q: usize, n: usize, cap: u128) -> Result<ProfileIter> {
    if q == 0 || n == 0 {
        return domain("q and n must be at least 1");
    }
    let needed = profile_count(q, n);
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(ProfileIter { next: Some(vec![Ranking::identity(q); n]) })
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.voters.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({self})")
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let voters = s.split('|').map(str::parse).collect::<Result<Vec<Ranking>>>()?;
        Profile::new(voters).map_err(|e| Error::Parse(e.to_string()))
    }
}
