use serde::Serialize;

use super::{Scf, TabularScf};
use crate::error::{domain, Result};
use crate::exact::{ratio, to_f64, Frac};
use crate::ranking::{Alt, Profile};
use crate::sampling::{run_blocks, Mode};

/// Outcome frequencies `mu_a = P(f(X) = a)`, stored as counts.
///
/// Exact distributions count every profile; sampled ones count draws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub counts: Vec<u64>,
    pub total: u64,
    pub exact: bool,
}

impl Distribution {
    pub fn q(&self) -> usize {
        self.counts.len()
    }

    pub fn count(&self, a: Alt) -> u64 {
        self.counts[a as usize - 1]
    }

    pub fn mu(&self, a: Alt) -> Frac {
        ratio(self.count(a), self.total)
    }

    pub fn mu_f64(&self, a: Alt) -> f64 {
        self.count(a) as f64 / self.total as f64
    }

    /// Standard error of a sampled frequency (zero when exact).
    pub fn stderr(&self, a: Alt) -> f64 {
        if self.exact {
            return 0.0;
        }
        let p = self.mu_f64(a);
        (p * (1.0 - p) / self.total as f64).sqrt()
    }

    /// `Var[1{f(X)=a}] = mu_a (1 - mu_a)`.
    pub fn variance(&self, a: Alt) -> Frac {
        let mu = self.mu(a);
        &mu * (crate::exact::one() - &mu)
    }
}

pub fn distribution(f: &Scf, mode: Mode, cap: u128) -> Result<Distribution> {
    match mode {
        Mode::Exact => Ok(exact_distribution(&f.tabulate(cap)?)),
        Mode::Sampled { samples, seed } => {
            if samples == 0 {
                return domain("at least one sample is required");
            }
            let (q, n) = (f.q(), f.n());
            let blocks = run_blocks(samples, seed, |rng, count| {
                let mut c = vec![0u64; q];
                for _ in 0..count {
                    let x = Profile::random(rng, q, n);
                    c[f.winner(x.voters()) as usize - 1] += 1;
                }
                c
            });
            let mut counts = vec![0u64; q];
            for b in blocks {
                counts.iter_mut().zip(b).for_each(|(c, v)| *c += v);
            }
            Ok(Distribution { counts, total: samples, exact: false })
        }
    }
}

pub(crate) fn exact_distribution(t: &TabularScf) -> Distribution {
    let mut counts = vec![0u64; t.q()];
    for &a in t.table() {
        counts[a as usize - 1] += 1;
    }
    Distribution { counts, total: t.len(), exact: true }
}

/// `Dist(f, g) = P(f(X) != g(X))`, exactly.
pub fn dist(f: &Scf, g: &Scf, cap: u128) -> Result<Frac> {
    if f.q() != g.q() || f.n() != g.n() {
        return domain("functions have different dimensions");
    }
    let (tf, tg) = (f.tabulate(cap)?, g.tabulate(cap)?);
    let differ = tf.table().iter().zip(tg.table()).filter(|(a, b)| a != b).count();
    Ok(ratio(differ as u64, tf.len()))
}

/// Exact distances to the classes CONST, DICT and NONMANIP.
#[derive(Clone, Debug, PartialEq)]
pub struct Distances {
    pub to_const: Frac,
    pub to_two_valued: Frac,
    /// `Dist(f, DICT_i)` per voter.
    pub to_dict_i: Vec<Frac>,
    pub to_dict: Frac,
    /// `min(to_dict, to_two_valued)`.
    pub to_nonmanip: Frac,
}

impl Distances {
    pub fn of(f: &Scf, cap: u128) -> Result<Distances> {
        Ok(Self::of_table(&f.tabulate(cap)?))
    }

    /// The best function of voter `i` alone takes, for every ranking `σ` of
    /// that voter, the most frequent winner among profiles with `x_i = σ`.
    pub fn of_table(t: &TabularScf) -> Distances {
        let (q, n) = (t.q(), t.n());
        let total = t.len();
        let d = exact_distribution(t);
        let mut sorted = d.counts.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let top1 = sorted[0];
        let top2 = top1 + sorted.get(1).copied().unwrap_or(0);

        let radix = t.radix() as usize;
        // joint[i][code * q + (a - 1)] = #{x : x_i = code, f(x) = a}
        let mut joint = vec![vec![0u64; radix * q]; n];
        for idx in 0..total {
            let a = t.get(idx) as usize - 1;
            for (i, table) in joint.iter_mut().enumerate() {
                table[t.code_at(idx, i) as usize * q + a] += 1;
            }
        }
        let to_dict_i: Vec<Frac> = joint
            .iter()
            .map(|table| {
                let agree: u64 = table.chunks(q).map(|row| *row.iter().max().unwrap()).sum();
                ratio(total - agree, total)
            })
            .collect();
        let to_dict = to_dict_i.iter().min().unwrap().clone();
        let to_two_valued = ratio(total - top2, total);
        let to_nonmanip = to_dict.clone().min(to_two_valued.clone());
        Distances { to_const: ratio(total - top1, total), to_two_valued, to_dict_i, to_dict, to_nonmanip }
    }

    pub fn to_dict_f64(&self) -> f64 {
        to_f64(&self.to_dict)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, zero};
    use crate::ranking::{profiles, rankings, DEFAULT_PROFILE_CAP};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const CAP: u128 = DEFAULT_PROFILE_CAP;

    #[test]
    fn distribution_examples() {
        let c = Scf::constant(3, 2, 2).unwrap();
        let d = distribution(&c, Mode::Exact, CAP).unwrap();
        assert_eq!(d.counts, vec![0, 36, 0]);
        assert_eq!(d.mu(2), int(1));
        let dict = Scf::dictator_top(3, 2, 0).unwrap();
        let d = distribution(&dict, Mode::Exact, CAP).unwrap();
        for a in 1..=3 {
            assert_eq!(d.mu(a), ratio(1, 3));
        }
        let d4 = distribution(&Scf::dictator_top(4, 1, 0).unwrap(), Mode::Exact, CAP).unwrap();
        assert_eq!(d4.variance(1), ratio(3, 16));
        assert_eq!(distribution(&c, Mode::Exact, CAP).unwrap().variance(2), zero());
    }

    #[test]
    fn neutral_rule_has_uniform_distribution() {
        let p = Scf::plurality_leftmost(3, 3).unwrap();
        let d = distribution(&p, Mode::Exact, CAP).unwrap();
        assert!(d.counts.iter().all(|&c| c == 72));
    }

    #[test]
    fn sampled_distribution_is_close() {
        let dict = Scf::dictator_top(4, 3, 1).unwrap();
        let d = distribution(&dict, Mode::Sampled { samples: 40_000, seed: 8 }, 0).unwrap();
        assert_eq!(d.total, 40_000);
        for a in 1..=4 {
            assert!((d.mu_f64(a) - 0.25).abs() < 4.0 * d.stderr(a));
        }
    }

    #[test]
    fn distance_examples() {
        let p = Scf::plurality_leftmost(3, 2).unwrap();
        assert_eq!(dist(&p, &p, CAP).unwrap(), zero());
        let c = Distances::of(&Scf::constant(3, 2, 1).unwrap(), CAP).unwrap();
        assert_eq!(c.to_const, zero());
        assert_eq!(c.to_nonmanip, zero());
        for i in 0..3 {
            let d = Distances::of(&Scf::dictator_top(3, 3, i).unwrap(), CAP).unwrap();
            assert_eq!(d.to_dict, zero());
            assert_eq!(d.to_dict_i[i], zero());
            assert_eq!(d.to_two_valued, ratio(1, 3));
        }
    }

    /// Independent oracle: minimise Dist over every function of one voter.
    fn brute_force_dict_distance(f: &Scf) -> Frac {
        let (q, n) = (f.q(), f.n());
        let all: Vec<_> = profiles(q, n, CAP).unwrap().collect();
        let codes: Vec<_> = rankings(q).collect();
        let mut best = int(1);
        for i in 0..n {
            let functions = (q as u64).pow(codes.len() as u32);
            for g in 0..functions {
                // g written in base q assigns a winner to every ranking
                let value = |r: &crate::ranking::Ranking| {
                    let k = codes.iter().position(|c| c == r).unwrap() as u32;
                    ((g / (q as u64).pow(k)) % q as u64) as u8 + 1
                };
                let differ = all.iter().filter(|x| f.winner(x.voters()) != value(x.voter(i))).count();
                best = best.min(ratio(differ as u64, all.len() as u64));
            }
        }
        best
    }

    #[test]
    fn dict_distance_matches_brute_force_for_plurality() {
        let p = Scf::plurality_leftmost(3, 3).unwrap();
        let fast = Distances::of(&p, CAP).unwrap();
        assert_eq!(fast.to_dict, brute_force_dict_distance(&p));
    }

    #[test]
    fn dict_distance_matches_brute_force_for_random_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..3 {
            let f = Scf::tabular(TabularScf::random(&mut rng, 3, 2));
            assert_eq!(Distances::of(&f, CAP).unwrap().to_dict, brute_force_dict_distance(&f));
        }
    }

    #[test]
    fn neutral_two_valued_distance() {
        for f in [Scf::plurality_leftmost(3, 3).unwrap(), Scf::borda_voter1_tiebreak(4, 2).unwrap()] {
            let d = Distances::of(&f, CAP).unwrap();
            let q = f.q() as i64;
            assert_eq!(d.to_two_valued, int(1) - ratio(2, q));
            assert!(d.to_nonmanip <= d.to_two_valued && d.to_nonmanip <= d.to_dict);
        }
    }
}
