//! Influences of coordinates, plain and refined by adjacent transpositions.
//!
//! `Inf_i^{a,b}(f) = P(f(X) = a, f(X') = b)` where `X'` re-randomises
//! coordinate `i` of a uniform `X`. The refined variants replace the
//! re-randomisation by "keep `X_i` with probability 1/2, otherwise apply
//! the transposition `z`".

mod boundary;

pub use boundary::{
    boundary_edges, find_large_boundary_pair, BoundaryEdge, BoundaryOutcome, BoundaryPair, BoundaryVariant, Refinement,
};

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::exact::{int, ratio, zero, Frac};
use crate::ranking::{AdjTransposition, Alt, Profile, Ranking};
use crate::sampling::{run_blocks, Estimate, Fraction, Mode};
use crate::scf::{distribution, Distances, Scf, TabularScf};

/// Which influence to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InfluenceKind {
    /// `P(f(X) != f(X'))`.
    Total,
    /// `P(f(X) = a, f(X') != a)`.
    Single {
        a: Alt,
    },
    /// `P(f(X) = a, f(X') = b)`.
    Pair {
        a: Alt,
        b: Alt,
    },
    PairRefined {
        a: Alt,
        b: Alt,
        z: AdjTransposition,
    },
    SingleRefined {
        a: Alt,
        z: AdjTransposition,
    },
    /// Sum of `PairRefined` over all transpositions.
    PairRefinedTotal {
        a: Alt,
        b: Alt,
    },
}

/// Exact influence counts of a tabulated function.
///
/// `pair[i][a][b]` counts pairs `(x, y)` agreeing off coordinate `i` with
/// `f(x) = a`, `f(y) = b`, out of `(q!)^(n+1)`. `refined[i][z][a][b]` counts
/// profiles `x` with `f(x) = a` and `f(z_i x) = b`.
#[derive(Clone, Debug)]
pub struct InfluenceTable {
    q: usize,
    n: usize,
    profiles: u64,
    radix: u64,
    transpositions: Vec<AdjTransposition>,
    pair: Vec<Vec<u64>>,
    refined: Vec<Vec<Vec<u64>>>,
}

impl InfluenceTable {
    pub fn build(t: &TabularScf) -> Self {
        let (q, n) = (t.q(), t.n());
        let radix = t.radix();
        let transpositions = AdjTransposition::all(q);
        // zmap[z][code] = code of z applied to ranking(code)
        let zmap: Vec<Vec<u64>> =
            transpositions.iter().map(|z| t.all_rankings().iter().map(|r| t.code_of(&z.apply(r))).collect()).collect();
        let mut pair = vec![vec![0u64; q * q]; n];
        let mut refined = vec![vec![vec![0u64; q * q]; transpositions.len()]; n];
        let mut c = vec![0u64; q];
        for i in 0..n {
            let stride = t.stride(i);
            for idx in 0..t.len() {
                let code = t.code_at(idx, i);
                let a = t.get(idx) as usize - 1;
                for (zi, map) in zmap.iter().enumerate() {
                    let b = t.get(idx - code * stride + map[code as usize] * stride) as usize - 1;
                    refined[i][zi][a * q + b] += 1;
                }
                if code != 0 {
                    continue;
                }
                c.iter_mut().for_each(|v| *v = 0);
                for k in 0..radix {
                    c[t.get(idx + k * stride) as usize - 1] += 1;
                }
                for a in 0..q {
                    for b in 0..q {
                        pair[i][a * q + b] += c[a] * c[b];
                    }
                }
            }
        }
        InfluenceTable { q, n, profiles: t.len(), radix, transpositions, pair, refined }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn transpositions(&self) -> &[AdjTransposition] {
        &self.transpositions
    }

    fn z_index(&self, z: &AdjTransposition) -> usize {
        self.transpositions.iter().position(|t| t == z).expect("transposition within 1..=q")
    }

    fn pair_count(&self, i: usize, a: Alt, b: Alt) -> u64 {
        self.pair[i][(a as usize - 1) * self.q + b as usize - 1]
    }

    fn refined_count(&self, i: usize, zi: usize, a: Alt, b: Alt) -> u64 {
        self.refined[i][zi][(a as usize - 1) * self.q + b as usize - 1]
    }

    fn alts(&self) -> impl Iterator<Item = Alt> {
        1..=self.q as Alt
    }

    /// `|B_i^{a,b}|`: ordered pairs agreeing off `i` with winners `a`, `b`.
    pub fn boundary_size(&self, i: usize, a: Alt, b: Alt) -> u64 {
        self.pair_count(i, a, b)
    }

    /// `|B_i^{a,b;z}|`.
    pub fn refined_boundary_size(&self, i: usize, a: Alt, b: Alt, z: &AdjTransposition) -> u64 {
        self.refined_count(i, self.z_index(z), a, b)
    }

    pub fn pair(&self, i: usize, a: Alt, b: Alt) -> Frac {
        ratio(self.pair_count(i, a, b), self.profiles * self.radix)
    }

    pub fn single(&self, i: usize, a: Alt) -> Frac {
        let s: u64 = self.alts().filter(|&b| b != a).map(|b| self.pair_count(i, a, b)).sum();
        ratio(s, self.profiles * self.radix)
    }

    pub fn total(&self, i: usize) -> Frac {
        let s: u64 =
            self.alts().map(|a| self.alts().filter(|&b| b != a).map(|b| self.pair_count(i, a, b)).sum::<u64>()).sum();
        ratio(s, self.profiles * self.radix)
    }

    pub fn pair_refined(&self, i: usize, a: Alt, b: Alt, z: &AdjTransposition) -> Frac {
        ratio(self.refined_count(i, self.z_index(z), a, b), 2 * self.profiles)
    }

    pub fn single_refined(&self, i: usize, a: Alt, z: &AdjTransposition) -> Frac {
        let zi = self.z_index(z);
        let s: u64 = self.alts().filter(|&b| b != a).map(|b| self.refined_count(i, zi, a, b)).sum();
        ratio(s, 2 * self.profiles)
    }

    pub fn pair_refined_total(&self, i: usize, a: Alt, b: Alt) -> Frac {
        let s: u64 = (0..self.transpositions.len()).map(|zi| self.refined_count(i, zi, a, b)).sum();
        ratio(s, 2 * self.profiles)
    }

    pub fn get(&self, i: usize, kind: InfluenceKind) -> Frac {
        match kind {
            InfluenceKind::Total => self.total(i),
            InfluenceKind::Single { a } => self.single(i, a),
            InfluenceKind::Pair { a, b } => self.pair(i, a, b),
            InfluenceKind::PairRefined { a, b, z } => self.pair_refined(i, a, b, &z),
            InfluenceKind::SingleRefined { a, z } => self.single_refined(i, a, &z),
            InfluenceKind::PairRefinedTotal { a, b } => self.pair_refined_total(i, a, b),
        }
    }

    /// CSV rows `i,a,b,z,value_num,value_den` (voters 1-based). Plain pair
    /// influences leave `z` empty.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,a,b,z,value_num,value_den\n");
        for i in 0..self.n {
            for a in self.alts() {
                for b in self.alts().filter(|&b| b != a) {
                    let v = self.pair(i, a, b);
                    writeln!(s, "{},{a},{b},,{},{}", i + 1, v.numer(), v.denom()).unwrap();
                }
            }
            for z in &self.transpositions {
                for a in self.alts() {
                    for b in self.alts().filter(|&b| b != a) {
                        let v = self.pair_refined(i, a, b, z);
                        writeln!(s, "{},{a},{b},{z},{},{}", i + 1, v.numer(), v.denom()).unwrap();
                    }
                }
            }
        }
        s
    }
}

fn validate(f: &Scf, i: usize, kind: InfluenceKind) -> Result<()> {
    if i >= f.n() {
        return domain(format!("voter {i} outside 0..{}", f.n()));
    }
    let q = f.q() as Alt;
    let alt_ok = |a: Alt| (1..=q).contains(&a);
    let z_ok = |z: &AdjTransposition| {
        let (a, b) = z.pair();
        alt_ok(a) && alt_ok(b)
    };
    let ok = match kind {
        InfluenceKind::Total => true,
        InfluenceKind::Single { a } => alt_ok(a),
        InfluenceKind::Pair { a, b } | InfluenceKind::PairRefinedTotal { a, b } => alt_ok(a) && alt_ok(b) && a != b,
        InfluenceKind::PairRefined { a, b, z } => alt_ok(a) && alt_ok(b) && a != b && z_ok(&z),
        InfluenceKind::SingleRefined { a, z } => alt_ok(a) && z_ok(&z),
    };
    if !ok {
        return domain(format!("invalid influence parameters {kind:?} for q={q}"));
    }
    Ok(())
}

/// One influence of voter `i` (0-based), exact or sampled.
pub fn influence(f: &Scf, i: usize, kind: InfluenceKind, mode: Mode, cap: u128) -> Result<Fraction> {
    validate(f, i, kind)?;
    match mode {
        Mode::Exact => {
            let t = f.tabulate(cap)?;
            Ok(Fraction::Exact(InfluenceTable::build(&t).get(i, kind).into()))
        }
        Mode::Sampled { samples, seed } => {
            if samples == 0 {
                return domain("at least one sample is required");
            }
            Ok(Fraction::Sampled(sample_influence(f, i, kind, samples, seed)))
        }
    }
}

fn sample_influence(f: &Scf, i: usize, kind: InfluenceKind, samples: u64, seed: u64) -> Estimate {
    let (q, n) = (f.q(), f.n());
    let all = AdjTransposition::all(q);
    let weight = all.len() as f64;
    let sums = run_blocks(samples, seed, |rng, count| {
        let (mut s, mut s2) = (0.0f64, 0.0f64);
        for _ in 0..count {
            let x = Profile::random(rng, q, n);
            let keep = |rng: &mut rand_chacha::ChaCha8Rng| rng.gen_bool(0.5);
            let refined = |rng: &mut rand_chacha::ChaCha8Rng, z: &AdjTransposition| {
                if keep(rng) {
                    x.clone()
                } else {
                    x.with_voter(i, z.apply(x.voter(i)))
                }
            };
            let fx = f.winner(x.voters());
            let v = match kind {
                InfluenceKind::Total | InfluenceKind::Single { .. } | InfluenceKind::Pair { .. } => {
                    let y = x.with_voter(i, Ranking::random(rng, q));
                    let fy = f.winner(y.voters());
                    let hit = match kind {
                        InfluenceKind::Total => fx != fy,
                        InfluenceKind::Single { a } => fx == a && fy != a,
                        InfluenceKind::Pair { a, b } => fx == a && fy == b,
                        _ => unreachable!(),
                    };
                    hit as u8 as f64
                }
                InfluenceKind::PairRefined { a, b, z } => {
                    let fy = f.winner(refined(rng, &z).voters());
                    (fx == a && fy == b) as u8 as f64
                }
                InfluenceKind::SingleRefined { a, z } => {
                    let fy = f.winner(refined(rng, &z).voters());
                    (fx == a && fy != a) as u8 as f64
                }
                InfluenceKind::PairRefinedTotal { a, b } => {
                    let z = all[rng.gen_range(0..all.len())];
                    let fy = f.winner(refined(rng, &z).voters());
                    weight * (fx == a && fy == b) as u8 as f64
                }
            };
            s += v;
            s2 += v * v;
        }
        (s, s2)
    });
    let (s, s2) = sums.into_iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    Estimate::from_moments(s, s2, samples, seed)
}

/// `Var[1{f(X) = a}] = mu_a (1 - mu_a)`.
pub fn variance_indicator(f: &Scf, a: Alt, mode: Mode, cap: u128) -> Result<Fraction> {
    if a == 0 || a as usize > f.q() {
        return domain(format!("alternative {a} outside 1..={}", f.q()));
    }
    let d = distribution(f, mode, cap)?;
    Ok(match mode {
        Mode::Exact => Fraction::Exact(d.variance(a).into()),
        Mode::Sampled { samples, seed } => {
            let p = d.mu_f64(a);
            // delta method on p (1 - p)
            let se = (1.0 - 2.0 * p).abs() * d.stderr(a);
            Fraction::Sampled(Estimate { mean: p * (1.0 - p), stderr: se, samples, seed })
        }
    })
}

/// Exact checks of the elementary influence inequalities for one function.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    /// `Inf_i = sum_a Inf_i^a = sum_{a != b} Inf_i^{a,b}` for every `i`.
    pub sum_identity: bool,
    /// `sum_i Inf_i^a >= Var[1{f = a}]` for every `a`.
    pub total_influence_bounds_variance: bool,
    /// `Dist(f, CONST) <= (q/2) sum_a Var[1{f = a}]`.
    pub constant_distance_bound: bool,
    /// `sum_z Inf_i^{a;z} >= Inf_i^a / q^2` for every `i`, `a`.
    pub refined_single_bound: bool,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.sum_identity
            && self.total_influence_bounds_variance
            && self.constant_distance_bound
            && self.refined_single_bound
    }
}

pub fn check_inequalities(f: &Scf, cap: u128) -> Result<InequalityReport> {
    let t = f.tabulate(cap)?;
    let inf = InfluenceTable::build(&t);
    let d = crate::scf::exact_distribution(&t);
    let (q, n) = (t.q(), t.n());
    let alts = || 1..=q as Alt;
    let mut sum_identity = true;
    let mut refined_single_bound = true;
    for i in 0..n {
        let by_single = alts().fold(zero(), |acc, a| acc + inf.single(i, a));
        let by_pair =
            alts().fold(zero(), |acc, a| alts().filter(|&b| b != a).fold(acc, |acc, b| acc + inf.pair(i, a, b)));
        sum_identity &= inf.total(i) == by_single && by_single == by_pair;
        for a in alts() {
            let refined = inf.transpositions().iter().fold(zero(), |acc, z| acc + inf.single_refined(i, a, z));
            refined_single_bound &= refined >= inf.single(i, a) / int((q * q) as u64);
        }
    }
    let total_influence_bounds_variance =
        alts().all(|a| (0..n).fold(zero(), |acc, i| acc + inf.single(i, a)) >= d.variance(a));
    let var_sum = alts().fold(zero(), |acc, a| acc + d.variance(a));
    let constant_distance_bound = Distances::of_table(&t).to_const <= ratio(q as u64, 2u64) * var_sum;
    Ok(InequalityReport {
        sum_identity,
        total_influence_bounds_variance,
        constant_distance_bound,
        refined_single_bound,
    })
}
