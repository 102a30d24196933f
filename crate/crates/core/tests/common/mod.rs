//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library's counting code; profiles are built from plain permutation
//! lists and the rule is evaluated one profile at a time.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gslab::exact::{ratio, Frac};
use gslab::{Alt, Profile, Ranking, Scf, TabularScf};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Every permutation of `1..=q`, generated recursively.
pub fn perms(q: usize) -> Vec<Vec<Alt>> {
    fn go(rest: &mut Vec<Alt>, cur: &mut Vec<Alt>, out: &mut Vec<Vec<Alt>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..rest.len() {
            let a = rest.remove(k);
            cur.push(a);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, a);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=q as Alt).collect(), &mut Vec::new(), &mut out);
    out
}

pub fn all_rankings(q: usize) -> Vec<Ranking> {
    perms(q).iter().map(|p| Ranking::new(p).unwrap()).collect()
}

/// Cartesian power of the rankings, voter 0 varying slowest.
pub fn all_profiles(q: usize, n: usize) -> Vec<Profile> {
    let rs = all_rankings(q);
    let mut out: Vec<Vec<Ranking>> = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| rs.iter().map(move |r| [p.clone(), vec![*r]].concat())).collect();
    }
    out.into_iter().map(|v| Profile::new(v).unwrap()).collect()
}

pub fn random_table(seed: u64, q: usize, n: usize) -> TabularScf {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TabularScf::random(&mut rng, q, n)
}

pub fn win(f: &Scf, x: &Profile) -> Alt {
    f.evaluate(x).unwrap()
}

pub fn rank(r: &Ranking, a: Alt) -> usize {
    r.order().iter().position(|&b| b == a).unwrap()
}

/// Positions where the two orders differ span a window of width at most `r`.
pub fn within_window(x: &Ranking, y: &Ranking, r: usize) -> bool {
    let d: Vec<usize> = (0..x.q()).filter(|&k| x.order()[k] != y.order()[k]).collect();
    match (d.first(), d.last()) {
        (Some(lo), Some(hi)) => hi - lo < r,
        _ => false,
    }
}

/// Profiles at which some voter gains by a change confined to a window of
/// `r` positions (`r = q` allows any change).
pub fn r_manipulation_points(f: &Scf, r: usize) -> BTreeSet<Profile> {
    let (q, n) = (f.q(), f.n());
    let rs = all_rankings(q);
    let mut out = BTreeSet::new();
    for x in all_profiles(q, n) {
        let now = win(f, &x);
        let hit = (0..n).any(|i| {
            let xi = x.voter(i);
            rs.iter()
                .filter(|s| *s != xi && within_window(xi, s, r))
                .any(|s| rank(xi, win(f, &x.with_voter(i, *s))) < rank(xi, now))
        });
        if hit {
            out.insert(x);
        }
    }
    out
}

/// Whether `f` ignores every voter but one.
pub fn is_function_of_one_voter(f: &Scf) -> bool {
    let ps = all_profiles(f.q(), f.n());
    (0..f.n()).any(|i| {
        let mut seen = std::collections::BTreeMap::new();
        ps.iter().all(|x| *seen.entry(*x.voter(i)).or_insert_with(|| win(f, x)) == win(f, x))
    })
}

pub fn values(f: &Scf) -> BTreeSet<Alt> {
    all_profiles(f.q(), f.n()).iter().map(|x| win(f, x)).collect()
}

/// `P(f(X) = a, f(X') = b)` with `X'` equal to `X` except for a fresh
/// uniform coordinate `i`.
pub fn pair_influence(f: &Scf, i: usize, a: Alt, b: Alt) -> Frac {
    let rs = all_rankings(f.q());
    let ps = all_profiles(f.q(), f.n());
    let mut hits = 0u64;
    for x in &ps {
        if win(f, x) == a {
            hits += rs.iter().filter(|s| win(f, &x.with_voter(i, **s)) == b).count() as u64;
        }
    }
    ratio(hits, (ps.len() * rs.len()) as u64)
}

/// `P(f(X) = a, f(X') != a)`.
pub fn single_influence(f: &Scf, i: usize, a: Alt) -> Frac {
    (1..=f.q() as Alt).filter(|&b| b != a).map(|b| pair_influence(f, i, a, b)).sum()
}

/// `P(f(X) != f(X'))`.
pub fn total_influence(f: &Scf, i: usize) -> Frac {
    let rs = all_rankings(f.q());
    let ps = all_profiles(f.q(), f.n());
    let hits: usize = ps.iter().map(|x| rs.iter().filter(|s| win(f, &x.with_voter(i, **s)) != win(f, x)).count()).sum();
    ratio(hits as u64, (ps.len() * rs.len()) as u64)
}

/// Half the probability that `f(X) = a` and applying `[s:t]` to voter `i`
/// gives a different winner.
pub fn single_refined_influence(f: &Scf, i: usize, a: Alt, s: Alt, t: Alt) -> Frac {
    let ps = all_profiles(f.q(), f.n());
    let hits = ps
        .iter()
        .filter(|x| {
            let xi = x.voter(i);
            let (ps_, pt) = (rank(xi, s), rank(xi, t));
            if ps_.abs_diff(pt) != 1 {
                return false;
            }
            let mut o = xi.order().to_vec();
            o.swap(ps_, pt);
            win(f, x) == a && win(f, &x.with_voter(i, Ranking::new(&o).unwrap())) != a
        })
        .count();
    ratio(hits as u64, 2 * ps.len() as u64)
}

pub fn mu(f: &Scf, a: Alt) -> Frac {
    let ps = all_profiles(f.q(), f.n());
    ratio(ps.iter().filter(|x| win(f, x) == a).count() as u64, ps.len() as u64)
}

pub fn variance(f: &Scf, a: Alt) -> Frac {
    let m = mu(f, a);
    &m * (ratio(1u64, 1u64) - &m)
}

/// Distance to the nearest constant, by trying every constant.
pub fn dist_const(f: &Scf) -> Frac {
    let ps = all_profiles(f.q(), f.n());
    (1..=f.q() as Alt)
        .map(|a| ratio(ps.iter().filter(|x| win(f, x) != a).count() as u64, ps.len() as u64))
        .min()
        .unwrap()
}

/// Distance to the nearest function of one voter, by trying every map from
/// that voter's ranking to a winner (feasible for `q = 3`).
pub fn dist_dict_brute(f: &Scf) -> Frac {
    let (q, n) = (f.q(), f.n());
    let rs = all_rankings(q);
    let ps = all_profiles(q, n);
    let maps = (q as u64).pow(rs.len() as u32);
    let mut best = usize::MAX;
    for i in 0..n {
        for m in 0..maps {
            let g = |r: &Ranking| -> Alt {
                let k = rs.iter().position(|s| s == r).unwrap() as u32;
                ((m / (q as u64).pow(k)) % q as u64) as Alt + 1
            };
            let bad = ps.iter().filter(|x| g(x.voter(i)) != win(f, x)).count();
            best = best.min(bad);
        }
    }
    ratio(best as u64, ps.len() as u64)
}

pub fn frac_f64(x: &Frac) -> f64 {
    gslab::exact::to_f64(x)
}
