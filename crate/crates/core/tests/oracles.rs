mod common;

use common::*;
use gslab::exact::{int, ratio, zero};
use gslab::influence::{boundary_edges, InfluenceTable, Refinement};
use gslab::manipulation::{census, gs_witness, is_r_manipulation_point, GsOutcome, ManipulationTable};
use gslab::ranking::profiles;
use gslab::scf::{is_neutral, Distances};
use gslab::{AdjTransposition, Alt, Mode, Profile, Scf};

const CAP: u128 = 100_000_000;

#[test]
fn windowed_scanner_matches_full_enumeration() {
    for seed in 0..6 {
        let t = random_table(seed, 3, 2);
        let f = Scf::tabular(t.clone());
        let table = ManipulationTable::build(&t);
        for r in [2, 3] {
            let oracle = r_manipulation_points(&f, r);
            let scanned: std::collections::BTreeSet<Profile> =
                profiles(3, 2, CAP).unwrap().filter(|x| is_r_manipulation_point(&f, x, r).unwrap().is_some()).collect();
            let tabled: std::collections::BTreeSet<Profile> =
                profiles(3, 2, CAP).unwrap().filter(|x| table.is_r_manipulable(t.index_of(x), r)).collect();
            assert_eq!(scanned, oracle, "seed {seed} r {r}");
            assert_eq!(tabled, oracle, "seed {seed} r {r}");
        }
    }
}

#[test]
fn census_counts_match_oracle() {
    for f in [
        Scf::borda_voter1_tiebreak(3, 3).unwrap(),
        Scf::plurality_leftmost(3, 3).unwrap(),
        Scf::tabular(random_table(9, 4, 2)),
    ] {
        let c = census(&f, Mode::Exact, CAP).unwrap();
        assert_eq!(c.counts.manip as usize, r_manipulation_points(&f, f.q()).len(), "{}", f.name());
        assert_eq!(c.counts.r2 as usize, r_manipulation_points(&f, 2).len(), "{}", f.name());
        assert_eq!(c.counts.r3 as usize, r_manipulation_points(&f, 3).len(), "{}", f.name());
    }
}

#[test]
fn influence_table_matches_resampling() {
    for seed in 0..4 {
        let t = random_table(100 + seed, 3, 2);
        let f = Scf::tabular(t.clone());
        let inf = InfluenceTable::build(&t);
        for i in 0..2 {
            assert_eq!(inf.total(i), total_influence(&f, i));
            for a in 1..=3 {
                assert_eq!(inf.single(i, a), single_influence(&f, i, a));
                for b in (1..=3).filter(|&b| b != a) {
                    assert_eq!(inf.pair(i, a, b), pair_influence(&f, i, a, b));
                }
                for z in AdjTransposition::all(3) {
                    let (s, u) = z.pair();
                    assert_eq!(inf.single_refined(i, a, &z), single_refined_influence(&f, i, a, s, u));
                }
            }
        }
    }
}

#[test]
fn boundary_sizes_are_twice_refined_influence() {
    let t = random_table(5, 4, 2);
    let f = Scf::tabular(t.clone());
    let inf = InfluenceTable::build(&t);
    let profiles = int(576u64);
    for i in 0..2 {
        for a in 1..=4 {
            for b in (1..=4).filter(|&b| b != a) {
                for z in AdjTransposition::all(4) {
                    let edges = boundary_edges(&f, i, a, b, Refinement::Z(z), CAP).unwrap();
                    assert_eq!(int(edges.len() as u64), int(2u64) * &profiles * inf.pair_refined(i, a, b, &z));
                    assert!(edges.iter().all(|e| e.winners(&f) == (a, b) && z.apply(e.x.voter(i)) == *e.y.voter(i)));
                }
                let plain = boundary_edges(&f, i, a, b, Refinement::None, CAP).unwrap();
                assert_eq!(ratio(plain.len() as u64, 576u64 * 24), inf.pair(i, a, b));
            }
        }
    }
}

#[test]
fn distances_match_brute_minimisation() {
    let mut cases = vec![Scf::plurality_leftmost(3, 2).unwrap(), Scf::borda_voter1_tiebreak(3, 2).unwrap()];
    cases.extend((0..3).map(|s| Scf::tabular(random_table(40 + s, 3, 2))));
    for f in cases {
        let d = Distances::of(&f, CAP).unwrap();
        assert_eq!(d.to_dict, dist_dict_brute(&f), "{}", f.name());
        assert_eq!(d.to_const, dist_const(&f), "{}", f.name());
    }
    let dict = Distances::of(&Scf::dictator_top(3, 3, 1).unwrap(), CAP).unwrap();
    assert_eq!(dict.to_dict, zero());
    assert_eq!(dict.to_dict_i[0], ratio(2u64, 3u64));
}

#[test]
fn builtin_rules_match_their_definitions() {
    let x: Profile = "1>2>3|2>3>1|3>1>2".parse().unwrap();
    assert_eq!(Scf::plurality_leftmost(3, 3).unwrap().evaluate(&x).unwrap(), 1);
    let y: Profile = "3>1>2|2>3>1|1>2>3".parse().unwrap();
    assert_eq!(Scf::plurality_leftmost(3, 3).unwrap().evaluate(&y).unwrap(), 3);
    // Borda scores q - k; ties go to voter 1's favourite among the tied.
    let borda = Scf::borda_voter1_tiebreak(3, 3).unwrap();
    for x in all_profiles(3, 3) {
        let mut score = [0usize; 4];
        for r in x.voters() {
            for (k, &a) in r.order().iter().enumerate() {
                score[a as usize] += 3 - k;
            }
        }
        let best = *score[1..].iter().max().unwrap();
        let expect = *x.voter(0).order().iter().find(|&&a| score[a as usize] == best).unwrap();
        assert_eq!(win(&borda, &x), expect, "{x}");
    }
}

#[test]
fn gs_witnesses_verify_independently() {
    let mut tried = 0;
    for seed in 0..200 {
        let f = Scf::tabular(random_table(seed, 3, 2));
        let applicable = values(&f).len() >= 3 && !is_function_of_one_voter(&f);
        match gs_witness(&f, CAP).unwrap() {
            GsOutcome::Witness(w) => {
                assert!(applicable);
                let xi = w.x.voter(w.voter);
                assert_eq!(w.x.with_voter(w.voter, *w.y.voter(w.voter)), w.y);
                assert!(rank(xi, win(&f, &w.y)) < rank(xi, win(&f, &w.x)));
                tried += 1;
            }
            GsOutcome::NotApplicable { .. } => assert!(!applicable),
        }
    }
    assert!(tried > 150);
}

#[test]
fn neutral_rules_commute_with_relabelling() {
    for f in [Scf::plurality_leftmost(3, 3).unwrap(), Scf::borda_voter1_tiebreak(3, 2).unwrap()] {
        assert!(is_neutral(&f, Mode::Exact, CAP).unwrap().is_neutral());
        for pi in perms(3) {
            let relabel = |a: Alt| pi[a as usize - 1];
            for x in all_profiles(f.q(), f.n()) {
                let moved: Vec<_> = x
                    .voters()
                    .iter()
                    .map(|r| gslab::Ranking::new(&r.order().iter().map(|&a| relabel(a)).collect::<Vec<_>>()).unwrap())
                    .collect();
                assert_eq!(win(&f, &Profile::new(moved).unwrap()), relabel(win(&f, &x)));
            }
        }
        let mus: Vec<_> = (1..=3).map(|a| mu(&f, a)).collect();
        assert!(mus.iter().all(|m| *m == ratio(1u64, 3u64)));
    }
    let dictator = Scf::dictator_top(3, 2, 0).unwrap();
    assert!(is_neutral(&dictator, Mode::Exact, CAP).unwrap().is_neutral());
    let constant = Scf::constant(3, 2, 1).unwrap();
    assert!(!is_neutral(&constant, Mode::Exact, CAP).unwrap().is_neutral());
}
