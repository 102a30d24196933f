use gslab::manipulation::{census, is_manipulation_point, is_r_manipulation_point, move_span};
use gslab::paths::{
    bubble_sort_path, order_preserving_path, refined_coord_path_block, refined_coord_path_generic,
    refined_profile_path, sim_canon_path, PairVertex, PartLabel, Path,
};
use gslab::ranking::{adjacent_swap_between, decode, encode, RankingIndex};
use gslab::scf::Distances;
use gslab::{AdjTransposition, Alt, Mode, Profile, Ranking, Scf, TabularScf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ranking(q: usize) -> impl Strategy<Value = Ranking> {
    Just((1..=q as Alt).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Ranking::new(&v).unwrap())
}

fn profile(q: usize, n: usize) -> impl Strategy<Value = Profile> {
    proptest::collection::vec(ranking(q), n).prop_map(|v| Profile::new(v).unwrap())
}

/// Four distinct alternatives out of `1..=q`, in random order.
fn four(q: usize) -> impl Strategy<Value = [Alt; 4]> {
    Just((1..=q as Alt).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| [v[0], v[1], v[2], v[3]])
}

fn inversions(x: &Ranking, y: &Ranking) -> usize {
    let q = x.q() as Alt;
    let mut k = 0;
    for a in 1..=q {
        for b in (a + 1)..=q {
            k += usize::from(x.prefers(a, b) != y.prefers(a, b));
        }
    }
    k
}

fn adjacent_steps(p: &Path<Ranking>) -> bool {
    p.edges().all(|(u, v)| adjacent_swap_between(u, v).is_some())
}

fn steps_in(p: &Path<Ranking>, label: PartLabel) -> Vec<AdjTransposition> {
    p.part_vertices(label)
        .unwrap_or(&[])
        .windows(2)
        .map(|w| adjacent_swap_between(&w[0], &w[1]).expect("adjacent step"))
        .collect()
}

/// `r` with `b` moved to sit just below `a`.
fn glue(r: &Ranking, a: Alt, b: Alt) -> Ranking {
    let mut v: Vec<Alt> = r.order().iter().copied().filter(|&e| e != b).collect();
    let k = v.iter().position(|&e| e == a).unwrap();
    v.insert(k + 1, b);
    Ranking::new(&v).unwrap()
}

fn swap(r: &Ranking, a: Alt, b: Alt) -> Ranking {
    r.swap_alternatives(a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lehmer_code_round_trips(x in (3usize..=7).prop_flat_map(ranking)) {
        let code = encode(&x);
        prop_assert_eq!(decode(code, x.q()).unwrap(), x);
        prop_assert!(code.0 < (1..=x.q() as u64).product());
    }

    #[test]
    fn lehmer_order_is_lexicographic(q in 3usize..=6, k in 0u64..700) {
        let total: u64 = (1..=q as u64).product();
        let k = k % (total - 1);
        let (a, b) = (decode(RankingIndex(k), q).unwrap(), decode(RankingIndex(k + 1), q).unwrap());
        prop_assert!(a.order() < b.order());
    }

    #[test]
    fn profile_text_and_index_round_trip(x in (3usize..=5, 1usize..=4).prop_flat_map(|(q, n)| profile(q, n))) {
        prop_assert_eq!(x.to_string().parse::<Profile>().unwrap(), x.clone());
        prop_assert_eq!(Profile::from_index(x.index(), x.q(), x.n()).unwrap(), x);
    }

    #[test]
    fn composition_and_inverse(
        (x, y) in (3usize..=7).prop_flat_map(|q| (ranking(q), ranking(q)))
    ) {
        let id = Ranking::identity(x.q());
        prop_assert_eq!(x.compose(&x.inverse()).unwrap(), id);
        prop_assert_eq!(x.compose(&id).unwrap(), x);
        let xy = x.compose(&y).unwrap();
        for a in 1..=x.q() as Alt {
            prop_assert_eq!(xy.apply(a), x.apply(y.apply(a)));
        }
    }

    #[test]
    fn transpositions_are_involutions(x in (3usize..=7).prop_flat_map(ranking)) {
        for t in AdjTransposition::all(x.q()) {
            let y = t.apply(&x);
            prop_assert_eq!(t.apply(&y), x);
            let (a, b) = t.pair();
            if x.adjacent(a, b) {
                prop_assert_eq!(y, swap(&x, a, b));
                prop_assert_eq!(move_span(&x, &y), 2);
            } else {
                prop_assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn bubble_path_is_geodesic((x, y) in (3usize..=7).prop_flat_map(|q| (ranking(q), ranking(q)))) {
        let p = bubble_sort_path(&x, &y).unwrap();
        prop_assert_eq!(p.first(), &x);
        prop_assert_eq!(p.last(), &y);
        prop_assert!(adjacent_steps(&p));
        prop_assert_eq!(p.len(), inversions(&x, &y));
        prop_assert!(p.len() <= x.q() * (x.q() - 1) / 2);
    }

    #[test]
    fn bubble_path_commutes_with_relabelling(
        (h, x, y) in (3usize..=6).prop_flat_map(|q| (ranking(q), ranking(q), ranking(q)))
    ) {
        let moved = bubble_sort_path(&h.compose(&x).unwrap(), &h.compose(&y).unwrap()).unwrap();
        let mapped: Vec<Ranking> = bubble_sort_path(&x, &y).unwrap().vertices().iter().map(|v| h.compose(v).unwrap()).collect();
        prop_assert_eq!(moved.vertices(), &mapped[..]);
    }

    #[test]
    fn order_preserving_path_keeps_order(
        (x, y, a, b) in (3usize..=6).prop_flat_map(|q| (ranking(q), ranking(q), 1..=q as Alt, 1..=q as Alt))
    ) {
        prop_assume!(a != b);
        let y = if x.prefers(a, b) == y.prefers(a, b) { y } else { swap(&y, a, b) };
        let p = order_preserving_path(a, b, &x, &y).unwrap();
        prop_assert_eq!(p.first(), &x);
        prop_assert_eq!(p.last(), &y);
        prop_assert!(adjacent_steps(&p));
        prop_assert!(p.len() <= x.q() * x.q());
        prop_assert!(p.vertices().iter().all(|v| v.prefers(a, b) == x.prefers(a, b)));
    }

    #[test]
    fn sim_canon_path_has_typed_steps(
        (x, z, a, b) in (3usize..=6).prop_flat_map(|q| (ranking(q), ranking(q), 1..=q as Alt, 1..=q as Alt))
    ) {
        prop_assume!(a != b);
        let p = sim_canon_path(a, b, &x, &z).unwrap();
        let v = p.vertices();
        prop_assert_eq!(v.len(), 3);
        prop_assert_eq!(v[1].prefers(a, b), x.prefers(a, b));
        prop_assert!(v[1] == z || v[1] == swap(&z, a, b));
        prop_assert_eq!(v[1] == z, x.prefers(a, b) == z.prefers(a, b));
    }

    #[test]
    fn generic_refined_path_discipline(
        (x, z, alts) in (4usize..=6).prop_flat_map(|q| (ranking(q), ranking(q), four(q)))
    ) {
        let [a, b, c, d] = alts;
        let p = refined_coord_path_generic(a, b, c, d, &x, &z).unwrap();
        let q = x.q();
        prop_assert_eq!((p.first(), p.last()), (&x, &z));
        prop_assert!(adjacent_steps(&p));
        prop_assert!(p.len() <= q * q + 2 * q);
        prop_assert!(steps_in(&p, PartLabel::I).iter().all(|t| !t.is(a, b)));
        prop_assert!(steps_in(&p, PartLabel::Pi).iter().all(|t| !t.is(c, d)));
        let junction = p.part(PartLabel::I).unwrap().end;
        prop_assert_eq!(p.vertices()[junction].prefers(c, d), z.prefers(c, d));
    }

    #[test]
    fn block_refined_path_discipline(
        (x, z, alts) in (4usize..=6).prop_flat_map(|q| (ranking(q), ranking(q), four(q)))
    ) {
        let [a, b, c, d] = alts;
        let x = glue(&x, a, b);
        let p = refined_coord_path_block(a, b, c, d, &x, &z).unwrap();
        let q = x.q();
        prop_assert_eq!((p.first(), p.last()), (&x, &z));
        prop_assert!(p.len() <= q * q + 2 * q);
        prop_assert!(steps_in(&p, PartLabel::I).iter().all(|t| !t.involves(a) && !t.involves(b)));
        let junction = &p.vertices()[p.part(PartLabel::I).unwrap().end];
        prop_assert!(junction.contiguous(&[a, b, c, d]));
        let after = &p.vertices()[p.part(PartLabel::Delta).unwrap().end];
        let inner = |r: &Ranking| r.order().iter().copied().filter(|e| alts.contains(e)).collect::<Vec<_>>();
        prop_assert_eq!(inner(after), inner(&z));
        prop_assert!(steps_in(&p, PartLabel::Pi).iter().all(|t| !t.is(c, d)));
    }

    #[test]
    fn refined_profile_path_discipline(
        (x, z, alts, n) in (4usize..=5, 2usize..=3)
            .prop_flat_map(|(q, n)| (profile(q, n), profile(q, n), four(q), Just(n)))
    ) {
        let [a, b, c, d] = alts;
        let (i, j) = (0, n - 1);
        let (ab, cd) = (AdjTransposition::new(a, b).unwrap(), AdjTransposition::new(c, d).unwrap());
        let x = x.with_voter(i, glue(x.voter(i), a, b));
        let z = z.with_voter(j, glue(z.voter(j), c, d));
        let start = PairVertex::new(x.clone(), x.with_voter(i, ab.apply(x.voter(i))));
        let end = PairVertex::new(z.clone(), z.with_voter(j, cd.apply(z.voter(j))));
        let p = refined_profile_path(a, b, c, d, i, j, &start, &end).unwrap();
        prop_assert_eq!((p.first(), p.last()), (&start, &end));
        let lead = p.part(PartLabel::I).unwrap();
        let tail = p.part(PartLabel::Pi).unwrap();
        for (k, v) in p.vertices().iter().enumerate() {
            if k <= lead.end {
                prop_assert_eq!(&v.partner, &v.lead.with_voter(i, ab.apply(v.lead.voter(i))));
                prop_assert_eq!(v.lead.voter(i).rank_of(a), x.voter(i).rank_of(a));
                prop_assert_eq!(v.lead.voter(i).rank_of(b), x.voter(i).rank_of(b));
                for m in 0..n {
                    prop_assert_eq!(v.lead.voter(m).prefers(a, b), x.voter(m).prefers(a, b));
                }
            }
            if k >= tail.start {
                prop_assert_eq!(&v.partner, &v.lead.with_voter(j, cd.apply(v.lead.voter(j))));
            }
        }
        for (u, v) in p.edges().skip(lead.end + 1) {
            let diff = u.lead.differing_voters(&v.lead);
            prop_assert!(diff.len() <= 1);
        }
        for (u, v) in p.edges().take(lead.end) {
            let diff = u.lead.differing_voters(&v.lead);
            prop_assert_eq!(diff.len(), 1);
            prop_assert!(adjacent_swap_between(u.lead.voter(diff[0]), v.lead.voter(diff[0])).is_some());
        }
    }

    #[test]
    fn manipulation_chain_and_witnesses(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = Scf::tabular(TabularScf::random(&mut rng, 4, 2));
        let c = census(&f, Mode::Exact, 1 << 20).unwrap();
        prop_assert!(c.chain_holds);
        prop_assert!(c.counts.manip >= c.counts.r4 && c.counts.r4 >= c.counts.r3 && c.counts.r3 >= c.counts.r2);
        let x = Profile::random(&mut rng, 4, 2);
        match is_manipulation_point(&f, &x).unwrap() {
            Some(w) => prop_assert!(w.verify(&f)),
            None => prop_assert!(is_r_manipulation_point(&f, &x, 4).unwrap().is_none()),
        }
        for r in 2..=4 {
            if let Some(w) = is_r_manipulation_point(&f, &x, r).unwrap() {
                prop_assert!(w.verify(&f) && w.span() <= r);
            }
        }
    }

    #[test]
    fn distance_ordering(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = TabularScf::random(&mut rng, 3, 2);
        let d = Distances::of_table(&t);
        prop_assert!(d.to_nonmanip <= d.to_dict);
        prop_assert!(d.to_nonmanip <= d.to_two_valued);
        prop_assert!(d.to_two_valued <= d.to_const);
        prop_assert!(d.to_dict <= d.to_const);
    }

    #[test]
    fn sampled_census_is_reproducible(seed in any::<u64>()) {
        let f = Scf::plurality_leftmost(3, 9).unwrap();
        let mode = Mode::Sampled { samples: 3000, seed };
        prop_assert_eq!(census(&f, mode, 0).unwrap().to_json(), census(&f, mode, 0).unwrap().to_json());
    }
}
