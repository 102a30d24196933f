//! Path maps, relabeling groups and inverse-image censuses.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{Display, Write as _};
use std::hash::Hash;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::coordinate::{
    bubble_sort_path, order_preserving_unchecked, rankings_with_above, rankings_with_adjacent,
    refined_coord_path_block, refined_coord_path_generic,
};
use super::path::{PartLabel, Path};
use super::profile::{apply_at, refined_path_bound, refined_profile_path, PairVertex};
use crate::error::{domain, Error, Result};
use crate::exact::factorial;
use crate::ranking::{rankings, AdjTransposition, Alt, Profile, Ranking};
use crate::sampling::{block_rng, Mode, BLOCK};

/// Vertices that a permutation of the alternatives acts on.
pub trait Relabel: Sized {
    /// The image under `p`, which sends alternative `a` to `p.apply(a)`.
    fn relabel(&self, p: &Ranking) -> Self;
}

impl Relabel for Ranking {
    fn relabel(&self, p: &Ranking) -> Self {
        p.compose_unchecked(self)
    }
}

impl Relabel for Profile {
    fn relabel(&self, p: &Ranking) -> Self {
        Profile::from_vec_unchecked(self.voters().iter().map(|r| r.relabel(p)).collect())
    }
}

impl Relabel for PairVertex {
    fn relabel(&self, p: &Ranking) -> Self {
        PairVertex::new(self.lead.relabel(p), self.partner.relabel(p))
    }
}

impl<V: Relabel + Clone + PartialEq> Relabel for Path<V> {
    fn relabel(&self, p: &Ranking) -> Self {
        self.map(|v| v.relabel(p))
    }
}

/// Which inverse image a declared bound limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `|Γ^{-1}(v)|`, paths through `v` at any position.
    Total,
    /// `|Γ_k^{-1}(v)|` for each position `k`.
    PerPosition,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeclaredBound {
    pub formula: &'static str,
    pub value: u128,
    pub kind: BoundKind,
}

/// A rule assigning a path to every pair in `sources × targets`.
pub trait PathMap: Sync {
    type V: Clone + Eq + Hash + Ord + Display + Relabel + Send + Sync;

    fn name(&self) -> String;
    /// Declared maximum path length.
    fn max_len(&self) -> usize;
    fn sources(&self) -> Vec<Self::V>;
    fn targets(&self) -> Vec<Self::V>;
    fn path(&self, x: &Self::V, y: &Self::V) -> Path<Self::V>;
    fn declared_bound(&self) -> Option<DeclaredBound> {
        None
    }
}

/// A finite group of relabelings of `1..=q`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    q: usize,
    name: String,
    elements: Vec<Ranking>,
}

impl GroupAction {
    pub fn identity(q: usize) -> Self {
        GroupAction { q, name: "identity".into(), elements: vec![Ranking::identity(q)] }
    }

    /// All `q!` relabelings.
    pub fn all_relabelings(q: usize) -> Self {
        GroupAction { q, name: "all relabelings".into(), elements: rankings(q).collect() }
    }

    /// Relabelings that fix every alternative in `fixed`.
    pub fn fixing(q: usize, fixed: &[Alt]) -> Self {
        let elements = rankings(q).filter(|p| fixed.iter().all(|&a| p.apply(a) == a)).collect();
        GroupAction { q, name: format!("relabelings fixing {fixed:?}"), elements }
    }

    /// A group from explicit elements; fails unless they contain the
    /// identity and are closed under composition.
    pub fn from_elements(q: usize, name: impl Into<String>, elements: Vec<Ranking>) -> Result<Self> {
        if elements.iter().any(|p| p.q() != q) {
            return domain(format!("every element must act on 1..={q}"));
        }
        let set: HashSet<Ranking> = elements.iter().copied().collect();
        if !set.contains(&Ranking::identity(q)) {
            return domain("the identity is missing");
        }
        for g in &elements {
            for h in &elements {
                if !set.contains(&g.compose_unchecked(h)) {
                    return domain(format!("{g} composed with {h} leaves the set"));
                }
            }
        }
        Ok(GroupAction { q, name: name.into(), elements })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn elements(&self) -> &[Ranking] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// No element other than the identity fixes any vertex of `universe`.
    pub fn is_fixed_point_free_on<V: Relabel + PartialEq>(&self, universe: &[V]) -> bool {
        let id = Ranking::identity(self.q);
        self.elements.iter().filter(|h| **h != id).all(|h| universe.iter().all(|v| v.relabel(h) != *v))
    }

    /// `H S = S`.
    pub fn preserves<V: Relabel + Eq + Hash + Clone>(&self, set: &[V]) -> bool {
        let s: HashSet<&V> = set.iter().collect();
        self.elements.iter().all(|h| set.iter().all(|v| s.contains(&v.relabel(h))))
    }
}

/// A failed equivariance check.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceWitness {
    pub h: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub map: String,
    pub group: String,
    pub group_order: usize,
    pub checked: u64,
    pub pass: bool,
    pub witness: Option<InvarianceWitness>,
}

/// Checks `Γ(hx, hy) = h Γ(x, y)` for every `(h, x, y)` or for sampled
/// triples. The first failure in `(h, x, y)` order is reported.
pub fn verify_invariance<M: PathMap>(map: &M, group: &GroupAction, mode: Mode) -> Result<InvarianceReport> {
    let (xs, ys) = (map.sources(), map.targets());
    if !group.preserves(&xs) || !group.preserves(&ys) {
        return domain(format!("{} does not preserve the domains of {}", group.name(), map.name()));
    }
    let check = |h: &Ranking, x: &M::V, y: &M::V| {
        let lhs = map.path(&x.relabel(h), &y.relabel(h));
        let rhs = map.path(x, y).relabel(h);
        lhs.vertices() == rhs.vertices()
    };
    let witness =
        |h: &Ranking, x: &M::V, y: &M::V| InvarianceWitness { h: h.to_string(), x: x.to_string(), y: y.to_string() };
    let (checked, fail) = match mode {
        Mode::Exact => {
            let fails: Vec<Option<InvarianceWitness>> = group
                .elements()
                .par_iter()
                .map(|h| xs.iter().find_map(|x| ys.iter().find(|y| !check(h, x, y)).map(|y| witness(h, x, y))))
                .collect();
            let total = (group.order() * xs.len() * ys.len()) as u64;
            (total, fails.into_iter().flatten().next())
        }
        Mode::Sampled { samples, seed } => {
            let blocks = samples.div_ceil(BLOCK);
            let fails: Vec<Option<InvarianceWitness>> = (0..blocks)
                .into_par_iter()
                .map(|b| {
                    let mut rng = block_rng(seed, b);
                    let count = BLOCK.min(samples - b * BLOCK);
                    for _ in 0..count {
                        let h = &group.elements()[rng.gen_range(0..group.order())];
                        let x = &xs[rng.gen_range(0..xs.len())];
                        let y = &ys[rng.gen_range(0..ys.len())];
                        if !check(h, x, y) {
                            return Some(witness(h, x, y));
                        }
                    }
                    None
                })
                .collect();
            (samples, fails.into_iter().flatten().next())
        }
    };
    Ok(InvarianceReport {
        map: map.name(),
        group: group.name().to_string(),
        group_order: group.order(),
        checked,
        pass: fail.is_none(),
        witness: fail,
    })
}

/// Paths through one vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VertexCount {
    /// Pairs whose path visits the vertex at least once.
    pub total: u64,
    /// `by_position[k]`: pairs whose path has the vertex at position `k`.
    pub by_position: Vec<u64>,
}

impl VertexCount {
    fn add_path<V: Eq + Hash + Ord + Clone>(counts: &mut BTreeMap<V, VertexCount>, path: &Path<V>, len: usize) {
        let mut seen: HashSet<&V> = HashSet::new();
        for (k, v) in path.vertices().iter().enumerate() {
            let c = counts.entry(v.clone()).or_insert_with(|| VertexCount { total: 0, by_position: vec![0; len + 1] });
            if c.by_position.len() <= k {
                c.by_position.resize(k + 1, 0);
            }
            c.by_position[k] += 1;
            if seen.insert(v) {
                c.total += 1;
            }
        }
    }

    fn merge(&mut self, other: VertexCount) {
        self.total += other.total;
        if self.by_position.len() < other.by_position.len() {
            self.by_position.resize(other.by_position.len(), 0);
        }
        for (k, c) in other.by_position.into_iter().enumerate() {
            self.by_position[k] += c;
        }
    }

    pub fn max_position(&self) -> u64 {
        self.by_position.iter().copied().max().unwrap_or(0)
    }
}

/// Exact inverse-image counts of a path map over its whole domain.
#[derive(Clone, Debug, Serialize)]
pub struct InverseImageCensus<V: Ord> {
    pub map: String,
    pub pairs: u64,
    pub max_len: usize,
    pub longest: usize,
    /// Every path has length at most `max_len`.
    pub lengths_ok: bool,
    #[serde(skip)]
    pub counts: BTreeMap<V, VertexCount>,
    pub max_total: u64,
    pub max_position: u64,
    pub bound: Option<DeclaredBound>,
    /// `(ℓ + 1) |L1| |L2| / |H|` for the group passed in, when there is one.
    pub counting_bound: Option<u128>,
    /// `max_total <= Σ_k max_k |Γ_k^{-1}|` and every count within both bounds.
    pub pass: bool,
}

impl<V: Ord + Display> InverseImageCensus<V> {
    /// Rows `vertex,i,count` for every nonzero per-position count.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex,i,count\n");
        for (v, c) in &self.counts {
            for (k, &n) in c.by_position.iter().enumerate() {
                if n > 0 {
                    writeln!(s, "{v},{k},{n}").unwrap();
                }
            }
        }
        s
    }
}

/// Enumerates every pair of the domain and counts the paths through each
/// vertex. `group` adds the counting bound `(ℓ+1)|L1||L2|/|H|`.
pub fn inverse_image_census<M: PathMap>(
    map: &M,
    group: Option<&GroupAction>,
    cap: u128,
) -> Result<InverseImageCensus<M::V>> {
    let (xs, ys) = (map.sources(), map.targets());
    let pairs = (xs.len() * ys.len()) as u128;
    if pairs > cap {
        return Err(Error::CapExceeded { needed: pairs, cap });
    }
    let len = map.max_len();
    let (counts, longest) = xs
        .par_iter()
        .map(|x| {
            let mut local = BTreeMap::new();
            let mut longest = 0;
            for y in &ys {
                let p = map.path(x, y);
                longest = longest.max(p.len());
                VertexCount::add_path(&mut local, &p, len);
            }
            (local, longest)
        })
        .reduce(
            || (BTreeMap::new(), 0),
            |(mut a, la), (b, lb)| {
                for (v, c) in b {
                    a.entry(v).or_default().merge(c);
                }
                (a, la.max(lb))
            },
        );
    let max_total = counts.values().map(|c| c.total).max().unwrap_or(0);
    let max_position = counts.values().map(|c| c.max_position()).max().unwrap_or(0);
    let bound = map.declared_bound();
    let counting_bound = group.map(|g| (len as u128 + 1) * pairs / g.order() as u128);
    let union_ok = counts.values().all(|c| c.total <= c.by_position.iter().sum::<u64>());
    let declared_ok = bound.as_ref().is_none_or(|b| match b.kind {
        BoundKind::Total => max_total as u128 <= b.value,
        BoundKind::PerPosition => max_position as u128 <= b.value,
    });
    let counting_ok = counting_bound.is_none_or(|c| max_total as u128 <= c);
    Ok(InverseImageCensus {
        map: map.name(),
        pairs: pairs as u64,
        max_len: len,
        longest,
        lengths_ok: longest <= len,
        counts,
        max_total,
        max_position,
        bound,
        counting_bound,
        pass: union_ok && declared_ok && counting_ok && longest <= len,
    })
}

/// How many pairs have each vertex as the last vertex of `label`.
pub fn junction_counts<M: PathMap>(map: &M, label: PartLabel) -> BTreeMap<M::V, u64> {
    let ys = map.targets();
    map.sources()
        .par_iter()
        .map(|x| {
            let mut local: BTreeMap<M::V, u64> = BTreeMap::new();
            for y in &ys {
                let p = map.path(x, y);
                if let Some(part) = p.part(label) {
                    *local.entry(p.vertices()[part.end].clone()).or_default() += 1;
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (v, c) in b {
                *a.entry(v).or_default() += c;
            }
            a
        })
}

fn qfact(q: usize) -> u128 {
    factorial(q) as u128
}

/// Bubble-sort paths on all rankings; invariant under every relabeling.
#[derive(Clone, Debug)]
pub struct BubbleSortMap {
    pub q: usize,
}

impl PathMap for BubbleSortMap {
    type V = Ranking;

    fn name(&self) -> String {
        format!("bubble sort, q={}", self.q)
    }

    fn max_len(&self) -> usize {
        self.q * (self.q - 1) / 2
    }

    fn sources(&self) -> Vec<Ranking> {
        rankings(self.q).collect()
    }

    fn targets(&self) -> Vec<Ranking> {
        self.sources()
    }

    fn path(&self, x: &Ranking, y: &Ranking) -> Path<Ranking> {
        bubble_sort_path(x, y).expect("same q")
    }

    fn declared_bound(&self) -> Option<DeclaredBound> {
        let q = self.q as u128;
        Some(DeclaredBound { formula: "q^2 q!/2", value: q * q * qfact(self.q) / 2, kind: BoundKind::Total })
    }
}

/// Order-keeping paths between rankings with `a` above `b`.
#[derive(Clone, Debug)]
pub struct OrderPreservingMap {
    pub q: usize,
    pub a: Alt,
    pub b: Alt,
}

impl PathMap for OrderPreservingMap {
    type V = Ranking;

    fn name(&self) -> String {
        format!("order preserving ({},{}), q={}", self.a, self.b, self.q)
    }

    fn max_len(&self) -> usize {
        self.q * self.q
    }

    fn sources(&self) -> Vec<Ranking> {
        rankings_with_above(self.q, self.a, self.b)
    }

    fn targets(&self) -> Vec<Ranking> {
        self.sources()
    }

    fn path(&self, x: &Ranking, y: &Ranking) -> Path<Ranking> {
        order_preserving_unchecked(self.a, self.b, x, y)
    }

    fn declared_bound(&self) -> Option<DeclaredBound> {
        let q = self.q as u128;
        Some(DeclaredBound { formula: "q^4 q!", value: q.pow(4) * qfact(self.q), kind: BoundKind::Total })
    }
}

/// The two-part refined paths on all pairs of rankings.
#[derive(Clone, Debug)]
pub struct GenericRefinedMap {
    pub q: usize,
    pub alts: [Alt; 4],
}

impl PathMap for GenericRefinedMap {
    type V = Ranking;

    fn name(&self) -> String {
        format!("two-part refined {:?}, q={}", self.alts, self.q)
    }

    fn max_len(&self) -> usize {
        self.q * self.q + 2 * self.q
    }

    fn sources(&self) -> Vec<Ranking> {
        rankings(self.q).collect()
    }

    fn targets(&self) -> Vec<Ranking> {
        self.sources()
    }

    fn path(&self, x: &Ranking, y: &Ranking) -> Path<Ranking> {
        let [a, b, c, d] = self.alts;
        refined_coord_path_generic(a, b, c, d, x, y).expect("valid alternatives")
    }

    fn declared_bound(&self) -> Option<DeclaredBound> {
        let q = self.q as u128;
        Some(DeclaredBound { formula: "q^4 q!", value: q.pow(4) * qfact(self.q), kind: BoundKind::PerPosition })
    }
}

/// The three-part refined paths from rankings with `a`, `b` adjacent.
#[derive(Clone, Debug)]
pub struct BlockRefinedMap {
    pub q: usize,
    pub alts: [Alt; 4],
}

impl PathMap for BlockRefinedMap {
    type V = Ranking;

    fn name(&self) -> String {
        format!("three-part refined {:?}, q={}", self.alts, self.q)
    }

    fn max_len(&self) -> usize {
        self.q * self.q + 2 * self.q
    }

    fn sources(&self) -> Vec<Ranking> {
        rankings_with_adjacent(self.q, self.alts[0], self.alts[1])
    }

    fn targets(&self) -> Vec<Ranking> {
        rankings(self.q).collect()
    }

    fn path(&self, x: &Ranking, y: &Ranking) -> Path<Ranking> {
        let [a, b, c, d] = self.alts;
        refined_coord_path_block(a, b, c, d, x, y).expect("a, b adjacent in every source")
    }

    fn declared_bound(&self) -> Option<DeclaredBound> {
        let q = self.q as u128;
        Some(DeclaredBound { formula: "2 q^3 q!", value: 2 * q.pow(3) * qfact(self.q), kind: BoundKind::PerPosition })
    }
}

/// Refined paths between `(x, [a:b]_i x)` and `(z, [c:d]_j z)` over all
/// profiles with a change at those voters.
#[derive(Clone, Debug)]
pub struct RefinedProfileMap {
    pub q: usize,
    pub n: usize,
    pub alts: [Alt; 4],
    pub i: usize,
    pub j: usize,
}

impl RefinedProfileMap {
    fn endpoints(&self, s: Alt, t: Alt, k: usize) -> Vec<PairVertex> {
        let tr = AdjTransposition::new(s, t).expect("distinct");
        crate::ranking::profiles(self.q, self.n, u128::MAX)
            .expect("no cap")
            .filter_map(|x| {
                let y = apply_at(&tr, k, &x);
                (y != x).then(|| PairVertex::new(x, y))
            })
            .collect()
    }
}

impl PathMap for RefinedProfileMap {
    type V = PairVertex;

    fn name(&self) -> String {
        format!("refined profile {:?}, voters ({},{}), q={}, n={}", self.alts, self.i + 1, self.j + 1, self.q, self.n)
    }

    fn max_len(&self) -> usize {
        refined_path_bound(self.n, self.q)
    }

    fn sources(&self) -> Vec<PairVertex> {
        self.endpoints(self.alts[0], self.alts[1], self.i)
    }

    fn targets(&self) -> Vec<PairVertex> {
        self.endpoints(self.alts[2], self.alts[3], self.j)
    }

    fn path(&self, x: &PairVertex, y: &PairVertex) -> Path<PairVertex> {
        let [a, b, c, d] = self.alts;
        refined_profile_path(a, b, c, d, self.i, self.j, x, y).expect("endpoints from the domain")
    }

    fn declared_bound(&self) -> Option<DeclaredBound> {
        let q = self.q as u128;
        let value = 7 * self.n as u128 * q.pow(12) * qfact(self.q).pow(self.n as u32);
        Some(DeclaredBound { formula: "7 n q^12 (q!)^n", value, kind: BoundKind::Total })
    }
}

/// A map given by a closure, for ad hoc constructions and negative controls.
pub struct FnPathMap<V, F> {
    pub name: String,
    pub max_len: usize,
    pub sources: Vec<V>,
    pub targets: Vec<V>,
    pub build: F,
}

impl<V, F> PathMap for FnPathMap<V, F>
where
    V: Clone + Eq + Hash + Ord + Display + Relabel + Send + Sync,
    F: Fn(&V, &V) -> Path<V> + Sync,
{
    type V = V;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn max_len(&self) -> usize {
        self.max_len
    }

    fn sources(&self) -> Vec<V> {
        self.sources.clone()
    }

    fn targets(&self) -> Vec<V> {
        self.targets.clone()
    }

    fn path(&self, x: &V, y: &V) -> Path<V> {
        (self.build)(x, y)
    }
}
