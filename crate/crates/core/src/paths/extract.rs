//! Manipulations extracted from boundary edges and from the paths that join
//! two boundaries.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use super::path::{PartLabel, Path};
use super::profile::{adjacent_step, apply_at, profile_path_v1, refined_profile_path, PairVertex};
use crate::error::{Error, Result};
use crate::exact::factorial;
use crate::influence::BoundaryEdge;
use crate::manipulation::{is_manipulation_point, ManipulationTable, ManipulationWitness};
use crate::ranking::{rankings, AdjTransposition, Alt, Profile, Ranking};
use crate::scf::{Scf, TabularScf};

fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::TheoremViolation(msg.into()))
}

/// Step of the three-value procedure that produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleStage {
    /// One of the two given edges already carries a 2-manipulation.
    Direct,
    /// Found while moving `c` next to `a, b` at voter `i`.
    ShiftC,
    /// Found while moving `a` next to `b, c` at voter `j`.
    ShiftA,
    /// Brute force over reorderings of the block `a, b, c` at voters `i`, `j`.
    Block,
}

#[derive(Clone, Debug, Serialize)]
pub struct TripleExtraction {
    pub witness: ManipulationWitness,
    pub stage: TripleStage,
}

/// Which kind of edge of a two-boundary path produced the witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleCase {
    /// A member of the edge is a manipulation point.
    EndpointManipulable,
    /// The four members take at least three values.
    ThreeValues,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleExtraction {
    pub witness: ManipulationWitness,
    /// Index of the path edge.
    pub edge: usize,
    pub case: SimpleCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinedCase {
    /// First value change along the leading part.
    Lead,
    /// Last value change along the trailing part.
    Tail,
    /// Both parts keep their values; the junction edge is used.
    Junction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "via", content = "stage", rename_all = "snake_case")]
pub enum Resolution {
    Edge,
    Triple(TripleStage),
    Block,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinedExtraction {
    pub witness: ManipulationWitness,
    pub case: RefinedCase,
    pub resolution: Resolution,
    /// Index of the path edge.
    pub edge: usize,
    /// The manipulation point is within two voters of a path vertex, each
    /// differing by a reordering of `a, b, c, d` and one shifted element.
    pub close: bool,
}

/// Extraction procedures for one tabulated function.
pub struct Extractor {
    f: Scf,
    table: TabularScf,
    manip: OnceLock<ManipulationTable>,
}

impl Extractor {
    pub fn new(f: &Scf, cap: u128) -> Result<Self> {
        let table = f.tabulate(cap)?;
        Ok(Extractor { f: f.clone(), table, manip: OnceLock::new() })
    }

    pub fn scf(&self) -> &Scf {
        &self.f
    }

    pub fn table(&self) -> &TabularScf {
        &self.table
    }

    pub fn manipulation_table(&self) -> &ManipulationTable {
        self.manip.get_or_init(|| ManipulationTable::build(&self.table))
    }

    #[inline]
    pub fn value(&self, x: &Profile) -> Alt {
        self.table.winner(x.voters())
    }

    /// `(f(x), f(y))` for an edge.
    pub fn value_pair(&self, e: &BoundaryEdge) -> (Alt, Alt) {
        (self.value(&e.x), self.value(&e.y))
    }

    fn check_profile(&self, x: &Profile) -> Result<()> {
        if x.q() != self.table.q() || x.n() != self.table.n() {
            return precondition(format!("profile {x} does not match q={}, n={}", self.table.q(), self.table.n()));
        }
        Ok(())
    }

    /// A 2-manipulation across `(u, v)` when the two differ at one voter by
    /// an adjacent transposition other than `[f(u):f(v)]`. Such a
    /// transposition keeps the relative order of `f(u)` and `f(v)`, so one
    /// of the two voters' rankings prefers the other profile's winner.
    pub fn across_edge(&self, u: &Profile, v: &Profile) -> Option<ManipulationWitness> {
        let (k, t) = adjacent_step(u, v)?;
        let (p, q) = (self.value(u), self.value(v));
        if p == q || t.is(p, q) {
            return None;
        }
        let (x, y) = if u.voter(k).prefers(q, p) { (u, v) } else { (v, u) };
        Some(ManipulationWitness { x: x.clone(), y: y.clone(), voter: k, r: Some(2) })
    }

    /// The 2-manipulation carried by a refined boundary edge whose
    /// transposition is not `[f(x):f(y)]`.
    pub fn two_manipulation(&self, edge: &BoundaryEdge) -> Result<ManipulationWitness> {
        self.check_profile(&edge.x)?;
        self.check_profile(&edge.y)?;
        let Some(z) = edge.z else {
            return precondition("the edge carries no transposition");
        };
        if adjacent_step(&edge.x, &edge.y) != Some((edge.i, z)) {
            return precondition(format!("{edge} is not a change by {z} at one voter"));
        }
        let (a, b) = (self.value(&edge.x), self.value(&edge.y));
        if a == b {
            return precondition(format!("both ends of {edge} map to {a}"));
        }
        if z.is(a, b) {
            return precondition(format!("the edge transposition is [{a}:{b}] itself"));
        }
        let w = self.across_edge(&edge.x, &edge.y).expect("order of a, b is kept");
        if !w.verify(&self.f) {
            return violation(format!("witness {w} does not verify"));
        }
        Ok(w)
    }

    /// A manipulation of span at most 3 from `x, y, z` with `(x, y)` an
    /// edge at voter `i`, `(z, y)` an edge at voter `j`, and values
    /// `f(x) = a`, `f(y) = b`, `f(z) = c`.
    #[allow(clippy::too_many_arguments)]
    pub fn three_manipulation(
        &self,
        x: &Profile,
        y: &Profile,
        z: &Profile,
        i: usize,
        j: usize,
        a: Alt,
        b: Alt,
        c: Alt,
    ) -> Result<TripleExtraction> {
        for p in [x, y, z] {
            self.check_profile(p)?;
        }
        if i == j || a == b || b == c || a == c {
            return precondition("need i != j and distinct a, b, c");
        }
        if adjacent_step(x, y).map(|s| s.0) != Some(i) || adjacent_step(z, y).map(|s| s.0) != Some(j) {
            return precondition("x, y must differ by an adjacent transposition at i, and z, y at j");
        }
        if (self.value(x), self.value(y), self.value(z)) != (a, b, c) {
            return precondition(format!("expected values ({a}, {b}, {c})"));
        }
        let finish = |mut w: ManipulationWitness, stage: TripleStage| -> Result<TripleExtraction> {
            w.r = Some(w.span());
            if w.span() > 3 || !w.verify(&self.f) {
                return violation(format!("witness {w} does not verify as a 3-manipulation"));
            }
            if !triple_local(&w.x, x, y, z, i, j, a, c) {
                return violation(format!("witness point {} is not local to the triple", w.x));
            }
            Ok(TripleExtraction { witness: w, stage })
        };
        if let Some(w) = self.across_edge(x, y).or_else(|| self.across_edge(z, y)) {
            return finish(w, TripleStage::Direct);
        }
        let (mut xs, mut ys, mut zs) = (x.clone(), y.clone(), z.clone());
        for (k, mover, pair, stage) in [(i, c, [a, b], TripleStage::ShiftC), (j, a, [b, c], TripleStage::ShiftA)] {
            while let Some(e) = shift_partner(ys.voter(k), mover, &pair) {
                let t = AdjTransposition::new(mover, e)?;
                let (nx, ny, nz) = (apply_at(&t, k, &xs), apply_at(&t, k, &ys), apply_at(&t, k, &zs));
                let found = self
                    .across_edge(&xs, &nx)
                    .or_else(|| self.across_edge(&ys, &ny))
                    .or_else(|| self.across_edge(&zs, &nz))
                    .or_else(|| self.across_edge(&nx, &ny))
                    .or_else(|| self.across_edge(&nz, &ny));
                if let Some(w) = found {
                    return finish(w, stage);
                }
                (xs, ys, zs) = (nx, ny, nz);
                if (self.value(&xs), self.value(&ys), self.value(&zs)) != (a, b, c) {
                    return violation("values changed without an edge witness");
                }
            }
        }
        let w = self.block_manipulation(&xs, [i, j], &[a, b, c])?;
        finish(w, TripleStage::Block)
    }

    /// A manipulation among the profiles that agree with `base` except for
    /// reorderings of the contiguous `block` at the two voters in `coords`.
    ///
    /// When a value outside the block occurs, some adjacent swap inside the
    /// block changes the value to or from it, and that edge is returned.
    /// Otherwise the restriction is a two-voter function on the block and
    /// its first manipulation is lifted back.
    pub fn block_manipulation(&self, base: &Profile, coords: [usize; 2], block: &[Alt]) -> Result<ManipulationWitness> {
        self.check_profile(base)?;
        let k = block.len();
        if coords[0] == coords[1] || coords.iter().any(|&m| m >= base.n() || !base.voter(m).contiguous(block)) {
            return precondition(format!("block {block:?} must be contiguous at two distinct voters of {base}"));
        }
        let lo = coords.map(|m| block.iter().map(|&e| base.voter(m).position(e)).min().unwrap());
        let lift = |m: usize, s: &Ranking| {
            let mut order = base.voter(coords[m]).order().to_vec();
            for (t, &l) in s.order().iter().enumerate() {
                order[lo[m] + t] = block[l as usize - 1];
            }
            Ranking::from_slice_unchecked(&order)
        };
        let lift_profile = |p: &Profile| {
            let mut out = base.clone();
            out.set_voter(coords[0], lift(0, p.voter(0)));
            out.set_voter(coords[1], lift(1, p.voter(1)));
            out
        };
        let small: Vec<Ranking> = rankings(k).collect();
        let mut labels = Vec::with_capacity(small.len() * small.len());
        let mut outside = false;
        for s0 in &small {
            for s1 in &small {
                let p = Profile::from_vec_unchecked(vec![*s0, *s1]);
                let v = self.value(&lift_profile(&p));
                match block.iter().position(|&e| e == v) {
                    Some(l) => labels.push(l as Alt + 1),
                    None => {
                        outside = true;
                        labels.push(1);
                    }
                }
            }
        }
        if outside {
            for s0 in &small {
                for s1 in &small {
                    let u = lift_profile(&Profile::from_vec_unchecked(vec![*s0, *s1]));
                    for m in 0..2 {
                        for p in 0..k - 1 {
                            let moved = u.voter(coords[m]).swap_adjacent_positions(lo[m] + p);
                            if let Some(w) = self.across_edge(&u, &u.with_voter(coords[m], moved)) {
                                return Ok(w);
                            }
                        }
                    }
                }
            }
            return violation(format!("no edge leaves the block {block:?} around {base}"));
        }
        let restricted = TabularScf::new(k, 2, labels)?;
        let Some(w) = crate::manipulation::first_manipulation(&restricted) else {
            return violation(format!("the restriction to block {block:?} around {base} has no manipulation"));
        };
        let mut lifted =
            ManipulationWitness { x: lift_profile(&w.x), y: lift_profile(&w.y), voter: coords[w.voter], r: None };
        lifted.r = Some(lifted.span());
        if !lifted.verify(&self.f) {
            return violation(format!("lifted witness {lifted} does not verify"));
        }
        Ok(lifted)
    }

    /// Walks the path from `start` to `end` and extracts a manipulation at
    /// the first edge where a member is a manipulation point or the members
    /// take three values. In the second case the answer is the least
    /// manipulation point (by profile index) among the profiles that agree
    /// with the edge outside the voters it changes; when there is none the
    /// walk continues.
    pub fn simple(&self, start: &BoundaryEdge, end: &BoundaryEdge) -> Result<SimpleExtraction> {
        self.check_profile(&start.x)?;
        self.check_profile(&end.x)?;
        let (a, b) = (self.value(&start.x), self.value(&start.y));
        let (c, d) = (self.value(&end.x), self.value(&end.y));
        let distinct: BTreeSet<Alt> = [a, b, c, d].into();
        if distinct.len() != 4 || start.i == end.i {
            return precondition("the edges must be at different voters with four distinct values");
        }
        let path = profile_path_v1(a, b, c, d, start, end).map_err(|e| Error::Precondition(e.to_string()))?;
        let mt = self.manipulation_table();
        for (e, (u, v)) in path.edges().enumerate() {
            let members = [&u.lead, &u.partner, &v.lead, &v.partner];
            if let Some(p) = members.iter().find(|p| mt.is_manipulable(self.table.index_of(p))) {
                return self.simple_result(p, e, SimpleCase::EndpointManipulable);
            }
            let values: BTreeSet<Alt> = members.iter().map(|p| self.value(p)).collect();
            if values.len() < 3 {
                continue;
            }
            let coords: BTreeSet<usize> = members.iter().flat_map(|p| u.lead.differing_voters(p)).collect();
            if let Some(idx) = self.least_manipulable_in_slice(&u.lead, &coords) {
                return self.simple_result(&self.table.profile(idx), e, SimpleCase::ThreeValues);
            }
        }
        violation(format!("no edge of the path from {start} to {end} yields a manipulation"))
    }

    fn simple_result(&self, p: &Profile, edge: usize, case: SimpleCase) -> Result<SimpleExtraction> {
        match is_manipulation_point(&self.f, p)? {
            Some(witness) if witness.verify(&self.f) => Ok(SimpleExtraction { witness, edge, case }),
            _ => violation(format!("{p} was expected to be a manipulation point")),
        }
    }

    fn least_manipulable_in_slice(&self, base: &Profile, coords: &BTreeSet<usize>) -> Option<u64> {
        let mt = self.manipulation_table();
        let mut indices = vec![self.table.index_of(base)];
        for &m in coords {
            indices = indices
                .into_iter()
                .flat_map(|idx| (0..self.table.radix()).map(move |code| (idx, code)))
                .map(|(idx, code)| self.table.replace(idx, m, code))
                .collect();
        }
        indices.into_iter().filter(|&idx| mt.is_manipulable(idx)).min()
    }

    /// Walks the refined path between two refined boundary edges
    /// `start` (`y = [a:b]_i x`) and `end` (`y = [c:d]_j x`) and returns a
    /// manipulation of span at most 4.
    pub fn refined(&self, start: &BoundaryEdge, end: &BoundaryEdge) -> Result<RefinedExtraction> {
        self.check_profile(&start.x)?;
        self.check_profile(&end.x)?;
        let (a, b) = (self.value(&start.x), self.value(&start.y));
        let (c, d) = (self.value(&end.x), self.value(&end.y));
        let distinct: BTreeSet<Alt> = [a, b, c, d].into();
        if distinct.len() != 4 || start.i == end.i {
            return precondition("the edges must be at different voters with four distinct values");
        }
        let (i, j) = (start.i, end.i);
        let ab = AdjTransposition::new(a, b)?;
        let cd = AdjTransposition::new(c, d)?;
        if start.y != apply_at(&ab, i, &start.x) || start.x == start.y {
            return precondition(format!("{start} is not a change by {ab}"));
        }
        if end.y != apply_at(&cd, j, &end.x) || end.x == end.y {
            return precondition(format!("{end} is not a change by {cd}"));
        }
        let path = refined_profile_path(a, b, c, d, i, j, &start.into(), &end.into())?;
        let verts = path.vertices();
        let lead = *path.part(PartLabel::I).expect("marked");
        let tail = *path.part(PartLabel::Pi).expect("marked");
        let mut found = None;
        for e in lead.start..lead.end {
            let (v, w) = (&verts[e], &verts[e + 1]);
            if self.value(&w.lead) != a {
                found = Some((RefinedCase::Lead, e, self.resolve(&v.lead, &w.lead, &v.partner, i, b, a)?));
                break;
            }
            if self.value(&w.partner) != b {
                found = Some((RefinedCase::Lead, e, self.resolve(&v.partner, &w.partner, &v.lead, i, a, b)?));
                break;
            }
        }
        if found.is_none() {
            for e in (tail.start..tail.end).rev() {
                let (u, w) = (&verts[e], &verts[e + 1]);
                if self.value(&u.lead) != c {
                    found = Some((RefinedCase::Tail, e, self.resolve(&w.lead, &u.lead, &w.partner, j, d, c)?));
                    break;
                }
                if self.value(&u.partner) != d {
                    found = Some((RefinedCase::Tail, e, self.resolve(&w.partner, &u.partner, &w.lead, j, c, d)?));
                    break;
                }
            }
        }
        let (case, edge, (mut witness, resolution)) = match found {
            Some(f) => f,
            None => {
                let base = &verts[lead.end].lead;
                let w = self.block_manipulation(base, [i, j], &[a, b, c, d])?;
                (RefinedCase::Junction, lead.end, (w, Resolution::Block))
            }
        };
        witness.r = Some(witness.span());
        if witness.span() > 4 || !witness.verify(&self.f) {
            return violation(format!("witness {witness} does not verify as a 4-manipulation"));
        }
        let close = is_close(&witness.x, &path, &[a, b, c, d]);
        if !close {
            log::warn!("manipulation point {} is not close to the path from {start} to {end}", witness.x);
        }
        Ok(RefinedExtraction { witness, case, resolution, edge, close })
    }

    /// `stay` keeps its value `keep` along the part; `moved` is the next
    /// vertex after `stay`, and `other` (value `other_value`) is `stay`'s
    /// partner across voter `k0`.
    fn resolve(
        &self,
        stay: &Profile,
        moved: &Profile,
        other: &Profile,
        k0: usize,
        other_value: Alt,
        keep: Alt,
    ) -> Result<(ManipulationWitness, Resolution)> {
        if let Some(w) = self.across_edge(stay, moved) {
            return Ok((w, Resolution::Edge));
        }
        let Some((k, _)) = adjacent_step(stay, moved) else {
            return violation("consecutive path vertices differ by more than one adjacent transposition");
        };
        let e = self.value(moved);
        let t = self.three_manipulation(other, stay, moved, k0, k, other_value, keep, e)?;
        Ok((t.witness, Resolution::Triple(t.stage)))
    }

    /// Runs [`Extractor::simple`] on every pair and counts preimages.
    pub fn simple_census(&self, starts: &[BoundaryEdge], ends: &[BoundaryEdge]) -> Result<ExtractionCensus> {
        let (q, n) = (self.table.q() as u128, self.table.n() as u32);
        let bound = 2 * n as u128 * (factorial(q as usize) as u128).pow(n + 4);
        let tally = self.tally(starts, ends, 2 * q as usize, |s, e| {
            self.simple(s, e).map(|r| (r.witness, format!("{:?}", r.case), true))
        })?;
        Ok(tally.finish("2n (q!)^(n+4)", bound))
    }

    /// Runs [`Extractor::refined`] on every pair and counts preimages.
    pub fn refined_census(&self, starts: &[BoundaryEdge], ends: &[BoundaryEdge]) -> Result<ExtractionCensus> {
        let (q, n) = (self.table.q() as u128, self.table.n() as u32);
        let bound = 10_000 * n as u128 * q.pow(16) * (factorial(q as usize) as u128).pow(n);
        let tally = self.tally(starts, ends, 4, |s, e| {
            self.refined(s, e).map(|r| {
                let label = match r.resolution {
                    Resolution::Triple(stage) => format!("{:?}/triple/{stage:?}", r.case),
                    other => format!("{:?}/{other:?}", r.case),
                };
                (r.witness, label, r.close)
            })
        })?;
        Ok(tally.finish("10^4 n q^16 (q!)^n", bound))
    }

    fn tally<F>(&self, starts: &[BoundaryEdge], ends: &[BoundaryEdge], max_span: usize, run: F) -> Result<Tally>
    where
        F: Fn(&BoundaryEdge, &BoundaryEdge) -> Result<(ManipulationWitness, String, bool)> + Sync,
    {
        starts
            .par_iter()
            .map(|s| {
                let mut t = Tally::default();
                for e in ends {
                    let (w, label, close) = run(s, e)?;
                    t.inputs += 1;
                    if w.verify(&self.f) && w.span() <= max_span {
                        t.verified += 1;
                    }
                    if !close {
                        t.not_close += 1;
                    }
                    *t.cases.entry(label).or_default() += 1;
                    *t.preimages.entry(w.x).or_default() += 1;
                }
                Ok(t)
            })
            .try_reduce(Tally::default, |mut a, b| {
                a.merge(b);
                Ok(a)
            })
    }
}

#[derive(Default)]
struct Tally {
    inputs: u64,
    verified: u64,
    not_close: u64,
    cases: BTreeMap<String, u64>,
    preimages: HashMap<Profile, u64>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.inputs += other.inputs;
        self.verified += other.verified;
        self.not_close += other.not_close;
        for (k, v) in other.cases {
            *self.cases.entry(k).or_default() += v;
        }
        for (k, v) in other.preimages {
            *self.preimages.entry(k).or_default() += v;
        }
    }

    fn finish(self, formula: &'static str, bound: u128) -> ExtractionCensus {
        let max_preimage = self.preimages.values().copied().max().unwrap_or(0);
        ExtractionCensus {
            inputs: self.inputs,
            verified: self.verified,
            not_close: self.not_close,
            distinct_points: self.preimages.len() as u64,
            max_preimage,
            bound_formula: formula,
            bound,
            cases: self.cases,
            pass: self.verified == self.inputs && max_preimage as u128 <= bound,
        }
    }
}

/// Outcome of running an extraction over many inputs.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractionCensus {
    pub inputs: u64,
    /// Witnesses that re-verify with the expected span.
    pub verified: u64,
    /// Outputs outside the closeness relation (refined extraction only).
    pub not_close: u64,
    pub distinct_points: u64,
    /// Largest number of inputs mapped to one manipulation point.
    pub max_preimage: u64,
    pub bound_formula: &'static str,
    pub bound: u128,
    pub cases: BTreeMap<String, u64>,
    pub pass: bool,
}

/// The neighbour `mover` must swap with to approach the adjacent `pair`,
/// or `None` once it touches the pair.
fn shift_partner(r: &Ranking, mover: Alt, pair: &[Alt; 2]) -> Option<Alt> {
    let pm = r.position(mover);
    let (p0, p1) = (r.position(pair[0]), r.position(pair[1]));
    let (lo, hi) = (p0.min(p1), p0.max(p1));
    if pm + 1 < lo {
        Some(r.order()[pm + 1])
    } else if pm > hi + 1 {
        Some(r.order()[pm - 1])
    } else {
        None
    }
}

fn without(r: &Ranking, s: Alt) -> Vec<Alt> {
    r.order().iter().copied().filter(|&e| e != s).collect()
}

#[allow(clippy::too_many_arguments)]
fn triple_local(w: &Profile, x: &Profile, y: &Profile, z: &Profile, i: usize, j: usize, a: Alt, c: Alt) -> bool {
    let rest = (0..w.n()).filter(|&k| k != i && k != j).all(|k| w.voter(k) == y.voter(k));
    let wi = without(w.voter(i), c);
    let wj = without(w.voter(j), a);
    rest && (wi == without(x.voter(i), c) || wi == without(y.voter(i), c))
        && (wj == without(z.voter(j), a) || wj == without(y.voter(j), a))
}

/// `x` and `y` agree once some element is deleted from both and the
/// elements of `block` are made indistinguishable.
fn close_rankings(x: &Ranking, y: &Ranking, block: &[Alt]) -> bool {
    let masked = |r: &Ranking, s: Alt| -> Vec<Alt> {
        r.order().iter().filter(|&&e| e != s).map(|&e| if block.contains(&e) { 0 } else { e }).collect()
    };
    (1..=x.q() as Alt).any(|s| masked(x, s) == masked(y, s))
}

fn is_close(w: &Profile, path: &Path<PairVertex>, block: &[Alt]) -> bool {
    path.vertices().iter().flat_map(|v| [&v.lead, &v.partner]).any(|p| {
        let diff = w.differing_voters(p);
        diff.len() <= 2 && diff.iter().all(|&k| close_rankings(w.voter(k), p.voter(k), block))
    })
}

/// The 2-manipulation carried by a refined boundary edge.
pub fn extract_2manip_from_refined_boundary(f: &Scf, edge: &BoundaryEdge, cap: u128) -> Result<ManipulationWitness> {
    Extractor::new(f, cap)?.two_manipulation(edge)
}

/// See [`Extractor::three_manipulation`].
#[allow(clippy::too_many_arguments)]
pub fn extract_3manip_from_triple(
    f: &Scf,
    x: &Profile,
    y: &Profile,
    z: &Profile,
    i: usize,
    j: usize,
    abc: [Alt; 3],
    cap: u128,
) -> Result<TripleExtraction> {
    Extractor::new(f, cap)?.three_manipulation(x, y, z, i, j, abc[0], abc[1], abc[2])
}

/// See [`Extractor::simple`].
pub fn extract_manipulation_v1(
    f: &Scf,
    start: &BoundaryEdge,
    end: &BoundaryEdge,
    cap: u128,
) -> Result<SimpleExtraction> {
    Extractor::new(f, cap)?.simple(start, end)
}

/// See [`Extractor::refined`].
pub fn extract_manipulation_refined(
    f: &Scf,
    start: &BoundaryEdge,
    end: &BoundaryEdge,
    cap: u128,
) -> Result<RefinedExtraction> {
    Extractor::new(f, cap)?.refined(start, end)
}
