//! Canonical paths between boundary edges, over pairs of profiles.

use std::fmt;

use serde::Serialize;

use super::coordinate::{canon3_parts, canon4_parts, sim_canon_middle};
use super::path::{PartLabel, Path};
use crate::error::{domain, Result};
use crate::influence::BoundaryEdge;
use crate::ranking::{AdjTransposition, Alt, Profile, Ranking};

/// A vertex of a path over pairs of profiles.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PairVertex {
    pub lead: Profile,
    pub partner: Profile,
}

impl PairVertex {
    pub fn new(lead: Profile, partner: Profile) -> Self {
        PairVertex { lead, partner }
    }
}

impl From<&BoundaryEdge> for PairVertex {
    fn from(e: &BoundaryEdge) -> Self {
        PairVertex { lead: e.x.clone(), partner: e.y.clone() }
    }
}

impl fmt::Display for PairVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; {}", self.lead, self.partner)
    }
}

impl Serialize for PairVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn distinct(alts: [Alt; 4], q: usize) -> Result<()> {
    for k in 0..4 {
        if alts[k] == 0 || alts[k] as usize > q || alts[..k].contains(&alts[k]) {
            return domain(format!("alternatives {alts:?} must be distinct values in 1..={q}"));
        }
    }
    Ok(())
}

/// Voter where the two profiles differ, when they differ in exactly one.
fn single_difference(x: &Profile, y: &Profile) -> Option<usize> {
    match x.differing_voters(y).as_slice() {
        [i] => Some(*i),
        _ => None,
    }
}

/// The path of length `2n - 3` from `start` (an edge at voter `i`) to `end`
/// (an edge at voter `j != i`).
///
/// Every other voter `k`, in increasing order, first moves to the ranking
/// obtained from `end`'s ranking by exchanging `a` and `b` if needed to keep
/// their order from `start` (so `a`, `b` never change order). The middle edge
/// switches voters `i` and `j` to their values in `end`. The other voters
/// then finish their moves in decreasing order; these last moves only
/// exchange `a` and `b`, so `c`, `d` keep their order. Degenerate steps are
/// kept so that the edge count is always `2n - 3`.
pub fn profile_path_v1(
    a: Alt,
    b: Alt,
    c: Alt,
    d: Alt,
    start: &BoundaryEdge,
    end: &BoundaryEdge,
) -> Result<Path<PairVertex>> {
    let (q, n) = (start.x.q(), start.x.n());
    distinct([a, b, c, d], q)?;
    if end.x.q() != q || end.x.n() != n || n < 2 {
        return domain("start and end must share q and n >= 2");
    }
    for e in [start, end] {
        if BoundaryEdge::new(e.x.clone(), e.y.clone(), e.i, None).is_err() {
            return domain(format!("{e} is not an edge at voter {}", e.i + 1));
        }
    }
    let (i, j) = (start.i, end.i);
    if i == j {
        return domain("the two edges must be at different voters");
    }
    let free: Vec<usize> = (0..n).filter(|&k| k != i && k != j).collect();
    let mut lead = start.x.clone();
    let mut partner = start.y.clone();
    let mut vertices = vec![PairVertex::new(lead.clone(), partner.clone())];
    for &k in &free {
        let y = sim_canon_middle(a, b, start.x.voter(k), end.x.voter(k));
        lead.set_voter(k, y);
        partner.set_voter(k, y);
        vertices.push(PairVertex::new(lead.clone(), partner.clone()));
    }
    let first_half = vertices.len() - 1;
    let mut lead = end.x.clone();
    let mut partner = end.y.clone();
    for &k in &free {
        let y = *vertices.last().unwrap().lead.voter(k);
        lead.set_voter(k, y);
        partner.set_voter(k, y);
    }
    vertices.push(PairVertex::new(lead.clone(), partner.clone()));
    for &k in free.iter().rev() {
        lead.set_voter(k, *end.x.voter(k));
        partner.set_voter(k, *end.y.voter(k));
        vertices.push(PairVertex::new(lead.clone(), partner.clone()));
    }
    let mut path = Path::from_vertices(vertices);
    let last = path.len();
    path.mark(PartLabel::I, 0, first_half);
    path.mark(PartLabel::Delta, first_half, first_half + 1);
    path.mark(PartLabel::Pi, first_half + 1, last);
    Ok(path)
}

/// Declared maximum length `2n(q² + 2)` of [`refined_profile_path`].
pub fn refined_path_bound(n: usize, q: usize) -> usize {
    2 * n * (q * q + 2)
}

/// `v` with `t` applied at voter `k`.
pub(crate) fn apply_at(t: &AdjTransposition, k: usize, v: &Profile) -> Profile {
    v.with_voter(k, t.apply(v.voter(k)))
}

/// The refined path from `start = (x, [a:b]_i x)` to `end = (z, [c:d]_j z)`,
/// with parts `I`, `Δ`, `Π`.
///
/// In `I` every vertex is `(v, [a:b]_i v)`; voters are updated one at a
/// time in increasing order, each by adjacent transpositions that keep `a`
/// above or below `b` as in `x` (and leave the ranks of `a`, `b` alone at
/// voter `i`). `Δ` is one edge that reorders the contiguous block `a, b, c, d`
/// at voters `i` and `j` and switches the partner. In `Π` every vertex is
/// `(w, [c:d]_j w)`, with the mirror-image discipline for `c`, `d`.
#[allow(clippy::too_many_arguments)]
pub fn refined_profile_path(
    a: Alt,
    b: Alt,
    c: Alt,
    d: Alt,
    i: usize,
    j: usize,
    start: &PairVertex,
    end: &PairVertex,
) -> Result<Path<PairVertex>> {
    let (q, n) = (start.lead.q(), start.lead.n());
    distinct([a, b, c, d], q)?;
    if i == j || i >= n || j >= n || end.lead.q() != q || end.lead.n() != n {
        return domain(format!("invalid voters i={i}, j={j} for n={n}"));
    }
    let ab = AdjTransposition::new(a, b)?;
    let cd = AdjTransposition::new(c, d)?;
    if start.partner != apply_at(&ab, i, &start.lead) || start.partner == start.lead {
        return domain(format!("start is not of the form (x, {ab} at voter {} of x) with a change", i + 1));
    }
    if end.partner != apply_at(&cd, j, &end.lead) || end.partner == end.lead {
        return domain(format!("end is not of the form (z, {cd} at voter {} of z) with a change", j + 1));
    }
    let (x, z) = (&start.lead, &end.lead);
    let mut lead_parts: Vec<Vec<Ranking>> = Vec::with_capacity(n);
    let mut delta_parts: Vec<Option<Ranking>> = Vec::with_capacity(n);
    let mut tail_parts: Vec<Vec<Ranking>> = Vec::with_capacity(n);
    for k in 0..n {
        if k == i {
            let [p1, p2, p3] = canon3_parts(a, b, c, d, x.voter(k), z.voter(k));
            lead_parts.push(p1);
            delta_parts.push(Some(*p2.last().unwrap()));
            tail_parts.push(p3);
        } else if k == j {
            let [p1, p2, p3] = canon3_parts(c, d, a, b, z.voter(k), x.voter(k));
            lead_parts.push(p3.into_iter().rev().collect());
            delta_parts.push(Some(p2[0]));
            tail_parts.push(p1.into_iter().rev().collect());
        } else {
            let [p1, p2] = canon4_parts(c, d, x.voter(k), z.voter(k));
            lead_parts.push(p1);
            delta_parts.push(None);
            tail_parts.push(p2);
        }
    }
    let mut cur = x.clone();
    let mut vertices = vec![start.clone()];
    for (k, part) in lead_parts.iter().enumerate() {
        for r in &part[1..] {
            cur.set_voter(k, *r);
            vertices.push(PairVertex::new(cur.clone(), apply_at(&ab, i, &cur)));
        }
    }
    let junction = vertices.len() - 1;
    for (k, r) in delta_parts.iter().enumerate() {
        if let Some(r) = r {
            cur.set_voter(k, *r);
        }
    }
    vertices.push(PairVertex::new(cur.clone(), apply_at(&cd, j, &cur)));
    for (k, part) in tail_parts.iter().enumerate() {
        for r in &part[1..] {
            cur.set_voter(k, *r);
            vertices.push(PairVertex::new(cur.clone(), apply_at(&cd, j, &cur)));
        }
    }
    debug_assert_eq!(vertices.last(), Some(end));
    let mut path = Path::from_vertices(vertices);
    let last = path.len();
    path.mark(PartLabel::I, 0, junction);
    path.mark(PartLabel::Delta, junction, junction + 1);
    path.mark(PartLabel::Pi, junction + 1, last);
    if path.len() > refined_path_bound(n, q) {
        log::warn!("refined path of length {} exceeds 2n(q^2+2) = {}", path.len(), refined_path_bound(n, q));
    }
    Ok(path)
}

/// Whether `v` and `w` differ at exactly one voter, by one adjacent
/// transposition there.
pub(crate) fn adjacent_step(v: &Profile, w: &Profile) -> Option<(usize, AdjTransposition)> {
    let k = single_difference(v, w)?;
    crate::ranking::adjacent_swap_between(v.voter(k), w.voter(k)).map(|t| (k, t))
}
