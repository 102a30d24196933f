//! Canonical paths between single rankings.

use super::path::{PartLabel, Path};
use crate::error::{domain, Result};
use crate::ranking::{bubble_into, rankings, Alt, Ranking};

fn check_alts(q: usize, alts: &[Alt]) -> Result<()> {
    for (k, &a) in alts.iter().enumerate() {
        if a == 0 || a as usize > q {
            return domain(format!("alternative {a} outside 1..={q}"));
        }
        if alts[..k].contains(&a) {
            return domain(format!("alternatives {alts:?} are not distinct"));
        }
    }
    Ok(())
}

fn check_same_q(x: &Ranking, z: &Ranking) -> Result<()> {
    if x.q() != z.q() {
        return domain(format!("rankings over {} and {} alternatives", x.q(), z.q()));
    }
    Ok(())
}

/// Bubbles `y(1)` to the top, then `y(2)` to the second position, and so on.
/// At most `q(q-1)/2` adjacent transpositions.
pub fn bubble_sort_path(x: &Ranking, y: &Ranking) -> Result<Path<Ranking>> {
    check_same_q(x, y)?;
    let mut path = Path::single(*x);
    for (k, &a) in y.order().iter().enumerate() {
        bubble_into(&mut path, a, k);
    }
    Ok(path)
}

/// Path from `x` to `y` that never exchanges `a` and `b`, so their relative
/// order (which must agree in `x` and `y`) holds at every vertex.
///
/// The other alternatives are bubbled upwards to their places in `y`, which
/// leaves `a` and `b` at the bottom; then the upper of the two is bubbled to
/// its place, then the lower.
pub fn order_preserving_path(a: Alt, b: Alt, x: &Ranking, y: &Ranking) -> Result<Path<Ranking>> {
    check_same_q(x, y)?;
    check_alts(x.q(), &[a, b])?;
    if x.prefers(a, b) != y.prefers(a, b) {
        return domain(format!("{a} and {b} are ordered differently in {x} and {y}"));
    }
    Ok(order_preserving_unchecked(a, b, x, y))
}

pub(crate) fn order_preserving_unchecked(a: Alt, b: Alt, x: &Ranking, y: &Ranking) -> Path<Ranking> {
    let mut path = Path::single(*x);
    for (k, &e) in y.order().iter().filter(|&&e| e != a && e != b).enumerate() {
        bubble_into(&mut path, e, k);
    }
    let (hi, lo) = if y.prefers(a, b) { (a, b) } else { (b, a) };
    bubble_into(&mut path, hi, y.position(hi));
    bubble_into(&mut path, lo, y.position(lo));
    debug_assert_eq!(path.last(), y);
    path
}

/// The three-vertex path `x, y, z` where `y` is `z` with `a` and `b`
/// exchanged when needed to put them in the same order as in `x`. The first
/// step keeps the order of `a`, `b`; the second changes nothing else. Either
/// step may be degenerate.
pub fn sim_canon_path(a: Alt, b: Alt, x: &Ranking, z: &Ranking) -> Result<Path<Ranking>> {
    check_same_q(x, z)?;
    check_alts(x.q(), &[a, b])?;
    Ok(Path::from_vertices(vec![*x, sim_canon_middle(a, b, x, z), *z]))
}

pub(crate) fn sim_canon_middle(a: Alt, b: Alt, x: &Ranking, z: &Ranking) -> Ranking {
    if x.prefers(a, b) == z.prefers(a, b) {
        *z
    } else {
        z.swap_alternatives(a, b)
    }
}

/// Path from `x` to `z` made of two parts.
///
/// `I` exchanges `c` and `d` when their order differs from `z`: `c` is
/// bubbled to the place of `d`, then `d` back to where `c` started. It never
/// applies `[a:b]`. `Π` is the order-preserving path for `(c, d)` and never
/// applies `[c:d]`.
pub fn refined_coord_path_generic(a: Alt, b: Alt, c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> Result<Path<Ranking>> {
    check_same_q(x, z)?;
    check_alts(x.q(), &[a, b, c, d])?;
    Ok(canon4(c, d, x, z))
}

fn canon4(c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> Path<Ranking> {
    let mut path = Path::single(*x);
    if x.prefers(c, d) != z.prefers(c, d) {
        let (pc, pd) = (x.position(c), x.position(d));
        bubble_into(&mut path, c, pd);
        bubble_into(&mut path, d, pc);
    }
    let junction = path.len();
    let pi = order_preserving_unchecked(c, d, path.last(), z);
    path.extend_with(&pi);
    let end = path.len();
    path.mark(PartLabel::I, 0, junction);
    path.mark(PartLabel::Pi, junction, end);
    path
}

/// Path from `x` (with `a`, `b` adjacent) to `z` made of three parts.
///
/// `I` bubbles `c` until it touches the `ab` block, then `d` until it touches
/// the block; neither `a` nor `b` moves. `Δ` is one edge reordering the now
/// contiguous block `a, b, c, d` into its order in `z` (no edge when it
/// already matches). `Π` is the order-preserving path for `(c, d)`.
pub fn refined_coord_path_block(a: Alt, b: Alt, c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> Result<Path<Ranking>> {
    check_same_q(x, z)?;
    check_alts(x.q(), &[a, b, c, d])?;
    if !x.adjacent(a, b) {
        return domain(format!("{a} and {b} are not adjacent in {x}"));
    }
    Ok(canon3(a, b, c, d, x, z))
}

/// Moves `e` one step at a time until it is adjacent to the contiguous
/// `block`, which lies entirely above or below it.
fn bubble_to_block(path: &mut Path<Ranking>, e: Alt, block: &[Alt]) {
    let cur = *path.last();
    let ps: Vec<usize> = block.iter().map(|&s| cur.position(s)).collect();
    let (lo, hi) = (*ps.iter().min().unwrap(), *ps.iter().max().unwrap());
    let p = cur.position(e);
    if p < lo {
        bubble_into(path, e, lo - 1);
    } else {
        bubble_into(path, e, hi + 1);
    }
}

fn canon3(a: Alt, b: Alt, c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> Path<Ranking> {
    let mut path = Path::single(*x);
    bubble_to_block(&mut path, c, &[a, b]);
    bubble_to_block(&mut path, d, &[a, b, c]);
    let i_end = path.len();
    let v = *path.last();
    let block = [a, b, c, d];
    let start = block.iter().map(|&s| v.position(s)).min().unwrap();
    let mut in_z: Vec<Alt> = z.order().iter().copied().filter(|e| block.contains(e)).collect();
    let mut order = v.order().to_vec();
    order[start..start + 4].swap_with_slice(&mut in_z);
    let w = Ranking::from_slice_unchecked(&order);
    if w != v {
        path.push(w);
    }
    let d_end = path.len();
    let pi = order_preserving_unchecked(c, d, &w, z);
    path.extend_with(&pi);
    let end = path.len();
    path.mark(PartLabel::I, 0, i_end);
    path.mark(PartLabel::Delta, i_end, d_end);
    path.mark(PartLabel::Pi, d_end, end);
    path
}

/// Pieces of the block path for `(a, b, c, d)` from `x` to `z`, used by the
/// profile-level construction.
pub(crate) fn canon3_parts(a: Alt, b: Alt, c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> [Vec<Ranking>; 3] {
    split3(&canon3(a, b, c, d, x, z))
}

pub(crate) fn canon4_parts(c: Alt, d: Alt, x: &Ranking, z: &Ranking) -> [Vec<Ranking>; 2] {
    let p = canon4(c, d, x, z);
    let v = |l| p.part_vertices(l).unwrap().to_vec();
    [v(PartLabel::I), v(PartLabel::Pi)]
}

fn split3(p: &Path<Ranking>) -> [Vec<Ranking>; 3] {
    let v = |l| p.part_vertices(l).unwrap().to_vec();
    [v(PartLabel::I), v(PartLabel::Delta), v(PartLabel::Pi)]
}

/// All rankings with `a` above `b`.
pub fn rankings_with_above(q: usize, a: Alt, b: Alt) -> Vec<Ranking> {
    rankings(q).filter(|r| r.prefers(a, b)).collect()
}

/// All rankings with `a` and `b` adjacent.
pub fn rankings_with_adjacent(q: usize, a: Alt, b: Alt) -> Vec<Ranking> {
    rankings(q).filter(|r| r.adjacent(a, b)).collect()
}
