//! Counts how many canonical paths pass through each vertex and checks the
//! symmetry that keeps those counts small.

use gslab::paths::{
    inverse_image_census, verify_invariance, BlockRefinedMap, BubbleSortMap, GenericRefinedMap, GroupAction,
    OrderPreservingMap, PathMap,
};
use gslab::Mode;

fn report<M: PathMap>(map: &M, group: &GroupAction) -> gslab::Result<()> {
    let c = inverse_image_census(map, Some(group), u128::MAX)?;
    let inv = verify_invariance(map, group, Mode::Exact)?;
    println!(
        "{:<36} pairs {:>6}  longest {:>2}/{:<2}  max through a vertex {:>5}  at one position {:>5}  bound {:>6}  invariant {}",
        c.map,
        c.pairs,
        c.longest,
        c.max_len,
        c.max_total,
        c.max_position,
        c.counting_bound.map(|b| b.to_string()).unwrap_or_default(),
        inv.pass
    );
    Ok(())
}

fn main() -> gslab::Result<()> {
    let q = 4;
    report(&BubbleSortMap { q }, &GroupAction::all_relabelings(q))?;
    report(&OrderPreservingMap { q, a: 1, b: 2 }, &GroupAction::fixing(q, &[1, 2]))?;
    let alts = [1, 2, 3, 4];
    report(&GenericRefinedMap { q, alts }, &GroupAction::fixing(q, &alts))?;
    report(&BlockRefinedMap { q, alts }, &GroupAction::fixing(q, &alts))?;
    Ok(())
}
