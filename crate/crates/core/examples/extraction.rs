//! Turns boundary edges of Borda into concrete small manipulations.

use gslab::influence::{boundary_edges, Refinement};
use gslab::paths::Extractor;
use gslab::Scf;

fn main() -> gslab::Result<()> {
    let cap = 1 << 24;
    let f = Scf::borda_voter1_tiebreak(4, 3)?;
    let ex = Extractor::new(&f, cap)?;

    // An edge where the swapped pair is not the pair of winners yields a
    // manipulation of width 2 at one of its ends.
    let edges = boundary_edges(&f, 0, 1, 2, Refinement::AllZ, cap)?;
    if let Some(e) = edges.iter().find(|e| e.z.is_some_and(|z| !z.is(1, 2))) {
        println!("edge {e}\n  -> {}", ex.two_manipulation(e)?);
    }

    // Walk from a 1|2 edge at voter 1 to a 3|4 edge at voter 3.
    let starts = boundary_edges(&f, 0, 1, 2, Refinement::None, cap)?;
    let ends = boundary_edges(&f, 2, 3, 4, Refinement::None, cap)?;
    let s = ex.simple(&starts[0], &ends[0])?;
    println!("path from {} to {}\n  -> {} ({:?}, edge {})", starts[0], ends[0], s.witness, s.case, s.edge);

    let starts: Vec<_> = starts.into_iter().step_by(50).collect();
    let ends: Vec<_> = ends.into_iter().step_by(50).collect();
    let census = ex.simple_census(&starts, &ends)?;
    println!("{}", serde_json::to_string_pretty(&census).unwrap());
    Ok(())
}
