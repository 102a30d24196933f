//! Influences of each voter and the boundary edges behind them.

use gslab::influence::{boundary_edges, check_inequalities, InfluenceTable, Refinement};
use gslab::Scf;

fn main() -> gslab::Result<()> {
    let f = Scf::borda_voter1_tiebreak(4, 3)?;
    let t = f.tabulate(1 << 24)?;
    let inf = InfluenceTable::build(&t);
    for i in 0..f.n() {
        let per_alt: Vec<String> = (1..=4).map(|a| format!("{:.4}", gslab::exact::to_f64(&inf.single(i, a)))).collect();
        println!(
            "voter {}: total {:.4}  by winner [{}]",
            i + 1,
            gslab::exact::to_f64(&inf.total(i)),
            per_alt.join(" ")
        );
    }

    let report = check_inequalities(&f, 1 << 24)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    // Swaps of one adjacent pair by voter 2 that move the winner from 1 to 2.
    let edges = boundary_edges(&f, 1, 1, 2, Refinement::AllZ, 1 << 24)?;
    println!("{} refined edges from 1 to 2 at voter 2, e.g.", edges.len());
    for e in edges.iter().take(3) {
        println!("  {e}");
    }
    Ok(())
}
