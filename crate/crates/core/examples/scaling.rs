//! Plurality with three alternatives: how the share of manipulable and
//! near-tied profiles changes with the number of voters.

use gslab::manipulation::plurality_scaling_experiment;

fn main() -> gslab::Result<()> {
    let ns = [5, 11, 21, 41, 81];
    println!("{:>4} {:>10} {:>10}", "n", "manip", "near tie");
    for row in plurality_scaling_experiment(3, &ns, 50_000, 7)? {
        println!(
            "{:>4} {:>10.4} {:>10.4}   (+- {:.4})",
            row.n,
            row.manip.mean,
            row.near_tie.mean,
            2.0 * row.manip.stderr
        );
    }
    Ok(())
}
