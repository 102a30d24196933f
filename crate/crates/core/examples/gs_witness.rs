//! Every rule with three or more values that is not a dictatorship can be
//! manipulated. Find the manipulation for a few random rules.

use gslab::manipulation::{gs_witness, GsOutcome};
use gslab::{Scf, TabularScf};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> gslab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let f = Scf::tabular(TabularScf::random(&mut rng, 3, 3));
        match gs_witness(&f, 1 << 20)? {
            GsOutcome::Witness(w) => {
                let (before, after) = (f.evaluate(&w.x)?, f.evaluate(&w.y)?);
                println!("{w}: winner {before} -> {after}, verified {}", w.verify(&f));
            }
            GsOutcome::NotApplicable { values } => println!("takes {values} values, nothing to find"),
        }
    }
    // A dictatorship is never manipulable.
    let d = Scf::dictator_top(3, 3, 1)?;
    println!("{}: {:?}", d.name(), gs_witness(&d, 1 << 20)?.witness());
    Ok(())
}
