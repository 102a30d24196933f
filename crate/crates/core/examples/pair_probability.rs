//! Probability that a random one-voter change is a profitable manipulation.

use gslab::manipulation::{estimate_pair_probability, exact_pair_probability, PairFlavor};
use gslab::Scf;

fn main() -> gslab::Result<()> {
    let f = Scf::borda_voter1_tiebreak(5, 2)?;
    for flavor in [PairFlavor::ResetCoordinate, PairFlavor::AdjacentBlock4] {
        let exact = exact_pair_probability(&f, flavor, 1 << 30)?;
        let est = estimate_pair_probability(&f, flavor, 200_000, 99)?;
        println!(
            "{flavor:?}: exact {exact} = {:.5}, sampled {:.5} +- {:.5}",
            gslab::exact::to_f64(&exact),
            est.mean,
            est.stderr
        );
    }
    Ok(())
}
