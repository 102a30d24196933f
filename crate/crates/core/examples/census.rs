//! Exact and sampled manipulation censuses of the built-in rules.
//!
//! cargo run --release --example census

use gslab::manipulation::census;
use gslab::{Mode, Scf};

fn main() -> gslab::Result<()> {
    let cap = 1 << 24;
    for f in [Scf::borda_voter1_tiebreak(4, 3)?, Scf::plurality_leftmost(4, 3)?] {
        let c = census(&f, Mode::Exact, cap)?;
        let eps = c.epsilon.as_ref().map(|e| gslab::exact::to_f64(&e.0)).unwrap_or(f64::NAN);
        println!(
            "{:<10} manip {:>5}/{}  r2 {:>5}  r3 {:>5}  r4 {:>5}  eps {eps:.4}  bounds ok {}",
            f.name(),
            c.counts.manip,
            c.total,
            c.counts.r2,
            c.counts.r3,
            c.counts.r4,
            c.bounds_ok()
        );
    }

    // Too many profiles to enumerate; sample instead.
    let f = Scf::borda_voter1_tiebreak(5, 8)?;
    let c = census(&f, Mode::Sampled { samples: 20_000, seed: 1 }, cap)?;
    println!("{}", c.to_json());
    Ok(())
}
