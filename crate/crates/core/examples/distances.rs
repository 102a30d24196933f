//! How far rules are from constants, dictators and two-valued rules, and
//! which of them treat alternatives symmetrically.

use gslab::scf::{distribution, is_neutral, Distances, Neutrality};
use gslab::{Mode, Scf};

fn main() -> gslab::Result<()> {
    let cap = 1 << 24;
    let rules = [
        Scf::borda_voter1_tiebreak(3, 3)?,
        Scf::plurality_leftmost(3, 3)?,
        Scf::dictator_top(3, 3, 2)?,
        Scf::constant(3, 3, 2)?,
        Scf::from_fn(3, 3, "veto-1", |x| if x.iter().any(|r| r.top() == 1) { 1 } else { x[0].top() })?,
    ];
    println!("{:<10} {:>8} {:>8} {:>8}  neutral", "rule", "const", "dict", "2-valued");
    for f in &rules {
        let d = Distances::of(f, cap)?;
        let neutral = match is_neutral(f, Mode::Exact, cap)? {
            Neutrality::Neutral => "yes".to_string(),
            Neutrality::Violated { relabel, profile } => format!("no, relabel {relabel} at {profile}"),
        };
        println!(
            "{:<10} {:>8} {:>8} {:>8}  {neutral}",
            f.name(),
            d.to_const.to_string(),
            d.to_dict.to_string(),
            d.to_two_valued.to_string()
        );
    }

    let mu = distribution(&rules[4], Mode::Exact, cap)?;
    println!("veto-1 winner distribution: {:?}", (1..=3).map(|a| mu.mu(a).to_string()).collect::<Vec<_>>());
    Ok(())
}
