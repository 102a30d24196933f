//! Custom rules: tabulate, save, reload and analyse.

use gslab::manipulation::census;
use gslab::{Mode, Scf, TabularScf};

fn main() -> gslab::Result<()> {
    // Lowest label among the voters' top choices.
    let f = Scf::from_fn(3, 3, "min-top", |x| x.iter().map(|r| r.top()).min().unwrap())?;
    let t = f.tabulate(1 << 20)?;
    let dir = std::env::temp_dir().join("gslab-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("min-top.json");
    t.store(&path, true)?;

    let back = TabularScf::load(&path)?;
    assert_eq!(back.table(), t.table());
    println!("stored {} entries at {}, values {:?}", back.len(), path.display(), back.values());

    let c = census(&Scf::tabular(back), Mode::Exact, 1 << 20)?;
    println!("manipulable at {} of {} profiles", c.counts.manip, c.total);
    Ok(())
}
