//! The coordinate paths between two rankings, printed vertex by vertex.

use gslab::paths::{
    bubble_sort_path, order_preserving_path, refined_coord_path_block, refined_coord_path_generic, sim_canon_path,
};
use gslab::Ranking;

fn r(s: &str) -> Ranking {
    s.parse().expect("ranking")
}

fn main() -> gslab::Result<()> {
    let (x, y) = (r("1>2>3>4"), r("4>3>2>1"));
    println!("bubble sort, {} steps:\n{}", bubble_sort_path(&x, &y)?.len() - 1, bubble_sort_path(&x, &y)?.dump());

    // Keeps 1 above 2 the whole way.
    let (x, y) = (r("3>1>4>2"), r("1>2>4>3"));
    println!("keeping 1 above 2:\n{}", order_preserving_path(1, 2, &x, &y)?.dump());

    println!("bringing 1 and 2 together:\n{}", sim_canon_path(1, 2, &r("1>3>4>2"), &r("4>3>2>1"))?.dump());

    let (x, z) = (r("1>2>4>3"), r("3>4>1>2"));
    for (name, p) in [
        ("generic", refined_coord_path_generic(1, 2, 3, 4, &x, &z)?),
        ("block", refined_coord_path_block(1, 2, 3, 4, &x, &z)?),
    ] {
        let parts: Vec<String> = p.parts().iter().map(|s| format!("{} {}..{}", s.label, s.start, s.end)).collect();
        println!("{name}: {} vertices, parts {}", p.len(), parts.join(", "));
    }
    Ok(())
}
