//! Exact expected cover times of the biased walk on tiny graphs.

use covertime_lab::multigraph::families;
use covertime_lab::oracle::{exact_edge_process, exact_edge_process_rational, urn_law_exact};

fn main() -> covertime_lab::Result<()> {
    let k4 = families::complete(4);
    let exact = exact_edge_process_rational(&k4, 0)?;
    println!("K4 expected steps to discover t edges:");
    for (t, v) in exact.edge_cover.iter().enumerate() {
        println!("  t = {t}: {v}");
    }

    for (name, g) in [("triple edge", families::triple_edge()), ("petersen", families::petersen()), ("6-cycle", families::cycle(6))] {
        let e = exact_edge_process(&g, 0)?;
        println!(
            "{name:<12} E[C_E] = {:.6}  E[C_V] = {:.6}",
            e.edge_cover.last().unwrap(),
            e.vertex_cover.last().unwrap()
        );
    }

    println!("urn law over compositions, 3 bridges and 2 extra vertices:");
    for (sizes, p) in urn_law_exact(3, 2) {
        println!("  {sizes:?}: {p}");
    }
    Ok(())
}
