//! Fiber complex of a graph contraction and its Koszulity check.
//!
//! With no argument this uses a triangle with one doubled edge, a graph
//! with two independent loops. Pass an edge-list file to use another.
//!
//! ```bash
//! cargo run --example fiber_koszul -- crates/core/corpus/cycle4.edges
//! ```

use koszul::{build_fiber, MultiGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => MultiGraph::read(path.as_ref())?,
        None => MultiGraph::parse("0 1\n1 2\n2 0\n0 1\n")?,
    };
    let fiber = build_fiber(&g)?;
    println!(
        "{} edges, fiber dims by block count {:?}",
        g.edge_count(),
        fiber.dims_by_blocks()
    );
    for t in fiber.trees(-2).iter().take(4) {
        println!("  e.g. {t}");
    }

    let report = fiber.koszul_check()?;
    println!("homology: {:?}", report.homology);
    for page in &report.pages {
        println!("E^{}: {:?}", page.r, page.dims);
    }
    println!("E^1 binomial row: {:?}", report.e1_row);
    println!("koszul: {}", report.passed());
    Ok(())
}
