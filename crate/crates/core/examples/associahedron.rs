//! For a path the fiber is an associahedron, and the map from the
//! permutohedron is the Tonks projection.
//!
//! ```bash
//! cargo run --example associahedron
//! ```

use koszul::fiber::fiber_element;
use koszul::{build_fiber, build_perm, MultiGraph, TOPartition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for k in 1..=5 {
        let fiber = build_fiber(&MultiGraph::path(k))?;
        println!("path with {k} edges: {:?}", fiber.dims_by_blocks());
    }

    let g = MultiGraph::path(3);
    for s in ["{1}>{3}>{2}", "{3}>{1}>{2}", "{2}>{1,3}", "{1,3}>{2}"] {
        let alpha: TOPartition = s.parse()?;
        let e = fiber_element(&g, &alpha)?;
        let verdict = if e.degenerate {
            "degenerate"
        } else {
            "basis tree"
        };
        println!(
            "{alpha:<14} -> {:<18} sign {:>2}  {verdict}",
            e.tree.label(),
            e.tree.sign().to_i64()
        );
    }

    let fiber = build_fiber(&g)?;
    let tonks = fiber.perm_to_fiber(&build_perm(3)?)?;
    println!(
        "chain map {}, surjective {}",
        tonks.verify_chain_map().passed(),
        tonks.is_surjective()
    );
    Ok(())
}
