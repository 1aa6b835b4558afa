//! The blow-down map from the permutohedron to the simplex: a surjective
//! quasi-isomorphism sending a cell to its least block when every other
//! block is a singleton.
//!
//! ```bash
//! cargo run --example blow_down -- 4
//! ```

use koszul::{build_perm, build_simplex, perm_to_simplex};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let perm = build_perm(n)?;
    let simplex = build_simplex(n)?;
    let f = perm_to_simplex(&perm, &simplex)?;

    for r in perm.complex().degrees() {
        let m = f.matrix(r);
        println!(
            "degree {r}: {} of {} cells map to a face",
            m.iter()
                .map(|(_, j, _)| j)
                .collect::<std::collections::BTreeSet<_>>()
                .len(),
            perm.cells(r).len()
        );
        for (i, j, v) in m.iter().take(3) {
            println!("  {} -> {v} * {}", perm.cells(r)[j], simplex.faces(r)[i]);
        }
    }
    println!("chain map:        {}", f.verify_chain_map().passed());
    println!("surjective:       {}", f.is_surjective());
    println!(
        "filtered:         {}",
        f.preserves_filtration(perm.filtered(), simplex.filtered())
    );
    println!("quasi-isomorphic: {}", f.is_quasi_isomorphism()?);
    Ok(())
}
