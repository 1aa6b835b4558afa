//! Mapping cones: acyclic exactly for quasi-isomorphisms.
//!
//! ```bash
//! cargo run --example mapping_cone
//! ```

use std::sync::Arc;

use koszul::{build_perm, build_simplex, perm_to_simplex, ChainMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let perm = build_perm(3)?;
    let simplex = build_simplex(3)?;

    let f = perm_to_simplex(&perm, &simplex)?;
    let cone = f.mapping_cone()?;
    println!(
        "blow-down cone: {} cells, homology {:?}",
        cone.total_dim(),
        cone.homology_dims()?
    );
    for label in cone.basis(1).iter().take(4) {
        println!("  {label}");
    }

    let zero = ChainMap::zero(perm.complex_arc(), simplex.complex_arc(), 0);
    println!("zero map cone homology {:?}", zero.cone_homology()?);

    let id = ChainMap::identity(Arc::clone(&perm.complex_arc()));
    println!("identity quasi-isomorphism: {}", id.is_quasi_isomorphism()?);
    Ok(())
}
