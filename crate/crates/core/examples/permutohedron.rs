//! Build the permutohedron complex and compute its homology.
//!
//! ```bash
//! cargo run --example permutohedron -- 5
//! ```

use koszul::{build_perm, TOPartition};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;

    let cell: TOPartition = "{1,3}>{2,4}".parse()?;
    println!("d({cell}) =");
    for term in cell.differential_terms() {
        println!("  {:>2} {}", term.sign.to_i64(), term.partition);
    }

    let perm = build_perm(n)?;
    let c = perm.complex();
    println!("\nC_*(P_{n}): {} cells", c.total_dim());
    for r in c.degrees() {
        println!(
            "  degree {r}: {:>5} cells, e.g. {}",
            c.dim(r),
            perm.cells(r)[0]
        );
    }
    println!("d^2 = 0: {}", c.verify_d_squared().passed());
    println!("homology: {:?}", c.homology_dims()?);
    Ok(())
}
