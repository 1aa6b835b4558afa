//! The chain complex engine on a hand-made complex: a hollow square,
//! which has one loop.
//!
//! ```bash
//! cargo run --example custom_complex
//! ```

use std::collections::BTreeMap;

use koszul::{ChainComplex, SparseMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let labels = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let basis = BTreeMap::from([
        (0, labels(&["a", "b", "c", "d"])),
        (1, labels(&["ab", "bc", "cd", "da"])),
    ]);
    let d1 = SparseMatrix::from_dense(&[
        vec![-1, 0, 0, 1],
        vec![1, -1, 0, 0],
        vec![0, 1, -1, 0],
        vec![0, 0, 1, -1],
    ]);
    let square = ChainComplex::new(basis, BTreeMap::from([(1, d1)]))?;
    println!("rank d_1 = {}", square.differential(1).rank());
    println!("homology {:?}", square.homology_dims()?);
    Ok(())
}
