//! Export a filtered complex to JSON and read it back.
//!
//! ```bash
//! cargo run --example json_export -- /tmp/p3
//! ```

use std::path::PathBuf;

use koszul::build_perm;
use koszul::cli::{load_filtered, write_atomic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "target/json_export".into()),
    );
    std::fs::create_dir_all(&dir)?;

    let perm = build_perm(3)?;
    let complex = perm.complex().to_json();
    let levels = perm.filtered().levels_json();
    write_atomic(&dir.join("P_3.complex.json"), complex.as_bytes())?;
    write_atomic(&dir.join("P_3.filtration.json"), levels.as_bytes())?;
    println!("wrote {}", dir.display());

    let back = load_filtered(
        &std::fs::read_to_string(dir.join("P_3.complex.json"))?,
        &std::fs::read_to_string(dir.join("P_3.filtration.json"))?,
    )?;
    println!("round trip equal: {}", &back == perm.filtered());
    println!("{}", &complex[..complex.len().min(240)]);
    Ok(())
}
