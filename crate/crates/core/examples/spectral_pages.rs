//! Pages of the width filtration on the permutohedron complex.
//!
//! `E^0` splits by the least block, `E^1` is a simplex (binomial row) and
//! `E^2` is a single class.
//!
//! ```bash
//! cargo run --example spectral_pages -- 4
//! ```

use koszul::build_perm;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map_or(Ok(4), |s| s.parse())?;
    let perm = build_perm(n)?;
    let ss = perm.filtered().spectral_sequence();
    for r in 0..=ss.stable_index() {
        let page = ss.page(r);
        println!("E^{r}  (total {})", page.total());
        for p in 1..=n as i64 {
            let row: Vec<String> = page
                .dims
                .iter()
                .filter(|((pp, _), _)| *pp == p)
                .map(|((_, q), d)| format!("q={q}:{d}"))
                .collect();
            if !row.is_empty() {
                println!("  p={p}  {}", row.join("  "));
            }
        }
    }
    Ok(())
}
