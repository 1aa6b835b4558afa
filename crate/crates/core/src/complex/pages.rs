//! Page dimensions of the spectral sequence of a filtered complex.
//!
//! With `F_p` spanned by basis elements of level `<= p` and
//! `Z^r_p = F_p ∩ d^{-1}(F_{p-r})`,
//!
//! ```text
//! E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d(F_{p+r-1}) ∩ F_p)
//! ```
//!
//! and since the filtration is by coordinate subspaces every term is the
//! rank of a submatrix of `d` (rows above some level, columns at or below
//! another). Pages are bigraded by `(p, q)` with `q = degree - p`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{Degree, FilteredComplex};

/// Nonzero dimensions of one page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PageTable {
    pub r: usize,
    pub dims: BTreeMap<(i64, i64), usize>,
}

impl PageTable {
    pub fn get(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    /// Sum over `p` of `E_{p, n-p}`.
    pub fn total_degree(&self, n: i64) -> usize {
        self.dims
            .iter()
            .filter(|((p, q), _)| p + q == n)
            .map(|(_, &d)| d)
            .sum()
    }

    /// The row `q` when the page is exactly `C(n, p)` at `(p, q)` for
    /// `p = 1..=n` and zero elsewhere.
    pub fn binomial_row(&self, n: usize) -> Option<i64> {
        let q = self.dims.keys().next()?.1;
        let expected: BTreeMap<(i64, i64), usize> = (1..=n)
            .map(|p| ((p as i64, q), crate::topartition::binomial(n, p) as usize))
            .collect();
        (self.dims == expected).then_some(q)
    }

    /// A single one-dimensional entry, at filtration level `p`.
    pub fn is_point_at(&self, p: i64) -> bool {
        self.dims.len() == 1 && self.dims.iter().all(|(&(pp, _), &d)| pp == p && d == 1)
    }

    /// Rows `r,p,q,dim` in `(p, q)` order, without a header.
    pub fn csv_rows(&self) -> Vec<[String; 4]> {
        self.dims
            .iter()
            .map(|(&(p, q), &d)| {
                [
                    self.r.to_string(),
                    p.to_string(),
                    q.to_string(),
                    d.to_string(),
                ]
            })
            .collect()
    }
}

/// Rank cache over one filtered complex.
pub struct SpectralSequence<'a> {
    filtered: &'a FilteredComplex,
    ranks: Mutex<HashMap<(Degree, i64, i64), usize>>,
}

impl<'a> SpectralSequence<'a> {
    pub(super) fn new(filtered: &'a FilteredComplex) -> Self {
        SpectralSequence {
            filtered,
            ranks: Mutex::new(HashMap::new()),
        }
    }

    /// Rank of `d_n` restricted to rows of level `> above` and columns of level `<= upto`.
    fn restricted_rank(&self, n: Degree, above: i64, upto: i64) -> usize {
        let complex = self.filtered.complex();
        if complex.dim(n) == 0 || complex.dim(n - 1) == 0 {
            return 0;
        }
        let (lo, hi) = self.filtered.level_range().expect("nonempty complex");
        let above = above.clamp(lo as i64 - 1, hi as i64);
        let upto = upto.clamp(lo as i64 - 1, hi as i64);
        if let Some(&r) = self.ranks.lock().unwrap().get(&(n, above, upto)) {
            return r;
        }
        let rows: Vec<usize> = (0..complex.dim(n - 1))
            .filter(|&i| self.filtered.levels(n - 1)[i] as i64 > above)
            .collect();
        let cols: Vec<usize> = (0..complex.dim(n))
            .filter(|&j| self.filtered.levels(n)[j] as i64 <= upto)
            .collect();
        let rank = if rows.is_empty() || cols.is_empty() {
            0
        } else {
            let d = complex.differential_ref(n).expect("degree present");
            d.select(&rows, &cols).rank()
        };
        self.ranks.lock().unwrap().insert((n, above, upto), rank);
        rank
    }

    fn filtered_dim(&self, n: Degree, upto: i64) -> usize {
        self.filtered
            .levels(n)
            .iter()
            .filter(|&&l| l as i64 <= upto)
            .count()
    }

    /// `dim E^r_{p, n-p}`.
    pub fn entry(&self, r: usize, p: i64, n: Degree) -> usize {
        let r = r as i64;
        let z_r = self.filtered_dim(n, p) - self.restricted_rank(n, p - r, p);
        let z_prev = self.filtered_dim(n, p - 1) - self.restricted_rank(n, p - r, p - 1);
        let reach = p + r - 1;
        let boundary_at_p = self.restricted_rank(n + 1, i64::MIN / 2, reach)
            - self.restricted_rank(n + 1, p, reach);
        let boundary_below = self.restricted_rank(n + 1, i64::MIN / 2, reach)
            - self.restricted_rank(n + 1, p - 1, reach);
        z_r - (z_prev + boundary_at_p - boundary_below)
    }

    /// The page `E^r`, computed with independent rank jobs in parallel.
    pub fn page(&self, r: usize) -> PageTable {
        let Some((lo, hi)) = self.filtered.level_range() else {
            return PageTable {
                r,
                dims: BTreeMap::new(),
            };
        };
        let cells: Vec<(i64, Degree)> = self
            .filtered
            .complex()
            .degrees()
            .flat_map(|n| (lo as i64..=hi as i64).map(move |p| (p, n)))
            .collect();
        let dims = cells
            .into_par_iter()
            .map(|(p, n)| ((p, n as i64 - p), self.entry(r, p, n)))
            .filter(|&(_, d)| d > 0)
            .collect();
        PageTable { r, dims }
    }

    /// First page index from which the sequence is constant.
    pub fn stable_index(&self) -> usize {
        self.filtered
            .level_range()
            .map_or(0, |(lo, hi)| (hi - lo) as usize + 1)
    }

    pub fn e_infinity(&self) -> PageTable {
        self.page(self.stable_index())
    }
}
