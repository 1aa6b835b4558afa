//! Finite free chain complexes over the rationals.
//!
//! A complex knows nothing about where its basis came from: basis elements
//! are opaque string labels, grouped by homological degree, and `d_r` maps
//! degree `r` to degree `r - 1`.

mod io;
mod map;
mod pages;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{LinalgError, Rational, SparseMatrix};

pub use io::{ComplexJson, FiltrationJson, IoError};
pub use map::{ChainMap, ChainMapFailure, ChainMapReport};
pub use pages::{PageTable, SpectralSequence};

pub type Degree = i32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("d_{degree} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        degree: Degree,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("differential given in degree {0}, which has no basis")]
    StrayDifferential(Degree),
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("d^2 != 0: {0}")]
    NotAComplex(Box<DSquaredFailure>),
    #[error("basis label {0:?} has no filtration level")]
    MissingLevel(String),
    #[error("filtration level given for unknown label {0:?}")]
    UnknownLabel(String),
    #[error("differential raises filtration: {source_label:?} (level {source_level}) -> {target_label:?} (level {target_level})")]
    FiltrationRaised {
        source_label: String,
        source_level: u32,
        target_label: String,
        target_level: u32,
    },
    #[error("not a chain map: {0}")]
    NotAChainMap(Box<ChainMapFailure>),
    #[error("map matrix in degree {degree} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShapeMismatch {
        degree: Degree,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// First nonzero entry of some `d_{r} d_{r+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredFailure {
    /// Source degree of the composite.
    pub degree: Degree,
    pub source_label: String,
    pub target_label: String,
    pub value: Rational,
}

impl fmt::Display for DSquaredFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d(d({})) has coefficient {} on {} (source degree {})",
            self.source_label, self.value, self.target_label, self.degree
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSquaredReport {
    pub failure: Option<DSquaredFailure>,
}

impl DSquaredReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Nonzero homology dimensions by degree.
pub type Homology = BTreeMap<Degree, usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    basis: BTreeMap<Degree, Vec<String>>,
    differentials: BTreeMap<Degree, SparseMatrix>,
    index: HashMap<String, (Degree, usize)>,
}

impl ChainComplex {
    /// Degrees with an empty basis are dropped. Missing differentials are zero.
    pub fn new(
        basis: BTreeMap<Degree, Vec<String>>,
        differentials: BTreeMap<Degree, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let basis: BTreeMap<Degree, Vec<String>> =
            basis.into_iter().filter(|(_, b)| !b.is_empty()).collect();
        let mut index = HashMap::new();
        for (&r, labels) in &basis {
            for (i, label) in labels.iter().enumerate() {
                if index.insert(label.clone(), (r, i)).is_some() {
                    return Err(ComplexError::DuplicateLabel(label.clone()));
                }
            }
        }
        let dim = |r: Degree| basis.get(&r).map_or(0, Vec::len);
        let mut stored = BTreeMap::new();
        for (r, m) in differentials {
            if !basis.contains_key(&r) {
                if m.rows() == 0 || m.is_zero() {
                    continue;
                }
                return Err(ComplexError::StrayDifferential(r));
            }
            if m.rows() != dim(r - 1) || m.cols() != dim(r) {
                return Err(ComplexError::ShapeMismatch {
                    degree: r,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: dim(r - 1),
                    expected_cols: dim(r),
                });
            }
            stored.insert(r, m);
        }
        for &r in basis.keys() {
            stored
                .entry(r)
                .or_insert_with(|| SparseMatrix::zeros(dim(r - 1), dim(r)));
        }
        Ok(ChainComplex {
            basis,
            differentials: stored,
            index,
        })
    }

    /// Nonempty degrees in increasing order.
    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.basis.keys().copied()
    }

    pub fn basis(&self, r: Degree) -> &[String] {
        self.basis.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, r: Degree) -> usize {
        self.basis(r).len()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.values().map(Vec::len).sum()
    }

    /// `d_r : C_r -> C_{r-1}`, shaped correctly even where zero.
    pub fn differential(&self, r: Degree) -> SparseMatrix {
        self.differentials
            .get(&r)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(r - 1), self.dim(r)))
    }

    pub(crate) fn differential_ref(&self, r: Degree) -> Option<&SparseMatrix> {
        self.differentials.get(&r)
    }

    pub fn index_of(&self, label: &str) -> Option<(Degree, usize)> {
        self.index.get(label).copied()
    }

    pub fn min_degree(&self) -> Option<Degree> {
        self.basis.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<Degree> {
        self.basis.keys().next_back().copied()
    }

    /// Copy with `d_r` replaced; used for mutation tests.
    pub fn with_differential(
        &self,
        r: Degree,
        m: SparseMatrix,
    ) -> Result<ChainComplex, ComplexError> {
        let mut diffs = self.differentials.clone();
        diffs.insert(r, m);
        ChainComplex::new(self.basis.clone(), diffs)
    }

    /// Checks `d_r d_{r+1} = 0` in every degree.
    pub fn verify_d_squared(&self) -> DSquaredReport {
        for (&r, upper) in self.differentials.iter() {
            let Some(lower) = self.differentials.get(&(r - 1)) else {
                continue;
            };
            if upper.is_zero() || lower.is_zero() {
                continue;
            }
            let composite = lower
                .multiply(upper)
                .expect("shapes validated at construction");
            let first = composite.iter().next().map(|(i, j, v)| (i, j, v.clone()));
            if let Some((row, col, value)) = first {
                return DSquaredReport {
                    failure: Some(DSquaredFailure {
                        degree: r,
                        source_label: self.basis(r)[col].clone(),
                        target_label: self.basis(r - 2)[row].clone(),
                        value,
                    }),
                };
            }
        }
        DSquaredReport { failure: None }
    }

    /// Ranks of every `d_r`, computed concurrently.
    pub fn differential_ranks(&self) -> BTreeMap<Degree, usize> {
        let jobs: Vec<(&Degree, &SparseMatrix)> = self.differentials.iter().collect();
        jobs.into_par_iter().map(|(&r, m)| (r, m.rank())).collect()
    }

    /// `dim H_r = |basis(r)| - rank d_r - rank d_{r+1}`; only nonzero entries are kept.
    pub fn homology_dims(&self) -> Result<Homology, ComplexError> {
        if let Some(failure) = self.verify_d_squared().failure {
            return Err(ComplexError::NotAComplex(Box::new(failure)));
        }
        let ranks = self.differential_ranks();
        let rank = |r: Degree| ranks.get(&r).copied().unwrap_or(0);
        Ok(self
            .degrees()
            .map(|r| (r, self.dim(r) - rank(r) - rank(r + 1)))
            .filter(|&(_, h)| h > 0)
            .collect())
    }

    /// Basis with labels prefixed and degrees shifted by `shift`.
    pub(crate) fn relabeled_basis(
        &self,
        prefix: &str,
        shift: Degree,
    ) -> BTreeMap<Degree, Vec<String>> {
        self.basis
            .iter()
            .map(|(&r, labels)| {
                (
                    r + shift,
                    labels.iter().map(|l| format!("{prefix}{l}")).collect(),
                )
            })
            .collect()
    }
}

/// A complex with a level on every basis element that `d` never raises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: Arc<ChainComplex>,
    levels: BTreeMap<Degree, Vec<u32>>,
}

impl FilteredComplex {
    pub fn new(
        complex: Arc<ChainComplex>,
        levels: &HashMap<String, u32>,
    ) -> Result<Self, ComplexError> {
        for label in levels.keys() {
            if complex.index_of(label).is_none() {
                return Err(ComplexError::UnknownLabel(label.clone()));
            }
        }
        let mut by_degree = BTreeMap::new();
        for r in complex.degrees() {
            let row = complex
                .basis(r)
                .iter()
                .map(|l| {
                    levels
                        .get(l)
                        .copied()
                        .ok_or_else(|| ComplexError::MissingLevel(l.clone()))
                })
                .collect::<Result<Vec<u32>, _>>()?;
            by_degree.insert(r, row);
        }
        Self::from_levels(complex, by_degree)
    }

    /// Levels given per degree, aligned with the basis order.
    pub fn from_levels(
        complex: Arc<ChainComplex>,
        levels: BTreeMap<Degree, Vec<u32>>,
    ) -> Result<Self, ComplexError> {
        for r in complex.degrees() {
            let got = levels.get(&r).map_or(0, Vec::len);
            if got != complex.dim(r) {
                let missing = complex.basis(r).get(got).cloned().unwrap_or_default();
                return Err(ComplexError::MissingLevel(missing));
            }
        }
        let filtered = FilteredComplex { complex, levels };
        filtered.check_filtration()?;
        Ok(filtered)
    }

    fn check_filtration(&self) -> Result<(), ComplexError> {
        for r in self.complex.degrees() {
            let Some(d) = self.complex.differential_ref(r) else {
                continue;
            };
            for (row, col, _) in d.iter() {
                let source_level = self.levels[&r][col];
                let target_level = self.levels[&(r - 1)][row];
                if target_level > source_level {
                    return Err(ComplexError::FiltrationRaised {
                        source_label: self.complex.basis(r)[col].clone(),
                        source_level,
                        target_label: self.complex.basis(r - 1)[row].clone(),
                        target_level,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> Arc<ChainComplex> {
        Arc::clone(&self.complex)
    }

    /// Levels of `basis(r)`, in basis order.
    pub fn levels(&self, r: Degree) -> &[u32] {
        self.levels.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn level_of(&self, label: &str) -> Option<u32> {
        let (r, i) = self.complex.index_of(label)?;
        Some(self.levels[&r][i])
    }

    pub fn level_range(&self) -> Option<(u32, u32)> {
        let mut all = self.levels.values().flatten().copied();
        let first = all.next()?;
        Some(all.fold((first, first), |(lo, hi), l| (lo.min(l), hi.max(l))))
    }

    pub fn spectral_sequence(&self) -> SpectralSequence<'_> {
        SpectralSequence::new(self)
    }

    /// Dimensions of the page `E^r`.
    pub fn page_dims(&self, r: usize) -> PageTable {
        self.spectral_sequence().page(r)
    }
}
