use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{ChainComplex, ComplexError, Degree, FilteredComplex, Homology};
use crate::linalg::{Rational, SparseMatrix};

/// A map `C_r -> D_{r + shift}` given degreewise.
///
/// The chain-map condition is `d_D f_r = f_{r-1} d_C` with no extra sign.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    shift: Degree,
    matrices: BTreeMap<Degree, SparseMatrix>,
}

/// Where `d f` and `f d` first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapFailure {
    /// Source degree of the basis element.
    pub degree: Degree,
    pub source_label: String,
    pub target_label: String,
    /// Coefficient of `target_label` in `d f(x)`.
    pub d_after_f: Rational,
    /// Coefficient of `target_label` in `f d(x)`.
    pub f_after_d: Rational,
}

impl fmt::Display for ChainMapFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "on {} (degree {}): d(f(x)) has {} but f(d(x)) has {} at {}",
            self.source_label, self.degree, self.d_after_f, self.f_after_d, self.target_label
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapReport {
    pub failure: Option<ChainMapFailure>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl ChainMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        shift: Degree,
        matrices: BTreeMap<Degree, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let mut stored = BTreeMap::new();
        for r in source.degrees() {
            let (rows, cols) = (target.dim(r + shift), source.dim(r));
            let m = matrices
                .get(&r)
                .cloned()
                .unwrap_or_else(|| SparseMatrix::zeros(rows, cols));
            if m.rows() != rows || m.cols() != cols {
                return Err(ComplexError::MapShapeMismatch {
                    degree: r,
                    rows: m.rows(),
                    cols: m.cols(),
                    expected_rows: rows,
                    expected_cols: cols,
                });
            }
            stored.insert(r, m);
        }
        Ok(ChainMap {
            source,
            target,
            shift,
            matrices: stored,
        })
    }

    pub fn identity(c: Arc<ChainComplex>) -> Self {
        let matrices = c
            .degrees()
            .map(|r| (r, SparseMatrix::identity(c.dim(r))))
            .collect();
        ChainMap {
            source: Arc::clone(&c),
            target: c,
            shift: 0,
            matrices,
        }
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>, shift: Degree) -> Self {
        ChainMap::new(source, target, shift, BTreeMap::new()).expect("zero map always fits")
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn shift(&self) -> Degree {
        self.shift
    }

    /// `f_r : C_r -> D_{r + shift}`.
    pub fn matrix(&self, r: Degree) -> SparseMatrix {
        self.matrices.get(&r).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(self.target.dim(r + self.shift), self.source.dim(r))
        })
    }

    /// Copy with `f_r` replaced; used for mutation tests.
    pub fn with_matrix(&self, r: Degree, m: SparseMatrix) -> Result<ChainMap, ComplexError> {
        let mut matrices = self.matrices.clone();
        matrices.insert(r, m);
        ChainMap::new(
            Arc::clone(&self.source),
            Arc::clone(&self.target),
            self.shift,
            matrices,
        )
    }

    pub fn verify_chain_map(&self) -> ChainMapReport {
        for r in self.source.degrees() {
            let f_r = self.matrix(r);
            let d_f = self
                .target
                .differential(r + self.shift)
                .multiply(&f_r)
                .expect("shapes agree");
            let f_d = self
                .matrix(r - 1)
                .multiply(&self.source.differential(r))
                .expect("shapes agree");
            if d_f == f_d {
                continue;
            }
            let (row, col) = d_f
                .iter()
                .map(|(i, j, _)| (i, j))
                .chain(f_d.iter().map(|(i, j, _)| (i, j)))
                .filter(|&(i, j)| d_f.get(i, j) != f_d.get(i, j))
                .min_by_key(|&(i, j)| (j, i))
                .expect("matrices differ somewhere");
            let coefficient =
                |m: &SparseMatrix| m.get(row, col).cloned().unwrap_or_else(Rational::zero);
            return ChainMapReport {
                failure: Some(ChainMapFailure {
                    degree: r,
                    source_label: self.source.basis(r)[col].clone(),
                    target_label: self.target.basis(r + self.shift - 1)[row].clone(),
                    d_after_f: coefficient(&d_f),
                    f_after_d: coefficient(&f_d),
                }),
            };
        }
        ChainMapReport { failure: None }
    }

    /// `after ∘ self`.
    pub fn then(&self, after: &ChainMap) -> Result<ChainMap, ComplexError> {
        let mut matrices = BTreeMap::new();
        for r in self.source.degrees() {
            let m = after.matrix(r + self.shift).multiply(&self.matrix(r))?;
            matrices.insert(r, m);
        }
        ChainMap::new(
            Arc::clone(&self.source),
            Arc::clone(&after.target),
            self.shift + after.shift,
            matrices,
        )
    }

    /// Surjective in every target degree.
    pub fn is_surjective(&self) -> bool {
        self.target.degrees().all(|m| {
            let r = m - self.shift;
            self.source.dim(r) > 0 && self.matrix(r).rank() == self.target.dim(m)
        })
    }

    /// Every degree's matrix is square and invertible.
    pub fn is_bijective(&self) -> bool {
        self.is_surjective()
            && self
                .source
                .degrees()
                .all(|r| self.source.dim(r) == self.target.dim(r + self.shift))
    }

    /// Every nonzero entry sends level `p` to level `<= p`.
    pub fn preserves_filtration(&self, source: &FilteredComplex, target: &FilteredComplex) -> bool {
        self.matrices.iter().all(|(&r, m)| {
            m.iter()
                .all(|(row, col, _)| target.levels(r + self.shift)[row] <= source.levels(r)[col])
        })
    }

    /// The cone: `Cone_m = C_{m-1-shift} ⊕ D_m` with
    /// `d(c, y) = (-d c, f c + d y)`. Source labels get a `src:` prefix and
    /// target labels a `tgt:` prefix.
    pub fn mapping_cone(&self) -> Result<ChainComplex, ComplexError> {
        if let Some(failure) = self.verify_chain_map().failure {
            return Err(ComplexError::NotAChainMap(Box::new(failure)));
        }
        let lift = 1 + self.shift;
        let src_basis = self.source.relabeled_basis("src:", lift);
        let tgt_basis = self.target.relabeled_basis("tgt:", 0);
        let degrees: std::collections::BTreeSet<Degree> =
            src_basis.keys().chain(tgt_basis.keys()).copied().collect();
        let mut basis = BTreeMap::new();
        for &m in &degrees {
            let mut labels = src_basis.get(&m).cloned().unwrap_or_default();
            labels.extend(tgt_basis.get(&m).cloned().unwrap_or_default());
            basis.insert(m, labels);
        }
        let mut diffs = BTreeMap::new();
        for &m in &degrees {
            let r = m - lift;
            let src_cols = self.source.dim(r);
            let src_rows = self.source.dim(r - 1);
            let mut triples = Vec::new();
            // -d_C on the source part.
            for (i, j, v) in self.source.differential(r).iter() {
                triples.push((i, j, -v.clone()));
            }
            // f from the source part into the target part.
            for (i, j, v) in self.matrix(r).iter() {
                triples.push((src_rows + i, j, v.clone()));
            }
            // d_D on the target part.
            for (i, j, v) in self.target.differential(m).iter() {
                triples.push((src_rows + i, src_cols + j, v.clone()));
            }
            let rows = src_rows + self.target.dim(m - 1);
            let cols = src_cols + self.target.dim(m);
            diffs.insert(m, SparseMatrix::from_entries(rows, cols, triples)?);
        }
        let cone = ChainComplex::new(basis, diffs)?;
        if let Some(failure) = cone.verify_d_squared().failure {
            return Err(ComplexError::NotAComplex(Box::new(failure)));
        }
        Ok(cone)
    }

    /// Homology of the mapping cone; empty iff the map is a quasi-isomorphism.
    pub fn cone_homology(&self) -> Result<Homology, ComplexError> {
        self.mapping_cone()?.homology_dims()
    }

    pub fn is_quasi_isomorphism(&self) -> Result<bool, ComplexError> {
        Ok(self.cone_homology()?.is_empty())
    }
}
