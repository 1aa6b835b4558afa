//! The permutohedron complex, the simplex complex, and the blow-down map.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::complex::{ChainComplex, ChainMap, ComplexError, Degree, FilteredComplex};
use crate::linalg::{Rational, SparseMatrix};
use crate::topartition::{self, permutation_sign, BlockSet, PartitionError, Sign, TOPartition};

/// Largest `n` accepted by [`build_perm`].
pub const DEFAULT_PERM_CAP: usize = 7;

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("n = {n} is outside 1..={cap}")]
    OutOfRange { n: usize, cap: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// `C_*(P_n)`: degree `r` is spanned by TO partitions with `n - r` blocks,
/// filtered by width.
#[derive(Clone, Debug)]
pub struct PermComplex {
    n: usize,
    filtered: FilteredComplex,
    cells: BTreeMap<Degree, Vec<TOPartition>>,
    index: HashMap<TOPartition, usize>,
}

impl PermComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn complex(&self) -> &ChainComplex {
        self.filtered.complex()
    }

    pub fn complex_arc(&self) -> Arc<ChainComplex> {
        self.filtered.complex_arc()
    }

    /// Cells of degree `r`, in basis order.
    pub fn cells(&self, r: Degree) -> &[TOPartition] {
        self.cells.get(&r).map_or(&[], Vec::as_slice)
    }

    /// Position of a cell within its degree.
    pub fn position(&self, cell: &TOPartition) -> Option<usize> {
        self.index.get(cell).copied()
    }
}

pub fn build_perm(n: usize) -> Result<PermComplex, PolytopeError> {
    build_perm_with_cap(n, DEFAULT_PERM_CAP)
}

pub fn build_perm_with_cap(n: usize, cap: usize) -> Result<PermComplex, PolytopeError> {
    if n == 0 || n > cap {
        return Err(PolytopeError::OutOfRange { n, cap });
    }
    let mut cells: BTreeMap<Degree, Vec<TOPartition>> = BTreeMap::new();
    for cell in topartition::enumerate(n)? {
        cells.entry(cell.degree() as Degree).or_default().push(cell);
    }
    let index: HashMap<TOPartition, usize> = cells
        .values()
        .flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)))
        .collect();

    let mut basis = BTreeMap::new();
    let mut levels = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (&r, cs) in &cells {
        basis.insert(r, cs.iter().map(ToString::to_string).collect::<Vec<_>>());
        levels.insert(r, cs.iter().map(|c| c.width() as u32).collect::<Vec<_>>());
        if r == 0 {
            continue;
        }
        let rows = cells.get(&(r - 1)).map_or(0, Vec::len);
        let triples = cs.iter().enumerate().flat_map(|(j, cell)| {
            let index = &index;
            cell.differential_terms().into_iter().map(move |t| {
                (
                    index[&t.partition],
                    j,
                    Rational::from_integer(t.sign.to_i64()),
                )
            })
        });
        diffs.insert(
            r,
            SparseMatrix::from_entries(rows, cs.len(), triples).expect("indices in range"),
        );
    }
    let complex = Arc::new(ChainComplex::new(basis, diffs)?);
    let filtered = FilteredComplex::from_levels(complex, levels)?;
    Ok(PermComplex {
        n,
        filtered,
        cells,
        index,
    })
}

/// `C_*(Δ^{n-1})`: degree `p - 1` is spanned by the `p`-element subsets of
/// `{1..n}`, with `d X = Σ_i (-1)^i (X minus its i-th smallest element)`,
/// counting `i` from zero. No augmentation.
#[derive(Clone, Debug)]
pub struct SimplexComplex {
    n: usize,
    filtered: FilteredComplex,
    faces: BTreeMap<Degree, Vec<BlockSet>>,
    index: HashMap<BlockSet, usize>,
}

impl SimplexComplex {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn complex(&self) -> &ChainComplex {
        self.filtered.complex()
    }

    pub fn complex_arc(&self) -> Arc<ChainComplex> {
        self.filtered.complex_arc()
    }

    /// Filtered by the number of vertices of a face.
    pub fn filtered(&self) -> &FilteredComplex {
        &self.filtered
    }

    pub fn faces(&self, r: Degree) -> &[BlockSet] {
        self.faces.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, face: BlockSet) -> Option<usize> {
        self.index.get(&face).copied()
    }
}

pub fn build_simplex(n: usize) -> Result<SimplexComplex, PolytopeError> {
    if n == 0 || n > topartition::MAX_N {
        return Err(PolytopeError::OutOfRange {
            n,
            cap: topartition::MAX_N,
        });
    }
    let mut faces: BTreeMap<Degree, Vec<(String, BlockSet)>> = BTreeMap::new();
    for mask in 1..=BlockSet::full(n).mask() {
        let face = BlockSet::from_mask(mask);
        faces
            .entry(face.len() as Degree - 1)
            .or_default()
            .push((face.to_string(), face));
    }
    let faces: BTreeMap<Degree, Vec<BlockSet>> = faces
        .into_iter()
        .map(|(r, mut fs)| {
            fs.sort();
            (r, fs.into_iter().map(|(_, f)| f).collect())
        })
        .collect();
    let index: HashMap<BlockSet, usize> = faces
        .values()
        .flat_map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)))
        .collect();
    let mut basis = BTreeMap::new();
    let mut levels = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (&r, fs) in &faces {
        basis.insert(r, fs.iter().map(ToString::to_string).collect::<Vec<_>>());
        levels.insert(r, fs.iter().map(|f| f.len() as u32).collect::<Vec<_>>());
        if r == 0 {
            continue;
        }
        let triples = fs.iter().enumerate().flat_map(|(j, &face)| {
            let index = &index;
            face.iter().enumerate().map(move |(i, e)| {
                let sign = Sign::from_parity(i % 2 == 1);
                let boundary = face.difference(BlockSet::singleton(e));
                (index[&boundary], j, Rational::from_integer(sign.to_i64()))
            })
        });
        diffs.insert(
            r,
            SparseMatrix::from_entries(faces[&(r - 1)].len(), fs.len(), triples)
                .expect("indices in range"),
        );
    }
    let complex = Arc::new(ChainComplex::new(basis, diffs)?);
    let filtered = FilteredComplex::from_levels(complex, levels)?;
    Ok(SimplexComplex {
        n,
        filtered,
        faces,
        index,
    })
}

/// Sign carried by the blow-down map in degree `r` of `C_*(P_n)`:
/// `Π_{j=1..r} (-1)^(n-j-1)`.
fn degree_sign(n: usize, r: usize) -> Sign {
    let flips: usize = (1..=r).map(|j| n - j - 1).sum();
    Sign::from_parity(flips % 2 == 1)
}

/// Image of a cell under the blow-down map: its least block, when every other
/// block is a singleton, with sign `degree_sign * sign(word)` where `word`
/// lists the elements blocks left to right, each block ascending.
pub fn blow_down_term(cell: &TOPartition) -> Option<(BlockSet, Sign)> {
    let (least, rest) = cell.blocks().split_last()?;
    if rest.iter().any(|b| b.len() != 1) {
        return None;
    }
    let word: Vec<usize> = cell.word();
    let sign = degree_sign(cell.n(), cell.degree()) * permutation_sign(&word);
    Some((*least, sign))
}

/// `C_*(P_n) -> C_*(Δ^{n-1})`, degree preserving.
pub fn perm_to_simplex(
    perm: &PermComplex,
    simplex: &SimplexComplex,
) -> Result<ChainMap, PolytopeError> {
    let mut matrices = BTreeMap::new();
    for r in perm.complex().degrees() {
        let cells = perm.cells(r);
        let triples = cells.iter().enumerate().filter_map(|(j, cell)| {
            let (face, sign) = blow_down_term(cell)?;
            let i = simplex.position(face).expect("least block is a face");
            Some((i, j, Rational::from_integer(sign.to_i64())))
        });
        matrices.insert(
            r,
            SparseMatrix::from_entries(simplex.complex().dim(r), cells.len(), triples)
                .expect("indices in range"),
        );
    }
    Ok(ChainMap::new(
        perm.complex_arc(),
        simplex.complex_arc(),
        0,
        matrices,
    )?)
}
