use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::graph::MultiGraph;
use super::tree::{fiber_element, FiberElement, TreeShape};
use super::FiberError;
use crate::complex::{ChainComplex, ChainMap, Degree, FilteredComplex, Homology, PageTable};
use crate::linalg::{Rational, SparseMatrix};
use crate::polytopes::{blow_down_term, PermComplex, SimplexComplex};
use crate::topartition::{self, BlockSet, Sign, TOPartition};

/// Largest edge count accepted by [`build_fiber`].
pub const DEFAULT_FIBER_CAP: usize = 8;

/// The fiber complex of a graph contraction: degree `-k` is spanned by the
/// nondegenerate block trees with `k` blocks, filtered by root width.
#[derive(Clone, Debug)]
pub struct FiberComplex {
    graph: MultiGraph,
    filtered: FilteredComplex,
    trees: BTreeMap<Degree, Vec<TreeShape>>,
    index: HashMap<TreeShape, usize>,
}

pub fn build_fiber(g: &MultiGraph) -> Result<FiberComplex, FiberError> {
    build_fiber_with_cap(g, DEFAULT_FIBER_CAP)
}

pub fn build_fiber_with_cap(g: &MultiGraph, cap: usize) -> Result<FiberComplex, FiberError> {
    let n = g.edge_count();
    if n > cap {
        return Err(FiberError::TooLarge { n, cap });
    }
    let mut shapes: BTreeMap<Degree, BTreeSet<(String, TreeShape)>> = BTreeMap::new();
    for alpha in topartition::enumerate(n)? {
        let e = fiber_element(g, &alpha)?;
        if !e.degenerate {
            let shape = e.tree.into_shape();
            shapes
                .entry(-(alpha.block_count() as Degree))
                .or_default()
                .insert((shape.label(), shape));
        }
    }
    let trees: BTreeMap<Degree, Vec<TreeShape>> = shapes
        .into_iter()
        .map(|(r, set)| (r, set.into_iter().map(|(_, s)| s).collect()))
        .collect();
    let index: HashMap<TreeShape, usize> = trees
        .values()
        .flat_map(|ts| ts.iter().enumerate().map(|(i, t)| (t.clone(), i)))
        .collect();

    let mut basis = BTreeMap::new();
    let mut levels = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for (&r, ts) in &trees {
        basis.insert(r, ts.iter().map(TreeShape::label).collect::<Vec<_>>());
        levels.insert(r, ts.iter().map(|t| t.width() as u32).collect::<Vec<_>>());
        let mut triples = Vec::new();
        for (j, t) in ts.iter().enumerate() {
            let alpha = t.representative();
            let e = fiber_element(g, &alpha)?;
            if e.degenerate || e.tree.shape() != t {
                return Err(FiberError::Inconsistent(format!(
                    "representative {alpha} does not reproduce {}",
                    t.label()
                )));
            }
            for (i, c) in push_forward_terms(g, &index, &alpha)? {
                triples.push((i, j, Rational::from_integer(e.tree.sign().to_i64() * c)));
            }
        }
        let rows = trees.get(&(r - 1)).map_or(0, Vec::len);
        if rows > 0 {
            diffs.insert(
                r,
                SparseMatrix::from_entries(rows, ts.len(), triples).expect("indices in range"),
            );
        }
    }
    let complex = Arc::new(ChainComplex::new(basis, diffs)?);
    let report = complex.verify_d_squared();
    if let Some(f) = report.failure {
        return Err(FiberError::Complex(
            crate::complex::ComplexError::NotAComplex(Box::new(f)),
        ));
    }
    let filtered = FilteredComplex::from_levels(complex, levels)?;
    Ok(FiberComplex {
        graph: g.clone(),
        filtered,
        trees,
        index,
    })
}

/// `Σ s_β sign(t_β) t_β` over the terms `β` of `dα` with nondegenerate
/// image, as (row, coefficient) pairs in the next degree down.
fn push_forward_terms(
    g: &MultiGraph,
    index: &HashMap<TreeShape, usize>,
    alpha: &TOPartition,
) -> Result<BTreeMap<usize, i64>, FiberError> {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for term in alpha.differential_terms() {
        let e = fiber_element(g, &term.partition)?;
        if e.degenerate {
            continue;
        }
        let row = *index.get(e.tree.shape()).ok_or_else(|| {
            FiberError::Inconsistent(format!("{} is missing from the basis", e.tree.label()))
        })?;
        *acc.entry(row).or_insert(0) += (term.sign * e.tree.sign()).to_i64();
    }
    acc.retain(|_, c| *c != 0);
    Ok(acc)
}

/// Result of comparing the push-forward of every `α` with `t_α = t`
/// against the stored `d(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushForwardReport {
    pub tree: String,
    /// Number of TO partitions `α` with `t_α = t`.
    pub representatives: usize,
    /// Those whose signed push-forward disagrees with `d(t)`.
    pub mismatches: Vec<String>,
}

impl PushForwardReport {
    pub fn passed(&self) -> bool {
        self.representatives > 0 && self.mismatches.is_empty()
    }
}

/// Homology and width-filtration pages of a fiber.
#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub n: usize,
    /// Basis size by degree.
    pub dims: BTreeMap<Degree, usize>,
    pub homology: Homology,
    /// `E^0`, `E^1`, `E^2`.
    pub pages: Vec<PageTable>,
    pub homology_ok: bool,
    /// Row index `q` holding `E^1`, when it has the binomial shape.
    pub e1_row: Option<i64>,
    pub e2_ok: bool,
}

impl KoszulReport {
    pub fn passed(&self) -> bool {
        self.homology_ok && self.e1_row.is_some() && self.e2_ok
    }
}

impl FiberComplex {
    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    /// Number of edges.
    pub fn n(&self) -> usize {
        self.graph.edge_count()
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

    /// Basis trees of degree `r`, in basis order.
    pub fn trees(&self, r: Degree) -> &[TreeShape] {
        self.trees.get(&r).map_or(&[], Vec::as_slice)
    }

    pub fn position(&self, t: &TreeShape) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Dimensions by number of blocks `k = 1..=n`.
    pub fn dims_by_blocks(&self) -> Vec<usize> {
        (1..=self.n())
            .map(|k| self.complex().dim(-(k as Degree)))
            .collect()
    }

    pub fn element(&self, alpha: &TOPartition) -> Result<FiberElement, FiberError> {
        fiber_element(&self.graph, alpha)
    }

    /// Push-forward of `dα` into the fiber, as (row, coefficient) pairs in
    /// degree `-(blocks(α) + 1)`, without the sign of `t_α` itself.
    pub fn push_forward(&self, alpha: &TOPartition) -> Result<BTreeMap<usize, i64>, FiberError> {
        push_forward_terms(&self.graph, &self.index, alpha)
    }

    /// Checks that every `α` with `t_α = t`, each taken with the sign of its
    /// block order, pushes `dα` forward to the stored `d(t)`.
    pub fn push_forward_well_defined(
        &self,
        t: &TreeShape,
    ) -> Result<PushForwardReport, FiberError> {
        let k = t.vertex_count();
        let r = -(k as Degree);
        let j = self.position(t).ok_or_else(|| {
            FiberError::Inconsistent(format!("{} is not a basis tree", t.label()))
        })?;
        let d = self.complex().differential(r);
        let stored: BTreeMap<usize, i64> = d
            .iter()
            .filter(|&(_, col, _)| col == j)
            .map(|(i, _, v)| (i, v.numerator().try_into().expect("unit coefficients")))
            .collect();
        let mut report = PushForwardReport {
            tree: t.label(),
            representatives: 0,
            mismatches: Vec::new(),
        };
        // t_α = t forces the blocks of α to be the blocks of t.
        for order in permutations(k) {
            let blocks: Vec<BlockSet> = order.iter().map(|&i| t.blocks()[i]).collect();
            let alpha = TOPartition::new(self.n(), blocks)?;
            let e = self.element(&alpha)?;
            if e.degenerate || e.tree.shape() != t {
                continue;
            }
            report.representatives += 1;
            let mut pushed = self.push_forward(&alpha)?;
            if e.tree.sign() == Sign::Minus {
                pushed.values_mut().for_each(|c| *c = -*c);
            }
            if pushed != stored {
                report.mismatches.push(alpha.to_string());
            }
        }
        Ok(report)
    }

    /// TO partitions with degenerate `t_α` whose push-forward is nonzero.
    pub fn degenerate_push_forward_failures(&self) -> Result<Vec<String>, FiberError> {
        let mut failures = Vec::new();
        for alpha in topartition::enumerate(self.n())? {
            if self.element(&alpha)?.degenerate && !self.push_forward(&alpha)?.is_empty() {
                failures.push(alpha.to_string());
            }
        }
        Ok(failures)
    }

    /// `C_*(P_n) -> C_*(φ)` of degree `-n`: `α ↦ sign(t_α) t_α`, or zero when
    /// `t_α` is degenerate.
    pub fn perm_to_fiber(&self, perm: &PermComplex) -> Result<ChainMap, FiberError> {
        let n = self.n();
        if perm.n() != n {
            return Err(FiberError::SizeMismatch {
                partition: perm.n(),
                edges: n,
            });
        }
        let shift = -(n as Degree);
        let mut matrices = BTreeMap::new();
        for r in perm.complex().degrees() {
            let cells = perm.cells(r);
            let mut triples = Vec::new();
            for (j, alpha) in cells.iter().enumerate() {
                let e = self.element(alpha)?;
                if e.degenerate {
                    continue;
                }
                let i = self
                    .position(e.tree.shape())
                    .expect("nondegenerate trees are in the basis");
                triples.push((i, j, Rational::from_integer(e.tree.sign().to_i64())));
            }
            matrices.insert(
                r,
                SparseMatrix::from_entries(self.complex().dim(r + shift), cells.len(), triples)
                    .expect("indices in range"),
            );
        }
        Ok(ChainMap::new(
            perm.complex_arc(),
            self.complex_arc(),
            shift,
            matrices,
        )?)
    }

    /// `C_*(φ) -> C_*(Δ^{n-1})` of degree `+n`: a tree whose non-root
    /// blocks are singletons goes to its root block, anything else to zero.
    /// Signs are those making the composite with [`FiberComplex::perm_to_fiber`]
    /// equal the blow-down map.
    pub fn fiber_to_simplex(&self, simplex: &SimplexComplex) -> Result<ChainMap, FiberError> {
        let n = self.n();
        if simplex.n() != n {
            return Err(FiberError::SizeMismatch {
                partition: simplex.n(),
                edges: n,
            });
        }
        let shift = n as Degree;
        let mut matrices = BTreeMap::new();
        for (&r, ts) in &self.trees {
            let mut triples = Vec::new();
            for (j, t) in ts.iter().enumerate() {
                let root = t.root();
                if (0..t.vertex_count()).any(|b| b != root && t.blocks()[b].len() != 1) {
                    continue;
                }
                let alpha = t.representative();
                let (face, blow) = blow_down_term(&alpha).expect("non-root blocks are singletons");
                let sign = blow * self.element(&alpha)?.tree.sign();
                let i = simplex.position(face).expect("root block is a face");
                triples.push((i, j, Rational::from_integer(sign.to_i64())));
            }
            matrices.insert(
                r,
                SparseMatrix::from_entries(simplex.complex().dim(r + shift), ts.len(), triples)
                    .expect("indices in range"),
            );
        }
        Ok(ChainMap::new(
            self.complex_arc(),
            simplex.complex_arc(),
            shift,
            matrices,
        )?)
    }

    /// Homology plus `E^0..E^2` of the width filtration, checked against
    /// the expected shape: homology one-dimensional in degree `-n`, `E^1`
    /// equal to `C(n, p)` along a single row, `E^2` a single class at `p = 1`.
    pub fn koszul_check(&self) -> Result<KoszulReport, FiberError> {
        let n = self.n();
        let homology = self.complex().homology_dims()?;
        let ss = self.filtered.spectral_sequence();
        let pages: Vec<PageTable> = (0..=2).map(|r| ss.page(r)).collect();
        let e1_row = pages[1].binomial_row(n);
        let e2_ok = pages[2].is_point_at(1);
        Ok(KoszulReport {
            n,
            dims: self
                .complex()
                .degrees()
                .map(|r| (r, self.complex().dim(r)))
                .collect(),
            homology_ok: homology == BTreeMap::from([(-(n as Degree), 1)]),
            homology,
            pages,
            e1_row,
            e2_ok,
        })
    }
}

/// All permutations of `0..k` in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k)
            .rev()
            .find(|&j| current[j] > current[i - 1])
            .expect("pivot has a successor");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytopes::{build_perm, build_simplex, perm_to_simplex};

    #[test]
    fn permutations_in_order() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        let p3 = permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[1], vec![0, 2, 1]);
        assert_eq!(p3[5], vec![2, 1, 0]);
    }

    #[test]
    fn single_edge_fiber() {
        let f = build_fiber(&MultiGraph::path(1)).unwrap();
        assert_eq!(f.dims_by_blocks(), vec![1]);
        let report = f.koszul_check().unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.homology, BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn pentagon_from_path() {
        let f = build_fiber(&MultiGraph::path(3)).unwrap();
        assert_eq!(f.dims_by_blocks(), vec![1, 5, 5]);
        let report = f.koszul_check().unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.e1_row, Some(-4));
        let e1 = &report.pages[1];
        assert_eq!((e1.get(1, -4), e1.get(2, -4), e1.get(3, -4)), (3, 3, 1));
    }

    #[test]
    fn star_fiber_is_permutohedron() {
        for n in 1..=4 {
            let f = build_fiber(&MultiGraph::star(n)).unwrap();
            let p = build_perm(n).unwrap();
            let map = f.perm_to_fiber(&p).unwrap();
            assert!(map.verify_chain_map().passed());
            assert!(map.is_bijective());
        }
    }

    #[test]
    fn maps_factor_blow_down() {
        for g in [
            MultiGraph::path(3),
            MultiGraph::cycle(3),
            MultiGraph::theta(3),
            MultiGraph::bouquet(2),
        ] {
            let n = g.edge_count();
            let f = build_fiber(&g).unwrap();
            let p = build_perm(n).unwrap();
            let s = build_simplex(n).unwrap();
            let up = f.perm_to_fiber(&p).unwrap();
            let down = f.fiber_to_simplex(&s).unwrap();
            assert!(up.verify_chain_map().passed(), "{g}");
            assert!(down.verify_chain_map().passed(), "{g}");
            assert_eq!(up.then(&down).unwrap(), perm_to_simplex(&p, &s).unwrap());
            assert!(up.is_surjective() && down.is_surjective());
            assert!(up.is_quasi_isomorphism().unwrap());
        }
    }

    #[test]
    fn cancellation_pair_maps_to_opposite_signs() {
        let f = build_fiber(&MultiGraph::path(3)).unwrap();
        let p = build_perm(3).unwrap();
        let map = f.perm_to_fiber(&p).unwrap();
        let m = map.matrix(0);
        let col = |s: &str| p.position(&s.parse().unwrap()).unwrap();
        let a: Vec<_> = m
            .iter()
            .filter(|&(_, j, _)| j == col("{1}>{3}>{2}"))
            .collect();
        let b: Vec<_> = m
            .iter()
            .filter(|&(_, j, _)| j == col("{3}>{1}>{2}"))
            .collect();
        assert_eq!(a.len(), 1);
        assert_eq!(b.len(), 1);
        assert_eq!(a[0].0, b[0].0);
        assert_eq!(a[0].2, &-b[0].2.clone());
        // {1,3} applied before {2} splits into two flow-chart vertices.
        let degenerate = col("{1,3}>{2}");
        assert!(map.matrix(1).iter().all(|(_, j, _)| j != degenerate));
    }

    #[test]
    fn push_forward_is_well_defined() {
        for g in [
            MultiGraph::path(3),
            MultiGraph::theta(3),
            MultiGraph::cycle(3),
        ] {
            let f = build_fiber(&g).unwrap();
            for r in f.complex().degrees() {
                for t in f.trees(r) {
                    let report = f.push_forward_well_defined(t).unwrap();
                    assert!(report.passed(), "{g}: {report:?}");
                }
            }
            assert!(f.degenerate_push_forward_failures().unwrap().is_empty());
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            build_fiber_with_cap(&MultiGraph::path(4), 3),
            Err(FiberError::TooLarge { n: 4, cap: 3 })
        ));
    }
}
