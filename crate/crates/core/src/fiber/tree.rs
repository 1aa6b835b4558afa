use std::collections::BTreeSet;
use std::fmt;

use super::graph::{Contraction, MultiGraph};
use super::FiberError;
use crate::topartition::{permutation_sign, BlockSet, Sign, TOPartition};

/// Unordered content of a block tree: blocks sorted by least edge id and the
/// parent of each block (`None` for the root).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeShape {
    blocks: Vec<BlockSet>,
    parent: Vec<Option<usize>>,
}

/// A block tree together with an order on its blocks. Two orders differing
/// by an odd permutation give negatives of the same fiber basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiberTree {
    shape: TreeShape,
    /// Shape indices listed in stored order.
    stored: Vec<usize>,
}

impl TreeShape {
    /// From blocks and parents listed in one common order; the result is
    /// sorted canonically. Returns the shape and the canonical index of each input position.
    fn canonicalize(blocks: &[BlockSet], parent: &[Option<usize>]) -> (TreeShape, Vec<usize>) {
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&i| blocks[i].min());
        let mut position = vec![0; blocks.len()];
        for (canonical, &i) in order.iter().enumerate() {
            position[i] = canonical;
        }
        let shape = TreeShape {
            blocks: order.iter().map(|&i| blocks[i]).collect(),
            parent: order
                .iter()
                .map(|&i| parent[i].map(|p| position[p]))
                .collect(),
        };
        (shape, position)
    }

    pub fn blocks(&self) -> &[BlockSet] {
        &self.blocks
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn root(&self) -> usize {
        self.parent
            .iter()
            .position(Option::is_none)
            .expect("a tree has a root")
    }

    /// Children of block `i`, by least edge id.
    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&j| self.parent[j] == Some(i))
            .collect()
    }

    /// Size of the root block.
    pub fn width(&self) -> usize {
        self.blocks[self.root()].len()
    }

    /// Nested form, e.g. `({2} ({1}) ({3}))`: a block followed by its child
    /// subtrees, children by least edge id.
    pub fn label(&self) -> String {
        let mut out = String::new();
        self.render(self.root(), &mut out);
        out
    }

    fn render(&self, i: usize, out: &mut String) {
        out.push('(');
        out.push_str(&self.blocks[i].to_string());
        for c in self.children(i) {
            out.push(' ');
            self.render(c, out);
        }
        out.push(')');
    }

    /// Blocks in a children-before-parents order, ready blocks taken by
    /// least edge id; the root comes last.
    pub fn representative_order(&self) -> Vec<usize> {
        let k = self.blocks.len();
        let mut pending: Vec<usize> = (0..k).map(|i| self.children(i).len()).collect();
        let mut ready: BTreeSet<usize> = (0..k).filter(|&i| pending[i] == 0).collect();
        let mut order = Vec::with_capacity(k);
        while let Some(i) = ready.pop_first() {
            order.push(i);
            if let Some(p) = self.parent[i] {
                pending[p] -= 1;
                if pending[p] == 0 {
                    ready.insert(p);
                }
            }
        }
        order
    }

    /// The TO partition `α(t)` listing blocks in [`TreeShape::representative_order`].
    pub fn representative(&self) -> TOPartition {
        let n = self.blocks.iter().map(|b| b.len()).sum();
        let blocks = self
            .representative_order()
            .into_iter()
            .map(|i| self.blocks[i])
            .collect();
        TOPartition::new(n, blocks).expect("blocks of a tree partition the edges")
    }

    /// Parses the nested form produced by [`TreeShape::label`].
    pub fn parse(text: &str) -> Result<TreeShape, FiberError> {
        let bad = || FiberError::MalformedTree(text.to_string());
        let mut blocks = Vec::new();
        let mut parent = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut rest = text.trim();
        let mut closed_root = false;
        while !rest.is_empty() {
            if closed_root {
                return Err(bad());
            }
            if let Some(tail) = rest.strip_prefix('(') {
                let tail = tail.trim_start();
                let end = tail.find('}').ok_or_else(bad)?;
                let block: BlockSet = tail[..=end].parse().map_err(|_| bad())?;
                parent.push(stack.last().copied());
                blocks.push(block);
                stack.push(blocks.len() - 1);
                rest = tail[end + 1..].trim_start();
            } else if let Some(tail) = rest.strip_prefix(')') {
                stack.pop().ok_or_else(bad)?;
                closed_root = stack.is_empty();
                rest = tail.trim_start();
            } else {
                return Err(bad());
            }
        }
        if !closed_root || blocks.is_empty() {
            return Err(bad());
        }
        let mut seen = BlockSet::EMPTY;
        for b in &blocks {
            if !seen.is_disjoint(*b) {
                return Err(bad());
            }
            seen = seen.union(*b);
        }
        Ok(TreeShape::canonicalize(&blocks, &parent).0)
    }
}

impl FiberTree {
    /// Blocks and parents given in stored order.
    pub fn from_stored(blocks: &[BlockSet], parent: &[Option<usize>]) -> FiberTree {
        let (shape, position) = TreeShape::canonicalize(blocks, parent);
        FiberTree {
            shape,
            stored: position,
        }
    }

    pub fn canonical(shape: TreeShape) -> FiberTree {
        let stored = (0..shape.blocks.len()).collect();
        FiberTree { shape, stored }
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn into_shape(self) -> TreeShape {
        self.shape
    }

    /// Blocks in stored order.
    pub fn stored_blocks(&self) -> Vec<BlockSet> {
        self.stored.iter().map(|&i| self.shape.blocks[i]).collect()
    }

    /// Parity of the permutation from the canonical order to the stored order.
    pub fn sign(&self) -> Sign {
        permutation_sign(&self.stored)
    }

    pub fn vertex_count(&self) -> usize {
        self.shape.vertex_count()
    }

    pub fn width(&self) -> usize {
        self.shape.width()
    }

    pub fn label(&self) -> String {
        self.shape.label()
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for FiberTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn check_order(g: &MultiGraph, order: &[usize]) -> Result<(), FiberError> {
    let n = g.edge_count();
    let mut seen = vec![false; n + 1];
    let ok = order.len() == n
        && order
            .iter()
            .all(|&e| (1..=n).contains(&e) && !std::mem::replace(&mut seen[e], true));
    if ok {
        Ok(())
    } else {
        Err(FiberError::NotAPermutation {
            n,
            order: order.to_vec(),
        })
    }
}

/// Parent event of each event, contracting `order[t]` at time `t`.
fn event_parents(g: &MultiGraph, order: &[usize]) -> Vec<Option<usize>> {
    let mut contraction = Contraction::new(g.vertex_count());
    let mut parent = vec![None; order.len()];
    for (t, &e) in order.iter().enumerate() {
        let (u, v) = g.edge(e);
        for child in contraction.contract(t, u, v) {
            parent[child] = Some(t);
        }
    }
    parent
}

/// The flow-chart tree of contracting edges in `order` (edge ids, earliest
/// first). Blocks are singletons, stored in temporal order.
pub fn flowchart(g: &MultiGraph, order: &[usize]) -> Result<FiberTree, FiberError> {
    check_order(g, order)?;
    let parent = event_parents(g, order);
    let blocks: Vec<BlockSet> = order.iter().map(|&e| BlockSet::singleton(e)).collect();
    Ok(FiberTree::from_stored(&blocks, &parent))
}

/// `t_α` for a TO partition, with a flag telling whether some block spans
/// more than one flow-chart vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberElement {
    pub tree: FiberTree,
    pub degenerate: bool,
}

/// `t_α` using the refinement that lists each block in increasing order.
pub fn fiber_element(g: &MultiGraph, alpha: &TOPartition) -> Result<FiberElement, FiberError> {
    fiber_element_with_order(g, alpha, &alpha.word())
}

/// `t_α` computed from an explicit total order refining `α`. Blocks of `α`
/// are applied left to right, so the least block is contracted last.
pub fn fiber_element_with_order(
    g: &MultiGraph,
    alpha: &TOPartition,
    order: &[usize],
) -> Result<FiberElement, FiberError> {
    if alpha.n() != g.edge_count() {
        return Err(FiberError::SizeMismatch {
            partition: alpha.n(),
            edges: g.edge_count(),
        });
    }
    check_order(g, order)?;
    let mut block_of = Vec::with_capacity(order.len());
    let mut start = 0;
    for (b, block) in alpha.blocks().iter().enumerate() {
        let end = start + block.len();
        if end > order.len() || !order[start..end].iter().all(|&e| block.contains(e)) {
            return Err(FiberError::NotARefinement);
        }
        block_of.extend(std::iter::repeat_n(b, block.len()));
        start = end;
    }

    let parent = event_parents(g, order);
    // An event is the top of its component when its parent is in another block.
    let tops: Vec<usize> = (0..order.len())
        .filter(|&t| parent[t].is_none_or(|p| block_of[p] != block_of[t]))
        .collect();
    let mut component = vec![usize::MAX; order.len()];
    // Parents come later in time, so walk backwards.
    for t in (0..order.len()).rev() {
        component[t] = match parent[t] {
            Some(p) if block_of[p] == block_of[t] => component[p],
            _ => tops.iter().position(|&top| top == t).expect("t is a top"),
        };
    }
    let mut members = vec![BlockSet::EMPTY; tops.len()];
    for (t, &c) in component.iter().enumerate() {
        members[c] = members[c].union(BlockSet::singleton(order[t]));
    }
    let comp_parent: Vec<Option<usize>> = tops
        .iter()
        .map(|&t| parent[t].map(|p| component[p]))
        .collect();

    // Stored order: by block of α, then by first event.
    let mut listing: Vec<usize> = (0..tops.len()).collect();
    listing.sort_by_key(|&c| {
        let first = component
            .iter()
            .position(|&x| x == c)
            .expect("nonempty component");
        (block_of[first], first)
    });
    let mut relabel = vec![0; tops.len()];
    for (pos, &c) in listing.iter().enumerate() {
        relabel[c] = pos;
    }
    let blocks: Vec<BlockSet> = listing.iter().map(|&c| members[c]).collect();
    let parents: Vec<Option<usize>> = listing
        .iter()
        .map(|&c| comp_parent[c].map(|p| relabel[p]))
        .collect();
    Ok(FiberElement {
        tree: FiberTree::from_stored(&blocks, &parents),
        degenerate: tops.len() != alpha.block_count(),
    })
}
