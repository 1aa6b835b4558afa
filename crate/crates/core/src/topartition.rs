//! Totally ordered partitions of `{1..n}`: the cells of the permutohedron.
//!
//! A partition is written left to right, `B1 > B2 > ... > Bk`, with the least
//! block `Bk` rightmost. Its differential splits one block `Bi` into two
//! ordered nonempty pieces with sign `(-1)^(i-1)`, counting `i` from the left.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Largest ground set this representation supports.
pub const MAX_N: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("ground set size {0} exceeds the supported maximum {MAX_N}")]
    TooLarge(usize),
    #[error("malformed partition: {0}")]
    Malformed(String),
}

/// A subset of `{1..31}` stored as a bit mask, bit `i - 1` for element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlockSet(u32);

impl BlockSet {
    pub const EMPTY: BlockSet = BlockSet(0);

    pub fn from_mask(mask: u32) -> Self {
        BlockSet(mask)
    }

    pub fn singleton(element: usize) -> Self {
        debug_assert!((1..=MAX_N).contains(&element));
        BlockSet(1 << (element - 1))
    }

    /// `{1..n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_N);
        BlockSet(((1u64 << n) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, element: usize) -> bool {
        (1..=MAX_N).contains(&element) && self.0 & (1 << (element - 1)) != 0
    }

    /// Smallest element; `None` for the empty set.
    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn union(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 | other.0)
    }

    pub fn difference(self, other: BlockSet) -> BlockSet {
        BlockSet(self.0 & !other.0)
    }

    pub fn is_disjoint(self, other: BlockSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                bit as usize + 1
            })
        })
    }

    /// Nonempty proper subsets, in increasing mask order.
    pub fn proper_subsets(self) -> impl Iterator<Item = BlockSet> {
        let full = self.0;
        let mut sub = 0u32;
        std::iter::from_fn(move || loop {
            // Enumerates submasks of `full` in increasing order.
            sub = (sub.wrapping_sub(full)) & full;
            if sub == 0 || sub == full {
                if sub == 0 {
                    return None;
                }
                continue;
            }
            return Some(BlockSet(sub));
        })
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for BlockSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter()
            .fold(BlockSet::EMPTY, |acc, e| acc.union(BlockSet::singleton(e)))
    }
}

/// Parses `{1,3}`.
impl FromStr for BlockSet {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PartitionError::Malformed(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut set = BlockSet::EMPTY;
        for part in inner.split(',') {
            let e: usize = part.trim().parse().map_err(|_| bad())?;
            if !(1..=MAX_N).contains(&e) || set.contains(e) {
                return Err(bad());
            }
            set = set.union(BlockSet::singleton(e));
        }
        Ok(set)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

/// Parity of the permutation sending position `i` to `perm[i]`, by inversion count.
pub fn permutation_sign(perm: &[usize]) -> Sign {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    Sign::from_parity(inversions % 2 == 1)
}

/// A totally ordered partition of `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TOPartition {
    n: usize,
    blocks: Vec<BlockSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedTerm {
    pub partition: TOPartition,
    pub sign: Sign,
}

impl TOPartition {
    /// Validates that the blocks are nonempty, disjoint and cover `{1..n}`.
    pub fn new(n: usize, blocks: Vec<BlockSet>) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyGroundSet);
        }
        if n > MAX_N {
            return Err(PartitionError::TooLarge(n));
        }
        let mut seen = BlockSet::EMPTY;
        for b in &blocks {
            if b.is_empty() {
                return Err(PartitionError::Malformed("empty block".into()));
            }
            if !seen.is_disjoint(*b) {
                return Err(PartitionError::Malformed(format!(
                    "block {b} overlaps another"
                )));
            }
            seen = seen.union(*b);
        }
        if seen != BlockSet::full(n) {
            return Err(PartitionError::Malformed(format!(
                "blocks cover {seen}, expected {{1..{n}}}"
            )));
        }
        Ok(TOPartition { n, blocks })
    }

    pub fn from_blocks(n: usize, blocks: &[&[usize]]) -> Result<Self, PartitionError> {
        Self::new(
            n,
            blocks.iter().map(|b| b.iter().copied().collect()).collect(),
        )
    }

    /// The one-block cell `({1..n})`.
    pub fn top(n: usize) -> Result<Self, PartitionError> {
        Self::new(n, vec![BlockSet::full(n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks left to right; the least block is last.
    pub fn blocks(&self) -> &[BlockSet] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Cellular degree `n - #blocks`.
    pub fn degree(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn least_block(&self) -> BlockSet {
        *self.blocks.last().expect("at least one block")
    }

    /// Cardinality of the least block.
    pub fn width(&self) -> usize {
        self.least_block().len()
    }

    /// Block sizes left to right.
    pub fn shape(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// All elements, blocks left to right, each block in increasing order.
    pub fn word(&self) -> Vec<usize> {
        self.blocks.iter().flat_map(|b| b.iter()).collect()
    }

    /// Every ordered split of one block into `B' > B''`, signed `(-1)^(i-1)`.
    pub fn differential_terms(&self) -> Vec<SignedTerm> {
        let mut terms = Vec::new();
        for (i, &block) in self.blocks.iter().enumerate() {
            let sign = Sign::from_parity(i % 2 == 1);
            for front in block.proper_subsets() {
                let back = block.difference(front);
                let mut blocks = Vec::with_capacity(self.blocks.len() + 1);
                blocks.extend_from_slice(&self.blocks[..i]);
                blocks.push(front);
                blocks.push(back);
                blocks.extend_from_slice(&self.blocks[i + 1..]);
                terms.push(SignedTerm {
                    partition: TOPartition { n: self.n, blocks },
                    sign,
                });
            }
        }
        terms
    }

    /// The `13|24` notation.
    pub fn bar_notation(&self) -> String {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }
}

impl fmt::Display for TOPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(">")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for TOPartition {
    type Err = PartitionError;

    /// Accepts `{1,3}>{2,4}` or the bar form `13|24` (single-digit elements).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let blocks: Vec<BlockSet> = if s.contains('{') {
            s.split('>').map(str::parse).collect::<Result<_, _>>()?
        } else {
            s.split('|')
                .map(|part| {
                    let mut set = BlockSet::EMPTY;
                    for ch in part.trim().chars() {
                        let e = ch
                            .to_digit(10)
                            .filter(|&d| d > 0)
                            .ok_or_else(|| PartitionError::Malformed(s.to_string()))?
                            as usize;
                        if set.contains(e) {
                            return Err(PartitionError::Malformed(s.to_string()));
                        }
                        set = set.union(BlockSet::singleton(e));
                    }
                    Ok(set)
                })
                .collect::<Result<_, _>>()?
        };
        let n = blocks.iter().map(|b| b.len()).sum();
        TOPartition::new(n, blocks)
    }
}

/// All TO partitions of `{1..n}`, grouped by block count and sorted by
/// canonical text within each group.
pub fn enumerate(n: usize) -> Result<Vec<TOPartition>, PartitionError> {
    if n == 0 {
        return Err(PartitionError::EmptyGroundSet);
    }
    if n > MAX_N {
        return Err(PartitionError::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    extend(n, BlockSet::full(n), &mut prefix, &mut out);
    let mut keyed: Vec<(usize, String, TOPartition)> = out
        .into_iter()
        .map(|p| (p.block_count(), p.to_string(), p))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(keyed.into_iter().map(|(_, _, p)| p).collect())
}

fn extend(n: usize, rest: BlockSet, prefix: &mut Vec<BlockSet>, out: &mut Vec<TOPartition>) {
    prefix.push(rest);
    out.push(TOPartition {
        n,
        blocks: prefix.clone(),
    });
    prefix.pop();
    for front in rest.proper_subsets() {
        prefix.push(front);
        extend(n, rest.difference(front), prefix, out);
        prefix.pop();
    }
}

/// Ordered Bell number by the recurrence `F(n) = sum_j C(n,j) F(n-j)`.
pub fn fubini(n: usize) -> u128 {
    let mut f = vec![1u128; n + 1];
    for m in 1..=n {
        f[m] = (1..=m).map(|j| binomial(m, j) * f[m - j]).sum();
    }
    f[n]
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
