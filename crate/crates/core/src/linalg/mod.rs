//! Exact sparse linear algebra over the rationals.
//!
//! Every homology and spectral-sequence dimension in this crate is reduced to
//! ranks of sparse rational matrices. Matrices are immutable once built; the
//! builders and arithmetic return fresh values.

mod rank;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use rank::DENSE_THRESHOLD;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

/// A rational number in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// Fails only for a zero denominator.
    pub fn new(numerator: i64, denominator: i64) -> Option<Self> {
        if denominator == 0 {
            return None;
        }
        Some(Rational(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, e.g. `-1/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = LinalgError;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LinalgError::BadRational(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

/// A `rows x cols` matrix holding only its nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| ((i, i), Rational::one())).collect(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triples. Repeated positions
    /// are summed and zero results are dropped.
    pub fn from_entries<I>(rows: usize, cols: usize, triples: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut entries: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (row, col, value) in triples {
            if row >= rows || col >= cols {
                return Err(LinalgError::OutOfRange {
                    row,
                    col,
                    rows,
                    cols,
                });
            }
            if value.is_zero() {
                continue;
            }
            match entries.entry((row, col)) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(value);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    let sum = slot.get() + &value;
                    if sum.is_zero() {
                        slot.remove();
                    } else {
                        *slot.get_mut() = sum;
                    }
                }
            }
        }
        Ok(SparseMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Integer-entry convenience form of [`SparseMatrix::from_entries`].
    pub fn from_integer_entries<I>(
        rows: usize,
        cols: usize,
        triples: I,
    ) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_entries(
            rows,
            cols,
            triples
                .into_iter()
                .map(|(r, c, v)| (r, c, Rational::from_integer(v))),
        )
    }

    /// Dense row-major input, mostly for tests.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triples = rows.iter().enumerate().flat_map(|(r, row)| {
            assert_eq!(row.len(), cols, "ragged dense input");
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (r, c, Rational::from_integer(v)))
        });
        Self::from_entries(rows.len(), cols, triples).expect("indices are in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Rational> {
        self.entries.get(&(row, col))
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    pub fn negate(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|(&k, v)| (k, -v.clone())).collect(),
        }
    }

    /// Exact product `self * other`.
    pub fn multiply(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut right_rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            right_rows[r].push((c, v));
        }
        let mut out: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for &(j, b) in &right_rows[k] {
                let term = a * b;
                let slot = out.entry((i, j)).or_insert_with(Rational::zero);
                *slot = &*slot + &term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Self::from_entries(
            self.rows,
            self.cols,
            self.iter()
                .chain(other.iter())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    /// Submatrix on the given row and column indices, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (i, &r) in rows.iter().enumerate() {
            row_pos[r] = i;
        }
        let mut col_pos = vec![usize::MAX; self.cols];
        for (j, &c) in cols.iter().enumerate() {
            col_pos[c] = j;
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|(&(r, c), v)| {
                let (i, j) = (row_pos[r], col_pos[c]);
                (i != usize::MAX && j != usize::MAX).then(|| ((i, j), v.clone()))
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Copy of `self` with the entry at `(row, col)` replaced (zero removes it).
    pub fn with_entry(
        &self,
        row: usize,
        col: usize,
        value: Rational,
    ) -> Result<SparseMatrix, LinalgError> {
        if row >= self.rows || col >= self.cols {
            return Err(LinalgError::OutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut entries = self.entries.clone();
        if value.is_zero() {
            entries.remove(&(row, col));
        } else {
            entries.insert((row, col), value);
        }
        Ok(SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank::rank(self)
    }

    /// `cols - rank`.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Rows scaled to coprime integer vectors, as `(col, value)` lists.
    pub(crate) fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut rows: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v));
        }
        rows.into_iter()
            .filter(|row| !row.is_empty())
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| {
                    num_integer::lcm(acc, v.denominator().clone())
                });
                row.into_iter()
                    .map(|(c, v)| (c, v.numerator() * (&lcm / v.denominator())))
                    .collect()
            })
            .collect()
    }
}
