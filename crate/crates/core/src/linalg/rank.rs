//! Fraction-free rank computation.
//!
//! Rows are first cleared of denominators, so all elimination happens over
//! the integers. Each elimination runs in `i64` with checked arithmetic and
//! restarts in `BigInt` on overflow. Small matrices go through dense Bareiss
//! elimination, larger ones through sparse row reduction keyed on the
//! leading column.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::SparseMatrix;

/// Matrices with `rows * cols` at or below this go through dense Bareiss.
pub const DENSE_THRESHOLD: usize = 48 * 48;

trait ExactInt: Clone + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn gcd(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
}

impl ExactInt for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_unit(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
}

type Row<T> = Vec<(usize, T)>;

pub(super) fn rank(m: &SparseMatrix) -> usize {
    if m.is_zero() {
        return 0;
    }
    let rows = m.integer_rows();
    let small: Option<Vec<Row<i64>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|(c, v)| v.to_i64().map(|v| (*c, v)))
                .collect()
        })
        .collect();
    let dense = m.rows() * m.cols() <= DENSE_THRESHOLD;
    if let Some(small) = small {
        let attempt = if dense {
            bareiss_rank(&densify(&small, m.cols()))
        } else {
            sparse_rank(small, m.cols())
        };
        if let Some(r) = attempt {
            return r;
        }
    }
    let attempt = if dense {
        bareiss_rank(&densify(&rows, m.cols()))
    } else {
        sparse_rank(rows, m.cols())
    };
    attempt.expect("BigInt elimination cannot overflow")
}

fn densify<T: ExactInt>(rows: &[Row<T>], cols: usize) -> Vec<Vec<T>> {
    rows.iter()
        .map(|row| {
            let mut dense = vec![T::zero(); cols];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            dense
        })
        .collect()
}

/// Bareiss fraction-free echelon form. `None` on overflow.
fn bareiss_rank<T: ExactInt>(matrix: &[Vec<T>]) -> Option<usize> {
    let mut a: Vec<Vec<T>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pivot_row);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_line = &top[r];
        let pivot = pivot_line[c].clone();
        for line in rest.iter_mut() {
            let lead = line[c].clone();
            for j in c + 1..cols {
                let value = pivot.mul(&line[j])?.sub(&lead.mul(&pivot_line[j])?)?;
                line[j] = match &prev {
                    Some(p) => value.div_exact(p),
                    None => value,
                };
            }
            line[c] = T::zero();
        }
        prev = Some(pivot);
        r += 1;
    }
    Some(r)
}

fn primitive<T: ExactInt>(row: &mut Row<T>) {
    let Some(first) = row.first() else { return };
    if first.1.is_unit() && row.len() == 1 {
        return;
    }
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            break;
        }
        g = g.gcd(v);
    }
    if g.is_negative() {
        g = g.neg();
    }
    if !g.is_unit() && !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `pivot_lead * row - row_lead * pivot`, cancelling the shared leading column.
fn eliminate<T: ExactInt>(row: &Row<T>, pivot: &Row<T>) -> Option<Row<T>> {
    let row_lead = &row[0].1;
    let pivot_lead = &pivot[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, pivot_lead.mul(&row[i].1)?));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, T::zero().sub(&row_lead.mul(&pivot[j].1)?)?));
            j += 1;
        } else {
            let v = pivot_lead
                .mul(&row[i].1)?
                .sub(&row_lead.mul(&pivot[j].1)?)?;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    primitive(&mut out);
    Some(out)
}

/// Sparse row reduction: each row is reduced against the stored pivot rows
/// by its leading column until it is zero or opens a new pivot.
fn sparse_rank<T: ExactInt>(mut rows: Vec<Row<T>>, cols: usize) -> Option<usize> {
    rows.sort_by_key(Vec::len);
    let mut pivots: HashMap<usize, Row<T>> = HashMap::with_capacity(cols.min(rows.len()));
    for mut row in rows {
        primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(pivot) => row = eliminate(&row, pivot)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}
