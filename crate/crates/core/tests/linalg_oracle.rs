//! Exact rank against plain rational Gaussian elimination.

mod common;

use common::gauss_rank;
use koszul::{build_perm, Rational, SparseMatrix};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dense(m: &SparseMatrix) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64; m.cols()]; m.rows()];
    for (i, j, v) in m.iter() {
        assert!(v.is_integer());
        out[i][j] = v.numerator().try_into().unwrap();
    }
    out
}

fn random_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    density: f64,
    range: i64,
) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    if rng.gen_bool(density) {
                        rng.gen_range(-range..=range)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn random_sign_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=30);
        let cols = rng.gen_range(1..=30);
        let m = random_matrix(&mut rng, rows, cols, 0.5, 1);
        assert_eq!(SparseMatrix::from_dense(&m).rank(), gauss_rank(&m), "{m:?}");
    }
}

#[test]
fn large_sparse_matrices() {
    // Above the dense threshold, so the sparse elimination path runs.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let rows = rng.gen_range(50..=90);
        let cols = rng.gen_range(50..=90);
        let mut m = random_matrix(&mut rng, rows, cols, 0.05, 2);
        // Force dependencies: copy combinations of earlier rows.
        for i in (rows / 2)..rows {
            if rng.gen_bool(0.5) {
                let (a, b) = (rng.gen_range(0..rows / 2), rng.gen_range(0..rows / 2));
                m[i] = (0..cols).map(|j| 2 * m[a][j] - 3 * m[b][j]).collect();
            }
        }
        assert_eq!(SparseMatrix::from_dense(&m).rank(), gauss_rank(&m));
    }
}

#[test]
fn huge_entries_fall_back_to_big_integers() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let n = rng.gen_range(4..=12);
        let m = random_matrix(&mut rng, n, n, 0.9, 4_000_000_000_000_000);
        assert_eq!(SparseMatrix::from_dense(&m).rank(), gauss_rank(&m));
    }
    // A nearly singular pair whose determinant needs more than 64 bits.
    let big = i64::MAX / 3;
    let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
    assert_eq!(SparseMatrix::from_dense(&m).rank(), 2);
    assert_eq!(gauss_rank(&m), 2);
}

#[test]
fn permutohedron_differentials() {
    for n in 2..=5 {
        let p = build_perm(n).unwrap();
        for r in p.complex().degrees() {
            let d = p.complex().differential(r);
            assert_eq!(d.rank(), gauss_rank(&dense(&d)), "n = {n}, r = {r}");
        }
    }
}

#[test]
fn fractional_entries() {
    let m = SparseMatrix::from_entries(
        2,
        2,
        vec![
            (0, 0, Rational::new(1, 3).unwrap()),
            (0, 1, Rational::new(1, 2).unwrap()),
            (1, 0, Rational::new(2, 3).unwrap()),
            (1, 1, Rational::one()),
        ],
    )
    .unwrap();
    assert_eq!(m.rank(), 1);
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..12, 1usize..12)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #[test]
    fn rank_matches_oracle(m in small_matrix()) {
        prop_assert_eq!(SparseMatrix::from_dense(&m).rank(), gauss_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in small_matrix()) {
        let a = SparseMatrix::from_dense(&m);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        prop_assert!(a.rank() <= a.rows().min(a.cols()));
        prop_assert_eq!(a.kernel_dim(), a.cols() - a.rank());
    }

    #[test]
    fn rank_of_product(a in small_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cols = rng.gen_range(1..10);
        let b = random_matrix(&mut rng, a[0].len(), cols, 0.6, 2);
        let (sa, sb) = (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&b));
        let ab = sa.multiply(&sb).unwrap();
        prop_assert!(ab.rank() <= sa.rank().min(sb.rank()));
        prop_assert_eq!(ab.rank(), gauss_rank(&dense(&ab)));
    }
}
