//! Subspace operations against a floating-point oracle.

mod common;

use common::*;
use nalgebra::DMatrix;
use nilpoisson::linalg::quotient_map;
use nilpoisson::{ExactMatrix, GaussRational, Subspace};
use num_complex::Complex64;
use proptest::prelude::*;

fn gauss(re: i64, im: i64) -> GaussRational {
    GaussRational::new(re.into(), im.into())
}

fn vectors(n: usize, entries: &[(i64, i64)], count: usize) -> Vec<Vec<GaussRational>> {
    (0..count).map(|i| (0..n).map(|j| {
        let (re, im) = entries[(i * n + j) % entries.len()];
        gauss(re, im)
    }).collect()).collect()
}

fn float_rank(rows: &[Vec<GaussRational>], n: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    numeric_rank(&ExactMatrix::from_rows(n, rows.to_vec()), 1e-9)
}

fn to_dmatrix(m: &ExactMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let (re, im) = m.get(i, j).to_f64_pair();
        Complex64::new(re, im)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn intersection_dimension_matches_float_ranks(
        n in 2usize..6,
        a in 1usize..4,
        b in 1usize..4,
        entries in prop::collection::vec((-2i64..=2, -1i64..=1), 8..40),
        shift in 0usize..7,
    ) {
        let u = vectors(n, &entries, a);
        let w = vectors(n, &entries[shift % entries.len()..], b);
        let su = Subspace::from_vectors(n, u.clone());
        let sw = Subspace::from_vectors(n, w.clone());
        let (du, dw) = (float_rank(&u, n), float_rank(&w, n));
        let both: Vec<_> = u.iter().chain(&w).cloned().collect();
        let dsum = float_rank(&both, n);
        prop_assert_eq!(su.dim(), du);
        prop_assert_eq!(su.sum(&sw).unwrap().dim(), dsum);
        let cap = su.intersect(&sw).unwrap();
        prop_assert_eq!(cap.dim(), du + dw - dsum);
        for v in cap.basis().row_vecs() {
            prop_assert!(su.contains(&v) && sw.contains(&v));
        }
    }

    #[test]
    fn kernel_is_annihilated_numerically(
        rows in 1usize..5,
        cols in 1usize..6,
        entries in prop::collection::vec((-3i64..=3, -1i64..=1), 30),
    ) {
        let m = ExactMatrix::from_rows(cols, vectors(cols, &entries, rows));
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.dim() + m.rank(), cols);
        prop_assert_eq!(m.rank(), numeric_rank(&m, 1e-9));
        if kernel.dim() > 0 {
            let product = to_dmatrix(&m) * to_dmatrix(&kernel.basis().transpose());
            prop_assert!(product.iter().all(|x| x.norm() < 1e-9));
        }
    }

    #[test]
    fn quotient_dimension_and_projection(
        n in 2usize..6,
        entries in prop::collection::vec((-2i64..=2, -1i64..=1), 12..30),
        k in 1usize..3,
    ) {
        let total = Subspace::full(n);
        let sub = Subspace::from_vectors(n, vectors(n, &entries, k));
        let q = quotient_map(&sub, &total).unwrap();
        prop_assert_eq!(q.dim(), n - sub.dim());
        for v in sub.basis().row_vecs() {
            prop_assert!(q.project(&v).iter().all(GaussRational::is_zero));
        }
    }
}

#[test]
fn inverse_matches_float_inverse() {
    let m = ExactMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 1], &[0, 3, 1]]);
    let inv = m.inverse().unwrap();
    let product = to_dmatrix(&m) * to_dmatrix(&inv);
    assert!((product - DMatrix::<Complex64>::identity(3, 3)).iter().all(|x| x.norm() < 1e-12));
}
