#![allow(dead_code)]

use nilgeo::scalar::rat;
use nilgeo::{RatMatrix, Rational};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

pub fn rvec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(rational(), n)
}

pub fn rmatrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(rational(), rows * cols).prop_map(move |d| RatMatrix::new(rows, cols, d).unwrap())
}

/// Small matrices that are often rank deficient.
pub fn sparse_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(prop_oneof![3 => Just(rat(0, 1)), 2 => rational()], rows * cols)
        .prop_map(move |d| RatMatrix::new(rows, cols, d).unwrap())
}

pub fn invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    rmatrix(n, n).prop_filter("singular", |m| m.inverse().is_some())
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

/// Invertible matrices with entries in {-1, 0, 1}.
pub fn small_invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-1i64..=1, n * n)
        .prop_map(move |d| RatMatrix::new(n, n, d.into_iter().map(|x| rat(x, 1)).collect()).unwrap())
        .prop_filter("singular", |m| m.inverse().is_some())
}
