//! Seeded random generators for field elements, series, and matrices.
//!
//! These exist for the randomized checkers, the property suites, and the
//! benchmarks; production paths are deterministic.

use rand::Rng;

use crate::field::{FieldElement, FiniteField};
use crate::series::LaurentSeries;
use crate::unipotent::UnipotentMatrix;

pub fn random_element<R: Rng>(field: &FiniteField, rng: &mut R) -> FieldElement {
    field.element_from_index(rng.random_range(0..field.order()))
}

pub fn random_nonzero_element<R: Rng>(field: &FiniteField, rng: &mut R) -> FieldElement {
    field.element_from_index(rng.random_range(1..field.order()))
}

/// A series with random coefficients on `min_val ..= prec`. The result may
/// have a larger valuation if the low coefficients come up zero.
pub fn random_series<R: Rng>(
    field: &FiniteField,
    rng: &mut R,
    min_val: i64,
    prec: i64,
) -> LaurentSeries {
    if prec < min_val {
        return LaurentSeries::zero(field, prec);
    }
    let coeffs = (min_val..=prec)
        .map(|_| random_element(field, rng))
        .collect();
    LaurentSeries::from_coeffs(field, min_val, prec, coeffs)
        .expect("generated coefficient window is consistent")
}

/// A series with valuation at least 1 (a "tail"), random up to prec.
pub fn random_tail<R: Rng>(field: &FiniteField, rng: &mut R, prec: i64) -> LaurentSeries {
    random_series(field, rng, 1, prec)
}

pub fn random_matrix_fq<R: Rng>(
    n: usize,
    field: &FiniteField,
    rng: &mut R,
) -> UnipotentMatrix<FieldElement> {
    let entries = (0..n * (n - 1) / 2)
        .map(|_| random_element(field, rng))
        .collect();
    UnipotentMatrix::new(n, entries).expect("entry count matches n")
}

/// A unipotent matrix of series whose entries have poles of order at most
/// `max_pole` and the given precision.
pub fn random_matrix_series<R: Rng>(
    n: usize,
    field: &FiniteField,
    rng: &mut R,
    max_pole: i64,
    prec: i64,
) -> UnipotentMatrix<LaurentSeries> {
    let entries = (0..n * (n - 1) / 2)
        .map(|_| {
            let val = rng.random_range(-max_pole..=1);
            random_series(field, rng, val, prec)
        })
        .collect();
    UnipotentMatrix::new(n, entries).expect("entry count matches n")
}
