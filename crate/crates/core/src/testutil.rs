//! Shared fixtures for unit tests.

use rand::Rng;

use crate::fields::{Elem, Field, Poly};
use crate::linalg::Matrix;

pub(crate) fn cyclotomic_a(f: &Field) -> Matrix {
    Matrix::from_ints(f, &[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]])
}

pub(crate) fn cyclotomic_b(f: &Field) -> Matrix {
    Matrix::from_ints(f, &[&[0, -1, 0, 2], &[-1, -1, 1, 1], &[0, 0, 0, 1], &[1, 0, 0, 0]])
}

/// `K(sqrt 5)` with its generator.
pub(crate) fn sqrt5_field(k: &Field) -> (Field, Elem) {
    let l = Field::extension(k, &Poly::from_ints(k, &[-5, 0, 1]), "s").unwrap();
    let s = l.generator().unwrap();
    (l, s)
}

pub(crate) fn random_matrix<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
    Matrix::from_rows(f.clone(), rows).unwrap()
}

pub(crate) fn random_int_matrix<R: Rng>(f: &Field, n: usize, h: i64, rng: &mut R) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| f.from_int(rng.gen_range(-h..=h))).collect()).collect();
    Matrix::from_rows(f.clone(), rows).unwrap()
}
