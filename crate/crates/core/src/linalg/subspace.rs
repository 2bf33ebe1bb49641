use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

use super::Matrix;

/// A subspace of `F^n`, stored as an `n x k` basis matrix in canonical
/// column echelon form (the transpose of the RREF of the spanning rows).
/// Two subspaces are equal exactly when their bases are equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the given vectors, each of length `n`.
    pub fn span(field: &Field, n: usize, vectors: &[Vec<Elem>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, n);
        }
        let rows = Matrix::from_rows(field.clone(), vectors.to_vec()).expect("equal lengths");
        assert_eq!(rows.cols(), n);
        let (r, pivots) = rows.rref();
        let kept: Vec<usize> = (0..pivots.len()).collect();
        let all: Vec<usize> = (0..n).collect();
        Subspace { basis: r.submatrix(&kept, &all).transpose() }
    }

    /// Wraps a basis the caller guarantees to be in canonical form already.
    pub(crate) fn from_canonical_basis(basis: Matrix) -> Subspace {
        Subspace { basis }
    }

    /// Column span of a matrix.
    pub fn column_span(m: &Matrix) -> Subspace {
        Subspace::span(m.field(), m.rows(), &m.columns())
    }

    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, n, 0) }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, n) }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// in the subspace. Reads them off the echelon pivots, so no field
    /// inversions are needed.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let f = self.field();
        let n = self.ambient_dim();
        assert_eq!(v.len(), n);
        let coords: Vec<Elem> = (0..self.dim()).map(|j| v[self.pivot(j)].clone()).collect();
        for (i, vi) in v.iter().enumerate() {
            let mut acc = f.zero();
            for (j, c) in coords.iter().enumerate() {
                let b = self.basis.get(i, j);
                if !f.is_zero(b) && !f.is_zero(c) {
                    acc = f.mul_add(&acc, c, b);
                }
            }
            if acc != *vi {
                return None;
            }
        }
        Some(coords)
    }

    /// Row of the leading 1 of basis column `j`.
    fn pivot(&self, j: usize) -> usize {
        let f = self.field();
        (0..self.ambient_dim()).find(|&i| !f.is_zero(self.basis.get(i, j))).expect("nonzero basis column")
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// `M W ⊆ W`, decided exactly.
    pub fn is_invariant_under(&self, m: &Matrix) -> Result<bool> {
        if m.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        if m.cols() != self.ambient_dim() || m.rows() != self.ambient_dim() {
            return Err(Error::AmbientMismatch);
        }
        let image = m * &self.basis;
        Ok(image.columns().iter().all(|v| self.contains(v)))
    }

    /// Rows spanning `{y : y^T w = 0 for all w in W}`; the subspace is the
    /// kernel of this matrix.
    pub fn annihilator(&self) -> Matrix {
        let n = self.ambient_dim();
        let f = self.field();
        let ann = self.basis.transpose().kernel();
        let rows = ann.vectors();
        if rows.is_empty() {
            return Matrix::zeros(f, 0, n);
        }
        Matrix::from_rows(f.clone(), rows).expect("rectangular")
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Subspace::column_span(&self.basis.hstack(&other.basis)))
    }

    /// Intersection of a nonempty list, via one kernel of the stacked
    /// annihilators.
    pub fn intersect(list: &[Subspace]) -> Result<Subspace> {
        let first = list.first().ok_or(Error::AmbientMismatch)?;
        for s in &list[1..] {
            first.compatible(s)?;
        }
        let n = first.ambient_dim();
        let mut stacked = Matrix::zeros(first.field(), 0, n);
        for s in list {
            stacked = stacked.vstack(&s.annihilator());
        }
        if stacked.rows() == 0 {
            return Ok(Subspace::full(first.field(), n));
        }
        Ok(stacked.kernel())
    }

    pub fn embed(&self, to: &Field) -> Result<Subspace> {
        Ok(Subspace::column_span(&self.basis.embed(to)?))
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }
}
