use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field};
use crate::linalg::Matrix;

/// Lexicographically ordered `k`-subsets of `{0, .., n-1}` indexing the rows
/// and columns of a `k`-th compound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompoundIndex {
    n: usize,
    k: usize,
    subsets: Vec<Vec<usize>>,
}

impl CompoundIndex {
    pub fn new(n: usize, k: usize) -> Result<CompoundIndex> {
        if k == 0 || k > n {
            return Err(Error::BadK { k, n });
        }
        Ok(CompoundIndex { n, k, subsets: (0..n).combinations(k).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Position of a sorted subset.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.subsets.binary_search_by(|s| s.as_slice().cmp(subset)).ok()
    }
}

/// The `k`-th compound: the matrix of all `k x k` minors.
pub fn compound(m: &Matrix, k: usize) -> Result<Matrix> {
    let n = m.require_square()?;
    let idx = CompoundIndex::new(n, k)?;
    let field = m.field();
    let size = idx.len();
    let mut out = Matrix::zeros(field, size, size);
    for (i, rows) in idx.subsets().iter().enumerate() {
        for (j, cols) in idx.subsets().iter().enumerate() {
            out.set(i, j, m.submatrix(rows, cols).det()?);
        }
    }
    Ok(out)
}

/// Plücker coordinates of the columns of an `n x k` matrix: its maximal
/// minors in [`CompoundIndex`] order.
pub fn wedge(basis: &Matrix) -> Result<Vec<Elem>> {
    let (n, k) = (basis.rows(), basis.cols());
    let idx = CompoundIndex::new(n, k)?;
    let cols: Vec<usize> = (0..k).collect();
    idx.subsets().iter().map(|rows| basis.submatrix(rows, &cols).det()).collect()
}

/// Contraction of `u` against `e_S^*` for a `(k-1)`-subset `S`: the vector
/// with entry `±u[S ∪ {i}]` at each `i ∉ S`. When `u` is decomposable these
/// vectors span the subspace it represents; otherwise they span more.
pub(crate) fn contraction(field: &Field, u: &[Elem], idx: &CompoundIndex, s: &[usize]) -> Vec<Elem> {
    let mut v = vec![field.zero(); idx.n()];
    for (i, slot) in v.iter_mut().enumerate() {
        if s.contains(&i) {
            continue;
        }
        let mut t = s.to_vec();
        let pos = t.partition_point(|&j| j < i);
        t.insert(pos, i);
        let c = &u[idx.position(&t).expect("k-subset")];
        // moving e_i into place past the `pos` smaller indices
        *slot = if pos % 2 == 0 { c.clone() } else { field.neg(c) };
    }
    v
}
