//! Simultaneous triangularization when `A` has `n` distinct eigenvalues in
//! a known field `L`.
//!
//! In an eigenbasis `R` of `A`, the pair is triangularizable iff some
//! ordering of the eigenvectors makes `Z = R^-1 B R` upper triangular. Such
//! an ordering exists iff the relation "`z[j][i] != 0` forces `j` before
//! `i`" is acyclic, and it is found greedily: each round takes the lowest
//! remaining index whose column has no nonzero off-diagonal entry in a
//! remaining row.

use log::debug;

use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::fields::{Field, FieldKind, Poly};
use crate::invariant::{adjoin_root, Krylov};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StStatus {
    ST,
    NotST,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StResult {
    pub status: StStatus,
    pub field: Field,
    /// Column order `d_1, .., d_n` (0-based) of the eigenbasis; present iff
    /// ST.
    pub permutation: Option<Vec<usize>>,
    /// `S` with `S^-1 A S` diagonal and `S^-1 B S` upper triangular.
    pub s: Option<Matrix>,
    /// Selection rounds performed by the greedy.
    pub rounds: usize,
}

/// Columns are eigenvectors of `A` over `L`, in the order the roots come
/// out of the factorization of `chi_A` over `L`.
pub fn eigenbasis(a: &Matrix, l: &Field) -> Result<Matrix> {
    let n = a.require_square()?;
    if !l.contains_field(a.field()) {
        return Err(Error::FieldMismatch);
    }
    let chi = a.charpoly()?;
    let fac = factor(&chi.embed(l)?)?;
    if fac.factors.iter().any(|(_, m)| *m > 1) {
        return Err(Error::RepeatedEigenvalues);
    }
    if fac.factors.iter().any(|(g, _)| g.degree() != Some(1)) {
        return Err(Error::DoesNotSplit);
    }
    let kry = Krylov::new(a)?;
    let columns = fac
        .irreducibles()
        .map(|g| kry.eigenvector(&l.neg(&g.coeff(0)), l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(l, n, &columns))
}

/// An irreducible polynomial of degree `m` over `F_p`, first in the order
/// of increasing coefficient vectors.
fn irreducible_of_degree(fp: &Field, m: usize) -> Result<Poly> {
    let p = fp.characteristic();
    let total = p.checked_pow(m as u32).ok_or(Error::DegreeTooLarge { degree: m, cap: 16 })?;
    for code in 0..total {
        let mut c = code;
        let mut coeffs: Vec<i64> = (0..m)
            .map(|_| {
                let d = (c % p) as i64;
                c /= p;
                d
            })
            .collect();
        coeffs.push(1);
        let f = Poly::from_ints(fp, &coeffs);
        if is_irreducible(&f)? {
            return Ok(f);
        }
    }
    Err(Error::Inconsistent(format!("no irreducible polynomial of degree {m} over {fp}")))
}

/// A field over which `chi_A` splits: `K` itself, `F_{p^m}` for `K = F_p`,
/// or `K(theta)` for a root `theta` of the largest factor when `K = Q`.
pub fn splitting_field(a: &Matrix) -> Result<Field> {
    let k = a.field();
    let chi = a.charpoly()?;
    let fac = factor(&chi)?;
    if fac.factors.iter().any(|(_, m)| *m > 1) {
        return Err(Error::RepeatedEigenvalues);
    }
    let degrees = fac.degrees();
    if degrees.iter().all(|&d| d == 1) {
        return Ok(k.clone());
    }
    match k.kind() {
        FieldKind::Prime(_) => {
            let m = degrees.iter().fold(1usize, |acc, &d| num_integer::lcm(acc, d));
            let g = irreducible_of_degree(k, m)?;
            Ok(Field::extension_unchecked(k, g, "t"))
        }
        FieldKind::Rational => {
            let biggest = fac
                .irreducibles()
                .max_by_key(|g| g.degree())
                .expect("nonconstant");
            let (l, _) = adjoin_root(biggest)?;
            let over_l = factor(&chi.embed(&l)?)?;
            if over_l.degrees().iter().all(|&d| d == 1) {
                Ok(l)
            } else {
                Err(Error::DoesNotSplit)
            }
        }
        FieldKind::Extension(_) => Err(Error::DoesNotSplit),
    }
}

/// Decides whether `(A, B)` is simultaneously triangularizable over `L`
/// (built automatically when `None`).
pub fn st_check(a: &Matrix, b: &Matrix, l: Option<&Field>) -> Result<StResult> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    let l = match l {
        Some(l) => l.clone(),
        None => splitting_field(a)?,
    };
    let r = eigenbasis(a, &l)?;
    let bl = b.embed(&l)?;
    let z = &(&r.inverse()? * &bl) * &r;

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    let mut rounds = 0;
    while !remaining.is_empty() {
        rounds += 1;
        let pending = |i: usize| remaining.iter().filter(|&&j| j != i && !l.is_zero(z.get(j, i))).count();
        let (pos, best) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, pending(i)))
            .min_by_key(|&(pos, p)| (p, pos))
            .expect("nonempty");
        if best > 0 {
            debug!("greedy stopped after {rounds} rounds");
            return Ok(StResult { status: StStatus::NotST, field: l, permutation: None, s: None, rounds });
        }
        order.push(remaining.remove(pos));
    }

    let s = Matrix::from_columns(&l, n, &order.iter().map(|&i| r.column(i)).collect::<Vec<_>>());
    let s_inv = s.inverse()?;
    let da = &(&s_inv * &a.embed(&l)?) * &s;
    let tb = &(&s_inv * &bl) * &s;
    if !da.is_diagonal() || !tb.is_upper_triangular() {
        debug!("certificate failed verification; reporting NotST");
        return Ok(StResult { status: StStatus::NotST, field: l, permutation: None, s: None, rounds });
    }
    Ok(StResult { status: StStatus::ST, field: l, permutation: Some(order), s: Some(s), rounds })
}

/// Exhaustive check over all column orders of an eigenbasis; exponential,
/// meant as a cross-check for small `n`.
pub fn st_brute_force(a: &Matrix, b: &Matrix, l: &Field) -> Result<bool> {
    use itertools::Itertools;
    let n = a.require_square()?;
    let r = eigenbasis(a, l)?;
    let z = &(&r.inverse()? * &b.embed(l)?) * &r;
    Ok((0..n).permutations(n).any(|perm| {
        (0..n).all(|i| (0..i).all(|j| l.is_zero(z.get(perm[i], perm[j]))))
    }))
}
