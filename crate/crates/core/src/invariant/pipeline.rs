//! Common invariant subspaces of a fixed dimension via compounds.

use log::debug;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::compound::{compound, contraction, wedge, CompoundIndex};
use super::eigen::common_eigenvectors;
use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldKind};
use crate::linalg::{Matrix, Subspace};

pub const DEFAULT_SHIFT_TRIES: usize = 64;

/// The `i`-th element of a fixed enumeration of the field: `0, 1, 2, ..` in
/// characteristic zero, residues in ascending order for `F_p`, and base-`p`
/// digit vectors for finite extensions. `None` once a finite field is
/// exhausted.
pub fn nth_element(field: &Field, i: usize) -> Option<Elem> {
    if !field.is_finite() {
        return Some(field.from_int(i as i64));
    }
    let order = field.order().expect("finite");
    if BigUint::from(i) >= order {
        return None;
    }
    match field.kind() {
        FieldKind::Prime(_) => Some(field.from_int(i as i64)),
        _ => {
            let base = field.base().expect("extension");
            let base_order = base.order().expect("finite").to_usize().unwrap_or(usize::MAX);
            let mut rest = i;
            let coeffs: Vec<Elem> = (0..field.degree())
                .map(|_| {
                    let digit = rest % base_order;
                    rest /= base_order;
                    nth_element(base, digit).expect("digit below base order")
                })
                .collect();
            Some(field.from_base_coeffs(&coeffs))
        }
    }
}

/// Smallest `s` in the [`nth_element`] enumeration for which the `k`-th
/// compound of `A + sI` has a squarefree characteristic polynomial and both
/// `A + sI`, `B + sI` are invertible (equivalently their compounds are).
pub fn find_shift(a: &Matrix, b: &Matrix, k: usize, max_tries: usize) -> Result<Elem> {
    let n = a.require_square()?;
    CompoundIndex::new(n, k)?;
    let field = a.field();
    let mut tries = 0;
    for i in 0..max_tries {
        let Some(s) = nth_element(field, i) else { break };
        tries += 1;
        let sa = a.shifted(&s);
        let sb = b.shifted(&s);
        if field.is_zero(&sa.det()?) || field.is_zero(&sb.det()?) {
            continue;
        }
        if compound(&sa, k)?.charpoly()?.is_squarefree() {
            return Ok(s);
        }
    }
    Err(Error::ShiftExhausted { tries })
}

/// Recovers `W` from a decomposable `u = w_1 ^ .. ^ w_k`; `None` when `u`
/// is not decomposable.
///
/// With `T` the lexicographically first subset where `u` is nonzero, the
/// contractions of `u` by `T \ {t}` restrict to `±u_T e_t` on `T` and
/// vanish on earlier coordinates, so after scaling they form the canonical
/// basis of `W` with pivots `T`. `u` is decomposable iff every other
/// contraction lies in their span, which is checked without inversions.
pub fn decompose_wedge(field: &Field, u: &[Elem], idx: &CompoundIndex) -> Result<Option<Subspace>> {
    if u.len() != idx.len() {
        return Err(Error::SizeMismatch(format!("wedge of length {} for {} subsets", u.len(), idx.len())));
    }
    let (n, k) = (idx.n(), idx.k());
    let Some(first) = u.iter().position(|x| !field.is_zero(x)) else {
        return Err(Error::ZeroVector);
    };
    if k == n {
        return Ok(Some(Subspace::full(field, n)));
    }
    if k == 1 {
        return Ok(Some(Subspace::span(field, n, &[u.to_vec()])));
    }
    let t = &idx.subsets()[first];
    let ut = &u[first];
    let columns: Vec<Vec<Elem>> = (0..k)
        .map(|j| {
            let rest: Vec<usize> = t.iter().copied().filter(|&x| x != t[j]).collect();
            contraction(field, u, idx, &rest)
        })
        .collect();
    // v is in the span iff u_T v = sum_j v[t_j] c_j / (±1), the sign being
    // the one carried by c_j at t_j
    let signs: Vec<bool> = (0..k).map(|j| j % 2 == 1).collect();
    let in_span = |v: &[Elem]| {
        (0..n).all(|i| {
            let mut acc = field.zero();
            for j in 0..k {
                let (vt, c) = (&v[t[j]], &columns[j][i]);
                if field.is_zero(vt) || field.is_zero(c) {
                    continue;
                }
                let term = field.mul(vt, c);
                acc = if signs[j] { field.sub(&acc, &term) } else { field.add(&acc, &term) };
            }
            acc == field.mul(ut, &v[i])
        })
    };
    let down = CompoundIndex::new(n, k - 1)?;
    for s in down.subsets() {
        if s.iter().all(|x| t.contains(x)) {
            continue;
        }
        if !in_span(&contraction(field, u, idx, s)) {
            return Ok(None);
        }
    }
    let inv = field.inv(ut)?;
    let mut basis = Matrix::zeros(field, n, k);
    for (j, c) in columns.iter().enumerate() {
        let scale = if signs[j] { field.neg(&inv) } else { inv.clone() };
        for (i, x) in c.iter().enumerate() {
            if !field.is_zero(x) {
                basis.set(i, j, field.mul(x, &scale));
            }
        }
    }
    Ok(Some(Subspace::from_canonical_basis(basis)))
}

/// One common invariant subspace, over the field it is defined over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub field: Field,
    /// Plücker coordinates of `subspace`, up to a nonzero scalar.
    pub wedge: Vec<Elem>,
    pub subspace: Subspace,
    /// `B W ⊆ W` was re-checked (`A W ⊆ W` as well); always true for
    /// returned witnesses.
    pub b_invariance_verified: bool,
    /// How many Galois-conjugate subspaces this witness stands for.
    pub conjugates: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonSubspaceResult {
    pub k: usize,
    /// Shift used for the compounds; `None` for `k = 1` and `k = n - 1`,
    /// which are handled directly. Over `Q` the pair is first scaled to
    /// integer entries and the shift refers to the scaled pair.
    pub shift: Option<Elem>,
    pub witnesses: Vec<Witness>,
}

/// Over `Q`, scales both matrices by the lcm of their denominators. Scaling
/// keeps every invariant subspace, and integral matrices give integral
/// characteristic polynomials, which keeps extension arithmetic cheap.
fn clear_denominators(a: &Matrix, b: &Matrix) -> (Matrix, Matrix) {
    let field = a.field();
    if !field.is_rational() {
        return (a.clone(), b.clone());
    }
    let mut den = BigInt::one();
    for m in [a, b] {
        for row in m.to_rows() {
            for x in row {
                if let Elem::Rat(r) = x {
                    den = den.lcm(r.denom());
                }
            }
        }
    }
    if den.is_one() {
        return (a.clone(), b.clone());
    }
    let c = field.from_bigint(&den);
    (a.scale(&c), b.scale(&c))
}

fn verified(a: &Matrix, b: &Matrix, field: &Field, w: &Subspace) -> Result<bool> {
    Ok(w.is_invariant_under(&a.embed(field)?)? && w.is_invariant_under(&b.embed(field)?)?)
}

fn witness(a: &Matrix, b: &Matrix, field: Field, wedge: Vec<Elem>, w: Subspace, conjugates: usize) -> Result<Witness> {
    if !verified(a, b, &field, &w)? {
        return Err(Error::Inconsistent(format!(
            "recovered subspace of dimension {} is not invariant",
            w.dim()
        )));
    }
    Ok(Witness { field, wedge, subspace: w, b_invariance_verified: true, conjugates })
}

fn conjugates_of(degree: usize, listed: usize) -> usize {
    if listed > 1 {
        1
    } else {
        degree
    }
}

/// All common invariant subspaces of dimension `k` (up to Galois
/// conjugacy), each re-verified.
pub fn common_invariant_subspace(a: &Matrix, b: &Matrix, k: usize) -> Result<CommonSubspaceResult> {
    common_invariant_subspace_with(a, b, k, DEFAULT_SHIFT_TRIES)
}

pub fn common_invariant_subspace_with(
    a: &Matrix,
    b: &Matrix,
    k: usize,
    max_tries: usize,
) -> Result<CommonSubspaceResult> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    if k == 0 || k >= n {
        return Err(Error::BadK { k, n });
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (a, b) = clear_denominators(a, b);
    let (a, b) = (&a, &b);
    let mut witnesses = Vec::new();
    if k == 1 {
        for ce in common_eigenvectors(a, b)? {
            let listed = ce.embeddings.len();
            let degree = ce.factor.degree().unwrap_or(1);
            for e in ce.embeddings {
                let w = Subspace::span(&ce.field, n, std::slice::from_ref(&e.vector));
                witnesses.push(witness(a, b, ce.field.clone(), e.vector, w, conjugates_of(degree, listed))?);
            }
        }
        return Ok(CommonSubspaceResult { k, shift: None, witnesses });
    }
    if k == n - 1 {
        // a common eigenvector u of the transposes gives the common
        // invariant hyperplane u^perp
        for ce in common_eigenvectors(&a.transpose(), &b.transpose())? {
            let listed = ce.embeddings.len();
            let degree = ce.factor.degree().unwrap_or(1);
            for e in ce.embeddings {
                let row = Matrix::from_rows(ce.field.clone(), vec![e.vector])?;
                let w = row.kernel();
                let plucker = wedge(w.basis())?;
                witnesses.push(witness(a, b, ce.field.clone(), plucker, w, conjugates_of(degree, listed))?);
            }
        }
        return Ok(CommonSubspaceResult { k, shift: None, witnesses });
    }

    let s = find_shift(a, b, k, max_tries)?;
    debug!("k = {k}: shift {}", a.field().format(&s));
    let ca = compound(&a.shifted(&s), k)?;
    let cb = compound(&b.shifted(&s), k)?;
    let idx = CompoundIndex::new(n, k)?;
    for ce in common_eigenvectors(&ca, &cb)? {
        let listed = ce.embeddings.len();
        let degree = ce.factor.degree().unwrap_or(1);
        let (cal, cbl) = (ca.embed(&ce.field)?, cb.embed(&ce.field)?);
        for e in ce.embeddings {
            let l = &ce.field;
            let ok_a = cal.mul_vec(&e.vector) == e.vector.iter().map(|x| l.mul(&e.eigenvalue_a, x)).collect::<Vec<_>>();
            let ok_b = cbl.mul_vec(&e.vector) == e.vector.iter().map(|x| l.mul(&e.eigenvalue_b, x)).collect::<Vec<_>>();
            if !ok_a || !ok_b {
                return Err(Error::Inconsistent("compound eigenvector failed re-check".into()));
            }
            let Some(w) = decompose_wedge(l, &e.vector, &idx)? else {
                debug!("k = {k}: common eigenvector of the compounds is not decomposable");
                continue;
            };
            witnesses.push(witness(a, b, l.clone(), e.vector, w, conjugates_of(degree, listed))?);
        }
    }
    Ok(CommonSubspaceResult { k, shift: Some(s), witnesses })
}

/// Outcome of the commutator-kernel test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShemeshResult {
    pub subspace: Subspace,
    pub kernels_computed: usize,
    /// Positive characteristic: a nonzero intersection is only evidence,
    /// not a proof, of a common eigenvector.
    pub heuristic: bool,
}

/// Intersection of `ker [A^p, B^q]` over `1 <= p, q <= n - 1`.
pub fn shemesh_intersection(a: &Matrix, b: &Matrix) -> Result<ShemeshResult> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    let mut a_pows = vec![a.clone()];
    let mut b_pows = vec![b.clone()];
    for _ in 2..n {
        let next_a = &a_pows[a_pows.len() - 1] * a;
        let next_b = &b_pows[b_pows.len() - 1] * b;
        a_pows.push(next_a);
        b_pows.push(next_b);
    }
    let mut kernels = Vec::new();
    for ap in &a_pows {
        for bq in &b_pows {
            kernels.push(Matrix::commutator(ap, bq).kernel());
        }
    }
    let kernels_computed = kernels.len();
    let subspace = if kernels.is_empty() { Subspace::full(field, n) } else { Subspace::intersect(&kernels)? };
    Ok(ShemeshResult { subspace, kernels_computed, heuristic: field.characteristic() != 0 })
}

/// Dimension over `K` (the field of `A`) of `{B in M_n(K) : B Pi ⊆ Pi}` for
/// an `A`-invariant subspace `Pi` over an extension `L`.
pub fn invariant_dim(a: &Matrix, pi: &Subspace) -> Result<usize> {
    let n = a.require_square()?;
    if pi.ambient_dim() != n {
        return Err(Error::AmbientMismatch);
    }
    let k = a.field();
    let l = pi.field();
    if !pi.is_invariant_under(&a.embed(l)?)? {
        return Err(Error::NotInvariant);
    }
    let p = pi.basis();
    let q = pi.annihilator();
    // (Q B P)_{ij} = sum_{r,s} Q_{ir} P_{sj} b_{rs}, one L-linear equation
    // per (i, j), split into [L:K] equations over K
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for i in 0..q.rows() {
        for j in 0..p.cols() {
            let coeffs: Vec<Vec<Elem>> = (0..n * n)
                .map(|rs| l.coords_over(k, &l.mul(q.get(i, rs / n), p.get(rs % n, j))))
                .collect::<Result<_>>()?;
            let width = coeffs.first().map_or(0, Vec::len);
            for t in 0..width {
                rows.push(coeffs.iter().map(|c| c[t].clone()).collect());
            }
        }
    }
    if rows.is_empty() {
        return Ok(n * n);
    }
    Ok(Matrix::from_rows(k.clone(), rows)?.kernel().dim())
}

/// Dimension of `{B : B u ∥ u}` for `u` an eigenvector of `A` attached to
/// the simple irreducible factor `f` of `chi_A`.
pub fn colinearity_space_dim(a: &Matrix, f: &crate::fields::Poly) -> Result<usize> {
    a.require_square()?;
    let chi = a.charpoly()?;
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0
        || !f.divides(&chi)
        || f.pow(2).divides(&chi)
        || !crate::factor::is_irreducible(&f)?
    {
        return Err(Error::NotAFactor);
    }
    let (l, roots) = super::eigen::adjoin_root(&f)?;
    let al = a.embed(&l)?;
    let u = al.shifted(&l.neg(&roots[0])).kernel();
    // f is simple, so the eigenspace is a line
    invariant_dim(a, &u)
}

/// Bounded search for a word `w` in `A, B` with `w (AB - BA)` not
/// nilpotent; such a word certifies that the pair is not simultaneously
/// triangularizable. `None` proves nothing.
pub fn mccoy_falsify(a: &Matrix, b: &Matrix, max_len: usize) -> Result<Option<String>> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    let c = Matrix::commutator(a, b);
    if c.is_zero() {
        return Ok(None);
    }
    let mut level = vec![(String::new(), Matrix::identity(a.field(), n))];
    for len in 0..=max_len {
        for (word, w) in &level {
            if !(w * &c).pow(n).is_zero() {
                return Ok(Some(if word.is_empty() { "1".into() } else { word.clone() }));
            }
        }
        if len == max_len {
            break;
        }
        level = level
            .iter()
            .flat_map(|(word, w)| {
                [(format!("{word}A"), w * a), (format!("{word}B"), w * b)]
            })
            .collect();
    }
    Ok(None)
}
