//! Eigenvectors over simple extensions, computed without solving linear
//! systems over the extension.
//!
//! With `w` a cyclic vector of `M` (characteristic polynomial `chi`,
//! squarefree) and `K_j = M^j w`, the vector `(chi / (x - a))(M) w` is an
//! eigenvector for the root `a`; it only needs the Krylov vectors over `K`
//! and one synthetic division over `L`. The same Krylov data gives
//! `ker g(M) = { (h * chi/g)(M) w }` for each factor `g`, which lets us
//! decide existence of a common eigenvector entirely over `K`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::fields::{split_square, Elem, Field, FieldKind, Poly};
use crate::linalg::{Matrix, Subspace};

/// A field containing roots of the irreducible `f`, together with the
/// roots that are worth listing separately. Quadratics (outside
/// characteristic 2) are normalised to `K(sqrt(D))` and both roots are
/// listed; higher degrees give `K[y]/(f)` with the single root `y`, which
/// stands for its whole conjugacy class.
pub fn adjoin_root(f: &Poly) -> Result<(Field, Vec<Elem>)> {
    let k = f.field();
    let f = f.monic();
    match f.degree() {
        None | Some(0) => Err(Error::NotIrreducible),
        Some(1) => Ok((k.clone(), vec![k.neg(&f.coeff(0))])),
        Some(2) if k.characteristic() != 2 => {
            let (b, c) = (f.coeff(1), f.coeff(0));
            let disc = k.sub(&k.mul(&b, &b), &k.mul(&k.from_int(4), &c));
            let (l, sqrt) = match (k.kind(), &disc) {
                (FieldKind::Rational, Elem::Rat(r)) => {
                    let (t, s) = split_square(&(r.numer() * r.denom()));
                    let name = format!("sqrt({s})");
                    let l = Field::extension_unchecked(k, Poly::new(k.clone(), vec![k.from_bigint(&-&s), k.zero(), k.one()]), &name);
                    let scale = k.div(&k.from_bigint(&t), &k.from_bigint(r.denom()));
                    let y = l.generator().expect("extension");
                    let sqrt = l.mul(&l.embed(k, &scale)?, &y);
                    (l, sqrt)
                }
                _ => {
                    let name = format!("sqrt({})", k.format(&disc));
                    let modulus = Poly::new(k.clone(), vec![k.neg(&disc), k.zero(), k.one()]);
                    let l = Field::extension_unchecked(k, modulus, &name);
                    let y = l.generator().expect("extension");
                    (l, y)
                }
            };
            let half = l.inv(&l.from_int(2))?;
            let mb = l.neg(&l.embed(k, &b)?);
            let plus = l.mul(&l.add(&mb, &sqrt), &half);
            let minus = l.mul(&l.sub(&mb, &sqrt), &half);
            Ok((l, vec![plus, minus]))
        }
        Some(2) => {
            let l = Field::extension_unchecked(k, f.clone(), "y");
            let y = l.generator().expect("extension");
            // roots y and -b - y
            let other = l.sub(&l.neg(&l.embed(k, &f.coeff(1))?), &y);
            Ok((l, vec![y, other]))
        }
        Some(_) => {
            let l = Field::extension_unchecked(k, f.clone(), "y");
            let y = l.generator().expect("extension");
            Ok((l, vec![y]))
        }
    }
}

/// Krylov data of a matrix with squarefree characteristic polynomial.
pub(crate) struct Krylov {
    pub chi: Poly,
    /// `M^j w` for `j < n`.
    pub vectors: Vec<Vec<Elem>>,
}

impl Krylov {
    pub fn new(m: &Matrix) -> Result<Krylov> {
        let n = m.require_square()?;
        let chi = m.charpoly()?;
        if !chi.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let field = m.field();
        let mut candidates: Vec<Vec<Elem>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        candidates.push(vec![field.one(); n]);
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b72);
        for _ in 0..200 {
            candidates.push((0..n).map(|_| field.random(&mut rng)).collect());
        }
        for w in candidates {
            let mut vectors = vec![w];
            for j in 1..n {
                let next = m.mul_vec(&vectors[j - 1]);
                vectors.push(next);
            }
            if Matrix::from_columns(field, n, &vectors).has_full_column_rank() {
                return Ok(Krylov { chi, vectors });
            }
        }
        Err(Error::Inconsistent("no cyclic vector for a squarefree characteristic polynomial".into()))
    }

    /// `p(M) w` for a polynomial over the matrix field or an extension of it.
    pub fn apply(&self, p: &Poly) -> Result<Vec<Elem>> {
        let l = p.field();
        let base = self.chi.field();
        let p = if p.deg() >= self.chi.deg() { p.rem(&self.chi.embed(l)?) } else { p.clone() };
        let n = self.vectors.len();
        let mut out = vec![l.zero(); n];
        for (j, c) in p.coeffs().iter().enumerate() {
            if l.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&self.vectors[j]) {
                *o = l.mul_add(o, c, &l.embed(base, x)?);
            }
        }
        Ok(out)
    }

    /// The cyclic basis `(x^j chi/g)(M) w`, `j < deg g`, of `ker g(M)`.
    pub fn factor_basis(&self, g: &Poly) -> Result<Vec<Vec<Elem>>> {
        let field = self.chi.field();
        let mut term = self.chi.exact_div(g);
        let d = g.degree().unwrap_or(0);
        let mut basis = Vec::with_capacity(d);
        for _ in 0..d {
            basis.push(self.apply(&term)?);
            term = &term * &Poly::x(field);
        }
        Ok(basis)
    }

    /// Eigenvector for a root `a` (in an extension) of a factor of `chi`.
    /// Over fields of degree at most 2 its first nonzero entry is scaled to
    /// 1; beyond that the entries are left as computed, since inverting
    /// large elements dominates the cost.
    pub fn eigenvector(&self, a: &Elem, l: &Field) -> Result<Vec<Elem>> {
        let chi = self.chi.embed(l)?;
        let (q, r) = chi.div_rem(&Poly::linear(l, a));
        if !r.is_zero() {
            return Err(Error::NotAFactor);
        }
        let v = self.apply(&q)?;
        if l.degree() <= 2 {
            normalize(l, v)
        } else if v.iter().all(|x| l.is_zero(x)) {
            Err(Error::ZeroVector)
        } else {
            Ok(v)
        }
    }
}

pub(crate) fn normalize(l: &Field, v: Vec<Elem>) -> Result<Vec<Elem>> {
    let pivot = v.iter().find(|x| !l.is_zero(x)).ok_or(Error::ZeroVector)?;
    let inv = l.inv(pivot)?;
    Ok(v.iter().map(|x| l.mul(x, &inv)).collect())
}

/// `p` with `B x_0 = p(A) x_0`, where `x_j = A^j x_0` is the given basis.
fn restriction_polynomial(b: &Matrix, cyclic: &[Vec<Elem>]) -> Result<Poly> {
    let field = b.field();
    let n = b.rows();
    let d = cyclic.len();
    let mut cols = cyclic.to_vec();
    cols.push(b.mul_vec(&cyclic[0]));
    let relation = Matrix::from_columns(field, n, &cols).kernel();
    let z = relation
        .vectors()
        .into_iter()
        .find(|z| !field.is_zero(&z[d]))
        .ok_or_else(|| Error::Inconsistent("B x_0 outside the cyclic span".into()))?;
    let scale = field.neg(&field.inv(&z[d])?);
    Ok(Poly::new(field.clone(), z[..d].iter().map(|c| field.mul(c, &scale)).collect()))
}

/// One choice of root for a factor: `M v = alpha_a v`, `N v = alpha_b v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub eigenvalue_a: Elem,
    pub eigenvalue_b: Elem,
    pub vector: Vec<Elem>,
}

/// Common eigenvectors attached to one irreducible factor of `chi_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonEigenvector {
    pub factor: Poly,
    pub field: Field,
    /// Both roots of a quadratic factor, otherwise one representative of
    /// the conjugacy class.
    pub embeddings: Vec<Embedding>,
}

/// For each irreducible factor `g` of `chi_A` with a common eigenvector of
/// `A` and `B`, the eigenvector(s) over a field containing a root of `g`.
///
/// Existence is decided over `K` first: a root of `g` carries a common
/// eigenvector iff `B` maps `ker g(A)` into itself and `AB - BA` kills it
/// (the restriction of `B` then lies in the commutant of the restriction of
/// `A`, which is a polynomial algebra because `g` is irreducible).
pub fn common_eigenvectors(a: &Matrix, b: &Matrix) -> Result<Vec<CommonEigenvector>> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let kry = Krylov::new(a)?;
    let comm = Matrix::commutator(a, b);
    let mut out = Vec::new();
    for g in factor(&kry.chi)?.irreducibles() {
        let cyclic = kry.factor_basis(g)?;
        let shared = if g.degree() == Some(n) {
            comm.is_zero()
        } else {
            let v = Subspace::span(a.field(), n, &cyclic);
            v.is_invariant_under(b)? && (&comm * v.basis()).is_zero()
        };
        if !shared {
            continue;
        }
        // B restricted to ker g(A) commutes with the cyclic restriction of
        // A, hence equals p(A) there; its eigenvalue at a root a is p(a)
        let p = restriction_polynomial(b, &cyclic)?;
        let (l, roots) = adjoin_root(g)?;
        let bl = b.embed(&l)?;
        let pl = p.embed(&l)?;
        let mut embeddings = Vec::new();
        for root in roots {
            let vector = kry.eigenvector(&root, &l)?;
            let bv = bl.mul_vec(&vector);
            let beta = pl.eval(&root);
            if bv.iter().zip(&vector).any(|(x, y)| *x != l.mul(&beta, y)) {
                return Err(Error::Inconsistent(format!(
                    "invariant kernel of {g} but eigenvector not shared"
                )));
            }
            embeddings.push(Embedding { eigenvalue_a: root, eigenvalue_b: beta, vector });
        }
        out.push(CommonEigenvector { factor: g.clone(), field: l, embeddings });
    }
    Ok(out)
}
