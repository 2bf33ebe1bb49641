//! The theorem engine: routes a pair through the commutativity theorems and
//! checks each applicable implication, recognises the block form of
//! triangularizable pairs, and certifies uniqueness for `AX - XA = X^alpha`.

use log::{error, warn};

use crate::error::{Error, Result};
use crate::factor::{factor, is_irreducible};
use crate::fields::{is_prime, FieldKind, Poly};
use crate::galois::{quartic_galois, theorem_route, GroupTag, RouteLabel};
use crate::invariant::{common_invariant_subspace, CommonSubspaceResult};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommuteVerdict {
    pub chi_irreducible: bool,
    /// Dimensions with at least one certified common invariant subspace.
    pub found_subspaces: Vec<(usize, CommonSubspaceResult)>,
    pub group: GroupTag,
    /// The strongest route over the dimensions that were found; `None` when
    /// nothing was found.
    pub route: Option<RouteLabel>,
    pub commutes: bool,
    /// False exactly when a theorem applies (irreducible `chi_A`, a found
    /// subspace, a route other than `NoTheorem`) and yet `AB != BA`.
    pub consistent: bool,
    /// Dimensions that could not be decided, with the reason.
    pub skipped: Vec<(usize, String)>,
}

impl CommuteVerdict {
    pub fn theorem_applies(&self) -> bool {
        self.chi_irreducible && matches!(self.route, Some(r) if r != RouteLabel::NoTheorem)
    }
}

fn group_tag(a: &Matrix, chi: &Poly, irreducible: bool, declared: Option<GroupTag>) -> GroupTag {
    let n = a.rows();
    if n == 4 && irreducible && a.field().characteristic() != 2 && !matches!(a.field().kind(), FieldKind::Extension(_)) {
        match quartic_galois(chi) {
            Ok(tag) => {
                if let Some(d) = &declared {
                    if *d != tag {
                        warn!("declared group {d} overridden by computed {tag}");
                    }
                }
                return tag;
            }
            Err(e) => warn!("quartic classification failed: {e}"),
        }
    }
    declared.unwrap_or(if n >= 3 && is_prime(n as u64) {
        GroupTag::PrimeCycleAvailable
    } else {
        GroupTag::Unknown
    })
}

/// Scans every dimension `1..n`, records certified common invariant
/// subspaces, and checks the applicable commutativity theorem.
pub fn commute_verdict(a: &Matrix, b: &Matrix, declared: Option<GroupTag>) -> Result<CommuteVerdict> {
    let n = a.require_square()?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("{n}x{n} against {}x{}", b.rows(), b.cols())));
    }
    if n < 2 {
        return Err(Error::SizeMismatch("need n >= 2".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let chi = a.charpoly()?;
    let chi_irreducible = is_irreducible(&chi)?;
    let group = group_tag(a, &chi, chi_irreducible, declared);
    let commutes = Matrix::commutator(a, b).is_zero();

    let mut found_subspaces = Vec::new();
    let mut skipped = Vec::new();
    if !chi.is_squarefree() {
        for k in 1..n {
            skipped.push((k, Error::NotSquarefree.to_string()));
        }
    } else {
        for k in 1..n {
            match common_invariant_subspace(a, b, k) {
                Ok(res) if !res.witnesses.is_empty() => found_subspaces.push((k, res)),
                Ok(_) => {}
                Err(e @ (Error::ShiftExhausted { .. } | Error::DegreeTooLarge { .. })) => {
                    warn!("dimension {k} skipped: {e}");
                    skipped.push((k, e.to_string()));
                }
                Err(e) => return Err(e),
            }
        }
    }

    let mut route = None;
    for (k, _) in &found_subspaces {
        let r = theorem_route(n, &group, *k)?;
        route = match route {
            None => Some(r),
            Some(RouteLabel::NoTheorem) => Some(r),
            Some(prev) => Some(prev),
        };
    }
    let mut verdict = CommuteVerdict {
        chi_irreducible,
        found_subspaces,
        group,
        route,
        commutes,
        consistent: true,
        skipped,
    };
    verdict.consistent = !verdict.theorem_applies() || commutes;
    if !verdict.consistent {
        error!(
            "theorem violated: route {:?} applies but AB != BA (found dimensions {:?})",
            verdict.route,
            verdict.found_subspaces.iter().map(|(k, _)| *k).collect::<Vec<_>>()
        );
    }
    Ok(verdict)
}

/// For `A = diag(U, V)` with distinct irreducible characteristic
/// polynomials: is `B` of the form `[[P, Q], [0, S]]` (or its block-lower
/// mirror) with `UP = PU` and `VS = SV`?
pub fn block_st_form_check(u: &Matrix, v: &Matrix, b: &Matrix) -> Result<bool> {
    let p = u.require_square()?;
    let q = v.require_square()?;
    let n = p + q;
    if b.rows() != n || b.cols() != n {
        return Err(Error::SizeMismatch(format!("B is {}x{}, expected {n}x{n}", b.rows(), b.cols())));
    }
    let (cu, cv) = (u.charpoly()?, v.charpoly()?);
    if !is_irreducible(&cu)? || !is_irreducible(&cv)? {
        return Err(Error::NotIrreducible);
    }
    if cu == cv {
        return Err(Error::ChiEqual);
    }
    let top: Vec<usize> = (0..p).collect();
    let bottom: Vec<usize> = (p..n).collect();
    let pp = b.submatrix(&top, &top);
    let ss = b.submatrix(&bottom, &bottom);
    let diagonal_ok = Matrix::commutator(u, &pp).is_zero() && Matrix::commutator(v, &ss).is_zero();
    let upper = b.submatrix(&bottom, &top).is_zero();
    let lower = b.submatrix(&top, &bottom).is_zero();
    Ok(diagonal_ok && (upper || lower))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Conclusion {
    UniqueZero,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationAnalysis {
    pub phi: Poly,
    pub psi: Poly,
    pub p: usize,
    pub q: usize,
    pub alpha: u32,
    pub irreducibility_ok: bool,
    pub degrees_distinct: bool,
    /// `res(Phi(x), Psi(x - 1)) != 0`: no `lambda - mu = 1` across blocks.
    pub shift_resultant_nonzero: bool,
    /// `res(Phi, Psi) != 0`.
    pub disjoint_spectra: bool,
    /// Neither block has two eigenvalues differing by 1. Automatic in
    /// characteristic 0 for irreducible blocks; can fail in characteristic
    /// `p` (e.g. `x^p - x - 1`).
    pub no_internal_shift: bool,
    pub conclusion: Conclusion,
    /// For `alpha = 1`: dimension of the kernel of `X -> AX - XA - X`.
    pub brute_force_kernel_dim: Option<usize>,
}

fn shift_resultant(f: &Poly, g: &Poly) -> Result<bool> {
    let k = f.field();
    let g_shifted = g.shift(&k.from_int(-1));
    Ok(!k.is_zero(&f.resultant(&g_shifted)?))
}

/// Certifies the hypotheses under which `AX - XA = X^alpha`, with
/// `A = diag(C_Phi, C_Psi)`, has only the zero solution.
pub fn equation_analyze(phi: &Poly, psi: &Poly, alpha: u32) -> Result<EquationAnalysis> {
    if phi.field() != psi.field() {
        return Err(Error::FieldMismatch);
    }
    if !phi.is_monic() || !psi.is_monic() {
        return Err(Error::NotMonic);
    }
    if alpha == 0 {
        return Err(Error::BadExponent);
    }
    let (p, q) = (phi.degree().unwrap_or(0), psi.degree().unwrap_or(0));
    if p == 0 || q == 0 {
        return Err(Error::SizeMismatch("Phi and Psi must be nonconstant".into()));
    }
    let k = phi.field();
    let irreducibility_ok = factor(phi)?.is_irreducible() && factor(psi)?.is_irreducible();
    let degrees_distinct = p != q;
    let shift_resultant_nonzero = shift_resultant(phi, psi)?;
    let disjoint_spectra = !k.is_zero(&phi.resultant(psi)?);
    let no_internal_shift = shift_resultant(phi, phi)? && shift_resultant(psi, psi)?;
    let conclusion = if irreducibility_ok
        && degrees_distinct
        && shift_resultant_nonzero
        && disjoint_spectra
        && no_internal_shift
    {
        Conclusion::UniqueZero
    } else {
        Conclusion::Inconclusive
    };
    let brute_force_kernel_dim = if alpha == 1 {
        let a = Matrix::block_diag(&Matrix::companion(phi)?, &Matrix::companion(psi)?);
        let dim = Matrix::sylvester_operator(&a, &a, &k.one())?.kernel().dim();
        if conclusion == Conclusion::UniqueZero && dim != 0 {
            return Err(Error::Inconsistent(format!(
                "all hypotheses hold but AX - XA = X has a {dim}-dimensional solution space"
            )));
        }
        Some(dim)
    } else {
        None
    };
    Ok(EquationAnalysis {
        phi: phi.clone(),
        psi: psi.clone(),
        p,
        q,
        alpha,
        irreducibility_ok,
        degrees_distinct,
        shift_resultant_nonzero,
        disjoint_spectra,
        no_internal_shift,
        conclusion,
        brute_force_kernel_dim,
    })
}
