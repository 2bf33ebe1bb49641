//! Univariate factorization over every supported field.
//!
//! * prime fields and finite extensions: Cantor–Zassenhaus ([`factor_fp`]),
//! * `Q`: Hensel lifting with subset recombination ([`factor_q`]),
//! * `Q[y]/(m)`: Trager's norm method ([`factor_ext`]).
//!
//! Factoring over depth-2 towers is not supported.

mod finite;
mod rational;
mod trager;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldKind, Poly};

/// Largest degree accepted by the characteristic-zero routes. For
/// extensions the bound applies to `deg f * [L:Q]`, the degree of the norm.
pub const DEGREE_CAP: usize = 16;

/// Seed used when callers do not care about the random choices made by
/// Cantor–Zassenhaus.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// `unit * prod(factor^multiplicity)`, factors monic, irreducible and
/// pairwise distinct, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn product(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (p, m)| &acc * &p.pow(*m))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|(p, _)| p.degree().unwrap_or(0)).collect()
    }

    /// Irreducible factors without multiplicity.
    pub fn irreducibles(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

fn finish(f: &Poly, mut factors: Vec<(Poly, usize)>) -> Factorization {
    // merge duplicates and sort for a stable output order
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (p, m) in factors.drain(..) {
        match merged.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += m,
            None => merged.push((p, m)),
        }
    }
    merged.sort_by_cached_key(|(p, _)| (p.degree(), format!("{:?}", p.coeffs())));
    Factorization { unit: f.lc(), factors: merged }
}

/// Factors over a prime field (or a finite extension of one) with a seeded
/// Cantor–Zassenhaus split.
pub fn factor_fp(f: &Poly, seed: u64) -> Result<Factorization> {
    if !f.field().is_finite() {
        return Err(Error::UnsupportedField(format!("factor_fp over {}", f.field())));
    }
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(finish(f, finite::factor_finite(&f.monic(), &mut rng)))
}

/// Factors over `Q`.
pub fn factor_q(f: &Poly) -> Result<Factorization> {
    if !f.field().is_rational() {
        return Err(Error::UnsupportedField(format!("factor_q over {}", f.field())));
    }
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    let degree = f.degree().unwrap();
    if degree > DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree, cap: DEGREE_CAP });
    }
    let mut out = Vec::new();
    for (g, m) in rational::yun(f) {
        for h in rational::factor_squarefree_q(&g, DEFAULT_SEED)? {
            out.push((h, m));
        }
    }
    Ok(finish(f, out))
}

/// Factors over a depth-1 extension of `Q` or `F_p`.
pub fn factor_ext(f: &Poly) -> Result<Factorization> {
    let field = f.field();
    let Some(ext) = field.as_extension() else {
        return Err(Error::UnsupportedField(format!("factor_ext over {field}")));
    };
    if field.depth() > 1 {
        return Err(Error::TowerTooDeep);
    }
    if f.is_zero() {
        return Err(Error::ZeroVector);
    }
    if field.is_finite() {
        return factor_fp(f, DEFAULT_SEED);
    }
    let degree = f.degree().unwrap() * ext.degree();
    if degree > DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree, cap: DEGREE_CAP });
    }
    Ok(finish(f, trager::factor_over_number_field(f, DEFAULT_SEED)?))
}

/// Dispatches on the field kind.
pub fn factor(f: &Poly) -> Result<Factorization> {
    match f.field().kind() {
        FieldKind::Rational => factor_q(f),
        FieldKind::Prime(_) => factor_fp(f, DEFAULT_SEED),
        FieldKind::Extension(_) => factor_ext(f),
    }
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    if f.degree() == Some(1) {
        return Ok(true);
    }
    Ok(factor(f)?.is_irreducible())
}

/// Squarefree decomposition `f = lc * prod g_i^i` with monic, pairwise
/// coprime, squarefree `g_i` (only nontrivial parts are returned).
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    if f.field().is_finite() {
        finite::squarefree_decomposition(f)
    } else {
        rational::yun(f)
    }
}

/// Product of the distinct monic irreducible factors of `f`. In
/// characteristic `p` a vanishing derivative is handled by extracting the
/// `p`-th power structure (so `x^7 - 1` over `F_7` gives `x - 1`).
pub fn squarefree_part(f: &Poly) -> Poly {
    let field = f.field();
    squarefree_decomposition(f).iter().fold(Poly::one(field), |acc, (g, _)| &acc * g)
}
