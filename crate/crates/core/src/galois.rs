//! Galois groups of irreducible quartics and the routing table that decides
//! which commutativity theorem applies to a given `(n, group, k)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::fields::{Elem, Field, FieldKind, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupTag {
    S4,
    A4,
    D4,
    C4,
    /// The Klein four-group `C2 x C2`.
    V4,
    Sn,
    An,
    /// `n` is prime, so the group is transitive of prime degree and
    /// contains an `n`-cycle.
    PrimeCycleAvailable,
    UserDeclared(String),
    Unknown,
}

impl GroupTag {
    /// Parses the names used on the command line; anything unrecognised is
    /// kept as a user-declared label.
    pub fn parse(s: &str) -> GroupTag {
        match s {
            "S4" => GroupTag::S4,
            "A4" => GroupTag::A4,
            "D4" => GroupTag::D4,
            "C4" => GroupTag::C4,
            "V4" => GroupTag::V4,
            "Sn" => GroupTag::Sn,
            "An" => GroupTag::An,
            "PrimeCycleAvailable" => GroupTag::PrimeCycleAvailable,
            "Unknown" => GroupTag::Unknown,
            other => GroupTag::UserDeclared(other.to_string()),
        }
    }

    pub fn is_symmetric_or_alternating(&self) -> bool {
        matches!(self, GroupTag::S4 | GroupTag::A4 | GroupTag::Sn | GroupTag::An)
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTag::UserDeclared(name) => write!(f, "{name}"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RouteLabel {
    DimensionOneOrHyperplane,
    SymmetricOrAlternating,
    PrimeDegree,
    NoTheorem,
}

impl fmt::Display for RouteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which commutativity theorem covers a common invariant subspace of
/// dimension `k` for a pair of `n x n` matrices whose first member has
/// irreducible characteristic polynomial with Galois group `tag`.
pub fn theorem_route(n: usize, tag: &GroupTag, k: usize) -> Result<RouteLabel> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::BadDimension { k, max: n.saturating_sub(1) });
    }
    Ok(if k == 1 || k == n - 1 {
        RouteLabel::DimensionOneOrHyperplane
    } else if tag.is_symmetric_or_alternating() {
        RouteLabel::SymmetricOrAlternating
    } else if n >= 3 && crate::fields::is_prime(n as u64) {
        RouteLabel::PrimeDegree
    } else {
        RouteLabel::NoTheorem
    })
}

/// Resolvent cubic of the monic quartic `x^4 + a x^3 + b x^2 + c x + d`,
/// whose roots are `r1 r2 + r3 r4` and its conjugates:
/// `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)`.
pub fn resolvent_cubic(f: &Poly) -> Result<Poly> {
    if f.degree() != Some(4) {
        return Err(Error::NotQuartic);
    }
    let k = f.field();
    let f = f.monic();
    let (a, b, c, d) = (f.coeff(3), f.coeff(2), f.coeff(1), f.coeff(0));
    let four = k.from_int(4);
    let e1 = k.sub(&k.mul(&a, &c), &k.mul(&four, &d));
    let e0 = k.add(
        &k.sub(&k.mul(&k.mul(&a, &a), &d), &k.mul(&four, &k.mul(&b, &d))),
        &k.mul(&c, &c),
    );
    Ok(Poly::new(k.clone(), vec![k.neg(&e0), e1, k.neg(&b), k.one()]))
}

fn rational_roots(p: &Poly) -> Result<Vec<Elem>> {
    let k = p.field();
    Ok(factor(p)?
        .irreducibles()
        .filter(|g| g.degree() == Some(1))
        .map(|g| k.neg(&g.coeff(0)))
        .collect())
}

/// Classifies the Galois group of an irreducible quartic over `Q` or
/// `F_p`, `p` odd.
pub fn quartic_galois(f: &Poly) -> Result<GroupTag> {
    let k = f.field();
    match k.kind() {
        FieldKind::Rational | FieldKind::Prime(_) => {}
        FieldKind::Extension(_) => {
            return Err(Error::UnsupportedField(format!("quartic classification over {k}")))
        }
    }
    if f.degree() != Some(4) {
        return Err(Error::NotQuartic);
    }
    if k.characteristic() == 2 {
        return Err(Error::Char2Unsupported);
    }
    if !factor(f)?.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let tag = resolvent_route(k, &f.monic())?;
    if k.is_finite() {
        // the Galois group of an irreducible polynomial over a finite field
        // is generated by Frobenius, so it is cyclic of order 4
        if tag != GroupTag::C4 {
            return Err(Error::Inconsistent(format!(
                "resolvent route gave {tag} for an irreducible quartic over {k}"
            )));
        }
        return Ok(GroupTag::C4);
    }
    Ok(tag)
}

fn resolvent_route(k: &Field, f: &Poly) -> Result<GroupTag> {
    let disc = f.discriminant()?;
    let disc_square = k.is_square(&disc)?;
    let cubic = resolvent_cubic(f)?;
    let roots = rational_roots(&cubic)?;
    Ok(match roots.len() {
        0 => {
            if disc_square {
                GroupTag::A4
            } else {
                GroupTag::S4
            }
        }
        1 => {
            // Kappe–Warren: with r the unique root of the resolvent in K,
            // G = C4 iff both x^2 + a x + (b - r) and x^2 - r x + d split
            // over K(sqrt(disc)), i.e. iff a^2 - 4(b - r) and r^2 - 4d are
            // squares there. Over K(sqrt(D)), D not a square in K, an
            // element e of K is a square iff e or e*D is a square in K.
            let r = &roots[0];
            let (a, b, d) = (f.coeff(3), f.coeff(2), f.coeff(0));
            let four = k.from_int(4);
            let e1 = k.sub(&k.mul(&a, &a), &k.mul(&four, &k.sub(&b, r)));
            let e2 = k.sub(&k.mul(r, r), &k.mul(&four, &d));
            let square_up = |e: &Elem| -> Result<bool> {
                Ok(k.is_square(e)? || k.is_square(&k.mul(e, &disc))?)
            };
            if square_up(&e1)? && square_up(&e2)? {
                GroupTag::C4
            } else {
                GroupTag::D4
            }
        }
        _ => GroupTag::V4,
    })
}
