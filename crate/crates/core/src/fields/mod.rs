//! Exact field arithmetic.
//!
//! A [`Field`] is a cheap, clonable handle describing one of
//!
//! * the rationals `Q` (arbitrary precision),
//! * a prime field `F_p` with `p < 2^32`,
//! * a simple extension `K[y]/(m(y))` of another field, with `m` monic and
//!   irreducible over `K`. Towers are limited to depth 2.
//!
//! Elements ([`Elem`]) are plain values; all arithmetic goes through the field
//! handle, which knows how to reduce them. Mixing an element with the wrong
//! field is a programming error and panics. Data coming from outside should
//! be checked with [`Field::check`] first.

mod poly;

pub use poly::Poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Maximum nesting of simple extensions over a ground field.
pub const MAX_TOWER_DEPTH: usize = 2;

/// A field element. Its meaning depends on the [`Field`] it is used with.
///
/// * `Rat`: reduced fraction with positive denominator.
/// * `Mod`: canonical residue in `[0, p)`.
/// * `Ext`: coefficients over the base field, low to high, of length
///   `deg(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<Elem>),
}

#[derive(Debug)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    Extension(Extension),
}

#[derive(Debug)]
pub struct Extension {
    base: Field,
    modulus: Poly,
    name: String,
    depth: usize,
    /// The modulus as integers when the base is `Q` and every coefficient
    /// is integral; enables a gcd-free multiplication path.
    int_modulus: Option<Vec<BigInt>>,
}

impl Extension {
    pub fn base(&self) -> &Field {
        &self.base
    }

    /// Monic irreducible modulus over the base field.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Handle to a computational field. Equality is structural: two handles are
/// equal when they describe the same tower with the same moduli (generator
/// names are cosmetic and ignored).
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Rational, FieldKind::Rational) => true,
            (FieldKind::Prime(p), FieldKind::Prime(q)) => p == q,
            (FieldKind::Extension(a), FieldKind::Extension(b)) => {
                a.base == b.base && a.modulus.coeffs() == b.modulus.coeffs()
            }
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
            FieldKind::Extension(e) => {
                let m = e.modulus.to_string_with(&e.name);
                write!(f, "{}[{}]/({})", e.base, e.name, m)
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Field {
    pub fn rational() -> Field {
        Field(Arc::new(FieldKind::Rational))
    }

    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// Builds `base[name]/(modulus)`, checking that the modulus is monic,
    /// of degree at least 2 and irreducible over `base`.
    pub fn extension(base: &Field, modulus: &Poly, name: &str) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::FieldMismatch);
        }
        if base.depth() + 1 > MAX_TOWER_DEPTH {
            return Err(Error::TowerTooDeep);
        }
        if modulus.degree().unwrap_or(0) < 2 {
            return Err(Error::ModulusDegree);
        }
        if !base.is_one(&modulus.lc()) {
            return Err(Error::NotMonic);
        }
        if !crate::factor::is_irreducible(modulus)? {
            return Err(Error::NotIrreducible);
        }
        Ok(Self::extension_unchecked(base, modulus.clone(), name))
    }

    /// Caller guarantees the modulus is monic and irreducible.
    pub(crate) fn extension_unchecked(base: &Field, modulus: Poly, name: &str) -> Field {
        debug_assert!(base.is_one(&modulus.lc()));
        let int_modulus = modulus
            .coeffs()
            .iter()
            .map(|c| match c {
                Elem::Rat(r) if r.is_integer() => Some(r.numer().clone()),
                _ => None,
            })
            .collect();
        Field(Arc::new(FieldKind::Extension(Extension {
            int_modulus,
            depth: base.depth() + 1,
            base: base.clone(),
            modulus,
            name: name.to_string(),
        })))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn as_extension(&self) -> Option<&Extension> {
        match &*self.0 {
            FieldKind::Extension(e) => Some(e),
            _ => None,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        self.as_extension().map(|e| &e.base)
    }

    /// `Q` or `F_p` at the bottom of the tower.
    pub fn ground(&self) -> &Field {
        match &*self.0 {
            FieldKind::Extension(e) => e.base.ground(),
            _ => self,
        }
    }

    pub fn depth(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension(e) => e.depth,
            _ => 0,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(&*self.0, FieldKind::Rational)
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(&*self.0, FieldKind::Prime(_))
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rational => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension(e) => e.base.characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() != 0
    }

    /// Degree over the immediate base (1 for ground fields).
    pub fn degree(&self) -> usize {
        self.as_extension().map_or(1, |e| e.degree())
    }

    /// Degree over `sub`, which must appear in this field's tower.
    pub fn degree_over(&self, sub: &Field) -> Result<usize> {
        if self == sub {
            return Ok(1);
        }
        match &*self.0 {
            FieldKind::Extension(e) => Ok(e.degree() * e.base.degree_over(sub)?),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn absolute_degree(&self) -> usize {
        self.degree_over(&self.ground().clone()).expect("ground is in tower")
    }

    /// True when `sub` appears in this field's tower (including itself).
    pub fn contains_field(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_field(sub))
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldKind::Rational => None,
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Extension(e) => e.base.order().map(|q| q.pow(e.degree() as u32)),
        }
    }

    // ---- constructors ----

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rational => Elem::Rat(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Mod(0),
            FieldKind::Extension(e) => Elem::Ext(vec![e.base.zero(); e.degree()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(v.clone())),
            FieldKind::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Elem::Mod(r.to_u64().expect("residue fits"))
            }
            FieldKind::Extension(e) => {
                let mut c = vec![e.base.zero(); e.degree()];
                c[0] = e.base.from_bigint(v);
                Elem::Ext(c)
            }
        }
    }

    /// Image of a rational number; fails in characteristic `p` when `p`
    /// divides the denominator.
    pub fn from_rational(&self, v: &BigRational) -> Result<Elem> {
        match &*self.0 {
            FieldKind::Rational => Ok(Elem::Rat(v.clone())),
            _ => {
                let n = self.from_bigint(v.numer());
                let d = self.from_bigint(v.denom());
                if self.is_zero(&d) {
                    return Err(Error::NotRepresentable(v.to_string()));
                }
                Ok(self.div(&n, &d))
            }
        }
    }

    /// The adjoined generator `y` of an extension.
    pub fn generator(&self) -> Option<Elem> {
        self.as_extension().map(|e| {
            let mut c = vec![e.base.zero(); e.degree()];
            c[1] = e.base.one();
            Elem::Ext(c)
        })
    }

    /// Element `sum c_i y^i` from base-field coefficients (padded/reduced).
    pub fn from_base_coeffs(&self, coeffs: &[Elem]) -> Elem {
        let e = self.as_extension().expect("extension field");
        let p = Poly::new(e.base.clone(), coeffs.to_vec()).rem(&e.modulus);
        let mut c = p.coeffs().to_vec();
        c.resize(e.degree(), e.base.zero());
        Elem::Ext(c)
    }

    /// Validates that an element has the right shape for this field.
    pub fn check(&self, x: &Elem) -> Result<()> {
        match (&*self.0, x) {
            (FieldKind::Rational, Elem::Rat(_)) => Ok(()),
            (FieldKind::Prime(p), Elem::Mod(v)) if v < p => Ok(()),
            (FieldKind::Extension(e), Elem::Ext(c)) if c.len() == e.degree() => {
                c.iter().try_for_each(|v| e.base.check(v))
            }
            _ => Err(Error::MalformedElement(format!("{x:?} for {self}"))),
        }
    }

    // ---- arithmetic ----

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Ext(c) => {
                let b = self.base().expect("extension element");
                c.iter().all(|v| b.is_zero(v))
            }
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + y) % p),
            (FieldKind::Extension(e), Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(u, v)| e.base.add(u, v)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Rational, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod((p - x) % p),
            (FieldKind::Extension(e), Elem::Ext(x)) => {
                Elem::Ext(x.iter().map(|u| e.base.neg(u)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod((x + p - y) % p),
            (FieldKind::Extension(e), Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(x.iter().zip(y).map(|(u, v)| e.base.sub(u, v)).collect())
            }
            _ => self.mismatch(a),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldKind::Prime(p), Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(x * y % p),
            (FieldKind::Extension(e), Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(ext_mul(e, x, y)),
            _ => self.mismatch(a),
        }
    }

    /// `a + b * c`, the inner-loop workhorse of elimination.
    pub fn mul_add(&self, a: &Elem, b: &Elem, c: &Elem) -> Elem {
        self.add(a, &self.mul(b, c))
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::ZeroInversion);
        }
        Ok(match (&*self.0, a) {
            (FieldKind::Rational, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (FieldKind::Prime(p), Elem::Mod(x)) => Elem::Mod(mod_pow(*x, p - 2, *p)),
            (FieldKind::Extension(e), Elem::Ext(x)) if e.int_modulus.is_some() => {
                Elem::Ext(ext_inv_integral(e.int_modulus.as_ref().expect("checked"), x))
            }
            (FieldKind::Extension(e), Elem::Ext(x)) => {
                let xp = Poly::new(e.base.clone(), x.clone());
                let (g, s, _) = xp.xgcd(&e.modulus);
                // m irreducible, so gcd is 1 once made monic by xgcd
                debug_assert!(g.degree() == Some(0));
                let mut c = s.coeffs().to_vec();
                c.resize(e.degree(), e.base.zero());
                Elem::Ext(c)
            }
            _ => self.mismatch(a),
        })
    }

    /// Division; panics on a zero divisor (use [`Field::inv`] to handle it).
    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn pow_u(&self, a: &Elem, e: u64) -> Elem {
        self.pow(a, &BigUint::from(e))
    }

    fn mismatch(&self, a: &Elem) -> ! {
        panic!("element {a:?} does not belong to {self}")
    }

    // ---- towers ----

    /// Embeds an element of a subfield of the tower into this field.
    pub fn embed(&self, sub: &Field, x: &Elem) -> Result<Elem> {
        if self == sub {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldKind::Extension(e) => {
                let mut c = vec![e.base.zero(); e.degree()];
                c[0] = e.base.embed(sub, x)?;
                Ok(Elem::Ext(c))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Coordinates of `x` over `sub` (a subfield of the tower), flattened
    /// with the outermost generator power varying slowest.
    pub fn coords_over(&self, sub: &Field, x: &Elem) -> Result<Vec<Elem>> {
        if self == sub {
            return Ok(vec![x.clone()]);
        }
        match (&*self.0, x) {
            (FieldKind::Extension(e), Elem::Ext(c)) => {
                let mut out = Vec::new();
                for v in c {
                    out.extend(e.base.coords_over(sub, v)?);
                }
                Ok(out)
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Matrix of multiplication by `x` over the immediate base, as rows of
    /// base elements: column `j` holds the coordinates of `x * y^j`.
    pub fn multiplication_matrix(&self, x: &Elem) -> Vec<Vec<Elem>> {
        let e = self.as_extension().expect("extension field");
        let d = e.degree();
        let mut cols = Vec::with_capacity(d);
        let mut power = self.one();
        let g = self.generator().expect("extension");
        for _ in 0..d {
            match self.mul(x, &power) {
                Elem::Ext(c) => cols.push(c),
                _ => unreachable!(),
            }
            power = self.mul(&power, &g);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Norm of `x` down to the immediate base field.
    pub fn norm_to_base(&self, x: &Elem) -> Elem {
        let e = self.as_extension().expect("extension field");
        let m = crate::linalg::Matrix::from_rows(e.base.clone(), self.multiplication_matrix(x))
            .expect("square");
        m.det().expect("square")
    }

    /// Uniform random element for finite fields; small integers for `Q`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.0 {
            FieldKind::Rational => self.from_int(rng.gen_range(-10..=10)),
            FieldKind::Prime(p) => Elem::Mod(rng.gen_range(0..*p)),
            FieldKind::Extension(e) => {
                Elem::Ext((0..e.degree()).map(|_| e.base.random(rng)).collect())
            }
        }
    }

    /// Square test in `Q`, prime fields and finite extensions.
    pub fn is_square(&self, x: &Elem) -> Result<bool> {
        if self.is_zero(x) {
            return Ok(true);
        }
        match (&*self.0, x) {
            (FieldKind::Rational, Elem::Rat(r)) => {
                if r.is_negative() {
                    return Ok(false);
                }
                let is_sq = |n: &BigInt| {
                    let s = n.sqrt();
                    &s * &s == *n
                };
                Ok(is_sq(r.numer()) && is_sq(r.denom()))
            }
            _ if self.is_finite() => {
                if self.characteristic() == 2 {
                    return Ok(true);
                }
                let q = self.order().expect("finite");
                let e = (q - 1u32) / 2u32;
                Ok(self.is_one(&self.pow(x, &e)))
            }
            _ => Err(Error::UnsupportedField(format!("square test over {self}"))),
        }
    }

    /// Human-readable rendering.
    pub fn format(&self, x: &Elem) -> String {
        match (&*self.0, x) {
            (FieldKind::Rational, Elem::Rat(r)) => r.to_string(),
            (FieldKind::Prime(_), Elem::Mod(v)) => v.to_string(),
            (FieldKind::Extension(e), Elem::Ext(c)) => {
                let mut terms = Vec::new();
                for (i, v) in c.iter().enumerate() {
                    if e.base.is_zero(v) {
                        continue;
                    }
                    let s = e.base.format(v);
                    let s = if e.base.depth() > 0 || (i > 0 && s.contains(['+', '/'])) {
                        format!("({s})")
                    } else {
                        s
                    };
                    terms.push(match i {
                        0 => s,
                        _ => {
                            let pw = if i == 1 { e.name.clone() } else { format!("{}^{i}", e.name) };
                            if e.base.is_one(v) {
                                pw
                            } else {
                                format!("{s}*{pw}")
                            }
                        }
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
            _ => self.mismatch(x),
        }
    }
}

/// Common-denominator form of a vector of rationals.
fn integral_form(x: &[Elem]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in x {
        if let Elem::Rat(r) = c {
            if !r.denom().is_one() {
                den = den.lcm(r.denom());
            }
        }
    }
    let nums = x
        .iter()
        .map(|c| match c {
            Elem::Rat(r) if r.denom().is_one() => r.numer() * &den,
            Elem::Rat(r) => r.numer() * (&den / r.denom()),
            _ => unreachable!("rational base"),
        })
        .collect();
    (nums, den)
}

/// Multiplication in `Q[y]/(m)` with integral monic `m`, done on integer
/// numerators with a single normalisation per coefficient at the end.
fn ext_mul_integral(m: &[BigInt], x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let d = m.len() - 1;
    let (xn, xd) = integral_form(x);
    let (yn, yd) = integral_form(y);
    let mut prod = vec![BigInt::zero(); 2 * d - 1];
    for (i, xi) in xn.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in yn.iter().enumerate() {
            if !yj.is_zero() {
                prod[i + j] += xi * yj;
            }
        }
    }
    for k in (d..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for i in 0..d {
            if !m[i].is_zero() {
                prod[k - d + i] -= &c * &m[i];
            }
        }
    }
    prod.truncate(d);
    let den = xd * yd;
    prod.into_iter()
        .map(|c| {
            if den.is_one() {
                Elem::Rat(BigRational::from_integer(c))
            } else {
                Elem::Rat(BigRational::new(c, den.clone()))
            }
        })
        .collect()
}

/// Inverse in `Q[y]/(m)` with integral monic `m`: solves `M z = e_0` for
/// the integer multiplication matrix `M` of the numerator by fraction-free
/// (Bareiss) elimination, avoiding the coefficient swell of a rational
/// extended gcd.
fn ext_inv_integral(m: &[BigInt], x: &[Elem]) -> Vec<Elem> {
    let d = m.len() - 1;
    let (xn, xd) = integral_form(x);
    // rows of the augmented system [M | e_0]; column j of M is xn * y^j
    let mut a = vec![vec![BigInt::zero(); d + 1]; d];
    let mut col = xn;
    for j in 0..d {
        for i in 0..d {
            a[i][j] = col[i].clone();
        }
        let top = std::mem::take(&mut col[d - 1]);
        col.rotate_right(1);
        for i in 0..d {
            if !m[i].is_zero() {
                col[i] -= &top * &m[i];
            }
        }
    }
    a[0][d] = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..d {
        let p = (k..d).find(|&i| !a[i][k].is_zero()).expect("nonzero element is invertible");
        a.swap(k, p);
        for i in k + 1..d {
            for j in k + 1..=d {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    // det * z is integral, so back substitution divides exactly
    let det = prev;
    let mut w = vec![BigInt::zero(); d];
    for i in (0..d).rev() {
        let mut acc = &det * &a[i][d];
        for j in i + 1..d {
            acc -= &a[i][j] * &w[j];
        }
        w[i] = acc / &a[i][i];
    }
    w.into_iter().map(|c| Elem::Rat(BigRational::new(c * &xd, det.clone()))).collect()
}

fn constant_term<'a>(base: &Field, x: &'a [Elem]) -> Option<&'a Elem> {
    x[1..].iter().all(|c| base.is_zero(c)).then(|| &x[0])
}

fn ext_mul(e: &Extension, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    // embedded base elements are common operands and need no reduction
    if let Some(c) = constant_term(&e.base, x) {
        return y.iter().map(|v| e.base.mul(c, v)).collect();
    }
    if let Some(c) = constant_term(&e.base, y) {
        return x.iter().map(|v| e.base.mul(v, c)).collect();
    }
    if let Some(m) = &e.int_modulus {
        return ext_mul_integral(m, x, y);
    }
    let d = e.degree();
    let base = &e.base;
    let mut prod = vec![base.zero(); 2 * d - 1];
    for (i, xi) in x.iter().enumerate() {
        if base.is_zero(xi) {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !base.is_zero(yj) {
                prod[i + j] = base.mul_add(&prod[i + j], xi, yj);
            }
        }
    }
    let m = e.modulus.coeffs();
    for k in (d..prod.len()).rev() {
        let c = std::mem::replace(&mut prod[k], base.zero());
        if base.is_zero(&c) {
            continue;
        }
        for i in 0..d {
            if !base.is_zero(&m[i]) {
                prod[k - d + i] = base.sub(&prod[k - d + i], &base.mul(&c, &m[i]));
            }
        }
    }
    prod.truncate(d);
    prod
}

/// Parses an integer or `p/q` string into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::MalformedElement(s.to_string());
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(r)
}

/// Splits `n = t^2 * s` with `s` free of square factors up to a trial bound.
/// Returns `(t, s)`; `s` may keep large square factors, which is harmless.
pub(crate) fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let sign = if n.sign() == Sign::Minus { -1 } else { 1 };
    let mut rest = n.abs();
    let mut t = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= rest && p < limit {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            t *= &p;
        }
        p += 1u32;
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        t *= &r;
        rest = BigInt::one();
    }
    (t, rest * sign)
}
