use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::{Elem, Field};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Dense univariate polynomial, coefficients low to high with no trailing
/// zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(field.clone(), coeffs)
    }

    /// `x - root`.
    pub fn linear(field: &Field, root: &Elem) -> Poly {
        Poly::new(field.clone(), vec![field.neg(root), field.one()])
    }

    /// From integer coefficients, low to high.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field.clone(), coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Product of `(x - r)` over the given roots.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        roots.iter().fold(Poly::one(field), |acc, r| &acc * &Poly::linear(field, r))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Number of stored coefficients (degree + 1, or 0 for the zero poly).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree as a signed integer, -1 for zero. Handy in comparisons.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.lc())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).expect("nonzero");
        self.scale(&inv)
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(&d.lc()).expect("nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&c, di));
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Quotient of an exact division.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g` and `g` the monic gcd.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lc()).expect("nonzero");
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        (&self.exact_div(&self.gcd(other)) * other).monic()
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Re-expresses the polynomial over a field containing this one.
    pub fn embed(&self, to: &Field) -> Result<Poly> {
        let coeffs = self.coeffs.iter().map(|c| to.embed(&self.field, c)).collect::<Result<_>>()?;
        Ok(Poly::new(to.clone(), coeffs))
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(f), |acc, c| &(&acc * g) + &Poly::constant(f, c.clone()))
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &Elem) -> Poly {
        let f = &self.field;
        self.compose(&Poly::new(f.clone(), vec![c.clone(), f.one()]))
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        (self * other).rem(m)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut result = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mul_mod(&result, m);
            if e.bit(i) {
                result = result.mul_mod(&base, m);
            }
        }
        result
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(&self.field), |acc, _| &acc * self)
    }

    /// No repeated roots in an algebraic closure. A nonconstant polynomial
    /// with vanishing derivative (characteristic `p`) is a `p`-th power over
    /// a perfect field, hence not squarefree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                if self.field.is_rational() && self.squarefree_mod_some_prime() {
                    return true;
                }
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// Sufficient test over `Q`: a squarefree reduction of the same degree
    /// modulo a prime proves squarefreeness and avoids rational gcds.
    fn squarefree_mod_some_prime(&self) -> bool {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            if let Elem::Rat(r) = c {
                den = den.lcm(r.denom());
            }
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| match c {
                Elem::Rat(r) => r.numer() * (&den / r.denom()),
                _ => unreachable!("rational coefficient"),
            })
            .collect();
        let deg = self.coeffs.len() - 1;
        for p in [10007u64, 10009, 10037, 10039, 10061] {
            let fp = Field::prime(p).expect("prime");
            let reduced = Poly::new(fp.clone(), ints.iter().map(|c| fp.from_bigint(c)).collect());
            if reduced.degree() != Some(deg) {
                continue;
            }
            let d = reduced.derivative();
            if !d.is_zero() && reduced.gcd(&d).is_one() {
                return true;
            }
        }
        false
    }

    /// Sylvester matrix of `self` (degree m) and `other` (degree n):
    /// n shifted rows of `self` followed by m shifted rows of `other`,
    /// coefficients high to low.
    pub fn sylvester_matrix(&self, other: &Poly) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let (m, n) = (self.degree().unwrap_or(0), other.degree().unwrap_or(0));
        let size = m + n;
        let mut mat = Matrix::zeros(f, size, size);
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                mat.set(i, i + j, c.clone());
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                mat.set(n + i, i + j, c.clone());
            }
        }
        Ok(mat)
    }

    /// Resultant as the determinant of the Sylvester matrix. It vanishes
    /// exactly when the two polynomials share a root in the algebraic
    /// closure.
    pub fn resultant(&self, other: &Poly) -> Result<Elem> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        if self.degree() == Some(0) && other.degree() == Some(0) {
            return Ok(self.field.one());
        }
        self.sylvester_matrix(other)?.det()
    }

    /// `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<Elem> {
        let f = &self.field;
        let n = self.degree().unwrap_or(0);
        let r = self.resultant(&self.derivative())?;
        let r = if (n * n.saturating_sub(1) / 2) % 2 == 1 { f.neg(&r) } else { r };
        Ok(f.div(&r, &self.lc()))
    }

    pub fn to_string_with(&self, var: &str) -> String {
        let f = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mut s = f.format(c);
            let composite = f.depth() > 0 && s.contains(['+', '*']);
            let negative = s.starts_with('-') && !composite;
            if negative {
                s.remove(0);
            }
            if composite {
                s = format!("({s})");
            }
            if !out.is_empty() {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.add(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n).map(|i| f.sub(&self.coeff(i), &rhs.coeff(i))).collect();
        Poly::new(f.clone(), c)
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(&out[i + j], a, b);
            }
        }
        Poly::new(f.clone(), out)
    }
}
