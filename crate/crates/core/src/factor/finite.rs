//! Factoring over finite fields `F_q` (prime fields and their extensions):
//! squarefree split, distinct-degree split, Cantor–Zassenhaus equal-degree
//! split. Characteristic 2 uses the trace map instead of the
//! `(q^d - 1)/2` power.

use num_bigint::BigUint;
use rand::Rng;

use crate::fields::{Elem, Field, Poly};

pub(crate) fn factor_finite<R: Rng>(f: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out
}

/// `c^(1/p)` in `F_q`, i.e. `c^(q/p)`.
fn pth_root_elem(field: &Field, c: &Elem) -> Elem {
    let q = field.order().expect("finite field");
    let p = field.characteristic();
    field.pow(c, &(q / p))
}

/// Given `f = g(x^p)`, returns `g` with coefficients replaced by `p`-th roots.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.characteristic() as usize;
    let coeffs = f.coeffs().iter().step_by(p).map(|c| pth_root_elem(field, c)).collect();
    Poly::new(field.clone(), coeffs)
}

pub(crate) fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    let p = f.field().characteristic() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (h, m) in squarefree_decomposition(&pth_root(&f)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w);
    }
    if !c.is_one() {
        for (h, m) in squarefree_decomposition(&pth_root(&c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree, returned as `(product, degree)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order().expect("finite field");
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut i = 0;
    while rest.deg() >= 2 * (i as isize + 1) {
        i += 1;
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&(&h - &x));
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
    }
    if rest.deg() > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly<R: Rng>(field: &Field, below: usize, rng: &mut R) -> Poly {
    Poly::new(field.clone(), (0..below).map(|_| field.random(rng)).collect())
}

fn equal_degree<R: Rng>(f: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = f.degree().expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let q = field.order().expect("finite field");
    let one = Poly::one(field);
    loop {
        let a = random_poly(field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.characteristic() == 2 {
            let steps = field.absolute_degree() * d;
            let mut t = a.clone();
            let mut sum = a.clone();
            for _ in 1..steps {
                t = t.mul_mod(&t, f);
                sum = &sum + &t;
            }
            sum
        } else {
            let e = (q.pow(d as u32) - BigUint::from(1u32)) / BigUint::from(2u32);
            &a.pow_mod(&e, f) - &one
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if g.is_zero() || dg == 0 || dg == n {
            continue;
        }
        let mut out = equal_degree(&g, d, rng);
        out.extend(equal_degree(&f.exact_div(&g), d, rng));
        return out;
    }
}
