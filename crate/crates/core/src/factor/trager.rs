//! Trager's norm method over a simple extension `L = Q[y]/(m)`.
//!
//! For squarefree monic `f` in `L[x]`, pick `s` so that the norm
//! `N(x) = prod_sigma sigma(f)(x - s*y)` is squarefree over `Q`; then each
//! rational factor `N_i` of `N` gives the factor `gcd(f(x - s*y), N_i)` of the
//! shifted polynomial. The norm itself is obtained by evaluating at
//! `deg N + 1` rational points and interpolating.

use super::rational::{factor_squarefree_q, yun};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field, Poly};

/// Norm of `f` from `L[x]` down to `Q[x]`.
pub(crate) fn norm(f: &Poly) -> Poly {
    let l = f.field();
    let q = l.base().expect("extension").clone();
    let d = f.degree().unwrap_or(0) * l.degree();
    let points: Vec<Elem> = (0..=d as i64).map(|t| q.from_int(t)).collect();
    let values: Vec<Elem> = points
        .iter()
        .map(|t| l.norm_to_base(&f.eval(&l.embed(&q, t).expect("subfield"))))
        .collect();
    interpolate(&q, &points, &values)
}

/// Lagrange interpolation through `(points[i], values[i])`.
pub(crate) fn interpolate(field: &Field, points: &[Elem], values: &[Elem]) -> Poly {
    let mut acc = Poly::zero(field);
    for (i, (xi, yi)) in points.iter().zip(values).enumerate() {
        let mut term = Poly::constant(field, yi.clone());
        let mut denom = field.one();
        for (j, xj) in points.iter().enumerate() {
            if i != j {
                term = &term * &Poly::linear(field, xj);
                denom = field.mul(&denom, &field.sub(xi, xj));
            }
        }
        acc = &acc + &term.scale(&field.inv(&denom).expect("distinct points"));
    }
    acc
}

pub(crate) fn factor_over_number_field(f: &Poly, seed: u64) -> Result<Vec<(Poly, usize)>> {
    let mut out = Vec::new();
    for (g, m) in yun(f) {
        for h in factor_squarefree(&g, seed)? {
            out.push((h, m));
        }
    }
    Ok(out)
}

fn factor_squarefree(f: &Poly, seed: u64) -> Result<Vec<Poly>> {
    let l = f.field();
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(vec![f.monic()]);
    }
    let y = l.generator().expect("extension");
    for step in 0..40i64 {
        // 0, 1, -1, 2, -2, ...
        let s = if step % 2 == 1 { (step + 1) / 2 } else { -step / 2 };
        let sy = l.mul(&l.from_int(s), &y);
        let shifted = f.shift(&l.neg(&sy));
        let n = norm(&shifted);
        if !n.is_squarefree() {
            continue;
        }
        let rational_factors = factor_squarefree_q(&n.monic(), seed)?;
        if rational_factors.len() == 1 {
            return Ok(vec![f.monic()]);
        }
        let mut out = Vec::new();
        for r in rational_factors {
            let g = shifted.gcd(&r.embed(l)?);
            out.push(g.shift(&sy).monic());
        }
        return Ok(out);
    }
    Err(Error::Inconsistent("no squarefree norm shift found".into()))
}
