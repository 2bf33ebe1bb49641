//! Oracles shared by the integration tests. Nothing here calls into the
//! library's own algorithms beyond building matrices and polynomials.

#![allow(dead_code)]

use comsub::{Field, Matrix};
use num_complex::Complex64;
use rand::Rng;

/// Permutations of `{0,1,2,3}` as images.
pub type Perm = [usize; 4];

fn compose(p: &Perm, q: &Perm) -> Perm {
    [p[q[0]], p[q[1]], p[q[2]], p[q[3]]]
}

fn all_perms() -> Vec<Perm> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&i| seen[i] = true);
                    if seen.iter().all(|&s| s) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn closure(gens: &[Perm]) -> Vec<Perm> {
    let mut group = vec![[0, 1, 2, 3]];
    let mut i = 0;
    while i < group.len() {
        for g in gens {
            let h = compose(g, &group[i]);
            if !group.contains(&h) {
                group.push(h);
            }
        }
        i += 1;
    }
    group.sort();
    group
}

/// Every subgroup of `S_4`; each one is generated by two elements.
pub fn subgroups_of_s4() -> Vec<Vec<Perm>> {
    let perms = all_perms();
    let mut out: Vec<Vec<Perm>> = Vec::new();
    for a in &perms {
        for b in &perms {
            let g = closure(&[*a, *b]);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Roots of a monic polynomial (coefficients low to high, leading 1
/// included) by Durand–Kerner, polished with Newton steps.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(coeffs, z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<f64> = coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as f64).collect();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let d = eval(&deriv, *r);
            if d.norm() > 0.0 {
                *r -= eval(coeffs, *r) / d;
            }
        }
    }
    z
}

fn near_integer(z: Complex64) -> bool {
    let tol = 1e-6 + 1e-10 * z.norm();
    z.im.abs() < tol && (z.re - z.re.round()).abs() < tol
}

fn poly_from_roots(rs: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for r in rs {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * r;
        }
        c = next;
    }
    c
}

/// Numeric Galois group of an irreducible monic integer quartic, as one of
/// "S4", "A4", "D4", "C4", "V4". With roots labelled numerically and a
/// generic `theta = sum c_i r_i`, the product of `x - theta^sigma` over a
/// subgroup `H` has rational coefficients exactly when `H` contains the
/// Galois group. Only subgroups of order at most 8 are tested this way (the
/// coefficients stay small enough for `f64`); for the rest the square root
/// of the discriminant separates `A4` from `S4`.
pub fn numeric_quartic_group(coeffs: &[i64; 5]) -> Option<&'static str> {
    assert_eq!(coeffs[4], 1, "monic");
    let r = roots(&coeffs.iter().map(|&c| c as f64).collect::<Vec<_>>());
    let perms = all_perms();
    let weights = [[0.0, 1.0, 2.0, -1.0], [1.0, -2.0, 0.0, 3.0], [0.0, 1.0, 3.0, 7.0], [2.0, -1.0, 5.0, 0.0]];
    let c = weights.iter().find(|c| {
        let thetas: Vec<Complex64> = perms.iter().map(|p| (0..4).map(|i| r[p[i]] * c[i]).sum()).collect();
        thetas.iter().enumerate().all(|(i, a)| thetas[i + 1..].iter().all(|b| (a - b).norm() > 1e-4))
    })?;
    let theta = |p: &Perm| -> Complex64 { (0..4).map(|i| r[p[i]] * c[i]).sum() };

    let passing: Vec<Vec<Perm>> = subgroups_of_s4()
        .into_iter()
        .filter(|h| h.len() <= 8)
        .filter(|h| poly_from_roots(&h.iter().map(theta).collect::<Vec<_>>()).into_iter().all(near_integer))
        .collect();
    if passing.is_empty() {
        let mut delta = Complex64::new(1.0, 0.0);
        for i in 0..4 {
            for j in i + 1..4 {
                delta *= r[i] - r[j];
            }
        }
        return Some(if near_integer(delta) { "A4" } else { "S4" });
    }
    let g: Vec<Perm> = passing[0].iter().filter(|p| passing.iter().all(|h| h.contains(p))).copied().collect();
    if !passing.contains(&g) {
        return None;
    }
    let has_four_cycle = g.iter().any(|p| {
        let mut q = *p;
        let mut order = 1;
        while q != [0, 1, 2, 3] {
            q = compose(p, &q);
            order += 1;
        }
        order == 4
    });
    match (g.len(), has_four_cycle) {
        (8, _) => Some("D4"),
        (4, true) => Some("C4"),
        (4, false) => Some("V4"),
        _ => None,
    }
}

pub fn int_matrix<R: Rng>(f: &Field, n: usize, h: i64, rng: &mut R) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| f.from_int(rng.gen_range(-h..=h))).collect()).collect();
    Matrix::from_rows(f.clone(), rows).unwrap()
}

pub fn random_matrix<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| f.random(rng)).collect()).collect();
    Matrix::from_rows(f.clone(), rows).unwrap()
}

pub fn invertible_matrix<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(f, n, rng);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random upper triangular matrix; with `diagonal` given, that is its
/// diagonal.
pub fn upper_triangular<R: Rng>(f: &Field, n: usize, diagonal: Option<&[i64]>, rng: &mut R) -> Matrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match (j.cmp(&i), diagonal) {
                    (std::cmp::Ordering::Less, _) => f.zero(),
                    (std::cmp::Ordering::Equal, Some(d)) => f.from_int(d[i]),
                    _ => f.random(rng),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(f.clone(), rows).unwrap()
}

/// `n` distinct residues mod `p`.
pub fn distinct_residues<R: Rng>(p: i64, n: usize, rng: &mut R) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    while out.len() < n {
        let x = rng.gen_range(0..p);
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}
