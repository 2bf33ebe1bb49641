//! Factoring over `Q`: Yun squarefree split, then for each squarefree part
//! the classical Zassenhaus scheme (factor modulo a good prime, Hensel lift
//! past the Mignotte bound, recombine by subset enumeration).

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use super::finite::factor_finite;
use crate::error::Result;
use crate::fields::{is_prime, Elem, Field, Poly};

/// Integer polynomial, low to high.
type ZPoly = Vec<BigInt>;

fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zadd_scaled(a: &ZPoly, b: &ZPoly, s: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z) * s).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Representatives in `(-m/2, m/2]`.
fn zsymmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return a.clone();
    }
    let sign = if a.last().is_some_and(|l| l.is_negative()) { -c } else { c };
    a.iter().map(|x| x / &sign).collect()
}

/// Exact quotient in `Z[x]`, if `b` divides `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len().checked_sub(1)?;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = &b[db];
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn to_fp(a: &ZPoly, fp: &Field) -> Poly {
    Poly::new(fp.clone(), a.iter().map(|c| fp.from_bigint(c)).collect())
}

fn from_fp(a: &Poly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Elem::Mod(v) => BigInt::from(*v),
            _ => unreachable!("prime field element"),
        })
        .collect()
}

/// Clears denominators: returns the primitive integer polynomial with the
/// same roots.
fn to_integer(f: &Poly) -> ZPoly {
    let lcm = f.coeffs().iter().fold(BigInt::one(), |l, c| match c {
        Elem::Rat(r) => l.lcm(r.denom()),
        _ => unreachable!("rational coefficient"),
    });
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| match c {
            Elem::Rat(r) => r.numer() * (&lcm / r.denom()),
            _ => unreachable!(),
        })
        .collect();
    primitive(&z)
}

fn to_monic_rational(a: &ZPoly, q: &Field) -> Poly {
    let lc = a.last().expect("nonzero").clone();
    Poly::new(
        q.clone(),
        a.iter().map(|c| Elem::Rat(BigRational::new(c.clone(), lc.clone()))).collect(),
    )
}

/// Yun's squarefree decomposition in characteristic zero.
pub(crate) fn yun(f: &Poly) -> Vec<(Poly, usize)> {
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0);
    let c = df.exact_div(&a0);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_one() {
        let a = b.gcd(&d);
        b = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = &c - &b.derivative();
        if !a.is_one() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factors a monic squarefree rational polynomial into monic irreducibles.
pub(crate) fn factor_squarefree_q(f: &Poly, seed: u64) -> Result<Vec<Poly>> {
    let q = f.field().clone();
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(vec![f.clone()]);
    }
    let z = to_integer(f);
    Ok(zassenhaus(&z, seed).iter().map(|g| to_monic_rational(g, &q)).collect())
}

struct ModularImage {
    prime: u64,
    factors: Vec<ZPoly>,
}

fn choose_prime(f: &ZPoly, seed: u64) -> ModularImage {
    let lc = f.last().expect("nonzero");
    let mut best: Option<ModularImage> = None;
    let mut good = 0;
    let mut p = 2u64;
    while good < 5 {
        p += 1;
        if !is_prime(p) || (lc % p).is_zero() {
            continue;
        }
        let fp = Field::prime(p).expect("prime");
        let image = to_fp(f, &fp);
        if !image.is_squarefree() {
            continue;
        }
        good += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
        let factors: Vec<ZPoly> =
            factor_finite(&image.monic(), &mut rng).iter().map(|(g, _)| from_fp(g)).collect();
        if best.as_ref().is_none_or(|b| factors.len() < b.factors.len()) {
            best = Some(ModularImage { prime: p, factors });
        }
    }
    best.expect("some good prime")
}

fn zassenhaus(f: &ZPoly, seed: u64) -> Vec<ZPoly> {
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![f.clone()];
    }
    let image = choose_prime(f, seed);
    if image.factors.len() == 1 {
        return vec![f.clone()];
    }
    let p = BigInt::from(image.prime);
    let lc = f[deg].clone();
    // any factor's coefficients are bounded by 2^deg * |f|_1; the recombined
    // candidate carries an extra factor |lc|
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2u32) * lc.abs() * (BigInt::one() << deg) * norm1;
    let mut k = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus *= &p;
        k += 1;
    }
    let lifted = lift_all(f, &image.factors, image.prime, k);
    recombine(f, lifted, &modulus)
}

/// Lifts `f = lc * prod(factors) mod p` to a factorization modulo `p^k`
/// with monic factors.
fn lift_all(f: &ZPoly, factors: &[ZPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let pk = BigInt::from(p).pow(k);
    let fp = Field::prime(p).expect("prime");
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero");
        let inv = lc.modinv(&pk).expect("lc invertible mod p");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect(), &pk)];
    }
    let g0 = &factors[0];
    let lc = f.last().expect("nonzero").clone();
    let rest_fp = factors[1..]
        .iter()
        .fold(Poly::constant(&fp, fp.from_bigint(&lc)), |acc, g| &acc * &to_fp(g, &fp));
    let (g, h) = hensel_pair(f, g0, &from_fp(&rest_fp), p, k);
    let mut out = vec![g];
    out.extend(lift_all(&h, &factors[1..], p, k));
    out
}

/// Linear Hensel lifting of `f = g0 * h0 (mod p)`, `g0` monic, to `p^k`.
fn hensel_pair(f: &ZPoly, g0: &ZPoly, h0: &ZPoly, p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = Field::prime(p).expect("prime");
    let pb = BigInt::from(p);
    let g0p = to_fp(g0, &fp);
    let h0p = to_fp(h0, &fp);
    let (one, s, t) = g0p.xgcd(&h0p);
    debug_assert!(one.is_one(), "modular factors must be coprime");
    let mut g = g0.clone();
    let mut h = h0.clone();
    let mut m = pb.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: ZPoly = diff
            .iter()
            .map(|c| {
                debug_assert!((c % &m).is_zero());
                c / &m
            })
            .collect();
        let e = to_fp(&e, &fp);
        let (quo, a) = (&t * &e).div_rem(&g0p);
        let b = &(&s * &e) + &(&quo * &h0p);
        g = zadd_scaled(&g, &from_fp(&a), &m);
        h = zadd_scaled(&h, &from_fp(&b), &m);
        m *= &pb;
    }
    (zmod(&g, &m), zmod(&h, &m))
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in (0..lifted.len()).combinations(size) {
            let lc = rest.last().expect("nonzero").clone();
            let prod = subset.iter().fold(vec![lc], |acc, &i| zmod(&zmul(&acc, &lifted[i]), modulus));
            let candidate = primitive(&zsymmetric(&prod, modulus));
            if let Some(quotient) = zdiv_exact(&rest, &candidate) {
                found = Some((subset, candidate, quotient));
                break;
            }
        }
        match found {
            Some((subset, candidate, quotient)) => {
                out.push(candidate);
                rest = quotient;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        out.push(primitive(&rest));
    }
    out
}
