//! Randomised falsification harness for the commutativity theorems.
//!
//! Each trial draws `A` with irreducible characteristic polynomial and a
//! partner `B` (half the time a polynomial in `A`, otherwise uniform), runs
//! [`commute_verdict`], and records a violation whenever a certified
//! subspace of a theorem-covered dimension coexists with `AB != BA`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::factor::is_irreducible;
use crate::fields::{is_prime, Elem, Field};
use crate::linalg::Matrix;
use crate::verdict::commute_verdict;

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub n: usize,
    pub field: Field,
    pub trials: usize,
    pub seed: u64,
    /// Height bound for random rationals (ignored over finite fields).
    pub height: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FuzzReport {
    pub trials: usize,
    /// Trials where some common invariant subspace was certified.
    pub certified: usize,
    /// Trials whose certified dimensions are covered by a theorem.
    pub covered: usize,
    pub commuting: usize,
    /// Dimensions that could not be decided (shift search exhausted etc.).
    pub skipped_dimensions: usize,
    pub violations: Vec<String>,
    pub elapsed: Duration,
}

fn random_elem<R: Rng>(field: &Field, height: i64, rng: &mut R) -> Elem {
    if field.is_rational() {
        let num = rng.gen_range(-height..=height);
        let den = if rng.gen_bool(0.25) { rng.gen_range(1..=height.max(1)) } else { 1 };
        field.from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den))).expect("rational")
    } else {
        field.random(rng)
    }
}

fn random_matrix<R: Rng>(field: &Field, n: usize, height: i64, rng: &mut R) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| random_elem(field, height, rng)).collect()).collect();
    Matrix::from_rows(field.clone(), rows).expect("square")
}

/// Random `A` whose characteristic polynomial is irreducible.
pub fn random_irreducible_matrix<R: Rng>(field: &Field, n: usize, height: i64, rng: &mut R) -> Result<Matrix> {
    loop {
        let a = random_matrix(field, n, height, rng);
        if is_irreducible(&a.charpoly()?)? {
            return Ok(a);
        }
    }
}

/// Dimensions for which a certified subspace forces `AB = BA` when `chi_A`
/// is irreducible: `1` and `n - 1` always, every `k` when `n` is prime.
pub fn theorem_covers(n: usize, k: usize) -> bool {
    k == 1 || k + 1 == n || (n >= 3 && is_prime(n as u64))
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    let start = Instant::now();
    let mut report = FuzzReport::default();
    for trial in 0..cfg.trials {
        let seed = cfg.seed ^ (trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_irreducible_matrix(&cfg.field, cfg.n, cfg.height, &mut rng)?;
        let b = if rng.gen_bool(0.5) {
            // c0 + c1 A + c2 A^2
            let f = &cfg.field;
            let (c0, c1, c2) = (
                random_elem(f, 3, &mut rng),
                random_elem(f, 3, &mut rng),
                random_elem(f, 3, &mut rng),
            );
            &(&(&a * &a).scale(&c2) + &a.scale(&c1)) + &Matrix::scalar(f, cfg.n, &c0)
        } else {
            random_matrix(&cfg.field, cfg.n, cfg.height, &mut rng)
        };
        let v = commute_verdict(&a, &b, None)?;
        report.trials += 1;
        report.commuting += v.commutes as usize;
        report.skipped_dimensions += v.skipped.len();
        if !v.found_subspaces.is_empty() {
            report.certified += 1;
        }
        let covered: Vec<usize> =
            v.found_subspaces.iter().map(|(k, _)| *k).filter(|&k| theorem_covers(cfg.n, k)).collect();
        if !covered.is_empty() {
            report.covered += 1;
        }
        if (!covered.is_empty() && !v.commutes) || !v.consistent {
            report.violations.push(format!(
                "trial {trial} (seed {seed:#x}): dimensions {covered:?} certified but AB != BA"
            ));
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_deterministic() {
        let cfg = FuzzConfig { n: 3, field: Field::prime(5).unwrap(), trials: 10, seed: 7, height: 10 };
        let r1 = run_fuzz(&cfg).unwrap();
        let r2 = run_fuzz(&cfg).unwrap();
        assert!(r1.violations.is_empty());
        assert_eq!((r1.certified, r1.commuting), (r2.certified, r2.commuting));
        assert!(r1.certified >= 1);
    }

    #[test]
    fn coverage_table() {
        assert!(theorem_covers(4, 1) && theorem_covers(4, 3) && !theorem_covers(4, 2));
        assert!(theorem_covers(5, 2) && theorem_covers(5, 3));
        assert!(!theorem_covers(6, 3));
    }
}
