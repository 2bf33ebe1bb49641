//! Common invariant subspaces: commutator kernels, compounds, the shift and
//! common-eigenvector pipeline, wedge decomposition, dimension counts for
//! stabilisers of subspaces, and a bounded non-triangularizability search.

mod compound;
mod eigen;
mod pipeline;

pub use compound::{compound, wedge, CompoundIndex};
pub use eigen::{adjoin_root, common_eigenvectors, CommonEigenvector, Embedding};
pub use pipeline::{
    colinearity_space_dim, common_invariant_subspace, common_invariant_subspace_with,
    decompose_wedge, find_shift, invariant_dim, mccoy_falsify, nth_element, shemesh_intersection,
    CommonSubspaceResult, ShemeshResult, Witness, DEFAULT_SHIFT_TRIES,
};

pub(crate) use eigen::Krylov;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Elem, Field, Poly};
    use crate::linalg::{Matrix, Subspace};
    use crate::testutil::{random_matrix, cyclotomic_a, cyclotomic_b, sqrt5_field};
    use crate::Error;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// `ker(A^2 + c A + I)` with `c = (1 + eps sqrt5)/2`, over `l`.
    fn pi(a: &Matrix, l: &Field, sqrt5: &Elem, eps: i64) -> Subspace {
        let al = a.embed(l).unwrap();
        let half = l.inv(&l.from_int(2)).unwrap();
        let c = l.mul(&l.add(&l.one(), &l.mul(&l.from_int(eps), sqrt5)), &half);
        let m = &(&(&al * &al) + &al.scale(&c)) + &Matrix::identity(l, 4);
        m.kernel()
    }

    #[test]
    fn compound_basics() {
        let q = Field::rational();
        assert_eq!(compound(&Matrix::identity(&q, 4), 2).unwrap(), Matrix::identity(&q, 6));
        let idx = CompoundIndex::new(4, 2).unwrap();
        assert_eq!(idx.len(), 6);
        assert_eq!(idx.position(&[1, 3]), Some(4));
        assert!(matches!(compound(&Matrix::identity(&q, 3), 4), Err(Error::BadK { .. })));
        let m = Matrix::from_ints(&q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(compound(&m, 3).unwrap(), Matrix::from_rows(q.clone(), vec![vec![m.det().unwrap()]]).unwrap());
        assert_eq!(compound(&m, 1).unwrap(), m);
    }

    #[test]
    fn compound_identities_f7() {
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let m = random_matrix(&f7, 4, &mut rng);
            let n = random_matrix(&f7, 4, &mut rng);
            let cm = compound(&m, 2).unwrap();
            assert_eq!(compound(&(&m * &n), 2).unwrap(), &cm * &compound(&n, 2).unwrap());
            assert_eq!(cm.det().unwrap(), f7.pow_u(&m.det().unwrap(), 3));
            assert_eq!(compound(&m.transpose(), 2).unwrap(), cm.transpose());
        }
    }

    #[test]
    fn decompose_examples() {
        let q = Field::rational();
        let idx = CompoundIndex::new(4, 2).unwrap();
        let mut u = vec![q.zero(); 6];
        u[0] = q.one();
        let e = |i: usize| (0..4).map(|j| if i == j { q.one() } else { q.zero() }).collect::<Vec<_>>();
        assert_eq!(decompose_wedge(&q, &u, &idx).unwrap(), Some(Subspace::span(&q, 4, &[e(0), e(1)])));
        u[5] = q.one();
        assert_eq!(decompose_wedge(&q, &u, &idx).unwrap(), None);
        assert_eq!(decompose_wedge(&q, &vec![q.zero(); 6], &idx), Err(Error::ZeroVector));
    }

    #[test]
    fn wedge_round_trip_f7() {
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let mut done = 0;
        while done < 40 {
            let n = rng.gen_range(2..=5);
            let k = rng.gen_range(1..n);
            let cols: Vec<Vec<Elem>> = (0..k).map(|_| (0..n).map(|_| f7.random(&mut rng)).collect()).collect();
            let basis = Matrix::from_columns(&f7, n, &cols);
            if basis.rank() < k {
                continue;
            }
            let u = wedge(&basis).unwrap();
            let idx = CompoundIndex::new(n, k).unwrap();
            assert_eq!(decompose_wedge(&f7, &u, &idx).unwrap(), Some(Subspace::column_span(&basis)));
            done += 1;
        }
    }

    #[test]
    fn cyclotomic_pair_shemesh_is_trivial() {
        let q = Field::rational();
        let (a, b) = (cyclotomic_a(&q), cyclotomic_b(&q));
        let r = shemesh_intersection(&a, &b).unwrap();
        assert_eq!((r.subspace.dim(), r.kernels_computed, r.heuristic), (0, 9, false));
        let rt = shemesh_intersection(&a.transpose(), &b.transpose()).unwrap();
        assert_eq!(rt.subspace.dim(), 0);
        assert_eq!(shemesh_intersection(&a, &a).unwrap().subspace.dim(), 4);
        assert!(common_eigenvectors(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn cyclotomic_pair_planes_over_q() {
        let q = Field::rational();
        let (a, b) = (cyclotomic_a(&q), cyclotomic_b(&q));
        assert_eq!(find_shift(&a, &b, 2, 10).unwrap(), q.one());
        let res = common_invariant_subspace(&a, &b, 2).unwrap();
        assert_eq!(res.shift, Some(q.one()));
        assert_eq!(res.witnesses.len(), 2);
        let (l, s5) = sqrt5_field(&q);
        let expected: Vec<Subspace> = [1, -1].iter().map(|&e| pi(&a, &l, &s5, e)).collect();
        for w in &res.witnesses {
            assert_eq!(w.field, l);
            assert_eq!(w.subspace.dim(), 2);
            assert!(expected.contains(&w.subspace));
            assert_eq!(invariant_dim(&a, &w.subspace).unwrap(), 8);
        }
        assert_ne!(res.witnesses[0].subspace, res.witnesses[1].subspace);
        assert!(common_invariant_subspace(&a, &b, 1).unwrap().witnesses.is_empty());
        assert!(common_invariant_subspace(&a, &b, 3).unwrap().witnesses.is_empty());
    }

    #[test]
    fn cyclotomic_pair_planes_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let (a, b) = (cyclotomic_a(&f7), cyclotomic_b(&f7));
        let res = common_invariant_subspace(&a, &b, 2).unwrap();
        assert_eq!(res.witnesses.len(), 2);
        let (l, s5) = sqrt5_field(&f7);
        for w in &res.witnesses {
            assert_eq!(w.field, l);
            let found = [1, -1].iter().any(|&e| pi(&a, &l, &s5, e) == w.subspace);
            assert!(found);
            assert_eq!(invariant_dim(&a, &w.subspace).unwrap(), 8);
        }
    }

    #[test]
    fn polynomial_in_a_shares_everything() {
        let q = Field::rational();
        let a = cyclotomic_a(&q);
        let b = &(&a * &a) + &a;
        let ce = common_eigenvectors(&a, &b).unwrap();
        assert_eq!(ce.len(), 1);
        assert_eq!(ce[0].factor.degree(), Some(4));
        let e = &ce[0].embeddings[0];
        let bl = b.embed(&ce[0].field).unwrap();
        let l = &ce[0].field;
        assert_eq!(bl.mul_vec(&e.vector), e.vector.iter().map(|x| l.mul(&e.eigenvalue_b, x)).collect::<Vec<_>>());
        let a2 = &a * &a;
        for k in 1..4 {
            assert!(!common_invariant_subspace(&a, &a2, k).unwrap().witnesses.is_empty(), "k = {k}");
        }
    }

    #[test]
    fn swapped_eigenvectors_are_not_shared() {
        let q = Field::rational();
        let a = Matrix::from_ints(&q, &[&[1, 0], &[0, 2]]);
        let b = Matrix::from_ints(&q, &[&[0, 1], &[1, 0]]);
        assert!(common_eigenvectors(&a, &b).unwrap().is_empty());
        let d = Matrix::from_ints(&q, &[&[1, 0], &[0, 1]]);
        assert!(matches!(common_eigenvectors(&d, &b), Err(Error::NotSquarefree)));
    }

    #[test]
    fn quadratic_roots_live_in_sqrt_fields() {
        let q = Field::rational();
        let (l, roots) = adjoin_root(&Poly::from_ints(&q, &[1, -3, 1])).unwrap();
        assert_eq!(l, sqrt5_field(&q).0);
        assert_eq!(roots.len(), 2);
        // x^2 - 8: sqrt(8) = 2 sqrt(2)
        let (l8, r8) = adjoin_root(&Poly::from_ints(&q, &[-8, 0, 1])).unwrap();
        assert_eq!(l8.as_extension().unwrap().modulus(), &Poly::from_ints(&q, &[-2, 0, 1]));
        assert_eq!(l8.mul(&r8[0], &r8[0]), l8.from_int(8));
        // 4x^2 - 3 has discriminant 3 after making it monic
        let (l3, r3) = adjoin_root(&Poly::from_ints(&q, &[-3, 0, 4])).unwrap();
        assert_eq!(l3.mul(&r3[1], &r3[1]), l3.div(&l3.from_int(3), &l3.from_int(4)));
    }

    #[test]
    fn shift_enumeration() {
        let f2 = Field::prime(2).unwrap();
        // both residues are eigenvalues of A, so every shift makes A + s singular
        let a = Matrix::from_ints(&f2, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let b = Matrix::identity(&f2, 3);
        assert!(matches!(find_shift(&a, &b, 2, 10), Err(Error::ShiftExhausted { tries: 2 })));
        let q = Field::rational();
        let nil = Matrix::from_ints(&q, &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert_eq!(find_shift(&nil, &Matrix::identity(&q, 4), 2, 10), Err(Error::ShiftExhausted { tries: 10 }));
        let f4 = Field::extension(&f2, &Poly::from_ints(&f2, &[1, 1, 1]), "w").unwrap();
        let elems: Vec<Elem> = (0..4).map(|i| nth_element(&f4, i).unwrap()).collect();
        assert_eq!(nth_element(&f4, 4), None);
        for i in 0..4 {
            for j in 0..i {
                assert_ne!(elems[i], elems[j]);
            }
        }
    }

    #[test]
    fn invariant_dim_small() {
        let q = Field::rational();
        let a = Matrix::from_ints(&q, &[&[1, 0], &[0, 2]]);
        let e1 = Subspace::span(&q, 2, &[vec![q.one(), q.zero()]]);
        assert_eq!(invariant_dim(&a, &e1).unwrap(), 3);
        let diag = Subspace::span(&q, 2, &[vec![q.one(), q.one()]]);
        assert_eq!(invariant_dim(&a, &diag), Err(Error::NotInvariant));
    }

    #[test]
    fn colinearity_dims() {
        let q = Field::rational();
        assert_eq!(colinearity_space_dim(&cyclotomic_a(&q), &Poly::from_ints(&q, &[1, 1, 1, 1, 1])).unwrap(), 4);
        let a = Matrix::from_ints(&q, &[&[1, 0], &[0, 2]]);
        assert_eq!(colinearity_space_dim(&a, &Poly::from_ints(&q, &[-1, 1])).unwrap(), 3);
        assert_eq!(colinearity_space_dim(&a, &Poly::from_ints(&q, &[-3, 1])), Err(Error::NotAFactor));

        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut checked = 0;
        while checked < 20 {
            let a = random_matrix(&f7, 3, &mut rng);
            let chi = a.charpoly().unwrap();
            if !chi.is_squarefree() {
                continue;
            }
            for g in crate::factor::factor(&chi).unwrap().irreducibles() {
                let d = g.degree().unwrap();
                assert!(colinearity_space_dim(&a, g).unwrap() >= 9 - d * 2);
            }
            checked += 1;
        }
    }

    #[test]
    fn mccoy_examples() {
        let q = Field::rational();
        let a = cyclotomic_a(&q);
        assert_eq!(mccoy_falsify(&a, &(&a * &a), 4).unwrap(), None);
        let b = cyclotomic_b(&q);
        let word = mccoy_falsify(&a, &b, 4).unwrap().expect("not triangularizable");
        let mut w = Matrix::identity(&q, 4);
        for ch in word.chars() {
            match ch {
                'A' => w = &w * &a,
                'B' => w = &w * &b,
                _ => {}
            }
        }
        assert!(!(&w * &Matrix::commutator(&a, &b)).pow(4).is_zero());
        let u = Matrix::from_ints(&q, &[&[1, 2, 3], &[0, 4, 5], &[0, 0, 6]]);
        let v = Matrix::from_ints(&q, &[&[2, 0, 1], &[0, 1, 7], &[0, 0, 3]]);
        assert_eq!(mccoy_falsify(&u, &v, 4).unwrap(), None);
    }

    #[test]
    fn shemesh_sound_on_commuting_pairs() {
        let q = Field::rational();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let mut checked = 0;
        while checked < 15 {
            let n = rng.gen_range(2..=4);
            let a = crate::testutil::random_int_matrix(&q, n, 3, &mut rng);
            if !a.charpoly().unwrap().is_squarefree() {
                continue;
            }
            let b = &(&a * &a).scale(&q.from_int(rng.gen_range(-2..=2))) + &a;
            if !common_eigenvectors(&a, &b).unwrap().is_empty() {
                assert!(shemesh_intersection(&a, &b).unwrap().subspace.dim() >= 1);
            }
            checked += 1;
        }
    }

    #[test]
    fn transpose_duality() {
        // a common invariant k-space for (A, B) gives an (n-k)-space for the
        // transposes
        let f7 = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let mut checked = 0;
        while checked < 10 {
            let n = 4;
            let k = rng.gen_range(1..n);
            // block upper triangular pair in a random basis
            let mut a = random_matrix(&f7, n, &mut rng);
            let mut b = random_matrix(&f7, n, &mut rng);
            for i in k..n {
                for j in 0..k {
                    a.set(i, j, f7.zero());
                    b.set(i, j, f7.zero());
                }
            }
            let p = random_matrix(&f7, n, &mut rng);
            let Ok(pinv) = p.inverse() else { continue };
            let a = &(&p * &a) * &pinv;
            let b = &(&p * &b) * &pinv;
            let Ok(res) = common_invariant_subspace(&a, &b, k) else { continue };
            if res.witnesses.is_empty() {
                continue;
            }
            let Ok(dual) = common_invariant_subspace(&a.transpose(), &b.transpose(), n - k) else { continue };
            assert!(!dual.witnesses.is_empty(), "k = {k}");
            checked += 1;
        }
    }
}
