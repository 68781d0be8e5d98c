use dgop::classical::Classical;
use dgop::degeneracy::degeneracy_generator;
use dgop::linear::{homology_dims, int, sign_rational};
use dgop::poisson::{PoissonFile, PoissonPolyAlgebra};
use dgop::poly::{Poly, TruncatedIdeal};
use dgop::symseq::{perm_sign, Permutation};
use dgop::vanishing::*;

fn same_ideal(d: usize, a: &[Poly], b: &[Poly], cap: usize) -> bool {
    let ia = TruncatedIdeal::new(d, a, cap).unwrap();
    let ib = TruncatedIdeal::new(d, b, cap).unwrap();
    a.iter().all(|p| ib.contains(p).unwrap()) && b.iter().all(|p| ia.contains(p).unwrap())
}

mod poisson {
    use super::*;

    #[test]
    fn symplectic_plane_has_empty_locus() {
        let a = PoissonPolyAlgebra::symplectic(1, 4);
        let i = a.degeneracy_ideal(0);
        assert!(TruncatedIdeal::new(2, &i.generators, 4).unwrap().is_unit());
        assert!(a.operadic_vs_pfaffian(0).unwrap());
    }

    #[test]
    fn sl2_locus_is_the_origin() {
        let a = PoissonPolyAlgebra::named("sl2star", 4).unwrap();
        let i = a.degeneracy_ideal(0);
        let vars: Vec<Poly> = (0..3).map(|k| a.var(k)).collect();
        assert!(same_ideal(3, &i.generators, &vars, 4));
        let c = a.compare(0).unwrap();
        assert!(c.equal);
        assert!(c.scalars.iter().all(|s| s.as_deref() == Some("2")));
    }

    #[test]
    fn random_linear_structures_match_pfaffians() {
        for seed in [0u64, 1, 2, 7, 42] {
            let g = FinDimLieAlgebra::random_frobenius(seed);
            let a = PoissonPolyAlgebra::lie_poisson(&g, 4).unwrap();
            let c = a.compare(1).unwrap();
            assert!(c.equal, "seed {seed}");
            assert_eq!(c.scalars, vec![Some("8".to_string())], "seed {seed}");
            assert!(a.degeneracy_ideal(1).generators.iter().all(|p| p.is_homogeneous(2)));
        }
    }

    #[test]
    fn symplectic_four_space() {
        let a = PoissonPolyAlgebra::symplectic(2, 3);
        assert!(TruncatedIdeal::new(4, &a.degeneracy_ideal(1).generators, 3).unwrap().is_unit());
        assert!(a.operadic_vs_pfaffian(1).unwrap());
    }

    #[test]
    fn too_few_variables_gives_zero_ideals() {
        let a = PoissonPolyAlgebra::named("sl2star", 4).unwrap();
        assert!(a.degeneracy_ideal(2).is_zero());
        assert!(a.operadic_ideal(2).unwrap().is_zero());
        assert!(a.operadic_vs_pfaffian(2).unwrap());
    }

    #[test]
    fn evaluation_is_antisymmetric_in_the_tuple() {
        let a = PoissonPolyAlgebra::lie_poisson(&FinDimLieAlgebra::random_frobenius(3), 4).unwrap();
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, 1);
        let base = a.evaluate_p1(&p1, &g, &(0..4).map(|k| a.var(k)).collect::<Vec<_>>()).unwrap();
        assert!(!base.is_zero());
        for s in Permutation::all(4) {
            let args: Vec<Poly> = (1..=4).map(|k| a.var(s.apply(k) - 1)).collect();
            let v = a.evaluate_p1(&p1, &g, &args).unwrap();
            assert_eq!(v, base.scaled(&sign_rational(perm_sign(&s) < 0)));
        }
    }

    #[test]
    fn monomial_inputs_stay_in_the_ideal() {
        let a = PoissonPolyAlgebra::lie_poisson(&FinDimLieAlgebra::random_frobenius(5), 6).unwrap();
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, 1);
        let ideal = TruncatedIdeal::new(4, &a.operadic_ideal(1).unwrap().generators, 6).unwrap();
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let args: Vec<Poly> = (0..4)
                .map(|_| {
                    let (i, j) = (rng.gen_range(0..4), rng.gen_range(0..4));
                    if rng.gen_bool(0.5) { a.var(i).mul(&a.var(j)) } else { a.var(i) }
                })
                .collect();
            let v = a.evaluate_p1(&p1, &g, &args).unwrap();
            assert!(ideal.contains(&v).unwrap());
        }
    }

    #[test]
    fn pfaffians_expand_along_a_row() {
        let a = PoissonPolyAlgebra::lie_poisson(&FinDimLieAlgebra::random_frobenius(9), 3).unwrap();
        let lower = TruncatedIdeal::new(4, &a.degeneracy_ideal(0).generators, 3).unwrap();
        for p in a.degeneracy_ideal(1).generators {
            assert!(lower.contains(&p).unwrap());
        }
    }

    #[test]
    fn file_roundtrip() {
        let f: PoissonFile = serde_json::from_str(
            r#"{"variables": ["x", "y", "z"], "brackets": [["x", "y", "z"], ["y", "z", "x"], ["z", "x", "y"]], "degree_cap": 4}"#,
        )
        .unwrap();
        let a = PoissonPolyAlgebra::from_file(&f).unwrap();
        let b = PoissonPolyAlgebra::named("sl2star", 4).unwrap();
        assert_eq!(a.pi, b.pi);
        let bad: PoissonFile = serde_json::from_str(r#"{"variables":["x","y","z"],"brackets":[["x","y","x"],["y","z","y"],["x","z","z"]]}"#).unwrap();
        assert!(PoissonPolyAlgebra::from_file(&bad).is_err());
    }
}

mod ce {
    use super::*;

    #[test]
    fn abelian_plane() {
        let g = FinDimLieAlgebra::abelian(2);
        let ce = ce_complex(&g);
        assert!(ce.chain.d().is_zero());
        let dims: Vec<usize> = ce.chain.space().dims_by_degree().values().rev().copied().collect();
        assert_eq!(dims, vec![2, 1]);
        assert_eq!(reduced_homology(&g).into_values().collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn affine_line() {
        assert_eq!(reduced_homology(&FinDimLieAlgebra::affine_line()).into_values().collect::<Vec<_>>(), vec![1, 0]);
    }

    #[test]
    fn sl2() {
        assert_eq!(reduced_homology(&FinDimLieAlgebra::sl2()).into_values().collect::<Vec<_>>(), vec![0, 0, 1]);
    }

    #[test]
    fn euler_characteristic_is_minus_one() {
        for g in [FinDimLieAlgebra::abelian(3), FinDimLieAlgebra::sl2(), FinDimLieAlgebra::affine_pair()] {
            let h = homology_dims(&ce_complex(&g).chain);
            let chi: i64 = h.iter().map(|(deg, v)| if deg.rem_euclid(2) == 0 { *v as i64 } else { -(*v as i64) }).sum();
            assert_eq!(chi, alternating_binomial(g.dim()));
            assert_eq!(chi, -1);
        }
    }

    #[test]
    fn basis_change_preserves_homology() {
        let m = vec![vec![int(1), int(2), int(0)], vec![int(0), int(1), int(-1)], vec![int(1), int(0), int(1)]];
        let g = FinDimLieAlgebra::sl2().change_basis(&m).unwrap();
        assert_eq!(reduced_homology(&g), reduced_homology(&FinDimLieAlgebra::sl2()));
        let p = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let h = FinDimLieAlgebra::affine_line().change_basis(&p).unwrap();
        assert_eq!(reduced_homology(&h), reduced_homology(&FinDimLieAlgebra::affine_line()));
    }

    #[test]
    fn line_gives_a_polynomial_ring() {
        let t = vanishing_locus_dims(&FinDimLieAlgebra::abelian(1), 4, (-10, 10));
        assert_eq!(t.homology_level, (0..=4).map(|n| (n, 0, 1)).collect::<Vec<_>>());
    }

    #[test]
    fn sl2_table_has_one_class_per_stride() {
        let t = vanishing_locus_dims(&FinDimLieAlgebra::sl2(), 3, (-10, 10));
        assert_eq!(t.homology_generators.into_iter().collect::<Vec<_>>(), vec![(-2, 1)]);
        assert_eq!(t.homology_level, vec![(0, 0, 1), (1, -2, 1), (2, -4, 1), (3, -6, 1)]);
        // chain level: three even generators in degree 0, three odd in −1, one even in −2
        assert_eq!(t.chain_generators.into_iter().collect::<Vec<_>>(), vec![(-2, 1), (-1, 3), (0, 3)]);
    }

    #[test]
    fn zero_cap_has_no_positive_part() {
        let t = vanishing_locus_dims(&FinDimLieAlgebra::sl2(), 0, (-10, 10));
        assert_eq!(t.homology_level, vec![(0, 0, 1)]);
        assert!(t.homology_totals_nonunital.is_empty());
    }

    #[test]
    fn exterior_generators_truncate() {
        // one odd generator: Sym is k ⊕ k
        let gens = [(-1i64, 1usize)].into_iter().collect();
        let t = free_gc_dims(&gens, 5, (-10, 10));
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, -1), 1)]);
    }
}
