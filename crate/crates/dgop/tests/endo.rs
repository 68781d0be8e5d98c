use dgop::conv::Conv;
use dgop::cooperad::build_cop1_counital;
use dgop::endo::{is_symmetric, product_n, EndError, EndOperad, ProductTable};
use dgop::linear::{int, rank_of_rows, ChainComplex, GradedBasisSpace, LinComb, SparseMap};
use dgop::operad::{check_axioms, FiniteOperad};

fn algebra(names: &[(&str, i64)], table: &[(usize, usize, usize, i64)]) -> (ChainComplex, ProductTable) {
    let space = GradedBasisSpace::from_names(names).unwrap();
    let d = space.dim();
    let mut t: ProductTable = vec![vec![LinComb::zero(); d]; d];
    for &(i, j, k, c) in table {
        t[i][j].add_term(k, int(c));
    }
    (ChainComplex::with_zero_differential(space), t)
}

/// k[ε]/ε² on the basis (1, ε).
fn dual_numbers() -> (ChainComplex, ProductTable) {
    algebra(&[("1", 0), ("eps", 0)], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

/// Λ(θ) with θ odd.
fn exterior() -> (ChainComplex, ProductTable) {
    algebra(&[("1", 0), ("theta", 1)], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

#[test]
fn ground_field_components_are_lines() {
    let (a, t) = algebra(&[("1", 0)], &[(0, 0, 0, 1)]);
    let e = EndOperad::new(&a, t, 5).unwrap();
    for n in 1..=5 {
        assert_eq!(e.dim(n), 1);
        assert!(is_symmetric(&e, &product_n(&e, n), n));
    }
}

#[test]
fn dual_numbers_dims() {
    let (a, t) = dual_numbers();
    let e = EndOperad::new(&a, t, 4).unwrap();
    assert_eq!(e.dim(2), 8);
    for n in 1..=4 {
        assert_eq!(e.dim(n), 2usize.pow(n as u32 + 1));
        assert_eq!(e.component_space(n).dim(), e.dim(n));
    }
}

#[test]
fn axioms_with_koszul_signs() {
    for (a, t) in [dual_numbers(), exterior()] {
        let e = EndOperad::new(&a, t, 3).unwrap();
        let rep = check_axioms(&e, 3);
        assert!(rep.failures.is_empty(), "{:?}", &rep.failures[..rep.failures.len().min(5)]);
        assert!(is_symmetric(&e, &e.product(), 2));
        assert!(is_symmetric(&e, &product_n(&e, 3), 3));
    }
}

#[test]
fn bad_products_are_rejected() {
    let (a, t) = algebra(&[("a", 0), ("b", 0)], &[(0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 0, 1)]);
    assert!(matches!(EndOperad::new(&a, t, 3), Err(EndError::InvalidStructure(_))));
    let (a, t) = algebra(&[("a", 0), ("b", 0)], &[(0, 1, 0, 1)]);
    assert!(matches!(EndOperad::new(&a, t, 3), Err(EndError::InvalidStructure(_))));
    // odd square of an odd element breaks graded commutativity
    let (a, t) = algebra(&[("1", 0), ("theta", 1), ("t2", 2)], &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 2, 1), (0, 2, 2, 1), (2, 0, 2, 1)]);
    assert!(matches!(EndOperad::new(&a, t, 3), Err(EndError::InvalidStructure(_))));
}

#[test]
fn nonzero_differential_is_unsupported() {
    let space = GradedBasisSpace::from_names(&[("u", 0), ("v", 1)]).unwrap();
    let d = SparseMap::new(space.clone(), space.clone(), 1, [((0, 1), int(1))]).unwrap();
    let a = ChainComplex::new(d).unwrap();
    let t = vec![vec![LinComb::zero(); 2]; 2];
    assert!(matches!(EndOperad::new(&a, t, 3), Err(EndError::Unsupported(_))));
}

/// Derivations of an ungraded algebra from the Leibniz equations
/// `D(e_i e_j) = D(e_i) e_j + e_i D(e_j)` in the unknowns `D_{kl}`.
fn derivation_dim(t: &ProductTable) -> usize {
    let d = t.len();
    let var = |k: usize, l: usize| k * d + l; // coefficient of e_l in D(e_k)
    let mut rows = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for out in 0..d {
                let mut row: LinComb<usize> = LinComb::zero();
                for (k, c) in t[i][j].iter() {
                    row.add_term(var(*k, out), c.clone());
                }
                for l in 0..d {
                    row.add_scaled(&LinComb::basis(var(i, l)), &-t[l][j].coeff(&out));
                    row.add_scaled(&LinComb::basis(var(j, l)), &-t[i][l].coeff(&out));
                }
                rows.push(row);
            }
        }
    }
    d * d - rank_of_rows(&rows)
}

#[test]
fn weight_one_cycles_are_derivations() {
    let (a, t) = dual_numbers();
    assert_eq!(derivation_dim(&t), 1);
    let e = EndOperad::new(&a, t.clone(), 3).unwrap();
    let co = build_cop1_counital(3);
    let conv = Conv::new(&co, &e, 3);
    let mc = conv.mc_from_product(&e.product()).unwrap();
    let d1 = conv.delta_n(1);
    let mut images = Vec::new();
    for idx in 0..e.dim(1) {
        let f = conv.element(0, [(d1, e.basis_element(1, idx))], true).unwrap();
        let df = conv.twisted_differential(&f, &mc, None);
        assert_eq!(conv.weight_support(&df).into_iter().collect::<Vec<_>>(), if df.is_zero() { vec![] } else { vec![1] });
        let mut row = LinComb::zero();
        for (c, v) in &df.values {
            for (k, x) in e.coordinates(c.n, v).iter() {
                row.add_term((c.n, c.idx, *k), x.clone());
            }
        }
        images.push(row);
    }
    assert_eq!(e.dim(1) - rank_of_rows(&images), derivation_dim(&t));
}
