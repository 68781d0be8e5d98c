//! Worked examples for the model of P₁ and for the product of Pol.

use dgop::classical::Classical;
use dgop::conv::{Conv, ConvError};
use dgop::cooperad::build_cop1_counital;
use dgop::free::{FreeOperad, Symmetry, TableAlphabet};
use dgop::linear::{int, sign_rational, LinComb};
use dgop::model::{ModelGen, PoissonModel};
use dgop::operad::{compose, format_element, relabel, Element};
use dgop::symseq::{perm_sign, shuffles, Permutation};

type Free = FreeOperad<TableAlphabet>;

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// `p^τ`, read as relabeling by `τ⁻¹`.
fn sup(o: &Free, p: &Element<Free>, tau: &Permutation) -> Element<Free> {
    relabel(o, p, &tau.inverse())
}

fn mu_l() -> Free {
    FreeOperad::new(TableAlphabet::binary(&[("μ", 0, Symmetry::Symmetric), ("l", 0, Symmetry::Antisymmetric)]))
}

#[test]
fn x_star_x_at_delta3() {
    let free = mu_l();
    let l = free.corolla(&1);
    let co = build_cop1_counital(4);
    let conv = Conv::new(&co, &free, 4);
    let x = conv.x_element(&l).unwrap();
    let xx = conv.star(&x, &x);
    let ll = compose(&free, &l, 1, &l);
    let mut expected = ll.clone();
    expected.add(&sup(&free, &ll, &perm(&[2, 3, 1])));
    expected.add(&sup(&free, &ll, &perm(&[3, 1, 2])));
    assert_eq!(xx.value(&conv.delta_n(3)), expected);
    assert_eq!(xx.values.len(), 1);
    // [x, x] = 2 x⋆x for odd x
    assert_eq!(conv.bracket(&x, &x), xx.scaled(&int(2)));
}

#[test]
fn x_squared_is_the_shuffle_sum() {
    let free = mu_l();
    let (mu, l) = (free.corolla(&0), free.corolla(&1));
    let co = build_cop1_counital(5);
    let conv = Conv::new(&co, &free, 5);
    let x = conv.x_element(&l).unwrap();
    let mt = conv.mu_tilde(&mu).unwrap();
    let x2 = conv.x_power(&mt, &x, 2).unwrap();
    let base = compose(&free, &compose(&free, &mu, 2, &l), 1, &l);
    let mut expected = LinComb::zero();
    for sh in shuffles(2, 2) {
        let s = &sh.underlying;
        expected.add_scaled(&sup(&free, &base, &s.inverse()), &sign_rational(perm_sign(s) < 0));
    }
    assert_eq!(expected.len(), 3, "{}", format_element(&free, &expected));
    assert_eq!(x2.value(&conv.delta_n(4)), expected);
    // nothing else up to arity 5
    assert_eq!(x2.values.len(), 1);
    assert_eq!(conv.weight_support(&x2).into_iter().collect::<Vec<_>>(), vec![4]);
}

#[test]
fn remainder_term_is_mu_tilde_on_x_star_x() {
    let free = mu_l();
    let (mu, l) = (free.corolla(&0), free.corolla(&1));
    let co = build_cop1_counital(4);
    let conv = Conv::new(&co, &free, 4);
    let x = conv.x_element(&l).unwrap();
    let mt = conv.mu_tilde(&mu).unwrap();
    let xx = conv.star(&x, &x);
    let inner = compose(&free, &mu, 1, &xx.value(&conv.delta_n(3)));
    let mut expected = inner.clone();
    expected.add_scaled(&sup(&free, &inner, &perm(&[2, 3, 4, 1])), &int(-1));
    expected.add(&sup(&free, &inner, &perm(&[3, 4, 1, 2])));
    expected.add_scaled(&sup(&free, &inner, &perm(&[4, 1, 2, 3])), &int(-1));
    assert_eq!(conv.star(&mt, &xx).value(&conv.delta_n(4)), expected);
}

#[test]
fn filled_corolla_gives_the_same_square() {
    let free = mu_l();
    let (mu, l) = (free.corolla(&0), free.corolla(&1));
    let co = build_cop1_counital(5);
    let conv = Conv::new(&co, &free, 5);
    let x = conv.x_element(&l).unwrap();
    let mt = conv.mu_tilde(&mu).unwrap();
    let delta = conv.delta().unwrap();
    // μ is not associative here, so the root element is built directly
    let root = conv.element(1, [(delta, mu.clone())], true).unwrap();
    let filled = conv.labeled_corolla_act(Some(&delta), &root, &[x.clone(), x.clone()]).unwrap();
    assert_eq!(filled, conv.x_power(&mt, &x, 2).unwrap());

    let p1 = Classical::p1();
    let cp = Conv::new(&co, &p1, 5);
    let xp = cp.x_element(&p1.bracket()).unwrap();
    let mc = cp.mc_from_product(&p1.product()).unwrap();
    let mtp = cp.mu_tilde(&p1.product()).unwrap();
    let f = cp.brace_generator_action(&delta, &mc, &[xp.clone(), xp.clone()]).unwrap();
    assert_eq!(f, cp.x_power(&mtp, &xp, 2).unwrap());
    // three children on an arity-two Maurer–Cartan element vanish
    let d3 = co.by_blocks(&[vec![1, 2, 3]]).unwrap();
    assert!(cp.brace_generator_action(&d3, &mc, &[xp.clone(), xp.clone(), xp.clone()]).unwrap().is_zero());
}

#[test]
fn maurer_cartan_needs_an_associative_product() {
    let free = mu_l();
    let co = build_cop1_counital(4);
    let conv = Conv::new(&co, &free, 4);
    assert!(matches!(conv.mc_from_product(&free.corolla(&0)), Err(ConvError::InvalidStructure(_))));
    let p1 = Classical::p1();
    let cp = Conv::new(&co, &p1, 4);
    let mc = cp.mc_from_product(&p1.product()).unwrap();
    assert!(cp.bracket(&mc, &mc).is_zero());
    // the bracket is not commutative of degree zero
    assert!(cp.mc_from_product(&p1.bracket()).is_err());
}

#[test]
fn x_power_respects_truncation() {
    let p1 = Classical::p1();
    let co = build_cop1_counital(5);
    let cp = Conv::new(&co, &p1, 5);
    let xp = cp.x_element(&p1.bracket()).unwrap();
    let mtp = cp.mu_tilde(&p1.product()).unwrap();
    assert_eq!(cp.x_power(&mtp, &xp, 3), Err(ConvError::Truncation { needed: 6, max: 5 }));
    assert_eq!(cp.x_power(&mtp, &xp, 1).unwrap(), xp);
}

mod model {
    use super::*;
    use dgop::model::ModelOperad;

    fn msup(m: &PoissonModel, p: &Element<ModelOperad>, tau: &[usize]) -> Element<ModelOperad> {
        m.relabel(p, &perm(tau).inverse())
    }

    #[test]
    fn d_of_binary_generator_vanishes() {
        let m = PoissonModel::new(4).unwrap();
        assert!(m.d(&m.p(&[vec![1], vec![2]]).unwrap()).is_zero());
    }

    #[test]
    fn d_of_ternary_generator() {
        let m = PoissonModel::new(4).unwrap();
        let p2 = m.p(&[vec![1], vec![2]]).unwrap();
        let pp = m.compose(&p2, 1, &p2);
        let mut expected = pp.clone();
        expected.add(&msup(&m, &pp, &[2, 3, 1]));
        expected.add(&msup(&m, &pp, &[3, 1, 2]));
        let got = m.d(&m.p(&[vec![1], vec![2], vec![3]]).unwrap());
        assert_eq!(got, expected, "{}", format_element(&m.free, &got));
    }

    /// The boundary is the Leibniz rule `p(ab, c) = a p(b, c) + p(a, c) b`.
    /// The cyclic display with all plus signs differs in the sign of the
    /// `(231)` term, whatever the reading of the superscripts.
    #[test]
    fn d_of_mixed_generator() {
        let m = PoissonModel::new(4).unwrap();
        let p2 = m.p(&[vec![1], vec![2]]).unwrap();
        let mu = m.generator(&ModelGen::Mu(2));
        let mp = m.compose(&mu, 1, &p2);
        let head = m.compose(&p2, 1, &mu);
        let got = m.d(&m.p(&[vec![1, 2], vec![3]]).unwrap());

        let mut leibniz = head.clone();
        leibniz.add_scaled(&m.relabel(&mp, &perm(&[2, 3, 1])), &int(-1));
        leibniz.add_scaled(&m.relabel(&m.compose(&mu, 1, &p2), &perm(&[1, 3, 2])), &int(-1));
        assert_eq!(got, leibniz, "{}", format_element(&m.free, &got));

        for cyc in [[2, 3, 1], [3, 1, 2]] {
            let mut literal = head.clone();
            literal.add(&msup(&m, &mp, &cyc));
            literal.add(&msup(&m, &mp, &[cyc[2], cyc[0], cyc[1]]));
            assert_ne!(got, literal);
            let mut fixed = head.clone();
            fixed.add_scaled(&m.relabel(&mp, &perm(&[2, 3, 1])), &int(-1));
            fixed.add(&m.relabel(&mp, &perm(&[3, 1, 2])));
            assert_eq!(got, fixed);
        }
    }

    #[test]
    fn square_zero_to_arity_five() {
        let m = PoissonModel::new(5).unwrap();
        let rep = m.check_square_zero();
        assert!(rep.ok(), "{:?}", &rep.failures[..rep.failures.len().min(2)]);
    }
}

mod tree_calculus {
    use super::*;
    use dgop::conv::TcwGenerator;
    use dgop::trees::{LabeledTree, VertexLabel};
    use rand::SeedableRng;

    #[test]
    fn counit_label_acts_as_unit() {
        let p1 = Classical::p1();
        let co = build_cop1_counital(4);
        let cp = Conv::new(&co, &p1, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = cp.random_equivariant(3, 2, &mut rng);
        let t = LabeledTree::corolla(1, VertexLabel::Labeled(cp.delta_n(1))).unwrap();
        assert_eq!(cp.prelie_c_act(&t, &[cp.identity(), f.clone()], None).unwrap(), f);
    }

    #[test]
    fn tcw_images() {
        let p1 = Classical::p1();
        let co = build_cop1_counital(5);
        let cp = Conv::new(&co, &p1, 5);
        let mc = cp.mc_from_product(&p1.product()).unwrap();
        let mt = cp.mu_tilde(&p1.product()).unwrap();
        let x = cp.x_element(&p1.bracket()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let a = cp.random_equivariant(2, 1, &mut rng);
        let b = cp.random_equivariant(3, 2, &mut rng);
        assert_eq!(cp.tcw_action(TcwGenerator::Bracket, &mc, &[a.clone(), b.clone()]).unwrap(), cp.bracket(&a, &b));
        let x2 = cp.tcw_action(TcwGenerator::Product(2), &mc, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(x2, cp.x_power(&mt, &x, 2).unwrap());
        // the filled corolla has nothing at Δ₃; that value comes from [x, x] = 2 x⋆x,
        // which is the Jacobiator and so vanishes in P₁
        assert!(x2.value(&cp.delta_n(3)).is_zero());
        let xx = cp.tcw_action(TcwGenerator::Bracket, &mc, &[x.clone(), x.clone()]).unwrap();
        assert_eq!(xx, cp.star(&x, &x).scaled(&int(2)));
        assert!(xx.is_zero());
        assert!(cp.tcw_action(TcwGenerator::Product(3), &mc, &[x.clone(), x.clone(), x.clone()]).unwrap().is_zero());
        let zero = dgop::conv::ConvolutionElement::zero(1, 5);
        assert!(cp.tcw_action(TcwGenerator::Product(2), &zero, &[x.clone(), x.clone()]).unwrap().is_zero());
        assert!(cp.tcw_action(TcwGenerator::Mixed(3), &mc, &[a.clone(), x.clone(), x.clone()]).is_ok());
        assert!(cp.tcw_action(TcwGenerator::Product(2), &mc, &[x.clone()]).is_err());
    }

    #[test]
    fn labels_must_fit_in_degree() {
        let co = build_cop1_counital(3);
        let d3 = co.by_blocks(&[vec![1], vec![2], vec![3]]).unwrap();
        assert!(LabeledTree::corolla(2, VertexLabel::Labeled(d3)).is_err());
        assert!(LabeledTree::corolla(3, VertexLabel::Filled(d3)).is_ok());
    }
}
