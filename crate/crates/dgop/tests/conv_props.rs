//! Algebraic identities of the convolution algebra on seeded random elements.

use dgop::classical::Classical;
use dgop::conv::{Conv, ConvolutionElement};
use dgop::cooperad::{build_cop1_counital, build_cop2, Cooperad};
use dgop::linear::{int, sign_rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type El = ConvolutionElement<Classical>;

fn odd(a: i64) -> bool {
    a.rem_euclid(2) == 1
}

/// A random homogeneous element spread over arities `1..=top`.
fn random(conv: &Conv<'_, Classical>, degree: i64, top: usize, rng: &mut ChaCha8Rng) -> El {
    let mut out = El::zero(degree, conv.max_arity);
    for n in 1..=top {
        if rng.gen_bool(0.7) {
            out = out.add(&conv.random_equivariant(n, degree, rng));
        }
    }
    out.degree = degree;
    out
}

fn p2_setup() -> (Cooperad, Classical) {
    (build_cop2(4), Classical::p2())
}

#[test]
fn associator_is_right_symmetric() {
    let (co, o) = p2_setup();
    let conv = Conv::new(&co, &o, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut nontrivial = 0;
    for _ in 0..100 {
        let (df, dg, dh) = (rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3));
        let f = random(&conv, df, 2, &mut rng);
        let g = random(&conv, dg, 2, &mut rng);
        let h = random(&conv, dh, 2, &mut rng);
        let assoc = |a: &El, b: &El, c: &El| conv.star(&conv.star(a, b), c).add_scaled(&conv.star(a, &conv.star(b, c)), &int(-1));
        let lhs = assoc(&f, &g, &h);
        let rhs = assoc(&f, &h, &g).scaled(&sign_rational(odd(dg * dh)));
        assert_eq!(lhs, rhs, "degrees {df} {dg} {dh}");
        nontrivial += usize::from(!lhs.is_zero());
    }
    assert!(nontrivial > 20, "only {nontrivial} nonzero associators");
}

#[test]
fn bracket_is_graded_lie() {
    let (co, o) = p2_setup();
    let conv = Conv::new(&co, &o, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut nontrivial = 0;
    for _ in 0..100 {
        let d = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)];
        let [f, g, h] = d.map(|k| random(&conv, k, 2, &mut rng));
        let fg = conv.bracket(&f, &g);
        assert_eq!(fg, conv.bracket(&g, &f).scaled(&-sign_rational(odd(d[0] * d[1]))));
        // (−1)^{|f||h|}[f,[g,h]] + cyclic = 0
        let t1 = conv.bracket(&f, &conv.bracket(&g, &h)).scaled(&sign_rational(odd(d[0] * d[2])));
        let t2 = conv.bracket(&g, &conv.bracket(&h, &f)).scaled(&sign_rational(odd(d[1] * d[0])));
        let t3 = conv.bracket(&h, &conv.bracket(&f, &g)).scaled(&sign_rational(odd(d[2] * d[1])));
        let sum = t1.add(&t2).add(&t3);
        assert!(sum.is_zero(), "degrees {d:?}");
        nontrivial += usize::from(!t1.is_zero());
    }
    println!("nontrivial brackets: {nontrivial}");
    assert!(nontrivial >= 15, "only {nontrivial} nonzero brackets");
}

#[test]
fn star_with_zero_is_zero() {
    let (co, o) = p2_setup();
    let conv = Conv::new(&co, &o, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = random(&conv, 1, 3, &mut rng);
    assert!(conv.star(&f, &El::zero(2, 4)).is_zero());
    assert!(conv.star(&El::zero(2, 4), &f).is_zero());
}

#[test]
fn twisted_differential_squares_to_zero() {
    let co = build_cop1_counital(4);
    let o = Classical::p1();
    let conv = Conv::new(&co, &o, 4);
    let mc = conv.mc_from_product(&o.product()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let f = conv.random_equivariant(n, n as i64 - 1, &mut rng);
        let df = conv.twisted_differential(&f, &mc, None);
        assert!(conv.twisted_differential(&df, &mc, None).is_zero());
        // a derivation of the bracket
        let g = conv.random_equivariant(2, 1, &mut rng);
        let lhs = conv.twisted_differential(&conv.bracket(&f, &g), &mc, None);
        let rhs = conv
            .bracket(&df, &g)
            .add_scaled(&conv.bracket(&f, &conv.twisted_differential(&g, &mc, None)), &sign_rational(odd(f.degree)));
        assert_eq!(lhs, rhs);
    }
    // zero Maurer–Cartan element leaves only the internal part
    let f = conv.random_equivariant(2, 1, &mut rng);
    let zero = El::zero(1, 4);
    assert!(conv.twisted_differential(&f, &zero, None).is_zero());
    let internal = |e: &El| e.scaled(&int(3));
    assert_eq!(conv.twisted_differential(&f, &zero, Some(&internal)), f.scaled(&int(3)));
}

#[test]
fn pol_product_is_commutative_and_associative() {
    let co = build_cop1_counital(6);
    let o = Classical::p1();
    let conv = Conv::new(&co, &o, 6);
    let mt = conv.mu_tilde(&o.product()).unwrap();
    let x = conv.x_element(&o.bracket()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let f = conv.random_equivariant(2, 1, &mut rng);
        let g = conv.random_equivariant(2, 1, &mut rng);
        let fg = conv.pol_product(&mt, &f, &g).truncated(4);
        let gf = conv.pol_product(&mt, &g, &f).truncated(4);
        let sign = sign_rational(odd(f.pol_degree() * g.pol_degree()));
        assert_eq!(fg, gf.scaled(&sign));
        // product has weight 0: weights add
        for w in conv.weight_support(&fg) {
            assert!(conv.weight_support(&f).iter().any(|a| conv.weight_support(&g).iter().any(|b| a + b == w)));
        }
    }
    let xx = conv.pol_product(&mt, &x, &x);
    let left = conv.pol_product(&mt, &xx, &x);
    let right = conv.pol_product(&mt, &x, &xx);
    assert!(!left.is_zero());
    assert_eq!(left, right);
    assert_eq!(conv.weight_support(&left).into_iter().collect::<Vec<_>>(), vec![6]);
}
