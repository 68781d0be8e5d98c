//! The degeneracy ideals of `P₁` and the quotients `H⁰(P₁^{≤m})`.

use serde::Serialize;

use crate::classical::Classical;
use crate::conv::{Conv, ConvError};
use crate::cooperad::{build_cop1_counital, Cooperad};
use crate::ideal::{finite_saturator, IdealComponent};
use crate::linear::{sign_rational, LinComb, Rational};
use crate::operad::{compose, relabel, Element, FiniteOperad};
use crate::symseq::{perm_sign, Permutation};

/// `μ_{m+1}(l(x_1,x_2), …, l(x_{2m+1},x_{2m+2}))`.
pub fn bracket_product(p1: &Classical, m: usize) -> Element<Classical> {
    let mut e = p1.product_n(m + 1);
    for j in (1..=m + 1).rev() {
        e = compose(p1, &e, j, &p1.bracket());
    }
    e
}

/// `Σ_σ sgn(σ) σ·x`, without normalization.
pub fn antisymmetrize(p1: &Classical, x: &Element<Classical>, n: usize) -> Element<Classical> {
    let mut out = LinComb::zero();
    for s in Permutation::all(n) {
        out.add_scaled(&relabel(p1, x, &s), &sign_rational(perm_sign(&s) < 0));
    }
    out
}

/// The generator of the `m`-th degeneracy ideal, in `P₁(2m+2)`.
pub fn degeneracy_generator(p1: &Classical, m: usize) -> Element<Classical> {
    antisymmetrize(p1, &bracket_product(p1, m), 2 * m + 2)
}

/// The scalar `s` with `degeneracy_generator(m) = s · x^{m+1}(Δ_{2m+2})`.
pub fn power_scalar(m: usize) -> Result<Option<Rational>, ConvError> {
    let p1 = Classical::p1();
    let n = 2 * m + 2;
    let co: Cooperad = build_cop1_counital(n);
    let conv = Conv::new(&co, &p1, n);
    let mt = conv.mu_tilde(&p1.product())?;
    let x = conv.x_element(&p1.bracket())?;
    let xp = conv.x_power(&mt, &x, m + 1)?;
    Ok(degeneracy_generator(&p1, m).proportional_to(&xp.value(&conv.delta_n(n))))
}

/// Components of the operadic ideal generated by `seeds` in `P₁`, arities
/// `1..=n_max`. Block count is the weight and every composition respects it.
pub fn p1_ideal(p1: &Classical, seeds: &[Element<Classical>], n_max: usize) -> Vec<IdealComponent<Classical, usize, i64>> {
    let sat = finite_saturator(p1, vec![p1.product(), p1.bracket()], |m| m.0.len() as i64);
    sat.saturate(seeds, n_max)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct QuotientDims {
    pub m: usize,
    pub max_arity: usize,
    /// Indexed by arity `1..=max_arity`.
    pub ambient: Vec<usize>,
    pub ideal: Vec<usize>,
    pub quotient: Vec<usize>,
}

/// `dim P₁(n) − dim I_m(n)` for `n = 1..=n_max`.
pub fn h0_quotient_dims(m: usize, n_max: usize) -> QuotientDims {
    let p1 = Classical::p1();
    let comps = p1_ideal(&p1, &[degeneracy_generator(&p1, m)], n_max);
    let ambient: Vec<usize> = (1..=n_max).map(|n| p1.dim(n)).collect();
    let ideal: Vec<usize> = comps.iter().map(|c| c.rank()).collect();
    let quotient = ambient.iter().zip(&ideal).map(|(a, i)| a - i).collect();
    QuotientDims { m, max_arity: n_max, ambient, ideal, quotient }
}

/// Basis coordinates of the ideal component in arity `n`.
pub fn ideal_component(m: usize, n: usize) -> Vec<LinComb<usize>> {
    let p1 = Classical::p1();
    let comps = p1_ideal(&p1, &[degeneracy_generator(&p1, m)], n);
    comps[n - 1].rows()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{int, rank_of_rows};

    #[test]
    fn m0_generator_is_twice_the_bracket() {
        let p1 = Classical::p1();
        assert_eq!(degeneracy_generator(&p1, 0), p1.bracket().scaled(&int(2)));
    }

    #[test]
    fn generator_is_sign_equivariant() {
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, 1);
        assert!(!g.is_zero());
        for s in Permutation::all(4) {
            let expect = g.scaled(&sign_rational(perm_sign(&s) < 0));
            assert_eq!(relabel(&p1, &g, &s), expect);
        }
    }

    #[test]
    fn bracket_ideal_leaves_comm() {
        let p1 = Classical::p1();
        let comps = p1_ideal(&p1, &[p1.bracket()], 4);
        assert_eq!(comps.iter().map(|c| c.rank()).collect::<Vec<_>>(), vec![0, 1, 5, 23]);
    }

    #[test]
    fn arity_four_ideal_is_the_orbit_span() {
        // nothing of lower arity, so I(4) is the S₄-span of the generator
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, 1);
        let orbit: Vec<LinComb<usize>> = Permutation::all(4).iter().map(|s| p1.coordinates(4, &relabel(&p1, &g, s))).collect();
        let q = h0_quotient_dims(1, 4);
        assert_eq!(q.quotient, vec![1, 2, 6, 24 - rank_of_rows(&orbit)]);
    }
}
