//! Quasi-free operads over `Comm` built from a semi-free Lie algebra: the
//! model of `P₁` and the terms of the resolution of `P₁^{≤m}`.
//!
//! Lie generators are divided-power monomials `x^[a] y_1^[b_1] ⋯ y_i^[b_i]`
//! (`x` of weight 2, each `y_j` of weight `2m+2`), all odd, with
//! `d g_α = ½ Σ_{β+γ=α} [g_β, g_γ]`. Each generator of weight `w` gives a
//! family of operations `g_α(c)`, one for every coP₁{1} cooperation with `w`
//! blocks, and
//! `d g_α(c) = (Σ_{β+γ=α} G_β ⋆ G_γ + μ ⋆ G_α + G_α ⋆ μ)(c)`.
//! With `i = 0` the generators are `p_n = x^[n−1]` and this is
//! `d p(c) = ((p + μ) ⋆ (p + μ) − μ ⋆ μ)(c)`.
//!
//! The product is kept associative by merging nested products into the
//! symmetric `k`-ary operations `μ_k` after every computation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::conv::{Conv, ConvError, ConvolutionElement};
use crate::cooperad::{Cooperad, CooperadKind, Cooperation};
use crate::free::{Alphabet, FreeOperad, Tree};
use crate::linear::LinComb;
use crate::operad::{format_element, Element};
use crate::symseq::Permutation;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelGen {
    /// The `k`-ary commutative product, degree 0.
    Mu(usize),
    /// `g_α(c)` for an exponent vector `α = (a, b_1, …)` and a cooperation
    /// with `weight(α)` blocks; degree `|g_α| + |c|`.
    P(Vec<u8>, Cooperation),
}

/// The Lie generators of one resolution term.
#[derive(Clone, Debug)]
pub struct LieGenerators {
    pub m: usize,
    pub i: usize,
}

impl LieGenerators {
    /// `a + (2m+1)·Σb + 1`.
    pub fn weight(&self, alpha: &[u8]) -> usize {
        let b: usize = alpha[1..].iter().map(|&x| x as usize).sum();
        alpha[0] as usize + (2 * self.m + 1) * b + 1
    }

    /// `1 + 2m·Σb`.
    pub fn degree(&self, alpha: &[u8]) -> i64 {
        let b: i64 = alpha[1..].iter().map(|&x| x as i64).sum();
        1 + 2 * self.m as i64 * b
    }

    /// Nonzero exponent vectors of weight at most `max_weight`.
    pub fn monomials(&self, max_weight: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut cur = vec![0u8; self.i + 1];
        self.extend(&mut cur, 0, max_weight, &mut out);
        out.retain(|a| a.iter().any(|&x| x > 0));
        out.sort_by_key(|a| (self.weight(a), a.clone()));
        out
    }

    fn extend(&self, cur: &mut Vec<u8>, pos: usize, max_weight: usize, out: &mut Vec<Vec<u8>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        loop {
            self.extend(cur, pos + 1, max_weight, out);
            cur[pos] += 1;
            if self.weight(cur) > max_weight {
                cur[pos] = 0;
                return;
            }
        }
    }

    pub fn name(&self, alpha: &[u8]) -> String {
        if self.i == 0 {
            return format!("p{}", alpha[0] as usize + 1);
        }
        let mut parts = Vec::new();
        for (j, &e) in alpha.iter().enumerate() {
            let v = if j == 0 { "x".to_string() } else { format!("y{j}") };
            match e {
                0 => {}
                1 => parts.push(v),
                e => parts.push(format!("{v}^[{e}]")),
            }
        }
        parts.join("·")
    }

    /// Ordered splittings `α = β + γ` with both parts nonzero.
    pub fn splittings(&self, alpha: &[u8]) -> Vec<(Vec<u8>, Vec<u8>)> {
        let mut out = Vec::new();
        let mut beta = vec![0u8; alpha.len()];
        loop {
            let gamma: Vec<u8> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
            if beta.iter().any(|&x| x > 0) && gamma.iter().any(|&x| x > 0) {
                out.push((beta.clone(), gamma));
            }
            let mut k = 0;
            while k < beta.len() && beta[k] == alpha[k] {
                beta[k] = 0;
                k += 1;
            }
            if k == beta.len() {
                return out;
            }
            beta[k] += 1;
        }
    }
}

pub struct ModelAlphabet {
    pub cooperad: Arc<Cooperad>,
    pub lie: LieGenerators,
}

impl Alphabet for ModelAlphabet {
    type G = ModelGen;

    fn arity(&self, g: &ModelGen) -> usize {
        match g {
            ModelGen::Mu(k) => *k,
            ModelGen::P(_, c) => c.n,
        }
    }

    fn degree(&self, g: &ModelGen) -> i64 {
        match g {
            ModelGen::Mu(_) => 0,
            ModelGen::P(a, c) => self.cooperad.degree(c) + self.lie.degree(a),
        }
    }

    fn relabel(&self, g: &ModelGen, rho: &Permutation) -> LinComb<ModelGen> {
        match g {
            ModelGen::Mu(k) => LinComb::basis(ModelGen::Mu(*k)),
            ModelGen::P(a, c) => self.cooperad.act(c, rho).map_keys(|z| ModelGen::P(a.clone(), *z)),
        }
    }

    fn name(&self, g: &ModelGen) -> String {
        match g {
            ModelGen::Mu(2) => "μ".into(),
            ModelGen::Mu(k) => format!("μ{k}"),
            ModelGen::P(_, c) if self.lie.i == 0 => format!("p[{}]", self.cooperad.name(c)),
            ModelGen::P(a, c) => format!("{}[{}]", self.lie.name(a), self.cooperad.name(c)),
        }
    }

    fn basis(&self, k: usize) -> Vec<ModelGen> {
        let mut out = Vec::new();
        if k >= 2 {
            out.push(ModelGen::Mu(k));
        }
        if k <= self.cooperad.max_arity {
            for a in self.lie.monomials(k) {
                let w = self.lie.weight(&a);
                out.extend(self.cooperad.basis(k).into_iter().filter(|c| self.cooperad.weight(c) == w).map(|c| ModelGen::P(a.clone(), c)));
            }
        }
        out
    }
}

pub type ModelOperad = FreeOperad<ModelAlphabet>;

/// A resolution term operad with its differential, truncated at `max_arity`.
pub struct PoissonModel {
    pub free: ModelOperad,
    pub max_arity: usize,
    /// `d g_α` as a convolution element, for every Lie generator `α`.
    diffs: BTreeMap<Vec<u8>, ConvolutionElement<ModelOperad>>,
}

#[derive(Debug, Serialize)]
pub struct ModelReport {
    pub max_arity: usize,
    pub generators_checked: usize,
    pub failures: Vec<String>,
}

impl PoissonModel {
    /// The model of `P₁`: the term `i = 0`.
    pub fn new(max_arity: usize) -> Result<Self, ConvError> {
        Self::resolution_term(0, 0, max_arity)
    }

    /// The `i`-th term of the resolution of `P₁^{≤m}`.
    pub fn resolution_term(m: usize, i: usize, max_arity: usize) -> Result<Self, ConvError> {
        let co = Arc::new(Cooperad::new(CooperadKind::CoP1, max_arity));
        let lie = LieGenerators { m, i };
        let monos = lie.monomials(max_arity);
        let free = FreeOperad::new(ModelAlphabet { cooperad: co.clone(), lie: lie.clone() });
        let conv = Conv::new(&co, &free, max_arity);
        let mut gens = BTreeMap::new();
        for a in &monos {
            let w = lie.weight(a);
            let vals = (2..=max_arity)
                .flat_map(|n| co.basis(n))
                .filter(|c| co.weight(c) == w)
                .map(|c| (c, free.corolla(&ModelGen::P(a.clone(), c))));
            gens.insert(a.clone(), conv.element(lie.degree(a), vals, true)?);
        }
        let mu = conv.element(1, [(conv.delta()?, free.corolla(&ModelGen::Mu(2)))], true)?;
        let mut diffs = BTreeMap::new();
        for a in &monos {
            let g = &gens[a];
            let mut d = conv.star(&mu, g).add(&conv.star(g, &mu));
            for (b, c) in lie.splittings(a) {
                d = d.add(&conv.star(&gens[&b], &gens[&c]));
            }
            for v in d.values.values_mut() {
                *v = merge_products(&free, v);
            }
            d.values.retain(|_, v| !v.is_zero());
            diffs.insert(a.clone(), d);
        }
        Ok(PoissonModel { free, max_arity, diffs })
    }

    pub fn lie(&self) -> &LieGenerators {
        &self.free.alphabet.lie
    }

    pub fn cooperad(&self) -> &Cooperad {
        &self.free.alphabet.cooperad
    }

    pub fn generator(&self, g: &ModelGen) -> Element<ModelOperad> {
        self.free.corolla(g)
    }

    /// The generator `p_n(c)`, `n` the number of blocks, for a cooperation
    /// given by its blocks.
    pub fn p(&self, blocks: &[Vec<u8>]) -> Option<Element<ModelOperad>> {
        let c = self.cooperad().by_blocks(blocks)?;
        let w = self.cooperad().weight(&c);
        let mut a = vec![0u8; self.lie().i + 1];
        a[0] = (w - 1) as u8;
        (w >= 2).then(|| self.generator(&ModelGen::P(a, c)))
    }

    pub fn d_generator(&self, g: &ModelGen) -> Element<ModelOperad> {
        match g {
            ModelGen::Mu(_) => LinComb::zero(),
            ModelGen::P(a, c) => self.diffs.get(a).map(|d| d.value(c)).unwrap_or_else(LinComb::zero),
        }
    }

    /// Generators and their differentials, for reports.
    pub fn to_json(&self) -> serde_json::Value {
        let al = &self.free.alphabet;
        let lie = self.lie();
        let mut lie_gens = Vec::new();
        for a in lie.monomials(self.max_arity) {
            let d: Vec<String> = lie
                .splittings(&a)
                .iter()
                .filter(|(b, c)| b <= c)
                .map(|(b, c)| {
                    let k = if b == c { "1/2" } else { "1" };
                    format!("{k}[{},{}]", lie.name(b), lie.name(c))
                })
                .collect();
            lie_gens.push(serde_json::json!({
                "name": lie.name(&a),
                "weight": lie.weight(&a),
                "degree": lie.degree(&a),
                "d": d,
            }));
        }
        let mut ops = Vec::new();
        for n in 2..=self.max_arity {
            for g in al.basis(n) {
                if let ModelGen::Mu(_) = g {
                    continue;
                }
                let d = self.d_generator(&g);
                let terms: BTreeMap<String, String> =
                    d.iter().map(|(t, v)| (self.free.fmt_tree(t), crate::linear::format_rational(v))).collect();
                ops.push(serde_json::json!({
                    "generator": al.name(&g),
                    "arity": n,
                    "degree": al.degree(&g),
                    "d": terms,
                }));
            }
        }
        serde_json::json!({
            "m": lie.m,
            "i": lie.i,
            "max_arity": self.max_arity,
            "lie_generators": lie_gens,
            "operations": ops,
            "sign_convention": "all Lie generators odd; d g = 1/2 sum [g', g''] over ordered splittings; d^2 = 0 checked, the global sign of d is not fixed by it",
        })
    }

    pub fn d(&self, x: &Element<ModelOperad>) -> Element<ModelOperad> {
        merge_products(&self.free, &self.free.derivation(&merge_products(&self.free, x), 1, &|g| self.d_generator(g)))
    }

    /// Partial composition in the model.
    pub fn compose(&self, a: &Element<ModelOperad>, i: usize, b: &Element<ModelOperad>) -> Element<ModelOperad> {
        merge_products(&self.free, &crate::operad::compose(&self.free, a, i, b))
    }

    pub fn relabel(&self, a: &Element<ModelOperad>, rho: &Permutation) -> Element<ModelOperad> {
        merge_products(&self.free, &crate::operad::relabel(&self.free, a, rho))
    }

    /// Spanning set of the degree-`degree` part in arity `n`, in normal form.
    pub fn spanning_trees(&self, n: usize, degree: i64) -> Vec<Element<ModelOperad>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for t in self.free.component_basis(n) {
            if self.free.tree_degree(&t) != degree {
                continue;
            }
            let e = self.relabel(&LinComb::basis(t), &Permutation::identity(n));
            if let Some((key, _)) = e.iter().next() {
                if e.len() == 1 && !seen.insert(key.clone()) {
                    continue;
                }
            }
            if !e.is_zero() {
                out.push(e);
            }
        }
        out
    }

    /// `dim H⁰` in arity `n`: degree-0 operations modulo boundaries.
    pub fn h0_dim(&self, n: usize) -> usize {
        let zero = self.spanning_trees(n, 0);
        let bounds: Vec<Element<ModelOperad>> = self.spanning_trees(n, -1).iter().map(|t| self.d(t)).collect();
        crate::linear::rank_of_rows(&zero) - crate::linear::rank_of_rows(&bounds)
    }

    pub fn check_square_zero(&self) -> ModelReport {
        let mut failures = Vec::new();
        let mut checked = 0;
        for n in 2..=self.max_arity {
            for g in self.free.alphabet.basis(n) {
                checked += 1;
                let dd = self.d(&self.d_generator(&g));
                if !dd.is_zero() {
                    failures.push(format!("{}: {}", self.free.alphabet.name(&g), format_element(&self.free, &dd)));
                }
            }
        }
        ModelReport { max_arity: self.max_arity, generators_checked: checked, failures }
    }
}

/// Projection to the quotient where `μ` is associative: nested products
/// merge into one `μ_k` whose inputs are re-sorted by minimal leaf.
pub fn merge_products(free: &ModelOperad, x: &Element<ModelOperad>) -> Element<ModelOperad> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        let (t2, odd) = merge_tree(free, t);
        out.add_scaled(&LinComb::basis(t2), &(c * crate::linear::sign_rational(odd)));
    }
    out
}

fn merge_tree(free: &ModelOperad, t: &Tree<ModelGen>) -> (Tree<ModelGen>, bool) {
    match t {
        Tree::Leaf(_) => (t.clone(), false),
        Tree::Node(g, ch) => {
            let mut odd = false;
            let mut kids = Vec::new();
            for c in ch {
                let (c2, o) = merge_tree(free, c);
                odd ^= o;
                match (g, &c2) {
                    (ModelGen::Mu(_), Tree::Node(ModelGen::Mu(_), grand)) => kids.extend(grand.iter().cloned()),
                    _ => kids.push(c2),
                }
            }
            if let ModelGen::Mu(_) = g {
                // Koszul sign of sorting the child blocks by minimal leaf
                let degs: Vec<i64> = kids.iter().map(|k| free.tree_degree(k)).collect();
                let mins: Vec<usize> = kids.iter().map(|k| k.min_leaf()).collect();
                for a in 0..kids.len() {
                    for b in a + 1..kids.len() {
                        if mins[a] > mins[b] && (degs[a] * degs[b]).rem_euclid(2) == 1 {
                            odd = !odd;
                        }
                    }
                }
                kids.sort_by_key(|k| k.min_leaf());
                (Tree::Node(ModelGen::Mu(kids.len()), kids), odd)
            } else {
                (Tree::Node(g.clone(), kids), odd)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_zero_to_arity_four() {
        let m = PoissonModel::new(4).unwrap();
        let rep = m.check_square_zero();
        assert!(rep.ok(), "{:?}", &rep.failures[..rep.failures.len().min(3)]);
    }

    #[test]
    fn h0_is_poisson_in_low_arity() {
        let m = PoissonModel::new(4).unwrap();
        assert_eq!((1..=4).map(|n| m.h0_dim(n)).collect::<Vec<_>>(), vec![1, 2, 6, 24]);
    }

    #[test]
    fn p_generators_have_weight_n() {
        let lie = LieGenerators { m: 1, i: 0 };
        let ms = lie.monomials(5);
        assert_eq!(ms.iter().map(|a| lie.weight(a)).collect::<Vec<_>>(), vec![2, 3, 4, 5]);
        assert!(ms.iter().all(|a| lie.degree(a) == 1));
        // d p_4 = [p_2, p_3]
        assert_eq!(lie.splittings(&ms[2]), vec![(vec![1], vec![2]), (vec![2], vec![1])]);
    }

    #[test]
    fn first_term_generators() {
        let lie = LieGenerators { m: 1, i: 1 };
        let names: Vec<String> = lie.monomials(6).iter().map(|a| lie.name(a)).collect();
        assert_eq!(names, vec!["x", "x^[2]", "y1", "x^[3]", "x·y1", "x^[4]", "x^[2]·y1", "x^[5]"]);
        assert_eq!(lie.degree(&[0, 1]), 3);
        assert_eq!(lie.weight(&[0, 1]), 4);
    }

    #[test]
    fn first_term_square_zero() {
        let m = PoissonModel::resolution_term(1, 1, 5).unwrap();
        let rep = m.check_square_zero();
        assert!(rep.ok(), "{:?}", &rep.failures[..rep.failures.len().min(3)]);
        // y(Δ₄) is a degree-0 cycle
        let co = m.cooperad();
        let d4 = co.by_blocks(&[vec![1], vec![2], vec![3], vec![4]]).unwrap();
        let y = ModelGen::P(vec![0, 1], d4);
        assert_eq!(m.free.alphabet.degree(&y), 0);
        assert!(m.d_generator(&y).is_zero());
    }

    #[test]
    fn zeroth_term_ignores_m() {
        let a = PoissonModel::resolution_term(0, 0, 4).unwrap();
        let b = PoissonModel::resolution_term(2, 0, 4).unwrap();
        for n in 2..=4 {
            for g in a.free.alphabet.basis(n) {
                assert_eq!(a.d_generator(&g), b.d_generator(&g));
            }
        }
    }
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}
