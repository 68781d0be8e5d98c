//! Cobar constructions, presentations with differentials, and the
//! resolution term operads of the degenerate Poisson operads.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cooperad::{Cooperad, Cooperation};
use crate::free::{Alphabet, FreeError, FreeOperad, Tree};
use crate::linear::{sign_rational, LinComb};
use crate::operad::{eval_two_vertex, format_element, Element};
use crate::symseq::Permutation;

/// Generators `s⁻¹c` of a cobar construction.
pub struct CobarAlphabet {
    pub cooperad: Arc<Cooperad>,
}

impl Alphabet for CobarAlphabet {
    type G = Cooperation;

    fn arity(&self, g: &Cooperation) -> usize {
        g.n
    }

    fn degree(&self, g: &Cooperation) -> i64 {
        self.cooperad.degree(g) + 1
    }

    fn relabel(&self, g: &Cooperation, rho: &Permutation) -> LinComb<Cooperation> {
        self.cooperad.act(g, rho)
    }

    fn name(&self, g: &Cooperation) -> String {
        format!("s⁻¹{}", self.cooperad.name(g))
    }

    fn basis(&self, k: usize) -> Vec<Cooperation> {
        if k < 2 || k > self.cooperad.max_arity {
            return Vec::new();
        }
        self.cooperad.basis(k)
    }
}

pub type CobarOperad = FreeOperad<CobarAlphabet>;
pub type OperadElement = Element<CobarOperad>;

/// A quasi-free operad truncated at `max_arity`, with its differential on
/// generators.
pub struct Cobar {
    pub free: CobarOperad,
    pub max_arity: usize,
}

#[derive(Debug, Serialize)]
pub struct SquareZeroReport {
    pub cooperad: String,
    pub max_arity: usize,
    pub generators_checked: usize,
    pub failures: Vec<String>,
}

impl SquareZeroReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl Cobar {
    pub fn new(cooperad: Arc<Cooperad>, max_arity: usize) -> Self {
        Cobar { free: FreeOperad::new(CobarAlphabet { cooperad }), max_arity }
    }

    pub fn cooperad(&self) -> &Cooperad {
        &self.free.alphabet.cooperad
    }

    pub fn generator(&self, c: &Cooperation) -> OperadElement {
        self.free.corolla(c)
    }

    /// `d(s⁻¹c) = -Σ (-1)^{|c_root|} κ · T(s⁻¹c_root, s⁻¹c_child)` over the
    /// reduced decomposition of `c`.
    pub fn d_generator(&self, c: &Cooperation) -> OperadElement {
        let co = self.cooperad();
        let mut out = LinComb::zero();
        for (t, k) in co.decompose(c, true).iter() {
            let tree = eval_two_vertex(&self.free, &self.free.corolla(&t.root), &self.free.corolla(&t.child), &t.shape);
            let odd = co.degree(&t.root).rem_euclid(2) == 0;
            out.add_scaled(&tree, &(k * sign_rational(odd)));
        }
        out
    }

    pub fn d(&self, x: &OperadElement) -> OperadElement {
        self.free.derivation(x, 1, &|g| self.d_generator(g))
    }

    pub fn compose_elements(&self, a: &OperadElement, i: usize, b: &OperadElement) -> Result<OperadElement, FreeError> {
        self.free.checked_compose(a, i, b, self.max_arity)
    }

    pub fn check_square_zero(&self) -> SquareZeroReport {
        let co = self.cooperad();
        let mut failures = Vec::new();
        let mut checked = 0;
        for n in 2..=self.max_arity {
            for c in co.basis(n) {
                checked += 1;
                let dd = self.d(&self.d_generator(&c));
                if !dd.is_zero() {
                    failures.push(format!("{}: {}", co.name(&c), format_element(&self.free, &dd)));
                }
            }
        }
        SquareZeroReport { cooperad: co.kind.label().into(), max_arity: self.max_arity, generators_checked: checked, failures }
    }

    /// Generators and their differentials, for reports.
    pub fn to_json(&self) -> serde_json::Value {
        let co = self.cooperad();
        let mut gens = Vec::new();
        for n in 2..=self.max_arity {
            for c in co.basis(n) {
                let d = self.d_generator(&c);
                let terms: BTreeMap<String, String> = d
                    .iter()
                    .map(|(t, v)| (self.free.fmt_tree(t), crate::linear::format_rational(v)))
                    .collect();
                gens.push(serde_json::json!({
                    "generator": self.free.alphabet.name(&c),
                    "arity": n,
                    "degree": co.degree(&c) + 1,
                    "d": terms,
                }));
            }
        }
        serde_json::json!({ "cooperad": co.kind.label(), "max_arity": self.max_arity, "generators": gens })
    }
}

/// Evaluates `Tree` vertex labels for display.
pub fn tree_string(c: &Cobar, t: &Tree<Cooperation>) -> String {
    c.free.fmt_tree(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cooperad::*;

    #[test]
    fn square_zero_to_arity_five() {
        for co in [build_cocomm_shifted(5), build_colie_shifted(5), build_cop1_counital(5), build_cop2(5)] {
            let cobar = Cobar::new(Arc::new(co), 5);
            let rep = cobar.check_square_zero();
            assert!(rep.ok(), "{}: {:?}", rep.cooperad, &rep.failures[..rep.failures.len().min(3)]);
        }
    }

    #[test]
    fn colie_generator_is_symmetric_degree_zero() {
        let cobar = Cobar::new(Arc::new(build_colie_shifted(3)), 3);
        let g = Cooperation { n: 2, idx: 0 };
        assert_eq!(cobar.free.alphabet.degree(&g), 0);
        let x = cobar.generator(&g);
        let y = crate::operad::relabel(&cobar.free, &x, &Permutation::new(vec![2, 1]).unwrap());
        assert_eq!(x, y);
    }
}
