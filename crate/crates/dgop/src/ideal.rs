//! Operadic ideals by saturation, and quotients of free operads.

use std::collections::BTreeMap;
use std::hash::Hash;

use crate::free::{FreeOperad, Symmetry, TableAlphabet, Tree};
use crate::linear::{Echelon, LinComb};
use crate::operad::{compose, relabel, Element, FiniteOperad, Operad};
use crate::symseq::Permutation;

/// One arity of a saturated ideal, split into homogeneous pieces.
pub struct IdealComponent<O: Operad, K: Ord, G: Ord> {
    pub arity: usize,
    pieces: BTreeMap<G, (Echelon<K>, Vec<Element<O>>)>,
}

impl<O: Operad, K: Ord + Clone, G: Ord> IdealComponent<O, K, G> {
    pub fn rank(&self) -> usize {
        self.pieces.values().map(|(e, _)| e.rank()).sum()
    }

    /// Independent elements spanning this component.
    pub fn spanning_elements(&self) -> impl Iterator<Item = &Element<O>> {
        self.pieces.values().flat_map(|(_, r)| r.iter())
    }

    /// Reduced echelon rows, piece by piece.
    pub fn rows(&self) -> Vec<LinComb<K>> {
        self.pieces.values().flat_map(|(e, _)| e.rows().cloned()).collect()
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool
    where
        K: Clone,
    {
        // v may mix pieces; reduce against all of them in turn.
        let mut r = v.clone();
        for (e, _) in self.pieces.values() {
            r = e.reduce(&r);
        }
        r.is_zero()
    }
}

/// Saturation data: how to coordinatise and grade elements of `O`.
pub struct Saturator<'a, O: Operad, K: Ord, G> {
    pub operad: &'a O,
    /// Elements generating `O` as an operad; the ideal is closed under
    /// composing with these on either side.
    pub operad_generators: Vec<Element<O>>,
    pub coords: Box<dyn Fn(usize, &Element<O>) -> LinComb<K> + Sync + 'a>,
    /// Grading respected by compositions and the ideal generators.
    pub grade: Box<dyn Fn(&O::Mono) -> G + Sync + 'a>,
}

impl<'a, O: Operad, K: Ord + Clone, G: Ord + Clone> Saturator<'a, O, K, G> {
    fn split(&self, x: &Element<O>) -> BTreeMap<G, Element<O>> {
        let mut out: BTreeMap<G, Element<O>> = BTreeMap::new();
        for (m, c) in x.iter() {
            out.entry((self.grade)(m)).or_insert_with(LinComb::zero).add_term(m.clone(), c.clone());
        }
        out
    }

    fn insert(&self, comp: &mut IdealComponent<O, K, G>, x: &Element<O>, fresh: &mut Vec<Element<O>>) {
        for (g, part) in self.split(x) {
            let v = (self.coords)(comp.arity, &part);
            if v.is_zero() {
                continue;
            }
            let entry = comp.pieces.entry(g).or_insert_with(|| (Echelon::new(), Vec::new()));
            if entry.0.insert(&v) {
                entry.1.push(part.clone());
                fresh.push(part);
            }
        }
    }

    /// Components of the ideal generated by `seeds` in arities `1..=n_max`.
    pub fn saturate(&self, seeds: &[Element<O>], n_max: usize) -> Vec<IdealComponent<O, K, G>> {
        let o = self.operad;
        let arity_of = |x: &Element<O>| x.keys().next().map(|m| o.arity(m));
        let mut comps: Vec<IdealComponent<O, K, G>> = Vec::new();
        for n in 1..=n_max {
            let mut comp = IdealComponent { arity: n, pieces: BTreeMap::new() };
            let mut fresh = Vec::new();
            for s in seeds.iter().filter(|s| arity_of(s) == Some(n)) {
                self.insert(&mut comp, s, &mut fresh);
            }
            for g in &self.operad_generators {
                let Some(k) = arity_of(g) else { continue };
                if k > n || k < 2 {
                    continue;
                }
                let lower = n + 1 - k;
                let reps: Vec<Element<O>> = comps[lower - 1].spanning_elements().cloned().collect();
                for x in &reps {
                    for i in 1..=k {
                        let y = compose(o, g, i, x);
                        self.insert(&mut comp, &y, &mut fresh);
                    }
                    for i in 1..=lower {
                        let y = compose(o, x, i, g);
                        self.insert(&mut comp, &y, &mut fresh);
                    }
                }
            }
            // Close under S_n through adjacent transpositions.
            while let Some(x) = fresh.pop() {
                for j in 1..n {
                    let y = relabel(o, &x, &Permutation::adjacent(n, j));
                    self.insert(&mut comp, &y, &mut fresh);
                }
            }
            comps.push(comp);
        }
        comps
    }
}

/// A free operad on binary generators modulo relations.
pub struct Presentation {
    pub name: String,
    pub free: FreeOperad<TableAlphabet>,
    pub relations: Vec<Element<FreeOperad<TableAlphabet>>>,
}

type FreeTable = FreeOperad<TableAlphabet>;

fn label_counts(t: &Tree<usize>) -> Vec<usize> {
    let mut counts = vec![0usize; 4];
    for g in t.labels() {
        if *g >= counts.len() {
            counts.resize(*g + 1, 0);
        }
        counts[*g] += 1;
    }
    counts
}

impl Presentation {
    fn gen(&self, name: &str) -> Element<FreeTable> {
        let g = self.free.alphabet.gens.iter().position(|g| g.name == name).expect("generator");
        self.free.corolla(&g)
    }

    fn tree(&self, spec: &[(i64, &str, usize, &str, [usize; 3])]) -> Element<FreeTable> {
        // (coefficient, outer, slot, inner, leaf permutation)
        let mut out = LinComb::zero();
        for (c, outer, slot, inner, perm) in spec {
            let t = compose(&self.free, &self.gen(outer), *slot, &self.gen(inner));
            let t = relabel(&self.free, &t, &Permutation::new(perm.to_vec()).expect("perm"));
            out.add_scaled(&t, &crate::linear::int(*c));
        }
        out
    }

    pub fn comm() -> Self {
        let mut p = Self::empty("Comm", &[("m", 0, Symmetry::Symmetric)]);
        p.relations = vec![p.tree(&[(1, "m", 1, "m", [1, 2, 3]), (-1, "m", 2, "m", [1, 2, 3])])];
        p
    }

    pub fn lie() -> Self {
        let mut p = Self::empty("Lie", &[("l", 0, Symmetry::Antisymmetric)]);
        p.relations = vec![p.jacobi("l")];
        p
    }

    pub fn p1() -> Self {
        let mut p = Self::empty("P1", &[("m", 0, Symmetry::Symmetric), ("l", 0, Symmetry::Antisymmetric)]);
        p.relations = vec![
            p.tree(&[(1, "m", 1, "m", [1, 2, 3]), (-1, "m", 2, "m", [1, 2, 3])]),
            p.jacobi("l"),
            p.leibniz("l"),
        ];
        p
    }

    /// Bracket of degree −1, symmetric as an operation.
    pub fn p2() -> Self {
        let mut p = Self::empty("P2", &[("m", 0, Symmetry::Symmetric), ("b", -1, Symmetry::Symmetric)]);
        p.relations = vec![
            p.tree(&[(1, "m", 1, "m", [1, 2, 3]), (-1, "m", 2, "m", [1, 2, 3])]),
            p.jacobi("b"),
            p.leibniz("b"),
        ];
        p
    }

    fn empty(name: &str, gens: &[(&str, i64, Symmetry)]) -> Self {
        Presentation { name: name.into(), free: FreeOperad::new(TableAlphabet::binary(gens)), relations: Vec::new() }
    }

    /// `Σ_cyc br(br(x_1, x_2), x_3)`.
    fn jacobi(&self, br: &str) -> Element<FreeTable> {
        self.tree(&[(1, br, 1, br, [1, 2, 3]), (1, br, 1, br, [2, 3, 1]), (1, br, 1, br, [3, 1, 2])])
    }

    /// `br(x_1, x_2 x_3) − br(x_1, x_2) x_3 − x_2 br(x_1, x_3)`.
    fn leibniz(&self, br: &str) -> Element<FreeTable> {
        self.tree(&[(1, br, 2, "m", [1, 2, 3]), (-1, "m", 1, br, [1, 2, 3]), (-1, "m", 1, br, [1, 3, 2])])
    }

    pub fn saturator(&self) -> Saturator<'_, FreeTable, Tree<usize>, Vec<usize>> {
        let gens = (0..self.free.alphabet.gens.len()).map(|g| self.free.corolla(&g)).collect();
        Saturator {
            operad: &self.free,
            operad_generators: gens,
            coords: Box::new(|_, x| x.clone()),
            grade: Box::new(label_counts),
        }
    }

    /// Dimensions of the quotient `Free(n)/I(n)` for `n = 1..=n_max`.
    pub fn quotient_dims(&self, n_max: usize) -> Vec<usize> {
        let sat = self.saturator();
        let comps = sat.saturate(&self.relations, n_max);
        (1..=n_max).map(|n| self.free.component_basis(n).len() - comps[n - 1].rank()).collect()
    }
}

/// `dim (Comm ∘ Lie)(n) = Σ over set partitions of Π (|B| − 1)!`.
pub fn comm_lie_dim(n: usize) -> u64 {
    crate::classical::set_partitions(n)
        .iter()
        .map(|p| p.iter().map(|b| (1..b.len() as u64).product::<u64>()).product::<u64>())
        .sum()
}

/// Saturation inside a finite operad, in its own coordinates.
pub fn finite_saturator<O: FiniteOperad>(
    o: &O,
    operad_generators: Vec<Element<O>>,
    grade: impl Fn(&O::Mono) -> i64 + Sync + 'static,
) -> Saturator<'_, O, usize, i64>
where
    O::Mono: Hash,
{
    Saturator {
        operad: o,
        operad_generators,
        coords: Box::new(move |n, x| o.coordinates(n, x)),
        grade: Box::new(grade),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::evaluate;
    use crate::classical::Classical;

    #[test]
    fn small_quotient_dims() {
        assert_eq!(Presentation::comm().quotient_dims(4), vec![1, 1, 1, 1]);
        assert_eq!(Presentation::lie().quotient_dims(4), vec![1, 1, 2, 6]);
        assert_eq!(Presentation::p1().quotient_dims(4), vec![1, 2, 6, 24]);
        assert_eq!(Presentation::p2().quotient_dims(4), vec![1, 2, 6, 24]);
    }

    #[test]
    fn composite_formula() {
        let v: Vec<u64> = (1..=6).map(comm_lie_dim).collect();
        assert_eq!(v, vec![1, 2, 6, 24, 120, 720]);
    }

    #[test]
    fn relations_hold_in_normal_forms() {
        for (p, o) in [(Presentation::p1(), Classical::p1()), (Presentation::p2(), Classical::p2())] {
            let on_gen = |g: &usize| if *g == 0 { o.product() } else { o.bracket() };
            for r in &p.relations {
                assert!(evaluate(&p.free, &o, r, &on_gen).is_zero(), "{}", p.name);
            }
        }
    }
}
