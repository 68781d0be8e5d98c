//! Free operads on shuffle trees.
//!
//! A basis tree has its children ordered by minimal leaf and each vertex
//! labelled by a basis generator of the right arity. The underlying tensor
//! order of vertex labels is pre-order; any other order met while grafting
//! is sorted back with the Koszul sign.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use num_traits::One;

use crate::linear::{sign_rational, LinComb, Rational};
use crate::operad::{compose, relabel, Element, Operad};
use crate::symseq::Permutation;

/// Generators of a free operad, with the symmetric group acting through
/// the same `relabel` convention as [`Operad`].
pub trait Alphabet: Send + Sync {
    type G: Ord + Clone + Debug + Hash + Send + Sync;
    fn arity(&self, g: &Self::G) -> usize;
    fn degree(&self, g: &Self::G) -> i64;
    fn relabel(&self, g: &Self::G, rho: &Permutation) -> LinComb<Self::G>;
    fn name(&self, g: &Self::G) -> String;
    /// Basis of generators in arity `k`.
    fn basis(&self, k: usize) -> Vec<Self::G>;
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree<G> {
    Leaf(usize),
    Node(G, Vec<Tree<G>>),
}

impl<G: Clone> Tree<G> {
    pub fn min_leaf(&self) -> usize {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(_, ch) => ch.iter().map(|c| c.min_leaf()).min().expect("children"),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Node(_, ch) => ch.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(_, ch) => 1 + ch.iter().map(|c| c.vertex_count()).sum::<usize>(),
        }
    }

    /// Vertex labels in pre-order.
    pub fn labels(&self) -> Vec<&G> {
        let mut out = Vec::new();
        fn rec<'a, G>(t: &'a Tree<G>, out: &mut Vec<&'a G>) {
            if let Tree::Node(g, ch) = t {
                out.push(g);
                ch.iter().for_each(|c| rec(c, out));
            }
        }
        rec(self, &mut out);
        out
    }
}

#[derive(Clone, Debug)]
enum Raw<G> {
    Leaf(usize),
    Node(usize, G, Vec<Raw<G>>),
}

pub struct FreeOperad<A: Alphabet> {
    pub alphabet: Arc<A>,
}

impl<A: Alphabet> Clone for FreeOperad<A> {
    fn clone(&self) -> Self {
        FreeOperad { alphabet: self.alphabet.clone() }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FreeError {
    #[error("composition of arity {got} exceeds truncation bound {max}")]
    Truncation { got: usize, max: usize },
    #[error("partial composition slot {slot} out of range for arity {arity}")]
    BadSlot { slot: usize, arity: usize },
}

impl<A: Alphabet> FreeOperad<A> {
    pub fn new(alphabet: A) -> Self {
        FreeOperad { alphabet: Arc::new(alphabet) }
    }

    pub fn from_arc(alphabet: Arc<A>) -> Self {
        FreeOperad { alphabet }
    }

    /// The corolla on a single generator.
    pub fn corolla(&self, g: &A::G) -> Element<Self> {
        let k = self.alphabet.arity(g);
        LinComb::basis(Tree::Node(g.clone(), (1..=k).map(Tree::Leaf).collect()))
    }

    /// Partial composition refusing to go past `max_arity`.
    pub fn checked_compose(
        &self,
        a: &Element<Self>,
        i: usize,
        b: &Element<Self>,
        max_arity: usize,
    ) -> Result<Element<Self>, FreeError> {
        let na = a.keys().next().map(|t| self.arity(t)).unwrap_or(0);
        let nb = b.keys().next().map(|t| self.arity(t)).unwrap_or(0);
        if a.is_zero() || b.is_zero() {
            return Ok(LinComb::zero());
        }
        if i == 0 || i > na {
            return Err(FreeError::BadSlot { slot: i, arity: na });
        }
        if na + nb - 1 > max_arity {
            return Err(FreeError::Truncation { got: na + nb - 1, max: max_arity });
        }
        Ok(compose(self, a, i, b))
    }

    fn to_raw(&self, t: &Tree<A::G>, next_id: &mut usize, leaf: &dyn Fn(usize) -> usize) -> Raw<A::G> {
        match t {
            Tree::Leaf(l) => Raw::Leaf(leaf(*l)),
            Tree::Node(g, ch) => {
                let id = *next_id;
                *next_id += 1;
                let ch = ch.iter().map(|c| self.to_raw(c, next_id, leaf)).collect();
                Raw::Node(id, g.clone(), ch)
            }
        }
    }

    /// Canonical form of a raw tree whose vertex labels sit in `order`.
    fn normalize(&self, raw: &Raw<A::G>, order: &[usize], degrees: &HashMap<usize, i64>) -> LinComb<Tree<A::G>> {
        let (_, comb, pre) = self.canon(raw);
        let pos: HashMap<usize, usize> = pre.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut odd = false;
        for a in 0..order.len() {
            if degrees[&order[a]] % 2 == 0 {
                continue;
            }
            for b in a + 1..order.len() {
                if degrees[&order[b]] % 2 != 0 && pos[&order[a]] > pos[&order[b]] {
                    odd = !odd;
                }
            }
        }
        if odd {
            comb.neg()
        } else {
            comb
        }
    }

    fn canon(&self, raw: &Raw<A::G>) -> (usize, LinComb<Tree<A::G>>, Vec<usize>) {
        match raw {
            Raw::Leaf(l) => (*l, LinComb::basis(Tree::Leaf(*l)), Vec::new()),
            Raw::Node(id, g, ch) => {
                let mut kids: Vec<(usize, LinComb<Tree<A::G>>, Vec<usize>, usize)> = ch
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let (m, comb, pre) = self.canon(c);
                        (m, comb, pre, j)
                    })
                    .collect();
                kids.sort_by_key(|k| k.0);
                let k = kids.len();
                let mut images = vec![0; k];
                for (new_pos, kid) in kids.iter().enumerate() {
                    images[kid.3] = new_pos + 1;
                }
                let rho = Permutation::new(images).expect("child order");
                let labels = if rho.is_identity() {
                    LinComb::basis(g.clone())
                } else {
                    self.alphabet.relabel(g, &rho)
                };
                let mut pre = vec![*id];
                for kid in &kids {
                    pre.extend_from_slice(&kid.2);
                }
                let mut partial: Vec<(Vec<Tree<A::G>>, Rational)> = vec![(Vec::new(), Rational::one())];
                for kid in &kids {
                    let mut next = Vec::with_capacity(partial.len() * kid.1.len());
                    for (v, c) in &partial {
                        for (t, ct) in kid.1.iter() {
                            let mut v2 = v.clone();
                            v2.push(t.clone());
                            next.push((v2, c * ct));
                        }
                    }
                    partial = next;
                }
                let mut out = LinComb::zero();
                for (lab, cl) in labels.iter() {
                    for (v, c) in &partial {
                        out.add_term(Tree::Node(lab.clone(), v.clone()), cl * c);
                    }
                }
                (kids[0].0, out, pre)
            }
        }
    }

    fn collect_degrees(&self, raw: &Raw<A::G>, out: &mut HashMap<usize, i64>) {
        if let Raw::Node(id, g, ch) = raw {
            out.insert(*id, self.alphabet.degree(g));
            ch.iter().for_each(|c| self.collect_degrees(c, out));
        }
    }

    fn preorder_ids(raw: &Raw<A::G>, out: &mut Vec<usize>) {
        if let Raw::Node(id, _, ch) = raw {
            out.push(*id);
            ch.iter().for_each(|c| Self::preorder_ids(c, out));
        }
    }

    /// Extends a degree-`deg_d` map on generators to a derivation.
    pub fn derivation(
        &self,
        x: &Element<Self>,
        deg_d: i64,
        on_gen: &dyn Fn(&A::G) -> Element<Self>,
    ) -> Element<Self> {
        let mut out = LinComb::zero();
        for (t, c) in x.iter() {
            out.add_scaled(&self.derivation_mono(t, deg_d, on_gen), c);
        }
        out
    }

    fn derivation_mono(&self, t: &Tree<A::G>, deg_d: i64, on_gen: &dyn Fn(&A::G) -> Element<Self>) -> Element<Self> {
        let mut next_id = 0;
        let raw = self.to_raw(t, &mut next_id, &|l| l);
        let mut pre = Vec::new();
        Self::preorder_ids(&raw, &mut pre);
        let mut degrees = HashMap::new();
        self.collect_degrees(&raw, &mut degrees);
        let mut out = LinComb::zero();
        let mut passed = 0i64;
        for (r, &vid) in pre.iter().enumerate() {
            let sign = sign_rational((deg_d * passed).rem_euclid(2) == 1);
            passed += degrees[&vid];
            let label = find_label(&raw, vid).expect("vertex");
            let dg = on_gen(&label);
            for (rep, c) in dg.iter() {
                let mut id2 = next_id;
                let rep_raw = self.to_raw(rep, &mut id2, &|l| l);
                let mut rep_pre = Vec::new();
                Self::preorder_ids(&rep_raw, &mut rep_pre);
                let mut degs = degrees.clone();
                degs.remove(&vid);
                self.collect_degrees(&rep_raw, &mut degs);
                let grafted = substitute_vertex(&raw, vid, &rep_raw);
                let mut order = pre[..r].to_vec();
                order.extend_from_slice(&rep_pre);
                order.extend_from_slice(&pre[r + 1..]);
                out.add_scaled(&self.normalize(&grafted, &order, &degs), &(c * &sign));
            }
        }
        out
    }

    /// All basis trees with `n` leaves.
    pub fn component_basis(&self, n: usize) -> Vec<Tree<A::G>> {
        let leaves: Vec<usize> = (1..=n).collect();
        self.trees_on(&leaves)
    }

    fn trees_on(&self, leaves: &[usize]) -> Vec<Tree<A::G>> {
        if leaves.len() == 1 {
            return vec![Tree::Leaf(leaves[0])];
        }
        let mut out = Vec::new();
        for part in ordered_set_partitions(leaves) {
            let k = part.len();
            if k < 2 {
                continue;
            }
            let gens = self.alphabet.basis(k);
            if gens.is_empty() {
                continue;
            }
            let subs: Vec<Vec<Tree<A::G>>> = part.iter().map(|b| self.trees_on(b)).collect();
            let mut combos: Vec<Vec<Tree<A::G>>> = vec![Vec::new()];
            for s in &subs {
                let mut next = Vec::new();
                for c in &combos {
                    for t in s {
                        let mut c2 = c.clone();
                        c2.push(t.clone());
                        next.push(c2);
                    }
                }
                combos = next;
            }
            for g in &gens {
                for c in &combos {
                    out.push(Tree::Node(g.clone(), c.clone()));
                }
            }
        }
        out
    }

    pub fn tree_degree(&self, t: &Tree<A::G>) -> i64 {
        t.labels().iter().map(|g| self.alphabet.degree(g)).sum()
    }

    pub fn fmt_tree(&self, t: &Tree<A::G>) -> String {
        match t {
            Tree::Leaf(l) => l.to_string(),
            Tree::Node(g, ch) => {
                let inner: Vec<String> = ch.iter().map(|c| self.fmt_tree(c)).collect();
                format!("{}({})", self.alphabet.name(g), inner.join(","))
            }
        }
    }
}

fn find_label<G: Clone>(raw: &Raw<G>, id: usize) -> Option<G> {
    match raw {
        Raw::Leaf(_) => None,
        Raw::Node(i, g, ch) => {
            if *i == id {
                Some(g.clone())
            } else {
                ch.iter().find_map(|c| find_label(c, id))
            }
        }
    }
}

fn substitute_vertex<G: Clone>(raw: &Raw<G>, id: usize, rep: &Raw<G>) -> Raw<G> {
    match raw {
        Raw::Leaf(l) => Raw::Leaf(*l),
        Raw::Node(i, g, ch) => {
            let ch2: Vec<Raw<G>> = ch.iter().map(|c| substitute_vertex(c, id, rep)).collect();
            if *i == id {
                plug_leaves(rep, &ch2)
            } else {
                Raw::Node(*i, g.clone(), ch2)
            }
        }
    }
}

fn plug_leaves<G: Clone>(rep: &Raw<G>, inputs: &[Raw<G>]) -> Raw<G> {
    match rep {
        Raw::Leaf(l) => inputs[*l - 1].clone(),
        Raw::Node(i, g, ch) => Raw::Node(*i, g.clone(), ch.iter().map(|c| plug_leaves(c, inputs)).collect()),
    }
}

/// Set partitions of `items` with blocks ordered by their minima.
pub fn ordered_set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    crate::classical::set_partitions(items.len())
        .into_iter()
        .map(|p| p.into_iter().map(|b| b.into_iter().map(|j| items[j as usize - 1]).collect()).collect())
        .collect()
}

impl<A: Alphabet> Operad for FreeOperad<A> {
    type Mono = Tree<A::G>;

    fn arity(&self, t: &Tree<A::G>) -> usize {
        match t {
            Tree::Leaf(_) => 1,
            Tree::Node(_, ch) => ch.iter().map(|c| self.arity(c)).sum(),
        }
    }

    fn degree(&self, t: &Tree<A::G>) -> i64 {
        self.tree_degree(t)
    }

    fn compose_mono(&self, a: &Tree<A::G>, i: usize, b: &Tree<A::G>) -> LinComb<Tree<A::G>> {
        let m = self.arity(b);
        let mut next_id = 0;
        let ra = self.to_raw(a, &mut next_id, &|l| l);
        let split = next_id;
        let rb = self.to_raw(b, &mut next_id, &|l| l + i - 1);
        let grafted = graft(&ra, i, m, &rb);
        let order: Vec<usize> = (0..next_id).collect();
        let mut degrees = HashMap::new();
        self.collect_degrees(&grafted, &mut degrees);
        let _ = split;
        self.normalize(&grafted, &order, &degrees)
    }

    fn relabel_mono(&self, a: &Tree<A::G>, rho: &Permutation) -> LinComb<Tree<A::G>> {
        let mut next_id = 0;
        let raw = self.to_raw(a, &mut next_id, &|l| rho.apply(l));
        let mut pre = Vec::new();
        Self::preorder_ids(&raw, &mut pre);
        let mut degrees = HashMap::new();
        self.collect_degrees(&raw, &mut degrees);
        self.normalize(&raw, &pre, &degrees)
    }

    fn unit(&self) -> Tree<A::G> {
        Tree::Leaf(1)
    }

    fn fmt_mono(&self, t: &Tree<A::G>) -> String {
        self.fmt_tree(t)
    }
}

fn graft<G: Clone>(a: &Raw<G>, i: usize, m: usize, b: &Raw<G>) -> Raw<G> {
    match a {
        Raw::Leaf(l) if *l == i => b.clone(),
        Raw::Leaf(l) if *l > i => Raw::Leaf(l + m - 1),
        Raw::Leaf(l) => Raw::Leaf(*l),
        Raw::Node(id, g, ch) => Raw::Node(*id, g.clone(), ch.iter().map(|c| graft(c, i, m, b)).collect()),
    }
}

/// Evaluates a tree in `o`, sending each generator to an element of `o`.
pub fn evaluate<A: Alphabet, O: Operad>(
    free: &FreeOperad<A>,
    o: &O,
    x: &Element<FreeOperad<A>>,
    on_gen: &dyn Fn(&A::G) -> Element<O>,
) -> Element<O> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        out.add_scaled(&eval_tree(free, o, t, on_gen), c);
    }
    out
}

fn eval_tree<A: Alphabet, O: Operad>(
    free: &FreeOperad<A>,
    o: &O,
    t: &Tree<A::G>,
    on_gen: &dyn Fn(&A::G) -> Element<O>,
) -> Element<O> {
    match t {
        Tree::Leaf(_) => LinComb::basis(o.unit()),
        Tree::Node(g, ch) => {
            let mut acc = on_gen(g);
            let mut slot = 1;
            let mut concat = Vec::new();
            for c in ch {
                let v = eval_tree(free, o, c, on_gen);
                let mut lv = c.leaves();
                lv.sort();
                acc = compose(o, &acc, slot, &v);
                slot += lv.len();
                concat.extend(lv);
            }
            let mut sorted = concat.clone();
            sorted.sort();
            let images: Vec<usize> = concat.iter().map(|l| sorted.binary_search(l).expect("leaf") + 1).collect();
            let pi = Permutation::new(images).expect("leaf ranks");
            if pi.is_identity() {
                acc
            } else {
                relabel(o, &acc, &pi)
            }
        }
    }
}

/// A finite alphabet given by explicit tables.
#[derive(Clone, Debug)]
pub struct TableAlphabet {
    pub gens: Vec<TableGen>,
}

#[derive(Clone, Debug)]
pub struct TableGen {
    pub name: String,
    pub arity: usize,
    pub degree: i64,
    /// Sign under every transposition of inputs; `None` means no symmetry
    /// (the generator spans a free `S_k`-orbit).
    pub symmetry: Symmetry,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Alphabet for TableAlphabet {
    type G = usize;

    fn arity(&self, g: &usize) -> usize {
        self.gens[*g].arity
    }

    fn degree(&self, g: &usize) -> i64 {
        self.gens[*g].degree
    }

    fn relabel(&self, g: &usize, rho: &Permutation) -> LinComb<usize> {
        let odd = self.gens[*g].symmetry == Symmetry::Antisymmetric && crate::symseq::perm_sign(rho) < 0;
        LinComb::term(*g, sign_rational(odd))
    }

    fn name(&self, g: &usize) -> String {
        self.gens[*g].name.clone()
    }

    fn basis(&self, k: usize) -> Vec<usize> {
        (0..self.gens.len()).filter(|&g| self.gens[g].arity == k).collect()
    }
}

impl TableAlphabet {
    pub fn binary(spec: &[(&str, i64, Symmetry)]) -> Self {
        TableAlphabet {
            gens: spec
                .iter()
                .map(|(n, d, s)| TableGen { name: n.to_string(), arity: 2, degree: *d, symmetry: *s })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::format_element;

    fn lie_free() -> FreeOperad<TableAlphabet> {
        FreeOperad::new(TableAlphabet::binary(&[("l", 0, Symmetry::Antisymmetric)]))
    }

    #[test]
    fn component_sizes() {
        let f = lie_free();
        assert_eq!(f.component_basis(1).len(), 1);
        assert_eq!(f.component_basis(2).len(), 1);
        assert_eq!(f.component_basis(3).len(), 3);
        assert_eq!(f.component_basis(4).len(), 15);
    }

    #[test]
    fn canonical_reordering_uses_symmetry() {
        let f = lie_free();
        let l = f.corolla(&0);
        let swapped = relabel(&f, &l, &Permutation::new(vec![2, 1]).unwrap());
        assert_eq!(swapped, l.neg(), "{}", format_element(&f, &swapped));
    }

    #[test]
    fn odd_vertices_anticommute() {
        let f = FreeOperad::new(TableAlphabet::binary(&[("b", -1, Symmetry::Symmetric)]));
        let b = f.corolla(&0);
        let x = compose(&f, &compose(&f, &b, 1, &b), 3, &b);
        let y = compose(&f, &compose(&f, &b, 2, &b), 1, &b);
        assert_eq!(x, y.neg());
    }

    #[test]
    fn truncation_is_an_error() {
        let f = lie_free();
        let l = f.corolla(&0);
        let ll = f.checked_compose(&l, 1, &l, 3).unwrap();
        assert!(matches!(f.checked_compose(&ll, 1, &l, 3), Err(FreeError::Truncation { got: 4, max: 3 })));
    }
}
