//! Operads given by partial compositions on monomials.
//!
//! Relabeling convention: `relabel(a, ρ)` sends input `j` of `a` to input
//! `ρ(j)`, i.e. `relabel(a, ρ)(y_1,…,y_n) = a(y_{ρ(1)},…,y_{ρ(n)})`. This is
//! a left action: `relabel(relabel(a, ρ), τ) = relabel(a, τ∘ρ)`.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::One;

use crate::linear::{sign_rational, LinComb, Rational};
use crate::symseq::{perm_sign, Permutation};

pub type Element<O> = LinComb<<O as Operad>::Mono>;

pub trait Operad: Send + Sync {
    type Mono: Ord + Clone + Debug + Send + Sync;

    fn arity(&self, m: &Self::Mono) -> usize;
    fn degree(&self, m: &Self::Mono) -> i64;
    /// `a ∘_i b` with inputs of `b` occupying `i..i+m-1`.
    fn compose_mono(&self, a: &Self::Mono, i: usize, b: &Self::Mono) -> LinComb<Self::Mono>;
    fn relabel_mono(&self, a: &Self::Mono, rho: &Permutation) -> LinComb<Self::Mono>;
    fn unit(&self) -> Self::Mono;
    fn fmt_mono(&self, m: &Self::Mono) -> String;
}

/// Operads with a chosen finite basis in each arity and exact coordinates.
pub trait FiniteOperad: Operad {
    fn dim(&self, n: usize) -> usize;
    /// The `idx`-th basis element of arity `n`.
    fn basis_element(&self, n: usize, idx: usize) -> Element<Self>;
    fn basis_name(&self, n: usize, idx: usize) -> String;
    fn basis_degree(&self, n: usize, idx: usize) -> i64;
    /// Coordinates of an arity-`n` element in the chosen basis.
    fn coordinates(&self, n: usize, x: &Element<Self>) -> LinComb<usize>;
}

pub fn compose<O: Operad + ?Sized>(o: &O, a: &Element<O>, i: usize, b: &Element<O>) -> Element<O> {
    let mut out = LinComb::zero();
    for (ma, ca) in a.iter() {
        for (mb, cb) in b.iter() {
            out.add_scaled(&o.compose_mono(ma, i, mb), &(ca * cb));
        }
    }
    out
}

pub fn relabel<O: Operad + ?Sized>(o: &O, a: &Element<O>, rho: &Permutation) -> Element<O> {
    a.flat_map(|m| o.relabel_mono(m, rho))
}

pub fn element_arity<O: Operad + ?Sized>(o: &O, a: &Element<O>) -> Option<usize> {
    a.keys().next().map(|m| o.arity(m))
}

pub fn format_element<O: Operad + ?Sized>(o: &O, a: &Element<O>) -> String {
    a.map_keys(|m| o.fmt_mono(m)).to_string()
}

/// Leaf set `S` of a child vertex in a two-vertex shuffle tree with `n`
/// leaves. The root inputs are `([n] \ S) ∪ {min S}` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoVertexShape {
    pub n: usize,
    pub child: Vec<usize>,
}

impl TwoVertexShape {
    pub fn root_arity(&self) -> usize {
        self.n - self.child.len() + 1
    }

    /// Position of the child among the root inputs.
    pub fn slot(&self) -> usize {
        let m0 = self.child[0];
        (1..m0).filter(|x| !self.child.contains(x)).count() + 1
    }

    /// Permutation from standard composition order to actual leaves.
    pub fn leaf_map(&self) -> Permutation {
        let i = self.slot();
        let rest: Vec<usize> = (1..=self.n).filter(|x| !self.child.contains(x)).collect();
        let mut images = Vec::with_capacity(self.n);
        images.extend_from_slice(&rest[..i - 1]);
        images.extend_from_slice(&self.child);
        images.extend_from_slice(&rest[i - 1..]);
        Permutation::new(images).expect("leaf map")
    }

    /// All shapes with `n` leaves and a child of arity `m`.
    pub fn all(n: usize, m: usize) -> Vec<TwoVertexShape> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<TwoVertexShape>) {
            if cur.len() == m {
                out.push(TwoVertexShape { n, child: cur.clone() });
                return;
            }
            for x in start..=n {
                cur.push(x);
                rec(n, m, x + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, m, 1, &mut cur, &mut out);
        out
    }
}

/// Value of the two-vertex tree with root `a` and child `b` of the given shape.
pub fn eval_two_vertex<O: Operad + ?Sized>(
    o: &O,
    a: &Element<O>,
    b: &Element<O>,
    shape: &TwoVertexShape,
) -> Element<O> {
    let c = compose(o, a, shape.slot(), b);
    relabel(o, &c, &shape.leaf_map())
}

/// Sign of sorting `items` by key when each item has a parity; returns the
/// sorted items and whether the Koszul sign is odd.
pub fn koszul_sort<T, K: Ord>(items: Vec<(T, bool)>, key: impl Fn(&T) -> K) -> (Vec<T>, bool) {
    let n = items.len();
    let mut odd = false;
    for a in 0..n {
        for b in a + 1..n {
            if items[a].1 && items[b].1 && key(&items[a].0) > key(&items[b].0) {
                odd = !odd;
            }
        }
    }
    let mut items = items;
    items.sort_by(|x, y| key(&x.0).cmp(&key(&y.0)));
    (items.into_iter().map(|(t, _)| t).collect(), odd)
}

/// `P{k}`: arity-`n` component `P(n) ⊗ sgn^{⊗k}[k(n-1)]`, realised as the
/// Hadamard product with the endomorphism operad of a line in degree `-k`.
pub struct Suspended<O> {
    pub inner: O,
    pub k: i64,
}

impl<O: Operad> Suspended<O> {
    pub fn new(inner: O, k: i64) -> Self {
        Suspended { inner, k }
    }

    fn odd(&self) -> bool {
        self.k.rem_euclid(2) == 1
    }
}

impl<O: Operad> Operad for Suspended<O> {
    type Mono = O::Mono;

    fn arity(&self, m: &Self::Mono) -> usize {
        self.inner.arity(m)
    }

    fn degree(&self, m: &Self::Mono) -> i64 {
        self.inner.degree(m) - self.k * (self.inner.arity(m) as i64 - 1)
    }

    fn compose_mono(&self, a: &Self::Mono, i: usize, b: &Self::Mono) -> LinComb<Self::Mono> {
        let c = self.inner.compose_mono(a, i, b);
        if !self.odd() {
            return c;
        }
        let n = self.inner.arity(a) as i64;
        let m = self.inner.arity(b) as i64;
        let lam = (m - 1) * (i as i64 - 1);
        let hadamard = (n - 1) * self.inner.degree(b);
        c.scaled(&sign_rational((lam + hadamard).rem_euclid(2) == 1))
    }

    fn relabel_mono(&self, a: &Self::Mono, rho: &Permutation) -> LinComb<Self::Mono> {
        let c = self.inner.relabel_mono(a, rho);
        if self.odd() && perm_sign(rho) < 0 {
            c.neg()
        } else {
            c
        }
    }

    fn unit(&self) -> Self::Mono {
        self.inner.unit()
    }

    fn fmt_mono(&self, m: &Self::Mono) -> String {
        self.inner.fmt_mono(m)
    }
}

impl<O: FiniteOperad> FiniteOperad for Suspended<O> {
    fn dim(&self, n: usize) -> usize {
        self.inner.dim(n)
    }

    fn basis_element(&self, n: usize, idx: usize) -> Element<Self> {
        self.inner.basis_element(n, idx)
    }

    fn basis_name(&self, n: usize, idx: usize) -> String {
        self.inner.basis_name(n, idx)
    }

    fn basis_degree(&self, n: usize, idx: usize) -> i64 {
        self.inner.basis_degree(n, idx) - self.k * (n as i64 - 1)
    }

    fn coordinates(&self, n: usize, x: &Element<Self>) -> LinComb<usize> {
        self.inner.coordinates(n, x)
    }
}

/// Matrix of `relabel(-, ρ)` on the chosen basis: column `idx` holds the
/// coordinates of `relabel(b_idx, ρ)`.
pub fn relabel_matrix<O: FiniteOperad + ?Sized>(o: &O, rho: &Permutation) -> Vec<LinComb<usize>> {
    let n = rho.n();
    (0..o.dim(n))
        .map(|idx| o.coordinates(n, &relabel(o, &o.basis_element(n, idx), rho)))
        .collect()
}

/// Failures of the operad axioms found by [`check_axioms`].
#[derive(Debug, Default)]
pub struct AxiomReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Exhaustive check of sequential and parallel associativity, the unit and
/// equivariance on basis elements of arity `<= max_total`.
pub fn check_axioms<O: FiniteOperad + ?Sized>(o: &O, max_total: usize) -> AxiomReport {
    let mut rep = AxiomReport::default();
    let unit = LinComb::basis(o.unit());
    let basis = |n: usize| -> Vec<Element<O>> { (0..o.dim(n)).map(|i| o.basis_element(n, i)).collect() };
    let mut cache: BTreeMap<usize, Vec<Element<O>>> = BTreeMap::new();
    for n in 1..=max_total {
        cache.insert(n, basis(n));
    }
    for n in 1..=max_total {
        for a in &cache[&n] {
            for i in 1..=n {
                rep.checked += 1;
                if compose(o, a, i, &unit) != *a {
                    rep.failures.push(format!("right unit at {i} on {}", format_element(o, a)));
                }
            }
            if compose(o, &unit, 1, a) != *a {
                rep.failures.push(format!("left unit on {}", format_element(o, a)));
            }
        }
    }
    for na in 2..=max_total {
        for nb in 2..=max_total {
            for nc in 1..=max_total {
                if na + nb + nc - 2 > max_total {
                    continue;
                }
                for a in &cache[&na] {
                    for b in &cache[&nb] {
                        for c in &cache[&nc] {
                            for i in 1..=na {
                                // sequential: (a ∘_i b) ∘_{i+j-1} c = a ∘_i (b ∘_j c)
                                for j in 1..=nb {
                                    rep.checked += 1;
                                    let l = compose(o, &compose(o, a, i, b), i + j - 1, c);
                                    let r = compose(o, a, i, &compose(o, b, j, c));
                                    if l != r {
                                        rep.failures.push(format!("sequential ({na},{i},{nb},{j},{nc})"));
                                    }
                                }
                                // parallel: (a ∘_i b) ∘_{k+nb-1} c = ± (a ∘_k c) ∘_i b for k > i
                                for k in i + 1..=na {
                                    rep.checked += 1;
                                    let l = compose(o, &compose(o, a, i, b), k + nb - 1, c);
                                    let r = compose(o, &compose(o, a, k, c), i, b);
                                    let db = b.keys().next().map(|m| o.degree(m)).unwrap_or(0);
                                    let dc = c.keys().next().map(|m| o.degree(m)).unwrap_or(0);
                                    let r = r.scaled(&sign_rational((db * dc).rem_euclid(2) == 1));
                                    if l != r {
                                        rep.failures.push(format!("parallel ({na},{i},{k},{nb},{nc})"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // Equivariance: relabel(a, σ) ∘_{σ(i)} relabel(b, τ) = relabel(a ∘_i b, σ∘_i τ).
    for na in 2..=max_total {
        for nb in 1..=max_total + 1 - na {
            for a in &cache[&na] {
                for b in &cache[&nb] {
                    for sigma in Permutation::all(na) {
                        for tau in [Permutation::identity(nb), reversal(nb)] {
                            for i in 1..=na {
                                rep.checked += 1;
                                let l = compose(
                                    o,
                                    &relabel(o, a, &sigma),
                                    sigma.apply(i),
                                    &relabel(o, b, &tau),
                                );
                                let r = relabel(o, &compose(o, a, i, b), &block_permutation(&sigma, i, &tau));
                                if l != r {
                                    rep.failures.push(format!("equivariance ({na},{nb},{sigma},{i})"));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep
}

fn reversal(n: usize) -> Permutation {
    Permutation::new((1..=n).rev().collect()).expect("reversal")
}

/// The permutation `σ ∘_i τ`: input `i` of `σ` is blown up to the block
/// carrying `τ`.
pub fn block_permutation(sigma: &Permutation, i: usize, tau: &Permutation) -> Permutation {
    let n = sigma.n();
    let m = tau.n();
    let target_start = sigma.apply(i);
    let mut images = Vec::with_capacity(n + m - 1);
    let new_pos = |v: usize| -> usize {
        if v < target_start {
            v
        } else {
            v + m - 1
        }
    };
    for j in 1..=n {
        if j == i {
            for t in 1..=m {
                images.push(target_start + tau.apply(t) - 1);
            }
        } else {
            images.push(new_pos(sigma.apply(j)));
        }
    }
    Permutation::new(images).expect("block permutation")
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::Classical;

    #[test]
    fn suspensions_are_operads() {
        for k in [-1, 1, -2] {
            for o in [Classical::comm(), Classical::lie(), Classical::p1(), Classical::p2()] {
                let kind = o.kind;
                let rep = check_axioms(&Suspended::new(o, k), 4);
                assert!(rep.failures.is_empty(), "{kind:?}{{{k}}}: {:?}", &rep.failures[..rep.failures.len().min(4)]);
            }
        }
    }

    #[test]
    fn two_vertex_shape_maps_leaves() {
        let s = TwoVertexShape { n: 4, child: vec![2, 4] };
        assert_eq!(s.slot(), 2);
        assert_eq!(s.root_arity(), 3);
        assert_eq!(s.leaf_map().images(), &[1, 2, 4, 3]);
    }
}
