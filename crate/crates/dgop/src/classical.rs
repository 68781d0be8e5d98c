//! Comm, Lie, P₁ and P₂ through one normal form.
//!
//! An element is a linear combination of products of associative words on
//! disjoint letter blocks; each block stands for a Lie polynomial sitting
//! inside the tensor algebra. Products are commutative (graded for P₂, where
//! a block on `k` letters carries the sign line of `Lie{1}(k)` and has degree
//! `1-k`). The chosen basis in arity `n` is the set of products of left-normed
//! brackets `[[x_a, x_b], …]` whose first letter is the block minimum; the
//! coordinate of an element on such a basis vector is the coefficient of the
//! corresponding word tuple.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::linear::{sign_rational, LinComb, Rational};
use crate::operad::{koszul_sort, Element, FiniteOperad, Operad};
use crate::symseq::Permutation;

pub type Word = Vec<u8>;

/// Blocks sorted by their minimal letter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PMono(pub Vec<Word>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassicalKind {
    Comm,
    Lie,
    P1,
    P2,
}

struct ArityData {
    monos: Vec<PMono>,
    index: HashMap<PMono, usize>,
    elements: Vec<Element<Classical>>,
}

pub struct Classical {
    pub kind: ClassicalKind,
    cache: Mutex<BTreeMap<usize, Arc<ArityData>>>,
}

impl Clone for Classical {
    fn clone(&self) -> Self {
        Classical::new(self.kind)
    }
}

impl std::fmt::Debug for Classical {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Classical({:?})", self.kind)
    }
}

fn block_min(w: &Word) -> u8 {
    *w.iter().min().expect("empty block")
}

impl Classical {
    pub fn new(kind: ClassicalKind) -> Self {
        Classical { kind, cache: Mutex::new(BTreeMap::new()) }
    }
    pub fn comm() -> Self {
        Self::new(ClassicalKind::Comm)
    }
    pub fn lie() -> Self {
        Self::new(ClassicalKind::Lie)
    }
    pub fn p1() -> Self {
        Self::new(ClassicalKind::P1)
    }
    pub fn p2() -> Self {
        Self::new(ClassicalKind::P2)
    }

    fn graded(&self) -> bool {
        self.kind == ClassicalKind::P2
    }

    fn odd(&self, w: &Word) -> bool {
        self.graded() && w.len() % 2 == 0
    }

    /// Sorts blocks into canonical order, returning the signed monomial.
    fn canonical(&self, blocks: Vec<Word>) -> (PMono, bool) {
        let items: Vec<(Word, bool)> = blocks
            .into_iter()
            .map(|w| {
                let o = self.odd(&w);
                (w, o)
            })
            .collect();
        let (sorted, odd) = koszul_sort(items, block_min);
        (PMono(sorted), odd)
    }

    /// Sign of `β(x_a, Y) = ±[x_a, Y] ⊗ e` for a block on `set` in P₂.
    fn bracket_sign(&self, set: &[u8], a: u8) -> bool {
        let below = set.iter().filter(|&&y| y < a).count();
        (set.len() - 1 + below) % 2 == 1
    }

    /// The product generator `x_1 · x_2`.
    pub fn product(&self) -> Element<Self> {
        LinComb::basis(PMono(vec![vec![1], vec![2]]))
    }

    /// The bracket generator `[x_1, x_2]`.
    pub fn bracket(&self) -> Element<Self> {
        let mut x = LinComb::basis(PMono(vec![vec![1, 2]]));
        x.add_term(PMono(vec![vec![2, 1]]), -Rational::from_integer(1.into()));
        x
    }

    /// `μ_n = x_1 ⋯ x_n`.
    pub fn product_n(&self, n: usize) -> Element<Self> {
        LinComb::basis(PMono((1..=n as u8).map(|i| vec![i]).collect()))
    }

    /// Left-normed bracket polynomial on the given letters.
    pub fn left_normed(letters: &[u8]) -> LinComb<Word> {
        let mut acc: LinComb<Word> = LinComb::basis(vec![letters[0]]);
        for &x in &letters[1..] {
            let mut next = LinComb::zero();
            for (w, c) in acc.iter() {
                let mut a = w.clone();
                a.push(x);
                next.add_term(a, c.clone());
                let mut b = vec![x];
                b.extend_from_slice(w);
                next.add_term(b, -c.clone());
            }
            acc = next;
        }
        acc
    }

    /// Product of block polynomials given in canonical block order.
    pub fn product_of_blocks(&self, blocks: &[LinComb<Word>]) -> Element<Self> {
        let mut acc: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), Rational::from_integer(1.into()))];
        for b in blocks {
            let mut next = Vec::new();
            for (ws, c) in &acc {
                for (w, cw) in b.iter() {
                    let mut ws2 = ws.clone();
                    ws2.push(w.clone());
                    next.push((ws2, c * cw));
                }
            }
            acc = next;
        }
        let mut out = LinComb::zero();
        for (ws, c) in acc {
            let (m, odd) = self.canonical(ws);
            out.add_term(m, if odd { -c } else { c });
        }
        out
    }

    fn arity_data(&self, n: usize) -> Arc<ArityData> {
        if let Some(d) = self.cache.lock().expect("cache").get(&n) {
            return d.clone();
        }
        let mut monos = Vec::new();
        let partitions: Vec<Vec<Vec<u8>>> = match self.kind {
            ClassicalKind::Comm => vec![(1..=n as u8).map(|i| vec![i]).collect()],
            ClassicalKind::Lie => vec![vec![(1..=n as u8).collect()]],
            _ => set_partitions(n),
        };
        for part in &partitions {
            let choices: Vec<Vec<Word>> = part
                .iter()
                .map(|b| {
                    Permutation::all(b.len() - 1)
                        .into_iter()
                        .map(|p| {
                            let mut w = vec![b[0]];
                            w.extend(p.images().iter().map(|&j| b[j]));
                            w
                        })
                        .collect()
                })
                .collect();
            for combo in cartesian(&choices) {
                monos.push(PMono(combo));
            }
        }
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let elements = monos
            .iter()
            .map(|m| {
                let blocks: Vec<LinComb<Word>> = m.0.iter().map(|w| Self::left_normed(w)).collect();
                self.product_of_blocks(&blocks)
            })
            .collect();
        let data = Arc::new(ArityData { monos, index, elements });
        self.cache.lock().expect("cache").insert(n, data.clone());
        data
    }

    pub fn basis_monos(&self, n: usize) -> Vec<PMono> {
        self.arity_data(n).monos.clone()
    }
}

/// Set partitions of `{1..n}`, blocks sorted, in restricted-growth order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn rec(pos: usize, max: usize, n: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<u8>>>) {
        if pos == n {
            let k = rgs.iter().max().map(|m| m + 1).unwrap_or(0);
            let mut blocks = vec![Vec::new(); k];
            for (i, &b) in rgs.iter().enumerate() {
                blocks[b].push(i as u8 + 1);
            }
            out.push(blocks);
            return;
        }
        let lim = if pos == 0 { 0 } else { max + 1 };
        for b in 0..=lim {
            rgs[pos] = b;
            rec(pos + 1, max.max(b), n, rgs, out);
        }
    }
    if n > 0 {
        rec(0, 0, n, &mut rgs, &mut out);
    }
    out
}

fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::with_capacity(acc.len() * c.len());
        for a in &acc {
            for x in c {
                let mut v = a.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn inversions(xs: &[u8]) -> usize {
    let mut c = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                c += 1;
            }
        }
    }
    c
}

fn word_name(w: &Word) -> String {
    if w.len() == 1 {
        format!("x{}", w[0])
    } else {
        let inner: Vec<String> = w.iter().map(|x| format!("x{x}")).collect();
        format!("[{}]", inner.join(","))
    }
}

impl Operad for Classical {
    type Mono = PMono;

    fn arity(&self, m: &PMono) -> usize {
        m.0.iter().map(|w| w.len()).sum()
    }

    fn degree(&self, m: &PMono) -> i64 {
        if self.graded() {
            -(m.0.iter().map(|w| w.len() as i64 - 1).sum::<i64>())
        } else {
            0
        }
    }

    fn compose_mono(&self, a: &PMono, i: usize, b: &PMono) -> LinComb<PMono> {
        let m = self.arity(b);
        let iu = i as u8;
        let shift_a = |x: u8| if x > iu { x + m as u8 - 1 } else { x };
        let ablocks: Vec<Word> = a.0.iter().map(|w| w.iter().map(|&x| shift_a(x)).collect()).collect();
        let bblocks: Vec<Word> = b.0.iter().map(|w| w.iter().map(|&x| x + iu - 1).collect()).collect();
        let s = ablocks.iter().position(|w| w.contains(&iu)).expect("input present");
        let deg_b = self.degree(b);
        let mut sign_odd = false;
        if self.graded() {
            let after: i64 = ablocks[s + 1..].iter().map(|w| 1 - w.len() as i64).sum();
            sign_odd = (deg_b * after).rem_euclid(2) == 1;
        }
        let mut out = LinComb::zero();
        let target = &ablocks[s];
        if target.len() == 1 {
            let mut blocks = Vec::new();
            blocks.extend_from_slice(&ablocks[..s]);
            blocks.extend(bblocks.iter().cloned());
            blocks.extend_from_slice(&ablocks[s + 1..]);
            let (mono, odd) = self.canonical(blocks);
            out.add_term(mono, sign_rational(odd ^ sign_odd));
            return out;
        }
        if bblocks.len() == 1 {
            let bu = &bblocks[0];
            let mut odd = sign_odd;
            if self.graded() {
                let mut sorted = target.clone();
                sorted.sort();
                let p = sorted.iter().position(|&x| x == iu).expect("letter") as i64 + 1;
                odd ^= ((bu.len() as i64 - 1) * (p - 1)).rem_euclid(2) == 1;
            }
            let mut spliced = Vec::with_capacity(target.len() + bu.len() - 1);
            for &x in target {
                if x == iu {
                    spliced.extend_from_slice(bu);
                } else {
                    spliced.push(x);
                }
            }
            let mut blocks = ablocks.clone();
            blocks[s] = spliced;
            let (mono, o2) = self.canonical(blocks);
            out.add_term(mono, sign_rational(odd ^ o2));
            return out;
        }
        // A Lie block is determined by its words ending in the substituted
        // letter v; such a word x_{a_1}…x_{a_k} v is the coordinate of the
        // right-normed bracket [x_{a_1},[…,[x_{a_k}, v]]], and each ad
        // distributes over the inserted product as a derivation.
        if *target.last().expect("block") != iu {
            return out;
        }
        let letters = &target[..target.len() - 1];
        let mut eps = sign_odd;
        if self.graded() {
            let mut set = vec![iu];
            for &a in letters.iter().rev() {
                eps ^= self.bracket_sign(&set, a);
                set.push(a);
            }
        }
        let t = bblocks.len();
        let k = letters.len();
        let mut assign = vec![0usize; k];
        loop {
            let mut factors: Vec<(LinComb<Word>, Vec<u8>)> =
                bblocks.iter().map(|w| (LinComb::basis(w.clone()), w.clone())).collect();
            let mut odd = eps;
            for j in (0..k).rev() {
                let u = assign[j];
                let a = letters[j];
                if self.graded() {
                    let before: usize = factors[..u].iter().map(|(_, set)| set.len() - 1).sum();
                    odd ^= before % 2 == 1;
                    odd ^= self.bracket_sign(&factors[u].1, a);
                }
                let (poly, set) = &factors[u];
                let mut next = LinComb::zero();
                for (w, c) in poly.iter() {
                    let mut left = vec![a];
                    left.extend_from_slice(w);
                    next.add_term(left, c.clone());
                    let mut right = w.clone();
                    right.push(a);
                    next.add_term(right, -c.clone());
                }
                let mut set = set.clone();
                set.push(a);
                factors[u] = (next, set);
            }
            let mut polys: Vec<LinComb<Word>> = Vec::new();
            polys.extend(ablocks[..s].iter().map(|w| LinComb::basis(w.clone())));
            polys.extend(factors.into_iter().map(|(p, _)| p));
            polys.extend(ablocks[s + 1..].iter().map(|w| LinComb::basis(w.clone())));
            let prod = self.product_of_blocks(&polys);
            out.add_scaled(&prod, &sign_rational(odd));
            // next assignment
            let mut pos = 0;
            loop {
                if pos == k {
                    return out;
                }
                assign[pos] += 1;
                if assign[pos] < t {
                    break;
                }
                assign[pos] = 0;
                pos += 1;
            }
        }
    }

    fn relabel_mono(&self, a: &PMono, rho: &Permutation) -> LinComb<PMono> {
        let mut odd = false;
        let mut blocks = Vec::with_capacity(a.0.len());
        for w in &a.0 {
            let mapped: Word = w.iter().map(|&x| rho.apply(x as usize) as u8).collect();
            if self.graded() {
                let mut letters = w.clone();
                letters.sort();
                let images: Vec<u8> = letters.iter().map(|&x| rho.apply(x as usize) as u8).collect();
                odd ^= inversions(&images) % 2 == 1;
            }
            blocks.push(mapped);
        }
        let (mono, o2) = self.canonical(blocks);
        LinComb::term(mono, sign_rational(odd ^ o2))
    }

    fn unit(&self) -> PMono {
        PMono(vec![vec![1]])
    }

    fn fmt_mono(&self, m: &PMono) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .map(|w| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        format!("<{}>", parts.join("|"))
    }
}

impl FiniteOperad for Classical {
    fn dim(&self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        self.arity_data(n).monos.len()
    }

    fn basis_element(&self, n: usize, idx: usize) -> Element<Self> {
        self.arity_data(n).elements[idx].clone()
    }

    fn basis_name(&self, n: usize, idx: usize) -> String {
        let d = self.arity_data(n);
        d.monos[idx].0.iter().map(word_name).collect::<Vec<_>>().join("·")
    }

    fn basis_degree(&self, n: usize, idx: usize) -> i64 {
        let d = self.arity_data(n);
        self.degree(&d.monos[idx])
    }

    fn coordinates(&self, n: usize, x: &Element<Self>) -> LinComb<usize> {
        let d = self.arity_data(n);
        let mut out = LinComb::zero();
        for (m, c) in x.iter() {
            if let Some(&idx) = d.index.get(m) {
                out.add_term(idx, c.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{check_axioms, compose};

    #[test]
    fn dims() {
        let expect: [(ClassicalKind, [usize; 4]); 4] = [
            (ClassicalKind::Comm, [1, 1, 1, 1]),
            (ClassicalKind::Lie, [1, 1, 2, 6]),
            (ClassicalKind::P1, [1, 2, 6, 24]),
            (ClassicalKind::P2, [1, 2, 6, 24]),
        ];
        for (k, dims) in expect {
            let o = Classical::new(k);
            for n in 1..=4 {
                assert_eq!(o.dim(n), dims[n - 1], "{k:?} {n}");
            }
        }
    }

    #[test]
    fn jacobiator_vanishes() {
        let o = Classical::p1();
        let l = o.bracket();
        let ll = compose(&o, &l, 1, &l);
        let mut jac = LinComb::zero();
        for rho in [Permutation::identity(3), Permutation::new(vec![2, 3, 1]).unwrap(), Permutation::new(vec![3, 1, 2]).unwrap()] {
            jac.add(&crate::operad::relabel(&o, &ll, &rho));
        }
        assert!(jac.is_zero());
    }

    #[test]
    fn axioms_hold() {
        for k in [ClassicalKind::Comm, ClassicalKind::Lie, ClassicalKind::P1, ClassicalKind::P2] {
            let rep = check_axioms(&Classical::new(k), 4);
            assert!(rep.failures.is_empty(), "{k:?}: {:?}", &rep.failures[..rep.failures.len().min(5)]);
        }
    }
}
