//! Labeled rooted trees and the preLie operad.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cooperad::Cooperation;
use crate::linear::{int, LinComb};
use crate::symseq::Permutation;

/// A rooted tree on the vertices `1..=n`; `parent[v-1]` is `None` at the root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
}

pub type TreeSum = LinComb<RootedTree>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("vertex {0} out of range for a tree with {1} vertices")]
    BadIndex(usize, usize),
    #[error("not a rooted tree: {0}")]
    Invalid(String),
    #[error("cannot parse tree: {0}")]
    Parse(String),
    #[error("label at vertex {0} does not fit its in-degree {1}")]
    BadArity(usize, usize),
}

impl RootedTree {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Invalid("empty".into()));
        }
        if parent.iter().filter(|p| p.is_none()).count() != 1 {
            return Err(TreeError::Invalid("need exactly one root".into()));
        }
        if parent.iter().flatten().any(|&p| p == 0 || p > n) {
            return Err(TreeError::Invalid("parent out of range".into()));
        }
        let t = RootedTree { parent };
        for v in 1..=n {
            let mut cur = v;
            for _ in 0..=n {
                match t.parent[cur - 1] {
                    None => break,
                    Some(p) => cur = p,
                }
            }
            if t.parent[cur - 1].is_some() {
                return Err(TreeError::Invalid("cycle".into()));
            }
        }
        Ok(t)
    }

    pub fn single() -> Self {
        RootedTree { parent: vec![None] }
    }

    /// Root 1 with children `2..=n`.
    pub fn corolla(n: usize) -> Self {
        let mut parent = vec![Some(1); n];
        parent[0] = None;
        RootedTree { parent }
    }

    /// The chain `1 ← 2 ← … ← n`.
    pub fn chain(n: usize) -> Self {
        RootedTree { parent: (0..n).map(|v| if v == 0 { None } else { Some(v) }).collect() }
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn root(&self) -> usize {
        self.parent.iter().position(|p| p.is_none()).expect("root") + 1
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (1..=self.n()).filter(|&u| self.parent[u - 1] == Some(v)).collect()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.parent.iter().filter(|&&p| p == Some(v)).count()
    }

    /// Vertices of the subtree hanging at `v`, in increasing order.
    pub fn subtree(&self, v: usize) -> Vec<usize> {
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let w = out[i];
            out.extend(self.children(w));
            i += 1;
        }
        out.sort();
        out
    }

    /// `σ` acts by renaming vertex `v` to `σ(v)`.
    pub fn relabel(&self, sigma: &Permutation) -> Self {
        let mut parent = vec![None; self.n()];
        for v in 1..=self.n() {
            parent[sigma.apply(v) - 1] = self.parent[v - 1].map(|p| sigma.apply(p));
        }
        RootedTree { parent }
    }

    /// All rooted trees on `n` labeled vertices.
    pub fn all(n: usize) -> Vec<RootedTree> {
        let mut out = Vec::new();
        let mut cur = vec![None; n];
        fn rec(v: usize, n: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<RootedTree>) {
            if v > n {
                if let Ok(t) = RootedTree::new(cur.clone()) {
                    out.push(t);
                }
                return;
            }
            for p in std::iter::once(None).chain((1..=n).filter(|&p| p != v).map(Some)) {
                cur[v - 1] = p;
                rec(v + 1, n, cur, out);
            }
        }
        rec(1, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for RootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &RootedTree, v: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{v}")?;
            let ch = t.children(v);
            if !ch.is_empty() {
                write!(f, "(")?;
                for (k, c) in ch.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    go(t, *c, f)?;
                }
                write!(f, ")")?;
            }
            Ok(())
        }
        go(self, self.root(), f)
    }
}

impl FromStr for RootedTree {
    type Err = TreeError;

    /// Parses `root(child,child(grandchild))`.
    fn from_str(s: &str) -> Result<Self, TreeError> {
        let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut edges: Vec<(usize, Option<usize>)> = Vec::new();
        let mut pos = 0;
        fn parse(s: &[char], pos: &mut usize, up: Option<usize>, edges: &mut Vec<(usize, Option<usize>)>) -> Result<(), TreeError> {
            let start = *pos;
            while *pos < s.len() && s[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let label: usize = s[start..*pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| TreeError::Parse(format!("expected a vertex at {start}")))?;
            edges.push((label, up));
            if *pos < s.len() && s[*pos] == '(' {
                *pos += 1;
                loop {
                    parse(s, pos, Some(label), edges)?;
                    match s.get(*pos) {
                        Some(',') => *pos += 1,
                        Some(')') => {
                            *pos += 1;
                            break;
                        }
                        _ => return Err(TreeError::Parse("unbalanced parentheses".into())),
                    }
                }
            }
            Ok(())
        }
        parse(&s, &mut pos, None, &mut edges)?;
        if pos != s.len() {
            return Err(TreeError::Parse("trailing input".into()));
        }
        let n = edges.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for (v, p) in edges {
            if v == 0 || v > n || seen[v - 1] {
                return Err(TreeError::Parse(format!("labels must be 1..{n} without repeats")));
            }
            seen[v - 1] = true;
            parent[v - 1] = p;
        }
        RootedTree::new(parent)
    }
}

/// Vertex decoration of a preLie_C tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// Unlabeled vertex taking an argument; acts through braces.
    Plain,
    /// Vertex taking an argument, labeled by a cooperation whose arity is
    /// its in-degree.
    Labeled(Cooperation),
    /// Filled vertex: the Maurer–Cartan element sits here.
    Filled(Cooperation),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledTree {
    pub shape: RootedTree,
    /// `labels[v-1]` decorates vertex `v`.
    pub labels: Vec<VertexLabel>,
}

impl LabeledTree {
    pub fn new(shape: RootedTree, labels: Vec<VertexLabel>) -> Result<Self, TreeError> {
        if labels.len() != shape.n() {
            return Err(TreeError::Invalid(format!("{} labels for {} vertices", labels.len(), shape.n())));
        }
        for (v, l) in labels.iter().enumerate() {
            let k = shape.in_degree(v + 1);
            match l {
                VertexLabel::Plain => {}
                VertexLabel::Labeled(c) if c.n == k => {}
                VertexLabel::Filled(c) if c.n == k && k >= 2 => {}
                _ => return Err(TreeError::BadArity(v + 1, k)),
            }
        }
        Ok(LabeledTree { shape, labels })
    }

    pub fn plain(shape: RootedTree) -> Self {
        let n = shape.n();
        LabeledTree { shape, labels: vec![VertexLabel::Plain; n] }
    }

    /// A corolla with root 1 carrying `root` and `k` plain children.
    pub fn corolla(k: usize, root: VertexLabel) -> Result<Self, TreeError> {
        let mut labels = vec![VertexLabel::Plain; k + 1];
        labels[0] = root;
        LabeledTree::new(RootedTree::corolla(k + 1), labels)
    }

    /// Vertices that receive an argument, in increasing order.
    pub fn argument_vertices(&self) -> Vec<usize> {
        (1..=self.shape.n()).filter(|v| !matches!(self.labels[v - 1], VertexLabel::Filled(_))).collect()
    }
}

/// `T ∘_i S`: replace vertex `i` of `T` by `S`, reattaching the incoming
/// edges of `i` to the vertices of `S` in every possible way.
pub fn prelie_compose(t: &RootedTree, i: usize, s: &RootedTree) -> Result<TreeSum, TreeError> {
    let n = t.n();
    let m = s.n();
    if i == 0 || i > n {
        return Err(TreeError::BadIndex(i, n));
    }
    let rt = |v: usize| if v < i { v } else { v + m - 1 };
    let rs = |w: usize| w + i - 1;
    let mut base = vec![None; n + m - 1];
    for v in (1..=n).filter(|&v| v != i) {
        base[rt(v) - 1] = match t.parent(v) {
            Some(p) if p == i => None, // filled in below
            Some(p) => Some(rt(p)),
            None => None,
        };
    }
    for w in 1..=m {
        base[rs(w) - 1] = s.parent(w).map(rs);
    }
    base[rs(s.root()) - 1] = t.parent(i).map(rt);
    let incoming = t.children(i);
    let mut out = LinComb::zero();
    let mut choice = vec![1usize; incoming.len()];
    loop {
        let mut parent = base.clone();
        for (u, w) in incoming.iter().zip(&choice) {
            parent[rt(*u) - 1] = Some(rs(*w));
        }
        out.add_term(RootedTree { parent }, int(1));
        // next attachment function
        let mut k = 0;
        while k < choice.len() && choice[k] == m {
            choice[k] = 1;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
        choice[k] += 1;
    }
    Ok(out)
}

pub fn compose_sums(a: &TreeSum, i: usize, b: &TreeSum) -> Result<TreeSum, TreeError> {
    let mut out = LinComb::zero();
    for (t, x) in a.iter() {
        for (s, y) in b.iter() {
            out.add_scaled(&prelie_compose(t, i, s)?, &(x * y));
        }
    }
    Ok(out)
}

pub fn relabel_sum(a: &TreeSum, sigma: &Permutation) -> TreeSum {
    a.map_keys(|t| t.relabel(sigma))
}

/// `dim preLie(n)`, by enumeration.
pub fn prelie_operad_dims(n: usize) -> usize {
    RootedTree::all(n).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(s: &str) -> RootedTree {
        s.parse().unwrap()
    }

    #[test]
    fn displayed_compositions() {
        let e = tree("1(2)");
        let a = prelie_compose(&e, 1, &e).unwrap();
        let mut want = LinComb::zero();
        want.add_term(tree("1(2,3)"), int(1));
        want.add_term(tree("1(2(3))"), int(1));
        assert_eq!(a, want);
        let b = prelie_compose(&e, 2, &e).unwrap();
        assert_eq!(b, LinComb::basis(tree("1(2(3))")));
    }

    #[test]
    fn parse_round_trip() {
        for t in RootedTree::all(4) {
            assert_eq!(t.to_string().parse::<RootedTree>().unwrap(), t);
        }
        assert!("1(2,2)".parse::<RootedTree>().is_err());
        assert!("1(2".parse::<RootedTree>().is_err());
    }

    #[test]
    fn unit_composition() {
        for t in RootedTree::all(3) {
            for i in 1..=3 {
                assert_eq!(prelie_compose(&t, i, &RootedTree::single()).unwrap(), LinComb::basis(t.clone()));
                assert_eq!(prelie_compose(&RootedTree::single(), 1, &t).unwrap(), LinComb::basis(t.clone()));
            }
        }
        assert_eq!(prelie_compose(&RootedTree::single(), 2, &RootedTree::single()), Err(TreeError::BadIndex(2, 1)));
    }

    #[test]
    fn cayley_counts() {
        for n in 1..=5usize {
            assert_eq!(prelie_operad_dims(n), n.pow(n as u32 - 1));
        }
    }

    fn single(t: &RootedTree) -> TreeSum {
        LinComb::basis(t.clone())
    }

    #[test]
    fn operad_axioms_small() {
        let trees: Vec<Vec<RootedTree>> = (0..=3).map(|n| if n == 0 { vec![] } else { RootedTree::all(n) }).collect();
        for na in 1..=3 {
            for nb in 1..=3 {
                for nc in 1..=2 {
                    for a in &trees[na] {
                        for b in &trees[nb] {
                            for c in &trees[nc] {
                                // sequential
                                for i in 1..=na {
                                    for j in 1..=nb {
                                        let l = compose_sums(&prelie_compose(a, i, b).unwrap(), i + j - 1, &single(c)).unwrap();
                                        let r = compose_sums(&single(a), i, &prelie_compose(b, j, c).unwrap()).unwrap();
                                        assert_eq!(l, r);
                                    }
                                }
                                // parallel
                                for i in 1..=na {
                                    for k in i + 1..=na {
                                        let l = compose_sums(&prelie_compose(a, i, b).unwrap(), k + nb - 1, &single(c)).unwrap();
                                        let r = compose_sums(&prelie_compose(a, k, c).unwrap(), i, &single(b)).unwrap();
                                        assert_eq!(l, r);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn equivariance() {
        let perms3 = Permutation::all(3);
        let perms2 = Permutation::all(2);
        for a in RootedTree::all(3) {
            for b in RootedTree::all(2) {
                for i in 1..=3 {
                    for s in &perms3 {
                        for t in &perms2 {
                            // relabel both factors, compose at the moved slot
                            let l = prelie_compose(&a.relabel(s), s.apply(i), &b.relabel(t)).unwrap();
                            let r = relabel_sum(&prelie_compose(&a, i, &b).unwrap(), &vertex_block(s, i, t, 2));
                            assert_eq!(l, r);
                        }
                    }
                }
            }
        }
    }

    /// Vertex renaming induced on `a ∘_i b` by renaming `a` by `s` and `b` by `t`.
    fn vertex_block(s: &Permutation, i: usize, t: &Permutation, m: usize) -> Permutation {
        let n = s.n();
        let si = s.apply(i);
        let place_a = |v: usize| if v < si { v } else { v + m - 1 };
        let mut images = vec![0; n + m - 1];
        for v in 1..=n {
            if v == i {
                continue;
            }
            let src = if v < i { v } else { v + m - 1 };
            images[src - 1] = place_a(s.apply(v));
        }
        for w in 1..=m {
            images[w + i - 2] = t.apply(w) + si - 1;
        }
        Permutation::new(images).unwrap()
    }
}
