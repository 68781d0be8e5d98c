//! Convolution pre-Lie algebras `Conv(C, O)`, Maurer–Cartan twisting, the
//! preLie and brace actions, and the product and bracket of `Pol(O)`.
//!
//! A convolution element is a linear map on the basis cooperations of `C`,
//! homogeneous of one degree. Values outside `max_arity` are unknown, so
//! every operation truncates to the smaller bound of its inputs.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cooperad::{Cooperad, CooperadKind, Cooperation};
use crate::linear::{int, sign_rational, LinComb, Rational};
use crate::operad::{compose, eval_two_vertex, format_element, relabel, Element, FiniteOperad, Operad, TwoVertexShape};
use crate::symseq::Permutation;
use crate::trees::{LabeledTree, RootedTree, VertexLabel};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvError {
    #[error("value at {0} is not homogeneous of the declared degree {1}")]
    Inhomogeneous(String, i64),
    #[error("map is not equivariant at {0}")]
    NotEquivariant(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("arity {needed} needed but values are only known up to arity {max}")]
    Truncation { needed: usize, max: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A homogeneous map `C(n) → O(n)` for `n ≤ max_arity`, stored on basis
/// cooperations.
pub struct ConvolutionElement<O: Operad> {
    pub degree: i64,
    pub values: BTreeMap<Cooperation, Element<O>>,
    /// Whether the map commutes with the symmetric group actions.
    pub equivariant: bool,
    pub max_arity: usize,
}

impl<O: Operad> std::fmt::Debug for ConvolutionElement<O> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ConvolutionElement")
            .field("degree", &self.degree)
            .field("values", &self.values)
            .field("max_arity", &self.max_arity)
            .finish()
    }
}

impl<O: Operad> Clone for ConvolutionElement<O> {
    fn clone(&self) -> Self {
        ConvolutionElement {
            degree: self.degree,
            values: self.values.clone(),
            equivariant: self.equivariant,
            max_arity: self.max_arity,
        }
    }
}

/// Equality of values; truncation bounds and flags are ignored.
impl<O: Operad> PartialEq for ConvolutionElement<O> {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && (self.values.is_empty() || self.degree == other.degree)
    }
}

impl<O: Operad> ConvolutionElement<O> {
    pub fn zero(degree: i64, max_arity: usize) -> Self {
        ConvolutionElement { degree, values: BTreeMap::new(), equivariant: true, max_arity }
    }

    pub fn value(&self, c: &Cooperation) -> Element<O> {
        self.values.get(c).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Degree in `Pol(O) = Conv(C, O)[-1]`.
    pub fn pol_degree(&self) -> i64 {
        self.degree + 1
    }

    fn insert(&mut self, c: Cooperation, v: &Element<O>, k: &Rational) {
        let e = self.values.entry(c).or_default();
        e.add_scaled(v, k);
        if e.is_zero() {
            self.values.remove(&c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &int(1))
    }

    pub fn add_scaled(&self, other: &Self, k: &Rational) -> Self {
        let mut out = self.truncated(self.max_arity.min(other.max_arity));
        out.equivariant = self.equivariant && other.equivariant;
        if !other.is_zero() && !self.is_zero() {
            assert_eq!(self.degree, other.degree, "adding convolution elements of different degrees");
        }
        if self.is_zero() {
            out.degree = other.degree;
        }
        for (c, v) in &other.values {
            if c.n <= out.max_arity {
                out.insert(*c, v, k);
            }
        }
        out
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        let mut out = ConvolutionElement::zero(self.degree, self.max_arity);
        out.equivariant = self.equivariant;
        for (c, v) in &self.values {
            out.insert(*c, v, k);
        }
        out
    }

    pub fn truncated(&self, max_arity: usize) -> Self {
        ConvolutionElement {
            degree: self.degree,
            values: self.values.iter().filter(|(c, _)| c.n <= max_arity).map(|(c, v)| (*c, v.clone())).collect(),
            equivariant: self.equivariant,
            max_arity,
        }
    }

    /// The values on arity-`n` cooperations only.
    pub fn restricted_to_arity(&self, n: usize) -> Self {
        let mut out = self.clone();
        out.values.retain(|c, _| c.n == n);
        out
    }
}

/// The convolution algebra of a cooperad with values in an operad.
pub struct Conv<'a, O: Operad> {
    pub cooperad: &'a Cooperad,
    pub operad: &'a O,
    pub max_arity: usize,
}

impl<'a, O: Operad> Conv<'a, O> {
    pub fn new(cooperad: &'a Cooperad, operad: &'a O, max_arity: usize) -> Self {
        Conv { cooperad, operad, max_arity: max_arity.min(cooperad.max_arity) }
    }

    /// Builds an element from values on basis cooperations, checking
    /// homogeneity and, when claimed, equivariance.
    pub fn element(
        &self,
        degree: i64,
        values: impl IntoIterator<Item = (Cooperation, Element<O>)>,
        equivariant: bool,
    ) -> Result<ConvolutionElement<O>, ConvError> {
        let mut out = ConvolutionElement::zero(degree, self.max_arity);
        out.equivariant = equivariant;
        for (c, v) in values {
            if c.n > self.max_arity {
                continue;
            }
            for m in v.keys() {
                if self.operad.degree(m) - self.cooperad.degree(&c) != degree {
                    return Err(ConvError::Inhomogeneous(self.cooperad.name(&c), degree));
                }
            }
            out.insert(c, &v, &int(1));
        }
        if equivariant {
            self.check_equivariance(&out)?;
        }
        Ok(out)
    }

    /// `f(ρ·c) = ρ·f(c)` for adjacent transpositions and every basis `c`.
    pub fn check_equivariance(&self, f: &ConvolutionElement<O>) -> Result<(), ConvError> {
        let arities: BTreeSet<usize> = f.values.keys().map(|c| c.n).collect();
        for n in arities {
            for c in self.cooperad.basis(n) {
                let fc = f.value(&c);
                for j in 1..n {
                    let tau = Permutation::adjacent(n, j);
                    let lhs = self.apply(f, &self.cooperad.act(&c, &tau));
                    let rhs = relabel(self.operad, &fc, &tau);
                    if lhs != rhs {
                        return Err(ConvError::NotEquivariant(self.cooperad.name(&c)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_equivariant(&self, f: &ConvolutionElement<O>) -> bool {
        self.check_equivariance(f).is_ok()
    }

    /// `f` applied to a combination of cooperations.
    pub fn apply(&self, f: &ConvolutionElement<O>, c: &LinComb<Cooperation>) -> Element<O> {
        let mut out = LinComb::zero();
        for (z, k) in c.iter() {
            if let Some(v) = f.values.get(z) {
                out.add_scaled(v, k);
            }
        }
        out
    }

    /// Root value used in a two-vertex term whose child sits at `slot`:
    /// the term is rewritten with the child in slot 1 and `f` evaluated
    /// there. For equivariant `f` this is just `f(c)`.
    fn root_value(&self, f: &ConvolutionElement<O>, c: &Cooperation, slot: usize) -> Element<O> {
        if f.equivariant || slot == 1 {
            return f.value(c);
        }
        let k = c.n;
        let mut images = vec![slot];
        images.extend((1..=k).filter(|&t| t != slot));
        let rho = Permutation::new(images).expect("cycle");
        let moved = self.cooperad.act(c, &rho.inverse());
        relabel(self.operad, &self.apply(f, &moved), &rho)
    }

    /// `f ⋆ g = γ_(1) ∘ (f ⊗ g) ∘ Δ_(1)`, with `f` at the root.
    pub fn star(&self, f: &ConvolutionElement<O>, g: &ConvolutionElement<O>) -> ConvolutionElement<O> {
        let max = f.max_arity.min(g.max_arity).min(self.max_arity);
        let mut out = ConvolutionElement::zero(f.degree + g.degree, max);
        out.equivariant = f.equivariant && g.equivariant;
        let root_arities: BTreeSet<usize> = f.values.keys().map(|c| c.n).collect();
        let co = self.cooperad;
        for &k in &root_arities {
            let roots: Vec<Cooperation> =
                if f.equivariant { f.values.keys().filter(|c| c.n == k).copied().collect() } else { co.basis(k) };
            for (b, gb) in &g.values {
                let n = k + b.n - 1;
                if n > max {
                    continue;
                }
                for shape in TwoVertexShape::all(n, b.n) {
                    for a in &roots {
                        let fa = self.root_value(f, a, shape.slot());
                        if fa.is_zero() {
                            continue;
                        }
                        let kappa = co.two_vertex_coefficients(a, b, &shape);
                        if kappa.is_zero() {
                            continue;
                        }
                        let odd = (g.degree * co.degree(a)).rem_euclid(2) == 1;
                        let term = eval_two_vertex(self.operad, &fa, gb, &shape);
                        for (z, kz) in kappa.iter() {
                            out.insert(Cooperation { n, idx: *z }, &term, &(kz * sign_rational(odd)));
                        }
                    }
                }
            }
        }
        out
    }

    /// `[f, g] = f ⋆ g − (−1)^{|f||g|} g ⋆ f`.
    pub fn bracket(&self, f: &ConvolutionElement<O>, g: &ConvolutionElement<O>) -> ConvolutionElement<O> {
        let odd = (f.degree * g.degree).rem_euclid(2) == 1;
        let mut out = self.star(f, g).add_scaled(&self.star(g, f), &-sign_rational(odd));
        out.degree = f.degree + g.degree;
        out
    }

    /// Symmetric brace `f{g_1,…,g_k}` through the pre-Lie recursion.
    pub fn brace(&self, f: &ConvolutionElement<O>, gs: &[ConvolutionElement<O>]) -> ConvolutionElement<O> {
        match gs.len() {
            0 => f.clone(),
            1 => self.star(f, &gs[0]),
            k => {
                let last = &gs[k - 1];
                let mut out = self.star(&self.brace(f, &gs[..k - 1]), last);
                for i in 0..k - 1 {
                    let passed: i64 = gs[i + 1..k - 1].iter().map(|g| g.degree).sum();
                    let odd = (last.degree * passed).rem_euclid(2) == 1;
                    let mut args = gs[..k - 1].to_vec();
                    args[i] = self.star(&gs[i], last);
                    out = out.add_scaled(&self.brace(f, &args), &-sign_rational(odd));
                }
                out.degree = f.degree + gs.iter().map(|g| g.degree).sum::<i64>();
                out
            }
        }
    }

    /// Action of a rooted tree: vertex `v` receives `args[v-1]`.
    pub fn tree_act(&self, t: &RootedTree, args: &[ConvolutionElement<O>]) -> Result<ConvolutionElement<O>, ConvError> {
        if args.len() != t.n() {
            return Err(ConvError::InvalidStructure(format!("tree has {} vertices, got {} arguments", t.n(), args.len())));
        }
        // Koszul sign of moving the arguments into pre-order.
        let mut order = Vec::new();
        fn pre(t: &RootedTree, v: usize, order: &mut Vec<usize>) {
            order.push(v);
            for c in t.children(v) {
                pre(t, c, order);
            }
        }
        pre(t, t.root(), &mut order);
        let mut odd = false;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a] > order[b] && (args[order[a] - 1].degree * args[order[b] - 1].degree).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        fn eval<O: Operad>(conv: &Conv<'_, O>, t: &RootedTree, v: usize, args: &[ConvolutionElement<O>]) -> ConvolutionElement<O> {
            let kids: Vec<ConvolutionElement<O>> = t.children(v).into_iter().map(|c| eval(conv, t, c, args)).collect();
            conv.brace(&args[v - 1], &kids)
        }
        Ok(eval(self, t, t.root(), args).scaled(&sign_rational(odd)))
    }

    /// Action of the preLie_C corolla whose root carries the label `label`
    /// (`None` is the Hopf unit), computed directly from corolla
    /// decompositions: the root argument sees `f(c̃ · y)`.
    pub fn labeled_corolla_act(
        &self,
        label: Option<&Cooperation>,
        f: &ConvolutionElement<O>,
        gs: &[ConvolutionElement<O>],
    ) -> Result<ConvolutionElement<O>, ConvError> {
        let co = self.cooperad;
        let k = gs.len();
        if let Some(c) = label {
            if c.n != k {
                return Err(ConvError::InvalidStructure(format!("label of arity {} on a corolla with {} children", c.n, k)));
            }
            if co.kind != CooperadKind::CoP1 {
                return Err(ConvError::Unsupported("labels need the Hopf cooperad coP1".into()));
            }
        }
        let max = gs.iter().map(|g| g.max_arity).chain([f.max_arity, self.max_arity]).min().unwrap_or(self.max_arity);
        let total_degree = f.degree + gs.iter().map(|g| g.degree).sum::<i64>();
        let mut out = ConvolutionElement::zero(total_degree, max);
        out.equivariant = f.equivariant && gs.iter().all(|g| g.equivariant);
        for r in k.max(1)..=max {
            for y in co.basis(r) {
                for pi in injections(k, r) {
                    let root_val = match label {
                        None => f.value(&y),
                        Some(c) => self.apply(f, &self.hopf_multiply(c, &pi, &y)?),
                    };
                    if root_val.is_zero() {
                        continue;
                    }
                    self.corolla_terms(&y, &root_val, label.is_some(), &pi, gs, max, &mut out);
                }
            }
        }
        Ok(out)
    }

    /// `c̃ · y`: `c` placed on the positions `pi`, singletons elsewhere,
    /// multiplied into `y` by the Hopf product.
    fn hopf_multiply(&self, c: &Cooperation, pi: &[usize], y: &Cooperation) -> Result<LinComb<Cooperation>, ConvError> {
        let co = self.cooperad;
        let r = y.n;
        let mut words = co.blocks(c);
        words.extend((c.n + 1..=r).map(|x| vec![x as u8]));
        let base = co.by_blocks(&words).ok_or_else(|| ConvError::InvalidStructure("extended label".into()))?;
        let mut images: Vec<usize> = pi.to_vec();
        images.extend((1..=r).filter(|p| !pi.contains(p)));
        let placed = co.act(&base, &Permutation::new(images).expect("placement"));
        let mut out = LinComb::zero();
        for (z, kz) in placed.iter() {
            let prod = co.hopf_product(z, y).ok_or_else(|| ConvError::Unsupported("Hopf product".into()))?;
            out.add_scaled(&prod, kz);
        }
        Ok(out)
    }

    /// Adds the terms of one corolla shape. Children are inserted in
    /// index order, so signs agree with iterated `⋆`.
    #[allow(clippy::too_many_arguments)]
    fn corolla_terms(
        &self,
        y: &Cooperation,
        root_val: &Element<O>,
        pol_symmetric: bool,
        pi: &[usize],
        gs: &[ConvolutionElement<O>],
        max: usize,
        out: &mut ConvolutionElement<O>,
    ) {
        let co = self.cooperad;
        let r = y.n;
        let k = gs.len();
        // Filled vertices are graded symmetric for Pol degrees rather than
        // convolution degrees; each inversion of `pi` carries the ratio.
        let mut base_odd = false;
        if pol_symmetric {
            for a in 0..k {
                for b in a + 1..k {
                    if pi[a] > pi[b] && (gs[a].degree + gs[b].degree + 1).rem_euclid(2) == 1 {
                        base_odd = !base_odd;
                    }
                }
            }
        }
        let supports: Vec<Vec<Cooperation>> = gs.iter().map(|g| g.values.keys().copied().collect()).collect();
        let mut choice: Vec<Cooperation> = Vec::with_capacity(k);
        fn rec(t: usize, supports: &[Vec<Cooperation>], choice: &mut Vec<Cooperation>, f: &mut dyn FnMut(&[Cooperation])) {
            if t == supports.len() {
                f(choice);
                return;
            }
            for c in &supports[t] {
                choice.push(*c);
                rec(t + 1, supports, choice, f);
                choice.pop();
            }
        }
        rec(0, &supports, &mut choice, &mut |children: &[Cooperation]| {
            let n = r + children.iter().map(|c| c.n - 1).sum::<usize>();
            if n > max {
                return;
            }
            let mut sizes = vec![1usize; r];
            for (p, c) in pi.iter().zip(children) {
                sizes[p - 1] = c.n;
            }
            let mut odd = base_odd;
            let mut q_deg = co.q.basis_degree(y.n, y.idx);
            let mut passed = co.degree(y);
            let mut q_val = co.dual_element(y);
            let mut o_val = root_val.clone();
            for (i, c) in children.iter().enumerate() {
                let g_val = gs[i].value(c);
                if g_val.is_zero() {
                    return;
                }
                let b_deg = co.q.basis_degree(c.n, c.idx);
                if (q_deg * b_deg).rem_euclid(2) == 1 {
                    odd = !odd;
                }
                if (gs[i].degree * passed).rem_euclid(2) == 1 {
                    odd = !odd;
                }
                q_deg += b_deg;
                passed += co.degree(c);
                // current input of the root slot pi[i] after earlier insertions
                let pos = pi[i] + (0..i).filter(|&j| pi[j] < pi[i]).map(|j| children[j].n - 1).sum::<usize>();
                q_val = compose(&co.q, &q_val, pos, &co.dual_element(c));
                o_val = compose(self.operad, &o_val, pos, &g_val);
            }
            if o_val.is_zero() {
                return;
            }
            for leaves in shuffle_blocks(n, &sizes) {
                let lm = Permutation::new(leaves).expect("leaf map");
                let coords = co.q.coordinates(n, &relabel(&co.q, &q_val, &lm));
                if coords.is_zero() {
                    continue;
                }
                let term = relabel(self.operad, &o_val, &lm);
                for (z, kz) in coords.iter() {
                    out.insert(Cooperation { n, idx: *z }, &term, &(kz * sign_rational(odd)));
                }
            }
        });
    }

    /// Action of a preLie_C tree. Arguments go to the non-filled vertices
    /// in increasing order; filled vertices take `mc`.
    pub fn prelie_c_act(
        &self,
        t: &LabeledTree,
        args: &[ConvolutionElement<O>],
        mc: Option<&ConvolutionElement<O>>,
    ) -> Result<ConvolutionElement<O>, ConvError> {
        let arg_vertices = t.argument_vertices();
        if args.len() != arg_vertices.len() {
            return Err(ConvError::InvalidStructure(format!(
                "tree takes {} arguments, got {}",
                arg_vertices.len(),
                args.len()
            )));
        }
        let mut slot: Vec<Option<&ConvolutionElement<O>>> = vec![None; t.shape.n() + 1];
        for (v, a) in arg_vertices.iter().zip(args) {
            slot[*v] = Some(a);
        }
        // Koszul sign of moving the arguments into pre-order
        let mut order = Vec::new();
        fn pre(t: &RootedTree, v: usize, order: &mut Vec<usize>) {
            order.push(v);
            for c in t.children(v) {
                pre(t, c, order);
            }
        }
        pre(&t.shape, t.shape.root(), &mut order);
        order.retain(|v| slot[*v].is_some());
        let mut odd = false;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                let (x, y) = (slot[order[a]].unwrap(), slot[order[b]].unwrap());
                if order[a] > order[b] && (x.degree * y.degree).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        fn eval<O: Operad>(
            conv: &Conv<'_, O>,
            t: &LabeledTree,
            v: usize,
            slot: &[Option<&ConvolutionElement<O>>],
            mc: Option<&ConvolutionElement<O>>,
        ) -> Result<ConvolutionElement<O>, ConvError> {
            let kids = t.shape.children(v).into_iter().map(|c| eval(conv, t, c, slot, mc)).collect::<Result<Vec<_>, _>>()?;
            match &t.labels[v - 1] {
                VertexLabel::Plain => Ok(conv.brace(slot[v].expect("argument"), &kids)),
                VertexLabel::Labeled(c) => conv.labeled_corolla_act(Some(c), slot[v].expect("argument"), &kids),
                VertexLabel::Filled(c) => {
                    let mc = mc.ok_or_else(|| ConvError::InvalidStructure("filled vertex without a Maurer–Cartan element".into()))?;
                    conv.labeled_corolla_act(Some(c), mc, &kids)
                }
            }
        }
        Ok(eval(self, t, t.shape.root(), &slot, mc)?.scaled(&sign_rational(odd)))
    }

    /// Image of a generator of the homotopy Gerstenhaber operad acting on
    /// `args`.
    pub fn tcw_action(
        &self,
        g: TcwGenerator,
        mc: &ConvolutionElement<O>,
        args: &[ConvolutionElement<O>],
    ) -> Result<ConvolutionElement<O>, ConvError> {
        let co = self.cooperad;
        let single_block = |k: usize| {
            let word: Vec<u8> = (1..=k as u8).collect();
            co.by_blocks(&[word]).ok_or_else(|| ConvError::Unsupported(format!("no single-block cooperation in arity {k}")))
        };
        match g {
            TcwGenerator::Bracket => {
                if args.len() != 2 {
                    return Err(ConvError::InvalidStructure("the bracket takes two arguments".into()));
                }
                let a = self.tree_act(&RootedTree::chain(2), args)?;
                let swapped = RootedTree::new(vec![Some(2), None]).expect("tree");
                let b = self.tree_act(&swapped, args)?;
                Ok(a.add_scaled(&b, &int(-1)))
            }
            TcwGenerator::Product(k) => {
                if args.len() != k || k < 2 {
                    return Err(ConvError::InvalidStructure(format!("product of {k} takes {k} ≥ 2 arguments")));
                }
                let t = LabeledTree::new(RootedTree::corolla(k + 1), {
                    let mut l = vec![VertexLabel::Plain; k + 1];
                    l[0] = VertexLabel::Filled(single_block(k)?);
                    l
                })
                .map_err(|e| ConvError::InvalidStructure(e.to_string()))?;
                self.prelie_c_act(&t, args, Some(mc))
            }
            TcwGenerator::Mixed(k) => {
                if args.len() != k || k < 3 {
                    return Err(ConvError::InvalidStructure(format!("mixed generator of arity {k} takes {k} ≥ 3 arguments")));
                }
                let t = LabeledTree::corolla(k - 1, VertexLabel::Labeled(single_block(k - 1)?))
                    .map_err(|e| ConvError::InvalidStructure(e.to_string()))?;
                self.prelie_c_act(&t, args, Some(mc))
            }
        }
    }

    /// The identity `Δ₁ ↦ 1`.
    pub fn identity(&self) -> ConvolutionElement<O> {
        let mut out = ConvolutionElement::zero(0, self.max_arity);
        out.insert(self.delta_n(1), &LinComb::basis(self.operad.unit()), &int(1));
        out
    }

    /// The element `δ ↦ product`, checked to be Maurer–Cartan.
    pub fn mc_from_product(&self, product: &Element<O>) -> Result<ConvolutionElement<O>, ConvError> {
        let delta = self.delta()?;
        let mu = self
            .element(1, [(delta, product.clone())], true)
            .map_err(|e| ConvError::InvalidStructure(format!("designated product is not commutative of degree 0: {e}")))?;
        let sq = self.bracket(&mu, &mu);
        if !sq.is_zero() {
            return Err(ConvError::InvalidStructure("[μ, μ] ≠ 0: designated product is not associative".into()));
        }
        Ok(mu)
    }

    /// `d_internal(f) + [mc, f]`.
    pub fn twisted_differential(
        &self,
        f: &ConvolutionElement<O>,
        mc: &ConvolutionElement<O>,
        internal: Option<&dyn Fn(&ConvolutionElement<O>) -> ConvolutionElement<O>>,
    ) -> ConvolutionElement<O> {
        let mut out = self.bracket(mc, f);
        if let Some(d) = internal {
            out = out.add(&d(f));
        }
        out.degree = f.degree + 1;
        out
    }

    /// `δ ∈ C(2)`, the single Lie block.
    pub fn delta(&self) -> Result<Cooperation, ConvError> {
        self.cooperad.by_blocks(&[vec![1, 2]]).ok_or_else(|| ConvError::Unsupported("no cobracket in this cooperad".into()))
    }

    /// `Δ₂ ∈ C(2)`, two singleton blocks.
    pub fn delta2(&self) -> Result<Cooperation, ConvError> {
        self.cooperad.by_blocks(&[vec![1], vec![2]]).ok_or_else(|| ConvError::Unsupported("no Δ₂ in this cooperad".into()))
    }

    pub fn delta_n(&self, n: usize) -> Cooperation {
        let words: Vec<Vec<u8>> = (1..=n).map(|x| vec![x as u8]).collect();
        self.cooperad.by_blocks(&words).expect("Δn")
    }

    /// `μ̃ : Δ₂ ↦ product`, zero elsewhere; not equivariant.
    pub fn mu_tilde(&self, product: &Element<O>) -> Result<ConvolutionElement<O>, ConvError> {
        self.element(1, [(self.delta2()?, product.clone())], false)
    }

    /// `x : Δ₂ ↦ bracket`, zero elsewhere.
    pub fn x_element(&self, bracket: &Element<O>) -> Result<ConvolutionElement<O>, ConvError> {
        self.element(1, [(self.delta2()?, bracket.clone())], true)
    }

    /// Product of `Pol(O)`: the preLie corolla acting on `(μ̃, f, g)`.
    pub fn pol_product(
        &self,
        mu_tilde: &ConvolutionElement<O>,
        f: &ConvolutionElement<O>,
        g: &ConvolutionElement<O>,
    ) -> ConvolutionElement<O> {
        self.brace(mu_tilde, &[f.clone(), g.clone()])
    }

    /// `x^k` as an iterated product.
    pub fn x_power(
        &self,
        mu_tilde: &ConvolutionElement<O>,
        x: &ConvolutionElement<O>,
        k: usize,
    ) -> Result<ConvolutionElement<O>, ConvError> {
        if k == 0 {
            return Err(ConvError::InvalidStructure("x^0 is not in the non-unital algebra".into()));
        }
        if 2 * k > self.max_arity {
            return Err(ConvError::Truncation { needed: 2 * k, max: self.max_arity });
        }
        let mut acc = x.clone();
        for _ in 1..k {
            acc = self.pol_product(mu_tilde, x, &acc);
        }
        Ok(acc)
    }

    /// Action of a filled `k`-corolla labeled by `label` with the
    /// Maurer–Cartan element at the root.
    pub fn brace_generator_action(
        &self,
        label: &Cooperation,
        mc: &ConvolutionElement<O>,
        args: &[ConvolutionElement<O>],
    ) -> Result<ConvolutionElement<O>, ConvError> {
        if self.cooperad.blocks(label).len() != 1 && label.n >= 2 {
            // reduced part of coP1: any arity ≥ 2 cooperation is allowed
        }
        if label.n < 2 {
            return Err(ConvError::InvalidStructure("filled vertices need at least two children".into()));
        }
        self.labeled_corolla_act(Some(label), mc, args)
    }

    /// Weights (numbers of blocks) of the cooperations in the support.
    pub fn weight_support(&self, f: &ConvolutionElement<O>) -> BTreeSet<usize> {
        f.values.keys().map(|c| self.cooperad.weight(c)).collect()
    }

    pub fn format(&self, f: &ConvolutionElement<O>) -> BTreeMap<String, String> {
        f.values.iter().map(|(c, v)| (self.cooperad.name(c), format_element(self.operad, v))).collect()
    }
}

impl<'a, O: FiniteOperad> Conv<'a, O> {
    /// A random equivariant element supported in arity `n`: a random map
    /// averaged over `S_n`. Degrees are fixed by the basis, so only
    /// basis pairs of the right degree are used.
    pub fn random_equivariant<R: rand::Rng>(&self, n: usize, degree: i64, rng: &mut R) -> ConvolutionElement<O> {
        let co = self.cooperad;
        let mut raw: BTreeMap<Cooperation, Element<O>> = BTreeMap::new();
        for c in co.basis(n) {
            let mut v = LinComb::zero();
            for idx in 0..self.operad.dim(n) {
                if self.operad.basis_degree(n, idx) - co.degree(&c) == degree {
                    let k: i64 = rng.gen_range(-2..=2);
                    v.add_scaled(&self.operad.basis_element(n, idx), &int(k));
                }
            }
            raw.insert(c, v);
        }
        let mut out = ConvolutionElement::zero(degree, self.max_arity);
        for c in co.basis(n) {
            let mut acc = LinComb::zero();
            for s in Permutation::all(n) {
                let moved = co.act(&c, &s.inverse());
                let mut val = LinComb::zero();
                for (z, kz) in moved.iter() {
                    val.add_scaled(&raw[z], kz);
                }
                acc.add(&relabel(self.operad, &val, &s));
            }
            out.insert(c, &acc, &int(1));
        }
        out
    }
}

/// Generators of the homotopy Gerstenhaber operad used on Pol.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcwGenerator {
    /// `X₁ ∧ X₂`, sent to the convolution bracket.
    Bracket,
    /// `X₁⋯X_k`, sent to the filled `k`-corolla.
    Product(usize),
    /// `X₁ ∧ X₂⋯X_k`, sent to the corolla with root 1 labeled by the
    /// single-block cooperation of arity `k − 1`.
    Mixed(usize),
}

/// Injective maps `[k] → [r]` as image lists.
fn injections(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in 1..=r {
            if !cur.contains(&p) {
                cur.push(p);
                rec(k, r, cur, out);
                cur.pop();
            }
        }
    }
    rec(k, r, &mut cur, &mut out);
    out
}

/// Leaf maps of shuffle corollas: set partitions of `[n]` whose blocks,
/// ordered by minimum, have the given sizes; each is listed block by block.
fn shuffle_blocks(n: usize, sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut used = vec![false; n + 1];
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, sizes: &[usize], p: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p == sizes.len() {
            out.push(cur.clone());
            return;
        }
        // the block at position p starts at the smallest unused leaf
        let Some(first) = (1..=n).find(|&x| !used[x]) else { return };
        used[first] = true;
        cur.push(first);
        fn fill(
            n: usize,
            sizes: &[usize],
            p: usize,
            need: usize,
            start: usize,
            used: &mut Vec<bool>,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if need == 0 {
                rec(n, sizes, p + 1, used, cur, out);
                return;
            }
            for x in start..=n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x);
                    fill(n, sizes, p, need - 1, x + 1, used, cur, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        fill(n, sizes, p, sizes[p] - 1, first + 1, used, cur, out);
        cur.pop();
        used[first] = false;
    }
    rec(n, sizes, 0, &mut used, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_blocks_match_two_vertex_shapes() {
        for n in 2..=5 {
            for m in 1..=n {
                let r = n - m + 1;
                let mut a: Vec<Vec<usize>> = Vec::new();
                for slot in 1..=r {
                    let mut sizes = vec![1; r];
                    sizes[slot - 1] = m;
                    a.extend(shuffle_blocks(n, &sizes));
                }
                let mut b: Vec<Vec<usize>> =
                    TwoVertexShape::all(n, m).iter().map(|s| s.leaf_map().images().to_vec()).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn injections_count() {
        assert_eq!(injections(2, 3).len(), 6);
        assert_eq!(injections(0, 3).len(), 1);
    }
}
