//! The cooperads coComm{1}, coLie{1}, coP₁{1} and coP₂{2}.
//!
//! Each is realised as the graded dual of a finite operad `Q`: `Q = Comm{-1}`,
//! `Lie{-1}`, `P₁{-1}` and `P₂{-2}` respectively. The basis `c_z` of `C(n)` is
//! dual to the chosen basis `b_z` of `Q(n)`, so `|c_z| = -|b_z|`, and the
//! infinitesimal decomposition is the transpose of two-vertex composition:
//!
//! `Δ_(1)(c_z) = Σ (-1)^{|b_α||b_β|} ⟨c_z, T(b_α, b_β)⟩ T(c_α, c_β)`
//!
//! summed over two-vertex shuffle trees `T`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::classical::{Classical, ClassicalKind, PMono};
use crate::linear::{format_rational, sign_rational, LinComb, Rational};
use crate::operad::{compose, eval_two_vertex, relabel, Element, FiniteOperad, Operad, Suspended, TwoVertexShape};
use crate::symseq::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CooperadKind {
    CoComm,
    CoLie,
    CoP1,
    CoP2,
}

impl CooperadKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cocomm" | "cocomm1" => Some(Self::CoComm),
            "colie" | "colie1" => Some(Self::CoLie),
            "cop1" | "cop1cu" => Some(Self::CoP1),
            "cop2" | "cop22" => Some(Self::CoP2),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::CoComm => "coComm{1}",
            Self::CoLie => "coLie{1}",
            Self::CoP1 => "coP1cu{1}",
            Self::CoP2 => "coP2{2}",
        }
    }
}

/// A basis cooperation: index `idx` in arity `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cooperation {
    pub n: usize,
    pub idx: usize,
}

/// One term `coeff · T(c_root, c_child)` of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DecompTerm {
    pub shape: TwoVertexShape,
    pub root: Cooperation,
    pub child: Cooperation,
}

/// Extra basis data for the curved cooperad coLie^θ{1}; no curved
/// bar/cobar machinery is built on it.
#[derive(Clone, Debug, Serialize)]
pub struct CurvedBasisData {
    /// Arity-0 cogenerator of coE₀{-1}, of degree -1.
    pub cogenerator: (String, usize, i64),
    /// The arity-1 cooperation `δ ∘ u` and its degree.
    pub curved_cooperation: (String, usize, i64),
    /// Value of the curving on it.
    pub curving_value: i64,
}

pub struct Cooperad {
    pub kind: CooperadKind,
    pub q: Suspended<Classical>,
    pub max_arity: usize,
    action_cache: Mutex<HashMap<Permutation, Arc<Vec<LinComb<usize>>>>>,
    decomp_cache: Mutex<HashMap<usize, Arc<Vec<(DecompTerm, Vec<(usize, Rational)>)>>>>,
    hopf_cache: Mutex<HashMap<usize, Arc<HopfTable>>>,
}

/// For each basis monomial, the coordinates of its bracket splittings.
type HopfTable = Vec<Vec<(LinComb<usize>, LinComb<usize>)>>;

impl std::fmt::Debug for Cooperad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cooperad({}, max_arity={})", self.kind.label(), self.max_arity)
    }
}

impl Cooperad {
    pub fn new(kind: CooperadKind, max_arity: usize) -> Self {
        let (inner, k) = match kind {
            CooperadKind::CoComm => (ClassicalKind::Comm, -1),
            CooperadKind::CoLie => (ClassicalKind::Lie, -1),
            CooperadKind::CoP1 => (ClassicalKind::P1, -1),
            CooperadKind::CoP2 => (ClassicalKind::P2, -2),
        };
        Cooperad {
            kind,
            q: Suspended::new(Classical::new(inner), k),
            max_arity,
            action_cache: Mutex::new(HashMap::new()),
            decomp_cache: Mutex::new(HashMap::new()),
            hopf_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.q.dim(n)
    }

    pub fn basis(&self, n: usize) -> Vec<Cooperation> {
        (0..self.dim(n)).map(|idx| Cooperation { n, idx }).collect()
    }

    pub fn degree(&self, c: &Cooperation) -> i64 {
        -self.q.basis_degree(c.n, c.idx)
    }

    /// Number of coComm factors (blocks) of a basis cooperation.
    pub fn weight(&self, c: &Cooperation) -> usize {
        self.q.inner.basis_monos(c.n)[c.idx].0.len()
    }

    /// Block structure of a basis cooperation: words starting at the block
    /// minimum.
    pub fn blocks(&self, c: &Cooperation) -> Vec<Vec<u8>> {
        self.q.inner.basis_monos(c.n)[c.idx].0.clone()
    }

    pub fn name(&self, c: &Cooperation) -> String {
        let blocks = self.blocks(c);
        if blocks.iter().all(|b| b.len() == 1) {
            return format!("Δ{}", c.n);
        }
        if c.n == 2 {
            return "δ".into();
        }
        blocks
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    format!("X{}", b[0])
                } else {
                    format!("_{}_", b.iter().map(|x| format!("X{x}")).collect::<String>())
                }
            })
            .collect::<Vec<_>>()
            .join("∧")
    }

    /// Looks a cooperation up by its printed name.
    pub fn by_name(&self, n: usize, name: &str) -> Option<Cooperation> {
        self.basis(n).into_iter().find(|c| self.name(c) == name)
    }

    /// Finds the cooperation whose blocks are the given words.
    pub fn by_blocks(&self, words: &[Vec<u8>]) -> Option<Cooperation> {
        let n = words.iter().map(|w| w.len()).sum();
        let mut sorted = words.to_vec();
        sorted.sort_by_key(|w| w[0]);
        let target = PMono(sorted);
        self.q.inner.basis_monos(n).iter().position(|m| *m == target).map(|idx| Cooperation { n, idx })
    }

    /// The basis element of `Q` dual to `c`.
    pub fn dual_element(&self, c: &Cooperation) -> Element<Suspended<Classical>> {
        self.q.basis_element(c.n, c.idx)
    }

    /// `ρ · c` for the contragredient action.
    pub fn act(&self, c: &Cooperation, rho: &Permutation) -> LinComb<Cooperation> {
        if rho.is_identity() {
            return LinComb::basis(*c);
        }
        let table = self.action_table(rho);
        table[c.idx].map_keys(|&idx| Cooperation { n: c.n, idx })
    }

    fn action_table(&self, rho: &Permutation) -> Arc<Vec<LinComb<usize>>> {
        if let Some(t) = self.action_cache.lock().expect("cache").get(rho) {
            return t.clone();
        }
        let n = rho.n();
        let inv = rho.inverse();
        let mut table = vec![LinComb::zero(); self.dim(n)];
        for w in 0..self.dim(n) {
            let img = self.q.coordinates(n, &relabel(&self.q, &self.q.basis_element(n, w), &inv));
            for (z, c) in img.iter() {
                table[*z].add_term(w, c.clone());
            }
        }
        let t = Arc::new(table);
        self.action_cache.lock().expect("cache").insert(rho.clone(), t.clone());
        t
    }

    /// Coefficients `κ_z` of `T(c_root, c_child)` in `Δ_(1)(c_z)` for all `z`.
    pub fn two_vertex_coefficients(&self, root: &Cooperation, child: &Cooperation, shape: &TwoVertexShape) -> LinComb<usize> {
        let a = self.dual_element(root);
        let b = self.dual_element(child);
        let v = eval_two_vertex(&self.q, &a, &b, shape);
        let coords = self.q.coordinates(shape.n, &v);
        let sign = self.q.basis_degree(root.n, root.idx) * self.q.basis_degree(child.n, child.idx);
        if sign.rem_euclid(2) == 1 {
            coords.neg()
        } else {
            coords
        }
    }

    /// All terms of `Δ_(1)` landing in arity `n`, indexed by tree.
    fn decomposition_table(&self, n: usize) -> Arc<Vec<(DecompTerm, Vec<(usize, Rational)>)>> {
        if let Some(t) = self.decomp_cache.lock().expect("cache").get(&n) {
            return t.clone();
        }
        let mut jobs = Vec::new();
        for m in 1..=n {
            let k = n + 1 - m;
            for shape in TwoVertexShape::all(n, m) {
                for root in self.basis(k) {
                    for child in self.basis(m) {
                        jobs.push(DecompTerm { shape: shape.clone(), root, child });
                    }
                }
            }
        }
        let eval = |t: &DecompTerm| -> Vec<(usize, Rational)> {
            self.two_vertex_coefficients(&t.root, &t.child, &t.shape).into_terms().into_iter().collect()
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<Vec<(usize, Rational)>> = {
            use rayon::prelude::*;
            jobs.par_iter().map(eval).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<Vec<(usize, Rational)>> = jobs.iter().map(eval).collect();
        let table: Vec<_> = jobs.into_iter().zip(rows).filter(|(_, r)| !r.is_empty()).collect();
        let t = Arc::new(table);
        self.decomp_cache.lock().expect("cache").insert(n, t.clone());
        t
    }

    /// `Δ_(1)(c)`, including the terms with a unit vertex when `reduced` is false.
    pub fn decompose(&self, c: &Cooperation, reduced: bool) -> LinComb<DecompTerm> {
        let mut out = LinComb::zero();
        for (term, coeffs) in self.decomposition_table(c.n).iter() {
            if reduced && (term.root.n < 2 || term.child.n < 2) {
                continue;
            }
            if let Some((_, v)) = coeffs.iter().find(|(z, _)| *z == c.idx) {
                out.add_term(term.clone(), v.clone());
            }
        }
        out
    }

    pub fn counit(&self, c: &Cooperation) -> Rational {
        if c.n == 1 {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer(0.into())
        }
    }

    /// Arity-wise commutative product on coP₁ (unsuspended): the dual of
    /// the coproduct on P₁ for which `μ` is group-like and `l` primitive.
    pub fn hopf_product(&self, a: &Cooperation, b: &Cooperation) -> Option<LinComb<Cooperation>> {
        if self.kind != CooperadKind::CoP1 || a.n != b.n {
            return None;
        }
        let n = a.n;
        let table = self.hopf_table(n);
        let mut out = LinComb::zero();
        for (z, splits) in table.iter().enumerate() {
            let mut total = Rational::from_integer(0.into());
            for (left, right) in splits {
                total += left.coeff(&a.idx) * right.coeff(&b.idx);
            }
            if total != Rational::from_integer(0.into()) {
                out.add_term(Cooperation { n, idx: z }, total);
            }
        }
        Some(out)
    }

    fn hopf_table(&self, n: usize) -> Arc<HopfTable> {
        if let Some(t) = self.hopf_cache.lock().expect("cache").get(&n) {
            return t.clone();
        }
        let p1 = &self.q.inner;
        let monos = p1.basis_monos(n);
        let table: HopfTable = monos
            .iter()
            .map(|mono| {
                let brackets: usize = mono.0.iter().map(|w| w.len() - 1).sum();
                let full = (1u32 << brackets) - 1;
                (0u32..=full)
                    .map(|mask| {
                        let left = p1.coordinates(n, &bracket_tree(p1, mono, mask));
                        let right = p1.coordinates(n, &bracket_tree(p1, mono, !mask & full));
                        (left, right)
                    })
                    .collect()
            })
            .collect();
        let t = Arc::new(table);
        self.hopf_cache.lock().expect("cache").insert(n, t.clone());
        t
    }

    /// Basis data of the curved cooperad coLie^θ{1}.
    pub fn curved_colie_data() -> CurvedBasisData {
        CurvedBasisData {
            cogenerator: ("u".into(), 0, -1),
            curved_cooperation: ("δ∘₁u".into(), 1, -2),
            curving_value: -1,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut arities = Vec::new();
        for n in 1..=self.max_arity {
            let basis: Vec<serde_json::Value> = self
                .basis(n)
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": self.name(c),
                        "degree": self.degree(c),
                        "weight": self.weight(c),
                        "blocks": self.blocks(c),
                    })
                })
                .collect();
            let mut decomp = Vec::new();
            for c in self.basis(n) {
                for (t, v) in self.decompose(&c, true).iter() {
                    decomp.push(serde_json::json!([
                        self.name(&c),
                        self.name(&t.root),
                        self.name(&t.child),
                        t.shape.child,
                        format_rational(v)
                    ]));
                }
            }
            let mut entry = serde_json::json!({ "arity": n, "basis": basis, "decomposition": decomp });
            if self.kind == CooperadKind::CoP1 && n <= 3 {
                let mut table = Vec::new();
                for a in self.basis(n) {
                    for b in self.basis(n) {
                        let p = self.hopf_product(&a, &b).expect("hopf");
                        let terms: BTreeMap<String, String> =
                            p.iter().map(|(c, v)| (self.name(c), format_rational(v))).collect();
                        table.push(serde_json::json!([self.name(&a), self.name(&b), terms]));
                    }
                }
                entry["hopf_product"] = serde_json::Value::Array(table);
            }
            arities.push(entry);
        }
        let mut v = serde_json::json!({
            "cooperad": self.kind.label(),
            "max_arity": self.max_arity,
            "decomposition_columns": ["cooperation", "root", "child", "child_leaves", "coefficient"],
            "arities": arities,
        });
        if self.kind == CooperadKind::CoLie {
            v["curved_basis_data"] = serde_json::to_value(Self::curved_colie_data()).expect("json");
        }
        v
    }
}

pub fn build_cocomm_shifted(max_arity: usize) -> Cooperad {
    Cooperad::new(CooperadKind::CoComm, max_arity)
}

pub fn build_colie_shifted(max_arity: usize) -> Cooperad {
    Cooperad::new(CooperadKind::CoLie, max_arity)
}

pub fn build_cop1_counital(max_arity: usize) -> Cooperad {
    Cooperad::new(CooperadKind::CoP1, max_arity)
}

pub fn build_cop2(max_arity: usize) -> Cooperad {
    Cooperad::new(CooperadKind::CoP2, max_arity)
}

/// The basis element `mono` of P₁ with the brackets selected by `mask`
/// kept and the others replaced by products.
fn bracket_tree(p1: &Classical, mono: &PMono, mask: u32) -> Element<Classical> {
    let mut bit = 0;
    let mut blocks: Vec<(Element<Classical>, Vec<u8>)> = Vec::new();
    for w in &mono.0 {
        let mut acc = LinComb::basis(p1.unit());
        for _ in 1..w.len() {
            let op = if mask & (1 << bit) != 0 { p1.bracket() } else { p1.product() };
            bit += 1;
            acc = compose(p1, &op, 1, &acc);
        }
        blocks.push((acc, w.clone()));
    }
    let mut acc = p1.product_n(blocks.len());
    let mut slot = 1;
    let mut letters = Vec::new();
    for (b, w) in &blocks {
        acc = compose(p1, &acc, slot, b);
        slot += w.len();
        letters.extend(w.iter().map(|&x| x as usize));
    }
    let pi = Permutation::new(letters).expect("letters");
    relabel(p1, &acc, &pi)
}

pub fn sign(odd: bool) -> Rational {
    sign_rational(odd)
}
