//! Endomorphism operads of finite graded spaces carrying a commutative
//! product.

use thiserror::Error;

use crate::linear::{sign_rational, BasisElement, ChainComplex, GradedBasisSpace, LinComb};
use crate::operad::{compose, relabel, Element, FiniteOperad, Operad};
use crate::symseq::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EndError {
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
}

/// A basis map `e_{i_1} ⊗ ⋯ ⊗ e_{i_n} ↦ e_out`, zero on other basis tensors,
/// or the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndMono {
    Unit,
    Map { inputs: Vec<usize>, output: usize },
}

/// Multiplication table: `table[i][j] = e_i · e_j`.
pub type ProductTable = Vec<Vec<LinComb<usize>>>;

pub struct EndOperad {
    pub space: GradedBasisSpace,
    pub table: ProductTable,
    pub max_arity: usize,
}

impl EndOperad {
    /// `End_A` for a complex with zero differential and a graded-commutative
    /// associative product.
    pub fn new(a: &ChainComplex, table: ProductTable, max_arity: usize) -> Result<Self, EndError> {
        if !a.d().is_zero() {
            return Err(EndError::Unsupported("nonzero differential on A".into()));
        }
        let space = a.space().clone();
        let d = space.dim();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(EndError::InvalidStructure(format!("product table is not {d}×{d}")));
        }
        let e = EndOperad { space, table, max_arity };
        e.check_product()?;
        Ok(e)
    }

    fn deg(&self, i: usize) -> i64 {
        self.space.degree(i)
    }

    fn mul(&self, x: &LinComb<usize>, y: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    fn check_product(&self) -> Result<(), EndError> {
        let d = self.space.dim();
        for i in 0..d {
            for j in 0..d {
                for (k, _) in self.table[i][j].iter() {
                    if self.deg(*k) != self.deg(i) + self.deg(j) {
                        return Err(EndError::InvalidStructure(format!("e{i}·e{j} is not homogeneous of degree |e{i}|+|e{j}|")));
                    }
                }
                let odd = (self.deg(i) * self.deg(j)).rem_euclid(2) == 1;
                if self.table[i][j] != self.table[j][i].scaled(&sign_rational(odd)) {
                    return Err(EndError::InvalidStructure(format!("product not graded-commutative on e{i}, e{j}")));
                }
                for k in 0..d {
                    let (ei, ek) = (LinComb::basis(i), LinComb::basis(k));
                    let l = self.mul(&self.table[i][j], &ek);
                    let r = self.mul(&ei, &self.table[j][k]);
                    if l != r {
                        return Err(EndError::InvalidStructure(format!("product not associative on e{i}, e{j}, e{k}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The product as an element of `End_A(2)`.
    pub fn product(&self) -> Element<Self> {
        let d = self.space.dim();
        let mut out = LinComb::zero();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.table[i][j].iter() {
                    out.add_term(EndMono::Map { inputs: vec![i, j], output: *k }, c.clone());
                }
            }
        }
        out
    }

    /// `Hom(A^{⊗n}, A)` as a based graded space.
    pub fn component_space(&self, n: usize) -> GradedBasisSpace {
        let basis = (0..self.dim(n))
            .map(|idx| BasisElement { name: self.basis_name(n, idx), degree: self.basis_degree(n, idx), weight: None })
            .collect();
        GradedBasisSpace::new(basis).expect("distinct names")
    }

    fn decode(&self, n: usize, mut idx: usize) -> (Vec<usize>, usize) {
        let d = self.space.dim();
        let output = idx % d;
        idx /= d;
        let mut inputs = vec![0; n];
        for k in (0..n).rev() {
            inputs[k] = idx % d;
            idx /= d;
        }
        (inputs, output)
    }

    fn encode(&self, inputs: &[usize], output: usize) -> usize {
        let d = self.space.dim();
        inputs.iter().fold(0, |acc, &i| acc * d + i) * d + output
    }
}

impl Operad for EndOperad {
    type Mono = EndMono;

    fn arity(&self, m: &EndMono) -> usize {
        match m {
            EndMono::Unit => 1,
            EndMono::Map { inputs, .. } => inputs.len(),
        }
    }

    fn degree(&self, m: &EndMono) -> i64 {
        match m {
            EndMono::Unit => 0,
            EndMono::Map { inputs, output } => self.deg(*output) - inputs.iter().map(|&i| self.deg(i)).sum::<i64>(),
        }
    }

    /// `(f ∘_i g)(a) = (−1)^{|g|(|a_1|+⋯+|a_{i−1}|)} f(a_1, …, g(a_i, …), …)`.
    fn compose_mono(&self, a: &EndMono, i: usize, b: &EndMono) -> LinComb<EndMono> {
        let (EndMono::Map { inputs: fi, output: fo }, EndMono::Map { inputs: gi, output: go }) = (a, b) else {
            return LinComb::basis(if *a == EndMono::Unit { b.clone() } else { a.clone() });
        };
        if fi[i - 1] != *go {
            return LinComb::zero();
        }
        let before: i64 = fi[..i - 1].iter().map(|&k| self.deg(k)).sum();
        let odd = (self.degree(b) * before).rem_euclid(2) == 1;
        let mut inputs = fi[..i - 1].to_vec();
        inputs.extend_from_slice(gi);
        inputs.extend_from_slice(&fi[i..]);
        LinComb::term(EndMono::Map { inputs, output: *fo }, sign_rational(odd))
    }

    /// `(f·ρ)(y_1, …, y_n) = ± f(y_{ρ(1)}, …, y_{ρ(n)})` with the Koszul sign of
    /// the reordering.
    fn relabel_mono(&self, a: &EndMono, rho: &Permutation) -> LinComb<EndMono> {
        let EndMono::Map { inputs, output } = a else {
            return LinComb::basis(EndMono::Unit);
        };
        let n = inputs.len();
        // f is fed e_{inputs[k]} at slot k from position ρ(k)
        let mut new_inputs = vec![0; n];
        for k in 0..n {
            new_inputs[rho.apply(k + 1) - 1] = inputs[k];
        }
        let mut odd = false;
        for k in 0..n {
            for l in k + 1..n {
                if rho.apply(k + 1) > rho.apply(l + 1) && (self.deg(inputs[k]) * self.deg(inputs[l])).rem_euclid(2) == 1 {
                    odd = !odd;
                }
            }
        }
        LinComb::term(EndMono::Map { inputs: new_inputs, output: *output }, sign_rational(odd))
    }

    fn unit(&self) -> EndMono {
        EndMono::Unit
    }

    fn fmt_mono(&self, m: &EndMono) -> String {
        match m {
            EndMono::Unit => "id".into(),
            EndMono::Map { inputs, output } => {
                let names: Vec<&str> = inputs.iter().map(|&i| self.space.element(i).name.as_str()).collect();
                format!("[{}↦{}]", names.join("⊗"), self.space.element(*output).name)
            }
        }
    }
}

impl FiniteOperad for EndOperad {
    fn dim(&self, n: usize) -> usize {
        self.space.dim().pow(n as u32 + 1)
    }

    fn basis_element(&self, n: usize, idx: usize) -> Element<Self> {
        let (inputs, output) = self.decode(n, idx);
        LinComb::basis(EndMono::Map { inputs, output })
    }

    fn basis_name(&self, n: usize, idx: usize) -> String {
        self.fmt_mono(&EndMono::Map { inputs: self.decode(n, idx).0, output: self.decode(n, idx).1 })
    }

    fn basis_degree(&self, n: usize, idx: usize) -> i64 {
        let (inputs, output) = self.decode(n, idx);
        self.degree(&EndMono::Map { inputs, output })
    }

    fn coordinates(&self, n: usize, x: &Element<Self>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (m, c) in x.iter() {
            match m {
                EndMono::Unit if n == 1 => {
                    for i in 0..self.space.dim() {
                        out.add_term(self.encode(&[i], i), c.clone());
                    }
                }
                EndMono::Map { inputs, output } if inputs.len() == n => out.add_term(self.encode(inputs, *output), c.clone()),
                _ => {}
            }
        }
        out
    }
}

/// Evaluates an element of `End_A(n)` on basis inputs.
pub fn evaluate(f: &Element<EndOperad>, args: &[usize]) -> LinComb<usize> {
    let mut out = LinComb::zero();
    for (m, c) in f.iter() {
        match m {
            EndMono::Unit if args.len() == 1 => out.add_term(args[0], c.clone()),
            EndMono::Map { inputs, output } if inputs == args => out.add_term(*output, c.clone()),
            _ => {}
        }
    }
    out
}

/// `μ_n = μ ∘ (μ ⊗ id) ∘ ⋯`, the image of the `n`-ary commutative product.
pub fn product_n(e: &EndOperad, n: usize) -> Element<EndOperad> {
    let mut out = LinComb::basis(EndMono::Unit);
    for _ in 1..n {
        out = compose(e, &e.product(), 1, &out);
    }
    out
}

/// Invariance under every relabeling of `n` inputs.
pub fn is_symmetric(e: &EndOperad, f: &Element<EndOperad>, n: usize) -> bool {
    Permutation::all(n).iter().all(|s| relabel(e, f, s) == *f)
}
