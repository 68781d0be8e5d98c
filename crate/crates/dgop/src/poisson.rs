//! Polynomial Poisson algebras and their degeneracy ideals.
//!
//! The operadic side evaluates the degeneracy generator of `P₁(2m+2)` on
//! tuples of variables. That suffices to generate the ideal: every input of
//! the generator sits inside one bracket, so each slot is a derivation and
//! evaluation on products expands into evaluations on variables times
//! polynomials.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classical::Classical;
use crate::degeneracy::degeneracy_generator;
use crate::linear::{format_rational, int, Rational};
use crate::operad::{Element, FiniteOperad};
use crate::poly::{Poly, PolyError, TruncatedIdeal};
use crate::vanishing::{subsets, FinDimLieAlgebra};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PoissonError {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("degree cap {cap} exceeded (degree {degree})")]
    CapExceeded { degree: usize, cap: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug)]
pub struct PoissonPolyAlgebra {
    pub names: Vec<String>,
    /// `pi[i][j] = {x_i, x_j}`.
    pub pi: Vec<Vec<Poly>>,
    pub degree_cap: usize,
}

/// File form; brackets are `[x_i, x_j, polynomial]` with `i < j` implied.
#[derive(Debug, Serialize, Deserialize)]
pub struct PoissonFile {
    pub variables: Vec<String>,
    pub brackets: Vec<(String, String, String)>,
    #[serde(default = "default_cap")]
    pub degree_cap: usize,
}

fn default_cap() -> usize {
    6
}

#[derive(Debug, Clone)]
pub struct PolyIdeal {
    pub variables: Vec<String>,
    pub generators: Vec<Poly>,
}

impl Serialize for PolyIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({ "variables": self.variables, "generators": self.formatted() }).serialize(s)
    }
}

impl PolyIdeal {
    pub fn formatted(&self) -> Vec<String> {
        self.generators.iter().map(|p| p.format(&self.variables)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }
}

impl PoissonPolyAlgebra {
    /// Validates antisymmetry and the Jacobi identity on generators.
    pub fn new(names: Vec<String>, pi: Vec<Vec<Poly>>, degree_cap: usize) -> Result<Self, PoissonError> {
        let d = names.len();
        if pi.len() != d || pi.iter().any(|r| r.len() != d) {
            return Err(PoissonError::InvalidStructure(format!("bracket table is not {d}×{d}")));
        }
        let a = PoissonPolyAlgebra { names, pi, degree_cap };
        for i in 0..d {
            for j in 0..d {
                if a.pi[i][j] != a.pi[j][i].scaled(&int(-1)) {
                    return Err(PoissonError::InvalidStructure(format!("{{x{i}, x{j}}} is not antisymmetric")));
                }
                for k in 0..d {
                    let jac = a
                        .bracket_extend(&a.var(i), &a.pi[j][k])?
                        .add(&a.bracket_extend(&a.var(j), &a.pi[k][i])?)
                        .add(&a.bracket_extend(&a.var(k), &a.pi[i][j])?);
                    if !jac.is_zero() {
                        return Err(PoissonError::InvalidStructure(format!("Jacobi fails on x{i}, x{j}, x{k}")));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn from_file(f: &PoissonFile) -> Result<Self, PoissonError> {
        let d = f.variables.len();
        let mut pi = vec![vec![Poly::zero(d); d]; d];
        for (a, b, p) in &f.brackets {
            let idx = |s: &str| f.variables.iter().position(|v| v == s).ok_or_else(|| PoissonError::InvalidStructure(format!("unknown variable {s:?}")));
            let (i, j) = (idx(a)?, idx(b)?);
            let p = Poly::parse(p, &f.variables)?;
            pi[j][i] = p.scaled(&int(-1));
            pi[i][j] = p;
        }
        Self::new(f.variables.clone(), pi, f.degree_cap)
    }

    /// The linear Poisson structure on `g*`: `{x_i, x_j} = Σ c_ij^k x_k`.
    pub fn lie_poisson(g: &FinDimLieAlgebra, degree_cap: usize) -> Result<Self, PoissonError> {
        let d = g.dim();
        let pi = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| g.table[i][j].iter().fold(Poly::zero(d), |acc, (k, c)| acc.add(&Poly::var(d, *k).scaled(c))))
                    .collect()
            })
            .collect();
        Self::new(g.names.clone(), pi, degree_cap)
    }

    /// `k[x_1, y_1, …]` with `{x_i, y_i} = 1`.
    pub fn symplectic(pairs: usize, degree_cap: usize) -> Self {
        let d = 2 * pairs;
        let mut pi = vec![vec![Poly::zero(d); d]; d];
        let mut names = Vec::new();
        for k in 0..pairs {
            let suffix = if pairs == 1 { String::new() } else { (k + 1).to_string() };
            names.push(format!("x{suffix}"));
            names.push(format!("y{suffix}"));
            pi[2 * k][2 * k + 1] = Poly::constant(d, int(1));
            pi[2 * k + 1][2 * k] = Poly::constant(d, int(-1));
        }
        Self::new(names, pi, degree_cap).expect("constant brackets")
    }

    pub fn named(name: &str, degree_cap: usize) -> Option<Self> {
        match name {
            "symplectic" | "symplectic2" => Some(Self::symplectic(1, degree_cap)),
            "symplectic4" => Some(Self::symplectic(2, degree_cap)),
            "sl2star" => Self::lie_poisson(&FinDimLieAlgebra::sl2(), degree_cap).ok(),
            "aff1x2star" => Self::lie_poisson(&FinDimLieAlgebra::affine_pair(), degree_cap).ok(),
            _ => None,
        }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    fn capped(&self, p: Poly) -> Result<Poly, PoissonError> {
        if p.degree() > self.degree_cap {
            return Err(PoissonError::CapExceeded { degree: p.degree(), cap: self.degree_cap });
        }
        Ok(p)
    }

    /// `{f, g} = Σ π_ij ∂_i f ∂_j g`.
    pub fn bracket_extend(&self, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
        let f = self.capped(f.clone())?;
        let g = self.capped(g.clone())?;
        let d = self.nvars();
        let mut out = Poly::zero(d);
        for i in 0..d {
            let fi = f.derivative(i);
            if fi.is_zero() {
                continue;
            }
            for j in 0..d {
                if self.pi[i][j].is_zero() {
                    continue;
                }
                out = out.add(&self.pi[i][j].mul(&fi).mul(&g.derivative(j)));
            }
        }
        self.capped(out)
    }

    /// Pfaffian of the principal submatrix on `idx` (even length).
    pub fn pfaffian(&self, idx: &[usize]) -> Poly {
        let d = self.nvars();
        if idx.is_empty() {
            return Poly::constant(d, int(1));
        }
        let mut out = Poly::zero(d);
        for j in 1..idx.len() {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != 0 && *k != j).map(|(_, &x)| x).collect();
            let term = self.pi[idx[0]][idx[j]].mul(&self.pfaffian(&rest));
            out = if j % 2 == 1 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    /// The `(2m+2)`-Pfaffians of `(π_ij)`; zero ideal when `2m+2 > d`.
    pub fn degeneracy_ideal(&self, m: usize) -> PolyIdeal {
        let generators = subsets(self.nvars(), 2 * m + 2).iter().map(|s| self.pfaffian(s)).filter(|p| !p.is_zero()).collect();
        PolyIdeal { variables: self.names.clone(), generators }
    }

    /// Evaluates an element of `P₁(n)` on polynomials, reading each basis
    /// block as a left-normed bracket.
    pub fn evaluate_p1(&self, p1: &Classical, x: &Element<Classical>, args: &[Poly]) -> Result<Poly, PoissonError> {
        let n = args.len();
        let monos = p1.basis_monos(n);
        let mut out = Poly::zero(self.nvars());
        for (idx, c) in p1.coordinates(n, x).iter() {
            let mut prod = Poly::constant(self.nvars(), int(1));
            for w in &monos[*idx].0 {
                let mut b = args[w[0] as usize - 1].clone();
                for &l in &w[1..] {
                    b = self.bracket_extend(&b, &args[l as usize - 1])?;
                }
                prod = self.capped(prod.mul(&b))?;
            }
            out = out.add(&prod.scaled(c));
        }
        Ok(out)
    }

    /// The degeneracy generator evaluated on increasing variable tuples.
    pub fn operadic_ideal(&self, m: usize) -> Result<PolyIdeal, PoissonError> {
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, m);
        let mut generators = Vec::new();
        for s in subsets(self.nvars(), 2 * m + 2) {
            let args: Vec<Poly> = s.iter().map(|&i| self.var(i)).collect();
            let v = self.evaluate_p1(&p1, &g, &args)?;
            if !v.is_zero() {
                generators.push(v);
            }
        }
        Ok(PolyIdeal { variables: self.names.clone(), generators })
    }

    pub fn operadic_vs_pfaffian(&self, m: usize) -> Result<bool, PoissonError> {
        Ok(self.compare(m)?.equal)
    }

    /// Mutual membership of the operadic and Pfaffian ideals up to the cap,
    /// with the per-tuple scalar relating evaluation and Pfaffian.
    pub fn compare(&self, m: usize) -> Result<Comparison, PoissonError> {
        let d = self.nvars();
        let p1 = Classical::p1();
        let g = degeneracy_generator(&p1, m);
        let mut operadic = Vec::new();
        let mut pfaff = Vec::new();
        let mut scalars = Vec::new();
        for s in subsets(d, 2 * m + 2) {
            let args: Vec<Poly> = s.iter().map(|&i| self.var(i)).collect();
            let v = self.evaluate_p1(&p1, &g, &args)?;
            let p = self.pfaffian(&s);
            scalars.push(v.terms.proportional_to(&p.terms).map(|r: Rational| format_rational(&r)));
            operadic.push(v);
            pfaff.push(p);
        }
        let top = operadic.iter().chain(&pfaff).map(|p| p.degree()).max().unwrap_or(0);
        if top > self.degree_cap {
            return Err(PoissonError::Inconclusive(format!("generators reach degree {top} above the cap {}", self.degree_cap)));
        }
        let iop = TruncatedIdeal::new(d, &operadic, self.degree_cap)?;
        let ipf = TruncatedIdeal::new(d, &pfaff, self.degree_cap)?;
        let mut equal = true;
        for p in &pfaff {
            equal &= iop.contains(p)?;
        }
        for p in &operadic {
            equal &= ipf.contains(p)?;
        }
        Ok(Comparison { m, equal, scalars, operadic_dim: iop.dim(), pfaffian_dim: ipf.dim(), degree_cap: self.degree_cap })
    }
}

#[derive(Debug, Serialize)]
pub struct Comparison {
    pub m: usize,
    pub equal: bool,
    /// `evaluation / Pfaffian` per tuple, `None` where not proportional.
    pub scalars: Vec<Option<String>>,
    pub operadic_dim: usize,
    pub pfaffian_dim: usize,
    pub degree_cap: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_leibniz_example() {
        let a = PoissonPolyAlgebra::named("sl2star", 4).unwrap();
        let (x, y, z) = (a.var(0), a.var(1), a.var(2));
        assert!(a.bracket_extend(&x, &x).unwrap().is_zero());
        assert_eq!(a.bracket_extend(&x.mul(&x), &y).unwrap(), x.mul(&z).scaled(&int(2)));
    }

    #[test]
    fn symplectic_bracket_is_jacobian() {
        let a = PoissonPolyAlgebra::symplectic(1, 6);
        let (x, y) = (a.var(0), a.var(1));
        let f = x.mul(&x).mul(&y);
        let g = y.mul(&y).add(&x);
        let jac = f.derivative(0).mul(&g.derivative(1)).sub(&f.derivative(1).mul(&g.derivative(0)));
        assert_eq!(a.bracket_extend(&f, &g).unwrap(), jac);
    }

    #[test]
    fn cap_is_enforced() {
        let a = PoissonPolyAlgebra::symplectic(1, 2);
        let x = a.var(0);
        assert!(matches!(a.bracket_extend(&x.mul(&x).mul(&x), &x), Err(PoissonError::CapExceeded { .. })));
    }
}
