//! Reduced Chevalley–Eilenberg complexes of finite-dimensional Lie algebras
//! and the free graded-commutative algebra on them.
//!
//! `Λ^p g` is stored in cohomological degree `−p`; the boundary raises it by
//! one. The shift `[−1]` puts `Λ^p g` in degree `1 − p` in the reports.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linear::{homology_dims, int, BasisElement, ChainComplex, GradedBasisSpace, LinComb, LinearError, Rational, SparseMap};
use crate::symseq::{perm_sign, Permutation};

#[derive(Debug, Error)]
pub enum LieError {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinDimLieAlgebra {
    pub names: Vec<String>,
    /// `table[i][j] = [e_i, e_j]`.
    pub table: Vec<Vec<LinComb<usize>>>,
}

/// File form: `{"names": [..], "brackets": [["x", "y", {"z": "1"}], ..]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct LieAlgebraFile {
    pub names: Vec<String>,
    pub brackets: Vec<(String, String, BTreeMap<String, String>)>,
}

impl FinDimLieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(names: Vec<String>, table: Vec<Vec<LinComb<usize>>>) -> Result<Self, LieError> {
        let d = names.len();
        if table.len() != d || table.iter().any(|r| r.len() != d) {
            return Err(LieError::InvalidStructure(format!("bracket table is not {d}×{d}")));
        }
        let g = FinDimLieAlgebra { names, table };
        for i in 0..d {
            for j in 0..d {
                if g.table[i][j] != g.table[j][i].neg() {
                    return Err(LieError::InvalidStructure(format!("[e{i}, e{j}] is not antisymmetric")));
                }
                for k in 0..d {
                    let mut jac = g.bracket(&g.table[i][j], &LinComb::basis(k));
                    jac.add(&g.bracket(&g.table[j][k], &LinComb::basis(i)));
                    jac.add(&g.bracket(&g.table[k][i], &LinComb::basis(j)));
                    if !jac.is_zero() {
                        return Err(LieError::InvalidStructure(format!("Jacobi fails on e{i}, e{j}, e{k}")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds from `[e_i, e_j] = v` for `i < j`, filling in antisymmetry.
    pub fn from_brackets(names: &[&str], brackets: &[(usize, usize, &[(usize, i64)])]) -> Result<Self, LieError> {
        let d = names.len();
        let mut table = vec![vec![LinComb::zero(); d]; d];
        for (i, j, v) in brackets {
            let x: LinComb<usize> = v.iter().map(|(k, c)| (*k, int(*c))).collect();
            table[*i][*j] = x.clone();
            table[*j][*i] = x.neg();
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), table)
    }

    pub fn from_file(f: &LieAlgebraFile) -> Result<Self, LieError> {
        let d = f.names.len();
        let idx = |s: &str| f.names.iter().position(|n| n == s).ok_or_else(|| LieError::InvalidStructure(format!("unknown basis element {s:?}")));
        let mut table = vec![vec![LinComb::zero(); d]; d];
        for (a, b, v) in &f.brackets {
            let (i, j) = (idx(a)?, idx(b)?);
            let mut x = LinComb::zero();
            for (k, c) in v {
                x.add_term(idx(k)?, crate::linear::parse_rational(c)?);
            }
            table[i][j] = x.clone();
            table[j][i] = x.neg();
        }
        Self::new(f.names.clone(), table)
    }

    pub fn to_file(&self) -> LieAlgebraFile {
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !self.table[i][j].is_zero() {
                    let v = self.table[i][j].iter().map(|(k, c)| (self.names[*k].clone(), crate::linear::format_rational(c))).collect();
                    brackets.push((self.names[i].clone(), self.names[j].clone(), v));
                }
            }
        }
        LieAlgebraFile { names: self.names.clone(), brackets }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn bracket(&self, x: &LinComb<usize>, y: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn abelian(d: usize) -> Self {
        let names = (1..=d).map(|i| format!("e{i}")).collect();
        FinDimLieAlgebra { names, table: vec![vec![LinComb::zero(); d]; d] }
    }

    /// `[e_1, e_2] = e_1`.
    pub fn affine_line() -> Self {
        Self::from_brackets(&["e1", "e2"], &[(0, 1, &[(0, 1)])]).expect("aff(1)")
    }

    /// `[x, y] = z` and cyclic.
    pub fn sl2() -> Self {
        Self::from_brackets(&["x", "y", "z"], &[(0, 1, &[(2, 1)]), (1, 2, &[(0, 1)]), (2, 0, &[(1, 1)])]).expect("sl2")
    }

    /// `aff(1) ⊕ aff(1)`, whose dual Poisson structure has generic rank 4.
    pub fn affine_pair() -> Self {
        Self::from_brackets(&["a", "b", "c", "d"], &[(0, 1, &[(1, 1)]), (2, 3, &[(3, 1)])]).expect("aff(1)²")
    }

    pub fn named(name: &str) -> Option<Self> {
        match name {
            "sl2" => Some(Self::sl2()),
            "aff1" | "nonabelian2" => Some(Self::affine_line()),
            "aff1x2" => Some(Self::affine_pair()),
            _ => name.strip_prefix("abelian").and_then(|d| d.parse().ok()).map(Self::abelian),
        }
    }

    /// The same algebra in the basis `f_i = Σ_j m[i][j] e_j`.
    pub fn change_basis(&self, m: &[Vec<Rational>]) -> Result<Self, LieError> {
        let d = self.dim();
        let inv = invert(m).ok_or_else(|| LieError::InvalidStructure("singular change of basis".into()))?;
        let row = |r: &[Rational]| -> LinComb<usize> { r.iter().enumerate().map(|(k, c)| (k, c.clone())).collect() };
        let mut table = vec![vec![LinComb::zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let in_e = self.bracket(&row(&m[i]), &row(&m[j]));
                let mut in_f = LinComb::zero();
                for (k, c) in in_e.iter() {
                    in_f.add_scaled(&row(&inv[*k]), c);
                }
                table[i][j] = in_f;
            }
        }
        let names = (1..=d).map(|i| format!("f{i}")).collect();
        Self::new(names, table)
    }

    /// `aff(1)²` in a seeded random integer basis.
    pub fn random_frobenius(seed: u64) -> Self {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let m: Vec<Vec<Rational>> = (0..4).map(|_| (0..4).map(|_| int(rng.gen_range(-2..=2))).collect()).collect();
            if let Ok(g) = Self::affine_pair().change_basis(&m) {
                return g;
            }
        }
    }
}

/// Gauss–Jordan inverse; `None` when singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| int((i == j) as i64)));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != int(0))?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= piv.clone();
        }
        for r in 0..n {
            if r != c && a[r][c] != int(0) {
                let f = a[r][c].clone();
                let src = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(src) {
                    *x -= f.clone() * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Increasing index subsets of size `p`.
pub fn subsets(d: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            go(i + 1, d, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, p, &mut Vec::new(), &mut out);
    out
}

pub struct CEComplex {
    pub chain: ChainComplex,
    /// `wedges[k]` lists the indices of the `k`-th basis element.
    pub wedges: Vec<Vec<usize>>,
}

/// `e_{i_1} ∧ ⋯ ∧ e_{i_p}` as a signed sorted wedge, or `None` if repeated.
fn sort_wedge(v: Vec<usize>) -> Option<(Vec<usize>, bool)> {
    let mut s = v.clone();
    s.sort();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let images: Vec<usize> = v.iter().map(|x| s.iter().position(|y| y == x).expect("present") + 1).collect();
    let odd = perm_sign(&Permutation::new(images).expect("perm")) < 0;
    Some((s, odd))
}

/// `∂(x_1 ∧ ⋯ ∧ x_p) = Σ_{i<j} (−1)^{i+j} [x_i, x_j] ∧ x_1 ∧ ⋯ x̂_i ⋯ x̂_j ⋯ ∧ x_p`
/// on `Λ^{≥1} g`.
pub fn ce_complex(g: &FinDimLieAlgebra) -> CEComplex {
    let d = g.dim();
    let mut wedges = Vec::new();
    let mut basis = Vec::new();
    for p in 1..=d {
        for s in subsets(d, p) {
            let name = s.iter().map(|&i| g.names[i].as_str()).collect::<Vec<_>>().join("∧");
            basis.push(BasisElement { name, degree: -(p as i64), weight: None });
            wedges.push(s);
        }
    }
    let index: BTreeMap<Vec<usize>, usize> = wedges.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    let space = GradedBasisSpace::new(basis).expect("distinct wedges");
    let mut entries = Vec::new();
    for (src, w) in wedges.iter().enumerate() {
        let p = w.len();
        for i in 0..p {
            for j in i + 1..p {
                let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
                let rest: Vec<usize> = w.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x).collect();
                for (k, c) in g.table[w[i]][w[j]].iter() {
                    let mut v = vec![*k];
                    v.extend(&rest);
                    if let Some((s, odd)) = sort_wedge(v) {
                        let coef = if odd { -(c * &sign) } else { c * &sign };
                        entries.push(((src, index[&s]), coef));
                    }
                }
            }
        }
    }
    let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
    for (k, c) in entries {
        *acc.entry(k).or_insert_with(|| int(0)) += c;
    }
    let d_map = SparseMap::new(space.clone(), space, 1, acc).expect("degree +1");
    CEComplex { chain: ChainComplex::new(d_map).expect("d² = 0 for a Lie algebra"), wedges }
}

/// Reduced homology dims indexed by homological degree `p ≥ 1`.
pub fn reduced_homology(g: &FinDimLieAlgebra) -> BTreeMap<usize, usize> {
    let h = homology_dims(&ce_complex(g).chain);
    (1..=g.dim()).map(|p| (p, h.get(&-(p as i64)).copied().unwrap_or(0))).collect()
}

/// `Σ_{p≥1} (−1)^p C(d, p)`.
pub fn alternating_binomial(d: usize) -> i64 {
    let mut c: i64 = 1;
    let mut s = 0;
    for p in 1..=d {
        c = c * (d - p + 1) as i64 / p as i64;
        s += if p % 2 == 0 { c } else { -c };
    }
    s
}

/// Graded dims of `Sym^n` of a graded space, `n = 0..=cap`, restricted to
/// degrees in `window`. Keyed by `(n, degree)`.
pub fn free_gc_dims(gens: &BTreeMap<i64, usize>, cap: usize, window: (i64, i64)) -> BTreeMap<(usize, i64), u64> {
    let mut table: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    table.insert((0, 0), 1);
    for (&deg, &count) in gens {
        for _ in 0..count {
            let mut next: BTreeMap<(usize, i64), u64> = BTreeMap::new();
            for (&(n, e), &v) in &table {
                let max_j = if deg.rem_euclid(2) == 1 { 1 } else { cap - n };
                for j in 0..=max_j.min(cap - n) {
                    *next.entry((n + j, e + j as i64 * deg)).or_insert(0) += v;
                }
            }
            table = next;
        }
    }
    table.retain(|&(_, e), v| *v > 0 && e >= window.0 && e <= window.1);
    table
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct VanishingTable {
    pub algebra: Vec<String>,
    pub sym_cap: usize,
    pub degree_window: (i64, i64),
    /// Degrees of the generators after the shift, from chain-level dims.
    pub chain_generators: BTreeMap<i64, usize>,
    pub homology_generators: BTreeMap<i64, usize>,
    /// `[sym power, degree, dim]` rows, with `Sym^0 = k` included.
    pub chain_level: Vec<(usize, i64, u64)>,
    pub homology_level: Vec<(usize, i64, u64)>,
    /// Total dims per degree for `Sym` and for `Sym^{≥1}`.
    pub homology_totals_unital: BTreeMap<i64, u64>,
    pub homology_totals_nonunital: BTreeMap<i64, u64>,
}

pub fn vanishing_locus_dims(g: &FinDimLieAlgebra, sym_cap: usize, window: (i64, i64)) -> VanishingTable {
    let ce = ce_complex(g);
    let shift = |p: usize| 1 - p as i64;
    let mut chain_generators = BTreeMap::new();
    for w in &ce.wedges {
        *chain_generators.entry(shift(w.len())).or_insert(0) += 1;
    }
    let homology_generators: BTreeMap<i64, usize> =
        reduced_homology(g).into_iter().filter(|(_, v)| *v > 0).map(|(p, v)| (shift(p), v)).collect();
    let rows = |t: BTreeMap<(usize, i64), u64>| t.into_iter().map(|((n, e), v)| (n, e, v)).collect::<Vec<_>>();
    let hom = free_gc_dims(&homology_generators, sym_cap, window);
    let mut unital = BTreeMap::new();
    let mut nonunital = BTreeMap::new();
    for (&(n, e), &v) in &hom {
        *unital.entry(e).or_insert(0) += v;
        if n > 0 {
            *nonunital.entry(e).or_insert(0) += v;
        }
    }
    VanishingTable {
        algebra: g.names.clone(),
        sym_cap,
        degree_window: window,
        chain_level: rows(free_gc_dims(&chain_generators, sym_cap, window)),
        homology_level: rows(hom),
        chain_generators,
        homology_generators,
        homology_totals_unital: unital,
        homology_totals_nonunital: nonunital,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_sum() {
        for d in 1..8 {
            assert_eq!(alternating_binomial(d), -1);
        }
    }

    #[test]
    fn jacobi_failure_is_rejected() {
        // [x,y]=x, [y,z]=y, [x,z]=z fails Jacobi
        let r = FinDimLieAlgebra::from_brackets(&["x", "y", "z"], &[(0, 1, &[(0, 1)]), (1, 2, &[(1, 1)]), (0, 2, &[(2, 1)])]);
        assert!(matches!(r, Err(LieError::InvalidStructure(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![int(1), int(-1)], vec![int(-1), int(2)]]);
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
