//! Permutations, shuffles and symmetric sequences of complexes.
//!
//! A permutation is written in one-line notation `(σ(1),…,σ(n))`, so the
//! transposition of the first two letters is `(2,1,3,…)`. Shift `[n]`
//! lowers cohomological degree by `n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linear::{
    compose, sign_rational, ChainComplex, GradedBasisSpace, LinearError, Rational, SparseMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymSeqError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("arity {0} missing")]
    MissingArity(usize),
    #[error("action violates {0}")]
    BadAction(String),
    #[error(transparent)]
    Linear(#[from] LinearError),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, SymSeqError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(SymSeqError::NotAPermutation(images));
            }
            seen[i - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Adjacent transposition exchanging `j` and `j+1` (1-based).
    pub fn adjacent(n: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(j - 1, j);
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&i| self.images[i - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &i) in self.images.iter().enumerate() {
            inv[i - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// Word in adjacent transpositions `s_{j_1} … s_{j_k}` whose product is `self`.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // Bubble-sort the one-line form; each swap right-multiplies by s_j.
        let mut a = self.images.clone();
        let mut word = Vec::new();
        let n = a.len();
        for pass in 0..n {
            for j in 0..n.saturating_sub(1 + pass) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    word.push(j + 1);
                }
            }
        }
        word.reverse();
        word
    }

    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation { images: cur.clone() });
                return;
            }
            for i in 1..=n {
                if !used[i - 1] {
                    used[i - 1] = true;
                    cur.push(i);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[i - 1] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Permutation {
    type Err = SymSeqError;
    /// Accepts `(2,3,1)`, `2,3,1` or `231` (single digits).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let images: Vec<usize> = if t.contains(',') {
            t.split(',').filter_map(|x| x.trim().parse().ok()).collect()
        } else {
            t.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        Permutation::new(images)
    }
}

/// Parity of the permutation as `+1` or `-1`.
pub fn perm_sign(p: &Permutation) -> i32 {
    let mut inv = 0usize;
    let a = p.images();
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub underlying: Permutation,
    pub split: (usize, usize),
}

/// All `(i,j)`-shuffles, lexicographic in one-line notation.
pub fn shuffles(i: usize, j: usize) -> Vec<Shuffle> {
    let n = i + j;
    let mut out = Vec::new();
    // Choose the image set of the first block; the rest is forced.
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            subsets(n, k, x + 1, cur, out);
            cur.pop();
        }
    }
    let mut firsts = Vec::new();
    subsets(n, i, 1, &mut Vec::new(), &mut firsts);
    for first in firsts {
        let rest: Vec<usize> = (1..=n).filter(|x| !first.contains(x)).collect();
        let images = first.iter().chain(rest.iter()).copied().collect();
        out.push(Shuffle { underlying: Permutation { images }, split: (i, j) });
    }
    out.sort_by(|a, b| a.underlying.images.cmp(&b.underlying.images));
    out
}

/// Arity-indexed complexes with symmetric group actions stored on the
/// adjacent transpositions `s_j = (j j+1)`.
pub struct SymmetricSequence {
    components: BTreeMap<usize, ChainComplex>,
    generators: BTreeMap<(usize, usize), SparseMap>,
    cache: Mutex<HashMap<(usize, Permutation), SparseMap>>,
}

impl Clone for SymmetricSequence {
    fn clone(&self) -> Self {
        SymmetricSequence {
            components: self.components.clone(),
            generators: self.generators.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for SymmetricSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricSequence")
            .field("dims", &self.dims())
            .finish()
    }
}

impl SymmetricSequence {
    /// Validates the Coxeter relations and compatibility with differentials.
    pub fn new(
        components: BTreeMap<usize, ChainComplex>,
        generators: BTreeMap<(usize, usize), SparseMap>,
    ) -> Result<Self, SymSeqError> {
        let s = SymmetricSequence { components, generators, cache: Mutex::new(HashMap::new()) };
        s.validate()?;
        Ok(s)
    }

    /// Builds generator matrices from a rule giving the image of basis index `b`
    /// under `s_j` in arity `n`.
    pub fn from_rule(
        components: BTreeMap<usize, ChainComplex>,
        mut rule: impl FnMut(usize, usize, usize) -> Vec<(usize, Rational)>,
    ) -> Result<Self, SymSeqError> {
        let mut generators = BTreeMap::new();
        for (&n, c) in &components {
            for j in 1..n {
                let sp = c.space().clone();
                let mut entries = Vec::new();
                for b in 0..sp.dim() {
                    for (t, v) in rule(n, j, b) {
                        entries.push(((b, t), v));
                    }
                }
                generators.insert((n, j), SparseMap::new(sp.clone(), sp, 0, entries)?);
            }
        }
        Self::new(components, generators)
    }

    fn validate(&self) -> Result<(), SymSeqError> {
        for (&n, c) in &self.components {
            let id = SparseMap::identity(c.space());
            for j in 1..n {
                let s = self.generators.get(&(n, j)).ok_or(SymSeqError::MissingArity(n))?;
                if compose(s, s)? != id {
                    return Err(SymSeqError::BadAction(format!("s_{j}^2 = 1 in arity {n}")));
                }
                if compose(c.d(), s)? != compose(s, c.d())? {
                    return Err(SymSeqError::BadAction(format!("d-compatibility of s_{j} in arity {n}")));
                }
                for k in j + 1..n {
                    let t = &self.generators[&(n, k)];
                    let st = compose(s, t)?;
                    if k == j + 1 {
                        let sts = compose(&st, s)?;
                        let tst = compose(&compose(t, s)?, t)?;
                        if sts != tst {
                            return Err(SymSeqError::BadAction(format!("braid s_{j} s_{k} in arity {n}")));
                        }
                    } else if st != compose(t, s)? {
                        return Err(SymSeqError::BadAction(format!("commutation s_{j} s_{k} in arity {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn component(&self, n: usize) -> Option<&ChainComplex> {
        self.components.get(&n)
    }

    pub fn dims(&self) -> BTreeMap<usize, usize> {
        self.components.iter().map(|(n, c)| (*n, c.space().dim())).collect()
    }

    pub fn generator(&self, n: usize, j: usize) -> Option<&SparseMap> {
        self.generators.get(&(n, j))
    }

    /// Action of `σ` on the arity-`n` component, a homomorphism in `σ`.
    pub fn action(&self, sigma: &Permutation) -> Result<SparseMap, SymSeqError> {
        let n = sigma.n();
        let c = self.components.get(&n).ok_or(SymSeqError::MissingArity(n))?;
        let key = (n, sigma.clone());
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(m.clone());
        }
        let mut m = SparseMap::identity(c.space());
        for j in sigma.adjacent_word() {
            m = compose(&m, &self.generators[&(n, j)])?;
        }
        self.cache.lock().expect("cache lock").insert(key, m.clone());
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let comps: BTreeMap<String, serde_json::Value> =
            self.components.iter().map(|(n, c)| (n.to_string(), c.to_json())).collect();
        let gens: BTreeMap<String, serde_json::Value> = self
            .generators
            .iter()
            .map(|((n, j), m)| (format!("{n}:{j}"), m.to_json()))
            .collect();
        serde_json::json!({ "components": comps, "generators": gens })
    }
}

fn sign_map(space: &GradedBasisSpace, base: &SparseMap, odd: bool) -> SparseMap {
    let entries = base.entries().map(|(k, v)| (*k, v * sign_rational(odd)));
    SparseMap::new(space.clone(), space.clone(), base.degree_shift, entries).expect("same pattern")
}

fn shift_complex(c: &ChainComplex, by: i64) -> ChainComplex {
    let sp = c.space().shifted(by);
    // d[n] = (-1)^n d
    let entries = c.d().entries().map(|(k, v)| (*k, v * sign_rational(by.rem_euclid(2) == 1)));
    let d = SparseMap::new(sp.clone(), sp, 1, entries).expect("shifted differential");
    ChainComplex::new(d).expect("shift preserves d^2 = 0")
}

/// `M[n](m) = M(m)[n]`; actions unchanged.
pub fn shift(m: &SymmetricSequence, n: i64) -> SymmetricSequence {
    let components: BTreeMap<usize, ChainComplex> =
        m.components.iter().map(|(a, c)| (*a, shift_complex(c, n))).collect();
    let generators = m
        .generators
        .iter()
        .map(|((a, j), g)| {
            let sp = components[a].space();
            ((*a, *j), sign_map(sp, g, false))
        })
        .collect();
    SymmetricSequence { components, generators, cache: Mutex::new(HashMap::new()) }
}

/// `M{n}(m) = M(m) ⊗ sgn_m^{⊗n} [n(m-1)]`.
pub fn suspend(m: &SymmetricSequence, n: i64) -> SymmetricSequence {
    let components: BTreeMap<usize, ChainComplex> = m
        .components
        .iter()
        .map(|(a, c)| (*a, shift_complex(c, n * (*a as i64 - 1))))
        .collect();
    let odd = n.rem_euclid(2) == 1;
    let generators = m
        .generators
        .iter()
        .map(|((a, j), g)| ((*a, *j), sign_map(components[a].space(), g, odd)))
        .collect();
    SymmetricSequence { components, generators, cache: Mutex::new(HashMap::new()) }
}

/// True iff every `f_n` commutes with every adjacent transposition.
pub fn check_equivariance(
    f: &BTreeMap<usize, SparseMap>,
    m: &SymmetricSequence,
    n: &SymmetricSequence,
) -> bool {
    for (&a, fa) in f {
        for j in 1..a {
            let (Some(sm), Some(sn)) = (m.generator(a, j), n.generator(a, j)) else {
                return false;
            };
            match (compose(fa, sm), compose(sn, fa)) {
                (Ok(x), Ok(y)) if x == y => {}
                _ => return false,
            }
        }
    }
    true
}

/// One-dimensional sequence `k·e_n` in degree 0 with `s_j` acting by `±1`.
pub fn character_sequence(arities: &[usize], sign: bool, name: &str) -> SymmetricSequence {
    let comps = arities
        .iter()
        .map(|&n| {
            let sp = GradedBasisSpace::from_names(&[(&format!("{name}{n}"), 0)]).expect("space");
            (n, ChainComplex::with_zero_differential(sp))
        })
        .collect();
    SymmetricSequence::from_rule(comps, |_, _, b| {
        vec![(b, if sign { -Rational::one() } else { Rational::one() })]
    })
    .expect("character")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn signs() {
        assert_eq!(perm_sign(&p(&[1, 2, 3])), 1);
        assert_eq!(perm_sign(&p(&[2, 1, 3, 4])), -1);
        assert_eq!(perm_sign(&p(&[1, 3, 2, 4])), -1);
    }

    #[test]
    fn shuffle_membership() {
        let s22: Vec<Permutation> = shuffles(2, 2).into_iter().map(|s| s.underlying).collect();
        assert_eq!(s22.len(), 6);
        assert!(s22.contains(&p(&[1, 3, 2, 4])));
        assert!(!s22.contains(&p(&[2, 1, 3, 4])));
        let s0: Vec<_> = shuffles(0, 3).into_iter().map(|s| s.underlying).collect();
        assert_eq!(s0, vec![Permutation::identity(3)]);
    }

    #[test]
    fn shuffles_1_2_match_brute_force_filter() {
        let brute: Vec<Permutation> = Permutation::all(3)
            .into_iter()
            .filter(|s| s.apply(2) < s.apply(3))
            .collect();
        let got: Vec<Permutation> = shuffles(1, 2).into_iter().map(|s| s.underlying).collect();
        assert_eq!(got, brute);
        assert_eq!(got, vec![p(&[1, 2, 3]), p(&[2, 1, 3]), p(&[3, 1, 2])]);
    }

    #[test]
    fn adjacent_word_multiplies_back() {
        for s in Permutation::all(4) {
            let mut acc = Permutation::identity(4);
            for j in s.adjacent_word() {
                acc = acc.compose(&Permutation::adjacent(4, j));
            }
            assert_eq!(acc, s);
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!("(2,3,1)".parse::<Permutation>().unwrap(), p(&[2, 3, 1]));
        assert_eq!("231".parse::<Permutation>().unwrap(), p(&[2, 3, 1]));
    }

    #[test]
    fn suspension_of_trivial_character() {
        let m = character_sequence(&[1, 2, 3], false, "c");
        let s = suspend(&m, 1);
        assert_eq!(s.component(2).unwrap().space().degree(0), -1);
        assert_eq!(s.generator(2, 1).unwrap().entry(0, 0), -Rational::one());
        let s0 = suspend(&m, 0);
        assert_eq!(s0.generator(3, 2), m.generator(3, 2));
    }
}
