//! Exact rational linear algebra over finite graded bases.
//!
//! Grading is cohomological throughout: differentials raise degree by one.
//! Homological complexes are stored with negated degrees.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearError {
    #[error("incompatible spaces: {0}")]
    IncompatibleSpaces(String),
    #[error("not a complex: d^2 != 0 ({0} nonzero entries)")]
    NotAComplex(usize),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, LinearError> {
    let s = s.trim();
    let bad = || LinearError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sign_rational(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Formal finite linear combination with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(k, c);
        s
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &Rational::one());
    }

    pub fn sub(&mut self, other: &LinComb<K>) {
        self.add_scaled(other, &-Rational::one());
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }

    /// Linear extension of `f` on basis keys.
    pub fn flat_map<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// `Some(c)` if `self == c * other` with `c != 0`.
    pub fn proportional_to(&self, other: &LinComb<K>) -> Option<Rational> {
        let (k0, v0) = other.terms.iter().next()?;
        let c = self.coeff(k0) / v0;
        if c.is_zero() || self.len() != other.len() {
            return None;
        }
        if &other.scaled(&c) == self {
            Some(c)
        } else {
            None
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if !a.is_one() {
                write!(f, "{}*", format_rational(&a))?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, format_rational(c))))
            .finish()
    }
}

/// Row echelon form over the rationals with fully reduced pivots.
///
/// Rows are sparse maps column -> value with pivot coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the span; canonical for a given span.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut v = v.clone();
        // Pivot rows are fully reduced, so one pass in key order suffices.
        let keys: Vec<K> = v.keys().cloned().collect();
        for k in keys {
            if let Some(row) = self.rows.get(&k) {
                let c = v.coeff(&k);
                if !c.is_zero() {
                    v.add_scaled(row, &-c);
                }
            }
        }
        v
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((p, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r = r.scaled(&(Rational::one() / c));
        for row in self.rows.values_mut() {
            let c = row.coeff(&p);
            if !c.is_zero() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values()
    }
}

/// Rank over Q of integer-scaled rows by fraction-free elimination.
///
/// Each row is cleared of denominators, and elimination uses
/// cross-multiplication followed by division by the row content.
pub fn rank_of_rows<K: Ord + Clone>(rows: &[LinComb<K>]) -> usize {
    let mut pivots: BTreeMap<K, BTreeMap<K, BigInt>> = BTreeMap::new();
    for row in rows {
        let mut r = integer_row(row);
        while let Some((p, a)) = r.iter().next().map(|(k, v)| (k.clone(), v.clone())) {
            match pivots.get(&p) {
                None => {
                    pivots.insert(p, r);
                    break;
                }
                Some(prow) => {
                    let b = prow[&p].clone();
                    let mut next = BTreeMap::new();
                    for (k, v) in &r {
                        next.insert(k.clone(), v * &b);
                    }
                    for (k, v) in prow {
                        let e = next.entry(k.clone()).or_insert_with(BigInt::zero);
                        *e -= v * &a;
                    }
                    next.retain(|_, v| !v.is_zero());
                    r = primitive(next);
                }
            }
        }
    }
    pivots.len()
}

fn integer_row<K: Ord + Clone>(row: &LinComb<K>) -> BTreeMap<K, BigInt> {
    let mut l = BigInt::one();
    for (_, c) in row.iter() {
        l = l.lcm(c.denom());
    }
    let out = row
        .iter()
        .map(|(k, c)| (k.clone(), (c * Rational::from_integer(l.clone())).to_integer()))
        .collect();
    primitive(out)
}

fn primitive<K: Ord>(mut row: BTreeMap<K, BigInt>) -> BTreeMap<K, BigInt> {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
    row
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<i64>,
}

/// Finite ordered basis with cohomological degrees and optional weights.
#[derive(Clone, Debug, Default)]
pub struct GradedBasisSpace {
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedBasisSpace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for GradedBasisSpace {}

impl GradedBasisSpace {
    pub fn new(basis: Vec<BasisElement>) -> Result<Self, LinearError> {
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.name.clone(), i).is_some() {
                return Err(LinearError::InvalidSpace(format!("duplicate basis name `{}`", b.name)));
            }
        }
        let with_w = basis.iter().filter(|b| b.weight.is_some()).count();
        if with_w != 0 && with_w != basis.len() {
            return Err(LinearError::InvalidSpace("weight must be total when present".into()));
        }
        Ok(GradedBasisSpace { basis, index })
    }

    pub fn from_names(names: &[(&str, i64)]) -> Result<Self, LinearError> {
        Self::new(
            names
                .iter()
                .map(|(n, d)| BasisElement { name: n.to_string(), degree: *d, weight: None })
                .collect(),
        )
    }

    /// The ground field: one element `1` in degree 0.
    pub fn unit() -> Self {
        Self::from_names(&[("1", 0)]).expect("unit space")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.basis[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.basis[i].degree
    }

    /// Dimension of each degree present.
    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut m = BTreeMap::new();
        for b in &self.basis {
            *m.entry(b.degree).or_insert(0) += 1;
        }
        m
    }

    /// Shift `[n]`: lowers every degree by `n`.
    pub fn shifted(&self, n: i64) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| BasisElement { degree: b.degree - n, ..b.clone() })
            .collect();
        Self::new(basis).expect("shift keeps names unique")
    }
}

/// Basis names of a tensor product are `a⊗b`.
pub fn tensor(a: &GradedBasisSpace, b: &GradedBasisSpace) -> GradedBasisSpace {
    let mut basis = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            let weight = match (x.weight, y.weight) {
                (Some(u), Some(v)) => Some(u + v),
                (None, None) => None,
                (u, v) => Some(u.unwrap_or(0) + v.unwrap_or(0)),
            };
            basis.push(BasisElement {
                name: format!("{}⊗{}", x.name, y.name),
                degree: x.degree + y.degree,
                weight,
            });
        }
    }
    GradedBasisSpace::new(basis).expect("tensor names are unique")
}

/// Sparse linear map between based spaces. Entries are keyed by
/// (source index, target index).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMap {
    pub source: GradedBasisSpace,
    pub target: GradedBasisSpace,
    pub degree_shift: i64,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMap {
    pub fn new(
        source: GradedBasisSpace,
        target: GradedBasisSpace,
        degree_shift: i64,
        entries: impl IntoIterator<Item = ((usize, usize), Rational)>,
    ) -> Result<Self, LinearError> {
        let mut m = SparseMap { source, target, degree_shift, entries: BTreeMap::new() };
        for ((s, t), c) in entries {
            if s >= m.source.dim() || t >= m.target.dim() {
                return Err(LinearError::InvalidMap(format!("entry ({s},{t}) out of range")));
            }
            if m.target.degree(t) - m.source.degree(s) != degree_shift {
                return Err(LinearError::InvalidMap(format!(
                    "entry {} -> {} breaks degree shift {degree_shift}",
                    m.source.element(s).name,
                    m.target.element(t).name
                )));
            }
            m.add_entry(s, t, c);
        }
        Ok(m)
    }

    pub fn zero(source: GradedBasisSpace, target: GradedBasisSpace, degree_shift: i64) -> Self {
        SparseMap { source, target, degree_shift, entries: BTreeMap::new() }
    }

    pub fn identity(space: &GradedBasisSpace) -> Self {
        let entries = (0..space.dim()).map(|i| ((i, i), Rational::one()));
        Self::new(space.clone(), space.clone(), 0, entries).expect("identity")
    }

    fn add_entry(&mut self, s: usize, t: usize, c: Rational) {
        let e = self.entries.entry((s, t)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&(s, t));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn entry(&self, s: usize, t: usize) -> Rational {
        self.entries.get(&(s, t)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Image of a source vector given by index coefficients.
    pub fn apply(&self, v: &LinComb<usize>) -> LinComb<usize> {
        let mut out = LinComb::zero();
        for ((s, t), c) in &self.entries {
            let a = v.coeff(s);
            if !a.is_zero() {
                out.add_term(*t, a * c);
            }
        }
        out
    }

    /// Rows of the matrix as sparse vectors over target indices, one per source element.
    pub fn columns_as_rows(&self) -> Vec<LinComb<usize>> {
        let mut rows = vec![LinComb::zero(); self.source.dim()];
        for ((s, t), c) in &self.entries {
            rows[*s].add_term(*t, c.clone());
        }
        rows
    }
}

/// `f ∘ g` where `g: A -> B`, `f: B -> C`.
pub fn compose(f: &SparseMap, g: &SparseMap) -> Result<SparseMap, LinearError> {
    if g.target != f.source {
        return Err(LinearError::IncompatibleSpaces(
            "target of g differs from source of f".into(),
        ));
    }
    let mut by_src: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
    for ((s, t), c) in &f.entries {
        by_src.entry(*s).or_default().push((*t, c));
    }
    let mut out = SparseMap::zero(g.source.clone(), f.target.clone(), f.degree_shift + g.degree_shift);
    for ((a, b), c) in &g.entries {
        if let Some(fs) = by_src.get(b) {
            for (t, d) in fs {
                out.add_entry(*a, *t, c * *d);
            }
        }
    }
    Ok(out)
}

pub fn rank(f: &SparseMap) -> usize {
    rank_of_rows(&f.columns_as_rows())
}

/// Tensor product of maps with the Koszul rule
/// `(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)`.
pub fn tensor_maps(f: &SparseMap, g: &SparseMap) -> SparseMap {
    let source = tensor(&f.source, &g.source);
    let target = tensor(&f.target, &g.target);
    let gs = g.source.dim();
    let gt = g.target.dim();
    let mut out = SparseMap::zero(source, target, f.degree_shift + g.degree_shift);
    for ((x, fx), a) in &f.entries {
        let odd = (g.degree_shift * f.source.degree(*x)).rem_euclid(2) == 1;
        for ((y, gy), b) in &g.entries {
            let c = a * b * sign_rational(odd);
            out.add_entry(x * gs + y, fx * gt + gy, c);
        }
    }
    out
}

/// Symmetry isomorphism `x⊗y -> (-1)^{|x||y|} y⊗x`.
pub fn braiding(a: &GradedBasisSpace, b: &GradedBasisSpace) -> SparseMap {
    let source = tensor(a, b);
    let target = tensor(b, a);
    let mut out = SparseMap::zero(source, target, 0);
    for x in 0..a.dim() {
        for y in 0..b.dim() {
            let odd = (a.degree(x) * b.degree(y)).rem_euclid(2) == 1;
            out.add_entry(x * b.dim() + y, y * a.dim() + x, sign_rational(odd));
        }
    }
    out
}

/// Complex with a degree +1 differential whose square is checked to vanish.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    space: GradedBasisSpace,
    d: SparseMap,
}

impl ChainComplex {
    pub fn new(d: SparseMap) -> Result<Self, LinearError> {
        if d.source != d.target {
            return Err(LinearError::IncompatibleSpaces("differential must be an endomorphism".into()));
        }
        if d.degree_shift != 1 {
            return Err(LinearError::InvalidMap("differential must have degree +1".into()));
        }
        let dd = compose(&d, &d)?;
        if !dd.is_zero() {
            return Err(LinearError::NotAComplex(dd.nnz()));
        }
        Ok(ChainComplex { space: d.source.clone(), d })
    }

    pub fn with_zero_differential(space: GradedBasisSpace) -> Self {
        let d = SparseMap::zero(space.clone(), space.clone(), 1);
        ChainComplex { space, d }
    }

    pub fn space(&self) -> &GradedBasisSpace {
        &self.space
    }

    pub fn d(&self) -> &SparseMap {
        &self.d
    }
}

/// `dim H^i = dim ker d_i - dim im d_{i-1}` in every degree that occurs.
pub fn homology_dims(c: &ChainComplex) -> BTreeMap<i64, usize> {
    let space = &c.space;
    let mut rank_from: BTreeMap<i64, usize> = BTreeMap::new();
    let rows = c.d.columns_as_rows();
    let mut by_deg: BTreeMap<i64, Vec<LinComb<usize>>> = BTreeMap::new();
    for (i, r) in rows.into_iter().enumerate() {
        by_deg.entry(space.degree(i)).or_default().push(r);
    }
    for (deg, rs) in &by_deg {
        rank_from.insert(*deg, rank_of_rows(rs));
    }
    space
        .dims_by_degree()
        .into_iter()
        .map(|(deg, dim)| {
            let out = rank_from.get(&deg).copied().unwrap_or(0);
            let inc = rank_from.get(&(deg - 1)).copied().unwrap_or(0);
            (deg, dim - out - inc)
        })
        .collect()
}

/// Same as [`homology_dims`], but first re-checks `d² = 0`.
pub fn checked_homology_dims(d: &SparseMap) -> Result<BTreeMap<i64, usize>, LinearError> {
    Ok(homology_dims(&ChainComplex::new(d.clone())?))
}

pub fn euler_characteristic(dims: &BTreeMap<i64, usize>) -> i64 {
    dims.iter()
        .map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) })
        .sum()
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    basis: Vec<BasisElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_basis: Option<Vec<BasisElement>>,
    #[serde(default)]
    degree_shift: i64,
    entries: Vec<(String, String, String)>,
}

impl SparseMap {
    /// `{"basis":[..],"entries":[[src,tgt,"p/q"],..]}`; `target_basis` is
    /// written only when it differs from `basis`.
    pub fn to_json(&self) -> serde_json::Value {
        let target_basis =
            (self.target != self.source).then(|| self.target.basis().to_vec());
        let entries = self
            .entries
            .iter()
            .map(|((s, t), c)| {
                (
                    self.source.element(*s).name.clone(),
                    self.target.element(*t).name.clone(),
                    format_rational(c),
                )
            })
            .collect();
        serde_json::to_value(MapJson {
            basis: self.source.basis().to_vec(),
            target_basis,
            degree_shift: self.degree_shift,
            entries,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LinearError> {
        let m: MapJson =
            serde_json::from_value(v.clone()).map_err(|e| LinearError::Parse(e.to_string()))?;
        let source = GradedBasisSpace::new(m.basis)?;
        let target = match m.target_basis {
            Some(b) => GradedBasisSpace::new(b)?,
            None => source.clone(),
        };
        let mut entries = Vec::new();
        for (s, t, c) in m.entries {
            let si = source
                .index_of(&s)
                .ok_or_else(|| LinearError::Parse(format!("unknown source `{s}`")))?;
            let ti = target
                .index_of(&t)
                .ok_or_else(|| LinearError::Parse(format!("unknown target `{t}`")))?;
            entries.push(((si, ti), parse_rational(&c)?));
        }
        SparseMap::new(source, target, m.degree_shift, entries)
    }
}

impl GradedBasisSpace {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "basis": self.basis, "entries": [] })
    }
}

impl ChainComplex {
    pub fn to_json(&self) -> serde_json::Value {
        self.d.to_json()
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, LinearError> {
        let mut d = SparseMap::from_json(v)?;
        if d.is_zero() {
            d.degree_shift = 1;
        }
        ChainComplex::new(d)
    }
}
