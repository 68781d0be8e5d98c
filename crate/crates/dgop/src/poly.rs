//! Multivariate polynomials over ℚ as sparse exponent-vector combinations.

use std::fmt;

use thiserror::Error;

use crate::linear::{format_rational, parse_rational, LinComb, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("cannot parse polynomial {0:?}: {1}")]
    Parse(String, String),
    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
}

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    pub nvars: usize,
    pub terms: LinComb<Monomial>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: LinComb::zero() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly { nvars, terms: LinComb::term(vec![0; nvars], c) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly { nvars, terms: LinComb::basis(e) }
    }

    pub fn monomial(exps: Monomial) -> Self {
        Poly { nvars: exps.len(), terms: LinComb::basis(exps) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum::<u32>() as usize).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() as usize == d)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut t = self.terms.clone();
        t.add(&other.terms);
        Poly { nvars: self.nvars, terms: t }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut t = self.terms.clone();
        t.sub(&other.terms);
        Poly { nvars: self.nvars, terms: t }
    }

    pub fn scaled(&self, c: &Rational) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = LinComb::zero();
        for (a, x) in self.terms.iter() {
            for (b, y) in other.terms.iter() {
                let e: Monomial = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = LinComb::zero();
        for (e, c) in self.terms.iter() {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    /// All monomials of total degree `<= d`, sorted.
    pub fn monomials_up_to(nvars: usize, d: usize) -> Vec<Monomial> {
        fn go(cur: &mut Monomial, pos: usize, left: u32, out: &mut Vec<Monomial>) {
            if pos == cur.len() {
                out.push(cur.clone());
                return;
            }
            for k in 0..=left {
                cur[pos] = k;
                go(cur, pos + 1, left - k, out);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        go(&mut vec![0; nvars], 0, d as u32, &mut out);
        out.sort();
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        let terms: Vec<_> = self.terms.iter().collect();
        for (e, c) in terms.into_iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{k}", names[i]) })
                .collect();
            let coef = format_rational(c);
            let s = match (mono.is_empty(), coef.as_str()) {
                (true, _) => coef,
                (false, "1") => mono.join("*"),
                (false, "-1") => format!("-{}", mono.join("*")),
                _ => format!("{coef}*{}", mono.join("*")),
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }

    /// Parses sums of terms like `2*x^2*y - 1/3*z + 1`.
    pub fn parse(s: &str, names: &[String]) -> Result<Poly, PolyError> {
        let n = names.len();
        let err = |m: &str| PolyError::Parse(s.to_string(), m.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut out = Poly::zero(n);
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (k, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coef = Rational::from_integer(if neg { (-1).into() } else { 1.into() });
            let mut e = vec![0u32; n];
            for f in body.split('*') {
                let (base, pow) = match f.split_once('^') {
                    Some((b, p)) => (b, p.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (f, 1),
                };
                if let Some(i) = names.iter().position(|v| v == base) {
                    e[i] += pow;
                } else {
                    let c = parse_rational(base).map_err(|_| err(&format!("unknown factor {base:?}")))?;
                    for _ in 0..pow {
                        coef *= c.clone();
                    }
                }
            }
            out.terms.add_term(e, coef);
        }
        Ok(out)
    }
}

fn total_degree(m: &[u32]) -> usize {
    m.iter().sum::<u32>() as usize
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// Degree-truncated span of an ideal: `{x^α g : deg ≤ cap}` reduced to
/// echelon form. Exact for ideals generated by homogeneous polynomials.
pub struct TruncatedIdeal {
    pub cap: usize,
    nvars: usize,
    echelon: crate::linear::Echelon<Monomial>,
}

impl TruncatedIdeal {
    pub fn new(nvars: usize, gens: &[Poly], cap: usize) -> Result<Self, PolyError> {
        let mut echelon = crate::linear::Echelon::new();
        let monos = Poly::monomials_up_to(nvars, cap);
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.degree();
            if dg > cap {
                return Err(PolyError::DegreeCap { degree: dg, cap });
            }
            for m in monos.iter().filter(|m| total_degree(m) + dg <= cap) {
                echelon.insert(&Poly::monomial(m.clone()).mul(g).terms);
            }
        }
        Ok(TruncatedIdeal { cap, nvars, echelon })
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, PolyError> {
        if f.degree() > self.cap {
            return Err(PolyError::DegreeCap { degree: f.degree(), cap: self.cap });
        }
        Ok(self.echelon.contains(&f.terms))
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Whether the ideal contains a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.echelon.contains(&LinComb::basis(vec![0; self.nvars]))
    }
}
