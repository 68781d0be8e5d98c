//! Reference values replayed by `dgop golden` against the frozen fixture.

use serde::Serialize;
use serde_json::{json, Value};

use crate::conv::{Conv, ConvError};
use crate::cooperad::build_cop1_counital;
use crate::degeneracy::{h0_quotient_dims, power_scalar};
use crate::free::{FreeOperad, Symmetry, TableAlphabet};
use crate::ideal::{comm_lie_dim, Presentation};
use crate::linear::format_rational;
use crate::model::PoissonModel;
use crate::operad::format_element;
use crate::poisson::PoissonPolyAlgebra;
use crate::trees::{prelie_compose, RootedTree};
use crate::vanishing::{reduced_homology, FinDimLieAlgebra};

pub const SCHEMA_VERSION: u32 = 1;

/// The fixture shipped with the crate.
pub const FIXTURE: &str = include_str!("../fixtures/golden.json");

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct GoldenLine {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn tree(s: &str) -> RootedTree {
    s.parse().expect("fixed tree")
}

fn prelie() -> Value {
    let e = tree("1(2)");
    let a = prelie_compose(&e, 1, &e).expect("arity fits");
    let b = prelie_compose(&e, 2, &e).expect("arity fits");
    json!({ "1(2) o1 1(2)": a.to_string(), "1(2) o2 1(2)": b.to_string() })
}

fn model() -> Result<Value, ConvError> {
    let m = PoissonModel::new(4)?;
    let mut out = serde_json::Map::new();
    for blocks in [vec![vec![1], vec![2]], vec![vec![1], vec![2], vec![3]], vec![vec![1, 2], vec![3]]] {
        let p = m.p(&blocks).expect("generator exists below max arity");
        let key: Vec<String> = blocks.iter().map(|b| b.iter().map(|k| k.to_string()).collect()).collect();
        out.insert(format!("d p({})", key.join(",")), Value::String(format_element(&m.free, &m.d(&p))));
    }
    Ok(Value::Object(out))
}

fn pol_square() -> Result<Value, ConvError> {
    let free = FreeOperad::new(TableAlphabet::binary(&[("μ", 0, Symmetry::Symmetric), ("l", 0, Symmetry::Antisymmetric)]));
    let (mu, l) = (free.corolla(&0), free.corolla(&1));
    let co = build_cop1_counital(4);
    let conv = Conv::new(&co, &free, 4);
    let x = conv.x_element(&l)?;
    let mt = conv.mu_tilde(&mu)?;
    let xx = conv.star(&x, &x);
    let x2 = conv.x_power(&mt, &x, 2)?;
    let r = conv.star(&mt, &xx);
    Ok(json!({
        "(x*x)(D3)": format_element(&free, &xx.value(&conv.delta_n(3))),
        "x^2(D4)": format_element(&free, &x2.value(&conv.delta_n(4))),
        "(mu~*(x*x))(D4)": format_element(&free, &r.value(&conv.delta_n(4))),
    }))
}

fn degeneracy() -> Result<Value, ConvError> {
    let scalar = power_scalar(1)?.map(|s| format_rational(&s));
    let q0 = h0_quotient_dims(0, 5);
    let q1 = h0_quotient_dims(1, 5);
    Ok(json!({
        "scalar m=1": scalar,
        "h0 m=0": q0.quotient,
        "h0 m=1": q1.quotient,
        "r": q1.ideal[3],
    }))
}

fn dims() -> Value {
    json!({
        "Lie": Presentation::lie().quotient_dims(5),
        "P1": Presentation::p1().quotient_dims(5),
        "Comm∘Lie": (1..=5).map(comm_lie_dim).collect::<Vec<_>>(),
    })
}

fn geometry() -> Value {
    let ce = |name: &str| {
        let g = FinDimLieAlgebra::named(name).expect("builtin");
        reduced_homology(&g).into_values().collect::<Vec<_>>()
    };
    let sl2 = PoissonPolyAlgebra::named("sl2star", 4).expect("builtin");
    json!({
        "CE abelian2": ce("abelian2"),
        "CE nonabelian2": ce("nonabelian2"),
        "CE sl2": ce("sl2"),
        "sl2star m=0": sl2.degeneracy_ideal(0).formatted(),
    })
}

/// Recomputes every reference value.
pub fn compute() -> Result<Value, ConvError> {
    Ok(json!({
        "_about": {
            "prelie": "rooted-tree insertions of the two-vertex tree into itself",
            "model": "boundaries of the arity 2 and 3 generators of the quasi-free model",
            "pol_square": "values of x⋆x, x² and μ̃⋆(x⋆x) on the free operad on μ, l",
            "degeneracy": "scalar s with generator = s·x²(Δ₄); H⁰ quotient dims for arities 1..5; r = rank of the ideal in arity 4",
            "dims": "relation-rank saturation of the quadratic presentations",
            "geometry": "reduced CE homology in homological degrees 1..d; Pfaffian ideal generators",
        },
        "schema_version": SCHEMA_VERSION,
        "prelie": prelie(),
        "model": model()?,
        "pol_square": pol_square()?,
        "degeneracy": degeneracy()?,
        "dims": dims(),
        "geometry": geometry(),
    }))
}

/// One line per leaf entry of `expected`.
pub fn compare(expected: &Value, actual: &Value) -> Vec<GoldenLine> {
    let mut out = Vec::new();
    let Some(sections) = expected.as_object() else {
        return vec![GoldenLine { name: "fixture".into(), pass: false, detail: "not a JSON object".into() }];
    };
    for (section, entries) in sections.iter().filter(|(k, _)| !k.starts_with('_')) {
        let Some(entries) = entries.as_object() else {
            let pass = actual.get(section) == Some(entries);
            out.push(GoldenLine { name: section.clone(), pass, detail: entries.to_string() });
            continue;
        };
        for (key, want) in entries {
            let got = actual.get(section).and_then(|s| s.get(key));
            let pass = got == Some(want);
            let detail = if pass { want.to_string() } else { format!("expected {want}, got {}", got.cloned().unwrap_or(Value::Null)) };
            out.push(GoldenLine { name: format!("{section}/{key}"), pass, detail });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_replays() {
        let expected: Value = serde_json::from_str(FIXTURE).unwrap();
        let lines = compare(&expected, &compute().unwrap());
        assert!(lines.len() > 15);
        let bad: Vec<_> = lines.iter().filter(|l| !l.pass).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn mismatch_is_reported() {
        let expected = json!({ "dims": { "Lie": [1, 1, 2] } });
        let actual = json!({ "dims": { "Lie": [1, 1, 3] } });
        let lines = compare(&expected, &actual);
        assert_eq!(lines.len(), 1);
        assert!(!lines[0].pass);
    }
}
