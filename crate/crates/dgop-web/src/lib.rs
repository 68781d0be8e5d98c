//! Browser bindings: three small exact computations, each returning JSON.

use dgop::conv::Conv;
use dgop::cooperad::build_cop1_counital;
use dgop::free::{FreeOperad, Symmetry, TableAlphabet};
use dgop::linear::format_rational;
use dgop::operad::Operad;
use dgop::trees::{prelie_compose, RootedTree};
use dgop::vanishing::{reduced_homology, vanishing_locus_dims, FinDimLieAlgebra, LieAlgebraFile};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

const MAX_POWER: usize = 3;

/// `t ∘_i s` in the pre-Lie operad; trees in the `1(2,3(4))` notation.
#[wasm_bindgen]
pub fn compose_trees(t: &str, i: usize, s: &str) -> Result<String, String> {
    let t: RootedTree = t.parse().map_err(|e| format!("{e}"))?;
    let s: RootedTree = s.parse().map_err(|e| format!("{e}"))?;
    let sum = prelie_compose(&t, i, &s).map_err(|e| format!("{e}"))?;
    let terms: Vec<_> = sum.iter().map(|(tree, c)| json!([format_rational(c), tree.to_string()])).collect();
    Ok(json!({ "sum": sum.to_string(), "terms": terms }).to_string())
}

/// The `k`-th power of `x` in Pol, on `Δ_{2k}`, with values in the free
/// operad on `μ` and `l`.
#[wasm_bindgen]
pub fn x_power(k: usize) -> Result<String, String> {
    if k == 0 || k > MAX_POWER {
        return Err(format!("k must be in 1..={MAX_POWER}"));
    }
    let n = 2 * k;
    let free = FreeOperad::new(TableAlphabet::binary(&[("μ", 0, Symmetry::Symmetric), ("l", 0, Symmetry::Antisymmetric)]));
    let co = build_cop1_counital(n);
    let conv = Conv::new(&co, &free, n);
    let x = conv.x_element(&free.corolla(&1)).map_err(|e| e.to_string())?;
    let mt = conv.mu_tilde(&free.corolla(&0)).map_err(|e| e.to_string())?;
    let v = conv.x_power(&mt, &x, k).map_err(|e| e.to_string())?.value(&conv.delta_n(n));
    let terms: Vec<_> = v.iter().map(|(m, c)| json!([format_rational(c), free.fmt_mono(m)])).collect();
    Ok(json!({ "at": format!("Δ{n}"), "terms": terms }).to_string())
}

/// Reduced CE homology and the vanishing-locus table. `spec` is a builtin
/// name (`sl2`, `aff1`, `aff1x2`, `abelianN`) or a JSON structure-constant file.
#[wasm_bindgen]
pub fn ce_homology(spec: &str, sym_cap: usize) -> Result<String, String> {
    let trimmed = spec.trim();
    let g = if trimmed.starts_with('{') {
        let file: LieAlgebraFile = serde_json::from_str(trimmed).map_err(|e| e.to_string())?;
        FinDimLieAlgebra::from_file(&file).map_err(|e| e.to_string())?
    } else {
        FinDimLieAlgebra::named(trimmed).ok_or_else(|| format!("unknown Lie algebra {trimmed:?}"))?
    };
    if g.dim() > 6 || sym_cap > 6 {
        return Err("demo limits: dimension and sym cap at most 6".into());
    }
    let table = vanishing_locus_dims(&g, sym_cap, (-4 * sym_cap as i64 - 8, 0));
    Ok(json!({ "homology": reduced_homology(&g), "table": table }).to_string())
}
