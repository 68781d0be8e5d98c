use std::path::Path;

use dgop::poisson::{PoissonFile, PoissonPolyAlgebra};
use dgop::vanishing::{FinDimLieAlgebra, LieAlgebraFile};
use serde::de::DeserializeOwned;

/// Reads a TOML or JSON file, chosen by extension (JSON otherwise).
fn read<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display())),
        _ => serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display())),
    }
}

pub fn poisson_algebra(name: Option<&str>, input: Option<&Path>, cap: Option<usize>) -> Result<PoissonPolyAlgebra, String> {
    match (name, input) {
        (_, Some(path)) => {
            let mut file: PoissonFile = read(path)?;
            if let Some(c) = cap {
                file.degree_cap = c;
            }
            PoissonPolyAlgebra::from_file(&file).map_err(|e| e.to_string())
        }
        (Some(n), None) => PoissonPolyAlgebra::named(n, cap.unwrap_or(6))
            .ok_or_else(|| format!("unknown Poisson algebra {n:?} (symplectic, symplectic4, sl2star, aff1x2star)")),
        (None, None) => Err("give --algebra or --input".into()),
    }
}

pub fn lie_algebra(name: Option<&str>, input: Option<&Path>) -> Result<FinDimLieAlgebra, String> {
    match (name, input) {
        (_, Some(path)) => {
            let file: LieAlgebraFile = read(path)?;
            FinDimLieAlgebra::from_file(&file).map_err(|e| e.to_string())
        }
        (Some(n), None) => {
            FinDimLieAlgebra::named(n).ok_or_else(|| format!("unknown Lie algebra {n:?} (sl2, aff1, aff1x2, abelianN)"))
        }
        (None, None) => Err("give --algebra or --input".into()),
    }
}
