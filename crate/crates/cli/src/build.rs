//! Turning textual input (polynomials, tower files) into fields.

use galois_kit::{
    adjoin_root, splitting_field, BaseField, Error, Result, TowerField, TowerSpec,
};
use serde::{Deserialize, Serialize};

use crate::parse::parse_over;

/// How the extension `L` is obtained from the input polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// `K[x]/(f)` for a single irreducible `f`.
    Stem,
    /// Successive adjunctions; polynomial `i` may use earlier generators.
    Tower,
    /// The splitting field of a single polynomial.
    Splitting,
}

pub const DEFAULT_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Builds `L` and the generators handed to the Galois report.
pub fn build_field<B: BaseField>(
    base: &B,
    construction: Construction,
    polynomials: &[String],
    names: &[String],
    seed: u64,
) -> Result<TowerField<B>> {
    let k = TowerField::base_field(base.clone());
    match construction {
        Construction::Stem | Construction::Splitting if polynomials.len() != 1 => Err(Error::domain(format!(
            "{construction:?} construction takes exactly one polynomial, got {}",
            polynomials.len()
        ))),
        Construction::Stem => {
            let f = parse_over(&polynomials[0], &k)?;
            adjoin_root(&k, &f, names.first().map_or("a", String::as_str))
        }
        Construction::Splitting => {
            let f = parse_over(&polynomials[0], &k)?;
            Ok(splitting_field(&f, seed)?.field)
        }
        Construction::Tower => {
            if polynomials.is_empty() {
                return Err(Error::domain("tower construction needs at least one polynomial"));
            }
            let mut l = k;
            for (i, text) in polynomials.iter().enumerate() {
                let name = match names.get(i) {
                    Some(n) => n.as_str(),
                    None => DEFAULT_NAMES
                        .get(i)
                        .copied()
                        .ok_or_else(|| Error::domain("too many levels without explicit names"))?,
                };
                let f = parse_over(text, &l)?;
                l = adjoin_root(&l, &f, name)?;
            }
            Ok(l)
        }
    }
}

pub fn read_tower_spec(path: &std::path::Path) -> std::result::Result<TowerSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed tower file {}: {e}", path.display()))
}
