//! The algebra file format.
//!
//! ```json
//! {
//!   "name": "kodaira",
//!   "dim": 4,
//!   "brackets": [{ "i": 1, "j": 2, "out": { "3": "1" } }],
//!   "J": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
//!   "frame": "half"
//! }
//! ```
//!
//! Indices are 1-based; `[e_i, e_j] = Σ_k out[k] e_k` with `i < j`. `J e_j = Σ_i J[i][j] e_i`.
//! Rationals are strings `"p"` or `"p/q"`. `name` and `frame` (`"echelon"` or `"half"`) are
//! optional.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lie::{AlgebraPresentation, BracketRelation, FrameConvention};
use crate::linalg::Rational;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
    #[serde(rename = "J")]
    j: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    frame: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketEntry {
    i: usize,
    j: usize,
    out: BTreeMap<String, String>,
}

fn rational(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| Error::File(format!("`{s}` is not a rational number")))
}

/// Parses the JSON text of an algebra file. Structural checks are left to `validate`.
pub fn algebra_from_json(text: &str) -> Result<AlgebraPresentation> {
    let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::File(e.to_string()))?;
    let mut brackets = Vec::new();
    for b in &file.brackets {
        if b.i == 0 || b.j == 0 || b.i > file.dim || b.j > file.dim {
            return Err(Error::File(format!("bracket ({}, {}) is out of range 1..={}", b.i, b.j, file.dim)));
        }
        let mut out = BTreeMap::new();
        for (k, v) in &b.out {
            let k: usize = k.parse().map_err(|_| Error::File(format!("`{k}` is not an index")))?;
            if k == 0 || k > file.dim {
                return Err(Error::File(format!("output index {k} is out of range 1..={}", file.dim)));
            }
            let c = rational(v)?;
            if !c.is_zero() {
                out.insert(k - 1, c);
            }
        }
        brackets.push(BracketRelation { i: b.i - 1, j: b.j - 1, out });
    }
    let j = file
        .j
        .iter()
        .map(|row| row.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let frame = match file.frame.as_deref() {
        None | Some("echelon") => FrameConvention::Echelon,
        Some("half") => FrameConvention::HalfEchelon,
        Some(other) => return Err(Error::File(format!("unknown frame convention `{other}`"))),
    };
    Ok(AlgebraPresentation { name: file.name, dim: file.dim, brackets, j, frame })
}

pub fn algebra_to_json(p: &AlgebraPresentation) -> String {
    let file = AlgebraFile {
        name: p.name.clone(),
        dim: p.dim,
        brackets: p
            .brackets
            .iter()
            .map(|b| BracketEntry {
                i: b.i + 1,
                j: b.j + 1,
                out: b.out.iter().map(|(k, c)| ((k + 1).to_string(), c.to_string())).collect(),
            })
            .collect(),
        j: p.j.iter().map(|row| row.iter().map(Rational::to_string).collect()).collect(),
        frame: match p.frame {
            FrameConvention::Echelon => None,
            FrameConvention::HalfEchelon => Some("half".to_string()),
        },
    };
    serde_json::to_string_pretty(&file).expect("algebra files always serialize")
}

pub fn read_algebra(path: impl AsRef<Path>) -> Result<AlgebraPresentation> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::File(format!("{}: {e}", path.display())))?;
    algebra_from_json(&text)
}

pub fn write_algebra(path: impl AsRef<Path>, p: &AlgebraPresentation) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, algebra_to_json(p) + "\n").map_err(|e| Error::File(format!("{}: {e}", path.display())))
}

/// Serializes any `Display` value as its string form.
pub fn serialize_display<T: std::fmt::Display, S: Serializer>(value: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}
