//! The input document.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "objects": [
//!     { "name": "A", "kind": "matrix", "dim": 2,
//!       "entries": [[1, 0], [0, 0], [0, 0], [0, 0]] },
//!     { "name": "phi", "kind": "vector", "dim": 2,
//!       "entries": [[1, 0], [0, 0]] }
//!   ]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major with
//! `dim * dim` entries, vectors have `dim` entries. Unknown fields are
//! rejected, names must be unique and every number must be finite.

use std::path::Path;

use bks::{SquareMatrix, C64, MAX_DIM};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema_version: u32,
    pub objects: Vec<Object>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectKind {
    Matrix,
    Vector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Object {
    pub name: String,
    pub kind: ObjectKind,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

impl Object {
    pub fn matrix(name: impl Into<String>, m: &SquareMatrix) -> Self {
        Self {
            name: name.into(),
            kind: ObjectKind::Matrix,
            dim: m.dim(),
            entries: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn vector(name: impl Into<String>, v: &[C64]) -> Self {
        Self {
            name: name.into(),
            kind: ObjectKind::Vector,
            dim: v.len(),
            entries: v.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    fn complex(&self) -> Vec<C64> {
        self.entries.iter().map(|&[re, im]| C64::new(re, im)).collect()
    }
}

impl InputDocument {
    pub fn new(objects: Vec<Object>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            objects,
        }
    }

    /// Parses and validates.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Document(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        for (k, obj) in self.objects.iter().enumerate() {
            let bad = |msg: String| Err(CliError::Document(format!("object `{}`: {msg}", obj.name)));
            if obj.name.is_empty() {
                return Err(CliError::Document(format!("object {k} has an empty name")));
            }
            if self.objects[..k].iter().any(|o| o.name == obj.name) {
                return bad("duplicate name".into());
            }
            if obj.dim == 0 || obj.dim > MAX_DIM {
                return bad(format!("dim {} outside 1..={MAX_DIM}", obj.dim));
            }
            let expected = match obj.kind {
                ObjectKind::Matrix => obj.dim * obj.dim,
                ObjectKind::Vector => obj.dim,
            };
            if obj.entries.len() != expected {
                return bad(format!("expected {expected} entries, found {}", obj.entries.len()));
            }
            if let Some(i) = obj.entries.iter().position(|e| !e[0].is_finite() || !e[1].is_finite()) {
                return bad(format!("entry {i} is not finite"));
            }
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.iter().find(|o| o.name == name)
    }

    fn require(&self, name: &str, kind: ObjectKind) -> Result<&Object> {
        let obj = self
            .get(name)
            .ok_or_else(|| CliError::Document(format!("missing object `{name}`")))?;
        if obj.kind != kind {
            return Err(CliError::Document(
                format!("object `{name}` must be a {kind:?}").to_lowercase(),
            ));
        }
        Ok(obj)
    }

    pub fn matrix(&self, name: &str) -> Result<SquareMatrix> {
        let obj = self.require(name, ObjectKind::Matrix)?;
        SquareMatrix::new(obj.dim, obj.complex()).map_err(|source| CliError::Object {
            name: name.into(),
            source,
        })
    }

    pub fn vector(&self, name: &str) -> Result<Vec<C64>> {
        Ok(self.require(name, ObjectKind::Vector)?.complex())
    }
}
