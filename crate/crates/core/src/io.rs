//! On-disk coloring documents and Graphviz export.
//!
//! A document stores the row-major upper triangle of the color matrix with
//! 0-based vertices: pair `(u, v)`, `u < v`, sits at index
//! `u*n - u*(u+1)/2 + (v-u-1)`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coloring::{pair_count, Color, ColoringError, EdgeColoring};
use crate::constructions::ConstructionRecipe;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("expected C({n}, 2) = {expected} colors, found {found}")]
    LengthMismatch { n: usize, expected: usize, found: usize },
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("stored hash {stored} does not match content hash {computed}")]
    HashMismatch { stored: String, computed: String },
    #[error("palette has {palette} entries but the coloring uses {k} colors")]
    PaletteTooSmall { k: usize, palette: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<ConstructionRecipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// Page count the coloring is claimed to avoid.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub book_free_pages: Option<usize>,
    /// SHA-256 of the canonical serialization, see [`content_hash`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hash: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub format_version: u32,
    pub n: usize,
    pub k: usize,
    pub colors: Vec<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// SHA-256 over `gallai-coloring-v1;n=<n>;k=<k>;colors=<c,c,...>`.
pub fn content_hash(n: usize, k: usize, colors: &[Color]) -> String {
    let mut canon = format!("gallai-coloring-v1;n={n};k={k};colors=");
    for (i, c) in colors.iter().enumerate() {
        if i > 0 {
            canon.push(',');
        }
        write!(canon, "{c}").unwrap();
    }
    hex::encode(Sha256::digest(canon.as_bytes()))
}

impl ColoringDocument {
    pub fn from_coloring(g: &EdgeColoring, metadata: Option<Metadata>) -> Self {
        let colors = g.upper_triangle().to_vec();
        let metadata = metadata.map(|mut md| {
            md.hash = Some(content_hash(g.n(), g.k(), &colors));
            md
        });
        Self { format_version: FORMAT_VERSION, n: g.n(), k: g.k(), colors, metadata }
    }

    pub fn to_coloring(&self) -> Result<EdgeColoring, IoError> {
        if self.format_version != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(self.format_version));
        }
        let expected = pair_count(self.n);
        if self.colors.len() != expected {
            return Err(IoError::LengthMismatch { n: self.n, expected, found: self.colors.len() });
        }
        if let Some(stored) = self.metadata.as_ref().and_then(|m| m.hash.as_ref()) {
            let computed = content_hash(self.n, self.k, &self.colors);
            if *stored != computed {
                return Err(IoError::HashMismatch { stored: stored.clone(), computed });
            }
        }
        Ok(EdgeColoring::from_upper_triangle(self.n, self.k, self.colors.clone())?)
    }

    pub fn parse(text: &str, origin: &Path) -> Result<Self, IoError> {
        serde_json::from_str(text).map_err(|e| IoError::Parse {
            path: origin.to_path_buf(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents always serialize");
        s.push('\n');
        s
    }
}

pub fn load_document(path: &Path) -> Result<ColoringDocument, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Io { path: path.into(), source })?;
    ColoringDocument::parse(&text, path)
}

pub fn load_coloring(path: &Path) -> Result<EdgeColoring, IoError> {
    load_document(path)?.to_coloring()
}

pub fn save_coloring(g: &EdgeColoring, metadata: Option<Metadata>, path: &Path) -> Result<(), IoError> {
    let doc = ColoringDocument::from_coloring(g, metadata);
    fs::write(path, doc.to_json()).map_err(|source| IoError::Io { path: path.into(), source })
}

pub const DEFAULT_PALETTE: [&str; 8] =
    ["red", "blue", "forestgreen", "orange", "purple", "brown", "deeppink", "gray40"];

/// Graphviz `graph` text with one styled edge per pair, in pair order.
pub fn export_dot(g: &EdgeColoring, palette: &[&str]) -> Result<String, IoError> {
    if palette.len() < g.k() {
        return Err(IoError::PaletteTooSmall { k: g.k(), palette: palette.len() });
    }
    let mut out = String::from("graph coloring {\n  node [shape=circle];\n");
    for v in 0..g.n() {
        writeln!(out, "  {v};").unwrap();
    }
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let c = g.color(u, v);
            let style = palette[usize::from(c) - 1];
            writeln!(out, "  {u} -- {v} [color=\"{style}\", label=\"{c}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> EdgeColoring {
        EdgeColoring::from_fn(5, 2, |u, v| if matches!(v - u, 1 | 4) { 1 } else { 2 }).unwrap()
    }

    #[test]
    fn save_and_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c5.json");
        let md = Metadata { provenance: Some("pentagon".into()), book_free_pages: Some(1), ..Default::default() };
        save_coloring(&c5(), Some(md), &path).unwrap();
        let doc = load_document(&path).unwrap();
        assert!(doc.metadata.as_ref().unwrap().hash.is_some());
        assert_eq!(doc.to_coloring().unwrap(), c5());
    }

    #[test]
    fn short_document_is_rejected() {
        let doc = ColoringDocument { format_version: 1, n: 5, k: 2, colors: vec![1; 9], metadata: None };
        assert!(matches!(doc.to_coloring(), Err(IoError::LengthMismatch { expected: 10, found: 9, .. })));
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = ColoringDocument::parse("{\n  \"format_version\": 1,\n  \"n\": \"five\"\n}", Path::new("x.json"))
            .unwrap_err();
        match err {
            IoError::Parse { line, message, .. } => {
                assert_eq!(line, 3);
                assert!(message.contains("invalid type"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = ColoringDocument::parse("{\"format_version\":1,\"n\":2,\"k\":1}", Path::new("x.json")).unwrap_err();
        assert!(err.to_string().contains("missing field `colors`"), "{err}");
    }

    #[test]
    fn hash_mismatch_is_rejected() {
        let mut doc = ColoringDocument::from_coloring(&c5(), Some(Metadata::default()));
        doc.colors[0] = 2;
        assert!(matches!(doc.to_coloring(), Err(IoError::HashMismatch { .. })));
    }

    #[test]
    fn dot_output() {
        let rainbow = EdgeColoring::make(3, 3, [((0, 1), 1), ((0, 2), 2), ((1, 2), 3)]).unwrap();
        let dot = export_dot(&rainbow, &DEFAULT_PALETTE).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 3);
        for style in ["red", "blue", "forestgreen"] {
            assert_eq!(dot.matches(&format!("color=\"{style}\"")).count(), 1);
        }
        let dot = export_dot(&c5(), &DEFAULT_PALETTE).unwrap();
        assert_eq!(dot.matches("color=\"red\"").count(), 5);
        assert_eq!(dot.matches("color=\"blue\"").count(), 5);
        let mono = EdgeColoring::from_fn(2, 1, |_, _| 1).unwrap();
        assert!(matches!(export_dot(&mono, &[]), Err(IoError::PaletteTooSmall { k: 1, palette: 0 })));
    }
}
