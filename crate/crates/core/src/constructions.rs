//! Lower-bound witness colorings: a book-free 2-colored base, then repeated
//! five-fold blow-ups along the pentagon pattern, then an optional doubling.
//!
//! Copies are laid out in contiguous vertex ranges, so copy `p` of an
//! `n`-vertex coloring occupies `p*n .. (p+1)*n`.

use std::ops::Range;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{self, BoundsError};
use crate::coloring::{find_mono_book, find_rainbow_triangle, Color, ColoringError, EdgeColoring, MAX_VERTICES};
use crate::gallai::{GallaiError, GallaiPartition};
use crate::io::{ColoringDocument, IoError};
use crate::residue;

/// Environment variable naming a directory that overrides shipped fixtures.
pub const FIXTURE_DIR_ENV: &str = "GALLAI_BOOKS_FIXTURES";

const K20_FIXTURE_NAME: &str = "k20_b5.json";
const K20_FIXTURE: &str = include_str!("../fixtures/k20_b5.json");

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("no base coloring for m = {0}; supported page counts are 1..=5")]
    UnsupportedM(usize),
    #[error("fixture {name} failed verification: {reason}")]
    FixtureInvalid { name: String, reason: String },
    #[error("witness would have {n} vertices, above the cap of {cap}")]
    SizeCapExceeded { n: u64, cap: usize },
    #[error("new color {given} must be {expected}")]
    BadNewColor { given: Color, expected: usize },
    #[error("constructed coloring failed verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Gallai(#[from] GallaiError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BaseSource {
    /// Red 5-cycle, blue complementary 5-cycle.
    Pentagon,
    /// Quadratic-residue coloring over GF(q).
    Residue { q: usize },
    /// Shipped data file, re-verified on load.
    Fixture { name: String },
}

/// A 2-colored complete graph with no monochromatic `B_m`.
#[derive(Debug, Clone)]
pub struct BaseColoring {
    pub name: String,
    pub m: usize,
    pub source: BaseSource,
    pub coloring: EdgeColoring,
}

pub fn pentagon() -> EdgeColoring {
    EdgeColoring::from_fn(5, 2, |u, v| if matches!((v - u) % 5, 1 | 4) { 1 } else { 2 })
        .expect("pentagon is a valid coloring")
}

/// Base coloring on `R(B_m, B_m) - 1` vertices, verified book-free before return.
pub fn base_two_coloring(m: usize) -> Result<BaseColoring, ConstructionError> {
    let (name, source, coloring) = match m {
        1 => ("pentagon".to_string(), BaseSource::Pentagon, pentagon()),
        2..=4 => {
            let q = 4 * m + 1;
            (format!("residue-{q}"), BaseSource::Residue { q }, residue::residue_coloring(q)?)
        }
        5 => {
            let coloring = load_k20_fixture()?;
            ("k20-b5".to_string(), BaseSource::Fixture { name: K20_FIXTURE_NAME.into() }, coloring)
        }
        _ => return Err(ConstructionError::UnsupportedM(m)),
    };
    let expected = bounds::ramsey(m)? as usize - 1;
    let bad = |reason: String| ConstructionError::FixtureInvalid { name: name.clone(), reason };
    if coloring.n() != expected || coloring.k() != 2 {
        return Err(bad(format!("expected a 2-colored K_{expected}, got n={} k={}", coloring.n(), coloring.k())));
    }
    if let Some(w) = find_mono_book(&coloring, m) {
        return Err(bad(format!("contains {w}")));
    }
    Ok(BaseColoring { name, m, source, coloring })
}

fn load_k20_fixture() -> Result<EdgeColoring, ConstructionError> {
    let (text, origin) = match std::env::var_os(FIXTURE_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(K20_FIXTURE_NAME);
            let text = std::fs::read_to_string(&path).map_err(|source| IoError::Io { path: path.clone(), source })?;
            (text, path)
        }
        None => (K20_FIXTURE.to_string(), PathBuf::from(K20_FIXTURE_NAME)),
    };
    let doc = ColoringDocument::parse(&text, &origin)?;
    doc.to_coloring()
        .map_err(|e| ConstructionError::FixtureInvalid { name: K20_FIXTURE_NAME.into(), reason: e.to_string() })
}

fn expect_color(given: Color, expected: usize) -> Result<(), ConstructionError> {
    if usize::from(given) != expected {
        return Err(ConstructionError::BadNewColor { given, expected });
    }
    Ok(())
}

fn check_size(n: usize) -> Result<(), ConstructionError> {
    if n > MAX_VERTICES {
        return Err(ConstructionError::SizeCapExceeded { n: n as u64, cap: MAX_VERTICES });
    }
    Ok(())
}

/// Two copies of `g` joined completely in `new_color = k + 1`.
pub fn double(g: &EdgeColoring, new_color: Color) -> Result<EdgeColoring, ConstructionError> {
    expect_color(new_color, g.k() + 1)?;
    let n = g.n();
    check_size(2 * n)?;
    Ok(EdgeColoring::from_fn(2 * n, g.k() + 1, |u, v| if u / n == v / n { g.color(u % n, v % n) } else { new_color })?)
}

/// Pentagon color between copies `p < q`: the first new color on the 5-cycle
/// `q - p ≡ ±1 (mod 5)`, the second on the complementary 5-cycle.
pub fn pentagon_color(p: usize, q: usize, colors: (Color, Color)) -> Color {
    if matches!((q + 5 - p) % 5, 1 | 4) {
        colors.0
    } else {
        colors.1
    }
}

/// Five copies of `g` joined along the pentagon pattern in colors `k+1, k+2`.
pub fn blow_up_k5(g: &EdgeColoring, new_colors: (Color, Color)) -> Result<EdgeColoring, ConstructionError> {
    expect_color(new_colors.0, g.k() + 1)?;
    expect_color(new_colors.1, g.k() + 2)?;
    let n = g.n();
    check_size(5 * n)?;
    Ok(EdgeColoring::from_fn(5 * n, g.k() + 2, |u, v| {
        let (p, q) = (u / n, v / n);
        if p == q {
            g.color(u % n, v % n)
        } else {
            pentagon_color(p, q, new_colors)
        }
    })?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum Step {
    Base { source: BaseSource },
    Double { new_color: Color },
    BlowUpK5 { new_colors: (Color, Color) },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    pub m: usize,
    pub k: usize,
    pub steps: Vec<Step>,
    pub expected_n: u64,
}

impl ConstructionRecipe {
    /// Canonical plan: base, then `(k-2)/2` blow-ups, then a doubling iff `k` is odd.
    pub fn plan(k: usize, m: usize) -> Result<Self, ConstructionError> {
        if k < 2 {
            return Err(BoundsError::OutOfRange(format!("witnesses need k >= 2, got {k}")).into());
        }
        if !(1..=5).contains(&m) {
            return Err(ConstructionError::UnsupportedM(m));
        }
        let expected_n = bounds::witness_order(k, m)?;
        let source = match m {
            1 => BaseSource::Pentagon,
            5 => BaseSource::Fixture { name: K20_FIXTURE_NAME.into() },
            _ => BaseSource::Residue { q: 4 * m + 1 },
        };
        let mut steps = vec![Step::Base { source }];
        let mut used = 2usize;
        while used + 2 <= k {
            steps.push(Step::BlowUpK5 { new_colors: (used as Color + 1, used as Color + 2) });
            used += 2;
        }
        if used < k {
            steps.push(Step::Double { new_color: used as Color + 1 });
        }
        Ok(Self { m, k, steps, expected_n })
    }

    /// Colors consumed by the steps.
    pub fn color_budget(&self) -> usize {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Base { .. } => 2,
                Step::Double { .. } => 1,
                Step::BlowUpK5 { .. } => 2,
            })
            .sum()
    }

    /// Vertex ranges of the copies made by the last step; empty for a bare base.
    pub fn top_level_blocks(&self) -> Vec<Range<usize>> {
        let n = self.expected_n as usize;
        let copies = match self.steps.last() {
            Some(Step::Double { .. }) => 2,
            Some(Step::BlowUpK5 { .. }) => 5,
            _ => return Vec::new(),
        };
        let size = n / copies;
        (0..copies).map(|p| p * size..(p + 1) * size).collect()
    }

    /// The partition into top-level copies, when the recipe has any.
    pub fn top_level_partition(&self, g: &EdgeColoring) -> Result<Option<GallaiPartition>, ConstructionError> {
        let blocks = self.top_level_blocks();
        if blocks.is_empty() {
            return Ok(None);
        }
        let parts = blocks.into_iter().map(|r| r.collect()).collect();
        Ok(Some(GallaiPartition::from_parts(g, parts)?))
    }
}

/// Builds the witness for `(k, m)` and re-verifies that it has no rainbow
/// triangle and no monochromatic `B_m`.
pub fn build_witness(k: usize, m: usize) -> Result<(EdgeColoring, ConstructionRecipe), ConstructionError> {
    let recipe = ConstructionRecipe::plan(k, m)?;
    if recipe.expected_n > MAX_VERTICES as u64 {
        return Err(ConstructionError::SizeCapExceeded { n: recipe.expected_n, cap: MAX_VERTICES });
    }
    let mut g = base_two_coloring(m)?.coloring;
    for step in &recipe.steps[1..] {
        g = match *step {
            Step::Double { new_color } => double(&g, new_color)?,
            Step::BlowUpK5 { new_colors } => blow_up_k5(&g, new_colors)?,
            Step::Base { .. } => unreachable!("base only appears first"),
        };
    }
    if g.n() as u64 != recipe.expected_n || g.k() != k {
        return Err(ConstructionError::VerificationFailed(format!(
            "built n={} k={}, expected n={} k={k}",
            g.n(),
            g.k(),
            recipe.expected_n
        )));
    }
    if let Some(w) = find_rainbow_triangle(&g) {
        return Err(ConstructionError::VerificationFailed(format!("contains {w}")));
    }
    if let Some(w) = find_mono_book(&g, m) {
        return Err(ConstructionError::VerificationFailed(format!("contains {w}")));
    }
    Ok((g, recipe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::Bitset;

    #[test]
    fn base_colorings_have_ramsey_minus_one_vertices() {
        for (m, n) in [(1, 5), (2, 9), (3, 13), (4, 17), (5, 20)] {
            let base = base_two_coloring(m).unwrap();
            assert_eq!(base.coloring.n(), n);
            assert!(find_mono_book(&base.coloring, m).is_none());
        }
        assert!(matches!(base_two_coloring(6), Err(ConstructionError::UnsupportedM(6))));
        assert!(matches!(base_two_coloring(0), Err(ConstructionError::UnsupportedM(0))));
    }

    #[test]
    fn residue_bases_are_sharp() {
        // One more page is always present, so the bases are exactly book-free.
        for m in 2..=4 {
            let g = base_two_coloring(m).unwrap().coloring;
            assert_eq!(g.max_book_pages(), m - 1);
        }
    }

    fn k1() -> EdgeColoring {
        EdgeColoring::from_upper_triangle(1, 0, vec![]).unwrap()
    }

    #[test]
    fn double_single_vertex() {
        let d = double(&k1(), 1).unwrap();
        assert_eq!((d.n(), d.k(), d.color(0, 1)), (2, 1, 1));
        assert!(matches!(double(&d, 3), Err(ConstructionError::BadNewColor { given: 3, expected: 2 })));
    }

    #[test]
    fn double_pentagon() {
        let g = double(&pentagon(), 3).unwrap();
        assert_eq!((g.n(), g.k()), (10, 3));
        assert!(find_rainbow_triangle(&g).is_none());
        // Color 3 is K_{5,5}, so no color has a triangle.
        assert!(find_mono_book(&g, 1).is_none());
        let d9 = double(&residue::residue_coloring(9).unwrap(), 3).unwrap();
        assert!(find_mono_book(&d9, 2).is_none());
    }

    #[test]
    fn blow_up_of_single_vertex_is_pentagon() {
        assert_eq!(blow_up_k5(&k1(), (1, 2)).unwrap(), pentagon());
    }

    #[test]
    fn blow_up_of_k9() {
        let g = blow_up_k5(&residue::residue_coloring(9).unwrap(), (3, 4)).unwrap();
        assert_eq!((g.n(), g.k()), (45, 4));
        assert!(find_rainbow_triangle(&g).is_none());
        assert!(find_mono_book(&g, 2).is_none());
    }

    #[test]
    fn blow_up_neighborhoods_are_copy_unions() {
        let base = residue::residue_coloring(9).unwrap();
        let g = blow_up_k5(&base, (3, 4)).unwrap();
        let n = 9;
        for u in 0..g.n() {
            let p = u / n;
            for (c, offsets) in [(3, [1, 4]), (4, [2, 3])] {
                let mut expect = Bitset::zeros(1);
                for off in offsets {
                    let q = (p + off) % 5;
                    for v in q * n..(q + 1) * n {
                        expect.insert(v);
                    }
                }
                assert_eq!(g.neighbors(c, u), &expect);
            }
        }
    }

    #[test]
    fn recipe_shapes() {
        let r = ConstructionRecipe::plan(5, 2).unwrap();
        assert_eq!(r.steps.len(), 3);
        assert_eq!(r.steps[1], Step::BlowUpK5 { new_colors: (3, 4) });
        assert_eq!(r.steps[2], Step::Double { new_color: 5 });
        assert_eq!(r.color_budget(), 5);
        assert_eq!(r.expected_n, 90);
        assert_eq!(r.top_level_blocks(), vec![0..45, 45..90]);
        let r = ConstructionRecipe::plan(2, 3).unwrap();
        assert!(r.top_level_blocks().is_empty());
    }

    #[test]
    fn witness_sizes() {
        let (g, _) = build_witness(2, 4).unwrap();
        assert_eq!(g.n(), 17);
        let (g, _) = build_witness(3, 2).unwrap();
        assert_eq!(g.n(), 18);
        let (g, _) = build_witness(4, 3).unwrap();
        assert_eq!(g.n(), 65);
        assert!(matches!(build_witness(12, 5), Err(ConstructionError::SizeCapExceeded { .. })));
    }
}
