//! Edge-colored complete graphs and the monochromatic / rainbow substructure
//! detectors that everything else is built on.
//!
//! Vertices are `0..n`. Colors are `1..=k`. The color of every unordered pair is
//! stored once in a dense upper-triangular array; for each color we also keep a
//! neighbor bitset per vertex so that common-neighborhood questions reduce to
//! word-wise AND + popcount.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{self, Bitset};

/// Color identifier, always in `1..=k`.
pub type Color = u8;

/// Largest supported vertex count. Every blow-up witness up to six colors and
/// five pages fits comfortably.
pub const MAX_VERTICES: usize = 4096;

/// Largest supported color count.
pub const MAX_COLORS: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex count must be in 1..={max}, got {n}", max = MAX_VERTICES)]
    VertexCount { n: usize },
    #[error("color count must be in 1..={max} (0 only for n = 1), got {k}", max = MAX_COLORS)]
    ColorCount { k: usize },
    #[error("no color given for edge ({0}, {1})")]
    MissingEdge(usize, usize),
    #[error("edge ({u}, {v}) has color {color}, outside 1..={k}")]
    ColorOutOfRange { u: usize, v: usize, color: usize, k: usize },
    #[error("edge ({0}, {1}) was given two different colors")]
    AsymmetricInput(usize, usize),
    #[error("self-loop entry at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("expected {expected} upper-triangular entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
}

/// Number of unordered pairs on `n` vertices.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `(u, v)`, `u < v`, in the row-major upper triangle.
#[inline]
pub const fn pair_index(n: usize, u: usize, v: usize) -> usize {
    u * n - u * (u + 1) / 2 + (v - u - 1)
}

/// A k-edge-colored complete graph on n vertices.
///
/// Immutable once built; all detectors take `&self`.
#[derive(Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    colors: Vec<Color>,
    words: usize,
    // neighbors[(c - 1) * n + u] is the set of v with color(u, v) == c.
    neighbors: Vec<Bitset>,
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EdgeColoring").field("n", &self.n).field("k", &self.k).finish_non_exhaustive()
    }
}

impl EdgeColoring {
    /// Builds a coloring from an explicit pair table. Each unordered pair must
    /// be covered; a pair may be listed in both orientations only with the same
    /// color.
    pub fn make<I>(n: usize, k: usize, assignments: I) -> Result<Self, ColoringError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        check_dims(n, k)?;
        let mut colors: Vec<Option<Color>> = vec![None; pair_count(n)];
        for ((u, v), c) in assignments {
            if u >= n || v >= n {
                return Err(ColoringError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(ColoringError::SelfLoop(u));
            }
            if c == 0 || c > k {
                return Err(ColoringError::ColorOutOfRange { u, v, color: c, k });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let slot = &mut colors[pair_index(n, a, b)];
            match *slot {
                Some(prev) if usize::from(prev) != c => return Err(ColoringError::AsymmetricInput(a, b)),
                _ => *slot = Some(c as Color),
            }
        }
        let mut flat = Vec::with_capacity(colors.len());
        for u in 0..n {
            for v in u + 1..n {
                match colors[pair_index(n, u, v)] {
                    Some(c) => flat.push(c),
                    None => return Err(ColoringError::MissingEdge(u, v)),
                }
            }
        }
        Ok(Self::build(n, k, flat))
    }

    /// Builds a coloring from the row-major upper triangle `(0,1), (0,2), ...`.
    pub fn from_upper_triangle(n: usize, k: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        check_dims(n, k)?;
        if colors.len() != pair_count(n) {
            return Err(ColoringError::LengthMismatch { expected: pair_count(n), found: colors.len() });
        }
        for u in 0..n {
            for v in u + 1..n {
                let c = colors[pair_index(n, u, v)];
                if c == 0 || usize::from(c) > k {
                    return Err(ColoringError::ColorOutOfRange { u, v, color: c.into(), k });
                }
            }
        }
        Ok(Self::build(n, k, colors))
    }

    /// Builds a coloring by evaluating `f(u, v)` for every `u < v`.
    pub fn from_fn<F>(n: usize, k: usize, mut f: F) -> Result<Self, ColoringError>
    where
        F: FnMut(usize, usize) -> Color,
    {
        check_dims(n, k)?;
        let mut colors = Vec::with_capacity(pair_count(n));
        for u in 0..n {
            for v in u + 1..n {
                colors.push(f(u, v));
            }
        }
        Self::from_upper_triangle(n, k, colors)
    }

    fn build(n: usize, k: usize, colors: Vec<Color>) -> Self {
        let words = bitset::words_for(n);
        let mut neighbors = vec![Bitset::zeros(words); k * n];
        for u in 0..n {
            for v in u + 1..n {
                let c = usize::from(colors[pair_index(n, u, v)]);
                neighbors[(c - 1) * n + u].insert(v);
                neighbors[(c - 1) * n + v].insert(u);
            }
        }
        Self { n, k, colors, words, neighbors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Color of the edge `{u, v}`. Panics if `u == v` or either is out of range.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v && u < self.n && v < self.n, "no edge ({u}, {v})");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[pair_index(self.n, a, b)]
    }

    /// The row-major upper-triangular color list.
    pub fn upper_triangle(&self) -> &[Color] {
        &self.colors
    }

    /// Neighbors of `u` in color `c`.
    #[inline]
    pub fn neighbors(&self, c: Color, u: usize) -> &Bitset {
        &self.neighbors[(usize::from(c) - 1) * self.n + u]
    }

    pub fn degree(&self, c: Color, u: usize) -> usize {
        self.neighbors(c, u).count()
    }

    /// Colors that actually occur on at least one edge.
    pub fn used_colors(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> {
        1..=self.k as Color
    }

    /// Same edge colors, reinterpreted with a larger palette.
    pub fn with_color_count(&self, k: usize) -> Result<Self, ColoringError> {
        Self::from_upper_triangle(self.n, k, self.colors.clone())
    }

    /// Checks the cached bitsets against the color array.
    pub fn caches_consistent(&self) -> bool {
        (0..self.n).all(|u| {
            (0..self.n).filter(|&v| v != u).all(|v| {
                let c = self.color(u, v);
                self.colors().all(|d| self.neighbors(d, u).contains(v) == (d == c))
            }) && self.colors().all(|d| !self.neighbors(d, u).contains(u))
        })
    }

    fn common_count(&self, c: Color, u: usize, v: usize) -> usize {
        self.neighbors(c, u).intersection_count(self.neighbors(c, v))
    }

    /// Number of monochromatic copies of `B_m`, counted as spine edge plus an
    /// m-subset of the common neighbors in the spine's color.
    pub fn count_mono_books(&self, m: usize) -> u128 {
        assert!(m >= 1, "books need at least one page");
        (0..self.n)
            .into_par_iter()
            .map(|u| {
                let mut total = 0u128;
                for v in u + 1..self.n {
                    let s = self.common_count(self.color(u, v), u, v);
                    total += binomial(s, m);
                }
                total
            })
            .sum()
    }

    /// Largest monochromatic book page count at any edge.
    pub fn max_book_pages(&self) -> usize {
        (0..self.n)
            .into_par_iter()
            .map(|u| (u + 1..self.n).map(|v| self.common_count(self.color(u, v), u, v)).max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }
}

fn check_dims(n: usize, k: usize) -> Result<(), ColoringError> {
    if n == 0 || n > MAX_VERTICES {
        return Err(ColoringError::VertexCount { n });
    }
    // A single vertex has no edges, so an empty palette is allowed there.
    if (k == 0 && n > 1) || k > MAX_COLORS {
        return Err(ColoringError::ColorCount { k });
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc = 1u128;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A located substructure certifying a detector answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Witness {
    RainbowTriangle {
        vertices: [usize; 3],
        /// Colors of the edges (v0,v1), (v0,v2), (v1,v2).
        colors: [Color; 3],
    },
    MonoBook {
        spine: (usize, usize),
        pages: Vec<usize>,
        color: Color,
    },
    MonoStar {
        center: usize,
        leaves: Vec<usize>,
        color: Color,
    },
}

impl Witness {
    /// Star size (leaf count) or book page count; 3 for a triangle.
    pub fn size(&self) -> usize {
        match self {
            Witness::RainbowTriangle { .. } => 3,
            Witness::MonoBook { pages, .. } => pages.len(),
            Witness::MonoStar { leaves, .. } => leaves.len(),
        }
    }
}

impl fmt::Display for Witness {
    /// Human-facing form; vertex ids are printed 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |vs: &[usize]| vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",");
        match self {
            Witness::RainbowTriangle { vertices, colors } => write!(
                f,
                "rainbow triangle on {{{}}} with colors {}/{}/{}",
                one(vertices),
                colors[0],
                colors[1],
                colors[2]
            ),
            Witness::MonoBook { spine, pages, color } => {
                write!(f, "color-{color} book with spine {}-{} and pages {{{}}}", spine.0 + 1, spine.1 + 1, one(pages))
            }
            Witness::MonoStar { center, leaves, color } => {
                write!(f, "color-{color} star at {} with {} leaves", center + 1, leaves.len())
            }
        }
    }
}

/// Re-checks a witness against a coloring, independently of the detector that
/// produced it.
pub fn validate_witness(g: &EdgeColoring, w: &Witness) -> Result<(), String> {
    let in_range = |v: usize| {
        if v < g.n() {
            Ok(())
        } else {
            Err(format!("vertex {v} out of range"))
        }
    };
    match w {
        Witness::RainbowTriangle { vertices: [a, b, c], colors } => {
            for &v in [a, b, c] {
                in_range(v)?;
            }
            if a == b || a == c || b == c {
                return Err("triangle vertices are not distinct".into());
            }
            let actual = [g.color(*a, *b), g.color(*a, *c), g.color(*b, *c)];
            if actual != *colors {
                return Err(format!("recorded colors {colors:?} differ from {actual:?}"));
            }
            if actual[0] == actual[1] || actual[0] == actual[2] || actual[1] == actual[2] {
                return Err("triangle colors are not pairwise distinct".into());
            }
            Ok(())
        }
        Witness::MonoBook { spine: (u, v), pages, color } => {
            in_range(*u)?;
            in_range(*v)?;
            if u == v {
                return Err("degenerate spine".into());
            }
            if g.color(*u, *v) != *color {
                return Err(format!("spine {u}-{v} is not color {color}"));
            }
            let distinct: BTreeSet<_> = pages.iter().collect();
            if distinct.len() != pages.len() || pages.is_empty() {
                return Err("pages must be distinct and nonempty".into());
            }
            for &p in pages {
                in_range(p)?;
                if p == *u || p == *v {
                    return Err(format!("page {p} lies on the spine"));
                }
                if g.color(*u, p) != *color || g.color(*v, p) != *color {
                    return Err(format!("page {p} is not joined to the spine in color {color}"));
                }
            }
            Ok(())
        }
        Witness::MonoStar { center, leaves, color } => {
            in_range(*center)?;
            let distinct: BTreeSet<_> = leaves.iter().collect();
            if distinct.len() != leaves.len() {
                return Err("duplicate leaves".into());
            }
            for &l in leaves {
                in_range(l)?;
                if l == *center || g.color(*center, l) != *color {
                    return Err(format!("leaf {l} is not a color-{color} neighbor of {center}"));
                }
            }
            Ok(())
        }
    }
}

/// Finds the lexicographically first rainbow triangle `u < v < w`, if any.
/// `None` means the coloring is a Gallai coloring.
pub fn find_rainbow_triangle(g: &EdgeColoring) -> Option<Witness> {
    let n = g.n();
    let full = Bitset::full(n, g.words);
    (0..n).into_par_iter().find_map_first(|u| {
        let mut scratch = Bitset::zeros(g.words);
        for v in u + 1..n {
            let a = g.color(u, v);
            // Candidates w: neither edge to the spine pair uses color a, and the
            // two edges differ from each other.
            scratch.copy_from(&full);
            scratch.and_not_assign(g.neighbors(a, u));
            scratch.and_not_assign(g.neighbors(a, v));
            for c in g.colors() {
                if c != a {
                    scratch.and_not_intersection(g.neighbors(c, u), g.neighbors(c, v));
                }
            }
            if let Some(w) = scratch.first_at_or_after(v + 1) {
                return Some(Witness::RainbowTriangle {
                    vertices: [u, v, w],
                    colors: [a, g.color(u, w), g.color(v, w)],
                });
            }
        }
        None
    })
}

/// Finds a monochromatic `B_m`: lowest color first, then the lexicographically
/// first spine, with the `m` smallest common neighbors as pages.
///
/// Panics if `m == 0`; zero-page books are not meaningful here.
pub fn find_mono_book(g: &EdgeColoring, m: usize) -> Option<Witness> {
    assert!(m >= 1, "books need at least one page");
    let n = g.n();
    g.colors().find_map(|c| {
        (0..n).into_par_iter().find_map_first(|u| {
            let nu = g.neighbors(c, u);
            nu.iter_from(u + 1).find_map(|v| {
                let nv = g.neighbors(c, v);
                if nu.intersection_count(nv) >= m {
                    let pages = nu.intersection_iter(nv).take(m).collect();
                    Some(Witness::MonoBook { spine: (u, v), pages, color: c })
                } else {
                    None
                }
            })
        })
    })
}

/// A monochromatic star of maximum size; ties go to the lowest center, then the
/// lowest color.
pub fn max_mono_star(g: &EdgeColoring) -> Witness {
    assert!(g.n() >= 2, "a star needs at least two vertices");
    let mut best = (0usize, 0usize, 1 as Color);
    for u in 0..g.n() {
        for c in g.colors() {
            let d = g.degree(c, u);
            if d > best.0 {
                best = (d, u, c);
            }
        }
    }
    let (_, center, color) = best;
    Witness::MonoStar { center, leaves: g.neighbors(color, center).iter().collect(), color }
}

/// Colors whose color class has maximum degree at least `m`.
pub fn admissible_colors(g: &EdgeColoring, m: usize) -> BTreeSet<Color> {
    assert!(m >= 1, "admissibility threshold must be positive");
    g.colors().filter(|&c| (0..g.n()).any(|u| g.degree(c, u) >= m)).collect()
}

/// Colors whose color class has maximum degree below `m`.
pub fn inadmissible_colors(g: &EdgeColoring, m: usize) -> BTreeSet<Color> {
    let adm = admissible_colors(g, m);
    g.colors().filter(|c| !adm.contains(c)).collect()
}
