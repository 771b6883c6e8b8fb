//! Gallai partitions: finding, verifying, coarsening, and reducing them.
//!
//! A Gallai partition splits the vertices into at least two parts so that each
//! pair of parts is joined in a single color and at most two colors occur
//! between parts overall.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{PartProfile, SizeCounters};
use crate::coloring::{pair_count, pair_index, Color, ColoringError, EdgeColoring};
use crate::union_find::DisjointSets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GallaiError {
    #[error("parts do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("no candidate color set yields a nontrivial partition; the coloring has a rainbow triangle")]
    RainbowTrianglePresent,
    #[error("a Gallai partition needs at least two vertices")]
    TooFewVertices,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GallaiPartition {
    parts: Vec<Vec<usize>>,
    /// Upper triangle over part indices, row-major.
    pair_colors: Vec<Color>,
    between_colors: BTreeSet<Color>,
}

impl GallaiPartition {
    /// Takes the parts as given and reads each pair color off one
    /// representative edge. The result still has to pass [`verify_partition`].
    pub fn from_parts(g: &EdgeColoring, parts: Vec<Vec<usize>>) -> Result<Self, GallaiError> {
        let parts = canonical_parts(g.n(), parts)?;
        let t = parts.len();
        let mut pair_colors = Vec::with_capacity(pair_count(t));
        for i in 0..t {
            for j in i + 1..t {
                pair_colors.push(g.color(parts[i][0], parts[j][0]));
            }
        }
        let between_colors = pair_colors.iter().copied().collect();
        Ok(Self { parts, pair_colors, between_colors })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn pair_color(&self, i: usize, j: usize) -> Color {
        assert!(i != j);
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.pair_colors[pair_index(self.t(), a, b)]
    }

    pub fn between_colors(&self) -> &BTreeSet<Color> {
        &self.between_colors
    }

    pub fn profile(&self) -> PartProfile {
        PartProfile::new(self.parts.iter().map(Vec::len).collect())
    }

    /// Part index of every vertex.
    pub fn membership(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                of[v] = i;
            }
        }
        of
    }
}

/// Sorts each part and orders parts by smallest vertex, checking that they
/// partition `0..n`.
fn canonical_parts(n: usize, mut parts: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>, GallaiError> {
    let mut seen = vec![false; n];
    for part in &mut parts {
        if part.is_empty() {
            return Err(GallaiError::NotAPartition("empty part".into()));
        }
        part.sort_unstable();
        for &v in part.iter() {
            if v >= n {
                return Err(GallaiError::NotAPartition(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(GallaiError::NotAPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(GallaiError::NotAPartition(format!("vertex {v} is not covered")));
    }
    parts.sort_unstable_by_key(|p| p[0]);
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    TooFewParts { t: usize },
    MixedPair { parts: (usize, usize), edge: (usize, usize), expected: Color, found: Color },
    TooManyBetweenColors { colors: BTreeSet<Color> },
    BetweenColorsMismatch { claimed: BTreeSet<Color>, actual: BTreeSet<Color> },
}

/// Outcome of [`verify_partition`]; `violation` is the first problem found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionVerdict {
    pub violation: Option<Violation>,
}

impl PartitionVerdict {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every edge between parts against the recorded pair colors.
pub fn verify_partition(g: &EdgeColoring, p: &GallaiPartition) -> Result<PartitionVerdict, GallaiError> {
    let parts = canonical_parts(g.n(), p.parts.clone())?;
    if parts != p.parts || p.pair_colors.len() != pair_count(p.t()) {
        return Err(GallaiError::NotAPartition("parts are not in canonical order".into()));
    }
    let verdict = |violation| Ok(PartitionVerdict { violation: Some(violation) });
    let t = p.t();
    if t < 2 {
        return verdict(Violation::TooFewParts { t });
    }
    for i in 0..t {
        for j in i + 1..t {
            let expected = p.pair_color(i, j);
            for &u in &p.parts[i] {
                for &v in &p.parts[j] {
                    let found = g.color(u, v);
                    if found != expected {
                        return verdict(Violation::MixedPair {
                            parts: (i, j),
                            edge: (u.min(v), u.max(v)),
                            expected,
                            found,
                        });
                    }
                }
            }
        }
    }
    let actual: BTreeSet<Color> = p.pair_colors.iter().copied().collect();
    if actual.len() > 2 {
        return verdict(Violation::TooManyBetweenColors { colors: actual });
    }
    if actual != p.between_colors {
        return verdict(Violation::BetweenColorsMismatch { claimed: p.between_colors.clone(), actual });
    }
    Ok(PartitionVerdict { violation: None })
}

/// Candidate between-part color sets: every single color, then every pair,
/// in lexicographic order.
fn candidate_sets(k: usize) -> Vec<Vec<Color>> {
    let colors = 1..=k as Color;
    let singles = colors.clone().map(|c| vec![c]);
    let pairs = colors.clone().flat_map(move |a| (a + 1..=k as Color).map(move |b| vec![a, b]));
    singles.chain(pairs).collect()
}

/// Coarsest partition whose between-part colors lie in `allowed` and whose
/// part pairs are monochromatic, or `None` if it collapses to a single part.
fn partition_for(g: &EdgeColoring, allowed: &[Color]) -> Option<Vec<usize>> {
    let n = g.n();
    let mut sets = DisjointSets::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if !allowed.contains(&g.color(u, v)) {
                sets.union(u, v);
            }
        }
    }
    loop {
        let (labels, t) = sets.labels();
        if t < 2 {
            return None;
        }
        let mut seen: Vec<Option<Color>> = vec![None; pair_count(t)];
        let mut merged = false;
        for u in 0..n {
            for v in u + 1..n {
                let (a, b) = (labels[u], labels[v]);
                if a == b {
                    continue;
                }
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                let c = g.color(u, v);
                match seen[pair_index(t, a, b)] {
                    None => seen[pair_index(t, a, b)] = Some(c),
                    Some(prev) if prev != c => merged |= sets.union(u, v),
                    Some(_) => {}
                }
            }
        }
        if !merged {
            return Some(labels);
        }
    }
}

/// Finds a Gallai partition.
///
/// For each candidate set `S` of at most two colors, vertices joined by an edge
/// outside `S` must share a part, and two parts joined by more than one color
/// must merge; this is iterated to a fixpoint. The first `S` leaving at least
/// two parts wins. Every merge is forced for any partition with between-part
/// colors in `S`, so a Gallai coloring always succeeds for some `S`.
pub fn find_partition(g: &EdgeColoring) -> Result<GallaiPartition, GallaiError> {
    if g.n() < 2 {
        return Err(GallaiError::TooFewVertices);
    }
    let labels = candidate_sets(g.k())
        .par_iter()
        .find_map_first(|s| partition_for(g, s))
        .ok_or(GallaiError::RainbowTrianglePresent)?;
    let t = labels.iter().max().map_or(0, |m| m + 1);
    let mut parts = vec![Vec::new(); t];
    for (v, &l) in labels.iter().enumerate() {
        parts[l].push(v);
    }
    GallaiPartition::from_parts(g, parts)
}

/// Greedily merges parts that see every other part in the same colors, down
/// to no fewer than two parts. Not guaranteed to reach the minimum part count.
pub fn coarsen(g: &EdgeColoring, p: &GallaiPartition) -> Result<GallaiPartition, GallaiError> {
    let mut current = p.clone();
    'outer: while current.t() > 2 {
        let t = current.t();
        for i in 0..t {
            for j in i + 1..t {
                let twins =
                    (0..t).filter(|&l| l != i && l != j).all(|l| current.pair_color(i, l) == current.pair_color(j, l));
                if twins {
                    let mut parts = current.parts.clone();
                    let absorbed = parts.remove(j);
                    parts[i].extend(absorbed);
                    current = GallaiPartition::from_parts(g, parts)?;
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(current)
}

/// The coloring on part representatives, with between-part colors relabeled
/// onto `1..=|between_colors|` in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub coloring: EdgeColoring,
    /// `(original, relabeled)` pairs.
    pub relabel: Vec<(Color, Color)>,
}

impl ReducedGraph {
    pub fn original_color(&self, relabeled: Color) -> Color {
        self.relabel.iter().find(|&&(_, r)| r == relabeled).map(|&(o, _)| o).expect("relabeled color out of range")
    }
}

pub fn reduced_graph(p: &GallaiPartition) -> Result<ReducedGraph, GallaiError> {
    let relabel: Vec<(Color, Color)> = p.between_colors.iter().enumerate().map(|(i, &c)| (c, i as Color + 1)).collect();
    let to_new = |c: Color| relabel.iter().find(|&&(o, _)| o == c).map(|&(_, r)| r).unwrap();
    let colors = p.pair_colors.iter().map(|&c| to_new(c)).collect();
    let coloring = EdgeColoring::from_upper_triangle(p.t(), relabel.len().max(1), colors)?;
    Ok(ReducedGraph { coloring, relabel })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileSummary {
    pub profile: PartProfile,
    pub t: usize,
    pub r: usize,
    pub counters: SizeCounters,
}

pub fn part_profile(p: &GallaiPartition, m: usize) -> ProfileSummary {
    summarize_profile(p.profile(), m)
}

pub fn summarize_profile(profile: PartProfile, m: usize) -> ProfileSummary {
    ProfileSummary { t: profile.t(), r: profile.r(m), counters: profile.counters(), profile }
}
