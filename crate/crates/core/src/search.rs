//! Searches over red/blue colorings of small complete graphs: finding
//! colorings with no monochromatic `B_m`, and proving that none exist.
//!
//! Every coloring reported by a search is re-checked with
//! [`find_mono_book`] on a freshly built [`EdgeColoring`] before a certificate
//! is issued.

use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coloring::{binomial, find_mono_book, find_rainbow_triangle, pair_count, Color, EdgeColoring, Witness};
use crate::io::{content_hash, ColoringDocument, IoError, Metadata};
use crate::residue;

/// Largest order handled by the word-per-vertex searches.
pub const MAX_SEARCH_VERTICES: usize = 64;

/// Largest order for which plain enumeration of all colorings is allowed.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 7;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("node budget of {budget} exceeded after {nodes} nodes; result unknown")]
    BudgetExceeded { nodes: u64, budget: u64 },
    #[error("search produced a coloring that fails re-verification: {0}")]
    Unsound(String),
    #[error(transparent)]
    Io(#[from] IoError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    Exhaustive,
    Backtracking,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    None,
    /// Vertex 0 carries the largest monochromatic degree, in color 1, and its
    /// color-1 neighbors are `1..=d`.
    VertexOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartKind {
    Random,
    /// Quadratic-residue coloring; only for orders where one exists.
    Residue,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealingSchedule {
    pub initial_temperature: f64,
    /// Multiplied into the temperature after every move.
    pub cooling: f64,
    pub min_temperature: f64,
    /// Reheat after this many moves without a new best objective.
    pub restart_after: u64,
    /// Probability that a move recolors an edge of an existing book rather
    /// than a uniformly random edge.
    pub focus: f64,
}

impl Default for AnnealingSchedule {
    fn default() -> Self {
        Self { initial_temperature: 1.2, cooling: 0.9999, min_temperature: 0.6, restart_after: 200_000, focus: 0.5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub m: usize,
    pub mode: SearchMode,
    pub seed: u64,
    pub max_steps: u64,
    pub symmetry: Symmetry,
    pub start: StartKind,
    pub schedule: AnnealingSchedule,
}

impl SearchConfig {
    pub fn new(n: usize, m: usize, mode: SearchMode) -> Self {
        Self {
            n,
            m,
            mode,
            seed: 0,
            max_steps: 10_000_000,
            symmetry: Symmetry::VertexOrder,
            start: StartKind::Random,
            schedule: AnnealingSchedule::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |msg: String| Err(SearchError::InvalidConfig(msg));
        if self.n < 2 || self.m < 1 {
            return bad(format!("need n >= 2 and m >= 1, got n={} m={}", self.n, self.m));
        }
        if self.n > MAX_SEARCH_VERTICES {
            return bad(format!("n = {} exceeds the search limit {MAX_SEARCH_VERTICES}", self.n));
        }
        if self.mode == SearchMode::Exhaustive && self.n > MAX_EXHAUSTIVE_VERTICES {
            return bad(format!(
                "exhaustive enumeration needs C(n,2) <= 21 (n <= {MAX_EXHAUSTIVE_VERTICES}), got n = {}",
                self.n
            ));
        }
        if self.mode == SearchMode::LocalSearch && self.start == StartKind::Residue && !residue::supports(self.n) {
            return bad(format!("no residue coloring on {} vertices", self.n));
        }
        let s = &self.schedule;
        if !(s.initial_temperature > 0.0
            && s.min_temperature > 0.0
            && s.cooling > 0.0
            && s.cooling <= 1.0
            && (0.0..=1.0).contains(&s.focus))
        {
            return bad("annealing temperatures must be positive, cooling in (0, 1] and focus in [0, 1]".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SearchOutcome {
    WitnessFound { coloring: ColoringDocument },
    SpaceExhausted,
    StepBudgetExhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Colorings enumerated or search-tree nodes visited.
    pub nodes: u64,
    /// Local-search moves.
    pub steps: u64,
    pub restarts: u64,
    /// Smallest monochromatic book count reached by local search.
    pub best_objective: Option<u128>,
    /// Excluded from reproducibility comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reverification {
    pub pages: usize,
    pub mono_book_free: bool,
    pub rainbow_triangle_free: bool,
    pub content_hash: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub config: SearchConfig,
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reverification: Option<Reverification>,
}

impl SearchCertificate {
    pub fn witness(&self) -> Option<EdgeColoring> {
        match &self.outcome {
            SearchOutcome::WitnessFound { coloring } => coloring.to_coloring().ok(),
            _ => None,
        }
    }

    /// Copy with wall-clock timing removed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        let mut c = self.clone();
        c.stats.wall_time_ms = None;
        c
    }
}

/// Red/blue adjacency with one word per vertex. Color index 0 is color 1.
#[derive(Clone)]
struct WordColoring {
    n: usize,
    adj: [Vec<u64>; 2],
}

impl WordColoring {
    fn new(n: usize) -> Self {
        Self { n, adj: [vec![0; n], vec![0; n]] }
    }

    fn set(&mut self, u: usize, v: usize, c: usize) {
        self.adj[c][u] |= 1 << v;
        self.adj[c][v] |= 1 << u;
    }

    fn clear(&mut self, u: usize, v: usize, c: usize) {
        self.adj[c][u] &= !(1 << v);
        self.adj[c][v] &= !(1 << u);
    }

    fn degree(&self, c: usize, u: usize) -> usize {
        self.adj[c][u].count_ones() as usize
    }

    fn common(&self, c: usize, u: usize, v: usize) -> usize {
        (self.adj[c][u] & self.adj[c][v]).count_ones() as usize
    }

    /// Whether a monochromatic `B_m` uses the (already set) edge `{u, v}` in
    /// color `c`, as spine or as a page edge.
    fn book_through(&self, u: usize, v: usize, c: usize, m: usize) -> bool {
        if self.common(c, u, v) >= m {
            return true;
        }
        let mut both = self.adj[c][u] & self.adj[c][v];
        while both != 0 {
            let w = both.trailing_zeros() as usize;
            both &= both - 1;
            if self.common(c, u, w) >= m || self.common(c, v, w) >= m {
                return true;
            }
        }
        false
    }

    fn color_of(&self, u: usize, v: usize) -> Color {
        if self.adj[0][u] >> v & 1 == 1 {
            1
        } else {
            2
        }
    }

    fn to_coloring(&self) -> EdgeColoring {
        EdgeColoring::from_fn(self.n, 2, |u, v| self.color_of(u, v)).expect("complete 2-coloring")
    }
}

fn edges_in_order(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Optional cap on the maximum degree of one color class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCap {
    pub color: Color,
    pub max_degree: usize,
}

enum Flow {
    Found,
    Exhausted,
    Budget,
}

/// Depth-first search over edges in lexicographic order, closing a branch as
/// soon as a monochromatic book is completed or a degree cap is broken.
struct Backtracker {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
    state: WordColoring,
    caps: [usize; 2],
    nodes: u64,
    budget: u64,
}

impl Backtracker {
    fn new(n: usize, m: usize, caps: [usize; 2], budget: u64) -> Self {
        Self { n, m, edges: edges_in_order(n), state: WordColoring::new(n), caps, nodes: 0, budget }
    }

    /// Colors edge `idx` with `c`; returns false (and undoes) if that closes the branch.
    fn place(&mut self, idx: usize, c: usize) -> bool {
        let (u, v) = self.edges[idx];
        self.state.set(u, v, c);
        let ok = self.state.degree(c, u) <= self.caps[c]
            && self.state.degree(c, v) <= self.caps[c]
            && !self.state.book_through(u, v, c, self.m);
        if !ok {
            self.state.clear(u, v, c);
        }
        ok
    }

    fn run(&mut self, idx: usize) -> Flow {
        if idx == self.edges.len() {
            return Flow::Found;
        }
        let (u, v) = self.edges[idx];
        for c in 0..2 {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Flow::Budget;
            }
            if !self.place(idx, c) {
                continue;
            }
            match self.run(idx + 1) {
                Flow::Exhausted => self.state.clear(u, v, c),
                other => return other,
            }
        }
        Flow::Exhausted
    }

    fn reset(&mut self) {
        self.state = WordColoring::new(self.n);
    }
}

struct DfsResult {
    flow: Flow,
    witness: Option<EdgeColoring>,
    nodes: u64,
}

/// Searches for a 2-coloring of `K_n` with no monochromatic `B_m` that obeys
/// the optional degree cap.
fn backtrack(n: usize, m: usize, cap: Option<DegreeCap>, symmetry: Symmetry, budget: u64) -> DfsResult {
    let mut caps = [n - 1, n - 1];
    if let Some(cap) = cap {
        let i = usize::from(cap.color) - 1;
        caps[i] = caps[i].min(cap.max_degree);
    }
    let mut dfs = Backtracker::new(n, m, caps, budget);
    let finish = |dfs: &Backtracker, flow: Flow| {
        let witness = matches!(flow, Flow::Found).then(|| dfs.state.to_coloring());
        DfsResult { flow, witness, nodes: dfs.nodes }
    };
    if symmetry == Symmetry::None {
        let flow = dfs.run(0);
        return finish(&dfs, flow);
    }
    // Pivot on the unconstrained color. Without a cap the two colors can be
    // swapped, so the pivot degree also bounds the other color.
    let pivot = match cap {
        Some(DegreeCap { color: 1, .. }) => 1,
        _ => 0,
    };
    let other = 1 - pivot;
    let swappable = cap.is_none();
    let lowest = if swappable { (n - 1).div_ceil(2) } else { 0 };
    for d in lowest..n {
        if n - 1 - d > caps[other] {
            continue;
        }
        dfs.reset();
        dfs.caps = caps;
        dfs.caps[pivot] = caps[pivot].min(d);
        if swappable {
            dfs.caps[other] = caps[other].min(d);
        }
        if d > dfs.caps[pivot] {
            continue;
        }
        let mut ok = true;
        for idx in 0..n - 1 {
            let c = if idx < d { pivot } else { other };
            dfs.nodes += 1;
            if !dfs.place(idx, c) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        match dfs.run(n - 1) {
            Flow::Exhausted => {}
            flow => return finish(&dfs, flow),
        }
        if dfs.nodes > budget {
            return finish(&dfs, Flow::Budget);
        }
    }
    finish(&dfs, Flow::Exhausted)
}

fn reverify(g: &EdgeColoring, m: usize) -> Result<Reverification, SearchError> {
    if let Some(w) = find_mono_book(g, m) {
        return Err(SearchError::Unsound(w.to_string()));
    }
    Ok(Reverification {
        pages: m,
        mono_book_free: true,
        rainbow_triangle_free: find_rainbow_triangle(g).is_none(),
        content_hash: content_hash(g.n(), g.k(), g.upper_triangle()),
    })
}

fn witness_document(g: &EdgeColoring, cfg: &SearchConfig) -> ColoringDocument {
    let md = Metadata {
        provenance: Some(format!("{:?} search, seed {}", cfg.mode, cfg.seed).to_lowercase()),
        book_free_pages: Some(cfg.m),
        ..Default::default()
    };
    ColoringDocument::from_coloring(g, Some(md))
}

/// Looks for a red/blue coloring of `K_n` with no monochromatic `B_m`.
pub fn find_book_free_2coloring(cfg: &SearchConfig) -> Result<SearchCertificate, SearchError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut stats = SearchStats::default();
    let witness = match cfg.mode {
        SearchMode::Exhaustive => {
            let (w, nodes) = enumerate_book_free(cfg.n, cfg.m, cfg.max_steps);
            stats.nodes = nodes;
            match w {
                Enumerated::Found(g) => Some(g),
                Enumerated::None => None,
                Enumerated::Budget => return Ok(budget_certificate(cfg, stats, started)),
            }
        }
        SearchMode::Backtracking => {
            let r = backtrack(cfg.n, cfg.m, None, cfg.symmetry, cfg.max_steps);
            stats.nodes = r.nodes;
            match r.flow {
                Flow::Budget => return Ok(budget_certificate(cfg, stats, started)),
                _ => r.witness,
            }
        }
        SearchMode::LocalSearch => {
            let w = anneal(cfg, &mut stats)?;
            if w.is_none() {
                return Ok(budget_certificate(cfg, stats, started));
            }
            w
        }
    };
    stats.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    Ok(match witness {
        Some(g) => SearchCertificate {
            config: cfg.clone(),
            reverification: Some(reverify(&g, cfg.m)?),
            outcome: SearchOutcome::WitnessFound { coloring: witness_document(&g, cfg) },
            stats,
        },
        None => SearchCertificate {
            config: cfg.clone(),
            outcome: SearchOutcome::SpaceExhausted,
            stats,
            reverification: None,
        },
    })
}

fn budget_certificate(cfg: &SearchConfig, mut stats: SearchStats, started: Instant) -> SearchCertificate {
    stats.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    SearchCertificate { config: cfg.clone(), outcome: SearchOutcome::StepBudgetExhausted, stats, reverification: None }
}

enum Enumerated {
    Found(EdgeColoring),
    None,
    Budget,
}

/// Plain enumeration of all `2^C(n,2)` colorings in mask order; bit `e` set
/// means edge `e` (lexicographic) gets color 2.
fn enumerate_book_free(n: usize, m: usize, budget: u64) -> (Enumerated, u64) {
    let edges = edges_in_order(n);
    let total = 1u64 << edges.len();
    for mask in 0..total {
        if mask >= budget {
            return (Enumerated::Budget, mask);
        }
        let mut w = WordColoring::new(n);
        for (e, &(u, v)) in edges.iter().enumerate() {
            w.set(u, v, (mask >> e & 1) as usize);
        }
        let has_book = edges.iter().any(|&(u, v)| {
            let c = usize::from(w.color_of(u, v)) - 1;
            w.common(c, u, v) >= m
        });
        if !has_book {
            return (Enumerated::Found(w.to_coloring()), mask + 1);
        }
    }
    (Enumerated::None, total)
}

/// Incrementally maintained annealing state: per-pair common-neighbor counts
/// in each color, and the number of monochromatic books.
struct AnnealState {
    n: usize,
    color: Vec<u8>,
    common: [Vec<u16>; 2],
    objective: u128,
    weight: Vec<u128>,
}

impl AnnealState {
    fn new(g: &EdgeColoring, m: usize) -> Self {
        let n = g.n();
        let mut color = vec![0u8; n * n];
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    color[u * n + v] = g.color(u, v) - 1;
                }
            }
        }
        let mut common = [vec![0u16; n * n], vec![0u16; n * n]];
        for (c, counts) in common.iter_mut().enumerate() {
            for u in 0..n {
                for v in 0..n {
                    if u != v {
                        counts[u * n + v] =
                            g.neighbors(c as Color + 1, u).intersection_count(g.neighbors(c as Color + 1, v)) as u16;
                    }
                }
            }
        }
        let weight = (0..=n).map(|s| binomial(s, m)).collect();
        let mut st = Self { n, color, common, objective: 0, weight };
        st.objective = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).map(|(u, v)| st.pair_books(u, v)).sum();
        st
    }

    #[inline]
    fn pair_books(&self, x: usize, y: usize) -> u128 {
        let c = self.color[x * self.n + y] as usize;
        self.weight[self.common[c][x * self.n + y] as usize]
    }

    /// Books on spines touching `a` or `b`; these are the only ones a flip of
    /// `{a, b}` can change.
    fn touched(&self, a: usize, b: usize) -> u128 {
        let mut s = 0;
        for y in 0..self.n {
            if y != a {
                s += self.pair_books(a, y);
            }
            if y != a && y != b {
                s += self.pair_books(b, y);
            }
        }
        s
    }

    fn bump(&mut self, c: usize, x: usize, y: usize, up: bool) {
        let n = self.n;
        for idx in [x * n + y, y * n + x] {
            if up {
                self.common[c][idx] += 1;
            } else {
                self.common[c][idx] -= 1;
            }
        }
    }

    /// A uniformly chosen edge of a uniformly chosen spine that carries a book.
    fn edge_in_book(&self, rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
        let n = self.n;
        let mut chosen = None;
        let mut seen = 0u32;
        for u in 0..n {
            for v in u + 1..n {
                if self.pair_books(u, v) > 0 {
                    seen += 1;
                    if rng.gen_range(0..seen) == 0 {
                        chosen = Some((u, v));
                    }
                }
            }
        }
        let (u, v) = chosen?;
        let c = self.color[u * n + v];
        let pages: Vec<usize> =
            (0..n).filter(|&w| w != u && w != v && self.color[u * n + w] == c && self.color[v * n + w] == c).collect();
        let pick = rng.gen_range(0..=2 * pages.len());
        Some(match pick {
            0 => (u, v),
            i if i <= pages.len() => (u, pages[i - 1]),
            i => (v, pages[i - 1 - pages.len()]),
        })
    }

    /// Flips `{a, b}` and returns the change in the objective.
    fn flip(&mut self, a: usize, b: usize) -> i128 {
        let n = self.n;
        let before = self.touched(a, b);
        let old = self.color[a * n + b] as usize;
        let new = 1 - old;
        for y in 0..n {
            if y == a || y == b {
                continue;
            }
            // Pair (a, y) gains or loses b as a common neighbor, and symmetrically.
            let cb = self.color[b * n + y] as usize;
            if cb == old {
                self.bump(old, a, y, false);
            } else {
                self.bump(new, a, y, true);
            }
            let ca = self.color[a * n + y] as usize;
            if ca == old {
                self.bump(old, b, y, false);
            } else {
                self.bump(new, b, y, true);
            }
        }
        self.color[a * n + b] = new as u8;
        self.color[b * n + a] = new as u8;
        let after = self.touched(a, b);
        self.objective = self.objective + after - before;
        after as i128 - before as i128
    }

    fn to_coloring(&self) -> EdgeColoring {
        EdgeColoring::from_fn(self.n, 2, |u, v| self.color[u * self.n + v] + 1).expect("complete 2-coloring")
    }

    #[cfg(test)]
    fn recomputed(&self, m: usize) -> u128 {
        self.to_coloring().count_mono_books(m)
    }
}

fn anneal(cfg: &SearchConfig, stats: &mut SearchStats) -> Result<Option<EdgeColoring>, SearchError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.n;
    let start = match cfg.start {
        StartKind::Random => EdgeColoring::from_fn(n, 2, |_, _| rng.gen_range(1..=2)).expect("valid"),
        StartKind::Residue => residue::residue_coloring(n).map_err(|e| SearchError::InvalidConfig(e.to_string()))?,
    };
    let mut st = AnnealState::new(&start, cfg.m);
    let sched = cfg.schedule;
    let mut temperature = sched.initial_temperature;
    let mut best = st.objective;
    let mut since_best = 0u64;
    while st.objective > 0 && stats.steps < cfg.max_steps {
        stats.steps += 1;
        let (a, b) =
            if rng.gen::<f64>() < sched.focus { st.edge_in_book(&mut rng) } else { None }.unwrap_or_else(|| {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                (a, b)
            });
        let delta = st.flip(a, b);
        let accept = delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temperature).exp();
        if !accept {
            st.flip(a, b);
        }
        if st.objective < best {
            best = st.objective;
            since_best = 0;
        } else {
            since_best += 1;
        }
        temperature = (temperature * sched.cooling).max(sched.min_temperature);
        if since_best >= sched.restart_after {
            temperature = sched.initial_temperature;
            since_best = 0;
            stats.restarts += 1;
        }
    }
    stats.best_objective = Some(best);
    Ok((st.objective == 0).then(|| st.to_coloring()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedBookCertificate {
    pub n: usize,
    pub m: usize,
    pub constraint: Option<DegreeCap>,
    /// Every admissible coloring contains a monochromatic `B_m`.
    pub forced: bool,
    /// A book-free coloring when `forced` is false.
    pub counterexample: Option<ColoringDocument>,
    pub nodes: u64,
}

/// Decides whether every red/blue coloring of `K_n` obeying `constraint`
/// contains a monochromatic `B_m`.
pub fn verify_forced_book(
    n: usize,
    m: usize,
    constraint: Option<DegreeCap>,
    budget: u64,
) -> Result<ForcedBookCertificate, SearchError> {
    if !(2..=MAX_SEARCH_VERTICES).contains(&n) || m == 0 {
        return Err(SearchError::InvalidConfig(format!("need 2 <= n <= {MAX_SEARCH_VERTICES}, m >= 1")));
    }
    if let Some(DegreeCap { color, .. }) = constraint {
        if !(1..=2).contains(&color) {
            return Err(SearchError::InvalidConfig(format!("degree cap color must be 1 or 2, got {color}")));
        }
    }
    let r = backtrack(n, m, constraint, Symmetry::VertexOrder, budget);
    match r.flow {
        Flow::Budget => Err(SearchError::BudgetExceeded { nodes: r.nodes, budget }),
        Flow::Exhausted => {
            Ok(ForcedBookCertificate { n, m, constraint, forced: true, counterexample: None, nodes: r.nodes })
        }
        Flow::Found => {
            let g = r.witness.expect("found implies witness");
            reverify(&g, m)?;
            if let Some(cap) = constraint {
                if (0..n).any(|u| g.degree(cap.color, u) > cap.max_degree) {
                    return Err(SearchError::Unsound("counterexample breaks the degree cap".into()));
                }
            }
            Ok(ForcedBookCertificate {
                n,
                m,
                constraint,
                forced: false,
                counterexample: Some(ColoringDocument::from_coloring(&g, None)),
                nodes: r.nodes,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureCertificate {
    pub path: String,
    pub file_sha256: String,
    /// `None` when the file carries no content hash.
    pub content_hash_ok: Option<bool>,
    pub n: usize,
    pub k: usize,
    pub pages: usize,
    pub mono_book: Option<Witness>,
    pub rainbow_triangle: Option<Witness>,
}

impl FixtureCertificate {
    pub fn book_free(&self) -> bool {
        self.mono_book.is_none()
    }

    pub fn passed(&self) -> bool {
        self.book_free() && self.rainbow_triangle.is_none() && self.content_hash_ok != Some(false)
    }
}

/// Re-runs the detectors on a coloring file. `pages` defaults to the file's
/// `book_free_pages` metadata.
pub fn verify_fixture(path: &Path, pages: Option<usize>) -> Result<FixtureCertificate, SearchError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::Io { path: path.into(), source })?;
    let text = String::from_utf8_lossy(&bytes);
    let doc = ColoringDocument::parse(&text, path)?;
    let pages = pages
        .or_else(|| doc.metadata.as_ref().and_then(|m| m.book_free_pages))
        .ok_or_else(|| SearchError::InvalidConfig("no page count given or recorded".into()))?;
    if pages == 0 {
        return Err(SearchError::InvalidConfig("page count must be positive".into()));
    }
    let expected = pair_count(doc.n);
    if doc.colors.len() != expected {
        return Err(IoError::LengthMismatch { n: doc.n, expected, found: doc.colors.len() }.into());
    }
    let content_hash_ok =
        doc.metadata.as_ref().and_then(|m| m.hash.as_ref()).map(|h| *h == content_hash(doc.n, doc.k, &doc.colors));
    let g = EdgeColoring::from_upper_triangle(doc.n, doc.k, doc.colors.clone()).map_err(IoError::from)?;
    Ok(FixtureCertificate {
        path: path.display().to_string(),
        file_sha256: hex::encode(Sha256::digest(&bytes)),
        content_hash_ok,
        n: g.n(),
        k: g.k(),
        pages,
        mono_book: find_mono_book(&g, pages),
        rainbow_triangle: find_rainbow_triangle(&g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: all 2^C(n,2) colorings checked with the bitset
    /// detector, with an optional cap on one color class.
    fn brute_force_exists(n: usize, m: usize, cap: Option<DegreeCap>) -> bool {
        let e = pair_count(n);
        (0u64..1 << e).any(|mask| {
            let colors = (0..e).map(|i| (mask >> i & 1) as Color + 1).collect();
            let g = EdgeColoring::from_upper_triangle(n, 2, colors).unwrap();
            let within_cap = cap.is_none_or(|c| (0..n).all(|u| g.degree(c.color, u) <= c.max_degree));
            within_cap && find_mono_book(&g, m).is_none()
        })
    }

    #[test]
    fn exhaustive_k5_triangle_free_is_pentagon() {
        let cert = find_book_free_2coloring(&SearchConfig::new(5, 1, SearchMode::Exhaustive)).unwrap();
        let g = cert.witness().unwrap();
        // Up to relabeling the only such coloring is a red 5-cycle: 2-regular
        // and connected in both colors.
        for c in 1..=2 {
            assert!((0..5).all(|u| g.degree(c, u) == 2));
            let mut seen = 1u32;
            let mut frontier = vec![0usize];
            while let Some(u) = frontier.pop() {
                for v in g.neighbors(c, u).iter() {
                    if seen >> v & 1 == 0 {
                        seen |= 1 << v;
                        frontier.push(v);
                    }
                }
            }
            assert_eq!(seen, 0b11111);
        }
        assert!(cert.reverification.unwrap().mono_book_free);
    }

    #[test]
    fn every_triangle_free_k5_coloring_is_a_pentagon() {
        let mut count = 0;
        for mask in 0u32..1 << 10 {
            let colors = (0..10).map(|i| (mask >> i & 1) as Color + 1).collect();
            let g = EdgeColoring::from_upper_triangle(5, 2, colors).unwrap();
            if find_mono_book(&g, 1).is_none() {
                count += 1;
                assert!((0..5).all(|u| g.degree(1, u) == 2));
            }
        }
        // 4!/2 = 12 labeled 5-cycles.
        assert_eq!(count, 12);
    }

    #[test]
    fn exhaustive_k6_triangles_forced() {
        let cert = find_book_free_2coloring(&SearchConfig::new(6, 1, SearchMode::Exhaustive)).unwrap();
        assert_eq!(cert.outcome, SearchOutcome::SpaceExhausted);
        assert_eq!(cert.stats.nodes, 1 << 15);
    }

    #[test]
    fn exhaustive_rejects_large_n() {
        assert!(matches!(
            find_book_free_2coloring(&SearchConfig::new(8, 1, SearchMode::Exhaustive)),
            Err(SearchError::InvalidConfig(_))
        ));
    }

    #[test]
    fn backtracking_agrees_with_enumeration() {
        for n in 2..=6 {
            for m in 1..=3 {
                let exists = brute_force_exists(n, m, None);
                for symmetry in [Symmetry::None, Symmetry::VertexOrder] {
                    let mut cfg = SearchConfig::new(n, m, SearchMode::Backtracking);
                    cfg.symmetry = symmetry;
                    let cert = find_book_free_2coloring(&cfg).unwrap();
                    assert_eq!(cert.witness().is_some(), exists, "n={n} m={m} {symmetry:?}");
                }
            }
        }
    }

    #[test]
    fn forced_book_matches_oracle_with_caps() {
        for n in 3..=6 {
            for m in 1..=2 {
                for cap in
                    [None, Some(DegreeCap { color: 2, max_degree: 1 }), Some(DegreeCap { color: 1, max_degree: 2 })]
                {
                    let cert = verify_forced_book(n, m, cap, 1 << 30).unwrap();
                    assert_eq!(cert.forced, !brute_force_exists(n, m, cap), "n={n} m={m} cap={cap:?}");
                    if let Some(doc) = cert.counterexample {
                        assert!(find_mono_book(&doc.to_coloring().unwrap(), m).is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn forced_book_examples() {
        assert!(verify_forced_book(6, 1, None, 1 << 30).unwrap().forced);
        assert!(!verify_forced_book(5, 1, None, 1 << 30).unwrap().forced);
        let blue_matching = Some(DegreeCap { color: 2, max_degree: 1 });
        assert!(verify_forced_book(6, 2, blue_matching, 1 << 30).unwrap().forced);
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(verify_forced_book(12, 2, None, 100), Err(SearchError::BudgetExceeded { budget: 100, .. })));
        let mut cfg = SearchConfig::new(13, 3, SearchMode::LocalSearch);
        cfg.max_steps = 1;
        let cert = find_book_free_2coloring(&cfg).unwrap();
        assert_eq!(cert.outcome, SearchOutcome::StepBudgetExhausted);
    }

    #[test]
    fn incremental_objective_matches_recount() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = EdgeColoring::from_fn(12, 2, |_, _| rng.gen_range(1..=2)).unwrap();
        for m in 1..=3 {
            let mut st = AnnealState::new(&g, m);
            assert_eq!(st.objective, st.recomputed(m));
            for _ in 0..200 {
                let a = rng.gen_range(0..12);
                let b = (a + rng.gen_range(1..12)) % 12;
                st.flip(a, b);
                assert_eq!(st.objective, st.recomputed(m));
            }
        }
    }

    #[test]
    fn local_search_is_deterministic() {
        let mut cfg = SearchConfig::new(13, 3, SearchMode::LocalSearch);
        cfg.seed = 11;
        let a = find_book_free_2coloring(&cfg).unwrap();
        let b = find_book_free_2coloring(&cfg).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
        assert!(a.witness().is_some(), "{:?}", a.stats);
    }

    #[test]
    fn local_search_finds_k20_without_b5() {
        let mut cfg = SearchConfig::new(20, 5, SearchMode::LocalSearch);
        cfg.seed = 1;
        let cert = find_book_free_2coloring(&cfg).unwrap();
        let g = cert.witness().expect("seed 1 converges under the default schedule");
        assert!(find_mono_book(&g, 5).is_none());
    }

    #[test]
    fn residue_start_is_already_book_free() {
        let mut cfg = SearchConfig::new(17, 4, SearchMode::LocalSearch);
        cfg.start = StartKind::Residue;
        let cert = find_book_free_2coloring(&cfg).unwrap();
        assert_eq!(cert.stats.steps, 0);
        assert!(cert.witness().is_some());
        cfg.n = 20;
        assert!(find_book_free_2coloring(&cfg).is_err());
    }
}
