//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit code: 0 when every check passes, 1 when a
//! check fails or an input cannot be read, 2 on usage errors.

use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use gallai_books::bounds::{self, BoundsError, RAMSEY_TABLE, R_B1_B2};
use gallai_books::coloring::{find_mono_book, find_rainbow_triangle, EdgeColoring};
use gallai_books::constructions::{build_witness, ConstructionError};
use gallai_books::gallai::{find_partition, part_profile, reduced_graph, verify_partition};
use gallai_books::io::{export_dot, load_document, save_coloring, Metadata, DEFAULT_PALETTE};
use gallai_books::lemmas::{check_fact_4m_mono_chi, check_fact_mono_chi, check_star_theorem, FactReport};
use gallai_books::report::RunReport;
use gallai_books::search::{
    find_book_free_2coloring, verify_fixture, SearchConfig, SearchMode, SearchOutcome, StartKind, Symmetry,
};

pub const USAGE_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "gallai-books", version, about = "Gallai colorings and monochromatic books")]
struct Cli {
    /// Worker threads for parallel detectors (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print lower and upper bound tables for a page count.
    Formulas {
        #[arg(long)]
        m: usize,
        /// Inclusive range of color counts, e.g. `2..6`.
        #[arg(long, default_value = "2..6", value_parser = parse_range)]
        k_range: RangeInclusive<usize>,
        /// Number of m-inadmissible colors.
        #[arg(long, default_value_t = 0)]
        ell: usize,
    },
    /// Build the lower-bound witness coloring and save it.
    Construct {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every detector and the star check on a coloring file.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Page count to test; defaults to the file's recorded value.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Find a Gallai partition and print it with its reduced graph.
    FindPartition {
        #[arg(long = "in")]
        input: PathBuf,
        /// Page count used for the profile counters.
        #[arg(long)]
        m: Option<usize>,
    },
    /// Search for a red/blue coloring of K_n with no monochromatic B_m.
    SearchWitness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::LocalSearch)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        max_steps: Option<u64>,
        #[arg(long, value_enum, default_value_t = StartArg::Random)]
        start: StartArg,
        #[arg(long, value_enum, default_value_t = SymmetryArg::VertexOrder)]
        symmetry: SymmetryArg,
        /// Where to save a found coloring.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to save the search certificate.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run the finite fact checks over part-size profiles.
    CheckLemmas {
        #[arg(long, default_value = "3..5", value_parser = parse_range)]
        m_range: RangeInclusive<usize>,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
    },
    /// Write a Graphviz description of a coloring.
    ExportDot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Backtracking,
    LocalSearch,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StartArg {
    Random,
    Residue,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SymmetryArg {
    None,
    VertexOrder,
}

/// Accepts `a..b` and `a..=b`, both inclusive.
fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a range like 2..6, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: usize = a.trim().parse().map_err(|e| format!("bad range start {a:?}: {e}"))?;
    let hi: usize = b.trim().parse().map_err(|e| format!("bad range end {b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(lo..=hi)
}

/// Failure that ends a command before a full report exists.
enum Abort {
    Usage(String),
    Failed(String),
}

impl From<BoundsError> for Abort {
    fn from(e: BoundsError) -> Self {
        Abort::Usage(e.to_string())
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return USAGE_ERROR;
        }
        // Fails only if a pool already exists, e.g. when called twice in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let started = Instant::now();
    let mut report = RunReport::new(echo);
    let result = match cli.command {
        Command::Formulas { m, k_range, ell } => formulas(&mut report, m, k_range, ell),
        Command::Construct { k, m, out } => construct(&mut report, k, m, &out),
        Command::Verify { input, m } => verify(&mut report, &input, m),
        Command::FindPartition { input, m } => partition(&mut report, &input, m),
        Command::SearchWitness { n, m, mode, seed, max_steps, start, symmetry, out, certificate } => {
            let mut cfg = SearchConfig::new(
                n,
                m,
                match mode {
                    ModeArg::Exhaustive => SearchMode::Exhaustive,
                    ModeArg::Backtracking => SearchMode::Backtracking,
                    ModeArg::LocalSearch => SearchMode::LocalSearch,
                },
            );
            cfg.seed = seed;
            cfg.max_steps = max_steps.unwrap_or(cfg.max_steps);
            cfg.start = match start {
                StartArg::Random => StartKind::Random,
                StartArg::Residue => StartKind::Residue,
            };
            cfg.symmetry = match symmetry {
                SymmetryArg::None => Symmetry::None,
                SymmetryArg::VertexOrder => Symmetry::VertexOrder,
            };
            search(&mut report, cfg, out.as_deref(), certificate.as_deref())
        }
        Command::CheckLemmas { m_range, n_max } => lemmas(&mut report, m_range, n_max),
        Command::ExportDot { input, out: None } => return dot_to_stdout(&input, out, err),
        Command::ExportDot { input, out: Some(path) } => dot_to_file(&mut report, &input, &path),
    };
    match result {
        Ok(()) => {}
        Err(Abort::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return USAGE_ERROR;
        }
        Err(Abort::Failed(msg)) => {
            report.check("run", false, msg);
        }
    }
    report.wall_time_ms = Some(started.elapsed().as_millis() as u64);
    let rendered = if cli.json { report.render_json() } else { report.render_text() };
    let _ = out.write_all(rendered.as_bytes());
    report.exit_code()
}

fn load(report: &mut RunReport, path: &Path) -> Result<EdgeColoring, Abort> {
    report.input("file", path.display());
    let doc = load_document(path).map_err(|e| Abort::Failed(e.to_string()))?;
    doc.to_coloring().map_err(|e| Abort::Failed(e.to_string()))
}

fn show<T: ToString>(v: Result<T, BoundsError>) -> String {
    match v {
        Ok(x) => x.to_string(),
        Err(BoundsError::Overflow(_)) => "overflow".into(),
        Err(_) => "-".into(),
    }
}

fn formulas(report: &mut RunReport, m: usize, ks: RangeInclusive<usize>, ell: usize) -> Result<(), Abort> {
    report.input("m", m).input("k-range", format!("{}..{}", ks.start(), ks.end())).input("ell", ell);
    let rm = bounds::ramsey(m)?;
    if *ks.start() == 0 {
        return Err(Abort::Usage("k must be positive".into()));
    }
    report.line(format!("R(B_{m},B_{m}) = {rm}"));
    report.line(format!("R(B_1,B_2) = {} (stored for reference)", R_B1_B2.value));
    if m >= 2 {
        report.line(format!("R'_{m} = {}", show(bounds::r_prime(m))));
    }
    if let Ok((v, profile)) = bounds::profile_max_vertices(m) {
        report.line(format!("max vertices over small-part profiles = {v}, attained by {:?}", profile.sizes));
    }
    report.line(format!(
        "{:>3} {:>14} {:>14} {:>16} {:>10}  note",
        "k", "lower", "small-upper", "general-upper", "1-adm"
    ));
    for k in ks {
        let lower = bounds::gr_lower(k, m);
        let small = bounds::gr_small(k, ell, m);
        let general = bounds::gr_upper_general(k, ell, m);
        let note = if bounds::upper_is_formula_only(k, ell) { "formula-only" } else { "" };
        let lower_txt = if k == 1 { "-".to_string() } else { show(lower.clone()) };
        report.line(format!(
            "{k:>3} {lower_txt:>14} {:>14} {:>16} {:>10}  {note}",
            show(small.clone()),
            show(general.clone()),
            bounds::lemma_1admissible_bound(k, m)
        ));
        if ell == 0 && k >= 2 {
            if let (Ok(lo), Ok(up)) = (&lower, &general) {
                report.check(format!("k={k} lower <= general-upper"), lo <= up, format!("{lo} <= {up}"));
            }
            if let (Ok(lo), Ok(sm)) = (&lower, &small) {
                report.check(format!("k={k} small-upper = lower"), lo == sm, format!("{sm} = {lo}"));
            }
        }
    }
    let classical: Vec<String> = RAMSEY_TABLE.iter().map(|e| format!("m={}:{}", e.pages, e.value)).collect();
    report.line(format!("book Ramsey table: {}", classical.join(" ")));
    Ok(())
}

fn construct(report: &mut RunReport, k: usize, m: usize, out: &Path) -> Result<(), Abort> {
    report.input("k", k).input("m", m).input("out", out.display());
    let (g, recipe) = build_witness(k, m).map_err(|e| match e {
        ConstructionError::UnsupportedM(_)
        | ConstructionError::SizeCapExceeded { .. }
        | ConstructionError::Bounds(_) => Abort::Usage(e.to_string()),
        other => Abort::Failed(other.to_string()),
    })?;
    report.line(format!("n = {}", g.n()));
    report.line(format!("steps = {}", serde_json::to_string(&recipe.steps).expect("steps serialize")));
    report.check("rainbow-triangle-free", find_rainbow_triangle(&g).is_none(), "");
    report.check(format!("no monochromatic B_{m}"), find_mono_book(&g, m).is_none(), "");
    let md =
        Metadata { recipe: Some(recipe), provenance: Some("construct".into()), book_free_pages: Some(m), hash: None };
    save_coloring(&g, Some(md), out).map_err(|e| Abort::Failed(e.to_string()))?;
    report.check("saved", true, out.display().to_string());
    Ok(())
}

fn verify(report: &mut RunReport, path: &Path, m: Option<usize>) -> Result<(), Abort> {
    report.input("file", path.display());
    let cert = match verify_fixture(path, m) {
        Ok(c) => c,
        Err(gallai_books::search::SearchError::InvalidConfig(msg)) => return Err(Abort::Usage(msg)),
        Err(e) => return Err(Abort::Failed(e.to_string())),
    };
    report.input("m", cert.pages);
    report.line(format!("n = {}, k = {}", cert.n, cert.k));
    report.line(format!("sha256 = {}", cert.file_sha256));
    match cert.content_hash_ok {
        Some(ok) => report.check("content-hash", ok, if ok { "matches" } else { "does not match colors" }),
        None => report.line("content-hash: not recorded"),
    };
    let rainbow = cert.rainbow_triangle.as_ref().map(ToString::to_string).unwrap_or_default();
    report.check("rainbow-triangle-free", cert.rainbow_triangle.is_none(), rainbow);
    let book = cert.mono_book.as_ref().map(ToString::to_string).unwrap_or_default();
    report.check(format!("no monochromatic B_{}", cert.pages), cert.mono_book.is_none(), book);
    if cert.rainbow_triangle.is_none() {
        let g = load_document(path)
            .and_then(|d| Ok(EdgeColoring::from_upper_triangle(d.n, d.k, d.colors)?))
            .map_err(|e| Abort::Failed(e.to_string()))?;
        let star = check_star_theorem(&g).map_err(|e| Abort::Failed(e.to_string()))?;
        report.check(
            "star >= ceil(2n/5)",
            star.passed(),
            format!("{} >= {}{}", star.star.size(), star.required, if star.tight() { " (tight)" } else { "" }),
        );
    }
    report.set_data(&cert);
    Ok(())
}

fn partition(report: &mut RunReport, path: &Path, m: Option<usize>) -> Result<(), Abort> {
    let g = load(report, path)?;
    let p = find_partition(&g).map_err(|e| Abort::Failed(e.to_string()))?;
    let verdict = verify_partition(&g, &p).map_err(|e| Abort::Failed(e.to_string()))?;
    report.line(format!("parts = {}", p.t()));
    for (i, part) in p.parts().iter().enumerate() {
        let ids: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
        report.line(format!("part {}: {}", i + 1, ids.join(" ")));
    }
    let between: Vec<String> = p.between_colors().iter().map(ToString::to_string).collect();
    report.line(format!("between colors = {}", between.join(" ")));
    let reduced = reduced_graph(&p).map_err(|e| Abort::Failed(e.to_string()))?;
    for i in 0..p.t() {
        let row: Vec<String> =
            (0..p.t()).map(|j| if i == j { "-".into() } else { p.pair_color(i, j).to_string() }).collect();
        report.line(format!("reduced row {}: {}", i + 1, row.join(" ")));
    }
    report.line(format!("reduced graph relabeling (original, new) = {:?}", reduced.relabel));
    if let Some(m) = m {
        let s = part_profile(&p, m);
        let c = s.counters;
        report.line(format!("profile t = {}, r = {}, a = {}, b = {}, c = {}, d = {}", s.t, s.r, c.a, c.b, c.c, c.d));
    }
    let detail = verdict.violation.as_ref().map(|v| format!("{v:?}")).unwrap_or_default();
    report.check("gallai-partition", verdict.is_valid(), detail);
    report.set_data(&p);
    Ok(())
}

fn search(
    report: &mut RunReport,
    cfg: SearchConfig,
    out: Option<&Path>,
    certificate: Option<&Path>,
) -> Result<(), Abort> {
    report.input("n", cfg.n).input("m", cfg.m).input("mode", format!("{:?}", cfg.mode)).input("seed", cfg.seed);
    let cert = match find_book_free_2coloring(&cfg) {
        Ok(c) => c,
        Err(gallai_books::search::SearchError::InvalidConfig(msg)) => return Err(Abort::Usage(msg)),
        Err(e) => return Err(Abort::Failed(e.to_string())),
    };
    report.line(format!(
        "nodes = {}, steps = {}, restarts = {}",
        cert.stats.nodes, cert.stats.steps, cert.stats.restarts
    ));
    match &cert.outcome {
        SearchOutcome::WitnessFound { coloring } => {
            report.line(format!("result: coloring of K_{} with no monochromatic B_{} found", cfg.n, cfg.m));
            let g = cert.witness().ok_or_else(|| Abort::Failed("witness failed to load".into()))?;
            report.check(format!("no monochromatic B_{}", cfg.m), find_mono_book(&g, cfg.m).is_none(), "re-verified");
            if let Some(path) = out {
                save_coloring(&g, coloring.metadata.clone(), path).map_err(|e| Abort::Failed(e.to_string()))?;
                report.line(format!("saved coloring to {}", path.display()));
            }
        }
        SearchOutcome::SpaceExhausted => {
            report.line(format!("result: every 2-coloring of K_{} has a monochromatic B_{}", cfg.n, cfg.m));
            report.check("search-conclusive", true, "space exhausted");
        }
        SearchOutcome::StepBudgetExhausted => {
            report.check("search-conclusive", false, "step budget exhausted without a witness");
        }
    }
    if let Some(path) = certificate {
        let json = serde_json::to_string_pretty(&cert.without_timing()).expect("certificate serializes");
        fs::write(path, json + "\n").map_err(|e| Abort::Failed(format!("{}: {e}", path.display())))?;
    }
    report.set_data(cert.without_timing());
    Ok(())
}

fn lemmas(report: &mut RunReport, ms: RangeInclusive<usize>, n_max: usize) -> Result<(), Abort> {
    report.input("m-range", format!("{}..{}", ms.start(), ms.end())).input("n-max", n_max);
    let mut facts: Vec<FactReport> = Vec::new();
    for m in ms {
        facts.push(check_fact_4m_mono_chi(m, n_max).map_err(|e| Abort::Usage(e.to_string()))?);
    }
    facts.push(check_fact_mono_chi(n_max).map_err(|e| Abort::Usage(e.to_string()))?);
    for f in &facts {
        report.line(format!("{} (m = {}): {} profiles", f.name, f.m, f.profiles_checked));
        for nm in &f.near_misses {
            report.line(format!("  not forced just outside the hypotheses: {nm:?}"));
        }
        for note in &f.notes {
            report.line(format!("  note: {note}"));
        }
        let detail = match f.counterexamples.first() {
            Some(c) => format!("{} counterexamples, first {c:?}", f.counterexamples.len()),
            None => "no counterexamples".into(),
        };
        report.check(format!("{} m={}", f.name, f.m), f.passed(), detail);
    }
    report.set_data(&facts);
    Ok(())
}

fn dot_text(path: &Path) -> Result<String, String> {
    let doc = load_document(path).map_err(|e| e.to_string())?;
    let g = doc.to_coloring().map_err(|e| e.to_string())?;
    export_dot(&g, &DEFAULT_PALETTE).map_err(|e| e.to_string())
}

fn dot_to_stdout(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dot_text(path) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn dot_to_file(report: &mut RunReport, input: &Path, out: &Path) -> Result<(), Abort> {
    report.input("file", input.display()).input("out", out.display());
    let text = dot_text(input).map_err(Abort::Failed)?;
    fs::write(out, text).map_err(|e| Abort::Failed(format!("{}: {e}", out.display())))?;
    report.check("written", true, out.display().to_string());
    Ok(())
}
