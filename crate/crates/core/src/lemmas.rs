//! Executable versions of the finite facts used in the small-book case
//! analysis. Facts about monochromatic quotients depend only on part sizes, so
//! they are checked by enumerating size profiles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::PartProfile;
use crate::coloring::{find_rainbow_triangle, max_mono_star, EdgeColoring, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("a quotient needs at least two parts, got {0}")]
    TooFewParts(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("input coloring is not a Gallai coloring: {0}")]
    PreconditionViolated(String),
}

/// Whether a monochromatic quotient over parts of the given sizes forces a
/// monochromatic `B_m` no matter how the parts are colored inside.
///
/// A spine between two parts sees every vertex outside both parts as a page,
/// so the answer is whether `n' - s_i - s_j >= m` for some pair of parts,
/// i.e. for the two smallest parts.
pub fn forced_book_in_mono_quotient(profile: &PartProfile, m: usize) -> Result<bool, LemmaError> {
    if profile.t() < 2 {
        return Err(LemmaError::TooFewParts(profile.t()));
    }
    let sizes = &profile.sizes;
    let smallest_pair = sizes[sizes.len() - 1] + sizes[sizes.len() - 2];
    Ok(profile.total() - smallest_pair >= m)
}

/// A reduced graph over parts of the given sizes, with the number of colors
/// used between parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientScenario {
    pub profile: PartProfile,
    pub quotient_color_count: u8,
}

impl QuotientScenario {
    pub fn new(profile: PartProfile, quotient_color_count: u8) -> Result<Self, LemmaError> {
        if profile.sizes.contains(&0) {
            return Err(LemmaError::OutOfRange("part sizes must be positive".into()));
        }
        if !(1..=2).contains(&quotient_color_count) {
            return Err(LemmaError::OutOfRange(format!("quotient uses 1 or 2 colors, got {quotient_color_count}")));
        }
        Ok(Self { profile, quotient_color_count })
    }

    pub fn monochromatic(&self) -> bool {
        self.quotient_color_count == 1
    }

    pub fn n_prime(&self) -> usize {
        self.profile.total()
    }

    /// Whether a monochromatic `B_m` is forced. Only monochromatic quotients
    /// are decided by sizes alone.
    pub fn forces_book(&self, m: usize) -> Result<bool, LemmaError> {
        if !self.monochromatic() {
            return Err(LemmaError::OutOfRange("two-colored quotients depend on the reduced graph".into()));
        }
        forced_book_in_mono_quotient(&self.profile, m)
    }
}

/// Calls `visit` with every non-increasing sequence of parts in `1..=max_part`
/// summing to `total`.
pub fn for_each_partition(total: usize, max_part: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, cap: usize, acc: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if rest == 0 {
            visit(acc);
            return;
        }
        for s in (1..=cap.min(rest)).rev() {
            acc.push(s);
            go(rest - s, s, acc, visit);
            acc.pop();
        }
    }
    go(total, max_part, &mut Vec::new(), visit);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactReport {
    pub name: String,
    pub m: usize,
    pub profiles_checked: usize,
    pub counterexamples: Vec<Vec<usize>>,
    /// Profiles just outside the hypotheses that are not forced.
    pub near_misses: Vec<Vec<usize>>,
    /// Free-form observations, one per line.
    pub notes: Vec<String>,
}

impl FactReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Every quotient with parts of order at most `m - 1` and `3m - 2 <= n' <= n_max`
/// forces a monochromatic `B_m`.
pub fn check_fact_4m_mono_chi(m: usize, n_max: usize) -> Result<FactReport, LemmaError> {
    if !(3..=5).contains(&m) {
        return Err(LemmaError::OutOfRange(format!("m must be in 3..=5, got {m}")));
    }
    if n_max < 3 * m - 2 {
        return Err(LemmaError::OutOfRange(format!("n_max must be at least {}", 3 * m - 2)));
    }
    let mut report = FactReport {
        name: "mono-quotient-small-parts".into(),
        m,
        profiles_checked: 0,
        counterexamples: Vec::new(),
        near_misses: Vec::new(),
        notes: Vec::new(),
    };
    for total in 3 * m - 2..=n_max {
        for_each_partition(total, m - 1, &mut |sizes| {
            if sizes.len() < 2 {
                return;
            }
            report.profiles_checked += 1;
            let p = PartProfile::new(sizes.to_vec());
            if !forced_book_in_mono_quotient(&p, m).expect("at least two parts") {
                report.counterexamples.push(sizes.to_vec());
            }
        });
    }
    // One vertex fewer is not enough: three parts of order m - 1.
    let boundary = PartProfile::new(vec![m - 1; 3]);
    if !forced_book_in_mono_quotient(&boundary, m)? {
        report.near_misses.push(boundary.sizes.clone());
        report.notes.push(format!("{:?} on {} vertices is not forced, so 3m-2 is tight", boundary.sizes, 3 * m - 3));
    }
    Ok(report)
}

/// Every monochromatic quotient with at least four parts and `9 <= n' <= n_max`
/// forces a monochromatic `B_5`.
pub fn check_fact_mono_chi(n_max: usize) -> Result<FactReport, LemmaError> {
    if n_max < 9 {
        return Err(LemmaError::OutOfRange(format!("n_max must be at least 9, got {n_max}")));
    }
    let m = 5;
    let mut report = FactReport {
        name: "mono-quotient-four-parts".into(),
        m,
        profiles_checked: 0,
        counterexamples: Vec::new(),
        near_misses: Vec::new(),
        notes: Vec::new(),
    };
    for total in 9..=n_max {
        for_each_partition(total, total, &mut |sizes| {
            if sizes.len() < 4 {
                return;
            }
            report.profiles_checked += 1;
            if !forced_book_in_mono_quotient(&PartProfile::new(sizes.to_vec()), m).expect("four parts") {
                report.counterexamples.push(sizes.to_vec());
            }
        });
    }
    for_each_partition(8, 8, &mut |sizes| {
        if sizes.len() >= 4 && !forced_book_in_mono_quotient(&PartProfile::new(sizes.to_vec()), m).unwrap() {
            report.near_misses.push(sizes.to_vec());
        }
    });
    let mut forced_three = 0;
    let mut three = 0;
    for total in 9..=n_max {
        for_each_partition(total, total, &mut |sizes| {
            if sizes.len() == 3 {
                three += 1;
                if forced_book_in_mono_quotient(&PartProfile::new(sizes.to_vec()), m).unwrap() {
                    forced_three += 1;
                }
            }
        });
    }
    report.notes.push(format!(
        "{forced_three} of {three} three-part profiles with 9 <= n' <= {n_max} are also forced; four parts is sufficient, not necessary"
    ));
    Ok(report)
}

/// `a + b <= 9` and `a + b + c <= 12`, where `a, b, c` count parts of order
/// 4, 3 and 2.
pub fn check_claim_57_bounds(profile: &PartProfile) -> Result<bool, LemmaError> {
    if profile.max_size() > 4 {
        return Err(LemmaError::OutOfRange(format!("parts must have order at most 4, found {}", profile.max_size())));
    }
    let c = profile.counters();
    Ok(c.a + c.b <= 9 && c.a + c.b + c.c <= 12)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarCheck {
    pub n: usize,
    pub star: Witness,
    /// `ceil(2n / 5)`.
    pub required: usize,
}

impl StarCheck {
    pub fn passed(&self) -> bool {
        self.star.size() >= self.required
    }

    /// The bound holds with equality: `2n/5` is attained exactly.
    pub fn tight(&self) -> bool {
        self.star.size() * 5 == 2 * self.n
    }
}

/// A Gallai coloring has a monochromatic star with at least `2n/5` leaves.
pub fn check_star_theorem(g: &EdgeColoring) -> Result<StarCheck, LemmaError> {
    if let Some(w) = find_rainbow_triangle(g) {
        return Err(LemmaError::PreconditionViolated(w.to_string()));
    }
    let n = g.n();
    Ok(StarCheck { n, star: max_mono_star(g), required: (2 * n).div_ceil(5) })
}
