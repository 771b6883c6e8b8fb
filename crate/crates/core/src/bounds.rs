//! Closed-form Ramsey and Gallai-Ramsey quantities for books.
//!
//! Everything here is exact integer arithmetic with overflow checks. Values
//! that depend on `R(B_m, B_m)` fail for `m >= 6` instead of extrapolating.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("R(B_{0}, B_{0}) is not known to this table")]
    UnknownRamseyValue(usize),
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

/// Where a tabulated Ramsey value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// `R(K_3, K_3) = 6`, since `B_1 = K_3`.
    Classical,
    /// Published exact value for two-colored books.
    Published,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyEntry {
    pub pages: usize,
    pub value: u64,
    pub provenance: Provenance,
}

/// Exact diagonal book Ramsey numbers `R_m = R(B_m, B_m)` for `m = 1..=5`.
pub const RAMSEY_TABLE: [RamseyEntry; 5] = [
    RamseyEntry { pages: 1, value: 6, provenance: Provenance::Classical },
    RamseyEntry { pages: 2, value: 10, provenance: Provenance::Published },
    RamseyEntry { pages: 3, value: 14, provenance: Provenance::Published },
    RamseyEntry { pages: 4, value: 18, provenance: Provenance::Published },
    RamseyEntry { pages: 5, value: 21, provenance: Provenance::Published },
];

/// Off-diagonal value `R(B_1, B_2) = R(K_3, K_4 - e)`, kept as metadata only.
pub const R_B1_B2: RamseyEntry = RamseyEntry { pages: 0, value: 7, provenance: Provenance::Published };

/// `R(B_m, B_m)`.
pub fn ramsey(m: usize) -> Result<u64, BoundsError> {
    RAMSEY_TABLE.iter().find(|e| e.pages == m).map(|e| e.value).ok_or(BoundsError::UnknownRamseyValue(m))
}

fn pow5(e: u32, what: &'static str) -> Result<u64, BoundsError> {
    5u64.checked_pow(e).ok_or(BoundsError::Overflow(what))
}

/// `5^{(k-2)/2}` scaled base for even `k`, `2 * 5^{(k-3)/2}` for odd `k >= 3`.
fn color_multiplier(k: usize, what: &'static str) -> Result<u64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::OutOfRange(format!("{what}: k = {k} < 2")));
    }
    let e = u32::try_from((k - 2) / 2).map_err(|_| BoundsError::Overflow(what))?;
    let p = pow5(e, what)?;
    if k.is_multiple_of(2) {
        Ok(p)
    } else {
        p.checked_mul(2).ok_or(BoundsError::Overflow(what))
    }
}

fn subtract_inadmissible(base: u64, m: usize, ell: usize, what: &'static str) -> Result<u64, BoundsError> {
    let penalty = (m as u64 - 1).checked_mul(ell as u64).ok_or(BoundsError::Overflow(what))?;
    base.checked_sub(penalty).ok_or_else(|| BoundsError::OutOfRange(format!("{what}: value would be negative")))
}

fn single_color_bound(m: usize, ell: usize, what: &'static str) -> Result<u64, BoundsError> {
    (m as u64 + 2)
        .checked_sub(ell as u64)
        .ok_or_else(|| BoundsError::OutOfRange(format!("{what}: value would be negative")))
}

/// `R'_m = sum_{i=1}^{m-1} (R_{ceil(m/i)} - 1)`.
pub fn r_prime(m: usize) -> Result<u64, BoundsError> {
    if m < 2 {
        return Err(BoundsError::OutOfRange(format!("r_prime needs m >= 2, got {m}")));
    }
    (1..m).try_fold(0u64, |acc, i| {
        let r = ramsey(m.div_ceil(i))?;
        acc.checked_add(r - 1).ok_or(BoundsError::Overflow("r_prime"))
    })
}

/// Order of the blow-up witness plus one: the Gallai-Ramsey lower bound.
pub fn gr_lower(k: usize, m: usize) -> Result<u64, BoundsError> {
    let base = ramsey(m)? - 1;
    base.checked_mul(color_multiplier(k, "gr_lower")?)
        .and_then(|v| v.checked_add(1))
        .ok_or(BoundsError::Overflow("gr_lower"))
}

/// Order of the witness coloring itself (`gr_lower - 1`).
pub fn witness_order(k: usize, m: usize) -> Result<u64, BoundsError> {
    Ok(gr_lower(k, m)? - 1)
}

fn check_ell(k: usize, ell: usize) -> Result<(), BoundsError> {
    if ell > k {
        return Err(BoundsError::OutOfRange(format!("ell = {ell} exceeds k = {k}")));
    }
    Ok(())
}

/// The general upper bound with `ell` inadmissible colors, `m >= 3`.
pub fn gr_upper_general(k: usize, ell: usize, m: usize) -> Result<u64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::OutOfRange("k must be positive".into()));
    }
    if m < 3 {
        return Err(BoundsError::OutOfRange(format!("general upper bound needs m >= 3, got {m}")));
    }
    check_ell(k, ell)?;
    if k == 1 {
        return single_color_bound(m, ell, "gr_upper_general");
    }
    let base = r_prime(m)?
        .checked_mul(color_multiplier(k, "gr_upper_general")?)
        .and_then(|v| v.checked_add(1))
        .ok_or(BoundsError::Overflow("gr_upper_general"))?;
    subtract_inadmissible(base, m, ell, "gr_upper_general")
}

/// The `k = 1, ell = 1` row evaluates `m + 2 - ell` verbatim but has no
/// combinatorial reading: the single color is then inadmissible everywhere.
pub fn upper_is_formula_only(k: usize, ell: usize) -> bool {
    k == 1 && ell == 1
}

/// The sharp small-book value with `ell` inadmissible colors, `m` in `2..=5`.
pub fn gr_small(k: usize, ell: usize, m: usize) -> Result<u64, BoundsError> {
    if k == 0 {
        return Err(BoundsError::OutOfRange("k must be positive".into()));
    }
    if !(2..=5).contains(&m) {
        return Err(BoundsError::OutOfRange(format!("gr_small needs 2 <= m <= 5, got {m}")));
    }
    check_ell(k, ell)?;
    if k == 1 {
        return single_color_bound(m, ell, "gr_small");
    }
    subtract_inadmissible(gr_lower(k, m)?, m, ell, "gr_small")
}

/// Size bound when only one color is m-admissible.
pub fn lemma_1admissible_bound(k: usize, m: usize) -> u64 {
    let m = m as u64;
    if k == 2 {
        3 * m - 1
    } else {
        5 * m - 5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueStatus {
    /// Matching upper bound is established for these parameters.
    Proven,
    /// Only the lower bound is established.
    Conjectural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureValue {
    pub value: u64,
    pub status: ValueStatus,
}

/// The conjectured exact Gallai-Ramsey number for books, which coincides with
/// the lower bound.
pub fn conjecture_value(k: usize, m: usize) -> Result<ConjectureValue, BoundsError> {
    let value = gr_lower(k, m)?;
    let status = if m <= 5 { ValueStatus::Proven } else { ValueStatus::Conjectural };
    Ok(ConjectureValue { value, status })
}

/// Part sizes of a Gallai partition together with the counters used in the
/// case analyses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartProfile {
    /// Non-increasing.
    pub sizes: Vec<usize>,
}

/// Counts of parts of order 4, 3, 2 and 1, with parts above 4 tallied apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCounters {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub larger: usize,
}

impl PartProfile {
    pub fn new(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Self { sizes }
    }

    /// Profile with `a` parts of order 4, `b` of 3, `c` of 2 and `d` of 1.
    pub fn from_counters(a: usize, b: usize, c: usize, d: usize) -> Self {
        let mut sizes = vec![4; a];
        sizes.extend(std::iter::repeat_n(3, b));
        sizes.extend(std::iter::repeat_n(2, c));
        sizes.extend(std::iter::repeat_n(1, d));
        Self { sizes }
    }

    pub fn t(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of parts of order at least `m`.
    pub fn r(&self, m: usize) -> usize {
        self.sizes.iter().filter(|&&s| s >= m).count()
    }

    pub fn counters(&self) -> SizeCounters {
        let count = |x: usize| self.sizes.iter().filter(|&&s| s == x).count();
        SizeCounters {
            a: count(4),
            b: count(3),
            c: count(2),
            d: count(1),
            larger: self.sizes.iter().filter(|&&s| s > 4).count(),
        }
    }

    pub fn max_size(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }
}

/// Largest total order of a profile with all parts below `m` such that, for
/// each `i`, at most `R_{ceil(m/i)} - 1` parts have order at least `i`.
///
/// The caps are non-increasing in `i`, so filling the largest sizes first is
/// optimal.
pub fn profile_max_vertices(m: usize) -> Result<(u64, PartProfile), BoundsError> {
    if m < 2 {
        return Err(BoundsError::OutOfRange(format!("profile_max_vertices needs m >= 2, got {m}")));
    }
    let caps = (1..m).map(|i| ramsey(m.div_ceil(i)).map(|r| (r - 1) as usize)).collect::<Result<Vec<_>, _>>()?;
    let mut sizes = Vec::new();
    for size in (1..m).rev() {
        let cap = caps[..size].iter().copied().min().unwrap_or(0);
        while sizes.len() < cap {
            sizes.push(size);
        }
    }
    let profile = PartProfile::new(sizes);
    Ok((profile.total() as u64, profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramsey_table() {
        assert_eq!((1..=5).map(|m| ramsey(m).unwrap()).collect::<Vec<_>>(), vec![6, 10, 14, 18, 21]);
        assert_eq!(ramsey(6), Err(BoundsError::UnknownRamseyValue(6)));
        assert_eq!(R_B1_B2.value, 7);
    }

    #[test]
    fn r_prime_values() {
        assert_eq!(r_prime(2).unwrap(), 9);
        assert_eq!(r_prime(3).unwrap(), 22);
        assert_eq!(r_prime(4).unwrap(), 35);
        assert_eq!(r_prime(5).unwrap(), 51);
        assert_eq!(r_prime(6), Err(BoundsError::UnknownRamseyValue(6)));
    }

    #[test]
    fn lower_bound_values() {
        for m in 1..=5 {
            assert_eq!(gr_lower(2, m).unwrap(), ramsey(m).unwrap());
        }
        assert_eq!(gr_lower(3, 2).unwrap(), 19);
        assert_eq!(gr_lower(4, 3).unwrap(), 66);
        // The m = 1 column is the triangle sequence 5^{k/2}+1, 2*5^{(k-1)/2}+1.
        assert_eq!((2..=7).map(|k| gr_lower(k, 1).unwrap()).collect::<Vec<_>>(), vec![6, 11, 26, 51, 126, 251]);
        assert!(matches!(gr_lower(200, 2), Err(BoundsError::Overflow(_))));
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(gr_upper_general(2, 0, 3).unwrap(), 23);
        assert_eq!(gr_upper_general(2, 2, 3).unwrap(), 19);
        assert_eq!(gr_upper_general(2, 2, 4).unwrap(), 30);
        assert_eq!(gr_upper_general(1, 0, 4).unwrap(), 6);
        assert_eq!(gr_upper_general(3, 0, 5).unwrap(), 103);
        assert!(upper_is_formula_only(1, 1));
        assert!(gr_upper_general(2, 3, 3).is_err());
        assert!(gr_upper_general(2, 0, 2).is_err());
    }

    #[test]
    fn small_values() {
        assert_eq!(gr_small(2, 0, 5).unwrap(), 21);
        assert_eq!(gr_small(3, 0, 4).unwrap(), 35);
        assert_eq!(gr_small(1, 0, 3).unwrap(), 5);
        // Values listed for the no-admissible-color step of the small case.
        assert_eq!((2..=5).map(|m| gr_small(3, 2, m).unwrap()).collect::<Vec<_>>(), vec![17, 23, 29, 33]);
        assert!(gr_small(2, 0, 6).is_err());
    }

    #[test]
    fn admissible_lemma() {
        assert_eq!(lemma_1admissible_bound(2, 4), 11);
        assert_eq!(lemma_1admissible_bound(3, 5), 20);
        assert_eq!(lemma_1admissible_bound(2, 2), 5);
    }

    #[test]
    fn conjecture() {
        for k in 2..=8 {
            for m in 2..=5 {
                let c = conjecture_value(k, m).unwrap();
                assert_eq!(c.value, gr_lower(k, m).unwrap());
                assert_eq!(c.value, gr_small(k, 0, m).unwrap());
                assert_eq!(c.status, ValueStatus::Proven);
            }
        }
        assert!(conjecture_value(2, 6).is_err());
    }

    #[test]
    fn profiles() {
        let p = PartProfile::new(vec![1, 4, 3, 4]);
        assert_eq!(p.sizes, vec![4, 4, 3, 1]);
        assert_eq!((p.t(), p.r(5)), (4, 0));
        assert_eq!(p.counters(), SizeCounters { a: 2, b: 1, c: 0, d: 1, larger: 0 });
        assert_eq!(PartProfile::new(vec![9, 9]).r(2), 2);
        assert_eq!(PartProfile::new(vec![3, 3, 3, 2, 2]).r(3), 3);
        assert_eq!(PartProfile::from_counters(1, 0, 2, 1).sizes, vec![4, 2, 2, 1]);
    }

    #[test]
    fn greedy_profiles() {
        let (v, p) = profile_max_vertices(3).unwrap();
        assert_eq!(v, 22);
        assert_eq!(p.sizes, [vec![2; 9], vec![1; 4]].concat());
        let (v, p) = profile_max_vertices(5).unwrap();
        assert_eq!(v, 51);
        assert_eq!(p.sizes, [vec![4; 9], vec![2; 4], vec![1; 7]].concat());
        let (v, p) = profile_max_vertices(2).unwrap();
        assert_eq!((v, p.sizes), (9, vec![1; 9]));
    }
}
