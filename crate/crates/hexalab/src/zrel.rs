//! Interval content of subsets of `Z_n`, dihedral canonical forms, and the
//! enumeration of homometry classes, including the quarter-tone search at
//! `n = 24, k = 12`.
//!
//! Enumeration walks bit-mask combinations; interval counting is
//! rotate-and-intersect popcounts, so the 2.7 million 12-subsets of `Z_24`
//! go through in seconds. Classes are keyed by the full exact interval
//! vector, never by a hash alone.

use crate::tiling::CyclicSubset;
use rand_core::Rng;
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZrelError {
    #[error("C({n}, {k}) = {needed} subsets exceeds the budget of {budget}")]
    BudgetExceeded {
        n: u32,
        k: u32,
        needed: u128,
        budget: u128,
    },
    #[error("k = {k} exceeds n = {n}")]
    BadArity { n: u32, k: u32 },
}

/// Counts of pairwise circular intervals `1..=n/2` of a subset of `Z_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalVector {
    n: u32,
    counts: Vec<u32>,
}

impl IntervalVector {
    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Count of interval `i`, for `1 <= i <= n/2`.
    pub fn count(&self, interval: u32) -> u32 {
        self.counts[interval as usize - 1]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn to_string_dotted(&self) -> String {
        self.counts
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

fn full_bits(n: u32) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn rotl(bits: u128, by: u32, n: u32) -> u128 {
    let by = by % n;
    if by == 0 {
        return bits & full_bits(n);
    }
    ((bits << by) | (bits >> (n - by))) & full_bits(n)
}

/// Reflection `e -> -e mod n` of a subset mask.
fn reflect(bits: u128, n: u32) -> u128 {
    let mut out: u128 = 0;
    for e in 0..n {
        if bits >> e & 1 == 1 {
            out |= 1 << ((n - e) % n);
        }
    }
    out
}

fn interval_counts_of_bits(bits: u128, n: u32) -> Vec<u32> {
    let half = (n / 2) as usize;
    let mut counts = vec![0u32; half];
    for i in 1..=half as u32 {
        let c = (bits & rotl(bits, i, n)).count_ones();
        counts[i as usize - 1] = if 2 * i == n { c / 2 } else { c };
    }
    counts
}

/// Multiset of circular intervals `min(d, n - d)` over unordered pairs.
pub fn interval_content(a: &CyclicSubset) -> IntervalVector {
    let n = a.modulus();
    IntervalVector {
        n,
        counts: interval_counts_of_bits(a.bits(), n),
    }
}

/// Canonical representative of the orbit of `A` under the `2n` dihedral
/// transformations: the image whose bit mask is numerically smallest.
pub fn ti_canonical(a: &CyclicSubset) -> CyclicSubset {
    let n = a.modulus();
    CyclicSubset::from_bits(n, canonical_bits(a.bits(), n))
}

fn canonical_bits(bits: u128, n: u32) -> u128 {
    let reflected = reflect(bits, n);
    let mut best = u128::MAX;
    for r in 0..n {
        best = best.min(rotl(bits, r, n));
        best = best.min(rotl(reflected, r, n));
    }
    if bits == 0 {
        0
    } else {
        best
    }
}

/// The complement identity behind the generalized hexachordal statement:
/// `ivec(A^c) - ivec(A)` depends only on `(n, |A|)`; for half-size subsets
/// it is the zero vector. Checks every `(n/2)`-subset exhaustively.
pub fn complement_homometry_check(n: u32) -> Result<bool, ZrelError> {
    assert!(n.is_multiple_of(2), "complement check needs an even modulus");
    let k = n / 2;
    let needed = binomial(n, k);
    if needed > 10_000_000 {
        return Err(ZrelError::BudgetExceeded {
            n,
            k,
            needed,
            budget: 10_000_000,
        });
    }
    let full = full_bits(n);
    let mut bits = full_bits(k);
    loop {
        let complement = full & !bits;
        if interval_counts_of_bits(bits, n) != interval_counts_of_bits(complement, n) {
            return Ok(false);
        }
        match next_subset_bits(bits, n) {
            Some(next) => bits = next,
            None => break,
        }
    }
    Ok(true)
}

/// Sampled version of [`complement_homometry_check`] for larger moduli.
pub fn complement_homometry_sampled(n: u32, samples: usize, seed: u64) -> bool {
    use rand_core::SeedableRng;
    assert!(n.is_multiple_of(2));
    let k = n / 2;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let full = full_bits(n);
    for _ in 0..samples {
        // uniform k-subset by index shuffle
        let mut elements: Vec<u32> = (0..n).collect();
        for i in (1..n as usize).rev() {
            let j = (rng.next_u64() % (i as u64 + 1)) as usize;
            elements.swap(i, j);
        }
        let mut bits: u128 = 0;
        for &e in elements.iter().take(k as usize) {
            bits |= 1 << e;
        }
        let complement = full & !bits;
        if interval_counts_of_bits(bits, n) != interval_counts_of_bits(complement, n) {
            return false;
        }
    }
    true
}

/// Gosper's hack: next bit mask with the same popcount, within `n` bits.
fn next_subset_bits(bits: u128, n: u32) -> Option<u128> {
    if bits == 0 {
        return None;
    }
    let c = bits & bits.wrapping_neg();
    let r = bits + c;
    if r >> n != 0 || r == 0 {
        return None;
    }
    let next = (((r ^ bits) >> 2) / c) | r;
    if next >> n != 0 {
        None
    } else {
        Some(next)
    }
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * u128::from(n - i) / u128::from(i + 1);
    }
    result
}

/// One homometry class: the shared interval vector and the dihedral-class
/// representatives realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomometryClass {
    pub interval_vector: IntervalVector,
    /// Canonical (dihedral-minimal) representatives, sorted by mask.
    pub representatives: Vec<CyclicSubset>,
}

impl HomometryClass {
    /// Number of dihedral classes sharing the vector; a Z-related pair has
    /// size 2.
    pub fn size(&self) -> usize {
        self.representatives.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomometryClassReport {
    pub n: u32,
    pub k: u32,
    /// Sorted by interval vector.
    pub classes: Vec<HomometryClass>,
    /// class size -> number of classes with that size.
    pub histogram: BTreeMap<usize, usize>,
}

impl HomometryClassReport {
    pub fn total_dihedral_classes(&self) -> usize {
        self.classes.iter().map(HomometryClass::size).sum()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(HomometryClass::size).max().unwrap_or(0)
    }

    pub fn classes_of_size(&self, size: usize) -> usize {
        self.histogram.get(&size).copied().unwrap_or(0)
    }
}

pub const DEFAULT_SUBSET_BUDGET: u128 = 5_000_000;

/// Groups the dihedral classes of all `k`-subsets of `Z_n` by interval
/// vector. `budget` caps `C(n, k)`; pass a larger budget to force bigger
/// enumerations.
pub fn homometry_classes(
    n: u32,
    k: u32,
    budget: Option<u128>,
) -> Result<HomometryClassReport, ZrelError> {
    if k > n {
        return Err(ZrelError::BadArity { n, k });
    }
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    let needed = binomial(n, k);
    if needed > budget {
        return Err(ZrelError::BudgetExceeded {
            n,
            k,
            needed,
            budget,
        });
    }

    // collect canonical forms of all k-subsets, one parallel chunk per
    // minimum element: masks with minimum `lead` are `1 << lead` joined
    // with a (k-1)-subset of the bits above it
    let canonicals: HashSet<u128> = if k == 0 {
        HashSet::from([0u128])
    } else {
        (0..=(n - k))
            .into_par_iter()
            .map(|lead| {
                let mut seen = HashSet::new();
                let rest = k - 1;
                let width = n - lead - 1;
                if rest == 0 {
                    seen.insert(canonical_bits(1 << lead, n));
                    return seen;
                }
                let mut upper = full_bits(rest);
                loop {
                    let mask = (1 << lead) | (upper << (lead + 1));
                    seen.insert(canonical_bits(mask, n));
                    match next_subset_bits(upper, width) {
                        Some(next) => upper = next,
                        None => break,
                    }
                }
                seen
            })
            .reduce(HashSet::new, |mut a, b| {
                a.extend(b);
                a
            })
    };

    // group classes by exact interval vector
    let mut by_vector: HashMap<Vec<u32>, Vec<u128>> = HashMap::new();
    for &mask in &canonicals {
        by_vector
            .entry(interval_counts_of_bits(mask, n))
            .or_default()
            .push(mask);
    }
    let mut classes: Vec<HomometryClass> = by_vector
        .into_iter()
        .map(|(counts, mut masks)| {
            masks.sort_unstable();
            HomometryClass {
                interval_vector: IntervalVector { n, counts },
                representatives: masks
                    .into_iter()
                    .map(|m| CyclicSubset::from_bits(n, m))
                    .collect(),
            }
        })
        .collect();
    classes.sort_by(|a, b| a.interval_vector.cmp(&b.interval_vector));
    let mut histogram = BTreeMap::new();
    for class in &classes {
        *histogram.entry(class.size()).or_insert(0) += 1;
    }
    Ok(HomometryClassReport {
        n,
        k,
        classes,
        histogram,
    })
}

/// CSV report of the classes of size at least `min_size`:
/// `interval_vector,class_size,representatives`.
pub fn z_tuple_report(report: &HomometryClassReport, min_size: usize) -> String {
    let mut out = String::from("interval_vector,class_size,representatives\n");
    for class in &report.classes {
        if class.size() < min_size {
            continue;
        }
        let reps: Vec<String> = class
            .representatives
            .iter()
            .map(|r| {
                r.elements()
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            })
            .collect();
        out.push_str(&format!(
            "{},{},{}\n",
            class.interval_vector.to_string_dotted(),
            class.size(),
            reps.join(" ")
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(n: u32, elements: &[u32]) -> CyclicSubset {
        CyclicSubset::new(n, elements).unwrap()
    }

    #[test]
    fn all_interval_tetrachord() {
        let ivec = interval_content(&subset(12, &[0, 1, 4, 6]));
        assert_eq!(ivec.counts(), &[1, 1, 1, 1, 1, 1]);
        assert_eq!(ivec.total(), 6);
    }

    #[test]
    fn degenerate_interval_vectors() {
        assert_eq!(interval_content(&subset(12, &[])).total(), 0);
        assert_eq!(interval_content(&subset(12, &[5])).total(), 0);
        let full = subset(12, &(0..12).collect::<Vec<_>>());
        assert_eq!(
            interval_content(&full).counts(),
            &[12, 12, 12, 12, 12, 6]
        );
    }

    #[test]
    fn canonical_forms() {
        let a = subset(12, &[3, 4, 7, 9]);
        let b = subset(12, &[0, 1, 4, 6]);
        assert_eq!(ti_canonical(&a), ti_canonical(&b));
        let aug = subset(12, &[0, 4, 8]);
        assert_eq!(ti_canonical(&aug), aug);
        // inversion lands in the same class
        let inv = subset(12, &[0, 11, 8, 6]);
        assert_eq!(ti_canonical(&inv), ti_canonical(&b));
    }

    #[test]
    fn dihedral_invariance_of_interval_content() {
        let a = subset(12, &[0, 2, 3, 7]);
        let base = interval_content(&a);
        for r in 0..12 {
            assert_eq!(interval_content(&a.translate(r)), base);
        }
        let reflected = CyclicSubset::from_bits(12, reflect(a.bits(), 12));
        assert_eq!(interval_content(&reflected), base);
    }

    #[test]
    fn babbitt_identity_small_moduli() {
        assert!(complement_homometry_check(2).unwrap());
        assert!(complement_homometry_check(8).unwrap());
        assert!(complement_homometry_check(12).unwrap());
    }

    #[test]
    fn complement_difference_depends_only_on_sizes() {
        // |A| = k: ivec(A^c) - ivec(A) = n - 2k at intervals < n/2,
        // (n - 2k)/2 at n/2.
        let n = 10u32;
        for a in [
            subset(n, &[0, 1, 2]),
            subset(n, &[0, 4, 7]),
            subset(n, &[1, 5, 9]),
        ] {
            let complement = CyclicSubset::from_bits(n, full_bits(n) & !a.bits());
            let iv_a = interval_content(&a);
            let iv_c = interval_content(&complement);
            for i in 1..n / 2 {
                assert_eq!(iv_c.count(i) as i64 - iv_a.count(i) as i64, 4);
            }
            assert_eq!(iv_c.count(5) as i64 - iv_a.count(5) as i64, 2);
        }
    }

    #[test]
    fn quarter_tone_sampled_complements() {
        assert!(complement_homometry_sampled(24, 2_000, 99));
    }

    #[test]
    fn tetrachord_classes_of_the_semitone_universe() {
        let report = homometry_classes(12, 4, None).unwrap();
        // exactly one pair of Z-related tetrachord classes
        assert_eq!(report.classes_of_size(2), 1);
        assert_eq!(report.max_class_size(), 2);
        let pair = report
            .classes
            .iter()
            .find(|c| c.size() == 2)
            .expect("the all-interval pair");
        let masks: Vec<_> = pair.representatives.iter().map(|r| r.elements()).collect();
        assert!(masks.contains(&vec![0, 1, 4, 6]));
        assert!(masks.contains(&vec![0, 1, 3, 7]));
    }

    #[test]
    fn hexachord_classes_of_the_semitone_universe() {
        let report = homometry_classes(12, 6, None).unwrap();
        // the classical taxonomy: 50 dihedral classes, 15 Z-related pairs
        assert_eq!(report.total_dihedral_classes(), 50);
        assert_eq!(report.classes_of_size(2), 15);
        assert_eq!(report.classes_of_size(1), 20);
        assert_eq!(report.max_class_size(), 2);
        // every hexachord shares its complement's class
        for class in &report.classes {
            for rep in &class.representatives {
                let complement =
                    CyclicSubset::from_bits(12, full_bits(12) & !rep.bits());
                let canonical = ti_canonical(&complement);
                assert!(
                    class.representatives.contains(&canonical),
                    "complement of {rep:?} left its class"
                );
            }
        }
    }

    #[test]
    fn partition_property() {
        let report = homometry_classes(8, 3, None).unwrap();
        // independent count of dihedral classes by direct orbit enumeration
        let mut canonicals = HashSet::new();
        let mut bits = full_bits(3);
        loop {
            canonicals.insert(canonical_bits(bits, 8));
            match next_subset_bits(bits, 8) {
                Some(next) => bits = next,
                None => break,
            }
        }
        assert_eq!(report.total_dihedral_classes(), canonicals.len());
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            homometry_classes(30, 15, Some(1000)),
            Err(ZrelError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn report_csv_for_tetrachords() {
        let report = homometry_classes(12, 4, None).unwrap();
        let csv = z_tuple_report(&report, 2);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "interval_vector,class_size,representatives"
        );
        assert_eq!(lines.next().unwrap(), "1.1.1.1.1.1,2,0-1-4-6 0-1-3-7");
        assert!(lines.next().is_none());
    }

    #[test]
    fn octatonic_z_pair_emerges_from_computation() {
        let report = homometry_classes(8, 4, None).unwrap();
        let a = interval_content(&subset(8, &[0, 1, 2, 5]));
        let b = interval_content(&subset(8, &[0, 1, 3, 4]));
        assert_eq!(a, b);
        let class = report
            .classes
            .iter()
            .find(|c| c.interval_vector == a)
            .unwrap();
        assert!(class.size() >= 2);
    }
}
