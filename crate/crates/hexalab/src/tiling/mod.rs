//! Tilings of cyclic groups through the zero sets of discrete Fourier
//! transforms.
//!
//! Zero detection is exact: `F_A(t) = 0` iff the `d`-th cyclotomic
//! polynomial divides the mask polynomial of `A`, where `d = n / gcd(t, n)`.
//! Floats never decide anything here; [`dft_eval`] exists for display only.

pub mod cyclotomic;

use cyclotomic::{divisors, CyclotomicTable};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("residue {0} out of range for Z_{1}")]
    OutOfRange(u32, u32),
    #[error("modulus must be between 1 and 128")]
    BadModulus,
}

/// A subset of `Z_n`, stored as a bit mask (so `n <= 128`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSubset {
    n: u32,
    bits: u128,
}

impl std::fmt::Debug for CyclicSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}} mod {}", self.elements_string(), self.n)
    }
}

impl CyclicSubset {
    pub fn new(n: u32, elements: &[u32]) -> Result<Self, TilingError> {
        if n == 0 || n > 128 {
            return Err(TilingError::BadModulus);
        }
        let mut bits: u128 = 0;
        for &e in elements {
            if e >= n {
                return Err(TilingError::OutOfRange(e, n));
            }
            bits |= 1 << e;
        }
        Ok(CyclicSubset { n, bits })
    }

    pub(crate) fn from_bits(n: u32, bits: u128) -> Self {
        debug_assert!((1..=128).contains(&n));
        debug_assert!(bits >> (n - 1) >> 1 == 0);
        CyclicSubset { n, bits }
    }

    /// Builds a subset from a characteristic bit mask.
    pub fn from_mask(n: u32, bits: u128) -> Result<Self, TilingError> {
        if n == 0 || n > 128 {
            return Err(TilingError::BadModulus);
        }
        if bits >> (n - 1) >> 1 != 0 {
            return Err(TilingError::OutOfRange(128 - bits.leading_zeros() - 1, n));
        }
        Ok(CyclicSubset { n, bits })
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: u32) -> bool {
        e < self.n && self.bits >> e & 1 == 1
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.n).filter(|&e| self.contains(e)).collect()
    }

    pub fn elements_string(&self) -> String {
        self.elements()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// `A + c` in `Z_n`.
    pub fn translate(&self, c: u32) -> Self {
        let c = c % self.n;
        let mask = full_bits(self.n);
        let bits = ((self.bits << c) | (self.bits >> (self.n - c).min(127) >> u32::from(self.n - c > 127))) & mask;
        CyclicSubset { n: self.n, bits }
    }

    /// Mask polynomial `sum of x^k over k in A`, coefficients low first.
    fn mask_polynomial(&self) -> Vec<i64> {
        (0..self.n).map(|e| i64::from(self.contains(e))).collect()
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

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The zero set `Z_A` of the DFT of the characteristic function of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    n: u32,
    bits: u128,
}

impl ZeroSet {
    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn contains(&self, t: u32) -> bool {
        t < self.n && self.bits >> t & 1 == 1
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.n).filter(|&t| self.contains(t)).collect()
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }
}

/// Double-precision DFT value; diagnostic only, never used for decisions.
pub fn dft_eval(a: &CyclicSubset, t: u32) -> Complex64 {
    let n = a.n as f64;
    a.elements()
        .into_iter()
        .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 * t as f64 / n))
        .sum()
}

/// Exact zero set via cyclotomic divisibility: `F_A(t) = 0` iff
/// `Phi_{n/gcd(t, n)}` divides the mask polynomial of `A`.
pub fn zero_set(a: &CyclicSubset) -> ZeroSet {
    let n = a.n;
    if a.is_empty() {
        // the zero function vanishes everywhere, including t = 0
        return ZeroSet {
            n,
            bits: full_bits(n),
        };
    }
    let poly = a.mask_polynomial();
    let mut table = CyclotomicTable::new();
    let mut vanishing_orders = Vec::new();
    for d in divisors(n) {
        if d > 1 && table.divides(d, &poly) {
            vanishing_orders.push(d);
        }
    }
    let mut bits: u128 = 0;
    for t in 1..n {
        let d = n / gcd(t, n);
        if vanishing_orders.contains(&d) {
            bits |= 1 << t;
        }
    }
    ZeroSet { n, bits }
}

/// The tiling criterion: `A (+) B = Z_n` iff the two zero sets cover every
/// nonzero residue and the cardinalities multiply to `n`. Always agrees
/// with [`direct_sum_check`].
pub fn is_tiling_pair(a: &CyclicSubset, b: &CyclicSubset) -> Result<bool, TilingError> {
    if a.n != b.n {
        return Err(TilingError::ModulusMismatch(a.n, b.n));
    }
    if a.len() as u64 * b.len() as u64 != u64::from(a.n) {
        return Ok(false);
    }
    let za = zero_set(a);
    let zb = zero_set(b);
    let nonzero = full_bits(a.n) & !1;
    Ok((za.bits | zb.bits) & nonzero == nonzero)
}

/// Brute-force check that every residue is `a + b mod n` in exactly one way.
pub fn direct_sum_check(a: &CyclicSubset, b: &CyclicSubset) -> Result<bool, TilingError> {
    if a.n != b.n {
        return Err(TilingError::ModulusMismatch(a.n, b.n));
    }
    let mut covered: u128 = 0;
    for e in a.elements() {
        let shifted = rotl(b.bits, e, a.n);
        if covered & shifted != 0 {
            return Ok(false);
        }
        covered |= shifted;
    }
    Ok(covered == full_bits(a.n))
}

/// All complements `B` with `A (+) B = Z_n`, translation-normalized to
/// contain 0 unless `normalize_zero` is false (then the full orbit).
/// A cardinality obstruction yields the empty list.
pub fn find_complements(a: &CyclicSubset, normalize_zero: bool) -> Vec<CyclicSubset> {
    let mut out = Vec::new();
    for_each_complement(a, normalize_zero, |b| {
        out.push(b);
        true
    });
    out
}

/// First complement accepted by `pred`, searching in lexicographic order.
pub fn find_complement_where(
    a: &CyclicSubset,
    normalize_zero: bool,
    mut pred: impl FnMut(&CyclicSubset) -> bool,
) -> Option<CyclicSubset> {
    let mut found = None;
    for_each_complement(a, normalize_zero, |b| {
        if pred(&b) {
            found = Some(b);
            false
        } else {
            true
        }
    });
    found
}

/// Exact-cover backtracking over translates of `A`. The callback returns
/// `false` to stop the enumeration.
fn for_each_complement(
    a: &CyclicSubset,
    normalize_zero: bool,
    mut visit: impl FnMut(CyclicSubset) -> bool,
) {
    let n = a.n;
    if a.is_empty() || a.is_empty() || !n.is_multiple_of(a.len()) {
        return;
    }
    let full = full_bits(n);
    let translates: Vec<u128> = (0..n).map(|c| rotl(a.bits, c, n)).collect();
    let target = n / a.len();
    let mut chosen: Vec<u32> = Vec::with_capacity(target as usize);
    let covered: u128 = if normalize_zero { translates[0] } else { 0 };
    if normalize_zero {
        chosen.push(0);
    }
    recurse(
        n,
        full,
        &translates,
        target,
        &mut chosen,
        covered,
        &mut visit,
    );

    fn recurse(
        n: u32,
        full: u128,
        translates: &[u128],
        target: u32,
        chosen: &mut Vec<u32>,
        covered: u128,
        visit: &mut impl FnMut(CyclicSubset) -> bool,
    ) -> bool {
        if chosen.len() as u32 == target {
            if covered == full {
                let mut bits: u128 = 0;
                for &c in chosen.iter() {
                    bits |= 1 << c;
                }
                return visit(CyclicSubset::from_bits(n, bits));
            }
            return true;
        }
        // cover the smallest uncovered residue: the next element of B must
        // be that residue minus an element of A. Each complement is built
        // along exactly one path, since the element covering a given
        // residue is unique within a complement.
        let uncovered = (!covered & full).trailing_zeros();
        if uncovered >= n {
            return true;
        }
        for b in 0..n {
            let shifted = translates[b as usize];
            if shifted >> uncovered & 1 == 0 || covered & shifted != 0 {
                continue;
            }
            chosen.push(b);
            if !recurse(n, full, translates, target, chosen, covered | shifted, visit) {
                return false;
            }
            chosen.pop();
        }
        true
    }
}

/// Smallest period `0 < p < n` with `A + p = A`, or `None` when aperiodic.
pub fn is_periodic(a: &CyclicSubset) -> Option<u32> {
    (1..a.n).find(|&p| rotl(a.bits, p, a.n) == a.bits)
}

/// A tiling pair whose two factors are both aperiodic.
pub fn is_vuza_pair(a: &CyclicSubset, b: &CyclicSubset) -> Result<bool, TilingError> {
    Ok(is_tiling_pair(a, b)? && is_periodic(a).is_none() && is_periodic(b).is_none())
}

/// A spectrum of `A` in `Z_n`: a set of `|A|` residues containing 0 whose
/// pairwise differences all lie in the zero set of `F_A`. Clique search,
/// smallest-first, deterministic.
pub fn find_spectrum(a: &CyclicSubset) -> Option<CyclicSubset> {
    let n = a.n;
    let k = a.len();
    if k == 0 {
        return Some(CyclicSubset::from_bits(n, 0));
    }
    let za = zero_set(a);
    // edges: s ~ t iff s - t lies in the zero set (symmetric since the zero
    // set is closed under negation)
    let neighbor_bits: Vec<u128> = (0..n).map(|t| rotl(za.bits, t, n)).collect();
    let mut chosen = vec![0u32];
    let candidates = neighbor_bits[0];
    fn grow(
        n: u32,
        k: u32,
        neighbor_bits: &[u128],
        chosen: &mut Vec<u32>,
        candidates: u128,
    ) -> bool {
        if chosen.len() as u32 == k {
            return true;
        }
        let needed = k - chosen.len() as u32;
        if candidates.count_ones() < needed {
            return false;
        }
        let floor = chosen.last().copied().unwrap_or(0);
        for t in (floor + 1)..n {
            if candidates >> t & 1 == 0 {
                continue;
            }
            chosen.push(t);
            if grow(n, k, neighbor_bits, chosen, candidates & neighbor_bits[t as usize]) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if grow(n, k, &neighbor_bits, &mut chosen, candidates) {
        let mut bits: u128 = 0;
        for &t in &chosen {
            bits |= 1 << t;
        }
        Some(CyclicSubset::from_bits(n, bits))
    } else {
        None
    }
}

/// Progress callback data for [`vuza_search`].
pub struct VuzaProgress {
    pub candidates_tried: u64,
    pub current_first: Vec<u32>,
}

/// Scans aperiodic subsets of size `size_a` containing 0 in lexicographic
/// order, looking for one with an aperiodic tiling complement. Long-running
/// at `n = 72`; `max_candidates` bounds the scan.
pub fn vuza_search(
    n: u32,
    size_a: u32,
    max_candidates: u64,
    mut progress: impl FnMut(&VuzaProgress),
) -> Option<(CyclicSubset, CyclicSubset)> {
    if size_a == 0 || !n.is_multiple_of(size_a) {
        return None;
    }
    let mut tried = 0u64;
    let mut found = None;
    // combinations of {1..n-1} of size size_a - 1, lexicographic
    let k = (size_a - 1) as usize;
    let mut comb: Vec<u32> = (1..=k as u32).collect();
    loop {
        let mut bits: u128 = 1;
        for &e in &comb {
            bits |= 1 << e;
        }
        let a = CyclicSubset::from_bits(n, bits);
        tried += 1;
        if tried.is_multiple_of(100_000) {
            progress(&VuzaProgress {
                candidates_tried: tried,
                current_first: a.elements(),
            });
        }
        if is_periodic(&a).is_none() {
            if let Some(b) =
                find_complement_where(&a, true, |b| is_periodic(b).is_none())
            {
                found = Some((a, b));
                break;
            }
        }
        if tried >= max_candidates || !next_combination(&mut comb, n - 1) {
            break;
        }
    }
    found
}

/// Advances a sorted combination drawn from `1..=max`; false when done.
fn next_combination(comb: &mut [u32], max: u32) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < max - (k - 1 - i) as u32 {
            comb[i] += 1;
            for j in (i + 1)..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
