//! Abstract interval-function spaces `(X, f, mu)`: a finite value table over
//! a point set with a rational measure, and the decision procedures for
//! pairwise independence and the two balanced-decomposition properties.
//!
//! The quantifier over all balanced decompositions reduces to a finite
//! kernel-constancy criterion: writing the two halves of a decomposition as
//! `mu +- alpha`, the quadratic terms cancel from the difference of the two
//! interval distributions, so the difference is exactly linear in the
//! perturbations. Vanishing against every admissible perturbation is
//! equivalent to constancy of the corresponding kernel on the support of
//! `mu`. [`sample_decomposition_oracle`] independently cross-checks the
//! criterion by drawing random decompositions and comparing the exact
//! distributions.

use crate::group::Group;
use crate::rational::{format_q, Q};
use crate::space::{Space, SubsetMask};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand_core::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("subset has zero measure")]
    ZeroMeasure,
    #[error("the map is not an involution (fails at symbol {0})")]
    NotInvolution(usize),
    #[error("the table is not a Latin square")]
    NotLatin,
    #[error("no two-sided identity: first row and column must repeat the headers")]
    NoIdentity,
}

/// A finite value table `f: X x X -> M` with a rational measure on `X`.
/// Symmetry of `f` is not required.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalTable {
    labels: Vec<String>,
    weights: Vec<Q>,
    alphabet: Vec<String>,
    /// Row-major n*n indices into `alphabet`.
    values: Vec<u32>,
}

impl IntervalTable {
    pub fn from_symbols(
        labels: Vec<String>,
        rows: &[Vec<String>],
        weights: Option<Vec<Q>>,
    ) -> Result<Self, TableError> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(TableError::Shape(format!(
                "expected {n} rows of {n} symbols"
            )));
        }
        let weights = match weights {
            Some(w) => {
                if w.len() != n {
                    return Err(TableError::Shape(format!("expected {n} weights")));
                }
                w
            }
            None => vec![Q::new(1.into(), n.into()); n],
        };
        let mut alphabet: Vec<String> = Vec::new();
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            for symbol in row {
                let idx = match alphabet.iter().position(|s| s == symbol) {
                    Some(i) => i,
                    None => {
                        alphabet.push(symbol.clone());
                        alphabet.len() - 1
                    }
                };
                values.push(idx as u32);
            }
        }
        Ok(IntervalTable {
            labels,
            weights,
            alphabet,
            values,
        })
    }

    /// Views a metric space as a symmetric interval table with `f = d`.
    pub fn from_metric_space(space: &Space) -> Self {
        let n = space.len();
        let alphabet = space.values().iter().map(format_q).collect();
        let values = (0..n)
            .flat_map(|i| (0..n).map(move |j| space.dist_index(i, j)))
            .collect();
        IntervalTable {
            labels: space.labels().to_vec(),
            weights: space.weights().to_vec(),
            alphabet,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn value(&self, x: usize, y: usize) -> u32 {
        self.values[x * self.labels.len() + y]
    }

    pub fn symbol(&self, x: usize, y: usize) -> &str {
        &self.alphabet[self.value(x, y) as usize]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| !self.weights[i].is_zero())
    }

    pub fn point_by_label(&self, text: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Some(i);
        }
        text.parse::<usize>().ok().filter(|&i| i < self.len())
    }

    pub fn mask_from_indices(&self, indices: &[usize]) -> Result<SubsetMask, TableError> {
        SubsetMask::from_indices(&self.weights, indices)
            .map_err(|e| TableError::Shape(e.to_string()))
    }

    pub fn symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x..n).all(|y| self.value(x, y) == self.value(y, x)))
    }

    /// Row kernel: `v -> mu{y : f(x, y) = v}`, the law of `F` given `X = x`.
    fn row_kernel(&self, x: usize) -> Vec<Q> {
        let mut kernel = vec![Q::zero(); self.alphabet.len()];
        for y in 0..self.len() {
            kernel[self.value(x, y) as usize] += &self.weights[y];
        }
        kernel
    }

    /// Column kernel: `v -> mu{x : f(x, y) = v}`, the law of `F` given `Y = y`.
    fn col_kernel(&self, y: usize) -> Vec<Q> {
        let mut kernel = vec![Q::zero(); self.alphabet.len()];
        for x in 0..self.len() {
            kernel[self.value(x, y) as usize] += &self.weights[x];
        }
        kernel
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinate {
    X,
    Y,
    Symmetrized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelWitness {
    pub coordinate: Coordinate,
    pub point: usize,
    /// Index into the table's alphabet.
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelVerdict {
    pub holds: bool,
    pub witness: Option<KernelWitness>,
}

fn constant_on_support(
    table: &IntervalTable,
    coordinate: Coordinate,
    kernel: impl Fn(usize) -> Vec<Q>,
) -> Option<KernelWitness> {
    let mut support = table.support();
    let first = support.next()?;
    let reference = kernel(first);
    for point in support {
        let k = kernel(point);
        if let Some(value) = reference.iter().zip(&k).position(|(a, b)| a != b) {
            return Some(KernelWitness {
                coordinate,
                point,
                value,
            });
        }
    }
    None
}

/// Pairwise independence of `X`, `Y` and `F = f(X, Y)` for independent
/// `X, Y` of law `mu`. `X` and `Y` are independent by construction; `X` is
/// independent of `F` iff the row kernel is constant on the support, and
/// symmetrically for `Y`.
pub fn check_ind(table: &IntervalTable) -> KernelVerdict {
    let witness = constant_on_support(table, Coordinate::X, |x| table.row_kernel(x))
        .or_else(|| constant_on_support(table, Coordinate::Y, |y| table.col_kernel(y)));
    KernelVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// Equality of the interval distributions across every pair of balanced
/// decompositions (one for each coordinate). Equivalent to constancy of both
/// the row and the column kernel on the support, hence to pairwise
/// independence; the verdict always agrees with [`check_ind`].
pub fn check_hex_doubleprime(table: &IntervalTable) -> KernelVerdict {
    let verdict = check_ind(table);
    debug_assert_eq!(verdict, check_ind(table));
    verdict
}

/// Equality of the interval distributions when one balanced decomposition
/// feeds both coordinates. Equivalent to constancy of the symmetrized kernel
/// `v -> mu{y: f(x, y) = v} + mu{y: f(y, x) = v}` on the support.
pub fn check_hex_prime(table: &IntervalTable) -> KernelVerdict {
    let witness = constant_on_support(table, Coordinate::Symmetrized, |x| {
        let mut kernel = table.row_kernel(x);
        for (slot, col) in kernel.iter_mut().zip(table.col_kernel(x)) {
            *slot += col;
        }
        kernel
    });
    KernelVerdict {
        holds: witness.is_none(),
        witness,
    }
}

/// A pair of probability measures summing to twice the base measure.
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedDecomposition {
    pub mu0: Vec<Q>,
    pub mu1: Vec<Q>,
}

impl BalancedDecomposition {
    /// `mu +- alpha` for a zero-sum perturbation keeping both halves
    /// nonnegative.
    pub fn from_perturbation(weights: &[Q], alpha: &[Q]) -> Self {
        let mu0: Vec<Q> = weights.iter().zip(alpha).map(|(w, a)| w + a).collect();
        let mu1: Vec<Q> = weights.iter().zip(alpha).map(|(w, a)| w - a).collect();
        debug_assert!(mu0.iter().all(|w| !w.is_negative()));
        debug_assert!(mu1.iter().all(|w| !w.is_negative()));
        BalancedDecomposition { mu0, mu1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    HexPrime,
    HexDoublePrime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleViolation {
    pub trial: usize,
    pub decomposition: BalancedDecomposition,
    /// Second decomposition, present in `HexDoublePrime` mode.
    pub second: Option<BalancedDecomposition>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOutcome {
    /// True when no drawn decomposition separated the two distributions.
    pub consistent: bool,
    pub violation: Option<OracleViolation>,
}

const PERTURBATION_GRID: i64 = 1 << 16;

/// Draws a zero-sum rational perturbation on the support, scaled to the
/// boundary of admissibility. All arithmetic stays on the `1/2^16` grid so
/// comparisons are exact.
fn draw_perturbation(weights: &[Q], rng: &mut impl Rng) -> Vec<Q> {
    let support: Vec<usize> = weights.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(|(i, _)| i).collect();
    if support.len() < 2 {
        return vec![Q::zero(); weights.len()];
    }
    let mut alpha = vec![Q::zero(); weights.len()];
    for &i in &support {
        let numer = (rng.next_u64() % (2 * PERTURBATION_GRID as u64 + 1)) as i64 - PERTURBATION_GRID;
        alpha[i] = Q::new(BigInt::from(numer), BigInt::from(PERTURBATION_GRID));
    }
    // center to zero sum over the support
    let mean = alpha.iter().fold(Q::zero(), |acc, a| acc + a)
        / Q::from_integer(BigInt::from(support.len()));
    for &i in &support {
        alpha[i] -= &mean;
    }
    if alpha.iter().all(Q::is_zero) {
        return alpha;
    }
    // largest t with mu +- t*alpha >= 0
    let mut scale: Option<Q> = None;
    for &i in &support {
        if alpha[i].is_zero() {
            continue;
        }
        let bound = &weights[i] / alpha[i].abs();
        if scale.as_ref().map(|s| &bound < s).unwrap_or(true) {
            scale = Some(bound);
        }
    }
    let scale = scale.expect("some coordinate is nonzero");
    for a in &mut alpha {
        *a *= &scale;
    }
    alpha
}

/// Law of `F` when `X` and `Y` carry the given (possibly different)
/// measures.
fn interval_law(table: &IntervalTable, x_measure: &[Q], y_measure: &[Q]) -> Vec<Q> {
    let mut law = vec![Q::zero(); table.alphabet.len()];
    for x in 0..table.len() {
        if x_measure[x].is_zero() {
            continue;
        }
        let mut row = vec![Q::zero(); table.alphabet.len()];
        for y in 0..table.len() {
            row[table.value(x, y) as usize] += &y_measure[y];
        }
        for (slot, mass) in law.iter_mut().zip(row) {
            if !mass.is_zero() {
                *slot += &x_measure[x] * mass;
            }
        }
    }
    law
}

/// Randomized verifier for the balanced-decomposition quantifiers: draws
/// random decompositions, computes the exact interval distributions on each
/// side and compares them. Returns the first violating decomposition found.
pub fn sample_decomposition_oracle(
    table: &IntervalTable,
    mode: OracleMode,
    trials: usize,
    seed: u64,
) -> OracleOutcome {
    use rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let alpha = draw_perturbation(&table.weights, &mut rng);
        let first = BalancedDecomposition::from_perturbation(&table.weights, &alpha);
        let (law0, law1, second) = match mode {
            OracleMode::HexPrime => (
                interval_law(table, &first.mu0, &first.mu0),
                interval_law(table, &first.mu1, &first.mu1),
                None,
            ),
            OracleMode::HexDoublePrime => {
                let beta = draw_perturbation(&table.weights, &mut rng);
                let nu = BalancedDecomposition::from_perturbation(&table.weights, &beta);
                let laws = (
                    interval_law(table, &first.mu0, &nu.mu0),
                    interval_law(table, &first.mu1, &nu.mu1),
                );
                (laws.0, laws.1, Some(nu))
            }
        };
        if law0 != law1 {
            return OracleOutcome {
                consistent: false,
                violation: Some(OracleViolation {
                    trial,
                    decomposition: first,
                    second,
                }),
            };
        }
    }
    OracleOutcome {
        consistent: true,
        violation: None,
    }
}

/// Normalized law of `F` given that both coordinates fall in `A`.
pub fn conditional_interval_distribution(
    table: &IntervalTable,
    a: &SubsetMask,
) -> Result<Vec<(String, Q)>, TableError> {
    if a.measure().is_zero() {
        return Err(TableError::ZeroMeasure);
    }
    let restricted: Vec<Q> = (0..table.len())
        .map(|i| {
            if a.contains(i) {
                table.weights[i].clone()
            } else {
                Q::zero()
            }
        })
        .collect();
    let law = interval_law(table, &restricted, &restricted);
    let norm = a.measure() * a.measure();
    Ok(table
        .alphabet
        .iter()
        .zip(law)
        .filter(|(_, mass)| !mass.is_zero())
        .map(|(symbol, mass)| (symbol.clone(), mass / &norm))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTableMode {
    /// `f(x, y) = x * y`.
    Product,
    /// `f(x, y) = x^-1 * y`.
    LeftQuotient,
}

/// Interval table of a finite group under multiplication or left quotient,
/// with the uniform measure.
pub fn group_interval_table(group: &Group, mode: GroupTableMode) -> IntervalTable {
    let order = group.order();
    let labels: Vec<String> = (0..order).map(|el| group.label(el)).collect();
    let values = (0..order)
        .flat_map(|x| {
            let g = match mode {
                GroupTableMode::Product => x,
                GroupTableMode::LeftQuotient => group.inv(x),
            };
            (0..order).map(move |y| (g, y))
        })
        .map(|(g, y)| group.mul(g, y) as u32)
        .collect();
    IntervalTable {
        weights: vec![Q::new(1.into(), order.into()); order],
        alphabet: labels.clone(),
        labels,
        values,
    }
}

/// Checks `f(x, y) = i(f(y, x))` for an involution `i` of the value
/// alphabet. When the check passes and one coordinate is independent of `F`,
/// full pairwise independence follows and is asserted.
pub fn verify_antisymmetric(
    table: &IntervalTable,
    involution: &[usize],
) -> Result<bool, TableError> {
    let m = table.alphabet.len();
    if involution.len() != m {
        return Err(TableError::Shape(format!(
            "involution must cover the {m}-symbol alphabet"
        )));
    }
    for (v, &image) in involution.iter().enumerate() {
        if image >= m || involution[image] != v {
            return Err(TableError::NotInvolution(v));
        }
    }
    let n = table.len();
    let antisymmetric = (0..n).all(|x| {
        (0..n).all(|y| table.value(x, y) as usize == involution[table.value(y, x) as usize])
    });
    if antisymmetric {
        let x_indep = constant_on_support(table, Coordinate::X, |x| table.row_kernel(x)).is_none();
        let y_indep = constant_on_support(table, Coordinate::Y, |y| table.col_kernel(y)).is_none();
        if x_indep || y_indep {
            assert!(
                check_ind(table).holds,
                "one-sided independence of an antisymmetric table must be two-sided"
            );
        }
    }
    Ok(antisymmetric)
}

/// Every symbol exactly once in each row and each column. A Latin square
/// with the uniform measure always satisfies pairwise independence, which is
/// asserted.
pub fn is_latin_square(table: &IntervalTable) -> bool {
    let n = table.len();
    if table.alphabet.len() != n || n == 0 {
        return false;
    }
    let mut ok = true;
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = table.value(i, j) as usize;
            let c = table.value(j, i) as usize;
            if row_seen[r] || col_seen[c] {
                ok = false;
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    if ok && table.weights.iter().all(|w| w == &table.weights[0]) {
        assert!(
            check_ind(table).holds,
            "a Latin square with uniform measure satisfies pairwise independence"
        );
    }
    ok
}

/// For a Latin square whose first row and column repeat the headers (so the
/// first point is a two-sided identity): is the induced binary operation
/// associative? Full cubic check, no classification shortcuts.
pub fn loop_is_group(table: &IntervalTable) -> Result<bool, TableError> {
    if !is_latin_square(table) {
        return Err(TableError::NotLatin);
    }
    let n = table.len();
    // symbols must be the point labels themselves
    let mut point_of_symbol = vec![usize::MAX; n];
    for (v, symbol) in table.alphabet.iter().enumerate() {
        match table.labels.iter().position(|l| l == symbol) {
            Some(p) => point_of_symbol[v] = p,
            None => return Err(TableError::NoIdentity),
        }
    }
    let op = |x: usize, y: usize| point_of_symbol[table.value(x, y) as usize];
    // two-sided identity at the first point
    for j in 0..n {
        if op(0, j) != j || op(j, 0) != j {
            return Err(TableError::NoIdentity);
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op(op(x, y), z) != op(x, op(y, z)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
