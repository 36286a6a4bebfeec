//! Finite metric measure spaces with exact rational distances and weights.
//!
//! A [`Space`] stores a symmetric matrix of pairwise values together with a
//! rational probability measure. Distance values are interned into a sorted
//! table so that distributions and volume functions reduce to integer
//! bucketing; all masses stay exact.

use crate::rational::{format_q, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Interpretation of the stored values: actual distances, or squared
/// distances (used by `l2` products so arithmetic stays rational).
///
/// Every verdict in the library is invariant under strictly increasing
/// relabelings of the value axis, which is what makes the squared
/// representation sound.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Plain,
    Squared,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("matrix shape mismatch: expected {expected} rows/cols, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("point index {index} out of range for a space with {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset has zero measure")]
    ZeroMeasureSubset,
    #[error("power-mean exponent must be positive")]
    NonpositiveExponent,
}

/// A finite metric measure space: labeled points, an exact symmetric value
/// matrix and an exact rational measure.
#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    labels: Vec<String>,
    weights: Vec<Q>,
    /// Sorted, strictly increasing table of distinct matrix values.
    values: Vec<Q>,
    /// Row-major n*n indices into `values`.
    dist: Vec<u32>,
    value_kind: ValueKind,
    /// `Some(w)` iff every point has weight `w`.
    uniform: Option<Q>,
    triangle_checked: bool,
}

impl Space {
    /// Builds a space from an explicit matrix. Only the shape is enforced
    /// here; run [`validate_space`] for the structural checks.
    pub fn from_matrix(
        labels: Vec<String>,
        weights: Vec<Q>,
        matrix: Vec<Vec<Q>>,
        value_kind: ValueKind,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        if weights.len() != n || matrix.len() != n {
            return Err(SpaceError::Shape {
                expected: n,
                found: if weights.len() != n {
                    weights.len()
                } else {
                    matrix.len()
                },
            });
        }
        for row in &matrix {
            if row.len() != n {
                return Err(SpaceError::Shape {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        let mut table: BTreeMap<Q, u32> = BTreeMap::new();
        for row in &matrix {
            for v in row {
                let next = table.len() as u32;
                table.entry(v.clone()).or_insert(next);
            }
        }
        // BTreeMap iterates in value order; remap insertion ids to sorted ids.
        let mut values = Vec::with_capacity(table.len());
        let mut remap = vec![0u32; table.len()];
        for (rank, (value, id)) in table.iter().enumerate() {
            values.push(value.clone());
            remap[*id as usize] = rank as u32;
        }
        let mut dist = Vec::with_capacity(n * n);
        for row in &matrix {
            for v in row {
                dist.push(remap[table[v] as usize]);
            }
        }
        let uniform = detect_uniform(&weights);
        Ok(Space {
            labels,
            weights,
            values,
            dist,
            value_kind,
            uniform,
            triangle_checked: false,
        })
    }

    /// Builds a space whose values are small nonnegative integers (graph
    /// path distances). `matrix[i][j]` indexes directly into `0..=max`.
    pub fn from_int_matrix(
        labels: Vec<String>,
        weights: Vec<Q>,
        matrix: &[Vec<u32>],
        value_kind: ValueKind,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        if weights.len() != n || matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(SpaceError::Shape {
                expected: n,
                found: matrix.len(),
            });
        }
        let max = matrix.iter().flatten().copied().max().unwrap_or(0);
        let values: Vec<Q> = (0..=max).map(|v| Q::from_integer(v.into())).collect();
        let dist = matrix.iter().flatten().copied().collect();
        let uniform = detect_uniform(&weights);
        Ok(Space {
            labels,
            weights,
            values,
            dist,
            value_kind,
            uniform,
            triangle_checked: false,
        })
    }

    /// Internal constructor for builders that already interned their values.
    pub(crate) fn from_interned(
        labels: Vec<String>,
        weights: Vec<Q>,
        values: Vec<Q>,
        dist: Vec<u32>,
        value_kind: ValueKind,
    ) -> Self {
        debug_assert_eq!(dist.len(), labels.len() * labels.len());
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        let uniform = detect_uniform(&weights);
        Space {
            labels,
            weights,
            values,
            dist,
            value_kind,
            uniform,
            triangle_checked: false,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, i: usize) -> &Q {
        &self.weights[i]
    }

    pub fn weights(&self) -> &[Q] {
        &self.weights
    }

    pub fn value_kind(&self) -> ValueKind {
        self.value_kind
    }

    /// Sorted table of distinct matrix values.
    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn dist(&self, i: usize, j: usize) -> &Q {
        &self.values[self.dist_index(i, j) as usize]
    }

    /// Index of `d(i, j)` in the sorted value table.
    pub fn dist_index(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.labels.len() + j]
    }

    /// The common weight, when the measure is uniform.
    pub fn uniform_weight(&self) -> Option<&Q> {
        self.uniform.as_ref()
    }

    /// Points of positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.weights[i] > Q::zero())
    }

    pub fn triangle_checked(&self) -> bool {
        self.triangle_checked
    }

    pub(crate) fn set_triangle_checked(&mut self, checked: bool) {
        self.triangle_checked = checked;
    }

    /// Marks the space as triangle-checked after a successful scan.
    pub fn with_triangle_checked(mut self) -> Self {
        self.triangle_checked = true;
        self
    }

    /// Resolves a point by label, falling back to a numeric index.
    pub fn point_by_label(&self, text: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == text) {
            return Some(i);
        }
        text.parse::<usize>().ok().filter(|&i| i < self.len())
    }

    pub fn mask_from_indices(&self, indices: &[usize]) -> Result<SubsetMask, SpaceError> {
        SubsetMask::from_indices(&self.weights, indices)
    }

    pub fn mask_from_predicate(&self, pred: impl FnMut(usize) -> bool) -> SubsetMask {
        SubsetMask::from_predicate(&self.weights, pred)
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::from_predicate(&self.weights, |_| true)
    }

    pub fn empty_mask(&self) -> SubsetMask {
        SubsetMask::from_predicate(&self.weights, |_| false)
    }

    pub fn complement(&self, mask: &SubsetMask) -> SubsetMask {
        SubsetMask::from_predicate(&self.weights, |i| !mask.contains(i))
    }
}

fn detect_uniform(weights: &[Q]) -> Option<Q> {
    let first = weights.first()?;
    weights.iter().all(|w| w == first).then(|| first.clone())
}

/// A subset of a space's points, with its exact measure cached.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetMask {
    bits: Vec<u64>,
    len: usize,
    measure: Q,
}

impl SubsetMask {
    pub fn from_indices(weights: &[Q], indices: &[usize]) -> Result<Self, SpaceError> {
        let len = weights.len();
        let mut bits = vec![0u64; len.div_ceil(64)];
        for &i in indices {
            if i >= len {
                return Err(SpaceError::IndexOutOfRange { index: i, len });
            }
            bits[i / 64] |= 1 << (i % 64);
        }
        let measure = (0..len)
            .filter(|&i| bits[i / 64] >> (i % 64) & 1 == 1)
            .fold(Q::zero(), |acc, i| acc + &weights[i]);
        Ok(SubsetMask { bits, len, measure })
    }

    pub fn from_predicate(weights: &[Q], mut pred: impl FnMut(usize) -> bool) -> Self {
        let len = weights.len();
        let mut bits = vec![0u64; len.div_ceil(64)];
        let mut measure = Q::zero();
        for (i, w) in weights.iter().enumerate() {
            if pred(i) {
                bits[i / 64] |= 1 << (i % 64);
                measure += w;
            }
        }
        SubsetMask { bits, len, measure }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality() == 0
    }

    /// Number of member points (regardless of weight).
    pub fn cardinality(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Exact sum of member weights.
    pub fn measure(&self) -> &Q {
        &self.measure
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

/// The law of the random distance: sorted `(value, mass)` entries with
/// strictly increasing values and positive masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    entries: Vec<(Q, Q)>,
    total: Q,
}

impl DistanceDistribution {
    pub(crate) fn from_buckets(values: &[Q], masses: Vec<Q>) -> Self {
        let mut entries = Vec::new();
        let mut total = Q::zero();
        for (idx, mass) in masses.into_iter().enumerate() {
            if !mass.is_zero() {
                total += &mass;
                entries.push((values[idx].clone(), mass));
            }
        }
        DistanceDistribution { entries, total }
    }

    pub fn entries(&self) -> &[(Q, Q)] {
        &self.entries
    }

    pub fn total(&self) -> &Q {
        &self.total
    }

    /// Mass at an exact value (zero when the value is not realized).
    pub fn mass_at(&self, value: &Q) -> Q {
        match self.entries.binary_search_by(|(v, _)| v.cmp(value)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    /// Cumulative mass of `{ d <= r }`.
    pub fn cdf_at(&self, r: &Q) -> Q {
        self.entries
            .iter()
            .take_while(|(v, _)| v <= r)
            .fold(Q::zero(), |acc, (_, m)| acc + m)
    }

    /// Divides every mass by `total`, yielding a probability distribution.
    pub fn normalized(&self) -> Option<DistanceDistribution> {
        if self.total.is_zero() {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .map(|(v, m)| (v.clone(), m / &self.total))
            .collect();
        Some(DistanceDistribution {
            entries,
            total: Q::one(),
        })
    }

    /// Applies a strictly increasing map to the value axis.
    pub fn map_values(&self, f: impl Fn(&Q) -> Q) -> DistanceDistribution {
        let entries: Vec<(Q, Q)> = self
            .entries
            .iter()
            .map(|(v, m)| (f(v), m.clone()))
            .collect();
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        DistanceDistribution {
            entries,
            total: self.total.clone(),
        }
    }

    /// First value at which two distributions disagree, if any.
    pub fn first_divergence(&self, other: &DistanceDistribution) -> Option<Q> {
        let mut a = self.entries.iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return None,
                (Some((v, _)), None) => return Some(v.clone()),
                (None, Some((v, _))) => return Some(v.clone()),
                (Some((va, ma)), Some((vb, mb))) => {
                    if va == vb {
                        if ma != mb {
                            return Some(va.clone());
                        }
                        a.next();
                        b.next();
                    } else if va < vb {
                        return Some(va.clone());
                    } else {
                        return Some(vb.clone());
                    }
                }
            }
        }
    }
}

impl fmt::Display for DistanceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, m)| format!("{} -> {}", format_q(v), format_q(m)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The map `radius -> ball mass`, as a step function sampled on the realized
/// value grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeFunction {
    steps: Vec<(Q, Q)>,
}

impl VolumeFunction {
    pub fn from_steps(steps: Vec<(Q, Q)>) -> Self {
        debug_assert!(steps.windows(2).all(|w| w[0].0 < w[1].0));
        VolumeFunction { steps }
    }

    pub fn steps(&self) -> &[(Q, Q)] {
        &self.steps
    }

    /// Value of the step function at radius `r` (zero before the first step).
    pub fn eval(&self, r: &Q) -> Q {
        self.steps
            .iter()
            .take_while(|(radius, _)| radius <= r)
            .last()
            .map(|(_, mass)| mass.clone())
            .unwrap_or_else(Q::zero)
    }

    /// Canonical form: steps where the cumulative mass actually increases.
    pub fn canonical(&self) -> VolumeFunction {
        let mut steps: Vec<(Q, Q)> = Vec::with_capacity(self.steps.len());
        for (r, m) in &self.steps {
            if steps.last().map(|(_, prev)| prev == m).unwrap_or(false) {
                continue;
            }
            steps.push((r.clone(), m.clone()));
        }
        VolumeFunction { steps }
    }
}

impl fmt::Display for VolumeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|(r, m)| format!("rho({}) = {}", format_q(r), format_q(m)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Internal per-point profile: bucket masses per value index. Uniform spaces
/// use integer counters so large spaces stay cheap.
pub(crate) enum Profile {
    Counts(Vec<u64>),
    Masses(Vec<Q>),
}

impl Profile {
    pub(crate) fn to_masses(&self, space: &Space) -> Vec<Q> {
        match self {
            Profile::Counts(counts) => {
                let w = space.uniform_weight().expect("counts imply uniform");
                counts
                    .iter()
                    .map(|&c| w * Q::from_integer(c.into()))
                    .collect()
            }
            Profile::Masses(m) => m.clone(),
        }
    }

    /// First bucket index where two profiles of the same space disagree.
    /// Counts compare as integers, so uniform spaces never touch rationals.
    pub(crate) fn first_difference(&self, other: &Profile) -> Option<usize> {
        match (self, other) {
            (Profile::Counts(a), Profile::Counts(b)) => {
                a.iter().zip(b).position(|(x, y)| x != y)
            }
            (Profile::Masses(a), Profile::Masses(b)) => {
                a.iter().zip(b).position(|(x, y)| x != y)
            }
            _ => unreachable!("profiles of one space share a representation"),
        }
    }
}

pub(crate) fn row_profile(space: &Space, i: usize, mask: Option<&SubsetMask>) -> Profile {
    let n = space.len();
    let nv = space.values().len();
    match space.uniform_weight() {
        Some(_) => {
            let mut counts = vec![0u64; nv];
            for j in 0..n {
                if mask.map(|m| m.contains(j)).unwrap_or(true) {
                    counts[space.dist_index(i, j) as usize] += 1;
                }
            }
            Profile::Counts(counts)
        }
        None => {
            let mut masses = vec![Q::zero(); nv];
            for j in 0..n {
                if mask.map(|m| m.contains(j)).unwrap_or(true) {
                    masses[space.dist_index(i, j) as usize] += space.weight(j);
                }
            }
            Profile::Masses(masses)
        }
    }
}

pub(crate) fn cumulative(profile: &mut Profile) {
    match profile {
        Profile::Counts(c) => {
            for i in 1..c.len() {
                c[i] += c[i - 1];
            }
        }
        Profile::Masses(m) => {
            for i in 1..m.len() {
                let prev = m[i - 1].clone();
                m[i] += prev;
            }
        }
    }
}

/// Law of `d(X, Y)` for `X, Y` independent with law `mu`.
pub fn distance_distribution(space: &Space) -> DistanceDistribution {
    let full = space.full_mask();
    restricted_distribution(space, &full, &full)
}

/// Pushforward of `(mu restricted to A) x (mu restricted to B)` under `d`.
/// Unnormalized: the total mass is `mu(A) * mu(B)`.
pub fn restricted_distribution(
    space: &Space,
    a: &SubsetMask,
    b: &SubsetMask,
) -> DistanceDistribution {
    let nv = space.values().len();
    match space.uniform_weight() {
        Some(w) => {
            let mut counts = vec![0u64; nv];
            for i in a.iter() {
                for j in b.iter() {
                    counts[space.dist_index(i, j) as usize] += 1;
                }
            }
            let w2 = w * w;
            let masses = counts
                .into_iter()
                .map(|c| {
                    if c == 0 {
                        Q::zero()
                    } else {
                        &w2 * Q::from_integer(c.into())
                    }
                })
                .collect();
            DistanceDistribution::from_buckets(space.values(), masses)
        }
        None => {
            let mut masses = vec![Q::zero(); nv];
            for i in a.iter() {
                let wi = space.weight(i);
                if wi.is_zero() {
                    continue;
                }
                let mut row = vec![Q::zero(); nv];
                for j in b.iter() {
                    row[space.dist_index(i, j) as usize] += space.weight(j);
                }
                for (bucket, mass) in masses.iter_mut().zip(row) {
                    if !mass.is_zero() {
                        *bucket += wi * mass;
                    }
                }
            }
            DistanceDistribution::from_buckets(space.values(), masses)
        }
    }
}

/// Per-point family of volume functions `r -> mu(B(x, r))`, all sampled on
/// the common realized value grid.
pub fn volume_function(space: &Space) -> Vec<VolumeFunction> {
    (0..space.len())
        .map(|i| {
            let mut profile = row_profile(space, i, None);
            cumulative(&mut profile);
            let masses = profile.to_masses(space);
            VolumeFunction::from_steps(
                space
                    .values()
                    .iter()
                    .cloned()
                    .zip(masses)
                    .collect::<Vec<_>>(),
            )
        })
        .collect()
}

/// Exponent for [`power_mean`]: a positive rational, or infinity for the
/// essential diameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Exponent {
    Finite(Q),
    Infinity,
}

/// Power mean distance `M_p(A)` as a float; `p = infinity` returns the
/// essential diameter of `A`.
pub fn power_mean(space: &Space, a: &SubsetMask, p: &Exponent) -> Result<f64, SpaceError> {
    if a.measure().is_zero() {
        return Err(SpaceError::ZeroMeasureSubset);
    }
    let actual = |i: usize, j: usize| -> f64 {
        let v = crate::rational::to_f64(space.dist(i, j));
        match space.value_kind() {
            ValueKind::Plain => v,
            ValueKind::Squared => v.sqrt(),
        }
    };
    let members: Vec<usize> = a.iter().filter(|&i| !space.weight(i).is_zero()).collect();
    match p {
        Exponent::Infinity => {
            let mut max = 0.0f64;
            for &i in &members {
                for &j in &members {
                    max = max.max(actual(i, j));
                }
            }
            Ok(max)
        }
        Exponent::Finite(p) => {
            let pf = crate::rational::to_f64(p);
            if pf <= 0.0 {
                return Err(SpaceError::NonpositiveExponent);
            }
            let total = crate::rational::to_f64(a.measure());
            let mut acc = 0.0f64;
            for &i in &members {
                let wi = crate::rational::to_f64(space.weight(i));
                for &j in &members {
                    let wj = crate::rational::to_f64(space.weight(j));
                    let d = actual(i, j);
                    if d > 0.0 {
                        acc += wi * wj * d.powf(pf);
                    }
                }
            }
            Ok((acc / (total * total)).powf(1.0 / pf))
        }
    }
}

/// A structural defect found by [`validate_space`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonzeroDiagonal { i: usize },
    AsymmetricEntry { i: usize, j: usize },
    NegativeDistance { i: usize, j: usize },
    NegativeWeight { i: usize },
    WeightSumNotOne { total: Q },
    TriangleViolation { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonzeroDiagonal { i } => write!(f, "nonzero diagonal at ({i}, {i})"),
            Violation::AsymmetricEntry { i, j } => write!(f, "asymmetric entry at ({i}, {j})"),
            Violation::NegativeDistance { i, j } => write!(f, "negative distance at ({i}, {j})"),
            Violation::NegativeWeight { i } => write!(f, "negative weight at point {i}"),
            Violation::WeightSumNotOne { total } => {
                write!(f, "weights sum to {} instead of 1/1", format_q(total))
            }
            Violation::TriangleViolation { i, j, k } => {
                write!(f, "triangle inequality fails on ({i}, {j}) via {k}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

const MAX_REPORTED: usize = 1000;

/// Checks symmetry, zero diagonal, nonnegativity, measure normalization and
/// the triangle inequality. Triangle violations are errors iff
/// `require_triangle`, otherwise warnings: non-metric value functions are a
/// legitimate input everywhere else in the library.
pub fn validate_space(space: &Space, require_triangle: bool) -> ValidationReport {
    let n = space.len();
    let mut report = ValidationReport::default();
    for i in 0..n {
        if !space.dist(i, i).is_zero() {
            report.errors.push(Violation::NonzeroDiagonal { i });
        }
        if space.weight(i) < &Q::zero() {
            report.errors.push(Violation::NegativeWeight { i });
        }
        for j in (i + 1)..n {
            if space.dist_index(i, j) != space.dist_index(j, i) {
                report.errors.push(Violation::AsymmetricEntry { i, j });
            }
            if space.dist(i, j) < &Q::zero() {
                report.errors.push(Violation::NegativeDistance { i, j });
            }
        }
    }
    let total: Q = space.weights().iter().sum();
    if !total.is_one() {
        report.errors.push(Violation::WeightSumNotOne { total });
    }
    let triangle = scan_triangles(space);
    if require_triangle {
        report.errors.extend(triangle);
    } else {
        report.warnings.extend(triangle);
    }
    report
}

/// All triangle violations, capped at `MAX_REPORTED` witnesses. The witness
/// is the failing pair `(i, j)` and intermediate point `k` with
/// `d(i, j) > d(i, k) + d(k, j)` (on actual distances for squared spaces).
fn scan_triangles(space: &Space) -> Vec<Violation> {
    let n = space.len();
    let mut found = Vec::new();
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let idx_ij = space.dist_index(i, j);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // d(i,j) <= max(d(i,k), d(k,j)) already implies the triangle
                // inequality for nonnegative values; only the remaining
                // triples need exact arithmetic.
                if idx_ij <= space.dist_index(i, k).max(space.dist_index(k, j)) {
                    continue;
                }
                if triangle_violated(
                    space.value_kind(),
                    space.dist(i, j),
                    space.dist(i, k),
                    space.dist(k, j),
                ) {
                    found.push(Violation::TriangleViolation { i, j, k });
                    if found.len() >= MAX_REPORTED {
                        break 'outer;
                    }
                }
            }
        }
    }
    found
}

fn triangle_violated(kind: ValueKind, ij: &Q, ik: &Q, kj: &Q) -> bool {
    match kind {
        ValueKind::Plain => ij > &(ik + kj),
        ValueKind::Squared => {
            // values are squared distances: sqrt(ij) > sqrt(ik) + sqrt(kj)
            // iff ij - ik - kj > 0 and (ij - ik - kj)^2 > 4 ik kj.
            let gap = ij - ik - kj;
            gap > Q::zero() && &gap * &gap > Q::from_integer(4.into()) * ik * kj
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_int};

    pub(crate) fn cycle_space(n: usize) -> Space {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let weights = vec![q(1, n as i64); n];
        let matrix: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = (i as i64 - j as i64).rem_euclid(n as i64) as u32;
                        d.min(n as u32 - d)
                    })
                    .collect()
            })
            .collect();
        Space::from_int_matrix(labels, weights, &matrix, ValueKind::Plain).unwrap()
    }

    #[test]
    fn one_point_distribution_is_dirac_at_zero() {
        let space = Space::from_matrix(
            vec!["p".into()],
            vec![q_int(1)],
            vec![vec![q_int(0)]],
            ValueKind::Plain,
        )
        .unwrap();
        let dist = distance_distribution(&space);
        assert_eq!(dist.entries(), &[(q_int(0), q_int(1))]);
        assert_eq!(dist.total(), &q_int(1));
    }

    #[test]
    fn four_cycle_distance_distribution() {
        let space = cycle_space(4);
        let dist = distance_distribution(&space);
        assert_eq!(
            dist.entries(),
            &[(q_int(0), q(1, 4)), (q_int(1), q(1, 2)), (q_int(2), q(1, 4))]
        );
    }

    #[test]
    fn restricted_total_is_product_of_measures() {
        let space = cycle_space(4);
        let a = space.mask_from_indices(&[0, 1]).unwrap();
        let b = space.mask_from_indices(&[2]).unwrap();
        let dist = restricted_distribution(&space, &a, &b);
        assert_eq!(dist.total(), &(a.measure() * b.measure()));
        let empty = space.empty_mask();
        let zero = restricted_distribution(&space, &empty, &b);
        assert!(zero.total().is_zero());
        assert!(zero.entries().is_empty());
        let full = space.full_mask();
        assert_eq!(
            restricted_distribution(&space, &full, &full),
            distance_distribution(&space)
        );
    }

    #[test]
    fn four_cycle_power_means() {
        let space = cycle_space(4);
        let full = space.full_mask();
        let m1 = power_mean(&space, &full, &Exponent::Finite(q_int(1))).unwrap();
        assert!((m1 - 1.0).abs() < 1e-12);
        let m2 = power_mean(&space, &full, &Exponent::Finite(q_int(2))).unwrap();
        assert!((m2 - (1.5f64).sqrt()).abs() < 1e-12);
        let minf = power_mean(&space, &full, &Exponent::Infinity).unwrap();
        assert_eq!(minf, 2.0);
        let empty = space.empty_mask();
        assert!(power_mean(&space, &empty, &Exponent::Infinity).is_err());
    }

    #[test]
    fn twelve_cycle_volume_function() {
        let space = cycle_space(12);
        let family = volume_function(&space);
        for vf in &family {
            for (r, mass) in vf.steps() {
                let r_int = crate::rational::to_f64(r) as i64;
                let expected = q((2 * r_int + 1).min(12), 12);
                assert_eq!(mass, &expected);
            }
        }
    }

    #[test]
    fn path_graph_volume_functions_differ() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let weights = vec![q(1, 3); 3];
        let matrix = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let space = Space::from_int_matrix(labels, weights, &matrix, ValueKind::Plain).unwrap();
        let family = volume_function(&space);
        // endpoint: (1/3, 2/3, 1); center: (1/3, 1, 1)
        assert_eq!(family[0].eval(&q_int(1)), q(2, 3));
        assert_eq!(family[1].eval(&q_int(1)), q_int(1));
        assert_ne!(family[0], family[1]);
    }

    #[test]
    fn validation_flags_asymmetry() {
        let labels = vec!["a".into(), "b".into()];
        let weights = vec![q(1, 2), q(1, 2)];
        let matrix = vec![vec![q_int(0), q_int(1)], vec![q_int(2), q_int(0)]];
        let space = Space::from_matrix(labels, weights, matrix, ValueKind::Plain).unwrap();
        let report = validate_space(&space, false);
        assert!(report
            .errors
            .contains(&Violation::AsymmetricEntry { i: 0, j: 1 }));
    }

    #[test]
    fn validation_accepts_cycle() {
        let report = validate_space(&cycle_space(4), true);
        assert!(report.is_valid());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn triangle_violation_is_warning_by_default() {
        // two far points bridged by a short cross edge
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let weights = vec![q(1, 3); 3];
        let matrix = vec![
            vec![q_int(0), q_int(10), q(1, 2)],
            vec![q_int(10), q_int(0), q(1, 2)],
            vec![q(1, 2), q(1, 2), q_int(0)],
        ];
        let space = Space::from_matrix(labels, weights, matrix, ValueKind::Plain).unwrap();
        let report = validate_space(&space, false);
        assert!(report.is_valid());
        assert_eq!(
            report.warnings,
            vec![Violation::TriangleViolation { i: 0, j: 1, k: 2 }]
        );
        let strict = validate_space(&space, true);
        assert!(!strict.is_valid());
    }

    #[test]
    fn squared_triangle_check_uses_actual_distances() {
        // plain distances 3, 4, 5 -> squared 9, 16, 25: valid triangle.
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let weights = vec![q(1, 3); 3];
        let matrix = vec![
            vec![q_int(0), q_int(9), q_int(25)],
            vec![q_int(9), q_int(0), q_int(16)],
            vec![q_int(25), q_int(16), q_int(0)],
        ];
        let space = Space::from_matrix(labels, weights, matrix, ValueKind::Squared).unwrap();
        assert!(validate_space(&space, true).is_valid());
        // squared 9, 16, 100 -> 3 + 4 < 10: violation.
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let weights = vec![q(1, 3); 3];
        let matrix = vec![
            vec![q_int(0), q_int(9), q_int(100)],
            vec![q_int(9), q_int(0), q_int(16)],
            vec![q_int(100), q_int(16), q_int(0)],
        ];
        let space = Space::from_matrix(labels, weights, matrix, ValueKind::Squared).unwrap();
        assert!(!validate_space(&space, true).is_valid());
    }

    #[test]
    fn complement_measure() {
        let space = cycle_space(4);
        let a = space.mask_from_indices(&[0]).unwrap();
        let ac = space.complement(&a);
        assert_eq!(ac.measure(), &q(3, 4));
        assert_eq!(&(a.measure() + ac.measure()), &q_int(1));
        assert_eq!(ac.cardinality(), 3);
    }
}
