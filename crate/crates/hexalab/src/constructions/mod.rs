//! Builders for the space families the deciders are exercised on: Cayley
//! graphs, named vertex-transitive graphs, `l^p` products, bridged unions,
//! graph substitution, weighted Hamming spaces and truncated Cantor spaces.

mod named;
mod recipe;

pub use named::{named_graph, NamedGraph};
pub use recipe::{build_recipe, recipe_from_json, BuiltSpace, GeneratorsField, GroupField, NormField, Recipe};

use crate::group::{Group, GroupError};
use crate::hex::check_cvc;
use crate::rational::{q_int, Q};
use crate::space::{Space, SpaceError, ValueKind, VolumeFunction};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("generator set does not generate the group (Cayley graph disconnected)")]
    Disconnected,
    #[error("the identity is not allowed as a generator")]
    IdentityGenerator,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("factors have different volume functions")]
    DifferingVolumeFunctions,
    #[error("factor does not satisfy the constant volume condition")]
    FactorNotCvc,
    #[error("value kinds are mixed: {0:?} vs {1:?}")]
    KindMismatch(ValueKind, ValueKind),
    #[error("exact arithmetic requires p in {{1, 2, inf}}; {0}")]
    ExactnessViolation(String),
    #[error("space too large: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cross-scale must be positive")]
    NonpositiveScale,
}

/// A finite group together with a symmetric generator set.
#[derive(Clone, Debug)]
pub struct CayleySpec {
    pub group: Group,
    pub generators: Vec<usize>,
}

impl CayleySpec {
    pub fn new(group: Group, generators: Vec<usize>) -> Self {
        CayleySpec { group, generators }
    }
}

/// Cayley graph of `(group, generators)` with the path distance and the
/// uniform measure. The generator set is symmetrized (closed under inverse);
/// the identity is rejected.
pub fn cayley_graph(spec: &CayleySpec) -> Result<Space, BuildError> {
    let group = &spec.group;
    let order = group.order();
    let mut gens: Vec<usize> = Vec::new();
    for &g in &spec.generators {
        if g == group.identity() {
            return Err(BuildError::IdentityGenerator);
        }
        if g >= order {
            return Err(GroupError::ElementOutOfRange(g, order).into());
        }
        for el in [g, group.inv(g)] {
            if !gens.contains(&el) {
                gens.push(el);
            }
        }
    }
    // word length from the identity by BFS; d(x, y) = len(x^-1 y)
    let mut len = vec![u32::MAX; order];
    len[group.identity()] = 0;
    let mut queue = std::collections::VecDeque::from([group.identity()]);
    while let Some(v) = queue.pop_front() {
        for &s in &gens {
            let w = group.mul(v, s);
            if len[w] == u32::MAX {
                len[w] = len[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if len.contains(&u32::MAX) {
        return Err(BuildError::Disconnected);
    }
    let matrix: Vec<Vec<u32>> = (0..order)
        .map(|x| {
            let xinv = group.inv(x);
            (0..order).map(|y| len[group.mul(xinv, y)]).collect()
        })
        .collect();
    let labels = (0..order).map(|el| group.label(el)).collect();
    let weights = vec![Q::new(1.into(), order.into()); order];
    let space = Space::from_int_matrix(labels, weights, &matrix, ValueKind::Plain)?;
    Ok(space.with_triangle_checked())
}

/// Circulant space: `Z/n` with `x ~ y` iff `y - x` lies in the symmetrized
/// generator set, path distance, uniform measure.
pub fn zmod_graph(n: u32, generators: &[i64]) -> Result<Space, BuildError> {
    let group = Group::cyclic(n);
    let gens: Result<Vec<usize>, GroupError> = generators
        .iter()
        .map(|&g| group.element_from_coords(&[g]))
        .collect();
    cayley_graph(&CayleySpec::new(group, gens?))
}

/// Which `l^p` rule combines the factor distances of a product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormP {
    One,
    Two,
    Inf,
    /// Any `p >= 1`; computed in floats and stored as the exact rational
    /// value of the rounded double.
    Float(f64),
}

#[derive(Clone, Debug)]
pub struct ProductSpec<'a> {
    pub left: &'a Space,
    pub right: &'a Space,
    pub p: NormP,
}

/// Product space with the product measure and the `l^p` combination of
/// distances.
///
/// Exactness rules: `l1` needs two plain factors, `l-inf` needs two factors
/// of one kind (max commutes with the squaring relabeling), and `l2` squares
/// plain factors on entry and emits a squared-kind space. Any other `p` goes
/// through floats.
pub fn product_space(spec: &ProductSpec<'_>) -> Result<Space, BuildError> {
    type Combiner = Box<dyn Fn(&Q, &Q) -> Q>;
    let (s1, s2) = (spec.left, spec.right);
    let (n1, n2) = (s1.len(), s2.len());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= 1 << 14)
        .ok_or_else(|| BuildError::TooLarge(format!("product of {n1} x {n2} points")))?;
    let combine: Combiner = match spec.p {
        NormP::One => {
            if s1.value_kind() != ValueKind::Plain || s2.value_kind() != ValueKind::Plain {
                return Err(BuildError::ExactnessViolation(
                    "l1 products need plain factors (sums of square roots are not rational)"
                        .into(),
                ));
            }
            Box::new(|a: &Q, b: &Q| a + b)
        }
        NormP::Inf => {
            if s1.value_kind() != s2.value_kind() {
                return Err(BuildError::KindMismatch(s1.value_kind(), s2.value_kind()));
            }
            Box::new(|a: &Q, b: &Q| if a >= b { a.clone() } else { b.clone() })
        }
        NormP::Two => {
            let sq1 = s1.value_kind() == ValueKind::Squared;
            let sq2 = s2.value_kind() == ValueKind::Squared;
            Box::new(move |a: &Q, b: &Q| {
                let a2 = if sq1 { a.clone() } else { a * a };
                let b2 = if sq2 { b.clone() } else { b * b };
                a2 + b2
            })
        }
        NormP::Float(p) => {
            if p.is_nan() || p < 1.0 {
                return Err(BuildError::ExactnessViolation(format!(
                    "p must be at least 1, found {p}"
                )));
            }
            let k1 = s1.value_kind();
            let k2 = s2.value_kind();
            Box::new(move |a: &Q, b: &Q| {
                let da = actual_f64(a, k1);
                let db = actual_f64(b, k2);
                let d = (da.powf(p) + db.powf(p)).powf(1.0 / p);
                Q::from_float(d).unwrap_or_else(Q::zero)
            })
        }
    };
    let out_kind = match spec.p {
        NormP::Two => ValueKind::Squared,
        NormP::Inf => s1.value_kind(),
        _ => ValueKind::Plain,
    };

    // combine on the value tables, then index pairs of factor indices
    let mut table: BTreeMap<Q, u32> = BTreeMap::new();
    let v1 = s1.values();
    let v2 = s2.values();
    let mut pair_value = vec![0u32; v1.len() * v2.len()];
    {
        let mut raw: Vec<Q> = Vec::with_capacity(pair_value.len());
        for a in v1 {
            for b in v2 {
                raw.push(combine(a, b));
            }
        }
        for v in &raw {
            let next = table.len() as u32;
            table.entry(v.clone()).or_insert(next);
        }
        let mut remap = vec![0u32; table.len()];
        let mut values = Vec::with_capacity(table.len());
        for (ranked, (value, id)) in table.iter().enumerate() {
            values.push(value.clone());
            remap[*id as usize] = ranked as u32;
        }
        for (slot, v) in pair_value.iter_mut().zip(&raw) {
            *slot = remap[table[v] as usize];
        }
        let mut dist = vec![0u32; n * n];
        let mut labels = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                labels.push(format!("{}|{}", s1.label(i1), s2.label(i2)));
                weights.push(s1.weight(i1) * s2.weight(i2));
            }
        }
        for i1 in 0..n1 {
            for i2 in 0..n2 {
                let i = i1 * n2 + i2;
                for j1 in 0..n1 {
                    let a = s1.dist_index(i1, j1) as usize * v2.len();
                    for j2 in 0..n2 {
                        let j = j1 * n2 + j2;
                        dist[i * n + j] = pair_value[a + s2.dist_index(i2, j2) as usize];
                    }
                }
            }
        }
        let mut space = Space::from_interned(labels, weights, values, dist, out_kind);
        if s1.triangle_checked() && s2.triangle_checked() && !matches!(spec.p, NormP::Float(_)) {
            space.set_triangle_checked(true);
        }
        Ok(space)
    }
}

fn actual_f64(v: &Q, kind: ValueKind) -> f64 {
    let f = crate::rational::to_f64(v);
    match kind {
        ValueKind::Plain => f,
        ValueKind::Squared => f.sqrt(),
    }
}

/// Canonical volume function of a CVC space, or an error.
fn cvc_rho(space: &Space) -> Result<VolumeFunction, BuildError> {
    let verdict = check_cvc(space);
    verdict
        .rho
        .map(|r| r.canonical())
        .ok_or(BuildError::FactorNotCvc)
}

/// Disjoint union of two spaces sharing one constant volume function, with
/// every cross pair at distance `l` and the measure halved. The result
/// satisfies the constant volume condition for any `l > 0`, which is
/// asserted; the triangle inequality only survives when both diameters stay
/// within `2l` (run `validate_space` to see the witnesses).
#[allow(clippy::needless_range_loop)] // symmetric matrix fills read best indexed
pub fn union_space(s1: &Space, s2: &Space, l: &Q) -> Result<Space, BuildError> {
    if l <= &Q::zero() {
        return Err(BuildError::NonpositiveScale);
    }
    if s1.value_kind() != s2.value_kind() {
        return Err(BuildError::KindMismatch(s1.value_kind(), s2.value_kind()));
    }
    let rho1 = cvc_rho(s1)?;
    let rho2 = cvc_rho(s2)?;
    if rho1 != rho2 {
        return Err(BuildError::DifferingVolumeFunctions);
    }
    let kind = s1.value_kind();
    // `l` is the actual cross distance; squared spaces store its square.
    let cross = match kind {
        ValueKind::Plain => l.clone(),
        ValueKind::Squared => l * l,
    };
    let (n1, n2) = (s1.len(), s2.len());
    let n = n1 + n2;
    let half = Q::new(1.into(), 2.into());
    let mut labels = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n1 {
        labels.push(format!("L.{}", s1.label(i)));
        weights.push(&half * s1.weight(i));
    }
    for i in 0..n2 {
        labels.push(format!("R.{}", s2.label(i)));
        weights.push(&half * s2.weight(i));
    }
    let mut matrix = vec![vec![Q::zero(); n]; n];
    for i in 0..n1 {
        for j in 0..n1 {
            matrix[i][j] = s1.dist(i, j).clone();
        }
        for j in 0..n2 {
            matrix[i][n1 + j] = cross.clone();
            matrix[n1 + j][i] = cross.clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            matrix[n1 + i][n1 + j] = s2.dist(i, j).clone();
        }
    }
    let space = Space::from_matrix(labels, weights, matrix, kind)?;
    assert!(check_cvc(&space).holds, "union of CVC spaces must be CVC");
    Ok(space)
}

/// Replaces every point of a CVC backbone (scaled so adjacent points sit at
/// distance `l`) by a CVC space; all parts must share one volume function
/// and have diameter strictly below `2l`. Cross-part distances are the
/// scaled backbone distances.
#[allow(clippy::needless_range_loop)]
pub fn graph_substitution(
    backbone: &Space,
    l: &Q,
    parts: &[Space],
) -> Result<Space, BuildError> {
    if l <= &Q::zero() {
        return Err(BuildError::NonpositiveScale);
    }
    if backbone.value_kind() != ValueKind::Plain {
        return Err(BuildError::Precondition(
            "backbone must carry plain distances".into(),
        ));
    }
    if parts.len() != backbone.len() {
        return Err(BuildError::Precondition(format!(
            "need one part per backbone point: {} parts for {} points",
            parts.len(),
            backbone.len()
        )));
    }
    if parts.is_empty() {
        return Err(BuildError::Precondition("no parts".into()));
    }
    cvc_rho(backbone)?;
    let kind = parts[0].value_kind();
    let rho0 = cvc_rho(&parts[0])?;
    for (idx, part) in parts.iter().enumerate() {
        if part.value_kind() != kind {
            return Err(BuildError::KindMismatch(kind, part.value_kind()));
        }
        let rho = cvc_rho(part)?;
        if rho != rho0 {
            return Err(BuildError::DifferingVolumeFunctions);
        }
        // diameter < 2l, on actual distances
        let diam = part.values().last().cloned().unwrap_or_else(Q::zero);
        let ok = match kind {
            ValueKind::Plain => diam < l * q_int(2),
            ValueKind::Squared => diam < l * l * q_int(4),
        };
        if !ok {
            return Err(BuildError::Precondition(format!(
                "part {idx} has diameter not smaller than twice the scale"
            )));
        }
    }
    let total: usize = parts.iter().map(Space::len).sum();
    if total > 1 << 12 {
        return Err(BuildError::TooLarge(format!("{total} points")));
    }
    let part_count = Q::new(1.into(), BigInt::from(parts.len()));
    let mut labels = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    let mut offsets = Vec::with_capacity(parts.len());
    for (pi, part) in parts.iter().enumerate() {
        offsets.push(labels.len());
        for i in 0..part.len() {
            labels.push(format!("{}.{}", backbone.label(pi), part.label(i)));
            weights.push(&part_count * part.weight(i));
        }
    }
    let mut matrix = vec![vec![Q::zero(); total]; total];
    for (pi, part) in parts.iter().enumerate() {
        for i in 0..part.len() {
            for j in 0..part.len() {
                matrix[offsets[pi] + i][offsets[pi] + j] = part.dist(i, j).clone();
            }
        }
        for pj in (pi + 1)..parts.len() {
            let scaled = l * backbone.dist(pi, pj);
            let cross = match kind {
                ValueKind::Plain => scaled,
                ValueKind::Squared => &scaled * &scaled,
            };
            for i in 0..part.len() {
                for j in 0..parts[pj].len() {
                    matrix[offsets[pi] + i][offsets[pj] + j] = cross.clone();
                    matrix[offsets[pj] + j][offsets[pi] + i] = cross.clone();
                }
            }
        }
    }
    let space = Space::from_matrix(labels, weights, matrix, kind)?;
    assert!(
        check_cvc(&space).holds,
        "substitution of CVC parts into a CVC backbone must be CVC"
    );
    Ok(space)
}

/// Weighted Hamming space on `{h, t}^n` with the uniform measure:
/// `d(x, y) = sum of a_i over the coordinates where x and y differ`.
pub fn hamming_space(n: u32, a: &[Q]) -> Result<Space, BuildError> {
    if n == 0 || a.len() != n as usize {
        return Err(BuildError::Precondition(format!(
            "need one positive weight per coordinate ({n} coordinates, {} weights)",
            a.len()
        )));
    }
    if n > 12 {
        return Err(BuildError::TooLarge(format!(
            "hamming space on 2^{n} points"
        )));
    }
    if a.iter().any(|w| w <= &Q::zero()) {
        return Err(BuildError::Precondition(
            "coordinate weights must be positive".into(),
        ));
    }
    let points = 1usize << n;
    let pattern_values: Vec<Q> = (0..points)
        .map(|pattern| {
            (0..n as usize)
                .filter(|&i| pattern >> i & 1 == 1)
                .fold(Q::zero(), |acc, i| acc + &a[i])
        })
        .collect();
    let labels = (0..points)
        .map(|p| {
            (0..n as usize)
                .map(|i| if p >> i & 1 == 1 { 't' } else { 'h' })
                .collect()
        })
        .collect();
    let weights = vec![Q::new(1.into(), points.into()); points];
    Ok(xor_structured_space(labels, weights, pattern_values)?.with_triangle_checked())
}

/// Truncation of the dyadic Cantor space at `depth` digits: `2^depth`
/// sequences, uniform measure, `d(x, y) = sum |x_i - y_i| * 2 / 3^i`.
/// The mass of pairs agreeing on every kept digit is `2^-depth`, which
/// bounds the truncation error on the volume function.
pub fn cantor_space(depth: u32) -> Result<Space, BuildError> {
    if depth == 0 {
        return Err(BuildError::Precondition("depth must be at least 1".into()));
    }
    if depth > 12 {
        return Err(BuildError::TooLarge(format!(
            "cantor space on 2^{depth} points"
        )));
    }
    let points = 1usize << depth;
    // digit i (1-based) contributes 2/3^i = 2 * 3^(depth-i) / 3^depth
    let denom = BigInt::from(3).pow(depth);
    let pattern_values: Vec<Q> = (0..points)
        .map(|pattern| {
            let mut numer = BigInt::from(0);
            for i in 1..=depth {
                if pattern >> (i - 1) & 1 == 1 {
                    numer += BigInt::from(2) * BigInt::from(3).pow(depth - i);
                }
            }
            Q::new(numer, denom.clone())
        })
        .collect();
    let labels = (0..points)
        .map(|p| {
            (0..depth as usize)
                .map(|i| if p >> i & 1 == 1 { '1' } else { '0' })
                .collect()
        })
        .collect();
    let weights = vec![Q::new(1.into(), points.into()); points];
    Ok(xor_structured_space(labels, weights, pattern_values)?.with_triangle_checked())
}

/// Space whose distance depends only on the xor of the two point indices:
/// `d(x, y) = pattern_values[x ^ y]`.
fn xor_structured_space(
    labels: Vec<String>,
    weights: Vec<Q>,
    pattern_values: Vec<Q>,
) -> Result<Space, SpaceError> {
    let points = pattern_values.len();
    let mut order: Vec<usize> = (0..points).collect();
    order.sort_by(|&a, &b| pattern_values[a].cmp(&pattern_values[b]));
    let mut values = Vec::new();
    let mut idx_of = vec![0u32; points];
    for &pattern in &order {
        if values.last() != Some(&pattern_values[pattern]) {
            values.push(pattern_values[pattern].clone());
        }
        idx_of[pattern] = (values.len() - 1) as u32;
    }
    let mut dist = vec![0u32; points * points];
    for i in 0..points {
        for j in 0..points {
            dist[i * points + j] = idx_of[i ^ j];
        }
    }
    Ok(Space::from_interned(
        labels,
        weights,
        values,
        dist,
        ValueKind::Plain,
    ))
}

/// Points of `{h,t}^n` (by index) where at least three consecutive
/// coordinates agree; at `n = 5` this selects exactly half the space.
pub fn run_of_three_indices(n: u32) -> Vec<usize> {
    let points = 1usize << n;
    (0..points)
        .filter(|&p| {
            (0..n.saturating_sub(2) as usize).any(|i| {
                let a = p >> i & 1;
                let b = p >> (i + 1) & 1;
                let c = p >> (i + 2) & 1;
                a == b && b == c
            })
        })
        .collect()
}
