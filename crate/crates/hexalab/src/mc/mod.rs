//! Seeded Monte Carlo verification for continuous spaces: spheres with the
//! chord distance, flat tori, and Klein bottles.
//!
//! Sampling is reproducible bit for bit from `(spec, predicate, seed,
//! count, workers)`: each worker owns a ChaCha stream derived from the seed
//! and the worker index, and the per-worker outputs are concatenated in
//! worker order.

pub mod ks;

pub use ks::{ks_two_sample, KsOutcome};

use rand_chacha::ChaCha12Rng;
use rand_core::{Rng as _, SeedableRng};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum McError {
    #[error("stratum {0} is empty")]
    EmptyStratum(&'static str),
    #[error("bad spec: {0}")]
    BadSpec(String),
}

/// A continuous space the sampler understands.
#[derive(Clone, Debug, PartialEq)]
pub enum ContinuousSpace {
    /// Unit sphere `S^d` embedded in `R^(d+1)`.
    Sphere { dim: u32 },
    /// Flat torus with the given side lengths.
    Torus { lengths: Vec<f64> },
    /// Klein bottle: quotient of the plane by `(x, y) -> (x + a, y)` and the
    /// glide reflection `(x, y) -> (a - x, y + b)`.
    Klein { a: f64, b: f64 },
}

impl ContinuousSpace {
    pub fn parse(text: &str) -> Result<Self, McError> {
        let mut parts = text.split(':');
        let kind = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let float = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| McError::BadSpec(format!("bad number `{s}` in `{text}`")))
        };
        match kind {
            "sphere" => {
                let dim = args
                    .first()
                    .and_then(|s| s.parse::<u32>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| McError::BadSpec(format!("`{text}`: need sphere:<dim>=1>")))?;
                Ok(ContinuousSpace::Sphere { dim })
            }
            "torus" => {
                if args.is_empty() {
                    return Err(McError::BadSpec(format!("`{text}`: need torus:L1[:L2...]")));
                }
                let lengths = args.iter().map(|s| float(s)).collect::<Result<Vec<_>, _>>()?;
                if lengths.iter().any(|&l| l <= 0.0) {
                    return Err(McError::BadSpec("torus lengths must be positive".into()));
                }
                Ok(ContinuousSpace::Torus { lengths })
            }
            "klein" => {
                if args.len() != 2 {
                    return Err(McError::BadSpec(format!("`{text}`: need klein:a:b")));
                }
                let a = float(args[0])?;
                let b = float(args[1])?;
                if a <= 0.0 || b <= 0.0 {
                    return Err(McError::BadSpec("klein sides must be positive".into()));
                }
                Ok(ContinuousSpace::Klein { a, b })
            }
            _ => Err(McError::BadSpec(format!("unknown space `{text}`"))),
        }
    }

    fn point_dim(&self) -> usize {
        match self {
            ContinuousSpace::Sphere { dim } => *dim as usize + 1,
            ContinuousSpace::Torus { lengths } => lengths.len(),
            ContinuousSpace::Klein { .. } => 2,
        }
    }
}

/// Geodesic distances are available everywhere the chord is; on the flat
/// quotients the two coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Chord,
    Geodesic,
}

/// Half-area predicates used in the experiments.
#[derive(Clone, Debug, PartialEq)]
pub enum Predicate {
    /// Sphere: `|last coordinate| <= max_abs_last`. With `max_abs_last =
    /// 1/2` on `S^2` this is the band of latitudes within 30 degrees, of
    /// area exactly one half.
    Band { max_abs_last: f64 },
    /// Sphere: `last coordinate >= 0`.
    Hemisphere,
    /// Torus or Klein bottle: first half along one axis. On a Klein bottle
    /// only the `y` axis (index 1) is well defined on the quotient.
    Strip { axis: usize },
    /// Everything (used by distance-only estimates).
    All,
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self, McError> {
        let mut parts = text.split(':');
        match parts.next().unwrap_or_default() {
            "band" => {
                let c = parts
                    .next()
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| McError::BadSpec(format!("`{text}`: need band:<z>")))?;
                Ok(Predicate::Band { max_abs_last: c })
            }
            "hemisphere" => Ok(Predicate::Hemisphere),
            "strip" => {
                let axis = parts.next().and_then(|s| s.parse::<usize>().ok()).unwrap_or(0);
                Ok(Predicate::Strip { axis })
            }
            "all" => Ok(Predicate::All),
            _ => Err(McError::BadSpec(format!("unknown predicate `{text}`"))),
        }
    }

    fn matches(&self, space: &ContinuousSpace, point: &[f64]) -> Result<bool, McError> {
        match (self, space) {
            (Predicate::All, _) => Ok(true),
            (Predicate::Band { max_abs_last }, ContinuousSpace::Sphere { .. }) => {
                Ok(point.last().unwrap().abs() <= *max_abs_last)
            }
            (Predicate::Hemisphere, ContinuousSpace::Sphere { .. }) => {
                Ok(*point.last().unwrap() >= 0.0)
            }
            (Predicate::Strip { axis }, ContinuousSpace::Torus { lengths }) => {
                let axis = *axis;
                if axis >= lengths.len() {
                    return Err(McError::BadSpec(format!(
                        "strip axis {axis} out of range for a {}-torus",
                        lengths.len()
                    )));
                }
                Ok(point[axis] < lengths[axis] / 2.0)
            }
            (Predicate::Strip { axis }, ContinuousSpace::Klein { b, .. }) => {
                if *axis != 1 {
                    return Err(McError::BadSpec(
                        "on a Klein bottle only the y strip (axis 1) is well defined".into(),
                    ));
                }
                Ok(point[1] < b / 2.0)
            }
            _ => Err(McError::BadSpec(
                "predicate does not apply to this space".into(),
            )),
        }
    }
}

/// One sampled pair: the distance and the subset membership of each
/// endpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSample {
    pub distance: f64,
    pub x_in_a: bool,
    pub y_in_a: bool,
}

/// A reproducible sample of random pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalSample {
    pub seed: u64,
    pub workers: usize,
    pub pairs: Vec<PairSample>,
}

fn uniform_unit(rng: &mut ChaCha12Rng) -> f64 {
    // 53-bit mantissa in [0, 1)
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal pair by Box-Muller.
fn normal_pair(rng: &mut ChaCha12Rng) -> (f64, f64) {
    let u1 = 1.0 - uniform_unit(rng); // (0, 1]
    let u2 = uniform_unit(rng);
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    (radius * angle.cos(), radius * angle.sin())
}

fn sample_point(space: &ContinuousSpace, rng: &mut ChaCha12Rng, out: &mut Vec<f64>) {
    out.clear();
    match space {
        ContinuousSpace::Sphere { dim } => {
            let coords = *dim as usize + 1;
            loop {
                out.clear();
                while out.len() < coords {
                    let (a, b) = normal_pair(rng);
                    out.push(a);
                    if out.len() < coords {
                        out.push(b);
                    }
                }
                let norm = out.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm > 1e-12 {
                    for c in out.iter_mut() {
                        *c /= norm;
                    }
                    return;
                }
            }
        }
        ContinuousSpace::Torus { lengths } => {
            for &l in lengths {
                out.push(uniform_unit(rng) * l);
            }
        }
        ContinuousSpace::Klein { a, b } => {
            out.push(uniform_unit(rng) * a);
            out.push(uniform_unit(rng) * b);
        }
    }
}

fn distance(space: &ContinuousSpace, mode: DistanceMode, p: &[f64], q: &[f64]) -> f64 {
    match space {
        ContinuousSpace::Sphere { .. } => {
            let chord2: f64 = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum();
            // chords cannot exceed the diameter; clamp float dust
            let chord = chord2.sqrt().min(2.0);
            match mode {
                DistanceMode::Chord => chord,
                DistanceMode::Geodesic => 2.0 * (chord / 2.0).asin(),
            }
        }
        ContinuousSpace::Torus { lengths } => {
            let sum2: f64 = p
                .iter()
                .zip(q)
                .zip(lengths)
                .map(|((a, b), &l)| {
                    let d = (a - b).abs();
                    let d = d.min(l - d);
                    d * d
                })
                .sum();
            sum2.sqrt()
        }
        ContinuousSpace::Klein { a, b } => {
            // images of q under (x, y) -> (k a +- x, y + l b), + iff l even
            let mut best = f64::INFINITY;
            for k in -2i32..=2 {
                for l in -2i32..=2 {
                    let qx = if l.rem_euclid(2) == 0 {
                        k as f64 * a + q[0]
                    } else {
                        k as f64 * a - q[0]
                    };
                    let qy = q[1] + l as f64 * b;
                    let d = ((p[0] - qx).powi(2) + (p[1] - qy).powi(2)).sqrt();
                    best = best.min(d);
                }
            }
            best
        }
    }
}

/// Klein-bottle distance with a wrap window of `w` deck transformations in
/// each direction; exposed so the window bound can be probed.
pub fn klein_distance_window(a: f64, b: f64, p: (f64, f64), q: (f64, f64), w: i32) -> f64 {
    let mut best = f64::INFINITY;
    for k in -w..=w {
        for l in -w..=w {
            let qx = if l.rem_euclid(2) == 0 {
                k as f64 * a + q.0
            } else {
                k as f64 * a - q.0
            };
            let qy = q.1 + l as f64 * b;
            let d = ((p.0 - qx).powi(2) + (p.1 - qy).powi(2)).sqrt();
            best = best.min(d);
        }
    }
    best
}

/// Draws `count` independent pairs, tagging each endpoint with the
/// predicate.
pub fn sample_pairs(
    space: &ContinuousSpace,
    predicate: &Predicate,
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<EmpiricalSample, McError> {
    sample_pairs_mode(space, predicate, DistanceMode::Chord, count, seed, workers)
}

pub fn sample_pairs_mode(
    space: &ContinuousSpace,
    predicate: &Predicate,
    mode: DistanceMode,
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<EmpiricalSample, McError> {
    let workers = workers.max(1);
    // validate the predicate against the space once, up front
    let probe = vec![0.0; space.point_dim()];
    predicate.matches(space, &probe)?;
    let mut chunks: Vec<Vec<PairSample>> = Vec::with_capacity(workers);
    let chunk_sizes: Vec<usize> = (0..workers)
        .map(|w| count / workers + usize::from(w < count % workers))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunk_sizes
            .iter()
            .enumerate()
            .map(|(w, &size)| {
                let space = space.clone();
                let predicate = predicate.clone();
                scope.spawn(move || {
                    let mut rng = ChaCha12Rng::seed_from_u64(seed);
                    rng.set_stream(w as u64 + 1);
                    let mut pairs = Vec::with_capacity(size);
                    let mut x = Vec::new();
                    let mut y = Vec::new();
                    for _ in 0..size {
                        sample_point(&space, &mut rng, &mut x);
                        sample_point(&space, &mut rng, &mut y);
                        pairs.push(PairSample {
                            distance: distance(&space, mode, &x, &y),
                            x_in_a: predicate.matches(&space, &x).expect("validated"),
                            y_in_a: predicate.matches(&space, &y).expect("validated"),
                        });
                    }
                    pairs
                })
            })
            .collect();
        for handle in handles {
            chunks.push(handle.join().expect("sampler thread"));
        }
    });
    Ok(EmpiricalSample {
        seed,
        workers,
        pairs: chunks.concat(),
    })
}

/// Which pairs a conditional statistic ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stratum {
    /// Both endpoints in `A`.
    AA,
    /// Both endpoints in the complement.
    AcAc,
    /// `x` in `A`, `y` outside.
    AAc,
    All,
}

impl Stratum {
    fn matches(&self, pair: &PairSample) -> bool {
        match self {
            Stratum::AA => pair.x_in_a && pair.y_in_a,
            Stratum::AcAc => !pair.x_in_a && !pair.y_in_a,
            Stratum::AAc => pair.x_in_a && !pair.y_in_a,
            Stratum::All => true,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Stratum::AA => "AA",
            Stratum::AcAc => "AcAc",
            Stratum::AAc => "AAc",
            Stratum::All => "all",
        }
    }
}

/// A binomial estimate with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub count: usize,
}

/// Empirical `P(D <= r | stratum)` with the binomial standard error.
pub fn conditional_cdf(
    sample: &EmpiricalSample,
    stratum: Stratum,
    r: f64,
) -> Result<Estimate, McError> {
    let members: Vec<f64> = sample
        .pairs
        .iter()
        .filter(|p| stratum.matches(p))
        .map(|p| p.distance)
        .collect();
    if members.is_empty() {
        return Err(McError::EmptyStratum(stratum.name()));
    }
    let m = members.len();
    let hits = members.iter().filter(|&&d| d <= r).count();
    let p = hits as f64 / m as f64;
    Ok(Estimate {
        value: p,
        stderr: (p * (1.0 - p) / m as f64).sqrt(),
        count: m,
    })
}

/// Distances of a stratum.
pub fn stratum_distances(sample: &EmpiricalSample, stratum: Stratum) -> Vec<f64> {
    sample
        .pairs
        .iter()
        .filter(|p| stratum.matches(p))
        .map(|p| p.distance)
        .collect()
}

/// Report of the three-sample argument: adding the cross sample to both
/// conditional samples turns them into "distance to one free point" samples,
/// which must agree.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeSampleReport {
    pub n_aa: usize,
    pub n_acac: usize,
    pub n_cross: usize,
    pub ks: KsOutcome,
    /// Deciles of the two augmented samples, for display.
    pub augmented_quantiles: Vec<(f64, f64, f64)>,
}

pub fn three_sample_heuristic(
    sample: &EmpiricalSample,
    alpha: f64,
) -> Result<ThreeSampleReport, McError> {
    let s1 = stratum_distances(sample, Stratum::AA);
    let s2 = stratum_distances(sample, Stratum::AcAc);
    let s3 = stratum_distances(sample, Stratum::AAc);
    if s1.is_empty() {
        return Err(McError::EmptyStratum("AA"));
    }
    if s2.is_empty() {
        return Err(McError::EmptyStratum("AcAc"));
    }
    if s3.is_empty() {
        return Err(McError::EmptyStratum("AAc"));
    }
    let mut augmented1 = s1.clone();
    augmented1.extend_from_slice(&s3);
    let mut augmented2 = s2.clone();
    augmented2.extend_from_slice(&s3);
    let ks = ks_two_sample(&augmented1, &augmented2, alpha);
    augmented1.sort_by(f64::total_cmp);
    augmented2.sort_by(f64::total_cmp);
    let augmented_quantiles = (0..=10)
        .map(|decile| {
            let q = decile as f64 / 10.0;
            let pick = |xs: &[f64]| xs[((xs.len() - 1) as f64 * q).round() as usize];
            (q, pick(&augmented1), pick(&augmented2))
        })
        .collect();
    Ok(ThreeSampleReport {
        n_aa: s1.len(),
        n_acac: s2.len(),
        n_cross: s3.len(),
        ks,
        augmented_quantiles,
    })
}

/// Estimates the volume function `rho(r) = P(D <= r)` on a radius grid.
pub fn estimate_volume_function(
    space: &ContinuousSpace,
    radii: &[f64],
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<Vec<(f64, Estimate)>, McError> {
    let sample = sample_pairs(space, &Predicate::All, count, seed, workers)?;
    radii
        .iter()
        .map(|&r| Ok((r, conditional_cdf(&sample, Stratum::All, r)?)))
        .collect()
}

/// Mean distance between two random points, with the standard error of the
/// mean.
pub fn mean_chord(
    space: &ContinuousSpace,
    count: usize,
    seed: u64,
    workers: usize,
) -> Result<Estimate, McError> {
    let sample = sample_pairs(space, &Predicate::All, count, seed, workers)?;
    let n = sample.pairs.len();
    let mean = sample.pairs.iter().map(|p| p.distance).sum::<f64>() / n as f64;
    let var = sample
        .pairs
        .iter()
        .map(|p| (p.distance - mean).powi(2))
        .sum::<f64>()
        / (n as f64 - 1.0);
    Ok(Estimate {
        value: mean,
        stderr: (var / n as f64).sqrt(),
        count: n,
    })
}
