//! `hexalab mc ...`: the seeded Monte Carlo experiments.

use crate::load::load_float_column;
use crate::output::{verdict_exit, Format, Rendered, RunConfig, EXIT_PASS};
use hexalab::mc::{
    conditional_cdf, estimate_volume_function, ks_two_sample, mean_chord, sample_pairs,
    stratum_distances, three_sample_heuristic, ContinuousSpace, Predicate, Stratum,
};

/// `start:end:step`, inclusive of both ends.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid `{text}` is not start:end:step"));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| format!("bad grid number `{p}`")))
        .collect::<Result<_, _>>()?;
    let (start, end, step) = (nums[0], nums[1], nums[2]);
    if step <= 0.0 || end < start {
        return Err(format!("grid `{text}` is empty"));
    }
    let count = ((end - start) / step).round() as usize;
    Ok((0..=count).map(|i| start + step * i as f64).collect())
}

pub fn sphere_band(config: &RunConfig, n: usize, r: f64) -> Result<i32, String> {
    let space = ContinuousSpace::Sphere { dim: 2 };
    let band = Predicate::Band { max_abs_last: 0.5 };
    let sample =
        sample_pairs(&space, &band, n, config.seed, config.threads).map_err(|e| e.to_string())?;
    let caps = conditional_cdf(&sample, Stratum::AcAc, r).map_err(|e| e.to_string())?;
    let band_cdf = conditional_cdf(&sample, Stratum::AA, r).map_err(|e| e.to_string())?;
    let ks = ks_two_sample(
        &stratum_distances(&sample, Stratum::AA),
        &stratum_distances(&sample, Stratum::AcAc),
        0.01,
    );
    let caps_ok = (caps.value - 0.5).abs() <= 3.0 * caps.stderr;
    let agree = (caps.value - band_cdf.value).abs()
        <= 3.0 * (caps.stderr * caps.stderr + band_cdf.stderr * band_cdf.stderr).sqrt();
    let pass = caps_ok && agree && ks.pass;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "pairs": n,
            "r": r,
            "caps_cdf": caps.value,
            "caps_stderr": caps.stderr,
            "band_cdf": band_cdf.value,
            "band_stderr": band_cdf.stderr,
            "ks_statistic": ks.statistic,
            "ks_critical": ks.critical_value,
            "pass": pass,
        })))?,
        Format::Csv => config.emit(Rendered::Lines(vec![
            "stratum,cdf,stderr".to_owned(),
            format!("caps,{},{}", caps.value, caps.stderr),
            format!("band,{},{}", band_cdf.value, band_cdf.stderr),
        ]))?,
        Format::Text => config.emit(Rendered::Lines(vec![
            format!("caps P(D <= {r:.6}) = {:.6} +- {:.6} (expect 0.5)", caps.value, caps.stderr),
            format!("band P(D <= {r:.6}) = {:.6} +- {:.6}", band_cdf.value, band_cdf.stderr),
            format!(
                "KS band vs caps: {:.6} (critical {:.6}) -> {}",
                ks.statistic,
                ks.critical_value,
                if ks.pass { "pass" } else { "fail" }
            ),
            format!("verdict: {}", if pass { "pass" } else { "fail" }),
        ]))?,
    }
    Ok(verdict_exit(pass))
}

pub fn volume(config: &RunConfig, spec: &str, grid: &str, n: usize) -> Result<i32, String> {
    let space = ContinuousSpace::parse(spec).map_err(|e| e.to_string())?;
    let radii = parse_grid(grid)?;
    let estimates = estimate_volume_function(&space, &radii, n, config.seed, config.threads)
        .map_err(|e| e.to_string())?;
    // closed form for the 2-sphere chord law
    let closed_form = |r: f64| (r * r / 4.0).min(1.0);
    let is_sphere2 = space == ContinuousSpace::Sphere { dim: 2 };
    let all_within = estimates.iter().all(|(r, est)| {
        !is_sphere2 || (est.value - closed_form(*r)).abs() <= 3.0 * est.stderr
    });
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "spec": spec,
            "estimates": estimates
                .iter()
                .map(|(r, e)| serde_json::json!([r, e.value, e.stderr]))
                .collect::<Vec<_>>(),
            "matches_closed_form": if is_sphere2 { Some(all_within) } else { None },
        })))?,
        _ => {
            let mut lines = vec!["r,estimate,stderr".to_owned()];
            lines.extend(
                estimates
                    .iter()
                    .map(|(r, e)| format!("{r},{},{}", e.value, e.stderr)),
            );
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(all_within))
}

pub fn ks(
    config: &RunConfig,
    same: Option<&str>,
    s1: Option<&str>,
    s2: Option<&str>,
    alpha: f64,
) -> Result<i32, String> {
    let (a, b) = match (same, s1, s2) {
        (Some(path), None, None) => {
            let xs = load_float_column(path)?;
            (xs.clone(), xs)
        }
        (None, Some(p1), Some(p2)) => (load_float_column(p1)?, load_float_column(p2)?),
        _ => return Err("pass either --same FILE or both --s1 and --s2".into()),
    };
    let outcome = ks_two_sample(&a, &b, alpha);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "statistic": outcome.statistic,
            "critical": outcome.critical_value,
            "alpha": alpha,
            "pass": outcome.pass,
        })))?,
        _ => config.emit(Rendered::Lines(vec![format!(
            "KS statistic {:.6} (critical {:.6} at alpha {alpha}) -> {}",
            outcome.statistic,
            outcome.critical_value,
            if outcome.pass { "pass" } else { "fail" }
        )]))?,
    }
    Ok(verdict_exit(outcome.pass))
}

pub fn three_sample(
    config: &RunConfig,
    spec: &str,
    predicate: &str,
    n: usize,
    alpha: f64,
) -> Result<i32, String> {
    let space = ContinuousSpace::parse(spec).map_err(|e| e.to_string())?;
    let predicate = Predicate::parse(predicate).map_err(|e| e.to_string())?;
    let sample = sample_pairs(&space, &predicate, n, config.seed, config.threads)
        .map_err(|e| e.to_string())?;
    let report = three_sample_heuristic(&sample, alpha).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "n_aa": report.n_aa,
            "n_acac": report.n_acac,
            "n_cross": report.n_cross,
            "ks_statistic": report.ks.statistic,
            "ks_critical": report.ks.critical_value,
            "pass": report.ks.pass,
            "augmented_quantiles": report
                .augmented_quantiles
                .iter()
                .map(|(q, a, b)| serde_json::json!([q, a, b]))
                .collect::<Vec<_>>(),
        })))?,
        Format::Csv => {
            let mut lines = vec!["quantile,a_augmented,complement_augmented".to_owned()];
            lines.extend(
                report
                    .augmented_quantiles
                    .iter()
                    .map(|(q, a, b)| format!("{q},{a},{b}")),
            );
            config.emit(Rendered::Lines(lines))?;
        }
        Format::Text => {
            let mut lines = vec![
                format!(
                    "strata sizes: within {} / complement {} / cross {}",
                    report.n_aa, report.n_acac, report.n_cross
                ),
                format!(
                    "KS on the augmented samples: {:.6} (critical {:.6}) -> {}",
                    report.ks.statistic,
                    report.ks.critical_value,
                    if report.ks.pass { "pass" } else { "fail" }
                ),
                "quantile  within+cross  complement+cross".to_owned(),
            ];
            lines.extend(
                report
                    .augmented_quantiles
                    .iter()
                    .map(|(q, a, b)| format!("{q:>8.1}  {a:>12.6}  {b:>16.6}")),
            );
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(report.ks.pass))
}

pub fn mean(config: &RunConfig, spec: &str, n: usize) -> Result<i32, String> {
    let space = ContinuousSpace::parse(spec).map_err(|e| e.to_string())?;
    let estimate =
        mean_chord(&space, n, config.seed, config.threads).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "mean": estimate.value,
            "stderr": estimate.stderr,
            "pairs": estimate.count,
        })))?,
        _ => config.emit(Rendered::Lines(vec![format!(
            "mean distance: {:.6} +- {:.6} over {} pairs",
            estimate.value, estimate.stderr, estimate.count
        )]))?,
    }
    Ok(EXIT_PASS)
}
