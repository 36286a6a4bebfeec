//! `hexalab space ...`: validation, distributions, volume verdicts,
//! Patterson functions and transitivity of finite spaces.

use crate::load::{load_built_space, resolve_subset};
use crate::output::{csv_field, verdict_exit, Format, Rendered, RunConfig, EXIT_FAIL, EXIT_PASS};
use hexalab::hex::{check_cvc, check_hex};
use hexalab::patterson::check_patterson_equality;
use hexalab::rational::format_q;
use hexalab::space::{
    distance_distribution, restricted_distribution, validate_space, DistanceDistribution,
};
use hexalab::transitive::is_transitive;

fn distribution_lines(dist: &DistanceDistribution, format: Format) -> Vec<String> {
    match format {
        Format::Csv => std::iter::once("value,mass".to_owned())
            .chain(
                dist.entries()
                    .iter()
                    .map(|(v, m)| format!("{},{}", format_q(v), format_q(m))),
            )
            .collect(),
        _ => dist
            .entries()
            .iter()
            .map(|(v, m)| format!("{:>8}  {}", format_q(v), format_q(m)))
            .collect(),
    }
}

fn distribution_json(dist: &DistanceDistribution) -> serde_json::Value {
    serde_json::json!(dist
        .entries()
        .iter()
        .map(|(v, m)| serde_json::json!([format_q(v), format_q(m)]))
        .collect::<Vec<_>>())
}

pub fn validate(config: &RunConfig, recipe: &str, require_triangle: bool) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let report = validate_space(&space, require_triangle);
    let valid = report.is_valid();
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "valid": valid,
            "errors": report.errors.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "warnings": report.warnings.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })))?,
        _ => {
            let mut lines = vec![format!(
                "valid: {valid} ({} errors, {} warnings)",
                report.errors.len(),
                report.warnings.len()
            )];
            lines.extend(report.errors.iter().map(|v| format!("error: {v}")));
            lines.extend(report.warnings.iter().map(|v| format!("warning: {v}")));
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(valid))
}

pub fn dist(
    config: &RunConfig,
    recipe: &str,
    subset: Option<&str>,
    normalize: bool,
) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let dist = match subset {
        None => distance_distribution(&space),
        Some(text) => {
            let indices = resolve_subset(&space, text)?;
            let mask = space
                .mask_from_indices(&indices)
                .map_err(|e| e.to_string())?;
            let raw = restricted_distribution(&space, &mask, &mask);
            if normalize {
                raw.normalized().ok_or("subset has zero measure")?
            } else {
                raw
            }
        }
    };
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "entries": distribution_json(&dist),
            "total": format_q(dist.total()),
        })))?,
        format => config.emit(Rendered::Lines(distribution_lines(&dist, format)))?,
    }
    Ok(EXIT_PASS)
}

pub fn cvc(config: &RunConfig, recipe: &str) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let verdict = check_cvc(&space);
    match config.format {
        Format::Json => config.emit(Rendered::Json(verdict.to_json(&space)))?,
        _ => {
            let mut lines = vec![format!("constant volume condition: {}", verdict.holds)];
            if let Some(rho) = &verdict.rho {
                lines.extend(
                    rho.canonical()
                        .steps()
                        .iter()
                        .map(|(r, m)| format!("rho({}) = {}", format_q(r), format_q(m))),
                );
            }
            if let Some(w) = &verdict.witness {
                lines.push(format!(
                    "witness: balls of radius {} at `{}` and `{}` have different mass",
                    format_q(&w.r),
                    space.label(w.x),
                    space.label(w.y)
                ));
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(verdict.holds))
}

pub fn hex(config: &RunConfig, recipe: &str, subset: &str) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let indices = resolve_subset(&space, subset)?;
    let mask = space
        .mask_from_indices(&indices)
        .map_err(|e| e.to_string())?;
    let verdict = check_hex(&space, &mask).map_err(|e| e.to_string())?;
    let normalized = |d: &DistanceDistribution| d.normalized().expect("half measure");
    match config.format {
        Format::Json => config.emit(Rendered::Json(verdict.to_json()))?,
        format => {
            let mut lines = vec![format!("hexachordal property: {}", verdict.holds)];
            lines.push("distance law within A (normalized):".into());
            lines.extend(distribution_lines(&normalized(&verdict.dist_a), format));
            lines.push("distance law within the complement (normalized):".into());
            lines.extend(distribution_lines(&normalized(&verdict.dist_ac), format));
            if let Some(r) = &verdict.first_divergence {
                lines.push(format!("first divergence at {}", format_q(r)));
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(verdict.holds))
}

pub fn patterson(config: &RunConfig, recipe: &str, subset: &str) -> Result<i32, String> {
    let built = load_built_space(recipe)?;
    let group = built
        .group
        .ok_or("this recipe does not describe a group (use a cayley or zmod recipe)")?;
    let space = built.space;
    let indices = resolve_subset(&space, subset)?;
    let mask = space
        .mask_from_indices(&indices)
        .map_err(|e| e.to_string())?;
    let report = check_patterson_equality(&group, &mask);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "holds": report.holds,
            "pat_a": report.pat_a.iter().map(format_q).collect::<Vec<_>>(),
            "pat_ac": report.pat_ac.iter().map(format_q).collect::<Vec<_>>(),
            "difference_constant": format_q(&report.expected_constant),
            "inverse_symmetric": report.inverse_symmetric,
        })))?,
        Format::Csv => {
            let mut lines = vec!["element,pat_a,pat_ac".to_owned()];
            for g in 0..group.order() {
                lines.push(format!(
                    "{},{},{}",
                    csv_field(&group.label(g)),
                    format_q(&report.pat_a[g]),
                    format_q(&report.pat_ac[g])
                ));
            }
            config.emit(Rendered::Lines(lines))?;
        }
        Format::Text => {
            let mut lines = vec![
                format!("patterson equality: {}", report.holds),
                format!(
                    "difference constant: {}",
                    format_q(&report.expected_constant)
                ),
            ];
            for g in 0..group.order() {
                lines.push(format!(
                    "Pat({}) = {:<8} Pat_c({}) = {}",
                    group.label(g),
                    format_q(&report.pat_a[g]),
                    group.label(g),
                    format_q(&report.pat_ac[g])
                ));
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(report.holds))
}

/// Materializes a recipe into the explicit space JSON.
pub fn export(config: &RunConfig, recipe: &str) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let json = hexalab::io::SpaceJson::from_space(&space);
    match config.format {
        Format::Json => config.emit(Rendered::Json(
            serde_json::to_value(&json).map_err(|e| e.to_string())?,
        ))?,
        _ => config.emit(Rendered::Lines(vec![
            serde_json::to_string_pretty(&json).map_err(|e| e.to_string())?
        ]))?,
    }
    Ok(EXIT_PASS)
}

pub fn transitive(config: &RunConfig, recipe: &str) -> Result<i32, String> {
    let space = load_built_space(recipe)?.space;
    let transitive = is_transitive(&space);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "transitive": transitive
        })))?,
        _ => config.emit(Rendered::Lines(vec![format!("transitive: {transitive}")]))?,
    }
    Ok(if transitive { EXIT_PASS } else { EXIT_FAIL })
}
