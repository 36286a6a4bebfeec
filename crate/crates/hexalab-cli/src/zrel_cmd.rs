//! `hexalab zrel ...`: interval vectors, homometry class reports and the
//! exhaustive complement check.

use crate::load::parse_residues;
use crate::output::{Format, Rendered, RunConfig, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use hexalab::tiling::CyclicSubset;
use hexalab::zrel::{
    complement_homometry_check, homometry_classes, interval_content, ti_canonical, z_tuple_report,
    ZrelError,
};

pub fn ivec(config: &RunConfig, n: u32, a: &str) -> Result<i32, String> {
    let subset = CyclicSubset::new(n, &parse_residues(a)?).map_err(|e| e.to_string())?;
    let vector = interval_content(&subset);
    let canonical = ti_canonical(&subset);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "interval_vector": vector.counts(),
            "canonical_form": canonical.elements(),
        })))?,
        _ => config.emit(Rendered::Lines(vec![
            format!(
                "interval vector: {}",
                vector
                    .counts()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            format!("canonical form: {{{}}}", canonical.elements_string()),
        ]))?,
    }
    Ok(EXIT_PASS)
}

#[allow(clippy::too_many_arguments)]
pub fn classes(
    config: &RunConfig,
    n: u32,
    k: u32,
    min_size: usize,
    budget: Option<u128>,
    force: bool,
) -> Result<i32, String> {
    let budget = if force { Some(u128::MAX) } else { budget };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| e.to_string())?;
    let report = match pool.install(|| homometry_classes(n, k, budget)) {
        Ok(report) => report,
        Err(e @ ZrelError::BudgetExceeded { .. }) => {
            eprintln!("{e}; pass --force to run anyway");
            return Ok(EXIT_INPUT);
        }
        Err(e) => return Err(e.to_string()),
    };
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "n": n,
            "k": k,
            "dihedral_classes": report.total_dihedral_classes(),
            "max_class_size": report.max_class_size(),
            "histogram": report
                .histogram
                .iter()
                .map(|(size, count)| serde_json::json!([size, count]))
                .collect::<Vec<_>>(),
            "classes": report
                .classes
                .iter()
                .filter(|c| c.size() >= min_size)
                .map(|c| serde_json::json!({
                    "interval_vector": c.interval_vector.counts(),
                    "size": c.size(),
                    "representatives": c
                        .representatives
                        .iter()
                        .map(|r| r.elements())
                        .collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>(),
        })))?,
        _ => {
            // the CSV body is the pinned three-column report
            let csv = z_tuple_report(&report, min_size);
            let mut lines: Vec<String> = csv.lines().map(str::to_owned).collect();
            if config.format == Format::Text {
                lines.insert(
                    0,
                    format!(
                        "histogram (size -> classes): {:?}",
                        report.histogram
                    ),
                );
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(EXIT_PASS)
}

pub fn babbitt(config: &RunConfig, n: u32) -> Result<i32, String> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err("the complement check needs an even modulus".into());
    }
    let pass = complement_homometry_check(n).map_err(|e| e.to_string())?;
    let subsets = hexalab::zrel::binomial(n, n / 2);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "n": n,
            "half_subsets": subsets.to_string(),
            "all_complements_homometric": pass,
        })))?,
        _ => config.emit(Rendered::Lines(vec![format!(
            "all {subsets} half-size subsets share their complement's interval vector: {pass}"
        )]))?,
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
