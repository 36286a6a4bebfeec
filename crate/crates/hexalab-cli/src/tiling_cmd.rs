//! `hexalab tiling ...`: zero sets, the tiling criterion, complements,
//! spectra and aperiodic (Vuza) factorizations.

use crate::load::parse_residues;
use crate::output::{verdict_exit, Format, Rendered, RunConfig, EXIT_FAIL, EXIT_PASS};
use hexalab::tiling::{
    direct_sum_check, find_complements, find_spectrum, is_periodic, is_tiling_pair, is_vuza_pair,
    vuza_search, zero_set, CyclicSubset,
};

fn subset_arg(n: u32, text: &str) -> Result<CyclicSubset, String> {
    CyclicSubset::new(n, &parse_residues(text)?).map_err(|e| e.to_string())
}

fn elements_json(s: &CyclicSubset) -> serde_json::Value {
    serde_json::json!(s.elements())
}

pub fn zeros(config: &RunConfig, n: u32, a: &str) -> Result<i32, String> {
    let a = subset_arg(n, a)?;
    let z = zero_set(&a);
    let period = is_periodic(&a);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "n": n,
            "a": elements_json(&a),
            "zeros": z.elements(),
            "period": period,
        })))?,
        Format::Csv => {
            let mut lines = vec!["zero".to_owned()];
            lines.extend(z.elements().iter().map(|t| t.to_string()));
            config.emit(Rendered::Lines(lines))?;
        }
        Format::Text => {
            let zs: Vec<String> = z.elements().iter().map(|t| t.to_string()).collect();
            config.emit(Rendered::Lines(vec![
                format!("zero set: {{{}}}", zs.join(", ")),
                match period {
                    Some(p) => format!("period: {p}"),
                    None => "period: none (aperiodic)".to_owned(),
                },
            ]))?;
        }
    }
    Ok(EXIT_PASS)
}

pub fn check(config: &RunConfig, n: u32, a: &str, b: &str) -> Result<i32, String> {
    let a = subset_arg(n, a)?;
    let b = subset_arg(n, b)?;
    let by_zero_sets = is_tiling_pair(&a, &b).map_err(|e| e.to_string())?;
    let by_direct_sum = direct_sum_check(&a, &b).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "tiling": by_zero_sets && by_direct_sum,
            "by_zero_sets": by_zero_sets,
            "by_direct_sum": by_direct_sum,
        })))?,
        _ => config.emit(Rendered::Lines(vec![
            format!("tiling (zero-set criterion): {by_zero_sets}"),
            format!("tiling (direct-sum check): {by_direct_sum}"),
        ]))?,
    }
    Ok(verdict_exit(by_zero_sets && by_direct_sum))
}

pub fn complements(config: &RunConfig, n: u32, a: &str, full_orbit: bool) -> Result<i32, String> {
    let a = subset_arg(n, a)?;
    let found = find_complements(&a, !full_orbit);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "count": found.len(),
            "complements": found.iter().map(elements_json).collect::<Vec<_>>(),
        })))?,
        Format::Csv => {
            let mut lines = vec!["complement".to_owned()];
            lines.extend(found.iter().map(|b| {
                b.elements()
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            }));
            config.emit(Rendered::Lines(lines))?;
        }
        Format::Text => {
            let mut lines = vec![format!("complements: {}", found.len())];
            lines.extend(found.iter().map(|b| format!("  {{{}}}", b.elements_string())));
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(EXIT_PASS)
}

pub fn spectrum(config: &RunConfig, n: u32, a: &str) -> Result<i32, String> {
    let a = subset_arg(n, a)?;
    let found = find_spectrum(&a);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "spectrum": found.as_ref().map(elements_json),
        })))?,
        _ => config.emit(Rendered::Lines(vec![match &found {
            Some(s) => format!("spectrum: {{{}}}", s.elements_string()),
            None => "spectrum: none".to_owned(),
        }]))?,
    }
    Ok(if found.is_some() { EXIT_PASS } else { EXIT_FAIL })
}

#[allow(clippy::too_many_arguments)]
pub fn vuza(
    config: &RunConfig,
    n: u32,
    a: Option<&str>,
    b: Option<&str>,
    search: bool,
    size: u32,
    max_candidates: u64,
) -> Result<i32, String> {
    if search {
        let mut last_report = 0u64;
        let found = vuza_search(n, size, max_candidates, |progress| {
            if progress.candidates_tried >= last_report + 500_000 {
                eprintln!(
                    "# searched {} candidates, at {:?}",
                    progress.candidates_tried, progress.current_first
                );
                last_report = progress.candidates_tried;
            }
        });
        return match found {
            Some((a, b)) => {
                match config.format {
                    Format::Json => config.emit(Rendered::Json(serde_json::json!({
                        "found": true,
                        "a": elements_json(&a),
                        "b": elements_json(&b),
                    })))?,
                    _ => config.emit(Rendered::Lines(vec![
                        format!("aperiodic factor A: {{{}}}", a.elements_string()),
                        format!("aperiodic factor B: {{{}}}", b.elements_string()),
                    ]))?,
                }
                Ok(EXIT_PASS)
            }
            None => {
                config.emit(Rendered::Lines(vec![
                    "no aperiodic factorization found within the budget".to_owned(),
                ]))?;
                Ok(EXIT_FAIL)
            }
        };
    }
    let (a, b) = match (a, b) {
        (Some(a), Some(b)) => (subset_arg(n, a)?, subset_arg(n, b)?),
        _ => return Err("either pass --a and --b to check a pair, or --search".into()),
    };
    let verdict = is_vuza_pair(&a, &b).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "vuza": verdict,
            "a_period": is_periodic(&a),
            "b_period": is_periodic(&b),
        })))?,
        _ => config.emit(Rendered::Lines(vec![format!("vuza pair: {verdict}")]))?,
    }
    Ok(verdict_exit(verdict))
}
