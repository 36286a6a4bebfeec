//! `hexalab symbolic ...`: interval-table deciders, the decomposition
//! oracle, Latin-square and group checks, and conditional interval laws.

use crate::load::{load_table, resolve_table_subset};
use crate::output::{csv_field, verdict_exit, Format, Rendered, RunConfig};
use clap::ValueEnum;
use hexalab::intervals::{
    check_hex_doubleprime, check_hex_prime, check_ind, conditional_interval_distribution,
    is_latin_square, loop_is_group, sample_decomposition_oracle, Coordinate, IntervalTable,
    KernelVerdict, OracleMode,
};
use hexalab::rational::format_q;

fn witness_text(table: &IntervalTable, verdict: &KernelVerdict) -> Option<String> {
    verdict.witness.as_ref().map(|w| {
        let coordinate = match w.coordinate {
            Coordinate::X => "X",
            Coordinate::Y => "Y",
            Coordinate::Symmetrized => "symmetrized",
        };
        format!(
            "witness: {coordinate} kernel differs at point `{}`, value `{}`",
            table.labels()[w.point],
            table.alphabet()[w.value]
        )
    })
}

fn emit_kernel_verdict(
    config: &RunConfig,
    table: &IntervalTable,
    name: &str,
    verdict: &KernelVerdict,
) -> Result<i32, String> {
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "property": name,
            "holds": verdict.holds,
            "witness": witness_text(table, verdict),
        })))?,
        _ => {
            let mut lines = vec![format!("{name}: {}", verdict.holds)];
            lines.extend(witness_text(table, verdict));
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(verdict.holds))
}

pub fn ind(config: &RunConfig, path: &str) -> Result<i32, String> {
    let table = load_table(path)?;
    let verdict = check_ind(&table);
    emit_kernel_verdict(config, &table, "pairwise independence", &verdict)
}

pub fn hexprime(config: &RunConfig, path: &str) -> Result<i32, String> {
    let table = load_table(path)?;
    let verdict = check_hex_prime(&table);
    emit_kernel_verdict(config, &table, "shared-decomposition property", &verdict)
}

pub fn hexdd(config: &RunConfig, path: &str) -> Result<i32, String> {
    let table = load_table(path)?;
    let verdict = check_hex_doubleprime(&table);
    emit_kernel_verdict(config, &table, "double-decomposition property", &verdict)
}

pub fn latin(config: &RunConfig, path: &str, group_check: bool) -> Result<i32, String> {
    let table = load_table(path)?;
    let latin = is_latin_square(&table);
    let group = if group_check && latin {
        Some(loop_is_group(&table).map_err(|e| e.to_string())?)
    } else {
        None
    };
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "latin": latin,
            "group": group,
        })))?,
        _ => {
            let mut lines = vec![format!("latin: {latin}")];
            if let Some(g) = group {
                lines.push(format!("group: {g}"));
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    // composite commands report the conjunction of the requested verdicts
    Ok(verdict_exit(latin && group.unwrap_or(true)))
}

pub fn group(config: &RunConfig, path: &str) -> Result<i32, String> {
    let table = load_table(path)?;
    let verdict = loop_is_group(&table).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => {
            config.emit(Rendered::Json(serde_json::json!({ "group": verdict })))?
        }
        _ => config.emit(Rendered::Lines(vec![format!("group: {verdict}")]))?,
    }
    Ok(verdict_exit(verdict))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleModeArg {
    Prime,
    Doubleprime,
}

pub fn oracle(
    config: &RunConfig,
    path: &str,
    mode: OracleModeArg,
    trials: usize,
) -> Result<i32, String> {
    let table = load_table(path)?;
    let mode = match mode {
        OracleModeArg::Prime => OracleMode::HexPrime,
        OracleModeArg::Doubleprime => OracleMode::HexDoublePrime,
    };
    let outcome = sample_decomposition_oracle(&table, mode, trials, config.seed);
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "consistent": outcome.consistent,
            "violating_trial": outcome.violation.as_ref().map(|v| v.trial),
            "violating_mu0": outcome.violation.as_ref().map(|v| {
                v.decomposition.mu0.iter().map(format_q).collect::<Vec<_>>()
            }),
        })))?,
        _ => {
            let mut lines = vec![format!(
                "oracle consistent over {trials} trials: {}",
                outcome.consistent
            )];
            if let Some(v) = &outcome.violation {
                lines.push(format!("violation at trial {}", v.trial));
                lines.push(format!(
                    "mu0 = [{}]",
                    v.decomposition
                        .mu0
                        .iter()
                        .map(format_q)
                        .collect::<Vec<_>>()
                        .join(", ")
                ));
            }
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(verdict_exit(outcome.consistent))
}

pub fn fdist(config: &RunConfig, path: &str, subset: &str) -> Result<i32, String> {
    let table = load_table(path)?;
    let indices = resolve_table_subset(&table, subset)?;
    let mask = table
        .mask_from_indices(&indices)
        .map_err(|e| e.to_string())?;
    let dist = conditional_interval_distribution(&table, &mask).map_err(|e| e.to_string())?;
    match config.format {
        Format::Json => config.emit(Rendered::Json(serde_json::json!({
            "entries": dist
                .iter()
                .map(|(s, m)| serde_json::json!([s, format_q(m)]))
                .collect::<Vec<_>>(),
        })))?,
        Format::Csv => {
            let mut lines = vec!["value,mass".to_owned()];
            lines.extend(
                dist.iter()
                    .map(|(s, m)| format!("{},{}", csv_field(s), format_q(m))),
            );
            config.emit(Rendered::Lines(lines))?;
        }
        Format::Text => {
            let lines = dist
                .iter()
                .map(|(s, m)| format!("{s:>8}  {}", format_q(m)))
                .collect();
            config.emit(Rendered::Lines(lines))?;
        }
    }
    Ok(crate::output::EXIT_PASS)
}
