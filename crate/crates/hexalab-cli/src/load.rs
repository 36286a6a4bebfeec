//! Input loading shared by the commands: recipes (inline JSON or a file
//! path), interval tables (CSV or JSON by extension), subset strings and
//! float-sample files.

use hexalab::constructions::{build_recipe, recipe_from_json, BuiltSpace};
use hexalab::intervals::IntervalTable;
use hexalab::io::{table_from_csv, table_from_json};
use hexalab::space::Space;

/// A recipe argument is inline JSON when it starts with `{`, otherwise a
/// path to a JSON file.
pub fn load_built_space(recipe_arg: &str) -> Result<BuiltSpace, String> {
    let text = if recipe_arg.trim_start().starts_with('{') {
        recipe_arg.to_owned()
    } else {
        std::fs::read_to_string(recipe_arg).map_err(|e| format!("read {recipe_arg}: {e}"))?
    };
    let recipe = recipe_from_json(&text).map_err(|e| format!("parse recipe: {e}"))?;
    build_recipe(&recipe).map_err(|e| format!("build space: {e}"))
}

pub fn load_table(path: &str) -> Result<IntervalTable, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("read {path}: {e}"))?;
    if path.ends_with(".json") || text.trim_start().starts_with('{') {
        table_from_json(&text).map_err(|e| e.to_string())
    } else {
        table_from_csv(&text).map_err(|e| e.to_string())
    }
}

/// Subset syntax: labels separated by `;`; when no semicolon is present and
/// the whole string is not itself a label, it is split on commas instead
/// (so plain residue lists work for cyclic groups).
pub fn parse_subset_labels(text: &str) -> Vec<String> {
    if text.contains(';') {
        text.split(';').map(|s| s.trim().to_owned()).collect()
    } else {
        vec![text.trim().to_owned()]
    }
}

pub fn resolve_subset(space: &Space, text: &str) -> Result<Vec<usize>, String> {
    resolve_generic(text, |label| space.point_by_label(label))
}

pub fn resolve_table_subset(table: &IntervalTable, text: &str) -> Result<Vec<usize>, String> {
    resolve_generic(text, |label| table.point_by_label(label))
}

fn resolve_generic(
    text: &str,
    lookup: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<usize>, String> {
    let pieces = parse_subset_labels(text);
    let mut indices = Vec::new();
    let resolve_all = |pieces: &[String]| -> Result<Vec<usize>, String> {
        pieces
            .iter()
            .map(|p| lookup(p).ok_or_else(|| format!("unknown point `{p}`")))
            .collect()
    };
    match resolve_all(&pieces) {
        Ok(found) => indices.extend(found),
        Err(first_error) => {
            // fall back to comma splitting for single-piece residue lists
            if pieces.len() == 1 && pieces[0].contains(',') {
                let split: Vec<String> =
                    pieces[0].split(',').map(|s| s.trim().to_owned()).collect();
                indices.extend(resolve_all(&split).map_err(|_| first_error)?);
            } else {
                return Err(first_error);
            }
        }
    }
    Ok(indices)
}

/// Residue list `0,3,6,9` for the tiling and Z-relation commands.
pub fn parse_residues(text: &str) -> Result<Vec<u32>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("bad residue `{s}`"))
        })
        .collect()
}

/// One float per line; blank lines and `#` comments are skipped.
pub fn load_float_column(path: &str) -> Result<Vec<f64>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("read {path}: {e}"))?;
    let mut values = Vec::new();
    for (number, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        // take the first comma-separated field so distance CSVs also load
        let field = line.split(',').next().unwrap();
        values.push(
            field
                .parse::<f64>()
                .map_err(|_| format!("{path}:{}: bad number `{field}`", number + 1))?,
        );
    }
    if values.is_empty() {
        return Err(format!("{path}: no samples"));
    }
    Ok(values)
}
