//! Serialized forms: space JSON, interval-table JSON and CSV. Rationals
//! travel as decimal-free `numer/denom` strings.

use crate::intervals::IntervalTable;
use crate::rational::{format_q, parse_q, Q};
use crate::space::{Space, SpaceError, ValueKind};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Rational(#[from] crate::rational::ParseRationalError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("table: {0}")]
    Table(String),
}

/// Wire form of a [`Space`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceJson {
    pub points: Vec<String>,
    pub weights: Vec<String>,
    pub dist: Vec<Vec<String>>,
    pub value_kind: ValueKind,
}

impl SpaceJson {
    pub fn from_space(space: &Space) -> Self {
        let n = space.len();
        SpaceJson {
            points: space.labels().to_vec(),
            weights: space.weights().iter().map(format_q).collect(),
            dist: (0..n)
                .map(|i| (0..n).map(|j| format_q(space.dist(i, j))).collect())
                .collect(),
            value_kind: space.value_kind(),
        }
    }

    pub fn to_space(&self) -> Result<Space, FormatError> {
        let weights = self
            .weights
            .iter()
            .map(|w| parse_q(w))
            .collect::<Result<Vec<Q>, _>>()?;
        let matrix = self
            .dist
            .iter()
            .map(|row| row.iter().map(|v| parse_q(v)).collect())
            .collect::<Result<Vec<Vec<Q>>, _>>()?;
        Ok(Space::from_matrix(
            self.points.clone(),
            weights,
            matrix,
            self.value_kind,
        )?)
    }
}

pub fn space_to_json(space: &Space) -> String {
    serde_json::to_string_pretty(&SpaceJson::from_space(space)).expect("space serializes")
}

pub fn space_from_json(text: &str) -> Result<Space, FormatError> {
    let json: SpaceJson = serde_json::from_str(text)?;
    json.to_space()
}

/// Wire form of an [`IntervalTable`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub points: Vec<String>,
    pub values: Vec<Vec<String>>,
    #[serde(default)]
    pub weights: Option<Vec<String>>,
}

impl TableJson {
    pub fn from_table(table: &IntervalTable) -> Self {
        let n = table.len();
        TableJson {
            points: table.labels().to_vec(),
            values: (0..n)
                .map(|i| (0..n).map(|j| table.symbol(i, j).to_owned()).collect())
                .collect(),
            weights: Some(table.weights().iter().map(format_q).collect()),
        }
    }

    pub fn to_table(&self) -> Result<IntervalTable, FormatError> {
        let weights = match &self.weights {
            Some(ws) => Some(
                ws.iter()
                    .map(|w| parse_q(w))
                    .collect::<Result<Vec<Q>, _>>()?,
            ),
            None => None,
        };
        IntervalTable::from_symbols(self.points.clone(), &self.values, weights)
            .map_err(|e| FormatError::Table(e.to_string()))
    }
}

pub fn table_from_json(text: &str) -> Result<IntervalTable, FormatError> {
    let json: TableJson = serde_json::from_str(text)?;
    json.to_table()
}

/// Splits one CSV line, honoring double-quoted fields (quotes escape by
/// doubling).
fn split_csv_line(line: &str) -> Vec<String> {
    let mut fields = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted && chars.peek() == Some(&'"') => {
                field.push('"');
                chars.next();
            }
            '"' => quoted = !quoted,
            ',' if !quoted => fields.push(std::mem::take(&mut field)),
            _ => field.push(c),
        }
    }
    fields.push(field);
    fields.iter().map(|f| f.trim().to_owned()).collect()
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_owned()
    }
}

/// Parses the CSV table format: a header row of point labels (first cell
/// blank), then one row per point with its label in the first column and
/// value-alphabet symbols in the body. Fields containing commas are
/// double-quoted. The measure defaults to uniform.
pub fn table_from_csv(text: &str) -> Result<IntervalTable, FormatError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| FormatError::Table("empty table".into()))?;
    let header_cells = split_csv_line(header);
    if header_cells.len() < 2 {
        return Err(FormatError::Table("header row needs point labels".into()));
    }
    let points: Vec<String> = header_cells[1..].to_vec();
    let n = points.len();
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let cells = split_csv_line(line);
        if cells.len() != n + 1 {
            return Err(FormatError::Table(format!(
                "row {} has {} cells, expected {}",
                i + 1,
                cells.len(),
                n + 1
            )));
        }
        if i >= n || cells[0] != points[i] {
            return Err(FormatError::Table(format!(
                "row label `{}` does not match a header label",
                cells[0]
            )));
        }
        rows.push(cells[1..].to_vec());
    }
    if rows.len() != n {
        return Err(FormatError::Table(format!(
            "expected {} rows, found {}",
            n,
            rows.len()
        )));
    }
    IntervalTable::from_symbols(points, &rows, None)
        .map_err(|e| FormatError::Table(e.to_string()))
}

/// Renders a table in the CSV format accepted by [`table_from_csv`].
pub fn table_to_csv(table: &IntervalTable) -> String {
    let n = table.len();
    let mut out = String::new();
    for label in table.labels() {
        out.push(',');
        out.push_str(&csv_field(label));
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&csv_field(table.labels()[i].as_str()));
        for j in 0..n {
            out.push(',');
            out.push_str(&csv_field(table.symbol(i, j)));
        }
        out.push('\n');
    }
    out
}
