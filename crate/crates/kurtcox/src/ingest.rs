//! CSV loading and column extraction.
//!
//! Input files are UTF-8, comma-delimited, with a header row. Rows whose
//! mapped fields are missing, non-numeric or non-positive are dropped and
//! counted, never silently altered: the transform math downstream requires
//! strictly positive inputs, and shifting data on the user's behalf would
//! corrupt any comparison of selected lambdas.

use std::path::Path;

use crate::error::{Error, Result};
use crate::series::Series;

/// One validated row: both firm-size fields strictly positive.
#[derive(Debug, Clone)]
pub struct FirmRecord {
    pub id: String,
    pub employees: f64,
    pub sale: f64,
}

/// A loaded file: validated records plus the count of rows dropped by
/// validation.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub records: Vec<FirmRecord>,
    pub source: String,
    pub dropped: usize,
}

/// Which headers hold the two analyzed columns. An `id` column is picked up
/// automatically when present; otherwise rows are numbered.
#[derive(Debug, Clone)]
pub struct ColumnMap {
    pub employees: String,
    pub sale: String,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            employees: "employees".to_string(),
            sale: "sale".to_string(),
        }
    }
}

/// Selects one of the two dataset columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnRole {
    Employees,
    Sale,
}

impl ColumnRole {
    pub fn label(&self) -> &'static str {
        match self {
            ColumnRole::Employees => "employees",
            ColumnRole::Sale => "sale",
        }
    }
}

impl Dataset {
    /// Extracts one column as a series, in record order, labeled by role.
    pub fn column(&self, role: ColumnRole) -> Series {
        let values = self
            .records
            .iter()
            .map(|r| match role {
                ColumnRole::Employees => r.employees,
                ColumnRole::Sale => r.sale,
            })
            .collect();
        // records are validated positive and non-empty at load
        Series::new(role.label(), values).expect("dataset records are validated at load")
    }
}

/// Loads and validates a CSV file.
pub fn load_csv(path: &Path, map: &ColumnMap) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;

    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let position = |name: &str| headers.iter().position(|h| h == name);
    let employees_at = position(&map.employees).ok_or_else(|| Error::MissingHeader {
        header: map.employees.clone(),
        path: path.to_path_buf(),
    })?;
    let sale_at = position(&map.sale).ok_or_else(|| Error::MissingHeader {
        header: map.sale.clone(),
        path: path.to_path_buf(),
    })?;
    let id_at = position("id");

    let mut records = Vec::new();
    let mut dropped = 0usize;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let employees = parse_positive(record.get(employees_at));
        let sale = parse_positive(record.get(sale_at));
        match (employees, sale) {
            (Some(employees), Some(sale)) => {
                let id = id_at
                    .and_then(|i| record.get(i))
                    .map(str::to_string)
                    .unwrap_or_else(|| (row + 1).to_string());
                records.push(FirmRecord {
                    id,
                    employees,
                    sale,
                });
            }
            _ => dropped += 1,
        }
    }

    if records.is_empty() {
        return Err(Error::EmptyAfterValidation {
            path: path.to_path_buf(),
            dropped,
        });
    }
    Ok(Dataset {
        records,
        source: path.display().to_string(),
        dropped,
    })
}

/// Plain decimal parse; thousands separators and other locale formats fail
/// and drop the row.
fn parse_positive(field: Option<&str>) -> Option<f64> {
    let value: f64 = field?.parse().ok()?;
    (value.is_finite() && value > 0.0).then_some(value)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::Io(_) => {
            if let csv::ErrorKind::Io(io) = e.into_kind() {
                Error::Io {
                    path: path.to_path_buf(),
                    source: io,
                }
            } else {
                unreachable!("kind checked above")
            }
        }
        _ => Error::Csv {
            path: path.to_path_buf(),
            source: e,
        },
    }
}
