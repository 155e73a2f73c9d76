//! Batch measurement files: comma-separated values with a header row of
//! component names, one row per part, decimal-point reals. Values are parsed
//! locale-independently; display rounding happens only at report time.

use std::path::Path;

use crate::stack::BatchStats;

use super::spec_file::SpecFile;
use super::CliError;

/// Raw batch data as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchData {
    pub columns: Vec<String>,
    /// One inner vector per column, in header order.
    pub values: Vec<Vec<f64>>,
}

fn data_error(path: &str, message: impl Into<String>) -> CliError {
    CliError::Data {
        message: format!("{path}: {}", message.into()),
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Data {
            message: e.to_string(),
        }
    }
}

/// Read a batch data file. Every row must be complete.
pub fn load_batch(path: &Path) -> Result<BatchData, CliError> {
    let label = path.display().to_string();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let columns: Vec<String> = reader
        .headers()
        .map_err(|e| data_error(&label, e.to_string()))?
        .iter()
        .map(|h| h.to_string())
        .collect();
    if columns.is_empty() {
        return Err(data_error(&label, "no header row"));
    }
    let mut values = vec![Vec::new(); columns.len()];
    for (row_index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| data_error(&label, e.to_string()))?;
        for (col, field) in record.iter().enumerate() {
            let parsed: f64 = field.parse().map_err(|_| {
                data_error(
                    &label,
                    format!(
                        "row {}, column {}: {field:?} is not a decimal number",
                        row_index + 2,
                        columns[col]
                    ),
                )
            })?;
            if !parsed.is_finite() {
                return Err(data_error(
                    &label,
                    format!(
                        "row {}, column {}: value must be finite",
                        row_index + 2,
                        columns[col]
                    ),
                ));
            }
            values[col].push(parsed);
        }
    }
    if values[0].is_empty() {
        return Err(data_error(&label, "no data rows"));
    }
    Ok(BatchData { columns, values })
}

/// Match batch columns against the spec and compute per-component statistics
/// in model order, deltas taken against the spec's component targets.
pub fn component_stats(batch: &BatchData, spec: &SpecFile) -> Result<Vec<BatchStats>, CliError> {
    for column in &batch.columns {
        if !spec.model.components.iter().any(|c| &c.name == column) {
            return Err(CliError::Data {
                message: format!("data column {column:?} does not match any spec component"),
            });
        }
    }
    spec.model
        .components
        .iter()
        .zip(&spec.component_targets)
        .map(|(component, &target)| {
            let col = batch
                .columns
                .iter()
                .position(|c| c == &component.name)
                .ok_or_else(|| CliError::Data {
                    message: format!("spec component {:?} has no data column", component.name),
                })?;
            BatchStats::from_samples(&batch.values[col], target).map_err(CliError::from)
        })
        .collect()
}
