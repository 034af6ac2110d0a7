//! File formats: coefficient CSV for signals and grid waves, and the
//! JSON algebra-definition schema.
//!
//! CSV layout: header `index,a,b,c,d` with the coefficients of
//! (1, i, j, k) per row.

use std::fs;
use std::path::Path;

use crate::error::CoreError;
use crate::hnum::{HFloat, HNum};
use crate::table::{MultiplicationTable, TableFile};

pub fn write_samples_csv(path: &Path, samples: &[HFloat]) -> Result<(), CoreError> {
    let mut out = String::from("index,a,b,c,d\n");
    for (n, s) in samples.iter().enumerate() {
        out.push_str(&format!("{n},{},{},{},{}\n", s.c[0], s.c[1], s.c[2], s.c[3]));
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_samples_csv(path: &Path) -> Result<Vec<HFloat>, CoreError> {
    let text = fs::read_to_string(path)?;
    let mut samples = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (ln == 0 && line.starts_with("index")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(CoreError::InvalidConfig(format!(
                "line {}: expected 5 CSV fields, got {}",
                ln + 1,
                fields.len()
            )));
        }
        let mut c = [0.0f64; 4];
        for (slot, field) in c.iter_mut().zip(&fields[1..]) {
            *slot = field.parse::<f64>().map_err(|e| {
                CoreError::InvalidConfig(format!("line {}: {e}", ln + 1))
            })?;
        }
        samples.push(HNum::new(c));
    }
    Ok(samples)
}

/// Loads a JSON algebra definition: `{"name": ..., "table": [[...]x4]}`
/// with entries from {"1","-1","i","-i","j","-j","k","-k"}.
pub fn read_table_json(path: &Path) -> Result<MultiplicationTable, CoreError> {
    let text = fs::read_to_string(path)?;
    let file: TableFile = serde_json::from_str(&text)?;
    MultiplicationTable::from_table_file(&file)
}

pub fn write_table_json(path: &Path, table: &MultiplicationTable) -> Result<(), CoreError> {
    let file = table.to_table_file();
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}
