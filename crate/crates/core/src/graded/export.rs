//! Dimension-table reports in CSV and JSON.

use serde::{Deserialize, Serialize};

use super::{to_i128, verify_eq1, GradedIdealTable, RSequence};
use crate::error::{Error, Result};

/// One row of the dimension table; the bound and slack start at degree 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub n: usize,
    #[serde(rename = "dim_Tn")]
    pub dim_tn: u64,
    #[serde(rename = "dim_In")]
    pub dim_in: u64,
    pub b_n: u64,
    pub eq1_bound: Option<i128>,
    pub slack: Option<i128>,
}

pub fn dimension_rows(table: &GradedIdealTable, r: &RSequence) -> Vec<DimensionRow> {
    let eq1 = verify_eq1(table, r);
    (0..=table.maxdeg())
        .map(|n| {
            let row = eq1.iter().find(|e| e.n == n);
            DimensionRow {
                n,
                dim_tn: table.dim_t(n),
                dim_in: table.dim_i(n),
                b_n: table.b(n),
                eq1_bound: row.map(|e| to_i128(&e.rhs)),
                slack: row.map(|e| to_i128(&e.slack)),
            }
        })
        .collect()
}

pub fn rows_to_csv(rows: &[DimensionRow]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn rows_to_json(rows: &[DimensionRow]) -> Result<String> {
    let mut text = serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
