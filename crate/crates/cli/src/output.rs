use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use catminors::catalecticant::ComparisonReport;

use crate::args::{Common, Format};

pub const COMPARE_COLUMNS: [&str; 10] = ["k", "n", "d", "r", "t1", "t2", "rank1", "rank2", "rank_join", "verdict"];

/// A report in both output shapes.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub fn comparison_table(rep: &ComparisonReport) -> Table {
    let mut t = Table::new(&COMPARE_COLUMNS);
    for p in &rep.pairs {
        t.push(vec![
            rep.k.to_string(),
            rep.n.to_string(),
            rep.d.to_string(),
            rep.r.to_string(),
            p.t1.to_string(),
            p.t2.to_string(),
            p.rank1.to_string(),
            p.rank2.to_string(),
            p.rank_join.to_string(),
            p.verdict.as_str().to_string(),
        ]);
    }
    t
}

pub fn to_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.header)?;
    for row in &table.rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
}

pub fn emit(common: &Common, json: &Value, table: &Table) -> Result<()> {
    let text = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json)?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(table)?,
    };
    match &common.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
