use std::collections::BTreeMap;
use std::io::Write;

use crate::error::Result;
use crate::stats::{Stats, Summary};

/// First line of every CSV the harness writes.
pub const SCHEMA_HEADER: &str = "# covertime-lab schema v1";

/// One aggregated statistic of one `(n, d, kind)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub n: usize,
    pub d: usize,
    pub kind: String,
    pub metric: String,
    pub stats: Stats,
}

impl ResultRow {
    pub const CSV_HEADER: &'static str = "n,d,kind,metric,count,mean,sd,min,max";

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> Result<()> {
        let s = &self.stats;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            self.n, self.d, self.kind, self.metric, s.count, s.mean, s.sd, s.min, s.max
        )?;
        Ok(())
    }
}

/// Samples keyed by `(n, d, kind, metric)`.
///
/// Rows are produced in key order from sorted samples, so any partition of
/// the same samples merged in any order gives identical rows.
#[derive(Debug, Clone, Default)]
pub struct Aggregator {
    cells: BTreeMap<(usize, usize, String, String), Summary>,
}

impl Aggregator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, n: usize, d: usize, kind: &str, metric: &str, value: f64) {
        self.cells
            .entry((n, d, kind.to_string(), metric.to_string()))
            .or_default()
            .push(value);
    }

    pub fn merge(&mut self, other: &Aggregator) {
        for (k, v) in &other.cells {
            self.cells.entry(k.clone()).or_default().merge(v);
        }
    }

    pub fn rows(&self) -> Vec<ResultRow> {
        self.cells
            .iter()
            .map(|((n, d, kind, metric), s)| ResultRow {
                n: *n,
                d: *d,
                kind: kind.clone(),
                metric: metric.clone(),
                stats: s.stats(),
            })
            .collect()
    }

    pub fn get(&self, n: usize, d: usize, kind: &str, metric: &str) -> Option<Stats> {
        self.cells
            .get(&(n, d, kind.to_string(), metric.to_string()))
            .map(Summary::stats)
    }

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "{SCHEMA_HEADER}")?;
        writeln!(out, "{}", ResultRow::CSV_HEADER)?;
        for row in self.rows() {
            row.write_csv(out)?;
        }
        Ok(())
    }
}
