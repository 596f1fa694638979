//! The strata table: one row per unstable Harder–Narasimhan type.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use qt_core::{HnEnumerator, Rational, StratumWeightData};

use crate::error::CliError;
use crate::problem::ProblemSpec;

pub const COLUMNS: [&str; 8] = [
    "hn_type",
    "codim",
    "slopes",
    "C",
    "k",
    "k1_minus_kl",
    "eta",
    "inequality",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataRow {
    pub hn_type: String,
    pub codim: i64,
    pub slopes: Vec<Rational>,
    pub c: BigInt,
    pub k: Vec<BigInt>,
    pub k1_minus_kl: BigInt,
    pub eta: BigInt,
    pub inequality: bool,
}

impl StrataRow {
    pub fn from_report(report: &StratumWeightData, slopes: Vec<Rational>) -> Self {
        StrataRow {
            hn_type: report.hn_type.to_string(),
            codim: report.codim,
            slopes,
            c: report.one_ps.c.clone(),
            k: report.one_ps.k.clone(),
            k1_minus_kl: report.one_ps.k_first_minus_last(),
            eta: report.eta.clone(),
            inequality: report.inequality_holds,
        }
    }

    pub fn cells(&self) -> [String; 8] {
        [
            self.hn_type.clone(),
            self.codim.to_string(),
            tuple(&self.slopes),
            self.c.to_string(),
            tuple(&self.k),
            self.k1_minus_kl.to_string(),
            self.eta.to_string(),
            self.inequality.to_string(),
        ]
    }

    pub fn from_cells<S: AsRef<str>>(cells: &[S]) -> Result<Self, CliError> {
        if cells.len() != COLUMNS.len() {
            return Err(CliError::Schema(format!(
                "expected {} columns, found {}",
                COLUMNS.len(),
                cells.len()
            )));
        }
        let cell = |i: usize| cells[i].as_ref();
        Ok(StrataRow {
            hn_type: cell(0).to_string(),
            codim: parse_scalar(cell(1))?,
            slopes: parse_tuple(cell(2))?,
            c: parse_scalar(cell(3))?,
            k: parse_tuple(cell(4))?,
            k1_minus_kl: parse_scalar(cell(5))?,
            eta: parse_scalar(cell(6))?,
            inequality: parse_scalar(cell(7))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataTable {
    pub rows: Vec<StrataRow>,
    /// Number of HN types including the dense one, if present.
    pub stratum_count: usize,
    pub has_dense: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Txt,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "txt" => Ok(Format::Txt),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(CliError::Usage(format!(
                "unknown format {other:?}, expected txt, csv or md"
            ))),
        }
    }
}

impl StrataTable {
    pub fn build(spec: &ProblemSpec) -> Result<Self, CliError> {
        let mut enumerator = HnEnumerator::new(&spec.quiver, spec.theta.clone())?;
        let types = enumerator.enumerate(&spec.d)?;
        let has_dense = types.iter().any(|t| t.is_dense());
        let rows = types
            .iter()
            .filter(|t| !t.is_dense())
            .map(|t| {
                let report = qt_core::stratum_report(&spec.quiver, &spec.theta, t);
                StrataRow::from_report(&report, t.slopes(&spec.theta))
            })
            .collect();
        Ok(StrataTable {
            rows,
            stratum_count: types.len(),
            has_dense,
        })
    }

    pub fn summary(&self) -> String {
        let failing = self.rows.iter().filter(|r| !r.inequality).count();
        format!(
            "{} unstable strata ({} in total, semistable locus {}); inequality fails on {}",
            self.rows.len(),
            self.stratum_count,
            if self.has_dense { "nonempty" } else { "empty" },
            failing
        )
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(COLUMNS)?;
        for row in &self.rows {
            writer.write_record(row.cells())?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Output(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("cells are UTF-8"))
    }

    /// Parses rows written by [`StrataTable::to_csv`].
    pub fn rows_from_csv(text: &str) -> Result<Vec<StrataRow>, CliError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader.headers()?.clone();
        if headers.iter().ne(COLUMNS) {
            return Err(CliError::Schema(format!("unexpected header {headers:?}")));
        }
        reader
            .records()
            .map(|record| StrataRow::from_cells(&record?.iter().collect::<Vec<_>>()))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<[String; 8]> = self.rows.iter().map(StrataRow::cells).collect();
        let widths: Vec<usize> = (0..COLUMNS.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|c| c[i].len())
                    .chain([COLUMNS[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, row: &[&str]| {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:<w$}"))
                .collect();
            writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(&mut out, &COLUMNS);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        line(
            &mut out,
            &rule.iter().map(String::as_str).collect::<Vec<_>>(),
        );
        for row in &cells {
            line(
                &mut out,
                &row.iter().map(String::as_str).collect::<Vec<_>>(),
            );
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("| {} |\n", COLUMNS.join(" | "));
        writeln!(out, "|{}", "---|".repeat(COLUMNS.len())).unwrap();
        for row in &self.rows {
            writeln!(out, "| {} |", row.cells().join(" | ")).unwrap();
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Txt => Ok(self.to_text()),
            Format::Csv => self.to_csv(),
            Format::Md => Ok(self.to_markdown()),
        }
    }
}

fn tuple<T: ToString>(values: &[T]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn parse_scalar<T: FromStr>(cell: &str) -> Result<T, CliError> {
    cell.trim()
        .parse()
        .map_err(|_| CliError::Schema(format!("cannot parse cell {cell:?}")))
}

fn parse_tuple<T: FromStr>(cell: &str) -> Result<Vec<T>, CliError> {
    let inner = cell
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| CliError::Schema(format!("expected a tuple, found {cell:?}")))?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(parse_scalar).collect()
}
