//! Sweep tables and their CSV form.
//!
//! A table starts with `#` metadata lines (tool version, mode, branch, and the
//! full base parameter set), followed by the header `param,value,n,E,residual`.
//! Numbers carry 17 significant digits so parsing reproduces them exactly.
//! A point the solver could not produce is kept as a gap row whose `E` field
//! is `gap` and whose `residual` field names the error kind.

use std::cmp::Ordering;
use std::io::Write;

use dkp_core::{Branch, Mode, ModelParams, Param};

use crate::config::{parse_assignments, render_params};
use crate::error::{CliError, Result};

pub const HEADER: [&str; 5] = ["param", "value", "n", "E", "residual"];
const GAP: &str = "gap";

#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    Solved { energy: f64, residual: f64 },
    Gap { kind: String },
}

impl Point {
    pub fn energy(&self) -> Option<f64> {
        match self {
            Point::Solved { energy, .. } => Some(*energy),
            Point::Gap { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: Param,
    pub value: f64,
    pub n: u32,
    pub point: Point,
}

impl SweepRow {
    fn order(&self, other: &Self) -> Ordering {
        self.param
            .cmp(&other.param)
            .then(self.value.total_cmp(&other.value))
            .then(self.n.cmp(&other.n))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub version: String,
    pub base: ModelParams,
    pub mode: Mode,
    pub branch: Branch,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// Sorts rows by swept parameter, then value, then `n`.
    pub fn sort(&mut self) {
        self.rows.sort_by(SweepRow::order);
    }

    /// Energies of level `n` along the sweep of `param`, in row order, with
    /// `None` for gaps.
    pub fn series(&self, param: Param, n: u32) -> Vec<(f64, Option<f64>)> {
        self.rows
            .iter()
            .filter(|r| r.param == param && r.n == n)
            .map(|r| (r.value, r.point.energy()))
            .collect()
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "# {}", self.version)?;
        writeln!(out, "# mode={}", self.mode.name())?;
        writeln!(out, "# branch={}", self.branch.name())?;
        writeln!(out, "# base {}", render_params(&self.base))?;
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(HEADER)?;
        for row in &self.rows {
            let (e, residual) = match &row.point {
                Point::Solved { energy, residual } => (num(*energy), num(*residual)),
                Point::Gap { kind } => (GAP.to_string(), kind.clone()),
            };
            w.write_record([row.param.name(), &num(row.value), &row.n.to_string(), &e, &residual])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is ASCII")
    }

    pub fn parse_csv(text: &str) -> Result<SweepTable> {
        let mut version = None;
        let mut mode = None;
        let mut branch = None;
        let mut base = None;
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            let meta = line.trim_start_matches('#').trim();
            if let Some(v) = meta.strip_prefix("mode=") {
                mode = Some(Mode::from_name(v).ok_or_else(|| bad(format!("unknown mode `{v}`")))?);
            } else if let Some(v) = meta.strip_prefix("branch=") {
                branch = Some(Branch::from_name(v).ok_or_else(|| bad(format!("unknown branch `{v}`")))?);
            } else if let Some(v) = meta.strip_prefix("base ") {
                base = Some(parse_assignments(v).map_err(bad)?);
            } else if version.is_none() {
                version = Some(meta.to_string());
            }
        }
        let missing = |what: &str| bad(format!("missing {what} metadata"));

        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        if reader.headers()?.iter().ne(HEADER) {
            return Err(bad(format!("expected header {}", HEADER.join(","))));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let field = |i: usize| record.get(i).ok_or_else(|| bad(format!("short row {record:?}")));
            let param = Param::from_name(field(0)?)
                .ok_or_else(|| bad(format!("unknown param `{}`", field(0).unwrap_or(""))))?;
            let value = parse_num(field(1)?)?;
            let n = field(2)?
                .parse()
                .map_err(|_| bad(format!("bad level `{}`", field(2).unwrap_or(""))))?;
            let point = if field(3)? == GAP {
                Point::Gap {
                    kind: field(4)?.to_string(),
                }
            } else {
                Point::Solved {
                    energy: parse_num(field(3)?)?,
                    residual: parse_num(field(4)?)?,
                }
            };
            rows.push(SweepRow { param, value, n, point });
        }
        Ok(SweepTable {
            version: version.ok_or_else(|| missing("version"))?,
            base: base.ok_or_else(|| missing("base"))?,
            mode: mode.ok_or_else(|| missing("mode"))?,
            branch: branch.ok_or_else(|| missing("branch"))?,
            rows,
        })
    }
}

/// 17 significant digits in scientific notation.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_num(s: &str) -> Result<f64> {
    s.parse().map_err(|_| bad(format!("bad number `{s}`")))
}

fn bad(message: String) -> CliError {
    CliError::Table(message)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SweepTable {
        SweepTable {
            version: "dkp test".into(),
            base: ModelParams::unit(),
            mode: Mode::NuStandard,
            branch: Branch::Positive,
            rows: vec![
                SweepRow {
                    param: Param::Alpha,
                    value: 0.2,
                    n: 0,
                    point: Point::Solved {
                        energy: 3.0_f64.sqrt(),
                        residual: 1e-17,
                    },
                },
                SweepRow {
                    param: Param::Alpha,
                    value: 0.2,
                    n: 1,
                    point: Point::Gap { kind: "no-root".into() },
                },
            ],
        }
    }

    #[test]
    fn layout() {
        let text = sample().to_csv_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# dkp test");
        assert_eq!(lines[4], "param,value,n,E,residual");
        assert_eq!(
            lines[5],
            "alpha,2.0000000000000001e-1,0,1.7320508075688772e0,1.0000000000000001e-17"
        );
        assert_eq!(lines[6], "alpha,2.0000000000000001e-1,1,gap,no-root");
        assert!(!text.contains('\r'));
    }

    #[test]
    fn round_trip() {
        let t = sample();
        assert_eq!(SweepTable::parse_csv(&t.to_csv_string()).unwrap(), t);
    }

    #[test]
    fn rejects_wrong_header() {
        let text = sample().to_csv_string().replace("param,value", "p,value");
        assert!(matches!(SweepTable::parse_csv(&text), Err(CliError::Table(_))));
    }

    #[test]
    fn sort_is_by_param_value_level() {
        let mut t = sample();
        t.rows.reverse();
        t.rows.insert(
            0,
            SweepRow {
                param: Param::Delta2,
                value: 0.0,
                n: 0,
                point: Point::Gap { kind: "x".into() },
            },
        );
        t.sort();
        assert_eq!(t.rows[0].n, 0);
        assert_eq!(t.rows[2].param, Param::Delta2);
    }
}
