//! Sweep tables as CSV plus a JSON metadata sidecar.
//!
//! Floats are written with 17 significant digits, so parsing a file gives
//! back the exact `f64` values that were computed.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use pwave_core::sweep::{SweepResult, SweepRow};
use serde::{Deserialize, Serialize};

use crate::config::ResolvedConfig;
use crate::CliError;

pub const HEADER: [&str; 11] = [
    "axis", "T", "R", "A", "ReZ1", "ImZ1", "ReZ2", "ImZ2", "n_odd", "n_even", "flag",
];

/// One parsed CSV line.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub axis: f64,
    pub t: f64,
    pub r: f64,
    pub a: f64,
    pub z1: [f64; 2],
    pub z2: [f64; 2],
    pub n_odd: u64,
    pub n_even: u64,
    pub flag: String,
}

impl CsvRow {
    pub fn from_sweep(row: &SweepRow) -> Self {
        Self {
            axis: row.axis_value,
            t: row.t,
            r: row.r,
            a: row.a,
            z1: [row.z1.re, row.z1.im],
            z2: [row.z2.re, row.z2.im],
            n_odd: row.n_odd,
            n_even: row.n_even,
            flag: row.status.label(),
        }
    }

    /// Field-by-field equality with NaN equal to NaN.
    pub fn same_bits(&self, other: &CsvRow) -> bool {
        let bits = |r: &CsvRow| {
            [r.axis, r.t, r.r, r.a, r.z1[0], r.z1[1], r.z2[0], r.z2[1]].map(|x| {
                if x.is_nan() {
                    u64::MAX
                } else {
                    x.to_bits()
                }
            })
        };
        bits(self) == bits(other)
            && self.n_odd == other.n_odd
            && self.n_even == other.n_even
            && self.flag == other.flag
    }
}

fn float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Csv(e.to_string())
}

pub fn write_rows<W: Write>(out: W, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER).map_err(csv_error)?;
    for row in rows {
        let c = CsvRow::from_sweep(row);
        w.write_record([
            float(c.axis),
            float(c.t),
            float(c.r),
            float(c.a),
            float(c.z1[0]),
            float(c.z1[1]),
            float(c.z2[0]),
            float(c.z2[1]),
            c.n_odd.to_string(),
            c.n_even.to_string(),
            c.flag,
        ])
        .map_err(csv_error)?;
    }
    w.flush().map_err(|e| CliError::Csv(e.to_string()))
}

pub fn to_bytes(rows: &[SweepRow]) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write_rows(&mut buf, rows)?;
    Ok(buf)
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<CsvRow>, CliError> {
    let mut reader = csv::ReaderBuilder::new().from_reader(input);
    let header: Vec<String> = reader
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(str::to_owned)
        .collect();
    if header != HEADER {
        return Err(CliError::Csv(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let bad = |what: &str| CliError::Csv(format!("data line {}: bad {what}", line + 1));
        let f = |i: usize| record[i].parse::<f64>().map_err(|_| bad(HEADER[i]));
        let n = |i: usize| record[i].parse::<u64>().map_err(|_| bad(HEADER[i]));
        rows.push(CsvRow {
            axis: f(0)?,
            t: f(1)?,
            r: f(2)?,
            a: f(3)?,
            z1: [f(4)?, f(5)?],
            z2: [f(6)?, f(7)?],
            n_odd: n(8)?,
            n_even: n(9)?,
            flag: record[10].to_owned(),
        });
    }
    Ok(rows)
}

pub fn read_path(path: &Path) -> Result<Vec<CsvRow>, CliError> {
    let file = std::fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    read_rows(std::io::BufReader::new(file))
}

/// Everything needed to regenerate a CSV file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub tool: String,
    pub tool_version: String,
    pub unix_time: u64,
    pub config: ResolvedConfig,
    pub rows: usize,
    pub failed_rows: usize,
}

impl SweepMeta {
    pub fn new(result: &SweepResult, config: &ResolvedConfig) -> Self {
        Self {
            tool: "pwave".into(),
            tool_version: result.metadata.tool_version.into(),
            unix_time: result.metadata.unix_time,
            config: config.clone(),
            rows: result.rows.len(),
            failed_rows: result.rows.iter().filter(|r| !r.is_ok()).count(),
        }
    }
}

/// `<csv>.meta.json` next to the table.
pub fn meta_path(csv: &Path) -> PathBuf {
    let mut name = csv.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use pwave_core::sweep::RowStatus;
    use pwave_core::PointFlag;

    fn row(x: f64) -> SweepRow {
        SweepRow {
            axis_value: x,
            t: 1.0 / 3.0,
            r: 0.1 + x,
            a: 1.0 - 1.0 / 3.0 - 0.1 - x,
            z1: Complex::new(-1e-300, 5.0e17),
            z2: Complex::new(-std::f64::consts::PI, 0.0),
            n_odd: 17,
            n_even: 4,
            status: RowStatus::Ok(PointFlag::Normal),
        }
    }

    #[test]
    fn round_trip_is_exact() {
        let mut rows: Vec<_> = (0..5).map(|i| row(i as f64 * 0.123456789)).collect();
        rows.push(SweepRow {
            t: f64::NAN,
            status: RowStatus::Failed {
                kind: "domain",
                message: "x".into(),
            },
            ..row(9.0)
        });
        let bytes = to_bytes(&rows).unwrap();
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.starts_with("axis,T,R,A,ReZ1,ImZ1,ReZ2,ImZ2,n_odd,n_even,flag\n"));
        assert!(!text.contains('\r'));
        let back = read_rows(bytes.as_slice()).unwrap();
        assert_eq!(back.len(), rows.len());
        for (a, b) in back.iter().zip(&rows) {
            assert!(a.same_bits(&CsvRow::from_sweep(b)), "{a:?}");
        }
        assert_eq!(back[5].flag, "error:domain");
    }

    #[test]
    fn sidecar_sits_next_to_the_table() {
        assert_eq!(
            meta_path(Path::new("out/fig8.csv")),
            PathBuf::from("out/fig8.csv.meta.json")
        );
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(read_rows("a,b\n1,2\n".as_bytes()).is_err());
    }
}
