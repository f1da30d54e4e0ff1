//! Schedule-file serialization: JSON for interchange, CSV for plotting.
//!
//! Coefficients are written with 17 significant decimal digits in CSV and
//! with serde_json's shortest round-trip representation in JSON; both read
//! back bit-for-bit. Files are written to a temporary sibling and renamed,
//! so a failed command never leaves partial output behind.

use std::path::Path;

use serde::{Deserialize, Serialize};
use su2_factor::{DecompositionReport, FactorSequence};

use crate::exit::Failure;
use crate::problem::{repr_from_matrix, MatrixRepr};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleRecord {
    pub k: usize,
    pub a: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub q: usize,
    pub residual: f64,
    pub bound_c: f64,
    pub frame_angle: f64,
    pub conjugator: MatrixRepr,
    pub factors: Vec<ScheduleRecord>,
}

impl ScheduleFile {
    pub fn from_result(seq: &FactorSequence, report: &DecompositionReport) -> Self {
        ScheduleFile {
            q: seq.factors.len(),
            residual: report.residual,
            bound_c: seq.bound_c,
            frame_angle: report.frame_angle,
            conjugator: repr_from_matrix(report.conjugator.matrix()),
            factors: seq
                .factors
                .iter()
                .enumerate()
                .map(|(i, f)| ScheduleRecord {
                    k: i + 1,
                    a: f.a,
                    b: f.b,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("schedule serializes");
        text.push('\n');
        text
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# q = {}\n", self.q));
        out.push_str(&format!("# residual = {:.16e}\n", self.residual));
        out.push_str(&format!("# bound_c = {:.16e}\n", self.bound_c));
        out.push_str(&format!("# frame_angle = {:.16e}\n", self.frame_angle));
        let c = &self.conjugator;
        out.push_str(&format!(
            "# conjugator = {:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            c[0][0][0], c[0][0][1], c[0][1][0], c[0][1][1],
            c[1][0][0], c[1][0][1], c[1][1][0], c[1][1][1],
        ));
        out.push_str("k,a,b\n");
        for record in &self.factors {
            out.push_str(&format!("{},{:.16e},{:.16e}\n", record.k, record.a, record.b));
        }
        out
    }

    /// Reads either format, told apart by the leading character.
    pub fn parse(text: &str) -> Result<Self, Failure> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text)
                .map_err(|e| Failure::usage(format!("cannot parse schedule: {e}")))
        } else {
            Self::parse_csv(text)
        }
    }

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        let schedule = Self::parse(&text)?;
        schedule.check_record_numbering()?;
        Ok(schedule)
    }

    fn parse_csv(text: &str) -> Result<Self, Failure> {
        let bad = |line: usize, what: &str| {
            Failure::usage(format!("cannot parse schedule: line {}: {what}", line + 1))
        };
        let mut schedule = ScheduleFile {
            q: 0,
            residual: f64::NAN,
            bound_c: f64::NAN,
            frame_angle: f64::NAN,
            conjugator: [[[0.0; 2]; 2]; 2],
            factors: Vec::new(),
        };
        schedule.conjugator[0][0][0] = 1.0;
        schedule.conjugator[1][1][0] = 1.0;

        let mut saw_header = false;
        let mut saw_q = false;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                if let Some((key, value)) = meta.split_once('=') {
                    let (key, value) = (key.trim(), value.trim());
                    match key {
                        "q" => {
                            schedule.q =
                                value.parse().map_err(|_| bad(i, "bad factor count"))?;
                            saw_q = true;
                        }
                        "residual" => {
                            schedule.residual =
                                value.parse().map_err(|_| bad(i, "bad residual"))?;
                        }
                        "bound_c" => {
                            schedule.bound_c = value.parse().map_err(|_| bad(i, "bad bound"))?;
                        }
                        "frame_angle" => {
                            schedule.frame_angle =
                                value.parse().map_err(|_| bad(i, "bad frame angle"))?;
                        }
                        "conjugator" => {
                            let parts: Vec<f64> = value
                                .split(',')
                                .map(|p| p.trim().parse())
                                .collect::<Result<_, _>>()
                                .map_err(|_| bad(i, "bad conjugator entries"))?;
                            if parts.len() != 8 {
                                return Err(bad(i, "conjugator needs 8 numbers"));
                            }
                            for (j, chunk) in parts.chunks(2).enumerate() {
                                schedule.conjugator[j / 2][j % 2] = [chunk[0], chunk[1]];
                            }
                        }
                        _ => {}
                    }
                }
                continue;
            }
            if !saw_header {
                if line != "k,a,b" {
                    return Err(bad(i, "expected header k,a,b"));
                }
                saw_header = true;
                continue;
            }
            let mut cols = line.split(',');
            let (k, a, b) = (cols.next(), cols.next(), cols.next());
            if cols.next().is_some() {
                return Err(bad(i, "too many columns"));
            }
            let record = ScheduleRecord {
                k: k.and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| bad(i, "bad k"))?,
                a: a.and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| bad(i, "bad a"))?,
                b: b.and_then(|s| s.trim().parse().ok())
                    .ok_or_else(|| bad(i, "bad b"))?,
            };
            schedule.factors.push(record);
        }
        if !saw_header {
            return Err(Failure::usage(
                "cannot parse schedule: no k,a,b header".to_string(),
            ));
        }
        if !saw_q {
            schedule.q = schedule.factors.len();
        }
        Ok(schedule)
    }

    /// Record numbers must be 1-based and contiguous, and match `q`.
    pub fn check_record_numbering(&self) -> Result<(), Failure> {
        if self.q != self.factors.len() {
            return Err(Failure::usage(format!(
                "schedule declares q = {} but carries {} factors",
                self.q,
                self.factors.len()
            )));
        }
        for (i, record) in self.factors.iter().enumerate() {
            if record.k != i + 1 {
                return Err(Failure::usage(format!(
                    "schedule record {} is numbered k = {}",
                    i + 1,
                    record.k
                )));
            }
        }
        Ok(())
    }
}

/// Write-to-temporary-then-rename, so failures never leave partial files.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    let fail = |e: std::io::Error| Failure::usage(format!("cannot write {}: {e}", path.display()));
    std::fs::write(&tmp, contents).map_err(fail)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        fail(e)
    })
}
