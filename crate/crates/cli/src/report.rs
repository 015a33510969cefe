//! Verification records and their JSON Lines / CSV rendering.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::io::{self, Write};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One side of an identity: human-readable text plus the sparse exact form.
#[derive(Debug, Clone, Serialize)]
pub struct Side {
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Value>,
}

impl Side {
    pub fn of<T: Display + Serialize>(x: &T) -> Self {
        Side { text: x.to_string(), exact: serde_json::to_value(x).ok() }
    }

    pub fn text(x: impl Display) -> Self {
        Side { text: x.to_string(), exact: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub claim: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Side>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl Record {
    pub fn new(claim: &str, params: &[(&str, String)]) -> Self {
        Record {
            claim: claim.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            status: Status::Skipped,
            lhs: None,
            rhs: None,
            error: None,
            wall_ms: None,
        }
    }

    /// Scalar identity: both sides are always kept.
    pub fn compare<T: Display + Serialize + PartialEq>(mut self, lhs: &T, rhs: &T) -> Self {
        self.status = Status::from_bool(lhs == rhs);
        self.lhs = Some(Side::of(lhs));
        self.rhs = Some(Side::of(rhs));
        self
    }

    /// Bulky identity: sides are kept only on failure.
    pub fn compare_quiet<T: Display + Serialize + PartialEq>(self, lhs: &T, rhs: &T) -> Self {
        if lhs == rhs {
            self.with_status(Status::Pass)
        } else {
            self.compare(lhs, rhs)
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with_sides(mut self, lhs: Side, rhs: Side) -> Self {
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self
    }

    pub fn failed(mut self, err: impl Display) -> Self {
        self.status = Status::Fail;
        self.error = Some(err.to_string());
        self
    }

    pub fn timed(mut self, d: Duration) -> Self {
        self.wall_ms = Some((d.as_secs_f64() * 1e6).round() / 1e3);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn write_records(out: &mut dyn Write, records: &[Record], format: Format) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["claim", "params", "status", "lhs", "rhs", "error", "wall_ms"])?;
            for r in records {
                let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let side = |s: &Option<Side>| s.as_ref().map(|s| s.text.clone()).unwrap_or_default();
                w.write_record([
                    r.claim.clone(),
                    params.join(";"),
                    r.status.as_str().to_string(),
                    side(&r.lhs),
                    side(&r.rhs),
                    r.error.clone().unwrap_or_default(),
                    r.wall_ms.map(|t| t.to_string()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_commas() {
        let r = Record::new("x", &[("nu", "2,1".into())]).compare(&1u32, &1u32);
        let mut buf = Vec::new();
        write_records(&mut buf, &[r], Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"nu=2,1\""), "{text}");
        assert!(text.contains(",pass,1,1,"), "{text}");
    }

    #[test]
    fn quiet_compare_drops_sides_on_pass() {
        let r = Record::new("x", &[]).compare_quiet(&3u32, &3u32);
        assert_eq!(r.status, Status::Pass);
        assert!(r.lhs.is_none());
        let r = Record::new("x", &[]).compare_quiet(&3u32, &4u32);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.rhs.unwrap().text, "4");
    }
}
