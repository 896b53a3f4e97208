//! Observable reports: one line per observable with value, expectation,
//! tolerance and verdict.

use crate::Result;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Compare {
    /// |value / expected - 1| <= tolerance.
    Approx,
    /// |value - expected| <= tolerance.
    Absolute,
    /// value < expected.
    Less,
    /// value > expected.
    Greater,
    /// expected / tolerance <= value <= expected * tolerance.
    Factor,
    /// Recorded only.
    Info,
}

impl Compare {
    pub fn holds(self, value: f64, expected: f64, tolerance: f64) -> bool {
        if !value.is_finite() {
            return false;
        }
        match self {
            Compare::Approx => (value / expected - 1.0).abs() <= tolerance,
            Compare::Absolute => (value - expected).abs() <= tolerance,
            Compare::Less => value < expected,
            Compare::Greater => value > expected,
            Compare::Factor => value >= expected / tolerance && value <= expected * tolerance,
            Compare::Info => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub name: String,
    pub value: f64,
    pub expected: Option<f64>,
    pub tolerance: Option<f64>,
    pub compare: Compare,
    pub status: Status,
}

impl ReportLine {
    pub fn info(name: impl Into<String>, value: f64) -> Self {
        ReportLine {
            name: name.into(),
            value,
            expected: None,
            tolerance: None,
            compare: Compare::Info,
            status: Status::Info,
        }
    }

    pub fn check(name: impl Into<String>, value: f64, expected: f64, tolerance: f64, compare: Compare) -> Self {
        let status = match compare {
            Compare::Info => Status::Info,
            c if c.holds(value, expected, tolerance) => Status::Pass,
            _ => Status::Fail,
        };
        ReportLine {
            name: name.into(),
            value,
            expected: Some(expected),
            tolerance: Some(tolerance),
            compare,
            status,
        }
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} value={:e}", self.name, self.value)?;
        if let Some(e) = self.expected {
            write!(f, " expected={e:e}")?;
        }
        if let Some(t) = self.tolerance {
            write!(f, " tolerance={t:e}")?;
        }
        let cmp = match self.compare {
            Compare::Approx => "approx",
            Compare::Absolute => "absolute",
            Compare::Less => "less",
            Compare::Greater => "greater",
            Compare::Factor => "factor",
            Compare::Info => "info",
        };
        write!(f, " compare={cmp} status={}", self.status)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, line: ReportLine) {
        self.lines.push(line);
    }

    pub fn info(&mut self, name: impl Into<String>, value: f64) {
        self.push(ReportLine::info(name, value));
    }

    /// True when no line failed.
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_string())?;
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format_is_stable() {
        let l = ReportLine::check("spacing", 7.9, 8.0, 0.02, Compare::Approx);
        assert_eq!(l.to_string(), "spacing value=7.9e0 expected=8e0 tolerance=2e-2 compare=approx status=PASS");
        assert_eq!(ReportLine::check("v", 0.2, 0.1, 0.0, Compare::Less).status, Status::Fail);
    }
}
