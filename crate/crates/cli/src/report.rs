use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Report,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Report => "report",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub q: u32,
}

impl CheckRecord {
    /// Passes when `expected` and `actual` render identically.
    pub fn equal(name: &str, q: u32, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Self {
            name: name.into(),
            status,
            expected,
            actual,
            q,
        }
    }

    pub fn holds(name: &str, q: u32, ok: bool, expected: impl ToString, actual: impl ToString) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            q,
        }
    }

    pub fn report(name: &str, q: u32, reference: impl ToString, value: f64) -> Self {
        Self {
            name: name.into(),
            status: Status::Report,
            expected: reference.to_string(),
            actual: fmt_float(value),
            q,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<6} q={:<4} {}: expected {}, actual {}",
            self.status, self.q, self.name, self.expected, self.actual
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub q: Vec<u32>,
    pub suite: String,
    pub checks: Vec<CheckRecord>,
}

/// Twelve significant digits, no locale, trailing zeros trimmed.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..15).contains(&magnitude) {
        let s = format!("{x:.11e}");
        let (mantissa, exp) = s.split_once('e').expect("exponent present");
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (11 - magnitude).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
