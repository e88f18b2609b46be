//! Structured results of identity checks.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exactalg::LaurentPoly2;
use crate::series::TruncSeries2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Outcome of a conjecture-level or diagnostic check; never a failure.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Reported => "REPORTED",
        })
    }
}

/// The outcome of one identity check, with the point where the two sides
/// first differ.
///
/// A report with status [`Status::Fail`] always carries a discrepancy
/// locator, an exponent pair in the coordinates of the compared objects.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub discrepancy: Option<(i64, i64)>,
    pub detail: Option<String>,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            lhs: None,
            rhs: None,
            discrepancy: None,
            detail: None,
            wall_time_ms: 0.0,
        }
    }

    pub fn param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }

    /// Marks failure at `locator` unless the check has already failed.
    pub fn fail_at(mut self, locator: (i64, i64)) -> Self {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.discrepancy = Some(locator);
        }
        self
    }

    /// Compares two Laurent polynomials; the locator is the first exponent
    /// `(e_q, e_t)` in canonical order where they differ.
    pub fn compare_polys(mut self, lhs: &LaurentPoly2, rhs: &LaurentPoly2) -> Self {
        if let Some(loc) = first_difference(lhs, rhs) {
            self.lhs = Some(lhs.to_string());
            self.rhs = Some(rhs.to_string());
            self = self.fail_at(loc);
        } else if self.lhs.is_none() {
            self.lhs = Some(lhs.to_string());
            self.rhs = Some(rhs.to_string());
        }
        self
    }

    /// Compares two series on their common window; the locator is `(i, j)`
    /// for `u^i t^j`.
    pub fn compare_series(mut self, lhs: &TruncSeries2, rhs: &TruncSeries2) -> Self {
        let cmp = lhs.compare(rhs);
        self.lhs = Some(lhs.truncate(cmp.window).to_string());
        self.rhs = Some(rhs.truncate(cmp.window).to_string());
        if let Some((i, j)) = cmp.first_discrepancy {
            self = self.fail_at((i as i64, j as i64));
        }
        self
    }

    /// Compares two sequences elementwise; the locator is `(index, 0)`.
    pub fn compare_lists<T: PartialEq + fmt::Display>(mut self, lhs: &[T], rhs: &[T]) -> Self {
        let show = |v: &[T]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        self.lhs = Some(format!("[{}]", show(lhs)));
        self.rhs = Some(format!("[{}]", show(rhs)));
        let n = lhs.len().max(rhs.len());
        if let Some(k) = (0..n).find(|&k| lhs.get(k) != rhs.get(k)) {
            self = self.fail_at((k as i64, 0));
        }
        self
    }

    /// Folds sub-reports into this one: the first failing sub-report decides
    /// the locator and its name is recorded in `detail`.
    pub fn absorb(mut self, parts: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut count = 0;
        for r in parts {
            count += 1;
            if r.status == Status::Fail && self.status != Status::Fail {
                let loc = r.discrepancy.unwrap_or((0, 0));
                let what = describe(&r);
                self.lhs = r.lhs;
                self.rhs = r.rhs;
                self = self.fail_at(loc).detail(format!("first failure: {what}"));
            } else if r.status == Status::Reported && self.status == Status::Pass {
                self.status = Status::Reported;
            }
        }
        if self.status != Status::Fail && self.detail.is_none() {
            self.detail = Some(format!("{count} sub-checks"));
        }
        self
    }

    /// Turns a failure into [`Status::Reported`], for conjecture-level checks.
    pub fn as_reported(mut self) -> Self {
        self.status = Status::Reported;
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.wall_time_ms = start.elapsed().as_secs_f64() * 1000.0;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    /// One-line summary, with both sides appended on failure.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}", self.status, describe(self));
        if let Some(d) = &self.detail {
            s.push_str(&format!(" [{d}]"));
        }
        if self.status == Status::Fail {
            if let Some((a, b)) = self.discrepancy {
                s.push_str(&format!("\n  first discrepancy at ({a}, {b})"));
            }
            if let Some(l) = &self.lhs {
                s.push_str(&format!("\n  lhs: {l}"));
            }
            if let Some(r) = &self.rhs {
                s.push_str(&format!("\n  rhs: {r}"));
            }
        }
        s
    }
}

fn describe(r: &VerificationReport) -> String {
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if params.is_empty() {
        r.check.clone()
    } else {
        format!("{} {}", r.check, params.join(" "))
    }
}

/// First exponent in canonical order at which `a` and `b` differ.
pub fn first_difference(a: &LaurentPoly2, b: &LaurentPoly2) -> Option<(i64, i64)> {
    (a - b).terms().next().map(|(e, _)| e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_comparison_has_locator() {
        let a: LaurentPoly2 = "1 + q t".parse().unwrap();
        let b: LaurentPoly2 = "1 + q t + q^2 t^3".parse().unwrap();
        let r = VerificationReport::new("x").param("m", 1).compare_polys(&a, &b);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.discrepancy, Some((2, 3)));
        assert!(r.to_text().starts_with("FAIL x m=1"));
        let ok = VerificationReport::new("x").compare_polys(&a, &a);
        assert!(ok.passed());
        assert_eq!(ok.discrepancy, None);
    }

    #[test]
    fn absorb_and_reported() {
        let bad = VerificationReport::new("inner").compare_lists(&[1, 2], &[1, 3]);
        let outer = VerificationReport::new("outer").absorb([VerificationReport::new("ok"), bad]);
        assert_eq!(outer.status, Status::Fail);
        assert_eq!(outer.discrepancy, Some((1, 0)));
        assert_eq!(outer.clone().as_reported().status, Status::Reported);
        let json = outer.to_json();
        assert_eq!(json["status"], "fail");
        let back: VerificationReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, outer);
    }
}
