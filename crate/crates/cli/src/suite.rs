//! The acceptance battery: one composite report per criterion.
//!
//! The fast suite runs the symbolic checks only; the full suite adds every
//! brute-force count over `F_p`. Criteria are run one after another and
//! reported in a fixed order. A library error inside a criterion becomes a
//! failed report carrying the error text.

use std::time::{Duration, Instant};

use clap::ValueEnum;
use serde_json::json;

use quotzeta::clzeta::{conversion_check, limit_check, matrix_count_check, node22_cl_check, special_values_check};
use quotzeta::hall::hall_consistency_check;
use quotzeta::oracle::{coh_quot_invariance_check, hall_oracle_check, quot_vs_formula_check, solomon_check};
use quotzeta::quotzeta::{
    cusp_squaring_check, funceq_check, node22_check, skew_cauchy_bounded_check, special_check, Module,
    SingularityFamily,
};
use quotzeta::report::{Status, VerificationReport};
use quotzeta::series::Window;
use quotzeta::Result;

use crate::tables::table_check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Fast,
    Full,
}

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct SuiteItem {
    pub criterion: u8,
    pub title: &'static str,
    pub report: VerificationReport,
    pub elapsed: Duration,
    /// Wall-time allowance, if the criterion has one.
    pub limit: Option<Duration>,
}

struct Criterion {
    number: u8,
    title: &'static str,
    limit: Option<u64>,
    oracle: bool,
    run: fn(bool, u64) -> Result<VerificationReport>,
}

fn families(m_max: usize) -> Vec<SingularityFamily> {
    (1..=m_max)
        .flat_map(|m| [SingularityFamily::cusp(m), SingularityFamily::node(m)])
        .collect()
}

fn group(name: &str, parts: Vec<VerificationReport>) -> VerificationReport {
    VerificationReport::new(name).absorb(parts)
}

fn c4(_: bool, _: u64) -> Result<VerificationReport> {
    let parts = families(3)
        .into_iter()
        .flat_map(|f| (1..=3).map(move |d| funceq_check(f, d)))
        .collect();
    Ok(group("funceq", parts))
}

fn c5(_: bool, _: u64) -> Result<VerificationReport> {
    let parts = (1..=3)
        .flat_map(|m| (1..=4).map(move |d| cusp_squaring_check(m, d)))
        .collect();
    Ok(group("squaring", parts))
}

fn c6(_: bool, _: u64) -> Result<VerificationReport> {
    let parts = (1..=3)
        .flat_map(|m| (1..=3).map(move |d| skew_cauchy_bounded_check(m, d)))
        .collect();
    Ok(group("skew-cauchy", parts))
}

fn c7(full: bool, budget: u64) -> Result<VerificationReport> {
    let mut parts = vec![hall_consistency_check(6, 3)?];
    if full {
        for p in [2, 3] {
            parts.push(hall_oracle_check(5, p, budget)?);
        }
    }
    Ok(group("hall", parts))
}

fn c8(_: bool, budget: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for f in families(2) {
        for d in 1..=2 {
            for module in [Module::Free, Module::Normalization] {
                parts.push(quot_vs_formula_check(f, d, 2, 3, module, budget)?);
            }
        }
    }
    Ok(group("oracle-quot", parts))
}

fn c9(_: bool, budget: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for d in 1..=2 {
        for p in [2, 3] {
            parts.push(solomon_check(d, p, 4, budget)?);
        }
    }
    Ok(group("solomon", parts))
}

fn c10(_: bool, budget: u64) -> Result<VerificationReport> {
    matrix_count_check(2, &[2, 3], budget)
}

fn c11(_: bool, _: u64) -> Result<VerificationReport> {
    let parts = families(2)
        .into_iter()
        .map(|f| limit_check(f, &[4, 5], Window::new(5, 3)))
        .collect::<Result<_>>()?;
    Ok(group("limit", parts))
}

fn c12(full: bool, budget: u64) -> Result<VerificationReport> {
    conversion_check(
        SingularityFamily::node(1),
        Window::new(6, 4),
        full.then_some((2, budget)),
    )
}

fn c13(_: bool, budget: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for (n, r) in [(1, 1), (2, 1), (2, 2)] {
        parts.push(coh_quot_invariance_check(
            SingularityFamily::node(1),
            2,
            n,
            r,
            &[r, r + 1, r + 2],
            budget,
        )?);
    }
    Ok(group("coh-quot", parts))
}

fn c14(_: bool, _: u64) -> Result<VerificationReport> {
    let mut parts = Vec::new();
    for m in 1..=3 {
        parts.push(special_values_check(SingularityFamily::node(m), 1, 12)?);
    }
    for m in 1..=2 {
        for sign in [1, -1] {
            parts.push(special_values_check(SingularityFamily::cusp(m), sign, 20)?);
        }
    }
    for m in 1..=3 {
        parts.push(special_values_check(SingularityFamily::node(m), -1, 20)?);
    }
    Ok(group("special-values", parts))
}

fn c15(_: bool, _: u64) -> Result<VerificationReport> {
    let mut parts: Vec<_> = (1..=5).map(node22_check).collect();
    parts.push(node22_cl_check(Window::new(10, 6))?);
    Ok(group("node22", parts))
}

fn c16(_: bool, _: u64) -> Result<VerificationReport> {
    let parts = families(3)
        .into_iter()
        .flat_map(|f| (1..=3).map(move |d| special_check(f, d)))
        .collect();
    Ok(group("specializations", parts))
}

const CRITERIA: [Criterion; 16] = [
    Criterion {
        number: 1,
        title: "table 1 (node m = 1)",
        limit: Some(1),
        oracle: false,
        run: |_, _| table_check(1),
    },
    Criterion {
        number: 2,
        title: "table 2 (node m = 2)",
        limit: Some(5),
        oracle: false,
        run: |_, _| table_check(2),
    },
    Criterion {
        number: 3,
        title: "table 3 (Cohen-Lenstra numerators)",
        limit: Some(30),
        oracle: false,
        run: |_, _| table_check(3),
    },
    Criterion {
        number: 4,
        title: "functional equation",
        limit: Some(10),
        oracle: false,
        run: c4,
    },
    Criterion {
        number: 5,
        title: "cusp squaring",
        limit: None,
        oracle: false,
        run: c5,
    },
    Criterion {
        number: 6,
        title: "bounded skew-Cauchy",
        limit: None,
        oracle: false,
        run: c6,
    },
    Criterion {
        number: 7,
        title: "Hall polynomial consistency",
        limit: Some(60),
        oracle: false,
        run: c7,
    },
    Criterion {
        number: 8,
        title: "oracle against formula",
        limit: Some(300),
        oracle: true,
        run: c8,
    },
    Criterion {
        number: 9,
        title: "Solomon's formula",
        limit: None,
        oracle: true,
        run: c9,
    },
    Criterion {
        number: 10,
        title: "matrix pair counts",
        limit: Some(300),
        oracle: true,
        run: c10,
    },
    Criterion {
        number: 11,
        title: "rank limit",
        limit: None,
        oracle: false,
        run: c11,
    },
    Criterion {
        number: 12,
        title: "conversion identities",
        limit: None,
        oracle: false,
        run: c12,
    },
    Criterion {
        number: 13,
        title: "Coh/Quot invariance",
        limit: None,
        oracle: true,
        run: c13,
    },
    Criterion {
        number: 14,
        title: "special values",
        limit: None,
        oracle: false,
        run: c14,
    },
    Criterion {
        number: 15,
        title: "(2,2)-link closed forms",
        limit: None,
        oracle: false,
        run: c15,
    },
    Criterion {
        number: 16,
        title: "specializations",
        limit: None,
        oracle: false,
        run: c16,
    },
];

/// Runs one criterion, turning errors and overruns into failures.
pub fn run_criterion(number: u8, full: bool, budget: u64) -> Option<SuiteItem> {
    let c = CRITERIA.iter().find(|c| c.number == number)?;
    let start = Instant::now();
    let report = match (c.run)(full, budget) {
        Ok(r) => r,
        Err(e) => VerificationReport::new("error").fail_at((0, 0)).detail(e.to_string()),
    };
    let elapsed = start.elapsed();
    let limit = c.limit.map(Duration::from_secs);
    let report = match limit {
        Some(l) if elapsed > l && report.status != Status::Fail => report.fail_at((0, 0)).detail(format!(
            "took {:.1} s, allowance {} s",
            elapsed.as_secs_f64(),
            l.as_secs()
        )),
        _ => report,
    };
    Some(SuiteItem {
        criterion: c.number,
        title: c.title,
        report: report.timed(start),
        elapsed,
        limit,
    })
}

/// Runs the named suite. The fast suite skips criteria that need the oracle.
pub fn run_suite(name: SuiteName, budget: u64) -> Vec<SuiteItem> {
    let full = name == SuiteName::Full;
    CRITERIA
        .iter()
        .filter(|c| full || !c.oracle)
        .filter_map(|c| run_criterion(c.number, full, budget))
        .collect()
}

/// One line per criterion.
pub fn line(item: &SuiteItem) -> String {
    let mut s = format!(
        "criterion {:>2}  {:<8}  {:<36} {:>9.3} s",
        item.criterion,
        item.report.status.to_string(),
        item.title,
        item.elapsed.as_secs_f64()
    );
    if let Some(d) = &item.report.detail {
        s.push_str(&format!("  [{d}]"));
    }
    s
}

/// The summary table, failing reports in full after it.
pub fn summary(items: &[SuiteItem]) -> String {
    let mut s: String = items.iter().map(|i| line(i) + "\n").collect();
    let failed: Vec<&SuiteItem> = items.iter().filter(|i| i.report.status == Status::Fail).collect();
    s.push_str(&format!("{} criteria, {} failed\n", items.len(), failed.len()));
    for i in failed {
        s.push_str(&format!("criterion {}: {}\n", i.criterion, i.report.to_text()));
    }
    s
}

pub fn to_json(items: &[SuiteItem]) -> serde_json::Value {
    json!(items
        .iter()
        .map(|i| json!({
            "criterion": i.criterion,
            "title": i.title,
            "report": i.report.to_json(),
            "limit_s": i.limit.map(|l| l.as_secs()),
        }))
        .collect::<Vec<_>>())
}
