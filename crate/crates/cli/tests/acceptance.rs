//! The acceptance battery: prints one line per criterion 1 to 16, then exits
//! nonzero if any criterion failed. It runs without the libtest harness so
//! the lines are always shown.
//!
//! Each criterion is the composite report from the full suite. Criteria 1
//! to 3 additionally go through the command line: the `nz` command against
//! the transcribed tables, and the `table` command against the golden files.

use quotzeta::clzeta::special_values_check;
use quotzeta::oracle::DEFAULT_BUDGET;
use quotzeta::quotzeta::SingularityFamily;
use quotzeta::report::Status;
use quotzeta_cli::dispatch;
use quotzeta_cli::suite::{line, run_criterion};
use quotzeta_cli::tables::{parse_entry, TABLE_1, TABLE_2};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("quotzeta").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

/// `nz --family node --m M --d D` for every row, both columns.
fn nz_commands(m: usize, rows: &[(usize, &str, &str)]) -> Result<(), String> {
    for (d, free, norm) in rows {
        for (module, entry) in [("free", free), ("normalization", norm)] {
            let (m, d) = (m.to_string(), d.to_string());
            let (code, text) = run(&["nz", "--family", "node", "--m", &m, "--d", &d, "--module", module]);
            let printed = text.trim().parse().map_err(|e| format!("{e}"))?;
            if code != 0 || parse_entry(entry).unwrap() != printed {
                return Err(format!("nz m={m} d={d} {module}: got {text:?}"));
            }
        }
    }
    Ok(())
}

fn golden(n: u8) -> Result<(), String> {
    let expected = match n {
        1 => include_str!("golden/table1.txt"),
        2 => include_str!("golden/table2.txt"),
        _ => include_str!("golden/table3.txt"),
    };
    let (code, text) = run(&["table", &n.to_string()]);
    if code == 0 && text == expected {
        Ok(())
    } else {
        Err(format!("table {n} output differs from golden/table{n}.txt"))
    }
}

/// Conjecture-level parts of criterion 14 must come out as reported.
fn conjecture_statuses() -> Result<(), String> {
    for m in 2..=3 {
        let r = special_values_check(SingularityFamily::node(m), -1, 20).map_err(|e| e.to_string())?;
        if r.status != Status::Reported {
            return Err(format!("node m={m} at t = -1: {}", r.to_text()));
        }
    }
    Ok(())
}

fn criteria() -> Vec<u8> {
    let mut failures = Vec::new();
    for criterion in 1..=16u8 {
        let item = run_criterion(criterion, true, DEFAULT_BUDGET).expect("criterion exists");
        let extra = match criterion {
            1 => nz_commands(1, &TABLE_1).and_then(|_| golden(1)),
            2 => nz_commands(2, &TABLE_2).and_then(|_| golden(2)),
            3 => golden(3),
            14 => conjecture_statuses(),
            _ => Ok(()),
        };
        let ok = item.report.status != Status::Fail && extra.is_ok();
        println!("{} {}", if ok { "pass" } else { "FAIL" }, line(&item));
        if let Err(e) = &extra {
            println!("    {e}");
        }
        if item.report.status == Status::Fail {
            println!("    {}", item.report.to_text());
        }
        if !ok {
            failures.push(criterion);
        }
    }
    failures
}

fn exit_codes() {
    assert_eq!(
        run(&["nz", "--family", "node", "--m", "1", "--d", "1"]),
        (0, "1 - t + q*t^2\n".into())
    );
    assert_eq!(
        run(&["verify", "funceq", "--family", "node", "--m", "2", "--d", "2"]).0,
        0
    );
    assert_eq!(run(&["nz", "--family", "tacnode", "--m", "1", "--d", "1"]).0, 2);
    assert_eq!(run(&["nz", "--family", "node", "--m", "0", "--d", "1"]).0, 2);
    assert_eq!(run(&["table", "4"]).0, 2);
    assert_eq!(
        run(&["--budget", "10", "oracle", "matrix", "--n", "2", "--p", "2"]).0,
        3
    );
    assert_eq!(run(&["--help"]).0, 0);
}

fn json_output_parses() {
    let (code, text) = run(&["--format", "json", "verify", "node22", "--d", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "pass");
    let (_, text) = run(&[
        "--format", "json", "oracle", "solomon", "--d", "1", "--p", "2", "-N", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["census"]["(2,1)"], "1");
    assert_eq!(v["census"]["(1,1)"], "1");
}

fn main() {
    exit_codes();
    json_output_parses();
    println!("pass command-line exit codes and JSON output");
    let failures = criteria();
    if failures.is_empty() {
        println!("acceptance: all 16 criteria pass");
    } else {
        println!("acceptance: failed criteria {failures:?}");
        std::process::exit(1);
    }
}
