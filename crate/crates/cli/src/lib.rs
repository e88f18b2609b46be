//! Command-line front end for `quotzeta`.
//!
//! [`dispatch`] parses an argument vector, runs one command and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or every check passed (or was only reported) |
//! | 1 | a verification failed, or an internal invariant tripped |
//! | 2 | usage, domain or parse error |
//! | 3 | an enumeration budget was exhausted |
//!
//! Results go to `out`; diagnostics go to `err`.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quotzeta::clzeta::{
    cl_series, conversion_check, limit_check, matrix_count_check, node22_cl_check, special_values_check,
};
use quotzeta::exactalg::LaurentPoly2;
use quotzeta::hall::{hall_consistency_check, hall_count_oracle, hall_general, hall_skew};
use quotzeta::oracle::{
    build_local_model, coh_quot_invariance_check, enumerate_submodules, eval_q, hall_oracle_check, matrix_pair_count,
    quot_vs_formula_check, solomon_check, truncated_dvr_model, ModelTarget, SubmoduleCensus, DEFAULT_BUDGET,
};
use quotzeta::partitions::Partition;
use quotzeta::quotzeta::{
    cusp_squaring_check, degree_bound_check, full_z, funceq_check, m_limit_check, node22_check, nz, point_count_check,
    positivity_scan, skew_cauchy_bounded_check, special_check, t2_check, Kind, Module, SingularityFamily,
};
use quotzeta::report::{Status, VerificationReport};
use quotzeta::series::Window;
use quotzeta::{Error, Result};

pub mod suite;
pub mod tables;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "quotzeta",
    version,
    about = "Quot-scheme and Cohen-Lenstra zeta functions of y^2 = x^n"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Precision in `u = q^-1` (exclusive).
    #[arg(long, global = true)]
    pub uprec: Option<usize>,
    /// Precision in `t` (exclusive).
    #[arg(long, global = true)]
    pub tprec: Option<usize>,
    /// Cap on subspaces visited by any enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct FamilyArgs {
    /// `cusp` (y^2 = x^(2m+1)) or `node` (y^2 = x^(2m)).
    #[arg(long)]
    pub family: Kind,
    #[arg(long)]
    pub m: usize,
}

impl FamilyArgs {
    fn get(&self) -> Result<SingularityFamily> {
        SingularityFamily::new(self.family, self.m)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The numerator NZ of the Quot zeta function of rank d.
    Nz {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "free")]
        module: Module,
    },
    /// The full Quot zeta function below t^tprec.
    Z {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "free")]
        module: Module,
    },
    /// The Cohen-Lenstra numerator (or the full series with --full).
    Cl {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        full: bool,
    },
    /// A Hall polynomial: g^lambda_mu summed over nu, or g^lambda_{mu nu}.
    Hall {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Option<Partition>,
        /// Also count submodules over F_p and compare.
        #[arg(long)]
        oracle: Option<u32>,
    },
    /// Brute-force counts over F_p.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run one identity check.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Print a reference table in canonical text form.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(value_enum)]
        name: suite::SuiteName,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Free,
    Normalization,
    MaximalIdeal,
}

impl From<Target> for ModelTarget {
    fn from(t: Target) -> Self {
        match t {
            Target::Free => ModelTarget::Free,
            Target::Normalization => ModelTarget::Normalization,
            Target::MaximalIdeal => ModelTarget::MaximalIdeal,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Submodules of a truncated local model of R^d, by colength and rank.
    Quot {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_codim: usize,
        #[arg(long, value_enum, default_value_t = Target::Free)]
        target: Target,
    },
    /// Submodules of type mu (and cotype nu) in the module of type lambda.
    Hall {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        nu: Option<Partition>,
        #[arg(long)]
        p: u32,
    },
    /// Pairs (A, B) of n x n matrices over F_p with AB = BA and A^2 = B^3.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
    },
    /// Submodules of (F_p[T]/T^N)^d.
    Solomon {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u32,
        #[arg(long = "N", short = 'N')]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Functional equation of the free numerator.
    Funceq {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
    },
    /// Cusp free numerator equals the normalization numerator at t^2.
    Squaring {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Bounded skew-Cauchy identity for every mu in the m x d box.
    SkewCauchy {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Node numerator at t^2 against the cusp sum.
    T2 {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        d: usize,
    },
    /// Specializations q = 1 and t = 1.
    Special {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
    },
    /// Closed form for the node with m = 1, and its Cohen-Lenstra numerator.
    Node22 {
        #[arg(long)]
        d: usize,
    },
    /// Stabilization of the free numerator as m grows.
    Mlimit {
        #[arg(long)]
        family: Kind,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 4)]
        qprec: usize,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
    },
    /// Sign pattern of the numerator coefficients (reported only).
    Positivity {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
    },
    /// t-degree of the numerator against its bound.
    Degree {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
    },
    /// Coefficients of Z are point counts.
    Points {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "free")]
        module: Module,
    },
    /// Rescaled Quot series converge to the Cohen-Lenstra series.
    Limit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', default_value = "4,5")]
        d: Vec<usize>,
    },
    /// Rank conversions between Quot, punctual Hilbert and Cohen-Lenstra series.
    Conversion {
        #[command(flatten)]
        family: FamilyArgs,
        /// Also compare with submodule counts over F_p.
        #[arg(long)]
        p: Option<u32>,
    },
    /// Value of the Cohen-Lenstra numerator at t = sign.
    SpecialValues {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        sign: i32,
    },
    /// Commuting-type matrix pair counts against their formula.
    MatrixCount {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        p: Vec<u32>,
    },
    /// Normalized Quot counts do not depend on the rank.
    CohQuot {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
    },
    /// Submodule counts of a local model against the Z coefficients.
    Oracle {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u32,
        #[arg(long = "N", short = 'N', default_value_t = 3)]
        n: usize,
        #[arg(long, default_value = "free")]
        module: Module,
    },
    /// Submodule counts of (F_p[T]/T^N)^d against 1/(t;q)_d.
    Solomon {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u32,
        #[arg(long = "N", short = 'N', default_value_t = 4)]
        n: usize,
    },
    /// Hall polynomial consistency, optionally against counts over F_p.
    Hall {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 3)]
        box_max: usize,
        #[arg(long)]
        oracle: Option<u32>,
    },
    /// Comparison with a transcribed reference table.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
}

/// Exit code for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::InternalInvariant(_) => 1,
        Error::Budget { .. } => 3,
        Error::Domain(_) | Error::Parse(_) | Error::UnsupportedSubstitution(_) => 2,
    }
}

/// Exit code for a set of reports: 1 if any failed.
pub fn report_code<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> i32 {
    i32::from(reports.into_iter().any(|r| r.status == Status::Fail))
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            error_code(&e)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| {
            if text.ends_with('\n') {
                Ok(())
            } else {
                out.write_all(b"\n")
            }
        })
        .map_err(|e| Error::Domain(format!("cannot write output: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(v).expect("serializable"))
}

fn emit_report(cli: &Cli, out: &mut dyn Write, r: &VerificationReport) -> Result<i32> {
    match cli.format {
        Format::Text => emit(out, &r.to_text())?,
        Format::Json => emit_json(out, &r.to_json())?,
    }
    Ok(report_code([r]))
}

fn emit_poly(cli: &Cli, out: &mut dyn Write, p: &LaurentPoly2, params: serde_json::Value) -> Result<i32> {
    match cli.format {
        Format::Text => emit(out, &p.to_t_grouped_string("q", "t"))?,
        Format::Json => emit_json(out, &json!({ "params": params, "value": p.to_json() }))?,
    }
    Ok(0)
}

fn emit_census(cli: &Cli, out: &mut dyn Write, c: &SubmoduleCensus, params: serde_json::Value) -> Result<i32> {
    match cli.format {
        Format::Text => emit(out, &c.to_string())?,
        Format::Json => emit_json(
            out,
            &json!({ "params": params, "census": c.to_json(), "visited": c.visited }),
        )?,
    }
    Ok(0)
}

fn emit_count(cli: &Cli, out: &mut dyn Write, count: impl ToString, params: serde_json::Value) -> Result<i32> {
    match cli.format {
        Format::Text => emit(out, &count.to_string())?,
        Format::Json => emit_json(out, &json!({ "params": params, "count": count.to_string() }))?,
    }
    Ok(0)
}

fn window(cli: &Cli, u_prec: usize, t_prec: usize) -> Window {
    Window::new(cli.uprec.unwrap_or(u_prec), cli.tprec.unwrap_or(t_prec))
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Nz { family, d, module } => {
            let f = family.get()?;
            let params = json!({ "family": f.kind, "m": f.m, "d": d, "module": module });
            emit_poly(cli, out, &nz(f, *d, *module), params)
        }
        Command::Z { family, d, module } => {
            let f = family.get()?;
            let t_prec = cli.tprec.unwrap_or(6);
            let z = full_z(&nz(f, *d, *module), f, *d, t_prec);
            match cli.format {
                Format::Text => emit(out, &z.to_string())?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "params": { "family": f.kind, "m": f.m, "d": d, "module": module, "t_prec": t_prec },
                        "value": z.poly.to_json(),
                    }),
                )?,
            }
            Ok(0)
        }
        Command::Cl { family, full } => {
            let f = family.get()?;
            let cl = cl_series(f, window(cli, 10, 6))?;
            let series = if *full { &cl.full } else { &cl.numerator };
            match cli.format {
                Format::Text => emit(out, &series.to_text("u"))?,
                Format::Json => emit_json(
                    out,
                    &json!({
                        "params": { "family": f.kind, "m": f.m, "full": full },
                        "value": series.to_json(),
                    }),
                )?,
            }
            Ok(0)
        }
        Command::Hall { lambda, mu, nu, oracle } => {
            let poly = match nu {
                Some(nu) => hall_general(lambda, mu, nu),
                None => hall_skew(lambda, mu)?,
            };
            let Some(p) = oracle else {
                let params = json!({ "lambda": lambda.to_string(), "mu": mu.to_string() });
                return emit_poly(cli, out, &poly, params);
            };
            let count = hall_count_oracle(lambda, mu, nu.as_ref(), *p, cli.budget)?;
            let mut r = VerificationReport::new("hall-count")
                .param("lambda", lambda)
                .param("mu", mu)
                .param("p", p);
            if let Some(nu) = nu {
                r = r.param("nu", nu);
            }
            emit_report(cli, out, &r.compare_lists(&[eval_q(&poly, *p)?], &[count]))
        }
        Command::Oracle(cmd) => run_oracle(cli, cmd, out),
        Command::Verify(cmd) => {
            let r = run_verify(cli, cmd)?;
            emit_report(cli, out, &r)
        }
        Command::Table { n } => {
            let text = tables::render(*n)?;
            match cli.format {
                Format::Text => emit(out, &text)?,
                Format::Json => {
                    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split('\t').collect()).collect();
                    emit_json(out, &json!({ "table": n, "rows": rows }))?
                }
            }
            Ok(0)
        }
        Command::Suite { name } => {
            let items = suite::run_suite(*name, cli.budget);
            match cli.format {
                Format::Text => emit(out, &suite::summary(&items))?,
                Format::Json => emit_json(out, &suite::to_json(&items))?,
            }
            Ok(report_code(items.iter().map(|i| &i.report)))
        }
    }
}

fn run_oracle(cli: &Cli, cmd: &OracleCommand, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        OracleCommand::Quot {
            family,
            d,
            p,
            max_codim,
            target,
        } => {
            let f = family.get()?;
            let model = build_local_model(f, *d, (*max_codim).max(1), *p, (*target).into())?;
            let census = enumerate_submodules(&model, *max_codim, cli.budget)?;
            let params = json!({
                "family": f.kind, "m": f.m, "d": d, "p": p, "max_codim": max_codim,
                "target": format!("{target:?}").to_lowercase(),
            });
            emit_census(cli, out, &census, params)
        }
        OracleCommand::Hall { lambda, mu, nu, p } => {
            let count = hall_count_oracle(lambda, mu, nu.as_ref(), *p, cli.budget)?;
            let params = json!({
                "lambda": lambda.to_string(), "mu": mu.to_string(),
                "nu": nu.as_ref().map(|n| n.to_string()), "p": p,
            });
            emit_count(cli, out, count, params)
        }
        OracleCommand::Matrix { n, p } => {
            let count = matrix_pair_count(*n, *p, cli.budget)?;
            emit_count(cli, out, count, json!({ "n": n, "p": p }))
        }
        OracleCommand::Solomon { d, p, n } => {
            let census = enumerate_submodules(&truncated_dvr_model(*d, *n, *p)?, *n, cli.budget)?;
            emit_census(cli, out, &census, json!({ "d": d, "p": p, "N": n }))
        }
    }
}

/// Runs one `verify` subcommand.
pub fn run_verify(cli: &Cli, cmd: &VerifyCommand) -> Result<VerificationReport> {
    let budget = cli.budget;
    Ok(match cmd {
        VerifyCommand::Funceq { family, d } => funceq_check(family.get()?, *d),
        VerifyCommand::Squaring { m, d } => cusp_squaring_check(positive(*m)?, *d),
        VerifyCommand::SkewCauchy { m, d } => skew_cauchy_bounded_check(positive(*m)?, *d),
        VerifyCommand::T2 { m, d } => t2_check(positive(*m)?, *d),
        VerifyCommand::Special { family, d } => special_check(family.get()?, *d),
        VerifyCommand::Node22 { d } => VerificationReport::new("node22")
            .param("d", d)
            .absorb([node22_check(*d), node22_cl_check(window(cli, 10, 6))?]),
        VerifyCommand::Mlimit {
            family,
            d,
            qprec,
            m_max,
        } => m_limit_check(*family, *d, *qprec, cli.tprec.unwrap_or(4), positive(*m_max)?),
        VerifyCommand::Positivity { family, d } => positivity_scan(family.get()?, *d),
        VerifyCommand::Degree { family, d } => degree_bound_check(family.get()?, *d),
        VerifyCommand::Points { family, d, module } => {
            point_count_check(family.get()?, *d, *module, cli.tprec.unwrap_or(5))
        }
        VerifyCommand::Limit { family, d } => limit_check(family.get()?, d, window(cli, 5, 3))?,
        VerifyCommand::Conversion { family, p } => {
            conversion_check(family.get()?, window(cli, 6, 4), p.map(|p| (p, budget)))?
        }
        VerifyCommand::SpecialValues { family, sign } => {
            special_values_check(family.get()?, *sign, cli.uprec.unwrap_or(20))?
        }
        VerifyCommand::MatrixCount { n, p } => matrix_count_check(*n, p, budget)?,
        VerifyCommand::CohQuot { family, p, n, r, d } => {
            coh_quot_invariance_check(family.get()?, *p, *n, *r, d, budget)?
        }
        VerifyCommand::Oracle {
            family,
            d,
            p,
            n,
            module,
        } => quot_vs_formula_check(family.get()?, *d, *p, *n, *module, budget)?,
        VerifyCommand::Solomon { d, p, n } => solomon_check(*d, *p, *n, budget)?,
        VerifyCommand::Hall {
            max_size,
            box_max,
            oracle,
        } => {
            let symbolic = hall_consistency_check(*max_size, *box_max)?;
            match oracle {
                Some(p) => {
                    let counted = hall_oracle_check((*max_size).min(5), *p, budget)?;
                    VerificationReport::new("hall").absorb([symbolic, counted])
                }
                None => symbolic,
            }
        }
        VerifyCommand::Table { n } => tables::table_check(*n)?,
    })
}

fn positive(m: usize) -> Result<usize> {
    if m == 0 {
        Err(Error::Domain("m must be positive".into()))
    } else {
        Ok(m)
    }
}
