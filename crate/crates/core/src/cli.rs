//! The `typeb` command line.
//!
//! Every command prints a JSON document carrying `"schema": 1`, or a short
//! plain-text rendering with `--format plain`. Rationals are read and written
//! only as `p/q` strings; sequences are `;`-separated lists of `x,t` pairs.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cumulant::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
use crate::dual::{parse_rational, DualScalar, Rational};
use crate::error::{Error, Result};
use crate::limits::{
    self, arcsine_check, bernoulli_moments, clt_limit_moments, clt_report, free_poisson_moments, hankel_example_moments,
    hankel_minor, poisson_limit_cumulants, poisson_report, semicircle_square_check, semicircle_square_cumulants,
    semicircle_square_jump_check, BernoulliSpec, CltSpec, Component, HankelReport,
};
use crate::nc::{enumerate_nc, enumerate_ncb, kreweras, moebius, PartitionInterval, SetPartition};
use crate::series::{box_conv, check_box_conv, invert_compositional, s_transform, CSeries};
use crate::verify;

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "typeb", version, about = "Exact type B free probability")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Non-crossing partitions of [n] in canonical order.
    NcEnumerate {
        #[arg(long)]
        n: usize,
    },
    /// Type B non-crossing partitions of {1..n, -1..-n}.
    NcbEnumerate {
        #[arg(long)]
        n: usize,
    },
    /// Kreweras complement of a partition such as `1,3|2|4`.
    Kreweras {
        #[arg(long)]
        partition: String,
    },
    /// Moebius function on an interval of NC(n); `upper` defaults to one block.
    Moebius {
        #[arg(long)]
        lower: String,
        #[arg(long)]
        upper: Option<String>,
    },
    /// Moments to cumulants.
    M2c {
        #[arg(long)]
        values: String,
    },
    /// Cumulants to moments.
    C2m {
        #[arg(long)]
        values: String,
    },
    /// Boxed convolution of two series.
    Boxconv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Boxed convolution restricted to partitions with `{1}` as a block.
    Checkboxconv {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Compositional inverse of a series.
    Invert {
        #[arg(long)]
        f: String,
    },
    /// S-transform of an R-transform.
    STransform {
        #[arg(long)]
        r: String,
    },
    /// Central limit: limit moments, or a finite-N report with `--base`.
    Clt {
        #[arg(long)]
        order: usize,
        #[arg(long, default_value = "1,1")]
        variance: String,
        /// Cumulants of the summands; requires `--n-summands`.
        #[arg(long, requires = "n_summands")]
        base: Option<String>,
        #[arg(long)]
        n_summands: Option<u64>,
    },
    /// Arcsine decomposition of the central limit moments.
    Arcsine {
        #[arg(long)]
        order: usize,
    },
    /// Poisson limit: limit cumulants and moments, or a finite-N report.
    Poisson {
        #[arg(long)]
        rate: String,
        #[arg(long)]
        jump: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        n_summands: Option<u64>,
    },
    /// Moments and cumulants of a Bernoulli variable.
    Bernoulli {
        #[arg(long)]
        rate: String,
        #[arg(long)]
        jump: String,
        #[arg(long)]
        order: usize,
    },
    /// Cumulants of the square of the central limit variable.
    SemicircleSquare {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        order: usize,
    },
    /// Hankel condition m2 m4 >= m3^2 for a free Poisson element.
    Hankel {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        alpha: String,
    },
    /// Run the full theorem battery.
    VerifyPaper {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::NcEnumerate { .. } => "nc-enumerate",
            Command::NcbEnumerate { .. } => "ncb-enumerate",
            Command::Kreweras { .. } => "kreweras",
            Command::Moebius { .. } => "moebius",
            Command::M2c { .. } => "m2c",
            Command::C2m { .. } => "c2m",
            Command::Boxconv { .. } => "boxconv",
            Command::Checkboxconv { .. } => "checkboxconv",
            Command::Invert { .. } => "invert",
            Command::STransform { .. } => "s-transform",
            Command::Clt { .. } => "clt",
            Command::Arcsine { .. } => "arcsine",
            Command::Poisson { .. } => "poisson",
            Command::Bernoulli { .. } => "bernoulli",
            Command::SemicircleSquare { .. } => "semicircle-square",
            Command::Hankel { .. } => "hankel",
            Command::VerifyPaper { .. } => "verify-paper",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// What a command produced: a JSON body, its plain rendering, and whether the
/// checked statement held.
struct Report {
    body: Value,
    plain: String,
    ok: bool,
}

impl Report {
    fn ok(body: Value, plain: String) -> Self {
        Report { body, plain, ok: true }
    }
}

/// Parses `argv` (including the program name) and runs the command.
///
/// Exit codes: 0 on success, 1 on a domain error or a failed check, 2 on a
/// usage error.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let report = match execute(&cli.command) {
        Ok(report) => report,
        Err(e) => return Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let text = match cli.format {
        Format::Json => {
            let mut doc = json!({ "schema": SCHEMA, "command": cli.command.name() });
            if let (Value::Object(doc), Value::Object(body)) = (&mut doc, report.body) {
                doc.extend(body);
            }
            serde_json::to_string_pretty(&doc).expect("values serialize") + "\n"
        }
        Format::Plain => report.plain,
    };
    let code = if report.ok { 0 } else { 1 };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}

fn parse_dual(s: &str) -> Result<DualScalar> {
    s.trim().parse()
}

fn parse_duals(s: &str) -> Result<Vec<DualScalar>> {
    let values: Vec<DualScalar> = s.split(';').filter(|p| !p.trim().is_empty()).map(parse_dual).collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Parse("empty sequence".into()));
    }
    Ok(values)
}

fn parse_series(s: &str) -> Result<CSeries> {
    CSeries::new(parse_duals(s)?)
}

fn parse_partition(s: &str) -> Result<SetPartition> {
    s.parse()
}

fn duals_plain(values: &[DualScalar]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::NcEnumerate { n } => {
            let parts = enumerate_nc(*n)?;
            let plain = parts.iter().map(|p| format!("{p}\n")).collect();
            Ok(Report::ok(json!({ "n": n, "count": parts.len(), "partitions": parts }), plain))
        }
        Command::NcbEnumerate { n } => {
            let parts = enumerate_ncb(*n)?;
            let plain = parts.iter().map(|p| format!("{p}\n")).collect();
            Ok(Report::ok(json!({ "n": n, "count": parts.len(), "partitions": parts }), plain))
        }
        Command::Kreweras { partition } => {
            let p = parse_partition(partition)?;
            let k = kreweras(&p)?;
            let plain = format!("{k}\n");
            Ok(Report::ok(json!({ "partition": p, "kreweras": k }), plain))
        }
        Command::Moebius { lower, upper } => {
            let lower = parse_partition(lower)?;
            let upper = match upper {
                Some(u) => parse_partition(u)?,
                None => SetPartition::one_block(lower.n()),
            };
            let mu = moebius(&PartitionInterval::new(lower.clone(), upper.clone())?)?;
            Ok(Report::ok(json!({ "lower": lower, "upper": upper, "moebius": mu }), format!("{mu}\n")))
        }
        Command::M2c { values } => {
            let k = moments_to_cumulants(&MomentSequence::new(parse_duals(values)?))?;
            let plain = duals_plain(k.values()) + "\n";
            Ok(Report::ok(json!({ "cumulants": k }), plain))
        }
        Command::C2m { values } => {
            let m = cumulants_to_moments(&CumulantSequence::new(parse_duals(values)?))?;
            let plain = duals_plain(m.values()) + "\n";
            Ok(Report::ok(json!({ "moments": m }), plain))
        }
        Command::Boxconv { f, g } => series_report(box_conv(&parse_series(f)?, &parse_series(g)?)?),
        Command::Checkboxconv { f, g } => series_report(check_box_conv(&parse_series(f)?, &parse_series(g)?)?),
        Command::Invert { f } => series_report(invert_compositional(&parse_series(f)?)?),
        Command::STransform { r } => {
            let s = s_transform(&parse_series(r)?)?;
            let plain = duals_plain(s.coeffs()) + "\n";
            Ok(Report::ok(json!({ "series": s }), plain))
        }
        Command::Clt { order, variance, base, n_summands } => {
            let spec = CltSpec::with_variance(*order, parse_dual(variance)?);
            match (base, n_summands) {
                (Some(base), Some(n)) => {
                    let report = clt_report(&spec, &CumulantSequence::new(parse_duals(base)?), *n)?;
                    let plain = limit_plain(&report, "moments");
                    let mut body = serde_json::to_value(&report).expect("values serialize");
                    if let Value::Object(map) = &mut body {
                        if let Some(v) = map.remove("cumulants") {
                            map.insert("moments".into(), v);
                        }
                    }
                    Ok(Report::ok(body, plain))
                }
                _ => {
                    let m = clt_limit_moments(&spec)?;
                    let plain = duals_plain(m.values()) + "\n";
                    Ok(Report::ok(json!({ "variance": spec.variance, "moments": m }), plain))
                }
            }
        }
        Command::Arcsine { order } => {
            let holds = arcsine_check(*order)?;
            let m = clt_limit_moments(&CltSpec::new(*order))?;
            let mut rows = Vec::new();
            let mut plain = String::new();
            for n in (2..=*order).step_by(2) {
                let v = m.get(n);
                let sum = &v.x + &v.t;
                writeln!(plain, "n={n}: {} + {} = {}", v.x, v.t, sum).unwrap();
                rows.push(json!({ "n": n, "semicircle": rational(&v.x), "second": rational(&v.t), "sum": rational(&sum) }));
            }
            writeln!(plain, "{}", if holds { "HOLDS" } else { "FAILS" }).unwrap();
            Ok(Report { body: json!({ "order": order, "moments": rows, "holds": holds }), plain, ok: holds })
        }
        Command::Poisson { rate, jump, order, n_summands } => {
            let spec = BernoulliSpec::new(parse_dual(rate)?, parse_dual(jump)?);
            match n_summands {
                Some(n) => {
                    let report = poisson_report(&spec, *n, *order)?;
                    let plain = limit_plain(&report, "cumulants");
                    Ok(Report::ok(serde_json::to_value(&report).expect("values serialize"), plain))
                }
                None => {
                    let k = poisson_limit_cumulants(&spec, *order);
                    let m = free_poisson_moments(&spec, *order)?;
                    let plain = format!("cumulants: {}\nmoments: {}\n", duals_plain(k.values()), duals_plain(m.values()));
                    Ok(Report::ok(json!({ "rate": spec.rate, "jump": spec.jump, "cumulants": k, "moments": m }), plain))
                }
            }
        }
        Command::Bernoulli { rate, jump, order } => {
            let spec = BernoulliSpec::new(parse_dual(rate)?, parse_dual(jump)?);
            let m = bernoulli_moments(&spec, *order);
            let k = moments_to_cumulants(&m)?;
            let plain = format!("moments: {}\ncumulants: {}\n", duals_plain(m.values()), duals_plain(k.values()));
            Ok(Report::ok(json!({ "rate": spec.rate, "jump": spec.jump, "moments": m, "cumulants": k }), plain))
        }
        Command::SemicircleSquare { sigma, order } => {
            let sigma = parse_dual(sigma)?;
            let k = semicircle_square_cumulants(&sigma, *order)?;
            let rate_sigma = semicircle_square_check(&sigma, *order)?;
            let jump_sigma = semicircle_square_jump_check(&sigma, *order)?;
            let plain = format!(
                "cumulants: {}\nrate sigma, jump (1,0): {}\nrate (1,0), jump sigma: {}\n",
                duals_plain(k.values()),
                rate_sigma,
                jump_sigma
            );
            Ok(Report::ok(
                json!({
                    "sigma": sigma,
                    "cumulants": k,
                    "poisson_rate_sigma_jump_one": rate_sigma,
                    "poisson_rate_one_jump_sigma": jump_sigma,
                }),
                plain,
            ))
        }
        Command::Hankel { lambda, alpha } => {
            let lambda = parse_rational(lambda)?;
            let alpha = parse_rational(alpha)?;
            let m = hankel_example_moments(&lambda, &alpha)?;
            let first = hankel_minor(&m, Component::First)?;
            let second = hankel_minor(&m, Component::Second)?;
            let plain = format!("{}\n", hankel_plain(&second));
            Ok(Report::ok(
                json!({
                    "lambda": rational(&lambda),
                    "alpha": rational(&alpha),
                    "moments": m,
                    "first": first,
                    "second": second,
                }),
                plain,
            ))
        }
        Command::VerifyPaper { criterion } => {
            let outcomes = match criterion {
                Some(id) => vec![verify::run(*id).ok_or_else(|| Error::Domain(format!("no criterion {id}")))?],
                None => verify::run_all(),
            };
            let ok = outcomes.iter().all(|o| o.passed);
            let plain = outcomes.iter().map(|o| o.line() + "\n").collect();
            Ok(Report { body: json!({ "passed": ok, "criteria": outcomes }), plain, ok })
        }
    }
}

fn series_report(s: CSeries) -> Result<Report> {
    let plain = duals_plain(s.coeffs()) + "\n";
    Ok(Report::ok(json!({ "series": s }), plain))
}

fn limit_plain(report: &limits::LimitReport, label: &str) -> String {
    format!(
        "N = {}\n{label}: {}\nlimit: {}\ndeviation: {}\n",
        report.n_summands,
        duals_plain(&report.cumulants),
        duals_plain(&report.limit),
        duals_plain(&report.deviation)
    )
}

fn hankel_plain(r: &HankelReport) -> String {
    if r.holds {
        format!("HOLDS: m2*m4 >= m3^2 ({} >= {})", r.lhs, r.rhs)
    } else {
        format!("FAILS: m2*m4 < m3^2 ({} < {})", r.lhs, r.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn typeb(args: &[&str]) -> Outcome {
        run(std::iter::once("typeb").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(typeb(&["nc-enumerate", "--n", "3"]).code, 0);
        assert_eq!(typeb(&["nc-enumerate"]).code, 2);
        assert_eq!(typeb(&["no-such-command"]).code, 2);
        assert_eq!(typeb(&["nc-enumerate", "--n", "40"]).code, 1);
        let decimal = typeb(&["hankel", "--lambda", "0.01", "--alpha", "1"]);
        assert_eq!(decimal.code, 1);
        assert!(decimal.stderr.starts_with("error: parse error"));
        let singular = typeb(&["invert", "--f", "0,1;1,0"]);
        assert_eq!(singular.code, 1);
        assert!(singular.stderr.starts_with("error: not invertible"));
    }

    #[test]
    fn clt_values() {
        let out = typeb(&["clt", "--order", "6", "--format", "plain"]);
        assert_eq!(out.stdout, "(0, 0) (1, 1) (0, 0) (2, 4) (0, 0) (5, 15)\n");
    }

    #[test]
    fn hankel_plain_line() {
        let out = typeb(&["hankel", "--lambda", "1/100", "--alpha", "1", "--format", "plain"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("FAILS: m2*m4 < m3^2 ("));
    }

    #[test]
    fn json_carries_schema() {
        let out = typeb(&["kreweras", "--partition", "1,2|3"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["command"], "kreweras");
        assert_eq!(v["kreweras"], "1|2,3");
    }
}
