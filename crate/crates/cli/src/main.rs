//! `partineq`: expand products, verify inequalities, audit injections and
//! rerun the reproduction presets.
//!
//! Exit status: 0 when every check passed, 1 when a violation was found
//! (and reported), 2 on usage or precondition errors. Reports go to
//! stdout; timing and progress go to stderr.

mod presets;
mod render;

use std::fs;
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use partineq::antitelescope::{g_sequence, kr_term_certificate, GSequence};
use partineq::inequalities::{search_remark, CheckResult, ExtraFactor, KrIdentity, TheoremParams, Verdict};
use partineq::{Expansion, ProductSpec};

use render::{emit, Format};

#[derive(Parser)]
#[command(name = "partineq", version, about = "Exact checks of partition inequalities")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    /// Worker threads for searches (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product spec to q^N.
    Expand {
        /// JSON spec: a file path, `-` for stdin, or inline JSON.
        #[arg(long)]
        spec: String,
        #[arg(long = "N", default_value_t = 120)]
        n: u64,
    },
    /// Expand the difference of two product specs and look for negatives.
    Diff {
        /// Minuend and subtrahend, in that order.
        #[arg(long, num_args = 2, required = true)]
        spec: Vec<String>,
        #[arg(long = "N", default_value_t = 120)]
        n: u64,
    },
    /// Run one theorem checker.
    Verify(VerifyArgs),
    /// Kanade-Russell anti-telescoping term certificates.
    Antitelescope {
        #[arg(long = "L", default_value_t = 10)]
        l: u64,
        #[arg(long = "N", default_value_t = 300)]
        n: u64,
    },
    /// Empirical Hypothesis for the Andrews-Baxter recurrence.
    Empirical {
        #[arg(long, default_value_t = 20)]
        imax: u64,
        #[arg(long = "N", default_value_t = 300)]
        n: u64,
    },
    /// Search for negative d'(m, nM) without the distinct-parts extra factor.
    Search {
        #[arg(long = "max-M", default_value_t = 12)]
        max_m: u64,
        #[arg(long = "max-L", default_value_t = 20)]
        max_l: u64,
        #[arg(long = "max-nM", default_value_t = 250)]
        max_nm: u64,
    },
    /// Rerun a named reproduction experiment.
    Preset {
        #[arg(value_enum)]
        name: presets::Preset,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    #[value(name = "T1.1")]
    T11,
    #[value(name = "T1.2")]
    T12,
    #[value(name = "T1.3")]
    T13,
    #[value(name = "P2.1")]
    P21,
    #[value(name = "BG5.3")]
    Bg53,
    #[value(name = "BGrizzell")]
    BGrizzell,
    #[value(name = "KR3.1")]
    Kr31,
    #[value(name = "KR3.2")]
    Kr32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Extra {
    WithZ,
    WithoutZ,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    a: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long = "M")]
    m: Option<u64>,
    #[arg(long = "L")]
    l: Option<u64>,
    /// Truncation degree (120 by default, 300 for KR3.1/KR3.2).
    #[arg(long = "N")]
    n: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    /// BGrizzell octuple L,m,x,y,z,r,s,u.
    #[arg(long, value_delimiter = ',', num_args = 8)]
    octuple: Option<Vec<u64>>,
    /// Whether the T1.2 extra factor carries z.
    #[arg(long, value_enum, default_value = "with-z")]
    extra: Extra,
    /// Largest weight for injection audits (T1.2/T1.3/P2.1).
    #[arg(long, default_value_t = 45)]
    audit_weight: u64,
}

/// Usage or precondition failure: exit 2.
struct UsageError(String);

impl From<partineq::Error> for UsageError {
    fn from(e: partineq::Error) -> Self {
        UsageError(e.to_string())
    }
}

fn need(v: Option<u64>, flag: &str) -> Result<u64, UsageError> {
    v.ok_or_else(|| UsageError(format!("--{flag} is required for this family")))
}

fn theorem_params(args: &VerifyArgs) -> Result<TheoremParams, UsageError> {
    let trunc = args.n.unwrap_or(match args.family {
        Family::Kr31 | Family::Kr32 => 300,
        _ => 120,
    });
    Ok(match args.family {
        Family::T11 => TheoremParams::T11 {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
            c: need(args.c, "c")?,
            modulus: need(args.m, "M")?,
            length: need(args.l, "L")?,
            trunc,
        },
        Family::T12 => TheoremParams::T12 {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
            modulus: need(args.m, "M")?,
            length: need(args.l, "L")?,
            trunc,
            extra: match args.extra {
                Extra::WithZ => ExtraFactor::WithZ,
                Extra::WithoutZ => ExtraFactor::WithoutZ,
            },
            audit_weight: args.audit_weight,
        },
        Family::T13 => TheoremParams::T13 {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
            modulus: need(args.m, "M")?,
            length: need(args.l, "L")?,
            trunc,
            audit_weight: args.audit_weight,
        },
        Family::P21 => TheoremParams::P21 {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
            modulus: need(args.m, "M")?,
            length: need(args.l, "L")?,
            d: need(args.d, "d")?,
            max_weight: args.n.unwrap_or(args.audit_weight),
        },
        Family::Bg53 => TheoremParams::BG53 {
            r: need(args.r, "r")?,
            modulus: need(args.m, "M")?,
            length: need(args.l, "L")?,
            trunc,
        },
        Family::BGrizzell => {
            let o = args
                .octuple
                .as_deref()
                .ok_or_else(|| UsageError("--octuple is required for BGrizzell".into()))?;
            TheoremParams::BGrizzell {
                octuple: o.try_into().map_err(|_| UsageError("--octuple takes 8 values".into()))?,
                trunc,
            }
        }
        Family::Kr31 => TheoremParams::KR {
            which: KrIdentity::First,
            trunc,
        },
        Family::Kr32 => TheoremParams::KR {
            which: KrIdentity::Second,
            trunc,
        },
    })
}

/// Failures the statements themselves predict: the two-family difference
/// outside its divisibility hypothesis, and the extra factor without `z`.
fn expected_known(params: &TheoremParams, result: &CheckResult) -> bool {
    if result.pass {
        return false;
    }
    match *params {
        TheoremParams::T11 { a, b, .. } => b % a == 0,
        TheoremParams::T12 { extra, .. } => extra == ExtraFactor::WithoutZ,
        _ => false,
    }
}

fn read_spec(arg: &str) -> Result<ProductSpec, UsageError> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| UsageError(format!("stdin: {e}")))?;
        s
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| UsageError(format!("{arg}: {e}")))?
    };
    Ok(ProductSpec::from_json(&text)?)
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, UsageError> {
    let format = cli.format;
    if cli.workers == 0 {
        return Err(UsageError("--workers must be at least 1".into()));
    }
    match cli.command {
        Command::Expand { spec, n } => {
            let e = read_spec(&spec)?.expand(n)?;
            emit(format, &render::expansion_json(&e), || render::expansion_text(&e));
            Ok(ExitCode::SUCCESS)
        }
        Command::Diff { spec, n } => {
            let (upper, lower) = (read_spec(&spec[0])?, read_spec(&spec[1])?);
            let diff = match (upper.expand(n)?, lower.expand(n)?) {
                (Expansion::Q(x), Expansion::Q(y)) => Expansion::Q(&x - &y),
                (Expansion::ZQ(x), Expansion::ZQ(y)) => Expansion::ZQ(&x - &y),
                _ => return Err(UsageError("cannot subtract a one-variable and a two-variable product".into())),
            };
            let first = diff.first_negative();
            let mut value = render::expansion_json(&diff);
            value["first_negative"] = render::negative_json(&first);
            emit(format, &value, || {
                let head = match &first {
                    Some(_) => format!("first negative: {}\n", render::negative_text(&first)),
                    None => "nonnegative\n".into(),
                };
                head + &render::expansion_text(&diff)
            });
            Ok(status(first.is_none()))
        }
        Command::Verify(args) => {
            let params = theorem_params(&args)?;
            let result = params.check()?;
            eprintln!("{} finished in {:.2?}", result.family, result.elapsed);
            let known = expected_known(&params, &result);
            let mut value = serde_json::to_value(&result).expect("check results serialize");
            value["expected_known"] = json!(known);
            emit(format, &value, || render::check_text(&result, known));
            Ok(status(result.verdict == Verdict::Pass))
        }
        Command::Antitelescope { l, n } => {
            let start = Instant::now();
            let mut certs = Vec::new();
            for j in 1..=l {
                certs.push(kr_term_certificate(j, l, n)?.1);
            }
            eprintln!("{l} terms in {:.2?}", start.elapsed());
            let pass = certs.iter().all(|c| c.nonnegative);
            emit(format, &json!({ "L": l, "N": n, "terms": certs }), || {
                render::certificates_text(&certs)
            });
            Ok(status(pass))
        }
        Command::Empirical { imax, n } => {
            let g = g_sequence(imax, n)?;
            let checks: Vec<_> = (1..=imax).filter_map(|i| g.hypothesis(i)).collect();
            let recurrence = g.recurrence_holds();
            let pass = recurrence && checks.iter().all(|c| c.holds);
            let value = json!({
                "imax": imax,
                "N": n,
                "certified_trunc": GSequence::certified_trunc(imax, n),
                "recurrence_holds": recurrence,
                "checks": checks,
            });
            emit(format, &value, || render::hypothesis_text(&checks, recurrence));
            Ok(status(pass))
        }
        Command::Search { max_m, max_l, max_nm } => {
            let start = Instant::now();
            let report = search_remark(max_m, max_l, max_nm, cli.workers)?;
            eprintln!("{} tuples in {:.2?}", report.tuples_checked, start.elapsed());
            let value = serde_json::to_value(&report).expect("search reports serialize");
            emit(format, &value, || render::search_text(&report));
            Ok(status(report.violations.is_empty()))
        }
        Command::Preset { name } => presets::run(name, format, cli.workers),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
