//! Command-line front end. [`run`] never panics on bad input and never calls
//! `process::exit`, so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failure or runtime error, 2 usage
//! error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::buffer::{SequenceBuffer, ValueWidth};
use crate::error::{Error, Result};
use crate::eval::{eval_single_with, lifespan_with, EvalOutcome};
use crate::families::{verify_family_end_to_end, Family, FamilyFixture, FamilyParams};
use crate::generations::{alpha_table, evaluate_generations, plot_data};
use crate::golomb::{verify_oracle, SlowSolutionOracle};
use crate::interleave::detect_interleaving;
use crate::io;
use crate::presets;
use crate::recurrence::RecurrenceSpec;
use crate::scan::{scan, IcSpace};

#[derive(Debug, Parser)]
#[command(name = "metafib", version, about = "Nested recurrence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Bfile,
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
struct Source {
    /// Named recurrence and initial condition (see `metafib scan --list`).
    #[arg(long)]
    preset: Option<String>,
    /// Initial condition, e.g. "3,1,4,4".
    #[arg(long)]
    ic: Option<String>,
    /// Recurrence as a JSON file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Recurrence as a name (V, H, Q, BA, LA, G) or inline JSON.
    #[arg(long)]
    recurrence: Option<String>,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate terms and print them.
    Eval {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 100)]
        limit: u64,
        #[arg(long)]
        compact32: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Report whether and where a sequence dies.
    Lifespan {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
        #[arg(long)]
        compact32: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Generation boundaries P_s, P and R.
    Generations {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Noise moments and growth exponents per generation.
    Alpha {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// `n, S_c(n), region` rows; bounds may be integers or R<k>/P<k>.
    PlotData {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Compare a Golomb-like system against its slow-solution oracle.
    OracleCheck {
        #[arg(long)]
        system: SlowSolutionOracle,
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Check a quasi-periodic family against direct evaluation.
    VerifyFamily {
        #[arg(long)]
        recurrence: Option<Family>,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        ic: Option<String>,
        /// K,b0,b1,b2,b4,a_f,a_g,m
        #[arg(long)]
        params: Option<String>,
        /// Last sequence index compared.
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Classify residue classes of the tail as constant/linear.
    Detect {
        #[command(flatten)]
        source: Source,
        /// b-file holding the sequence to classify.
        #[arg(long)]
        ic_file: Option<PathBuf>,
        #[arg(long, default_value_t = 5)]
        modulus: u64,
        /// Terms evaluated when the source is a recurrence.
        #[arg(long, default_value_t = 20_000)]
        limit: u64,
        /// Window start; defaults to the middle of the sequence.
        #[arg(long)]
        from: Option<i64>,
        #[arg(long)]
        to: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Evaluate and classify many initial conditions.
    Scan {
        #[command(flatten)]
        source: Source,
        /// "1..3,1..3,1,1" (ranges per position) or "1,1,1,1;3,1,4,4".
        #[arg(long)]
        space: Option<String>,
        /// Scan every preset whose recurrence matches.
        #[arg(long)]
        presets: bool,
        /// Print preset names and exit.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Verification(String),
    Runtime(String),
    /// Downstream closed the pipe; not worth reporting.
    OutputClosed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_)
            | Error::InvalidSystem(_)
            | Error::EmptyInitialCondition
            | Error::CapTooSmall { .. }
            | Error::InvalidParams(_)
            | Error::WindowTooShort(_)
            | Error::Parse { .. }
            | Error::UnknownPreset(_)
            | Error::OutOfRange { .. } => Failure::Usage(e.to_string()),
            Error::OutputClosed => Failure::OutputClosed,
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
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
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::OutputClosed) => 0,
        Err(Failure::Verification(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            1
        }
        Err(Failure::Runtime(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn resolve(source: &Source, default_preset: Option<&str>) -> Result<(RecurrenceSpec, Vec<i64>)> {
    let preset = match source.preset.as_deref().or(default_preset) {
        Some(name) => Some(presets::get(name)?),
        None => None,
    };
    let spec = if let Some(path) = &source.spec {
        RecurrenceSpec::from_json(&fs::read_to_string(path)?)?
    } else if let Some(text) = &source.recurrence {
        text.parse()?
    } else if let Some(p) = &preset {
        p.spec.clone()
    } else {
        return Err(Error::InvalidSpec(
            "give --preset, --spec or --recurrence".into(),
        ));
    };
    let ic = if let Some(text) = &source.ic {
        io::parse_ic(text)?
    } else if let Some(p) = &preset {
        p.ic.clone()
    } else {
        return Err(Error::EmptyInitialCondition);
    };
    Ok((spec, ic))
}

/// Collects output text and writes it to `--out` or stdout at the end.
fn emit(output: &Output, text: &str, out: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn width(compact32: bool) -> ValueWidth {
    if compact32 {
        ValueWidth::Compact
    } else {
        ValueWidth::Wide
    }
}

fn death_line(outcome: &EvalOutcome) -> String {
    match outcome.death() {
        Some(d) => format!(
            "dead after {} terms (defined terms: {}; a({}) references index {})",
            d.death_index, outcome.computed_len, d.death_index, d.offending_argument
        ),
        None => format!("alive through {} terms", outcome.computed_len),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Eval {
            source,
            limit,
            compact32,
            output,
        } => {
            let (spec, ic) = resolve(&source, None)?;
            let cap = limit.max(ic.len() as u64);
            let (buf, outcome) = eval_single_with(&spec, &ic, cap, width(compact32))?;
            let buf = truncate(&buf, limit);
            let text = match output.format.unwrap_or(Format::Bfile) {
                Format::Bfile | Format::Text => io::to_bfile_string(&buf),
                Format::Csv => {
                    let mut v = Vec::new();
                    io::write_csv(&buf, &mut v)?;
                    String::from_utf8(v).expect("ascii")
                }
                Format::Json => {
                    json!({ "terms": buf.to_vec(), "outcome": outcome }).to_string() + "\n"
                }
            };
            emit(&output, &text, out)?;
            if !outcome.is_alive() {
                let _ = writeln!(err, "{}", death_line(&outcome));
            }
            Ok(())
        }
        Command::Lifespan {
            source,
            cap,
            compact32,
            output,
        } => {
            let (spec, ic) = resolve(&source, None)?;
            let outcome = lifespan_with(&spec, &ic, cap.max(ic.len() as u64), width(compact32))?;
            let text = match output.format {
                Some(Format::Json) => serde_json::to_string(&outcome).expect("serializes") + "\n",
                _ => death_line(&outcome) + "\n",
            };
            emit(&output, &text, out)?;
            Ok(())
        }
        Command::Generations {
            source,
            kmax,
            output,
        } => {
            let (spec, ic) = resolve(&source, Some("Vc"))?;
            let (_, gen) = evaluate_generations(&spec, &ic, kmax)?;
            let text = match output.format {
                Some(Format::Json) => {
                    serde_json::to_string_pretty(&gen).expect("serializes") + "\n"
                }
                _ => {
                    let mut s = String::from("k,P_s,P,R\n");
                    for k in 1..=kmax {
                        s += &format!("{k},{},{},{}\n", gen.p_s(k), gen.p(k), gen.r(k));
                    }
                    s
                }
            };
            emit(&output, &text, out)?;
            Ok(())
        }
        Command::Alpha {
            source,
            kmax,
            output,
        } => {
            let (spec, ic) = resolve(&source, Some("Vc"))?;
            let (buf, gen) = evaluate_generations(&spec, &ic, kmax)?;
            let stats = alpha_table(&buf, &gen)?;
            let rows: Vec<_> = stats.generations.iter().filter(|g| g.k >= 5).collect();
            let text = match output.format {
                Some(Format::Json) => {
                    serde_json::to_string_pretty(&rows).expect("serializes") + "\n"
                }
                _ => {
                    let mut s = String::from("k,alpha,M,mean,mean_square\n");
                    for g in rows {
                        let alpha = g.alpha.map(|a| format!("{a:.4}")).unwrap_or_default();
                        s += &format!(
                            "{},{alpha},{:.4},{:.4},{:.4}\n",
                            g.k, g.m, g.mean, g.mean_square
                        );
                    }
                    s
                }
            };
            emit(&output, &text, out)?;
            Ok(())
        }
        Command::PlotData {
            source,
            from,
            to,
            kmax,
            output,
        } => {
            let (spec, ic) = resolve(&source, Some("Vc"))?;
            let needed = [&from, &to]
                .iter()
                .filter_map(|b| symbolic_generation(b))
                .max()
                .unwrap_or(1);
            let kmax = kmax.unwrap_or(needed + 1);
            let (buf, gen) = evaluate_generations(&spec, &ic, kmax)?;
            let bound = |text: &str| -> Result<i64> {
                match (symbolic_generation(text), text.chars().next()) {
                    (Some(k), Some('P' | 'p')) if k <= kmax + 1 => Ok(gen.p(k)),
                    (Some(k), Some('R' | 'r')) if k <= kmax => Ok(gen.r(k)),
                    (Some(_), _) => {
                        Err(Error::InvalidParams(format!("{text} beyond --kmax {kmax}")))
                    }
                    _ => text
                        .parse()
                        .map_err(|_| Error::InvalidParams(format!("bad bound '{text}'"))),
                }
            };
            let (lo, hi) = (bound(&from)?, bound(&to)?);
            let mut s = String::from("n,S_c,region\n");
            for p in plot_data(&buf, &gen, lo, hi)? {
                s += &format!("{},{},{}\n", p.n, p.s_c, p.region);
            }
            emit(&output, &s, out)?;
            Ok(())
        }
        Command::OracleCheck {
            system,
            limit,
            output,
        } => {
            let (sys, f, g) = system.setup();
            let check = verify_oracle(&sys, &f, &g, system, limit)?;
            let text = match output.format {
                Some(Format::Json) => serde_json::to_string(&check).expect("serializes") + "\n",
                _ => match &check.first_mismatch {
                    None => format!("{system}: matches oracle through {limit}\n"),
                    Some(m) => format!(
                        "{system}: {:?}({}) = {:?}, oracle says {}\n",
                        m.which, m.index, m.actual, m.expected
                    ),
                },
            };
            emit(&output, &text, out)?;
            if check.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(format!(
                    "{system} disagrees with its oracle"
                )))
            }
        }
        Command::VerifyFamily {
            recurrence,
            fixture,
            ic,
            params,
            limit,
            output,
        } => {
            let (family, ic, params, from) = match (&fixture, &ic, &params) {
                (Some(name), None, None) => {
                    let fx = FamilyFixture::by_name(name)
                        .ok_or_else(|| Error::UnknownPreset(name.clone()))?;
                    if recurrence.is_some_and(|r| r != fx.family) {
                        return Err(Failure::Usage(format!(
                            "fixture {name} is not a {recurrence:?} family"
                        )));
                    }
                    (fx.family, fx.ic, fx.params, Some(fx.start_index))
                }
                (None, Some(ic), Some(params)) => {
                    let family = recurrence.ok_or_else(|| {
                        Failure::Usage("--recurrence is required with --params".into())
                    })?;
                    (family, io::parse_ic(ic)?, parse_params(params)?, None)
                }
                _ => {
                    return Err(Failure::Usage(
                        "give --fixture, or --ic with --params".into(),
                    ))
                }
            };
            let restrictions = family.check_ic_restrictions(&params, &ic, 10_000)?;
            let periods = (limit as i64 - params.k).max(0) as u64 / 5;
            let res = verify_family_end_to_end(family, &ic, &params, periods, from)?;
            let text = match output.format {
                Some(Format::Json) => {
                    json!({ "restrictions": restrictions, "verification": res }).to_string() + "\n"
                }
                _ => {
                    let mut s = match &restrictions.failure {
                        None => "restrictions: ok\n".to_string(),
                        Some(f) => format!("restrictions: {f}\n"),
                    };
                    s += &match (&res.first_mismatch, res.death()) {
                        (_, Some(d)) => format!("direct evaluation dies at {}\n", d.death_index),
                        (Some(m), _) => format!(
                            "mismatch at {}: {} vs {:?}\n",
                            m.index, m.actual, m.expected
                        ),
                        (None, None) => {
                            format!(
                                "family form holds on [{}, {}]\n",
                                res.checked_from, res.checked_to
                            )
                        }
                    };
                    s
                }
            };
            emit(&output, &text, out)?;
            if res.passed() && restrictions.passed() {
                Ok(())
            } else {
                Err(Failure::Verification("family does not hold".into()))
            }
        }
        Command::Detect {
            source,
            ic_file,
            modulus,
            limit,
            from,
            to,
            output,
        } => {
            let buf = match &ic_file {
                Some(path) => io::parse_bfile(&fs::read_to_string(path).map_err(Error::from)?)?,
                None => {
                    let (spec, ic) = resolve(&source, None)?;
                    eval_single_with(&spec, &ic, limit.max(ic.len() as u64), ValueWidth::Wide)?.0
                }
            };
            let last = buf.last_index();
            let lo = from.unwrap_or((buf.origin_index() + last) / 2);
            let hi = to.unwrap_or(last);
            let p = detect_interleaving(&buf, modulus, lo, hi)?;
            let text = match output.format {
                Some(Format::Text) => format!("{}\n", p.pattern_string()),
                _ => {
                    json!({
                        "pattern": p.pattern_string(),
                        "congruence_signature": p.congruence_signature(),
                        "from": p.from,
                        "to": p.to,
                        "classes": p.classes,
                    })
                    .to_string()
                        + "\n"
                }
            };
            emit(&output, &text, out)?;
            Ok(())
        }
        Command::Scan {
            source,
            space,
            presets: use_presets,
            list,
            cap,
            workers,
            output,
        } => {
            if list {
                let text: String = presets::all()
                    .iter()
                    .map(|p| format!("{}\t{}\n", p.name, p.spec))
                    .collect();
                emit(&output, &text, out)?;
                return Ok(());
            }
            let spec = if source.preset.is_some()
                || source.spec.is_some()
                || source.recurrence.is_some()
            {
                resolve(
                    &Source {
                        ic: Some("1".into()),
                        ..source
                    },
                    None,
                )?
                .0
            } else {
                RecurrenceSpec::v()
            };
            let space = match (space, use_presets) {
                (Some(text), false) => IcSpace::parse(&text)?,
                (None, true) => IcSpace::Explicit(
                    presets::all()
                        .into_iter()
                        .filter(|p| p.spec == spec)
                        .map(|p| p.ic)
                        .collect(),
                ),
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --space and --presets".into(),
                    ))
                }
            };
            let report = scan(&spec, &space, cap, workers)?;
            let text = match output.format {
                Some(Format::Csv) => {
                    let mut s = String::from("ic,alive,lifespan,death_index,classification\n");
                    for r in &report.records {
                        let ic: Vec<String> = r.ic.iter().map(ToString::to_string).collect();
                        let death = r.death_index.map(|d| d.to_string()).unwrap_or_default();
                        let class = serde_json::to_value(r.classification).expect("serializes");
                        s += &format!(
                            "\"{}\",{},{},{death},{}\n",
                            ic.join(","),
                            r.alive,
                            r.lifespan,
                            class.as_str().unwrap_or_default()
                        );
                    }
                    s
                }
                _ => report.to_json() + "\n",
            };
            emit(&output, &text, out)?;
            Ok(())
        }
    }
}

fn truncate(buf: &SequenceBuffer, limit: u64) -> SequenceBuffer {
    let mut terms = buf.to_vec();
    terms.truncate(limit as usize);
    SequenceBuffer::from_terms(buf.origin_index(), terms)
}

/// `k` from `P<k>` or `R<k>`.
fn symbolic_generation(text: &str) -> Option<usize> {
    let rest = text.strip_prefix(['P', 'p', 'R', 'r'])?;
    rest.parse().ok().filter(|&k| k >= 1)
}

fn parse_params(text: &str) -> Result<FamilyParams> {
    let v = io::parse_ic(text)?;
    let [k, b0, b1, b2, b4, a_f, a_g, m] = v[..] else {
        return Err(Error::InvalidParams(format!(
            "expected 8 values K,b0,b1,b2,b4,a_f,a_g,m; got {}",
            v.len()
        )));
    };
    Ok(FamilyParams {
        k,
        b0,
        b1,
        b2,
        b4,
        a_f,
        a_g,
        m,
    })
}
