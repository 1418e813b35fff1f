//! Command-line front end. [`run`] takes its arguments and output streams
//! explicitly and returns the process exit code.
//!
//! Exit codes: 0 success or equivalent, 1 not equivalent or a failed
//! verification, 2 usage, input or parse error, 3 instance over the cap.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dimacs::{parse_dimacs, CnfFormula};
use crate::equivalence::{self, Mode};
use crate::error::Error;
use crate::fuzz::{self, GeneratorConfig};
use crate::program::Program;
use crate::reductions;
use crate::report::{emit_report, to_json, Format, Report, WitnessContextReport};
use crate::semantics::{self, Limits, DEFAULT_CAP};
use crate::syntax::parse_program;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "lpod-lab", version, about = "Four-valued semantics and strong equivalence for ordered disjunction")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Maximum number of atoms for exhaustive enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All four-valued models of a program.
    Models {
        file: PathBuf,
        /// Only models without F*.
        #[arg(long)]
        three_valued: bool,
    },
    /// Answer sets (solid minimal models).
    Answersets { file: PathBuf },
    /// Most-preferred answer sets.
    Preferred { file: PathBuf },
    /// Gelfond-Lifschitz stable models of a normal program.
    Stable { file: PathBuf },
    /// Strong equivalence of two programs.
    Eq {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::MostPreferred)]
        mode: ModeArg,
    },
    /// Strong equivalence of two normal programs under standard answer sets.
    NormalEq { first: PathBuf, second: PathBuf },
    /// Separating context for two non-equivalent programs, with its check.
    WitnessContext { first: PathBuf, second: PathBuf },
    /// Programs P1, P2 from a 3-CNF formula in DIMACS form.
    Reduce3sat {
        file: PathBuf,
        #[command(flatten)]
        cnf: CnfArgs,
        /// Write <prefix>.p1.lpod, <prefix>.p2.lpod and <prefix>.manifest.json.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Checks the reduction on a formula against a brute-force SAT oracle.
    VerifyReduction {
        file: PathBuf,
        #[command(flatten)]
        cnf: CnfArgs,
    },
    /// Randomized differential campaign.
    Fuzz(FuzzArgs),
}

#[derive(Args, Debug)]
struct CnfArgs {
    /// Pad clauses shorter than three literals by repeating the last one.
    #[arg(long)]
    pad: bool,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    iterations: usize,
    #[arg(long, default_value_t = 4)]
    atoms: usize,
    #[arg(long, default_value_t = 4)]
    rules: usize,
    #[arg(long, default_value_t = 3)]
    max_head: usize,
    #[arg(long, default_value_t = 2)]
    max_body: usize,
    #[arg(long, default_value_t = 0.3)]
    neg_prob: f64,
    #[arg(long, default_value_t = 3)]
    contexts: usize,
    /// Directory receiving `.lpod` reproducers for violations and findings.
    #[arg(long)]
    reproducers: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    MostPreferred,
    All,
    Normal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::MostPreferred => Mode::MostPreferred,
            ModeArg::All => Mode::AllAnswerSets,
            ModeArg::Normal => Mode::Normal,
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_program(path: &Path) -> Result<Program, Failure> {
    parse_program(&read_input(path)?).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_cnf(path: &Path, pad: bool) -> Result<CnfFormula, Failure> {
    parse_dimacs(&read_input(path)?, pad).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Runs the command and returns `(report, exit code)`.
fn execute(cli: &Cli) -> Result<(Report, i32), Failure> {
    let limits = Limits::with_cap(cli.cap);
    let ok = |r: Report| Ok((r, EXIT_OK));
    match &cli.command {
        Command::Models { file, three_valued } => {
            let p = load_program(file)?;
            let set = if *three_valued {
                semantics::three_valued_models(&p, &limits)?
            } else {
                semantics::enumerate_models(&p, &limits)?
            };
            let models: Vec<_> = set.iter().collect();
            ok(Report::Models {
                atoms: p.atoms().to_vec(),
                three_valued: *three_valued,
                count: models.len(),
                models,
            })
        }
        Command::Answersets { file } => {
            let p = load_program(file)?;
            let sets = semantics::answer_sets(&p, &limits)?;
            ok(Report::AnswerSets {
                atoms: p.atoms().to_vec(),
                count: sets.len(),
                answer_sets: sets,
            })
        }
        Command::Preferred { file } => {
            let p = load_program(file)?;
            let sets = semantics::most_preferred(&p, &limits)?;
            ok(Report::MostPreferred {
                atoms: p.atoms().to_vec(),
                count: sets.len(),
                answer_sets: sets,
            })
        }
        Command::Stable { file } => {
            let p = load_program(file)?;
            let models = semantics::gl_stable_models(&p, &limits)?;
            ok(Report::StableModels {
                atoms: p.atoms().to_vec(),
                count: models.len(),
                stable_models: models,
            })
        }
        Command::Eq { first, second, mode } => {
            let (p1, p2) = (load_program(first)?, load_program(second)?);
            verdict_report(&p1, &p2, equivalence::strong_eq(&p1, &p2, (*mode).into(), &limits)?)
        }
        Command::NormalEq { first, second } => {
            let (p1, p2) = (load_program(first)?, load_program(second)?);
            verdict_report(&p1, &p2, equivalence::normal_strong_eq(&p1, &p2, &limits)?)
        }
        Command::WitnessContext { first, second } => {
            let (p1, p2) = (load_program(first)?, load_program(second)?);
            let verdict = equivalence::logically_equivalent(&p1, &p2, &limits)?;
            let Some(witness) = verdict.witness.clone() else {
                return verdict_report(&p1, &p2, verdict);
            };
            let ctx = equivalence::build_witness_context(&p1, &p2, &witness)?;
            let check = equivalence::verify_witness_context(&p1, &p2, &ctx);
            let code = if check.passed() { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((
                Report::WitnessContext {
                    atoms: p1.joint_atoms(&p2),
                    report: WitnessContextReport::new(&ctx, check),
                },
                code,
            ))
        }
        Command::Reduce3sat { file, cnf, output } => {
            let phi = load_cnf(file, cnf.pad)?;
            let out = reductions::reduce_3sat(&phi)?;
            let report = Report::reduction(&out);
            if let Some(prefix) = output {
                write_file(&with_suffix(prefix, ".p1.lpod"), &out.p1.to_string())?;
                write_file(&with_suffix(prefix, ".p2.lpod"), &out.p2.to_string())?;
                let manifest = serde_json::to_string_pretty(&to_json(&report)).expect("reports serialize");
                write_file(&with_suffix(prefix, ".manifest.json"), &(manifest + "\n"))?;
            }
            ok(report)
        }
        Command::VerifyReduction { file, cnf } => {
            let phi = load_cnf(file, cnf.pad)?;
            let check = reductions::verify_reduction(&phi, &limits)?;
            let code = if check.passed { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((Report::ReductionCheck { check }, code))
        }
        Command::Fuzz(args) => {
            let cfg = GeneratorConfig {
                num_atoms: args.atoms,
                num_rules: args.rules,
                max_head: args.max_head,
                max_body: args.max_body,
                neg_prob: args.neg_prob,
                seed: args.seed,
                iterations: args.iterations,
                contexts_per_pair: args.contexts,
            };
            let report = fuzz::run_campaign(&cfg, &limits)?;
            if let Some(dir) = &args.reproducers {
                write_reproducers(dir, &report)?;
            }
            let passed = report.passed();
            Ok((Report::Campaign { passed, report }, if passed { EXIT_OK } else { EXIT_NEGATIVE }))
        }
    }
}

/// `<kind>-<n>.p1.lpod`, `.p2.lpod` and, when present, `.ctx.lpod`.
fn write_reproducers(dir: &Path, report: &fuzz::CampaignReport) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let tagged = report
        .violations
        .iter()
        .map(|v| ("violation", v))
        .chain(report.findings.iter().map(|f| ("finding", f)));
    for (n, (kind, v)) in tagged.enumerate() {
        let stem = dir.join(format!("{kind}-{n}"));
        let header = format!("% {:?} at iteration {} (seed {}): {}\n", v.property, v.iteration, v.seed, v.detail);
        write_file(&with_suffix(&stem, ".p1.lpod"), &(header.clone() + &v.p1))?;
        write_file(&with_suffix(&stem, ".p2.lpod"), &(header.clone() + &v.p2))?;
        if let Some(ctx) = &v.context {
            write_file(&with_suffix(&stem, ".ctx.lpod"), &(header + ctx))?;
        }
    }
    Ok(())
}

fn verdict_report(p1: &Program, p2: &Program, verdict: equivalence::EquivalenceVerdict) -> Result<(Report, i32), Failure> {
    let code = if verdict.equivalent { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((
        Report::Equivalence {
            atoms: p1.joint_atoms(p2),
            verdict,
        },
        code,
    ))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::SatCapExceeded { .. } => EXIT_CAP,
        Error::ContextVerification(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let format = if cli.json { Format::Structured } else { Format::Text };
    match execute(&cli) {
        Ok((report, code)) => {
            let _ = out.write_all(emit_report(&report, format).as_bytes());
            code
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
