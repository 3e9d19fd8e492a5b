use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use entmix::io::{construct_family, parse_mixture_spec, FamilyParams, State};
use entmix::report::{detect, mix_report, reproduce, stormer_scan, write_scan_csv};
use entmix::theorems::{check_theorem, fuzz_theorem, TheoremId};
use entmix::Error;

const SEED_ENV: &str = "ENTMIX_SEED";

/// Entanglement detection for mixtures of multipartite qudit states.
#[derive(Parser)]
#[command(name = "entmix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named state and print it as JSON.
    Construct(ConstructArgs),
    /// Run every detector on a JSON state.
    Detect {
        /// State file; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a mixture from a spec and report purity, overlaps and memberships.
    Mix {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check one theorem on a mixture spec.
    TheoremCheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check one theorem on seeded random specs.
    Fuzz {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Base seed; falls back to $ENTMIX_SEED, then 0.
        #[arg(long, env = SEED_ENV)]
        seed: Option<u64>,
        /// Omit the per-trial verdicts.
        #[arg(long)]
        summary_only: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep the Størmer family and print CSV.
    StormerScan {
        #[arg(long, allow_negative_numbers = true)]
        alpha_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha_max: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Recompute a worked example and compare with its stated values.
    Reproduce {
        case: String,
        /// Also write the table as JSON.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// bell, ghz, shifted, dicke, w or stormer.
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    sign: Option<String>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Bell state: psi+, psi-, phi+ or phi-.
    #[arg(long, allow_hyphen_values = true)]
    which: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

impl ConstructArgs {
    fn params(&self) -> FamilyParams {
        let mut p = FamilyParams::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                p.insert(k.to_string(), v);
            }
        };
        put("n", self.n.map(|x| x.to_string()));
        put("d", self.d.map(|x| x.to_string()));
        put("sign", self.sign.clone());
        put("j", self.j.map(|x| x.to_string()));
        put("m", self.m.map(|x| x.to_string()));
        put("which", self.which.clone());
        put("alpha", self.alpha.map(|x| x.to_string()));
        p
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
    /// A check ran to completion but did not pass.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Capacity { .. }) => 3,
            Failure::Lib(Error::InvalidParameter(_) | Error::Parse(_)) => 1,
            Failure::Lib(_) => 2,
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Check(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Check(m) => m.clone(),
            Failure::Io(e) => format!("i/o error: {e}"),
        }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn emit_bytes(output: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match output {
        Some(p) if p.as_os_str() != "-" => fs::write(p, bytes)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(output: Option<&PathBuf>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    emit_bytes(output, text.as_bytes())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct(args) => {
            let state = construct_family(&args.family.to_ascii_lowercase(), &args.params())?;
            let mut text = state.to_json();
            text.push('\n');
            emit_bytes(args.output.as_ref(), text.as_bytes())
        }
        Command::Detect { input, output } => {
            let state = State::from_json(&read_input(input.as_ref())?)?;
            emit_json(output.as_ref(), &detect(&state.density())?)
        }
        Command::Mix { spec, output } => {
            let spec = parse_mixture_spec(&read_input(Some(&spec))?)?;
            emit_json(output.as_ref(), &mix_report(&spec)?)
        }
        Command::TheoremCheck { theorem, spec, output } => {
            let spec = parse_mixture_spec(&read_input(Some(&spec))?)?;
            let verdict = check_theorem(TheoremId::from_number(theorem)?, &spec)?;
            emit_json(output.as_ref(), &verdict)
        }
        Command::Fuzz {
            theorem,
            trials,
            seed,
            summary_only,
            output,
        } => {
            let mut summary = fuzz_theorem(TheoremId::from_number(theorem)?, trials, seed.unwrap_or(0))?;
            let violated = summary.violated;
            if summary_only {
                summary.verdicts.clear();
            }
            emit_json(output.as_ref(), &summary)?;
            if violated > 0 {
                return Err(Failure::Check(format!("{violated} trial(s) violated the theorem")));
            }
            Ok(())
        }
        Command::StormerScan {
            alpha_min,
            alpha_max,
            step,
            output,
        } => {
            let rows = stormer_scan(alpha_min, alpha_max, step)?;
            let mut buf = Vec::new();
            write_scan_csv(&rows, &mut buf)?;
            emit_bytes(output.as_ref(), &buf)
        }
        Command::Reproduce { case, json_out } => {
            let report = reproduce(&case)?;
            report.write_table(io::stdout().lock())?;
            if let Some(path) = json_out {
                emit_json(Some(&path), &report)?;
            }
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Check(format!("case {case} is outside its tolerances")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("entmix: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
