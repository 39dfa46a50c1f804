use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gentle_core::cohomology::beta_cohomology;
use gentle_core::nogaps::{witness_json, CounterexampleReport};
use gentle_core::scalar::parse_rational;
use gentle_core::walks::{enumerate_gba, enumerate_gst, is_derived_discrete};
use gentle_core::{
    band_complex, cohomology_dims, hl_spectrum, parse_and_classify, parse_presentation, reduce_band, reduce_beta,
    reduce_string, string_complex, validate_gentle, verify_counterexample_a0, Algebra, Error, SpectrumOptions,
};
use num::{BigRational, One};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gentle", version, about = "Derived categories of gentle algebras: walks, complexes, cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the gentle axioms and finite dimensionality.
    Validate { file: PathBuf },
    /// Monomial basis of each indecomposable projective.
    Basis { file: PathBuf },
    /// Generalized strings (and bands) up to an arrow bound.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_arrows: usize,
        #[arg(long)]
        bands: bool,
    },
    /// The projective complex of a walk.
    Complex {
        file: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
    },
    /// Cohomology dimensions of a walk's complex.
    Cohomology {
        file: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
        /// Resolve the kernel in the leftmost degree first.
        #[arg(long)]
        beta: bool,
    },
    /// Achieved cohomological lengths and their gaps.
    Spectrum {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_arrows: usize,
        #[arg(long)]
        reduce_check: bool,
        /// Also include primitive bands at lambda = 1, d = 1.
        #[arg(long)]
        bands: bool,
    },
    /// Reduce the cohomological length of a witness by one.
    Reduce {
        file: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        negative: bool,
        /// Reduce beta of the string instead of the string itself.
        #[arg(long)]
        beta: bool,
    },
    /// Derived-discreteness certificate.
    Discrete { file: PathBuf },
    /// Exhaustive check of the A0 cohomological range example.
    DemoA0,
}

#[derive(Args)]
struct WalkArgs {
    #[arg(long)]
    walk: String,
    #[arg(long)]
    band: bool,
    /// Exact scalar, `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 1)]
    mult: usize,
}

impl WalkArgs {
    fn lambda(&self) -> Result<BigRational, Failure> {
        self.lambda.as_deref().map_or_else(|| Ok(BigRational::one()), |t| Ok(parse_rational(t)?))
    }
}

enum Failure {
    Input(String, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.kind().to_string(), e.to_string())
    }
}

struct Output {
    body: Value,
    code: u8,
}

impl From<Value> for Output {
    fn from(body: Value) -> Self {
        Output { body, code: 0 }
    }
}

fn read(file: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(file).map_err(|e| Failure::Input("io".into(), format!("{}: {e}", file.display())))
}

fn load(file: &PathBuf) -> Result<Algebra, Failure> {
    Ok(Algebra::parse(&read(file)?)?)
}

fn run(cmd: Command) -> Result<Output, Failure> {
    Ok(match cmd {
        Command::Validate { file } => {
            let p = parse_presentation(&read(&file)?)?;
            let report = validate_gentle(&p);
            let mut body = serde_json::to_value(&report).expect("report serializes");
            body["algebra"] = json!(p.name());
            body.into()
        }
        Command::Basis { file } => {
            let a = load(&file)?;
            let projectives: Vec<Value> = (0..a.num_vertices())
                .map(|v| {
                    let paths: Vec<String> = a.projective_basis(v).iter().map(|x| a.path_name(x)).collect();
                    json!({"vertex": a.vertex_name(v), "dim": paths.len(), "paths": paths})
                })
                .collect();
            json!({"algebra": a.name(), "dim": a.path_basis().len(), "projectives": projectives}).into()
        }
        Command::Enumerate { file, max_arrows, bands } => {
            let a = load(&file)?;
            let describe = |w: &gentle_core::GenWalk| {
                json!({"walk": w.literal(&a), "kind": w.kind().to_string(), "arrows": w.arrow_count(), "mu": w.mu()})
            };
            let strings = enumerate_gst(&a, max_arrows);
            let mut body = json!({
                "algebra": a.name(),
                "max_arrows": max_arrows,
                "strings": strings.walks.iter().map(describe).collect::<Vec<_>>(),
                "strings_complete": strings.complete,
            });
            if bands {
                let found = enumerate_gba(&a, max_arrows);
                body["bands"] = json!(found.walks.iter().map(describe).collect::<Vec<_>>());
                body["bands_complete"] = json!(found.complete);
            }
            body.into()
        }
        Command::Complex { file, walk } => {
            let a = load(&file)?;
            let w = parse_and_classify(&a, &walk.walk)?;
            let c = if walk.band { band_complex(&w, &walk.lambda()?, walk.mult)? } else { string_complex(&w)? };
            c.to_json(&a).into()
        }
        Command::Cohomology { file, walk, beta } => {
            let a = load(&file)?;
            let w = parse_and_classify(&a, &walk.walk)?;
            let coh = if walk.band {
                cohomology_dims(&a, &band_complex(&w, &walk.lambda()?, walk.mult)?)
            } else if beta {
                beta_cohomology(&a, &w)?
            } else {
                cohomology_dims(&a, &string_complex(&w)?)
            };
            coh.to_json().into()
        }
        Command::Spectrum { file, max_arrows, reduce_check, bands } => {
            let a = load(&file)?;
            let report = hl_spectrum(&a, &SpectrumOptions { max_arrows, include_bands: bands, reduce_check });
            let mut body = report.to_json(&a);
            body["algebra"] = json!(a.name());
            let code = if report.gaps.is_empty() && report.failures.is_empty() { 0 } else { 2 };
            Output { body, code }
        }
        Command::Reduce { file, walk, negative, beta } => {
            let a = load(&file)?;
            let w = parse_and_classify(&a, &walk.walk)?;
            let trace = if walk.band {
                reduce_band(&a, &w, &walk.lambda()?, walk.mult)?
            } else if beta {
                reduce_beta(&a, &w, negative)?
            } else {
                reduce_string(&a, &w, negative)?
            };
            let body = trace.to_json(&a);
            Output { body, code: if trace.succeeded() { 0 } else { 2 } }
        }
        Command::Discrete { file } => {
            let a = load(&file)?;
            let cert = is_derived_discrete(&a);
            json!({
                "algebra": a.name(),
                "derived_discrete": cert.derived_discrete,
                "components": cert.components.iter().map(|c| json!({
                    "letters": c.letters,
                    "positive_cycle": c.positive_cycle,
                    "negative_cycle": c.negative_cycle,
                    "zero_cycle": c.zero_cycle,
                })).collect::<Vec<_>>(),
                "band": cert.band.as_ref().map(|w| witness_json(&a, &gentle_core::Witness::Band {
                    walk: w.clone(),
                    lambda: BigRational::one(),
                    mult: 1,
                    shift: 0,
                })),
            })
            .into()
        }
        Command::DemoA0 => {
            let report: CounterexampleReport = verify_counterexample_a0();
            Output { body: report.to_json(), code: if report.pass() { 0 } else { 3 } }
        }
    })
}

fn configure_threads() {
    let threads = std::env::var("GENTLE_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli.command) {
        Ok(out) => {
            emit(&serde_json::to_string_pretty(&out.body).expect("json renders"));
            if out.code != 0 {
                eprintln!("gentle: assertions failed (exit {})", out.code);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Input(kind, message)) => {
            emit(&json!({"error": {"kind": kind, "message": message}}).to_string());
            eprintln!("gentle: {message}");
            ExitCode::from(1)
        }
    }
}
