//! The `braceforge` command line.
//!
//! Every verb writes a report listing the claims it checked, each with its
//! witness or certificate. Exit status: 0 when every claim holds, 1 when
//! some claim is mathematically false (the report carries the
//! certificate), 2 for usage and input errors.
//!
//! The environment variable `BRACEFORGE_ORDER_CAP` overrides the largest
//! group order any command will build.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use braceforge_core::cohomology::DEFAULT_COMPLEMENT_CAP;
use braceforge_core::gallery::NonInnerKind;
use braceforge_core::group::set_order_cap;
use braceforge_core::rota_baxter::DEFAULT_ENUMERATION_CAP;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod certificates;
mod commands;
pub mod error;
mod instances;
pub mod json;
pub mod objects;
pub mod report;
mod reproduce;

use error::{CliError, Result};
use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "braceforge",
    version,
    about = "Finite groups, gamma functions, skew braces and Rota–Baxter operators, with exact cohomology certificates"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Include per-step durations (the report is then no longer
    /// byte-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct LiftSource {
    /// A named example: alpha:P:A, p5:P or centerless.
    #[arg(long, conflicts_with_all = ["gamma", "lift"])]
    instance: Option<String>,
    /// Gamma function file.
    #[arg(long, requires = "lift")]
    gamma: Option<PathBuf>,
    /// Lift file `{"group", "images"}` with γ(g) = ι(C(g)).
    #[arg(long, requires = "gamma")]
    lift: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CocycleSource {
    /// A named example: alpha:P:A, p5:P, p5-transported:P or centerless.
    #[arg(long, conflicts_with = "cocycle")]
    instance: Option<String>,
    /// Cocycle file.
    #[arg(long)]
    cocycle: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Load or construct a group and summarise it.
    Group {
        /// Descriptor (trivial, cyclic:N, abelian:N,M,.., dihedral:N,
        /// heisenberg:P) or group file.
        group: String,
        /// Save the group as JSON.
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Check the gamma functional equation over all pairs.
    VerifyGamma {
        #[arg(long, conflicts_with = "gamma")]
        instance: Option<String>,
        #[arg(long)]
        gamma: Option<PathBuf>,
    },
    /// Check the Rota–Baxter identity of a map file over all pairs.
    VerifyRb {
        /// Map file `{"group", "images"}`.
        rb: PathBuf,
    },
    /// Check the skew brace identity over all triples.
    VerifyBrace {
        #[arg(long, requires = "circle")]
        dot: Option<String>,
        #[arg(long, requires = "dot")]
        circle: Option<String>,
        #[arg(long, conflicts_with_all = ["dot", "gamma"])]
        instance: Option<String>,
        #[arg(long, conflicts_with = "dot")]
        gamma: Option<PathBuf>,
    },
    /// Extract κ(g,h) = C(g)C(h)C(g∘h)⁻¹ from a gamma function and its lift.
    ExtractCocycle {
        #[command(flatten)]
        source: LiftSource,
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Decide whether a cocycle is a coboundary, with a certificate.
    SolveCoboundary {
        #[command(flatten)]
        source: CocycleSource,
    },
    /// Build the central extension of a cocycle.
    BuildExtension {
        #[command(flatten)]
        source: CocycleSource,
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Search exhaustively for a complement of the coefficients.
    FindComplement {
        #[command(flatten)]
        source: CocycleSource,
        /// Largest number of candidate lifts to try.
        #[arg(long, default_value_t = DEFAULT_COMPLEMENT_CAP)]
        cap: u128,
    },
    /// Compute the coefficients met with the derived subgroup of the
    /// extension.
    Obstruction {
        #[command(flatten)]
        source: CocycleSource,
    },
    /// Reconstruct a Rota–Baxter operator inducing the gamma function.
    ReconstructRb {
        #[command(flatten)]
        source: LiftSource,
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// List every Rota–Baxter operator on a small group.
    EnumerateRb {
        group: String,
        /// Largest number of candidate maps to try.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
    },
    /// Re-derive the worked examples, one claim per asserted identity.
    Reproduce {
        #[command(subcommand)]
        what: Reproduce,
        /// Seed for the random central recodings.
        #[arg(long, default_value_t = 0, global = true)]
        seed: u64,
        /// Random central recodings per instance.
        #[arg(long, default_value_t = 3, global = true)]
        recodings: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Reproduce {
    /// The α-family on the Heisenberg group, every residue α.
    Alpha {
        #[arg(long)]
        p: usize,
    },
    /// The order-p⁵ non-split example.
    P5 {
        #[arg(long)]
        p: usize,
    },
    /// Skew braces with non-inner gamma functions.
    Noninner {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 7)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Scalar of multiplicative order q mod p (default: the smallest).
        #[arg(long)]
        c: Option<usize>,
    },
    /// The centreless case γ(g) = ι(g⁻¹).
    Centerless,
    /// Everything above at the default parameters.
    All,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    C4D4,
    C4D4Trivial,
    Vhq,
}

/// Runs the command line with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line, writing the report to `out` (unless `--output`
/// is given) and diagnostics to `err`. Returns the exit status.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return if code == 0 { 0 } else { 2 };
        }
    };
    if let Err(e) = apply_order_cap() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                }),
                None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                }),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if report.all_pass() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn apply_order_cap() -> Result<()> {
    if let Some(raw) = std::env::var_os("BRACEFORGE_ORDER_CAP") {
        let cap = raw
            .to_str()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::usage("BRACEFORGE_ORDER_CAP must be a positive integer"))?;
        set_order_cap(cap);
    }
    Ok(())
}

fn lift_args(s: &LiftSource) -> commands::LiftArgs<'_> {
    commands::LiftArgs {
        instance: s.instance.as_deref(),
        gamma: s.gamma.as_deref(),
        lift: s.lift.as_deref(),
    }
}

fn cocycle_args(s: &CocycleSource) -> commands::CocycleArgs<'_> {
    commands::CocycleArgs {
        instance: s.instance.as_deref(),
        cocycle: s.cocycle.as_deref(),
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let name = verb_name(&cli.verb);
    let mut report = Report::new(name, cli.timing);
    match &cli.verb {
        Verb::Group { group, save: s } => commands::group(&mut report, group, s.as_deref())?,
        Verb::VerifyGamma { instance, gamma } => {
            commands::verify_gamma(&mut report, instance.as_deref(), gamma.as_deref())?
        }
        Verb::VerifyRb { rb } => commands::verify_rb_file(&mut report, rb)?,
        Verb::VerifyBrace { dot, circle, instance, gamma } => commands::verify_brace(
            &mut report,
            dot.as_deref(),
            circle.as_deref(),
            instance.as_deref(),
            gamma.as_deref(),
        )?,
        Verb::ExtractCocycle { source, save: s } => {
            commands::extract_cocycle(&mut report, lift_args(source), s.as_deref())?
        }
        Verb::SolveCoboundary { source } => commands::solve(&mut report, cocycle_args(source))?,
        Verb::BuildExtension { source, save: s } => {
            commands::build_extension(&mut report, cocycle_args(source), s.as_deref())?
        }
        Verb::FindComplement { source, cap } => {
            commands::find_complement(&mut report, cocycle_args(source), *cap)?
        }
        Verb::Obstruction { source } => commands::obstruction(&mut report, cocycle_args(source))?,
        Verb::ReconstructRb { source, save: s } => {
            commands::reconstruct(&mut report, lift_args(source), s.as_deref())?
        }
        Verb::EnumerateRb { group, cap, save: s } => {
            commands::enumerate(&mut report, group, *cap, s.as_deref())?
        }
        Verb::Reproduce { what, seed, recodings } => {
            let settings = reproduce::Settings { recodings: *recodings };
            let mut rng = reproduce::rng(*seed);
            report.seed = Some(*seed);
            match what {
                Reproduce::Alpha { p } => reproduce::alpha(&mut report, *p, &settings, &mut rng)?,
                Reproduce::P5 { p } => reproduce::p5(&mut report, *p, &settings, &mut rng)?,
                Reproduce::Noninner { kind, p, q, c } => {
                    let kind = match (kind, c) {
                        (Kind::C4D4, _) => NonInnerKind::C4D4,
                        (Kind::C4D4Trivial, _) => NonInnerKind::C4D4Trivial,
                        (Kind::Vhq, Some(c)) => NonInnerKind::Vhq { p: *p, q: *q, c: *c },
                        (Kind::Vhq, None) => {
                            NonInnerKind::vhq(*p, *q).map_err(CliError::library)?
                        }
                    };
                    reproduce::noninner(&mut report, kind)?
                }
                Reproduce::Centerless => reproduce::centerless(&mut report)?,
                Reproduce::All => reproduce::all(&mut report, &settings, &mut rng)?,
            }
        }
    }
    Ok(report)
}

fn verb_name(verb: &Verb) -> String {
    match verb {
        Verb::Group { .. } => "group".into(),
        Verb::VerifyGamma { .. } => "verify-gamma".into(),
        Verb::VerifyRb { .. } => "verify-rb".into(),
        Verb::VerifyBrace { .. } => "verify-brace".into(),
        Verb::ExtractCocycle { .. } => "extract-cocycle".into(),
        Verb::SolveCoboundary { .. } => "solve-coboundary".into(),
        Verb::BuildExtension { .. } => "build-extension".into(),
        Verb::FindComplement { .. } => "find-complement".into(),
        Verb::Obstruction { .. } => "obstruction".into(),
        Verb::ReconstructRb { .. } => "reconstruct-rb".into(),
        Verb::EnumerateRb { .. } => "enumerate-rb".into(),
        Verb::Reproduce { what, .. } => format!(
            "reproduce {}",
            match what {
                Reproduce::Alpha { p } => format!("alpha --p {p}"),
                Reproduce::P5 { p } => format!("p5 --p {p}"),
                Reproduce::Noninner { kind, .. } => format!(
                    "noninner --kind {}",
                    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
                ),
                Reproduce::Centerless => "centerless".into(),
                Reproduce::All => "all".into(),
            }
        ),
    }
}
