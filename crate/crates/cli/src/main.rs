use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dkp_cli::config::load_config;
use dkp_cli::sweep::{preset, run_sweep, SweepSpec};
use dkp_cli::table::num;
use dkp_cli::validate::{run_validation, ValidateOptions};
use dkp_cli::{CliError, Result};
use dkp_core::nu::{solve_energy, SolveOptions};
use dkp_core::wavefunction::{normalize, Convention, WavefunctionSpec};
use dkp_core::{Branch, Mode, ModelParams, Param};

/// Spectra of the spin-0 DKP oscillator with Cornell coupling on a spinning
/// cosmic string.
///
/// Parameters come from a `key=value` file (--config) with keys M, omega, k,
/// m, alpha, a, delta1, delta2. Missing keys default to 1, except m and k,
/// which default to 0.
#[derive(Parser, Debug)]
#[command(name = "dkp", version)]
struct Cli {
    /// Parameter file; without it every parameter takes its default.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::NuStandard)]
    mode: ModeArg,
    #[arg(long, global = true, value_enum, default_value_t = BranchArg::Positive)]
    branch: BranchArg,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print n, E, residual and quartic agreement for n = 0..levels-1.
    Spectrum {
        #[arg(long, default_value_t = 4)]
        levels: u32,
    },
    /// Sweep one parameter and write the table as CSV.
    Sweep {
        #[arg(long, value_parser = ["fig1", "fig2", "fig3", "fig4", "fig5"], conflicts_with_all = ["param", "from", "to"])]
        preset: Option<String>,
        /// One of alpha, omega, a, delta1, delta2.
        #[arg(long, requires_all = ["from", "to"])]
        param: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 41)]
        steps: usize,
        /// Levels n = 0..levels-1 (ignored with --preset).
        #[arg(long, default_value_t = 4)]
        levels: u32,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the radial wavefunction as n,r,phi,density rows.
    Wavefunction {
        #[arg(long, default_value_t = 1)]
        levels: u32,
        /// Outer radius; defaults to where the Gaussian tail is negligible.
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ConventionArg::ReducedConsistent)]
        convention: ConventionArg,
    },
    /// Adjudicate the quantization modes against the finite-difference oracle.
    Validate {
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    NuStandard,
    PaperLiteral,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BranchArg {
    Positive,
    Negative,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConventionArg {
    ReducedConsistent,
    PaperLiteral,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::NuStandard => Mode::NuStandard,
            ModeArg::PaperLiteral => Mode::PaperLiteral,
        }
    }
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Positive => Branch::Positive,
            BranchArg::Negative => Branch::Negative,
        }
    }
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::ReducedConsistent => Convention::ReducedConsistent,
            ConventionArg::PaperLiteral => Convention::PaperLiteral,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("dkp: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let params = match &cli.config {
        Some(path) => load_config(path).map_err(|e| match e {
            CliError::Io(io) => CliError::Config {
                line: 0,
                message: format!("cannot read {}: {io}", path.display()),
            },
            other => other,
        })?,
        None => ModelParams::default(),
    };
    let mode = Mode::from(cli.mode);
    let branch = Branch::from(cli.branch);
    let stdout = io::stdout();

    match cli.command {
        Command::Spectrum { levels } => {
            advise_ctc(params.a, params.alpha);
            let mut out = stdout.lock();
            writeln!(out, "n,E,residual,quartic_agreement")?;
            for n in 0..levels {
                let s = solve_energy(&params, n, mode, branch, &SolveOptions::default())?;
                writeln!(
                    out,
                    "{n},{},{},{}",
                    num(s.energy),
                    num(s.residual),
                    num(s.quartic_agreement)
                )?;
            }
        }
        Command::Sweep {
            preset: name,
            param,
            from,
            to,
            steps,
            levels,
            out,
        } => {
            let panels = match (name, param) {
                (Some(name), _) => {
                    if cli.config.is_some() {
                        eprintln!("dkp: note: --preset fixes its own parameters; --config is ignored");
                    }
                    preset(&name, mode, branch)
                        .ok_or_else(|| CliError::Spec(format!("unknown preset `{name}`")))?
                        .panels
                }
                (None, Some(param)) => {
                    let param = Param::from_name(&param)
                        .ok_or_else(|| CliError::Spec(format!("unknown parameter `{param}`")))?;
                    vec![SweepSpec {
                        base: params,
                        param,
                        lo: from.unwrap_or(f64::NAN),
                        hi: to.unwrap_or(f64::NAN),
                        steps,
                        levels: (0..levels).collect(),
                        mode,
                        branch,
                    }]
                }
                (None, None) => return Err(CliError::Spec("give --preset or --param/--from/--to".into())),
            };
            let max_a = panels
                .iter()
                .map(|p| {
                    if p.param == Param::A {
                        p.hi.max(p.base.a)
                    } else {
                        p.base.a
                    }
                })
                .fold(0.0, f64::max);
            advise_ctc(max_a, panels[0].base.alpha);
            let table = run_sweep(&panels, cli.jobs)?;
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(&path)?);
                    table.write_csv(&mut w)?;
                    w.flush()?;
                }
                None => table.write_csv(stdout.lock())?,
            }
        }
        Command::Wavefunction {
            levels,
            r_max,
            samples,
            convention,
        } => {
            advise_ctc(params.a, params.alpha);
            if samples < 2 {
                return Err(CliError::Spec("need at least 2 samples".into()));
            }
            let mut out = stdout.lock();
            writeln!(out, "n,r,phi,density")?;
            for n in 0..levels {
                let s = solve_energy(&params, n, mode, branch, &SolveOptions::default())?;
                let spec = WavefunctionSpec::new(&params, n, s.energy, convention.into())?;
                let r_max = r_max.unwrap_or_else(|| spec.default_r_max());
                let norm = normalize(&spec, r_max)?;
                for i in 1..=samples {
                    let r = r_max * i as f64 / samples as f64;
                    let phi = spec.value(r);
                    writeln!(out, "{n},{},{},{}", num(r), num(phi), num((norm * phi).powi(2)))?;
                }
            }
        }
        Command::Validate { trials, seed } => {
            let options = ValidateOptions {
                trials,
                seed,
                branch,
                jobs: cli.jobs,
                ..ValidateOptions::default()
            };
            let report = run_validation(&options)?;
            print!("{}", report.render());
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Inside `r < a/alpha` the metric admits closed timelike curves; the solver
/// does not cut that region out, so say so.
fn advise_ctc(a: f64, alpha: f64) {
    if a > 0.0 {
        eprintln!(
            "dkp: advisory: a = {a} > 0, so r < a/alpha = {:.6} lies in the closed-timelike-curve region; the radial domain is not restricted",
            a / alpha
        );
    }
}
