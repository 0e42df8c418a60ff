//! `otto-forge`: single cycles, sweeps, ergotropy checks and law audits.
//!
//! stdout carries only JSON or CSV; notes and errors go to stderr. Exit codes:
//! 0 success, 2 usage, 3 physics or numerics.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use otto_forge::cycle::{
    audit_laws, BathSpec, CycleConfig, CycleKind, CycleRegistry, SecondKindExcess,
};
use otto_forge::gaussian::{
    delta_n, ergotropy_analytic, fock_oracle, is_nonclassical, nonclassical_threshold,
    passive_energy, state_energy, FockOptions, GaussianModeState,
};
use otto_forge::sweep::{audit_campaign, emit_table, run_sweep, SweepAxis, SweepSpec, TableFormat};
use otto_forge::thermo::{thermal_entropy, Frequency, Occupation, Temperature};
use otto_forge::Error;
use serde::Deserialize;
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_PHYSICS: u8 = 3;

#[derive(Parser)]
#[command(
    name = "otto-forge",
    version,
    about = "Quantum Otto machines with non-thermal baths"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one cycle and print its stroke ledger as JSON.
    Cycle(CycleArgs),
    /// Sweep one parameter and emit a CSV or JSON table.
    Sweep(SweepArgs),
    /// Ergotropy and non-classicality of a Gaussian mode state.
    Ergotropy(ErgotropyArgs),
    /// Randomised audit of the cycle laws.
    Audit(AuditArgs),
}

#[derive(Args)]
struct BaseArgs {
    /// Flat JSON object whose keys match the long flag names. Flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    omega1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    t2: Option<f64>,
    /// thermal | squeezed:R[,PHASE] | displaced:RE,IM |
    /// squeezed:R[,PHASE]+displaced:RE,IM | second-kind:DN | second-kind:T=TREAL
    #[arg(long, allow_hyphen_values = true)]
    bath: Option<String>,
    /// standard | modified | second-kind
    #[arg(long)]
    cycle: Option<String>,
}

#[derive(Args)]
struct CycleArgs {
    #[command(flatten)]
    base: BaseArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    base: BaseArgs,
    /// frequency-ratio | delta-n | squeeze-r | displacement-mag | cold-temperature
    #[arg(long)]
    axis: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    /// Write the table here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ErgotropyArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    nth: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Squeezing phase.
    #[arg(long, allow_negative_numbers = true)]
    phase: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_re: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha_im: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Cross-check against the truncated Fock-space oracle.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    tail_tol: Option<f64>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    omega1: Option<f64>,
    omega2: Option<f64>,
    t1: Option<f64>,
    t2: Option<f64>,
    bath: Option<String>,
    cycle: Option<String>,
    axis: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    steps: Option<usize>,
    format: Option<String>,
    out: Option<PathBuf>,
    nth: Option<f64>,
    r: Option<f64>,
    phase: Option<f64>,
    alpha_re: Option<f64>,
    alpha_im: Option<f64>,
    omega: Option<f64>,
    oracle: Option<bool>,
    tail_tol: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
}

enum Failure {
    Usage(String),
    Physics(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Physics(e.to_string())
        }
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn load_config(path: Option<&Path>) -> CmdResult<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("bad config file {}: {e}", path.display())))
}

/// Flag value if given, else the file's; warns when both disagree.
fn pick<T: PartialEq + Display>(name: &str, flag: Option<T>, file: Option<T>) -> Option<T> {
    match (flag, file) {
        (Some(f), Some(c)) => {
            if f != c {
                eprintln!("warning: --{name} {f} overrides config value {c}");
            }
            Some(f)
        }
        (f, c) => f.or(c),
    }
}

fn required<T>(name: &str, v: Option<T>) -> CmdResult<T> {
    v.ok_or_else(|| usage(format!("missing required --{name}")))
}

fn number(s: &str, what: &str) -> CmdResult<f64> {
    s.trim()
        .parse()
        .map_err(|_| usage(format!("bad number '{s}' in {what}")))
}

fn complex(s: &str, what: &str) -> CmdResult<Complex64> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("{what} needs RE,IM, got '{s}'")))?;
    Ok(Complex64::new(number(re, what)?, number(im, what)?))
}

fn squeeze(s: &str) -> CmdResult<(f64, f64)> {
    match s.split_once(',') {
        Some((r, phase)) => Ok((number(r, "squeezed")?, number(phase, "squeezed")?)),
        None => Ok((number(s, "squeezed")?, 0.0)),
    }
}

fn parse_bath(spec: &str) -> CmdResult<BathSpec> {
    let spec = spec.trim();
    if spec == "thermal" {
        return Ok(BathSpec::Thermal);
    }
    if let Some((sq, disp)) = spec.split_once('+') {
        let r = sq.strip_prefix("squeezed:").ok_or_else(|| {
            usage(format!(
                "composite bath must be squeezed:R+displaced:RE,IM, got '{spec}'"
            ))
        })?;
        let alpha = disp.strip_prefix("displaced:").ok_or_else(|| {
            usage(format!(
                "composite bath must be squeezed:R+displaced:RE,IM, got '{spec}'"
            ))
        })?;
        let (r, phase) = squeeze(r)?;
        return Ok(BathSpec::SqueezedDisplaced {
            r,
            phase,
            alpha: complex(alpha, "displaced")?,
        });
    }
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| usage(format!("unknown bath '{spec}'")))?;
    match kind {
        "squeezed" => {
            let (r, phase) = squeeze(arg)?;
            Ok(BathSpec::SqueezedThermal { r, phase })
        }
        "displaced" => Ok(BathSpec::displaced(complex(arg, "displaced")?)),
        "second-kind" => match arg.strip_prefix("T=") {
            Some(t) => Ok(BathSpec::SecondKind {
                excess: SecondKindExcess::RealTemperature(Temperature::new(number(
                    t,
                    "second-kind",
                )?)?),
            }),
            None => Ok(BathSpec::second_kind(number(arg, "second-kind")?)),
        },
        _ => Err(usage(format!("unknown bath '{spec}'"))),
    }
}

struct Base {
    config: CycleConfig,
    cycle: CycleKind,
}

fn resolve_base(args: &BaseArgs, file: &FileConfig) -> CmdResult<Base> {
    let omega1 = required("omega1", pick("omega1", args.omega1, file.omega1))?;
    let omega2 = required("omega2", pick("omega2", args.omega2, file.omega2))?;
    let t1 = required("t1", pick("t1", args.t1, file.t1))?;
    let t2 = required("t2", pick("t2", args.t2, file.t2))?;
    let bath =
        pick("bath", args.bath.clone(), file.bath.clone()).unwrap_or_else(|| "thermal".into());
    let cycle =
        pick("cycle", args.cycle.clone(), file.cycle.clone()).unwrap_or_else(|| "standard".into());
    Ok(Base {
        config: CycleConfig::new(omega1, omega2, t1, t2, parse_bath(&bath)?)?,
        cycle: cycle.parse()?,
    })
}

fn print_json(v: &Value) -> CmdResult {
    let text = serde_json::to_string_pretty(v).map_err(|e| Failure::Physics(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn cmd_cycle(args: &CycleArgs) -> CmdResult {
    let file = load_config(args.base.config.as_deref())?;
    let base = resolve_base(&args.base, &file)?;
    let ledger = CycleRegistry::default().run(base.cycle.as_str(), &base.config)?;
    let laws = audit_laws(&ledger, &base.config);
    let mut out = serde_json::to_value(&ledger).map_err(|e| Failure::Physics(e.to_string()))?;
    let map = out.as_object_mut().expect("ledger serialises to an object");
    map.insert("law_residual".into(), json!(laws.first_law_residual));
    map.insert(
        "laws".into(),
        serde_json::to_value(&laws).map_err(|e| Failure::Physics(e.to_string()))?,
    );
    print_json(&out)
}

fn cmd_sweep(args: &SweepArgs) -> CmdResult {
    let file = load_config(args.base.config.as_deref())?;
    let base = resolve_base(&args.base, &file)?;
    let axis: SweepAxis =
        required("axis", pick("axis", args.axis.clone(), file.axis.clone()))?.parse()?;
    let spec = SweepSpec {
        base: base.config,
        axis,
        start: required("start", pick("start", args.start, file.start))?,
        stop: required("stop", pick("stop", args.stop, file.stop))?,
        steps: required("steps", pick("steps", args.steps, file.steps))?,
        cycle: base.cycle,
    };
    let format: TableFormat = pick("format", args.format.clone(), file.format.clone())
        .unwrap_or_else(|| "csv".into())
        .parse()?;
    let out = match (args.out.clone(), file.out.clone()) {
        (Some(f), Some(c)) => {
            if f != c {
                eprintln!(
                    "warning: --out {} overrides config value {}",
                    f.display(),
                    c.display()
                );
            }
            Some(f)
        }
        (f, c) => f.or(c),
    };
    let rows = run_sweep(&spec)?;
    let flagged = rows.iter().filter(|r| r.flag.is_some()).count();
    if flagged > 0 {
        eprintln!("note: {flagged} of {} rows carry a flag", rows.len());
    }
    let bytes = emit_table(&rows, format)?;
    match out {
        Some(path) => std::fs::write(&path, bytes)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(&bytes)
                .map_err(|e| Failure::Physics(format!("stdout: {e}")))
        }
    }
}

fn relative(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        (a - b).abs()
    } else {
        (a - b).abs() / b.abs()
    }
}

fn cmd_ergotropy(args: &ErgotropyArgs) -> CmdResult {
    let file = load_config(args.config.as_deref())?;
    let n_th = Occupation::new(required("nth", pick("nth", args.nth, file.nth))?)?;
    let r = pick("r", args.r, file.r).unwrap_or(0.0);
    let phase = pick("phase", args.phase, file.phase).unwrap_or(0.0);
    let alpha = Complex64::new(
        pick("alpha-re", args.alpha_re, file.alpha_re).unwrap_or(0.0),
        pick("alpha-im", args.alpha_im, file.alpha_im).unwrap_or(0.0),
    );
    let omega = Frequency::new(required("omega", pick("omega", args.omega, file.omega))?)?;
    let flag_oracle = args.oracle.then_some(true);
    let oracle = pick("oracle", flag_oracle, file.oracle).unwrap_or(false);
    let tail_tol = pick("tail-tol", args.tail_tol, file.tail_tol);

    let state = GaussianModeState::new(n_th, r, phase, alpha)?;
    let ergotropy = ergotropy_analytic(&state, omega);
    let mut out = json!({
        "omega": omega.value(),
        "nth": n_th.value(),
        "r": r,
        "phase": phase,
        "alpha_re": alpha.re,
        "alpha_im": alpha.im,
        "delta_n": delta_n(&state).value(),
        "energy": state_energy(&state, omega),
        "passive_energy": passive_energy(&state, omega),
        "ergotropy": ergotropy,
        "entropy": thermal_entropy(n_th),
        "nonclassical": is_nonclassical(&state),
        "nonclassical_threshold": nonclassical_threshold(r),
    });
    if oracle {
        let mut opts = FockOptions::default();
        if let Some(t) = tail_tol {
            opts.tail_tol = t;
        }
        let report = fock_oracle(&state, omega, &opts)?;
        out["oracle"] = json!({
            "cutoff": report.cutoff,
            "tail_tol": opts.tail_tol,
            "trace_deficit": report.trace_deficit,
            "ergotropy": report.ergotropy,
            "entropy": report.entropy,
            "ergotropy_rel_dev": relative(report.ergotropy, ergotropy),
            "entropy_rel_dev": relative(report.entropy, thermal_entropy(n_th)),
        });
    } else if tail_tol.is_some() {
        eprintln!("warning: --tail-tol has no effect without --oracle");
    }
    print_json(&out)
}

fn cmd_audit(args: &AuditArgs) -> CmdResult {
    let file = load_config(args.config.as_deref())?;
    let samples = required("samples", pick("samples", args.samples, file.samples))?;
    let seed = pick("seed", args.seed, file.seed).unwrap_or(0);
    let summary = audit_campaign(samples, seed)?;
    print_json(&serde_json::to_value(&summary).map_err(|e| Failure::Physics(e.to_string()))?)?;
    if summary.total_violations > 0 {
        return Err(Failure::Physics(format!(
            "{} law violations",
            summary.total_violations
        )));
    }
    Ok(())
}

fn init_threads() -> CmdResult {
    let Ok(v) = std::env::var("OTTO_FORGE_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "OTTO_FORGE_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Physics(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Cycle(a) => cmd_cycle(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Ergotropy(a) => cmd_ergotropy(a),
        Command::Audit(a) => cmd_audit(a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `otto-forge --help` for usage");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Physics(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PHYSICS)
        }
    }
}
