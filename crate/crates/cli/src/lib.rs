//! `bolab` command-line driver.
//!
//! Exit codes: 0 success, 1 invalid input or configuration, 2 the solution
//! blew up.

use std::fs;
use std::path::{Path, PathBuf};

use bolab::analysis::{residual_of, vanishing_order_fit, windowed_mass, VanishingOrderReport};
use bolab::complex_ext::{uc_probe, UcReport};
use bolab::io::{config::RunConfig, diagnostics_csv, diagnostics_json, parse_config, snapshot};
use bolab::limits::{deep_water_study, shallow_water_study};
use bolab::models::SimState;
use bolab::timestep::{run, IntegratorConfig};
use bolab::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BLOWUP: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bolab",
    version,
    about = "Pseudospectral solver for Benjamin-Ono type equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate the configured model and write diagnostics and snapshots.
    Simulate { config: PathBuf },
    /// Sweep the depth parameter towards the BO (deep) or KdV (shallow) limit.
    Limits {
        #[arg(value_enum)]
        regime: Regime,
        config: PathBuf,
    },
    /// Unique-continuation probe and vanishing-order fit on the configured datum.
    Probe { config: PathBuf },
    /// PDE residual of the snapshots written by `simulate`.
    Residual { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Regime {
    Deep,
    Shallow,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Blowup(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Blowup { .. } => Failure::Blowup(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Invalid(format!("{}: {e}", path.display()))
}

fn load_config(path: &Path) -> std::result::Result<RunConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_config(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, contents: impl AsRef<[u8]>) -> Outcome {
    fs::write(path, contents).map_err(|e| io_err(path, e))
}

fn create_dir(path: &Path) -> Outcome {
    fs::create_dir_all(path).map_err(|e| io_err(path, e))
}

fn simulate(cfg_path: &Path) -> Outcome {
    let cfg = load_config(cfg_path)?;
    let spec = cfg.equation();
    let u0 = cfg.initial_field()?;
    let traj = run(&u0, &spec, &cfg.integrator())?;
    for w in &traj.warnings {
        eprintln!("warning: {w}");
    }

    let out = &cfg.out_dir;
    let snaps = out.join("snapshots");
    create_dir(&snaps)?;
    write(&out.join("run.cfg"), cfg.to_text())?;
    write(&out.join("diagnostics.csv"), diagnostics_csv(&traj))?;
    write(&out.join("diagnostics.json"), diagnostics_json(&traj))?;
    for (i, s) in traj.snapshots.iter().enumerate() {
        write(
            &snaps.join(format!("snap_{i:06}.bofs")),
            snapshot::encode(s),
        )?;
    }
    eprintln!(
        "{}: {} snapshots to t = {} in {}",
        spec.name(),
        traj.snapshots.len(),
        traj.last().t,
        out.display()
    );
    match traj.blowup {
        Some(t) => Err(Failure::Blowup(format!("solution blew up at t = {t}"))),
        None => Ok(()),
    }
}

fn limits(regime: Regime, cfg_path: &Path) -> Outcome {
    let cfg = load_config(cfg_path)?;
    if cfg.limit_deltas.is_empty() {
        return Err(Failure::Invalid(format!(
            "{}: limits.deltas is required for the limits command",
            cfg_path.display()
        )));
    }
    let u0 = cfg.initial_field()?;
    let integ = cfg.integrator();
    let report = match regime {
        Regime::Deep => deep_water_study(&u0, &cfg.limit_deltas, cfg.t_final, &integ)?,
        Regime::Shallow => shallow_water_study(&u0, &cfg.limit_deltas, cfg.t_final, &integ)?,
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    create_dir(&cfg.out_dir)?;
    write(&cfg.out_dir.join("limit_report.json"), report.to_json())?;
    for (d, e) in report.deltas.iter().zip(&report.errors) {
        println!("delta = {d:<10} error = {e:.6e}");
    }
    if let Some(m) = report.monotone {
        println!("monotone decrease: {m}");
    }
    Ok(())
}

#[derive(Serialize)]
struct ProbeReport {
    t: f64,
    window_mass: Option<f64>,
    unique_continuation: Vec<UcReport>,
    vanishing_order: Option<VanishingOrderReport>,
}

fn probe(cfg_path: &Path) -> Outcome {
    let cfg = load_config(cfg_path)?;
    let p = &cfg.probe;
    if p.interval.is_none() && p.radii.is_empty() {
        return Err(Failure::Invalid(format!(
            "{}: nothing to probe (set probe.interval and/or probe.x0 with probe.radii)",
            cfg_path.display()
        )));
    }
    let mut f = cfg.initial_field()?;
    if p.time > 0.0 {
        let traj = run(&f, &cfg.equation(), &IntegratorConfig::new(cfg.dt, p.time))?;
        if let Some(t) = traj.blowup {
            return Err(Failure::Blowup(format!("solution blew up at t = {t}")));
        }
        f = traj.last().u.clone();
    }
    let mut report = ProbeReport {
        t: p.time,
        window_mass: None,
        unique_continuation: Vec::new(),
        vanishing_order: None,
    };
    if let Some(iv) = p.interval {
        report.window_mass = Some(windowed_mass(&f, iv[0], iv[1])?);
        for partner in p.partners() {
            let r = uc_probe(&f, iv, partner)?;
            println!("{partner:?} on [{}, {}]: {:?}", iv[0], iv[1], r.verdict);
            report.unique_continuation.push(r);
        }
    }
    if let Some(x0) = p.x0 {
        let v = vanishing_order_fit(&f, x0, &p.radii)?;
        println!("vanishing order at x0 = {x0}: slope {}", v.slope);
        report.vanishing_order = Some(v);
    }
    create_dir(&cfg.out_dir)?;
    let json = serde_json::to_string_pretty(&report).expect("report is serializable");
    write(&cfg.out_dir.join("probe_report.json"), json)
}

/// Accepts either a run directory (with `run.cfg` and `snapshots/`) or its
/// `snapshots/` subdirectory.
fn residual(dir: &Path) -> Outcome {
    let (root, snaps) = if dir.join("run.cfg").is_file() {
        (dir.to_path_buf(), dir.join("snapshots"))
    } else {
        let parent = dir.parent().unwrap_or(Path::new(".")).to_path_buf();
        (parent, dir.to_path_buf())
    };
    let cfg = load_config(&root.join("run.cfg"))?;
    let mut files: Vec<PathBuf> = fs::read_dir(&snaps)
        .map_err(|e| io_err(&snaps, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bofs"))
        .collect();
    files.sort();
    let states = files
        .iter()
        .map(|p| snapshot::read(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display()))))
        .collect::<std::result::Result<Vec<SimState>, _>>()?;
    let r = residual_of(&states, &cfg.equation())?;
    println!("residual = {r:.6e} over {} snapshots", states.len());
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let outcome = match &cli.command {
        Command::Simulate { config } => simulate(config),
        Command::Limits { regime, config } => limits(*regime, config),
        Command::Probe { config } => probe(config),
        Command::Residual { dir } => residual(dir),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            EXIT_INVALID
        }
        Err(Failure::Blowup(m)) => {
            eprintln!("error: {m}");
            EXIT_BLOWUP
        }
    }
}
