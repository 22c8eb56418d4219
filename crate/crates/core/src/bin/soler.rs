use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex;
use soler::charges::{charge_table, write_charge_csv};
use soler::io::write_atomic;
use soler::plot::write_plots;
use soler::sweep::{omega_grid, sweep_on};
use soler::{
    analyze_channel, detect_events, solve_profile, stability_report, BifurcationEvent, Channel, ChannelSpec, EtaAlignment, Error, ProfileCache,
    RadialQuadrature, RunConfig, Su11, SweepResult,
};

#[derive(Parser)]
#[command(name = "soler", version, about = "Solitary waves of the cubic Soler model and their spectral stability")]
struct Cli {
    /// TOML run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Upper bound on concurrent eigen-solves.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Default)]
struct Discretization {
    /// Collocation nodes of the coarse grid.
    #[arg(long)]
    nodes: Option<usize>,
    /// Nodes of the finer partner grid.
    #[arg(long)]
    fine_nodes: Option<usize>,
    /// Scale `L` of the map `r = L (1 + x) / (1 - x)`.
    #[arg(long)]
    map_scale: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the ground-state profile and write it as CSV.
    Profile {
        #[arg(long)]
        omega: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectrum of one channel as JSON.
    Spectrum {
        #[arg(long)]
        omega: f64,
        #[arg(long)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        m: i32,
        /// `|eta|^2` of the bi-frequency wave.
        #[arg(long, default_value_t = 0.0)]
        eta2: f64,
        /// Take `eta` orthogonal to `xi` instead of parallel.
        #[arg(long)]
        orthogonal: bool,
        #[command(flatten)]
        disc: Discretization,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep channels over a frequency grid; writes sweep.csv and events.json.
    Sweep {
        #[arg(long)]
        omega_min: Option<f64>,
        #[arg(long)]
        omega_max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        ell_max: Option<u32>,
        /// Keep only these `|m|`.
        #[arg(long, num_args = 1..)]
        m: Option<Vec<u32>>,
        #[arg(long, num_args = 1..)]
        eta2: Option<Vec<f64>>,
        #[command(flatten)]
        disc: Discretization,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Locate and refine bifurcations in an existing sweep.
    Events {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        disc: Discretization,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render SVG figures of a sweep.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
    /// Stability intervals per channel and their intersection.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        /// Events JSON used for interval boundaries.
        #[arg(long)]
        events: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Charges and energy of `(a + bC)` applied to one-frequency waves.
    Charges {
        #[arg(long)]
        omega_min: f64,
        #[arg(long)]
        omega_max: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Rapidity `s` in `a = cosh(s) e^{i alpha}`, `b = sinh(s) e^{i beta}`.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        rapidity: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Partial(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Lib(e.into())
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) | Error::InvalidChannel { .. } | Error::Normalization(_) | Error::Parse(_) => 2,
        Error::NoConvergence { .. } | Error::BlowUp { .. } => 3,
        _ => 1,
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn base_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(j) = cli.jobs {
        c.jobs = j;
    }
    Ok(c)
}

fn apply_disc(c: &mut RunConfig, d: &Discretization) {
    if let Some(n) = d.nodes {
        c.n = n;
    }
    if d.fine_nodes.is_some() {
        c.fine_n = d.fine_nodes;
    }
    if let Some(l) = d.map_scale {
        c.map_scale = l;
    }
    if let Some(m) = d.mass {
        c.mass = m;
    }
}

/// Reads a sweep table; an empty file or a table without rows is reported
/// as an empty sweep.
fn read_sweep(path: &Path, cfg: &RunConfig) -> Result<SweepResult, Failure> {
    let text = std::fs::read_to_string(path)?;
    if text.trim().is_empty() {
        return Err(Failure::Partial(format!("{} is empty", path.display())));
    }
    let result = SweepResult::read_csv(text.as_bytes(), &cfg.analysis())?;
    if result.is_empty() {
        return Err(Failure::Partial(format!("{} holds no spectra", path.display())));
    }
    Ok(result)
}

fn finish_sweep(result: &SweepResult) -> Result<(), Failure> {
    if result.is_empty() {
        return Err(Failure::Partial("sweep produced no spectra".into()));
    }
    if !result.is_complete() {
        let msg: Vec<String> = result.failures.iter().map(|(w, e)| format!("omega={w}: {e}")).collect();
        return Err(Failure::Partial(format!("sweep incomplete; {}", msg.join("; "))));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut cfg = base_config(&cli)?;
    let cache = ProfileCache::from_env();
    match cli.command {
        Command::Profile { omega, mass, out } => {
            let p = solve_profile(omega, mass, &cfg.shooting)?;
            emit(out.as_deref(), &p.to_csv_string())?;
        }
        Command::Spectrum { omega, ell, m, eta2, orthogonal, disc, out } => {
            apply_disc(&mut cfg, &disc);
            cfg.validate()?;
            let alignment = if orthogonal { EtaAlignment::Orthogonal } else { EtaAlignment::Parallel };
            let spec = ChannelSpec::bifrequency(ell, m, eta2, alignment)?;
            let channel = if ell == 0 { Channel::Ell0 } else { Channel::Mode(spec) };
            let p = cache.get_or_solve(omega, cfg.mass, &cfg.shooting)?;
            let rec = analyze_channel(&p, channel, &cfg.analysis())?;
            emit(out.as_deref(), &(serde_json::to_string_pretty(&rec.to_json()).map_err(Error::from)? + "\n"))?;
        }
        Command::Sweep { omega_min, omega_max, steps, ell_max, m, eta2, disc, out } => {
            apply_disc(&mut cfg, &disc);
            if let Some(v) = omega_min {
                cfg.omega_min = v;
            }
            if let Some(v) = omega_max {
                cfg.omega_max = v;
            }
            if let Some(v) = steps {
                cfg.steps = v;
            }
            if let Some(v) = ell_max {
                cfg.ell_max = v;
            }
            if let Some(v) = m {
                cfg.m = v;
            }
            if let Some(v) = eta2 {
                cfg.eta_norm_sq = v;
            }
            if let Some(v) = out {
                cfg.out_dir = v;
            }
            cfg.validate()?;
            let opts = cfg.sweep_options();
            let grid = omega_grid(cfg.omega_min, cfg.omega_max, cfg.steps);
            let mut result = sweep_on(&grid, &cfg.channels()?, &opts, &cache)?;
            detect_events(&mut result, &opts, &cache);
            std::fs::create_dir_all(&cfg.out_dir)?;
            write_atomic(&cfg.out_dir.join("sweep.csv"), result.to_csv_string().as_bytes())?;
            let events = serde_json::to_string_pretty(&result.events_json()).map_err(Error::from)?;
            write_atomic(&cfg.out_dir.join("events.json"), (events + "\n").as_bytes())?;
            write_atomic(&cfg.out_dir.join("config.toml"), cfg.to_toml().as_bytes())?;
            finish_sweep(&result)?;
        }
        Command::Events { input, disc, out } => {
            apply_disc(&mut cfg, &disc);
            cfg.validate()?;
            let mut result = read_sweep(&input, &cfg)?;
            detect_events(&mut result, &cfg.sweep_options(), &cache);
            let text = serde_json::to_string_pretty(&result.events_json()).map_err(Error::from)? + "\n";
            emit(out.as_deref(), &text)?;
        }
        Command::Plot { input, out, mass } => {
            let result = read_sweep(&input, &cfg)?;
            for p in write_plots(&result, mass, &out)? {
                eprintln!("wrote {}", p.display());
            }
            finish_sweep(&result)?;
        }
        Command::Report { input, events, out } => {
            let mut result = read_sweep(&input, &cfg)?;
            if let Some(path) = events {
                let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?).map_err(Error::from)?;
                let list = v.as_array().ok_or_else(|| Error::Parse("events file must hold a JSON array".into()))?;
                result.events = list.iter().map(BifurcationEvent::from_json).collect::<Result<_, _>>()?;
            }
            let text = serde_json::to_string_pretty(&stability_report(&result).to_json()).map_err(Error::from)? + "\n";
            emit(out.as_deref(), &text)?;
        }
        Command::Charges { omega_min, omega_max, steps, mass, rapidity, alpha, beta, out } => {
            if steps < 2 || !(omega_min < omega_max) {
                return Err(Error::InvalidArgument("need omega_min < omega_max and steps >= 2".into()).into());
            }
            let profiles = omega_grid(omega_min, omega_max, steps)
                .into_iter()
                .map(|w| cache.get_or_solve(w, mass, &cfg.shooting))
                .collect::<Result<Vec<Arc<_>>, _>>()?;
            let g = Su11::new(Complex::from_polar(rapidity.cosh(), alpha), Complex::from_polar(rapidity.sinh(), beta))?;
            let rows = charge_table(&profiles, &g, &RadialQuadrature::default());
            let mut buf = Vec::new();
            write_charge_csv(&rows, &mut buf)?;
            emit(out.as_deref(), &String::from_utf8_lossy(&buf))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Partial(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
    }
}
