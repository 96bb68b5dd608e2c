//! `zeeman`: spectra, kernels, partition and zeta functions, sliced path
//! integrals and the verification harness from the command line.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};
use config::{Format, RunConfig};
use error::{exit, CliError};
use std::path::PathBuf;
use std::process::ExitCode;
use zeeman::Flow;

#[derive(Parser, Debug)]
#[command(
    name = "zeeman",
    version,
    about = "Spectral computations for Zeeman operators"
)]
struct Cli {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (written atomically); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Gauss-Hermite degree for quadratures.
    #[arg(long, global = true)]
    quad_degree: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues and multiplicities by zone.
    Spectrum {
        #[arg(long)]
        max_p: Option<u64>,
        /// Zones to list (comma separated).
        #[arg(long, value_delimiter = ',')]
        zones: Option<Vec<u64>>,
    },
    /// Zonal kernel values on a point grid.
    Kernel {
        #[arg(long)]
        flow: Option<Flow>,
        #[arg(long)]
        zone: Option<usize>,
        /// Times (comma separated).
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
    },
    /// Closed-form partition function against the diagonal trace.
    Partition {
        #[arg(long)]
        flow: Option<Flow>,
        #[arg(long)]
        zone: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
    },
    /// Zonal zeta function and the Riemann relation.
    Zeta {
        #[arg(long)]
        zone: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<f64>>,
    },
    /// Sliced path integrals against the closed zonal kernel.
    Pathint {
        #[arg(long)]
        flow: Option<Flow>,
        #[arg(long)]
        zone: Option<usize>,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        slices: Option<Vec<usize>>,
    },
    /// Runs a verification suite and writes the conformance report.
    Verify {
        /// laguerre, spectrum, projections, global_kernels, zonal_wk,
        /// zonal_df, thermo, pathint or all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(d) = cli.quad_degree {
        cfg.quad_degree = d;
        cfg.verify.quad_degree = d;
        cfg.verify.path_degree = d;
        cfg.pathint.degree = d;
    }
    let out_path = cli.out.clone().or_else(|| cfg.output.path.clone());
    let format = cli.format.or(cfg.output.format);
    let output = match cli.command {
        Command::Spectrum { max_p, zones } => {
            if let Some(v) = max_p {
                cfg.spectrum.max_p = v;
            }
            if let Some(v) = zones {
                cfg.spectrum.zones = v;
            }
            commands::spectrum(&cfg)?
        }
        Command::Kernel { flow, zone, t } => {
            let kc = &mut cfg.kernel;
            kc.flow = flow.unwrap_or(kc.flow);
            kc.zone = zone.unwrap_or(kc.zone);
            if let Some(v) = t {
                kc.times = v;
            }
            commands::kernel(&cfg)?
        }
        Command::Partition { flow, zone, t } => {
            let pc = &mut cfg.partition;
            pc.flow = flow.unwrap_or(pc.flow);
            pc.zone = zone.unwrap_or(pc.zone);
            if let Some(v) = t {
                pc.times = v;
            }
            commands::partition(&cfg)?
        }
        Command::Zeta { zone, s } => {
            cfg.zeta.zone = zone.unwrap_or(cfg.zeta.zone);
            if let Some(v) = s {
                cfg.zeta.s = v;
            }
            commands::zeta(&cfg)?
        }
        Command::Pathint {
            flow,
            zone,
            horizon,
            slices,
        } => {
            let pc = &mut cfg.pathint;
            pc.flow = flow.unwrap_or(pc.flow);
            pc.zone = zone.unwrap_or(pc.zone);
            pc.horizon = horizon.unwrap_or(pc.horizon);
            if let Some(v) = slices {
                pc.slices = v;
            }
            let degree = cfg.pathint.degree;
            commands::pathint(&cfg, degree)?
        }
        Command::Verify { suite } => commands::verify(&cfg.verify, &suite)?,
    };
    let bytes = output.render(format)?;
    output::emit(&bytes, out_path.as_deref())?;
    Ok(output.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("zeeman: {e}");
            ExitCode::from(exit::USAGE)
        }
    }
}
