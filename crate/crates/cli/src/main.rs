//! `oamrot`: reproducible data for mode intensities, OAM spectra, expansion
//! coefficients, resolution tables and Monte Carlo SNR sweeps.
//!
//! All lengths are in units of the beam waist `w0`.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Experiment, GridOverride, SweepSettings};
use error::CliError;
use output::{emit, Format};

#[derive(Parser, Debug)]
#[command(name = "oamrot", version, about)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Recorded in every header; drives the Monte Carlo streams.
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Grid samples per axis (intensity).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Grid half-width in units of w0 (intensity).
    #[arg(long, global = true)]
    half_extent: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Radial (or 2-D) intensity of u_{p,ell} with aperture metadata.
    Intensity {
        #[arg(long, allow_hyphen_values = true)]
        ell: i32,
        #[arg(long, default_value_t = 0)]
        p: u32,
        /// Aperture radius R/w0.
        #[arg(long, default_value_t = 8.0)]
        aperture: f64,
        /// Emit the full x-y intensity image instead of the radial profile.
        #[arg(long)]
        two_d: bool,
    },
    /// OAM spectrum P(ell) of a displaced Gaussian, with the same-variance Gaussian.
    Spectrum {
        /// Displacement r0/w0.
        #[arg(long)]
        r0: f64,
        /// Largest |ell|; by default the smallest keeping the tail under 1e-10.
        #[arg(long)]
        ell_max: Option<u32>,
    },
    /// Expansion coefficients c_{p,ell} of a displaced Gaussian.
    Coefficients {
        #[arg(long)]
        r0: f64,
        #[arg(long)]
        p_max: Option<u32>,
        #[arg(long)]
        ell_max: Option<u32>,
        /// Largest acceptable missing probability mass.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Minimum detectable rotation for every scheme and photon statistics.
    Resolution {
        /// Aperture radius R/w0.
        #[arg(long, alias = "R", default_value_t = 8.0)]
        aperture: f64,
        /// Photon numbers, comma separated.
        #[arg(long = "photons", alias = "N", value_delimiter = ',', default_values_t = [1.0, 10.0, 100.0, 1e3, 1e4])]
        photons: Vec<f64>,
    },
    /// SNR-versus-signal sweep and its SNR = 1 crossing.
    Montecarlo {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, default_value_t = 1e4)]
        mean_n: f64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 41)]
        points: usize,
        /// Upper end of the sweep; twice the predicted threshold by default.
        #[arg(long)]
        max_signal: Option<f64>,
        /// Interferometer OAM index.
        #[arg(long, default_value_t = 10)]
        ell: u32,
        /// Beam displacement r0/w0 for the split detector.
        #[arg(long, default_value_t = 5.0)]
        r0: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Split,
    Interferometer,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let Common { out, format, seed, samples, half_extent } = cli.common;
    let grid = GridOverride { samples, half_extent };
    let text = match cli.command {
        Command::Intensity { ell, p, aperture, two_d } => {
            commands::intensity(ell, p, aperture, two_d, grid, seed)?.render(format)
        }
        Command::Spectrum { r0, ell_max } => commands::spectrum(r0, ell_max, seed)?.render(format),
        Command::Coefficients { r0, p_max, ell_max, tolerance } => {
            commands::coefficients(r0, p_max, ell_max, tolerance, seed)?.render(format)
        }
        Command::Resolution { aperture, photons } => commands::resolution(aperture, &photons, seed)?.render(format),
        Command::Montecarlo { which, mean_n, trials, points, max_signal, ell, r0 } => {
            let experiment = match which {
                Which::Split => Experiment::Split { r0 },
                Which::Interferometer => Experiment::Interferometer { ell },
            };
            let settings = SweepSettings { mean_n, trials, points, max_signal };
            commands::montecarlo(experiment, settings, seed)?.render(format)
        }
    };
    emit(&text, out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
