use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use super::{run, Settings};
use crate::error::{Error, Result};

/// Squeezed-quadrature noise spectra of ultrashort pulses in a Kerr medium
/// with a finite response time.
#[derive(Debug, Parser)]
#[command(name = "kerr-squeeze", version, allow_negative_numbers = true)]
pub struct Cli {
    /// spm-spectrum | xpm-spectrum | fig1 | optimize-phase | verify-operators
    #[arg(value_name = "MODE")]
    pub mode_pos: Option<String>,
    #[arg(long)]
    pub mode: Option<String>,
    /// `key = value` file; flags given on the command line take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long = "tau-r")]
    pub tau_r: Option<String>,
    /// gaussian | sech | rectangular | cw
    #[arg(long)]
    pub envelope: Option<String>,
    #[arg(long = "tau-p")]
    pub tau_p: Option<String>,
    /// Evaluation time.
    #[arg(long)]
    pub t: Option<String>,
    /// Peak nonlinear phase 2γn₀ of the probe.
    #[arg(long)]
    pub psi0: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[arg(long = "gamma-x")]
    pub gamma_x: Option<String>,
    /// Pump/probe photon ratio; comma-separated for several curves.
    #[arg(long)]
    pub ratio: Option<String>,
    #[arg(long = "omega-min")]
    pub omega_min: Option<String>,
    #[arg(long = "omega-max")]
    pub omega_max: Option<String>,
    #[arg(long = "omega-count")]
    pub omega_count: Option<String>,
    /// per-omega | fixed0
    #[arg(long = "phase-convention")]
    pub phase_convention: Option<String>,
    #[arg(long)]
    pub bins: Option<String>,
    #[arg(long)]
    pub cutoff: Option<String>,
    #[arg(long = "bin-width")]
    pub bin_width: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long = "alpha-phase")]
    pub alpha_phase: Option<String>,
    /// Output file; stdout when omitted or `-`.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    /// csv | json
    #[arg(long)]
    pub format: Option<String>,
    /// Print the resolved configuration and exit.
    #[arg(long = "dump-config")]
    pub dump_config: bool,
}

impl Cli {
    fn flag_settings(&self) -> Result<Settings> {
        if let (Some(a), Some(b)) = (&self.mode_pos, &self.mode) {
            if a != b {
                return Err(Error::Config(format!(
                    "mode given twice: `{a}` and `--mode {b}`"
                )));
            }
        }
        let pairs = [
            ("mode", self.mode.as_ref().or(self.mode_pos.as_ref())),
            ("format", self.format.as_ref()),
            ("out", self.out.as_ref()),
            ("tau-r", self.tau_r.as_ref()),
            ("envelope", self.envelope.as_ref()),
            ("tau-p", self.tau_p.as_ref()),
            ("t", self.t.as_ref()),
            ("psi0", self.psi0.as_ref()),
            ("gamma", self.gamma.as_ref()),
            ("gamma-x", self.gamma_x.as_ref()),
            ("ratio", self.ratio.as_ref()),
            ("omega-min", self.omega_min.as_ref()),
            ("omega-max", self.omega_max.as_ref()),
            ("omega-count", self.omega_count.as_ref()),
            ("phase-convention", self.phase_convention.as_ref()),
            ("bins", self.bins.as_ref()),
            ("cutoff", self.cutoff.as_ref()),
            ("bin-width", self.bin_width.as_ref()),
            ("alpha", self.alpha.as_ref()),
            ("alpha-phase", self.alpha_phase.as_ref()),
        ];
        let mut s = Settings::default();
        for (k, v) in pairs {
            if let Some(v) = v {
                s.set(k, v)?;
            }
        }
        Ok(s)
    }

    /// File settings overlaid with flags.
    pub fn settings(&self) -> Result<Settings> {
        let mut s = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
                Settings::parse(&text)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
            }
            None => Settings::default(),
        };
        s.overlay(&self.flag_settings()?);
        Ok(s)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_)
        | Error::Validation(_)
        | Error::Config(_)
        | Error::DimensionOverflow { .. } => 2,
        Error::NumericFailure { .. } | Error::DegenerateOptimum => 3,
        Error::Io(_) => 1,
    }
}

fn execute(cli: &Cli) -> Result<bool> {
    let scenario = cli.settings()?.resolve()?;
    if cli.dump_config {
        print!("{}", scenario.to_config_string());
        return Ok(true);
    }
    let outcome = run(&scenario)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &scenario.out {
        Some(path) => {
            std::fs::write(path, &outcome.artifact)?;
            println!("{}", outcome.summary);
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.artifact.as_bytes())?;
            stdout.flush()?;
            eprintln!("{}", outcome.summary);
        }
    }
    Ok(outcome.success)
}

/// Entry point for the binary: 0 on success, 2 for usage or configuration
/// errors, 3 for numerical or verification failures.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks missed their contract");
            ExitCode::from(3)
        }
        Err(e) => {
            match &e {
                Error::Validation(list) => {
                    eprintln!("error: invalid configuration:");
                    for p in list {
                        eprintln!("  - {p}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
