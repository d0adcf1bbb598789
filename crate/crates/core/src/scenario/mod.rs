//! Run configurations: a flat `key = value` schema shared by config files and
//! command-line flags, the exporters, and the command-line front end.

mod cli;
mod config;
mod export;

pub use cli::{main_with_args, Cli};
pub use config::{Settings, KEYS};
pub use export::{format_sig9, render, Artifact};

use std::f64::consts::FRAC_PI_8;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::fock::{DiscreteFockModel, FockModelParams, MAX_DIMENSION};
use crate::kernel::ResponseKernel;
use crate::oracle::minimize_phase;
use crate::pulse::{Envelope, PulseSpec, ValidityWarning};
use crate::spm::{PhaseConvention, SpectrumCurve};
use crate::xpm::{self, TwoPulseSpec, FIG1_PSI0, FIG1_RATIOS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    SpmSpectrum,
    XpmSpectrum,
    Fig1,
    OptimizePhase,
    VerifyOperators,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "spm-spectrum" => Mode::SpmSpectrum,
            "xpm-spectrum" => Mode::XpmSpectrum,
            "fig1" => Mode::Fig1,
            "optimize-phase" => Mode::OptimizePhase,
            "verify-operators" => Mode::VerifyOperators,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::SpmSpectrum => "spm-spectrum",
            Mode::XpmSpectrum => "xpm-spectrum",
            Mode::Fig1 => "fig1",
            Mode::OptimizePhase => "optimize-phase",
            Mode::VerifyOperators => "verify-operators",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Gaussian,
    Sech,
    Rectangular,
    Cw,
}

impl EnvelopeKind {
    pub fn name(&self) -> &'static str {
        match self {
            EnvelopeKind::Gaussian => "gaussian",
            EnvelopeKind::Sech => "sech",
            EnvelopeKind::Rectangular => "rectangular",
            EnvelopeKind::Cw => "cw",
        }
    }
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub mode: Mode,
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
    pub tau_r: f64,
    pub envelope: EnvelopeKind,
    pub tau_p: f64,
    pub t: f64,
    pub psi0: f64,
    pub gamma: f64,
    pub gamma_x: f64,
    pub ratios: Vec<f64>,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_count: usize,
    /// `PerOmega` or `Fixed0`.
    pub phase_convention: PhaseConvention,
    pub bins: usize,
    pub cutoff: usize,
    pub bin_width: f64,
    pub alpha: f64,
    pub alpha_phase: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            mode: Mode::SpmSpectrum,
            format: OutputFormat::Csv,
            out: None,
            tau_r: 1.0,
            envelope: EnvelopeKind::Gaussian,
            tau_p: 100.0,
            t: 0.0,
            psi0: FIG1_PSI0,
            gamma: 1e-3,
            gamma_x: 5e-4,
            ratios: vec![0.0],
            omega_min: 0.0,
            omega_max: 4.0,
            omega_count: 201,
            phase_convention: PhaseConvention::PerOmega,
            bins: 3,
            cutoff: 8,
            bin_width: 1.0,
            alpha: crate::fock::DEFAULT_ALPHA,
            alpha_phase: FRAC_PI_8,
        }
    }
}

/// Output of [`run`]: the rendered artifact plus a one-line summary.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub artifact: String,
    pub summary: String,
    pub warnings: Vec<String>,
    /// False when a verification check missed its contract.
    pub success: bool,
}

impl Scenario {
    pub fn omega_grid(&self) -> Vec<f64> {
        let n = self.omega_count;
        let step = (self.omega_max - self.omega_min) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.omega_max
                } else {
                    self.omega_min + i as f64 * step
                }
            })
            .collect()
    }

    pub fn kernel(&self) -> Result<ResponseKernel> {
        ResponseKernel::new(self.tau_r)
    }

    pub fn envelope(&self) -> Result<Envelope> {
        match self.envelope {
            EnvelopeKind::Gaussian => Envelope::gaussian(self.tau_p),
            EnvelopeKind::Sech => Envelope::sech(self.tau_p),
            EnvelopeKind::Rectangular => Envelope::rectangular(self.tau_p),
            EnvelopeKind::Cw => Ok(Envelope::Continuous),
        }
    }

    pub fn probe(&self) -> Result<PulseSpec> {
        PulseSpec::from_peak_phase(self.envelope()?, self.psi0, self.gamma)
    }

    pub fn pair(&self, ratio: f64) -> Result<TwoPulseSpec> {
        TwoPulseSpec::with_ratio(self.envelope()?, self.psi0, self.gamma, self.gamma_x, ratio)
    }

    /// Every violated invariant, or `Ok`.
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let finite = [
            ("tau-r", self.tau_r),
            ("tau-p", self.tau_p),
            ("t", self.t),
            ("psi0", self.psi0),
            ("gamma", self.gamma),
            ("gamma-x", self.gamma_x),
            ("omega-min", self.omega_min),
            ("omega-max", self.omega_max),
            ("bin-width", self.bin_width),
            ("alpha", self.alpha),
            ("alpha-phase", self.alpha_phase),
        ];
        for (k, v) in finite {
            if !v.is_finite() {
                problems.push(format!("{k} must be finite (got {v})"));
            }
        }
        if !(self.tau_r > 0.0) {
            problems.push(format!("tau-r must be > 0 (got {})", self.tau_r));
        }
        if !(self.tau_p > 0.0) {
            problems.push(format!("tau-p must be > 0 (got {})", self.tau_p));
        }
        if self.omega_count < 2 {
            problems.push(format!(
                "omega-count must be >= 2 (got {})",
                self.omega_count
            ));
        }
        if !(self.omega_max > self.omega_min) {
            problems.push(format!(
                "omega grid must be strictly increasing (omega-min {} >= omega-max {})",
                self.omega_min, self.omega_max
            ));
        }
        if self.psi0 != 0.0 && self.gamma == 0.0 && self.mode != Mode::VerifyOperators {
            problems.push("a non-zero psi0 needs a non-zero gamma".into());
        }
        if self.ratios.is_empty() {
            problems.push("ratio list is empty".into());
        }
        if self.ratios.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            problems.push("photon ratios must be finite and >= 0".into());
        }
        if self.mode == Mode::VerifyOperators {
            if self.bins == 0 {
                problems.push("bins must be >= 1".into());
            }
            if self.cutoff < 2 {
                problems.push(format!("cutoff must be >= 2 (got {})", self.cutoff));
            }
            let dim = (self.cutoff as u128 + 1).checked_pow(self.bins as u32);
            if dim.is_none_or(|d| d > MAX_DIMENSION as u128) {
                problems.push(format!(
                    "(cutoff+1)^bins must not exceed {MAX_DIMENSION}; lower bins or cutoff"
                ));
            }
            if !(self.bin_width > 0.0) {
                problems.push(format!("bin-width must be > 0 (got {})", self.bin_width));
            }
            if !(self.alpha >= 0.0) {
                problems.push(format!("alpha must be >= 0 (got {})", self.alpha));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }

    fn pulse_warnings(&self) -> Result<Vec<String>> {
        let kernel = self.kernel()?;
        let mut w: Vec<ValidityWarning> = self.probe()?.warnings(&kernel);
        if self.gamma_x.abs() > crate::pulse::GAMMA_WARN && self.mode != Mode::SpmSpectrum {
            w.push(ValidityWarning::StrongCoupling {
                gamma: self.gamma_x,
            });
        }
        Ok(w.iter().map(ToString::to_string).collect())
    }

    /// Spectrum curves for the spectrum-producing modes.
    pub fn curves(&self) -> Result<Vec<SpectrumCurve>> {
        let omegas = self.omega_grid();
        match self.mode {
            Mode::SpmSpectrum => Ok(vec![crate::spm::curve(
                &self.probe()?,
                self.t,
                &omegas,
                self.phase_convention,
            )?]),
            Mode::XpmSpectrum | Mode::Fig1 => self
                .ratios
                .iter()
                .map(|&r| {
                    let mut c = xpm::curve(&self.pair(r)?, self.t, &omegas, self.phase_convention)?;
                    c.ratio = r;
                    Ok(c)
                })
                .collect(),
            _ => Err(Error::InvalidInput(format!(
                "mode {} does not produce spectra",
                self.mode.name()
            ))),
        }
    }

    /// Closed-form and brute-force optimal phases for every (ratio, Ω).
    pub fn phase_table(&self) -> Result<Vec<PhaseRow>> {
        let omegas = self.omega_grid();
        let mut rows = Vec::with_capacity(omegas.len() * self.ratios.len());
        for &r in &self.ratios {
            let pair = self.pair(r)?;
            for &om in &omegas {
                let closed = xpm::optimal_phase(om, self.t, &pair);
                let brute = minimize_phase(|phi| xpm::spectrum(om, self.t, phi, &pair));
                rows.push(PhaseRow {
                    omega: om,
                    phi_opt: crate::oracle::wrap_phase(closed.phase),
                    s_min: xpm::min_spectrum(om, self.t, &pair),
                    phi_oracle: brute.phase,
                    s_oracle: brute.value,
                    ratio: r,
                });
            }
        }
        Ok(rows)
    }

    pub fn fock_model(&self) -> Result<DiscreteFockModel> {
        let params = FockModelParams::new(self.bins, self.cutoff)
            .gamma(self.gamma)
            .bin_width(self.bin_width)
            .kernel(self.kernel()?)
            .uniform_alpha(num_complex::Complex64::from_polar(
                self.alpha,
                self.alpha_phase,
            ));
        DiscreteFockModel::build(params)
    }
}

/// One row of the `optimize-phase` table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRow {
    pub omega: f64,
    pub phi_opt: f64,
    pub s_min: f64,
    pub phi_oracle: f64,
    pub s_oracle: f64,
    pub ratio: f64,
}

/// Truncated probability above which the normal-ordering comparison is flagged.
const TRUNCATION_WARN: f64 = 1e-6;

/// Evaluates the scenario and renders its artifact. Nothing is written here.
pub fn run(scenario: &Scenario) -> Result<RunOutcome> {
    scenario.validate()?;
    match scenario.mode {
        Mode::SpmSpectrum | Mode::XpmSpectrum | Mode::Fig1 => {
            let curves = scenario.curves()?;
            let (omega, s, ratio) = curves
                .iter()
                .filter_map(|c| c.minimum().map(|(o, s)| (o, s, c.ratio)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty grid");
            Ok(RunOutcome {
                artifact: render(&Artifact::Curves(&curves), scenario.format),
                summary: format!(
                    "{}: min S = {} (4S = {}) at omega = {} [ratio {}], {} curve(s)",
                    scenario.mode.name(),
                    format_sig9(s),
                    format_sig9(4.0 * s),
                    format_sig9(omega),
                    format_sig9(ratio),
                    curves.len()
                ),
                warnings: scenario.pulse_warnings()?,
                success: true,
            })
        }
        Mode::OptimizePhase => {
            let rows = scenario.phase_table()?;
            let best = rows
                .iter()
                .min_by(|a, b| a.s_min.total_cmp(&b.s_min))
                .expect("non-empty grid");
            let worst_gap = rows
                .iter()
                .map(|r| (r.s_oracle - r.s_min).abs())
                .fold(0.0, f64::max);
            Ok(RunOutcome {
                artifact: render(&Artifact::Phases(&rows), scenario.format),
                summary: format!(
                    "optimize-phase: min S = {} at omega = {} [ratio {}], max |oracle - closed form| = {}",
                    format_sig9(best.s_min),
                    format_sig9(best.omega),
                    format_sig9(best.ratio),
                    format_sig9(worst_gap)
                ),
                warnings: scenario.pulse_warnings()?,
                success: true,
            })
        }
        Mode::VerifyOperators => {
            let model = scenario.fock_model()?;
            let report = model.verification_report(scenario.alpha_phase);
            let (_, tail) = model.coherent_state(&model.params().alphas);
            let mut warnings = Vec::new();
            if tail > TRUNCATION_WARN {
                warnings.push(format!(
                    "cutoff {} discards {} of the coherent-state probability; normal-ordering agreement is limited to about that level",
                    scenario.cutoff,
                    format_sig9(tail)
                ));
            }
            if scenario.gamma.abs() > crate::pulse::GAMMA_WARN {
                warnings.push(
                    ValidityWarning::StrongCoupling {
                        gamma: scenario.gamma,
                    }
                    .to_string(),
                );
            }
            let passed = report.iter().filter(|r| r.pass).count();
            Ok(RunOutcome {
                artifact: render(&Artifact::Report(&report), scenario.format),
                summary: format!(
                    "verify-operators: {passed}/{} checks passed (dimension {})",
                    report.len(),
                    model.dimension()
                ),
                warnings,
                success: passed == report.len(),
            })
        }
    }
}

pub(crate) fn fig1_defaults() -> Vec<f64> {
    FIG1_RATIOS.to_vec()
}
