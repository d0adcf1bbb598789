//! Classical mean quantities of a single coherent pulse: envelope, photon
//! density, carrier phase and the self-phase-modulation phase `ψ(t) = 2γ·n̄₀(t)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::ResponseKernel;
use crate::oracle::integrate_with_breaks;

/// Peak-normalised field envelope `ρ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Envelope {
    /// `exp(-t²/2τ_p²)`.
    Gaussian { tau_p: f64 },
    /// `sech(t/τ_p)`.
    Sech { tau_p: f64 },
    /// `1` on `|t| < τ_p/2`, zero elsewhere.
    Rectangular { tau_p: f64 },
    /// Linear interpolation of samples, zero outside the sampled range.
    Tabulated { times: Vec<f64>, values: Vec<f64> },
    /// Continuous wave, `ρ ≡ 1`.
    Continuous,
}

impl Envelope {
    pub fn gaussian(tau_p: f64) -> Result<Self> {
        check_duration(tau_p).map(|tau_p| Envelope::Gaussian { tau_p })
    }

    pub fn sech(tau_p: f64) -> Result<Self> {
        check_duration(tau_p).map(|tau_p| Envelope::Sech { tau_p })
    }

    pub fn rectangular(tau_p: f64) -> Result<Self> {
        check_duration(tau_p).map(|tau_p| Envelope::Rectangular { tau_p })
    }

    pub fn tabulated(times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_table(&times, &values, "envelope")?;
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidInput(
                "tabulated envelope values must lie in [0, 1]".into(),
            ));
        }
        Ok(Envelope::Tabulated { times, values })
    }

    /// `ρ(t)`.
    pub fn amplitude(&self, t: f64) -> f64 {
        match self {
            Envelope::Gaussian { tau_p } => (-t * t / (2.0 * tau_p * tau_p)).exp(),
            Envelope::Sech { tau_p } => 1.0 / (t / tau_p).cosh(),
            Envelope::Rectangular { tau_p } => {
                if t.abs() < 0.5 * tau_p {
                    1.0
                } else {
                    0.0
                }
            }
            Envelope::Tabulated { times, values } => interpolate(times, values, t).unwrap_or(0.0),
            Envelope::Continuous => 1.0,
        }
    }

    /// Characteristic duration, if the family has one.
    pub fn duration(&self) -> Option<f64> {
        match self {
            Envelope::Gaussian { tau_p }
            | Envelope::Sech { tau_p }
            | Envelope::Rectangular { tau_p } => Some(*tau_p),
            Envelope::Tabulated { times, .. } => Some(times[times.len() - 1] - times[0]),
            Envelope::Continuous => None,
        }
    }

    /// Points where `ρ` has a kink or jump.
    fn singular_points(&self) -> Vec<f64> {
        match self {
            Envelope::Rectangular { tau_p } => vec![-0.5 * tau_p, 0.5 * tau_p],
            Envelope::Tabulated { times, .. } => times.clone(),
            _ => Vec::new(),
        }
    }
}

/// Carrier (or local-oscillator) phase `φ(t)`.
#[derive(Debug, Clone, PartialEq)]
pub enum CarrierPhase {
    Constant(f64),
    /// Linear interpolation, held constant beyond the end samples.
    Tabulated {
        times: Vec<f64>,
        phases: Vec<f64>,
    },
}

impl CarrierPhase {
    pub fn tabulated(times: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        check_table(&times, &phases, "carrier phase")?;
        Ok(CarrierPhase::Tabulated { times, phases })
    }

    pub fn at(&self, t: f64) -> f64 {
        match self {
            CarrierPhase::Constant(phi) => *phi,
            CarrierPhase::Tabulated { times, phases } => {
                let clamped = t.clamp(times[0], times[times.len() - 1]);
                interpolate(times, phases, clamped).unwrap_or(phases[0])
            }
        }
    }
}

impl Default for CarrierPhase {
    fn default() -> Self {
        CarrierPhase::Constant(0.0)
    }
}

/// Conditions under which the closed-form spectra lose accuracy. Never fatal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ValidityWarning {
    /// Per-photon phase above the weak-coupling threshold.
    StrongCoupling { gamma: f64 },
    /// Pulse not much longer than the response time.
    ShortPulse { tau_p_over_tau_r: f64 },
}

impl fmt::Display for ValidityWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidityWarning::StrongCoupling { gamma } => write!(
                f,
                "per-photon nonlinear phase {gamma} exceeds {GAMMA_WARN}; the spectra assume it is small"
            ),
            ValidityWarning::ShortPulse { tau_p_over_tau_r } => write!(
                f,
                "tau_p/tau_r = {tau_p_over_tau_r} is below {MIN_DURATION_RATIO}; the quasi-static spectrum is unreliable"
            ),
        }
    }
}

pub const GAMMA_WARN: f64 = 0.01;
pub const MIN_DURATION_RATIO: f64 = 10.0;

/// One input pulse in a coherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    pub envelope: Envelope,
    /// Peak mean photon density `n̄₀` (photons per unit time).
    pub n0_peak: f64,
    /// Per-photon nonlinear phase `γ = βz/2`.
    pub gamma: f64,
    pub carrier_phase: CarrierPhase,
}

impl PulseSpec {
    pub fn new(envelope: Envelope, n0_peak: f64, gamma: f64) -> Result<Self> {
        if !(n0_peak.is_finite() && n0_peak >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "peak photon density must be finite and non-negative, got {n0_peak}"
            )));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidInput(format!(
                "gamma must be finite, got {gamma}"
            )));
        }
        Ok(Self {
            envelope,
            n0_peak,
            gamma,
            carrier_phase: CarrierPhase::default(),
        })
    }

    /// Pulse whose peak nonlinear phase is `psi0 = 2γ·n̄₀`.
    pub fn from_peak_phase(envelope: Envelope, psi0: f64, gamma: f64) -> Result<Self> {
        if !psi0.is_finite() {
            return Err(Error::InvalidInput(format!(
                "psi0 must be finite, got {psi0}"
            )));
        }
        let n0 = match (psi0 == 0.0, gamma == 0.0) {
            (true, _) => 0.0,
            (false, true) => {
                return Err(Error::InvalidInput(
                    "a non-zero psi0 needs a non-zero gamma".into(),
                ))
            }
            (false, false) => psi0 / (2.0 * gamma),
        };
        Self::new(envelope, n0, gamma)
    }

    pub fn with_carrier_phase(mut self, phase: CarrierPhase) -> Self {
        self.carrier_phase = phase;
        self
    }

    /// `n̄₀(t) = n̄₀·ρ(t)²`.
    pub fn mean_photon_density(&self, t: f64) -> f64 {
        let rho = self.envelope.amplitude(t);
        self.n0_peak * rho * rho
    }

    /// `ψ(t) = 2γ·n̄₀(t)`.
    pub fn nonlinear_phase(&self, t: f64) -> f64 {
        2.0 * self.gamma * self.mean_photon_density(t)
    }

    /// `ψ₀ = ψ(0)`.
    pub fn peak_phase(&self) -> f64 {
        2.0 * self.gamma * self.n0_peak
    }

    pub fn carrier_phase_at(&self, t: f64) -> f64 {
        self.carrier_phase.at(t)
    }

    /// Mean of the inertial intensity functional, `∫ h(s)·n̄₀(t-s) ds`.
    ///
    /// The kernel tail beyond `60·tau_r` is dropped.
    pub fn q_mean(&self, t: f64, kernel: &ResponseKernel) -> Result<f64> {
        if self.n0_peak == 0.0 {
            return Ok(0.0);
        }
        if let Envelope::Continuous = self.envelope {
            return Ok(2.0 * self.n0_peak);
        }
        let reach = 60.0 * kernel.tau_r();
        let mut breaks = vec![-reach, 0.0, reach];
        breaks.extend(
            self.envelope
                .singular_points()
                .into_iter()
                .map(|p| t - p)
                .filter(|s| s.abs() < reach),
        );
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();
        let tol = 1e-13 * self.n0_peak;
        let q = integrate_with_breaks(
            |s| kernel.symmetric_unchecked(s) * self.mean_photon_density(t - s),
            &breaks,
            tol,
        )?;
        Ok(q.value)
    }

    pub fn warnings(&self, kernel: &ResponseKernel) -> Vec<ValidityWarning> {
        let mut out = Vec::new();
        if self.gamma.abs() > GAMMA_WARN {
            out.push(ValidityWarning::StrongCoupling { gamma: self.gamma });
        }
        if let Some(tau_p) = self.envelope.duration() {
            let ratio = tau_p / kernel.tau_r();
            if ratio < MIN_DURATION_RATIO {
                out.push(ValidityWarning::ShortPulse {
                    tau_p_over_tau_r: ratio,
                });
            }
        }
        out
    }
}

fn check_duration(tau_p: f64) -> Result<f64> {
    if tau_p.is_finite() && tau_p > 0.0 {
        Ok(tau_p)
    } else {
        Err(Error::InvalidInput(format!(
            "pulse duration must be positive, got {tau_p}"
        )))
    }
}

fn check_table(times: &[f64], values: &[f64], what: &str) -> Result<()> {
    if times.len() < 2 || times.len() != values.len() {
        return Err(Error::InvalidInput(format!(
            "{what} table needs >= 2 samples with matching lengths"
        )));
    }
    if times.iter().chain(values).any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "{what} table contains non-finite entries"
        )));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput(format!(
            "{what} sample times must be strictly increasing"
        )));
    }
    Ok(())
}

fn interpolate(times: &[f64], values: &[f64], t: f64) -> Option<f64> {
    if t < times[0] || t > times[times.len() - 1] {
        return None;
    }
    let i = times.partition_point(|&x| x <= t).clamp(1, times.len() - 1);
    let (t0, t1) = (times[i - 1], times[i]);
    let w = (t - t0) / (t1 - t0);
    Some(values[i - 1] + w * (values[i] - values[i - 1]))
}
