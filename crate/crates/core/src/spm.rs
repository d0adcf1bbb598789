//! Single-pulse self-phase modulation: correlation function and quadrature
//! noise spectrum of `X = (A + A⁺)/2`, plus the homodyne phase that minimises it.
//!
//! Everything is quasi-static in `t`: `ψ(t)` is frozen over the correlation
//! width. Lags are in units of `tau_r`, frequencies are `Ω = ω·tau_r`.

use crate::error::{Error, Result};
use crate::kernel::{autocorrelation, lorentzian, reduced_kernel, ResponseKernel};
use crate::pulse::PulseSpec;

/// Coherent-state (shot-noise) spectral level.
pub const SHOT_NOISE: f64 = 0.25;

/// `R(t, τ) = delta_weight·δ(τ) + smooth(τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationValue {
    pub delta_weight: f64,
    pub smooth: f64,
}

/// How the homodyne phase is chosen along a frequency sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseConvention {
    /// Re-optimised at every Ω.
    PerOmega,
    /// Held at the value optimal for Ω₀ = 0.
    Fixed0,
    /// A given carrier phase φ.
    Explicit(f64),
}

impl PhaseConvention {
    pub fn label(&self) -> &'static str {
        match self {
            PhaseConvention::PerOmega => "per-omega",
            PhaseConvention::Fixed0 => "fixed0",
            PhaseConvention::Explicit(_) => "explicit",
        }
    }
}

/// Sampled spectrum `S_X(Ω)` at one instant of the pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumCurve {
    pub omegas: Vec<f64>,
    pub values: Vec<f64>,
    pub phase_convention: PhaseConvention,
    pub t_eval: f64,
    /// Pump-to-probe photon ratio; zero for a lone pulse.
    pub ratio: f64,
}

impl SpectrumCurve {
    /// `(Ω, S)` of the deepest point.
    pub fn minimum(&self) -> Option<(f64, f64)> {
        self.omegas
            .iter()
            .zip(&self.values)
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(&o, &s)| (o, s))
    }
}

/// Closed-form optimal phase with a flag for the phase-independent case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPhase {
    pub phase: f64,
    pub degenerate: bool,
}

/// Smooth part of the correlation at reduced lag `lag` for nonlinear phase
/// `psi` and total phase `Φ = ψ + φ`.
pub fn correlation_smooth(psi: f64, total_phase: f64, lag: f64) -> f64 {
    let s = total_phase.sin();
    0.25 * (-psi * reduced_kernel(lag) * (2.0 * total_phase).sin()
        + psi * psi * autocorrelation(lag) * s * s)
}

/// `¼[1 − 2ψL sin2Φ + 4ψ²L² sin²Φ]`.
pub fn spectral_density(psi: f64, total_phase: f64, omega: f64) -> f64 {
    density_with_lorentzian(psi, total_phase, lorentzian(omega))
}

pub(crate) fn density_with_lorentzian(psi: f64, total_phase: f64, l: f64) -> f64 {
    density_terms(psi, psi * psi, total_phase, l)
}

/// `¼[1 − 2ψL sin2Φ + 4PL² sin²Φ]`; `P = ψ²` for a lone pulse, larger under
/// cross-phase modulation.
pub(crate) fn density_terms(psi: f64, noise_power: f64, total_phase: f64, l: f64) -> f64 {
    let s = total_phase.sin();
    0.25 * (1.0 - 2.0 * psi * l * (2.0 * total_phase).sin() + 4.0 * noise_power * l * l * s * s)
}

/// `¼[√(1+a²) − a]²` with `a = ψL`, written without cancellation.
pub fn min_density(psi: f64, omega0: f64) -> f64 {
    let a = psi * lorentzian(omega0);
    let d = (1.0 + a * a).sqrt() + a;
    0.25 / (d * d)
}

/// Correlation function at time `t` of the pulse and lag `lag` (units of `tau_r`).
pub fn correlation(t: f64, lag: f64, p: &PulseSpec) -> CorrelationValue {
    let psi = p.nonlinear_phase(t);
    let total = psi + p.carrier_phase_at(t);
    CorrelationValue {
        delta_weight: SHOT_NOISE,
        smooth: correlation_smooth(psi, total, lag),
    }
}

/// Instantaneous spectral density at reduced frequency `omega` for carrier phase `phi`.
pub fn spectrum(omega: f64, t: f64, phi: f64, p: &PulseSpec) -> f64 {
    let psi = p.nonlinear_phase(t);
    spectral_density(psi, psi + phi, omega)
}

/// As [`spectrum`] but for a physical angular frequency, reduced with the kernel's `tau_r`.
pub fn spectrum_at_frequency(
    omega: f64,
    kernel: &ResponseKernel,
    t: f64,
    phi: f64,
    p: &PulseSpec,
) -> f64 {
    spectrum(kernel.reduced_frequency(omega), t, phi, p)
}

/// `φ₀ = ½·arctan[1/(ψL(Ω₀))] − ψ`, arctan taken in `(0, π/2]`.
///
/// For `ψ = 0` every phase is optimal; returns `0` flagged degenerate.
pub fn optimal_phase(omega0: f64, t: f64, p: &PulseSpec) -> OptimalPhase {
    let psi = p.nonlinear_phase(t);
    if psi == 0.0 {
        return OptimalPhase {
            phase: 0.0,
            degenerate: true,
        };
    }
    let a = psi * lorentzian(omega0);
    OptimalPhase {
        phase: 0.5 * 1.0f64.atan2(a) - psi,
        degenerate: false,
    }
}

/// Like [`optimal_phase`] but failing on the degenerate case.
pub fn try_optimal_phase(omega0: f64, t: f64, p: &PulseSpec) -> Result<f64> {
    let opt = optimal_phase(omega0, t, p);
    if opt.degenerate {
        Err(Error::DegenerateOptimum)
    } else {
        Ok(opt.phase)
    }
}

/// Spectrum at the optimal phase for Ω₀.
pub fn min_spectrum(omega0: f64, t: f64, p: &PulseSpec) -> f64 {
    min_density(p.nonlinear_phase(t), omega0)
}

/// Samples the spectrum of `p` at time `t` over `omegas`.
pub fn curve(
    p: &PulseSpec,
    t: f64,
    omegas: &[f64],
    convention: PhaseConvention,
) -> Result<SpectrumCurve> {
    if omegas.is_empty() {
        return Err(Error::InvalidInput("empty frequency grid".into()));
    }
    let fixed = match convention {
        PhaseConvention::PerOmega => None,
        PhaseConvention::Fixed0 => Some(optimal_phase(0.0, t, p).phase),
        PhaseConvention::Explicit(phi) => Some(phi),
    };
    let values = omegas
        .iter()
        .map(|&om| match fixed {
            Some(phi) => spectrum(om, t, phi, p),
            None => spectrum(om, t, optimal_phase(om, t, p).phase, p),
        })
        .collect();
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        values,
        phase_convention: convention,
        t_eval: t,
        ratio: 0.0,
    })
}
