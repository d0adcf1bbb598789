//! Probe spectrum when a second pulse co-propagates: self-phase modulation of
//! the probe plus cross-phase modulation from the pump.
//!
//! With `ψ₁ = 2γ₁n̄₁`, `ψ̃ⱼ = 2γ̃n̄ⱼ` and `P = ψ₁² + ψ̃₁ψ̃₂`,
//! `S₁ = ¼{1 − 2ψ₁L sin2Φ + 4PL² sin²Φ}` where `Φ = ψ₁ + φ₁ + ψ̃₂`.
//!
//! The minimum over `φ₁` is `¼[1 + b/2 − √(4a² + b²/4)]` with `a = ψ₁L`,
//! `b = 4PL²`, reached at `tan 2Φ = ψ₁/(PL)`.

use crate::error::{Error, Result};
use crate::kernel::lorentzian;
use crate::pulse::{Envelope, PulseSpec};
use crate::spm::{density_terms, OptimalPhase, PhaseConvention, SpectrumCurve};

/// Probe/pump pair with cross coupling `γ̃ = β̃z`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPulseSpec {
    pub probe: PulseSpec,
    pub pump: PulseSpec,
    pub gamma_x: f64,
}

/// Nonlinear phases of the probe at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XpmPhases {
    /// `ψ₁`, self phase of the probe.
    pub self_phase: f64,
    /// `ψ̃₁ = 2γ̃n̄₁`.
    pub cross_probe: f64,
    /// `ψ̃₂ = 2γ̃n̄₂`, the phase the pump writes onto the probe.
    pub cross_pump: f64,
}

impl XpmPhases {
    /// `ψ₁² + ψ̃₁ψ̃₂`.
    pub fn noise_power(&self) -> f64 {
        self.self_phase * self.self_phase + self.cross_probe * self.cross_pump
    }
}

/// Figure-style preset: `γ₁ = γ₂ = 2γ̃` and a peak probe phase of 2.
pub const FIG1_PSI0: f64 = 2.0;
pub const FIG1_RATIOS: [f64; 4] = [0.0, 3.0, 5.0, 8.0];
pub const FIG1_GAMMA: f64 = 1e-3;

impl TwoPulseSpec {
    pub fn new(probe: PulseSpec, pump: PulseSpec, gamma_x: f64) -> Result<Self> {
        if !gamma_x.is_finite() {
            return Err(Error::InvalidInput(format!(
                "cross coupling must be finite, got {gamma_x}"
            )));
        }
        Ok(Self {
            probe,
            pump,
            gamma_x,
        })
    }

    /// Pulses sharing one envelope with the pump carrying `ratio` times the
    /// probe photon density, `γ₂ = γ₁`, `γ̃ = gamma_x`.
    pub fn with_ratio(
        envelope: Envelope,
        psi0: f64,
        gamma: f64,
        gamma_x: f64,
        ratio: f64,
    ) -> Result<Self> {
        if !(ratio.is_finite() && ratio >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "photon ratio must be non-negative, got {ratio}"
            )));
        }
        let probe = PulseSpec::from_peak_phase(envelope.clone(), psi0, gamma)?;
        let pump = PulseSpec::new(envelope, ratio * probe.n0_peak, gamma)?;
        Self::new(probe, pump, gamma_x)
    }

    /// The preset behind the reference curves: `ψ₁(0) = 2`, `γ₁ = γ₂ = 2γ̃`.
    ///
    /// The envelope only matters away from `t = 0`.
    pub fn fig1(ratio: f64) -> Result<Self> {
        Self::with_ratio(
            Envelope::Gaussian { tau_p: 100.0 },
            FIG1_PSI0,
            FIG1_GAMMA,
            FIG1_GAMMA / 2.0,
            ratio,
        )
    }

    /// Same pair with the roles of probe and pump exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            probe: self.pump.clone(),
            pump: self.probe.clone(),
            gamma_x: self.gamma_x,
        }
    }

    pub fn phases(&self, t: f64) -> XpmPhases {
        XpmPhases {
            self_phase: self.probe.nonlinear_phase(t),
            cross_probe: 2.0 * self.gamma_x * self.probe.mean_photon_density(t),
            cross_pump: 2.0 * self.gamma_x * self.pump.mean_photon_density(t),
        }
    }
}

/// `S₁(Ω, t)` for probe carrier phase `phi1`.
pub fn spectrum(omega: f64, t: f64, phi1: f64, s: &TwoPulseSpec) -> f64 {
    let ph = s.phases(t);
    density_terms(
        ph.self_phase,
        ph.noise_power(),
        ph.self_phase + phi1 + ph.cross_pump,
        lorentzian(omega),
    )
}

/// `φ₀,₁ = ½·arctan[ψ₁/(P·L(Ω₀))] − ψ₁ − ψ̃₂`, arctan in `[0, π/2]`.
pub fn optimal_phase(omega0: f64, t: f64, s: &TwoPulseSpec) -> OptimalPhase {
    let ph = s.phases(t);
    let power = ph.noise_power();
    if ph.self_phase == 0.0 && power == 0.0 {
        return OptimalPhase {
            phase: 0.0,
            degenerate: true,
        };
    }
    let two_phi = ph.self_phase.atan2(power * lorentzian(omega0));
    OptimalPhase {
        phase: 0.5 * two_phi - ph.self_phase - ph.cross_pump,
        degenerate: false,
    }
}

/// Minimum of [`spectrum`] over the probe phase.
pub fn min_spectrum(omega0: f64, t: f64, s: &TwoPulseSpec) -> f64 {
    let ph = s.phases(t);
    let l = lorentzian(omega0);
    let a = ph.self_phase * l;
    let b = 4.0 * ph.noise_power() * l * l;
    // (1 + b/2)² − (4a² + b²/4) = 1 + 4ψ̃₁ψ̃₂L², kept exact by rationalising
    let numerator = 1.0 + 4.0 * ph.cross_probe * ph.cross_pump * l * l;
    0.25 * numerator / (1.0 + 0.5 * b + (4.0 * a * a + 0.25 * b * b).sqrt())
}

/// Probe spectrum sampled over `omegas`.
pub fn curve(
    s: &TwoPulseSpec,
    t: f64,
    omegas: &[f64],
    convention: PhaseConvention,
) -> Result<SpectrumCurve> {
    if omegas.is_empty() {
        return Err(Error::InvalidInput("empty frequency grid".into()));
    }
    let fixed = match convention {
        PhaseConvention::PerOmega => None,
        PhaseConvention::Fixed0 => Some(optimal_phase(0.0, t, s).phase),
        PhaseConvention::Explicit(phi) => Some(phi),
    };
    let values = omegas
        .iter()
        .map(|&om| {
            spectrum(
                om,
                t,
                fixed.unwrap_or_else(|| optimal_phase(om, t, s).phase),
                s,
            )
        })
        .collect();
    let n1 = s.probe.mean_photon_density(t);
    let ratio = if n1 > 0.0 {
        s.pump.mean_photon_density(t) / n1
    } else {
        0.0
    };
    Ok(SpectrumCurve {
        omegas: omegas.to_vec(),
        values,
        phase_convention: convention,
        t_eval: t,
        ratio,
    })
}

/// One preset curve per pump/probe photon ratio, evaluated at the pulse peak.
pub fn fig1_curves(
    ratios: &[f64],
    omegas: &[f64],
    convention: PhaseConvention,
) -> Result<Vec<SpectrumCurve>> {
    if ratios.is_empty() {
        return Err(Error::InvalidInput("empty ratio list".into()));
    }
    if omegas.is_empty() {
        return Err(Error::InvalidInput("empty frequency grid".into()));
    }
    ratios
        .iter()
        .map(|&r| {
            let mut c = curve(&TwoPulseSpec::fig1(r)?, 0.0, omegas, convention)?;
            c.ratio = r;
            Ok(c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::minimize_phase;
    use crate::spm;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn printed_closed_form(omega0: f64, s: &TwoPulseSpec) -> f64 {
        let ph = s.phases(0.0);
        let l = lorentzian(omega0);
        let p = ph.noise_power();
        0.25 * (1.0 - 2.0 * l * (ph.self_phase.powi(2) + p * p * l * l).sqrt() - p * l)
    }

    #[test]
    fn fig1_preset_phases() {
        let s = TwoPulseSpec::fig1(3.0).unwrap();
        let ph = s.phases(0.0);
        assert!((ph.self_phase - 2.0).abs() < 1e-15);
        assert!((ph.cross_probe - 1.0).abs() < 1e-15);
        assert!((ph.cross_pump - 3.0).abs() < 1e-14);
        assert!((ph.noise_power() - 7.0).abs() < 1e-14);
    }

    #[test]
    fn reduces_to_spm_without_pump() {
        let probe = PulseSpec::from_peak_phase(Envelope::sech(40.0).unwrap(), 1.7, 2e-3).unwrap();
        let pump = PulseSpec::new(Envelope::sech(40.0).unwrap(), 0.0, 2e-3).unwrap();
        let s = TwoPulseSpec::new(probe.clone(), pump, 0.37).unwrap();
        for (om, t, phi) in [(0.0, 0.0, 0.3), (2.0, 10.0, -1.1), (0.5, -25.0, 2.9)] {
            assert_eq!(spectrum(om, t, phi, &s), spm::spectrum(om, t, phi, &probe));
            let a = optimal_phase(om, t, &s).phase;
            let b = spm::optimal_phase(om, t, &probe).phase;
            assert!((a - b).abs() < 1e-15);
            assert!((min_spectrum(om, t, &s) - spm::min_spectrum(om, t, &probe)).abs() < 1e-16);
        }
    }

    #[test]
    fn silent_pair_is_shot_noise() {
        let probe = PulseSpec::new(Envelope::Continuous, 0.0, 1e-3).unwrap();
        let pump = PulseSpec::new(Envelope::Continuous, 50.0, 1e-3).unwrap();
        let s = TwoPulseSpec::new(probe, pump, 1e-3).unwrap();
        assert_eq!(spectrum(0.0, 0.0, 0.7, &s), 0.25);
        assert!(optimal_phase(0.0, 0.0, &s).degenerate);
    }

    #[test]
    fn fig1_minima() {
        let expected = [
            0.25 * (5f64.sqrt() - 2.0).powi(2),
            0.25 * (15.0 - 212f64.sqrt()),
            0.25 * (19.0 - 340f64.sqrt()),
            0.25 * (25.0 - 592f64.sqrt()),
        ];
        let pinned = [0.013_932_0, 0.109_945_1, 0.140_227_8, 0.167_237_5];
        for ((&r, &e), &pin) in FIG1_RATIOS.iter().zip(&expected).zip(&pinned) {
            let s = TwoPulseSpec::fig1(r).unwrap();
            let closed = min_spectrum(0.0, 0.0, &s);
            assert!((closed - e).abs() < 1e-14, "r={r}");
            assert!((closed - pin).abs() < 1e-7, "r={r}");
            let brute = minimize_phase(|phi| spectrum(0.0, 0.0, phi, &s));
            assert!((brute.value - closed).abs() < 1e-10);
            let opt = optimal_phase(0.0, 0.0, &s).phase;
            assert!((spectrum(0.0, 0.0, opt, &s) - closed).abs() < 1e-12);
        }
        assert!(
            (4.0 * min_spectrum(0.0, 0.0, &TwoPulseSpec::fig1(3.0).unwrap()) - 0.439_780_2).abs()
                < 1e-7
        );
    }

    #[test]
    fn optimal_phase_examples() {
        let s = TwoPulseSpec::fig1(3.0).unwrap();
        let opt = optimal_phase(0.0, 0.0, &s);
        let ph = s.phases(0.0);
        assert!((opt.phase - (0.5 * (2.0f64 / 7.0).atan() - 2.0 - ph.cross_pump)).abs() < 1e-14);
        // L → 0: total phase → π/4
        let far = optimal_phase(1e12, 0.0, &s).phase;
        assert!((far + ph.self_phase + ph.cross_pump - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn printed_closed_form_diverges() {
        let s = TwoPulseSpec::fig1(3.0).unwrap();
        let printed = printed_closed_form(0.0, &s);
        let brute = minimize_phase(|phi| spectrum(0.0, 0.0, phi, &s)).value;
        assert!(printed < 0.0);
        assert!((printed - brute).abs() > 0.1);
    }

    #[test]
    fn fig1_curve_properties() {
        let omegas: Vec<f64> = (0..=80).map(|i| 0.05 * i as f64).collect();
        for conv in [PhaseConvention::PerOmega, PhaseConvention::Fixed0] {
            let curves = fig1_curves(&FIG1_RATIOS, &omegas, conv).unwrap();
            assert_eq!(curves.len(), 4);
            assert_eq!(curves[0].minimum().unwrap().0, 0.0);
            for w in curves.windows(2) {
                for (lo, hi) in w[0].values.iter().zip(&w[1].values) {
                    assert!(hi >= lo, "{conv:?}");
                }
            }
            assert_eq!(curves[2].ratio, 5.0);
        }
        assert!(fig1_curves(&[], &omegas, PhaseConvention::PerOmega).is_err());
        assert!(fig1_curves(&FIG1_RATIOS, &[], PhaseConvention::PerOmega).is_err());
        assert!(TwoPulseSpec::fig1(-1.0).is_err());
    }

    #[test]
    fn symmetric_pair_swaps_cleanly() {
        let env = Envelope::gaussian(30.0).unwrap();
        let a = PulseSpec::from_peak_phase(env.clone(), 1.2, 1e-3).unwrap();
        let s = TwoPulseSpec::new(a.clone(), a, 4e-4).unwrap();
        let w = s.swapped();
        for om in [0.0, 0.4, 3.0] {
            for phi in [-2.0, 0.1, 1.4] {
                assert_eq!(spectrum(om, 5.0, phi, &s), spectrum(om, 5.0, phi, &w));
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_is_the_minimum(psi in 0.05f64..4.0, r in 0.0f64..10.0, om in 0.0f64..4.0) {
            let s = TwoPulseSpec::with_ratio(Envelope::Continuous, psi, 1e-3, 5e-4, r).unwrap();
            let closed = min_spectrum(om, 0.0, &s);
            let brute = minimize_phase(|phi| spectrum(om, 0.0, phi, &s));
            prop_assert!(brute.value >= closed - 1e-9);
            prop_assert!((brute.value - closed).abs() < 1e-9);
            prop_assert!(closed > 0.0 && closed <= 0.25);
        }

        #[test]
        fn pump_noise_degrades_squeezing(psi in 0.05f64..4.0, om in 0.0f64..4.0, r1 in 0.0f64..10.0, dr in 0.0f64..10.0) {
            let lo = TwoPulseSpec::with_ratio(Envelope::Continuous, psi, 1e-3, 5e-4, r1).unwrap();
            let hi = TwoPulseSpec::with_ratio(Envelope::Continuous, psi, 1e-3, 5e-4, r1 + dr).unwrap();
            prop_assert!(min_spectrum(om, 0.0, &hi) >= min_spectrum(om, 0.0, &lo));
        }

        #[test]
        fn high_frequency_recovers_shot_noise(psi in 0.0f64..4.0, r in 0.0f64..10.0) {
            let s = TwoPulseSpec::with_ratio(Envelope::Continuous, psi, 1e-3, 5e-4, r).unwrap();
            prop_assert!((min_spectrum(1e4, 0.0, &s) - 0.25).abs() < 1e-6);
        }
    }
}
