//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test --test acceptance`.

use std::f64::consts::{FRAC_PI_8, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use kerr_squeeze::fock::{
    correlation_contract, DiscreteFockModel, FockModelParams, COMMUTATOR_CONTRACT,
    NORMAL_ORDERING_CONTRACT, PERMUTATION_CONTRACT,
};
use kerr_squeeze::kernel::lorentzian;
use kerr_squeeze::oracle::{dft_spectrum, minimize_phase, symmetric_lags};
use kerr_squeeze::spm::{self, PhaseConvention};
use kerr_squeeze::xpm::{self, FIG1_RATIOS};
use kerr_squeeze::{Envelope, PulseSpec, ResponseKernel, TwoPulseSpec};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_budget(elapsed: Duration, budget: Duration, detail: String) -> Outcome {
    require(
        elapsed < budget,
        format!(
            "{detail}; {:.3} s of {:.0} s budget",
            elapsed.as_secs_f64(),
            budget.as_secs_f64()
        ),
    )
}

fn optimal_spm_pin() -> Outcome {
    let start = Instant::now();
    let pulse =
        PulseSpec::from_peak_phase(Envelope::Continuous, 2.0, 1e-3).map_err(|e| e.to_string())?;
    let expected = 0.25 * (5f64.sqrt() - 2.0).powi(2);
    let closed = spm::min_spectrum(0.0, 0.0, &pulse);
    let brute = minimize_phase(|phi| spm::spectrum(0.0, 0.0, phi, &pulse)).value;
    let detail = format!("closed {closed:.12}, brute {brute:.12}, expected {expected:.12}");
    require(
        (closed - expected).abs() < 1e-12 && (brute - closed).abs() < 1e-9,
        detail.clone(),
    )?;
    within_budget(start.elapsed(), Duration::from_secs(1), detail)
}

fn transform_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    let lags = symmetric_lags(40.0, 0.01).map_err(|e| e.to_string())?;
    let omegas: Vec<f64> = (0..=80).map(|i| 0.1 * i as f64).collect();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let psi = rng.gen_range(0.1..=4.0);
        let total_phase = rng.gen_range(0.0..PI);
        let smooth: Vec<f64> = lags
            .iter()
            .map(|&l| spm::correlation_smooth(psi, total_phase, l))
            .collect();
        let numeric = dft_spectrum(&lags, &smooth, &omegas).map_err(|e| e.to_string())?;
        for (&om, s_num) in omegas.iter().zip(numeric) {
            worst = worst.max((s_num - spm::spectral_density(psi, total_phase, om)).abs());
        }
    }
    let detail = format!("max |DFT - closed form| = {worst:.3e} over 20 draws x 81 frequencies");
    require(worst < 1e-4, detail.clone())?;
    within_budget(start.elapsed(), Duration::from_secs(10), detail)
}

fn xpm_reduction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let tau_p = rng.gen_range(10.0..500.0);
        let envelope = match rng.gen_range(0..3) {
            0 => Envelope::gaussian(tau_p),
            1 => Envelope::sech(tau_p),
            _ => Ok(Envelope::Continuous),
        }
        .map_err(|e| e.to_string())?;
        let psi0 = rng.gen_range(0.0..4.0);
        let gamma = rng.gen_range(1e-4..1e-2);
        let gamma_x = rng.gen_range(0.0..1e-2);
        let pair = TwoPulseSpec::with_ratio(envelope.clone(), psi0, gamma, gamma_x, 0.0)
            .map_err(|e| e.to_string())?;
        let probe = PulseSpec::from_peak_phase(envelope, psi0, gamma).map_err(|e| e.to_string())?;
        let t = rng.gen_range(-tau_p..tau_p);
        let omega = rng.gen_range(0.0..10.0);
        let phi = rng.gen_range(-PI..PI);
        worst = worst.max(
            (xpm::spectrum(omega, t, phi, &pair) - spm::spectrum(omega, t, phi, &probe)).abs(),
        );
    }
    require(
        worst < 1e-14,
        format!("max |S1 - S| = {worst:.3e} over 1000 random points"),
    )
}

fn figure1_properties() -> Outcome {
    let start = Instant::now();
    let expected = [0.013_932_0, 0.109_945_1, 0.140_227_8, 0.167_237_5];
    let omegas: Vec<f64> = (0..=200).map(|i| 0.02 * i as f64).collect();
    let mut notes = Vec::new();

    let per_omega = xpm::fig1_curves(&FIG1_RATIOS, &omegas, PhaseConvention::PerOmega)
        .map_err(|e| e.to_string())?;
    let (om_min, s_min) = per_omega[0].minimum().ok_or("empty curve")?;
    let a = om_min == 0.0 && (s_min - expected[0]).abs() < 1e-6;
    notes.push(format!("(a) r=0 min {s_min:.7} at omega {om_min}"));

    let mut b = true;
    for conv in [PhaseConvention::PerOmega, PhaseConvention::Fixed0] {
        let curves = xpm::fig1_curves(&FIG1_RATIOS, &omegas, conv).map_err(|e| e.to_string())?;
        b &= curves[0].minimum().map(|m| m.0) == Some(0.0);
        for w in curves.windows(2) {
            b &= w[0]
                .values
                .iter()
                .zip(&w[1].values)
                .all(|(lo, hi)| hi >= lo);
        }
    }
    notes.push(format!("(b) monotone in r for both phase conventions: {b}"));

    let mut c = true;
    let mut values = Vec::new();
    for (&r, &want) in FIG1_RATIOS.iter().zip(&expected) {
        let pair = TwoPulseSpec::fig1(r).map_err(|e| e.to_string())?;
        let closed = xpm::min_spectrum(0.0, 0.0, &pair);
        let brute = minimize_phase(|phi| xpm::spectrum(0.0, 0.0, phi, &pair)).value;
        c &= (closed - want).abs() < 1e-6 && (brute - want).abs() < 1e-6;
        values.push(format!("{brute:.7}"));
    }
    notes.push(format!("(c) omega=0 values [{}]", values.join(", ")));

    let detail = notes.join("; ");
    require(a && b && c, detail.clone())?;
    within_budget(start.elapsed(), Duration::from_secs(5), detail)
}

fn printed_form_discrepancy() -> Outcome {
    let pair = TwoPulseSpec::fig1(3.0).map_err(|e| e.to_string())?;
    let ph = pair.phases(0.0);
    let l = lorentzian(0.0);
    let p = ph.noise_power();
    let printed = 0.25 * (1.0 - 2.0 * l * (ph.self_phase.powi(2) + p * p * l * l).sqrt() - p * l);
    let brute = minimize_phase(|phi| xpm::spectrum(0.0, 0.0, phi, &pair)).value;
    let closed = xpm::min_spectrum(0.0, 0.0, &pair);
    require(
        printed < 0.0 && (printed - brute).abs() > 0.1 && (closed - brute).abs() < 1e-9,
        format!("printed {printed:.6}, brute {brute:.10}, derived closed form {closed:.10}"),
    )
}

fn operator_algebra() -> Outcome {
    let start = Instant::now();
    let mut worst_comm = 0.0f64;
    let mut worst_perm = 0.0f64;
    let mut worst_normal = 0.0f64;
    let mut worst_corr = 0.0f64;
    let mut corr_contract = f64::INFINITY;
    let mut cases = 0;
    for bins in [1usize, 2, 3] {
        for cutoff in [6usize, 8] {
            for gamma in [0.0, 1e-3, 1e-2] {
                let base = FockModelParams::new(bins, cutoff).gamma(gamma);
                let model = DiscreteFockModel::build(base.clone()).map_err(|e| e.to_string())?;
                let prop = model.propagate();
                worst_comm = worst_comm.max(model.check_commutator(&prop));
                worst_perm = worst_perm.max(model.check_permutation(&prop).max());
                if cutoff == 8 {
                    // largest amplitude the contract covers
                    let strong = DiscreteFockModel::build(
                        base.uniform_alpha(Complex64::from_polar(1.0, FRAC_PI_8)),
                    )
                    .map_err(|e| e.to_string())?;
                    let strong_prop = strong.propagate();
                    worst_normal = worst_normal.max(
                        strong
                            .check_normal_ordering(&strong_prop)
                            .relative_deviation,
                    );
                }
                if gamma == 1e-3 {
                    worst_corr = worst_corr.max(
                        model
                            .correlation_from_operators(&prop, FRAC_PI_8)
                            .relative_deviation,
                    );
                    corr_contract = correlation_contract(gamma);
                }
                cases += 1;
            }
        }
    }
    let detail = format!(
        "{cases} models: commutator {worst_comm:.2e}, permutation {worst_perm:.2e}, \
         normal ordering (N=8, |alpha|=1) {worst_normal:.2e}, correlation (gamma=1e-3) {worst_corr:.2e}"
    );
    require(
        worst_comm < COMMUTATOR_CONTRACT
            && worst_perm < PERMUTATION_CONTRACT
            && worst_normal < NORMAL_ORDERING_CONTRACT
            && worst_corr < corr_contract,
        detail.clone(),
    )?;
    within_budget(start.elapsed(), Duration::from_secs(30), detail)
}

fn limits() -> Outcome {
    let pulse =
        PulseSpec::from_peak_phase(Envelope::Continuous, 2.0, 1e-3).map_err(|e| e.to_string())?;
    let fast = ResponseKernel::new(1e-15).map_err(|e| e.to_string())?;
    let mut spread = 0.0f64;
    for phi in [-1.0, 0.0, 0.3, 1.2] {
        let s: Vec<f64> = (0..=100)
            .map(|i| spm::spectrum_at_frequency(10.0 * i as f64, &fast, 0.0, phi, &pulse))
            .collect();
        let (lo, hi) = s
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            });
        spread = spread.max(hi - lo);
    }

    let mut shot = spm::min_spectrum(1e3, 0.0, &pulse) - 0.25;
    for i in 0..64 {
        let phi = -PI + 2.0 * PI * i as f64 / 64.0;
        let d = spm::spectrum(1e3, 0.0, phi, &pulse) - 0.25;
        if d.abs() > shot.abs() {
            shot = d;
        }
    }

    let mut monotone = true;
    for omega0 in [0.0, 0.5, 2.0] {
        let mins: Vec<f64> = (1..=100)
            .map(|i| spm::min_density(0.05 * i as f64, omega0))
            .collect();
        monotone &= mins.windows(2).all(|w| w[1] < w[0]);
    }

    require(
        spread < 1e-12 && shot.abs() < 1e-6 && monotone,
        format!(
            "tau_r->0 spread {spread:.2e}; max |S - 1/4| at Omega=1e3 {:.6e}; min S decreasing in psi: {monotone}",
            shot.abs()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("optimal SPM pin", optimal_spm_pin),
        ("transform equivalence", transform_equivalence),
        ("XPM reduction to SPM", xpm_reduction),
        ("figure-1 properties", figure1_properties),
        ("printed closed-form discrepancy", printed_form_discrepancy),
        ("operator algebra", operator_algebra),
        ("limit checks", limits),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
