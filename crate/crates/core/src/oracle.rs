//! Brute-force numerics used to cross-check the closed-form spectra:
//! adaptive Gauss–Kronrod quadrature, a trapezoidal Fourier transform of
//! sampled correlation functions, and a grid + golden-section phase search.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Integral estimate with its absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) and the weights of
// the embedded 7-point Gauss rule at the odd-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4000;

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Quadrature {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Quadrature {
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    q: Quadrature,
}

/// Globally adaptive G7/K15 quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    integrate_with_breaks(f, &[a, b], tol)
}

/// As [`integrate`], splitting first at the given increasing breakpoints
/// (kinks and discontinuities of the integrand belong there).
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: f64,
) -> Result<Quadrature> {
    if points.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two integration bounds".into(),
        ));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidInput(
            "integration bounds must be finite".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut segments: Vec<Segment> = Vec::with_capacity(64);
    for w in points.windows(2) {
        if w[1] < w[0] {
            return Err(Error::InvalidInput(
                "breakpoints must be non-decreasing".into(),
            ));
        }
        if w[1] > w[0] {
            segments.push(Segment {
                a: w[0],
                b: w[1],
                q: gauss_kronrod_15(&f, w[0], w[1]),
            });
        }
    }

    loop {
        let value: f64 = segments.iter().map(|s| s.q.value).sum();
        let error: f64 = segments.iter().map(|s| s.q.error).sum();
        let roundoff = 50.0 * f64::EPSILON * segments.iter().map(|s| s.q.value.abs()).sum::<f64>();
        if !value.is_finite() {
            return Err(Error::NumericFailure {
                message: "integrand produced a non-finite value".into(),
                estimate: value,
                residual: error,
            });
        }
        if error <= tol.max(roundoff) {
            return Ok(Quadrature { value, error });
        }
        if segments.len() >= MAX_INTERVALS {
            return Err(Error::NumericFailure {
                message: format!("quadrature did not converge within {MAX_INTERVALS} subintervals"),
                estimate: value,
                residual: error,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.q.error.total_cmp(&y.1.q.error))
            .expect("non-empty");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // interval can no longer be split in floating point
            return Err(Error::NumericFailure {
                message: "quadrature interval collapsed".into(),
                estimate: value,
                residual: error,
            });
        }
        segments.push(Segment {
            a: s.a,
            b: mid,
            q: gauss_kronrod_15(&f, s.a, mid),
        });
        segments.push(Segment {
            a: mid,
            b: s.b,
            q: gauss_kronrod_15(&f, mid, s.b),
        });
    }
}

/// Uniform lag grid symmetric about zero: `-n·step, …, 0, …, n·step`.
pub fn symmetric_lags(half_width: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && half_width > 0.0 && step.is_finite() && half_width.is_finite()) {
        return Err(Error::InvalidInput(
            "lag window and step must be positive".into(),
        ));
    }
    let n = (half_width / step).round() as i64;
    Ok((-n..=n).map(|i| i as f64 * step).collect())
}

/// `¼ + ∫ R_smooth(τ) cos(Ωτ) dτ` by the trapezoid rule on a sampled, symmetric lag grid.
///
/// The `δ(τ)` part of the correlation function contributes the constant `¼` and is
/// never sampled. `lags` must be uniform and symmetric about zero.
pub fn dft_spectrum(lags: &[f64], smooth: &[f64], omegas: &[f64]) -> Result<Vec<f64>> {
    if lags.len() != smooth.len() {
        return Err(Error::InvalidInput(format!(
            "{} lags but {} correlation samples",
            lags.len(),
            smooth.len()
        )));
    }
    if lags.len() < 3 || lags.len().is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "lag grid must have an odd number (>= 3) of points".into(),
        ));
    }
    let step = lags[1] - lags[0];
    if !(step > 0.0) {
        return Err(Error::InvalidInput(
            "lags must be strictly increasing".into(),
        ));
    }
    let n = lags.len();
    let scale = lags[n - 1].abs().max(step);
    for i in 0..n {
        if (lags[i] + lags[n - 1 - i]).abs() > 1e-9 * scale {
            return Err(Error::InvalidInput(
                "lag grid is not symmetric about zero".into(),
            ));
        }
        if i > 0 && ((lags[i] - lags[i - 1]) - step).abs() > 1e-9 * step.max(1.0) {
            return Err(Error::InvalidInput("lag grid is not uniform".into()));
        }
    }
    Ok(omegas
        .iter()
        .map(|&om| {
            let mut acc = 0.0;
            for (i, (&tau, &r)) in lags.iter().zip(smooth).enumerate() {
                let w = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
                acc += w * r * (om * tau).cos();
            }
            0.25 + acc * step
        })
        .collect())
}

/// Result of a brute-force phase search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseMinimum {
    pub phase: f64,
    pub value: f64,
    /// The objective was flat over the whole grid; `phase` is arbitrary.
    pub degenerate: bool,
}

pub const PHASE_GRID: usize = 4096;
const PHASE_TOL: f64 = 1e-10;

/// Global minimum of a 2π-periodic `objective` on `[-π, π)`: a 4096-point scan
/// followed by golden-section refinement around the best grid point.
pub fn minimize_phase<F: Fn(f64) -> f64>(objective: F) -> PhaseMinimum {
    let step = 2.0 * PI / PHASE_GRID as f64;
    let mut best = (0usize, f64::INFINITY);
    let mut worst = f64::NEG_INFINITY;
    for i in 0..PHASE_GRID {
        let v = objective(-PI + i as f64 * step);
        if v < best.1 {
            best = (i, v);
        }
        worst = worst.max(v);
    }
    let spread = worst - best.1;
    if spread <= 1e-14 * worst.abs().max(1.0) {
        return PhaseMinimum {
            phase: -PI + best.0 as f64 * step,
            value: best.1,
            degenerate: true,
        };
    }

    let center = -PI + best.0 as f64 * step;
    let (phase, value) = golden_section(&objective, center - step, center + step, PHASE_TOL);
    let (phase, value) = if value <= best.1 {
        (phase, value)
    } else {
        (center, best.1)
    };
    PhaseMinimum {
        phase: wrap_phase(phase),
        value,
        degenerate: false,
    }
}

/// Golden-section search on `[a, b]`, stopping once the bracket is narrower than `tol`.
pub fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maps a phase onto `[-π, π)`.
pub fn wrap_phase(phi: f64) -> f64 {
    (phi + PI).rem_euclid(2.0 * PI) - PI
}
