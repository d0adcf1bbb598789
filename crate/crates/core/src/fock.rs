//! Desk-scale operator model of the pulse: time is cut into `M` bins of width
//! `Δ` (units of `tau_r`), each bin carries a truncated Fock space, and the
//! field operators are explicit sparse matrices on the product space.
//!
//! Conventions:
//! - `Â_k = a_k/√Δ`, so `[Â_j, Â⁺_k] = δ_jk/Δ` away from the top Fock layer.
//! - kernel weights `w_kj = h((k−j)Δ)·Δ` (midpoint sampling) and
//!   `Q_k = Σ_j w_kj n̂_j` with `n̂_j = Â⁺_j Â_j`.
//! - commuting `Â_j` through `exp(iγQ_k)` shifts the exponent by `iγ·w_kj/Δ`.
//! - coherent amplitudes are per bin: `a_k|α⟩ = α_k|α⟩`, mean density `|α_k|²/Δ`.
//!
//! Identities are compared on the protected subspace where every bin holds at
//! most `N_max − 2` photons; truncation only corrupts the layers above it.

use num_complex::Complex64;
use serde::Serialize;
use sprs::{CsMat, TriMat};

use crate::error::{Error, Result};
use crate::kernel::ResponseKernel;

pub type Operator = CsMat<Complex64>;

pub const MAX_DIMENSION: usize = 65_536;

/// How the response kernel is sampled onto bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelWeighting {
    /// `w_kj = h((k−j)Δ)·Δ`.
    Midpoint,
    /// Instantaneous response: all weight on the own bin, `w_kj = 2δ_kj`.
    Instantaneous,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FockModelParams {
    pub n_bins: usize,
    pub bin_width: f64,
    pub cutoff: usize,
    pub gamma: f64,
    pub kernel: ResponseKernel,
    pub alphas: Vec<Complex64>,
    pub weighting: KernelWeighting,
}

pub const DEFAULT_ALPHA: f64 = 0.3;
pub const DEFAULT_ALPHA_PHASE: f64 = std::f64::consts::FRAC_PI_8;

impl FockModelParams {
    /// Unit-width bins, `tau_r = 1`, `γ = 0`, every bin in `|0.3·e^{iπ/8}⟩`.
    pub fn new(n_bins: usize, cutoff: usize) -> Self {
        Self {
            n_bins,
            bin_width: 1.0,
            cutoff,
            gamma: 0.0,
            kernel: ResponseKernel::new(1.0).expect("unit kernel"),
            alphas: vec![Complex64::from_polar(DEFAULT_ALPHA, DEFAULT_ALPHA_PHASE); n_bins],
            weighting: KernelWeighting::Midpoint,
        }
    }

    pub fn gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn bin_width(mut self, width: f64) -> Self {
        self.bin_width = width;
        self
    }

    pub fn kernel(mut self, kernel: ResponseKernel) -> Self {
        self.kernel = kernel;
        self
    }

    pub fn weighting(mut self, weighting: KernelWeighting) -> Self {
        self.weighting = weighting;
        self
    }

    pub fn uniform_alpha(mut self, alpha: Complex64) -> Self {
        self.alphas = vec![alpha; self.n_bins];
        self
    }

    pub fn alphas(mut self, alphas: Vec<Complex64>) -> Self {
        self.alphas = alphas;
        self
    }

    pub fn dimension(&self) -> Option<u128> {
        (self.cutoff as u128 + 1).checked_pow(self.n_bins as u32)
    }
}

/// Built operator model.
#[derive(Debug, Clone)]
pub struct DiscreteFockModel {
    params: FockModelParams,
    dim: usize,
    strides: Vec<usize>,
    weights: Vec<Vec<f64>>,
    lowering: Vec<Operator>,
    raising: Vec<Operator>,
    density: Vec<Operator>,
    q_ops: Vec<Operator>,
    q_diag: Vec<Vec<f64>>,
}

/// Field operators after propagation through the medium.
#[derive(Debug, Clone)]
pub struct Propagated {
    /// `Â_k(z) = exp(iγQ_k)·Â_k`.
    pub annihilation: Vec<Operator>,
    /// Adjoint of `annihilation`.
    pub creation: Vec<Operator>,
    /// Diagonal of `exp(iγQ_k)` in the number basis.
    pub phase: Vec<Vec<Complex64>>,
}

fn diagonal(entries: &[Complex64]) -> Operator {
    let n = entries.len();
    CsMat::new(
        (n, n),
        (0..=n).collect(),
        (0..n).collect(),
        entries.to_vec(),
    )
}

fn scaled(op: &Operator, c: Complex64) -> Operator {
    op.map(|&v| v * c)
}

fn adjoint(op: &Operator) -> Operator {
    op.transpose_view().to_csr().map(|v| v.conj())
}

fn apply(op: &Operator, x: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); op.rows()];
    for (row, vec) in op.outer_iterator().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (col, &v) in vec.iter() {
            acc += v * x[col];
        }
        out[row] = acc;
    }
    out
}

fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Normalised, truncated coherent-state coefficients and the untruncated tail probability.
fn coherent_coefficients(alpha: Complex64, cutoff: usize) -> (Vec<Complex64>, f64) {
    let mut c = Vec::with_capacity(cutoff + 1);
    let mut term = Complex64::new((-0.5 * alpha.norm_sqr()).exp(), 0.0);
    for n in 0..=cutoff {
        if n > 0 {
            term *= alpha / (n as f64).sqrt();
        }
        c.push(term);
    }
    let kept: f64 = c.iter().map(|z| z.norm_sqr()).sum();
    let norm = kept.sqrt();
    (
        c.into_iter().map(|z| z / norm).collect(),
        (1.0 - kept).max(0.0),
    )
}

impl DiscreteFockModel {
    pub fn build(params: FockModelParams) -> Result<Self> {
        if params.n_bins == 0 {
            return Err(Error::InvalidInput("need at least one time bin".into()));
        }
        if params.cutoff < 2 {
            return Err(Error::InvalidInput("Fock cutoff must be at least 2".into()));
        }
        if !(params.bin_width.is_finite() && params.bin_width > 0.0) {
            return Err(Error::InvalidInput(format!(
                "bin width must be positive, got {}",
                params.bin_width
            )));
        }
        if !params.gamma.is_finite() {
            return Err(Error::InvalidInput("gamma must be finite".into()));
        }
        if params.alphas.len() != params.n_bins {
            return Err(Error::InvalidInput(format!(
                "{} coherent amplitudes for {} bins",
                params.alphas.len(),
                params.n_bins
            )));
        }
        let dim = match params.dimension() {
            Some(d) if d <= MAX_DIMENSION as u128 => d as usize,
            other => {
                return Err(Error::DimensionOverflow {
                    dimension: other.unwrap_or(u128::MAX),
                    limit: MAX_DIMENSION,
                })
            }
        };

        let m = params.n_bins;
        let levels = params.cutoff + 1;
        let strides: Vec<usize> = (0..m).map(|k| levels.pow(k as u32)).collect();
        let delta = params.bin_width;
        let weights: Vec<Vec<f64>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|j| match params.weighting {
                        KernelWeighting::Midpoint => {
                            params
                                .kernel
                                .symmetric_unchecked((k as f64 - j as f64) * delta)
                                * delta
                        }
                        KernelWeighting::Instantaneous => {
                            if j == k {
                                2.0
                            } else {
                                0.0
                            }
                        }
                    })
                    .collect()
            })
            .collect();

        let inv_sqrt_delta = 1.0 / delta.sqrt();
        let lowering: Vec<Operator> = strides
            .iter()
            .map(|&stride| {
                let mut tri = TriMat::new((dim, dim));
                for state in 0..dim {
                    let n = (state / stride) % levels;
                    if n > 0 {
                        tri.add_triplet(
                            state - stride,
                            state,
                            Complex64::new((n as f64).sqrt() * inv_sqrt_delta, 0.0),
                        );
                    }
                }
                tri.to_csr()
            })
            .collect();
        let raising: Vec<Operator> = lowering.iter().map(adjoint).collect();
        let density: Vec<Operator> = raising.iter().zip(&lowering).map(|(r, l)| r * l).collect();

        let mut q_ops = Vec::with_capacity(m);
        for row in &weights {
            let mut q: Operator = CsMat::zero((dim, dim));
            for (w, n) in row.iter().zip(&density) {
                if *w != 0.0 {
                    q = &q + &scaled(n, Complex64::new(*w, 0.0));
                }
            }
            q_ops.push(q);
        }
        let q_diag = q_ops
            .iter()
            .map(|q| {
                let mut d = vec![0.0; dim];
                for (v, (r, c)) in q.iter() {
                    if r == c {
                        d[r] = v.re;
                    }
                }
                d
            })
            .collect();

        Ok(Self {
            params,
            dim,
            strides,
            weights,
            lowering,
            raising,
            density,
            q_ops,
            q_diag,
        })
    }

    pub fn params(&self) -> &FockModelParams {
        &self.params
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// `w_kj`.
    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// `Â_k` before the medium.
    pub fn lowering(&self, k: usize) -> &Operator {
        &self.lowering[k]
    }

    pub fn raising(&self, k: usize) -> &Operator {
        &self.raising[k]
    }

    /// `n̂_k = Â⁺_k Â_k`.
    pub fn density(&self, k: usize) -> &Operator {
        &self.density[k]
    }

    /// `Q_k` as assembled from operator products.
    pub fn q_operator(&self, k: usize) -> &Operator {
        &self.q_ops[k]
    }

    pub fn occupation(&self, state: usize, k: usize) -> usize {
        (state / self.strides[k]) % (self.params.cutoff + 1)
    }

    pub fn is_protected(&self, state: usize) -> bool {
        (0..self.params.n_bins).all(|k| self.occupation(state, k) + 2 <= self.params.cutoff)
    }

    /// Largest `|entry|` with row and column in the protected subspace.
    pub fn protected_norm(&self, op: &Operator) -> f64 {
        op.iter()
            .filter(|(_, (r, c))| self.is_protected(*r) && self.is_protected(*c))
            .map(|(v, _)| v.norm())
            .fold(0.0, f64::max)
    }

    /// Largest off-diagonal magnitude among the `Q_k`.
    pub fn q_off_diagonal(&self) -> f64 {
        self.q_ops
            .iter()
            .flat_map(|q| q.iter().filter(|(_, (r, c))| r != c).map(|(v, _)| v.norm()))
            .fold(0.0, f64::max)
    }

    /// Product coherent state on the truncated space and its discarded probability.
    pub fn coherent_state(&self, alphas: &[Complex64]) -> (Vec<Complex64>, f64) {
        let per_bin: Vec<(Vec<Complex64>, f64)> = alphas
            .iter()
            .map(|&a| coherent_coefficients(a, self.params.cutoff))
            .collect();
        let psi = (0..self.dim)
            .map(|state| {
                (0..self.params.n_bins)
                    .map(|k| per_bin[k].0[self.occupation(state, k)])
                    .product()
            })
            .collect();
        let kept: f64 = per_bin.iter().map(|(_, tail)| 1.0 - tail).product();
        (psi, 1.0 - kept)
    }

    /// Classical mean of `Q_k`: `Σ_j w_kj |α_j|²/Δ`.
    pub fn q_mean(&self, k: usize, alphas: &[Complex64]) -> f64 {
        self.weights[k]
            .iter()
            .zip(alphas)
            .map(|(w, a)| w * a.norm_sqr())
            .sum::<f64>()
            / self.params.bin_width
    }

    pub fn propagate(&self) -> Propagated {
        let gamma = self.params.gamma;
        let phase: Vec<Vec<Complex64>> = self
            .q_diag
            .iter()
            .map(|d| {
                d.iter()
                    .map(|&q| Complex64::from_polar(1.0, gamma * q))
                    .collect()
            })
            .collect();
        let annihilation: Vec<Operator> = phase
            .iter()
            .zip(&self.lowering)
            .map(|(p, a)| &diagonal(p) * a)
            .collect();
        let creation = annihilation.iter().map(adjoint).collect();
        Propagated {
            annihilation,
            creation,
            phase,
        }
    }

    /// `max_jk ‖[Â_j(z), Â⁺_k(z)] − δ_jk/Δ‖` on the protected subspace.
    pub fn check_commutator(&self, prop: &Propagated) -> f64 {
        let m = self.params.n_bins;
        let identity: Operator = CsMat::eye(self.dim);
        let mut worst = 0.0f64;
        for j in 0..m {
            for k in 0..m {
                let forward = &prop.annihilation[j] * &prop.creation[k];
                let backward = &prop.creation[k] * &prop.annihilation[j];
                let mut c = &forward - &backward;
                if j == k {
                    c = &c - &scaled(&identity, Complex64::new(1.0 / self.params.bin_width, 0.0));
                }
                worst = worst.max(self.protected_norm(&c));
            }
        }
        worst
    }

    /// Deviations of `Â_j e^{Ô_k} = e^{Ô_k + iγw_kj/Δ} Â_j` and of its conjugate
    /// `e^{Ô_k} Â⁺_j = Â⁺_j e^{Ô_k + iγw_kj/Δ}`.
    pub fn check_permutation(&self, prop: &Propagated) -> PermutationDeviation {
        let m = self.params.n_bins;
        let gamma = self.params.gamma;
        let mut out = PermutationDeviation {
            lowering: 0.0,
            raising: 0.0,
        };
        for k in 0..m {
            let e_k = diagonal(&prop.phase[k]);
            for j in 0..m {
                let shift =
                    Complex64::from_polar(1.0, gamma * self.weights[k][j] / self.params.bin_width);
                let shifted = scaled(&e_k, shift);
                let lhs = &self.lowering[j] * &e_k;
                let rhs = &shifted * &self.lowering[j];
                out.lowering = out.lowering.max(self.protected_norm(&(&lhs - &rhs)));
                let lhs = &e_k * &self.raising[j];
                let rhs = &self.raising[j] * &shifted;
                out.raising = out.raising.max(self.protected_norm(&(&lhs - &rhs)));
            }
        }
        out
    }

    /// `⟨α|e^{Ô_k}|α⟩` two ways: directly on the truncated state, and through the
    /// normal-ordered form `exp{Σ_j [e^{iγw_kj/Δ} − 1]|α_j|²}`.
    pub fn check_normal_ordering(&self, prop: &Propagated) -> NormalOrderingCheck {
        let alphas = &self.params.alphas;
        let (psi, tail) = self.coherent_state(alphas);
        let gamma = self.params.gamma;
        let mut worst = 0.0f64;
        for k in 0..self.params.n_bins {
            let direct: Complex64 = psi
                .iter()
                .zip(&prop.phase[k])
                .map(|(c, e)| c.norm_sqr() * e)
                .sum();
            let exponent: Complex64 = self.weights[k]
                .iter()
                .zip(alphas)
                .map(|(w, a)| {
                    (Complex64::from_polar(1.0, gamma * w / self.params.bin_width) - 1.0)
                        * a.norm_sqr()
                })
                .sum();
            let closed = exponent.exp();
            worst = worst.max((direct - closed).norm() / closed.norm());
        }
        NormalOrderingCheck {
            relative_deviation: worst,
            truncated_probability: tail,
        }
    }

    /// Quadrature covariance `⟨X_j X_k⟩ − ⟨X_j⟩⟨X_k⟩` of the propagated field with
    /// the shot-noise self term `δ_jk/(4Δ)` removed, next to the quasi-static
    /// closed form `¼[−ψ h(τ) sin2Φ + ψ² (h*h)(τ) sin²Φ]`.
    ///
    /// Bin amplitudes keep their magnitudes and take carrier phase `phi`.
    pub fn correlation_from_operators(&self, prop: &Propagated, phi: f64) -> OperatorCorrelation {
        let m = self.params.n_bins;
        let delta = self.params.bin_width;
        let gamma = self.params.gamma;
        let alphas: Vec<Complex64> = self
            .params
            .alphas
            .iter()
            .map(|a| Complex64::from_polar(a.norm(), phi))
            .collect();
        let (psi, _) = self.coherent_state(&alphas);

        let quadratures: Vec<Vec<Complex64>> = (0..m)
            .map(|k| {
                let x = scaled(
                    &(&prop.annihilation[k] + &prop.creation[k]),
                    Complex64::new(0.5, 0.0),
                );
                apply(&x, &psi)
            })
            .collect();
        let means: Vec<f64> = quadratures.iter().map(|v| inner(&psi, v).re).collect();
        let total_phase: Vec<f64> = (0..m)
            .map(|k| phi + gamma * self.q_mean(k, &alphas))
            .collect();

        let mut smooth = vec![vec![0.0; m]; m];
        let mut reference = vec![vec![0.0; m]; m];
        for j in 0..m {
            for k in 0..m {
                let cov = inner(&quadratures[j], &quadratures[k]).re - means[j] * means[k];
                smooth[j][k] = cov - if j == k { 0.25 / delta } else { 0.0 };

                let psi_jk = 2.0 * gamma * alphas[j].norm() * alphas[k].norm() / delta;
                let big_phi = 0.5 * (total_phase[j] + total_phase[k]);
                let (h, hh) = self.reference_kernels(j, k);
                let s = big_phi.sin();
                reference[j][k] =
                    0.25 * (-psi_jk * h * (2.0 * big_phi).sin() + psi_jk * psi_jk * hh * s * s);
            }
        }
        let scale = reference
            .iter()
            .flatten()
            .fold(0.0f64, |a, b| a.max(b.abs()));
        let diff = smooth
            .iter()
            .flatten()
            .zip(reference.iter().flatten())
            .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
        let relative_deviation = if scale > 0.0 { diff / scale } else { diff };
        OperatorCorrelation {
            smooth,
            reference,
            relative_deviation,
        }
    }

    fn reference_kernels(&self, j: usize, k: usize) -> (f64, f64) {
        let lag = (k as f64 - j as f64) * self.params.bin_width;
        match self.params.weighting {
            KernelWeighting::Midpoint => {
                let kern = &self.params.kernel;
                (
                    kern.symmetric_unchecked(lag),
                    kern.autoconvolution(lag).unwrap_or(0.0),
                )
            }
            KernelWeighting::Instantaneous => {
                let d = self.params.bin_width;
                if j == k {
                    (2.0 / d, 4.0 / d)
                } else {
                    (0.0, 0.0)
                }
            }
        }
    }

    /// `max_k |⟨n̂_k(z)⟩ − ⟨n̂_k⟩|` in the model's coherent state.
    pub fn check_photon_number(&self, prop: &Propagated) -> f64 {
        let (psi, _) = self.coherent_state(&self.params.alphas);
        (0..self.params.n_bins)
            .map(|k| {
                let before = inner(&psi, &apply(&self.density[k], &psi)).re;
                let evolved = &prop.creation[k] * &prop.annihilation[k];
                let after = inner(&psi, &apply(&evolved, &psi)).re;
                (after - before).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Every check with its pass threshold, evaluated at carrier phase `phi`.
    pub fn verification_report(&self, phi: f64) -> Vec<CheckRecord> {
        let prop = self.propagate();
        let perm = self.check_permutation(&prop);
        let normal = self.check_normal_ordering(&prop);
        let corr = self.correlation_from_operators(&prop, phi);
        vec![
            CheckRecord::new("q_diagonal", self.q_off_diagonal(), 0.0),
            CheckRecord::new(
                "commutator",
                self.check_commutator(&prop),
                COMMUTATOR_CONTRACT,
            ),
            CheckRecord::new("permutation_lowering", perm.lowering, PERMUTATION_CONTRACT),
            CheckRecord::new("permutation_raising", perm.raising, PERMUTATION_CONTRACT),
            CheckRecord::new(
                "normal_ordering",
                normal.relative_deviation,
                NORMAL_ORDERING_CONTRACT,
            ),
            CheckRecord::new(
                "correlation",
                corr.relative_deviation,
                correlation_contract(self.params.gamma),
            ),
            CheckRecord::new(
                "photon_number",
                self.check_photon_number(&prop),
                PHOTON_NUMBER_CONTRACT,
            ),
        ]
    }
}

pub const COMMUTATOR_CONTRACT: f64 = 1e-12;
pub const PERMUTATION_CONTRACT: f64 = 1e-12;
pub const NORMAL_ORDERING_CONTRACT: f64 = 1e-6;
pub const PHOTON_NUMBER_CONTRACT: f64 = 1e-13;

/// Relative agreement expected between operator and closed-form correlations:
/// linear in `γ`, `5e-3` at `γ = 1e-3`.
pub fn correlation_contract(gamma: f64) -> f64 {
    5.0 * gamma.abs().max(1e-3)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationDeviation {
    pub lowering: f64,
    pub raising: f64,
}

impl PermutationDeviation {
    pub fn max(&self) -> f64 {
        self.lowering.max(self.raising)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalOrderingCheck {
    pub relative_deviation: f64,
    /// Coherent-state probability lost to the cutoff; large values void the comparison.
    pub truncated_probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCorrelation {
    pub smooth: Vec<Vec<f64>>,
    pub reference: Vec<Vec<f64>>,
    pub relative_deviation: f64,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub deviation: f64,
    pub contract: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(check: &str, deviation: f64, contract: f64) -> Self {
        Self {
            check: check.to_string(),
            deviation,
            contract,
            pass: deviation <= contract,
        }
    }
}
