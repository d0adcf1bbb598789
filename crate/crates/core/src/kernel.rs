//! Exponential response of an inertial Kerr medium and the kernels derived from it.
//!
//! Time arguments of [`ResponseKernel`] are in the caller's time unit. The free
//! functions work in reduced units: lags in units of `tau_r`, frequencies as
//! `Ω = ω·tau_r`.

use serde::{Deserialize, Serialize};

use crate::error::{finite, Error, Result};

/// Causal exponential response `H(t) = exp(-t/tau_r)/tau_r` for `t >= 0`, zero before.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResponseKernel {
    tau_r: f64,
}

impl ResponseKernel {
    pub fn new(tau_r: f64) -> Result<Self> {
        if !(tau_r.is_finite() && tau_r > 0.0) {
            return Err(Error::InvalidInput(format!(
                "response time must be finite and strictly positive, got {tau_r}"
            )));
        }
        Ok(Self { tau_r })
    }

    pub fn tau_r(&self) -> f64 {
        self.tau_r
    }

    /// `H(t)`. Exactly zero for `t < 0`.
    pub fn causal(&self, t: f64) -> Result<f64> {
        let t = finite("t", t)?;
        Ok(self.causal_unchecked(t))
    }

    /// `h(t) = H(|t|)`, the symmetrised kernel entering the mean nonlinear phase.
    pub fn symmetric(&self, t: f64) -> Result<f64> {
        let t = finite("t", t)?;
        Ok(self.causal_unchecked(t.abs()))
    }

    /// Autoconvolution `(h * h)(t) = g(t/tau_r)/tau_r`.
    pub fn autoconvolution(&self, t: f64) -> Result<f64> {
        let t = finite("t", t)?;
        Ok(autocorrelation(t / self.tau_r) / self.tau_r)
    }

    /// Reduced frequency `Ω = ω·tau_r`.
    pub fn reduced_frequency(&self, omega: f64) -> f64 {
        omega * self.tau_r
    }

    #[inline]
    pub(crate) fn causal_unchecked(&self, t: f64) -> f64 {
        if t < 0.0 {
            0.0
        } else {
            (-t / self.tau_r).exp() / self.tau_r
        }
    }

    #[inline]
    pub(crate) fn symmetric_unchecked(&self, t: f64) -> f64 {
        self.causal_unchecked(t.abs())
    }
}

/// `h̃(θ) = exp(-|θ|)`.
#[inline]
pub fn reduced_kernel(theta: f64) -> f64 {
    (-theta.abs()).exp()
}

/// `g(τ) = ∫ h̃(θ) h̃(θ+τ) dθ = (1+|τ|)·exp(-|τ|)`.
#[inline]
pub fn autocorrelation(lag: f64) -> f64 {
    let a = lag.abs();
    (1.0 + a) * (-a).exp()
}

/// Checked variant of [`autocorrelation`].
pub fn eval_g(lag: f64) -> Result<f64> {
    Ok(autocorrelation(finite("lag", lag)?))
}

/// `L(Ω) = 1/(1+Ω²)`; half the Fourier transform of `h̃`.
#[inline]
pub fn lorentzian(omega: f64) -> f64 {
    1.0 / (1.0 + omega * omega)
}

/// Checked variant of [`lorentzian`].
pub fn eval_lorentzian(omega: f64) -> Result<f64> {
    Ok(lorentzian(finite("Omega", omega)?))
}
