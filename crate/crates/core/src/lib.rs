//! Quantum-noise spectra of the squeezed quadrature of ultrashort pulses in a
//! Kerr medium with a finite response time.
//!
//! - [`kernel`]: exponential response and derived kernels
//! - [`pulse`]: envelopes, photon density, nonlinear phase
//! - [`spm`]: single-pulse correlation function, spectrum, optimal phase
//! - [`xpm`]: probe spectrum under cross-phase modulation from a pump
//! - [`fock`]: time-binned truncated Fock-space model for checking operator identities
//! - [`oracle`]: quadrature, sampled Fourier transform and phase search
//! - [`scenario`]: run configurations, exporters and the command-line front end

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod kernel;
pub mod oracle;
pub mod pulse;
pub mod scenario;
pub mod spm;
pub mod xpm;

pub use error::{Error, Result};
pub use kernel::ResponseKernel;
pub use pulse::{CarrierPhase, Envelope, PulseSpec};
pub use spm::{PhaseConvention, SpectrumCurve};
pub use xpm::TwoPulseSpec;
