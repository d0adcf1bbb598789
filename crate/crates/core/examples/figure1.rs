//! Probe spectra for pump/probe ratios 0, 3, 5 and 8, written as CSV.
//!
//! `cargo run --example figure1 -- fixed0 > fig.csv` uses a phase fixed at
//! the zero-frequency optimum instead of optimising at every frequency.

use kerr_squeeze::scenario::{render, Artifact, OutputFormat};
use kerr_squeeze::xpm::{fig1_curves, FIG1_RATIOS};
use kerr_squeeze::PhaseConvention;

fn main() -> kerr_squeeze::Result<()> {
    let convention = match std::env::args().nth(1).as_deref() {
        Some("fixed0") => PhaseConvention::Fixed0,
        _ => PhaseConvention::PerOmega,
    };
    let omegas: Vec<f64> = (0..=100).map(|i| 0.04 * i as f64).collect();
    let curves = fig1_curves(&FIG1_RATIOS, &omegas, convention)?;
    print!("{}", render(&Artifact::Curves(&curves), OutputFormat::Csv));
    for c in &curves {
        let (omega, s) = c.minimum().expect("non-empty");
        eprintln!("ratio {}: min S = {s:.7} at Omega = {omega}", c.ratio);
    }
    Ok(())
}
