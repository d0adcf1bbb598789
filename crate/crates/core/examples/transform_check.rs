//! The spectrum as a numerical Fourier transform of the correlation function.

use kerr_squeeze::oracle::{dft_spectrum, symmetric_lags};
use kerr_squeeze::spm::{correlation_smooth, spectral_density};

fn main() -> kerr_squeeze::Result<()> {
    let (psi, total_phase) = (1.5, 0.4);
    let lags = symmetric_lags(40.0, 0.01)?;
    let r: Vec<f64> = lags
        .iter()
        .map(|&l| correlation_smooth(psi, total_phase, l))
        .collect();
    let omegas: Vec<f64> = (0..=8).map(f64::from).collect();
    let numeric = dft_spectrum(&lags, &r, &omegas)?;
    println!(
        "{:>6} {:>14} {:>14} {:>10}",
        "Omega", "closed form", "transform", "diff"
    );
    for (&om, s) in omegas.iter().zip(numeric) {
        let exact = spectral_density(psi, total_phase, om);
        println!("{om:>6.1} {exact:>14.10} {s:>14.10} {:>10.2e}", s - exact);
    }
    Ok(())
}
