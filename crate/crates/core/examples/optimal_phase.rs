//! Closed-form optimal phase against a brute-force search.

use kerr_squeeze::oracle::minimize_phase;
use kerr_squeeze::spm;
use kerr_squeeze::{Envelope, PulseSpec};

fn main() -> kerr_squeeze::Result<()> {
    let pulse = PulseSpec::from_peak_phase(Envelope::Continuous, 2.0, 1e-3)?;
    println!(
        "{:>6} {:>12} {:>14} {:>14}",
        "Omega0", "phi_opt", "S_min", "S_search"
    );
    for i in 0..=8 {
        let omega0 = 0.5 * i as f64;
        let opt = spm::optimal_phase(omega0, 0.0, &pulse);
        let search = minimize_phase(|phi| spm::spectrum(omega0, 0.0, phi, &pulse));
        println!(
            "{omega0:>6.2} {:>12.8} {:>14.10} {:>14.10}",
            opt.phase,
            spm::min_spectrum(omega0, 0.0, &pulse),
            search.value
        );
    }

    let dark = PulseSpec::from_peak_phase(Envelope::Continuous, 0.0, 1e-3)?;
    match spm::try_optimal_phase(0.0, 0.0, &dark) {
        Ok(phi) => println!("unexpected optimum {phi}"),
        Err(e) => println!("\nwithout a nonlinear phase: {e}"),
    }
    Ok(())
}
