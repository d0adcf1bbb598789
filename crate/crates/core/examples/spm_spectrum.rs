//! Quadrature noise spectrum of a single pulse at a few carrier phases.

use kerr_squeeze::spm;
use kerr_squeeze::{Envelope, PulseSpec, ResponseKernel};

fn main() -> kerr_squeeze::Result<()> {
    let pulse = PulseSpec::from_peak_phase(Envelope::gaussian(100.0)?, 2.0, 1e-3)?;
    let kernel = ResponseKernel::new(1.0)?;
    println!(
        "peak density {:.1} photons per tau_r, psi(0) = {}",
        pulse.mean_photon_density(0.0),
        pulse.nonlinear_phase(0.0)
    );
    for w in pulse.warnings(&kernel) {
        println!("warning: {w}");
    }

    let phases = [-0.5, -0.25, 0.0];
    print!("{:>6}", "Omega");
    for phi in phases {
        print!(" {:>12}", format!("phi={phi}"));
    }
    println!(" {:>12}", "optimal");
    for i in 0..=10 {
        let omega = 0.5 * i as f64;
        print!("{omega:>6.2}");
        for phi in phases {
            print!(" {:>12.6}", spm::spectrum(omega, 0.0, phi, &pulse));
        }
        println!(" {:>12.6}", spm::min_spectrum(omega, 0.0, &pulse));
    }
    Ok(())
}
