//! Envelope shapes and the kernel-weighted photon number they produce.

use kerr_squeeze::{Envelope, PulseSpec, ResponseKernel};

fn main() -> kerr_squeeze::Result<()> {
    let kernel = ResponseKernel::new(1.0)?;
    let shapes = [
        ("gaussian", Envelope::gaussian(20.0)?),
        ("sech", Envelope::sech(20.0)?),
        ("rectangular", Envelope::rectangular(20.0)?),
    ];
    for (name, env) in shapes {
        let pulse = PulseSpec::new(env, 500.0, 1e-3)?;
        println!("{name}:");
        for t in [0.0, 5.0, 9.5, 10.5, 20.0] {
            println!(
                "  t = {t:>5.1}  n = {:>9.3}  q = {:>9.3}  2n = {:>9.3}",
                pulse.mean_photon_density(t),
                pulse.q_mean(t, &kernel)?,
                2.0 * pulse.mean_photon_density(t)
            );
        }
        for w in pulse.warnings(&kernel) {
            println!("  warning: {w}");
        }
    }
    Ok(())
}
