//! Response kernel, its autocorrelation and the Lorentzian factor.

use kerr_squeeze::kernel::{autocorrelation, lorentzian, reduced_kernel};
use kerr_squeeze::ResponseKernel;

fn main() -> kerr_squeeze::Result<()> {
    let kernel = ResponseKernel::new(2.0)?;
    println!(
        "{:>6} {:>12} {:>12} {:>12}",
        "t", "H(t)", "h(t)", "(h*h)(t)"
    );
    for i in -4..=4 {
        let t = i as f64;
        println!(
            "{t:>6.1} {:>12.6} {:>12.6} {:>12.6}",
            kernel.causal(t)?,
            kernel.symmetric(t)?,
            kernel.autoconvolution(t)?
        );
    }

    println!("\nreduced units:");
    for theta in [0.0, 0.5, 1.0, 2.0] {
        println!(
            "  h~({theta}) = {:.6}  g({theta}) = {:.6}",
            reduced_kernel(theta),
            autocorrelation(theta)
        );
    }
    for omega in [0.0, 1.0, 3.0] {
        println!("  L({omega}) = {:.6}", lorentzian(omega));
    }
    Ok(())
}
