//! A pump pulse degrades the probe's best squeezing.

use kerr_squeeze::xpm;
use kerr_squeeze::{Envelope, TwoPulseSpec};

fn main() -> kerr_squeeze::Result<()> {
    let env = Envelope::gaussian(100.0)?;
    println!(
        "{:>6} {:>10} {:>10} {:>12} {:>12}",
        "ratio", "psi1", "cross", "S_min(0)", "S_min(2)"
    );
    for ratio in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        let pair = TwoPulseSpec::with_ratio(env.clone(), 2.0, 1e-3, 5e-4, ratio)?;
        let ph = pair.phases(0.0);
        println!(
            "{ratio:>6.1} {:>10.4} {:>10.4} {:>12.8} {:>12.8}",
            ph.self_phase,
            ph.cross_pump,
            xpm::min_spectrum(0.0, 0.0, &pair),
            xpm::min_spectrum(2.0, 0.0, &pair)
        );
    }
    Ok(())
}
