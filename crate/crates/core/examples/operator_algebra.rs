//! Truncated Fock-space model: operator identities and the correlation function.

use kerr_squeeze::fock::{DiscreteFockModel, FockModelParams};

fn main() -> kerr_squeeze::Result<()> {
    let model = DiscreteFockModel::build(FockModelParams::new(3, 8).gamma(1e-3))?;
    println!(
        "{} bins, cutoff 8: dimension {}",
        model.params().n_bins,
        model.dimension()
    );
    for r in model.verification_report(0.3) {
        println!(
            "{:<22} {:>12.3e}  contract {:<8.0e} {}",
            r.check,
            r.deviation,
            r.contract,
            if r.pass { "ok" } else { "FAIL" }
        );
    }

    let prop = model.propagate();
    let corr = model.correlation_from_operators(&prop, 0.3);
    println!("\nsmooth correlation (operators | closed form):");
    for (row, reference) in corr.smooth.iter().zip(&corr.reference) {
        let cells: Vec<String> = row
            .iter()
            .zip(reference)
            .map(|(a, b)| format!("{a:+.3e}|{b:+.3e}"))
            .collect();
        println!("  {}", cells.join("  "));
    }

    match DiscreteFockModel::build(FockModelParams::new(6, 10)) {
        Ok(_) => println!("unexpectedly built an 11^6 space"),
        Err(e) => println!("\n{e}"),
    }
    Ok(())
}
