//! Rays from the barycentre of a simplex toward its vertices, rescaled by
//! `1/k`, end up pairwise at variation-norm distance 2.

use hilbert_core::asymptotics::mutual_distance_experiment;
use hilbert_core::Result;

fn main() -> Result<()> {
    let ks = [5.0, 10.0, 20.0, 30.0, 40.0];
    for n in 1..=4 {
        let r = mutual_distance_experiment(n, &ks)?;
        let row: Vec<String> = r.values.iter().map(|v| format!("{v:.6}")).collect();
        println!(
            "n = {n}: {}   fitted K = {:.4}",
            row.join("  "),
            r.metadata.outputs["fitted_k_tilde"]
        );
    }
    Ok(())
}
