//! The chord-ratio constant: for `z` on the boundary, `z'` on `[p0, z)` and a
//! chord `[x, y]` through `z'`, the ratio `|z z'| / |z' x|` stays bounded.

use hilbert_core::asymptotics::angle_constant_estimate;
use hilbert_core::{Point, Polytope, Result};

fn main() -> Result<()> {
    let domains = [
        ("square", Polytope::unit_square(), Point::from([0.5, 0.5])),
        (
            "square, off-centre",
            Polytope::unit_square(),
            Point::from([0.2, 0.3]),
        ),
        (
            "triangle",
            Polytope::unit_triangle(),
            Point::from([0.3, 0.3]),
        ),
        ("cube", Polytope::unit_cube(), Point::from([0.5, 0.5, 0.5])),
    ];
    for (name, domain, p0) in &domains {
        let coarse = angle_constant_estimate(domain, p0, 128, 32, 7)?;
        let fine = angle_constant_estimate(domain, p0, 256, 64, 7)?;
        let o = &fine.metadata.outputs;
        println!(
            "{name:20} sup {:.4} (coarse {:.4}), analytic bound {:.2}, delta {:.4}",
            o["sup"], coarse.metadata.outputs["sup"], o["analytic_bound"], o["delta"]
        );
    }
    Ok(())
}
