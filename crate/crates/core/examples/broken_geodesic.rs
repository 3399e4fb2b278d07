//! A geodesic with a corner: in the triangle, the path from near one vertex
//! through an interior point to near another vertex is length-minimising.
//! In the square the same construction is not.

use hilbert_core::geodesics::{
    breakpoint_segments, broken_path, certify_geodesic, complete_geodesic_diagnostics, CERTIFY_TOL,
};
use hilbert_core::{Point, Polytope, Result};

fn main() -> Result<()> {
    let triangle = Polytope::unit_triangle();
    let p = Point::from([0.25, 0.25]);
    let anchors = broken_path(&p, &Point::from([1.0, 0.0]), &Point::from([0.0, 1.0]), 0.8);
    let path = certify_geodesic(&triangle, &anchors, 12)?;
    println!(
        "triangle: certified = {} (worst defect {:.2e} over {} triples, tolerance {CERTIFY_TOL:e})",
        path.certified, path.max_defect, path.triples_checked
    );
    let (a, b) = breakpoint_segments(&triangle, &anchors[0], &anchors[1], &anchors[2])?;
    println!("boundary segments at the corner: {a} and {b}");

    let diag = complete_geodesic_diagnostics(&triangle, &path, 40.0, 0.25)?;
    for (name, ray) in [("forward", &diag.forward), ("backward", &diag.backward)] {
        println!(
            "{name} ray: limit {:?}, final tail diameter {:.2e}, converged {}",
            ray.limit_estimate.to_f64(),
            ray.final_tail_diameter(),
            ray.converged
        );
    }

    let square = Polytope::unit_square();
    let q = Point::from([0.5, 0.5]);
    let bent = broken_path(&q, &Point::from([1.0, 0.5]), &Point::from([0.5, 1.0]), 0.8);
    let path = certify_geodesic(&square, &bent, 12)?;
    println!(
        "square: certified = {} (worst defect {:.3})",
        path.certified, path.max_defect
    );
    Ok(())
}
