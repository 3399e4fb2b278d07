//! Gromov products along sequences tending to the boundary: bounded when the
//! two limits are not joined by a boundary segment, divergent when the limit
//! is shared.

use hilbert_core::asymptotics::{
    gromov_bounded_experiment, gromov_divergence_experiment, gromov_sequence_experiment,
    ApproachRule, ApproachSequence,
};
use hilbert_core::{ExperimentReport, Point, Polytope, Result};

fn summary(name: &str, r: &ExperimentReport) {
    let tail: Vec<String> = r
        .values
        .iter()
        .rev()
        .take(3)
        .rev()
        .map(|v| format!("{v:.6}"))
        .collect();
    println!("{name:40} {}  last values [{}]", r.verdict, tail.join(", "));
}

fn main() -> Result<()> {
    let square = Polytope::unit_square();
    let p0 = Point::from([0.5, 0.5]);
    let xb = square.boundary_point(&Point::from([0.0, 0.3]))?;
    let zb = square.boundary_point(&Point::from([1.0, 0.7]))?;
    summary(
        "square, opposite sides",
        &gromov_bounded_experiment(&square, &p0, &xb, &zb, 60)?,
    );
    // From the centre both targets are seen in opposite directions, so the
    // product vanishes; an off-centre basepoint gives a positive bound.
    let q0 = Point::from([0.3, 0.6]);
    summary(
        "square, opposite sides, off-centre p0",
        &gromov_bounded_experiment(&square, &q0, &xb, &zb, 60)?,
    );

    let triangle = Polytope::unit_triangle();
    let c = triangle.centroid();
    let a = triangle.boundary_point(&Point::from([0.5, 0.0]))?;
    let b = triangle.boundary_point(&Point::from([0.0, 0.5]))?;
    summary(
        "triangle, two sides",
        &gromov_bounded_experiment(&triangle, &c, &a, &b, 60)?,
    );

    let t = Point::from([0.0, 0.5]);
    let target = square.boundary_point(&t)?;
    let ca = ApproachSequence::radial(&square, &t, &Point::from([0.5, 0.3]))?;
    let cb = ApproachSequence::radial(&square, &t, &Point::from([0.5, 0.7]))?;
    let r = gromov_divergence_experiment(&square, &p0, &target, &ca, &cb, 80)?;
    summary("square, common target, radial", &r);

    let tangential = ApproachSequence::new(
        &square,
        &t,
        ApproachRule::Tangential {
            inward: vec![1.0, 0.0],
            tangent: vec![0.0, 0.25],
        },
    )?;
    let r = gromov_divergence_experiment(&square, &p0, &target, &ca, &tangential, 80)?;
    summary("square, common target, tangential", &r);

    let far = ApproachSequence::radial(&square, &Point::from([1.0, 0.5]), &p0)?;
    let r = gromov_sequence_experiment(&square, &p0, &ca, &far, 60)?;
    summary("square, distinct targets (contrast)", &r);
    Ok(())
}
