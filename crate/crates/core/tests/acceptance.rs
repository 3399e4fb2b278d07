//! Acceptance criteria, one line each. Runs as a plain binary so the lines are
//! always printed; exits nonzero if any criterion fails.

mod common;

use std::time::Instant;

use hilbert_core::asymptotics::{
    angle_constant_estimate, gromov_bounded_experiment, gromov_divergence_experiment,
    mutual_distance_experiment, ApproachSequence,
};
use hilbert_core::cone::{
    cone_distance, contraction_ratio, sinkhorn_monitor, PositiveMatrix, PositiveVector,
};
use hilbert_core::geodesics::{
    breakpoint_segments, broken_path, certify_geodesic, complete_geodesic_diagnostics,
    point_at_distance, CERTIFY_TOL,
};
use hilbert_core::simplex::{isometry_defect, SimplexPoint};
use hilbert_core::{hilbert_distance, Error, Point, Polytope, Verdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use common::{planar_and_solid, random_direction, random_interior};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn h(d: &Polytope, x: &Point, y: &Point) -> f64 {
    hilbert_distance(d, x, y).unwrap().value()
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn metric_axioms() -> Outcome {
    let domains = planar_and_solid(&mut rng(1, 0));
    let per = 100_000 / domains.len();
    let mut worst_tri: f64 = 0.0;
    for (di, (name, d)) in domains.iter().enumerate() {
        let res: Vec<Result<f64, String>> = (0..per)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(100 + di as u64, i as u64);
                let (x, y, z) = (
                    random_interior(&mut r, d),
                    random_interior(&mut r, d),
                    random_interior(&mut r, d),
                );
                let (hxy, hyx) = (h(d, &x, &y), h(d, &y, &x));
                if hxy.to_bits() != hyx.to_bits() {
                    return Err(format!("{name}: asymmetric {hxy} vs {hyx}"));
                }
                if x != y && hxy <= 0.0 {
                    return Err(format!("{name}: zero distance between distinct points"));
                }
                let (hyz, hxz) = (h(d, &y, &z), h(d, &x, &z));
                Ok((hxz - hxy - hyz) / hxz.max(1.0))
            })
            .collect();
        for r in res {
            worst_tri = worst_tri.max(r?);
        }
    }
    check(
        worst_tri <= 1e-9,
        format!(
            "{} triples, symmetry exact, worst relative triangle excess {worst_tri:.2e}",
            per * domains.len()
        ),
    )
}

fn random_projective(r: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| if i == j { 1.0 } else { 0.0 } + r.gen_range(-0.35..0.35))
                .collect()
        })
        .collect()
}

fn projective_invariance() -> Outcome {
    let sq = Polytope::unit_square();
    let worst: Vec<Result<f64, String>> = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(2, i);
            let pts: Vec<Point> = (0..200).map(|_| random_interior(&mut r, &sq)).collect();
            let (image, mapped) = loop {
                match sq.apply_projective(&random_projective(&mut r), &pts) {
                    Ok(v) => break v,
                    Err(Error::ImproperTransform | Error::SingularMatrix) => continue,
                    Err(e) => return Err(e.to_string()),
                }
            };
            let mut w: f64 = 0.0;
            for k in 0..100 {
                let (a, b) = (2 * k, 2 * k + 1);
                let before = h(&sq, &pts[a], &pts[b]);
                let after = h(&image, &mapped[a], &mapped[b]);
                w = w.max((after - before).abs() / before.max(f64::MIN_POSITIVE));
            }
            Ok(w)
        })
        .collect();
    let mut m: f64 = 0.0;
    for w in worst {
        m = m.max(w?);
    }
    check(
        m <= 1e-9,
        format!("1000 maps x 100 pairs, worst relative discrepancy {m:.2e}"),
    )
}

fn random_simplex_point(r: &mut ChaCha8Rng, n: usize) -> SimplexPoint {
    let w: Vec<f64> = (0..=n).map(|_| (-6.0 * r.gen::<f64>()).exp()).collect();
    SimplexPoint::normalized(&w).unwrap()
}

fn simplex_isometry() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let w: f64 = (0..10_000u64)
            .into_par_iter()
            .map(|i| {
                let mut r = rng(3 + n as u64, i);
                let (x, y) = (
                    random_simplex_point(&mut r, n),
                    random_simplex_point(&mut r, n),
                );
                let simplex = Polytope::standard_simplex(n);
                let hv = h(&simplex, &x.to_chart(), &y.to_chart());
                isometry_defect(&x, &y).unwrap() / (1.0 + hv)
            })
            .reduce(|| 0.0, f64::max);
        worst = worst.max(w);
    }
    // Oracle: the log-ratio spread, evaluated directly from the weights.
    let mut formula: f64 = 0.0;
    for i in 0..1000u64 {
        let mut r = rng(30, i);
        let n = 1 + (i % 3) as usize;
        let (x, y) = (
            random_simplex_point(&mut r, n),
            random_simplex_point(&mut r, n),
        );
        let ratios: Vec<f64> = x
            .weights()
            .iter()
            .zip(y.weights())
            .map(|(a, b)| (a / b).ln())
            .collect();
        let spread = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let simplex = Polytope::standard_simplex(n);
        formula = formula.max((h(&simplex, &x.to_chart(), &y.to_chart()) - spread).abs());
    }
    check(
        worst <= 1e-9 && formula <= 1e-10,
        format!("3 x 10^4 pairs, worst defect/(1+h) {worst:.2e}; formula oracle on 10^3 pairs {formula:.2e}"),
    )
}

fn mutual_distance() -> Outcome {
    let ks = [10.0, 20.0, 40.0];
    let mut notes = Vec::new();
    let mut ok = true;
    for n in [2, 3] {
        let r = mutual_distance_experiment(n, &ks).map_err(|e| e.to_string())?;
        let bound = r.values.iter().zip(ks).all(|(v, k)| *v >= 2.0 - 10.0 / k);
        let monotone = r.values.windows(2).all(|w| w[1] >= w[0] - 1e-6);
        ok &= bound && monotone;
        notes.push(format!("n={n}: {:?}", r.values));
    }
    check(ok, notes.join("; "))
}

fn chord_additivity() -> Outcome {
    let domains = planar_and_solid(&mut rng(5, 0));
    let worst = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(50, i);
            let d = &domains[i as usize % domains.len()].1;
            let (x, z) = (random_interior(&mut r, d), random_interior(&mut r, d));
            let y = x.lerp(&z, r.gen_range(0.0..1.0));
            let hxz = h(d, &x, &z);
            (h(d, &x, &y) + h(d, &y, &z) - hxz).abs() / (1.0 + hxz)
        })
        .reduce(|| 0.0, f64::max);
    check(
        worst <= 1e-9,
        format!("10^4 collinear triples, worst defect/(1+h) {worst:.2e}"),
    )
}

fn triangle_anchors() -> Vec<Point> {
    broken_path(
        &Point::from([0.25, 0.25]),
        &Point::from([1.0, 0.0]),
        &Point::from([0.0, 1.0]),
        0.8,
    )
}

fn broken_geodesic() -> Outcome {
    let t = Polytope::unit_triangle();
    let path = certify_geodesic(&t, &triangle_anchors(), 10).map_err(|e| e.to_string())?;
    let diag = complete_geodesic_diagnostics(&t, &path, 40.0, 0.25).map_err(|e| e.to_string())?;
    let fwd = diag.forward.limit_estimate.dist(&Point::from([0.0, 1.0]));
    let bwd = diag.backward.limit_estimate.dist(&Point::from([1.0, 0.0]));
    let tails = diag
        .forward
        .final_tail_diameter()
        .max(diag.backward.final_tail_diameter());
    let sq = Polytope::unit_square();
    let bent = broken_path(
        &Point::from([0.5, 0.5]),
        &Point::from([1.0, 0.5]),
        &Point::from([0.5, 1.0]),
        0.8,
    );
    let square = certify_geodesic(&sq, &bent, 10).map_err(|e| e.to_string())?;
    check(
        path.certified
            && path.triples_checked >= 1000
            && path.max_defect <= CERTIFY_TOL
            && fwd <= 1e-3
            && bwd <= 1e-3
            && tails <= 1e-3
            && !square.certified,
        format!(
            "triangle: {} triples, defect {:.2e}; limits off vertices by {fwd:.1e}/{bwd:.1e}, tail {tails:.1e}; square defect {:.3} (rejected: {})",
            path.triples_checked,
            path.max_defect,
            square.max_defect,
            !square.certified
        ),
    )
}

fn breakpoint_condition() -> Outcome {
    let t = Polytope::unit_triangle();
    let a = triangle_anchors();
    // the anchor triple and triples straddling the corner at other depths
    let mut triples = vec![(a[0].clone(), a[1].clone(), a[2].clone())];
    for (s, u) in [(0.3, 0.7), (0.5, 0.5), (0.9, 0.2)] {
        triples.push((a[1].lerp(&a[0], s), a[1].clone(), a[1].lerp(&a[2], u)));
    }
    let mut checked = 0;
    for (x, y, z) in &triples {
        if !certify_geodesic(&t, &[x.clone(), y.clone(), z.clone()], 6)
            .map_err(|e| e.to_string())?
            .certified
        {
            return Err("straddling triple failed certification".into());
        }
        let (s1, s2) = breakpoint_segments(&t, x, y, z).map_err(|e| e.to_string())?;
        if !(s1 && s2) {
            return Err(format!("segments {s1}/{s2} at {:?}", x.to_f64()));
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} certified bent triples, both boundary segments found each time"
    ))
}

fn gromov_bounded() -> Outcome {
    let cases = [
        (Polytope::unit_square(), [0.3, 0.6], [0.0, 0.3], [1.0, 0.7]),
        (Polytope::unit_square(), [0.5, 0.5], [0.0, 0.3], [1.0, 0.7]),
        (
            Polytope::unit_triangle(),
            [0.2, 0.5],
            [0.5, 0.0],
            [0.0, 0.5],
        ),
        (
            Polytope::unit_triangle(),
            [0.3, 0.3],
            [0.7, 0.3],
            [0.0, 0.2],
        ),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (d, p0, x, z) in &cases {
        let xb = d.boundary_point(&Point::from(*x)).unwrap();
        let zb = d.boundary_point(&Point::from(*z)).unwrap();
        let r = gromov_bounded_experiment(d, &Point::from(*p0), &xb, &zb, 60)
            .map_err(|e| e.to_string())?;
        let mut sup = f64::NEG_INFINITY;
        let running: Vec<f64> = r
            .values
            .iter()
            .map(|v| {
                sup = sup.max(*v);
                sup
            })
            .collect();
        let growth = running[59] - running[59 - 15];
        ok &= matches!(r.verdict, Verdict::Bounded { .. }) && growth < 1e-3;
        notes.push(format!("{} growth {growth:.1e}", r.verdict));
    }
    check(ok, notes.join("; "))
}

fn gromov_divergent() -> Outcome {
    let cases = [
        (
            Polytope::unit_square(),
            [0.5, 0.5],
            [0.0, 0.5],
            [0.5, 0.3],
            [0.5, 0.7],
        ),
        (
            Polytope::unit_triangle(),
            [0.3, 0.3],
            [0.0, 0.5],
            [0.3, 0.3],
            [0.2, 0.6],
        ),
        (
            Polytope::unit_triangle(),
            [0.3, 0.3],
            [0.4, 0.6],
            [0.1, 0.1],
            [0.3, 0.2],
        ),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (d, p0, t, a, b) in &cases {
        let tp = Point::from(*t);
        let ca = ApproachSequence::radial(d, &tp, &Point::from(*a)).map_err(|e| e.to_string())?;
        let cb = ApproachSequence::radial(d, &tp, &Point::from(*b)).map_err(|e| e.to_string())?;
        let tb = d.boundary_point(&tp).unwrap();
        let r = gromov_divergence_experiment(d, &Point::from(*p0), &tb, &ca, &cb, 80)
            .map_err(|e| e.to_string())?;
        let from = r.nondecreasing_from(1e-2).unwrap_or(f64::INFINITY);
        ok &= matches!(r.verdict, Verdict::Diverges { k } if k <= 80) && from <= 40.0;
        notes.push(format!("{} nondecreasing from k={from}", r.verdict));
    }
    check(ok, notes.join("; "))
}

fn angle_constant() -> Outcome {
    let cases = [
        (Polytope::unit_square(), Point::from([0.5, 0.5])),
        (Polytope::unit_square(), Point::from([0.2, 0.3])),
        (Polytope::unit_triangle(), Point::from([0.3, 0.3])),
        (
            Polytope::regular_polygon(5, 1.0).unwrap(),
            Point::from([0.1, -0.2]),
        ),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (d, p0) in &cases {
        let a = angle_constant_estimate(d, p0, 128, 32, 42).map_err(|e| e.to_string())?;
        let b = angle_constant_estimate(d, p0, 256, 64, 42).map_err(|e| e.to_string())?;
        let (sa, sb) = (a.metadata.outputs["sup"], b.metadata.outputs["sup"]);
        let bound = b.metadata.outputs["analytic_bound"];
        let change = (sb - sa).abs() / sb;
        ok &= sb.is_finite() && sa <= bound && sb <= bound && change <= 0.05;
        notes.push(format!(
            "sup {sb:.3} <= {bound:.2}, doubling change {:.1}%",
            100.0 * change
        ));
    }
    check(ok, notes.join("; "))
}

fn cone_layer() -> Outcome {
    let agree = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(11, i);
            let n = 2 + (i % 4) as usize;
            let u: Vec<f64> = (0..n)
                .map(|_| (3.0 * r.gen_range(-1.0..1.0f64)).exp())
                .collect();
            let v: Vec<f64> = (0..n)
                .map(|_| (3.0 * r.gen_range(-1.0..1.0f64)).exp())
                .collect();
            let (pu, pv) = (
                PositiveVector::new(u).unwrap(),
                PositiveVector::new(v).unwrap(),
            );
            let c = cone_distance(&pu, &pv).unwrap();
            let (x, y) = (
                SimplexPoint::normalized(pu.entries()).unwrap(),
                SimplexPoint::normalized(pv.entries()).unwrap(),
            );
            let simplex = Polytope::standard_simplex(n - 1);
            (c - h(&simplex, &x.to_chart(), &y.to_chart())).abs()
        })
        .reduce(|| 0.0, f64::max);
    let excess = (0..1000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(12, i);
            let (m, n) = (r.gen_range(2..6), r.gen_range(2..6));
            let a: Vec<Vec<f64>> = (0..m)
                .map(|_| (0..n).map(|_| r.gen_range(0.05..2.0)).collect())
                .collect();
            let a = PositiveMatrix::new(a).unwrap();
            let u = PositiveVector::new((0..n).map(|_| r.gen_range(0.01..5.0)).collect()).unwrap();
            let v = PositiveVector::new((0..n).map(|_| r.gen_range(0.01..5.0)).collect()).unwrap();
            let before = cone_distance(&u, &v).unwrap();
            let after = cone_distance(&a.apply(&u).unwrap(), &a.apply(&v).unwrap()).unwrap();
            after - contraction_ratio(&a) * before
        })
        .reduce(|| f64::NEG_INFINITY, f64::max);
    let a = PositiveMatrix::new(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
    let mut ratios = Vec::new();
    for (rows, cols) in [
        ([0.5, 0.5], [0.5, 0.5]),
        ([0.3, 0.7], [0.6, 0.4]),
        ([0.9, 0.1], [0.2, 0.8]),
    ] {
        let rep = sinkhorn_monitor(
            &a,
            &PositiveVector::new(rows.to_vec()).unwrap(),
            &PositiveVector::new(cols.to_vec()).unwrap(),
            500,
            1e-14,
        )
        .map_err(|e| e.to_string())?;
        ratios.extend(rep.extra[0].1.iter().copied().filter(|x| !x.is_nan()));
    }
    let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
    check(
        agree <= 1e-10 && excess <= 1e-9 && !ratios.is_empty() && max_ratio <= 1.0 / 9.0 + 1e-9,
        format!(
            "simplex agreement {agree:.2e}; contraction excess {excess:.2e}; Sinkhorn {} sweep ratios, max {max_ratio:.4} vs 1/9",
            ratios.len()
        ),
    )
}

fn round_trip() -> Outcome {
    let mut domains = planar_and_solid(&mut rng(13, 0));
    domains.push(("cube", Polytope::unit_cube()));
    let worst = (0..10_000u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(130, i);
            let d = &domains[i as usize % domains.len()].1;
            let x = random_interior(&mut r, d);
            let dir = random_direction(&mut r, d.dim());
            let s = r.gen_range(0.0..30.0);
            let y = point_at_distance(d, &x, &dir, s).unwrap();
            (h(d, &x, &y) - s).abs() / (1.0 + s)
        })
        .reduce(|| 0.0, f64::max);
    check(
        worst <= 1e-10,
        format!("10^4 samples, worst |h - s|/(1+s) {worst:.2e}"),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("metric axioms", metric_axioms),
        ("projective invariance", projective_invariance),
        ("simplex isometry", simplex_isometry),
        ("mutual distance of vertex rays", mutual_distance),
        ("chord additivity", chord_additivity),
        ("triangle broken geodesic", broken_geodesic),
        ("boundary segments at breakpoints", breakpoint_condition),
        ("bounded Gromov products", gromov_bounded),
        ("divergent Gromov products", gromov_divergent),
        ("chord-ratio constant", angle_constant),
        ("cone metric and contraction", cone_layer),
        ("point_at_distance round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
