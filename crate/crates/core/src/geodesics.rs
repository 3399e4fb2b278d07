//! Geodesic structure of polytope Hilbert geometries.
//!
//! Straight chords are always geodesics. A piecewise-linear path is
//! certified geodesic by checking additivity `h(a,b) + h(b,c) = h(a,c)` on
//! sampled monotone triples. Rays are followed leg by leg and continued
//! along their final leg, using the closed-form inverse of the cross ratio.

use rayon::prelude::*;

use crate::domain::{Point, Polytope};
use crate::error::{Error, Result};
use crate::metric::hilbert_distance;
use crate::real::{self, real, to_f64, Mat, Real};

/// Relative additivity tolerance for certification.
pub const CERTIFY_TOL: f64 = 1e-7;

/// Smoothing window for the tail-diameter monotonicity check.
pub const TAIL_SMOOTHING: usize = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub anchors: Vec<Point>,
    pub certified: bool,
    /// Worst relative additivity defect over the checked triples.
    pub max_defect: f64,
    pub triples_checked: usize,
}

#[derive(Clone, Debug)]
pub struct RayDiagnostics {
    /// `(arclength, point)` pairs, arclength strictly increasing.
    pub samples: Vec<(f64, Point)>,
    /// Euclidean diameter of the tail `s >= s_max (1 - 2^-k)`, `k = 1, 2, ...`
    pub tail_diameters: Vec<f64>,
    pub limit_estimate: Point,
    pub converged: bool,
}

impl RayDiagnostics {
    /// Trailing moving average of the tail diameters.
    pub fn smoothed_tail_diameters(&self) -> Vec<f64> {
        let d = &self.tail_diameters;
        (0..d.len())
            .map(|i| {
                let lo = (i + 1).saturating_sub(TAIL_SMOOTHING);
                d[lo..=i].iter().sum::<f64>() / (i + 1 - lo) as f64
            })
            .collect()
    }

    pub fn tails_decreasing(&self) -> bool {
        self.smoothed_tail_diameters()
            .windows(2)
            .all(|w| w[1] <= w[0] + 1e-12)
    }

    pub fn final_tail_diameter(&self) -> f64 {
        self.tail_diameters.last().copied().unwrap_or(f64::INFINITY)
    }
}

/// Forward and backward diagnostics of a complete geodesic.
#[derive(Clone, Debug)]
pub struct CompleteDiagnostics {
    pub forward: RayDiagnostics,
    pub backward: RayDiagnostics,
    /// Distinct limit points (at `1e-3 * diameter`).
    pub accumulation_points: Vec<Point>,
}

fn unit(direction: &[Real]) -> Result<Vec<Real>> {
    let n = real::norm(direction);
    if n.hi() <= 0.0 || !n.hi().is_finite() {
        return Err(Error::InvalidArgument("direction must be nonzero".into()));
    }
    Ok(direction.iter().map(|c| *c / n).collect())
}

/// Point at Hilbert distance `s` from `x` along `direction`.
///
/// With `a = t_plus`, `b = -t_minus` for the ray `x + t u`, the target
/// parameter solves `e^s = a (t + b) / ((a - t) b)`, giving
/// `a - t = a e^-s (a + b) / (a e^-s + b)`.
pub fn point_at_distance(domain: &Polytope, x: &Point, direction: &[f64], s: f64) -> Result<Point> {
    if direction.len() != domain.dim() {
        return Err(Error::DimensionMismatch {
            expected: domain.dim(),
            got: direction.len(),
        });
    }
    if !direction.iter().all(|c| c.is_finite()) {
        return Err(Error::InvalidArgument("direction must be finite".into()));
    }
    let d: Vec<Real> = direction.iter().copied().map(real).collect();
    point_at_distance_real(domain, x, &d, s)
}

pub(crate) fn point_at_distance_real(
    domain: &Polytope,
    x: &Point,
    direction: &[Real],
    s: f64,
) -> Result<Point> {
    domain.require_interior(x)?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "distance must be >= 0, got {s}"
        )));
    }
    let u = unit(direction)?;
    if s == 0.0 {
        return Ok(x.clone());
    }
    let (t_minus, t_plus) = domain.clip(x.coords(), &u);
    let (a, b) = (t_plus, -t_minus);
    let e = real((-s).exp());
    let t = if s < 1.0 {
        a * b * real(-(-s).exp_m1()) / (a * e + b)
    } else {
        a - a * e * (a + b) / (a * e + b)
    };
    Ok(Point::from_reals(real::axpy(x.coords(), t, &u)))
}

/// Whether the straight segment is the only geodesic between `x` and `y`.
///
/// Not unique iff the chord endpoints lie in relative interiors of boundary
/// segments that are coplanar but not collinear. With `V1`, `V2` the
/// tangent spaces of the minimal faces at `x_bar`, `y_bar` and `c` the chord
/// direction, that happens iff both are nontrivial and
/// `V2 ∩ (span(c) + V1) != 0`.
pub fn is_unique_geodesic(domain: &Polytope, x: &Point, y: &Point) -> Result<bool> {
    let n = domain.dim();
    if n > 3 {
        return Err(Error::DimensionUnsupported {
            what: "geodesic uniqueness test",
            dim: n,
            max: 3,
        });
    }
    let chord = domain.chord(x, y)?;
    if n == 1 {
        return Ok(true);
    }
    let (xb, yb) = chord.boundary_pair(domain);
    let tangent = |facets: &std::collections::BTreeSet<usize>| -> Vec<Vec<Real>> {
        let rows: Vec<Vec<Real>> = facets
            .iter()
            .map(|&i| domain.facets()[i].normal().to_vec())
            .collect();
        let m = if rows.is_empty() {
            Mat::zeros(0, n)
        } else {
            Mat::from_rows(&rows)
        };
        m.null_space(1e-9)
            .into_iter()
            .map(|v| unit(&v).expect("null space vectors are nonzero"))
            .collect()
    };
    let v1 = tangent(&xb.active_facets);
    let v2 = tangent(&yb.active_facets);
    if v1.is_empty() || v2.is_empty() {
        return Ok(true);
    }
    let c = unit(&real::sub(y.coords(), x.coords()))?;
    let mut rows = vec![c];
    rows.extend(v1);
    let w = rows.len();
    rows.extend(v2.iter().cloned());
    Ok(Mat::from_rows(&rows).rank(1e-9) == w + v2.len())
}

fn path_points(anchors: &[Point], samples_per_leg: usize) -> Vec<Point> {
    let mut pts = Vec::with_capacity((anchors.len() - 1) * samples_per_leg + 1);
    for leg in anchors.windows(2) {
        for j in 0..samples_per_leg {
            pts.push(leg[0].lerp(&leg[1], j as f64 / samples_per_leg as f64));
        }
    }
    pts.push(anchors[anchors.len() - 1].clone());
    pts
}

/// Certifies a piecewise-linear path by additivity on all monotone triples
/// of `samples_per_leg` points per leg.
pub fn certify_geodesic(
    domain: &Polytope,
    anchors: &[Point],
    samples_per_leg: usize,
) -> Result<GeodesicPath> {
    if anchors.len() < 2 || samples_per_leg == 0 {
        return Err(Error::InvalidArgument(
            "a path needs at least two anchors and one sample per leg".into(),
        ));
    }
    for a in anchors {
        domain.require_interior(a)?;
    }
    if anchors.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::CoincidentPoints);
    }
    let pts = path_points(anchors, samples_per_leg);
    let m = pts.len();
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| {
                    if j <= i {
                        0.0
                    } else {
                        hilbert_distance(domain, &pts[i], &pts[j]).map_or(f64::NAN, f64::from)
                    }
                })
                .collect()
        })
        .collect();
    let mut max_defect = 0.0_f64;
    let mut triples = 0;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let defect = (rows[i][j] + rows[j][k] - rows[i][k]).abs() / (1.0 + rows[i][k]);
                max_defect = max_defect.max(if defect.is_nan() {
                    f64::INFINITY
                } else {
                    defect
                });
                triples += 1;
            }
        }
    }
    Ok(GeodesicPath {
        anchors: anchors.to_vec(),
        certified: triples == 0 || max_defect <= CERTIFY_TOL,
        max_defect,
        triples_checked: triples,
    })
}

/// Anchors `p + reach (a - p), p, p + reach (b - p)` of a path bent at `p`.
pub fn broken_path(p: &Point, a: &Point, b: &Point, reach: f64) -> Vec<Point> {
    vec![p.lerp(a, reach), p.clone(), p.lerp(b, reach)]
}

fn on_segment(domain: &Polytope, x: &Point, y: &Point, z: &Point) -> bool {
    let d = real::sub(z.coords(), y.coords());
    let v = real::sub(x.coords(), y.coords());
    let dd = real::dot(&d, &d);
    if dd.hi() == 0.0 {
        return x == y;
    }
    let lambda = real::dot(&v, &d) / dd;
    let resid = real::norm_f64(&real::sub(&v, &real::scale(&d, lambda)));
    let l = to_f64(lambda);
    resid <= 1e-12 * domain.diameter() && (-1e-12..=1.0 + 1e-12).contains(&l)
}

/// The two boundary-segment conditions at a geodesic breakpoint `y`:
/// `([xi_yx, xi_zy] ⊂ ∂D, [xi_xy, xi_yz] ⊂ ∂D)`.
pub fn breakpoint_segments(
    domain: &Polytope,
    x: &Point,
    y: &Point,
    z: &Point,
) -> Result<(bool, bool)> {
    let hxy = hilbert_distance(domain, x, y)?.value();
    let hyz = hilbert_distance(domain, y, z)?.value();
    let hxz = hilbert_distance(domain, x, z)?.value();
    let defect = (hxy + hyz - hxz).abs();
    if defect > CERTIFY_TOL * (1.0 + hxz) {
        return Err(Error::NotAGeodesicTriple(format!(
            "additivity defect {defect:e}"
        )));
    }
    if on_segment(domain, x, y, z) {
        return Err(Error::NotAGeodesicTriple("x lies on [y, z]".into()));
    }
    let c1 = domain.chord(x, y)?;
    let c2 = domain.chord(y, z)?;
    let (xi_xy, xi_yx) = c1.boundary_pair(domain);
    let (xi_yz, xi_zy) = c2.boundary_pair(domain);
    Ok((
        domain.segment_in_boundary(&xi_yx, &xi_zy)?,
        domain.segment_in_boundary(&xi_xy, &xi_yz)?,
    ))
}

/// Both breakpoint conditions hold.
pub fn verify_breakpoint_condition(
    domain: &Polytope,
    x: &Point,
    y: &Point,
    z: &Point,
) -> Result<bool> {
    let (a, b) = breakpoint_segments(domain, x, y, z)?;
    Ok(a && b)
}

/// Samples the ray starting at the first anchor, following the path and
/// then its final leg, at arclengths `0, step, ..., s_max`.
pub fn ray_diagnostics(
    domain: &Polytope,
    path: &GeodesicPath,
    s_max: f64,
    step: f64,
) -> Result<RayDiagnostics> {
    if !path.certified {
        return Err(Error::NotCertified);
    }
    if !(step > 0.0 && s_max >= step && s_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < step <= s_max, got step {step}, s_max {s_max}"
        )));
    }
    let anchors = &path.anchors;
    let legs: Vec<Vec<Real>> = anchors
        .windows(2)
        .map(|w| real::sub(w[1].coords(), w[0].coords()))
        .collect();
    let mut starts = vec![0.0];
    for w in anchors.windows(2) {
        let l = hilbert_distance(domain, &w[0], &w[1])?.value();
        starts.push(starts.last().unwrap() + l);
    }
    let last = legs.len() - 1;
    // Leg index and its starting point for arclength s.
    let locate = |s: f64| -> (usize, &Point, f64) {
        match (0..last).find(|&i| s < starts[i + 1]) {
            Some(i) => (i, &anchors[i], s - starts[i]),
            None => (last, &anchors[last], s - starts[last]),
        }
    };
    let count = (s_max / step + 1e-9).floor() as usize;
    let samples: Vec<(f64, Point)> = (0..=count)
        .into_par_iter()
        .map(|j| {
            let s = j as f64 * step;
            let (leg, from, rest) = locate(s);
            point_at_distance_real(domain, from, &legs[leg], rest.max(0.0)).map(|p| (s, p))
        })
        .collect::<Result<_>>()?;

    let s_end = samples.last().unwrap().0;
    let mut tail_diameters = Vec::new();
    for k in 1.. {
        let from = s_end * (1.0 - 0.5_f64.powi(k));
        let tail: Vec<&Point> = samples
            .iter()
            .filter(|(s, _)| *s >= from)
            .map(|(_, p)| p)
            .collect();
        if tail.len() < 2 {
            break;
        }
        let mut d = 0.0_f64;
        for (i, a) in tail.iter().enumerate() {
            for b in &tail[i + 1..] {
                d = d.max(a.dist(b));
            }
        }
        tail_diameters.push(d);
    }
    let (leg, _, _) = locate(s_end);
    let limit_estimate = domain.ray_exit(&samples.last().unwrap().1, &legs[leg])?;
    let converged = tail_diameters
        .last()
        .is_some_and(|d| *d <= 1e-3 * domain.diameter());
    Ok(RayDiagnostics {
        samples,
        tail_diameters,
        limit_estimate,
        converged,
    })
}

/// Diagnostics in both directions of the complete geodesic extending a
/// certified path beyond both of its ends.
pub fn complete_geodesic_diagnostics(
    domain: &Polytope,
    path: &GeodesicPath,
    s_max: f64,
    step: f64,
) -> Result<CompleteDiagnostics> {
    let forward = ray_diagnostics(domain, path, s_max, step)?;
    let mut reversed = path.clone();
    reversed.anchors.reverse();
    let backward = ray_diagnostics(domain, &reversed, s_max, step)?;
    let mut accumulation_points = vec![forward.limit_estimate.clone()];
    if backward.limit_estimate.dist(&forward.limit_estimate) > 1e-3 * domain.diameter() {
        accumulation_points.push(backward.limit_estimate.clone());
    }
    Ok(CompleteDiagnostics {
        forward,
        backward,
        accumulation_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Location;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec())
    }

    #[test]
    fn point_at_distance_examples() {
        let iv = Polytope::unit_interval();
        let x = p(&[0.5]);
        assert_eq!(point_at_distance(&iv, &x, &[1.0], 0.0).unwrap(), x);
        let y = point_at_distance(&iv, &x, &[1.0], 3f64.ln()).unwrap();
        assert!((y.to_f64()[0] - 0.75).abs() < 1e-15);
        let y = point_at_distance(&iv, &x, &[-2.0], 3f64.ln()).unwrap();
        assert!((y.to_f64()[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn far_points_stay_resolvable() {
        let sq = Polytope::unit_square();
        let x = p(&[0.3, 0.6]);
        for s in [20.0, 30.0, 45.0] {
            let y = point_at_distance(&sq, &x, &[0.6, -0.8], s).unwrap();
            let h = hilbert_distance(&sq, &x, &y).unwrap().value();
            assert!((h - s).abs() <= 1e-12 * (1.0 + s), "s={s} h={h}");
        }
    }

    #[test]
    fn uniqueness_in_square_and_triangle() {
        let sq = Polytope::unit_square();
        assert!(!is_unique_geodesic(&sq, &p(&[0.25, 0.5]), &p(&[0.75, 0.5])).unwrap());
        assert!(is_unique_geodesic(&sq, &p(&[0.25, 0.25]), &p(&[0.75, 0.75])).unwrap());
        let t = Polytope::unit_triangle();
        // a chord through a vertex is always unique
        assert!(is_unique_geodesic(&t, &p(&[0.25, 0.25]), &p(&[0.625, 0.125])).unwrap());
        assert!(!is_unique_geodesic(&t, &p(&[0.1, 0.2]), &p(&[0.3, 0.35])).unwrap());
    }

    #[test]
    fn uniqueness_in_cube() {
        let c = Polytope::unit_cube();
        // endpoints interior to opposite faces: not unique
        assert!(!is_unique_geodesic(&c, &p(&[0.2, 0.5, 0.5]), &p(&[0.8, 0.5, 0.5])).unwrap());
        // main diagonal through two vertices: unique
        assert!(is_unique_geodesic(&c, &p(&[0.2, 0.2, 0.2]), &p(&[0.7, 0.7, 0.7])).unwrap());
        // chord from the edge x=y=0 to the parallel edge x=y=1: edges are
        // parallel and distinct, hence coplanar and not collinear
        assert!(!is_unique_geodesic(&c, &p(&[0.25, 0.25, 0.3]), &p(&[0.75, 0.75, 0.6])).unwrap());
        // from edge {x=0,y=0} to edge {x=1,z=1}: skew edges, not coplanar
        // with the chord
        let a = p(&[0.0, 0.0, 0.4]);
        let b = p(&[1.0, 0.6, 1.0]);
        let x = a.lerp(&b, 0.3);
        let y = a.lerp(&b, 0.7);
        assert!(is_unique_geodesic(&c, &x, &y).unwrap());
    }

    #[test]
    fn certify_straight_and_bent() {
        let sq = Polytope::unit_square();
        let straight = certify_geodesic(&sq, &[p(&[0.1, 0.2]), p(&[0.8, 0.7])], 12).unwrap();
        assert!(straight.certified);
        let bent =
            certify_geodesic(&sq, &[p(&[0.5, 0.1]), p(&[0.5, 0.5]), p(&[0.9, 0.5])], 8).unwrap();
        assert!(!bent.certified);
        let t = Polytope::unit_triangle();
        let anchors = broken_path(&p(&[0.25, 0.25]), &p(&[1.0, 0.0]), &p(&[0.0, 1.0]), 0.8);
        let g = certify_geodesic(&t, &anchors, 10).unwrap();
        assert!(g.certified, "defect {}", g.max_defect);
        assert!(g.triples_checked >= 1000);
    }

    #[test]
    fn breakpoint_conditions() {
        let t = Polytope::unit_triangle();
        let a = broken_path(&p(&[0.25, 0.25]), &p(&[1.0, 0.0]), &p(&[0.0, 1.0]), 0.8);
        assert_eq!(
            breakpoint_segments(&t, &a[0], &a[1], &a[2]).unwrap(),
            (true, true)
        );
        let (x, y, z) = (p(&[0.1, 0.1]), p(&[0.3, 0.3]), p(&[0.4, 0.4]));
        assert!(verify_breakpoint_condition(&t, &x, &y, &z).unwrap());
        let sq = Polytope::unit_square();
        assert!(matches!(
            verify_breakpoint_condition(&sq, &p(&[0.5, 0.1]), &p(&[0.5, 0.5]), &p(&[0.9, 0.5])),
            Err(Error::NotAGeodesicTriple(_))
        ));
        assert!(matches!(
            verify_breakpoint_condition(&t, &y, &x, &z),
            Err(Error::NotAGeodesicTriple(_))
        ));
    }

    #[test]
    fn straight_ray_limit() {
        let sq = Polytope::unit_square();
        let path = certify_geodesic(&sq, &[p(&[0.5, 0.5]), p(&[0.75, 0.5])], 4).unwrap();
        let r = ray_diagnostics(&sq, &path, 40.0, 0.25).unwrap();
        assert!(r.converged);
        assert!(r.tails_decreasing());
        assert!(r.limit_estimate.dist(&p(&[1.0, 0.5])) < 1e-12);
        assert!(r.samples.windows(2).all(|w| w[1].0 > w[0].0));
        let last = &r.samples.last().unwrap().1;
        assert!(matches!(sq.locate(last, 1e-15), Location::Boundary(_)));
        assert!(sq.is_interior(last));
    }

    #[test]
    fn uncertified_paths_rejected() {
        let sq = Polytope::unit_square();
        let bent =
            certify_geodesic(&sq, &[p(&[0.5, 0.1]), p(&[0.5, 0.5]), p(&[0.9, 0.5])], 4).unwrap();
        assert!(matches!(
            ray_diagnostics(&sq, &bent, 10.0, 1.0),
            Err(Error::NotCertified)
        ));
    }
}
