//! Numerical experiments on the asymptotic geometry of polytopal Hilbert
//! geometries: Gromov products along sequences tending to the boundary, the
//! chord-ratio constant, and the mutual distance of vertex rays in a simplex.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{BoundaryPoint, Point, Polytope, EPS_GEOM};
use crate::error::{Error, Result};
use crate::geodesics::point_at_distance_real;
use crate::metric::{gromov_product, hilbert_distance};
use crate::real::{self, real, to_f64, Real};
use crate::report::{ExperimentParams, ExperimentReport, ReportMetadata, Verdict, VerdictRules};
use crate::simplex::{log_map_point, variation};

/// How the k-th point (`k >= 1`) of an approach sequence is produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum ApproachRule {
    /// `target + 2^-k (base - target)`.
    Radial { base: Vec<f64> },
    /// `target + 2^-k inward + 2^(-k/2) tangent`.
    Tangential { inward: Vec<f64>, tangent: Vec<f64> },
    /// Explicit points; the k-th is `points[k - 1]`.
    Points { points: Vec<Vec<f64>> },
}

/// A sequence of interior points converging to a boundary point.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproachSequence {
    pub target: BoundaryPoint,
    pub rule: ApproachRule,
}

impl ApproachSequence {
    pub fn new(domain: &Polytope, target: &Point, rule: ApproachRule) -> Result<Self> {
        let dim = domain.dim();
        let lens: Vec<usize> = match &rule {
            ApproachRule::Radial { base } => vec![base.len()],
            ApproachRule::Tangential { inward, tangent } => vec![inward.len(), tangent.len()],
            ApproachRule::Points { points } => points.iter().map(Vec::len).collect(),
        };
        if let Some(got) = lens.into_iter().find(|l| *l != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got });
        }
        Ok(Self {
            target: domain.boundary_point(target)?,
            rule,
        })
    }

    /// Radial sequence from `base` (usually the basepoint).
    pub fn radial(domain: &Polytope, target: &Point, base: &Point) -> Result<Self> {
        Self::new(
            domain,
            target,
            ApproachRule::Radial {
                base: base.to_f64(),
            },
        )
    }

    /// The k-th point, computed in double-double so that `2^-k` offsets
    /// survive next to coordinates of order one.
    pub fn point(&self, k: usize) -> Result<Point> {
        let t = self.target.point.coords();
        let v = |c: &[f64]| c.iter().copied().map(real).collect::<Vec<Real>>();
        let pow = |e: f64| real(2f64.powf(-e));
        match &self.rule {
            ApproachRule::Radial { base } => {
                let d = real::sub(&v(base), t);
                Ok(Point::from_reals(real::axpy(t, pow(k as f64), &d)))
            }
            ApproachRule::Tangential { inward, tangent } => {
                let p = real::axpy(t, pow(k as f64), &v(inward));
                Ok(Point::from_reals(real::axpy(
                    &p,
                    pow(k as f64 / 2.0),
                    &v(tangent),
                )))
            }
            ApproachRule::Points { points } => match k.checked_sub(1).and_then(|i| points.get(i)) {
                Some(p) => Point::try_new(p),
                None => Err(Error::InvalidArgument(format!(
                    "point list has {} entries, index {k} requested",
                    points.len()
                ))),
            },
        }
    }

    /// Points `1..=n`, each checked to be interior.
    pub fn points(&self, domain: &Polytope, n: usize) -> Result<Vec<Point>> {
        (1..=n)
            .map(|k| {
                let p = self.point(k)?;
                domain.require_interior(&p)?;
                Ok(p)
            })
            .collect()
    }
}

fn same_point(domain: &Polytope, a: &Point, b: &Point) -> bool {
    a.dist(b) <= EPS_GEOM * domain.diameter()
}

struct GromovTrace {
    values: Vec<f64>,
    hx: Vec<f64>,
    hy: Vec<f64>,
    hxy: Vec<f64>,
}

fn gromov_trace(domain: &Polytope, p0: &Point, a: &[Point], b: &[Point]) -> Result<GromovTrace> {
    let rows: Vec<Result<[f64; 4]>> = a
        .par_iter()
        .zip(b)
        .map(|(x, y)| {
            let g = gromov_product(domain, x, y, p0)?.value;
            Ok([
                g,
                hilbert_distance(domain, x, p0)?.value(),
                hilbert_distance(domain, y, p0)?.value(),
                hilbert_distance(domain, x, y)?.value(),
            ])
        })
        .collect();
    let mut t = GromovTrace {
        values: Vec::new(),
        hx: Vec::new(),
        hy: Vec::new(),
        hxy: Vec::new(),
    };
    for r in rows {
        let [g, hx, hy, hxy] = r?;
        t.values.push(g);
        t.hx.push(hx);
        t.hy.push(hy);
        t.hxy.push(hxy);
    }
    Ok(t)
}

fn sequence_report(
    domain: &Polytope,
    p0: &Point,
    a: &ApproachSequence,
    b: &ApproachSequence,
    n: usize,
    params: ExperimentParams,
) -> Result<ExperimentReport> {
    domain.require_interior(p0)?;
    if n == 0 {
        return Err(Error::InvalidArgument(
            "sequence length must be positive".into(),
        ));
    }
    let xs = a.points(domain, n)?;
    let ys = b.points(domain, n)?;
    let trace = gromov_trace(domain, p0, &xs, &ys)?;
    let index: Vec<f64> = (1..=n).map(|k| k as f64).collect();
    let rules = VerdictRules::for_length(n);
    let verdict = rules.classify(&index, &trace.values);
    let mut report = ExperimentReport {
        index_name: "k".into(),
        index,
        values: trace.values,
        extra: vec![
            ("h_x_p0".into(), trace.hx),
            ("h_y_p0".into(), trace.hy),
            ("h_x_y".into(), trace.hxy),
        ],
        verdict,
        metadata: ReportMetadata {
            params,
            seed: None,
            settings: rules.settings(),
            outputs: BTreeMap::new(),
        },
    };
    let sup = report.sup();
    report.metadata.outputs.insert("sup".into(), sup);
    if let Some(k) = report.nondecreasing_from(1e-2) {
        report
            .metadata
            .outputs
            .insert("nondecreasing_from".into(), k);
    }
    Ok(report)
}

/// Gromov products of two arbitrary approach sequences, with no hypothesis
/// on their targets.
pub fn gromov_sequence_experiment(
    domain: &Polytope,
    p0: &Point,
    curve_a: &ApproachSequence,
    curve_b: &ApproachSequence,
    n: usize,
) -> Result<ExperimentReport> {
    let params = ExperimentParams::GromovSequences {
        domain: domain.to_spec(),
        p0: p0.to_f64(),
        target_a: curve_a.target.point.to_f64(),
        target_b: curve_b.target.point.to_f64(),
        curve_a: curve_a.rule.clone(),
        curve_b: curve_b.rule.clone(),
        n,
    };
    sequence_report(domain, p0, curve_a, curve_b, n, params)
}

/// `(x_k | z_k)_p0` along radial sequences from `p0` to boundary points not
/// joined by a boundary segment.
pub fn gromov_bounded_experiment(
    domain: &Polytope,
    p0: &Point,
    xbar: &BoundaryPoint,
    zbar: &BoundaryPoint,
    n: usize,
) -> Result<ExperimentReport> {
    if domain.segment_in_boundary(xbar, zbar)? {
        return Err(Error::HypothesisViolated(format!(
            "targets {:?} and {:?} share a facet",
            xbar.point.to_f64(),
            zbar.point.to_f64()
        )));
    }
    domain.require_interior(p0)?;
    let a = ApproachSequence::radial(domain, &xbar.point, p0)?;
    let b = ApproachSequence::radial(domain, &zbar.point, p0)?;
    let params = ExperimentParams::GromovBounded {
        domain: domain.to_spec(),
        p0: p0.to_f64(),
        xbar: xbar.point.to_f64(),
        zbar: zbar.point.to_f64(),
        n,
    };
    sequence_report(domain, p0, &a, &b, n, params)
}

/// `(x_k | y_k)_p0` for two sequences converging to the same boundary point.
pub fn gromov_divergence_experiment(
    domain: &Polytope,
    p0: &Point,
    xbar: &BoundaryPoint,
    curve_a: &ApproachSequence,
    curve_b: &ApproachSequence,
    n: usize,
) -> Result<ExperimentReport> {
    for c in [curve_a, curve_b] {
        if !same_point(domain, &c.target.point, &xbar.point) {
            return Err(Error::TargetMismatch);
        }
    }
    let params = ExperimentParams::GromovDiverge {
        domain: domain.to_spec(),
        p0: p0.to_f64(),
        target: xbar.point.to_f64(),
        curve_a: curve_a.rule.clone(),
        curve_b: curve_b.rule.clone(),
        n,
    };
    sequence_report(domain, p0, curve_a, curve_b, n, params)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            return v.into_iter().map(|c| c / r).collect();
        }
    }
}

/// Sampled sup of `|z z'| / |z' x|` over boundary points `z`, points `z'`
/// of `[p0, z)` and chords `[x, y]` through `z'`, next to the bound
/// `max(diam / delta, 1 / sin(gamma0 / 2))` with `delta` a third of the
/// distance from `p0` to the boundary and `gamma0` the smallest sampled angle
/// of the tangent cone from `z` to the ball `B(p0, delta)`.
///
/// For fixed `z'` the worst chord is the one through the boundary point
/// nearest to `z'`, so each `z'` contributes `|z z'| / dist(z', boundary)`.
/// `z'` runs over `p0 + (j / chord_samples) (z - p0)`. Boundary directions
/// are stratified with a seeded jitter in the plane and uniform otherwise;
/// sample `i` draws from stream `i` of the seeded generator.
pub fn angle_constant_estimate(
    domain: &Polytope,
    p0: &Point,
    z_samples: usize,
    chord_samples: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    domain.require_interior(p0)?;
    if z_samples == 0 || chord_samples == 0 {
        return Err(Error::InvalidArgument(
            "sample counts must be positive".into(),
        ));
    }
    let n = domain.dim();
    let diam = domain.diameter();
    let delta = to_f64(domain.min_slack(p0)) / 3.0;
    if delta < EPS_GEOM * diam {
        return Err(Error::BasepointTooClose {
            distance: 3.0 * delta,
        });
    }
    let rows: Vec<Result<(f64, f64)>> = (0..z_samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let u = if n == 2 {
                let a = TAU * (i as f64 + rng.gen::<f64>()) / z_samples as f64;
                vec![a.cos(), a.sin()]
            } else {
                random_unit(&mut rng, n)
            };
            let u: Vec<Real> = u.into_iter().map(real).collect();
            let z = domain.ray_exit(p0, &u)?;
            let zp0 = z.dist(p0);
            let best = (0..chord_samples)
                .map(|j| {
                    let zp = p0.lerp(&z, j as f64 / chord_samples as f64);
                    z.dist(&zp) / to_f64(domain.min_slack(&zp))
                })
                .fold(0.0, f64::max);
            Ok((best, zp0))
        })
        .collect();
    let mut values = Vec::with_capacity(z_samples);
    let mut reach = Vec::with_capacity(z_samples);
    for r in rows {
        let (v, d) = r?;
        values.push(v);
        reach.push(d);
    }
    let max_reach = reach.iter().copied().fold(0.0, f64::max);
    let gamma0 = 2.0 * (delta / max_reach).min(1.0).asin();
    let bound = (diam / delta).max(1.0 / (gamma0 / 2.0).sin());
    let sup = values.iter().copied().fold(0.0, f64::max);
    let verdict = if sup.is_finite() {
        Verdict::Bounded { sup }
    } else {
        Verdict::Inconclusive
    };
    Ok(ExperimentReport {
        index_name: "sample".into(),
        index: (0..z_samples).map(|i| i as f64).collect(),
        values,
        extra: vec![("z_p0".into(), reach)],
        verdict,
        metadata: ReportMetadata {
            params: ExperimentParams::AngleConstant {
                domain: domain.to_spec(),
                p0: p0.to_f64(),
                z_samples,
                chord_samples,
            },
            seed: Some(seed),
            settings: BTreeMap::new(),
            outputs: BTreeMap::from([
                ("sup".to_string(), sup),
                ("analytic_bound".to_string(), bound),
                ("delta".to_string(), delta),
                ("gamma0".to_string(), gamma0),
            ]),
        },
    })
}

/// Minimum over pairs `i != j` of `||v_i - v_j||_var` where
/// `v_i = log(gamma_i(k)) / k` and `gamma_i` is the unit-speed ray from the
/// barycenter of the standard `n`-simplex toward vertex `i`.
pub fn mutual_distance_experiment(n: usize, ks: &[f64]) -> Result<ExperimentReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "simplex dimension must be >= 1".into(),
        ));
    }
    if ks.is_empty()
        || !ks.iter().all(|k| *k > 0.0 && k.is_finite())
        || ks.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidArgument(
            "ks must be positive and increasing".into(),
        ));
    }
    let simplex = Polytope::standard_simplex(n);
    let center = simplex.centroid();
    let values: Vec<Result<f64>> = ks
        .par_iter()
        .map(|&k| {
            let vs = simplex
                .vertices()
                .iter()
                .map(|v| {
                    // aimed in double-double so the ray really ends at the vertex
                    let dir = real::sub(v.coords(), center.coords());
                    let p = point_at_distance_real(&simplex, &center, &dir, k)?;
                    Ok(log_map_point(&simplex, &p)?.scale(1.0 / k))
                })
                .collect::<Result<Vec<_>>>()?;
            let mut min = f64::INFINITY;
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    min = min.min(variation(vs[i].sub(&vs[j]).comps()));
                }
            }
            Ok(min)
        })
        .collect();
    let values = values.into_iter().collect::<Result<Vec<_>>>()?;
    let k_tilde = ks
        .iter()
        .zip(&values)
        .map(|(k, v)| k * (2.0 - v) / 2.0)
        .fold(0.0, f64::max);
    let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(ExperimentReport {
        index_name: "k".into(),
        index: ks.to_vec(),
        values,
        extra: Vec::new(),
        verdict: Verdict::Bounded { sup },
        metadata: ReportMetadata {
            params: ExperimentParams::MutualDistance { n, ks: ks.to_vec() },
            seed: None,
            settings: BTreeMap::new(),
            outputs: BTreeMap::from([("fitted_k_tilde".to_string(), k_tilde)]),
        },
    })
}
