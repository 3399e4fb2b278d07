//! The open simplex as a normed space.
//!
//! Barycentric weights `w` map to `log w` modulo constants; on that quotient
//! the variation norm `max - min` makes the map an isometry for the Hilbert
//! metric:
//!
//! ```text
//! h(x, y) = max_i ln(x_i / y_i) - min_i ln(x_i / y_i)
//! ```
//!
//! Quotient classes are represented by their mean-zero member.

use crate::domain::{Point, Polytope};
use crate::error::{Error, Result};
use crate::metric::hilbert_distance;
use crate::real::{self, real, to_f64, Mat, Real};

/// Barycentric coordinates in the standard simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexPoint {
    weights: Vec<f64>,
}

impl SimplexPoint {
    /// Weights must be positive and sum to 1 within `1e-12`.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if weights.len() < 2
            || !weights.iter().all(|w| *w > 0.0 && w.is_finite())
            || (sum - 1.0).abs() > 1e-12
        {
            return Err(Error::NonPositiveWeight(weights));
        }
        Ok(Self { weights })
    }

    /// Rescales positive weights to sum 1.
    pub fn normalized(weights: &[f64]) -> Result<Self> {
        if !weights.iter().all(|w| *w > 0.0 && w.is_finite()) {
            return Err(Error::NonPositiveWeight(weights.to_vec()));
        }
        let sum: f64 = weights.iter().sum();
        Self::new(weights.iter().map(|w| w / sum).collect())
    }

    pub fn barycenter(n: usize) -> Self {
        Self {
            weights: vec![1.0 / (n + 1) as f64; n + 1],
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Simplex dimension (one less than the number of weights).
    pub fn dim(&self) -> usize {
        self.weights.len() - 1
    }

    /// The point in the chart of [`Polytope::standard_simplex`].
    pub fn to_chart(&self) -> Point {
        Point::new(self.weights[..self.dim()].to_vec())
    }
}

/// Mean-zero representative of a class in `R^{n+1} / R(1, ..., 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogVector {
    comps: Vec<f64>,
}

impl LogVector {
    /// Centres arbitrary components.
    pub fn from_components(c: &[f64]) -> Self {
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        Self {
            comps: c.iter().map(|x| x - mean).collect(),
        }
    }

    pub fn comps(&self) -> &[f64] {
        &self.comps
    }

    pub fn sub(&self, other: &LogVector) -> LogVector {
        LogVector::from_components(
            &self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        )
    }

    pub fn add(&self, other: &LogVector) -> LogVector {
        LogVector::from_components(
            &self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect::<Vec<_>>(),
        )
    }

    pub fn scale(&self, s: f64) -> LogVector {
        LogVector {
            comps: self.comps.iter().map(|c| c * s).collect(),
        }
    }
}

pub fn log_map(x: &SimplexPoint) -> LogVector {
    LogVector::from_components(&x.weights.iter().map(|w| w.ln()).collect::<Vec<_>>())
}

/// `max - min` of the components.
pub fn variation_norm(v: &LogVector) -> f64 {
    variation(&v.comps)
}

pub(crate) fn variation(c: &[f64]) -> f64 {
    let (lo, hi) = c
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(*x), hi.max(*x))
        });
    if c.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

/// `|h_Δ(x, y) - ||log x - log y||_var|`.
pub fn isometry_defect(x: &SimplexPoint, y: &SimplexPoint) -> Result<f64> {
    if x.weights.len() != y.weights.len() {
        return Err(Error::LengthMismatch {
            left: x.weights.len(),
            right: y.weights.len(),
        });
    }
    let simplex = Polytope::standard_simplex(x.dim());
    let h = hilbert_distance(&simplex, &x.to_chart(), &y.to_chart())?.value();
    Ok((h - variation_norm(&log_map(x).sub(&log_map(y)))).abs())
}

/// Extreme points of the variation-norm unit ball on `R^{n+1} / R1`: the
/// centred indicator vectors of the nonempty proper index subsets
/// (`2^{n+1} - 2` of them).
pub fn unit_ball_vertices(n: usize) -> Vec<LogVector> {
    assert!((1..20).contains(&n), "dimension out of range");
    let m = n + 1;
    (1..(1u32 << m) - 1)
        .map(|mask| {
            let ind: Vec<f64> = (0..m).map(|i| ((mask >> i) & 1) as f64).collect();
            LogVector::from_components(&ind)
        })
        .collect()
}

/// Barycentric coordinates of `x` with respect to the vertices of a simplex
/// domain, in vertex order.
pub fn to_standard_simplex(domain: &Polytope, x: &Point) -> Result<SimplexPoint> {
    let n = domain.dim();
    if domain.vertices().len() != n + 1 {
        return Err(Error::NotASimplex {
            expected: n + 1,
            got: domain.vertices().len(),
        });
    }
    domain.require_interior(x)?;
    let w = barycentric(domain, x)?;
    SimplexPoint::normalized(&w.iter().map(|v| to_f64(*v)).collect::<Vec<_>>())
}

/// Solves `sum_i w_i v_i = x`, `sum_i w_i = 1` in double-double.
pub(crate) fn barycentric(domain: &Polytope, x: &Point) -> Result<Vec<Real>> {
    let n = domain.dim();
    let verts = domain.vertices();
    let mut m = Mat::zeros(n + 1, n + 1);
    for (j, v) in verts.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = v.coords()[i];
        }
        m[(n, j)] = real(1.0);
    }
    let mut rhs = x.coords().to_vec();
    rhs.push(real(1.0));
    m.solve(&rhs, 1e-14)
        .ok_or_else(|| Error::DegenerateInput("simplex vertices are affinely dependent".into()))
}

/// Log vector of an interior chart point, with double-double weights so
/// that weights exponentially close to 0 or 1 keep their digits.
pub(crate) fn log_map_point(domain: &Polytope, x: &Point) -> Result<LogVector> {
    domain.require_interior(x)?;
    let w = barycentric(domain, x)?;
    let sum = w.iter().fold(real::zero(), |a, b| a + *b);
    Ok(LogVector::from_components(
        &w.iter().map(|wi| real::ln(*wi / sum)).collect::<Vec<_>>(),
    ))
}
