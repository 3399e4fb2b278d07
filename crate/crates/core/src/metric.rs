//! The Hilbert metric, its Funk halves and the Gromov product.
//!
//! For interior `x != y` with chord parameters `t_minus < 0 < 1 < t_plus`
//! the cross ratio of `x_bar, x, y, y_bar` is
//!
//! ```text
//! t_plus (1 - t_minus) / ((t_plus - 1) (-t_minus))
//! ```
//!
//! and its log splits as `funk(x, y) + funk(y, x)` with
//! `funk(x, y) = ln(1 + 1 / (t_plus - 1))`. Both halves are evaluated with
//! `ln_1p` so that neither near-boundary nor near-coincident points lose
//! digits.

use crate::domain::{Point, Polytope};
use crate::error::{Error, Result};
use crate::geodesics::point_at_distance;
use crate::real::{real, to_f64, Real};

/// Hilbert distance in natural-log units.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct HilbertDistance(f64);

impl HilbertDistance {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<HilbertDistance> for f64 {
    fn from(d: HilbertDistance) -> f64 {
        d.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GromovProduct {
    pub value: f64,
    pub basepoint: Point,
}

fn funk_term(t_plus: Real) -> f64 {
    to_f64(real(1.0) / (t_plus - real(1.0))).ln_1p()
}

fn lex_less(a: &Point, b: &Point) -> bool {
    for (x, y) in a.coords().iter().zip(b.coords()) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Hilbert distance between interior points. Symmetric bit-for-bit: the
/// pair is put in a canonical order before the chord is clipped.
pub fn hilbert_distance(domain: &Polytope, x: &Point, y: &Point) -> Result<HilbertDistance> {
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    if x == y {
        return Ok(HilbertDistance(0.0));
    }
    let (a, b) = if lex_less(y, x) { (y, x) } else { (x, y) };
    let c = domain.chord(a, b)?;
    Ok(HilbertDistance(
        funk_term(c.t_plus) + funk_term(real(1.0) - c.t_minus),
    ))
}

/// Funk distance `ln(|x y_bar| / |y y_bar|)`; not symmetric.
pub fn funk_distance(domain: &Polytope, x: &Point, y: &Point) -> Result<f64> {
    domain.require_interior(x)?;
    domain.require_interior(y)?;
    if x == y {
        return Ok(0.0);
    }
    Ok(funk_term(domain.chord(x, y)?.t_plus))
}

/// `(x | y)_p0 = (h(x, p0) + h(y, p0) - h(x, y)) / 2`, with rounding-level
/// negatives clamped to zero.
pub fn gromov_product(
    domain: &Polytope,
    x: &Point,
    y: &Point,
    p0: &Point,
) -> Result<GromovProduct> {
    let hx = hilbert_distance(domain, x, p0)?.value();
    let hy = hilbert_distance(domain, y, p0)?.value();
    let hxy = hilbert_distance(domain, x, y)?.value();
    let mut value = 0.5 * (hx + hy - hxy);
    if value < 0.0 && value > -1e-12 {
        value = 0.0;
    }
    Ok(GromovProduct {
        value,
        basepoint: p0.clone(),
    })
}

/// Points of the Hilbert sphere of `radius` around `center`, one per
/// direction `2 pi k / count`. Planar domains only.
pub fn ball_boundary_sample(
    domain: &Polytope,
    center: &Point,
    radius: f64,
    count: usize,
) -> Result<Vec<Point>> {
    if domain.dim() != 2 {
        return Err(Error::DimensionUnsupported {
            what: "ball sampling",
            dim: domain.dim(),
            max: 2,
        });
    }
    domain.require_interior(center)?;
    if !(radius > 0.0 && radius.is_finite()) || count < 3 {
        return Err(Error::InvalidArgument(format!(
            "ball sampling needs radius > 0 and count >= 3, got {radius}, {count}"
        )));
    }
    (0..count)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / count as f64;
            point_at_distance(domain, center, &[a.cos(), a.sin()], radius)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::new(c.to_vec())
    }

    #[test]
    fn identical_points_are_at_zero() {
        let sq = Polytope::unit_square();
        let x = p(&[0.3, 0.6]);
        assert_eq!(hilbert_distance(&sq, &x, &x).unwrap().value(), 0.0);
        assert_eq!(funk_distance(&sq, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn interval_log3_and_funk_halves() {
        let iv = Polytope::unit_interval();
        let (x, y) = (p(&[0.5]), p(&[0.75]));
        let h = hilbert_distance(&iv, &x, &y).unwrap().value();
        assert!((h - 3f64.ln()).abs() < 1e-15);
        let f_xy = funk_distance(&iv, &x, &y).unwrap();
        let f_yx = funk_distance(&iv, &y, &x).unwrap();
        assert!((f_xy - 2f64.ln()).abs() < 1e-15);
        assert!((f_yx - 1.5f64.ln()).abs() < 1e-15);
        assert!((f_xy + f_yx - h).abs() < 1e-15);
    }

    #[test]
    fn square_log9() {
        let sq = Polytope::unit_square();
        let h = hilbert_distance(&sq, &p(&[0.25, 0.5]), &p(&[0.75, 0.5]))
            .unwrap()
            .value();
        assert!((h - 9f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn exact_symmetry() {
        let t = Polytope::unit_triangle();
        let (x, y) = (p(&[0.1, 0.7]), p(&[0.33, 0.2]));
        assert_eq!(
            hilbert_distance(&t, &x, &y).unwrap(),
            hilbert_distance(&t, &y, &x).unwrap()
        );
    }

    #[test]
    fn gromov_products() {
        let sq = Polytope::unit_square();
        let (x, y, c) = (p(&[0.25, 0.5]), p(&[0.75, 0.5]), p(&[0.5, 0.5]));
        assert_eq!(gromov_product(&sq, &x, &y, &x).unwrap().value, 0.0);
        let hx = hilbert_distance(&sq, &x, &c).unwrap().value();
        assert!((gromov_product(&sq, &x, &x, &c).unwrap().value - hx).abs() < 1e-15);
        assert!(gromov_product(&sq, &x, &y, &c).unwrap().value.abs() < 1e-15);
    }

    #[test]
    fn boundary_inputs_rejected() {
        let sq = Polytope::unit_square();
        let e = hilbert_distance(&sq, &p(&[1.0, 0.5]), &p(&[0.5, 0.5])).unwrap_err();
        assert!(matches!(e, Error::NotInterior(_)));
        assert!(e.to_string().starts_with("NotInterior"));
    }

    #[test]
    fn ball_samples() {
        let t = Polytope::unit_triangle();
        let c = p(&[0.2, 0.3]);
        for s in ball_boundary_sample(&t, &c, 1.0, 64).unwrap() {
            let h = hilbert_distance(&t, &c, &s).unwrap().value();
            assert!((h - 1.0).abs() <= 1e-9);
        }
        for s in ball_boundary_sample(&t, &c, 1e-6, 16).unwrap() {
            assert!(s.dist(&c) < 1e-5);
        }
        assert!(matches!(
            ball_boundary_sample(&Polytope::unit_cube(), &p(&[0.5, 0.5, 0.5]), 1.0, 8),
            Err(Error::DimensionUnsupported { .. })
        ));
    }

    #[test]
    fn square_ball_has_square_symmetry() {
        let sq = Polytope::unit_square();
        let c = p(&[0.5, 0.5]);
        let s: Vec<Vec<f64>> = ball_boundary_sample(&sq, &c, 1.0, 64)
            .unwrap()
            .iter()
            .map(Point::to_f64)
            .collect();
        // rotation by 90 degrees maps sample k to sample k + 16
        for k in 0..64 {
            let a = &s[k];
            let b = &s[(k + 16) % 64];
            assert!((b[0] - (1.0 - a[1])).abs() < 1e-12 && (b[1] - a[0]).abs() < 1e-12);
            // reflection y -> 1 - y maps k to 64 - k
            let r = &s[(64 - k) % 64];
            assert!((r[0] - a[0]).abs() < 1e-12 && (r[1] - (1.0 - a[1])).abs() < 1e-12);
        }
    }
}
