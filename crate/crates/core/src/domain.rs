//! Bounded convex polytope domains in vertex + halfspace form.
//!
//! A [`Polytope`] stores both representations and the vertex/facet
//! incidence. Facets are enumerated from vertices by brute force over vertex
//! subsets for `dim <= 4`; larger dimensions need explicit facets through
//! [`Polytope::from_vertices_and_facets`].
//!
//! Chords are computed by parametric clipping of `p(t) = x + t (y - x)`
//! against every halfspace, and everything downstream works with the two
//! clip parameters rather than Euclidean lengths.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::{self, real, to_f64, zero, Mat, Real};

/// Relative tolerance (times the domain diameter) for boundary classification.
pub const EPS_GEOM: f64 = 1e-9;

/// Relative slack below which metric operations treat a point as being on the
/// boundary. This is the double-double resolution floor, not a modelling
/// tolerance.
pub const INTERIOR_EPS: f64 = 1e-27;

/// Largest dimension with automatic facet enumeration.
pub const MAX_ENUMERATION_DIM: usize = 4;

/// A point of Euclidean space with double-double coordinates.
#[derive(Clone, PartialEq)]
pub struct Point {
    coords: Vec<Real>,
}

impl Point {
    /// Panics if a coordinate is not finite.
    pub fn new(coords: Vec<f64>) -> Self {
        assert!(
            coords.iter().all(|c| c.is_finite()),
            "point coordinates must be finite: {coords:?}"
        );
        Self {
            coords: coords.into_iter().map(real).collect(),
        }
    }

    pub fn try_new(coords: &[f64]) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Self::new(coords.to_vec()))
        } else {
            Err(Error::InvalidArgument(format!(
                "non-finite coordinate in {coords:?}"
            )))
        }
    }

    pub fn from_reals(coords: Vec<Real>) -> Self {
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Real] {
        &self.coords
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| to_f64(*c)).collect()
    }

    pub fn dist(&self, other: &Point) -> f64 {
        real::norm_f64(&real::sub(&self.coords, &other.coords))
    }

    /// `self + t (other - self)`
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        self.lerp_real(other, real(t))
    }

    pub fn lerp_real(&self, other: &Point, t: Real) -> Point {
        let d = real::sub(&other.coords, &self.coords);
        Point::from_reals(real::axpy(&self.coords, t, &d))
    }

    pub fn centroid(points: &[Point]) -> Point {
        let n = points[0].dim();
        let k = real(points.len() as f64);
        let sum = points
            .iter()
            .fold(vec![zero(); n], |acc, p| real::add(&acc, &p.coords));
        Point::from_reals(sum.into_iter().map(|c| c / k).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{:?}", self.to_f64())
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(c: [f64; N]) -> Self {
        Point::new(c.to_vec())
    }
}

impl From<Vec<f64>> for Point {
    fn from(c: Vec<f64>) -> Self {
        Point::new(c)
    }
}

/// Closed halfspace `{x : normal · x <= offset}` with unit normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Halfspace {
    normal: Vec<Real>,
    offset: Real,
}

impl Halfspace {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        Self::from_reals(normal.into_iter().map(real).collect(), real(offset))
    }

    fn from_reals(normal: Vec<Real>, offset: Real) -> Result<Self> {
        let len = real::norm(&normal);
        if len.hi() <= 0.0 || !len.hi().is_finite() {
            return Err(Error::InvalidPolytope(
                "facet normal must be nonzero and finite".into(),
            ));
        }
        Ok(Self {
            normal: normal.iter().map(|c| *c / len).collect(),
            offset: offset / len,
        })
    }

    pub fn normal(&self) -> &[Real] {
        &self.normal
    }

    pub fn offset(&self) -> Real {
        self.offset
    }

    /// `offset - normal · x`; positive strictly inside.
    pub fn slack(&self, x: &[Real]) -> Real {
        self.offset - real::dot(&self.normal, x)
    }
}

/// Classification returned by [`Polytope::locate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary(BTreeSet<usize>),
    Outside,
}

/// A point of the boundary with the facets active at it.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub point: Point,
    pub active_facets: BTreeSet<usize>,
}

/// The boundary pair of the line through `x` and `y`.
///
/// With `p(t) = x + t (y - x)`, `x_bar = p(t_minus)` is the endpoint on the
/// side of `x` and `y_bar = p(t_plus)` the one on the side of `y`.
#[derive(Clone, Debug, PartialEq)]
pub struct Chord {
    pub x_bar: Point,
    pub y_bar: Point,
    pub t_minus: Real,
    pub t_plus: Real,
    pub base: (Point, Point),
}

impl Chord {
    pub fn t_minus_f64(&self) -> f64 {
        to_f64(self.t_minus)
    }

    pub fn t_plus_f64(&self) -> f64 {
        to_f64(self.t_plus)
    }

    /// Both endpoints with their active facets.
    pub fn boundary_pair(&self, domain: &Polytope) -> (BoundaryPoint, BoundaryPoint) {
        (
            domain.boundary_point_unchecked(&self.x_bar),
            domain.boundary_point_unchecked(&self.y_bar),
        )
    }
}

/// Polytope JSON form: `{"dim": n, "vertices": [[..]], "facets": [{"normal": [..], "offset": b}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeSpec {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facets: Option<Vec<FacetSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacetSpec {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Closure of a bounded convex domain with nonempty interior.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Halfspace>,
    incidence: Vec<BTreeSet<usize>>,
    diameter: f64,
}

impl Polytope {
    /// Builds the polytope spanned by `vertices`, enumerating facets.
    ///
    /// Duplicate and non-extreme input points are dropped; the remaining
    /// vertices keep their input order.
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        let dim = check_point_set(&vertices)?;
        if dim > MAX_ENUMERATION_DIM {
            return Err(Error::DimensionUnsupported {
                what: "automatic facet enumeration",
                dim,
                max: MAX_ENUMERATION_DIM,
            });
        }
        let vertices = dedup_points(vertices);
        let diameter = diameter_of(&vertices);
        let tol = EPS_GEOM * diameter;
        let facets = enumerate_facets(&vertices, dim, diameter);
        // Extreme points are exactly those where the active normals span.
        let extreme: Vec<Point> = vertices
            .into_iter()
            .filter(|v| {
                let active: Vec<Vec<Real>> = facets
                    .iter()
                    .filter(|f| to_f64(f.slack(v.coords())).abs() <= tol)
                    .map(|f| f.normal.clone())
                    .collect();
                !active.is_empty() && Mat::from_rows(&active).rank(1e-9) == dim
            })
            .collect();
        Self::assemble(dim, extreme, facets)
    }

    /// Builds a polytope from both representations, validating consistency.
    pub fn from_vertices_and_facets(vertices: Vec<Point>, facets: Vec<Halfspace>) -> Result<Self> {
        let dim = check_point_set(&vertices)?;
        if let Some(f) = facets.iter().find(|f| f.normal.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: f.normal.len(),
            });
        }
        Self::assemble(dim, dedup_points(vertices), facets)
    }

    fn assemble(dim: usize, vertices: Vec<Point>, facets: Vec<Halfspace>) -> Result<Self> {
        let diameter = diameter_of(&vertices);
        let tol = EPS_GEOM * diameter;
        let mut incidence = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let mut active = BTreeSet::new();
            for (i, f) in facets.iter().enumerate() {
                let s = to_f64(f.slack(v.coords()));
                if s < -tol {
                    return Err(Error::InvalidPolytope(format!(
                        "vertex {:?} violates facet {i}",
                        v.to_f64()
                    )));
                }
                if s <= tol {
                    active.insert(i);
                }
            }
            let normals: Vec<Vec<Real>> =
                active.iter().map(|&i| facets[i].normal.clone()).collect();
            if active.len() < dim || Mat::from_rows(&normals).rank(1e-9) < dim {
                return Err(Error::InvalidPolytope(format!(
                    "vertex {:?} is not extreme",
                    v.to_f64()
                )));
            }
            incidence.push(active);
        }
        for (i, _) in facets.iter().enumerate() {
            let on: Vec<&Point> = vertices
                .iter()
                .zip(&incidence)
                .filter(|(_, inc)| inc.contains(&i))
                .map(|(v, _)| v)
                .collect();
            if affine_rank(&on) + 1 < dim {
                return Err(Error::InvalidPolytope(format!(
                    "facet {i} does not span a hyperplane"
                )));
            }
        }
        let centroid = Point::centroid(&vertices);
        if facets
            .iter()
            .any(|f| to_f64(f.slack(centroid.coords())) <= tol)
        {
            return Err(Error::InvalidPolytope(
                "vertex centroid is not strictly inside the facets".into(),
            ));
        }
        Ok(Self {
            dim,
            vertices,
            facets,
            incidence,
            diameter,
        })
    }

    pub fn from_spec(spec: &PolytopeSpec) -> Result<Self> {
        let vertices = spec
            .vertices
            .iter()
            .map(|v| {
                if v.len() != spec.dim {
                    return Err(Error::DimensionMismatch {
                        expected: spec.dim,
                        got: v.len(),
                    });
                }
                Point::try_new(v)
            })
            .collect::<Result<Vec<_>>>()?;
        match &spec.facets {
            Some(facets) => {
                let facets = facets
                    .iter()
                    .map(|f| Halfspace::new(f.normal.clone(), f.offset))
                    .collect::<Result<Vec<_>>>()?;
                Self::from_vertices_and_facets(vertices, facets)
            }
            None => Self::from_vertices(vertices),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PolytopeSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("polytope JSON: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> PolytopeSpec {
        PolytopeSpec {
            dim: self.dim,
            vertices: self.vertices.iter().map(Point::to_f64).collect(),
            facets: Some(
                self.facets
                    .iter()
                    .map(|f| FacetSpec {
                        normal: f.normal.iter().map(|c| to_f64(*c)).collect(),
                        offset: to_f64(f.offset),
                    })
                    .collect(),
            ),
        }
    }

    /// Open interval `(0, 1)`.
    pub fn unit_interval() -> Self {
        Self::from_vertices(vec![Point::from([0.0]), Point::from([1.0])]).unwrap()
    }

    /// `(0,0), (1,0), (0,1)`.
    pub fn unit_triangle() -> Self {
        Self::from_vertices(vec![
            Point::from([0.0, 0.0]),
            Point::from([1.0, 0.0]),
            Point::from([0.0, 1.0]),
        ])
        .unwrap()
    }

    pub fn unit_square() -> Self {
        Self::from_vertices(vec![
            Point::from([0.0, 0.0]),
            Point::from([1.0, 0.0]),
            Point::from([1.0, 1.0]),
            Point::from([0.0, 1.0]),
        ])
        .unwrap()
    }

    pub fn unit_cube() -> Self {
        let mut v = Vec::new();
        for i in 0..8 {
            v.push(Point::new((0..3).map(|b| ((i >> b) & 1) as f64).collect()));
        }
        Self::from_vertices(v).unwrap()
    }

    /// Regular `k`-gon of circumradius `radius` centred at the origin.
    pub fn regular_polygon(k: usize, radius: f64) -> Result<Self> {
        if k < 3 {
            return Err(Error::DegenerateInput(format!("{k}-gon")));
        }
        let v = (0..k)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / k as f64;
                Point::from([radius * a.cos(), radius * a.sin()])
            })
            .collect();
        Self::from_vertices(v)
    }

    /// The standard `n`-simplex in the chart that drops the last barycentric
    /// coordinate: vertices `e_1, ..., e_n, 0` in that order.
    pub fn standard_simplex(n: usize) -> Self {
        assert!(n >= 1, "simplex dimension must be positive");
        let mut vertices: Vec<Point> = (0..n)
            .map(|i| {
                let mut c = vec![0.0; n];
                c[i] = 1.0;
                Point::new(c)
            })
            .collect();
        vertices.push(Point::new(vec![0.0; n]));
        if n <= MAX_ENUMERATION_DIM {
            return Self::from_vertices(vertices).unwrap();
        }
        let mut facets: Vec<Halfspace> = (0..n)
            .map(|i| {
                let mut nrm = vec![0.0; n];
                nrm[i] = -1.0;
                Halfspace::new(nrm, 0.0).unwrap()
            })
            .collect();
        facets.push(Halfspace::new(vec![1.0; n], 1.0).unwrap());
        Self::from_vertices_and_facets(vertices, facets).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Facet indices active at each vertex.
    pub fn incidence(&self) -> &[BTreeSet<usize>] {
        &self.incidence
    }

    /// Euclidean diameter (largest vertex distance).
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn centroid(&self) -> Point {
        Point::centroid(&self.vertices)
    }

    fn check_dim(&self, x: &Point) -> Result<()> {
        if x.dim() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            })
        }
    }

    /// Smallest facet slack; the Euclidean distance to the boundary for
    /// interior points.
    pub fn min_slack(&self, x: &Point) -> Real {
        self.facets
            .iter()
            .map(|f| f.slack(x.coords()))
            .reduce(|a, b| if b < a { b } else { a })
            .expect("a polytope has facets")
    }

    /// Classifies `x` with tolerance `eps * diameter`.
    pub fn locate(&self, x: &Point, eps: f64) -> Location {
        let tol = eps * self.diameter;
        let mut active = BTreeSet::new();
        for (i, f) in self.facets.iter().enumerate() {
            let s = to_f64(f.slack(x.coords()));
            if s < -tol {
                return Location::Outside;
            }
            if s <= tol {
                active.insert(i);
            }
        }
        if active.is_empty() {
            Location::Interior
        } else {
            Location::Boundary(active)
        }
    }

    /// Errors unless `x` is in the open domain at double-double resolution.
    pub fn require_interior(&self, x: &Point) -> Result<()> {
        self.check_dim(x)?;
        if to_f64(self.min_slack(x)) > INTERIOR_EPS * self.diameter {
            Ok(())
        } else {
            Err(Error::NotInterior(x.to_f64()))
        }
    }

    pub fn is_interior(&self, x: &Point) -> bool {
        self.require_interior(x).is_ok()
    }

    /// Boundary point with its active facets at tolerance [`EPS_GEOM`].
    pub fn boundary_point(&self, x: &Point) -> Result<BoundaryPoint> {
        self.check_dim(x)?;
        match self.locate(x, EPS_GEOM) {
            Location::Boundary(active_facets) => Ok(BoundaryPoint {
                point: x.clone(),
                active_facets,
            }),
            _ => Err(Error::NotOnBoundary(x.to_f64())),
        }
    }

    fn boundary_point_unchecked(&self, x: &Point) -> BoundaryPoint {
        let tol = EPS_GEOM * self.diameter;
        let active_facets = self
            .facets
            .iter()
            .enumerate()
            .filter(|(_, f)| to_f64(f.slack(x.coords())).abs() <= tol)
            .map(|(i, _)| i)
            .collect();
        BoundaryPoint {
            point: x.clone(),
            active_facets,
        }
    }

    /// Clip interval `(t_minus, t_plus)` of the line `x + t d`; `x` must be
    /// interior and `d` nonzero.
    pub(crate) fn clip(&self, x: &[Real], d: &[Real]) -> (Real, Real) {
        let mut t_minus: Option<Real> = None;
        let mut t_plus: Option<Real> = None;
        for f in &self.facets {
            let a = real::dot(&f.normal, d);
            if a.hi() == 0.0 {
                continue;
            }
            let t = f.slack(x) / a;
            if a.hi() > 0.0 {
                if t_plus.is_none_or(|p| t < p) {
                    t_plus = Some(t);
                }
            } else if t_minus.is_none_or(|m| t > m) {
                t_minus = Some(t);
            }
        }
        // bounded domain: every nonzero direction leaves through some facet
        (
            t_minus.expect("direction exits the bounded domain backwards"),
            t_plus.expect("direction exits the bounded domain forwards"),
        )
    }

    /// Boundary points of the line through `x` and `y`.
    pub fn chord(&self, x: &Point, y: &Point) -> Result<Chord> {
        self.require_interior(x)?;
        self.require_interior(y)?;
        if x == y {
            return Err(Error::CoincidentPoints);
        }
        let d = real::sub(y.coords(), x.coords());
        let (t_minus, t_plus) = self.clip(x.coords(), &d);
        Ok(Chord {
            x_bar: Point::from_reals(real::axpy(x.coords(), t_minus, &d)),
            y_bar: Point::from_reals(real::axpy(x.coords(), t_plus, &d)),
            t_minus,
            t_plus,
            base: (x.clone(), y.clone()),
        })
    }

    /// First boundary point hit from interior `x` in direction `d`.
    pub fn ray_exit(&self, x: &Point, d: &[Real]) -> Result<Point> {
        self.require_interior(x)?;
        if d.iter().all(|c| c.hi() == 0.0) {
            return Err(Error::InvalidArgument("zero direction".into()));
        }
        let (_, t_plus) = self.clip(x.coords(), d);
        Ok(Point::from_reals(real::axpy(x.coords(), t_plus, d)))
    }

    /// True iff the segment `[a, b]` lies in the boundary, i.e. both ends
    /// share a facet.
    pub fn segment_in_boundary(&self, a: &BoundaryPoint, b: &BoundaryPoint) -> Result<bool> {
        for p in [a, b] {
            if p.active_facets.is_empty() || self.locate(&p.point, EPS_GEOM) == Location::Outside {
                return Err(Error::NotOnBoundary(p.point.to_f64()));
            }
        }
        Ok(!a.active_facets.is_disjoint(&b.active_facets))
    }

    /// Image of the polytope and of `points` under the projective map with
    /// homogeneous matrix `m` (`(dim+1) x (dim+1)`, acting on `(x, 1)`).
    pub fn apply_projective(
        &self,
        m: &[Vec<f64>],
        points: &[Point],
    ) -> Result<(Polytope, Vec<Point>)> {
        let n = self.dim;
        if m.len() != n + 1 || m.iter().any(|r| r.len() != n + 1) {
            return Err(Error::InvalidArgument(format!(
                "projective matrix must be {0}x{0}",
                n + 1
            )));
        }
        let mat = Mat::from_rows(
            &m.iter()
                .map(|r| r.iter().copied().map(real).collect())
                .collect::<Vec<_>>(),
        );
        let inv = mat.inverse(1e-12).ok_or(Error::SingularMatrix)?;
        let lift = |p: &Point| -> Vec<Real> {
            let mut h = p.coords().to_vec();
            h.push(real(1.0));
            mat.mul_vec(&h)
        };
        let images: Vec<Vec<Real>> = self.vertices.iter().map(lift).collect();
        let ws: Vec<f64> = images.iter().map(|h| to_f64(h[n])).collect();
        let sign = ws[0].signum();
        let max_w = ws.iter().fold(0.0_f64, |a, w| a.max(w.abs()));
        if ws
            .iter()
            .any(|w| w.signum() != sign || w.abs() < 1e-9 * max_w)
        {
            return Err(Error::ImproperTransform);
        }
        let dehom = |h: Vec<Real>| -> Point {
            let w = h[n];
            Point::from_reals(h[..n].iter().map(|c| *c / w).collect())
        };
        let vertices: Vec<Point> = images.into_iter().map(dehom).collect();
        // A facet c · (x, 1) <= 0 maps to sign(w) c M^{-1}.
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let mut c = f.normal.clone();
                c.push(-f.offset);
                let c2 = inv.vec_mul(&c);
                let s = real(sign);
                Halfspace::from_reals(c2[..n].iter().map(|v| *v * s).collect(), -c2[n] * s)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut mapped = Vec::with_capacity(points.len());
        for p in points {
            self.check_dim(p)?;
            let h = lift(p);
            if to_f64(h[n]).signum() != sign || to_f64(h[n]).abs() < 1e-9 * max_w {
                return Err(Error::ImproperTransform);
            }
            mapped.push(dehom(h));
        }
        Ok((
            Polytope::from_vertices_and_facets(vertices, facets)?,
            mapped,
        ))
    }
}

fn check_point_set(vertices: &[Point]) -> Result<usize> {
    let dim = vertices
        .first()
        .map(Point::dim)
        .ok_or_else(|| Error::DegenerateInput("no vertices".into()))?;
    if dim == 0 {
        return Err(Error::DegenerateInput("zero-dimensional points".into()));
    }
    if let Some(v) = vertices.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    let refs: Vec<&Point> = vertices.iter().collect();
    let rank = affine_rank(&refs);
    if vertices.len() < dim + 1 || rank < dim {
        return Err(Error::DegenerateInput(format!(
            "affine hull has dimension {rank}, need {dim}"
        )));
    }
    Ok(dim)
}

fn affine_rank(points: &[&Point]) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let rows: Vec<Vec<Real>> = points[1..]
        .iter()
        .map(|p| real::sub(p.coords(), points[0].coords()))
        .collect();
    Mat::from_rows(&rows).rank(1e-9)
}

fn diameter_of(points: &[Point]) -> f64 {
    let mut d = 0.0_f64;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(a.dist(b));
        }
    }
    d
}

fn dedup_points(points: Vec<Point>) -> Vec<Point> {
    let tol = 1e-12 * diameter_of(&points);
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if out.iter().all(|q| q.dist(&p) > tol) {
            out.push(p);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Supporting hyperplanes through every affinely independent `dim`-subset.
fn enumerate_facets(vertices: &[Point], dim: usize, diameter: f64) -> Vec<Halfspace> {
    let tol = EPS_GEOM * diameter;
    let mut facets: Vec<Halfspace> = Vec::new();
    for subset in combinations(vertices.len(), dim) {
        let base = vertices[subset[0]].coords();
        let diffs: Vec<Vec<Real>> = subset[1..]
            .iter()
            .map(|&i| real::sub(vertices[i].coords(), base))
            .collect();
        // Normal by cofactor expansion (generalised cross product).
        let normal: Vec<Real> = (0..dim)
            .map(|j| {
                let minor: Vec<Vec<Real>> = diffs
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| *v)
                            .collect()
                    })
                    .collect();
                let det = if minor.is_empty() {
                    real(1.0)
                } else {
                    Mat::from_rows(&minor).det()
                };
                if j % 2 == 0 {
                    det
                } else {
                    -det
                }
            })
            .collect();
        if real::norm_f64(&normal) <= 1e-12 * diameter.powi(dim as i32 - 1) {
            continue;
        }
        let offset = real::dot(&normal, base);
        let Ok(mut h) = Halfspace::from_reals(normal, offset) else {
            continue;
        };
        let slacks: Vec<f64> = vertices
            .iter()
            .map(|v| to_f64(h.slack(v.coords())))
            .collect();
        if !slacks.iter().all(|s| *s >= -tol) {
            if !slacks.iter().all(|s| *s <= tol) {
                continue;
            }
            h = Halfspace {
                normal: h.normal.iter().map(|c| -*c).collect(),
                offset: -h.offset,
            };
        }
        let duplicate = facets.iter().any(|f| {
            f.normal
                .iter()
                .zip(&h.normal)
                .all(|(a, b)| (to_f64(*a) - to_f64(*b)).abs() <= 1e-9)
                && (to_f64(f.offset) - to_f64(h.offset)).abs() <= tol
        });
        if !duplicate {
            facets.push(h);
        }
    }
    facets
}
