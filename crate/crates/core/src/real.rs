//! Double-double scalar and the handful of dense linear-algebra kernels the
//! geometry needs (dimension is at most a few units, so everything is plain
//! Gaussian elimination with partial pivoting).
//!
//! Coordinates live in double-double precision: points a Hilbert distance of
//! 40 away from a basepoint sit roughly `e^-40` from the boundary, and the
//! facet slack of such a point has to be resolved to several digits.

use std::fmt;
use std::ops::{Add, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use twofloat::TwoFloat;

/// Working scalar for coordinates, facet data and chord parameters.
///
/// Addition, multiplication and square roots come from `twofloat`; its
/// double-double quotient drops the low word of the residual on targets
/// without a fused multiply-add in that code path, so division is done here
/// by two correction steps of long division.
#[derive(Clone, Copy, Default, PartialEq, PartialOrd)]
pub struct Real(TwoFloat);

impl Real {
    #[inline]
    pub fn hi(self) -> f64 {
        self.0.hi()
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.0.lo()
    }

    pub fn abs(self) -> Real {
        if self.hi() < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Real {
        Real(self.0.sqrt())
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", to_f64(*self))
    }
}

impl Add for Real {
    type Output = Real;
    #[inline]
    fn add(self, rhs: Real) -> Real {
        Real(self.0 + rhs.0)
    }
}

impl Sub for Real {
    type Output = Real;
    #[inline]
    fn sub(self, rhs: Real) -> Real {
        Real(self.0 - rhs.0)
    }
}

impl Mul for Real {
    type Output = Real;
    #[inline]
    fn mul(self, rhs: Real) -> Real {
        Real(self.0 * rhs.0)
    }
}

impl Neg for Real {
    type Output = Real;
    #[inline]
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl SubAssign for Real {
    #[inline]
    fn sub_assign(&mut self, rhs: Real) {
        *self = *self - rhs;
    }
}

impl MulAssign for Real {
    #[inline]
    fn mul_assign(&mut self, rhs: Real) {
        *self = *self * rhs;
    }
}

impl Div for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        let b = rhs.hi();
        let q1 = self.hi() / b;
        if !q1.is_finite() {
            return real(q1);
        }
        // TwoFloat * f64 is exact up to the double-double rounding
        let r = self.0 - rhs.0 * q1;
        let q2 = r.hi() / b;
        let r = r - rhs.0 * q2;
        let q3 = r.hi() / b;
        Real(TwoFloat::new_add(q1, q2) + q3)
    }
}

#[inline]
pub fn real(x: f64) -> Real {
    Real(TwoFloat::from(x))
}

/// Nearest `f64` to a double-double value.
#[inline]
pub fn to_f64(x: Real) -> f64 {
    x.hi() + x.lo()
}

#[inline]
pub fn zero() -> Real {
    real(0.0)
}

/// Natural log accurate to `f64` relative precision, including the low word.
pub fn ln(x: Real) -> f64 {
    let hi = x.hi();
    hi.ln() + x.lo() / hi
}

pub fn dot(a: &[Real], b: &[Real]) -> Real {
    a.iter().zip(b).fold(zero(), |acc, (x, y)| acc + *x * *y)
}

pub fn sub(a: &[Real], b: &[Real]) -> Vec<Real> {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn add(a: &[Real], b: &[Real]) -> Vec<Real> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

pub fn scale(a: &[Real], s: Real) -> Vec<Real> {
    a.iter().map(|x| *x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Real], s: Real, b: &[Real]) -> Vec<Real> {
    a.iter().zip(b).map(|(x, y)| *x + s * *y).collect()
}

pub fn norm(a: &[Real]) -> Real {
    let sq = dot(a, a);
    if sq.hi() == 0.0 {
        zero()
    } else {
        sq.sqrt()
    }
}

/// Euclidean length evaluated in `f64`.
pub fn norm_f64(a: &[Real]) -> f64 {
    a.iter()
        .map(|x| to_f64(*x))
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

/// Dense row-major matrix used for eliminations.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Real>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Real>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            debug_assert_eq!(r.len(), cols);
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Real] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn mul_vec(&self, v: &[Real]) -> Vec<Real> {
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Real]) -> Vec<Real> {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(zero(), |acc, i| acc + v[i] * self[(i, j)]))
            .collect()
    }

    fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|x| to_f64(*x).abs())
            .fold(0.0, f64::max)
    }

    /// Determinant of a square matrix (`1` for the empty matrix).
    pub fn det(&self) -> Real {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = real(1.0);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| to_f64(m[(a, k)]).abs().total_cmp(&to_f64(m[(b, k)]).abs()))
                .unwrap();
            if m[(p, k)].hi() == 0.0 {
                return zero();
            }
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let piv = m[(k, k)];
            det *= piv;
            for i in k + 1..n {
                let f = m[(i, k)] / piv;
                if f.hi() != 0.0 {
                    for j in k..n {
                        let v = m[(k, j)];
                        m[(i, j)] -= f * v;
                    }
                }
            }
        }
        det
    }

    /// Rank with pivots below `rel_tol * max|entry|` treated as zero.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let tol = rel_tol * self.max_abs().max(f64::MIN_POSITIVE);
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let p = (rank..m.rows)
                .max_by(|&a, &b| {
                    to_f64(m[(a, col)])
                        .abs()
                        .total_cmp(&to_f64(m[(b, col)]).abs())
                })
                .unwrap();
            if to_f64(m[(p, col)]).abs() <= tol {
                continue;
            }
            m.swap_rows(p, rank);
            let piv = m[(rank, col)];
            for i in rank + 1..m.rows {
                let f = m[(i, col)] / piv;
                for j in col..m.cols {
                    let v = m[(rank, j)];
                    m[(i, j)] -= f * v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Orthonormal-free basis of the null space `{v : M v = 0}`, computed
    /// from the reduced row echelon form.
    pub fn null_space(&self, rel_tol: f64) -> Vec<Vec<Real>> {
        let tol = rel_tol * self.max_abs().max(f64::MIN_POSITIVE);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let p = (r..m.rows)
                .max_by(|&a, &b| {
                    to_f64(m[(a, col)])
                        .abs()
                        .total_cmp(&to_f64(m[(b, col)]).abs())
                })
                .unwrap();
            if to_f64(m[(p, col)]).abs() <= tol {
                continue;
            }
            m.swap_rows(p, r);
            let piv = m[(r, col)];
            for j in 0..m.cols {
                let v = m[(r, j)];
                m[(r, j)] = v / piv;
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m[(i, col)];
                    for j in 0..m.cols {
                        let v = m[(r, j)];
                        m[(i, j)] -= f * v;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero(); m.cols];
                v[f] = real(1.0);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Solve `M x = b` for square `M`; `None` when a pivot falls below
    /// `rel_tol * max|entry|`.
    pub fn solve(&self, b: &[Real], rel_tol: f64) -> Option<Vec<Real>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let tol = rel_tol * self.max_abs().max(f64::MIN_POSITIVE);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &c| to_f64(m[(a, k)]).abs().total_cmp(&to_f64(m[(c, k)]).abs()))
                .unwrap();
            if to_f64(m[(p, k)]).abs() <= tol {
                return None;
            }
            m.swap_rows(p, k);
            rhs.swap(p, k);
            let piv = m[(k, k)];
            for i in k + 1..n {
                let f = m[(i, k)] / piv;
                for j in k..n {
                    let v = m[(k, j)];
                    m[(i, j)] -= f * v;
                }
                let v = rhs[k];
                rhs[i] -= f * v;
            }
        }
        let mut x = vec![zero(); n];
        for k in (0..n).rev() {
            let mut acc = rhs[k];
            for j in k + 1..n {
                acc -= m[(k, j)] * x[j];
            }
            x[k] = acc / m[(k, k)];
        }
        Some(x)
    }

    /// Inverse by column-wise solves.
    pub fn inverse(&self, rel_tol: f64) -> Option<Mat> {
        let n = self.rows;
        let mut inv = Mat::zeros(n, n);
        for j in 0..n {
            let mut e = vec![zero(); n];
            e[j] = real(1.0);
            let col = self.solve(&e, rel_tol)?;
            for i in 0..n {
                inv[(i, j)] = col[i];
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Real;
    fn index(&self, (i, j): (usize, usize)) -> &Real {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Real {
        &mut self.data[i * self.cols + j]
    }
}
