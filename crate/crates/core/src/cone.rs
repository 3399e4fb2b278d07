//! The Hilbert projective metric on the positive cone, Birkhoff's contraction
//! coefficient, and a Sinkhorn scaling monitor measured in that metric.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::report::{ExperimentParams, ExperimentReport, ReportMetadata, Verdict};

/// Successive distances below this are too close to rounding noise to give
/// meaningful decay ratios.
pub const RATIO_FLOOR: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub struct PositiveVector {
    entries: Vec<f64>,
}

impl PositiveVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() || !entries.iter().all(|e| *e > 0.0 && e.is_finite()) {
            return Err(Error::NotPositive);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rescaled to sum 1.
    pub fn normalized(&self) -> Vec<f64> {
        let s: f64 = self.entries.iter().sum();
        self.entries.iter().map(|e| e / s).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositiveMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl PositiveMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument(
                "matrix rows must be nonempty and of equal length".into(),
            ));
        }
        let data: Vec<f64> = rows.iter().flatten().copied().collect();
        if !data.iter().all(|e| *e > 0.0 && e.is_finite()) {
            return Err(Error::NotPositive);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.cols).map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn apply(&self, v: &PositiveVector) -> Result<PositiveVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok(PositiveVector {
            entries: self.mul(&v.entries),
        })
    }

    fn mul(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.cols)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// `ln(u_i / v_i)`, through `ln_1p` when the ratio is close to one.
fn log_ratio(u: f64, v: f64) -> f64 {
    let q = (u - v) / v;
    if q.abs() < 0.5 {
        q.ln_1p()
    } else {
        (u / v).ln()
    }
}

/// `ln(max_i u_i/v_i * max_j v_j/u_j)`.
pub fn cone_distance(u: &PositiveVector, v: &PositiveVector) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let (lo, hi) = u
        .entries
        .iter()
        .zip(&v.entries)
        .map(|(a, b)| log_ratio(*a, *b))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        });
    Ok((hi - lo).max(0.0))
}

/// Projective diameter `max ln(A_ik A_jl / (A_jk A_il))` of the image cone.
pub fn birkhoff_diameter(a: &PositiveMatrix) -> f64 {
    let l: Vec<f64> = a.data.iter().map(|x| x.ln()).collect();
    let at = |i: usize, k: usize| l[i * a.cols + k];
    let mut best: f64 = 0.0;
    // For fixed columns k, l the quadruple maximum separates over i and j.
    for k in 0..a.cols {
        for m in 0..a.cols {
            let (mut hi, mut lo) = (f64::NEG_INFINITY, f64::INFINITY);
            for i in 0..a.rows {
                let d = at(i, k) - at(i, m);
                hi = hi.max(d);
                lo = lo.min(d);
            }
            best = best.max(hi - lo);
        }
    }
    best
}

/// Birkhoff's coefficient `tanh(diameter / 4)`.
pub fn contraction_ratio(a: &PositiveMatrix) -> f64 {
    (birkhoff_diameter(a) / 4.0).tanh()
}

fn fitted_rate(d: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = d
        .iter()
        .enumerate()
        .filter(|(_, v)| **v >= RATIO_FLOOR)
        .map(|(i, v)| (i as f64, v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    Some((sxy / sxx).exp())
}

/// Alternating scaling `a = r / (A b)`, `b = c / (A^T a)` from `b = 1`,
/// recording the cone distance between successive column scalings. Stops at
/// the first sweep whose distance is at most `tol`.
///
/// The `ratio` column holds `d_t / d_{t-1}` while `d_{t-1} >= RATIO_FLOOR`
/// (NaN otherwise); each such ratio is bounded by the squared contraction
/// ratio of `A`.
pub fn sinkhorn_monitor(
    a: &PositiveMatrix,
    row_marginals: &PositiveVector,
    col_marginals: &PositiveVector,
    max_iters: usize,
    tol: f64,
) -> Result<ExperimentReport> {
    for (expected, got) in [(a.rows, row_marginals.len()), (a.cols, col_marginals.len())] {
        if expected != got {
            return Err(Error::DimensionMismatch { expected, got });
        }
    }
    let rs: f64 = row_marginals.entries.iter().sum();
    let cs: f64 = col_marginals.entries.iter().sum();
    if (rs - cs).abs() > 1e-12 * rs.max(cs).max(1.0) {
        return Err(Error::MarginalMismatch { rows: rs, cols: cs });
    }
    let at = a.transpose();
    let mut b = vec![1.0; a.cols];
    let mut dists = Vec::new();
    let mut ratios = Vec::new();
    let mut converged = None;
    for sweep in 1..=max_iters {
        let ab = a.mul(&b);
        let row: Vec<f64> = row_marginals
            .entries
            .iter()
            .zip(&ab)
            .map(|(r, x)| r / x)
            .collect();
        let ata = at.mul(&row);
        let next: Vec<f64> = col_marginals
            .entries
            .iter()
            .zip(&ata)
            .map(|(c, x)| c / x)
            .collect();
        let d = cone_distance(
            &PositiveVector {
                entries: next.clone(),
            },
            &PositiveVector { entries: b },
        )?;
        ratios.push(match dists.last() {
            Some(&prev) if prev >= RATIO_FLOOR => d / prev,
            _ => f64::NAN,
        });
        dists.push(d);
        b = next;
        if d <= tol {
            converged = Some(sweep);
            break;
        }
    }
    let lambda = contraction_ratio(a);
    let max_ratio = ratios
        .iter()
        .copied()
        .filter(|r| !r.is_nan())
        .fold(f64::NAN, f64::max);
    let mut outputs = BTreeMap::from([
        ("contraction_ratio".to_string(), lambda),
        ("lambda_squared".to_string(), lambda * lambda),
    ]);
    if !max_ratio.is_nan() {
        outputs.insert("max_observed_ratio".into(), max_ratio);
    }
    if let Some(rate) = fitted_rate(&dists) {
        outputs.insert("fitted_rate".into(), rate);
    }
    let report = ExperimentReport {
        index_name: "sweep".into(),
        index: (1..=dists.len()).map(|t| t as f64).collect(),
        values: dists,
        extra: vec![("ratio".into(), ratios)],
        verdict: match converged {
            Some(sweeps) => Verdict::Converged { sweeps },
            None => Verdict::Inconclusive,
        },
        metadata: ReportMetadata {
            params: ExperimentParams::Sinkhorn {
                matrix: a.to_rows(),
                row_marginals: row_marginals.entries.clone(),
                col_marginals: col_marginals.entries.clone(),
                max_iters,
                tol,
            },
            seed: None,
            settings: BTreeMap::from([("ratio_floor".to_string(), RATIO_FLOOR)]),
            outputs,
        },
    };
    match converged {
        Some(_) => Ok(report),
        None => Err(Error::NotConverged(Box::new(report))),
    }
}
