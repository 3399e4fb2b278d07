//! Experiment reports: indexed value series, a verdict, and metadata that
//! records every parameter needed to rerun the experiment.
//!
//! CSV layout: a first line `# {json}` holding `{"metadata": .., "verdict": ..}`,
//! then a header row and one row per index. Values use 12 significant digits.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::asymptotics::ApproachRule;
use crate::domain::PolytopeSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    Bounded { sup: f64 },
    Diverges { k: usize },
    Converged { sweeps: usize },
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Bounded { sup } => write!(f, "Bounded(sup={sup:.12})"),
            Verdict::Diverges { k } => write!(f, "Diverges(k={k})"),
            Verdict::Converged { sweeps } => write!(f, "Converged(sweeps={sweeps})"),
            Verdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Parameters of each experiment kind, as they appear in the CSV header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum ExperimentParams {
    GromovBounded {
        domain: PolytopeSpec,
        p0: Vec<f64>,
        xbar: Vec<f64>,
        zbar: Vec<f64>,
        n: usize,
    },
    GromovDiverge {
        domain: PolytopeSpec,
        p0: Vec<f64>,
        target: Vec<f64>,
        curve_a: ApproachRule,
        curve_b: ApproachRule,
        n: usize,
    },
    GromovSequences {
        domain: PolytopeSpec,
        p0: Vec<f64>,
        target_a: Vec<f64>,
        target_b: Vec<f64>,
        curve_a: ApproachRule,
        curve_b: ApproachRule,
        n: usize,
    },
    AngleConstant {
        domain: PolytopeSpec,
        p0: Vec<f64>,
        z_samples: usize,
        chord_samples: usize,
    },
    MutualDistance {
        n: usize,
        ks: Vec<f64>,
    },
    Sinkhorn {
        matrix: Vec<Vec<f64>>,
        row_marginals: Vec<f64>,
        col_marginals: Vec<f64>,
        max_iters: usize,
        tol: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub params: ExperimentParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Calibration constants the verdict was computed with.
    #[serde(default)]
    pub settings: BTreeMap<String, f64>,
    /// Derived scalars (fitted rates, analytic bounds, ...).
    #[serde(default)]
    pub outputs: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub index_name: String,
    pub index: Vec<f64>,
    pub values: Vec<f64>,
    pub extra: Vec<(String, Vec<f64>)>,
    pub verdict: Verdict,
    pub metadata: ReportMetadata,
}

#[derive(Serialize, Deserialize)]
struct Header {
    metadata: ReportMetadata,
    verdict: Verdict,
}

fn fmt_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.11e}")
    } else {
        v.to_string()
    }
}

impl ExperimentReport {
    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// First index value from which the series is nondecreasing within `tol`.
    pub fn nondecreasing_from(&self, tol: f64) -> Option<f64> {
        let v = &self.values;
        if v.is_empty() {
            return None;
        }
        let mut start = v.len() - 1;
        while start > 0 && v[start] >= v[start - 1] - tol {
            start -= 1;
        }
        Some(self.index[start])
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let header = Header {
            metadata: self.metadata.clone(),
            verdict: self.verdict.clone(),
        };
        let json =
            serde_json::to_string(&header).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut names = vec![self.index_name.clone(), "value".to_string()];
        names.extend(self.extra.iter().map(|(n, _)| n.clone()));
        let io = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
        w.write_record(&names).map_err(io)?;
        for (i, (k, v)) in self.index.iter().zip(&self.values).enumerate() {
            let mut row = vec![k.to_string(), fmt_value(*v)];
            row.extend(self.extra.iter().map(|(_, col)| fmt_value(col[i])));
            w.write_record(&row).map_err(io)?;
        }
        let body = String::from_utf8(
            w.into_inner()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?,
        )
        .expect("csv output is utf-8");
        Ok(format!("# {json}\n{body}"))
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv_string()?)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let bad = |m: String| Error::InvalidArgument(format!("report csv: {m}"));
        let (first, rest) = text
            .split_once('\n')
            .ok_or_else(|| bad("missing header".into()))?;
        let json = first
            .strip_prefix("# ")
            .ok_or_else(|| bad("missing metadata line".into()))?;
        let header: Header = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
        let mut r = csv::Reader::from_reader(rest.as_bytes());
        let names: Vec<String> = r
            .headers()
            .map_err(|e| bad(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if names.len() < 2 {
            return Err(bad("need index and value columns".into()));
        }
        let mut cols: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for rec in r.records() {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            for (c, field) in cols.iter_mut().zip(rec.iter()) {
                c.push(field.parse().map_err(|e| bad(format!("{field}: {e}")))?);
            }
        }
        let mut cols = cols.into_iter();
        let index = cols.next().unwrap();
        let values = cols.next().unwrap();
        Ok(Self {
            index_name: names[0].clone(),
            index,
            values,
            extra: names[2..].iter().cloned().zip(cols).collect(),
            verdict: header.verdict,
            metadata: header.metadata,
        })
    }
}

/// Verdict rules shared by the sequence experiments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerdictRules {
    /// A value above this is read as divergence.
    pub divergence_threshold: f64,
    /// Number of trailing indices over which the running sup must settle.
    pub window: usize,
    /// Allowed growth of the running sup over the window.
    pub slack: f64,
}

impl VerdictRules {
    /// Threshold 20, window `n / 4`, slack `1e-3`.
    pub fn for_length(n: usize) -> Self {
        Self {
            divergence_threshold: 20.0,
            window: (n / 4).max(1),
            slack: 1e-3,
        }
    }

    pub fn settings(&self) -> BTreeMap<String, f64> {
        BTreeMap::from([
            (
                "divergence_threshold".to_string(),
                self.divergence_threshold,
            ),
            ("window".to_string(), self.window as f64),
            ("slack".to_string(), self.slack),
        ])
    }

    pub fn classify(&self, index: &[f64], values: &[f64]) -> Verdict {
        if let Some(i) = values.iter().position(|v| *v > self.divergence_threshold) {
            return Verdict::Diverges {
                k: index[i] as usize,
            };
        }
        if values.len() <= self.window {
            return Verdict::Inconclusive;
        }
        let mut running = Vec::with_capacity(values.len());
        let mut sup = f64::NEG_INFINITY;
        for v in values {
            sup = sup.max(*v);
            running.push(sup);
        }
        let last = running.len() - 1;
        if running[last] - running[last - self.window] < self.slack {
            Verdict::Bounded { sup }
        } else {
            Verdict::Inconclusive
        }
    }
}
