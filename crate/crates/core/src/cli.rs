//! Command-line front end. Exit codes: 0 success, 1 inconclusive
//! experiment, 2 input or geometry error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::asymptotics::{
    angle_constant_estimate, gromov_bounded_experiment, gromov_divergence_experiment,
    mutual_distance_experiment, ApproachSequence,
};
use crate::cone::{sinkhorn_monitor, PositiveMatrix, PositiveVector};
use crate::domain::{Point, Polytope};
use crate::error::{Error, Result};
use crate::metric::hilbert_distance;
use crate::render::{render_svg, SceneDescription};
use crate::report::{ExperimentReport, Verdict};

#[derive(Debug, Parser)]
#[command(
    name = "hilbert",
    version,
    about = "Hilbert geometry of convex polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hilbert distance between two interior points, e.g. `0.25,0.5`.
    Dist {
        #[arg(long)]
        domain: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Run an experiment and print its verdict.
    Experiment(Box<ExperimentArgs>),
    /// Draw a scene file as SVG.
    Render {
        scene: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    GromovBounded,
    GromovDiverge,
    AngleConstant,
    MutualDistance,
    Sinkhorn,
}

#[derive(Debug, clap::Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    /// Polytope JSON; the unit square when omitted.
    #[arg(long)]
    pub domain: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the full report here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Sequence length (Gromov), boundary samples (angle) or sweep cap (Sinkhorn).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Sinkhorn stopping distance.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Basepoint; the domain centroid when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub p0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub xbar: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub zbar: Option<String>,
    /// Common boundary target of the divergence experiment.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<String>,
    /// Base points of the two radial sequences of the divergence experiment.
    #[arg(long, allow_hyphen_values = true)]
    pub base_a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub base_b: Option<String>,
    /// Chords per boundary sample (angle).
    #[arg(long, default_value_t = 64)]
    pub chord_samples: usize,
    /// Simplex dimension (mutual distance).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value = "10,20,40")]
    pub ks: String,
    /// Rows separated by `;`, entries by `,`.
    #[arg(long, default_value = "2,1;1,2")]
    pub matrix: String,
    #[arg(long, default_value = "0.3,0.7")]
    pub rows: String,
    #[arg(long, default_value = "0.6,0.4")]
    pub cols: String,
}

/// Parses `a,b,c` into numbers.
pub fn parse_vector(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidArgument(format!("not a number: {t:?} in {s:?}")))
        })
        .collect()
}

fn parse_point(s: &str) -> Result<Point> {
    Point::try_new(&parse_vector(s)?)
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split(';').map(parse_vector).collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_domain(path: Option<&Path>) -> Result<Polytope> {
    match path {
        Some(p) => Polytope::from_json(&read(p)?),
        None => Ok(Polytope::unit_square()),
    }
}

fn point_or(arg: &Option<String>, default: Option<&[f64]>, name: &str) -> Result<Point> {
    match (arg, default) {
        (Some(s), _) => parse_point(s),
        (None, Some(d)) => Ok(Point::new(d.to_vec())),
        (None, None) => Err(Error::InvalidArgument(format!(
            "--{name} is required with --domain"
        ))),
    }
}

fn cmd_dist(domain: &Path, x: &str, y: &str, out: &mut dyn Write) -> Result<i32> {
    let d = Polytope::from_json(&read(domain)?)?;
    let h = hilbert_distance(&d, &parse_point(x)?, &parse_point(y)?)?;
    let _ = writeln!(out, "{:.12}", h.value());
    Ok(0)
}

fn run_experiment(a: &ExperimentArgs) -> Result<ExperimentReport> {
    let domain = load_domain(a.domain.as_deref())?;
    let square = a.domain.is_none();
    let centroid = domain.centroid().to_f64();
    let p0 = point_or(&a.p0, Some(&centroid), "p0")?;
    match a.kind {
        Kind::GromovBounded => {
            let xbar = point_or(&a.xbar, square.then_some(&[0.0, 0.3][..]), "xbar")?;
            let zbar = point_or(&a.zbar, square.then_some(&[1.0, 0.7][..]), "zbar")?;
            gromov_bounded_experiment(
                &domain,
                &p0,
                &domain.boundary_point(&xbar)?,
                &domain.boundary_point(&zbar)?,
                a.samples.unwrap_or(60),
            )
        }
        Kind::GromovDiverge => {
            let target = point_or(&a.target, square.then_some(&[0.0, 0.5][..]), "target")?;
            let base_a = point_or(&a.base_a, square.then_some(&[0.5, 0.3][..]), "base-a")?;
            let base_b = point_or(&a.base_b, square.then_some(&[0.5, 0.7][..]), "base-b")?;
            let ca = ApproachSequence::radial(&domain, &target, &base_a)?;
            let cb = ApproachSequence::radial(&domain, &target, &base_b)?;
            gromov_divergence_experiment(
                &domain,
                &p0,
                &domain.boundary_point(&target)?,
                &ca,
                &cb,
                a.samples.unwrap_or(80),
            )
        }
        Kind::AngleConstant => angle_constant_estimate(
            &domain,
            &p0,
            a.samples.unwrap_or(256),
            a.chord_samples,
            a.seed,
        ),
        Kind::MutualDistance => mutual_distance_experiment(a.n, &parse_vector(&a.ks)?),
        Kind::Sinkhorn => {
            let m = PositiveMatrix::new(parse_matrix(&a.matrix)?)?;
            let r = PositiveVector::new(parse_vector(&a.rows)?)?;
            let c = PositiveVector::new(parse_vector(&a.cols)?)?;
            sinkhorn_monitor(&m, &r, &c, a.samples.unwrap_or(1000), a.tol)
        }
    }
}

fn print_report(report: &ExperimentReport, out: &mut dyn Write) {
    let _ = writeln!(out, "{}", report.verdict);
    for (k, v) in &report.metadata.outputs {
        let _ = writeln!(out, "{k} = {v:.12}");
    }
    let _ = writeln!(out, "{} value", report.index_name);
    for (k, v) in report.index.iter().zip(&report.values) {
        let _ = writeln!(out, "{k} {v:.11e}");
    }
}

fn cmd_experiment(a: &ExperimentArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (report, note) = match run_experiment(a) {
        Ok(r) => (r, None),
        Err(Error::NotConverged(r)) => {
            let msg = Error::NotConverged(r.clone()).to_string();
            (*r, Some(msg))
        }
        Err(e) => return Err(e),
    };
    if let Some(path) = &a.csv {
        report.write_csv(path)?;
    }
    print_report(&report, out);
    if let Some(msg) = note {
        let _ = writeln!(err, "{msg}");
    }
    Ok(if report.verdict == Verdict::Inconclusive {
        1
    } else {
        0
    })
}

fn cmd_render(scene: &Path, svg: &Path) -> Result<i32> {
    let scene = SceneDescription::from_json(&read(scene)?)?;
    let doc = render_svg(&scene)?;
    std::fs::write(svg, doc)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", svg.display())))?;
    Ok(0)
}

/// Runs a parsed command, returning the exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Dist { domain, x, y } => cmd_dist(domain, x, y, out),
        Command::Experiment(a) => cmd_experiment(a, out, err),
        Command::Render { scene, svg } => cmd_render(scene, svg),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "{e}");
        2
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                2
            } else {
                let _ = write!(out, "{e}");
                0
            }
        }
    }
}
