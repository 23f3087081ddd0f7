//! `singconv` command line.
//!
//! JSON artifacts go to `--out` when given, otherwise to stdout; the
//! one-line summaries go to whichever stream the artifact does not use.
//! Exit status: 0 ok, 2 bad input, 3 no exact answer in the class ring,
//! 4 a cross-check failed.

mod job;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use singconv::arith::fmt_q;
use singconv::bases::fermat_class;
use singconv::convolve::{check_curve_form, convolve};
use singconv::fans::{dual_fan, exponent_of, simplicial_refinement, suspend_germ, FanJson};
use singconv::fforacle::{verify_convolution, VerifyOptions, VerifyReport};
use singconv::ghodge::SpectralTable;
use singconv::newton::{
    faces, is_nondegenerate_with, is_quasi_homogeneous, newton_polyhedron_with, Convenience, Facet,
    NondegeneracyOptions, Verdict,
};
use singconv::{ErrorKind, Fan, GermClassBundle, ScaledLattice};

const DEFAULT_SEED: u64 = 0x5eed;
const DEFAULT_PRIMES: [u64; 4] = [7, 13, 19, 31];

#[derive(Parser)]
#[command(name = "singconv", version, about = "Hodge classes of composite singularities")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Require,
    Relax,
    Truncate,
}

impl From<Mode> for Convenience {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Require => Convenience::Require,
            Mode::Relax => Convenience::Relax,
            Mode::Truncate => Convenience::Truncate,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Newton polyhedron of a germ.
    Newton {
        germ: PathBuf,
        #[arg(long, value_enum, default_value = "require")]
        mode: Mode,
        /// Also test non-degeneracy over these primes.
        #[arg(long, value_delimiter = ',')]
        nondegenerate: Option<Vec<u64>>,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fans attached to a germ.
    Fan {
        #[command(subcommand)]
        action: FanAction,
    },
    /// Exponent of a germ on a scaled lattice.
    Exponent {
        germ: PathBuf,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "require")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Base classes.
    Bases {
        #[command(subcommand)]
        action: BasesAction,
    },
    /// Class of a composite singularity from a job file.
    Convolve {
        job: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the spectral table.
        #[arg(long)]
        spectrum: bool,
        /// Recompute a two-summand sum through the curve form and compare.
        #[arg(long, alias = "check-0-1")]
        check_curve_form: bool,
    },
    /// Spectral table of a bundle file or a builtin.
    Spectrum {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        builtin: Option<String>,
        #[arg(long)]
        d: Option<u32>,
        /// Number of variables; needed for plain vanishing classes such as
        /// `convolve` output.
        #[arg(long)]
        nvars: Option<u32>,
    },
    /// Finite-field check of a composite job.
    Verify {
        job: PathBuf,
        /// Primes to test; defaults to 7,13,19,31 filtered by the congruences.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u64>>,
        /// Accept inner germs that are not quasi-homogeneous.
        #[arg(long)]
        allow_inhomogeneous: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FanAction {
    /// Dual fan of the Newton polyhedron.
    Dual {
        germ: PathBuf,
        #[arg(long, value_enum, default_value = "require")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simplicial refinement of a fan file.
    Refine {
        fan: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Suspension fan over the refined dual fan, with the reducedness check.
    Suspend {
        germ: PathBuf,
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<u32>>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum, default_value = "require")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BasesAction {
    /// Class of the Fermat sum `y_1^d_1 + .. + y_r^d_r` on `mu_d x mu_m`.
    Fermat {
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes the artifact to `out` or stdout and the summary to the other stream.
fn emit<T: Serialize>(value: &T, out: Option<&Path>, summary: &str) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            print!("{summary}");
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn lattice_for(d: Option<Vec<u32>>, n: usize) -> Result<ScaledLattice> {
    let lattice = match d {
        Some(d) => ScaledLattice::new(d)?,
        None => ScaledLattice::standard(n),
    };
    if lattice.rank() != n {
        bail!(singconv::Error::Parse(format!("germ has {n} variables but d has {} entries", lattice.rank())));
    }
    Ok(lattice)
}

#[derive(Serialize)]
struct FaceOut {
    dim: usize,
    vertices: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct NewtonOut {
    nvars: usize,
    convenient: bool,
    quasi_homogeneous: bool,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    compact_faces: Vec<FaceOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nondegenerate: Option<String>,
}

fn run_newton(germ: &Path, mode: Mode, primes: Option<Vec<u64>>, samples: u64, seed: u64, out: Option<&Path>) -> Result<u8> {
    let g = job::load_germ(germ)?;
    let delta = newton_polyhedron_with(&g, mode.into())?;
    let compact_faces: Vec<FaceOut> = faces(&delta)
        .into_iter()
        .filter(|f| f.is_compact())
        .map(|f| FaceOut { dim: f.dim, vertices: f.vertices })
        .collect();
    let nondegenerate = match primes {
        None => None,
        Some(primes) => {
            let opts = NondegeneracyOptions { primes, samples, seed, ..Default::default() };
            Some(match is_nondegenerate_with(&g, &opts)? {
                Verdict::ProbablyNondegenerate => "probably nondegenerate".to_string(),
                Verdict::Inconclusive => "inconclusive".to_string(),
                Verdict::DegenerateWitness { face, p, point } => {
                    format!("degenerate on face {:?} over F_{p} at {point:?}", face.vertices)
                }
            })
        }
    };
    let report = NewtonOut {
        nvars: g.nvars(),
        convenient: g.is_convenient(),
        quasi_homogeneous: is_quasi_homogeneous(&g)?,
        vertices: delta.vertices().to_vec(),
        facets: delta.facets().to_vec(),
        compact_faces,
        nondegenerate,
    };
    let mut summary = format!(
        "{} vertices, {} facets, {} compact faces",
        report.vertices.len(),
        report.facets.len(),
        report.compact_faces.len()
    );
    if let Some(v) = &report.nondegenerate {
        summary.push_str(&format!("; {v}"));
    }
    emit(&report, out, &(summary + "\n"))?;
    Ok(0)
}

fn fan_summary(fan: &Fan) -> String {
    format!(
        "{} rays, {} maximal cones, simplicial: {}\n",
        fan.rays().len(),
        fan.maximal_cones().len(),
        fan.is_simplicial()
    )
}

#[derive(Serialize)]
struct SuspendOut {
    m: u32,
    fan: FanJson,
    report: singconv::fans::ReducedReport,
}

fn run_fan(action: FanAction) -> Result<u8> {
    match action {
        FanAction::Dual { germ, mode, out } => {
            let g = job::load_germ(&germ)?;
            let fan = dual_fan(&newton_polyhedron_with(&g, mode.into())?);
            emit(&fan.to_json(), out.as_deref(), &fan_summary(&fan))?;
            Ok(0)
        }
        FanAction::Refine { fan, out } => {
            let j: FanJson = serde_json::from_str(&job::read(&fan)?)
                .map_err(|e| singconv::Error::Parse(format!("{}: {e}", fan.display())))?;
            let refined = simplicial_refinement(&Fan::from_json(&j)?)?;
            emit(&refined.to_json(), out.as_deref(), &fan_summary(&refined))?;
            Ok(0)
        }
        FanAction::Suspend { germ, d, m, mode, out } => {
            let g = job::load_germ(&germ)?;
            let lattice = lattice_for(d, g.nvars())?;
            let s = suspend_germ(&g, &lattice, m, mode.into())?;
            let verdict = if s.report.pass { "PASS" } else { "FAIL" };
            let summary = format!("m={}\n{}reducedness {verdict}\n", s.m, fan_summary(&s.fan));
            emit(&SuspendOut { m: s.m, fan: s.fan.to_json(), report: s.report.clone() }, out.as_deref(), &summary)?;
            Ok(if s.report.pass { 0 } else { 4 })
        }
    }
}

fn run_exponent(germ: &Path, d: Option<Vec<u32>>, mode: Mode, out: Option<&Path>) -> Result<u8> {
    let g = job::load_germ(germ)?;
    let lattice = lattice_for(d, g.nvars())?;
    let e = exponent_of(&g, &lattice, mode.into())?;
    let summary = format!("m={}\n", e.m);
    match out {
        Some(path) => emit(&e, Some(path), &summary)?,
        None => print!("{summary}"),
    }
    Ok(0)
}

fn run_bases(action: BasesAction) -> Result<u8> {
    let BasesAction::Fermat { d, m, out } = action;
    let m = m.unwrap_or_else(|| d.iter().fold(1, |a, &b| num_integer::lcm(a, b)));
    let class = fermat_class(&d, m)?;
    let summary = format!("rank {}\n", class.rank());
    emit(&class.to_json(), out.as_deref(), &summary)?;
    Ok(0)
}

fn spectrum_text(t: &SpectralTable) -> String {
    let mut s = t.render();
    match t.multiset() {
        Some(v) => {
            let v: Vec<String> = v.iter().map(fmt_q).collect();
            s.push_str(&format!("spectrum {{{}}}\n", v.join(", ")));
        }
        None => s.push_str("spectrum has negative multiplicities\n"),
    }
    s
}

fn run_convolve(path: &Path, out: Option<&Path>, spectrum: bool, check: bool) -> Result<u8> {
    let loaded = job::load_convolve(path)?;
    let job = &loaded.job;
    let class = convolve(job)?;
    if check {
        if !loaded.sum_registry || job.n() != 2 {
            bail!(singconv::Error::PreconditionViolation(
                "the curve-form check needs two summands and the sum registry".into()
            ));
        }
        let [b1, b2] = job.bundles() else { unreachable!() };
        let pair = check_curve_form(b1, b2)?.rebase(job.m())?;
        if pair != class {
            bail!(singconv::Error::Mismatch(format!("engine {class} vs pair formula {pair}")));
        }
    }
    let nvars = job.nvars();
    let mut summary = format!("{class}\n");
    if let Some(n) = nvars {
        summary.push_str(&format!("{n} variables\n"));
    }
    if check {
        summary.push_str("curve form agrees\n");
    }
    if spectrum {
        match nvars {
            Some(n) => {
                let b = GermClassBundle::from_vanishing(class.clone(), Some(n))?;
                summary.push_str(&spectrum_text(&b.spectrum(None)?));
            }
            None => summary.push_str("spectrum unavailable: some bundle does not state its variables\n"),
        }
    }
    emit(&class.to_json(), out, &summary)?;
    Ok(0)
}

fn run_spectrum(input: Option<PathBuf>, builtin: Option<String>, d: Option<u32>, nvars: Option<u32>) -> Result<u8> {
    let bundle = match (input, builtin) {
        (Some(path), _) => job::load_bundle_file(&path)?,
        (None, Some(name)) => GermClassBundle::builtin(&name, d)?,
        (None, None) => bail!(singconv::Error::Parse("give a bundle file or --builtin".into())),
    };
    print!("{}", spectrum_text(&bundle.spectrum(nvars)?));
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOut {
    d: Vec<u32>,
    m: u32,
    reports: Vec<VerifyReport>,
    pass: bool,
}

fn run_verify(path: &Path, primes: Option<Vec<u64>>, allow_inhomogeneous: bool, out: Option<&Path>) -> Result<u8> {
    let v = job::load_verify(path)?;
    let divides = |p: u64| (p - 1) % v.m as u64 == 0 && v.d.iter().all(|&d| (p - 1) % d as u64 == 0);
    let primes: Vec<u64> = match primes {
        Some(p) => p,
        None => DEFAULT_PRIMES.iter().copied().filter(|&p| divides(p)).collect(),
    };
    if primes.is_empty() {
        bail!(singconv::Error::PreconditionViolation(format!(
            "no default prime is 1 mod every d_i and m = {}",
            v.m
        )));
    }
    let opts = VerifyOptions { require_quasi_homogeneous: !allow_inhomogeneous, ..Default::default() };
    let mut reports = Vec::new();
    let mut summary = String::new();
    for &p in &primes {
        let r = verify_convolution(&v.f, &v.g, &v.d, p, v.m, &opts)?;
        summary.push_str(&format!(
            "p={p} m={} {} ({} characters, {} discrepancies)\n",
            v.m,
            if r.pass { "PASS" } else { "FAIL" },
            r.rows.len(),
            r.discrepancies().len()
        ));
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.pass);
    emit(&VerifyOut { d: v.d, m: v.m, reports, pass }, out, &summary)?;
    Ok(if pass { 0 } else { 4 })
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    match cli.command {
        Command::Newton { germ, mode, nondegenerate, samples, out } => {
            run_newton(&germ, mode, nondegenerate, samples, cli.seed, out.as_deref())
        }
        Command::Fan { action } => run_fan(action),
        Command::Exponent { germ, d, mode, out } => run_exponent(&germ, d, mode, out.as_deref()),
        Command::Bases { action } => run_bases(action),
        Command::Convolve { job, out, spectrum, check_curve_form } => {
            run_convolve(&job, out.as_deref(), spectrum, check_curve_form)
        }
        Command::Spectrum { input, builtin, d, nvars } => run_spectrum(input, builtin, d, nvars),
        Command::Verify { job, p, allow_inhomogeneous, out } => run_verify(&job, p, allow_inhomogeneous, out.as_deref()),
    }
}

fn exit_status(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<singconv::Error>().map(|e| e.kind()) {
        Some(ErrorKind::Algebraic) => 3,
        Some(ErrorKind::Verification) => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
