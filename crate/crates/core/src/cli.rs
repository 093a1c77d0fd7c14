//! Command-line driver.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;

use crate::basis::{gram_matrix, riesz_report};
use crate::error::FrozenError;
use crate::forward::{compute_spectrum, verify_asymptotics};
use crate::inverse::{
    algorithm1, algorithm2, check_growth, isobispectral_family,
    isospectral_family, InverseOptions, OperatorKind, OperatorSpec, TwoSpectra,
};
use crate::io::{
    parse_complex, read_operator, read_potential, read_spectrum, write_potential, write_spectrum,
    FormatError,
};
use crate::samples::windowed_potential;
use crate::spectral_core::{FrozenConfig, Potential, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Forward,
    Inverse1,
    Inverse2,
    Roundtrip,
    Isospectral,
    Isobispectral,
    Basischeck,
    Growthcheck,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "frozen-hill", about = "Spectra of Hill-type operators with a frozen argument")]
pub struct JobConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Frozen point.
    #[arg(long)]
    pub a: Option<f64>,
    /// Boundary parameter as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Number of eigenvalues.
    #[arg(long, default_value_t = 30)]
    pub m: usize,
    /// Grid intervals.
    #[arg(long, default_value_t = 1024)]
    pub grid: usize,
    #[arg(long)]
    pub kterms: Option<usize>,
    #[arg(long)]
    pub ntrunc: Option<usize>,
    #[arg(long, default_value_t = 1e-3)]
    pub tol: f64,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long = "in2")]
    pub input2: Option<PathBuf>,
    /// Operator file; repeat for families.
    #[arg(long)]
    pub op: Vec<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// basischeck: alpha as re,im.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// basischeck: comma-separated half-widths.
    #[arg(long, default_value = "8,16,32,64")]
    pub nlist: String,
}

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(String),
    Numeric(String),
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Tolerance(_) => 5,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Numeric(m) | CliError::Tolerance(m) => m,
        }
    }
}

impl From<FrozenError> for CliError {
    fn from(e: FrozenError) -> Self {
        let name = format!("{e:?}");
        let name = name.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        let msg = format!("{name}: {e}");
        match e {
            FrozenError::RootIsolation { .. } | FrozenError::PoleInTail { .. } => CliError::Numeric(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Precondition(format!("{}: {e}", path.display())))
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> CliResult<&'a Path> {
    p.as_deref().ok_or_else(|| CliError::Precondition(format!("--{flag} is required")))
}

fn parse_gamma(s: &str) -> CliResult<Complex64> {
    parse_complex(s).ok_or_else(|| CliError::Parse(format!("--gamma: '{s}' is not re,im")))
}

fn numbered(out: &Path, i: usize) -> PathBuf {
    let stem = out.with_extension("");
    PathBuf::from(format!("{}_{i}.txt", stem.display()))
}

impl JobConfig {
    fn options(&self) -> CliResult<InverseOptions> {
        let k = self.kterms.unwrap_or(self.m);
        let nt = self.ntrunc.unwrap_or(self.m);
        Ok(InverseOptions::new(k, nt, self.grid)?)
    }

    fn gamma_or(&self, fallback: Complex64) -> CliResult<Complex64> {
        self.gamma.as_deref().map(parse_gamma).unwrap_or(Ok(fallback))
    }

    fn spectrum_in(&self, path: &Path) -> CliResult<Spectrum> {
        Ok(read_spectrum(&read_text(path)?, self.a.unwrap_or(0.0))?)
    }

    fn operators(&self, domain_length: f64) -> CliResult<Vec<OperatorSpec>> {
        self.op
            .iter()
            .map(|p| Ok(read_operator(&read_text(p)?, domain_length)?))
            .collect()
    }

    fn emit(&self, text: &str) -> CliResult<Option<PathBuf>> {
        match &self.out {
            Some(p) => write_text(p, text).map(|_| Some(p.clone())),
            None => Ok(None),
        }
    }
}

/// Runs one job; returns the summary printed on stdout.
pub fn run(job: &JobConfig) -> CliResult<String> {
    let mut s = String::new();
    match job.command {
        Command::Forward => {
            let file = read_potential(&read_text(required(&job.input, "in")?)?)?;
            let config = FrozenConfig::new(job.a.unwrap_or(file.a), job.gamma_or(file.gamma)?)?;
            let spec = compute_spectrum(&file.potential, &config, job.m)?;
            let res = verify_asymptotics(&spec);
            let _ = writeln!(s, "{:>4} {:>24} {:>24} {:>12}", "n", "Re lambda", "Im lambda", "|kappa|");
            for (n, (v, k)) in spec.values().iter().zip(&res.kappa).enumerate() {
                let _ = writeln!(s, "{n:>4} {:>24.16e} {:>24.16e} {:>12.3e}", v.re, v.im, k.norm());
            }
            if job.emit(&write_spectrum(&spec))?.is_none() {
                s.push_str(&write_spectrum(&spec));
            }
        }
        Command::Inverse1 | Command::Inverse2 => {
            let spec = job.spectrum_in(required(&job.input, "in")?)?;
            let opts = job.options()?;
            let rec = if job.command == Command::Inverse1 {
                algorithm1(&spec, &opts)?
            } else {
                let ops = job.operators(0.5)?;
                let op = ops.first().ok_or_else(|| CliError::Precondition("inverse2 needs --op".into()))?;
                algorithm2(&spec, op, &opts)?
            };
            let text = write_potential(&rec.potential, spec.config().a(), spec.gamma());
            let _ = writeln!(s, "recovered potential on N = {}: ||q||_2 = {:.6e}", opts.grid_n, rec.potential.l2_norm());
            let _ = writeln!(s, "tail coefficient |b_K| = {:.3e}", rec.diagnostics.tail_coefficient);
            if job.emit(&text)?.is_none() {
                s.push_str(&text);
            }
        }
        Command::Roundtrip => {
            let (q, a, gamma) = match &job.input {
                Some(p) => {
                    let f = read_potential(&read_text(p)?)?;
                    (f.potential, job.a.unwrap_or(f.a), job.gamma_or(f.gamma)?)
                }
                None => {
                    let a = job.a.unwrap_or(0.25);
                    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
                    (windowed_potential(&mut rng, a, 3, 4, job.grid)?, a, job.gamma_or(Complex64::new(2.0, 0.0))?)
                }
            };
            let config = FrozenConfig::new(a, gamma)?;
            let spec = compute_spectrum(&q, &config, job.m)?;
            let opts = InverseOptions { grid_n: q.n(), ..job.options()? };
            let rec = if config.degenerate_sign().is_some() {
                let ops = job.operators(0.5)?;
                match ops.first() {
                    Some(op) => algorithm2(&spec, op, &opts)?,
                    None => return Err(FrozenError::DegenerateCase.into()),
                }
            } else {
                algorithm1(&spec, &opts)?
            };
            let err = rec.potential.relative_l2_error(&q)?;
            let verdict = if err <= job.tol { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "relative L2 error {err:.6e} (tol {:.1e}) {verdict}", job.tol);
            job.emit(&write_potential(&rec.potential, a, gamma))?;
            if err > job.tol {
                return Err(CliError::Tolerance(s));
            }
        }
        Command::Isospectral => {
            let spec = job.spectrum_in(required(&job.input, "in")?)?;
            let opts = job.options()?;
            let ps = constant_payloads(&job.operators(0.5)?)?;
            let family = isospectral_family(&spec, &ps, &opts)?;
            let potentials: Vec<Potential> = family.into_iter().map(|r| r.potential).collect();
            family_summary(&mut s, &potentials);
            write_family(job, &potentials, spec.config().a(), spec.gamma())?;
        }
        Command::Isobispectral => {
            let (two, opts) = two_spectra(job)?;
            let ps = constant_payloads(&job.operators(two.a())?)?;
            let family = isobispectral_family(&two, &ps, &opts)?;
            let potentials: Vec<Potential> = family.into_iter().map(|r| r.potential).collect();
            family_summary(&mut s, &potentials);
            write_family(job, &potentials, two.a(), Complex64::new(1.0, 0.0))?;
        }
        Command::Growthcheck => {
            let (two, opts) = two_spectra(job)?;
            let report = check_growth(&two, &opts)?;
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                s,
                "max |w0 + w1| on (1-a, 1) = {:.6e} (threshold {:.3e}) {verdict}",
                report.max_violation, report.threshold
            );
            if !report.pass {
                return Err(CliError::Tolerance(s));
            }
        }
        Command::Basischeck => {
            let alpha = match &job.alpha {
                Some(a) => parse_complex(a).ok_or_else(|| CliError::Parse(format!("--alpha: '{a}' is not re,im")))?,
                None => Complex64::new(0.5, 0.0),
            };
            let nlist = job
                .nlist
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("--nlist: '{t}'"))))
                .collect::<CliResult<Vec<_>>>()?;
            let report = riesz_report(alpha, &nlist);
            let _ = writeln!(s, "alpha = {alpha}");
            let _ = writeln!(s, "{:>5} {:>14} {:>14} {:>14}", "N", "A1", "A2", "cond");
            let mut csv = String::from("N,A1,A2,cond\n");
            for r in &report.rows {
                let _ = writeln!(s, "{:>5} {:>14.6e} {:>14.6e} {:>14.6e}", r.half_width, r.a1, r.a2, r.cond);
                let _ = writeln!(csv, "{},{:.16e},{:.16e},{:.16e}", r.half_width, r.a1, r.a2, r.cond);
            }
            let quad = gram_matrix(alpha, 2).quadrature_check(4096)?;
            let _ = writeln!(
                s,
                "A1 non-increasing: {}, A2 non-decreasing: {}, closed form vs quadrature: {quad:.3e}",
                report.a1_non_increasing, report.a2_non_decreasing
            );
            job.emit(&csv)?;
        }
    }
    Ok(s)
}

fn two_spectra(job: &JobConfig) -> CliResult<(TwoSpectra, InverseOptions)> {
    let s0 = job.spectrum_in(required(&job.input, "in")?)?;
    let s1 = job.spectrum_in(required(&job.input2, "in2")?)?;
    Ok((TwoSpectra::new(s0, s1)?, job.options()?))
}

fn constant_payloads(ops: &[OperatorSpec]) -> CliResult<Vec<Vec<Complex64>>> {
    if ops.is_empty() {
        return Err(CliError::Precondition("families need at least one --op".into()));
    }
    ops.iter()
        .map(|op| match op.kind() {
            OperatorKind::Constant(p) => Ok(p.clone()),
            _ => Err(CliError::Precondition("family members take kind=constant operators".into())),
        })
        .collect()
}

fn family_summary(s: &mut String, members: &[Potential]) {
    let _ = writeln!(s, "{} members", members.len());
    for (i, qi) in members.iter().enumerate() {
        for (j, qj) in members.iter().enumerate().skip(i + 1) {
            let d = qi.l2_distance(qj).unwrap_or(f64::NAN);
            let _ = writeln!(s, "  ||q_{i} - q_{j}||_2 = {d:.6e}");
        }
    }
}

fn write_family(job: &JobConfig, members: &[Potential], a: f64, gamma: Complex64) -> CliResult<()> {
    if let Some(out) = &job.out {
        for (i, q) in members.iter().enumerate() {
            write_text(&numbered(out, i), &write_potential(q, a, gamma))?;
        }
    }
    Ok(())
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let job = match JobConfig::try_parse_from(args) {
        Ok(job) => job,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&job) {
        Ok(summary) => {
            print!("{summary}");
            0
        }
        Err(e) => {
            if let CliError::Tolerance(m) = &e {
                print!("{m}");
            } else {
                eprintln!("error: {}", e.message());
            }
            e.exit_code()
        }
    }
}
