//! Plain-text formats for potentials, spectra and operators.
//!
//! Every real number is written with `{:.16e}`, which round-trips `f64` exactly.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::inverse::{OperatorKind, OperatorSpec};
use crate::spectral_core::{compute_alpha, FrozenConfig, Potential, Spectrum};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormatError {
    #[error("line {line}: bad {field}: {message}")]
    Parse { line: usize, field: String, message: String },
    #[error("{0}")]
    Content(String),
}

fn parse_err(line: usize, field: &str, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, field: field.into(), message: message.into() }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_complex(z: Complex64) -> String {
    format!("{},{}", num(z.re), num(z.im))
}

pub fn parse_complex(s: &str) -> Option<Complex64> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re.trim().parse().ok()?, im.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, 0.0),
    };
    Some(Complex64::new(re, im))
}

/// `key=value` pairs of a `# <kind> ...` header line.
fn header_fields<'a>(text: &'a str, kind: &str) -> Result<Vec<(&'a str, &'a str)>, FormatError> {
    let first = text.lines().next().unwrap_or("");
    let mut words = first.split_whitespace();
    if words.next() != Some("#") || words.next() != Some(kind) {
        return Err(parse_err(1, "header", format!("expected '# {kind} ...'")));
    }
    words
        .map(|w| w.split_once('=').ok_or_else(|| parse_err(1, w, "expected key=value")))
        .collect()
}

fn header_value<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Result<&'a str, FormatError> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| parse_err(1, key, "missing from header"))
}

/// Data lines after the header, skipping blanks and comments, with 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .skip(1)
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_f64(line: usize, field: &str, s: &str) -> Result<f64, FormatError> {
    s.parse().map_err(|_| parse_err(line, field, format!("'{s}' is not a number")))
}

/// A potential file: samples plus the frozen point and `γ` it was written with.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialFile {
    pub potential: Potential,
    pub a: f64,
    pub gamma: Complex64,
}

/// One `x re im` line per node; nodes with a jump get two lines, left limit first.
pub fn write_potential(q: &Potential, a: f64, gamma: Complex64) -> String {
    let mut out = format!("# potential n={} a={} gamma={}\n", q.n(), num(a), format_complex(gamma));
    for j in 0..=q.n() {
        let x = num(q.x(j));
        if q.is_jump(j) {
            let l = q.left(j);
            let _ = writeln!(out, "{x} {} {}", num(l.re), num(l.im));
        }
        let r = q.right(j);
        let _ = writeln!(out, "{x} {} {}", num(r.re), num(r.im));
    }
    out
}

pub fn read_potential(text: &str) -> Result<PotentialFile, FormatError> {
    let fields = header_fields(text, "potential")?;
    let n: usize = header_value(&fields, "n")?
        .parse()
        .map_err(|_| parse_err(1, "n", "not a count"))?;
    let a = parse_f64(1, "a", header_value(&fields, "a")?)?;
    let gamma = parse_complex(header_value(&fields, "gamma")?)
        .ok_or_else(|| parse_err(1, "gamma", "expected re,im"))?;
    let mut left = vec![None; n + 1];
    let mut right = vec![None; n + 1];
    let mut seen = vec![0u8; n + 1];
    for (line, l) in data_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(line, "sample", "expected 'x re im'"));
        }
        let x = parse_f64(line, "x", parts[0])?;
        let v = Complex64::new(parse_f64(line, "re", parts[1])?, parse_f64(line, "im", parts[2])?);
        let j = (x * n as f64).round();
        if !(0.0..=n as f64).contains(&j) || (x * n as f64 - j).abs() > 1e-6 {
            return Err(parse_err(line, "x", format!("{x} is not a node of the n={n} grid")));
        }
        let j = j as usize;
        match seen[j] {
            0 => left[j] = Some(v),
            1 => {}
            _ => return Err(parse_err(line, "x", format!("node {x} listed more than twice"))),
        }
        right[j] = Some(v);
        seen[j] += 1;
    }
    let collect = |side: Vec<Option<Complex64>>| -> Result<Vec<Complex64>, FormatError> {
        side.into_iter()
            .enumerate()
            .map(|(j, v)| v.ok_or_else(|| FormatError::Content(format!("node {j} of {n} is missing"))))
            .collect()
    };
    let potential = Potential::from_sides(collect(left)?, collect(right)?)
        .map_err(|e| FormatError::Content(e.to_string()))?;
    Ok(PotentialFile { potential, a, gamma })
}

pub fn write_spectrum(spec: &Spectrum) -> String {
    let mut out = format!(
        "# spectrum gamma={} alpha={} m={}\n",
        format_complex(spec.gamma()),
        format_complex(spec.alpha().value()),
        spec.len()
    );
    for (n, v) in spec.values().iter().enumerate() {
        let _ = writeln!(out, "{n} {} {}", num(v.re), num(v.im));
    }
    out
}

/// Reads a spectrum; the frozen point is not part of the format and comes from the caller.
pub fn read_spectrum(text: &str, a: f64) -> Result<Spectrum, FormatError> {
    let fields = header_fields(text, "spectrum")?;
    let gamma = parse_complex(header_value(&fields, "gamma")?)
        .ok_or_else(|| parse_err(1, "gamma", "expected re,im"))?;
    let m: usize = header_value(&fields, "m")?
        .parse()
        .map_err(|_| parse_err(1, "m", "not a count"))?;
    let config = FrozenConfig::new(a, gamma).map_err(|e| parse_err(1, "gamma", e.to_string()))?;
    if let Ok(alpha) = header_value(&fields, "alpha") {
        let stored = parse_complex(alpha).ok_or_else(|| parse_err(1, "alpha", "expected re,im"))?;
        let expected = compute_alpha(gamma).map_err(|e| parse_err(1, "gamma", e.to_string()))?.value();
        if (stored - expected).norm() > 1e-12 * (1.0 + expected.norm()) {
            return Err(parse_err(1, "alpha", format!("{stored} does not match gamma (expected {expected})")));
        }
    }
    let mut values = vec![None; m];
    for (line, l) in data_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_err(line, "eigenvalue", "expected 'n re im'"));
        }
        let n: usize = parts[0].parse().map_err(|_| parse_err(line, "n", "not an index"))?;
        if n >= m {
            return Err(parse_err(line, "n", format!("index {n} beyond m={m}")));
        }
        let v = Complex64::new(parse_f64(line, "re", parts[1])?, parse_f64(line, "im", parts[2])?);
        values[n] = Some(v);
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(n, v)| v.ok_or_else(|| FormatError::Content(format!("eigenvalue {n} is missing"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Spectrum::new(values, config))
}

/// `kind=...` then the payload: one `re,im` per line for constant, a single
/// `re,im` for scalar, one matrix row of `re,im` entries per line for matrix.
pub fn write_operator(op: &OperatorSpec) -> String {
    let mut out = String::new();
    match op.kind() {
        OperatorKind::Constant(p) => {
            out.push_str("kind=constant\n");
            for &z in p {
                let _ = writeln!(out, "{}", format_complex(z));
            }
        }
        OperatorKind::Scalar(c) => {
            let _ = writeln!(out, "kind=scalar\n{}", format_complex(*c));
        }
        OperatorKind::Matrix(m) => {
            out.push_str("kind=matrix\n");
            for i in 0..m.nrows() {
                let row: Vec<String> = (0..m.ncols()).map(|j| format_complex(m[(i, j)])).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
    }
    out
}

/// Reads an operator acting on functions of `(0, domain_length)`.
pub fn read_operator(text: &str, domain_length: f64) -> Result<OperatorSpec, FormatError> {
    let kind = text
        .lines()
        .next()
        .and_then(|l| l.trim().strip_prefix("kind="))
        .ok_or_else(|| parse_err(1, "kind", "expected kind=constant|scalar|matrix"))?;
    let complex_at = |line: usize, s: &str| {
        parse_complex(s).ok_or_else(|| parse_err(line, "value", format!("'{s}' is not re,im")))
    };
    let lines: Vec<(usize, &str)> = data_lines(text).collect();
    let kind = match kind.trim() {
        "constant" => OperatorKind::Constant(
            lines.iter().map(|&(i, l)| complex_at(i, l)).collect::<Result<_, _>>()?,
        ),
        "scalar" => match lines.as_slice() {
            [(i, l)] => OperatorKind::Scalar(complex_at(*i, l)?),
            _ => return Err(parse_err(2, "value", "scalar operator takes exactly one value")),
        },
        "matrix" => {
            let rows: Vec<Vec<Complex64>> = lines
                .iter()
                .map(|&(i, l)| l.split_whitespace().map(|s| complex_at(i, s)).collect())
                .collect::<Result<_, _>>()?;
            let d = rows.len();
            if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
                return Err(parse_err(lines[i].0, "row", format!("matrix must be square ({d} rows)")));
            }
            OperatorKind::Matrix(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
        }
        other => return Err(parse_err(1, "kind", format!("unknown kind '{other}'"))),
    };
    OperatorSpec::new(kind, domain_length).map_err(|e| FormatError::Content(e.to_string()))
}
