use std::path::Path;

use golod_core::{FieldDescriptor, Polynomial};
use num_bigint::BigUint;
use num_rational::BigRational;

use crate::Failure;

pub fn field(text: &str) -> Result<FieldDescriptor, Failure> {
    text.parse().map_err(Failure::from)
}

pub fn rational(text: &str, flag: &str) -> Result<BigRational, Failure> {
    golod_core::gscore::parse_rational(text).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

/// `lo..=hi` or a single degree.
pub fn parse_degree_range(text: &str) -> Result<(usize, usize), String> {
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("`{s}` is not a degree"));
    let (lo, hi) = match text.split_once("..=") {
        Some((lo, hi)) => (parse(lo)?, parse(hi)?),
        None => {
            let v = parse(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty degree range {lo}..={hi}"));
    }
    Ok((lo, hi))
}

/// A parsed generator file: polynomials with the line each came from.
pub struct GeneratorFile {
    pub generators: Vec<Polynomial>,
    pub lines: Vec<usize>,
}

pub fn read_generators(path: &Path, d: u32, field: FieldDescriptor) -> Result<GeneratorFile, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_generators(&text, &path.display().to_string(), d, field)
}

pub fn parse_generators(text: &str, name: &str, d: u32, field: FieldDescriptor) -> Result<GeneratorFile, Failure> {
    let mut out = GeneratorFile { generators: Vec::new(), lines: Vec::new() };
    for (i, line) in text.lines().enumerate() {
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let poly = Polynomial::parse(body, d, field).map_err(|e| Failure::Usage(format!("{name}:{}: {e}", i + 1)))?;
        out.generators.push(poly);
        out.lines.push(i + 1);
    }
    Ok(out)
}

/// Comma-separated positive integers.
pub fn parse_tuple(text: &str, flag: &str) -> Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Failure::Usage(format!("--{flag}: `{s}` is not an index"))))
        .collect()
}

pub fn parse_b(text: &str, d: u32, maxdeg: usize) -> Result<Vec<BigUint>, Failure> {
    if text.trim() == "pow" {
        return Ok((0..=maxdeg).map(|n| BigUint::from(d).pow(n as u32)).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse::<BigUint>().map_err(|_| Failure::Usage(format!("--b: `{s}` is not a count"))))
        .collect()
}
