//! Plain-text formats.
//!
//! - Truth table: `m=<int>` then one line of `2^m` characters from `{+,-}`
//!   in point-index order.
//! - Real function: `m=<int>` then `2^m` lines, each a decimal or `p/q`
//!   value. Values must be exactly representable as doubles (dyadic).
//! - Partition: blocks of comma-separated 1-based indices joined by `|`,
//!   e.g. `1,2|3,4`.
//! - Random variable: one `value probability` atom per line, each a decimal
//!   or `p/q`; probabilities must sum to exactly one.
//! - Reports: flat `key=value` lines (`lhs`, `rhs`, `ratio`,
//!   `required_constant`, `holds`, then witness fields), or CSV rows with columns
//!   `instance_id,lhs,rhs,ratio,holds,witness`.
//!
//! Lines starting with `#` and blank lines are ignored by every parser.

use crate::bounds::{BoundReport, RequiredConstant};
use crate::exact::{is_exact_f64, parse_rational, ratio_from_f64, ratio_to_f64, render};
use crate::fourier::{BooleanFunction, Partition, RealFunction};
use crate::rv::DiscreteRV;
use std::fmt;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

type Result<T> = std::result::Result<T, ParseError>;

/// Non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: Option<(usize, &str)>) -> Result<(usize, usize)> {
    let (n, text) = line.ok_or_else(|| ParseError::at(0, "missing `m=<int>` header"))?;
    let value = text
        .strip_prefix("m=")
        .ok_or_else(|| ParseError::at(n, format!("expected `m=<int>`, found `{text}`")))?;
    let m = value
        .trim()
        .parse::<usize>()
        .map_err(|_| ParseError::at(n, format!("invalid variable count `{value}`")))?;
    Ok((n, m))
}

fn header_comment(out: &mut String, header: Option<&str>) {
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
}

pub fn parse_truth_table(text: &str) -> Result<BooleanFunction> {
    let mut lines = content_lines(text);
    let (header_line, m) = parse_header(lines.next())?;
    let (n, row) = lines
        .next()
        .ok_or_else(|| ParseError::at(header_line, "missing truth-table row"))?;
    let mut table = Vec::with_capacity(row.len());
    for (col, ch) in row.chars().enumerate() {
        match ch {
            '+' => table.push(1),
            '-' => table.push(-1),
            other => {
                return Err(ParseError::at(n, format!("column {}: unexpected character `{other}`", col + 1)));
            }
        }
    }
    if let Some((extra, _)) = lines.next() {
        return Err(ParseError::at(extra, "unexpected content after the truth-table row"));
    }
    BooleanFunction::new(m, table).map_err(|e| ParseError::at(n, e.to_string()))
}

pub fn write_truth_table(f: &BooleanFunction, header: Option<&str>) -> String {
    let mut out = String::new();
    header_comment(&mut out, header);
    let _ = writeln!(out, "m={}", f.vars());
    out.extend(f.table().iter().map(|v| if *v == 1 { '+' } else { '-' }));
    out.push('\n');
    out
}

pub fn parse_real_function(text: &str) -> Result<RealFunction> {
    let mut lines = content_lines(text);
    let (header_line, m) = parse_header(lines.next())?;
    if m == 0 || m > crate::fourier::MAX_VARS {
        return Err(ParseError::at(header_line, format!("variable count {m} out of range")));
    }
    let expected = 1usize << m;
    let mut table = Vec::with_capacity(expected);
    for (n, line) in lines {
        if table.len() == expected {
            return Err(ParseError::at(n, format!("more than {expected} values")));
        }
        let value = parse_rational(line).map_err(|e| ParseError::at(n, e.to_string()))?;
        if !is_exact_f64(&value) {
            return Err(ParseError::at(n, format!("value {value} is not exactly representable (needs a power-of-two denominator)")));
        }
        table.push(ratio_to_f64(&value));
    }
    if table.len() != expected {
        return Err(ParseError::at(0, format!("expected {expected} values, found {}", table.len())));
    }
    RealFunction::new(m, table).map_err(|e| ParseError::at(0, e.to_string()))
}

pub fn write_real_function(f: &RealFunction, header: Option<&str>) -> String {
    let mut out = String::new();
    header_comment(&mut out, header);
    let _ = writeln!(out, "m={}", f.vars());
    for v in f.table() {
        let _ = writeln!(out, "{}", render(&ratio_from_f64(*v), false));
    }
    out
}

/// Parses the `1,2|3,4` form for a cube of `m` variables.
pub fn parse_partition(text: &str, m: usize) -> Result<Partition> {
    let mut lines = content_lines(text);
    let (n, line) = lines.next().ok_or_else(|| ParseError::at(0, "empty partition"))?;
    if let Some((extra, _)) = lines.next() {
        return Err(ParseError::at(extra, "unexpected content after the partition"));
    }
    let mut blocks = Vec::new();
    for block in line.split('|') {
        let mut indices = Vec::new();
        for item in block.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let i = item
                .parse::<usize>()
                .map_err(|_| ParseError::at(n, format!("invalid variable index `{item}`")))?;
            indices.push(i);
        }
        blocks.push(indices);
    }
    Partition::from_one_based(m, blocks).map_err(|e| ParseError::at(n, e.to_string()))
}

pub fn write_partition(p: &Partition) -> String {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("|")
}

pub fn parse_rv(text: &str) -> Result<DiscreteRV> {
    let mut atoms = Vec::new();
    let mut last_line = 0;
    for (n, line) in content_lines(text) {
        last_line = n;
        let mut parts = line.split_whitespace();
        let (Some(v), Some(p), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ParseError::at(n, "expected `value probability`"));
        };
        let value = parse_rational(v).map_err(|e| ParseError::at(n, e.to_string()))?;
        let prob = parse_rational(p).map_err(|e| ParseError::at(n, e.to_string()))?;
        if prob <= num_traits::Zero::zero() {
            return Err(ParseError::at(n, format!("probability {prob} is not positive")));
        }
        atoms.push((value, prob));
    }
    if atoms.is_empty() {
        return Err(ParseError::at(0, "no atoms"));
    }
    DiscreteRV::from_atoms(atoms).map_err(|e| ParseError::at(last_line, e.to_string()))
}

pub fn write_rv(rv: &DiscreteRV, header: Option<&str>) -> String {
    let mut out = String::new();
    header_comment(&mut out, header);
    for (v, p) in rv.atoms() {
        let _ = writeln!(out, "{} {}", render(v, false), render(p, false));
    }
    out
}

/// `key=value` lines for a report.
pub fn report_key_values(report: &BoundReport, decimal: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lhs={}", render(&report.lhs, decimal));
    let _ = writeln!(out, "rhs={}", render(&report.rhs, decimal));
    match report.ratio() {
        Some(r) => {
            let _ = writeln!(out, "ratio={}", render(&r, decimal));
        }
        None => {
            let _ = writeln!(out, "ratio=none");
        }
    }
    let required = match &report.required_constant {
        RequiredConstant::Any => "any".to_string(),
        RequiredConstant::Finite(c) => render(c, decimal).to_string(),
        RequiredConstant::Unbounded => "unbounded".to_string(),
    };
    let _ = writeln!(out, "required_constant={required}");
    let _ = writeln!(out, "holds={}", report.holds);
    for (k, v) in report.witness.pairs() {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

pub const CSV_HEADER: &str = "instance_id,lhs,rhs,ratio,holds,witness";

/// One CSV row; the witness field uses `;` between its pairs so it never
/// needs quoting.
pub fn report_csv_row(instance_id: usize, report: &BoundReport, decimal: bool) -> String {
    let ratio = report.ratio().map(|r| render(&r, decimal).to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{}",
        instance_id,
        render(&report.lhs, decimal),
        render(&report.rhs, decimal),
        ratio,
        report.holds,
        report.witness.compact()
    )
}
