//! Line-oriented text format for square complex matrices.
//!
//! ```text
//! # optional comment lines
//! dim 3
//! [3.3333333333333331e-1, 0.0000000000000000e0] [0.0000000000000000e0, 0.0000000000000000e0] ...
//! ...
//! ```
//!
//! One header line `dim N`, then `N` rows of `N` `[re, im]` pairs. Numbers
//! are written with 17 significant digits so every `f64` round-trips.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

fn number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn render_matrix(m: &ComplexMatrix) -> String {
    let mut out = format!("dim {}\n", m.dim());
    for row in m.rows() {
        let cells: Vec<String> = row
            .iter()
            .map(|z| format!("[{}, {}]", number(z.re), number(z.im)))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `dim N` header".into(),
    })?;
    let dim = header
        .strip_prefix("dim")
        .map(str::trim)
        .and_then(|n| n.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("expected `dim N` with N >= 1, found `{header}`"),
        })?;

    let mut data = Vec::with_capacity(dim * dim);
    for row in 0..dim {
        let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
            line: header_line + row + 1,
            message: format!("expected {dim} matrix rows, found {row}"),
        })?;
        let cells = parse_row(line, line_no)?;
        if cells.len() != dim {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {dim} entries, found {}", cells.len()),
            });
        }
        data.extend(cells);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected content after {dim} rows"),
        });
    }
    ComplexMatrix::from_row_major(dim, data)
}

fn parse_row(line: &str, line_no: usize) -> Result<Vec<Complex64>> {
    let err = |message: String| Error::Parse {
        line: line_no,
        message,
    };
    let mut cells = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| err(format!("expected `[` at `{rest}`")))?;
        let close = body
            .find(']')
            .ok_or_else(|| err("unterminated `[re, im]` pair".into()))?;
        let (re, im) = body[..close]
            .split_once(',')
            .ok_or_else(|| err(format!("expected `re, im` in `[{}]`", &body[..close])))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| err(format!("invalid number `{}`", s.trim())))
        };
        cells.push(Complex64::new(parse(re)?, parse(im)?));
        rest = body[close + 1..].trim_start();
    }
    Ok(cells)
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> Result<()> {
    fs::write(path, render_matrix(m))?;
    Ok(())
}
