//! Matrix Market reader and writer for dense square matrices.
//!
//! Reads `array` and `coordinate` files with `real`, `integer` or `complex`
//! values and `general`, `symmetric`, `hermitian` or `skew-symmetric`
//! structure. Writes `array` format, `real general` for real matrices and
//! `complex general` otherwise, with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{NumradError, Result};
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    Skew,
}

struct Header {
    layout: Layout,
    field: Field,
    symmetry: Symmetry,
}

fn parse_error(path: &Path, line: usize, msg: impl Into<String>) -> NumradError {
    NumradError::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn parse_header(path: &Path, line: &str) -> Result<Header> {
    let words: Vec<String> = line
        .split_whitespace()
        .map(|w| w.to_ascii_lowercase())
        .collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_error(
            path,
            1,
            "expected '%%MatrixMarket matrix <format> <field> <symmetry>'",
        ));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        w => return Err(parse_error(path, 1, format!("unsupported format '{w}'"))),
    };
    let field = match words[3].as_str() {
        "real" | "double" | "integer" => Field::Real,
        "complex" => Field::Complex,
        w => return Err(parse_error(path, 1, format!("unsupported field '{w}'"))),
    };
    let symmetry = match words[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::Skew,
        w => return Err(parse_error(path, 1, format!("unsupported symmetry '{w}'"))),
    };
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(parse_error(
            path,
            1,
            "hermitian structure requires complex values",
        ));
    }
    Ok(Header {
        layout,
        field,
        symmetry,
    })
}

fn parse_numbers(path: &Path, line_no: usize, words: &[&str]) -> Result<Vec<f64>> {
    words
        .iter()
        .map(|w| {
            w.parse::<f64>()
                .map_err(|_| parse_error(path, line_no, format!("invalid number '{w}'")))
        })
        .collect()
}

fn parse_index(path: &Path, line_no: usize, w: &str, n: usize) -> Result<usize> {
    let k: usize = w
        .parse()
        .map_err(|_| parse_error(path, line_no, format!("invalid index '{w}'")))?;
    if k == 0 || k > n {
        return Err(parse_error(
            path,
            line_no,
            format!("index {k} outside 1..={n}"),
        ));
    }
    Ok(k - 1)
}

/// Parses Matrix Market text; `path` is only used in error messages.
pub fn parse_matrix_market(text: &str, path: &Path) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, first) = lines
        .next()
        .ok_or_else(|| parse_error(path, 1, "empty file"))?;
    let header = parse_header(path, first)?;
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_error(path, 1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let want = if header.layout == Layout::Array { 2 } else { 3 };
    if dims.len() != want {
        return Err(parse_error(
            path,
            size_line,
            format!("expected {want} integers on the size line"),
        ));
    }
    let dims: Vec<usize> = dims
        .iter()
        .map(|w| {
            w.parse()
                .map_err(|_| parse_error(path, size_line, format!("invalid size '{w}'")))
        })
        .collect::<Result<_>>()?;
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols || rows == 0 {
        return Err(NumradError::InvalidMatrix(format!(
            "{}: expected a nonempty square matrix, got {rows}x{cols}",
            path.display()
        )));
    }
    let n = rows;
    let per_value = if header.field == Field::Complex { 2 } else { 1 };
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    let mut set = |i: usize, j: usize, z: Complex64| {
        entries[i * n + j] = z;
        if i != j {
            entries[j * n + i] = match header.symmetry {
                Symmetry::General => entries[j * n + i],
                Symmetry::Symmetric => z,
                Symmetry::Hermitian => z.conj(),
                Symmetry::Skew => -z,
            };
        }
    };

    match header.layout {
        Layout::Array => {
            // column-major; symmetric variants store the lower triangle only
            let mut slots = Vec::new();
            for j in 0..n {
                let lo = match header.symmetry {
                    Symmetry::General => 0,
                    Symmetry::Skew => j + 1,
                    _ => j,
                };
                for i in lo..n {
                    slots.push((i, j));
                }
            }
            let mut values = Vec::with_capacity(slots.len() * per_value);
            let mut last_line = size_line;
            for (line_no, l) in body {
                last_line = line_no;
                values.extend(parse_numbers(
                    path,
                    line_no,
                    &l.split_whitespace().collect::<Vec<_>>(),
                )?);
            }
            if values.len() != slots.len() * per_value {
                return Err(parse_error(
                    path,
                    last_line,
                    format!(
                        "expected {} values, found {}",
                        slots.len() * per_value,
                        values.len()
                    ),
                ));
            }
            for (k, &(i, j)) in slots.iter().enumerate() {
                let z = if per_value == 2 {
                    Complex64::new(values[2 * k], values[2 * k + 1])
                } else {
                    Complex64::new(values[k], 0.0)
                };
                set(i, j, z);
            }
        }
        Layout::Coordinate => {
            let nnz = dims[2];
            let mut count = 0;
            for (line_no, l) in body {
                let words: Vec<&str> = l.split_whitespace().collect();
                if words.len() != 2 + per_value {
                    return Err(parse_error(
                        path,
                        line_no,
                        format!("expected {} fields", 2 + per_value),
                    ));
                }
                let i = parse_index(path, line_no, words[0], n)?;
                let j = parse_index(path, line_no, words[1], n)?;
                let v = parse_numbers(path, line_no, &words[2..])?;
                let z = Complex64::new(v[0], v.get(1).copied().unwrap_or(0.0));
                set(i, j, z);
                count += 1;
            }
            if count != nnz {
                return Err(parse_error(
                    path,
                    size_line,
                    format!("declared {nnz} entries, found {count}"),
                ));
            }
        }
    }
    Matrix::from_row_major(n, entries)
}

pub fn read_matrix_market(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path).map_err(|source| NumradError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_market(&text, path)
}

/// Dense `array` representation of `a`.
pub fn format_matrix_market(a: &Matrix) -> String {
    let n = a.n();
    let mut out = String::new();
    let field = if a.is_real() { "real" } else { "complex" };
    let _ = writeln!(out, "%%MatrixMarket matrix array {field} general");
    let _ = writeln!(out, "{n} {n}");
    for j in 0..n {
        for i in 0..n {
            let z = a.get(i, j);
            if a.is_real() {
                let _ = writeln!(out, "{:.16e}", z.re);
            } else {
                let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
            }
        }
    }
    out
}

pub fn write_matrix_market(a: &Matrix, path: &Path) -> Result<()> {
    fs::write(path, format_matrix_market(a)).map_err(|source| NumradError::Io {
        path: path.to_path_buf(),
        source,
    })
}
