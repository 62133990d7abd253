//! Matrix Market text format: `coordinate real symmetric`, 1-based indices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::sparse::{CooMatrix, SparseSymMatrix};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Parsed {
    rows: usize,
    cols: usize,
    symmetric: bool,
    size_line: usize,
    /// `(row, col, value, line)`, 0-based, as written.
    entries: Vec<(usize, usize, f64, usize)>,
}

fn parse_document(text: &str, allow_general: bool) -> Result<Parsed> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, l));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(
            hline,
            "expected '%%MatrixMarket matrix coordinate real symmetric'",
        ));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_err(
            hline,
            format!("unsupported format '{}'", tokens[2]),
        ));
    }
    if tokens[3] != "real" && tokens[3] != "integer" {
        return Err(parse_err(
            hline,
            format!("unsupported field '{}'", tokens[3]),
        ));
    }
    let symmetric = match tokens[4].as_str() {
        "symmetric" => true,
        "general" if allow_general => false,
        other => {
            return Err(parse_err(
                hline,
                format!("symmetry must be 'symmetric', found '{other}'"),
            ))
        }
    };

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (sline, size) = body
        .next()
        .ok_or_else(|| parse_err(hline + 1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(parse_err(sline, "size line needs 'rows cols entries'"));
    }
    let rows = parse_count(sline, dims[0])?;
    let cols = parse_count(sline, dims[1])?;
    let nnz = parse_count(sline, dims[2])?;
    if symmetric && rows != cols {
        return Err(parse_err(
            sline,
            format!("symmetric matrix must be square, got {rows}x{cols}"),
        ));
    }
    if rows == 0 || cols == 0 {
        return Err(parse_err(sline, "dimension must be at least 1"));
    }

    let mut entries = Vec::with_capacity(nnz);
    for (line, text) in body {
        if entries.len() == nnz {
            return Err(parse_err(
                line,
                format!("more than the declared {nnz} entries"),
            ));
        }
        let f: Vec<&str> = text.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(line, "entry needs 'row col value'"));
        }
        let r = parse_count(line, f[0])?;
        let c = parse_count(line, f[1])?;
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(parse_err(
                line,
                format!("index ({r}, {c}) outside declared {rows}x{cols}"),
            ));
        }
        let v: f64 = f[2]
            .parse()
            .map_err(|_| parse_err(line, format!("non-numeric value '{}'", f[2])))?;
        if !v.is_finite() {
            return Err(parse_err(line, "non-finite value"));
        }
        entries.push((r - 1, c - 1, v, line));
    }
    if entries.len() != nnz {
        let last = text.lines().count();
        return Err(parse_err(
            last,
            format!("declared {nnz} entries, found {}", entries.len()),
        ));
    }
    let mut keys: Vec<(usize, usize, usize)> = entries
        .iter()
        .map(|&(r, c, _, line)| {
            if symmetric {
                (r.min(c), r.max(c), line)
            } else {
                (r, c, line)
            }
        })
        .collect();
    keys.sort_unstable();
    for w in keys.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
            return Err(parse_err(
                w[0].2.max(w[1].2),
                format!("duplicate entry ({}, {})", w[0].0 + 1, w[0].1 + 1),
            ));
        }
    }
    Ok(Parsed {
        rows,
        cols,
        symmetric,
        size_line: sline,
        entries,
    })
}

/// Parses a symmetric coordinate Matrix Market document.
///
/// Entries may be given in either triangle; a pair listed twice is an error.
pub fn parse_matrix_market(text: &str) -> Result<SparseSymMatrix> {
    let p = parse_document(text, false)?;
    SparseSymMatrix::from_entries(p.rows, p.entries.iter().map(|&(r, c, v, _)| (r, c, v)))
        .map_err(|e| parse_err(p.size_line, e.to_string()))
}

/// Parses a `general` or `symmetric` coordinate document into a general
/// matrix; symmetric input is expanded to both triangles.
pub fn parse_matrix_market_general(text: &str) -> Result<CooMatrix> {
    let p = parse_document(text, true)?;
    let mut entries = Vec::with_capacity(2 * p.entries.len());
    for &(r, c, v, _) in &p.entries {
        entries.push((r, c, v));
        if p.symmetric && r != c {
            entries.push((c, r, v));
        }
    }
    CooMatrix::from_entries(p.rows, p.cols, entries)
        .map_err(|e| parse_err(p.size_line, e.to_string()))
}

fn parse_count(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer, found '{tok}'"),
        )
    })
}

/// Serializes `a` with lower-triangle coordinates and round-trip exact values.
pub fn write_matrix_market(a: &SparseSymMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix coordinate real symmetric\n");
    let n = a.dim();
    let _ = writeln!(out, "{n} {n} {}", a.entries().len());
    for &(i, j, v) in a.entries() {
        let _ = writeln!(out, "{} {} {v:e}", j + 1, i + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_off_diagonal() {
        let a = parse_matrix_market(
            "%%MatrixMarket matrix coordinate real symmetric\n% c\n2 2 1\n1 2 1.0\n",
        )
        .unwrap();
        assert_eq!(a.get(0, 1), 1.0);
        assert_eq!(a.get(1, 0), 1.0);
        assert_eq!(a.get(0, 0), 0.0);
    }

    #[test]
    fn out_of_range_reports_line() {
        let err = parse_matrix_market(
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n3 1 0.5\n",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn general_symmetry_rejected() {
        let err = parse_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1 0\n")
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn bad_value_and_count() {
        let bad = "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n1 1 x\n";
        assert!(matches!(
            parse_matrix_market(bad),
            Err(Error::Parse { line: 3, .. })
        ));
        let short = "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n";
        assert!(matches!(
            parse_matrix_market(short),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn general_documents() {
        let b = parse_matrix_market_general(
            "%%MatrixMarket matrix coordinate real general\n2 3 2\n1 3 2.0\n2 1 -1\n",
        )
        .unwrap();
        assert_eq!((b.rows(), b.cols()), (2, 3));
        assert_eq!(b.to_row_major(), vec![0.0, 0.0, 2.0, -1.0, 0.0, 0.0]);
        let s = parse_matrix_market_general(
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 1.5\n",
        )
        .unwrap();
        assert_eq!(s.to_row_major(), vec![0.0, 1.5, 1.5, 0.0]);
    }

    #[test]
    fn round_trip_is_exact() {
        let a = SparseSymMatrix::from_entries(
            3,
            [
                (0, 0, 0.1),
                (0, 2, -1.0 / 3.0),
                (1, 2, 1e-300),
                (2, 2, 6.02e23),
            ],
        )
        .unwrap();
        let b = parse_matrix_market(&write_matrix_market(&a)).unwrap();
        assert_eq!(a, b);
    }
}
