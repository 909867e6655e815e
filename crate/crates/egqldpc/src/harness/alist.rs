//! Reader and writer for the alist sparse-matrix interchange format.
//!
//! Layout, bit-exact:
//!
//! ```text
//! <cols> <rows>
//! <max col weight> <max row weight>
//! <col weights, one per column>
//! <row weights, one per row>
//! <per column: 1-based row indices, zero-padded to the max col weight>
//! <per row: 1-based column indices, zero-padded to the max row weight>
//! ```
//!
//! Fields are single-space separated and every line is newline-terminated.
//! The reader also accepts unpadded index lines, cross-checks the column
//! lists against the row lists, and names the offending line on error.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::binmat::BinMatrix;
use crate::error::{Error, Result};

pub fn write_alist<W: Write>(m: &BinMatrix, mut w: W) -> std::io::Result<()> {
    let col_weights = m.col_weights();
    let row_weights = m.row_weights();
    let max_col = col_weights.iter().copied().max().unwrap_or(0);
    let max_row = row_weights.iter().copied().max().unwrap_or(0);
    writeln!(w, "{} {}", m.cols(), m.rows())?;
    writeln!(w, "{max_col} {max_row}")?;
    write_numbers(&mut w, col_weights.iter().copied())?;
    write_numbers(&mut w, row_weights.iter().copied())?;
    let transpose = m.transpose();
    for c in 0..m.cols() {
        let indices = transpose.row_support(c);
        write_padded(&mut w, &indices, max_col)?;
    }
    for r in 0..m.rows() {
        let indices = m.row_support(r);
        write_padded(&mut w, &indices, max_row)?;
    }
    Ok(())
}

fn write_numbers<W: Write>(w: &mut W, nums: impl Iterator<Item = usize>) -> std::io::Result<()> {
    let line: Vec<String> = nums.map(|n| n.to_string()).collect();
    writeln!(w, "{}", line.join(" "))
}

fn write_padded<W: Write>(w: &mut W, indices: &[usize], width: usize) -> std::io::Result<()> {
    // 1-based indices, padded with zeros up to the shared width.
    let padded = indices
        .iter()
        .map(|&i| i + 1)
        .chain(std::iter::repeat_n(0, width - indices.len()));
    write_numbers(w, padded)
}

pub fn write_alist_path<P: AsRef<Path>>(m: &BinMatrix, path: P) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_alist(m, std::io::BufWriter::new(file))?;
    Ok(())
}

/// The exact bytes `write_alist` would emit.
pub fn alist_bytes(m: &BinMatrix) -> Vec<u8> {
    let mut buf = Vec::new();
    write_alist(m, &mut buf).expect("writing to a Vec cannot fail");
    buf
}

/// Content-addressed fingerprint of a matrix: SHA-256 over its alist
/// serialization, hex-encoded.
pub fn matrix_content_hash(m: &BinMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update(alist_bytes(m));
    hex::encode(hasher.finalize())
}

struct LineParser<R> {
    reader: R,
    line_no: usize,
    buf: String,
}

impl<R: BufRead> LineParser<R> {
    fn next_numbers(&mut self) -> Result<Vec<usize>> {
        self.buf.clear();
        self.line_no += 1;
        let read = self.reader.read_line(&mut self.buf)?;
        if read == 0 {
            return Err(Error::AlistParse {
                line: self.line_no,
                msg: "unexpected end of file".into(),
            });
        }
        self.buf
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::AlistParse {
                    line: self.line_no,
                    msg: format!("not a number: {tok:?}"),
                })
            })
            .collect()
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::AlistParse {
            line: self.line_no,
            msg: msg.into(),
        }
    }
}

pub fn read_alist<R: BufRead>(reader: R) -> Result<BinMatrix> {
    let mut p = LineParser {
        reader,
        line_no: 0,
        buf: String::new(),
    };

    let header = p.next_numbers()?;
    let [cols, rows] = header[..] else {
        return Err(p.error("expected exactly two numbers: cols rows"));
    };
    let maxima = p.next_numbers()?;
    let [max_col, max_row] = maxima[..] else {
        return Err(p.error("expected exactly two numbers: max col/row weight"));
    };
    let col_weights = p.next_numbers()?;
    if col_weights.len() != cols {
        return Err(p.error(format!(
            "expected {cols} column weights, found {}",
            col_weights.len()
        )));
    }
    let row_weights = p.next_numbers()?;
    if row_weights.len() != rows {
        return Err(p.error(format!(
            "expected {rows} row weights, found {}",
            row_weights.len()
        )));
    }
    if cols > 0 && col_weights.iter().max() != Some(&max_col) {
        return Err(p.error(format!("column weights inconsistent with maximum {max_col}")));
    }
    if rows > 0 && row_weights.iter().max() != Some(&max_row) {
        return Err(p.error(format!("row weights inconsistent with maximum {max_row}")));
    }

    let mut m = BinMatrix::zeros(rows, cols);
    for (c, &weight) in col_weights.iter().enumerate() {
        let entries = p.next_numbers()?;
        let indices = check_entries(&p, &entries, weight, max_col, rows)?;
        for r in indices {
            m.set(r, c, true);
        }
    }
    for (r, &weight) in row_weights.iter().enumerate() {
        let entries = p.next_numbers()?;
        let indices = check_entries(&p, &entries, weight, max_row, cols)?;
        for c in indices {
            if !m.get(r, c) {
                return Err(p.error(format!(
                    "row list names entry ({r},{c}) absent from the column lists"
                )));
            }
        }
        if m.row_weight(r) != weight {
            return Err(p.error(format!(
                "row {r} has {} entries from column lists but weight {weight}",
                m.row_weight(r)
            )));
        }
    }
    Ok(m)
}

/// Validates one index line: `weight` 1-based in-range entries, optionally
/// zero-padded out to `width`. Returns 0-based indices.
fn check_entries<R: BufRead>(
    p: &LineParser<R>,
    entries: &[usize],
    weight: usize,
    width: usize,
    bound: usize,
) -> Result<Vec<usize>> {
    if entries.len() != weight && entries.len() != width {
        return Err(p.error(format!(
            "expected {weight} entries (or {width} zero-padded), found {}",
            entries.len()
        )));
    }
    let (real, padding) = entries.split_at(weight);
    if padding.iter().any(|&x| x != 0) {
        return Err(p.error("nonzero entries after the stated weight"));
    }
    let mut indices = Vec::with_capacity(weight);
    for &e in real {
        if e == 0 || e > bound {
            return Err(p.error(format!("index {e} out of range 1..={bound}")));
        }
        indices.push(e - 1);
    }
    Ok(indices)
}

pub fn read_alist_path<P: AsRef<Path>>(path: P) -> Result<BinMatrix> {
    let file = std::fs::File::open(path)?;
    read_alist(BufReader::new(file))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_round_trip_is_bit_exact() {
        let m = BinMatrix::identity(3);
        let bytes = alist_bytes(&m);
        let expected = "3 3\n1 1\n1 1 1\n1 1 1\n1\n2\n3\n1\n2\n3\n";
        assert_eq!(String::from_utf8(bytes.clone()).unwrap(), expected);
        assert_eq!(read_alist(&bytes[..]).unwrap(), m);
    }

    #[test]
    fn eg22_adapted_header_and_maxima() {
        use crate::construct::{adapt_self_orthogonal, type2_matrix};
        use crate::geometry::Geometry;
        let g = Geometry::new(2, 2).unwrap();
        let adapted = adapt_self_orthogonal(&type2_matrix(&g, 1).unwrap()).unwrap();
        let text = String::from_utf8(alist_bytes(&adapted.matrix)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("7 3"));
        assert_eq!(lines.next(), Some("3 4"));
        assert_eq!(read_alist(text.as_bytes()).unwrap(), adapted.matrix);
    }

    #[test]
    fn truncated_file_names_the_line() {
        let text = "3 3\n1 1\n1 1 1\n";
        let err = read_alist(text.as_bytes()).unwrap_err();
        match err {
            Error::AlistParse { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn out_of_range_index_rejected() {
        let text = "2 2\n1 1\n1 1\n1 1\n3\n2\n1\n2\n";
        let err = read_alist(text.as_bytes()).unwrap_err();
        match err {
            Error::AlistParse { line, msg } => {
                assert_eq!(line, 5);
                assert!(msg.contains("out of range"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn inconsistent_row_list_rejected() {
        // Column lists place the single entry of row 1 at column 2, but the
        // row list claims column 1.
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n1\n";
        let err = read_alist(text.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::AlistParse { line: 8, .. }));
    }

    #[test]
    fn zero_matrix_round_trips() {
        let m = BinMatrix::zeros(2, 3);
        let bytes = alist_bytes(&m);
        assert_eq!(read_alist(&bytes[..]).unwrap(), m);
    }

    #[test]
    fn unpadded_lines_accepted() {
        // Same identity matrix, minus the padding (already none) plus a
        // matrix where padding matters.
        let m = BinMatrix::from_bit_rows(&[&[1, 1], &[0, 1]]);
        let padded = alist_bytes(&m);
        let text = String::from_utf8(padded).unwrap();
        assert_eq!(read_alist(text.as_bytes()).unwrap(), m);
        // Strip trailing " 0" padding tokens manually.
        let unpadded = text.replace(" 0\n", "\n");
        assert_eq!(read_alist(unpadded.as_bytes()).unwrap(), m);
    }

    #[test]
    fn content_hash_is_stable_and_distinguishes() {
        let a = BinMatrix::identity(3);
        let b = BinMatrix::zeros(3, 3);
        assert_eq!(matrix_content_hash(&a), matrix_content_hash(&a));
        assert_ne!(matrix_content_hash(&a), matrix_content_hash(&b));
        assert_eq!(matrix_content_hash(&a).len(), 64);
    }
}
