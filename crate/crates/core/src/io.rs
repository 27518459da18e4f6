//! Plain-text matrix format.
//!
//! ```text
//! # optional comment lines
//! 3
//! 0 1.5 inf
//! inf 0 2
//! 0.25 inf 0
//! ```
//!
//! The first non-comment line holds `V`, followed by `V` rows of `V`
//! whitespace-separated values. `inf` marks a missing edge. Values are written
//! with the shortest decimal form that parses back to the same bits.

use std::io::{self, BufRead, Write};

use crate::apsp::{DistanceMatrix, Graph};
use crate::error::{Error, Result};
use crate::matrix::WeightMatrix;
use crate::scalar::{is_extended_weight, Weight};

fn malformed(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::MalformedInput {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based column, token)` pairs.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn parse_value<T: Weight>(tok: &str, line: usize, column: usize) -> Result<T> {
    let x: T = tok
        .parse()
        .map_err(|_| malformed(line, column, format!("expected a number or 'inf', found {tok:?}")))?;
    if !is_extended_weight(x) {
        return Err(malformed(
            line,
            column,
            format!("{tok:?} is not allowed; use a finite value or 'inf'"),
        ));
    }
    Ok(x)
}

/// Reads a square matrix in the text format.
pub fn parse_matrix<T: Weight, R: BufRead>(reader: R) -> Result<WeightMatrix<T>> {
    let mut n: Option<usize> = None;
    let mut data: Vec<T> = Vec::new();
    let mut rows_read = 0;
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line.map_err(|e| malformed(line_no, 1, format!("read error: {e}")))?;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match n {
            None => {
                let mut toks = tokens(&line);
                let (col, tok) = toks.next().expect("line is not blank");
                let v: usize = tok
                    .parse()
                    .map_err(|_| malformed(line_no, col, format!("expected vertex count, found {tok:?}")))?;
                if v == 0 {
                    return Err(malformed(line_no, col, "vertex count must be at least 1"));
                }
                if let Some((col, tok)) = toks.next() {
                    return Err(malformed(line_no, col, format!("unexpected token {tok:?} after vertex count")));
                }
                data.reserve(v * v);
                n = Some(v);
            }
            Some(v) => {
                if rows_read == v {
                    return Err(malformed(line_no, 1, format!("more than {v} rows")));
                }
                let before = data.len();
                for (col, tok) in tokens(&line) {
                    if data.len() - before == v {
                        return Err(malformed(line_no, col, format!("row has more than {v} values")));
                    }
                    data.push(parse_value(tok, line_no, col)?);
                }
                let got = data.len() - before;
                if got != v {
                    return Err(malformed(
                        line_no,
                        line.chars().count() + 1,
                        format!("row has {got} values, expected {v}"),
                    ));
                }
                rows_read += 1;
            }
        }
    }

    let v = n.ok_or_else(|| malformed(last_line.max(1), 1, "missing vertex count"))?;
    if rows_read != v {
        return Err(malformed(
            last_line + 1,
            1,
            format!("found {rows_read} rows, expected {v}"),
        ));
    }
    WeightMatrix::from_vec(v, data)
}

/// Reads a graph; the diagonal is forced to zero and a negative self-loop is
/// reported as a negative cycle.
pub fn parse_graph<T: Weight, R: BufRead>(reader: R) -> Result<Graph<T>> {
    Graph::new(parse_matrix(reader)?)
}

pub fn parse_graph_str<T: Weight>(text: &str) -> Result<Graph<T>> {
    parse_graph(text.as_bytes())
}

pub fn write_matrix<T: Weight, W: Write>(m: &WeightMatrix<T>, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", m.dim())?;
    let mut line = String::new();
    for row in m.rows() {
        line.clear();
        for (k, x) in row.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            line.push_str(&x.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

pub fn write_graph<T: Weight, W: Write>(g: &Graph<T>, out: W) -> io::Result<()> {
    write_matrix(g.weights(), out)
}

pub fn write_distances<T: Weight, W: Write>(d: &DistanceMatrix<T>, out: W) -> io::Result<()> {
    write_matrix(&d.entries, out)
}

pub fn graph_to_string<T: Weight>(g: &Graph<T>) -> String {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}
