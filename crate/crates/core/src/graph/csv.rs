//! Dense numeric CSV: one row per line, comma separated, optional header row.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::SignedGraph;
use crate::error::{Error, Result};

/// Parsed numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericTable {
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<f64>>,
}

/// Reads a rectangular table of decimal reals. When `has_header` is set the
/// first record is returned as column names instead of being parsed.
pub fn read_table(path: &Path, has_header: bool) -> Result<NumericTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_table_from(file, has_header, path)
}

pub fn read_table_from<R: Read>(reader: R, has_header: bool, path: &Path) -> Result<NumericTable> {
    let mut rdr = ::csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(::csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };

    let mut header = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = None;
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(0);
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(parse_err(
                    line,
                    format!("expected {w} fields, found {}", record.len()),
                ))
            }
            Some(_) => {}
        }
        if has_header && header.is_none() {
            header = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                cell.parse::<f64>().map_err(|_| {
                    parse_err(line, format!("column {}: `{cell}` is not a number", c + 1))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(0, "no data rows".into()));
    }
    Ok(NumericTable { header, rows })
}

/// Loads a graph from a dense weight-matrix CSV.
pub fn read_graph(path: &Path, has_header: bool) -> Result<SignedGraph> {
    let table = read_table(path, has_header)?;
    SignedGraph::from_dense(&table.rows)
}

/// Writes the full weight matrix, one row per line. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_graph<W: Write>(g: &SignedGraph, mut out: W) -> std::io::Result<()> {
    let mut line = String::new();
    for i in 0..g.n() {
        line.clear();
        for (j, w) in g.row(i).iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            line.push_str(&w.to_string());
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

pub fn write_graph_file(g: &SignedGraph, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_graph(g, std::io::BufWriter::new(file)).map_err(|e| Error::io(path, e))
}
