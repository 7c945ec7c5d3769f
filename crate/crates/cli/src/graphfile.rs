//! Graph file ingestion: whitespace edge lists and dense matrix blocks,
//! both with `#` comments. Vertex ids are 1-based in files and converted
//! to 0-based on parsing.

use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use specmeasure::graph::WeightedGraph;
use specmeasure::linalg::{Matrix, SymmetricMatrix};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum GraphFormat {
    /// Lines `i j` or `i j w`; duplicate edges are summed.
    Edge,
    /// First line `n`, then `n` rows of `n` numbers.
    Dense,
}

#[derive(Debug)]
pub struct ParseError {
    pub path: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "{}:{}: {}", self.path, self.line, self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(path: &Path, line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Significant lines of a file: comment-stripped, nonempty, with their
/// 1-based line numbers.
fn significant_lines(path: &Path) -> Result<Vec<(usize, String)>, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| err(path, 0, e.to_string()))?;
    Ok(text
        .lines()
        .enumerate()
        .map(|(idx, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim().to_string();
            (idx + 1, body)
        })
        .filter(|(_, body)| !body.is_empty())
        .collect())
}

pub fn parse_graph(path: &Path, format: GraphFormat) -> Result<WeightedGraph, ParseError> {
    match format {
        GraphFormat::Edge => parse_edge_list(path),
        GraphFormat::Dense => parse_dense(path),
    }
}

fn parse_edge_list(path: &Path) -> Result<WeightedGraph, ParseError> {
    let lines = significant_lines(path)?;
    if lines.is_empty() {
        return Err(err(path, 0, "no edges found"));
    }
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut n = 0usize;
    for (line_no, body) in lines {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(err(
                path,
                line_no,
                format!("expected 'i j' or 'i j w', found {} fields", fields.len()),
            ));
        }
        let parse_vertex = |s: &str| -> Result<usize, ParseError> {
            let v: i64 = s
                .parse()
                .map_err(|_| err(path, line_no, format!("invalid vertex index '{s}'")))?;
            if v <= 0 {
                return Err(err(path, line_no, format!("vertex index {v} must be >= 1")));
            }
            Ok(v as usize)
        };
        let i = parse_vertex(fields[0])?;
        let j = parse_vertex(fields[1])?;
        let w: f64 = if fields.len() == 3 {
            fields[2]
                .parse()
                .map_err(|_| err(path, line_no, format!("invalid weight '{}'", fields[2])))?
        } else {
            1.0
        };
        if !w.is_finite() {
            return Err(err(path, line_no, "weight must be finite"));
        }
        n = n.max(i).max(j);
        edges.push((i - 1, j - 1, w));
    }
    WeightedGraph::from_edges(n, &edges).map_err(|e| err(path, 0, e.to_string()))
}

fn parse_dense(path: &Path) -> Result<WeightedGraph, ParseError> {
    let lines = significant_lines(path)?;
    let (first_line, header) = lines
        .first()
        .ok_or_else(|| err(path, 0, "empty dense matrix file"))?;
    let n: usize = header.parse().map_err(|_| {
        err(
            path,
            *first_line,
            format!("expected dimension, found '{header}'"),
        )
    })?;
    if n == 0 {
        return Err(err(path, *first_line, "dimension must be >= 1"));
    }
    if lines.len() != n + 1 {
        return Err(err(
            path,
            0,
            format!(
                "expected {n} rows after the dimension, found {}",
                lines.len() - 1
            ),
        ));
    }
    let mut m = Matrix::<f64>::zeros(n, n);
    for (row, (line_no, body)) in lines[1..].iter().enumerate() {
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != n {
            return Err(err(
                path,
                *line_no,
                format!("expected {n} entries, found {}", fields.len()),
            ));
        }
        for (col, field) in fields.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| err(path, *line_no, format!("invalid number '{field}'")))?;
            if !v.is_finite() {
                return Err(err(path, *line_no, "entries must be finite"));
            }
            m[(row, col)] = v;
        }
    }
    for i in 0..n {
        for j in 0..i {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 {
                return Err(err(
                    path,
                    0,
                    format!(
                        "matrix is not symmetric: entry ({},{}) = {} vs ({},{}) = {}",
                        i + 1,
                        j + 1,
                        m[(i, j)],
                        j + 1,
                        i + 1,
                        m[(j, i)]
                    ),
                ));
            }
            // symmetrize exactly within the accepted tolerance
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
    let sym = SymmetricMatrix::from_matrix(m).map_err(|e| err(path, 0, e.to_string()))?;
    Ok(WeightedGraph::from_adjacency(sym))
}

/// Converts a 1-based user vertex list to 0-based, sorted and validated.
pub fn to_internal_vertices(user: &[usize], n: usize) -> Result<Vec<usize>, String> {
    let mut out = Vec::with_capacity(user.len());
    for &v in user {
        if v == 0 || v > n {
            return Err(format!("vertex {v} out of range 1..={n}"));
        }
        out.push(v - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
