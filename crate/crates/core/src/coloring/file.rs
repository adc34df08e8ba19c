//! Coloring files: a header line, then one edge per line in canonical order.
//!
//! ```text
//! c host points=5 arity=2
//! [1,2] [2,3] R
//! [1,2] [2,4] B
//! ```
//!
//! Explicit-graph hosts use `c host graph vertices=<n>` and `u v R` lines.

use std::io::Write;

use super::{Color, Host, TwoColoring};
use crate::error::{Error, ParseErrorKind, Result};
use crate::graph::Graph;
use crate::shift::{parse_bracketed, ShiftGraph};

pub fn save_coloring(c: &TwoColoring, out: &mut impl Write) -> Result<()> {
    let host = c.host();
    let mut w = std::io::BufWriter::new(out);
    writeln!(w, "{}", host.header())?;
    for r in 0..c.edge_count() {
        writeln!(w, "{} {}", host.edge_text(r), c.color_at(r).token())?;
    }
    w.flush()?;
    Ok(())
}

enum Header {
    Shift(ShiftGraph),
    Graph(usize),
}

fn parse_header(line: &str) -> Result<Header> {
    let bad = || Error::parse(1, ParseErrorKind::Malformed(format!("bad header {line:?}")));
    let rest = line.strip_prefix("c host ").ok_or_else(bad)?;
    if let Some(n) = rest.strip_prefix("graph vertices=") {
        return n.parse().map(Header::Graph).map_err(|_| bad());
    }
    let mut points = None;
    let mut arity = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("points", v)) => points = v.parse::<u32>().ok(),
            Some(("arity", v)) => arity = v.parse::<u32>().ok(),
            _ => return Err(bad()),
        }
    }
    let g = ShiftGraph::shift(points.ok_or_else(bad)?, arity.ok_or_else(bad)?)
        .map_err(|e| Error::parse(1, ParseErrorKind::Malformed(e.to_string())))?;
    Ok(Header::Shift(g))
}

/// Reads a coloring of `host`; the header must describe the same host.
pub fn load_coloring(host: impl Into<Host>, text: &str) -> Result<TwoColoring> {
    let host = host.into();
    let first = text.lines().next().unwrap_or("");
    let header = parse_header(first)?;
    let matches = match (&header, &host) {
        (Header::Shift(g), Host::Shift(h)) => g == h,
        (Header::Graph(n), Host::Graph(_)) => *n as u64 == host.vertex_count(),
        _ => false,
    };
    if !matches {
        return Err(Error::parse(
            1,
            ParseErrorKind::HeaderMismatch(format!("expected {:?}, found {first:?}", host.header())),
        ));
    }
    read_body(host, text)
}

/// Reads a coloring whose host is given by the file itself. For explicit
/// graph hosts the edge set is taken to be exactly the edges listed.
pub fn load_coloring_any(text: &str) -> Result<TwoColoring> {
    let first = text.lines().next().unwrap_or("");
    let host = match parse_header(first)? {
        Header::Shift(g) => Host::Shift(g),
        Header::Graph(n) => {
            let mut g = Graph::empty(n);
            for (idx, line) in text.lines().enumerate().skip(1) {
                if line.trim().is_empty() {
                    continue;
                }
                let (u, v, _) = split_graph_line(line, idx + 1)?;
                g.add_edge(u, v).map_err(|e| {
                    Error::parse(idx + 1, ParseErrorKind::EdgeNotInHost(e.to_string()))
                })?;
            }
            Host::from(g)
        }
    };
    read_body(host, text)
}

fn split_line(line: &str, line_no: usize) -> Result<(&str, &str, &str)> {
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), Some(c), None) => Ok((a, b, c)),
        _ => Err(Error::parse(line_no, ParseErrorKind::Malformed(line.to_string()))),
    }
}

fn split_graph_line(line: &str, line_no: usize) -> Result<(usize, usize, &str)> {
    let (a, b, c) = split_line(line, line_no)?;
    let parse = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line_no, ParseErrorKind::Malformed(line.to_string())))
    };
    Ok((parse(a)?, parse(b)?, c))
}

fn parse_color(token: &str, line_no: usize) -> Result<Color> {
    match token {
        "R" => Ok(Color::Red),
        "B" => Ok(Color::Blue),
        _ => Err(Error::parse(line_no, ParseErrorKind::UnknownColor(token.to_string()))),
    }
}

fn read_body(host: Host, text: &str) -> Result<TwoColoring> {
    let m = host.edge_count() as usize;
    let mut colors = vec![Color::Red; m];
    let mut seen_on = vec![0usize; m];
    let mut last_line = 1;
    for (idx, line) in text.lines().enumerate().skip(1) {
        let line_no = idx + 1;
        last_line = line_no;
        if line.trim().is_empty() {
            continue;
        }
        let (rank, token) = match &host {
            Host::Shift(g) => {
                let (a, b, token) = split_line(line, line_no)?;
                let bad = |_| Error::parse(line_no, ParseErrorKind::Malformed(line.to_string()));
                let x = parse_bracketed(a).map_err(bad)?;
                let y = parse_bracketed(b).map_err(bad)?;
                let rank = host.shift_edge_rank(&x, &y).ok_or_else(|| {
                    Error::parse(
                        line_no,
                        ParseErrorKind::EdgeNotInHost(format!("{a} {b} in {}", g.name())),
                    )
                })?;
                (rank, token)
            }
            Host::Graph(_) => {
                let (u, v, token) = split_graph_line(line, line_no)?;
                let rank = host.graph_edge_rank(u, v).ok_or_else(|| {
                    Error::parse(line_no, ParseErrorKind::EdgeNotInHost(format!("{u} {v}")))
                })?;
                (rank, token)
            }
        };
        let color = parse_color(token, line_no)?;
        let slot = rank as usize;
        if seen_on[slot] != 0 {
            return Err(Error::parse(
                line_no,
                ParseErrorKind::DuplicateEdge {
                    edge: host.edge_text(rank),
                    first_line: seen_on[slot],
                },
            ));
        }
        seen_on[slot] = line_no;
        colors[slot] = color;
    }
    if let Some(missing) = seen_on.iter().position(|&l| l == 0) {
        return Err(Error::parse(
            last_line + 1,
            ParseErrorKind::MissingEdge(host.edge_text(missing as u64)),
        ));
    }
    TwoColoring::from_colors(host, colors)
}
