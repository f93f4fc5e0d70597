//! Text formats for instances and solutions.
//!
//! Instance files:
//!
//! ```text
//! # comment lines start with '#'
//! p cmc <n> <m> <t>
//! t <vertex>          (t lines, order defines part indices)
//! e <u> <v> <w>       (m lines)
//! ```
//!
//! Solution files:
//!
//! ```text
//! s cost <C>
//! a <vertex> <terminal>   (n lines)
//! ```
//!
//! Writers emit the canonical form: no comments, terminals in stored
//! order, edges sorted by `(min endpoint, max endpoint)`, one trailing
//! newline per line. Parsing a canonical file and writing it back is
//! byte-identical.

use cmc_core::{CutSolution, Vertex, WeightedGraph};

/// A parse failure with its 1-based line number.
#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        msg: msg.into(),
    })
}

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_instance(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut lines = significant_lines(text);
    let Some((hline, header)) = lines.next() else {
        return err(1, "missing header 'p cmc <n> <m> <t>'");
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "p" || fields[1] != "cmc" {
        return err(hline, "expected header 'p cmc <n> <m> <t>'");
    }
    let n: usize = parse_num(fields[2], hline, "vertex count")?;
    let m: usize = parse_num(fields[3], hline, "edge count")?;
    let t: usize = parse_num(fields[4], hline, "terminal count")?;

    let mut terminals = Vec::with_capacity(t);
    let mut edges = Vec::with_capacity(m);
    for (lno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.first() {
            Some(&"t") => {
                if fields.len() != 2 {
                    return err(lno, "expected 't <vertex>'");
                }
                if !edges.is_empty() {
                    return err(lno, "terminal line after edge lines");
                }
                if terminals.len() == t {
                    return err(lno, format!("more than {t} terminal lines"));
                }
                terminals.push(parse_num(fields[1], lno, "terminal")?);
            }
            Some(&"e") => {
                if fields.len() != 4 {
                    return err(lno, "expected 'e <u> <v> <w>'");
                }
                if terminals.len() != t {
                    return err(lno, format!("edge line before all {t} terminals"));
                }
                if edges.len() == m {
                    return err(lno, format!("more than {m} edge lines"));
                }
                let u: usize = parse_num(fields[1], lno, "endpoint")?;
                let v: usize = parse_num(fields[2], lno, "endpoint")?;
                let w: u64 = parse_num(fields[3], lno, "weight")?;
                edges.push((u, v, w));
            }
            _ => return err(lno, format!("unrecognized line {line:?}")),
        }
    }
    let lines_total = text.lines().count();
    if terminals.len() != t {
        return err(
            lines_total,
            format!("expected {t} terminals, found {}", terminals.len()),
        );
    }
    if edges.len() != m {
        return err(
            lines_total,
            format!("expected {m} edges, found {}", edges.len()),
        );
    }
    WeightedGraph::new(n, edges, terminals).map_err(|e| ParseError {
        line: hline,
        msg: e.to_string(),
    })
}

pub fn write_instance(g: &WeightedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p cmc {} {} {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.terminal_count()
    ));
    for &t in g.terminals() {
        out.push_str(&format!("t {t}\n"));
    }
    let mut edges = g.edges().to_vec();
    edges.sort_by_key(|e| (e.u, e.v));
    for e in edges {
        out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.w));
    }
    out
}

/// A parsed solution: the claimed cost and the assignment lines.
#[derive(Debug, Clone)]
pub struct SolutionFile {
    pub cost: u64,
    pub assignment: Vec<(Vertex, Vertex)>,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut lines = significant_lines(text);
    let Some((hline, header)) = lines.next() else {
        return err(1, "missing header 's cost <C>'");
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 || fields[0] != "s" || fields[1] != "cost" {
        return err(hline, "expected header 's cost <C>'");
    }
    let cost: u64 = parse_num(fields[2], hline, "cost")?;
    let mut assignment = Vec::new();
    for (lno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "a" {
            return err(lno, "expected 'a <vertex> <terminal>'");
        }
        let v: usize = parse_num(fields[1], lno, "vertex")?;
        let t: usize = parse_num(fields[2], lno, "terminal")?;
        assignment.push((v, t));
    }
    Ok(SolutionFile { cost, assignment })
}

pub fn write_solution(solution: &CutSolution) -> String {
    let mut out = format!("s cost {}\n", solution.cost);
    for (v, &t) in solution.assignment.iter().enumerate().skip(1) {
        out.push_str(&format!("a {v} {t}\n"));
    }
    out
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T, ParseError> {
    s.parse().map_err(|_| ParseError {
        line,
        msg: format!("cannot parse {what} {s:?}"),
    })
}
