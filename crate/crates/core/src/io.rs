//! Profile files in the PrefLib SOC layout, and plain edge-list graph files.
//!
//! ```text
//! 3
//! 1,a
//! 2,b
//! 3,c
//! 7,7,2
//! 3,1,2,3
//! 4,3,2,1
//! ```
//!
//! Line one holds the candidate count, then one `index,label` line per
//! candidate, then `n,n,u`, then `count,i1,...,im` ranking lines with
//! one-based indices, most preferred first. Lines starting with `#` and blank
//! lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use crate::election::Election;
use crate::error::{Error, Result};
use crate::generators::Graph;

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Non-comment lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, field: &str, what: &str) -> Result<usize> {
    field
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("{what} `{}` is not a non-negative integer", field.trim())))
}

pub fn parse_profile(path: impl AsRef<Path>) -> Result<Election> {
    parse_profile_str(&read(path.as_ref())?)
}

/// Parses a profile; voters are expanded in file order, each ranking line
/// giving `count` consecutive voters.
pub fn parse_profile_str(text: &str) -> Result<Election> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| lines.next().ok_or_else(|| parse_err(0, format!("missing {what}")));

    let (line, head) = next("candidate count")?;
    let m = number(line, head, "candidate count")?;
    if m == 0 {
        return Err(Error::EmptyElection);
    }
    let mut labels: Vec<Option<String>> = vec![None; m];
    for _ in 0..m {
        let (line, text) = next("candidate line")?;
        let (index, label) = text
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected `index,label`"))?;
        let index = number(line, index, "candidate index")?;
        if index == 0 || index > m {
            return Err(parse_err(line, format!("candidate index {index} outside 1..={m}")));
        }
        let label = label.trim();
        if label.is_empty() {
            return Err(parse_err(line, "empty candidate label"));
        }
        if labels[index - 1].replace(label.to_string()).is_some() {
            return Err(parse_err(line, format!("candidate index {index} given twice")));
        }
    }
    let labels: Vec<String> = labels.into_iter().map(Option::unwrap).collect();

    let (header_line, header) = next("voter header")?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() != 3 {
        return Err(parse_err(header_line, "expected `n,n,u`"));
    }
    let total = number(header_line, fields[0], "voter count")?;
    let summed = number(header_line, fields[1], "sum of counts")?;
    let unique = number(header_line, fields[2], "ranking count")?;

    let mut rankings = Vec::new();
    let mut distinct: Vec<Vec<usize>> = Vec::new();
    let mut ranking_lines = 0;
    for (line, text) in lines {
        let mut fields = text.split(',');
        let count = number(line, fields.next().unwrap_or(""), "count")?;
        if count == 0 {
            return Err(parse_err(line, "ranking count must be positive"));
        }
        let mut seen = vec![false; m];
        let mut ranking = Vec::with_capacity(m);
        for f in fields {
            let c = number(line, f, "candidate index")?;
            if c == 0 || c > m {
                return Err(parse_err(line, format!("candidate index {c} outside 1..={m}")));
            }
            if std::mem::replace(&mut seen[c - 1], true) {
                return Err(parse_err(line, format!("candidate {c} ranked twice")));
            }
            ranking.push(c - 1);
        }
        if ranking.len() != m {
            return Err(parse_err(
                line,
                format!("incomplete ranking: {} of {m} candidates", ranking.len()),
            ));
        }
        if !distinct.contains(&ranking) {
            distinct.push(ranking.clone());
        }
        ranking_lines += 1;
        rankings.extend(std::iter::repeat_n(ranking, count));
    }
    let n = rankings.len();
    if total != n || summed != n {
        return Err(parse_err(
            header_line,
            format!("header declares {total} and {summed} voters but counts sum to {n}"),
        ));
    }
    if unique != ranking_lines && unique != distinct.len() {
        return Err(parse_err(
            header_line,
            format!(
                "header declares {unique} rankings but found {ranking_lines} lines ({} distinct)",
                distinct.len()
            ),
        ));
    }
    Election::from_indices(labels, rankings)
}

/// Writes a profile, merging runs of identical consecutive ballots so that
/// voter order survives a round trip. The third header field is the number
/// of ranking lines.
pub fn serialize_profile(election: &Election) -> String {
    let mut runs: Vec<(usize, &[usize])> = Vec::new();
    for r in election.rankings() {
        match runs.last_mut() {
            Some((count, last)) if *last == r.as_slice() => *count += 1,
            _ => runs.push((1, r)),
        }
    }
    let n = election.num_voters();
    let mut out = String::new();
    writeln!(out, "{}", election.num_candidates()).unwrap();
    for (i, label) in election.candidates().iter().enumerate() {
        writeln!(out, "{},{label}", i + 1).unwrap();
    }
    writeln!(out, "{n},{n},{}", runs.len()).unwrap();
    for (count, ranking) in runs {
        write!(out, "{count}").unwrap();
        for c in ranking {
            write!(out, ",{}", c + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_profile(election: &Election, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, serialize_profile(election)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph_str(&read(path.as_ref())?)
}

/// Graph file: the vertex count, then one `u,v` line per edge with
/// one-based vertices.
pub fn parse_graph_str(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or_else(|| parse_err(0, "missing vertex count"))?;
    let vertices = number(line, head, "vertex count")?;
    let mut edges = Vec::new();
    for (line, text) in lines {
        let (u, v) = text
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected `u,v`"))?;
        let (u, v) = (number(line, u, "vertex")?, number(line, v, "vertex")?);
        if u == 0 || v == 0 || u > vertices || v > vertices {
            return Err(parse_err(line, format!("vertex outside 1..={vertices}")));
        }
        edges.push((u - 1, v - 1));
    }
    Graph::new(vertices, edges)
}

pub fn serialize_graph(graph: &Graph) -> String {
    let mut out = format!("{}\n", graph.vertices);
    for (u, v) in &graph.edges {
        writeln!(out, "{},{}", u + 1, v + 1).unwrap();
    }
    out
}
