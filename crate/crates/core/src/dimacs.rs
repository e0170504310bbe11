//! DIMACS `p edge` reader and writer.
//!
//! Vertex ids in the file are 1-based; they are shifted to 0-based indices.

use crate::graph::{Graph, GraphError};

fn parse_err(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut graph: Option<Graph> = None;
    let mut seen_edges = 0usize;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("p") => {
                if header.is_some() {
                    return Err(parse_err(line_no, "duplicate problem line"));
                }
                let format = fields.next();
                if !matches!(format, Some("edge") | Some("col")) {
                    return Err(parse_err(line_no, "expected `p edge <n> <m>`"));
                }
                let n = parse_count(fields.next(), line_no, "vertex count")?;
                let m = parse_count(fields.next(), line_no, "edge count")?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields on problem line"));
                }
                header = Some((n, m, line_no));
                graph = Some(Graph::new(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| parse_err(line_no, "edge line before `p edge` header"))?;
                let n = g.n();
                let u = parse_vertex(fields.next(), n, line_no)?;
                let v = parse_vertex(fields.next(), n, line_no)?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields on edge line"));
                }
                if u == v {
                    return Err(parse_err(line_no, format!("self-loop on vertex {}", u + 1)));
                }
                if g.has_edge(u, v) {
                    return Err(parse_err(line_no, format!("duplicate edge {} {}", u + 1, v + 1)));
                }
                g.add_edge(u, v);
                seen_edges += 1;
            }
            Some(other) => {
                return Err(parse_err(line_no, format!("unknown line type `{other}`")));
            }
            None => unreachable!(),
        }
    }

    let (_, m, header_line) = header.ok_or_else(|| parse_err(0, "missing `p edge <n> <m>` header"))?;
    if seen_edges != m {
        return Err(parse_err(
            header_line,
            format!("header declares {m} edges but {seen_edges} were listed"),
        ));
    }
    Ok(graph.expect("header implies graph"))
}

fn parse_count(field: Option<&str>, line: usize, what: &str) -> Result<usize, GraphError> {
    field
        .ok_or_else(|| parse_err(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| parse_err(line, format!("invalid {what}")))
}

fn parse_vertex(field: Option<&str>, n: usize, line: usize) -> Result<usize, GraphError> {
    let id: usize = field
        .ok_or_else(|| parse_err(line, "missing vertex id"))?
        .parse()
        .map_err(|_| parse_err(line, "invalid vertex id"))?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex id {id} out of range 1..={n}")));
    }
    Ok(id - 1)
}

/// Canonical serialization: header, then edges `u < v` in lexicographic order.
pub fn to_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}
