//! Text formats: instances, tree decompositions, layouts and solutions.
//!
//! All formats are line oriented, use 1-based vertex ids and treat lines
//! starting with `c` as comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::graph::{Graph, TreeDecomposition};

/// A graph, a terminal set and named integer constants (`k`, `p`, `eta`,
/// `alpha`, `beta`, `lambda`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    /// Sorted, duplicate free, 0-based.
    pub terminals: Vec<usize>,
    pub extras: BTreeMap<String, i64>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance {
            graph,
            terminals: Vec::new(),
            extras: BTreeMap::new(),
        }
    }

    pub fn extra(&self, key: &str) -> Option<i64> {
        self.extras.get(key).copied()
    }
}

/// Largest vertex or bag count accepted in a header.
pub const MAX_DECLARED: usize = 1 << 22;

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let value = parse_usize(token, line, what)?;
    if value > MAX_DECLARED {
        return Err(parse_err(line, format!("{what} {value} exceeds the limit {MAX_DECLARED}")));
    }
    Ok(value)
}

fn parse_usize(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    token
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("{what} `{token}` is not a nonnegative integer")))
}

fn parse_vertex(token: Option<&str>, line: usize, n: usize, what: &str) -> Result<usize> {
    let v = parse_usize(token, line, what)?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("{what} {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        match tokens.first() {
            None => None,
            Some(&"c") => None,
            Some(_) => Some((i + 1, tokens)),
        }
    })
}

fn no_trailing(tokens: &[&str], expected: usize, line: usize) -> Result<()> {
    if tokens.len() > expected {
        return Err(parse_err(line, format!("unexpected token `{}`", tokens[expected])));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::empty(0);
    let mut terminals = Vec::new();
    let mut extras = BTreeMap::new();
    for (line, tokens) in content_lines(text) {
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if tokens.get(1) != Some(&"edge") {
                    return Err(parse_err(line, "expected `p edge <n> <m>`"));
                }
                let n = parse_count(tokens.get(2).copied(), line, "vertex count")?;
                let m = parse_usize(tokens.get(3).copied(), line, "edge count")?;
                no_trailing(&tokens, 4, line)?;
                header = Some((n, m));
                graph = Graph::empty(n);
            }
            kind @ ("e" | "t" | "x") => {
                let (n, _) = header.ok_or_else(|| parse_err(line, format!("`{kind}` line before `p edge` header")))?;
                match kind {
                    "e" => {
                        let u = parse_vertex(tokens.get(1).copied(), line, n, "endpoint")?;
                        let v = parse_vertex(tokens.get(2).copied(), line, n, "endpoint")?;
                        no_trailing(&tokens, 3, line)?;
                        graph.add_edge(u, v).map_err(|e| match e {
                            Error::InvalidGraph(msg) => parse_err(line, msg),
                            other => other,
                        })?;
                    }
                    "t" => {
                        let v = parse_vertex(tokens.get(1).copied(), line, n, "terminal")?;
                        no_trailing(&tokens, 2, line)?;
                        if terminals.contains(&v) {
                            return Err(parse_err(line, format!("duplicate terminal {}", v + 1)));
                        }
                        terminals.push(v);
                    }
                    _ => {
                        let key = tokens.get(1).ok_or_else(|| parse_err(line, "missing extra name"))?;
                        let raw = tokens.get(2).ok_or_else(|| parse_err(line, "missing extra value"))?;
                        let value = raw
                            .parse::<i64>()
                            .map_err(|_| parse_err(line, format!("extra value `{raw}` is not an integer")))?;
                        no_trailing(&tokens, 3, line)?;
                        if extras.insert(key.to_string(), value).is_some() {
                            return Err(parse_err(line, format!("duplicate extra `{key}`")));
                        }
                    }
                }
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
    }
    let (_, m) = header.ok_or_else(|| parse_err(1, "missing `p edge <n> <m>` header"))?;
    if graph.m() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", graph.m()),
        ));
    }
    terminals.sort_unstable();
    Ok(Instance {
        graph,
        terminals,
        extras,
    })
}

pub fn write_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.n(), g.m()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for &t in &instance.terminals {
        writeln!(out, "t {}", t + 1).unwrap();
    }
    for (key, value) in &instance.extras {
        writeln!(out, "x {key} {value}").unwrap();
    }
    out
}

/// Tree decomposition as read from a file, before it is checked against a
/// graph. Bag ids are 0-based; the first bag is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionFile {
    pub vertex_count: usize,
    pub decomposition: TreeDecomposition,
}

/// Reads `td <bags> <width+1> <n>` (an optional leading `s` is accepted),
/// `b <id> <v>...` and tree-edge lines, either `te <b1> <b2>` or `<b1> <b2>`.
pub fn parse_tree_decomposition(text: &str) -> Result<DecompositionFile> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut tree_edges = Vec::new();
    for (line, tokens) in content_lines(text) {
        let tokens: &[&str] = if tokens[0] == "s" { &tokens[1..] } else { &tokens };
        match tokens.first().copied() {
            Some("td") => {
                if header.is_some() {
                    return Err(parse_err(line, "second `td` header"));
                }
                let count = parse_count(tokens.get(1).copied(), line, "bag count")?;
                let size = parse_usize(tokens.get(2).copied(), line, "bag size")?;
                let n = parse_count(tokens.get(3).copied(), line, "vertex count")?;
                no_trailing(tokens, 4, line)?;
                header = Some((count, size, n));
                bags = vec![None; count];
            }
            Some("b") => {
                let (count, size, n) = header.ok_or_else(|| parse_err(line, "`b` line before `td` header"))?;
                let id = parse_vertex(tokens.get(1).copied(), line, count, "bag id")?;
                if bags[id].is_some() {
                    return Err(parse_err(line, format!("bag {} defined twice", id + 1)));
                }
                let mut bag = Vec::with_capacity(tokens.len() - 2);
                for t in &tokens[2..] {
                    let v = parse_vertex(Some(t), line, n, "bag vertex")?;
                    if bag.contains(&v) {
                        return Err(parse_err(line, format!("vertex {} repeated in bag", v + 1)));
                    }
                    bag.push(v);
                }
                if bag.len() > size {
                    return Err(parse_err(line, format!("bag has {} vertices, header allows {size}", bag.len())));
                }
                bags[id] = Some(bag);
            }
            Some(first) if first == "te" || first.bytes().all(|c| c.is_ascii_digit()) => {
                // Tree edges come as `te a b` or, PACE style, bare `a b`.
                let ends = if first == "te" { &tokens[1..] } else { tokens };
                let (count, _, _) = header.ok_or_else(|| parse_err(line, "tree edge before `td` header"))?;
                let a = parse_vertex(ends.first().copied(), line, count, "bag id")?;
                let b = parse_vertex(ends.get(1).copied(), line, count, "bag id")?;
                no_trailing(ends, 2, line)?;
                tree_edges.push((a, b));
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
            None => return Err(parse_err(line, "`s` with nothing after it")),
        }
    }
    let (_, _, n) = header.ok_or_else(|| parse_err(1, "missing `td <bags> <width+1> <n>` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(text.lines().count().max(1), format!("bag {} is never defined", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionFile {
        vertex_count: n,
        decomposition: TreeDecomposition {
            bags,
            tree_edges,
            root: 0,
        },
    })
}

/// One 1-based vertex id per line. Returns 0-based ids in file order.
pub fn parse_layout(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (line, tokens) in content_lines(text) {
        let v = parse_usize(Some(tokens[0]), line, "vertex id")?;
        no_trailing(&tokens, 1, line)?;
        if v == 0 {
            return Err(parse_err(line, "vertex ids are 1-based"));
        }
        out.push(v - 1);
    }
    Ok(out)
}

/// A solution is either whitespace-separated 1-based vertex ids, or a JSON
/// run report whose `solution` field holds them. Returns sorted 0-based ids.
pub fn parse_solution(text: &str) -> Result<Vec<usize>> {
    let mut out = if text.trim_start().starts_with('{') {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
        let list = value
            .get("solution")
            .and_then(|s| s.as_array())
            .ok_or_else(|| parse_err(1, "report has no `solution` array"))?;
        list.iter()
            .map(|x| match x.as_u64() {
                Some(v) if v > 0 => Ok(v as usize - 1),
                _ => Err(parse_err(1, format!("bad solution entry `{x}`"))),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut out = Vec::new();
        for (line, tokens) in content_lines(text) {
            for t in tokens {
                let v = parse_usize(Some(t), line, "vertex id")?;
                if v == 0 {
                    return Err(parse_err(line, "vertex ids are 1-based"));
                }
                out.push(v - 1);
            }
        }
        out
    };
    out.sort_unstable();
    let before = out.len();
    out.dedup();
    if out.len() != before {
        return Err(parse_err(1, "solution repeats a vertex"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_with_terminal() {
        let inst = parse_instance("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\nt 1\n").unwrap();
        assert_eq!(inst.graph.n(), 3);
        assert_eq!(inst.graph.m(), 3);
        assert_eq!(inst.terminals, vec![0]);
    }

    #[test]
    fn round_trip_with_extras() {
        let mut inst = Instance::new(crate::generate::cycle_with_hairs(4, 1).unwrap());
        inst.terminals = vec![0, 5];
        inst.extras.insert("k".into(), 4);
        inst.extras.insert("eta".into(), 2);
        let text = write_instance(&inst);
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_instance("p edge 2 1\ne 1 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "self-loop at vertex 0".into() });
        let err = parse_instance("c hello\np edge 2 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_instance("p edge 2 0\nt 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(parse_instance("e 1 2\n").is_err());
        assert!(parse_instance("p edge 2 1\n").is_err());
        assert!(parse_instance("p edge 2 1\ne 1 2 3\n").is_err());
        assert!(parse_instance("p edge 2 0\nt 1\nt 1\n").is_err());
        assert!(parse_instance("").is_err());
    }

    #[test]
    fn decomposition_file() {
        let text = "c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\nte 1 2\n";
        let file = parse_tree_decomposition(text).unwrap();
        assert_eq!(file.vertex_count, 3);
        assert_eq!(file.decomposition.bags, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(file.decomposition.tree_edges, vec![(0, 1)]);
        assert!(parse_tree_decomposition("td 1 1 3\nb 1 1 2\n").is_err());
        assert!(parse_tree_decomposition("td 2 2 3\nb 1 1 2\n").is_err());
        let bare = parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        assert_eq!(bare.decomposition, file.decomposition);
        assert!(parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2 3\n").is_err());
        assert!(parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 3\n").is_err());
    }

    #[test]
    fn layouts_and_solutions() {
        assert_eq!(parse_layout("3\n1\n2\n").unwrap(), vec![2, 0, 1]);
        assert!(parse_layout("0\n").is_err());
        assert_eq!(parse_solution("3 1\n2").unwrap(), vec![0, 1, 2]);
        assert_eq!(
            parse_solution(r#"{"status":"yes","solution":[2,1]}"#).unwrap(),
            vec![0, 1]
        );
        assert!(parse_solution("1 1").is_err());
        assert!(parse_solution("x").is_err());
    }
}
