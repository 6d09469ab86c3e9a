//! Instance file formats.
//!
//! Graph files:
//!
//! ```text
//! # comment
//! undirected 5 4
//! 0 1
//! 1 2
//! ...
//! ```
//!
//! The header is `undirected n m` or `directed n m`, followed by exactly `m`
//! edge lines. Endpoints are either all 0-based integer ids below `n`, or
//! arbitrary labels; in the latter case ids are assigned in order of first
//! appearance and the label table is returned with the graph.
//!
//! Election files use 1-based `v<i>`/`c<j>` names:
//!
//! ```text
//! election 9 3 non-secrecy 2
//! v1: c1 c3
//! v2: c1
//! v3:
//! ...
//! candidate-voters: v1=c1 v2=c2
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use extdom::{DirectedGraph, ElectionInstance, Error, Result, Setting, UndirectedGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Undirected(UndirectedGraph),
    Directed(DirectedGraph),
}

impl Graph {
    pub fn n(&self) -> usize {
        match self {
            Graph::Undirected(g) => g.n(),
            Graph::Directed(d) => d.n(),
        }
    }

    /// The graph itself, or the underlying undirected graph of a digraph.
    pub fn undirected(&self) -> UndirectedGraph {
        match self {
            Graph::Undirected(g) => g.clone(),
            Graph::Directed(d) => d.underlying(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `labels[id]` when the file used string labels.
    pub labels: Option<Vec<String>>,
}

impl ParsedGraph {
    pub fn name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }
}

/// A parsed instance file of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Graph(ParsedGraph),
    Election(ElectionInstance),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let first = content_lines(text).next().map(|(_, l)| l);
    if first.is_some_and(|l| l.split_whitespace().next() == Some("election")) {
        parse_election(text).map(Instance::Election)
    } else {
        parse_graph(text).map(Instance::Graph)
    }
}

pub fn parse_instance_file(path: &Path) -> anyhow::Result<Instance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_graph_file(path: &Path) -> anyhow::Result<ParsedGraph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_election_file(path: &Path) -> anyhow::Result<ElectionInstance> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_election(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty graph file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [kind, n, m] = fields[..] else {
        return Err(parse_err(
            hline,
            "expected header `undirected|directed <n> <m>`",
        ));
    };
    let directed = match kind {
        "undirected" => false,
        "directed" => true,
        other => return Err(parse_err(hline, format!("unknown graph kind `{other}`"))),
    };
    let count = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(hline, format!("{what} `{s}` is not a non-negative integer")))
    };
    let n = count(n, "vertex count")?;
    let m = count(m, "edge count")?;

    let mut raw: Vec<(usize, &str, &str)> = Vec::with_capacity(m);
    let mut last_line = hline;
    for (no, line) in lines {
        last_line = no;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [a, b] = parts[..] else {
            return Err(parse_err(no, format!("expected `u v`, found `{line}`")));
        };
        raw.push((no, a, b));
    }
    if raw.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges but {} were given", raw.len()),
        ));
    }

    let numeric = raw
        .iter()
        .all(|(_, a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut resolve = |no: usize, tok: &str| -> Result<usize> {
        if numeric {
            let v: usize = tok.parse().expect("checked numeric");
            return if v < n {
                Ok(v)
            } else {
                Err(parse_err(
                    no,
                    format!("vertex {v} is out of range for n = {n}"),
                ))
            };
        }
        if let Some(&v) = ids.get(tok) {
            return Ok(v);
        }
        if labels.len() == n {
            return Err(parse_err(
                no,
                format!("label `{tok}` exceeds the {n} declared vertices"),
            ));
        }
        ids.insert(tok.to_string(), labels.len());
        labels.push(tok.to_string());
        Ok(labels.len() - 1)
    };

    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for &(no, a, b) in &raw {
        let (u, v) = (resolve(no, a)?, resolve(no, b)?);
        if u == v {
            return Err(parse_err(no, format!("self-loop on `{a}`")));
        }
        let key = if directed {
            (u, v)
        } else {
            (u.min(v), u.max(v))
        };
        if !seen.insert(key) {
            return Err(parse_err(no, format!("duplicate edge `{a} {b}`")));
        }
        edges.push((u, v));
    }

    let labels = (!numeric).then(|| {
        // vertices never named in an edge keep their id as label
        let mut labels = labels;
        let used: BTreeSet<String> = labels.iter().cloned().collect();
        let mut next = 0usize;
        while labels.len() < n {
            while used.contains(&next.to_string()) {
                next += 1;
            }
            labels.push(next.to_string());
            next += 1;
        }
        labels
    });
    let graph = if directed {
        Graph::Directed(DirectedGraph::new(n, edges)?)
    } else {
        Graph::Undirected(UndirectedGraph::new(n, edges)?)
    };
    Ok(ParsedGraph { graph, labels })
}

/// Numeric form of a graph file; edges in ascending order.
pub fn write_graph(graph: &Graph) -> String {
    let mut out = String::new();
    match graph {
        Graph::Undirected(g) => {
            let _ = writeln!(out, "undirected {} {}", g.n(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        Graph::Directed(d) => {
            let _ = writeln!(out, "directed {} {}", d.n(), d.arc_count());
            for (u, v) in d.arcs() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

fn one_based(no: usize, tok: &str, prefix: char, limit: usize) -> Result<usize> {
    let what = if prefix == 'v' { "voter" } else { "candidate" };
    let index = tok
        .strip_prefix(prefix)
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| {
            parse_err(
                no,
                format!("expected a {what} name like `{prefix}1`, found `{tok}`"),
            )
        })?;
    if index == 0 || index > limit {
        return Err(parse_err(no, format!("unknown {what} `{tok}`")));
    }
    Ok(index - 1)
}

pub fn parse_election(text: &str) -> Result<ElectionInstance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty election file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let ["election", nv, m, setting, p] = fields[..] else {
        return Err(parse_err(
            hline,
            "expected header `election <n_voters> <m_candidates> <setting> <p>`",
        ));
    };
    let count = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(hline, format!("`{s}` is not a non-negative integer")))
    };
    let (nv, m, p) = (count(nv)?, count(m)?, count(p)?);
    let setting: Setting = setting
        .parse()
        .map_err(|e: Error| parse_err(hline, e.to_string()))?;

    let mut ballots: Vec<Option<BTreeSet<usize>>> = vec![None; nv];
    let mut identity: Vec<Option<usize>> = vec![None; m];
    let mut mapping_line = None;
    let mut last_line = hline;
    for (no, line) in lines {
        last_line = no;
        let (head, rest) = line.split_once(':').ok_or_else(|| {
            parse_err(
                no,
                format!("expected `v<i>: ...` or `candidate-voters: ...`, found `{line}`"),
            )
        })?;
        let head = head.trim();
        if head == "candidate-voters" {
            if mapping_line.replace(no).is_some() {
                return Err(parse_err(no, "second `candidate-voters` line"));
            }
            let mut voter_used = vec![false; nv];
            for pair in rest.split_whitespace() {
                let (v, c) = pair.split_once('=').ok_or_else(|| {
                    parse_err(no, format!("expected `v<i>=c<j>`, found `{pair}`"))
                })?;
                let v = one_based(no, v, 'v', nv)?;
                let c = one_based(no, c, 'c', m)?;
                if std::mem::replace(&mut voter_used[v], true) || identity[c].replace(v).is_some() {
                    return Err(parse_err(no, format!("duplicate mapping in `{pair}`")));
                }
            }
            continue;
        }
        let v = one_based(no, head, 'v', nv)?;
        let mut ballot = BTreeSet::new();
        for tok in rest.split_whitespace() {
            if !ballot.insert(one_based(no, tok, 'c', m)?) {
                return Err(parse_err(no, format!("candidate `{tok}` listed twice")));
            }
        }
        if ballots[v].replace(ballot).is_some() {
            return Err(parse_err(no, format!("second ballot for `{head}`")));
        }
    }
    let approvals = ballots
        .into_iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or_else(|| parse_err(last_line, format!("no ballot line for `v{}`", v + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    ElectionInstance::new(m, approvals, identity, setting, p)
        .map_err(|e| parse_err(mapping_line.unwrap_or(hline), e.to_string()))
}

pub fn write_election(inst: &ElectionInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "election {} {} {} {}",
        inst.n_voters(),
        inst.n_candidates(),
        inst.setting(),
        inst.committee_size()
    );
    for v in 0..inst.n_voters() {
        let _ = write!(out, "v{}:", v + 1);
        for c in inst.ballot(v) {
            let _ = write!(out, " c{}", c + 1);
        }
        out.push('\n');
    }
    out.push_str("candidate-voters:");
    let by_voter: BTreeMap<usize, usize> = inst.candidate_voters().map(|(c, v)| (v, c)).collect();
    for (v, c) in by_voter {
        let _ = write!(out, " v{}=c{}", v + 1, c + 1);
    }
    out.push('\n');
    out
}
