//! Text formats for graphs, chains and matrices.
//!
//! Graph records, one per line, `#` starting a comment:
//!
//! ```text
//! vertex <id> [type A|B]
//! edge <id> <u> <v>          # record order is the global edge order
//! forest <e> <e> ...         # forest edges in orientation order
//! filtration <e> ... ; <e> ... ; ...   # new edges per stage, rest is the last stage
//! halforder <v> <h> <h> ...  # half-edges as <edge> or <edge>.0 / <edge>.1
//! ```
//!
//! Chains: a header line of `key=value` fields, then `<rational> <key hex>`.
//! Matrices: `cols=<n>`, one `col <i> <label>` per column, then
//! `row: <col>=<rational> ...`. A file may hold several sections over the
//! same columns; their rows are read as one matrix.

use crate::bordification::FilteredGraph;
use crate::chain::{Chain, Key, Q};
use crate::error::{Error, Result};
use crate::forested::ForestedGraph;
use crate::graph::Graph;
use crate::linalg::{Registry, SparseVec};
use crate::trace::{OddGraph, VertexType};
use std::collections::BTreeMap;
use std::fmt::Display;
use std::fmt::Write as _;

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// A parsed graph file; optional records are `None` when absent.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: Graph,
    pub vertex_ids: Vec<String>,
    pub edge_ids: Vec<String>,
    pub vertex_types: Vec<Option<VertexType>>,
    pub forest: Option<Vec<usize>>,
    pub filtration: Option<Vec<Vec<usize>>>,
    pub half_orders: Vec<Option<Vec<usize>>>,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut vertex_ids: Vec<String> = Vec::new();
    let mut vertex_types = Vec::new();
    let mut vindex: BTreeMap<String, usize> = BTreeMap::new();
    let mut edge_ids: Vec<String> = Vec::new();
    let mut eindex: BTreeMap<String, usize> = BTreeMap::new();
    let mut ends: Vec<(usize, usize)> = Vec::new();
    let mut forest_raw: Option<(usize, Vec<String>)> = None;
    let mut filt_raw: Option<(usize, String)> = None;
    let mut half_raw: Vec<(usize, String, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "vertex" => {
                let id = match toks.get(1) {
                    Some(id) => id.to_string(),
                    None => return perr(ln, "vertex needs an id"),
                };
                let ty = match &toks[2..] {
                    [] => None,
                    ["type", "A"] => Some(VertexType::A),
                    ["type", "B"] => Some(VertexType::B),
                    _ => return perr(ln, "expected `type A` or `type B`"),
                };
                if vindex.insert(id.clone(), vertex_ids.len()).is_some() {
                    return perr(ln, format!("vertex {id} declared twice"));
                }
                vertex_ids.push(id);
                vertex_types.push(ty);
            }
            "edge" => {
                let [_, id, u, v] = toks[..] else { return perr(ln, "expected `edge <id> <u> <v>`") };
                let (Some(&u), Some(&v)) = (vindex.get(u), vindex.get(v)) else {
                    return perr(ln, "edge endpoint is not a declared vertex");
                };
                if eindex.insert(id.to_string(), edge_ids.len()).is_some() {
                    return perr(ln, format!("edge {id} declared twice"));
                }
                edge_ids.push(id.to_string());
                ends.push((u, v));
            }
            "forest" => forest_raw = Some((ln, toks[1..].iter().map(|s| s.to_string()).collect())),
            "filtration" => filt_raw = Some((ln, line["filtration".len()..].to_string())),
            "halforder" => {
                let Some(v) = toks.get(1) else { return perr(ln, "halforder needs a vertex") };
                half_raw.push((ln, v.to_string(), toks[2..].iter().map(|s| s.to_string()).collect()));
            }
            other => return perr(ln, format!("unknown record `{other}`")),
        }
    }

    let graph = Graph::from_edges(vertex_ids.len(), &ends);
    let edge = |ln: usize, s: &str| -> Result<usize> {
        eindex.get(s).copied().ok_or_else(|| Error::Parse { line: ln, msg: format!("unknown edge {s}") })
    };
    let forest = match forest_raw {
        None => None,
        Some((ln, ids)) => Some(ids.iter().map(|s| edge(ln, s)).collect::<Result<Vec<_>>>()?),
    };
    let filtration = match filt_raw {
        None => None,
        Some((ln, body)) => {
            let mut stages = Vec::new();
            for part in body.split(';') {
                let ids: Vec<usize> = part.split_whitespace().map(|s| edge(ln, s)).collect::<Result<_>>()?;
                if ids.is_empty() {
                    return perr(ln, "empty filtration stage");
                }
                stages.push(ids);
            }
            Some(stages)
        }
    };
    let mut half_orders = vec![None; vertex_ids.len()];
    for (ln, v, hs) in half_raw {
        let Some(&vi) = vindex.get(&v) else { return perr(ln, format!("unknown vertex {v}")) };
        let mut order = Vec::new();
        for h in hs {
            let (e, side) = match h.split_once('.') {
                Some((e, "0")) => (edge(ln, e)?, Some(0)),
                Some((e, "1")) => (edge(ln, e)?, Some(1)),
                Some(_) => return perr(ln, format!("bad half-edge {h}")),
                None => (edge(ln, &h)?, None),
            };
            let half = match side {
                Some(s) => 2 * e + s,
                None => {
                    let at: Vec<usize> = [2 * e, 2 * e + 1].into_iter().filter(|&x| graph.vertex_of(x) == vi).collect();
                    match at[..] {
                        [x] => x,
                        [] => return perr(ln, format!("edge {h} does not meet vertex {v}")),
                        _ => return perr(ln, format!("edge {h} is a loop; write {h}.0 or {h}.1")),
                    }
                }
            };
            if graph.vertex_of(half) != vi {
                return perr(ln, format!("half-edge {h} is not at vertex {v}"));
            }
            order.push(half);
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != graph.half_edges_at(vi) {
            return perr(ln, format!("halforder at {v} must list every half-edge once"));
        }
        half_orders[vi] = Some(order);
    }
    Ok(GraphFile { graph, vertex_ids, edge_ids, vertex_types, forest, filtration, half_orders })
}

impl GraphFile {
    pub fn to_forested(&self) -> Result<ForestedGraph> {
        ForestedGraph::new(self.graph.clone(), self.forest.clone().unwrap_or_default())
    }

    /// Untyped vertices default to type A; missing half orders to edge order.
    pub fn to_ab(&self) -> Result<OddGraph> {
        let vtype = self.vertex_types.iter().map(|t| t.unwrap_or(VertexType::A)).collect();
        let incidence = self.graph.incidence();
        let orders = self.half_orders.iter().zip(incidence).map(|(o, inc)| o.clone().unwrap_or(inc)).collect();
        OddGraph::new(self.graph.clone(), vtype, orders)
    }

    pub fn to_filtered(&self) -> Result<FilteredGraph> {
        let ne = self.graph.num_edges();
        let stages = self.filtration.clone().unwrap_or_default();
        let mut level = vec![stages.len() + 1; ne];
        for (i, stage) in stages.iter().enumerate() {
            for &e in stage {
                if level[e] != stages.len() + 1 {
                    return Err(Error::Invalid(format!("edge {} listed in two stages", self.edge_ids[e])));
                }
                level[e] = i + 1;
            }
        }
        FilteredGraph::new(self.graph.clone(), level, (0..ne).collect())
    }
}

/// Graph records for a forested graph.
pub fn write_forested(fg: &ForestedGraph) -> String {
    let mut s = write_edges(&fg.graph, |_| None);
    let f: Vec<String> = fg.forest.iter().map(|e| format!("e{e}")).collect();
    let _ = writeln!(s, "forest {}", f.join(" "));
    s
}

/// Graph records for a filtered graph, edges listed in orientation order.
pub fn write_filtered(fg: &FilteredGraph) -> String {
    let relabel: Vec<usize> = fg.edge_order.clone();
    let g = &fg.graph;
    let mut s = String::new();
    for v in 0..g.num_vertices() {
        let _ = writeln!(s, "vertex v{v}");
    }
    for (i, &e) in relabel.iter().enumerate() {
        let (a, b) = g.ends(e);
        let _ = writeln!(s, "edge e{i} v{a} v{b}");
    }
    let k = fg.k();
    if k > 1 {
        let stages: Vec<String> = (1..k)
            .map(|l| {
                relabel
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| fg.level[e] == l)
                    .map(|(i, _)| format!("e{i}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        let _ = writeln!(s, "filtration {}", stages.join(" ; "));
    }
    s
}

/// Graph records for an AB-graph.
pub fn write_ab(x: &OddGraph) -> String {
    let g = &x.graph;
    let mut s = write_edges(g, |v| Some(x.vtype[v]));
    for v in 0..g.num_vertices() {
        let hs: Vec<String> = x.half_orders[v].iter().map(|&h| format!("e{}.{}", h / 2, h % 2)).collect();
        let _ = writeln!(s, "halforder v{v} {}", hs.join(" "));
    }
    s
}

fn write_edges(g: &Graph, vtype: impl Fn(usize) -> Option<VertexType>) -> String {
    let mut s = String::new();
    for v in 0..g.num_vertices() {
        match vtype(v) {
            Some(VertexType::A) => writeln!(s, "vertex v{v} type A"),
            Some(VertexType::B) => writeln!(s, "vertex v{v} type B"),
            None => writeln!(s, "vertex v{v}"),
        }
        .unwrap();
    }
    for e in 0..g.num_edges() {
        let (a, b) = g.ends(e);
        let _ = writeln!(s, "edge e{e} v{a} v{b}");
    }
    s
}

/// `header` then one `<rational> <hex>` line per term, in key order.
pub fn write_chain(header: &[(&str, String)], c: &Chain<Key>) -> String {
    let mut s = header.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
    s.push('\n');
    for (k, v) in c.iter() {
        let _ = writeln!(s, "{v} {}", k.to_hex());
    }
    s
}

/// `key=value` fields of a chain header.
pub type Header = Vec<(String, String)>;

pub fn read_chain(text: &str) -> Result<(Header, Chain<Key>)> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l))).filter(|(_, l)| !l.is_empty());
    let header = match lines.next() {
        None => return perr(1, "empty chain file"),
        Some((ln, h)) => h
            .split_whitespace()
            .map(|f| f.split_once('=').map(|(a, b)| (a.to_string(), b.to_string())))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::Parse { line: ln, msg: "header must be key=value fields".into() })?,
    };
    let mut c = Chain::zero();
    for (ln, l) in lines {
        let [v, k] = l.split_whitespace().collect::<Vec<_>>()[..] else {
            return perr(ln, "expected `<rational> <key>`");
        };
        let v: Q = v.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad rational {v}") })?;
        let k = Key::from_hex(k).ok_or(Error::Parse { line: ln, msg: "bad key".into() })?;
        c.add_term(k, v);
    }
    Ok((header, c))
}

/// Matrix text with labels; every row must live on the registry.
pub fn write_matrix<K: Ord + Clone + Display>(reg: &Registry<K>, rows: &[Chain<K>]) -> Result<String> {
    let mut s = format!("cols={}\n", reg.len());
    for i in 0..reg.len() {
        let _ = writeln!(s, "col {i} {}", reg.label(i));
    }
    for r in rows {
        let v = reg.vector(r)?;
        let cells: Vec<String> = v.iter().map(|(i, x)| format!("{i}={x}")).collect();
        let _ = writeln!(s, "row: {}", cells.join(" "));
    }
    Ok(s)
}

/// Column labels and rows of a matrix file.
pub fn read_matrix(text: &str) -> Result<(Vec<String>, Vec<SparseVec>)> {
    let mut cols: Option<usize> = None;
    let mut labels: BTreeMap<usize, String> = BTreeMap::new();
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(n) = line.strip_prefix("cols=") {
            let n: usize = n.trim().parse().map_err(|_| Error::Parse { line: ln, msg: "bad column count".into() })?;
            // later sections may repeat the header, never change it
            if cols.is_some_and(|c| c != n) {
                return perr(ln, "column count differs from an earlier section");
            }
            cols = Some(n);
        } else if let Some(rest) = line.strip_prefix("col ") {
            let (i, label) = rest.trim().split_once(char::is_whitespace).unwrap_or((rest.trim(), ""));
            let i: usize = i.parse().map_err(|_| Error::Parse { line: ln, msg: "bad column index".into() })?;
            labels.insert(i, label.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("row:") {
            let Some(n) = cols else { return perr(ln, "row before cols=") };
            let mut v = SparseVec::new();
            for cell in rest.split_whitespace() {
                let Some((c, x)) = cell.split_once('=') else { return perr(ln, format!("bad cell {cell}")) };
                let c: usize = c.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad column {c}") })?;
                if c >= n {
                    return perr(ln, format!("column {c} out of range"));
                }
                let x: Q = x.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad rational {x}") })?;
                *v.entry(c).or_insert_with(|| Q::from_integer(0.into())) += x;
            }
            v.retain(|_, x| *x != Q::from_integer(0.into()));
            rows.push(v);
        } else {
            return perr(ln, format!("unrecognized line `{line}`"));
        }
    }
    let Some(n) = cols else { return perr(1, "missing cols=") };
    let labels = (0..n).map(|i| labels.get(&i).cloned().unwrap_or_else(|| i.to_string())).collect();
    Ok((labels, rows))
}
