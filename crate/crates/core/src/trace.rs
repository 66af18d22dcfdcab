//! Odd-valent oriented graphs, the graphical trace and the blow-up.
//!
//! An [`OddGraph`] is oriented by an ordering of the half-edges at every
//! type-A vertex; type-B vertices carry no orientation data.
//!
//! Trace convention: a forest component that is a linear tree with an even
//! number `m` of edges, closed by an edge between its ends, is walked from one
//! end. The collapsed vertex lists its external half-edges in walk order, and
//! the sign is that of the permutation from the forest order to the
//! concatenated walk-ordered tree edges. Walking from the other end reverses
//! `m` edges and `m + 1` half-edges, `m^2` transpositions in all, so either end
//! gives the same answer.

use crate::canon::{self, canonical_form};
use crate::chain::{minus_two_pow, q, Chain, Key, Q};
use crate::error::{invalid, Error, Result};
use crate::forested::ForestedGraph;
use crate::graph::{edge_of, Graph};
use crate::perm::{relative_sign, sort_sign};

pub const TAG: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexType {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddGraph {
    pub graph: Graph,
    pub vtype: Vec<VertexType>,
    /// Half-edges at each vertex in orientation order (all of them, also at B vertices).
    pub half_orders: Vec<Vec<usize>>,
}

impl OddGraph {
    /// All vertices type A, half-edges ordered by index.
    pub fn plain(graph: Graph) -> Self {
        let half_orders = graph.incidence();
        let vtype = vec![VertexType::A; graph.num_vertices()];
        OddGraph { graph, vtype, half_orders }
    }

    pub fn new(graph: Graph, vtype: Vec<VertexType>, half_orders: Vec<Vec<usize>>) -> Result<Self> {
        if vtype.len() != graph.num_vertices() || half_orders.len() != graph.num_vertices() {
            return invalid("vertex data length mismatch");
        }
        let inc = graph.incidence();
        for (v, order) in half_orders.iter().enumerate() {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != inc[v] {
                return invalid(format!("half-edge order at vertex {v} is not a permutation of its half-edges"));
            }
        }
        Ok(OddGraph { graph, vtype, half_orders })
    }

    pub fn num_a(&self) -> usize {
        self.vtype.iter().filter(|&&t| t == VertexType::A).count()
    }

    pub fn num_b(&self) -> usize {
        self.vtype.len() - self.num_a()
    }

    /// Every type-A vertex has odd valence.
    pub fn is_odd(&self) -> bool {
        (0..self.graph.num_vertices()).all(|v| self.vtype[v] == VertexType::B || self.half_orders[v].len() % 2 == 1)
    }

    pub fn is_degenerate(&self) -> bool {
        !self.graph.is_connected() || self.graph.has_separating_edge()
    }

    pub fn canonicalize(&self) -> (Key, i32) {
        let vcol: Vec<u32> = self.vtype.iter().map(|&t| (t == VertexType::B) as u32).collect();
        let c = canonical_form(&self.graph, &vcol, &vec![0; self.graph.num_edges()]);
        let sign = c.orientation_sign(|lab| {
            let mut s = 1;
            for (v, order) in self.half_orders.iter().enumerate() {
                if self.vtype[v] == VertexType::A {
                    let mapped: Vec<usize> = order.iter().map(|&h| lab.half[h]).collect();
                    s *= sort_sign(&mapped);
                }
            }
            s
        });
        (Key(c.encode(TAG)), sign)
    }

    /// `±key` in the quotient by separating edges, or zero.
    pub fn normalize(&self) -> Chain<Key> {
        if self.is_degenerate() {
            return Chain::zero();
        }
        let (key, sign) = self.canonicalize();
        if sign == 0 {
            Chain::zero()
        } else {
            Chain::single(key, q(sign as i64))
        }
    }

    pub fn from_key(key: &Key) -> Result<Self> {
        let (tag, graph, vcol, _) = canon::decode(&key.0).ok_or_else(|| Error::Invalid("undecodable key".into()))?;
        if tag != TAG {
            return invalid("key is not an odd graph");
        }
        let vtype = vcol.iter().map(|&c| if c == 1 { VertexType::B } else { VertexType::A }).collect();
        let half_orders = graph.incidence();
        OddGraph::new(graph, vtype, half_orders)
    }
}

/// The theta graph with `k` parallel edges, both vertices ordered by edge index.
pub fn theta(k: usize) -> OddGraph {
    OddGraph::plain(Graph::from_edges(2, &vec![(0, 1); k]))
}

struct Component {
    /// vertices in walk order
    walk: Vec<usize>,
    /// tree edges in walk order
    edges: Vec<usize>,
}

/// Split the forest into components; `None` for the vertex when not linear.
fn linear_components(fg: &ForestedGraph) -> Vec<Option<Component>> {
    let g = &fg.graph;
    let comp = g.components_of(&fg.forest);
    let mut tree_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.num_vertices()];
    for &e in &fg.forest {
        let (u, v) = g.ends(e);
        tree_adj[u].push((v, e));
        tree_adj[v].push((u, e));
    }
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    roots
        .into_iter()
        .map(|r| {
            let members: Vec<usize> = (0..g.num_vertices()).filter(|&v| comp[v] == r).collect();
            if members.iter().any(|&v| tree_adj[v].len() > 2) {
                return None;
            }
            let start = *members.iter().find(|&&v| tree_adj[v].len() <= 1).expect("tree has a leaf");
            let mut walk = vec![start];
            let mut edges = Vec::new();
            let mut prev_edge = usize::MAX;
            let mut cur = start;
            loop {
                let next = tree_adj[cur].iter().find(|&&(_, e)| e != prev_edge);
                match next {
                    Some(&(w, e)) => {
                        edges.push(e);
                        walk.push(w);
                        prev_edge = e;
                        cur = w;
                    }
                    None => break,
                }
            }
            Some(Component { walk, edges })
        })
        .collect()
}

/// How a forest component is collapsed.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    /// every component must close up into an A vertex
    AllA,
    /// single-vertex components become B vertices
    WithB,
}

fn trace_impl(fg: &ForestedGraph, mode: Mode) -> Chain<Key> {
    let g = &fg.graph;
    let comps = linear_components(fg);
    if comps.iter().any(|c| c.is_none()) {
        return Chain::zero();
    }
    let comps: Vec<Component> = comps.into_iter().map(|c| c.unwrap()).collect();
    let in_f = fg.in_forest();

    // per component: None for a B vertex, else candidate closing edges
    let mut choices: Vec<Option<Vec<usize>>> = Vec::new();
    for c in &comps {
        let m = c.edges.len();
        if mode == Mode::WithB && m == 0 {
            choices.push(None);
            continue;
        }
        if m % 2 == 1 {
            return Chain::zero();
        }
        let (a, b) = (c.walk[0], *c.walk.last().unwrap());
        let closing: Vec<usize> = (0..g.num_edges())
            .filter(|&e| {
                let (x, y) = g.ends(e);
                !in_f[e] && ((x, y) == (a, b) || (x, y) == (b, a))
            })
            .collect();
        if closing.is_empty() {
            return Chain::zero();
        }
        choices.push(Some(closing));
    }

    let num_a = choices.iter().filter(|c| c.is_some()).count();
    let coeff = minus_two_pow(num_a);
    let walk_edges: Vec<usize> = comps.iter().flat_map(|c| c.edges.iter().copied()).collect();
    let order_sign = relative_sign(&fg.forest, &walk_edges);

    let mut out = Chain::zero();
    let mut pick = vec![0usize; comps.len()];
    loop {
        let closing: Vec<Option<usize>> = choices.iter().zip(&pick).map(|(c, &i)| c.as_ref().map(|v| v[i])).collect();
        let term = collapse_components(fg, &comps, &closing, mode);
        out.add_scaled(&term.normalize(), &(&coeff * q(order_sign as i64)));
        // odometer over closing-edge choices
        let mut i = 0;
        loop {
            if i == pick.len() {
                return out;
            }
            let n = choices[i].as_ref().map_or(1, |v| v.len());
            pick[i] += 1;
            if pick[i] < n {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

fn collapse_components(fg: &ForestedGraph, comps: &[Component], closing: &[Option<usize>], mode: Mode) -> OddGraph {
    let g = &fg.graph;
    let in_f = fg.in_forest();
    let mut removed = in_f.clone();
    for c in closing.iter().flatten() {
        removed[*c] = true;
    }
    let mut new_half = vec![usize::MAX; g.num_half_edges()];
    let mut vertex_of = Vec::new();
    let mut comp_of = vec![0usize; g.num_vertices()];
    for (i, c) in comps.iter().enumerate() {
        for &v in &c.walk {
            comp_of[v] = i;
        }
    }
    for e in 0..g.num_edges() {
        if removed[e] {
            continue;
        }
        for k in 0..2 {
            new_half[2 * e + k] = vertex_of.len();
            vertex_of.push(comp_of[g.vertex_of(2 * e + k)]);
        }
    }
    let inc = g.incidence();
    let mut vtype = Vec::with_capacity(comps.len());
    let mut half_orders = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let mut order = Vec::new();
        for &v in &c.walk {
            for &h in &inc[v] {
                if !removed[edge_of(h)] {
                    order.push(new_half[h]);
                }
            }
        }
        let is_b = mode == Mode::WithB && closing[i].is_none();
        vtype.push(if is_b { VertexType::B } else { VertexType::A });
        half_orders.push(order);
    }
    let graph = Graph::from_half_edges(comps.len(), vertex_of);
    OddGraph { graph, vtype, half_orders }
}

/// The graphical trace into odd graphs with all vertices of type A.
pub fn graphical_trace(fg: &ForestedGraph) -> Chain<Key> {
    trace_impl(fg, Mode::AllA)
}

/// The variant where single-vertex forest components become type-B vertices.
pub fn graphical_trace_ab(fg: &ForestedGraph) -> Chain<Key> {
    trace_impl(fg, Mode::WithB)
}

/// Trace of a chain of forested keys.
pub fn trace_chain(c: &Chain<Key>) -> Result<Chain<Key>> {
    let mut out = Chain::zero();
    for (k, v) in c.iter() {
        out.add_scaled(&graphical_trace(&ForestedGraph::from_key(k)?), v);
    }
    Ok(out)
}

/// Coefficient of `theta` in the trace of `c`.
pub fn mu(c: &Chain<Key>, theta: &OddGraph) -> Result<Q> {
    let (key, sign) = theta.canonicalize();
    if sign == 0 || theta.is_degenerate() {
        return Err(Error::ZeroProjection);
    }
    Ok(trace_chain(c)?.coeff(&key) * q(sign as i64))
}

/// Replace every vertex by a circle carrying its half-edges in orientation order;
/// the forest is each circle minus its closing edge, circles in vertex order.
pub fn blowup(theta: &OddGraph) -> Result<ForestedGraph> {
    let g = &theta.graph;
    if theta.vtype.contains(&VertexType::B) {
        return invalid("blow-up needs all vertices of type A");
    }
    let mut base = vec![0usize; g.num_vertices()];
    let mut nv = 0;
    for (v, order) in theta.half_orders.iter().enumerate() {
        if order.len() % 2 == 0 || order.len() < 3 {
            return invalid(format!("vertex {v} has valence {}", order.len()));
        }
        base[v] = nv;
        nv += order.len();
    }
    let mut slot = vec![0usize; g.num_half_edges()];
    for (v, order) in theta.half_orders.iter().enumerate() {
        for (i, &h) in order.iter().enumerate() {
            slot[h] = base[v] + i;
        }
    }
    let mut edges: Vec<(usize, usize)> = (0..g.num_edges()).map(|e| (slot[2 * e], slot[2 * e + 1])).collect();
    let mut forest = Vec::new();
    for (v, order) in theta.half_orders.iter().enumerate() {
        let len = order.len();
        for i in 0..len {
            if i + 1 < len {
                forest.push(edges.len());
            }
            edges.push((base[v] + i, base[v] + (i + 1) % len));
        }
    }
    ForestedGraph::new(Graph::from_edges(nv, &edges), forest)
}

/// Homological degree of the class attached to an odd graph.
pub fn class_degree(theta: &OddGraph) -> i64 {
    let r = theta.graph.rank() as i64;
    let a = theta.num_a() as i64;
    let b = theta.num_b() as i64;
    2 * r - 2 + a - b
}
