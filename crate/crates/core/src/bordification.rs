//! Filtered graphs, the differentials `d_E` and `d_F`, and the cycles `Φ(X)`
//! built from odd AB-graphs.
//!
//! A filtration `G_1 ⊊ … ⊊ G_k = G` is stored as a level per edge: the stage
//! at which the edge first appears. Orientation is an ordering of all edges.

use crate::canon::{self, canonical_form};
use crate::chain::{q, Chain, Key};
use crate::error::{invalid, structure, Error, Result};
use crate::graph::{Graph, UnionFind};
use crate::perm::{for_each_permutation, sort_sign};
use crate::trace::{OddGraph, VertexType};
use rayon::prelude::*;

pub const TAG: u8 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredGraph {
    pub graph: Graph,
    /// 1-based stage at which each edge enters.
    pub level: Vec<usize>,
    /// Edges in orientation order.
    pub edge_order: Vec<usize>,
}

impl FilteredGraph {
    pub fn new(graph: Graph, level: Vec<usize>, edge_order: Vec<usize>) -> Result<Self> {
        let ne = graph.num_edges();
        if level.len() != ne {
            return invalid("one level per edge required");
        }
        let mut sorted = edge_order.clone();
        sorted.sort_unstable();
        if sorted != (0..ne).collect::<Vec<_>>() {
            return invalid("edge order is not a permutation of the edges");
        }
        if !graph.is_connected() {
            return structure("filtered graph must be connected");
        }
        if graph.valences().iter().any(|&d| d < 3) {
            return structure("filtered graph needs valences at least 3");
        }
        let k = level.iter().copied().max().unwrap_or(0);
        for i in 1..=k {
            if !level.contains(&i) {
                return structure(format!("filtration stage {i} adds no edge"));
            }
        }
        let fg = FilteredGraph { graph, level, edge_order };
        for i in 1..k {
            if !fg.graph.is_core_subgraph(&fg.stage(i)) {
                return structure(format!("filtration stage {i} is not a core graph"));
            }
        }
        Ok(fg)
    }

    /// Number of graphs in the filtration, `G` included.
    pub fn k(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.graph.num_edges() as i64 - self.k() as i64
    }

    /// Edges of `G_i`.
    pub fn stage(&self, i: usize) -> Vec<usize> {
        (0..self.graph.num_edges()).filter(|&e| self.level[e] <= i).collect()
    }

    /// 1-based position of `e` in the orientation order.
    pub fn position(&self, e: usize) -> usize {
        self.edge_order.iter().position(|&x| x == e).unwrap() + 1
    }

    pub fn canonicalize(&self) -> (Key, i32) {
        let ecol: Vec<u32> = self.level.iter().map(|&l| l as u32).collect();
        let c = canonical_form(&self.graph, &vec![0; self.graph.num_vertices()], &ecol);
        let sign = c.orientation_sign(|lab| {
            let mapped: Vec<usize> = self.edge_order.iter().map(|&e| lab.edge(e)).collect();
            sort_sign(&mapped)
        });
        (Key(c.encode(TAG)), sign)
    }

    pub fn normalize(&self) -> Chain<Key> {
        let (key, sign) = self.canonicalize();
        if sign == 0 {
            Chain::zero()
        } else {
            Chain::single(key, q(sign as i64))
        }
    }

    pub fn from_key(key: &Key) -> Result<Self> {
        let (tag, graph, _, ecol) = canon::decode(&key.0).ok_or_else(|| Error::Invalid("undecodable key".into()))?;
        if tag != TAG {
            return invalid("key is not a filtered graph");
        }
        let level = ecol.iter().map(|&c| c as usize).collect();
        let order = (0..graph.num_edges()).collect();
        FilteredGraph::new(graph, level, order)
    }

    /// Core graphs that fit strictly between consecutive stages, with the
    /// position they take once inserted.
    pub fn insertable_cores(&self) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.k() {
            let lower: Vec<usize> = (0..self.graph.num_edges()).filter(|&e| self.level[e] < i).collect();
            let gap: Vec<usize> = (0..self.graph.num_edges()).filter(|&e| self.level[e] == i).collect();
            assert!(gap.len() < 32, "filtration gap too large to enumerate");
            for mask in 1u32..(1u32 << gap.len()) - 1 {
                let mut c = lower.clone();
                c.extend(gap.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &e)| e));
                c.sort_unstable();
                if self.graph.is_core_subgraph(&c) {
                    out.push((c, i));
                }
            }
        }
        out
    }

    /// Insert the core graph `c` as stage `f`.
    pub fn insert(&self, c: &[usize], f: usize) -> FilteredGraph {
        let mut in_c = vec![false; self.graph.num_edges()];
        for &e in c {
            in_c[e] = true;
        }
        let level = (0..self.graph.num_edges())
            .map(|e| {
                let l = self.level[e];
                if l < f || (l == f && in_c[e]) {
                    l
                } else {
                    l + 1
                }
            })
            .collect();
        FilteredGraph { graph: self.graph.clone(), level, edge_order: self.edge_order.clone() }
    }

    /// Edges whose collapse keeps the rank of every stage and the filtration length:
    /// not a loop, not alone in its stage, and not a loop in `G_f / G_{f-1}`.
    pub fn collapsible_edges(&self) -> Vec<usize> {
        let g = &self.graph;
        let k = self.k();
        let mut count = vec![0usize; k + 1];
        for &l in &self.level {
            count[l] += 1;
        }
        (0..g.num_edges())
            .filter(|&e| {
                let f = self.level[e];
                let (u, v) = g.ends(e);
                if u == v || count[f] < 2 {
                    return false;
                }
                let mut uf = UnionFind::new(g.num_vertices());
                for x in self.stage(f - 1) {
                    let (a, b) = g.ends(x);
                    uf.union(a, b);
                }
                uf.find(u) != uf.find(v)
            })
            .collect()
    }

    pub fn collapse_edge(&self, e: usize) -> FilteredGraph {
        let c = self.graph.collapse(&[e]);
        let ne = c.graph.num_edges();
        let mut level = vec![0; ne];
        for old in 0..self.graph.num_edges() {
            if let Some(new) = c.edge_map(old) {
                level[new] = self.level[old];
            }
        }
        let edge_order = self.edge_order.iter().filter_map(|&x| c.edge_map(x)).collect();
        FilteredGraph { graph: c.graph, level, edge_order }
    }

    /// `Σ_C (-1)^{f(C)} G⟨C⟩`
    pub fn d_f(&self) -> Chain<Key> {
        let mut out = Chain::zero();
        for (c, f) in self.insertable_cores() {
            let sign = if f % 2 == 0 { 1 } else { -1 };
            out.add_scaled(&self.insert(&c, f).normalize(), &q(sign));
        }
        out
    }

    /// `Σ_e (-1)^{n(e)+k-1} G_e`
    pub fn d_e(&self) -> Chain<Key> {
        let k = self.k();
        let mut out = Chain::zero();
        for e in self.collapsible_edges() {
            let sign = if (self.position(e) + k - 1).is_multiple_of(2) { 1 } else { -1 };
            out.add_scaled(&self.collapse_edge(e).normalize(), &q(sign));
        }
        out
    }

    pub fn d(&self) -> Chain<Key> {
        let mut out = self.d_e();
        out.add(&self.d_f());
        out
    }
}

fn apply(c: &Chain<Key>, f: impl Fn(&FilteredGraph) -> Chain<Key> + Sync) -> Result<Chain<Key>> {
    let terms: Vec<_> = c.iter().collect();
    let parts: Vec<Chain<Key>> =
        terms.par_iter().map(|(k, v)| FilteredGraph::from_key(k).map(|g| f(&g).scaled(v))).collect::<Result<_>>()?;
    let mut out = Chain::zero();
    for p in &parts {
        out.add(p);
    }
    Ok(out)
}

pub fn d_e(c: &Chain<Key>) -> Result<Chain<Key>> {
    apply(c, FilteredGraph::d_e)
}

pub fn d_f(c: &Chain<Key>) -> Result<Chain<Key>> {
    apply(c, FilteredGraph::d_f)
}

pub fn d(c: &Chain<Key>) -> Result<Chain<Key>> {
    apply(c, FilteredGraph::d)
}

/// Choices entering the construction of `Φ(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiChoice {
    /// A maximal tree of `X`.
    pub tree: Vec<usize>,
    /// Order of the type-A vertices.
    pub a_order: Vec<usize>,
    /// Order of the edges outside the tree.
    pub edge_order: Vec<usize>,
}

impl PhiChoice {
    /// Depth-first tree from vertex 0, vertices and remaining edges by index.
    pub fn default_for(x: &OddGraph) -> PhiChoice {
        let g = &x.graph;
        let mut uf = UnionFind::new(g.num_vertices());
        let tree: Vec<usize> = (0..g.num_edges())
            .filter(|&e| {
                let (u, v) = g.ends(e);
                uf.union(u, v)
            })
            .collect();
        let a_order = (0..g.num_vertices()).filter(|&v| x.vtype[v] == VertexType::A).collect();
        let edge_order = (0..g.num_edges()).filter(|e| !tree.contains(e)).collect();
        PhiChoice { tree, a_order, edge_order }
    }

    fn validate(&self, x: &OddGraph) -> Result<()> {
        let g = &x.graph;
        if self.tree.len() + 1 != g.num_vertices() || !g.is_acyclic(&self.tree) {
            return invalid("not a maximal tree");
        }
        let mut a = self.a_order.clone();
        a.sort_unstable();
        let want: Vec<usize> = (0..g.num_vertices()).filter(|&v| x.vtype[v] == VertexType::A).collect();
        if a != want {
            return invalid("A-vertex order must list every type-A vertex once");
        }
        let mut rest = self.edge_order.clone();
        rest.extend(&self.tree);
        rest.sort_unstable();
        if rest != (0..g.num_edges()).collect::<Vec<_>>() {
            return invalid("edge order must list the non-tree edges once");
        }
        Ok(())
    }
}

/// Degree data of an AB-graph: `(n, a, b, V_B, degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiHeader {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub vb: usize,
    pub degree: i64,
}

pub fn phi_degree(x: &OddGraph) -> PhiHeader {
    let n = x.graph.rank();
    let a = x.num_a();
    let b = x.num_b();
    let vb = (0..x.graph.num_vertices())
        .filter(|&v| x.vtype[v] == VertexType::B)
        .map(|v| x.half_orders[v].len())
        .sum::<usize>();
    let degree = 2 * n as i64 - 2 + a as i64 + 2 * b as i64 - vb as i64;
    PhiHeader { n, a, b, vb, degree }
}

/// One summand: polygons glued by the bijections `perms[t]` at the `t`-th A vertex.
pub fn phi_term(x: &OddGraph, choice: &PhiChoice, perms: &[&[usize]]) -> FilteredGraph {
    let (graph, level) = polygon_graph(x, choice, perms);
    let order = (0..level.len()).collect();
    FilteredGraph::new(graph, level, order).expect("polygon insertion gives a valid filtration")
}

/// Graph and levels of one summand, `choice.tree` collapsed, before validation.
fn polygon_graph(x: &OddGraph, choice: &PhiChoice, perms: &[&[usize]]) -> (Graph, Vec<usize>) {
    let g = &x.graph;
    let nv = g.num_vertices();
    // node of each X vertex (B) or first polygon node (A)
    let mut base = vec![0usize; nv];
    let mut next = 0;
    for (v, b) in base.iter_mut().enumerate() {
        *b = next;
        next += if x.vtype[v] == VertexType::A { x.half_orders[v].len() } else { 1 };
    }
    let mut attach = vec![usize::MAX; g.num_half_edges()];
    for v in (0..nv).filter(|&v| x.vtype[v] == VertexType::B) {
        for &h in &x.half_orders[v] {
            attach[h] = base[v];
        }
    }
    for (t, &s) in choice.a_order.iter().enumerate() {
        for (i, &h) in x.half_orders[s].iter().enumerate() {
            attach[h] = base[s] + perms[t][i];
        }
    }
    let mut edges = Vec::new();
    let mut level = Vec::new();
    for (t, &s) in choice.a_order.iter().enumerate() {
        let v = x.half_orders[s].len();
        for j in 0..v {
            edges.push((base[s] + j, base[s] + (j + 1) % v));
            level.push(t + 1);
        }
    }
    let a = choice.a_order.len();
    for (j, &e) in choice.edge_order.iter().enumerate() {
        edges.push((attach[2 * e], attach[2 * e + 1]));
        level.push(a + j + 1);
    }
    let first_tree = edges.len();
    for &e in &choice.tree {
        edges.push((attach[2 * e], attach[2 * e + 1]));
        level.push(0);
    }
    let y = Graph::from_edges(next, &edges);
    let tree_edges: Vec<usize> = (first_tree..edges.len()).collect();
    let c = y.collapse(&tree_edges);
    level.truncate(first_tree);
    (c.graph, level)
}

/// `Φ(X) = Σ ε(ι_1)…ε(ι_a) Y[ι_1…ι_a]` over all bijection tuples.
pub fn phi(x: &OddGraph, choice: &PhiChoice) -> Result<(Chain<Key>, PhiHeader)> {
    choice.validate(x)?;
    if !x.graph.is_connected() || x.graph.valences().iter().any(|&d| d < 3) {
        return invalid("AB-graph must be connected with valences at least 3");
    }
    let tables: Vec<Vec<(Vec<usize>, i32)>> = choice
        .a_order
        .iter()
        .map(|&s| {
            let mut t = Vec::new();
            for_each_permutation(x.half_orders[s].len(), |p, sign| t.push((p.to_vec(), sign)));
            t
        })
        .collect();
    let total: usize = tables.iter().map(|t| t.len()).product();
    let parts: Vec<Chain<Key>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut perms: Vec<&[usize]> = Vec::with_capacity(tables.len());
            let mut eps = 1;
            for t in &tables {
                let (p, s) = &t[idx % t.len()];
                idx /= t.len();
                perms.push(p);
                eps *= s;
            }
            phi_term(x, choice, &perms).normalize().scaled(&q(eps as i64))
        })
        .collect();
    let mut out = Chain::zero();
    for p in &parts {
        out.add(p);
    }
    Ok((out, phi_degree(x)))
}

/// Outcome of comparing `Φ` for two sets of choices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariance {
    /// `d(witness) = Φ - Φ'`
    Witness(Chain<Key>),
    Unresolved(String),
}

/// Try to certify that two choices give homologous cycles.
///
/// Identical cycles get the zero witness. Trees that differ by exchanging one
/// edge, with the remaining data matched slot for slot, get the connecting
/// chain where the two exchanged edges enter the filtration together; the
/// witness is returned only after `d` of it is checked against `Φ - Φ'`.
pub fn phi_choice_invariance(x: &OddGraph, c1: &PhiChoice, c2: &PhiChoice) -> Result<Invariance> {
    let (p1, _) = phi(x, c1)?;
    let (p2, _) = phi(x, c2)?;
    let mut diff = p1.clone();
    diff.sub(&p2);
    if diff.is_zero() {
        return Ok(Invariance::Witness(Chain::zero()));
    }
    let only1: Vec<usize> = c1.tree.iter().copied().filter(|e| !c2.tree.contains(e)).collect();
    let only2: Vec<usize> = c2.tree.iter().copied().filter(|e| !c1.tree.contains(e)).collect();
    if only1.len() != 1 || c1.a_order != c2.a_order {
        return Ok(Invariance::Unresolved("choices differ by more than one tree exchange".into()));
    }
    let (e, e2) = (only1[0], only2[0]);
    // e2 sits in c1's edge order where e sits in c2's
    let slot = match c1.edge_order.iter().position(|&y| y == e2) {
        Some(s) if c2.edge_order.get(s) == Some(&e) => s,
        _ => return Ok(Invariance::Unresolved("edge orders are not matched slot for slot".into())),
    };
    let same_rest = c1.edge_order.iter().zip(&c2.edge_order).enumerate().all(|(i, (a, b))| i == slot || a == b);
    if !same_rest {
        return Ok(Invariance::Unresolved("edge orders differ away from the exchanged edge".into()));
    }
    for sign in [1i64, -1] {
        let w = connecting_chain(x, c1, e, slot)?.scaled(&q(sign));
        if d(&w)? == diff {
            return Ok(Invariance::Witness(w));
        }
    }
    Ok(Invariance::Unresolved("connecting chain does not bound the difference".into()))
}

/// Polygons inserted, tree minus `e` collapsed, `e` and `c.edge_order[slot]`
/// entering at one stage with `e` first.
fn connecting_chain(x: &OddGraph, c: &PhiChoice, e: usize, slot: usize) -> Result<Chain<Key>> {
    let tree: Vec<usize> = c.tree.iter().copied().filter(|&y| y != e).collect();
    let mut edge_order = c.edge_order.clone();
    edge_order.insert(slot, e);
    let shifted = PhiChoice { tree, a_order: c.a_order.clone(), edge_order };
    let tables: Vec<Vec<(Vec<usize>, i32)>> = c
        .a_order
        .iter()
        .map(|&s| {
            let mut t = Vec::new();
            for_each_permutation(x.half_orders[s].len(), |p, sign| t.push((p.to_vec(), sign)));
            t
        })
        .collect();
    let total: usize = tables.iter().map(|t| t.len()).product();
    let a = c.a_order.len();
    let mut out = Chain::zero();
    for mut idx in 0..total {
        let mut perms: Vec<&[usize]> = Vec::new();
        let mut eps = 1;
        for t in &tables {
            let (p, s) = &t[idx % t.len()];
            idx /= t.len();
            perms.push(p);
            eps *= s;
        }
        let (graph, level) = polygon_graph(x, &shifted, &perms);
        // merge the stage of e with the next one
        let merge = a + slot + 1;
        let level: Vec<usize> = level.iter().map(|&l| if l > merge { l - 1 } else { l }).collect();
        let order = (0..level.len()).collect();
        let fy = FilteredGraph::new(graph, level, order)?;
        out.add_scaled(&fy.normalize(), &q(eps as i64));
    }
    Ok(out)
}
