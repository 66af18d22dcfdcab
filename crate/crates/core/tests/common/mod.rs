//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use graphcx::bordification::FilteredGraph;
use graphcx::chain::{q, Chain, Key};
use graphcx::graph::Graph;
use graphcx::trace::OddGraph;

/// `(-1)^{Σ|G_i|}`, summed over every stage including `G`.
pub fn a_sign(g: &FilteredGraph) -> i64 {
    let total: usize = (1..=g.k()).map(|i| g.stage(i).len()).sum();
    if total.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The automorphism `G ↦ (-1)^{Σ|G_i|} G`; it is its own inverse.
pub fn a_map(c: &Chain<Key>) -> Chain<Key> {
    let mut out = Chain::zero();
    for (k, v) in c.iter() {
        let g = FilteredGraph::from_key(k).unwrap();
        out.add_term(k.clone(), v * q(a_sign(&g)));
    }
    out
}

pub fn apply(c: &Chain<Key>, f: impl Fn(&FilteredGraph) -> Chain<Key>) -> Chain<Key> {
    let mut out = Chain::zero();
    for (k, v) in c.iter() {
        out.add_scaled(&f(&FilteredGraph::from_key(k).unwrap()), v);
    }
    out
}

/// Collapse signs read off from the interior orientation: `(-1)^{n(e)+f(e)-1}`.
pub fn d_e_primed(g: &FilteredGraph) -> Chain<Key> {
    let mut out = Chain::zero();
    for e in g.collapsible_edges() {
        let s = if (g.position(e) + g.level[e] - 1).is_multiple_of(2) { 1 } else { -1 };
        out.add_scaled(&g.collapse_edge(e).normalize(), &q(s));
    }
    out
}

/// Insertion signs read off from the interior orientation: `(-1)^{f(C)+|C|+1}`.
pub fn d_f_primed(g: &FilteredGraph) -> Chain<Key> {
    let mut out = Chain::zero();
    for (c, f) in g.insertable_cores() {
        let s = if (f + c.len() + 1) % 2 == 0 { 1 } else { -1 };
        out.add_scaled(&g.insert(&c, f).normalize(), &q(s));
    }
    out
}

pub fn k4() -> OddGraph {
    OddGraph::plain(Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]))
}

/// Two triangles sharing a vertex, joined by two further edges; stages are
/// the first triangle, both triangles, then one connecting edge at a time.
pub fn wedge_of_triangles() -> FilteredGraph {
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (1, 3), (2, 4)]);
    FilteredGraph::new(g, vec![1, 1, 1, 2, 2, 2, 3, 4], (0..8).collect()).unwrap()
}
