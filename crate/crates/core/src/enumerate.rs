//! Exhaustive enumeration of small trivalent graphs and their forests.

use crate::canon::canonical_form;
use crate::chain::Key;
use crate::forested::ForestedGraph;
use crate::graph::Graph;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// Connected trivalent multigraphs of the given rank without separating edges,
/// one per isomorphism class.
pub fn trivalent_graphs(rank: usize) -> Vec<Graph> {
    assert!(rank >= 2, "trivalent graphs have rank at least 2");
    let nv = 2 * rank - 2;
    let mut found: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    let mut rem = vec![3usize; nv];
    let mut edges = Vec::new();
    place_loops(0, &mut rem, &mut edges, &mut |edges| {
        let g = Graph::from_edges(nv, edges);
        if g.is_connected() && !g.has_separating_edge() {
            let c = canonical_form(&g, &vec![0; nv], &vec![0; g.num_edges()]);
            found.entry(c.encode(0)).or_insert(c.graph);
        }
    });
    found.into_values().collect()
}

type Emit<'a> = &'a mut dyn FnMut(&[(usize, usize)]);

/// Vertex `i` gets zero or one loop, then its remaining edges to later vertices.
fn place_loops(i: usize, rem: &mut [usize], edges: &mut Vec<(usize, usize)>, emit: Emit) {
    if i == rem.len() {
        emit(edges);
        return;
    }
    place_edges(i, i + 1, rem, edges, emit);
    if rem[i] >= 2 {
        rem[i] -= 2;
        edges.push((i, i));
        place_edges(i, i + 1, rem, edges, emit);
        edges.pop();
        rem[i] += 2;
    }
}

/// Edges `i -> j` with `j >= from`, nondecreasing so parallel edges appear once.
fn place_edges(i: usize, from: usize, rem: &mut [usize], edges: &mut Vec<(usize, usize)>, emit: Emit) {
    if rem[i] == 0 {
        place_loops(i + 1, rem, edges, emit);
        return;
    }
    for j in from..rem.len() {
        if rem[j] == 0 {
            continue;
        }
        rem[i] -= 1;
        rem[j] -= 1;
        edges.push((i, j));
        place_edges(i, j, rem, edges, emit);
        edges.pop();
        rem[i] += 1;
        rem[j] += 1;
    }
}

/// All acyclic edge subsets of size `k`, in lexicographic order.
pub fn forests(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    subsets(g, 0, k, &mut cur, &mut out);
    out
}

fn subsets(g: &Graph, from: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for e in from..g.num_edges() {
        cur.push(e);
        if g.is_acyclic(cur) {
            subsets(g, e + 1, k, cur, out);
        }
        cur.pop();
    }
}

/// Distinct nonzero forested generators of rank `rank` with `k` forest edges.
pub fn forested_generators(rank: usize, k: usize) -> Vec<Key> {
    let graphs = trivalent_graphs(rank);
    let sets: Vec<BTreeSet<Key>> = graphs
        .par_iter()
        .map(|g| {
            forests(g, k)
                .into_iter()
                .filter_map(|f| {
                    let c = ForestedGraph::new(g.clone(), f).ok()?.normalize();
                    let key = c.keys().next().cloned();
                    key
                })
                .collect()
        })
        .collect();
    let all: BTreeSet<Key> = sets.into_iter().flatten().collect();
    all.into_iter().collect()
}
