//! Canonical labeling of coloured half-edge multigraphs.
//!
//! The multigraph is turned into a simple coloured graph on vertex nodes and
//! half-edge nodes (each half-edge node is joined to its vertex and to its
//! partner). Colour refinement plus exhaustive individualization produces
//! every discrete leaf; the lexicographically least certificate fixes the
//! canonical form, and every leaf reaching it gives one labeling. Two such
//! labelings differ by an automorphism, so the full automorphism group is
//! visible to callers that need orientation checks.

use crate::graph::{edge_of, Graph};

/// A labeling of the input onto the canonical graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    /// old vertex -> canonical vertex
    pub vertex: Vec<usize>,
    /// old half-edge -> canonical half-edge
    pub half: Vec<usize>,
}

impl Labeling {
    pub fn edge(&self, e: usize) -> usize {
        edge_of(self.half[2 * e])
    }
}

#[derive(Clone, Debug)]
pub struct Canonical {
    pub graph: Graph,
    pub vertex_color: Vec<u32>,
    pub edge_color: Vec<u32>,
    /// Every labeling that realizes the canonical form; never empty.
    pub labelings: Vec<Labeling>,
}

impl Canonical {
    /// Byte encoding of the canonical coloured graph, prefixed by `tag`.
    pub fn encode(&self, tag: u8) -> Vec<u8> {
        let g = &self.graph;
        let mut out = Vec::with_capacity(3 + g.num_vertices() + 3 * g.num_edges());
        out.push(tag);
        out.push(byte(g.num_vertices()));
        out.push(byte(g.num_edges()));
        out.extend(self.vertex_color.iter().map(|&c| byte(c as usize)));
        out.extend(self.edge_color.iter().map(|&c| byte(c as usize)));
        out.extend(g.half_edge_vertices().iter().map(|&v| byte(v)));
        out
    }

    /// Sign of each labeling under `orient`; 0 if they disagree.
    pub fn orientation_sign(&self, orient: impl Fn(&Labeling) -> i32) -> i32 {
        let mut it = self.labelings.iter().map(&orient);
        let first = it.next().expect("no labeling");
        if it.all(|s| s == first) {
            first
        } else {
            0
        }
    }
}

fn byte(x: usize) -> u8 {
    u8::try_from(x).expect("graph too large for key encoding")
}

/// Inverse of [`Canonical::encode`]: (tag, graph, vertex colours, edge colours).
pub fn decode(bytes: &[u8]) -> Option<(u8, Graph, Vec<u32>, Vec<u32>)> {
    let (&tag, rest) = bytes.split_first()?;
    let nv = *rest.first()? as usize;
    let ne = *rest.get(1)? as usize;
    let rest = &rest[2..];
    if rest.len() != nv + ne + 2 * ne {
        return None;
    }
    let vcol = rest[..nv].iter().map(|&c| c as u32).collect();
    let ecol = rest[nv..nv + ne].iter().map(|&c| c as u32).collect();
    let vof: Vec<usize> = rest[nv + ne..].iter().map(|&v| v as usize).collect();
    if vof.iter().any(|&v| v >= nv) {
        return None;
    }
    Some((tag, Graph::from_half_edges(nv, vof), vcol, ecol))
}

struct Search {
    adj: Vec<Vec<usize>>,
    init: Vec<u32>,
    best: Option<Vec<u32>>,
    leaves: Vec<Vec<usize>>,
}

/// Canonical form of `g` with vertex and edge colours.
pub fn canonical_form(g: &Graph, vertex_color: &[u32], edge_color: &[u32]) -> Canonical {
    let nv = g.num_vertices();
    let nh = g.num_half_edges();
    assert_eq!(vertex_color.len(), nv);
    assert_eq!(edge_color.len(), g.num_edges());
    let n = nv + nh;
    let mut adj = vec![Vec::new(); n];
    for h in 0..nh {
        let v = g.vertex_of(h);
        adj[v].push(nv + h);
        adj[nv + h].push(v);
        adj[nv + h].push(nv + (h ^ 1));
    }
    // vertex nodes sort before half-edge nodes
    let mut keyed: Vec<(u32, u32)> = (0..nv).map(|v| (0, vertex_color[v])).collect();
    keyed.extend((0..nh).map(|h| (1, edge_color[edge_of(h)])));
    let init = rank_keys(&keyed);
    let mut s = Search { adj, init: init.clone(), best: None, leaves: Vec::new() };
    let start = s.refine(init);
    s.descend(start);

    let leaves = std::mem::take(&mut s.leaves);
    let mut labelings = Vec::with_capacity(leaves.len());
    let mut canon_graph = None;
    for pos in &leaves {
        let (lab, cg) = build_labeling(g, nv, pos);
        if canon_graph.is_none() {
            canon_graph = Some(cg);
        }
        labelings.push(lab);
    }
    let graph = canon_graph.expect("search produced no leaf");
    let first = &labelings[0];
    let mut vcol = vec![0; nv];
    for v in 0..nv {
        vcol[first.vertex[v]] = vertex_color[v];
    }
    let mut ecol = vec![0; g.num_edges()];
    for e in 0..g.num_edges() {
        ecol[first.edge(e)] = edge_color[e];
    }
    Canonical { graph, vertex_color: vcol, edge_color: ecol, labelings }
}

/// Rebuild the graph from a discrete ordering: `pos[node]` is the position.
fn build_labeling(g: &Graph, nv: usize, pos: &[usize]) -> (Labeling, Graph) {
    let nh = g.num_half_edges();
    let vertex: Vec<usize> = (0..nv).map(|v| pos[v]).collect();
    let hpos: Vec<usize> = (0..nh).map(|h| pos[nv + h] - nv).collect();
    let mut edges: Vec<usize> = (0..g.num_edges()).collect();
    edges.sort_by_key(|&e| hpos[2 * e].min(hpos[2 * e + 1]));
    let mut half = vec![0; nh];
    for (ne, &e) in edges.iter().enumerate() {
        let (lo, hi) = if hpos[2 * e] < hpos[2 * e + 1] { (2 * e, 2 * e + 1) } else { (2 * e + 1, 2 * e) };
        half[lo] = 2 * ne;
        half[hi] = 2 * ne + 1;
    }
    let graph = g.relabel(&vertex, &half);
    (Labeling { vertex, half }, graph)
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap() as u32).collect()
}

fn num_cells(colors: &[u32]) -> usize {
    colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
}

impl Search {
    /// Equitable refinement; colours stay a dense ranking that only splits.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        let mut cells = num_cells(&colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>)> = (0..colors.len())
                .map(|x| {
                    let mut nb: Vec<u32> = self.adj[x].iter().map(|&y| colors[y]).collect();
                    nb.sort_unstable();
                    (colors[x], nb)
                })
                .collect();
            let next = rank_keys(&sigs);
            let nc = num_cells(&next);
            colors = next;
            if nc == cells {
                return colors;
            }
            cells = nc;
        }
    }

    fn descend(&mut self, colors: Vec<u32>) {
        let n = colors.len();
        if num_cells(&colors) == n {
            self.leaf(colors);
            return;
        }
        let mut size = vec![0usize; n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..n).find(|&c| size[c] > 1).unwrap() as u32;
        let members: Vec<usize> = (0..n).filter(|&x| colors[x] == target).collect();
        for x in members {
            let keys: Vec<(u32, u8)> = (0..n).map(|y| (colors[y], if y == x { 0 } else { 1 })).collect();
            let next = self.refine(rank_keys(&keys));
            self.descend(next);
        }
    }

    fn leaf(&mut self, colors: Vec<u32>) {
        let pos: Vec<usize> = colors.iter().map(|&c| c as usize).collect();
        let n = pos.len();
        let mut at = vec![0usize; n];
        for (x, &p) in pos.iter().enumerate() {
            at[p] = x;
        }
        let mut cert = Vec::with_capacity(4 * n);
        for &x in &at {
            cert.push(self.init[x]);
            let mut nb: Vec<u32> = self.adj[x].iter().map(|&y| pos[y] as u32).collect();
            nb.sort_unstable();
            cert.extend(nb);
        }
        match &self.best {
            Some(b) if cert > *b => {}
            Some(b) if cert == *b => self.leaves.push(pos),
            _ => {
                self.best = Some(cert);
                self.leaves.clear();
                self.leaves.push(pos);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canon(g: &Graph) -> Canonical {
        canonical_form(g, &vec![0; g.num_vertices()], &vec![0; g.num_edges()])
    }

    #[test]
    fn relabeling_gives_same_form() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]);
        let h = Graph::from_edges(4, &[(2, 3), (3, 0), (1, 0), (2, 1), (0, 2), (3, 1)]);
        assert_eq!(canon(&g).encode(0), canon(&h).encode(0));
        // K4 has 24 automorphisms, each half-edge map determined by the vertex map
        assert_eq!(canon(&g).labelings.len(), 24);
    }

    #[test]
    fn theta_automorphisms() {
        let t = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(canon(&t).labelings.len(), 12);
        let rose = Graph::from_edges(1, &[(0, 0), (0, 0)]);
        assert_eq!(canon(&rose).labelings.len(), 8);
    }

    #[test]
    fn colours_separate() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        let a = canonical_form(&g, &[0, 0], &[1, 0, 0]);
        let b = canonical_form(&g, &[0, 0], &[0, 0, 1]);
        let c = canonical_form(&g, &[0, 0], &[1, 1, 0]);
        assert_eq!(a.encode(0), b.encode(0));
        assert_ne!(a.encode(0), c.encode(0));
    }

    #[test]
    fn decode_round_trip() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]);
        let c = canonical_form(&g, &[1, 0, 0], &[0, 2, 0, 1]);
        let (tag, g2, vc, ec) = decode(&c.encode(7)).unwrap();
        assert_eq!(tag, 7);
        assert_eq!(g2, c.graph);
        assert_eq!(vc, c.vertex_color);
        assert_eq!(ec, c.edge_color);
    }
}
