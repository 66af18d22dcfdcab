//! Half-edge multigraphs.
//!
//! Edge `e` owns the half-edges `2e` and `2e + 1`; the involution is `h ^ 1`.
//! Loops and parallel edges need no special casing.

use crate::error::{structure, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    nv: usize,
    vertex_of: Vec<usize>,
}

#[inline]
pub fn partner(h: usize) -> usize {
    h ^ 1
}

#[inline]
pub fn edge_of(h: usize) -> usize {
    h >> 1
}

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Result of collapsing a set of edges.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub graph: Graph,
    /// old vertex -> new vertex
    pub vertex_map: Vec<usize>,
    /// old half-edge -> new half-edge, `None` for collapsed edges
    pub half_map: Vec<Option<usize>>,
}

impl Collapse {
    pub fn edge_map(&self, e: usize) -> Option<usize> {
        self.half_map[2 * e].map(edge_of)
    }
}

impl Graph {
    pub fn from_edges(nv: usize, edges: &[(usize, usize)]) -> Self {
        let mut vertex_of = Vec::with_capacity(2 * edges.len());
        for &(u, v) in edges {
            assert!(u < nv && v < nv, "edge endpoint out of range");
            vertex_of.push(u);
            vertex_of.push(v);
        }
        Graph { nv, vertex_of }
    }

    pub fn from_half_edges(nv: usize, vertex_of: Vec<usize>) -> Self {
        assert!(vertex_of.len().is_multiple_of(2), "odd number of half-edges");
        assert!(vertex_of.iter().all(|&v| v < nv), "half-edge vertex out of range");
        Graph { nv, vertex_of }
    }

    pub fn num_vertices(&self) -> usize {
        self.nv
    }

    pub fn num_edges(&self) -> usize {
        self.vertex_of.len() / 2
    }

    pub fn num_half_edges(&self) -> usize {
        self.vertex_of.len()
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn half_edge_vertices(&self) -> &[usize] {
        &self.vertex_of
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        (self.vertex_of[2 * e], self.vertex_of[2 * e + 1])
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_edges()).map(|e| self.ends(e)).collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.ends(e);
        u == v
    }

    /// Reattach half-edge `h` to vertex `v`.
    pub fn set_vertex(&mut self, h: usize, v: usize) {
        assert!(v < self.nv);
        self.vertex_of[h] = v;
    }

    /// Half-edges at each vertex, in increasing order.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.nv];
        for (h, &v) in self.vertex_of.iter().enumerate() {
            inc[v].push(h);
        }
        inc
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_half_edges()).filter(|&h| self.vertex_of[h] == v).collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&x| x == v).count()
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.nv];
        for &v in &self.vertex_of {
            val[v] += 1;
        }
        val
    }

    pub fn num_components(&self) -> usize {
        let mut uf = UnionFind::new(self.nv);
        let mut c = self.nv;
        for e in 0..self.num_edges() {
            let (u, v) = self.ends(e);
            if uf.union(u, v) {
                c -= 1;
            }
        }
        c
    }

    pub fn is_connected(&self) -> bool {
        self.nv > 0 && self.num_components() == 1
    }

    /// First Betti number.
    pub fn rank(&self) -> usize {
        self.num_edges() + self.num_components() - self.nv
    }

    /// Bridges, in increasing edge order. Works on disconnected graphs too.
    pub fn separating_edges(&self) -> Vec<usize> {
        let inc = self.incidence();
        let n = self.nv;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // stack of (vertex, half-edge used to enter, next incidence index)
            let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
            disc[root] = time;
            low[root] = time;
            time += 1;
            while let Some(&mut (v, entry, ref mut idx)) = stack.last_mut() {
                if *idx < inc[v].len() {
                    let h = inc[v][*idx];
                    *idx += 1;
                    if Some(partner(h)) == entry {
                        continue;
                    }
                    let w = self.vertex_of[partner(h)];
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(h), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(h), Some(&(p, _, _))) = (entry, stack.last()) {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(edge_of(h));
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    pub fn has_separating_edge(&self) -> bool {
        !self.separating_edges().is_empty()
    }

    /// Every vertex of valence at least two and no bridge.
    pub fn is_core(&self) -> bool {
        self.nv > 0 && self.valences().iter().all(|&d| d >= 2) && !self.has_separating_edge()
    }

    /// The subgraph spanned by `edges` (vertices = endpoints), with maps back.
    pub fn edge_subgraph(&self, edges: &[usize]) -> (Graph, Vec<usize>) {
        let mut new_of = vec![usize::MAX; self.nv];
        let mut back = Vec::new();
        let mut pairs = Vec::with_capacity(edges.len());
        for &e in edges {
            let (u, v) = self.ends(e);
            for x in [u, v] {
                if new_of[x] == usize::MAX {
                    new_of[x] = back.len();
                    back.push(x);
                }
            }
            pairs.push((new_of[u], new_of[v]));
        }
        (Graph::from_edges(back.len(), &pairs), back)
    }

    /// Core test for the subgraph spanned by an edge set.
    pub fn is_core_subgraph(&self, edges: &[usize]) -> bool {
        !edges.is_empty() && self.edge_subgraph(edges).0.is_core()
    }

    pub fn is_acyclic(&self, edges: &[usize]) -> bool {
        let mut uf = UnionFind::new(self.nv);
        edges.iter().all(|&e| {
            let (u, v) = self.ends(e);
            uf.union(u, v)
        })
    }

    /// Component label per vertex of the spanning subgraph with the given edges.
    /// Labels are the smallest vertex in each component.
    pub fn components_of(&self, edges: &[usize]) -> Vec<usize> {
        let mut uf = UnionFind::new(self.nv);
        for &e in edges {
            let (u, v) = self.ends(e);
            uf.union(u, v);
        }
        (0..self.nv).map(|v| uf.find(v)).collect()
    }

    /// Non-forest edges whose addition keeps the forest acyclic.
    pub fn forest_extensions(&self, forest: &[usize]) -> Result<Vec<usize>> {
        if !self.is_acyclic(forest) {
            return structure("forest contains a cycle");
        }
        let comp = self.components_of(forest);
        let mut in_f = vec![false; self.num_edges()];
        for &e in forest {
            in_f[e] = true;
        }
        Ok((0..self.num_edges())
            .filter(|&e| {
                let (u, v) = self.ends(e);
                !in_f[e] && comp[u] != comp[v]
            })
            .collect())
    }

    /// Collapse every connected component of the edge set `s` to a vertex.
    ///
    /// New vertices are numbered by the smallest old vertex they contain;
    /// surviving edges keep their relative order.
    pub fn collapse(&self, s: &[usize]) -> Collapse {
        let comp = self.components_of(s);
        let mut rep_index = vec![usize::MAX; self.nv];
        let mut next = 0;
        for &r in comp.iter().take(self.nv) {
            if rep_index[r] == usize::MAX {
                rep_index[r] = next;
                next += 1;
            }
        }
        let vertex_map: Vec<usize> = (0..self.nv).map(|v| rep_index[comp[v]]).collect();
        let mut gone = vec![false; self.num_edges()];
        for &e in s {
            gone[e] = true;
        }
        let mut half_map = vec![None; self.num_half_edges()];
        let mut vertex_of = Vec::new();
        for e in 0..self.num_edges() {
            if gone[e] {
                continue;
            }
            let ne = vertex_of.len() / 2;
            for k in 0..2 {
                half_map[2 * e + k] = Some(2 * ne + k);
                vertex_of.push(vertex_map[self.vertex_of[2 * e + k]]);
            }
        }
        Collapse { graph: Graph { nv: next, vertex_of }, vertex_map, half_map }
    }

    /// Relabel vertices and half-edges. `half_perm` must respect the pairing.
    pub fn relabel(&self, vertex_perm: &[usize], half_perm: &[usize]) -> Graph {
        let mut vertex_of = vec![0; self.num_half_edges()];
        for h in 0..self.num_half_edges() {
            debug_assert_eq!(half_perm[h] ^ 1, half_perm[h ^ 1]);
            vertex_of[half_perm[h]] = vertex_perm[self.vertex_of[h]];
        }
        Graph { nv: self.nv, vertex_of }
    }

    /// Path in the forest `tree` from `a` to `b` as (vertices, edges).
    pub fn tree_path(&self, tree: &[usize], a: usize, b: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut adj = vec![Vec::new(); self.nv];
        for &e in tree {
            let (u, v) = self.ends(e);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.nv];
        let mut seen = vec![false; self.nv];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            if x == b {
                break;
            }
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    stack.push(y);
                }
            }
        }
        if !seen[b] {
            return None;
        }
        let mut verts = vec![b];
        let mut edges = Vec::new();
        let mut cur = b;
        while cur != a {
            let (p, e) = prev[cur]?;
            edges.push(e);
            verts.push(p);
            cur = p;
        }
        verts.reverse();
        edges.reverse();
        Some((verts, edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta(k: usize) -> Graph {
        Graph::from_edges(2, &vec![(0, 1); k])
    }

    #[test]
    fn core_predicates() {
        let rose = Graph::from_edges(1, &[(0, 0)]);
        assert!(rose.is_core());
        let dumbbell = Graph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]);
        assert!(!dumbbell.is_core());
        assert_eq!(dumbbell.separating_edges(), vec![1]);
        assert!(theta(3).is_core());
        assert!(theta(3).separating_edges().is_empty());
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(path.separating_edges(), vec![0, 1, 2]);
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]);
        assert_eq!(g.separating_edges(), vec![2]);
    }

    #[test]
    fn collapse_keeps_rank_on_forests() {
        let t = theta(3);
        let c = t.collapse(&[0]);
        assert_eq!(c.graph.num_vertices(), 1);
        assert_eq!(c.graph.num_edges(), 2);
        assert!(c.graph.is_loop(0) && c.graph.is_loop(1));
        assert_eq!(c.graph.rank(), t.rank());
        let id = t.collapse(&[]);
        assert_eq!(id.graph, t);
        let cyc = t.collapse(&[0, 1]);
        assert_eq!(cyc.graph.rank(), 1);
    }

    #[test]
    fn extensions() {
        let g = Graph::from_edges(1, &[(0, 0)]);
        assert!(g.forest_extensions(&[]).unwrap().is_empty());
        let t = theta(3);
        assert_eq!(t.forest_extensions(&[]).unwrap(), vec![0, 1, 2]);
        assert!(t.forest_extensions(&[1]).unwrap().is_empty());
        assert!(t.forest_extensions(&[0, 1]).is_err());
    }

    #[test]
    fn path_in_tree() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]);
        let (vs, es) = g.tree_path(&[0, 1, 2], 0, 3).unwrap();
        assert_eq!(vs, vec![0, 1, 3]);
        assert_eq!(es, vec![0, 2]);
    }
}
