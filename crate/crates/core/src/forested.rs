//! The forested graph complex.
//!
//! A generator is a graph with a forest; its orientation is an ordering of
//! the forest edges. The boundary adds one edge to the forest (appended last
//! in the ordering). Generators that are disconnected, have a vertex of
//! valence below three, or have a separating edge are set to zero as soon as
//! they are normalized.
//!
//! IHX: for a forest edge `e = uv` with `u`, `v` trivalent, let `a1 < a2` be
//! the other half-edges at `u` and `b1 < b2` those at `v`. `H` swaps the
//! attachments of `a2` and `b1`, `X` swaps `a2` and `b2`. With the forest
//! order unchanged the relation is `I + H + X = 0`; the three graphs are
//! permuted among themselves by relabeling, so this symmetric form is the only
//! one compatible with forest-order orientations.

use crate::canon::{self, canonical_form};
use crate::chain::{q, Chain, Key, Q};
use crate::error::{invalid, structure, Error, Result};
use crate::graph::Graph;
use crate::perm::sort_sign;
use rayon::prelude::*;

pub const TAG: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestedGraph {
    pub graph: Graph,
    /// Forest edges in orientation order.
    pub forest: Vec<usize>,
}

/// Bigrading of a forested generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Grading {
    pub rank: usize,
    pub forest: usize,
}

impl ForestedGraph {
    pub fn new(graph: Graph, forest: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; graph.num_edges()];
        for &e in &forest {
            if e >= graph.num_edges() || seen[e] {
                return structure(format!("forest edge {e} repeated or out of range"));
            }
            seen[e] = true;
        }
        if !graph.is_acyclic(&forest) {
            return structure("forest contains a cycle");
        }
        Ok(ForestedGraph { graph, forest })
    }

    pub fn grading(&self) -> Grading {
        Grading { rank: self.graph.rank(), forest: self.forest.len() }
    }

    pub fn in_forest(&self) -> Vec<bool> {
        let mut f = vec![false; self.graph.num_edges()];
        for &e in &self.forest {
            f[e] = true;
        }
        f
    }

    /// True if the generator is zero in the quotient complex regardless of orientation.
    pub fn is_degenerate(&self) -> bool {
        let g = &self.graph;
        !g.is_connected() || g.valences().iter().any(|&d| d < 3) || g.has_separating_edge()
    }

    /// Canonical key and the sign relating this orientation to the canonical one.
    /// Sign 0 when an automorphism reverses the forest order.
    pub fn canonicalize(&self) -> (Key, i32) {
        let colors: Vec<u32> = self.in_forest().iter().map(|&b| b as u32).collect();
        let c = canonical_form(&self.graph, &vec![0; self.graph.num_vertices()], &colors);
        let sign = c.orientation_sign(|lab| {
            let mapped: Vec<usize> = self.forest.iter().map(|&e| lab.edge(e)).collect();
            sort_sign(&mapped)
        });
        (Key(c.encode(TAG)), sign)
    }

    /// The generator as a chain: `±key`, or zero.
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

    /// The canonical representative of a key, forest in increasing edge order.
    pub fn from_key(key: &Key) -> Result<Self> {
        let (tag, graph, _, ecol) = canon::decode(&key.0).ok_or_else(|| Error::Invalid("undecodable key".into()))?;
        if tag != TAG {
            return invalid("key is not a forested graph");
        }
        let forest = (0..graph.num_edges()).filter(|&e| ecol[e] == 1).collect();
        ForestedGraph::new(graph, forest)
    }

    pub fn extensions(&self) -> Vec<usize> {
        self.graph.forest_extensions(&self.forest).expect("forest validated at construction")
    }

    pub fn with_forest_edge(&self, e: usize) -> ForestedGraph {
        let mut forest = self.forest.clone();
        forest.push(e);
        ForestedGraph { graph: self.graph.clone(), forest }
    }

    /// Sum over extensions, the new edge last.
    pub fn boundary(&self) -> Chain<Key> {
        let mut out = Chain::zero();
        for e in self.extensions() {
            out.add(&self.with_forest_edge(e).normalize());
        }
        out
    }

    /// The two re-gluings `(H, X)` around forest edge `e`.
    pub fn ihx_expansions(&self, e: usize) -> Result<(ForestedGraph, ForestedGraph)> {
        if !self.forest.contains(&e) {
            return invalid(format!("edge {e} is not a forest edge"));
        }
        let g = &self.graph;
        let (u, v) = g.ends(e);
        if u == v {
            return invalid("IHX on a loop");
        }
        let a: Vec<usize> = g.half_edges_at(u).into_iter().filter(|&h| h >> 1 != e).collect();
        let b: Vec<usize> = g.half_edges_at(v).into_iter().filter(|&h| h >> 1 != e).collect();
        if a.len() != 2 || b.len() != 2 {
            return invalid("IHX needs both endpoints trivalent");
        }
        let mut h = g.clone();
        h.set_vertex(a[1], v);
        h.set_vertex(b[0], u);
        let mut x = g.clone();
        x.set_vertex(a[1], v);
        x.set_vertex(b[1], u);
        Ok((
            ForestedGraph { graph: h, forest: self.forest.clone() },
            ForestedGraph { graph: x, forest: self.forest.clone() },
        ))
    }

    /// `I + H + X`, normalized.
    pub fn ihx_relator(&self, e: usize) -> Result<Chain<Key>> {
        let (h, x) = self.ihx_expansions(e)?;
        let mut out = self.normalize();
        out.add(&h.normalize());
        out.add(&x.normalize());
        Ok(out)
    }

    /// Forest edges where an IHX relation applies.
    pub fn ihx_edges(&self) -> Vec<usize> {
        let val = self.graph.valences();
        self.forest
            .iter()
            .copied()
            .filter(|&e| {
                let (u, v) = self.graph.ends(e);
                u != v && val[u] == 3 && val[v] == 3
            })
            .collect()
    }
}

pub fn grading_of(key: &Key) -> Result<Grading> {
    Ok(ForestedGraph::from_key(key)?.grading())
}

/// Boundary of a chain; every term must share one grading.
pub fn boundary(c: &Chain<Key>) -> Result<Chain<Key>> {
    let terms: Vec<(&Key, &Q)> = c.iter().collect();
    let mut grading = None;
    for (k, _) in &terms {
        let g = grading_of(k)?;
        match grading {
            None => grading = Some(g),
            Some(h) if h != g => {
                return Err(Error::Grading(format!("{h:?} and {g:?} in one chain")));
            }
            _ => {}
        }
    }
    let parts: Vec<Chain<Key>> = terms
        .par_iter()
        .map(|(k, v)| ForestedGraph::from_key(k).map(|fg| fg.boundary().scaled(v)))
        .collect::<Result<_>>()?;
    let mut out = Chain::zero();
    for p in &parts {
        out.add(p);
    }
    Ok(out)
}

/// IHX relators for every applicable forest edge of every generator.
pub fn ihx_span(generators: &[ForestedGraph]) -> Vec<Chain<Key>> {
    let rels: Vec<Vec<Chain<Key>>> = generators
        .par_iter()
        .map(|fg| {
            fg.ihx_edges()
                .into_iter()
                .map(|e| fg.ihx_relator(e).expect("edge checked"))
                .filter(|c| !c.is_zero())
                .collect()
        })
        .collect();
    rels.into_iter().flatten().collect()
}
