//! Chord diagrams: normal forms of trivalent graphs with a maximal tree,
//! modulo IHX.
//!
//! A diagram on `n` line vertices has line edges `0..n-1` (edge `i` joins
//! positions `i` and `i+1`), a closing edge joining the two ends, and `n/2`
//! chords. Its orientation is the order of the line edges from left to right.
//! Positions are 0-based internally and printed 1-based.

use crate::chain::{q, Chain};
use crate::error::{invalid, structure, Error, Result};
use crate::forested::ForestedGraph;
use crate::graph::Graph;
use crate::perm::relative_sign;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    n: usize,
    /// Sorted pairs `(a, b)` with `a < b`.
    pairs: Vec<(usize, usize)>,
}

impl ChordDiagram {
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut seen = vec![false; n];
        for &(a, b) in pairs {
            for p in [a, b] {
                if p >= n || seen[p] {
                    return invalid(format!("position {} repeated or off the line", p + 1));
                }
                seen[p] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return invalid("chords must cover every line vertex");
        }
        Ok(Self::raw(n, pairs))
    }

    fn raw(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut pairs: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        ChordDiagram { n, pairs }
    }

    /// Parse a foot-pairing word such as `(13)(25)(46)` or `(1,10)(2,9)...`.
    pub fn parse(word: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for body in word.split(['(', ')']).map(str::trim).filter(|s| !s.is_empty()) {
            let nums: Option<Vec<usize>> = if body.contains(',') {
                body.split(',').map(|s| s.trim().parse().ok()).collect()
            } else {
                body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
            };
            match nums.as_deref() {
                Some(&[a, b]) if a > 0 && b > 0 => pairs.push((a - 1, b - 1)),
                _ => return invalid(format!("bad chord `({body})`")),
            }
        }
        ChordDiagram::new(2 * pairs.len(), &pairs)
    }

    pub fn line_length(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.n / 2 + 1
    }

    pub fn has_isolated_chord(&self) -> bool {
        self.pairs.iter().any(|&(a, b)| b == a + 1)
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a.min(b), a.max(b)))
    }

    fn reflected(&self) -> Self {
        let n = self.n;
        Self::raw(n, &self.pairs.iter().map(|&(a, b)| (n - 1 - a, n - 1 - b)).collect::<Vec<_>>())
    }

    /// Sign of reversing the line: the order of `n-1` line edges is reversed.
    pub fn reflection_sign(n: usize) -> i32 {
        let m = n.saturating_sub(1);
        if (m * m.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Lexicographically smaller of the diagram and its reflection, with the
    /// sign relating them; sign 0 if the diagram equals minus itself.
    pub fn canonical(&self) -> (ChordDiagram, i32) {
        let r = self.reflected();
        let s = Self::reflection_sign(self.n);
        if r == *self {
            return (self.clone(), if s == 1 { 1 } else { 0 });
        }
        if *self <= r {
            (self.clone(), 1)
        } else {
            (r, s)
        }
    }

    /// The diagram as a chain element: zero if it has an isolated chord or is
    /// reflection-antisymmetric.
    pub fn normalize(&self) -> Chain<ChordDiagram> {
        if self.has_isolated_chord() {
            return Chain::zero();
        }
        let (d, s) = self.canonical();
        if s == 0 {
            Chain::zero()
        } else {
            Chain::single(d, q(s as i64))
        }
    }

    /// Graph with line edges `0..n-1`, closing edge `n-1`, then the chords.
    /// Returns the graph, the line as an ordered tree, and the closing edge.
    pub fn to_graph(&self) -> (Graph, Vec<usize>, usize) {
        let n = self.n;
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        edges.extend(self.pairs.iter().copied());
        (Graph::from_edges(n, &edges), (0..n - 1).collect(), n - 1)
    }

    /// The same chords with the leftmost position moved to the far end.
    pub fn rotated(&self) -> ChordDiagram {
        let n = self.n;
        Self::raw(n, &self.pairs.iter().map(|&(a, b)| ((a + n - 1) % n, (b + n - 1) % n)).collect::<Vec<_>>())
    }

    /// `ρ`, normalized.
    pub fn rotate(&self) -> Chain<ChordDiagram> {
        self.rotated().normalize()
    }

    /// `Y_σ`: feet re-glued by `sigma`, a 1-based map on positions; positions
    /// not mentioned are fixed.
    pub fn permute_feet(&self, sigma: &[(usize, usize)]) -> Result<Chain<ChordDiagram>> {
        let mut map: Vec<usize> = (0..self.n).collect();
        for &(from, to) in sigma {
            if from == 0 || to == 0 || from > self.n || to > self.n {
                return invalid("foot permutation leaves the line");
            }
            map[from - 1] = to - 1;
        }
        let image: BTreeSet<usize> = map.iter().copied().collect();
        if image.len() != self.n {
            return invalid("foot map is not a permutation");
        }
        Ok(Self::raw(self.n, &self.pairs.iter().map(|&(a, b)| (map[a], map[b])).collect::<Vec<_>>()).normalize())
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        for &(a, b) in &self.pairs {
            if self.n <= 9 {
                write!(f, "({}{})", a + 1, b + 1)?;
            } else {
                write!(f, "({},{})", a + 1, b + 1)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Chain of diagrams printed as `+2(13)(25)(46) -1(14)(26)(35)`.
pub fn show(c: &Chain<ChordDiagram>) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.iter()
        .map(|(d, v)| {
            let s = v.to_string();
            if s.starts_with('-') {
                format!("{s}{d}")
            } else {
                format!("+{s}{d}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_trivalent(g: &Graph, tree: &[usize]) -> Result<()> {
    if g.valences().iter().any(|&d| d != 3) {
        return structure("chord reduction needs a trivalent graph");
    }
    if tree.len() + 1 != g.num_vertices() || !g.is_acyclic(tree) {
        return invalid("not a maximal tree");
    }
    Ok(())
}

/// A non-tree edge that is a loop or parallel to a tree edge kills the term.
fn vanishes(g: &Graph, in_tree: &[bool]) -> bool {
    let mut tree_ends = BTreeSet::new();
    for e in (0..g.num_edges()).filter(|&e| in_tree[e]) {
        let (a, b) = g.ends(e);
        tree_ends.insert((a.min(b), a.max(b)));
    }
    (0..g.num_edges()).filter(|&e| !in_tree[e]).any(|e| {
        let (a, b) = g.ends(e);
        a == b || tree_ends.contains(&(a.min(b), a.max(b)))
    })
}

/// IHX around tree edge `e` with the convention of the forested complex.
fn ihx(g: &Graph, e: usize) -> (Graph, Graph) {
    let (u, v) = g.ends(e);
    let a: Vec<usize> = g.half_edges_at(u).into_iter().filter(|&h| h >> 1 != e).collect();
    let b: Vec<usize> = g.half_edges_at(v).into_iter().filter(|&h| h >> 1 != e).collect();
    let mut h = g.clone();
    h.set_vertex(a[1], v);
    h.set_vertex(b[0], u);
    let mut x = g.clone();
    x.set_vertex(a[1], v);
    x.set_vertex(b[1], u);
    (h, x)
}

/// Grow the tree geodesic between the ends of `closing` by IHX until it
/// passes through every vertex, then read off the diagram.
fn grow(g: &Graph, tree: &[usize], in_tree: &[bool], closing: usize, coef: i64, out: &mut Chain<ChordDiagram>) {
    if vanishes(g, in_tree) {
        return;
    }
    let (a, b) = g.ends(closing);
    let (path, path_edges) = g.tree_path(tree, a, b).expect("tree spans the graph");
    let n = g.num_vertices();
    if path.len() == n {
        let mut pos = vec![0; n];
        for (i, &v) in path.iter().enumerate() {
            pos[v] = i;
        }
        let sign = relative_sign(tree, &path_edges);
        let pairs: Vec<(usize, usize)> = (0..g.num_edges())
            .filter(|&f| !in_tree[f] && f != closing)
            .map(|f| {
                let (x, y) = g.ends(f);
                (pos[x], pos[y])
            })
            .collect();
        let d = ChordDiagram::raw(n, &pairs);
        out.add_scaled(&d.normalize(), &q(coef * sign as i64));
        return;
    }
    let mut on_path = vec![false; n];
    for &v in &path {
        on_path[v] = true;
    }
    let e = tree
        .iter()
        .copied()
        .find(|&e| {
            let (x, y) = g.ends(e);
            !path_edges.contains(&e) && (on_path[x] || on_path[y])
        })
        .expect("a connected tree has an edge leaving the geodesic");
    let (h, x) = ihx(g, e);
    grow(&h, tree, in_tree, closing, -coef, out);
    grow(&x, tree, in_tree, closing, -coef, out);
}

/// Reduce `(g, tree)` to chord diagrams using `closing` as the closing edge.
/// The orientation of `(g, tree)` is the order of `tree`.
pub fn reduce_with_closing(g: &Graph, tree: &[usize], closing: usize) -> Result<Chain<ChordDiagram>> {
    check_trivalent(g, tree)?;
    let mut in_tree = vec![false; g.num_edges()];
    for &e in tree {
        in_tree[e] = true;
    }
    if in_tree[closing] {
        return invalid("closing edge lies in the tree");
    }
    let mut out = Chain::zero();
    grow(g, tree, &in_tree, closing, 1, &mut out);
    Ok(out)
}

/// IHX on line edge `edges[0]` of a diagram, `I = -H - X`; a term whose tree
/// is no longer a path gets the next listed edge, and every term is then read
/// off as a diagram.
pub fn ihx_expand(d: &ChordDiagram, edges: &[usize]) -> Result<Chain<ChordDiagram>> {
    let (g, tree, _) = d.to_graph();
    if edges.is_empty() || edges.iter().any(|&e| e >= tree.len()) {
        return invalid("IHX edges must be line edges");
    }
    expand(&g, &tree, edges)
}

fn expand(g: &Graph, tree: &[usize], edges: &[usize]) -> Result<Chain<ChordDiagram>> {
    let (h, x) = ihx(g, edges[0]);
    let mut out = Chain::zero();
    for t in [h, x] {
        let part = if is_path(&t, tree) || edges.len() == 1 {
            to_chord_diagrams(&t, tree)?
        } else {
            expand(&t, tree, &edges[1..])?
        };
        out.sub(&part);
    }
    Ok(out)
}

fn is_path(g: &Graph, tree: &[usize]) -> bool {
    let mut deg = vec![0; g.num_vertices()];
    for &e in tree {
        let (a, b) = g.ends(e);
        deg[a] += 1;
        deg[b] += 1;
    }
    deg.iter().all(|&d| d <= 2)
}

/// Reduce `(g, tree)` closing along the non-tree edge with the longest
/// geodesic (lowest index on ties).
pub fn to_chord_diagrams(g: &Graph, tree: &[usize]) -> Result<Chain<ChordDiagram>> {
    check_trivalent(g, tree)?;
    let mut best: Option<(usize, usize)> = None;
    for e in (0..g.num_edges()).filter(|e| !tree.contains(e)) {
        let (a, b) = g.ends(e);
        if a == b {
            return Ok(Chain::zero());
        }
        let len = g.tree_path(tree, a, b).expect("tree spans the graph").0.len();
        if best.is_none_or(|(l, _)| len > l) {
            best = Some((len, e));
        }
    }
    let (_, closing) = best.ok_or_else(|| Error::Structure("no edge outside the tree".into()))?;
    reduce_with_closing(g, tree, closing)
}

/// Forested graph with a maximal tree as a chain of diagrams.
pub fn reduce_forested(fg: &ForestedGraph) -> Result<Chain<ChordDiagram>> {
    to_chord_diagrams(&fg.graph, &fg.forest)
}

/// Boundary of a forested graph whose forest is one edge short of a maximal
/// tree, each term reduced to diagrams.
pub fn boundary_diagrams(fg: &ForestedGraph) -> Result<Chain<ChordDiagram>> {
    let mut out = Chain::zero();
    for e in fg.extensions() {
        out.add(&reduce_forested(&fg.with_forest_edge(e))?);
    }
    Ok(out)
}

/// Perfect matchings of `0..n` without isolated chords, canonical, together
/// with the number of reflection-antisymmetric ones left out.
pub fn enumerate_with_antisymmetric(rank: usize) -> (Vec<ChordDiagram>, usize) {
    assert!(rank >= 2);
    let n = 2 * rank - 2;
    let mut found = BTreeSet::new();
    let mut antisymmetric = BTreeSet::new();
    let mut cur = Vec::new();
    let mut free = vec![true; n];
    matchings(&mut free, &mut cur, &mut |pairs| {
        let d = ChordDiagram::raw(n, pairs);
        if d.has_isolated_chord() {
            return;
        }
        let (c, s) = d.canonical();
        if s == 0 {
            antisymmetric.insert(c);
        } else {
            found.insert(c);
        }
    });
    (found.into_iter().collect(), antisymmetric.len())
}

pub fn enumerate(rank: usize) -> Vec<ChordDiagram> {
    enumerate_with_antisymmetric(rank).0
}

type Pairs = [(usize, usize)];

fn matchings(free: &mut [bool], cur: &mut Vec<(usize, usize)>, emit: &mut dyn FnMut(&Pairs)) {
    let Some(a) = free.iter().position(|&f| f) else {
        emit(cur);
        return;
    };
    free[a] = false;
    for b in a + 1..free.len() {
        // an isolated chord can never be completed into a valid diagram
        if !free[b] || b == a + 1 {
            continue;
        }
        free[b] = false;
        cur.push((a, b));
        matchings(free, cur, emit);
        cur.pop();
        free[b] = true;
    }
    free[a] = true;
}

/// `d − reduce(d closed along c)` for every diagram `d` and chord `c`.
pub fn sliding_relations(rank: usize) -> Vec<Chain<ChordDiagram>> {
    let diagrams = enumerate(rank);
    let per: Vec<Vec<Chain<ChordDiagram>>> = diagrams.par_iter().map(sliding_relations_of).collect();
    per.into_iter().flatten().filter(|c| !c.is_zero()).collect()
}

pub fn sliding_relations_of(d: &ChordDiagram) -> Vec<Chain<ChordDiagram>> {
    let (g, tree, closing) = d.to_graph();
    (closing + 1..g.num_edges())
        .map(|c| {
            let mut rel = Chain::single(d.clone(), q(1));
            rel.sub(&reduce_with_closing(&g, &tree, c).expect("diagram graphs are trivalent"));
            rel
        })
        .collect()
}

/// The diagram's graph with line edge `i` removed from the tree; the forest is
/// the remaining line edges in order.
pub fn line_removal(d: &ChordDiagram, i: usize) -> ForestedGraph {
    let (g, tree, _) = d.to_graph();
    let forest = tree.into_iter().filter(|&e| e != i).collect();
    ForestedGraph::new(g, forest).expect("a path minus an edge is a forest")
}

/// Diagrams whose leftmost chord has exactly one foot between its feet.
pub fn type_one(rank: usize) -> Vec<ChordDiagram> {
    enumerate(rank).into_iter().filter(|d| d.contains(0, 2)).collect()
}

/// Diagrams whose leftmost chord has exactly two feet between its feet.
pub fn type_two(rank: usize) -> Vec<ChordDiagram> {
    enumerate(rank).into_iter().filter(|d| d.contains(0, 3)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(s: &str) -> ChordDiagram {
        ChordDiagram::parse(s).unwrap()
    }

    #[test]
    fn rank_four_has_four_diagrams() {
        let ds = enumerate(4);
        let words: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
        assert_eq!(words, ["(13)(25)(46)", "(14)(25)(36)", "(14)(26)(35)", "(16)(24)(35)"]);
    }

    #[test]
    fn rank_two_has_none() {
        assert!(enumerate(2).is_empty());
    }

    #[test]
    fn parse_and_display() {
        let d = cd("(1,3)(2,10)(4,6)(5,8)(7,9)");
        assert_eq!(d.to_string(), "(1,3)(2,10)(4,6)(5,8)(7,9)");
        assert!(ChordDiagram::parse("(12)(34)").unwrap().has_isolated_chord());
        assert!(ChordDiagram::parse("(13)(13)").is_err());
    }

    #[test]
    fn diagram_reduces_to_itself() {
        for d in enumerate(4) {
            let (g, tree, closing) = d.to_graph();
            let c = reduce_with_closing(&g, &tree, closing).unwrap();
            assert_eq!(c, d.normalize());
            assert_eq!(to_chord_diagrams(&g, &tree).unwrap(), d.normalize());
        }
    }

    #[test]
    fn sliding_the_closing_edge_is_trivial() {
        let d = cd("(13)(25)(46)");
        let (g, tree, closing) = d.to_graph();
        let mut rel = Chain::single(d, q(1));
        rel.sub(&reduce_with_closing(&g, &tree, closing).unwrap());
        assert!(rel.is_zero());
    }

    #[test]
    fn chord_parallel_to_tree_edge_vanishes() {
        // chord (1,2) doubles line edge 0
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 1), (2, 3)]);
        assert!(to_chord_diagrams(&g, &[0, 1, 2]).unwrap().is_zero());
    }

    #[test]
    fn rotation_has_finite_order() {
        for d in enumerate(6) {
            let mut r = d.clone();
            for _ in 0..2 * d.line_length() {
                r = r.rotated();
            }
            assert_eq!(r, d);
            assert_eq!(r.normalize(), Chain::single(d, q(1)));
        }
    }

    #[test]
    fn identity_foot_permutation() {
        let d = cd("(14)(25)(36)");
        assert_eq!(d.permute_feet(&[]).unwrap(), d.normalize());
        assert!(d.permute_feet(&[(1, 2)]).is_err());
    }

    #[test]
    fn reflection_sign_by_length() {
        // 5 line edges reversed: 10 transpositions
        assert_eq!(ChordDiagram::reflection_sign(6), 1);
        // 9 line edges reversed: 36 transpositions
        assert_eq!(ChordDiagram::reflection_sign(10), 1);
        assert_eq!(ChordDiagram::reflection_sign(4), -1);
    }
}
