//! Randomized invariants, each checked against an oracle written here.

use graphcx::chain::{q, Chain, Q};
use graphcx::chord::{self, ChordDiagram};
use graphcx::forested::{self, ForestedGraph};
use graphcx::graph::Graph;
use graphcx::linalg::{self, NormalForm};
use graphcx::morita;
use graphcx::random;
use graphcx::trace;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng;
use std::sync::OnceLock;

/// Sign of each isomorphism `a -> b` preserving forests, found by backtracking
/// over edge images. The sign compares the forest orders.
fn isomorphism_signs(a: &ForestedGraph, b: &ForestedGraph) -> Vec<i32> {
    let (ga, gb) = (&a.graph, &b.graph);
    if ga.num_vertices() != gb.num_vertices() || ga.num_edges() != gb.num_edges() || a.forest.len() != b.forest.len() {
        return Vec::new();
    }
    let (fa, fb) = (a.in_forest(), b.in_forest());
    let mut st = Search {
        ga,
        gb,
        fa: &fa,
        fb: &fb,
        edge: vec![usize::MAX; ga.num_edges()],
        used: vec![false; gb.num_edges()],
        vmap: vec![usize::MAX; ga.num_vertices()],
        vinv: vec![usize::MAX; ga.num_vertices()],
        found: Vec::new(),
    };
    st.go(0);
    st.found
        .iter()
        .map(|edge| {
            let pos: Vec<usize> =
                a.forest.iter().map(|&e| b.forest.iter().position(|&x| x == edge[e]).unwrap()).collect();
            inversion_sign(&pos)
        })
        .collect()
}

struct Search<'a> {
    ga: &'a Graph,
    gb: &'a Graph,
    fa: &'a [bool],
    fb: &'a [bool],
    edge: Vec<usize>,
    used: Vec<bool>,
    vmap: Vec<usize>,
    vinv: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn go(&mut self, e: usize) {
        if e == self.ga.num_edges() {
            self.found.push(self.edge.clone());
            return;
        }
        let (u, v) = self.ga.ends(e);
        for t in 0..self.gb.num_edges() {
            if self.used[t] || self.fa[e] != self.fb[t] {
                continue;
            }
            let (x, y) = self.gb.ends(t);
            for (p, r) in [(x, y), (y, x)] {
                let saved = (self.vmap.clone(), self.vinv.clone());
                if self.bind(u, p) && self.bind(v, r) {
                    self.used[t] = true;
                    self.edge[e] = t;
                    self.go(e + 1);
                    self.used[t] = false;
                }
                (self.vmap, self.vinv) = saved;
                if x == y {
                    break;
                }
            }
        }
    }

    fn bind(&mut self, u: usize, p: usize) -> bool {
        match (self.vmap[u], self.vinv[p]) {
            (usize::MAX, usize::MAX) => {
                self.vmap[u] = p;
                self.vinv[p] = u;
                true
            }
            (a, b) => a == p && b == u,
        }
    }
}

fn inversion_sign(p: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inv += (p[i] > p[j]) as usize;
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Plain Gaussian elimination on a dense rational matrix.
fn dense_rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn to_chain(row: &[i64]) -> Chain<usize> {
    let mut c = Chain::zero();
    for (i, &x) in row.iter().enumerate() {
        c.add_term(i, q(x));
    }
    c
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn relabeled(rng: &mut random::SeededRng, fg: &ForestedGraph) -> ForestedGraph {
    let (g, _, hperm) = random::relabel(rng, &fg.graph);
    let forest = fg.forest.iter().map(|&e| hperm[2 * e] / 2).collect();
    ForestedGraph::new(g, forest).unwrap()
}

fn with_spanning_tree(rng: &mut random::SeededRng, rank: usize) -> ForestedGraph {
    let g = random::trivalent_graph(rng, rank);
    let tree = random::forest_of_size(rng, &g, g.num_vertices() - 1);
    ForestedGraph::new(g, tree).unwrap()
}

fn sliding(rank: usize) -> &'static NormalForm<ChordDiagram> {
    static FOUR: OnceLock<NormalForm<ChordDiagram>> = OnceLock::new();
    static SIX: OnceLock<NormalForm<ChordDiagram>> = OnceLock::new();
    let cell = if rank == 4 { &FOUR } else { &SIX };
    cell.get_or_init(|| NormalForm::new(&[], &chord::sliding_relations(rank)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn forested_key_ignores_labels(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fg = random::forested_graph(&mut rng, 5);
        let other = relabeled(&mut rng, &fg);
        prop_assert_eq!(fg.normalize(), other.normalize());
    }

    #[test]
    fn zero_exactly_when_an_automorphism_reverses(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fg = random::forested_graph(&mut rng, 4);
        let reversing = isomorphism_signs(&fg, &fg).contains(&-1);
        prop_assert_eq!(fg.normalize().is_zero(), fg.is_degenerate() || reversing);
    }

    #[test]
    fn equal_keys_exactly_when_isomorphic(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::forested_graph(&mut rng, 3);
        let b = random::forested_graph(&mut rng, 3);
        let signs = isomorphism_signs(&a, &b);
        let (ka, sa) = a.canonicalize();
        let (kb, sb) = b.canonicalize();
        prop_assert_eq!(ka == kb, !signs.is_empty());
        if sa != 0 && sb != 0 && !signs.is_empty() {
            prop_assert!(signs.iter().all(|&s| s == sa * sb));
        }
    }

    #[test]
    fn rank_matches_dense_elimination(m in matrix()) {
        let chains: Vec<Chain<usize>> = m.iter().map(|r| to_chain(r)).collect();
        let dense = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        prop_assert_eq!(linalg::rank(&chains), dense_rank(dense));
    }

    #[test]
    fn membership_resubstitutes(m in matrix(), coeffs in prop::collection::vec(-4i64..=4, 6), extra in prop::collection::vec(-3i64..=3, 6)) {
        let span: Vec<Chain<usize>> = m.iter().map(|r| to_chain(r)).collect();
        let mut target = Chain::zero();
        for (s, &c) in span.iter().zip(&coeffs) {
            target.add_scaled(s, &q(c));
        }
        let x = linalg::solve_membership(&span, &target).expect("combination lies in the span");
        let mut back = Chain::zero();
        for (s, c) in span.iter().zip(&x) {
            back.add_scaled(s, c);
        }
        prop_assert_eq!(back, target);

        let cols = m[0].len();
        let outside = to_chain(&extra[..cols]);
        let mut grown = span.clone();
        grown.push(outside.clone());
        let member = linalg::rank(&grown) == linalg::rank(&span);
        prop_assert_eq!(linalg::solve_membership(&span, &outside).is_some(), member);
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fg = random::forested_graph(&mut rng, 6);
        let b = forested::boundary(&fg.normalize()).unwrap();
        prop_assert!(forested::boundary(&b).unwrap().is_zero());
    }

    #[test]
    fn trace_kills_boundaries(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fg = random::forested_graph(&mut rng, 6);
        let b = forested::boundary(&fg.normalize()).unwrap();
        prop_assert!(trace::trace_chain(&b).unwrap().is_zero());
    }

    #[test]
    fn trace_ignores_labels(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let fg = random::forested_graph(&mut rng, 5);
        let other = relabeled(&mut rng, &fg);
        prop_assert_eq!(trace::graphical_trace(&fg), trace::graphical_trace(&other));
    }
}

/// Chord reductions of `I + H + X` taken term by term, bridged terms included.
fn raw_ihx_image(i: &ForestedGraph, h: &ForestedGraph, x: &ForestedGraph) -> Chain<ChordDiagram> {
    let mut c = Chain::zero();
    for g in [i, h, x] {
        c.add(&chord::reduce_forested(g).unwrap());
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chord_reduction_respects_ihx(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rank = if rng.gen_bool(0.5) { 4 } else { 6 };
        let fg = with_spanning_tree(&mut rng, rank);
        let nf = sliding(rank);
        for e in fg.ihx_edges() {
            let (h, x) = fg.ihx_expansions(e).unwrap();
            prop_assert!(nf.is_zero(&raw_ihx_image(&fg, &h, &x)));
            if !h.is_degenerate() && !x.is_degenerate() {
                let rel = fg.ihx_relator(e).unwrap();
                prop_assert!(nf.is_zero(&morita::chord_image(&rel).unwrap()));
            }
        }
    }

    #[test]
    fn chord_reduction_ignores_labels(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rank = if rng.gen_bool(0.5) { 4 } else { 6 };
        let fg = with_spanning_tree(&mut rng, rank);
        let other = relabeled(&mut rng, &fg);
        let mut diff = chord::reduce_forested(&fg).unwrap();
        diff.sub(&chord::reduce_forested(&other).unwrap());
        prop_assert!(sliding(rank).is_zero(&diff));
    }

    #[test]
    fn chord_reduction_matches_canonical_form(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let rank = if rng.gen_bool(0.5) { 4 } else { 6 };
        let fg = with_spanning_tree(&mut rng, rank);
        let mut diff = chord::reduce_forested(&fg).unwrap();
        diff.sub(&morita::chord_image(&fg.normalize()).unwrap());
        prop_assert!(sliding(rank).is_zero(&diff));
    }
}

#[test]
fn g3_f3_has_no_reversing_automorphism() {
    let fg = morita::build_gk(3).unwrap();
    let signs = isomorphism_signs(&fg, &fg);
    assert!(!signs.is_empty());
    assert!(!signs.contains(&-1));
    let c = fg.normalize();
    assert_eq!(c.len(), 1);
    assert_eq!(c.iter().next().unwrap().1.abs(), q(1));
}

#[test]
fn oracle_sees_theta_symmetry() {
    let g = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
    let fg = ForestedGraph::new(g, vec![0]).unwrap();
    // swapping the two vertices and permuting the other edges: 2 * 2 = 4 maps fixing edge 0
    assert_eq!(isomorphism_signs(&fg, &fg).len(), 4);
    // a single forest edge cannot be reversed
    assert!(!fg.normalize().is_zero());
}

#[test]
fn dense_oracle_basics() {
    let m = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![Q::one(), Q::zero()]];
    assert_eq!(dense_rank(m), 2);
}

#[test]
fn bridged_expansion_is_not_killed_by_sliding() {
    // H picks up a separating edge, so it drops out of the normalized relator
    // while its chord reduction is nonzero modulo sliding
    let mut rng = random::rng(12169689745246085192);
    let rank = if rng.gen_bool(0.5) { 4 } else { 6 };
    assert_eq!(rank, 6);
    let fg = with_spanning_tree(&mut rng, rank);
    let nf = sliding(rank);
    let (h, x) = fg.ihx_expansions(3).unwrap();
    assert!(h.is_degenerate() && h.graph.has_separating_edge());
    assert!(!nf.is_zero(&chord::reduce_forested(&h).unwrap()));
    assert!(!nf.is_zero(&morita::chord_image(&fg.ihx_relator(3).unwrap()).unwrap()));
    assert!(nf.is_zero(&raw_ihx_image(&fg, &h, &x)));
}
