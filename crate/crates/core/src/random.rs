//! Seeded random instances for the property suites.

use crate::bordification::FilteredGraph;
use crate::forested::ForestedGraph;
use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected trivalent graph without separating edges, by random pairing.
pub fn trivalent_graph(rng: &mut impl Rng, rank: usize) -> Graph {
    assert!(rank >= 2);
    let nv = 2 * rank - 2;
    loop {
        let mut stubs: Vec<usize> = (0..nv).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(rng);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let g = Graph::from_edges(nv, &edges);
        if g.is_connected() && !g.has_separating_edge() {
            return g;
        }
    }
}

/// Random acyclic edge set of the given size, in random order.
pub fn forest_of_size(rng: &mut impl Rng, g: &Graph, size: usize) -> Vec<usize> {
    if size == 0 {
        return Vec::new();
    }
    loop {
        let mut edges: Vec<usize> = (0..g.num_edges()).collect();
        edges.shuffle(rng);
        let mut forest = Vec::new();
        for e in edges {
            forest.push(e);
            if !g.is_acyclic(&forest) {
                forest.pop();
            }
            if forest.len() == size {
                return forest;
            }
        }
        assert!(size < g.num_vertices(), "forest size exceeds a spanning tree");
    }
}

/// Random forested trivalent graph with rank in `2..=max_rank`.
pub fn forested_graph(rng: &mut impl Rng, max_rank: usize) -> ForestedGraph {
    let rank = rng.gen_range(2..=max_rank);
    let g = trivalent_graph(rng, rank);
    let size = rng.gen_range(0..g.num_vertices());
    let forest = forest_of_size(rng, &g, size);
    ForestedGraph::new(g, forest).expect("random forest is acyclic")
}

/// Random relabeling: returns the relabeled graph with its vertex and half-edge maps.
pub fn relabel(rng: &mut impl Rng, g: &Graph) -> (Graph, Vec<usize>, Vec<usize>) {
    let mut vperm: Vec<usize> = (0..g.num_vertices()).collect();
    vperm.shuffle(rng);
    let mut eperm: Vec<usize> = (0..g.num_edges()).collect();
    eperm.shuffle(rng);
    let mut hperm = vec![0; g.num_half_edges()];
    for e in 0..g.num_edges() {
        let flip = rng.gen_bool(0.5) as usize;
        hperm[2 * e] = 2 * eperm[e] + flip;
        hperm[2 * e + 1] = 2 * eperm[e] + (1 - flip);
    }
    (g.relabel(&vperm, &hperm), vperm, hperm)
}

/// Connected graph of rank `1..=max_rank` with all valences at least 3,
/// at most `max_edges` edges, a random filtration and a random edge order.
pub fn filtered_graph(rng: &mut impl Rng, max_rank: usize, max_edges: usize) -> FilteredGraph {
    loop {
        let rank = rng.gen_range(1..=max_rank);
        let max_v = if rank == 1 { 0 } else { 2 * rank - 2 };
        if max_v == 0 {
            continue;
        }
        let nv = rng.gen_range(1..=max_v);
        let ne = nv + rank - 1;
        if ne > max_edges {
            continue;
        }
        let edges: Vec<(usize, usize)> = (0..ne).map(|_| (rng.gen_range(0..nv), rng.gen_range(0..nv))).collect();
        let g = Graph::from_edges(nv, &edges);
        if !g.is_connected() || g.valences().iter().any(|&d| d < 3) {
            continue;
        }
        let cores = core_subgraphs(&g);
        // walk down a random chain of proper core subgraphs
        let mut stages: Vec<u64> = Vec::new();
        let mut top: u64 = (1u64 << ne) - 1;
        while rng.gen_bool(0.7) {
            let below: Vec<u64> = cores.iter().copied().filter(|&c| c & top == c && c != top).collect();
            if below.is_empty() {
                break;
            }
            top = *below.choose(rng).unwrap();
            stages.push(top);
        }
        stages.reverse();
        let mut level = vec![stages.len() + 1; ne];
        for (i, &mask) in stages.iter().enumerate().rev() {
            for (e, l) in level.iter_mut().enumerate() {
                if mask >> e & 1 == 1 {
                    *l = i + 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..ne).collect();
        order.shuffle(rng);
        return FilteredGraph::new(g, level, order).expect("random filtration is valid");
    }
}

/// Every core edge subset as a bitmask.
pub fn core_subgraphs(g: &Graph) -> Vec<u64> {
    let ne = g.num_edges();
    assert!(ne < 64);
    (1u64..(1u64 << ne))
        .filter(|&mask| {
            let edges: Vec<usize> = (0..ne).filter(|&e| mask >> e & 1 == 1).collect();
            g.is_core_subgraph(&edges)
        })
        .collect()
}
