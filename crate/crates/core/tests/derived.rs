//! Small values worked out by hand and frozen.

use graphcx::chain::{q, Chain};
use graphcx::chord::{self, ChordDiagram};
use graphcx::enumerate::forested_generators;
use graphcx::fixtures;
use graphcx::forested::ForestedGraph;
use graphcx::graph::Graph;
use graphcx::linalg;
use graphcx::trace::{graphical_trace, graphical_trace_ab, OddGraph, VertexType};

#[test]
fn collapsing_a_maximal_tree_of_g3_leaves_a_rose() {
    let g = fixtures::g3_graph();
    let tree = [0, 3, 4, 6, 7];
    assert!(g.is_acyclic(&tree));
    let c = g.collapse(&tree);
    assert_eq!(c.graph.num_vertices(), 1);
    assert_eq!(c.graph.num_edges(), 4);
    assert!((0..4).all(|e| c.graph.is_loop(e)));
}

#[test]
fn mixed_trace_of_a_path_and_a_point() {
    // K4: the path 1-0-2 closes up through edge (1,2), vertex 3 stays alone
    let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
    let fg = ForestedGraph::new(g, vec![0, 1]).unwrap();
    assert!(graphical_trace(&fg).is_zero());
    // walking 1, 0, 2 meets the outside edges (3,1), (0,3), (2,3) in that order
    let theta = Graph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
    let x = OddGraph::new(theta.clone(), vec![VertexType::A, VertexType::B], theta.incidence()).unwrap();
    assert_eq!(graphical_trace_ab(&fg), x.normalize().scaled(&q(-2)));
}

#[test]
fn ihx_relators_close_under_re_expansion() {
    let mut checked = 0;
    for k in 1..=3 {
        for key in forested_generators(4, k) {
            let fg = ForestedGraph::from_key(&key).unwrap();
            for e in fg.ihx_edges() {
                let (h, x) = fg.ihx_expansions(e).unwrap();
                let mut rels = vec![fg.ihx_relator(e).unwrap()];
                for y in [&h, &x] {
                    if y.ihx_edges().contains(&e) {
                        rels.push(y.ihx_relator(e).unwrap());
                    }
                }
                assert!(linalg::rank(&rels) <= 1, "re-expansion left the span at {key:?} edge {e}");
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn rotation_stays_in_the_rank_four_span() {
    let words = chord::enumerate(4);
    for d in &words {
        let r: Chain<ChordDiagram> = d.rotate();
        assert!(r.keys().all(|k| words.contains(k)));
    }
}
