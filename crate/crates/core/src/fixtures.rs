//! Expected values and hand-entered generators, kept in one place.

use crate::forested::ForestedGraph;
use crate::graph::Graph;
use crate::report::Comparison::{self, AtMost, Equal};

/// `(report.entry, comparison, expected value)`
pub const EXPECTED: &[(&str, Comparison, &str)] = &[
    ("mu3.diagrams", Equal, "(13)(25)(46) (14)(25)(36) (14)(26)(35) (16)(24)(35)"),
    ("mu3.ihx_D", Equal, "-2C"),
    ("mu3.ihx_B", Equal, "-2C"),
    ("mu3.quotient_dim", AtMost, "2"),
    ("mu3.boundary_G3F3", Equal, "-3A"),
    ("mu3.boundary_G3F1", Equal, "C"),
    ("mu3.boundary_G3F2", Equal, "4C-A"),
    ("mu3.trace_G3F1", Equal, "0"),
    ("mu3.trace_G3F2", Equal, "0"),
    ("mu3.trace_G3F3", Equal, "4"),
    ("mu3.z_coefficients", Equal, "12,-3"),
    ("mu3.cycle_check", Equal, "0"),
    ("mu3.mu", Equal, "4"),
    ("mu5.diagrams", Equal, "184"),
    ("mu5.sliding_rank", Equal, "148"),
    ("mu5.quotient_dim", AtMost, "36"),
    ("mu5.type_one", Equal, "39"),
    ("mu5.type_two", Equal, "32"),
    ("mu5.type_one_traceless", Equal, "39"),
    ("mu5.type_two_traceless", Equal, "32"),
    ("mu5.type_one_form", Equal, "39"),
    ("mu5.type_two_form", Equal, "32"),
    ("mu5.type_one_rank", Equal, "39"),
    ("mu5.boundary_rank", Equal, "71"),
    ("mu5.residual_after_type_two", Equal, "7"),
    ("mu5.residual_after_type_one", Equal, "0"),
    ("mu5.mu", Equal, "4"),
    ("h9.quotient_without_relations", Equal, "36"),
    ("h9.residual_after_type_two", Equal, "7"),
    ("h9.top_quotient", Equal, "0"),
];

pub fn expected(key: &str) -> Option<(Comparison, &'static str)> {
    EXPECTED.iter().find(|(k, _, _)| *k == key).map(|&(_, c, v)| (c, v))
}

/// The rank-4 graph obtained by blowing up both vertices of the theta graph
/// into triangles: vertical edges first, then the two triangles.
pub fn g3_graph() -> Graph {
    Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5), (0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
}

/// Traceless forest on [`g3_graph`] whose boundary is `C` modulo IHX.
pub fn g3_f1() -> ForestedGraph {
    ForestedGraph::new(g3_graph(), vec![0, 3, 4, 8]).expect("fixture forest")
}

/// Traceless forest on [`g3_graph`] whose boundary is `4C - A` modulo IHX.
pub fn g3_f2() -> ForestedGraph {
    ForestedGraph::new(g3_graph(), vec![1, 0, 3, 4]).expect("fixture forest")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<&str> = EXPECTED.iter().map(|e| e.0).collect();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), EXPECTED.len());
    }

    #[test]
    fn forests_are_spanning_minus_one() {
        assert_eq!(g3_f1().forest.len(), 4);
        assert_eq!(g3_f2().forest.len(), 4);
        assert_eq!(g3_graph().rank(), 4);
    }
}
