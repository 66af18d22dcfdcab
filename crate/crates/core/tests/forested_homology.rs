//! Homology of the trivalent forested complex modulo IHX in ranks 3 and 4.
//! Forest size is the homological degree. Out(F_3) has rational homology
//! only in degree 0, Out(F_4) in degrees 0 and 4.

use graphcx::chain::{Chain, Key};
use graphcx::enumerate::forested_generators;
use graphcx::forested::{self, ForestedGraph};
use graphcx::linalg::{Echelon, Registry};

struct Degree {
    registry: Registry<Key>,
    ihx: Vec<Chain<Key>>,
}

fn degree(rank: usize, k: usize) -> Degree {
    let keys = forested_generators(rank, k);
    let gens: Vec<ForestedGraph> = keys.iter().map(|k| ForestedGraph::from_key(k).unwrap()).collect();
    Degree { registry: Registry::from_keys(keys), ihx: forested::ihx_span(&gens) }
}

fn span_rank(reg: &Registry<Key>, rows: &[Chain<Key>]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(&reg.vector(r).expect("row lives on the generators"));
    }
    ech.rank()
}

/// Dimensions of homology by forest size `0..=2r-3`.
fn homology(rank: usize) -> Vec<usize> {
    let top = 2 * rank - 3;
    let degrees: Vec<Degree> = (0..=top).map(|k| degree(rank, k)).collect();
    let quotient: Vec<usize> = degrees.iter().map(|d| d.registry.len() - span_rank(&d.registry, &d.ihx)).collect();
    // rank of the boundary out of forest size k, computed in the quotient
    let mut image = vec![0; top + 2];
    for k in 0..top {
        let src = &degrees[k];
        let dst = &degrees[k + 1];
        let mut rows = dst.ihx.clone();
        for i in 0..src.registry.len() {
            let g = ForestedGraph::from_key(src.registry.label(i)).unwrap();
            rows.push(g.boundary());
        }
        image[k + 1] = span_rank(&dst.registry, &rows) - span_rank(&dst.registry, &dst.ihx);
    }
    (0..=top).map(|k| quotient[k] - image[k] - image[k + 1]).collect()
}

#[test]
fn boundary_respects_ihx() {
    // ∂ of an IHX relator lies in the IHX span one degree up
    for k in 0..4 {
        let src = degree(4, k);
        let dst = degree(4, k + 1);
        let base = span_rank(&dst.registry, &dst.ihx);
        for r in src.ihx.iter().take(40) {
            let b = forested::boundary(r).unwrap();
            let mut rows = dst.ihx.clone();
            rows.push(b);
            assert_eq!(span_rank(&dst.registry, &rows), base);
        }
    }
}

#[test]
fn rank_three() {
    assert_eq!(homology(3), [1, 0, 0, 0]);
}

#[test]
fn rank_four() {
    assert_eq!(homology(4), [1, 0, 0, 0, 1, 0]);
}
