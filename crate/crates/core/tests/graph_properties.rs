//! Graph-side invariants over a randomized corpus.

mod common;

use compactgraph::iso::is_isomorphic;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn girth_is_bounded_by_twice_diameter_plus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..200 {
        let g = common::random_connected_graph(&mut rng, 16);
        if let Some(girth) = g.girth() {
            let diameter = g.diameter().unwrap();
            assert!(
                girth <= 2 * diameter + 1,
                "case {}: girth {} diameter {}",
                case,
                girth,
                diameter
            );
        }
    }
}

#[test]
fn isomorphism_is_reflexive_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for _ in 0..60 {
        let g = common::random_connected_graph(&mut rng, 12);
        assert_eq!(is_isomorphic(&g, &g), Ok(true));
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        let h = g.relabeled(&perm).unwrap();
        assert_eq!(is_isomorphic(&g, &h), Ok(true));
        assert_eq!(is_isomorphic(&h, &g), Ok(true));
    }
}

#[test]
fn eccentricity_and_diameter_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let g = common::random_connected_graph(&mut rng, 14);
        let mut max_ecc = 0;
        for v in 0..g.order() {
            let dist = g.bfs_distances(v).unwrap();
            let ecc = g.eccentricity(v).unwrap();
            assert_eq!(ecc, dist.iter().map(|d| d.unwrap()).max().unwrap());
            max_ecc = max_ecc.max(ecc);
        }
        assert_eq!(g.diameter().unwrap(), max_ecc);
    }
}
