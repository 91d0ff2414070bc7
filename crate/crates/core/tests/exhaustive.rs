//! Properties checked over whole families of small squares.

use kweights::enumerate::{enumerate_squares, random_square};
use kweights::feasibility::{decide_k_weight, WeightDecision};
use kweights::latin::{classify, PartialWeightClass};
use kweights::plex::{count_transversals, find_k_plex, PlexOutcome, SearchBudget};
use kweights::weights::two_weight;
use rayon::prelude::*;

#[test]
fn order_five_count() {
    assert_eq!(enumerate_squares(5).unwrap().count(), 161_280);
}

#[test]
fn transversal_search_agrees_with_counting_up_to_order_five() {
    for n in 1..=5 {
        let bad = enumerate_squares(n)
            .unwrap()
            .par_bridge()
            .filter(|sq| {
                let found = matches!(
                    find_k_plex(sq, 1, SearchBudget::default()).unwrap(),
                    PlexOutcome::Found(_)
                );
                found != (count_transversals(sq).unwrap() > 0)
            })
            .count();
        assert_eq!(bad, 0, "order {n}");
    }
}

#[test]
fn random_squares_decide_every_small_k() {
    for seed in 0..40 {
        let sq = random_square(3 + (seed % 5) as usize, seed).unwrap();
        for k in (-3..=5).filter(|&k| k != 0) {
            match decide_k_weight(&sq, k).unwrap() {
                WeightDecision::Feasible(w) => {
                    assert_eq!(classify(&sq, &w, k).unwrap(), PartialWeightClass::Exact { k })
                }
                WeightDecision::Infeasible(_) => assert!(k % 2 != 0, "even k is always feasible"),
            }
        }
        let w = two_weight(&sq, sq.triple(1, 2)).unwrap();
        assert!(classify(&sq, &w, 2).unwrap().is_exact());
    }
}
