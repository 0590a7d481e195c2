mod common;

use std::collections::BTreeSet;

use transirr::enumerate::{free_trees, search, Predicate, SearchOptions};
use transirr::graph6::parse_graph6;
use transirr::transmission::is_transmission_irregular;

fn generated_forms(n: usize, cap: Option<usize>) -> (usize, BTreeSet<String>) {
    let mut count = 0;
    let forms = free_trees(n, cap)
        .unwrap()
        .inspect(|_| count += 1)
        .map(|s| common::graph_canonical_form(&s.to_graph()))
        .collect();
    (count, forms)
}

#[test]
fn matches_pruefer_oracle_up_to_order_8() {
    for n in 1..=8 {
        for cap in [None, Some(2), Some(3), Some(4)] {
            let (count, forms) = generated_forms(n, cap);
            assert_eq!(count, forms.len(), "duplicate at n={n} cap={cap:?}");
            assert_eq!(forms, common::naive_tree_forms(n, cap), "n={n} cap={cap:?}");
        }
    }
}

#[test]
#[ignore = "slow: 10^8 labelled trees"]
fn matches_pruefer_oracle_order_10() {
    let (count, forms) = generated_forms(10, None);
    assert_eq!(count, 106);
    assert_eq!(forms, common::naive_tree_forms(10, None));
}

#[test]
fn capped_stream_equals_filtered_stream() {
    for n in 1..=12 {
        for cap in 1..=5 {
            let filtered: Vec<_> = free_trees(n, None)
                .unwrap()
                .filter(|s| s.to_graph().max_degree() <= cap)
                .collect();
            let capped: Vec<_> = free_trees(n, Some(cap)).unwrap().collect();
            assert_eq!(capped, filtered, "n={n} cap={cap}");
        }
    }
}

#[test]
fn graph6_of_every_small_tree_round_trips() {
    for n in 1..=10 {
        for s in free_trees(n, None).unwrap() {
            let g = s.to_graph();
            let back = parse_graph6(&s.to_graph6()).unwrap();
            assert_eq!(
                back.edges().collect::<Vec<_>>(),
                g.edges().collect::<Vec<_>>()
            );
        }
    }
}

#[test]
fn search_is_deterministic_across_job_counts() {
    let predicate = Predicate::ti();
    let run = |jobs| {
        let options = SearchOptions {
            jobs: Some(jobs),
            witness_cap: usize::MAX,
            ..SearchOptions::default()
        };
        search(7..=12, &predicate, &options).unwrap()
    };
    let one = run(1);
    for jobs in [2, 3, 4] {
        let other = run(jobs);
        assert_eq!(one.len(), other.len());
        for (a, b) in one.iter().zip(&other) {
            assert!(a.same_results(b), "order {}", a.order);
        }
    }
}

#[test]
fn witnesses_are_ti_trees_of_the_right_order() {
    let options = SearchOptions {
        witness_cap: usize::MAX,
        ..SearchOptions::default()
    };
    for report in search(7..=13, &Predicate::ti(), &options).unwrap() {
        assert_eq!(report.witnesses.len() as u64, report.matched);
        for w in &report.witnesses {
            let g = parse_graph6(w).unwrap();
            assert_eq!(g.order(), report.order);
            assert!(g.is_tree());
            assert!(is_transmission_irregular(&g));
        }
    }
}
