mod common;

use planarize_core::certify::{is_partial_2_tree, is_pseudoforest, verdicts};
use planarize_core::oracle::max_induced;
use planarize_core::planar::reduce_planar;
use planarize_core::pseudoforest::reduce_pseudoforest_cross_checked;
use planarize_core::solution::AggregateCharge;
use planarize_core::{pseudoforest, replay, treewidth2, PropertyId, Rational};

#[test]
fn corpus_bounds_and_certificates() {
    let corpus = common::bound_corpus();
    assert!(corpus.len() >= 500);
    for (name, g) in &corpus {
        let pf = pseudoforest::reduce_pseudoforest(g);
        assert!(pf.satisfies_bound(g), "{name}: pseudoforest bound");
        assert!(
            is_pseudoforest(&g.induced(&pf.s).unwrap()),
            "{name}: pseudoforest certificate"
        );

        let tw = treewidth2::reduce_treewidth2(g);
        assert!(tw.satisfies_bound(g), "{name}: tw2 bound");
        assert!(
            is_partial_2_tree(&g.induced(&tw.s).unwrap()),
            "{name}: tw2 certificate"
        );

        let pl = reduce_planar(g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(pl.solution.satisfies_bound(g), "{name}: planar bound");
        let v = verdicts(g, &pl.solution.s).unwrap();
        assert!(
            v.planar && v.structure_ok(),
            "{name}: planar certificate {v:?}"
        );
    }
}

#[test]
fn aggregate_charges_are_non_negative() {
    for (name, g) in common::bound_corpus().iter().step_by(3) {
        let pf = pseudoforest::reduce_pseudoforest(g);
        let c = pseudoforest::replay_charges(g, &pf).unwrap();
        assert!(c.non_negative(), "{name}: {c:?}");
        let tw = treewidth2::reduce_treewidth2(g);
        let c = treewidth2::replay_charges(g, &tw).unwrap();
        assert!(c.non_negative(), "{name}: {c:?}");
    }
}

#[test]
fn planar_ledger_stays_non_negative_and_capped() {
    for (name, g) in &common::bound_corpus() {
        let run = reduce_planar(g).unwrap_or_else(|e| panic!("{name}: {e}"));
        let min = run
            .ledger
            .min_charge()
            .cloned()
            .unwrap_or_else(Rational::zero);
        assert!(min >= Rational::zero(), "{name}: min charge {min}");
        assert!(run.ledger.debt.values().all(|d| *d >= Rational::zero()));
    }
}

#[test]
fn traces_replay_and_are_deterministic() {
    for (name, g) in common::bound_corpus().iter().step_by(7) {
        let a = pseudoforest::reduce_pseudoforest(g);
        assert_eq!(a, pseudoforest::reduce_pseudoforest(g), "{name}");
        assert_eq!(replay(g, &a).unwrap().s, a.s, "{name}");
        let rep = replay(g, &a).unwrap();
        assert!(AggregateCharge::new(&rep, 2, 9).non_negative(), "{name}");

        let b = treewidth2::reduce_treewidth2(g);
        assert_eq!(b, treewidth2::reduce_treewidth2(g), "{name}");
        assert_eq!(replay(g, &b).unwrap().s, b.s, "{name}");

        let c = reduce_planar(g).unwrap().solution;
        assert_eq!(c, reduce_planar(g).unwrap().solution, "{name}");
        assert_eq!(replay(g, &c).unwrap().s, c.s, "{name}");
    }
}

#[test]
fn indexed_pseudoforest_matches_scan() {
    for (name, g) in common::bound_corpus().iter().step_by(5) {
        let fast = pseudoforest::reduce_pseudoforest(g);
        let checked =
            reduce_pseudoforest_cross_checked(g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(fast, checked, "{name}");
    }
}

#[test]
fn sizes_lie_between_bound_and_oracle() {
    let corpus = common::small_corpus(240);
    for (name, g) in &corpus {
        let (n, m) = (g.n(), g.m());
        let checks = [
            (
                pseudoforest::reduce_pseudoforest(g),
                PropertyId::Pseudoforest,
            ),
            (treewidth2::reduce_treewidth2(g), PropertyId::Treewidth2),
            (reduce_planar(g).unwrap().solution, PropertyId::Planar),
        ];
        for (sol, p) in checks {
            let best = max_induced(g, p).unwrap();
            assert!(sol.bound.holds(n, m, sol.s.len()), "{name} {p}");
            assert!(
                sol.s.len() <= best.size,
                "{name} {p}: {} > {}",
                sol.s.len(),
                best.size
            );
            assert!(
                sol.bound.holds(n, m, best.size),
                "{name} {p}: oracle below bound"
            );
        }
    }
}
