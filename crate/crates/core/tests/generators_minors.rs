use planarize_core::generators::{
    cycle, disjoint_copies, fixture, high_girth_subcubic, random_regular, Fixture,
};
use planarize_core::minors::{check_result, level_contract, verify_minor_density, MinorError};
use planarize_core::{generate, FamilySpec, Girth};

#[test]
fn disjoint_copies_scale_counts() {
    for (spec, comps) in [
        (FamilySpec::CompleteBipartite(3, 3), 1),
        (FamilySpec::Path(4), 1),
        (FamilySpec::Cycle(5), 1),
    ] {
        let one = generate(&spec).unwrap();
        for t in [1, 3, 7] {
            let g = generate(&FamilySpec::DisjointCopies(Box::new(spec.clone()), t)).unwrap();
            assert_eq!((g.n(), g.m()), (t * one.n(), t * one.m()));
            assert_eq!(g.components().len(), t * comps);
        }
    }
}

#[test]
fn random_regular_is_simple_and_regular() {
    for (n, d) in [(10, 3), (20, 4), (30, 5)] {
        for seed in 0..1000 {
            let g = random_regular(n, d, seed).unwrap();
            assert!(g.is_simple() && g.is_d_regular(d), "({n},{d},{seed})");
        }
    }
}

#[test]
fn cycles_contract_to_short_cycles() {
    for n in [19, 31, 101] {
        let g = cycle(n).unwrap();
        let r = level_contract(&g, None).unwrap();
        assert!(r.minor.is_simple());
        assert_eq!(r.m_prime + n, g.m() + r.n_prime);
        assert!(r.n_prime <= n.div_ceil(r.ell) + 1);
        assert_eq!(verify_minor_density(&r).surplus, 0);
    }
}

#[test]
fn cage_fixtures_are_identity_minors() {
    for f in [Fixture::McGee, Fixture::TutteCoxeter] {
        let g = fixture(f);
        let r = level_contract(&g, None).unwrap();
        assert_eq!(r.ell, 1);
        assert_eq!(r.minor, g);
        assert_eq!(
            verify_minor_density(&r).surplus,
            g.m() as i64 - g.n() as i64
        );
    }
}

#[test]
fn high_girth_substitute_minors() {
    for n in [30, 45, 60] {
        for seed in 0..10 {
            let g = high_girth_subcubic(n, 11, seed).unwrap();
            assert!(matches!(g.girth(), Girth::Finite(x) if x >= 11));
            let r = level_contract(&g, None).unwrap();
            assert!(r.ell >= 2);
            check_result(&g, &r).unwrap();
            assert!(r.n_prime <= n.div_ceil(r.ell) + 1);
        }
    }
}

#[test]
fn every_root_gives_a_valid_minor() {
    let g = disjoint_copies(&cycle(23).unwrap(), 1);
    for v in g.vertices() {
        let r = level_contract(&g, Some(v)).unwrap();
        check_result(&g, &r).unwrap();
    }
    assert_eq!(
        level_contract(&fixture(Fixture::Heawood), None).unwrap_err(),
        MinorError::InsufficientGirth(6)
    );
}
