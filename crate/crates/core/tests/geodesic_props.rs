mod common;

use common::*;
use nilgeo::derivations::skew_derivation_space;
use nilgeo::fixtures;
use nilgeo::geodesic::{solve_geodesic_lemma, solve_geodesic_system, GeodesicCandidate};
use nilgeo::linalg::vec_scale;
use nilgeo::scalar::int;
use nilgeo::{DerivationAlgebra, GeodesicSolution, RatAlgebra, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn same_set(a: &GeodesicSolution<Rational>, b: &GeodesicSolution<Rational>) -> bool {
    if a.status() != b.status() || a.directions().len() != b.directions().len() {
        return false;
    }
    match (a.xi(), a.k(), b.xi(), b.k()) {
        (Some(xa), Some(ka), Some(xb), Some(kb)) => a.contains(xb, kb) && b.contains(xa, ka),
        _ => true,
    }
}

fn setup(alg: &RatAlgebra) -> DerivationAlgebra<Rational> {
    skew_derivation_space(alg)
}

/// Either zero or a small integer: exposes the degenerate strata as well.
fn sparse_vec(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec(prop_oneof![1 => Just(int(0)), 1 => (-2i64..=2).prop_map(int), 2 => rational()], n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solvers_agree_and_are_sound(y in sparse_vec(6)) {
        let alg = fixtures::paper6_e();
        let split = alg.split_v_z().unwrap();
        let dera = setup(&alg);
        let sys = solve_geodesic_system(&alg, &split, &dera, &y);
        let lemma = solve_geodesic_lemma(&alg, Some(&dera), &y);
        prop_assert!(same_set(&sys, &lemma), "{:?} vs {:?}", sys, lemma);
        if sys.is_geodesic() {
            let cand = GeodesicCandidate::from_solution(y.clone(), &dera, &sys).with_split(&split);
            prop_assert!(cand.lemma_holds(&alg));
            prop_assert!(cand.split_conditions_hold(&alg, &split));
            let ones = vec![int(1); sys.directions().len()];
            let (xi, k) = sys.member(&ones).unwrap();
            let member = GeodesicCandidate { d: Some(dera.combine(&xi)), k: Some(k), ..cand };
            prop_assert!(member.lemma_holds(&alg));
            if alg.inner(&y, &y) != int(0) {
                prop_assert!(sys.k_forced() && *sys.k().unwrap() == int(0));
            }
        }
    }

    #[test]
    fn scaling_law(y in sparse_vec(6), c in rational().prop_filter("zero", |c| *c != int(0))) {
        let alg = fixtures::paper6_e();
        let dera = setup(&alg);
        let s = solve_geodesic_lemma(&alg, Some(&dera), &y);
        let scaled = solve_geodesic_lemma(&alg, Some(&dera), &vec_scale(&c, &y));
        prop_assert_eq!(s.status(), scaled.status());
        if let (Some(xi), Some(k)) = (s.xi(), s.k()) {
            prop_assert!(scaled.contains(&vec_scale(&c, xi), &(c.clone() * k.clone())));
        }
    }

    #[test]
    fn equivariant_under_a_tau(y in sparse_vec(6), t in (rational(), rational(), rational(), rational())
        .prop_filter("det", |(a, b, c, d)| a * d != b * c)) {
        let alg = fixtures::paper6_x();
        let dera = setup(&alg);
        let a = fixtures::a_tau([[t.0, t.1], [t.2, t.3]]);
        let a_inv = a.inverse().unwrap();
        let s = solve_geodesic_lemma(&alg, Some(&dera), &y);
        let moved = solve_geodesic_lemma(&alg, Some(&dera), &a.mul_vec(&y));
        prop_assert_eq!(s.status(), moved.status());
        if let (Some(xi), Some(k)) = (s.xi(), s.k()) {
            let d = &(&a * &dera.combine(xi)) * &a_inv;
            let coords = dera.coordinates(&d).unwrap();
            prop_assert!(moved.contains(&coords, k));
        }
    }

    #[test]
    fn invariant_under_change_of_basis(y in sparse_vec(6), p in small_invertible(6)) {
        let alg = fixtures::paper6_e();
        let other = alg.change_basis("p", (1..=6).map(|i| format!("b{i}")).collect(), &p).unwrap();
        let p_inv = p.inverse().unwrap();
        let s = solve_geodesic_lemma(&alg, Some(&setup(&alg)), &y);
        let dera2 = setup(&other);
        let s2 = solve_geodesic_lemma(&other, Some(&dera2), &p_inv.mul_vec(&y));
        prop_assert_eq!(s.status(), s2.status());
        prop_assert_eq!(s.k_forced(), s2.k_forced());
        if s.k_forced() {
            prop_assert_eq!(s.k(), s2.k());
        }
    }
}

#[test]
fn solvers_agree_on_random_two_step_algebras() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 20 {
        let alg = fixtures::random_two_step(&mut rng, 4, 2);
        let Ok(split) = alg.split_v_z() else { continue };
        let dera = setup(&alg);
        for _ in 0..10 {
            let y = nilgeo::geodesic::random_vector(&mut rng, 6);
            let sys = solve_geodesic_system(&alg, &split, &dera, &y);
            let lemma = solve_geodesic_lemma(&alg, Some(&dera), &y);
            assert!(same_set(&sys, &lemma), "{:?}: {:?} vs {:?}", y, sys, lemma);
        }
        checked += 1;
    }
}
