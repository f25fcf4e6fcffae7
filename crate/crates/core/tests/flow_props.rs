mod common;

use common::*;
use nilgeo::derivations::skew_derivation_space;
use nilgeo::fixtures;
use nilgeo::flow::{self, connection_table, integrate_geodesic, integrate_orbit, FlowModel};
use nilgeo::linalg::vec_scale;
use nilgeo::scalar::{int, rational_to_f64};
use nilgeo::FloatMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn expm(d: &FloatMatrix, t: f64) -> FloatMatrix {
    let n = d.rows();
    let mut term = FloatMatrix::identity(n);
    let mut sum = FloatMatrix::identity(n);
    for k in 1..30 {
        term = (&term * d).scale(&(t / k as f64));
        sum = &sum + &term;
    }
    sum
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn killing_field_is_the_derivative_of_the_action(y in rvec(6), p in rvec(6), xi in rvec(4)) {
        let alg = fixtures::paper6_e();
        let model = FlowModel::<f64>::new(&alg).unwrap();
        let dera = skew_derivation_space(&alg);
        let d = flow::rational_matrix_to_f64(&dera.combine(&xi));
        let (y, p) = (flow::rational_vec_to_f64(&y), flow::rational_vec_to_f64(&p));
        let act = |t: f64| {
            let ty: Vec<f64> = y.iter().map(|c| t * c).collect();
            model.group_product(&ty, &expm(&d, t).mul_vec(&p))
        };
        let h = 1e-6;
        let fd: Vec<f64> = act(h).iter().zip(act(-h)).map(|(a, b)| (a - b) / (2.0 * h)).collect();
        let exact = model.killing_field(&d, &y, &p);
        let scale = 1.0 + exact.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        prop_assert!(max_abs_diff(&fd, &exact) < 1e-6 * scale, "{:?} vs {:?}", fd, exact);
    }

    #[test]
    fn group_product_is_associative(p in rvec(6), q in rvec(6), r in rvec(6)) {
        let alg = fixtures::paper6_e();
        let pq = flow::group_product(&alg, &p, &q).unwrap();
        let qr = flow::group_product(&alg, &q, &r).unwrap();
        prop_assert_eq!(
            flow::group_product(&alg, &pq, &r).unwrap(),
            flow::group_product(&alg, &p, &qr).unwrap()
        );
        let inv = vec_scale(&int(-1), &p);
        prop_assert!(flow::group_product(&alg, &p, &inv).unwrap().iter().all(|c| *c == int(0)));
    }

    #[test]
    fn covariant_derivative_of_y_along_itself(y in rvec(6)) {
        let alg = fixtures::paper6_e();
        let split = alg.split_v_z().unwrap();
        let gamma = connection_table(&alg);
        let (x, z) = split.project(&y);
        prop_assert_eq!(gamma.covariant(&y, &y), vec_scale(&int(-1), &alg.j_apply(&split, &z, &x)));
    }
}

#[test]
fn orbit_without_isotropy_is_a_one_parameter_subgroup() {
    let alg = fixtures::paper6_e();
    let model = FlowModel::<f64>::new(&alg).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let zero = FloatMatrix::zeros(6, 6);
    for i in 0..10 {
        // The first vector is e5, a central direction.
        let y = if i == 0 {
            vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0]
        } else {
            flow::rational_vec_to_f64(&nilgeo::geodesic::random_vector(&mut rng, 6))
        };
        let orbit = integrate_orbit(&model, &zero, &y, 1.0, 1e-2).unwrap();
        for (t, p) in orbit.times.iter().zip(&orbit.points) {
            let line: Vec<f64> = y.iter().map(|c| t * c).collect();
            assert!(max_abs_diff(p, &line) < 1e-12);
        }
    }
}

#[test]
fn geodesics_conserve_energy() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for alg in [fixtures::paper6_e(), fixtures::heis3_riem(), fixtures::cotangent_h3()] {
        let model = FlowModel::<f64>::new(&alg).unwrap();
        for _ in 0..5 {
            let v0 = nilgeo::geodesic::random_vector(&mut rng, alg.dim());
            let e0 = rational_to_f64(&alg.inner(&v0, &v0));
            let v0 = flow::rational_vec_to_f64(&v0);
            let traj = integrate_geodesic(&model, &v0, 1.0, 1e-3).unwrap();
            for v in &traj.body_velocity {
                assert!((model.inner(v, v) - e0).abs() < 1e-9 * (1.0 + e0.abs()));
            }
        }
    }
}

#[test]
fn connection_is_levi_civita_on_fixtures() {
    for f in fixtures::catalog() {
        let gamma = connection_table(&f.algebra);
        assert!(gamma.is_metric_compatible(&f.algebra), "{}", f.name);
        assert!(gamma.is_torsion_free(&f.algebra), "{}", f.name);
    }
}
