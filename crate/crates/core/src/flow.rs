//! Numeric cross-checks: Levi-Civita connection, geodesics in body
//! coordinates, Killing-field orbits and their comparison.
//!
//! Points of a 2-step group are kept in exponential coordinates, where the
//! product is `p q = p + q + [p, q] / 2`.

use std::io::Write;

use num_traits::{Float, Zero};
use thiserror::Error;

use crate::algebra::MetricNilAlgebra;
use crate::example6::{limit_curve, xi3_along_curve, closed_form_graph, Coords};
use crate::linalg::{unit_vector, vec_add, vec_scale, Matrix};
use crate::scalar::{int, rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("nilpotency class {0:?} is not supported, need class <= 2")]
    ClassTooHigh(Option<usize>),
    #[error("deviation {deviation:e} at t = {worst_t} exceeds tolerance {tol:e}")]
    ToleranceExceeded { worst_t: f64, deviation: f64, tol: f64 },
    #[error("step must be positive and no larger than the horizon")]
    BadStep,
    #[error("csv export failed: {0}")]
    Csv(String),
}

/// `nabla_{e_i} e_j = sum_k gamma[(i n + j) n + k] e_k`, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionTable {
    n: usize,
    gamma: Vec<Rational>,
}

/// Koszul formula for left-invariant fields:
/// `2 <nabla_i e_j, e_k> = <[e_i,e_j],e_k> - <[e_j,e_k],e_i> + <[e_k,e_i],e_j>`.
pub fn connection_table(alg: &MetricNilAlgebra<Rational>) -> ConnectionTable {
    let n = alg.dim();
    let g_inv = alg.metric().inverse().expect("nondegenerate metric");
    let e = |i| unit_vector::<Rational>(n, i);
    let lowered = |a: usize, b: usize, c: usize| alg.inner(&alg.basis_bracket(a, b), &e(c));
    let half = Rational::new(1.into(), 2.into());
    let mut gamma = vec![int(0); n * n * n];
    for i in 0..n {
        for j in 0..n {
            let low: Vec<Rational> = (0..n)
                .map(|k| (lowered(i, j, k) - lowered(j, k, i) + lowered(k, i, j)) * &half)
                .collect();
            let up = g_inv.mul_vec(&low);
            for (k, v) in up.into_iter().enumerate() {
                gamma[(i * n + j) * n + k] = v;
            }
        }
    }
    ConnectionTable { n, gamma }
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.gamma[(i * self.n + j) * self.n + k]
    }

    /// `nabla_x y` for left-invariant fields with constant coordinates.
    pub fn covariant(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.n;
        let mut out = vec![int(0); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let g = self.get(i, j, k);
                    if !g.is_zero() {
                        *o += &w * g;
                    }
                }
            }
        }
        out
    }

    /// `<nabla_i e_j, e_k> + <e_j, nabla_i e_k> = 0` on all triples.
    pub fn is_metric_compatible(&self, alg: &MetricNilAlgebra<Rational>) -> bool {
        let n = self.n;
        let e = |i| unit_vector::<Rational>(n, i);
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let a = alg.inner(&self.covariant(&e(i), &e(j)), &e(k));
                    let b = alg.inner(&e(j), &self.covariant(&e(i), &e(k)));
                    (a + b).is_zero()
                })
            })
        })
    }

    /// `gamma(i,j,k) - gamma(j,i,k) = c(i,j,k)` on all triples.
    pub fn is_torsion_free(&self, alg: &MetricNilAlgebra<Rational>) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) - self.get(j, i, k) == *alg.constant(i, j, k)))
        })
    }
}

fn require_two_step<T: crate::scalar::Field>(alg: &MetricNilAlgebra<T>) -> Result<(), FlowError> {
    match alg.nilpotency_class() {
        Some(c) if c <= 2 => Ok(()),
        other => Err(FlowError::ClassTooHigh(other)),
    }
}

/// Exact product in exponential coordinates.
pub fn group_product(
    alg: &MetricNilAlgebra<Rational>,
    p: &[Rational],
    q: &[Rational],
) -> Result<Vec<Rational>, FlowError> {
    require_two_step(alg)?;
    let half = Rational::new(1.into(), 2.into());
    Ok(vec_add(&vec_add(p, q), &vec_scale(&half, &alg.bracket(p, q))))
}

/// Floating-point model of a 2-step group with a left-invariant metric.
#[derive(Debug, Clone)]
pub struct FlowModel<F> {
    n: usize,
    /// Dense structure constants `c[(i n + j) n + k]`.
    c: Vec<F>,
    gamma: Vec<F>,
    g: Vec<F>,
}

fn to_float<F: Float>(r: &Rational) -> F {
    F::from(rational_to_f64(r)).expect("f64 converts")
}

impl<F: Float> FlowModel<F> {
    pub fn new(alg: &MetricNilAlgebra<Rational>) -> Result<Self, FlowError> {
        require_two_step(alg)?;
        let n = alg.dim();
        let table = connection_table(alg);
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(to_float(alg.constant(i, j, k)));
                }
            }
        }
        Ok(Self {
            n,
            c,
            gamma: table.gamma.iter().map(to_float).collect(),
            g: alg.metric().entries().iter().map(to_float).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn contract(&self, t: &[F], x: &[F], y: &[F]) -> Vec<F> {
        let n = self.n;
        let mut out = vec![F::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w.is_zero() {
                    continue;
                }
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    *o = *o + w * t[base + k];
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.contract(&self.c, x, y)
    }

    pub fn covariant(&self, x: &[F], y: &[F]) -> Vec<F> {
        self.contract(&self.gamma, x, y)
    }

    pub fn inner(&self, x: &[F], y: &[F]) -> F {
        let n = self.n;
        let mut acc = F::zero();
        for i in 0..n {
            for j in 0..n {
                acc = acc + x[i] * self.g[i * n + j] * y[j];
            }
        }
        acc
    }

    pub fn group_product(&self, p: &[F], q: &[F]) -> Vec<F> {
        let half = F::from(0.5).unwrap();
        let b = self.bracket(p, q);
        (0..self.n).map(|i| p[i] + q[i] + half * b[i]).collect()
    }

    /// Velocity in exponential coordinates of a curve with body velocity `v`.
    pub fn transport(&self, x: &[F], v: &[F]) -> Vec<F> {
        let half = F::from(0.5).unwrap();
        let b = self.bracket(x, v);
        (0..self.n).map(|i| v[i] + half * b[i]).collect()
    }

    /// Inverse of [`Self::transport`]: body velocity from `x'`.
    pub fn body_velocity(&self, x: &[F], xdot: &[F]) -> Vec<F> {
        let half = F::from(0.5).unwrap();
        let b = self.bracket(x, xdot);
        (0..self.n).map(|i| xdot[i] - half * b[i]).collect()
    }

    /// `X*(p) = Y + D p + [Y, p] / 2` for the isometry generated by `Y + D`.
    pub fn killing_field(&self, d: &Matrix<F>, y: &[F], p: &[F]) -> Vec<F>
    where
        F: crate::scalar::Field,
    {
        let half = F::from(0.5).unwrap();
        let dp = d.mul_vec(p);
        let b = self.bracket(y, p);
        (0..self.n).map(|i| y[i] + dp[i] + half * b[i]).collect()
    }
}

/// A curve sampled on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<F> {
    pub times: Vec<F>,
    pub points: Vec<Vec<F>>,
    pub body_velocity: Vec<Vec<F>>,
    pub step: F,
}

impl<F: Float + std::fmt::Display> Trajectory<F> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Columns `t, x1..xn, v1..vn`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), FlowError> {
        let n = self.points.first().map_or(0, Vec::len);
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["t".to_string()];
        header.extend((1..=n).map(|i| format!("x{i}")));
        header.extend((1..=n).map(|i| format!("v{i}")));
        w.write_record(&header).map_err(|e| FlowError::Csv(e.to_string()))?;
        for ((t, x), v) in self.times.iter().zip(&self.points).zip(&self.body_velocity) {
            let mut rec = vec![t.to_string()];
            rec.extend(x.iter().map(|c| c.to_string()));
            rec.extend(v.iter().map(|c| c.to_string()));
            w.write_record(&rec).map_err(|e| FlowError::Csv(e.to_string()))?;
        }
        w.flush().map_err(|e| FlowError::Csv(e.to_string()))
    }
}

/// One classical Runge-Kutta step for `y' = f(t, y)`.
pub fn rk4_step<F: Float>(f: &impl Fn(F, &[F]) -> Vec<F>, t: F, y: &[F], h: F) -> Vec<F> {
    let two = F::from(2.0).unwrap();
    let six = F::from(6.0).unwrap();
    let axpy = |a: F, x: &[F], y: &[F]| -> Vec<F> { y.iter().zip(x).map(|(yi, xi)| *yi + a * *xi).collect() };
    let k1 = f(t, y);
    let k2 = f(t + h / two, &axpy(h / two, &k1, y));
    let k3 = f(t + h / two, &axpy(h / two, &k2, y));
    let k4 = f(t + h, &axpy(h, &k3, y));
    (0..y.len())
        .map(|i| y[i] + h / six * (k1[i] + two * k2[i] + two * k3[i] + k4[i]))
        .collect()
}

#[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
fn steps_for<F: Float>(t_end: F, dt: F) -> Result<usize, FlowError> {
    if !(dt > F::zero()) || !(t_end >= F::zero()) || !t_end.is_finite() {
        return Err(FlowError::BadStep);
    }
    (t_end / dt).round().to_usize().ok_or(FlowError::BadStep)
}

/// Integrates `y' = f(t, y)` on `n` uniform steps and records each state.
fn integrate<F: Float>(f: impl Fn(F, &[F]) -> Vec<F>, y0: Vec<F>, steps: usize, dt: F) -> (Vec<F>, Vec<Vec<F>>) {
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut y = y0;
    times.push(F::zero());
    states.push(y.clone());
    for s in 0..steps {
        let t = F::from(s).unwrap() * dt;
        y = rk4_step(&f, t, &y, dt);
        times.push(F::from(s + 1).unwrap() * dt);
        states.push(y.clone());
    }
    (times, states)
}

/// Geodesic from the identity with body velocity `v0`:
/// `v' = -nabla_v v`, `x' = v + [x, v] / 2`.
pub fn integrate_geodesic<F: Float>(
    model: &FlowModel<F>,
    v0: &[F],
    t_end: F,
    dt: F,
) -> Result<Trajectory<F>, FlowError> {
    integrate_geodesic_warped(model, v0, F::zero(), t_end, dt)
}

/// The same geodesic traversed with parameter `s(t) = (1 - e^{-kt}) / k`,
/// so that `s' = e^{-kt}` scales both equations. `k = 0` is the affine case.
pub fn integrate_geodesic_warped<F: Float>(
    model: &FlowModel<F>,
    v0: &[F],
    k: F,
    t_end: F,
    dt: F,
) -> Result<Trajectory<F>, FlowError> {
    let n = model.dim();
    let steps = steps_for(t_end, dt)?;
    let rhs = |t: F, y: &[F]| -> Vec<F> {
        let (x, v) = y.split_at(n);
        let w = (-k * t).exp();
        let dx = model.transport(x, v);
        let dv = model.covariant(v, v);
        dx.into_iter()
            .map(|c| w * c)
            .chain(dv.into_iter().map(|c| -w * c))
            .collect()
    };
    let y0: Vec<F> = std::iter::repeat_n(F::zero(), n).chain(v0.iter().copied()).collect();
    let (times, states) = integrate(rhs, y0, steps, dt);
    let (points, body_velocity) = states.into_iter().map(|s| (s[..n].to_vec(), s[n..].to_vec())).unzip();
    Ok(Trajectory {
        times,
        points,
        body_velocity,
        step: dt,
    })
}

/// Orbit `alpha' = X*(alpha)` through the identity of the isometry
/// generated by `Y + D`. Body velocities are recovered from `alpha'`.
pub fn integrate_orbit<F: Float + crate::scalar::Field>(
    model: &FlowModel<F>,
    d: &Matrix<F>,
    y: &[F],
    t_end: F,
    dt: F,
) -> Result<Trajectory<F>, FlowError> {
    let steps = steps_for(t_end, dt)?;
    let rhs = |_t: F, p: &[F]| model.killing_field(d, y, p);
    let (times, points) = integrate(rhs, vec![F::zero(); model.dim()], steps, dt);
    let body_velocity = points
        .iter()
        .map(|p| model.body_velocity(p, &model.killing_field(d, y, p)))
        .collect();
    Ok(Trajectory {
        times,
        points,
        body_velocity,
        step: dt,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub max_deviation: f64,
    pub worst_t: f64,
    pub steps: usize,
    /// Geodesic parameter reached at the horizon.
    pub s_end: f64,
}

/// `s(t) = (1 - e^{-kt}) / k`, and `t` for `k = 0`.
pub fn reparametrization(k: f64, t: f64) -> f64 {
    if k == 0.0 {
        t
    } else {
        (1.0 - (-k * t).exp()) / k
    }
}

/// Largest Euclidean distance (in exponential coordinates) between the
/// orbit `alpha(t)` and the geodesic `gamma(s(t))` with `gamma'(0) = Y`.
pub fn orbit_geodesic_deviation(
    model: &FlowModel<f64>,
    d: &Matrix<f64>,
    y: &[f64],
    k: f64,
    t_end: f64,
    dt: f64,
) -> Result<DeviationReport, FlowError> {
    let orbit = integrate_orbit(model, d, y, t_end, dt)?;
    let geo = integrate_geodesic_warped(model, y, k, t_end, dt)?;
    let mut worst = (0.0f64, 0.0f64);
    for ((t, a), g) in orbit.times.iter().zip(&orbit.points).zip(&geo.points) {
        let dev = a.iter().zip(g).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt();
        if dev > worst.0 {
            worst = (dev, *t);
        }
    }
    Ok(DeviationReport {
        max_deviation: worst.0,
        worst_t: worst.1,
        steps: orbit.len() - 1,
        s_end: reparametrization(k, t_end),
    })
}

/// [`orbit_geodesic_deviation`] with a tolerance.
pub fn compare_orbit_geodesic(
    model: &FlowModel<f64>,
    d: &Matrix<f64>,
    y: &[f64],
    k: f64,
    t_end: f64,
    dt: f64,
    tol: f64,
) -> Result<DeviationReport, FlowError> {
    let report = orbit_geodesic_deviation(model, d, y, k, t_end, dt)?;
    if report.max_deviation < tol {
        Ok(report)
    } else {
        Err(FlowError::ToleranceExceeded {
            worst_t: report.worst_t,
            deviation: report.max_deviation,
            tol,
        })
    }
}

pub fn rational_matrix_to_f64(m: &Matrix<Rational>) -> Matrix<f64> {
    m.map(rational_to_f64)
}

pub fn rational_vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(rational_to_f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Xi3Sample {
    pub t: Rational,
    /// Curve formula in floating point.
    pub xi3: f64,
    /// The same component from the exact geodesic graph at `gamma(t)`.
    pub exact: f64,
    /// `<X(t), X(t)> != 0`.
    pub in_u: bool,
}

/// Evaluates `xi3` along `gamma(t) = (x1 + t^2, x2, x3, x4 + t^4, z5 + t, z6)`
/// for the six-dimensional example, `Y` given in the e-basis.
pub fn xi3_limit_scan(y: &[Rational], t_values: &[Rational]) -> Vec<Xi3Sample> {
    let yf: [f64; 6] = std::array::from_fn(|i| rational_to_f64(&y[i]));
    t_values
        .iter()
        .map(|t| {
            let g = limit_curve(y, t);
            let in_u = Coords::new(&g).map(|c| !c.xx().is_zero()).unwrap_or(false);
            let exact = closed_form_graph(&g)
                .ok()
                .and_then(|s| s.xi().map(|x| rational_to_f64(&x[2])))
                .unwrap_or(f64::NAN);
            Xi3Sample {
                t: t.clone(),
                xi3: xi3_along_curve(&yf, rational_to_f64(t)),
                exact,
                in_u,
            }
        })
        .collect()
}
