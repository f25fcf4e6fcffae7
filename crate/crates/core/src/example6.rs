//! Closed forms for the six-dimensional example in the e-basis.
//!
//! Coordinates are `Y = x1 e1 + .. + x4 e4 + z5 e5 + z6 e6`, with
//! `<X, X> = 2 (x2 x3 - x1 x4)` and `<Z, Z> = z5^2 - z6^2`. Derivations are
//! written in the basis `T, H, E, F`.

use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::geodesic::{random_rational, GeodesicSolution};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("<X, X> = 0: the closed form has a zero denominator")]
    ZeroDenominator,
    #[error("expected 6 coordinates, got {0}")]
    Length(usize),
}

/// Pieces of `Y` in the e-basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords {
    pub x: [Rational; 4],
    pub z: [Rational; 2],
}

impl Coords {
    pub fn new(y: &[Rational]) -> Result<Self, ClosedFormError> {
        if y.len() != 6 {
            return Err(ClosedFormError::Length(y.len()));
        }
        Ok(Self {
            x: [y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone()],
            z: [y[4].clone(), y[5].clone()],
        })
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.x.iter().chain(self.z.iter()).cloned().collect()
    }

    pub fn xx(&self) -> Rational {
        let [x1, x2, x3, x4] = &self.x;
        int(2) * (x2 * x3 - x1 * x4)
    }

    pub fn zz(&self) -> Rational {
        let [z5, z6] = &self.z;
        z5 * z5 - z6 * z6
    }

    /// The three polynomials whose common vanishing makes the reduced
    /// system consistent when `<X, X> = 0`.
    pub fn rank_conditions(&self) -> [Rational; 3] {
        let [x1, x2, x3, x4] = &self.x;
        let [z5, z6] = &self.z;
        let four = int(4);
        [
            z6 * (x3 * x3 - &four * x4 * x4) + z5 * (&four * x4 * x4 + x3 * x3),
            z6 * (x1 * x1 - &four * x2 * x2) + z5 * (&four * x2 * x2 + x1 * x1),
            z6 * (x3 * x1 - &four * x2 * x4) + z5 * (x3 * x1 + &four * x2 * x4),
        ]
    }

    pub fn rank_conditions_hold(&self) -> bool {
        self.rank_conditions().iter().all(Zero::is_zero)
    }
}

/// The rational geodesic graph on `<X, X> != 0`; `k = 0` there.
pub fn closed_form_graph(y: &[Rational]) -> Result<GeodesicSolution<Rational>, ClosedFormError> {
    let c = Coords::new(y)?;
    let xx = c.xx();
    if xx.is_zero() {
        return Err(ClosedFormError::ZeroDenominator);
    }
    let [x1, x2, x3, x4] = &c.x;
    let [z5, z6] = &c.z;
    let four = int(4);
    let xi2 = (z5 * (&four * x4 * x2 + x1 * x3) + z6 * (x1 * x3 - &four * x4 * x2)) / &xx;
    let xi3 = -(z5 * (&four * x2 * x2 + x1 * x1) + z6 * (x1 * x1 - &four * x2 * x2)) / &xx;
    let xi4 = (z5 * (&four * x4 * x4 + x3 * x3) + z6 * (x3 * x3 - &four * x4 * x4)) / &xx;
    Ok(GeodesicSolution::Unique {
        xi: vec![int(0), xi2, xi3, xi4],
        k: int(0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VMembership {
    U,
    V0,
    V1,
    V2W,
    V2Other,
}

impl VMembership {
    pub fn label(self) -> &'static str {
        match self {
            VMembership::U => "U",
            VMembership::V0 => "V0",
            VMembership::V1 => "V1",
            VMembership::V2W => "V2_W",
            VMembership::V2Other => "V2_other",
        }
    }
}

pub fn classify_v_membership(y: &[Rational]) -> Result<VMembership, ClosedFormError> {
    let c = Coords::new(y)?;
    if !c.xx().is_zero() {
        return Ok(VMembership::U);
    }
    if !c.zz().is_zero() {
        return Ok(if c.rank_conditions_hold() {
            VMembership::V1
        } else {
            VMembership::V0
        });
    }
    Ok(if in_w(&c) {
        VMembership::V2W
    } else {
        VMembership::V2Other
    })
}

/// `<X, X> = 0`, `z5 = z6 != 0`, `x1 x2 != 0`.
pub fn in_w(c: &Coords) -> bool {
    c.xx().is_zero() && c.z[0] == c.z[1] && !c.z[0].is_zero() && !(&c.x[0] * &c.x[1]).is_zero()
}

/// `k` and `xi` of the W-family member with `xi3 = s`.
pub fn w_family_member(c: &Coords, s: &Rational) -> (Vec<Rational>, Rational) {
    let [x1, x2, x3, _] = &c.x;
    let z5 = &c.z[0];
    let k = -(x1 * z5) / x2;
    let xi1 = &k / int(2);
    let xi2 = Rational::new(3.into(), 2.into()) * x1 * z5 / x2 - x3 / x1 * s;
    let xi4 = int(3) * x3 * z5 / x2 - (x3 * x3) / (x1 * x1) * s;
    (vec![xi1, xi2, s.clone(), xi4], k)
}

/// The three shapes of the V1 solution lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum V1Case {
    X1Zero,
    X3Zero,
    AllNonzero,
}

pub fn v1_case(c: &Coords) -> Option<V1Case> {
    if c.x[0].is_zero() && !c.x[2].is_zero() {
        Some(V1Case::X1Zero)
    } else if c.x[2].is_zero() && !c.x[0].is_zero() {
        Some(V1Case::X3Zero)
    } else if c.x.iter().all(|v| !v.is_zero()) {
        Some(V1Case::AllNonzero)
    } else {
        None
    }
}

/// The V1 solution with free parameter `s` (`k = 0`, `xi1 = 0`).
pub fn v1_family_member(c: &Coords, s: &Rational) -> Option<Vec<Rational>> {
    let [x1, x2, x3, x4] = &c.x;
    let dz = &c.z[0] - &c.z[1];
    let zero = int(0);
    Some(match v1_case(c)? {
        V1Case::X1Zero => vec![zero.clone(), int(2) * &dz * x4 / x3, zero, s.clone()],
        V1Case::X3Zero => vec![zero.clone(), int(-2) * &dz * x2 / x1, s.clone(), zero],
        V1Case::AllNonzero => vec![
            zero,
            int(2) * &dz * x2 / x1 + x2 / x4 * s,
            int(-4) * &dz * x2 / x3 - (x1 * x2) / (x3 * x4) * s,
            s.clone(),
        ],
    })
}

fn nonzero(rng: &mut impl Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random X with `<X, X> = 0` and `x1 x3 != 0`.
fn null_x(rng: &mut impl Rng) -> [Rational; 4] {
    let (x1, x2, x3) = (nonzero(rng), random_rational(rng), nonzero(rng));
    let x4 = &x2 * &x3 / &x1;
    [x1, x2, x3, x4]
}

pub fn sample_u(rng: &mut impl Rng) -> Coords {
    loop {
        let c = Coords {
            x: std::array::from_fn(|_| random_rational(rng)),
            z: std::array::from_fn(|_| random_rational(rng)),
        };
        if !c.xx().is_zero() {
            return c;
        }
    }
}

pub fn sample_v0(rng: &mut impl Rng) -> Coords {
    loop {
        let c = Coords {
            x: null_x(rng),
            z: [random_rational(rng), random_rational(rng)],
        };
        if !c.zz().is_zero() && !c.rank_conditions_hold() {
            return c;
        }
    }
}

pub fn sample_v1(rng: &mut impl Rng, case: V1Case) -> Coords {
    loop {
        let x = match case {
            V1Case::X1Zero => [int(0), int(0), nonzero(rng), nonzero(rng)],
            V1Case::X3Zero => [nonzero(rng), nonzero(rng), int(0), int(0)],
            V1Case::AllNonzero => {
                let (x1, x2, x3) = (nonzero(rng), nonzero(rng), nonzero(rng));
                let x4 = &x2 * &x3 / &x1;
                [x1, x2, x3, x4]
            }
        };
        let four = int(4);
        let z6 = nonzero(rng);
        // Solve the first (x1 = 0) or second rank condition for z5.
        let (a, b) = match case {
            V1Case::X1Zero => (&x[2], &x[3]),
            _ => (&x[0], &x[1]),
        };
        let denom = a * a + &four * b * b;
        let z5 = -(&z6 * (a * a - &four * b * b)) / denom;
        let c = Coords { x, z: [z5, z6] };
        if !c.zz().is_zero() {
            return c;
        }
    }
}

pub fn sample_w(rng: &mut impl Rng) -> Coords {
    let (x1, x2, x3) = (nonzero(rng), nonzero(rng), random_rational(rng));
    let x4 = &x2 * &x3 / &x1;
    let z = nonzero(rng);
    Coords {
        x: [x1, x2, x3, x4],
        z: [z.clone(), z],
    }
}

/// Null `X` and null `Z`, outside W.
pub fn sample_v2_other(rng: &mut impl Rng) -> Coords {
    loop {
        let z = nonzero(rng);
        let sign = if rng.gen_bool(0.5) { int(1) } else { int(-1) };
        let c = Coords {
            x: null_x(rng),
            z: [z.clone(), sign * z],
        };
        if !in_w(&c) {
            return c;
        }
    }
}

/// Draws from a mixture hitting every piece of the decomposition, including
/// sparse vectors on the coordinate hyperplanes.
pub fn sample_mixed(rng: &mut impl Rng) -> Coords {
    match rng.gen_range(0..8) {
        0 => sample_u(rng),
        1 => sample_v0(rng),
        2 => sample_v1(rng, V1Case::X1Zero),
        3 => sample_v1(rng, V1Case::X3Zero),
        4 => sample_v1(rng, V1Case::AllNonzero),
        5 => sample_w(rng),
        6 => sample_v2_other(rng),
        _ => Coords {
            x: std::array::from_fn(|_| int(rng.gen_range(-1..=1))),
            z: std::array::from_fn(|_| int(rng.gen_range(-1..=1))),
        },
    }
}

/// `gamma(t) = (x1 + t^2, x2, x3, x4 + t^4, z5 + t, z6)`.
pub fn limit_curve(y: &[Rational], t: &Rational) -> Vec<Rational> {
    let t2 = t * t;
    let mut g = y.to_vec();
    g[0] = &g[0] + &t2;
    g[3] = &g[3] + &t2 * &t2;
    g[4] = &g[4] + t;
    g
}

/// `xi3(gamma(t))` as a closed expression in `t`, valid for `Y` in V.
pub fn xi3_along_curve(y: &[f64; 6], t: f64) -> f64 {
    let [y1, y2, _, y4, y5, y6] = *y;
    let num = (y1 + t * t).powi(2) * (y5 + t + y6) + 4.0 * y2 * y2 * (y5 + t - y6);
    let den = t.powi(6) + t.powi(4) * y1 + t * t * y4;
    0.5 * num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn closed_form_examples() {
        let s = closed_form_graph(&v(&[0, 1, 1, 0, 1, 0])).unwrap();
        assert_eq!(s.xi().unwrap(), &[int(0), int(0), int(-2), rat(1, 2)]);
        let s = closed_form_graph(&v(&[1, 0, 0, 1, 0, 1])).unwrap();
        assert_eq!(s.xi().unwrap(), &[int(0), int(0), rat(1, 2), int(2)]);
        let s = closed_form_graph(&v(&[3, 1, 2, 5, 0, 0])).unwrap();
        assert!(s.xi().unwrap().iter().all(Zero::is_zero));
        assert_eq!(
            closed_form_graph(&v(&[1, 1, 0, 0, 1, 0])),
            Err(ClosedFormError::ZeroDenominator)
        );
    }

    #[test]
    fn membership_examples() {
        let m = |y: &[i64]| classify_v_membership(&v(y)).unwrap();
        assert_eq!(m(&[0, 1, 1, 0, 1, 0]), VMembership::U);
        assert_eq!(m(&[1, 1, 0, 0, 1, 0]), VMembership::V0);
        assert_eq!(m(&[1, 1, 0, 0, 1, 1]), VMembership::V2W);
        assert_eq!(m(&[0, 1, 0, 0, 1, -1]), VMembership::V2Other);
        let c = Coords::new(&v(&[1, 1, 0, 0, 1, 0])).unwrap();
        assert_eq!(c.rank_conditions()[1], int(5));
    }

    #[test]
    fn samplers_land_where_claimed() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = |c: &Coords| classify_v_membership(&c.to_vec()).unwrap();
            assert_eq!(m(&sample_u(&mut rng)), VMembership::U);
            assert_eq!(m(&sample_v0(&mut rng)), VMembership::V0);
            for case in [V1Case::X1Zero, V1Case::X3Zero, V1Case::AllNonzero] {
                let c = sample_v1(&mut rng, case);
                assert_eq!(m(&c), VMembership::V1);
                assert_eq!(v1_case(&c), Some(case));
            }
            assert_eq!(m(&sample_w(&mut rng)), VMembership::V2W);
            assert_eq!(m(&sample_v2_other(&mut rng)), VMembership::V2Other);
        }
    }

    #[test]
    fn curve_formula_matches_graph() {
        let y = v(&[0, 1, 0, 1, 1, -1]);
        let t = rat(1, 10);
        let g = limit_curve(&y, &t);
        let exact = closed_form_graph(&g).unwrap().xi().unwrap()[2].clone();
        let approx = xi3_along_curve(&[0.0, 1.0, 0.0, 1.0, 1.0, -1.0], 0.1);
        let e = crate::scalar::rational_to_f64(&exact);
        assert!(((approx - e) / e).abs() < 1e-12);
    }
}
