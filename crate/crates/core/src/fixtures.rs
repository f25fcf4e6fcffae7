//! Built-in algebras and automorphisms.
//!
//! `paper6_X` / `paper6_e` are two presentations of the six-dimensional
//! 2-step algebra `h3 + h3` with a non-product pseudo-H-type metric: brackets
//! `[X1,X3] = X5`, `[X2,X4] = X6` and metric `g(X1,X4) = -1`, `g(X2,X3) = 1`,
//! `g(X5,X6) = 2`. The e-basis differs only on the center:
//! `e5 = X5 + X6/4`, `e6 = -X5 + X6/4`.

use rand::Rng;

use crate::algebra::{MetricNilAlgebra, StructureConstant};
use crate::linalg::Matrix;
use crate::scalar::{int, rat, Rational};
use crate::{RatAlgebra, RatMatrix};

/// A named basis of skew derivations to align computed bases with.
#[derive(Debug, Clone)]
pub struct NamedBasis {
    pub names: Vec<String>,
    pub matrices: Vec<RatMatrix>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub algebra: RatAlgebra,
    /// Preferred basis of skew-symmetric derivations, when one is known.
    pub derivation_basis: Option<NamedBasis>,
}

pub fn catalog() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "paper6_X",
            description: "h3+h3 with pseudo-H-type metric, X-basis",
            algebra: paper6_x(),
            derivation_basis: Some(paper6_x_derivations()),
        },
        Fixture {
            name: "paper6_e",
            description: "h3+h3 with pseudo-H-type metric, pseudo-orthonormal center (e-basis)",
            algebra: paper6_e(),
            derivation_basis: Some(paper6_e_derivations()),
        },
        Fixture {
            name: "heis3_riem",
            description: "Heisenberg h3, positive definite metric",
            algebra: heis3_riem(),
            derivation_basis: None,
        },
        Fixture {
            name: "heis3_lorentz_degenerate",
            description: "Heisenberg h3, Lorentzian metric with null center",
            algebra: heis3_lorentz_degenerate(),
            derivation_basis: None,
        },
        Fixture {
            name: "abelian_rpq",
            description: "abelian R^{2,1}, flat metric of signature (2,1)",
            algebra: abelian_rpq(2, 1),
            derivation_basis: None,
        },
        Fixture {
            name: "cotangent_h3",
            description: "cotangent double h3 + h3* with the canonical pairing metric (ad-invariant)",
            algebra: cotangent_h3(),
            derivation_basis: None,
        },
        Fixture {
            name: "filiform4",
            description: "4-dimensional filiform algebra (class 3), positive definite metric",
            algebra: filiform4(),
            derivation_basis: None,
        },
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.name == name)
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn sc(i: usize, j: usize, k: usize, coeff: Rational) -> StructureConstant<Rational> {
    StructureConstant { i, j, k, coeff }
}

fn symmetric(n: usize, entries: &[(usize, usize, Rational)]) -> RatMatrix {
    let mut g = Matrix::zeros(n, n);
    for (i, j, v) in entries {
        g.set(*i, *j, v.clone());
        g.set(*j, *i, v.clone());
    }
    g
}

/// `E_{ij}` with 1-based indices, as in the usual matrix-unit notation.
fn unit(n: usize, i: usize, j: usize) -> RatMatrix {
    let mut m = Matrix::zeros(n, n);
    m.set(i - 1, j - 1, int(1));
    m
}

fn sum_units(n: usize, terms: &[(i64, usize, usize)]) -> RatMatrix {
    terms.iter().fold(Matrix::zeros(n, n), |acc, &(c, i, j)| {
        &acc + &unit(n, i, j).scale(&int(c))
    })
}

pub fn paper6_x() -> RatAlgebra {
    let g = symmetric(6, &[(0, 3, int(-1)), (1, 2, int(1)), (4, 5, int(2))]);
    MetricNilAlgebra::from_brackets(
        "paper6_X",
        names("X", 6),
        vec![sc(0, 2, 4, int(1)), sc(1, 3, 5, int(1))],
        g,
    )
    .expect("fixture shapes")
}

pub fn paper6_e() -> RatAlgebra {
    let g = symmetric(
        6,
        &[(0, 3, int(-1)), (1, 2, int(1)), (4, 4, int(1)), (5, 5, int(-1))],
    );
    MetricNilAlgebra::from_brackets(
        "paper6_e",
        names("e", 6),
        vec![
            sc(0, 2, 4, rat(1, 2)),
            sc(0, 2, 5, rat(-1, 2)),
            sc(1, 3, 4, int(2)),
            sc(1, 3, 5, int(2)),
        ],
        g,
    )
    .expect("fixture shapes")
}

/// Columns are `e_1..e_6` in X-coordinates.
pub fn x_to_e_change_of_basis() -> RatMatrix {
    let mut p = Matrix::identity(6);
    p.set(4, 4, int(1));
    p.set(5, 4, rat(1, 4));
    p.set(4, 5, int(-1));
    p.set(5, 5, rat(1, 4));
    p
}

/// `T, H, E, F` in the e-basis.
pub fn paper6_e_derivations() -> NamedBasis {
    let t = sum_units(6, &[(1, 1, 1), (-1, 2, 2), (1, 3, 3), (-1, 4, 4), (-2, 5, 6), (-2, 6, 5)]);
    let h = sum_units(6, &[(1, 1, 1), (1, 2, 2), (-1, 3, 3), (-1, 4, 4)]);
    let e = sum_units(6, &[(1, 1, 3), (1, 2, 4)]);
    let f = sum_units(6, &[(1, 3, 1), (1, 4, 2)]);
    NamedBasis {
        names: ["T", "H", "E", "F"].iter().map(|s| s.to_string()).collect(),
        matrices: vec![t, h, e, f],
    }
}

/// `T, H, E, F` conjugated into the X-basis.
pub fn paper6_x_derivations() -> NamedBasis {
    let p = x_to_e_change_of_basis();
    let p_inv = p.inverse().expect("invertible");
    let mut basis = paper6_e_derivations();
    basis.matrices = basis
        .matrices
        .iter()
        .map(|d| &(&p * d) * &p_inv)
        .collect();
    basis
}

/// The isometric automorphism `A_tau` of `paper6_X` for `det tau != 0`.
/// `tau` is `[[t11, t12], [t21, t22]]`.
pub fn a_tau(tau: [[Rational; 2]; 2]) -> RatMatrix {
    let [[t11, t12], [t21, t22]] = tau;
    let det = t11.clone() * t22.clone() - t12.clone() * t21.clone();
    assert!(det != int(0), "A_tau needs det tau != 0");
    let mut a = Matrix::zeros(6, 6);
    // A X1 = t11 X1 + t21 X3, A X3 = t12 X1 + t22 X3
    a.set(0, 0, t11.clone());
    a.set(2, 0, t21.clone());
    a.set(0, 2, t12.clone());
    a.set(2, 2, t22.clone());
    // A X2 = (t11 X2 + t21 X4)/det, A X4 = (t12 X2 + t22 X4)/det
    a.set(1, 1, t11 / det.clone());
    a.set(3, 1, t21 / det.clone());
    a.set(1, 3, t12 / det.clone());
    a.set(3, 3, t22 / det.clone());
    a.set(4, 4, det.clone());
    a.set(5, 5, int(1) / det);
    a
}

/// The three isometric automorphisms of `paper6_X` representing the
/// non-identity components together with `A_tau`, `det tau < 0`.
///
/// The third matrix uses `E43` where the commonly quoted form has `E44`; the
/// latter is neither bracket-preserving nor isometric.
pub fn b_matrices() -> [RatMatrix; 3] {
    let b1 = sum_units(6, &[(1, 1, 3), (1, 2, 4), (-1, 3, 1), (-1, 4, 2), (1, 5, 5), (1, 6, 6)]);
    let b2 = sum_units(
        6,
        &[(1, 1, 2), (1, 1, 4), (1, 2, 1), (1, 2, 3), (1, 3, 2), (1, 4, 1), (-1, 5, 6), (-1, 6, 5)],
    );
    let b3 = sum_units(
        6,
        &[(1, 1, 4), (1, 2, 3), (1, 3, 2), (1, 3, 4), (1, 4, 1), (1, 4, 3), (-1, 5, 6), (-1, 6, 5)],
    );
    [b1, b2, b3]
}

/// The third matrix exactly as usually printed (with `E44`); kept for tests.
pub fn b3_as_printed() -> RatMatrix {
    sum_units(
        6,
        &[(1, 1, 4), (1, 2, 3), (1, 3, 2), (1, 3, 4), (1, 4, 1), (1, 4, 4), (-1, 5, 6), (-1, 6, 5)],
    )
}

pub fn heis3_riem() -> RatAlgebra {
    MetricNilAlgebra::from_brackets(
        "heis3_riem",
        vec!["x".into(), "y".into(), "z".into()],
        vec![sc(0, 1, 2, int(1))],
        Matrix::identity(3),
    )
    .expect("fixture shapes")
}

/// `<x, z> = 1`, `<y, y> = 1`: nondegenerate, but the center `z` is null.
pub fn heis3_lorentz_degenerate() -> RatAlgebra {
    MetricNilAlgebra::from_brackets(
        "heis3_lorentz_degenerate",
        vec!["x".into(), "y".into(), "z".into()],
        vec![sc(0, 1, 2, int(1))],
        symmetric(3, &[(0, 2, int(1)), (1, 1, int(1))]),
    )
    .expect("fixture shapes")
}

/// Abelian `R^{p,q}` with `diag(+1 x p, -1 x q)`.
pub fn abelian_rpq(p: usize, q: usize) -> RatAlgebra {
    let n = p + q;
    let g = Matrix::from_fn(n, n, |r, c| {
        if r != c {
            int(0)
        } else if r < p {
            int(1)
        } else {
            int(-1)
        }
    });
    MetricNilAlgebra::from_brackets("abelian_rpq", names("a", n), Vec::new(), g)
        .expect("fixture shapes")
}

/// The cotangent double `g + g*` of a Lie algebra `g`: coadjoint action on
/// `g*` and the pairing metric `<X + a, Y + b> = a(Y) + b(X)`.
pub fn cotangent_double(name: &str, base: &RatAlgebra) -> RatAlgebra {
    let m = base.dim();
    let n = 2 * m;
    let mut basis_names: Vec<String> = base.basis_names().to_vec();
    basis_names.extend(base.basis_names().iter().map(|s| format!("{s}*")));
    let g = Matrix::from_fn(n, n, |r, c| {
        if (r + m == c) || (c + m == r) {
            int(1)
        } else {
            int(0)
        }
    });
    let mut list = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                let c = base.constant(i, j, k);
                if *c != int(0) {
                    list.push(sc(i, j, k, c.clone()));
                }
            }
        }
        // [e_i, f^b] = ad*_{e_i} f^b = -sum_c c(i, c, b) f^c
        for b in 0..m {
            for cc in 0..m {
                let c = base.constant(i, cc, b);
                if *c != int(0) {
                    list.push(sc(i, m + b, m + cc, -c.clone()));
                }
            }
        }
    }
    MetricNilAlgebra::from_brackets(name, basis_names, list, g).expect("fixture shapes")
}

pub fn cotangent_h3() -> RatAlgebra {
    cotangent_double("cotangent_h3", &heis3_riem())
}

/// `[e1, e2] = e3`, `[e1, e3] = e4`, identity metric.
pub fn filiform4() -> RatAlgebra {
    MetricNilAlgebra::from_brackets(
        "filiform4",
        names("f", 4),
        vec![sc(0, 1, 2, int(1)), sc(0, 2, 3, int(1))],
        Matrix::identity(4),
    )
    .expect("fixture shapes")
}

/// Random 2-step algebra on `dim_v + dim_z` generators: `[e_i, e_j]` for
/// `i < j < dim_v` is a random integer combination of the last `dim_z`
/// vectors, and the metric is a random nondegenerate symmetric matrix.
pub fn random_two_step(rng: &mut impl Rng, dim_v: usize, dim_z: usize) -> RatAlgebra {
    let n = dim_v + dim_z;
    let metric = loop {
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = int(rng.gen_range(-2..=2));
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        if g.determinant() != int(0) {
            break g;
        }
    };
    let mut brackets = Vec::new();
    for i in 0..dim_v {
        for j in i + 1..dim_v {
            for k in dim_v..n {
                let c = rng.gen_range(-2..=2);
                if c != 0 {
                    brackets.push(sc(i, j, k, int(c)));
                }
            }
        }
    }
    MetricNilAlgebra::from_brackets("random_two_step", names("r", n), brackets, metric).expect("shapes agree")
}
