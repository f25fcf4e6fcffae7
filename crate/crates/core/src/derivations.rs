//! Derivations and skew-symmetric derivations as exact null spaces.
//!
//! A `dim x dim` operator `D` is flattened row-major into `dim^2` unknowns.
//! Leibniz contributes one row per pair `i < j` and output coordinate `k`;
//! metric skewness contributes one row per pair `i <= j` of `D^T g + g D = 0`.

use thiserror::Error;

use crate::algebra::{CenterSplit, MetricNilAlgebra};
use crate::linalg::{nullspace, solve_affine, unit_vector, Matrix, SolutionSet};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("basis element {0} is not a derivation")]
    NotADerivation(usize),
    #[error("basis element {0} is not metric-skew")]
    NotSkew(usize),
    #[error("basis elements are linearly dependent")]
    LinearlyDependent,
    #[error("basis element {0} is not in the span of the current basis")]
    NotInSpan(usize),
    #[error("new basis has {got} elements, the algebra has dimension {expected}")]
    WrongCount { got: usize, expected: usize },
    #[error("commutator of basis elements {0} and {1} leaves the span")]
    NotClosed(usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation<T> {
    matrix: Matrix<T>,
    skew: bool,
}

impl<T: Field> Derivation<T> {
    /// Checks Leibniz (and metric skewness when `skew`) before wrapping.
    pub fn new(alg: &MetricNilAlgebra<T>, matrix: Matrix<T>, skew: bool) -> Option<Self> {
        if !satisfies_leibniz(alg, &matrix) || (skew && !is_metric_skew(alg, &matrix)) {
            return None;
        }
        Some(Self { matrix, skew })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn into_matrix(self) -> Matrix<T> {
        self.matrix
    }
}

pub fn satisfies_leibniz<T: Field>(alg: &MetricNilAlgebra<T>, d: &Matrix<T>) -> bool {
    let n = alg.dim();
    let cols: Vec<Vec<T>> = (0..n).map(|i| d.column(i)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = d.mul_vec(&alg.basis_bracket(i, j));
            let a = alg.bracket(&cols[i], &unit_vector(n, j));
            let b = alg.bracket(&unit_vector(n, i), &cols[j]);
            lhs == crate::linalg::vec_add(&a, &b)
        })
    })
}

pub fn is_metric_skew<T: Field>(alg: &MetricNilAlgebra<T>, d: &Matrix<T>) -> bool {
    let g = alg.metric();
    (&(&d.transpose() * g) + &(g * d)).is_zero()
}

fn leibniz_rows<T: Field>(alg: &MetricNilAlgebra<T>) -> Matrix<T> {
    let n = alg.dim();
    let idx = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let mut row = vec![T::zero(); n * n];
                // (D [e_i, e_j])_k = sum_m c(i,j,m) d[k][m]
                for m in 0..n {
                    let c = alg.constant(i, j, m);
                    if !c.is_zero() {
                        row[idx(k, m)] = row[idx(k, m)].clone() + c.clone();
                    }
                }
                // - [D e_i, e_j]_k = - sum_a d[a][i] c(a,j,k)
                // - [e_i, D e_j]_k = - sum_a d[a][j] c(i,a,k)
                for a in 0..n {
                    let c1 = alg.constant(a, j, k);
                    if !c1.is_zero() {
                        row[idx(a, i)] = row[idx(a, i)].clone() - c1.clone();
                    }
                    let c2 = alg.constant(i, a, k);
                    if !c2.is_zero() {
                        row[idx(a, j)] = row[idx(a, j)].clone() - c2.clone();
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Matrix::from_rows(rows).pad_cols(n * n)
}

fn skew_rows<T: Field>(alg: &MetricNilAlgebra<T>) -> Matrix<T> {
    let n = alg.dim();
    let g = alg.metric();
    let idx = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            // (D^T g + g D)[i][j] = sum_a d[a][i] g[a][j] + sum_a g[i][a] d[a][j]
            let mut row = vec![T::zero(); n * n];
            for a in 0..n {
                row[idx(a, i)] = row[idx(a, i)].clone() + g.get(a, j).clone();
                row[idx(a, j)] = row[idx(a, j)].clone() + g.get(i, a).clone();
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    Matrix::from_rows(rows).pad_cols(n * n)
}

impl<T: Field> Matrix<T> {
    /// A `0 x cols` matrix stays well-formed when no rows were produced.
    fn pad_cols(self, cols: usize) -> Self {
        if self.rows() == 0 {
            Matrix::zeros(0, cols)
        } else {
            self
        }
    }
}

fn unflatten<T: Field>(n: usize, v: &[T]) -> Matrix<T> {
    Matrix::new(n, n, v.to_vec()).expect("n^2 entries")
}

/// Basis of `Der(n)`.
pub fn derivation_space<T: Field>(alg: &MetricNilAlgebra<T>) -> Vec<Derivation<T>> {
    let n = alg.dim();
    nullspace(&leibniz_rows(alg))
        .into_iter()
        .map(|v| Derivation {
            matrix: unflatten(n, &v),
            skew: false,
        })
        .collect()
}

/// `Der^a(n)`: derivations that are skew for the metric, with computed
/// structure constants.
pub fn skew_derivation_space<T: Field>(alg: &MetricNilAlgebra<T>) -> DerivationAlgebra<T> {
    let n = alg.dim();
    let system = leibniz_rows(alg).vstack(&skew_rows(alg));
    let basis: Vec<Derivation<T>> = nullspace(&system)
        .into_iter()
        .map(|v| Derivation {
            matrix: unflatten(n, &v),
            skew: true,
        })
        .collect();
    let names = (1..=basis.len()).map(|i| format!("D{i}")).collect();
    DerivationAlgebra::assemble(n, basis, names).expect("null space of a Lie subalgebra is closed")
}

/// True iff `d` maps `z` into `z` and `v` into `v`.
pub fn check_preserves_split<T: Field>(d: &Matrix<T>, split: &CenterSplit<T>) -> bool {
    split.z.basis().iter().all(|b| split.z.contains(&d.mul_vec(b)))
        && split.v.basis().iter().all(|b| split.v.contains(&d.mul_vec(b)))
}

/// A finite-dimensional Lie algebra of operators with a chosen basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivationAlgebra<T> {
    algebra_dim: usize,
    basis: Vec<Derivation<T>>,
    names: Vec<String>,
    /// `[D_a, D_b] = sum_c structure[(a*m + b)*m + c] D_c`
    structure: Vec<T>,
}

impl<T: Field> DerivationAlgebra<T> {
    fn assemble(
        algebra_dim: usize,
        basis: Vec<Derivation<T>>,
        names: Vec<String>,
    ) -> Result<Self, DerivationError> {
        let m = basis.len();
        let flat = flattened(algebra_dim, &basis);
        if m > 0 && flat.rank() < m {
            return Err(DerivationError::LinearlyDependent);
        }
        let mut structure = vec![T::zero(); m * m * m];
        for a in 0..m {
            for b in 0..m {
                let comm = basis[a].matrix.commutator(&basis[b].matrix);
                let coords = coordinates_in(&flat, &comm).ok_or(DerivationError::NotClosed(a, b))?;
                for (c, x) in coords.into_iter().enumerate() {
                    structure[(a * m + b) * m + c] = x;
                }
            }
        }
        Ok(Self {
            algebra_dim,
            basis,
            names,
            structure,
        })
    }

    /// Builds the algebra from explicit skew derivations, checking each one
    /// and computing the structure constants.
    pub fn from_matrices(
        alg: &MetricNilAlgebra<T>,
        names: Vec<String>,
        matrices: Vec<Matrix<T>>,
    ) -> Result<Self, DerivationError> {
        let mut basis = Vec::with_capacity(matrices.len());
        for (i, m) in matrices.into_iter().enumerate() {
            if !satisfies_leibniz(alg, &m) {
                return Err(DerivationError::NotADerivation(i));
            }
            if !is_metric_skew(alg, &m) {
                return Err(DerivationError::NotSkew(i));
            }
            basis.push(Derivation { matrix: m, skew: true });
        }
        Self::assemble(alg.dim(), basis, names)
    }

    /// Replaces the basis by `matrices`, which must span the same space.
    pub fn rebase(&self, names: Vec<String>, matrices: Vec<Matrix<T>>) -> Result<Self, DerivationError> {
        if matrices.len() != self.dim() {
            return Err(DerivationError::WrongCount {
                got: matrices.len(),
                expected: self.dim(),
            });
        }
        for (i, m) in matrices.iter().enumerate() {
            if self.coordinates(m).is_none() {
                return Err(DerivationError::NotInSpan(i));
            }
        }
        let skew = self.basis.first().is_none_or(|d| d.skew);
        let basis = matrices
            .into_iter()
            .map(|matrix| Derivation { matrix, skew })
            .collect();
        Self::assemble(self.algebra_dim, basis, names)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn basis(&self) -> &[Derivation<T>] {
        &self.basis
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrices(&self) -> Vec<Matrix<T>> {
        self.basis.iter().map(|d| d.matrix.clone()).collect()
    }

    pub fn constant(&self, a: usize, b: usize, c: usize) -> &T {
        let m = self.dim();
        &self.structure[(a * m + b) * m + c]
    }

    /// Coordinates of `[D_a, D_b]` in the basis.
    pub fn bracket_coords(&self, a: usize, b: usize) -> Vec<T> {
        (0..self.dim()).map(|c| self.constant(a, b, c).clone()).collect()
    }

    /// `sum_a xi[a] D_a`.
    pub fn combine(&self, xi: &[T]) -> Matrix<T> {
        let n = self.algebra_dim;
        self.basis
            .iter()
            .zip(xi)
            .fold(Matrix::zeros(n, n), |acc, (d, x)| &acc + &d.matrix.scale(x))
    }

    /// Coordinates of `m` in the basis, if it lies in the span.
    pub fn coordinates(&self, m: &Matrix<T>) -> Option<Vec<T>> {
        coordinates_in(&flattened(self.algebra_dim, &self.basis), m)
    }

    /// Elements commuting with the whole algebra (as coordinate vectors).
    pub fn center(&self) -> Vec<Vec<T>> {
        let m = self.dim();
        // x in center iff sum_a x_a c(a, b, .) = 0 for every b.
        let rows: Vec<Vec<T>> = (0..m)
            .flat_map(|b| {
                (0..m).map(move |c| (0..m).map(|a| self.constant(a, b, c).clone()).collect())
            })
            .collect();
        if rows.is_empty() {
            return (0..m).map(|i| unit_vector(m, i)).collect();
        }
        nullspace(&Matrix::from_rows(rows))
    }
}

fn flattened<T: Field>(n: usize, basis: &[Derivation<T>]) -> Matrix<T> {
    let cols: Vec<Vec<T>> = basis.iter().map(|d| d.matrix.entries().to_vec()).collect();
    Matrix::from_columns(n * n, &cols)
}

fn coordinates_in<T: Field>(flat: &Matrix<T>, m: &Matrix<T>) -> Option<Vec<T>> {
    if flat.cols() == 0 {
        return m.is_zero().then(Vec::new);
    }
    match solve_affine(flat, m.entries()).ok()? {
        SolutionSet::Unique(x) => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{int, Rational};

    #[test]
    fn abelian_plane_has_all_matrices() {
        assert_eq!(derivation_space(&fixtures::abelian_rpq(2, 0)).len(), 4);
    }

    #[test]
    fn heisenberg_derivations_are_six_dimensional() {
        let der = derivation_space(&fixtures::heis3_riem());
        assert_eq!(der.len(), 6);
        let alg = fixtures::heis3_riem();
        assert!(der.iter().all(|d| satisfies_leibniz(&alg, d.matrix())));
    }

    #[test]
    fn paper6_skew_derivations() {
        let alg = fixtures::paper6_e();
        let dera = skew_derivation_space(&alg);
        assert_eq!(dera.dim(), 4);
        let named = fixtures::paper6_e_derivations();
        for m in &named.matrices {
            assert!(dera.coordinates(m).is_some());
        }
        let der = derivation_space(&alg);
        let full = DerivationAlgebra {
            algebra_dim: 6,
            names: Vec::new(),
            structure: Vec::new(),
            basis: der,
        };
        for m in &named.matrices {
            assert!(full.coordinates(m).is_some());
        }
    }

    #[test]
    fn abelian_skew_is_so_n() {
        for n in 1..=4 {
            let dera = skew_derivation_space(&fixtures::abelian_rpq(n, 0));
            assert_eq!(dera.dim(), n * (n - 1) / 2);
        }
    }

    #[test]
    fn rebase_rejects_outsiders() {
        let alg = fixtures::paper6_e();
        let dera = skew_derivation_space(&alg);
        let mut mats = fixtures::paper6_e_derivations().matrices;
        mats[0] = Matrix::identity(6);
        let names = vec!["a".into(), "b".into(), "c".into(), "d".into()];
        assert_eq!(dera.rebase(names, mats), Err(DerivationError::NotInSpan(0)));
    }

    #[test]
    fn preserves_split() {
        let alg = fixtures::paper6_e();
        let split = alg.split_v_z().unwrap();
        for d in skew_derivation_space(&alg).basis() {
            assert!(check_preserves_split(d.matrix(), &split));
        }
        assert!(check_preserves_split(&Matrix::<Rational>::zeros(6, 6), &split));
        // Skew for the metric but mixes v and z: e1 -> e5, e5 -> e4.
        let mut m = Matrix::<Rational>::zeros(6, 6);
        m.set(4, 0, int(1));
        m.set(3, 4, int(1));
        assert!(is_metric_skew(&alg, &m));
        assert!(!satisfies_leibniz(&alg, &m));
        assert!(!check_preserves_split(&m, &split));
    }
}
