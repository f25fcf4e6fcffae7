//! Nilpotent Lie algebras with a pseudo-Riemannian metric on a fixed basis.
//!
//! Structure constants are stored as the sparse list they were given in and
//! expanded into a dense `dim^3` table for evaluation. Coordinates are always
//! column vectors in the fixed basis; an operator `A` acts by `A e_j = sum_i
//! A[i][j] e_i`.

use thiserror::Error;

use crate::linalg::{
    bilinear, canonical_span, is_zero_vec, nullspace, unit_vector, vec_add, Matrix,
};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constant index ({i}, {j}, {k}) out of range for dimension {dim}")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("metric is {rows}x{cols}, expected {dim}x{dim}")]
    MetricShape { rows: usize, cols: usize, dim: usize },
    #[error("metric restricted to the center is degenerate")]
    DegenerateCenter,
    #[error("change of basis is not invertible")]
    SingularChangeOfBasis,
}

/// One structure constant: `[e_i, e_j]` has `coeff` along `e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstant<T> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricNilAlgebra<T> {
    name: String,
    basis_names: Vec<String>,
    structure: Vec<StructureConstant<T>>,
    table: Vec<T>,
    metric: Matrix<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `c(i,j,k) != -c(j,i,k)`
    Antisymmetry { i: usize, j: usize, k: usize },
    /// Jacobi identity fails on `(e_i, e_j, e_k)`.
    Jacobi { i: usize, j: usize, k: usize },
    MetricNotSymmetric { i: usize, j: usize },
    MetricDegenerate,
    NotNilpotent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Length of the lower central series; `None` when it does not reach zero.
    pub nilpotency_class: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A subspace given by a canonical (row-reduced) basis of coordinate vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<T> {
    ambient_dim: usize,
    basis: Vec<Vec<T>>,
}

impl<T: Field> Subspace<T> {
    /// Spans `vectors`; the stored basis is the reduced echelon basis.
    pub fn span(ambient_dim: usize, vectors: &[Vec<T>]) -> Self {
        Self {
            ambient_dim,
            basis: canonical_span(ambient_dim, vectors),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    /// Columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<T> {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    /// Image under a linear map (columns of `m` in ambient coordinates).
    pub fn image(&self, m: &Matrix<T>) -> Self {
        let imgs: Vec<Vec<T>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Self::span(m.rows(), &imgs)
    }
}

/// The metric-orthogonal splitting `n = v + z` with `z` the center.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterSplit<T> {
    pub v: Subspace<T>,
    pub z: Subspace<T>,
    pub metric_on_v: Matrix<T>,
    pub metric_on_z: Matrix<T>,
    /// Inverse of `[v basis | z basis]`: ambient coordinates to split coordinates.
    to_split: Matrix<T>,
}

impl<T: Field> CenterSplit<T> {
    pub fn dim_v(&self) -> usize {
        self.v.dim()
    }

    pub fn dim_z(&self) -> usize {
        self.z.dim()
    }

    /// Coordinates of `y = X + Z` as (v-coordinates of X, z-coordinates of Z).
    pub fn decompose(&self, y: &[T]) -> (Vec<T>, Vec<T>) {
        let c = self.to_split.mul_vec(y);
        let (xv, zz) = c.split_at(self.dim_v());
        (xv.to_vec(), zz.to_vec())
    }

    pub fn from_v_coords(&self, x: &[T]) -> Vec<T> {
        combine(self.v.ambient_dim(), self.v.basis(), x)
    }

    pub fn from_z_coords(&self, z: &[T]) -> Vec<T> {
        combine(self.z.ambient_dim(), self.z.basis(), z)
    }

    /// Ambient projections `(X, Z)` of `y`.
    pub fn project(&self, y: &[T]) -> (Vec<T>, Vec<T>) {
        let (x, z) = self.decompose(y);
        (self.from_v_coords(&x), self.from_z_coords(&z))
    }

    /// v-coordinates of an ambient vector lying in v.
    pub fn v_coords(&self, x: &[T]) -> Vec<T> {
        self.decompose(x).0
    }

    pub fn z_coords(&self, z: &[T]) -> Vec<T> {
        self.decompose(z).1
    }
}

fn combine<T: Field>(n: usize, basis: &[Vec<T>], coeffs: &[T]) -> Vec<T> {
    basis
        .iter()
        .zip(coeffs)
        .fold(vec![T::zero(); n], |acc, (b, c)| {
            vec_add(&acc, &b.iter().map(|x| x.clone() * c.clone()).collect::<Vec<_>>())
        })
}

impl<T: Field> MetricNilAlgebra<T> {
    /// Builds an algebra from brackets listed once per pair: each entry
    /// `(i, j, k, c)` also implies `c(j, i, k) = -c`.
    pub fn from_brackets(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Vec<StructureConstant<T>>,
        metric: Matrix<T>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        check_shapes(dim, &brackets, &metric)?;
        let mut table = vec![T::zero(); dim * dim * dim];
        for sc in &brackets {
            let a = (sc.i * dim + sc.j) * dim + sc.k;
            let b = (sc.j * dim + sc.i) * dim + sc.k;
            table[a] = table[a].clone() + sc.coeff.clone();
            table[b] = table[b].clone() - sc.coeff.clone();
        }
        Ok(Self {
            name: name.into(),
            basis_names,
            structure: brackets,
            table,
            metric,
        })
    }

    /// Builds an algebra from a raw list of constants taken literally; no
    /// antisymmetry is imposed, so [`validate`](Self::validate) can report it.
    pub fn from_raw_structure(
        name: impl Into<String>,
        basis_names: Vec<String>,
        structure: Vec<StructureConstant<T>>,
        metric: Matrix<T>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        check_shapes(dim, &structure, &metric)?;
        let mut table = vec![T::zero(); dim * dim * dim];
        for sc in &structure {
            let a = (sc.i * dim + sc.j) * dim + sc.k;
            table[a] = table[a].clone() + sc.coeff.clone();
        }
        Ok(Self {
            name: name.into(),
            basis_names,
            structure,
            table,
            metric,
        })
    }

    /// Dense constructor; `brackets(i, j)` must return `[e_i, e_j]` for `i < j`.
    pub fn from_bracket_fn(
        name: impl Into<String>,
        basis_names: Vec<String>,
        metric: Matrix<T>,
        mut brackets: impl FnMut(usize, usize) -> Vec<T>,
    ) -> Result<Self, AlgebraError> {
        let dim = basis_names.len();
        let mut list = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for (k, coeff) in brackets(i, j).into_iter().enumerate() {
                    if !coeff.is_zero() {
                        list.push(StructureConstant { i, j, k, coeff });
                    }
                }
            }
        }
        Self::from_brackets(name, basis_names, list, metric)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn structure(&self) -> &[StructureConstant<T>] {
        &self.structure
    }

    pub fn metric(&self) -> &Matrix<T> {
        &self.metric
    }

    /// `c(i, j, k)`: coefficient of `e_k` in `[e_i, e_j]`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &T {
        let n = self.dim();
        &self.table[(i * n + j) * n + k]
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<T> {
        (0..self.dim()).map(|k| self.constant(i, j, k).clone()).collect()
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim();
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let w = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        out
    }

    pub fn inner(&self, x: &[T], y: &[T]) -> T {
        bilinear(&self.metric, x, y)
    }

    /// Matrix of `ad_x`.
    pub fn ad(&self, x: &[T]) -> Matrix<T> {
        let n = self.dim();
        let cols: Vec<Vec<T>> = (0..n)
            .map(|j| self.bracket(x, &unit_vector(n, j)))
            .collect();
        Matrix::from_columns(n, &cols)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let s = self.constant(i, j, k).clone() + self.constant(j, i, k).clone();
                    if !s.is_zero() {
                        violations.push(Violation::Antisymmetry { i, j, k });
                    }
                }
            }
        }
        let e = |i| unit_vector::<T>(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if !is_zero_vec(&vec_add(&vec_add(&a, &b), &c)) {
                        violations.push(Violation::Jacobi { i, j, k });
                    }
                }
            }
        }
        if self.metric.rows() == n {
            for i in 0..n {
                for j in i + 1..n {
                    if self.metric.get(i, j) != self.metric.get(j, i) {
                        violations.push(Violation::MetricNotSymmetric { i, j });
                    }
                }
            }
            if self.metric.determinant().is_zero() {
                violations.push(Violation::MetricDegenerate);
            }
        }
        let nilpotency_class = self.nilpotency_class();
        if nilpotency_class.is_none() {
            violations.push(Violation::NotNilpotent);
        }
        ValidationReport {
            violations,
            nilpotency_class,
        }
    }

    /// Smallest `c` with `C^{c+1}(n) = 0` for the lower central series
    /// `C^1 = n`, `C^{k+1} = [n, C^k]`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let n = self.dim();
        let mut current: Vec<Vec<T>> = (0..n).map(|i| unit_vector(n, i)).collect();
        let mut class = 0;
        while !current.is_empty() {
            if class > n {
                return None;
            }
            let mut next = Vec::new();
            for i in 0..n {
                for c in &current {
                    let b = self.bracket(&unit_vector(n, i), c);
                    if !is_zero_vec(&b) {
                        next.push(b);
                    }
                }
            }
            current = canonical_span(n, &next);
            class += 1;
        }
        Some(class)
    }

    pub fn center(&self) -> Subspace<T> {
        let n = self.dim();
        let mut stacked = Matrix::zeros(0, n);
        for i in 0..n {
            stacked = stacked.vstack(&self.ad(&unit_vector(n, i)));
        }
        Subspace::span(n, &nullspace(&stacked))
    }

    /// `v = z^perp` with `z` the center; fails when the metric on `z` is
    /// degenerate.
    pub fn split_v_z(&self) -> Result<CenterSplit<T>, AlgebraError> {
        let n = self.dim();
        let z = self.center();
        let bz = z.basis_matrix();
        let metric_on_z = &(&bz.transpose() * &self.metric) * &bz;
        if metric_on_z.determinant().is_zero() {
            return Err(AlgebraError::DegenerateCenter);
        }
        let constraints = &bz.transpose() * &self.metric;
        let v = Subspace::span(n, &nullspace(&constraints));
        let bv = v.basis_matrix();
        let metric_on_v = &(&bv.transpose() * &self.metric) * &bv;
        let to_split = bv
            .hstack(&bz)
            .inverse()
            .ok_or(AlgebraError::DegenerateCenter)?;
        Ok(CenterSplit {
            v,
            z,
            metric_on_v,
            metric_on_z,
            to_split,
        })
    }

    /// The operator `j(Z)` on `v` (in v-coordinates), defined by
    /// `<j(Z) X, X'> = <Z, [X, X']>`. `z` is given in z-coordinates.
    pub fn j_map(&self, split: &CenterSplit<T>, z: &[T]) -> Matrix<T> {
        let zz = split.from_z_coords(z);
        let vb = split.v.basis();
        let m = vb.len();
        // pairing[b][c] = <Z, [v_b, v_c]>, and J^T G_v = pairing.
        let pairing = Matrix::from_fn(m, m, |b, c| self.inner(&zz, &self.bracket(&vb[b], &vb[c])));
        let gv_inv = split
            .metric_on_v
            .inverse()
            .expect("metric on v is nondegenerate when the center is");
        &gv_inv * &pairing.transpose()
    }

    /// `j(Z) X` for ambient `z` (central) and `x` (in v); ambient result.
    pub fn j_apply(&self, split: &CenterSplit<T>, z: &[T], x: &[T]) -> Vec<T> {
        let j = self.j_map(split, &split.z_coords(z));
        split.from_v_coords(&j.mul_vec(&split.v_coords(x)))
    }

    /// First basis triple `(i, j, k)` with `<[e_i,e_j],e_k> + <e_j,[e_i,e_k]> != 0`.
    pub fn ad_invariance_witness(&self) -> Option<(usize, usize, usize, T)> {
        let n = self.dim();
        let e = |i| unit_vector::<T>(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = self.inner(&self.basis_bracket(i, j), &e(k))
                        + self.inner(&e(j), &self.basis_bracket(i, k));
                    if !v.is_zero() {
                        return Some((i, j, k, v));
                    }
                }
            }
        }
        None
    }

    pub fn is_ad_invariant(&self) -> bool {
        self.ad_invariance_witness().is_none()
    }

    /// Polarized pseudo-H-type test:
    /// `j(Z_a) j(Z_b) + j(Z_b) j(Z_a) = -2 <Z_a, Z_b> Id` on all z-basis pairs.
    pub fn is_pseudo_h_type(&self, split: &CenterSplit<T>) -> bool {
        let q = split.dim_z();
        let p = split.dim_v();
        let js: Vec<Matrix<T>> = (0..q)
            .map(|a| self.j_map(split, &unit_vector(q, a)))
            .collect();
        let two = T::one() + T::one();
        for a in 0..q {
            for b in a..q {
                let anti = &(&js[a] * &js[b]) + &(&js[b] * &js[a]);
                let target = Matrix::identity(p).scale(&-(two.clone() * split.metric_on_z.get(a, b).clone()));
                if anti != target {
                    return false;
                }
            }
        }
        true
    }

    /// Re-expresses the algebra in the basis given by the columns of `p`:
    /// brackets become `p^{-1}[p e_i, p e_j]` and the metric `p^T g p`.
    pub fn change_basis(
        &self,
        name: impl Into<String>,
        basis_names: Vec<String>,
        p: &Matrix<T>,
    ) -> Result<Self, AlgebraError> {
        let n = self.dim();
        let p_inv = p.inverse().ok_or(AlgebraError::SingularChangeOfBasis)?;
        let cols: Vec<Vec<T>> = (0..n).map(|i| p.column(i)).collect();
        let metric = &(&p.transpose() * &self.metric) * p;
        Self::from_bracket_fn(name, basis_names, metric, |i, j| {
            p_inv.mul_vec(&self.bracket(&cols[i], &cols[j]))
        })
    }

    /// True when `a` preserves brackets: `a[x, y] = [a x, a y]` on basis pairs.
    pub fn is_automorphism(&self, a: &Matrix<T>) -> bool {
        let n = self.dim();
        if a.determinant().is_zero() {
            return false;
        }
        let cols: Vec<Vec<T>> = (0..n).map(|i| a.column(i)).collect();
        (0..n).all(|i| {
            (i + 1..n).all(|j| a.mul_vec(&self.basis_bracket(i, j)) == self.bracket(&cols[i], &cols[j]))
        })
    }

    /// True when `a^T g a = g`.
    pub fn is_isometry(&self, a: &Matrix<T>) -> bool {
        &(&a.transpose() * &self.metric) * a == self.metric
    }

    /// Same brackets and metric (names ignored).
    pub fn same_structure(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.table == other.table && self.metric == other.metric
    }
}

fn check_shapes<T: Field>(
    dim: usize,
    structure: &[StructureConstant<T>],
    metric: &Matrix<T>,
) -> Result<(), AlgebraError> {
    if metric.rows() != dim || metric.cols() != dim {
        return Err(AlgebraError::MetricShape {
            rows: metric.rows(),
            cols: metric.cols(),
            dim,
        });
    }
    for sc in structure {
        if sc.i >= dim || sc.j >= dim || sc.k >= dim {
            return Err(AlgebraError::IndexOutOfRange {
                i: sc.i,
                j: sc.j,
                k: sc.k,
                dim,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::{int, rat, Rational};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn units(n: usize, terms: &[(i64, usize, usize)]) -> Matrix<Rational> {
        let mut m = Matrix::zeros(n, n);
        for &(c, i, j) in terms {
            m.set(i - 1, j - 1, int(c));
        }
        m
    }

    #[test]
    fn paper6_is_valid_class_two() {
        let report = fixtures::paper6_x().validate();
        assert!(report.is_valid(), "{report:?}");
        assert_eq!(report.nilpotency_class, Some(2));
        assert_eq!(fixtures::paper6_e().validate().nilpotency_class, Some(2));
    }

    #[test]
    fn singular_metric_is_reported() {
        let alg = fixtures::paper6_x();
        let mut g = alg.metric().clone();
        g.set(4, 5, int(0));
        g.set(5, 4, int(0));
        let bad = MetricNilAlgebra::from_brackets(
            "bad",
            alg.basis_names().to_vec(),
            alg.structure().to_vec(),
            g,
        )
        .unwrap();
        let report = bad.validate();
        assert_eq!(report.violations, vec![Violation::MetricDegenerate]);
    }

    #[test]
    fn abelian_is_class_one() {
        let report = fixtures::abelian_rpq(3, 0).validate();
        assert!(report.is_valid());
        assert_eq!(report.nilpotency_class, Some(1));
    }

    #[test]
    fn raw_structure_reports_antisymmetry_and_jacobi() {
        let alg = MetricNilAlgebra::from_raw_structure(
            "raw",
            vec!["a".into(), "b".into()],
            vec![StructureConstant { i: 0, j: 1, k: 1, coeff: int(1) }],
            Matrix::identity(2),
        )
        .unwrap();
        let report = alg.validate();
        assert!(report.violations.contains(&Violation::Antisymmetry { i: 0, j: 1, k: 1 }));
        // [a, b] = b is solvable, not nilpotent.
        let solvable = MetricNilAlgebra::from_brackets(
            "aff",
            vec!["a".into(), "b".into()],
            vec![StructureConstant { i: 0, j: 1, k: 1, coeff: int(1) }],
            Matrix::identity(2),
        )
        .unwrap();
        assert_eq!(solvable.validate().violations, vec![Violation::NotNilpotent]);
        // so(3)-like brackets break nothing but nilpotency; a bad Jacobi example:
        let jac = MetricNilAlgebra::from_brackets(
            "nojacobi",
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                StructureConstant { i: 0, j: 1, k: 2, coeff: int(1) },
                StructureConstant { i: 1, j: 2, k: 3, coeff: int(1) },
            ],
            Matrix::identity(4),
        )
        .unwrap();
        // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 + 0 + 0; nilpotent and Jacobi-valid.
        assert!(jac.validate().is_valid());
        let broken = MetricNilAlgebra::from_brackets(
            "broken",
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                StructureConstant { i: 0, j: 1, k: 2, coeff: int(1) },
                StructureConstant { i: 0, j: 2, k: 3, coeff: int(1) },
                StructureConstant { i: 1, j: 2, k: 3, coeff: int(1) },
                StructureConstant { i: 1, j: 3, k: 2, coeff: int(1) },
            ],
            Matrix::identity(4),
        )
        .unwrap();
        assert!(broken
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Jacobi { .. })));
    }

    #[test]
    fn e_basis_brackets() {
        let alg = fixtures::paper6_e();
        let e = |i| crate::linalg::unit_vector::<Rational>(6, i);
        assert_eq!(
            alg.bracket(&e(0), &e(2)),
            vec![int(0), int(0), int(0), int(0), rat(1, 2), rat(-1, 2)]
        );
        assert_eq!(alg.bracket(&e(1), &e(3)), v(&[0, 0, 0, 0, 2, 2]));
        assert_eq!(alg.bracket(&e(3), &e(1)), v(&[0, 0, 0, 0, -2, -2]));
    }

    #[test]
    fn centers() {
        let z = fixtures::paper6_x().center();
        assert_eq!(z.basis(), &[v(&[0, 0, 0, 0, 1, 0]), v(&[0, 0, 0, 0, 0, 1])]);
        assert_eq!(fixtures::abelian_rpq(2, 1).center().dim(), 3);
        let h3 = fixtures::heis3_riem().center();
        assert_eq!(h3.basis(), &[v(&[0, 0, 1])]);
    }

    #[test]
    fn splits() {
        let split = fixtures::paper6_x().split_v_z().unwrap();
        assert_eq!(split.dim_v(), 4);
        for (i, b) in split.v.basis().iter().enumerate() {
            assert_eq!(b, &crate::linalg::unit_vector::<Rational>(6, i));
        }
        let flat = fixtures::abelian_rpq(3, 0).split_v_z().unwrap();
        assert_eq!((flat.dim_v(), flat.dim_z()), (0, 3));
        let null_center = fixtures::heis3_lorentz_degenerate();
        assert_eq!(null_center.metric().determinant(), int(-1));
        assert_eq!(null_center.split_v_z().unwrap_err(), AlgebraError::DegenerateCenter);
    }

    #[test]
    fn j_maps_in_x_basis() {
        let alg = fixtures::paper6_x();
        let split = alg.split_v_z().unwrap();
        let j5 = alg.j_map(&split, &v(&[1, 0]));
        let j6 = alg.j_map(&split, &v(&[0, 1]));
        assert_eq!(j5, units(4, &[(-2, 1, 2), (-2, 3, 4)]));
        assert_eq!(j6, units(4, &[(2, 2, 1), (2, 4, 3)]));
        // j(X5) X1 = 0 and j(X5) X2 = -2 X1.
        assert_eq!(j5.mul_vec(&v(&[1, 0, 0, 0])), v(&[0, 0, 0, 0]));
        assert_eq!(j5.mul_vec(&v(&[0, 1, 0, 0])), v(&[-2, 0, 0, 0]));
    }

    #[test]
    fn j_map_in_e_basis_squares_to_minus_norm() {
        let alg = fixtures::paper6_e();
        let split = alg.split_v_z().unwrap();
        let j = alg.j_map(&split, &v(&[1, 1]));
        // j(e5 + e6): null central vector, so j^2 = 0.
        assert!((&j * &j).is_zero());
        // e1 -> e2, e3 -> e4, e2 and e4 -> 0.
        assert_eq!(j, units(4, &[(1, 2, 1), (1, 4, 3)]));
    }

    #[test]
    fn ad_invariance() {
        let (i, j, k, val) = fixtures::paper6_x().ad_invariance_witness().unwrap();
        assert_eq!((i, j, k, val), (0, 2, 5, int(2)));
        assert!(fixtures::abelian_rpq(1, 2).is_ad_invariant());
        assert!(fixtures::cotangent_h3().is_ad_invariant());
        assert!(!fixtures::heis3_riem().is_ad_invariant());
        assert!(!fixtures::heis3_lorentz_degenerate().is_ad_invariant());
    }

    #[test]
    fn pseudo_h_type() {
        let alg = fixtures::paper6_x();
        assert!(alg.is_pseudo_h_type(&alg.split_v_z().unwrap()));
        let h3 = fixtures::heis3_riem();
        assert!(h3.is_pseudo_h_type(&h3.split_v_z().unwrap()));
        // h3 + R: the flat central direction has j = 0 but nonzero norm.
        let h3r = MetricNilAlgebra::from_brackets(
            "h3r",
            vec!["x".into(), "y".into(), "z".into(), "w".into()],
            vec![StructureConstant { i: 0, j: 1, k: 2, coeff: int(1) }],
            Matrix::identity(4),
        )
        .unwrap();
        assert!(!h3r.is_pseudo_h_type(&h3r.split_v_z().unwrap()));
    }

    #[test]
    fn cotangent_is_two_step_with_degenerate_center() {
        let alg = fixtures::cotangent_h3();
        let report = alg.validate();
        assert!(report.is_valid(), "{report:?}");
        assert_eq!(report.nilpotency_class, Some(2));
        assert_eq!(alg.center().dim(), 3);
        assert_eq!(alg.split_v_z().unwrap_err(), AlgebraError::DegenerateCenter);
    }

    #[test]
    fn filiform_is_class_three() {
        assert_eq!(fixtures::filiform4().validate().nilpotency_class, Some(3));
    }
}
