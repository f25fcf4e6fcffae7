//! Dense matrices over a field with exact row reduction.
//!
//! Everything here is generic over [`Field`]; the algebraic decisions in the
//! crate instantiate it with [`crate::Rational`] so every rank, null space and
//! solution set is exact. Pivoting takes the first nonzero entry in a column.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry count {len} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, len: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// Output of [`rref`].
#[derive(Debug, Clone, PartialEq)]
pub struct Rref<T> {
    pub reduced: Matrix<T>,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

/// Full solution set of a linear system `a x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionSet<T> {
    Empty,
    Unique(Vec<T>),
    /// `particular` has every free variable set to zero; `nullspace` lists one
    /// basis vector per free variable, in increasing free-column order.
    Family {
        particular: Vec<T>,
        nullspace: Vec<Vec<T>>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Empty,
    Unique,
    Family,
}

impl<T> SolutionSet<T> {
    pub fn kind(&self) -> SolutionKind {
        match self {
            SolutionSet::Empty => SolutionKind::Empty,
            SolutionSet::Unique(_) => SolutionKind::Unique,
            SolutionSet::Family { .. } => SolutionKind::Family,
        }
    }

    pub fn particular(&self) -> Option<&[T]> {
        match self {
            SolutionSet::Empty => None,
            SolutionSet::Unique(x) => Some(x),
            SolutionSet::Family { particular, .. } => Some(particular),
        }
    }

    pub fn nullspace(&self) -> &[Vec<T>] {
        match self {
            SolutionSet::Family { nullspace, .. } => nullspace,
            _ => &[],
        }
    }
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for row in rows {
            assert_eq!(row.len(), m, "ragged rows");
            data.extend(row);
        }
        Self {
            rows: n,
            cols: m,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(len, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "mul_vec dimension mismatch");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    /// `[a, b] = a b - b a`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    pub fn rref(&self) -> Rref<T> {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn nullspace(&self) -> Vec<Vec<T>> {
        nullspace(self)
    }

    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let factor = m.get(r, col).clone() / pivot.clone();
                if !factor.is_zero() {
                    m.add_row_multiple(r, col, &-factor);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let red = rref(&aug);
        if red.pivot_columns.iter().take_while(|&&c| c < n).count() < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(red.reduced.submatrix(&rows, &cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &T) {
        for c in 0..self.cols {
            let s = self.get(source, c).clone();
            if s.is_zero() {
                continue;
            }
            let t = self.get(target, c).clone();
            self.set(target, c, t + factor.clone() * s);
        }
    }

    fn scale_row(&mut self, r: usize, factor: &T) {
        for c in 0..self.cols {
            let v = self.get(r, c).clone();
            self.set(r, c, v * factor.clone());
        }
    }
}

pub fn dot<T: Field>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `x^T g y` for a square Gram matrix `g`.
pub fn bilinear<T: Field>(g: &Matrix<T>, x: &[T], y: &[T]) -> T {
    dot(x, &g.mul_vec(y))
}

pub fn vec_add<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_scale<T: Field>(s: &T, a: &[T]) -> Vec<T> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn is_zero_vec<T: Field>(a: &[T]) -> bool {
    a.iter().all(T::is_zero)
}

pub fn unit_vector<T: Field>(n: usize, i: usize) -> Vec<T> {
    (0..n)
        .map(|k| if k == i { T::one() } else { T::zero() })
        .collect()
}

/// Reduced row-echelon form with first-nonzero pivoting.
pub fn rref<T: Field>(m: &Matrix<T>) -> Rref<T> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        a.swap_rows(p, row);
        let inv = T::one() / a.get(row, col).clone();
        a.scale_row(row, &inv);
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if !factor.is_zero() {
                a.add_row_multiple(r, row, &-factor);
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: a,
        pivot_columns: pivots,
        rank,
    }
}

fn free_columns(cols: usize, pivots: &[usize]) -> Vec<usize> {
    (0..cols).filter(|c| !pivots.contains(c)).collect()
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn nullspace<T: Field>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let red = rref(a);
    nullspace_from_rref(&red, a.cols)
}

fn nullspace_from_rref<T: Field>(red: &Rref<T>, cols: usize) -> Vec<Vec<T>> {
    free_columns(cols, &red.pivot_columns)
        .into_iter()
        .map(|free| {
            let mut v = vec![T::zero(); cols];
            v[free] = T::one();
            for (i, &p) in red.pivot_columns.iter().enumerate() {
                v[p] = -red.reduced.get(i, free).clone();
            }
            v
        })
        .collect()
}

/// Complete affine solution set of `a x = b`. Consistency is decided by
/// comparing `rank(a)` with `rank(a | b)`.
pub fn solve_affine<T: Field>(a: &Matrix<T>, b: &[T]) -> Result<SolutionSet<T>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} rows, right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let aug = a.hstack(&Matrix::from_columns(b.len(), &[b.to_vec()]));
    let red = rref(&aug);
    if red.pivot_columns.last() == Some(&n) {
        return Ok(SolutionSet::Empty);
    }
    let mut particular = vec![T::zero(); n];
    for (i, &p) in red.pivot_columns.iter().enumerate() {
        particular[p] = red.reduced.get(i, n).clone();
    }
    let nullspace = nullspace_from_rref(&red, n);
    if nullspace.is_empty() {
        Ok(SolutionSet::Unique(particular))
    } else {
        Ok(SolutionSet::Family {
            particular,
            nullspace,
        })
    }
}

/// Row-reduced basis of the span of `vectors` (nonzero rows of the RREF).
pub fn canonical_span<T: Field>(len: usize, vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.cols(), len);
    let red = rref(&m);
    (0..red.rank).map(|r| red.reduced.row(r).to_vec()).collect()
}

impl<T: Field> Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }
}

impl<T: Field> Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_add(&self.data, &rhs.data),
        }
    }
}

impl<T: Field> Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: vec_sub(&self.data, &rhs.data),
        }
    }
}

impl<T: Field> Neg for &Matrix<T> {
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = rref(&Matrix::<Rational>::identity(3));
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
        assert_eq!(rref(&Matrix::<Rational>::zeros(2, 4)).rank, 0);
    }

    #[test]
    fn rref_of_geodesic_coefficient_rows() {
        // x = (0,1,1,0), z = (1,0): rows (x1,x1,x3,0), (-x2,x2,x4,0),
        // (x3,-x3,0,x1), (-x4,-x4,0,x2), (-2z6,0,0,0), (-2z5,0,0,0).
        let a = m(&[
            &[0, 0, 1, 0],
            &[-1, 1, 0, 0],
            &[1, -1, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 0, 0],
            &[-2, 0, 0, 0],
        ]);
        assert_eq!(rref(&a).rank, 4);
    }

    #[test]
    fn solve_affine_cases() {
        let i2 = Matrix::<Rational>::identity(2);
        assert_eq!(
            solve_affine(&i2, &v(&[1, 2])).unwrap(),
            SolutionSet::Unique(v(&[1, 2]))
        );
        let z = Matrix::<Rational>::zeros(2, 2);
        assert_eq!(solve_affine(&z, &v(&[1, 0])).unwrap(), SolutionSet::Empty);
        let fam = solve_affine(&z, &v(&[0, 0])).unwrap();
        assert_eq!(fam.kind(), SolutionKind::Family);
        assert_eq!(fam.nullspace().len(), 2);
        assert_eq!(fam.particular().unwrap(), v(&[0, 0]).as_slice());
        assert!(matches!(
            solve_affine(&i2, &v(&[1])),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn family_free_variables_in_column_order() {
        // x0 + x2 = 1: free columns 1 and 2.
        let a = m(&[&[1, 0, 1]]);
        let sol = solve_affine(&a, &v(&[1])).unwrap();
        assert_eq!(sol.particular().unwrap(), v(&[1, 0, 0]).as_slice());
        assert_eq!(sol.nullspace(), &[v(&[0, 1, 0]), v(&[-1, 0, 1])]);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::<Rational>::identity(3)).is_empty());
        assert_eq!(nullspace(&m(&[&[1, 1]])), vec![v(&[-1, 1])]);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1], &[7, 4]]);
        assert_eq!(a.determinant(), int(1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        let s = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.determinant(), int(0));
        assert!(s.inverse().is_none());
        let p = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.determinant(), int(-1));
        assert_eq!(Matrix::from_rows(vec![vec![rat(1, 2)]]).determinant(), rat(1, 2));
    }

    #[test]
    fn entry_count_checked() {
        assert!(Matrix::<Rational>::new(2, 2, v(&[1, 2, 3])).is_err());
    }
}
