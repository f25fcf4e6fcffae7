//! Geodesic vectors of a metric nilpotent Lie algebra.
//!
//! `Y + D` (with `D` a skew derivation) is a geodesic vector with constant
//! `k` when `<D U + [Y, U], Y> = k <Y, U>` for every `U`. In a 2-step
//! algebra with nondegenerate center this is equivalent to
//! `D Z = -k Z` and `(D + k) X = j(Z) X` for `Y = X + Z`, which is linear in
//! the unknowns `(xi, k)` once `D = sum xi_a D_a`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, CenterSplit, MetricNilAlgebra};
use crate::derivations::DerivationAlgebra;
use crate::linalg::{is_zero_vec, solve_affine, unit_vector, vec_add, vec_scale, Matrix, SolutionSet};
use crate::scalar::{int, rat, rational_sqrt, Field, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeodesicStatus {
    NotGeodesic,
    Unique,
    Family,
}

/// One direction of an affine family of solutions.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyDirection<T> {
    pub xi: Vec<T>,
    pub k: T,
}

/// Solution set of the geodesic system in `(xi, k)`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicSolution<T> {
    NotGeodesic,
    Unique { xi: Vec<T>, k: T },
    /// `xi`, `k` is the representative with all free variables zero.
    Family {
        xi: Vec<T>,
        k: T,
        directions: Vec<FamilyDirection<T>>,
    },
}

impl<T: Field> GeodesicSolution<T> {
    fn from_solution_set(set: SolutionSet<T>, m: usize) -> Self {
        let split = |v: &[T]| (v[..m].to_vec(), v[m].clone());
        match set {
            SolutionSet::Empty => Self::NotGeodesic,
            SolutionSet::Unique(v) => {
                let (xi, k) = split(&v);
                Self::Unique { xi, k }
            }
            SolutionSet::Family {
                particular,
                nullspace,
            } => {
                let (xi, k) = split(&particular);
                let directions = nullspace
                    .iter()
                    .map(|d| {
                        let (xi, k) = split(d);
                        FamilyDirection { xi, k }
                    })
                    .collect();
                Self::Family { xi, k, directions }
            }
        }
    }

    pub fn status(&self) -> GeodesicStatus {
        match self {
            Self::NotGeodesic => GeodesicStatus::NotGeodesic,
            Self::Unique { .. } => GeodesicStatus::Unique,
            Self::Family { .. } => GeodesicStatus::Family,
        }
    }

    pub fn is_geodesic(&self) -> bool {
        !matches!(self, Self::NotGeodesic)
    }

    pub fn xi(&self) -> Option<&[T]> {
        match self {
            Self::NotGeodesic => None,
            Self::Unique { xi, .. } | Self::Family { xi, .. } => Some(xi),
        }
    }

    pub fn k(&self) -> Option<&T> {
        match self {
            Self::NotGeodesic => None,
            Self::Unique { k, .. } | Self::Family { k, .. } => Some(k),
        }
    }

    pub fn directions(&self) -> &[FamilyDirection<T>] {
        match self {
            Self::Family { directions, .. } => directions,
            _ => &[],
        }
    }

    /// True when every solution shares the same `k`.
    pub fn k_forced(&self) -> bool {
        self.directions().iter().all(|d| d.k.is_zero())
    }

    /// Whether `(xi, k)` belongs to the solution set.
    pub fn contains(&self, xi: &[T], k: &T) -> bool {
        let (Some(p_xi), Some(p_k)) = (self.xi(), self.k()) else {
            return false;
        };
        if xi.len() != p_xi.len() {
            return false;
        }
        let mut diff: Vec<T> = xi.iter().zip(p_xi).map(|(a, b)| a.clone() - b.clone()).collect();
        diff.push(k.clone() - p_k.clone());
        let dirs = self.directions();
        if dirs.is_empty() {
            return is_zero_vec(&diff);
        }
        let cols: Vec<Vec<T>> = dirs
            .iter()
            .map(|d| {
                let mut c = d.xi.clone();
                c.push(d.k.clone());
                c
            })
            .collect();
        let a = Matrix::from_columns(diff.len(), &cols);
        !matches!(solve_affine(&a, &diff), Ok(SolutionSet::Empty) | Err(_))
    }

    /// Whether some member of the solution set has constant `k`.
    pub fn admits_k(&self, k: &T) -> bool {
        match self.k() {
            None => false,
            Some(p) => p == k || !self.k_forced(),
        }
    }

    /// The member `particular + sum t_i direction_i`.
    pub fn member(&self, params: &[T]) -> Option<(Vec<T>, T)> {
        let mut xi = self.xi()?.to_vec();
        let mut k = self.k()?.clone();
        for (d, t) in self.directions().iter().zip(params) {
            xi = vec_add(&xi, &vec_scale(t, &d.xi));
            k = k + d.k.clone() * t.clone();
        }
        Some((xi, k))
    }
}

/// Evaluates the Geodesic Lemma on every basis vector `U`.
pub fn geodesic_lemma_check<T: Field>(
    alg: &MetricNilAlgebra<T>,
    y: &[T],
    d: Option<&Matrix<T>>,
    k: &T,
) -> bool {
    let n = alg.dim();
    (0..n).all(|u| {
        let e = unit_vector(n, u);
        let mut w = alg.bracket(y, &e);
        if let Some(d) = d {
            w = vec_add(&w, &d.column(u));
        }
        alg.inner(&w, y) == k.clone() * alg.inner(y, &e)
    })
}

/// Solves `D Y + k Y = j(Z) X` in split coordinates, unknowns
/// `(xi_1..xi_m, k)` with `D = sum xi_a D_a`.
pub fn solve_geodesic_system<T: Field>(
    alg: &MetricNilAlgebra<T>,
    split: &CenterSplit<T>,
    dera: &DerivationAlgebra<T>,
    y: &[T],
) -> GeodesicSolution<T> {
    let (xc, zc) = split.decompose(y);
    let jx = alg.j_map(split, &zc).mul_vec(&xc);
    let mut cols: Vec<Vec<T>> = dera
        .basis()
        .iter()
        .map(|d| {
            let (a, b) = split.decompose(&d.matrix().mul_vec(y));
            [a, b].concat()
        })
        .collect();
    cols.push([xc, zc.clone()].concat());
    let rhs = [jx, vec![T::zero(); zc.len()]].concat();
    let a = Matrix::from_columns(alg.dim(), &cols);
    let set = solve_affine(&a, &rhs).expect("shapes agree by construction");
    GeodesicSolution::from_solution_set(set, dera.dim())
}

/// Solves the Geodesic Lemma directly, one row per basis vector:
/// `sum xi_a <D_a e_u, Y> - k <Y, e_u> = -<[Y, e_u], Y>`.
/// Needs no splitting; with `dera = None` only `k` is unknown.
pub fn solve_geodesic_lemma<T: Field>(
    alg: &MetricNilAlgebra<T>,
    dera: Option<&DerivationAlgebra<T>>,
    y: &[T],
) -> GeodesicSolution<T> {
    let n = alg.dim();
    let ds = dera.map(|d| d.matrices()).unwrap_or_default();
    let m = ds.len();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for u in 0..n {
        let e = unit_vector(n, u);
        let mut row: Vec<T> = ds.iter().map(|d| alg.inner(&d.column(u), y)).collect();
        row.push(-alg.inner(y, &e));
        rows.push(row);
        rhs.push(-alg.inner(&alg.bracket(y, &e), y));
    }
    let a = Matrix::new(n, m + 1, rows.concat()).expect("n x (m+1)");
    let set = solve_affine(&a, &rhs).expect("shapes agree by construction");
    GeodesicSolution::from_solution_set(set, m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrivialIsotropy<T> {
    pub geodesic: bool,
    pub k: T,
}

/// Geodesic test for the presentation `N = N / {e}`: geodesic iff
/// `j(Z) X = 0`, and then `k = 0`.
pub fn trivial_isotropy_check<T: Field>(
    alg: &MetricNilAlgebra<T>,
    split: &CenterSplit<T>,
    y: &[T],
) -> TrivialIsotropy<T> {
    let (xc, zc) = split.decompose(y);
    let jx = alg.j_map(split, &zc).mul_vec(&xc);
    TrivialIsotropy {
        geodesic: is_zero_vec(&jx),
        k: T::zero(),
    }
}

/// `N` is g.o. as a Lie group with its left-invariant metric iff the metric
/// is bi-invariant.
pub fn go_lie_group_check<T: Field>(alg: &MetricNilAlgebra<T>) -> bool {
    alg.is_ad_invariant()
}

/// A vector `Y` with optional isotropy part `D` and constant `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicCandidate<T> {
    pub y: Vec<T>,
    /// `(X, Z)` in ambient coordinates, when a split is known.
    pub parts: Option<(Vec<T>, Vec<T>)>,
    pub d: Option<Matrix<T>>,
    pub k: Option<T>,
}

impl<T: Field> GeodesicCandidate<T> {
    pub fn new(y: Vec<T>) -> Self {
        Self {
            y,
            parts: None,
            d: None,
            k: None,
        }
    }

    pub fn with_split(mut self, split: &CenterSplit<T>) -> Self {
        self.parts = Some(split.project(&self.y));
        self
    }

    /// The member of `solution` with all free parameters zero.
    pub fn from_solution(y: Vec<T>, dera: &DerivationAlgebra<T>, solution: &GeodesicSolution<T>) -> Self {
        let mut c = Self::new(y);
        if let (Some(xi), Some(k)) = (solution.xi(), solution.k()) {
            c.d = Some(dera.combine(xi));
            c.k = Some(k.clone());
        }
        c
    }

    pub fn lemma_holds(&self, alg: &MetricNilAlgebra<T>) -> bool {
        match &self.k {
            Some(k) => geodesic_lemma_check(alg, &self.y, self.d.as_ref(), k),
            None => false,
        }
    }

    /// `D Z = -k Z` and `(D + k) X = j(Z) X`.
    pub fn split_conditions_hold(&self, alg: &MetricNilAlgebra<T>, split: &CenterSplit<T>) -> bool {
        let Some(k) = &self.k else { return false };
        let (x, z) = match &self.parts {
            Some(p) => p.clone(),
            None => split.project(&self.y),
        };
        let n = alg.dim();
        let d = self.d.clone().unwrap_or_else(|| Matrix::zeros(n, n));
        let dz = vec_add(&d.mul_vec(&z), &vec_scale(k, &z));
        let dx = vec_add(&d.mul_vec(&x), &vec_scale(k, &x));
        is_zero_vec(&dz) && dx == alg.j_apply(split, &z, &x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AugmentOutcome<T> {
    pub geodesic: bool,
    /// `A Y = lambda Y`, when `A Y` is proportional to `Y`.
    pub lambda: Option<T>,
    /// Constant of the augmented vector `Y + D + A`.
    pub k: Option<T>,
}

/// Tests whether adding `A` to the isotropy part of a geodesic candidate
/// keeps it geodesic: this happens iff `A Y = lambda Y`, with new constant
/// `k - lambda`, and `lambda = 0` is forced when `Y` is not null.
pub fn augment_check<T: Field>(
    alg: &MetricNilAlgebra<T>,
    candidate: &GeodesicCandidate<T>,
    a: &Matrix<T>,
) -> AugmentOutcome<T> {
    let none = AugmentOutcome {
        geodesic: false,
        lambda: None,
        k: None,
    };
    let y = &candidate.y;
    let ay = a.mul_vec(y);
    let lambda = match y.iter().position(|c| !c.is_zero()) {
        None => T::zero(),
        Some(i) => ay[i].clone() / y[i].clone(),
    };
    if ay != vec_scale(&lambda, y) {
        return none;
    }
    if !alg.inner(y, y).is_zero() && !lambda.is_zero() {
        return AugmentOutcome {
            lambda: Some(lambda),
            ..none
        };
    }
    let k = candidate.k.clone().unwrap_or_else(T::zero) - lambda.clone();
    let n = alg.dim();
    let d = candidate.d.clone().unwrap_or_else(|| Matrix::zeros(n, n));
    let geodesic = geodesic_lemma_check(alg, y, Some(&(&d + a)), &k);
    AugmentOutcome {
        geodesic,
        lambda: Some(lambda),
        k: Some(k),
    }
}

/// Isotropy used when deciding geodesic vectors.
#[derive(Debug, Clone, Copy)]
pub enum Presentation<'a> {
    /// `N ⋊ H` with `H` generated by the given skew derivations.
    Isometry(&'a DerivationAlgebra<Rational>),
    /// `N` acting on itself.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplerConfig {
    pub samples: usize,
    pub null_samples: usize,
    pub seed: u64,
    /// Exhaustive `{-1, 0, 1}^n` probe up to this dimension.
    pub lattice_max_dim: usize,
    pub max_witnesses: usize,
    /// Perturbations tried before an unsolvable sample counts as a generic
    /// failure.
    pub perturbations: usize,
    /// Random attempts when looking for a first rational null vector.
    pub seed_attempts: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            null_samples: 500,
            seed: 0,
            lattice_max_dim: 8,
            max_witnesses: 4,
            perturbations: 3,
            seed_attempts: 2000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Go,
    AlmostGo,
    NgoOnly,
    NotNgo,
    GoLieGroup,
    BiInvariant,
}

impl Verdict {
    pub const ALL: [Verdict; 6] = [
        Verdict::Go,
        Verdict::AlmostGo,
        Verdict::NgoOnly,
        Verdict::NotNgo,
        Verdict::GoLieGroup,
        Verdict::BiInvariant,
    ];

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.label() == label)
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Go => "GO",
            Verdict::AlmostGo => "AlmostGO",
            Verdict::NgoOnly => "NGO_only",
            Verdict::NotNgo => "NotNGO",
            Verdict::GoLieGroup => "GO_LieGroup",
            Verdict::BiInvariant => "BiInvariant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProbeKind {
    Generic,
    Null,
    Lattice,
}

impl ProbeKind {
    pub fn label(self) -> &'static str {
        match self {
            ProbeKind::Generic => "generic",
            ProbeKind::Null => "null",
            ProbeKind::Lattice => "lattice",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub y: Vec<Rational>,
    pub kind: ProbeKind,
    pub null: bool,
    pub solution: GeodesicSolution<Rational>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Tally {
    pub total: usize,
    pub solvable: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.total += 1;
        if ok {
            self.solvable += 1;
        }
    }

    pub fn all_solvable(&self) -> bool {
        self.total == self.solvable
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullCone {
    /// Definite metric: no nonzero null vectors.
    Empty,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleStats {
    pub generic: Tally,
    /// Unsolvable generic samples whose small perturbations are solvable,
    /// i.e. points of a thin exceptional set.
    pub generic_exceptional: usize,
    pub null: Tally,
    pub lattice_nonnull: Tally,
    pub lattice_null: Tally,
    pub null_cone: NullCone,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceVerdict {
    pub verdicts: Vec<Verdict>,
    pub witnesses: Vec<Witness>,
    pub stats: SampleStats,
}

impl SpaceVerdict {
    pub fn has(&self, v: Verdict) -> bool {
        self.verdicts.contains(&v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("null-cone sampler exhausted: found {found} of {wanted} null vectors")]
    SamplerExhausted { found: usize, wanted: usize },
}

/// A rational with numerator and denominator drawn from `[-9, 9]`.
pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n = rng.gen_range(-9i64..=9);
    let mut d = 0;
    while d == 0 {
        d = rng.gen_range(-9i64..=9);
    }
    rat(n, d)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// Sylvester's criterion, for either sign.
pub fn is_definite(g: &Matrix<Rational>) -> bool {
    let n = g.rows();
    let idx: Vec<usize> = (0..n).collect();
    let minors: Vec<Rational> = (1..=n).map(|r| g.submatrix(&idx[..r], &idx[..r]).determinant()).collect();
    let zero = int(0);
    let positive = minors.iter().all(|m| *m > zero);
    let negative = minors
        .iter()
        .enumerate()
        .all(|(i, m)| if i % 2 == 0 { *m < zero } else { *m > zero });
    positive || negative
}

/// Rational points of the null cone `<Y, Y> = 0`.
///
/// Once one null vector `n0` is known, every line `n0 + s w` meets the cone
/// again at `s = -2 <n0, w> / <w, w>`, which is rational.
#[derive(Debug, Clone)]
pub struct NullSampler {
    g: Matrix<Rational>,
    seed: Vec<Rational>,
}

impl NullSampler {
    /// `Ok(None)` for a definite metric.
    pub fn new(g: &Matrix<Rational>, rng: &mut impl Rng, attempts: usize) -> Result<Option<Self>, ClassifyError> {
        if is_definite(g) {
            return Ok(None);
        }
        let seed = find_null_vector(g, rng, attempts).ok_or(ClassifyError::SamplerExhausted { found: 0, wanted: 1 })?;
        Ok(Some(Self { g: g.clone(), seed }))
    }

    pub fn seed_vector(&self) -> &[Rational] {
        &self.seed
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Vec<Rational> {
        let n = self.g.rows();
        let q = |a: &[Rational], b: &[Rational]| crate::linalg::bilinear(&self.g, a, b);
        loop {
            let w = random_vector(rng, n);
            let ww = q(&w, &w);
            if ww.is_zero() {
                continue;
            }
            let s = -(int(2) * q(&self.seed, &w)) / ww;
            let y = vec_add(&self.seed, &vec_scale(&s, &w));
            if !is_zero_vec(&y) {
                return y;
            }
        }
    }
}

fn find_null_vector(g: &Matrix<Rational>, rng: &mut impl Rng, attempts: usize) -> Option<Vec<Rational>> {
    let n = g.rows();
    for i in 0..n {
        if g.get(i, i).is_zero() {
            return Some(unit_vector(n, i));
        }
    }
    // e_i + t e_j: g_jj t^2 + 2 g_ij t + g_ii = 0
    for i in 0..n {
        for j in i + 1..n {
            let (gii, gij, gjj) = (g.get(i, i), g.get(i, j), g.get(j, j));
            let disc = gij.clone() * gij.clone() - gii.clone() * gjj.clone();
            if let Some(r) = rational_sqrt(&disc) {
                let t = (-gij.clone() + r) / gjj.clone();
                let mut v = unit_vector(n, i);
                v[j] = t;
                return Some(v);
            }
        }
    }
    // Random lines y0 + s w with a perfect-square discriminant.
    for _ in 0..attempts {
        let y0 = random_vector(rng, n);
        let w = random_vector(rng, n);
        let a = crate::linalg::bilinear(g, &w, &w);
        let b = crate::linalg::bilinear(g, &y0, &w);
        let c = crate::linalg::bilinear(g, &y0, &y0);
        if a.is_zero() {
            if is_zero_vec(&w) {
                continue;
            }
            return Some(w);
        }
        if let Some(r) = rational_sqrt(&(b.clone() * b.clone() - a.clone() * c)) {
            let s = (-b + r) / a;
            let y = vec_add(&y0, &vec_scale(&s, &w));
            if !is_zero_vec(&y) {
                return Some(y);
            }
        }
    }
    None
}

/// All nonzero vectors of `{-1, 0, 1}^n`, sparsest first.
pub fn lattice_probe(n: usize) -> Vec<Vec<Rational>> {
    let total = 3usize.pow(n as u32);
    // digit 0 -> 0, 1 -> 1, 2 -> -1
    let mut codes: Vec<Vec<u8>> = (0..total)
        .map(|mut code| {
            let mut digits: Vec<u8> = (0..n)
                .map(|_| {
                    let d = (code % 3) as u8;
                    code /= 3;
                    d
                })
                .collect();
            digits.reverse();
            digits
        })
        .filter(|d| d.iter().any(|&x| x != 0))
        .collect();
    codes.sort_by_key(|d| (d.iter().filter(|&&x| x != 0).count(), d.clone()));
    codes
        .into_iter()
        .map(|d| {
            d.into_iter()
                .map(|x| match x {
                    0 => int(0),
                    1 => int(1),
                    _ => int(-1),
                })
                .collect()
        })
        .collect()
}

struct Classifier<'a> {
    alg: &'a MetricNilAlgebra<Rational>,
    split: Option<CenterSplit<Rational>>,
    presentation: Presentation<'a>,
}

impl Classifier<'_> {
    fn solve(&self, y: &[Rational]) -> GeodesicSolution<Rational> {
        match (self.presentation, &self.split) {
            (Presentation::Isometry(dera), Some(split)) => solve_geodesic_system(self.alg, split, dera, y),
            (Presentation::Isometry(dera), None) => solve_geodesic_lemma(self.alg, Some(dera), y),
            (Presentation::Trivial, _) => solve_geodesic_lemma(self.alg, None, y),
        }
    }
}

/// Samples generic vectors, null vectors and a small exhaustive lattice, and
/// turns the outcomes into verdict flags with exactly re-checkable witnesses.
///
/// A generic sample only counts against the open dense set when it and
/// `config.perturbations` random perturbations of it are all unsolvable.
pub fn classify_space(
    alg: &MetricNilAlgebra<Rational>,
    presentation: Presentation<'_>,
    config: &SamplerConfig,
) -> Result<SpaceVerdict, ClassifyError> {
    let split = match presentation {
        Presentation::Isometry(_) => Some(alg.split_v_z()?),
        Presentation::Trivial => None,
    };
    let classifier = Classifier {
        alg,
        split,
        presentation,
    };
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut stats = SampleStats {
        generic: Tally::default(),
        generic_exceptional: 0,
        null: Tally::default(),
        lattice_nonnull: Tally::default(),
        lattice_null: Tally::default(),
        null_cone: NullCone::Sampled,
    };
    let mut solvable_w: Vec<Witness> = Vec::new();
    let mut unsolvable_w: Vec<Witness> = Vec::new();
    let mut keep = |w: Witness| {
        let list = if w.solution.is_geodesic() {
            &mut solvable_w
        } else {
            &mut unsolvable_w
        };
        let same = list.iter().filter(|o| o.kind == w.kind && o.null == w.null).count();
        if same < config.max_witnesses {
            list.push(w);
        }
    };

    for _ in 0..config.samples {
        let y = random_vector(&mut rng, n);
        let solution = classifier.solve(&y);
        stats.generic.record(solution.is_geodesic());
        if !solution.is_geodesic() {
            let eps = rat(1, 97);
            let exceptional = (0..config.perturbations).any(|_| {
                let w = random_vector(&mut rng, n);
                classifier.solve(&vec_add(&y, &vec_scale(&eps, &w))).is_geodesic()
            });
            if exceptional {
                stats.generic_exceptional += 1;
            }
        }
        let null = alg.inner(&y, &y).is_zero();
        keep(Witness {
            y,
            kind: ProbeKind::Generic,
            null,
            solution,
        });
    }

    match NullSampler::new(alg.metric(), &mut rng, config.seed_attempts)? {
        None => stats.null_cone = NullCone::Empty,
        Some(sampler) => {
            for _ in 0..config.null_samples {
                let y = sampler.sample(&mut rng);
                let solution = classifier.solve(&y);
                stats.null.record(solution.is_geodesic());
                keep(Witness {
                    y,
                    kind: ProbeKind::Null,
                    null: true,
                    solution,
                });
            }
        }
    }

    if n <= config.lattice_max_dim {
        for y in lattice_probe(n) {
            let solution = classifier.solve(&y);
            let null = alg.inner(&y, &y).is_zero();
            let tally = if null {
                &mut stats.lattice_null
            } else {
                &mut stats.lattice_nonnull
            };
            tally.record(solution.is_geodesic());
            keep(Witness {
                y,
                kind: ProbeKind::Lattice,
                null,
                solution,
            });
        }
    }

    let generic_ok = stats.generic.solvable + stats.generic_exceptional == stats.generic.total;
    let null_ok = stats.null.all_solvable() && stats.lattice_null.all_solvable();
    let all_ok = generic_ok && null_ok && stats.lattice_nonnull.all_solvable();
    let mut verdicts = Vec::new();
    if all_ok {
        verdicts.push(Verdict::Go);
    } else if generic_ok {
        verdicts.push(Verdict::AlmostGo);
        if !null_ok {
            verdicts.push(Verdict::NotNgo);
        }
    } else if null_ok {
        verdicts.push(Verdict::NgoOnly);
    } else {
        verdicts.push(Verdict::NotNgo);
    }
    if matches!(presentation, Presentation::Trivial) && alg.is_ad_invariant() {
        verdicts.push(Verdict::GoLieGroup);
        verdicts.push(Verdict::BiInvariant);
    }

    let mut witnesses = unsolvable_w;
    witnesses.extend(solvable_w);
    witnesses.sort_by(|a, b| {
        (a.solution.is_geodesic(), a.kind, a.null)
            .cmp(&(b.solution.is_geodesic(), b.kind, b.null))
    });
    Ok(SpaceVerdict {
        verdicts,
        witnesses,
        stats,
    })
}

/// Re-checks every witness with the split-free solver: unsolvable ones must
/// stay unsolvable, and solvable ones must satisfy the Geodesic Lemma.
pub fn recheck_witnesses(
    alg: &MetricNilAlgebra<Rational>,
    presentation: Presentation<'_>,
    verdict: &SpaceVerdict,
) -> bool {
    let dera = match presentation {
        Presentation::Isometry(d) => Some(d),
        Presentation::Trivial => None,
    };
    verdict.witnesses.iter().all(|w| {
        let again = solve_geodesic_lemma(alg, dera, &w.y);
        match (&w.solution, dera) {
            (GeodesicSolution::NotGeodesic, _) => !again.is_geodesic(),
            (s, Some(dera)) => {
                let c = GeodesicCandidate::from_solution(w.y.clone(), dera, s);
                c.lemma_holds(alg)
            }
            (s, None) => geodesic_lemma_check(alg, &w.y, None, s.k().expect("geodesic")),
        }
    })
}
