//! The linear algebra of rigidity: rigidity matrices, equilibrium stresses,
//! stress matrices, and the rank/spectral tests built on them.
//!
//! All rank decisions go through one SVD-based routine with a relative
//! threshold, so "rank" means the same thing everywhere in the crate:
//! the number of singular values exceeding
//! `rank_threshold_factor * max(rows, cols) * sigma_max`.

use std::collections::BTreeMap;

use nalgebra::linalg::{SymmetricEigen, SVD};
use nalgebra::{DMatrix, DVector};

use crate::generators::SeededRandomSource;
use crate::model::{Configuration, Framework, Pair, Stress, TensegrityGraph};
use crate::{Error, Result};

/// Knobs for the two numeric decisions the crate makes: when a singular
/// value counts as zero, and how far an eigenvalue may dip below zero while
/// the matrix still counts as positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericTolerance {
    /// Relative singular-value cutoff; rank counts `sigma > factor * max(rows, cols) * sigma_max`.
    pub rank_threshold_factor: f64,
    /// PSD slack; minimum eigenvalue must satisfy `lambda_min >= -slack * (1 + max |lambda|)`.
    pub psd_slack: f64,
}

impl NumericTolerance {
    pub const DEFAULT_RANK_THRESHOLD_FACTOR: f64 = 1e-10;
    pub const DEFAULT_PSD_SLACK: f64 = 1e-9;

    pub fn new(rank_threshold_factor: f64, psd_slack: f64) -> Result<Self> {
        if !(rank_threshold_factor > 0.0 && rank_threshold_factor.is_finite()) {
            return Err(Error::InvalidInput(
                "rank_threshold_factor must be positive and finite".into(),
            ));
        }
        if !(psd_slack > 0.0 && psd_slack.is_finite()) {
            return Err(Error::InvalidInput(
                "psd_slack must be positive and finite".into(),
            ));
        }
        Ok(NumericTolerance { rank_threshold_factor, psd_slack })
    }
}

impl Default for NumericTolerance {
    fn default() -> Self {
        NumericTolerance {
            rank_threshold_factor: Self::DEFAULT_RANK_THRESHOLD_FACTOR,
            psd_slack: Self::DEFAULT_PSD_SLACK,
        }
    }
}

fn ensure_finite(m: &DMatrix<f64>) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite("matrix contains a NaN or infinite entry".into()))
    }
}

/// Number of singular values of `m` above the relative threshold. The zero
/// matrix has rank 0; non-finite entries are rejected.
pub fn numeric_rank(m: &DMatrix<f64>, tol: &NumericTolerance) -> Result<usize> {
    ensure_finite(m)?;
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        return Ok(0);
    }
    let svd = SVD::new(m.clone(), false, false);
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let threshold = tol.rank_threshold_factor * rows.max(cols) as f64 * sigma_max;
    Ok(svd.singular_values.iter().filter(|&&s| s > threshold).count())
}

/// Orthonormal basis of the right null space of `m`, using the same
/// singular-value threshold as [`numeric_rank`], so
/// `rank + null_space(..).len() == cols` always holds.
pub fn null_space(m: &DMatrix<f64>, tol: &NumericTolerance) -> Result<Vec<DVector<f64>>> {
    ensure_finite(m)?;
    let (rows, cols) = m.shape();
    if cols == 0 {
        return Ok(Vec::new());
    }
    if rows == 0 {
        return Ok((0..cols)
            .map(|k| DVector::from_fn(cols, |i, _| if i == k { 1.0 } else { 0.0 }))
            .collect());
    }
    // A thin SVD of a wide matrix only returns min(rows, cols) right singular
    // vectors, which misses part of the null space. Padding with zero rows
    // keeps the singular values and null space intact while making V square.
    let work = if rows >= cols {
        m.clone()
    } else {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(m);
        padded
    };
    let svd = SVD::new(work, false, true);
    let sigma_max = svd.singular_values.iter().fold(0.0f64, |acc, &s| acc.max(s));
    let threshold = tol.rank_threshold_factor * rows.max(cols) as f64 * sigma_max;
    let v_t = svd.v_t.expect("SVD was asked for V");
    let mut basis = Vec::new();
    for (idx, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= threshold {
            basis.push(v_t.row(idx).transpose());
        }
    }
    Ok(basis)
}

/// Dimension of the affine span of the points: the rank of the matrix of
/// mean-centered coordinates.
pub fn affine_span_dim(config: &Configuration, tol: &NumericTolerance) -> Result<usize> {
    let n = config.len();
    let d = config.dim();
    if n == 1 {
        return Ok(0);
    }
    let mut centroid = DVector::zeros(d);
    for p in config.points() {
        centroid += p;
    }
    centroid /= n as f64;
    let mut centered = DMatrix::zeros(n, d);
    for (i, p) in config.points().iter().enumerate() {
        let diff = p - &centroid;
        for k in 0..d {
            centered[(i, k)] = diff[k];
        }
    }
    numeric_rank(&centered, tol)
}

/// The rigidity matrix of a framework, with its member-to-row map.
///
/// Rows follow the canonical member order; the row for `{i, j}` carries
/// `p_i - p_j` in vertex `i`'s coordinate block and `p_j - p_i` in vertex
/// `j`'s, all other entries zero. Shape is `e x (d * n)`.
#[derive(Debug, Clone)]
pub struct RigidityMatrixForm {
    matrix: DMatrix<f64>,
    row_index: BTreeMap<Pair, usize>,
    dim: usize,
    vertex_count: usize,
}

impl RigidityMatrixForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn row_of(&self, pair: Pair) -> Option<usize> {
        self.row_index.get(&pair).copied()
    }

    pub fn row_index(&self) -> &BTreeMap<Pair, usize> {
        &self.row_index
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
}

pub fn rigidity_matrix(f: &Framework) -> Result<RigidityMatrixForm> {
    let e = f.graph().member_count();
    if e == 0 {
        return Err(Error::InvalidInput(
            "rigidity matrix of a framework with no members".into(),
        ));
    }
    let d = f.dim();
    let n = f.vertex_count();
    let mut matrix = DMatrix::zeros(e, d * n);
    let mut row_index = BTreeMap::new();
    for (row, (pair, _)) in f.graph().members().enumerate() {
        let diff = f.configuration().point(pair.i()) - f.configuration().point(pair.j());
        for k in 0..d {
            matrix[(row, pair.i() * d + k)] = diff[k];
            matrix[(row, pair.j() * d + k)] = -diff[k];
        }
        row_index.insert(pair, row);
    }
    Ok(RigidityMatrixForm { matrix, row_index, dim: d, vertex_count: n })
}

/// Rank test for local rigidity at this particular configuration: with
/// `n >= d` the framework is locally rigid iff
/// `rank R(p) = d n - d (d + 1) / 2`.
pub fn is_locally_rigid_at(f: &Framework, tol: &NumericTolerance) -> Result<bool> {
    let d = f.dim();
    let n = f.vertex_count();
    if n < d {
        return Err(Error::UnsupportedRegime(format!(
            "local rigidity rank test needs n >= d, got n = {n}, d = {d}"
        )));
    }
    let rank = numeric_rank(rigidity_matrix(f)?.matrix(), tol)?;
    Ok(rank == d * n - d * (d + 1) / 2)
}

/// Orthonormal basis of the equilibrium stresses of `f` — the left null
/// space of the rigidity matrix, repackaged as one scalar per member.
/// An empty vector means the only equilibrium stress is zero.
pub fn equilibrium_stress_basis(f: &Framework, tol: &NumericTolerance) -> Result<Vec<Stress>> {
    let rm = rigidity_matrix(f)?;
    let left_kernel = null_space(&rm.matrix().transpose(), tol)?;
    let mut basis = Vec::with_capacity(left_kernel.len());
    for vec in left_kernel {
        let values = rm
            .row_index()
            .iter()
            .map(|(pair, &row)| (*pair, vec[row]));
        basis.push(Stress::new(f.graph(), values)?);
    }
    Ok(basis)
}

/// Check the per-vertex equilibrium condition
/// `sum_i w_ij (p_i - p_j) = 0` with every component within `tol`.
pub fn verify_equilibrium(f: &Framework, w: &Stress, tol: f64) -> Result<bool> {
    if !w.matches_graph(f.graph()) {
        return Err(Error::StressMismatch(
            "stress is not keyed by this framework's members".into(),
        ));
    }
    let d = f.dim();
    let mut residual = vec![DVector::<f64>::zeros(d); f.vertex_count()];
    for (pair, value) in w.iter() {
        let diff = f.configuration().point(pair.i()) - f.configuration().point(pair.j());
        // contribution w_ij (p_j - p_i) at vertex i, and the negative at j
        residual[pair.i()] -= &diff * value;
        residual[pair.j()] += &diff * value;
    }
    Ok(residual
        .iter()
        .all(|r| r.iter().all(|c| c.abs() <= tol)))
}

/// The `n x n` stress matrix of an equilibrium stress: `-w_ij` off the
/// diagonal, row sums zero.
///
/// Symmetry is exact by construction; zero row sums hold up to floating
/// point. The all-ones vector and each coordinate vector of any
/// configuration the stress is in equilibrium with lie in its kernel, so
/// the rank is at most `n - d - 1` whenever the affine span is
/// `d`-dimensional.
#[derive(Debug, Clone, PartialEq)]
pub struct StressMatrixForm {
    matrix: DMatrix<f64>,
}

impl StressMatrixForm {
    /// Wrap an explicitly built matrix. The matrix must be square and
    /// finite, symmetric up to `psd_slack * (1 + max |entry|)` (it is then
    /// symmetrized exactly by averaging), and have row sums within
    /// `n * psd_slack * (1 + max |entry|)` of zero.
    pub fn try_from_matrix(matrix: DMatrix<f64>, tol: &NumericTolerance) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidInput(format!(
                "stress matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        ensure_finite(&matrix)?;
        let n = matrix.nrows();
        let scale = 1.0 + matrix.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let sym_tol = tol.psd_slack * scale;
        let mut symmetrized = matrix.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let a = matrix[(i, j)];
                let b = matrix[(j, i)];
                if (a - b).abs() > sym_tol {
                    return Err(Error::InvalidInput(format!(
                        "stress matrix is not symmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
                let avg = 0.5 * (a + b);
                symmetrized[(i, j)] = avg;
                symmetrized[(j, i)] = avg;
            }
        }
        let row_tol = n as f64 * sym_tol;
        for i in 0..n {
            let sum: f64 = symmetrized.row(i).iter().sum();
            if sum.abs() > row_tol {
                return Err(Error::InvalidInput(format!(
                    "stress matrix row {i} sums to {sum}, expected 0"
                )));
            }
        }
        Ok(StressMatrixForm { matrix: symmetrized })
    }

    pub(crate) fn from_symmetric_unchecked(matrix: DMatrix<f64>) -> Self {
        StressMatrixForm { matrix }
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rank(&self, tol: &NumericTolerance) -> Result<usize> {
        numeric_rank(&self.matrix, tol)
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }
}

pub fn stress_matrix(graph: &TensegrityGraph, w: &Stress) -> Result<StressMatrixForm> {
    if !w.matches_graph(graph) {
        return Err(Error::StressMismatch(
            "stress is not keyed by this graph's members".into(),
        ));
    }
    let n = graph.vertex_count();
    let mut matrix = DMatrix::zeros(n, n);
    for (pair, value) in w.iter() {
        let (i, j) = (pair.i(), pair.j());
        matrix[(i, j)] = -value;
        matrix[(j, i)] = -value;
        matrix[(i, i)] += value;
        matrix[(j, j)] += value;
    }
    Ok(StressMatrixForm { matrix })
}

/// Spectral PSD test: `lambda_min >= -psd_slack * (1 + max |lambda|)`.
pub fn is_positive_semidefinite(s: &StressMatrixForm, tol: &NumericTolerance) -> bool {
    let eig = SymmetricEigen::new(s.matrix().clone());
    let max_abs = eig.eigenvalues.iter().fold(0.0f64, |acc, &l| acc.max(l.abs()));
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |acc, &l| acc.min(l));
    min >= -tol.psd_slack * (1.0 + max_abs)
}

/// Search the equilibrium stress space of `f` for a stress whose stress
/// matrix attains maximal numeric rank.
///
/// Draws `trials` coefficient vectors (components uniform in `[-1, 1)`)
/// over the equilibrium stress basis with a [`SeededRandomSource`] built
/// from `seed`, and returns the best combination found together with its
/// rank. With an empty basis the zero stress and rank 0 are returned.
/// Deterministic for fixed inputs; ties keep the earliest trial. The
/// search can underestimate the true maximum — callers treat a shortfall
/// as inconclusive, never as proof.
pub fn max_rank_stress(
    f: &Framework,
    trials: u32,
    seed: u64,
    tol: &NumericTolerance,
) -> Result<(Stress, usize)> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let basis = equilibrium_stress_basis(f, tol)?;
    if basis.is_empty() {
        return Ok((Stress::zero(f.graph()), 0));
    }
    let mut rng = SeededRandomSource::new(seed);
    let mut best: Option<(Stress, usize)> = None;
    for _ in 0..trials {
        let coefficients: Vec<f64> = (0..basis.len()).map(|_| rng.symmetric_f64()).collect();
        let combined = combine_basis(f.graph(), &basis, &coefficients)?;
        let rank = stress_matrix(f.graph(), &combined)?.rank(tol)?;
        match &best {
            Some((_, best_rank)) if *best_rank >= rank => {}
            _ => best = Some((combined, rank)),
        }
    }
    Ok(best.expect("trials >= 1"))
}

fn combine_basis(
    graph: &TensegrityGraph,
    basis: &[Stress],
    coefficients: &[f64],
) -> Result<Stress> {
    let values = graph.pairs().map(|pair| {
        let v = basis
            .iter()
            .zip(coefficients)
            .map(|(w, c)| c * w.get(pair))
            .sum::<f64>();
        (pair, v)
    });
    Stress::new(graph, values)
}

/// Build a configuration witnessing the largest space a stress matrix can
/// hold in equilibrium: with kernel dimension `k >= 2`, returns `n` points
/// in dimension `k - 1` whose coordinate vectors, together with all-ones,
/// span the kernel. A kernel of dimension `< 2` leaves no room for any
/// placement beyond a single point and is reported as an error.
pub fn universal_configuration(
    s: &StressMatrixForm,
    tol: &NumericTolerance,
) -> Result<Configuration> {
    let n = s.size();
    let kernel = null_space(s.matrix(), tol)?;
    let k = kernel.len();
    if k < 2 {
        return Err(Error::DegenerateKernel(format!(
            "stress-matrix kernel has dimension {k}; need at least 2 (all-ones plus one coordinate)"
        )));
    }
    // Project the normalized all-ones direction out of the kernel basis and
    // re-orthonormalize what is left; those k - 1 vectors become the
    // coordinate columns of the configuration.
    let ones = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut projected = DMatrix::zeros(n, k);
    for (c, vec) in kernel.iter().enumerate() {
        let residual = vec - &ones * ones.dot(vec);
        projected.set_column(c, &residual);
    }
    let svd = SVD::new(projected, true, false);
    let u = svd.u.expect("SVD was asked for U");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let coord_dim = k - 1;
    let mut points = vec![DVector::zeros(coord_dim); n];
    for (m, &idx) in order.iter().take(coord_dim).enumerate() {
        let column = u.column(idx);
        for i in 0..n {
            points[i][m] = column[i];
        }
    }
    Configuration::from_vectors(coord_dim, points)
}

/// Maximal-rank test for a stress at a configuration with full
/// `d`-dimensional affine span: rank of the stress matrix equals
/// `n - d - 1`. This is the rank condition under which the stress pins the
/// configuration (up to affine images) in every ambient dimension at once.
pub fn is_universal_for(f: &Framework, w: &Stress, tol: &NumericTolerance) -> Result<bool> {
    let d = f.dim();
    let n = f.vertex_count();
    let span = affine_span_dim(f.configuration(), tol)?;
    if span != d {
        return Err(Error::DegenerateSpan(format!(
            "configuration spans an affine subspace of dimension {span}, expected {d}"
        )));
    }
    if n < d + 1 {
        return Err(Error::UnsupportedRegime(format!(
            "need n >= d + 1 for the maximal-rank test, got n = {n}, d = {d}"
        )));
    }
    let rank = stress_matrix(f.graph(), w)?.rank(tol)?;
    Ok(rank == n - d - 1)
}

/// Do the given directions all lie on some conic at infinity?
///
/// A conic at infinity is the zero set of a nonzero symmetric form `Q` on
/// projective directions: `v^T Q v = 0`. Each normalized direction
/// contributes one linear condition on the `d (d + 1) / 2` independent
/// entries of `Q`; the directions lie on a conic iff that moment system has
/// a nonzero solution, i.e. its rank is below `d (d + 1) / 2`. With fewer
/// directions than unknowns this is automatic. In the plane a conic at
/// infinity is just a set of at most two projective directions.
pub fn lies_on_conic_at_infinity(
    directions: &[DVector<f64>],
    dim: usize,
    tol: &NumericTolerance,
) -> Result<bool> {
    if dim == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let unknowns = dim * (dim + 1) / 2;
    if directions.is_empty() {
        return Ok(true);
    }
    let mut moments = DMatrix::zeros(directions.len(), unknowns);
    for (row, v) in directions.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "direction {row} has {} components, expected {dim}",
                v.len()
            )));
        }
        if !v.iter().all(|c| c.is_finite()) {
            return Err(Error::NonFinite(format!("direction {row} is not finite")));
        }
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidInput(format!("direction {row} is the zero vector")));
        }
        let unit = v / norm;
        let mut col = 0;
        for a in 0..dim {
            moments[(row, col)] = unit[a] * unit[a];
            col += 1;
        }
        for a in 0..dim {
            for b in (a + 1)..dim {
                moments[(row, col)] = 2.0 * unit[a] * unit[b];
                col += 1;
            }
        }
    }
    Ok(numeric_rank(&moments, tol)? < unknowns)
}

/// Directions `p_i - p_j` of the members carrying a nonzero stress.
/// "Nonzero" is relative: `|w_ij| > rank_threshold_factor * max |w|`.
/// A stressed member with coincident endpoints has no direction and is an
/// error.
pub fn stressed_directions(f: &Framework, w: &Stress, tol: &NumericTolerance) -> Result<Vec<DVector<f64>>> {
    if !w.matches_graph(f.graph()) {
        return Err(Error::StressMismatch(
            "stress is not keyed by this framework's members".into(),
        ));
    }
    let cutoff = tol.rank_threshold_factor * w.max_abs();
    let mut directions = Vec::new();
    for (pair, value) in w.iter() {
        if value.abs() > cutoff {
            let diff = f.configuration().point(pair.i()) - f.configuration().point(pair.j());
            if diff.norm() == 0.0 {
                return Err(Error::DegenerateSpan(format!(
                    "member {pair} carries stress but its endpoints coincide"
                )));
            }
            directions.push(diff);
        }
    }
    Ok(directions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MemberKind;
    use approx::assert_relative_eq;

    fn bar_graph(n: usize, edges: &[(usize, usize)]) -> TensegrityGraph {
        TensegrityGraph::new(n, edges.iter().map(|&(a, b)| (a, b, MemberKind::Bar))).unwrap()
    }

    fn framework(n: usize, d: usize, edges: &[(usize, usize)], coords: &[&[f64]]) -> Framework {
        let config = Configuration::new(d, coords.iter().map(|c| c.to_vec()).collect()).unwrap();
        Framework::new(bar_graph(n, edges), config).unwrap()
    }

    /// Unit square with cables around the boundary and struts on the
    /// diagonals, plus its classic +-1 stress.
    fn square_tensegrity() -> (Framework, Stress) {
        let graph = TensegrityGraph::new(
            4,
            [
                (0, 1, MemberKind::Cable),
                (1, 2, MemberKind::Cable),
                (2, 3, MemberKind::Cable),
                (0, 3, MemberKind::Cable),
                (0, 2, MemberKind::Strut),
                (1, 3, MemberKind::Strut),
            ],
        )
        .unwrap();
        let config = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap();
        let f = Framework::new(graph, config).unwrap();
        let w = Stress::new(
            f.graph(),
            [
                (Pair::new(0, 1), 1.0),
                (Pair::new(1, 2), 1.0),
                (Pair::new(2, 3), 1.0),
                (Pair::new(0, 3), 1.0),
                (Pair::new(0, 2), -1.0),
                (Pair::new(1, 3), -1.0),
            ],
        )
        .unwrap();
        (f, w)
    }

    #[test]
    fn single_bar_matrix_entries() {
        let f = framework(2, 1, &[(0, 1)], &[&[0.0], &[1.0]]);
        let rm = rigidity_matrix(&f).unwrap();
        assert_eq!(rm.matrix().shape(), (1, 2));
        assert_relative_eq!(rm.matrix()[(0, 0)], -1.0);
        assert_relative_eq!(rm.matrix()[(0, 1)], 1.0);
    }

    #[test]
    fn triangle_matrix_has_rank_three() {
        let f = framework(
            3,
            2,
            &[(0, 1), (1, 2), (0, 2)],
            &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]],
        );
        let rm = rigidity_matrix(&f).unwrap();
        assert_eq!(rm.matrix().shape(), (3, 6));
        assert_eq!(numeric_rank(rm.matrix(), &NumericTolerance::default()).unwrap(), 3);
        assert!(is_locally_rigid_at(&f, &NumericTolerance::default()).unwrap());
    }

    #[test]
    fn empty_member_set_is_an_error() {
        let config = Configuration::new(2, vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let f = Framework::new(bar_graph(2, &[]), config).unwrap();
        assert!(rigidity_matrix(&f).is_err());
    }

    #[test]
    fn translations_lie_in_the_kernel() {
        let f = framework(
            3,
            2,
            &[(0, 1), (1, 2), (0, 2)],
            &[&[0.2, 0.7], &[1.3, 0.1], &[0.4, 1.9]],
        );
        let rm = rigidity_matrix(&f).unwrap();
        for axis in 0..2 {
            let mut t = DVector::zeros(6);
            for v in 0..3 {
                t[v * 2 + axis] = 1.0;
            }
            let residual = rm.matrix() * t;
            assert!(residual.iter().all(|c| c.abs() < 1e-12));
        }
    }

    #[test]
    fn numeric_rank_basics() {
        let tol = NumericTolerance::default();
        assert_eq!(numeric_rank(&DMatrix::identity(4, 4), &tol).unwrap(), 4);
        assert_eq!(numeric_rank(&DMatrix::zeros(3, 5), &tol).unwrap(), 0);
        let u = DVector::from_vec(vec![1.0, -2.0, 3.0]);
        let outer = &u * u.transpose();
        assert_eq!(numeric_rank(&outer, &tol).unwrap(), 1);
        let mut bad = DMatrix::zeros(2, 2);
        bad[(0, 0)] = f64::NAN;
        assert!(numeric_rank(&bad, &tol).is_err());
    }

    #[test]
    fn numeric_rank_respects_threshold() {
        let tol = NumericTolerance::default();
        let mut m = DMatrix::identity(3, 3);
        m[(2, 2)] = 1e-14; // below 1e-10 * 3 * 1
        assert_eq!(numeric_rank(&m, &tol).unwrap(), 2);
        let loose = NumericTolerance::new(1e-16, 1e-9).unwrap();
        assert_eq!(numeric_rank(&m, &loose).unwrap(), 3);
    }

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        // 1x3 matrix: null space must have dimension 2 even though a thin
        // SVD would only return one right singular vector.
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]);
        let tol = NumericTolerance::default();
        let basis = null_space(&m, &tol).unwrap();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let r = &m * v;
            assert!(r[0].abs() < 1e-12);
            assert_relative_eq!(v.norm(), 1.0, max_relative = 1e-12);
        }
        assert_eq!(numeric_rank(&m, &tol).unwrap() + basis.len(), 3);
    }

    #[test]
    fn square_cycle_is_not_locally_rigid() {
        let f = framework(
            4,
            2,
            &[(0, 1), (1, 2), (2, 3), (0, 3)],
            &[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0], &[0.0, 1.0]],
        );
        let rank = numeric_rank(rigidity_matrix(&f).unwrap().matrix(), &NumericTolerance::default()).unwrap();
        assert_eq!(rank, 4); // one short of 2*4 - 3
        assert!(!is_locally_rigid_at(&f, &NumericTolerance::default()).unwrap());
    }

    #[test]
    fn single_bar_is_rigid_on_the_line() {
        let f = framework(2, 1, &[(0, 1)], &[&[0.0], &[1.0]]);
        assert!(is_locally_rigid_at(&f, &NumericTolerance::default()).unwrap());
    }

    #[test]
    fn too_few_points_for_the_rank_test() {
        let f = framework(2, 3, &[(0, 1)], &[&[0.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]);
        assert!(matches!(
            is_locally_rigid_at(&f, &NumericTolerance::default()),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn triangle_has_no_nonzero_equilibrium_stress() {
        let f = framework(
            3,
            2,
            &[(0, 1), (1, 2), (0, 2)],
            &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]],
        );
        assert!(equilibrium_stress_basis(&f, &NumericTolerance::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn square_with_diagonals_has_the_classic_stress() {
        let (f, _) = square_tensegrity();
        let tol = NumericTolerance::default();
        let basis = equilibrium_stress_basis(&f, &tol).unwrap();
        assert_eq!(basis.len(), 1);
        let w = &basis[0];
        // For the unit square the four side stresses agree and the two
        // diagonal stresses are their negatives.
        let side = w.get(Pair::new(0, 1));
        assert!(side.abs() > 1e-3);
        for pair in [Pair::new(1, 2), Pair::new(2, 3), Pair::new(0, 3)] {
            assert_relative_eq!(w.get(pair), side, max_relative = 1e-9);
        }
        for pair in [Pair::new(0, 2), Pair::new(1, 3)] {
            assert_relative_eq!(w.get(pair), -side, max_relative = 1e-9);
        }
        assert!(verify_equilibrium(&f, w, 1e-9).unwrap());
    }

    #[test]
    fn verify_equilibrium_examples() {
        let (f, w) = square_tensegrity();
        assert!(verify_equilibrium(&f, &w, 1e-9).unwrap());
        assert!(verify_equilibrium(&f, &Stress::zero(f.graph()), 0.0).unwrap());
        let all_ones = Stress::new(f.graph(), f.graph().pairs().map(|p| (p, 1.0))).unwrap();
        assert!(!verify_equilibrium(&f, &all_ones, 1e-9).unwrap());
    }

    #[test]
    fn stress_matrix_of_the_square_is_the_known_integer_matrix() {
        let (f, w) = square_tensegrity();
        let s = stress_matrix(f.graph(), &w).unwrap();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                1.0, -1.0, 1.0, -1.0, //
                -1.0, 1.0, -1.0, 1.0, //
                1.0, -1.0, 1.0, -1.0, //
                -1.0, 1.0, -1.0, 1.0,
            ],
        );
        assert_eq!(s.matrix(), &expected);
        assert_eq!(s.rank(&NumericTolerance::default()).unwrap(), 1);
        let eigs = s.eigenvalues();
        assert_relative_eq!(eigs[3], 4.0, epsilon = 1e-9);
        for e in &eigs[..3] {
            assert_relative_eq!(*e, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn stress_matrix_row_sums_vanish() {
        let (f, w) = square_tensegrity();
        let s = stress_matrix(f.graph(), &w).unwrap();
        for i in 0..4 {
            let sum: f64 = s.matrix().row(i).iter().sum();
            assert_relative_eq!(sum, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn psd_test() {
        let (f, w) = square_tensegrity();
        let tol = NumericTolerance::default();
        let s = stress_matrix(f.graph(), &w).unwrap();
        assert!(is_positive_semidefinite(&s, &tol));
        let negated = stress_matrix(f.graph(), &w.scaled(-1.0)).unwrap();
        assert!(!is_positive_semidefinite(&negated, &tol));
        let zero = stress_matrix(f.graph(), &Stress::zero(f.graph())).unwrap();
        assert!(is_positive_semidefinite(&zero, &tol));
    }

    #[test]
    fn try_from_matrix_checks() {
        let tol = NumericTolerance::default();
        assert!(StressMatrixForm::try_from_matrix(DMatrix::zeros(2, 3), &tol).is_err());
        // asymmetric
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 1.0, -1.0]);
        assert!(StressMatrixForm::try_from_matrix(m, &tol).is_err());
        // symmetric but row sums off
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert!(StressMatrixForm::try_from_matrix(m, &tol).is_err());
        // fine
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        assert!(StressMatrixForm::try_from_matrix(m, &tol).is_ok());
    }

    #[test]
    fn max_rank_stress_on_the_triangle_is_zero() {
        let f = framework(
            3,
            2,
            &[(0, 1), (1, 2), (0, 2)],
            &[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]],
        );
        let (w, rank) = max_rank_stress(&f, 4, 7, &NumericTolerance::default()).unwrap();
        assert_eq!(rank, 0);
        assert_eq!(w.max_abs(), 0.0);
    }

    #[test]
    fn max_rank_stress_is_deterministic() {
        let (f, _) = square_tensegrity();
        let tol = NumericTolerance::default();
        let (w1, r1) = max_rank_stress(&f, 8, 42, &tol).unwrap();
        let (w2, r2) = max_rank_stress(&f, 8, 42, &tol).unwrap();
        assert_eq!(r1, 1);
        assert_eq!(r1, r2);
        assert_eq!(w1, w2);
        assert!(verify_equilibrium(&f, &w1, 1e-9).unwrap());
    }

    #[test]
    fn universal_configuration_of_the_square_stress() {
        let (f, w) = square_tensegrity();
        let tol = NumericTolerance::default();
        let s = stress_matrix(f.graph(), &w).unwrap();
        let q = universal_configuration(&s, &tol).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.len(), 4);
        // Coordinate vectors plus all-ones must span the kernel: stack them
        // against the kernel basis and compare ranks.
        let kernel = null_space(s.matrix(), &tol).unwrap();
        assert_eq!(kernel.len(), 3);
        let mut stacked = DMatrix::zeros(4, 3 + kernel.len());
        for i in 0..4 {
            stacked[(i, 0)] = 1.0;
            stacked[(i, 1)] = q.point(i)[0];
            stacked[(i, 2)] = q.point(i)[1];
        }
        for (c, v) in kernel.iter().enumerate() {
            for i in 0..4 {
                stacked[(i, 3 + c)] = v[i];
            }
        }
        assert_eq!(numeric_rank(&stacked, &tol).unwrap(), 3);
        // And the stress is in equilibrium at the new placement.
        let g = Framework::new(f.graph().clone(), q).unwrap();
        assert!(verify_equilibrium(&g, &w, 1e-9).unwrap());
    }

    #[test]
    fn universal_configuration_of_the_zero_matrix() {
        let tol = NumericTolerance::default();
        let s = StressMatrixForm::try_from_matrix(DMatrix::zeros(3, 3), &tol).unwrap();
        let q = universal_configuration(&s, &tol).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(affine_span_dim(&q, &tol).unwrap(), 2);
    }

    #[test]
    fn universal_configuration_needs_kernel_room() {
        let tol = NumericTolerance::default();
        // Rank n-1 stress matrix: kernel is just all-ones.
        let m = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]);
        let s = StressMatrixForm::try_from_matrix(m, &tol).unwrap();
        assert!(matches!(
            universal_configuration(&s, &tol),
            Err(Error::DegenerateKernel(_))
        ));
    }

    #[test]
    fn is_universal_for_the_square() {
        let (f, w) = square_tensegrity();
        let tol = NumericTolerance::default();
        assert!(is_universal_for(&f, &w, &tol).unwrap());
        assert!(!is_universal_for(&f, &Stress::zero(f.graph()), &tol).unwrap());
    }

    #[test]
    fn is_universal_rejects_flat_configurations() {
        let graph = bar_graph(3, &[(0, 1), (1, 2), (0, 2)]);
        let flat = Configuration::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]],
        )
        .unwrap();
        let f = Framework::new(graph, flat).unwrap();
        let w = Stress::zero(f.graph());
        assert!(matches!(
            is_universal_for(&f, &w, &NumericTolerance::default()),
            Err(Error::DegenerateSpan(_))
        ));
    }

    #[test]
    fn conic_in_the_plane_is_two_directions() {
        let tol = NumericTolerance::default();
        let d = |x: f64, y: f64| DVector::from_vec(vec![x, y]);
        assert!(lies_on_conic_at_infinity(&[d(1.0, 0.0), d(0.0, 1.0)], 2, &tol).unwrap());
        // A direction and its negative are the same projective point.
        assert!(
            lies_on_conic_at_infinity(&[d(1.0, 0.0), d(-2.0, 0.0), d(0.0, 1.0)], 2, &tol).unwrap()
        );
        assert!(
            !lies_on_conic_at_infinity(&[d(1.0, 0.0), d(0.0, 1.0), d(1.0, 1.0)], 2, &tol).unwrap()
        );
        assert!(lies_on_conic_at_infinity(&[], 2, &tol).unwrap());
        assert!(lies_on_conic_at_infinity(&[d(0.0, 0.0)], 2, &tol).is_err());
    }

    #[test]
    fn conic_in_space_needs_six_generic_directions() {
        let tol = NumericTolerance::default();
        let mut rng = crate::generators::SeededRandomSource::new(5);
        let mut draw = |n: usize| -> Vec<DVector<f64>> {
            (0..n)
                .map(|_| DVector::from_vec(vec![rng.symmetric_f64(), rng.symmetric_f64(), rng.symmetric_f64()]))
                .collect()
        };
        // Any five directions in R^3 admit a conic (5 < 6 unknowns)...
        assert!(lies_on_conic_at_infinity(&draw(5), 3, &tol).unwrap());
        // ...six generic ones do not.
        assert!(!lies_on_conic_at_infinity(&draw(6), 3, &tol).unwrap());
    }

    #[test]
    fn affine_span_dims() {
        let tol = NumericTolerance::default();
        let line = Configuration::new(
            3,
            vec![vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0], vec![2.0, 2.0, 2.0]],
        )
        .unwrap();
        assert_eq!(affine_span_dim(&line, &tol).unwrap(), 1);
        let plane = Configuration::new(
            3,
            vec![vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        )
        .unwrap();
        assert_eq!(affine_span_dim(&plane, &tol).unwrap(), 2);
        let point = Configuration::new(3, vec![vec![4.0, 5.0, 6.0]]).unwrap();
        assert_eq!(affine_span_dim(&point, &tol).unwrap(), 0);
    }
}
