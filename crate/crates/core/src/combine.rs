//! Combining certified frameworks along shared vertices: zero-padded
//! stress-matrix extension, rank-preserving blends, union-glue, the
//! bar-erasing combination of two globally rigid frameworks overlapping in
//! `d + 1` vertices (with its explicit witness stress), and the
//! superposition of super-stable tensegrities with a cancelling
//! cable/strut pair.
//!
//! All operations take coordinates as given and require shared vertices to
//! already coincide (within a supplied tolerance); [`align_onto_shared`]
//! is the plumbing that rigidly moves one framework onto the other first
//! when needed.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::certify::{check_super_stability, Verdict, DEFAULT_TRIALS};
use crate::generators::SeededRandomSource;
use crate::linalg::{
    affine_span_dim, max_rank_stress, stress_matrix, NumericTolerance, StressMatrixForm,
};
use crate::model::{Configuration, Framework, MemberKind, Pair, Stress, TensegrityGraph};
use crate::{Error, Result};

/// An identification of vertices between two frameworks: a list of
/// `(index in framework 1, index in framework 2)` pairs, injective on both
/// sides. The map also fixes the relabeling into the combined index
/// space: shared vertices first (in map order), then framework 1's
/// exclusive vertices in ascending order, then framework 2's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedVertexMap {
    pairs: Vec<(usize, usize)>,
}

impl SharedVertexMap {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("shared vertex map has no pairs".into()));
        }
        let mut left = std::collections::BTreeSet::new();
        let mut right = std::collections::BTreeSet::new();
        for &(a, b) in &pairs {
            if !left.insert(a) {
                return Err(Error::InvalidInput(format!(
                    "vertex {a} of framework 1 is shared twice"
                )));
            }
            if !right.insert(b) {
                return Err(Error::InvalidInput(format!(
                    "vertex {b} of framework 2 is shared twice"
                )));
            }
        }
        Ok(SharedVertexMap { pairs })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> std::slice::Iter<'_, (usize, usize)> {
        self.pairs.iter()
    }

    /// Framework 2's label for a shared framework 1 vertex, if shared.
    pub fn right_of(&self, left: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(a, _)| a == left).map(|&(_, b)| b)
    }

    /// Framework 1's label for a shared framework 2 vertex, if shared.
    pub fn left_of(&self, right: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(_, b)| b == right).map(|&(a, _)| a)
    }

    /// The induced relabeling for frameworks of the given sizes; errors if
    /// any shared index is out of range.
    pub fn labels(&self, n1: usize, n2: usize) -> Result<CombinedLabels> {
        for &(a, b) in &self.pairs {
            if a >= n1 {
                return Err(Error::InvalidInput(format!(
                    "shared vertex {a} is out of range for framework 1 ({n1} vertices)"
                )));
            }
            if b >= n2 {
                return Err(Error::InvalidInput(format!(
                    "shared vertex {b} is out of range for framework 2 ({n2} vertices)"
                )));
            }
        }
        let mut left = vec![usize::MAX; n1];
        let mut right = vec![usize::MAX; n2];
        for (slot, &(a, b)) in self.pairs.iter().enumerate() {
            left[a] = slot;
            right[b] = slot;
        }
        let mut next = self.pairs.len();
        for v in 0..n1 {
            if left[v] == usize::MAX {
                left[v] = next;
                next += 1;
            }
        }
        for v in 0..n2 {
            if right[v] == usize::MAX {
                right[v] = next;
                next += 1;
            }
        }
        Ok(CombinedLabels { left, right, total: next, shared: self.pairs.len() })
    }
}

/// The combined index space induced by a [`SharedVertexMap`]: combined
/// indices `0 .. shared` are the shared vertices, followed by framework
/// 1's exclusive vertices and then framework 2's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedLabels {
    left: Vec<usize>,
    right: Vec<usize>,
    total: usize,
    shared: usize,
}

impl CombinedLabels {
    /// Combined index of a framework 1 vertex.
    pub fn of_left(&self, v: usize) -> usize {
        self.left[v]
    }

    /// Combined index of a framework 2 vertex.
    pub fn of_right(&self, v: usize) -> usize {
        self.right[v]
    }

    /// Combined indices of all framework 1 vertices, in label order.
    pub fn left(&self) -> &[usize] {
        &self.left
    }

    /// Combined indices of all framework 2 vertices, in label order.
    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn shared(&self) -> usize {
        self.shared
    }
}

/// Embed a stress matrix into a larger index space, placing entry
/// `(a, b)` at `(embed[a], embed[b])` and zero everywhere else. Padding
/// with zero rows and columns keeps row sums at zero and leaves the rank
/// unchanged, while the kernel gains one dimension per added index.
pub fn extend_stress_matrix(
    s: &StressMatrixForm,
    embed: &[usize],
    total_n: usize,
) -> Result<StressMatrixForm> {
    let n = s.size();
    if embed.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "embedding lists {} indices for a {n}x{n} stress matrix",
            embed.len()
        )));
    }
    let mut seen = vec![false; total_n];
    for &idx in embed {
        if idx >= total_n {
            return Err(Error::InvalidInput(format!(
                "embedded index {idx} is out of range for size {total_n}"
            )));
        }
        if seen[idx] {
            return Err(Error::InvalidInput(format!(
                "embedding maps two indices onto {idx}"
            )));
        }
        seen[idx] = true;
    }
    let mut big = DMatrix::<f64>::zeros(total_n, total_n);
    for a in 0..n {
        for b in 0..n {
            big[(embed[a], embed[b])] = s.matrix()[(a, b)];
        }
    }
    Ok(StressMatrixForm::from_symmetric_unchecked(big))
}

/// The blend `t S1 + (1 - t) S2` of two stress matrices of the same size,
/// together with its numeric rank. The endpoint values `t = 0` and
/// `t = 1` are rejected: they return one input unchanged and carry none of
/// the blend's rank guarantees. Whenever
/// `rank S1 + rank S2 = n - dim(ker S1 ∩ ker S2)`, the blend attains rank
/// `n - dim(ker S1 ∩ ker S2)` for every other `t`.
pub fn blend_stress_matrices(
    s1: &StressMatrixForm,
    s2: &StressMatrixForm,
    t: f64,
    tol: &NumericTolerance,
) -> Result<(StressMatrixForm, usize)> {
    if s1.size() != s2.size() {
        return Err(Error::DimensionMismatch(format!(
            "cannot blend stress matrices of sizes {} and {}",
            s1.size(),
            s2.size()
        )));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite("blend parameter is not finite".into()));
    }
    if t == 0.0 || t == 1.0 {
        return Err(Error::InvalidInput(
            "blend parameter must differ from 0 and 1; the endpoints degenerate to a single input".into(),
        ));
    }
    let blended = s1.matrix() * t + s2.matrix() * (1.0 - t);
    let s = StressMatrixForm::from_symmetric_unchecked(blended);
    let rank = s.rank(tol)?;
    Ok((s, rank))
}

/// Rigidly move framework 2 so that its shared vertices land on framework
/// 1's, returning the moved copy.
///
/// The isometry (orthogonal map plus translation; reflections allowed) is
/// fitted to the shared vertices by orthogonal Procrustes and applied to
/// every vertex of framework 2; afterwards the shared coordinates are
/// snapped bitwise onto framework 1's so that downstream glue steps see
/// exact agreement. Errors if the two shared subconfigurations are not
/// congruent within `tol`.
pub fn align_onto_shared(
    f1: &Framework,
    f2: &Framework,
    shared: &SharedVertexMap,
    tol: f64,
) -> Result<Framework> {
    let d = f1.dim();
    if f2.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "frameworks live in dimensions {d} and {}",
            f2.dim()
        )));
    }
    shared.labels(f1.vertex_count(), f2.vertex_count())?;
    let k = shared.len() as f64;
    let mut centroid1 = DVector::<f64>::zeros(d);
    let mut centroid2 = DVector::<f64>::zeros(d);
    for &(a, b) in shared.pairs() {
        centroid1 += f1.configuration().point(a);
        centroid2 += f2.configuration().point(b);
    }
    centroid1 /= k;
    centroid2 /= k;
    let mut h = DMatrix::<f64>::zeros(d, d);
    for &(a, b) in shared.pairs() {
        let x = f2.configuration().point(b) - &centroid2;
        let y = f1.configuration().point(a) - &centroid1;
        h += x * y.transpose();
    }
    let svd = nalgebra::SVD::new(h, true, true);
    let u = svd.u.ok_or_else(|| Error::NonFinite("SVD of the alignment matrix failed".into()))?;
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::NonFinite("SVD of the alignment matrix failed".into()))?;
    let rotation = v_t.transpose() * u.transpose();

    let mut moved: Vec<DVector<f64>> = Vec::with_capacity(f2.vertex_count());
    for v in 0..f2.vertex_count() {
        let q = f2.configuration().point(v) - &centroid2;
        moved.push(&rotation * q + &centroid1);
    }
    for &(a, b) in shared.pairs() {
        let residual = (&moved[b] - f1.configuration().point(a)).amax();
        if residual > tol {
            return Err(Error::InvalidInput(format!(
                "shared subconfigurations are not congruent: vertices {a} and {b} still differ by {residual:.3e} after the best rigid motion"
            )));
        }
        moved[b] = f1.configuration().point(a).clone();
    }
    Framework::new(f2.graph().clone(), Configuration::from_vectors(d, moved)?)
}

/// How a union treats framework 2 members running between two shared
/// vertices when framework 1 lacks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnionRule {
    /// Keep every member of both frameworks.
    KeepAll,
    /// Drop framework 2 members whose endpoints are both shared and which
    /// have no counterpart in framework 1.
    DropSharedSpanned,
}

/// Shared mechanics of the union constructions: relabel, check that
/// shared coordinates agree within `tol` (framework 1's coordinates win),
/// and merge the member sets under the given rule. Overlapped members
/// must agree in kind.
fn union_framework(
    f1: &Framework,
    f2: &Framework,
    shared: &SharedVertexMap,
    tol: f64,
    rule: UnionRule,
) -> Result<(Framework, CombinedLabels)> {
    let d = f1.dim();
    if f2.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "frameworks live in dimensions {d} and {}",
            f2.dim()
        )));
    }
    let labels = shared.labels(f1.vertex_count(), f2.vertex_count())?;
    for &(a, b) in shared.pairs() {
        let gap = (f1.configuration().point(a) - f2.configuration().point(b)).amax();
        if gap > tol {
            return Err(Error::InvalidInput(format!(
                "shared vertices {a} (framework 1) and {b} (framework 2) sit {gap:.3e} apart, beyond tolerance {tol:.3e}"
            )));
        }
    }

    let mut points: Vec<Option<DVector<f64>>> = vec![None; labels.total()];
    for v in 0..f1.vertex_count() {
        points[labels.of_left(v)] = Some(f1.configuration().point(v).clone());
    }
    for v in 0..f2.vertex_count() {
        let c = labels.of_right(v);
        if points[c].is_none() {
            points[c] = Some(f2.configuration().point(v).clone());
        }
    }
    let points: Vec<DVector<f64>> =
        points.into_iter().map(|p| p.expect("every combined slot is placed")).collect();

    let mut members: BTreeMap<Pair, MemberKind> = BTreeMap::new();
    for (pair, kind) in f1.graph().members() {
        members.insert(Pair::new(labels.of_left(pair.i()), labels.of_left(pair.j())), kind);
    }
    for (pair, kind) in f2.graph().members() {
        let p = Pair::new(labels.of_right(pair.i()), labels.of_right(pair.j()));
        match members.get(&p) {
            Some(&existing) => {
                if existing != kind {
                    return Err(Error::InvalidInput(format!(
                        "overlapped member {p} is a {existing} in framework 1 but a {kind} in framework 2"
                    )));
                }
            }
            None => {
                let spanned = p.i() < labels.shared() && p.j() < labels.shared();
                if spanned && rule == UnionRule::DropSharedSpanned {
                    continue;
                }
                members.insert(p, kind);
            }
        }
    }
    let graph = TensegrityGraph::new(
        labels.total(),
        members.into_iter().map(|(p, k)| (p.i(), p.j(), k)),
    )?;
    let framework = Framework::new(graph, Configuration::from_vectors(d, points)?)?;
    Ok((framework, labels))
}

/// Glue two frameworks along at least `d + 1` shared vertices: the result
/// keeps all members of framework 1 and those members of framework 2 with
/// at least one exclusive endpoint, dropping framework 2 members that run
/// between shared vertices without a counterpart in framework 1. When
/// both inputs are globally rigid at a generic combined configuration the
/// glued framework is globally rigid again.
pub fn glue_union(
    f1: &Framework,
    f2: &Framework,
    shared: &SharedVertexMap,
    tol: f64,
) -> Result<Framework> {
    let d = f1.dim();
    if shared.len() < d + 1 {
        return Err(Error::Precondition(format!(
            "gluing needs at least d + 1 = {} shared vertices, got {}",
            d + 1,
            shared.len()
        )));
    }
    let (framework, _) = union_framework(f1, f2, shared, tol, UnionRule::DropSharedSpanned)?;
    Ok(framework)
}

/// Which construction produced the witness stress of
/// [`combine_erase_bar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessRoute {
    /// Both input stresses were nonzero on the erased bar; the witness is
    /// the half/half blend after rescaling them to +1 and -1 there.
    Blended,
    /// One input stress already vanished on the erased bar, so that
    /// stress, zero-padded to the union, serves unchanged.
    SingleStress,
}

/// The result of [`combine_erase_bar`]: the combined framework with the
/// bar removed, the witness stress, and how the witness measured up.
#[derive(Debug, Clone)]
pub struct EraseBarOutcome {
    pub framework: Framework,
    pub witness: Stress,
    /// Numeric rank of the witness's stress matrix.
    pub witness_rank: usize,
    /// The maximal possible rank `n - d - 1` on the combined vertex set.
    pub target_rank: usize,
    pub route: WitnessRoute,
    /// Set when the witness misses its rank target; the combination is
    /// then inconclusive and must not be read as a certification.
    pub note: Option<String>,
}

impl EraseBarOutcome {
    pub fn is_conclusive(&self) -> bool {
        self.note.is_none()
    }
}

/// Combine two bar frameworks overlapping in exactly `d + 1` shared
/// vertices and erase one common bar, producing a witness stress for the
/// result.
///
/// `bar` names the erased member in framework 1's labels; both endpoints
/// must be shared and the member must belong to both graphs. Max-rank
/// equilibrium stresses are found for each input (seeded search). If both
/// are nonzero on the bar they are rescaled to carry +1 and -1 there and
/// averaged, which cancels the bar's stress exactly and — when the inputs
/// were globally rigid — yields maximal stress-matrix rank on the union.
/// If either stress already vanishes on the bar it is used alone,
/// zero-padded. Either way the witness's rank is measured against
/// `n - d - 1` and any shortfall is flagged on the outcome rather than
/// silently accepted.
pub fn combine_erase_bar(
    f1: &Framework,
    f2: &Framework,
    shared: &SharedVertexMap,
    bar: (usize, usize),
    seed: u64,
    tol: f64,
    numeric: &NumericTolerance,
) -> Result<EraseBarOutcome> {
    let d = f1.dim();
    if f2.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "frameworks live in dimensions {d} and {}",
            f2.dim()
        )));
    }
    if shared.len() != d + 1 {
        return Err(Error::Precondition(format!(
            "this combination needs exactly d + 1 = {} shared vertices, got {}",
            d + 1,
            shared.len()
        )));
    }
    if f1.vertex_count() < d + 2 || f2.vertex_count() < d + 2 {
        return Err(Error::Precondition(format!(
            "each framework needs at least d + 2 = {} vertices, got {} and {}",
            d + 2,
            f1.vertex_count(),
            f2.vertex_count()
        )));
    }
    if !f1.graph().is_bar_only() || !f2.graph().is_bar_only() {
        return Err(Error::InvalidInput(
            "bar frameworks required; one of the inputs has cables or struts".into(),
        ));
    }
    if bar.0 == bar.1 {
        return Err(Error::InvalidInput("erased bar joins a vertex to itself".into()));
    }
    let bar1 = Pair::new(bar.0, bar.1);
    let b2i = shared.right_of(bar1.i()).ok_or_else(|| {
        Error::InvalidInput(format!("bar endpoint {} is not a shared vertex", bar1.i()))
    })?;
    let b2j = shared.right_of(bar1.j()).ok_or_else(|| {
        Error::InvalidInput(format!("bar endpoint {} is not a shared vertex", bar1.j()))
    })?;
    let bar2 = Pair::new(b2i, b2j);
    if !f1.graph().contains(bar1) {
        return Err(Error::MemberNotInGraph { i: bar1.i(), j: bar1.j() });
    }
    if !f2.graph().contains(bar2) {
        return Err(Error::MemberNotInGraph { i: bar2.i(), j: bar2.j() });
    }
    let shared_points: Vec<DVector<f64>> = shared
        .pairs()
        .map(|&(a, _)| f1.configuration().point(a).clone())
        .collect();
    let shared_config = Configuration::from_vectors(d, shared_points)?;
    if affine_span_dim(&shared_config, numeric)? != d {
        return Err(Error::DegenerateSpan(
            "shared vertices lie in a lower-dimensional hyperplane".into(),
        ));
    }

    let (union, labels) = union_framework(f1, f2, shared, tol, UnionRule::KeepAll)?;
    let bar_combined = Pair::new(labels.of_left(bar1.i()), labels.of_left(bar1.j()));

    let mut rng = SeededRandomSource::new(seed);
    let seed1 = rng.next_u64();
    let seed2 = rng.next_u64();
    let (w1, _) = max_rank_stress(f1, DEFAULT_TRIALS, seed1, numeric)?;
    let (w2, _) = max_rank_stress(f2, DEFAULT_TRIALS, seed2, numeric)?;

    let zero1 = w1.get(bar1).abs() <= numeric.rank_threshold_factor * (1.0 + w1.max_abs());
    let zero2 = w2.get(bar2).abs() <= numeric.rank_threshold_factor * (1.0 + w2.max_abs());

    let mut combined_values: BTreeMap<Pair, f64> = BTreeMap::new();
    let route = if zero1 || zero2 {
        // One stress never loads the bar, so removing the bar keeps that
        // stress in equilibrium; it certifies on its own, zero-padded.
        let (w, side): (&Stress, &[usize]) = if zero1 {
            (&w1, labels.left())
        } else {
            (&w2, labels.right())
        };
        for (pair, value) in w.iter() {
            combined_values.insert(Pair::new(side[pair.i()], side[pair.j()]), value);
        }
        WitnessRoute::SingleStress
    } else {
        // Rescale so the bar carries +1 in one stress and -1 in the other;
        // the half/half average is then exactly 0 there.
        let s1 = w1.scaled(1.0 / w1.get(bar1));
        let s2 = w2.scaled(-1.0 / w2.get(bar2));
        for (pair, value) in s1.iter() {
            let p = Pair::new(labels.of_left(pair.i()), labels.of_left(pair.j()));
            *combined_values.entry(p).or_insert(0.0) += 0.5 * value;
        }
        for (pair, value) in s2.iter() {
            let p = Pair::new(labels.of_right(pair.i()), labels.of_right(pair.j()));
            *combined_values.entry(p).or_insert(0.0) += 0.5 * value;
        }
        WitnessRoute::Blended
    };
    combined_values.remove(&bar_combined);

    let graph = union.graph().without_member(bar_combined)?;
    let framework = Framework::new(graph, union.configuration().clone())?;
    let witness = Stress::new(framework.graph(), combined_values)?;

    let witness_rank = stress_matrix(framework.graph(), &witness)?.rank(numeric)?;
    let n = framework.vertex_count();
    let target_rank = n - d - 1;
    let note = if witness_rank == target_rank {
        None
    } else {
        Some(format!(
            "witness stress matrix has rank {witness_rank}, short of the maximal rank {target_rank}; global rigidity of the combination is not certified"
        ))
    };
    Ok(EraseBarOutcome { framework, witness, witness_rank, target_rank, route, note })
}

/// Superimpose two super-stable tensegrities that overlap in at least
/// `d + 1` shared vertices, cancelling a shared member that is a cable in
/// one and a strut in the other, and return the combined tensegrity with
/// its summed stress.
///
/// Both supplied stresses must pass [`check_super_stability`] for their
/// tensegrities. They are rescaled positively so the cancelling pair
/// carries +1 and -1, then summed over the union; the cancelled member
/// disappears, and every other doubly-covered member is reclassified by
/// the sign of its net stress: positive means cable, negative means strut,
/// and a vanishing net removes the member. Members covered once keep
/// their kind, and a bar overlapping anything stays a bar. The summed
/// stress is proper for the output kinds by construction, and the output
/// is super stable in turn.
pub fn superimpose_tensegrities(
    t1: &Framework,
    w1: &Stress,
    t2: &Framework,
    w2: &Stress,
    shared: &SharedVertexMap,
    cancel: (usize, usize),
    tol: f64,
    numeric: &NumericTolerance,
) -> Result<(Framework, Stress)> {
    let d = t1.dim();
    if t2.dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "tensegrities live in dimensions {d} and {}",
            t2.dim()
        )));
    }
    if shared.len() < d + 1 {
        return Err(Error::Precondition(format!(
            "superposition needs at least d + 1 = {} shared vertices, got {}",
            d + 1,
            shared.len()
        )));
    }
    let shared_points: Vec<DVector<f64>> = shared
        .pairs()
        .map(|&(a, _)| t1.configuration().point(a).clone())
        .collect();
    if affine_span_dim(&Configuration::from_vectors(d, shared_points)?, numeric)? != d {
        return Err(Error::DegenerateSpan(
            "shared vertices lie in a lower-dimensional hyperplane".into(),
        ));
    }
    if cancel.0 == cancel.1 {
        return Err(Error::InvalidInput("cancel member joins a vertex to itself".into()));
    }
    let c1 = Pair::new(cancel.0, cancel.1);
    let c2i = shared.right_of(c1.i()).ok_or_else(|| {
        Error::InvalidInput(format!("cancel endpoint {} is not a shared vertex", c1.i()))
    })?;
    let c2j = shared.right_of(c1.j()).ok_or_else(|| {
        Error::InvalidInput(format!("cancel endpoint {} is not a shared vertex", c1.j()))
    })?;
    let c2 = Pair::new(c2i, c2j);
    let kind1 = t1
        .graph()
        .kind(c1)
        .ok_or(Error::MemberNotInGraph { i: c1.i(), j: c1.j() })?;
    let kind2 = t2
        .graph()
        .kind(c2)
        .ok_or(Error::MemberNotInGraph { i: c2.i(), j: c2.j() })?;
    if !matches!(
        (kind1, kind2),
        (MemberKind::Cable, MemberKind::Strut) | (MemberKind::Strut, MemberKind::Cable)
    ) {
        return Err(Error::InvalidInput(format!(
            "cancel member must be a cable in one tensegrity and a strut in the other, got {kind1} and {kind2}"
        )));
    }

    let first = check_super_stability(t1, w1, numeric)?;
    if first.verdict != Verdict::CertifiedYes {
        return Err(Error::Precondition(format!(
            "first tensegrity is not super stable with the supplied stress: {}",
            first.reason
        )));
    }
    let second = check_super_stability(t2, w2, numeric)?;
    if second.verdict != Verdict::CertifiedYes {
        return Err(Error::Precondition(format!(
            "second tensegrity is not super stable with the supplied stress: {}",
            second.reason
        )));
    }

    let a1 = w1.get(c1);
    let a2 = w2.get(c2);
    if a1 == 0.0 || a2 == 0.0 {
        return Err(Error::InvalidInput(
            "cancel member carries zero stress and cannot be cancelled".into(),
        ));
    }
    // Positive rescaling puts +1 on the cable side and -1 on the strut
    // side of the cancelling pair, which then sum to exactly 0.
    let s1 = w1.scaled(1.0 / a1.abs());
    let s2 = w2.scaled(1.0 / a2.abs());

    let labels = shared.labels(t1.vertex_count(), t2.vertex_count())?;
    for &(a, b) in shared.pairs() {
        let gap = (t1.configuration().point(a) - t2.configuration().point(b)).amax();
        if gap > tol {
            return Err(Error::InvalidInput(format!(
                "shared vertices {a} (tensegrity 1) and {b} (tensegrity 2) sit {gap:.3e} apart, beyond tolerance {tol:.3e}"
            )));
        }
    }
    let mut points: Vec<Option<DVector<f64>>> = vec![None; labels.total()];
    for v in 0..t1.vertex_count() {
        points[labels.of_left(v)] = Some(t1.configuration().point(v).clone());
    }
    for v in 0..t2.vertex_count() {
        let c = labels.of_right(v);
        if points[c].is_none() {
            points[c] = Some(t2.configuration().point(v).clone());
        }
    }
    let points: Vec<DVector<f64>> =
        points.into_iter().map(|p| p.expect("every combined slot is placed")).collect();

    struct Overlay {
        net: f64,
        from1: Option<MemberKind>,
        from2: Option<MemberKind>,
    }
    let mut overlays: BTreeMap<Pair, Overlay> = BTreeMap::new();
    for (pair, kind) in t1.graph().members() {
        let p = Pair::new(labels.of_left(pair.i()), labels.of_left(pair.j()));
        overlays.insert(p, Overlay { net: s1.get(pair), from1: Some(kind), from2: None });
    }
    for (pair, kind) in t2.graph().members() {
        let p = Pair::new(labels.of_right(pair.i()), labels.of_right(pair.j()));
        let entry = overlays.entry(p).or_insert(Overlay { net: 0.0, from1: None, from2: None });
        entry.net += s2.get(pair);
        entry.from2 = Some(kind);
    }
    let cancel_combined = Pair::new(labels.of_left(c1.i()), labels.of_left(c1.j()));
    overlays.remove(&cancel_combined);

    let net_scale: f64 = overlays.values().fold(0.0, |acc, o| acc.max(o.net.abs()));
    let vanish = numeric.rank_threshold_factor * (1.0 + net_scale);
    let mut members: Vec<(usize, usize, MemberKind)> = Vec::new();
    let mut values: Vec<(Pair, f64)> = Vec::new();
    for (pair, overlay) in &overlays {
        let kind = match (overlay.from1, overlay.from2) {
            (Some(k), None) | (None, Some(k)) => k,
            (Some(MemberKind::Bar), Some(_)) | (Some(_), Some(MemberKind::Bar)) => MemberKind::Bar,
            (Some(a), Some(b)) if a == b => a,
            (Some(_), Some(_)) => {
                // cable over strut: the net stress decides, and a
                // vanishing net removes the member entirely
                if overlay.net > vanish {
                    MemberKind::Cable
                } else if overlay.net < -vanish {
                    MemberKind::Strut
                } else {
                    continue;
                }
            }
            (None, None) => unreachable!("overlay entries always have a source"),
        };
        members.push((pair.i(), pair.j(), kind));
        values.push((*pair, overlay.net));
    }
    let graph = TensegrityGraph::new(labels.total(), members)?;
    let framework = Framework::new(graph, Configuration::from_vectors(d, points)?)?;
    let stress = Stress::new(framework.graph(), values)?;
    Ok((framework, stress))
}
