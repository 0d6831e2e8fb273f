//! Deterministic generators: seeded randomness, standard graph families,
//! and a registry of small named instances used throughout the tests and
//! the command-line tool.
//!
//! Randomized certification only makes sense if it can be replayed, so the
//! random source is part of the crate's contract: a fixed algorithm, a
//! fixed 64-bit seeding rule, and a fixed mapping from raw output to
//! floats. Identical seeds produce identical streams on every platform.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::combine::SharedVertexMap;
use crate::linalg::{equilibrium_stress_basis, NumericTolerance};
use crate::model::{Configuration, Framework, MemberKind, Pair, Stress, TensegrityGraph};
use crate::{Error, Result};

/// Name of the pseudo-random scheme, recorded for certificate consumers:
/// ChaCha with 8 rounds, seeded via `seed_from_u64`, doubles taken from the
/// top 53 bits of each 64-bit draw.
pub const RNG_ALGORITHM: &str = "chacha8/top53";

/// The crate's only source of randomness.
///
/// Wraps ChaCha8 and exposes exactly the draws the library needs. The
/// float mappings are spelled out here rather than delegated to a
/// distribution type so the stream stays reproducible independently of
/// helper-crate internals: [`unit_f64`](Self::unit_f64) is
/// `(next_u64 >> 11) * 2^-53`, uniform on `[0, 1)`.
#[derive(Debug, Clone)]
pub struct SeededRandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl SeededRandomSource {
    pub fn new(seed: u64) -> Self {
        SeededRandomSource { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// The seed this source was built from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-1, 1)`.
    pub fn symmetric_f64(&mut self) -> f64 {
        2.0 * self.unit_f64() - 1.0
    }

    /// A new independent source seeded from this stream; used to give
    /// sub-computations their own replayable stream.
    pub fn fork(&mut self) -> Self {
        SeededRandomSource::new(self.next_u64())
    }
}

/// Complete graph `K_n` with all members bars.
pub fn complete_graph(n: usize) -> Result<TensegrityGraph> {
    let mut members = Vec::with_capacity(n.saturating_sub(1) * n / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            members.push((i, j, MemberKind::Bar));
        }
    }
    TensegrityGraph::new(n, members)
}

/// Complete bipartite graph `K_{a,b}` with parts `0..a` and `a..a+b`, all
/// members bars.
pub fn complete_bipartite(a: usize, b: usize) -> Result<TensegrityGraph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidGraph(
            "both sides of a complete bipartite graph need at least one vertex".into(),
        ));
    }
    let mut members = Vec::with_capacity(a * b);
    for i in 0..a {
        for j in 0..b {
            members.push((i, a + j, MemberKind::Bar));
        }
    }
    TensegrityGraph::new(a + b, members)
}

/// `n` points in `[0, 1)^d`, drawn point by point, coordinate by
/// coordinate. With probability one (and in practice, always, for the
/// scales this crate works at) the result behaves like a generic
/// configuration: rank computations on it attain their generic values.
pub fn random_configuration(
    n: usize,
    d: usize,
    rng: &mut SeededRandomSource,
) -> Result<Configuration> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidConfiguration(
            "need at least one point and dimension at least 1".into(),
        ));
    }
    let points = (0..n)
        .map(|_| (0..d).map(|_| rng.unit_f64()).collect::<Vec<_>>())
        .collect();
    Configuration::new(d, points)
}

/// The planar quadrilateral tensegrity: cables around the boundary, struts
/// on the two diagonals, together with its (unique up to scale) equilibrium
/// stress normalized so the first cable carries `+1`.
///
/// The four points must be given in strictly convex cyclic order; that
/// ordering is what makes the boundary/diagonal split meaningful, makes
/// the stress space one-dimensional, and gives the stress its proper
/// signs (positive on cables, negative on struts).
pub fn convex_quadrilateral_tensegrity(
    points: &Configuration,
    tol: &NumericTolerance,
) -> Result<(Framework, Stress)> {
    if points.dim() != 2 || points.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "need exactly 4 points in the plane, got {} points in dimension {}",
            points.len(),
            points.dim()
        )));
    }
    let cross = |a: usize, b: usize, c: usize| -> f64 {
        let u = points.point(b) - points.point(a);
        let v = points.point(c) - points.point(b);
        u[0] * v[1] - u[1] * v[0]
    };
    let turns = [cross(0, 1, 2), cross(1, 2, 3), cross(2, 3, 0), cross(3, 0, 1)];
    if turns.iter().any(|t| *t == 0.0) || !(turns.iter().all(|t| *t > 0.0) || turns.iter().all(|t| *t < 0.0)) {
        return Err(Error::InvalidInput(
            "the four points are not in strictly convex cyclic order".into(),
        ));
    }
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
    )?;
    let framework = Framework::new(graph, points.clone())?;
    let basis = equilibrium_stress_basis(&framework, tol)?;
    if basis.len() != 1 {
        return Err(Error::DegenerateSpan(format!(
            "expected a one-dimensional stress space for a convex quadrilateral, found dimension {}",
            basis.len()
        )));
    }
    let anchor = basis[0].get(Pair::new(0, 1));
    if anchor == 0.0 {
        return Err(Error::DegenerateSpan(
            "equilibrium stress vanishes on a boundary cable".into(),
        ));
    }
    let stress = basis[0].scaled(1.0 / anchor);
    // Convexity forces one sign on the boundary and the other on the
    // diagonals; after normalization cables must be positive.
    for (pair, kind) in framework.graph().members() {
        let v = stress.get(pair);
        let ok = match kind {
            MemberKind::Cable => v > 0.0,
            MemberKind::Strut => v < 0.0,
            MemberKind::Bar => unreachable!(),
        };
        if !ok {
            return Err(Error::DegenerateSpan(format!(
                "stress sign on {pair} is inconsistent with a convex quadrilateral"
            )));
        }
    }
    Ok((framework, stress))
}

/// A named instance from the registry: a framework, optionally with a
/// distinguished stress.
#[derive(Debug, Clone)]
pub struct NamedExample {
    pub framework: Framework,
    pub stress: Option<Stress>,
}

/// Seeds for the randomized registry entries. Fixed so that regenerating
/// an instance is bit-for-bit reproducible.
pub const K4_EXAMPLE_SEED: u64 = 11;
pub const K55_EXAMPLE_SEED: u64 = 13;
pub const TWO_K4_GLUE_SEED: u64 = 17;

/// Small named instances, keyed by stable names:
///
/// * `"fig2-square"` — the unit-square tensegrity (boundary cables,
///   diagonal struts) with its exact integer stress `+1`/`-1`;
/// * `"k4-d2"` — `K_4` with bars at a seeded random planar configuration;
/// * `"k55-d3"` — `K_{5,5}` with bars at a seeded random spatial
///   configuration (10 vertices, 25 members);
/// * `"two-k4-glue-1"`, `"two-k4-glue-2"` — the two `K_4` inputs of
///   [`two_k4_glue`], sharing three vertices.
pub fn paper_examples() -> BTreeMap<&'static str, NamedExample> {
    let mut registry = BTreeMap::new();

    let square = Configuration::new(
        2,
        vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![0.0, 1.0],
        ],
    )
    .expect("static data");
    let square_graph = TensegrityGraph::new(
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
    .expect("static data");
    let square_framework = Framework::new(square_graph, square).expect("static data");
    let square_stress = Stress::new(
        square_framework.graph(),
        [
            (Pair::new(0, 1), 1.0),
            (Pair::new(1, 2), 1.0),
            (Pair::new(2, 3), 1.0),
            (Pair::new(0, 3), 1.0),
            (Pair::new(0, 2), -1.0),
            (Pair::new(1, 3), -1.0),
        ],
    )
    .expect("static data");
    registry.insert(
        "fig2-square",
        NamedExample { framework: square_framework, stress: Some(square_stress) },
    );

    let mut rng = SeededRandomSource::new(K4_EXAMPLE_SEED);
    let k4 = Framework::new(
        complete_graph(4).expect("static data"),
        random_configuration(4, 2, &mut rng).expect("static data"),
    )
    .expect("static data");
    registry.insert("k4-d2", NamedExample { framework: k4, stress: None });

    let mut rng = SeededRandomSource::new(K55_EXAMPLE_SEED);
    let k55 = Framework::new(
        complete_bipartite(5, 5).expect("static data"),
        random_configuration(10, 3, &mut rng).expect("static data"),
    )
    .expect("static data");
    registry.insert("k55-d3", NamedExample { framework: k55, stress: None });

    let (first, second, _, _) = two_k4_glue(TWO_K4_GLUE_SEED);
    registry.insert("two-k4-glue-1", NamedExample { framework: first, stress: None });
    registry.insert("two-k4-glue-2", NamedExample { framework: second, stress: None });

    registry
}

/// The canonical joining instance: two planar `K_4` bar frameworks on five
/// points, overlapping in three vertices (a full triangle of shared
/// members), together with the shared-vertex map and the shared bar meant
/// to be erased.
///
/// The first framework sits on points `q0..q3`, the second on `q1..q4`;
/// the shared map identifies the first framework's vertices `1, 2, 3` with
/// the second's `0, 1, 2`, and the bar to erase is `{2, 3}` in the first
/// framework's labelling. Shared coordinates agree exactly because both
/// frameworks draw them from the same sampled points.
pub fn two_k4_glue(seed: u64) -> (Framework, Framework, SharedVertexMap, (usize, usize)) {
    let mut rng = SeededRandomSource::new(seed);
    let q = random_configuration(5, 2, &mut rng).expect("static shape");
    let first_points: Vec<Vec<f64>> = (0..4).map(|i| q.point(i).iter().copied().collect()).collect();
    let second_points: Vec<Vec<f64>> = (1..5).map(|i| q.point(i).iter().copied().collect()).collect();
    let first = Framework::new(
        complete_graph(4).expect("static shape"),
        Configuration::new(2, first_points).expect("static shape"),
    )
    .expect("static shape");
    let second = Framework::new(
        complete_graph(4).expect("static shape"),
        Configuration::new(2, second_points).expect("static shape"),
    )
    .expect("static shape");
    let shared = SharedVertexMap::new(vec![(1, 0), (2, 1), (3, 2)]).expect("static shape");
    (first, second, shared, (2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{check_super_stability, Verdict};
    use crate::linalg::affine_span_dim;
    use approx::assert_relative_eq;

    #[test]
    fn complete_graph_counts() {
        assert_eq!(complete_graph(1).unwrap().member_count(), 0);
        assert_eq!(complete_graph(4).unwrap().member_count(), 6);
        assert_eq!(complete_graph(6).unwrap().member_count(), 15);
        assert!(complete_graph(4).unwrap().is_complete());
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn complete_bipartite_counts() {
        let g = complete_bipartite(5, 5).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.member_count(), 25);
        // no members inside a part
        assert!(!g.contains(Pair::new(0, 1)));
        assert!(g.contains(Pair::new(0, 5)));
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn random_streams_replay_exactly() {
        let mut a = SeededRandomSource::new(99);
        let mut b = SeededRandomSource::new(99);
        let ca = random_configuration(6, 3, &mut a).unwrap();
        let cb = random_configuration(6, 3, &mut b).unwrap();
        assert_eq!(ca, cb);
        let mut c = SeededRandomSource::new(100);
        let cc = random_configuration(6, 3, &mut c).unwrap();
        assert_ne!(ca, cc);
    }

    #[test]
    fn unit_draws_stay_in_range() {
        let mut rng = SeededRandomSource::new(3);
        for _ in 0..1000 {
            let u = rng.unit_f64();
            assert!((0.0..1.0).contains(&u));
            let s = rng.symmetric_f64();
            assert!((-1.0..1.0).contains(&s));
        }
    }

    #[test]
    fn random_configurations_span_fully() {
        let tol = NumericTolerance::default();
        for seed in 0..5 {
            let mut rng = SeededRandomSource::new(seed);
            let c = random_configuration(5, 3, &mut rng).unwrap();
            assert_eq!(affine_span_dim(&c, &tol).unwrap(), 3);
        }
    }

    #[test]
    fn quadrilateral_stress_on_the_unit_square() {
        let tol = NumericTolerance::default();
        let square = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap();
        let (f, w) = convex_quadrilateral_tensegrity(&square, &tol).unwrap();
        assert_eq!(w.get(Pair::new(0, 1)), 1.0);
        for pair in [Pair::new(1, 2), Pair::new(2, 3), Pair::new(0, 3)] {
            assert_relative_eq!(w.get(pair), 1.0, epsilon = 1e-9);
        }
        for pair in [Pair::new(0, 2), Pair::new(1, 3)] {
            assert_relative_eq!(w.get(pair), -1.0, epsilon = 1e-9);
        }
        let cert = check_super_stability(&f, &w, &tol).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedYes);
    }

    #[test]
    fn quadrilateral_survives_affine_distortion() {
        // Shear the square; stresses change but super stability survives.
        let tol = NumericTolerance::default();
        let sheared = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![2.0, 0.1],
                vec![2.5, 1.3],
                vec![-0.2, 1.1],
            ],
        )
        .unwrap();
        let (f, w) = convex_quadrilateral_tensegrity(&sheared, &tol).unwrap();
        let cert = check_super_stability(&f, &w, &tol).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedYes);
    }

    #[test]
    fn quadrilateral_rejects_bad_orders() {
        let tol = NumericTolerance::default();
        // Crossed order (bow tie).
        let crossed = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 1.0],
            ],
        )
        .unwrap();
        assert!(convex_quadrilateral_tensegrity(&crossed, &tol).is_err());
        // Collinear triple.
        let flat = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![2.0, 0.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap();
        assert!(convex_quadrilateral_tensegrity(&flat, &tol).is_err());
    }

    #[test]
    fn registry_contents() {
        let reg = paper_examples();
        for name in ["fig2-square", "k4-d2", "k55-d3", "two-k4-glue-1", "two-k4-glue-2"] {
            assert!(reg.contains_key(name), "missing registry entry {name}");
        }
        let fig2 = &reg["fig2-square"];
        assert!(fig2.stress.is_some());
        let k55 = &reg["k55-d3"];
        assert_eq!(k55.framework.vertex_count(), 10);
        assert_eq!(k55.framework.graph().member_count(), 25);
        assert_eq!(k55.framework.dim(), 3);
    }

    #[test]
    fn registry_is_reproducible() {
        let a = paper_examples();
        let b = paper_examples();
        assert_eq!(
            a["k55-d3"].framework.configuration(),
            b["k55-d3"].framework.configuration()
        );
    }

    #[test]
    fn glue_inputs_share_three_vertices_exactly() {
        let (first, second, shared, bar) = two_k4_glue(TWO_K4_GLUE_SEED);
        assert_eq!(shared.len(), 3);
        for &(a, b) in shared.pairs() {
            assert_eq!(first.configuration().point(a), second.configuration().point(b));
        }
        let bar_pair = Pair::new(bar.0, bar.1);
        assert!(first.graph().contains(bar_pair));
    }
}
