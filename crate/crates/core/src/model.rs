//! Tensegrities, frameworks, configurations, and stresses.
//!
//! The model is deliberately plain: a [`TensegrityGraph`] is a simple graph
//! on `0..n` whose members carry a [`MemberKind`]; a [`Configuration`] places
//! `n` points in `R^d`; a [`Framework`] pairs the two. A [`Stress`] assigns a
//! scalar to every member of a particular graph. All member containers are
//! ordered (`BTreeMap` keyed by canonical [`Pair`]s), so iteration order — and
//! therefore everything derived from it, such as rigidity-matrix row order or
//! serialized output — is deterministic.

use std::collections::BTreeMap;

use nalgebra::DVector;

use crate::{Error, Result};

/// How a member constrains the distance between its endpoints: cables may
/// not lengthen, struts may not shorten, bars must stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MemberKind {
    Cable,
    Strut,
    Bar,
}

impl MemberKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MemberKind::Cable => "cable",
            MemberKind::Strut => "strut",
            MemberKind::Bar => "bar",
        }
    }
}

impl std::fmt::Display for MemberKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An unordered vertex pair in canonical form (`i < j`).
///
/// `Pair` is the key type for members and stresses; constructing one from a
/// loop (`a == b`) is a programming error and panics. Input validation that
/// can encounter loops happens in [`TensegrityGraph::new`], which reports a
/// proper error before any `Pair` is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    i: usize,
    j: usize,
}

impl Pair {
    pub fn new(a: usize, b: usize) -> Self {
        assert!(a != b, "a member must join two distinct vertices, got {{{a}, {a}}}");
        if a < b {
            Pair { i: a, j: b }
        } else {
            Pair { i: b, j: a }
        }
    }

    /// Smaller endpoint.
    pub fn i(self) -> usize {
        self.i
    }

    /// Larger endpoint.
    pub fn j(self) -> usize {
        self.j
    }

    pub fn contains(self, v: usize) -> bool {
        self.i == v || self.j == v
    }

    /// The endpoint that is not `v`; panics if `v` is not an endpoint.
    pub fn other(self, v: usize) -> usize {
        if v == self.i {
            self.j
        } else if v == self.j {
            self.i
        } else {
            panic!("vertex {v} is not an endpoint of {{{}, {}}}", self.i, self.j)
        }
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}, {}}}", self.i, self.j)
    }
}

/// A placement of `n` points in `R^d`, with `n >= 1`, `d >= 1`, and every
/// coordinate finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    dim: usize,
    points: Vec<DVector<f64>>,
}

impl Configuration {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_vectors(
            dim,
            points.into_iter().map(DVector::from_vec).collect::<Vec<_>>(),
        )
    }

    pub fn from_vectors(dim: usize, points: Vec<DVector<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidConfiguration(
                "dimension must be at least 1".into(),
            ));
        }
        if points.is_empty() {
            return Err(Error::InvalidConfiguration(
                "a configuration needs at least one point".into(),
            ));
        }
        for (idx, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidConfiguration(format!(
                    "point {idx} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if !p.iter().all(|c| c.is_finite()) {
                return Err(Error::NonFinite(format!(
                    "point {idx} has a NaN or infinite coordinate"
                )));
            }
        }
        Ok(Configuration { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one point
    }

    pub fn point(&self, i: usize) -> &DVector<f64> {
        &self.points[i]
    }

    pub fn points(&self) -> &[DVector<f64>] {
        &self.points
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        (&self.points[a] - &self.points[b]).norm()
    }

    pub fn max_coordinate_magnitude(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| p.iter())
            .fold(0.0, |acc, c| acc.max(c.abs()))
    }

    /// Scale-aware default comparison tolerance:
    /// `1e-9 * (1 + max |coordinate|)`.
    pub fn default_tol(&self) -> f64 {
        1e-9 * (1.0 + self.max_coordinate_magnitude())
    }

    /// True when all `n(n-1)/2` pairwise distances agree with `other` within
    /// `tol`, i.e. the two placements differ by (a limit of) isometries.
    pub fn congruent_to(&self, other: &Configuration, tol: f64) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "configurations place {} and {} points",
                self.len(),
                other.len()
            )));
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "configurations live in dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        for a in 0..self.len() {
            for b in (a + 1)..self.len() {
                if (self.distance(a, b) - other.distance(a, b)).abs() > tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A simple labelled graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensegrityGraph {
    vertex_count: usize,
    members: BTreeMap<Pair, MemberKind>,
}

impl TensegrityGraph {
    pub fn new(
        vertex_count: usize,
        members: impl IntoIterator<Item = (usize, usize, MemberKind)>,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut map = BTreeMap::new();
        for (a, b, kind) in members {
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "member {{{a}, {b}}} is a loop"
                )));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "member {{{a}, {b}}} references a vertex out of range for {vertex_count} vertices"
                )));
            }
            let pair = Pair::new(a, b);
            if map.insert(pair, kind).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate member {pair}")));
            }
        }
        Ok(TensegrityGraph { vertex_count, members: map })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// Members in canonical (sorted) order.
    pub fn members(&self) -> impl Iterator<Item = (Pair, MemberKind)> + '_ {
        self.members.iter().map(|(p, k)| (*p, *k))
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.members.keys().copied()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.members.contains_key(&pair)
    }

    pub fn kind(&self, pair: Pair) -> Option<MemberKind> {
        self.members.get(&pair).copied()
    }

    pub fn is_bar_only(&self) -> bool {
        self.members.values().all(|k| *k == MemberKind::Bar)
    }

    pub fn is_complete(&self) -> bool {
        self.member_count() == self.vertex_count * (self.vertex_count - 1) / 2
    }

    pub fn with_member(&self, a: usize, b: usize, kind: MemberKind) -> Result<Self> {
        let mut members: Vec<_> = self.members().map(|(p, k)| (p.i(), p.j(), k)).collect();
        members.push((a, b, kind));
        TensegrityGraph::new(self.vertex_count, members)
    }

    pub fn without_member(&self, pair: Pair) -> Result<Self> {
        if !self.contains(pair) {
            return Err(Error::MemberNotInGraph { i: pair.i(), j: pair.j() });
        }
        let mut members = self.members.clone();
        members.remove(&pair);
        Ok(TensegrityGraph { vertex_count: self.vertex_count, members })
    }

    /// Undirected adjacency lists, each sorted ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for pair in self.pairs() {
            adj[pair.i()].push(pair.j());
            adj[pair.j()].push(pair.i());
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// A short stable identifier for the labelled graph: an FNV-1a hash of
    /// the canonical member listing. Two graphs get the same fingerprint iff
    /// they have the same vertex count and identical labelled member sets.
    pub fn fingerprint(&self) -> String {
        let mut text = format!("v{};", self.vertex_count);
        for (pair, kind) in self.members() {
            text.push_str(&format!("{}-{}:{};", pair.i(), pair.j(), kind.as_str()));
        }
        format!("{:016x}", fnv1a64(text.as_bytes()))
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// A tensegrity graph together with a configuration of its vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Framework {
    graph: TensegrityGraph,
    configuration: Configuration,
}

impl Framework {
    pub fn new(graph: TensegrityGraph, configuration: Configuration) -> Result<Self> {
        if graph.vertex_count() != configuration.len() {
            return Err(Error::DimensionMismatch(format!(
                "graph has {} vertices but the configuration places {} points",
                graph.vertex_count(),
                configuration.len()
            )));
        }
        Ok(Framework { graph, configuration })
    }

    pub fn graph(&self) -> &TensegrityGraph {
        &self.graph
    }

    pub fn configuration(&self) -> &Configuration {
        &self.configuration
    }

    pub fn dim(&self) -> usize {
        self.configuration.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Same graph, different placement.
    pub fn with_configuration(&self, configuration: Configuration) -> Result<Self> {
        Framework::new(self.graph.clone(), configuration)
    }

    pub fn member_length(&self, pair: Pair) -> Result<f64> {
        if !self.graph.contains(pair) {
            return Err(Error::MemberNotInGraph { i: pair.i(), j: pair.j() });
        }
        Ok(self.configuration.distance(pair.i(), pair.j()))
    }

    /// The one-sided comparison behind tensegrity equivalence: `other` is
    /// admissible for this framework when, member by member, cables have not
    /// lengthened, struts have not shortened, and bars have kept their length
    /// (all up to `tol`).
    pub fn dominates(&self, other: &Configuration, tol: f64) -> Result<bool> {
        if other.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "framework has {} vertices but the configuration places {} points",
                self.vertex_count(),
                other.len()
            )));
        }
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "framework lives in dimension {} but the configuration in {}",
                self.dim(),
                other.dim()
            )));
        }
        for (pair, kind) in self.graph.members() {
            let here = self.configuration.distance(pair.i(), pair.j());
            let there = other.distance(pair.i(), pair.j());
            let ok = match kind {
                MemberKind::Cable => there <= here + tol,
                MemberKind::Strut => there >= here - tol,
                MemberKind::Bar => (there - here).abs() <= tol,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every member length agrees with `other` within `tol`.
    ///
    /// This is domination in both directions at once: for any member kinds,
    /// mutual domination pins each member length, so equivalence reduces to
    /// length agreement.
    pub fn equivalent_to(&self, other: &Configuration, tol: f64) -> Result<bool> {
        if other.len() != self.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "framework has {} vertices but the configuration places {} points",
                self.vertex_count(),
                other.len()
            )));
        }
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "framework lives in dimension {} but the configuration in {}",
                self.dim(),
                other.dim()
            )));
        }
        for pair in self.graph.pairs() {
            let here = self.configuration.distance(pair.i(), pair.j());
            let there = other.distance(pair.i(), pair.j());
            if (there - here).abs() > tol {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A scalar per member of a particular graph.
///
/// Construction fills members missing from the input with `0.0`, so a
/// `Stress` always keys exactly the member set of the graph it was built
/// for; pairs outside the graph are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Stress {
    values: BTreeMap<Pair, f64>,
}

impl Stress {
    pub fn new(
        graph: &TensegrityGraph,
        values: impl IntoIterator<Item = (Pair, f64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (pair, value) in values {
            if !graph.contains(pair) {
                return Err(Error::StressMismatch(format!(
                    "stress on {pair}, which is not a member"
                )));
            }
            if !value.is_finite() {
                return Err(Error::NonFinite(format!("stress on {pair} is not finite")));
            }
            if map.insert(pair, value).is_some() {
                return Err(Error::StressMismatch(format!(
                    "stress given twice for {pair}"
                )));
            }
        }
        for pair in graph.pairs() {
            map.entry(pair).or_insert(0.0);
        }
        Ok(Stress { values: map })
    }

    pub fn zero(graph: &TensegrityGraph) -> Self {
        Stress {
            values: graph.pairs().map(|p| (p, 0.0)).collect(),
        }
    }

    /// Stress on `pair`; pairs not keyed (i.e. not members of the associated
    /// graph) carry an implicit `0.0`.
    pub fn get(&self, pair: Pair) -> f64 {
        self.values.get(&pair).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Pair, f64)> + '_ {
        self.values.iter().map(|(p, v)| (*p, *v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// True when the key set equals `graph`'s member set.
    pub fn matches_graph(&self, graph: &TensegrityGraph) -> bool {
        self.values.len() == graph.member_count()
            && self.values.keys().all(|p| graph.contains(*p))
    }

    pub fn scaled(&self, factor: f64) -> Stress {
        Stress {
            values: self.values.iter().map(|(p, v)| (*p, v * factor)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_square() -> Configuration {
        Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap()
    }

    fn square_cycle() -> TensegrityGraph {
        TensegrityGraph::new(
            4,
            [
                (0, 1, MemberKind::Bar),
                (1, 2, MemberKind::Bar),
                (2, 3, MemberKind::Bar),
                (0, 3, MemberKind::Bar),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pair_is_canonical() {
        assert_eq!(Pair::new(5, 2), Pair::new(2, 5));
        assert_eq!(Pair::new(5, 2).i(), 2);
        assert_eq!(Pair::new(5, 2).j(), 5);
    }

    #[test]
    #[should_panic]
    fn pair_rejects_loop() {
        let _ = Pair::new(3, 3);
    }

    #[test]
    fn configuration_validation() {
        assert!(Configuration::new(0, vec![vec![]]).is_err());
        assert!(Configuration::new(2, vec![]).is_err());
        assert!(Configuration::new(2, vec![vec![0.0]]).is_err());
        assert!(Configuration::new(2, vec![vec![0.0, f64::NAN]]).is_err());
    }

    #[test]
    fn default_tol_tracks_scale() {
        let small = Configuration::new(1, vec![vec![0.0], vec![1.0]]).unwrap();
        let big = Configuration::new(1, vec![vec![0.0], vec![1e6]]).unwrap();
        assert_relative_eq!(small.default_tol(), 2e-9);
        assert!(big.default_tol() > 1e-4);
    }

    #[test]
    fn graph_validation() {
        assert!(TensegrityGraph::new(0, []).is_err());
        assert!(TensegrityGraph::new(3, [(1, 1, MemberKind::Bar)]).is_err());
        assert!(TensegrityGraph::new(3, [(0, 3, MemberKind::Bar)]).is_err());
        assert!(TensegrityGraph::new(
            3,
            [(0, 1, MemberKind::Bar), (1, 0, MemberKind::Cable)]
        )
        .is_err());
    }

    #[test]
    fn member_length_three_four_five() {
        let graph = TensegrityGraph::new(3, [(0, 1, MemberKind::Bar), (1, 2, MemberKind::Bar), (0, 2, MemberKind::Bar)]).unwrap();
        let config = Configuration::new(2, vec![vec![0.0, 0.0], vec![3.0, 0.0], vec![3.0, 4.0]]).unwrap();
        let f = Framework::new(graph, config).unwrap();
        assert_relative_eq!(f.member_length(Pair::new(0, 1)).unwrap(), 3.0);
        assert_relative_eq!(f.member_length(Pair::new(1, 2)).unwrap(), 4.0);
        assert_relative_eq!(f.member_length(Pair::new(0, 2)).unwrap(), 5.0);
    }

    #[test]
    fn member_length_coincident_endpoints_is_zero() {
        let graph = TensegrityGraph::new(2, [(0, 1, MemberKind::Bar)]).unwrap();
        let config = Configuration::new(2, vec![vec![2.0, -1.0], vec![2.0, -1.0]]).unwrap();
        let f = Framework::new(graph, config).unwrap();
        assert_eq!(f.member_length(Pair::new(0, 1)).unwrap(), 0.0);
    }

    #[test]
    fn member_length_missing_member_errors() {
        let f = Framework::new(square_cycle(), unit_square()).unwrap();
        assert!(matches!(
            f.member_length(Pair::new(0, 2)),
            Err(Error::MemberNotInGraph { i: 0, j: 2 })
        ));
    }

    #[test]
    fn dominates_is_reflexive() {
        let graph = TensegrityGraph::new(
            4,
            [
                (0, 1, MemberKind::Cable),
                (1, 2, MemberKind::Strut),
                (2, 3, MemberKind::Bar),
            ],
        )
        .unwrap();
        let f = Framework::new(graph, unit_square()).unwrap();
        assert!(f.dominates(&unit_square(), 0.0).unwrap());
    }

    #[test]
    fn cable_may_shorten_but_not_lengthen() {
        let graph = TensegrityGraph::new(2, [(0, 1, MemberKind::Cable)]).unwrap();
        let f = Framework::new(
            graph,
            Configuration::new(1, vec![vec![0.0], vec![1.0]]).unwrap(),
        )
        .unwrap();
        let shorter = Configuration::new(1, vec![vec![0.0], vec![0.5]]).unwrap();
        let longer = Configuration::new(1, vec![vec![0.0], vec![1.5]]).unwrap();
        assert!(f.dominates(&shorter, 1e-12).unwrap());
        assert!(!f.dominates(&longer, 1e-12).unwrap());
    }

    #[test]
    fn strut_may_lengthen_but_not_shorten() {
        let graph = TensegrityGraph::new(2, [(0, 1, MemberKind::Strut)]).unwrap();
        let f = Framework::new(
            graph,
            Configuration::new(1, vec![vec![0.0], vec![1.0]]).unwrap(),
        )
        .unwrap();
        let shorter = Configuration::new(1, vec![vec![0.0], vec![0.5]]).unwrap();
        let longer = Configuration::new(1, vec![vec![0.0], vec![1.5]]).unwrap();
        assert!(!f.dominates(&shorter, 1e-12).unwrap());
        assert!(f.dominates(&longer, 1e-12).unwrap());
    }

    #[test]
    fn dominates_rejects_mismatched_configuration() {
        let f = Framework::new(square_cycle(), unit_square()).unwrap();
        let wrong_count = Configuration::new(2, vec![vec![0.0, 0.0]]).unwrap();
        let wrong_dim = Configuration::new(
            3,
            vec![
                vec![0.0; 3],
                vec![1.0, 0.0, 0.0],
                vec![1.0, 1.0, 0.0],
                vec![0.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        assert!(f.dominates(&wrong_count, 0.0).is_err());
        assert!(f.dominates(&wrong_dim, 0.0).is_err());
    }

    #[test]
    fn square_cycle_equivalent_to_rhombus_but_not_rectangle() {
        // A unit rhombus with a 60-degree angle has the same four side
        // lengths as the unit square, so the bar 4-cycle cannot tell them
        // apart; a 1x2 rectangle changes two side lengths.
        let f = Framework::new(square_cycle(), unit_square()).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let rhombus = Configuration::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.5, h], vec![0.5, h]],
        )
        .unwrap();
        let rectangle = Configuration::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 2.0], vec![0.0, 2.0]],
        )
        .unwrap();
        assert!(f.equivalent_to(&rhombus, 1e-12).unwrap());
        assert!(!f.equivalent_to(&rectangle, 1e-12).unwrap());
        // ...and the rhombus is not congruent to the square (diagonals differ).
        assert!(!unit_square().congruent_to(&rhombus, 1e-9).unwrap());
    }

    #[test]
    fn congruence_sees_reflections_and_translations_as_equal() {
        let p = unit_square();
        let reflected = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![-1.0, 0.0],
                vec![-1.0, 1.0],
                vec![0.0, 1.0],
            ],
        )
        .unwrap();
        let translated = Configuration::new(
            2,
            vec![
                vec![5.0, -2.0],
                vec![6.0, -2.0],
                vec![6.0, -1.0],
                vec![5.0, -1.0],
            ],
        )
        .unwrap();
        assert!(p.congruent_to(&reflected, 1e-12).unwrap());
        assert!(p.congruent_to(&translated, 1e-12).unwrap());
    }

    #[test]
    fn congruence_rejects_scaling() {
        let p = unit_square();
        let scaled = Configuration::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![2.0, 0.0],
                vec![2.0, 2.0],
                vec![0.0, 2.0],
            ],
        )
        .unwrap();
        assert!(!p.congruent_to(&scaled, 1e-9).unwrap());
    }

    #[test]
    fn stress_fills_missing_members_with_zero() {
        let g = square_cycle();
        let w = Stress::new(&g, [(Pair::new(0, 1), 2.0)]).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.get(Pair::new(0, 1)), 2.0);
        assert_eq!(w.get(Pair::new(1, 2)), 0.0);
        // non-members read as zero
        assert_eq!(w.get(Pair::new(0, 2)), 0.0);
        assert!(w.matches_graph(&g));
    }

    #[test]
    fn stress_rejects_foreign_and_duplicate_keys() {
        let g = square_cycle();
        assert!(Stress::new(&g, [(Pair::new(0, 2), 1.0)]).is_err());
        assert!(Stress::new(&g, [(Pair::new(0, 1), 1.0), (Pair::new(1, 0), 2.0)]).is_err());
    }

    #[test]
    fn fingerprint_distinguishes_kinds_and_ignores_input_order() {
        let a = TensegrityGraph::new(3, [(0, 1, MemberKind::Bar), (1, 2, MemberKind::Bar)]).unwrap();
        let b = TensegrityGraph::new(3, [(1, 2, MemberKind::Bar), (0, 1, MemberKind::Bar)]).unwrap();
        let c = TensegrityGraph::new(3, [(0, 1, MemberKind::Cable), (1, 2, MemberKind::Bar)]).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        assert_ne!(a.fingerprint(), c.fingerprint());
    }

    #[test]
    fn connectivity_and_completeness() {
        let path = TensegrityGraph::new(3, [(0, 1, MemberKind::Bar), (1, 2, MemberKind::Bar)]).unwrap();
        let split = TensegrityGraph::new(3, [(0, 1, MemberKind::Bar)]).unwrap();
        let k3 = TensegrityGraph::new(
            3,
            [(0, 1, MemberKind::Bar), (1, 2, MemberKind::Bar), (0, 2, MemberKind::Bar)],
        )
        .unwrap();
        assert!(path.is_connected());
        assert!(!split.is_connected());
        assert!(k3.is_complete());
        assert!(!path.is_complete());
        assert!(TensegrityGraph::new(1, []).unwrap().is_connected());
    }
}
