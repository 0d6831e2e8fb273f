//! Rigidity certificates: randomized stress-rank certification of generic
//! global rigidity, the deterministic planar combinatorial route, the
//! super-stability test, and the combinatorial helpers they rest on
//! (pebble game, vertex connectivity, redundant rigidity).
//!
//! Verdict semantics are deliberately asymmetric. `CertifiedYes` is always
//! backed by something checkable — a stored numerical witness or a
//! deterministic combinatorial argument. `CertifiedNo` means a
//! deterministic criterion failed. `ProbablyNo` means a randomized search
//! exhausted its trials without finding a witness; since the searched
//! properties hold on open dense sets, repeated failure is strong (but not
//! certified) evidence of absence. `Inconclusive` is reserved for results
//! whose witness fell short of its target, and is never silently upgraded.

use crate::generators::{random_configuration, SeededRandomSource};
use crate::linalg::{
    affine_span_dim, is_positive_semidefinite, lies_on_conic_at_infinity, max_rank_stress,
    numeric_rank, rigidity_matrix, stress_matrix, stressed_directions, verify_equilibrium,
    NumericTolerance,
};
use crate::model::{Configuration, Framework, Stress, TensegrityGraph};
use crate::{Error, Result};

/// Default number of randomized trials for configuration sampling and
/// stress-coefficient draws.
pub const DEFAULT_TRIALS: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Property certified to hold, with a recorded argument or witness.
    CertifiedYes,
    /// Property certified to fail by a deterministic criterion.
    CertifiedNo,
    /// Randomized search exhausted its trials without a witness.
    ProbablyNo,
    /// A construction went through but its witness missed its rank target.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CertifiedYes => "certified-yes",
            Verdict::CertifiedNo => "certified-no",
            Verdict::ProbablyNo => "probably-no",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    pub fn parse(text: &str) -> Option<Verdict> {
        match text {
            "certified-yes" => Some(Verdict::CertifiedYes),
            "certified-no" => Some(Verdict::CertifiedNo),
            "probably-no" => Some(Verdict::ProbablyNo),
            "inconclusive" => Some(Verdict::Inconclusive),
            _ => None,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::CertifiedYes
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which certifier produced a certificate; recorded so a certificate can be
/// replayed through the same code path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertifiedOperation {
    GenericGlobalRigidity,
    GlobalRigidity2dCombinatorial,
    SuperStability,
}

impl CertifiedOperation {
    pub fn as_str(self) -> &'static str {
        match self {
            CertifiedOperation::GenericGlobalRigidity => "generic-global-rigidity",
            CertifiedOperation::GlobalRigidity2dCombinatorial => "global-rigidity-2d",
            CertifiedOperation::SuperStability => "super-stability",
        }
    }

    pub fn parse(text: &str) -> Option<CertifiedOperation> {
        match text {
            "generic-global-rigidity" => Some(CertifiedOperation::GenericGlobalRigidity),
            "global-rigidity-2d" => Some(CertifiedOperation::GlobalRigidity2dCombinatorial),
            "super-stability" => Some(CertifiedOperation::SuperStability),
            _ => None,
        }
    }
}

impl std::fmt::Display for CertifiedOperation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The numerical evidence attached to a certificate: a configuration, the
/// stress found at it (when the certifier uses one), and the ranks it
/// achieved.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub configuration: Configuration,
    pub stress: Option<Stress>,
    pub rigidity_rank: Option<usize>,
    pub stress_rank: Option<usize>,
}

/// The output of a certifier: a verdict plus everything needed to replay
/// it — the operation, dimension, graph fingerprint, tolerances, seeds,
/// and (when applicable) the witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub operation: CertifiedOperation,
    pub verdict: Verdict,
    pub dimension: usize,
    pub graph_fingerprint: String,
    pub witness: Option<Witness>,
    pub tolerance: NumericTolerance,
    pub seed: Option<u64>,
    pub trials: Option<u32>,
    pub reason: String,
}

/// Randomized certification of generic global rigidity for a connected bar
/// graph in dimension `d`.
///
/// For `n <= d + 1` vertices the answer is combinatorial: exactly the
/// complete graphs are globally rigid there. For `n >= d + 2`, up to
/// `trials` pseudo-generic configurations are sampled; at each one that
/// attains full rigidity rank `d n - d (d + 1) / 2`, a stress of rank
/// `n - d - 1` is searched for via [`max_rank_stress`]. Finding one
/// certifies generic global rigidity and the certificate stores the
/// witness; exhausting all trials yields `ProbablyNo`.
pub fn certify_generic_global_rigidity(
    g: &TensegrityGraph,
    d: usize,
    trials: u32,
    seed: u64,
    tol: &NumericTolerance,
) -> Result<Certificate> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if !g.is_bar_only() {
        return Err(Error::InvalidInput(
            "generic global rigidity certification expects a bar framework; the graph has cables or struts".into(),
        ));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("the graph is not connected".into()));
    }
    let n = g.vertex_count();
    let graph_fingerprint = g.fingerprint();
    let base = Certificate {
        operation: CertifiedOperation::GenericGlobalRigidity,
        verdict: Verdict::Inconclusive,
        dimension: d,
        graph_fingerprint,
        witness: None,
        tolerance: *tol,
        seed: Some(seed),
        trials: Some(trials),
        reason: String::new(),
    };

    if n <= d + 1 {
        let (verdict, reason) = if g.is_complete() {
            (
                Verdict::CertifiedYes,
                format!(
                    "complete graph on {n} <= d + 1 = {} vertices: all pairwise distances are members, so equivalent placements are congruent",
                    d + 1
                ),
            )
        } else {
            (
                Verdict::CertifiedNo,
                format!(
                    "incomplete graph on {n} <= d + 1 = {} vertices: a missing pair leaves a distance free to flex",
                    d + 1
                ),
            )
        };
        return Ok(Certificate { verdict, reason, ..base });
    }

    let rigidity_target = d * n - d * (d + 1) / 2;
    let stress_target = n - d - 1;
    let mut rng = SeededRandomSource::new(seed);
    let mut best_rigidity = 0usize;
    let mut best_stress = 0usize;
    for _ in 0..trials {
        let config = random_configuration(n, d, &mut rng)?;
        let f = Framework::new(g.clone(), config)?;
        let r = numeric_rank(rigidity_matrix(&f)?.matrix(), tol)?;
        best_rigidity = best_rigidity.max(r);
        if r < rigidity_target {
            continue;
        }
        let stress_seed = rng.next_u64();
        let (w, s) = max_rank_stress(&f, trials, stress_seed, tol)?;
        best_stress = best_stress.max(s);
        if s == stress_target {
            let reason = format!(
                "witness configuration attains rigidity rank {r} = {rigidity_target} and carries an equilibrium stress of rank {s} = n - d - 1"
            );
            return Ok(Certificate {
                verdict: Verdict::CertifiedYes,
                witness: Some(Witness {
                    configuration: f.configuration().clone(),
                    stress: Some(w),
                    rigidity_rank: Some(r),
                    stress_rank: Some(s),
                }),
                reason,
                ..base
            });
        }
    }
    let reason = if best_rigidity < rigidity_target {
        format!(
            "no sampled configuration reached rigidity rank {rigidity_target} (best {best_rigidity} over {trials} trials); the graph does not appear to be generically rigid"
        )
    } else {
        format!(
            "rigidity rank target {rigidity_target} reached, but no equilibrium stress of rank {stress_target} found (best {best_stress} over {trials} trials)"
        )
    };
    Ok(Certificate { verdict: Verdict::ProbablyNo, reason, ..base })
}

/// Deterministic planar certification: for `n >= 4`, a generic bar
/// framework is globally rigid in the plane iff its graph is redundantly
/// rigid and 3-connected. Both conditions are decided combinatorially
/// (pebble game, exhaustive/flow connectivity), so there is no seed and no
/// tolerance in play; graphs on at most 3 vertices fall back to the
/// completeness rule.
pub fn certify_global_rigidity_2d_combinatorial(g: &TensegrityGraph) -> Result<Certificate> {
    if !g.is_bar_only() {
        return Err(Error::InvalidInput(
            "combinatorial certification expects a bar framework; the graph has cables or struts".into(),
        ));
    }
    let n = g.vertex_count();
    let base = Certificate {
        operation: CertifiedOperation::GlobalRigidity2dCombinatorial,
        verdict: Verdict::Inconclusive,
        dimension: 2,
        graph_fingerprint: g.fingerprint(),
        witness: None,
        tolerance: NumericTolerance::default(),
        seed: None,
        trials: None,
        reason: String::new(),
    };
    if n <= 3 {
        let (verdict, reason) = if g.is_complete() {
            (
                Verdict::CertifiedYes,
                format!("complete graph on {n} <= 3 vertices"),
            )
        } else {
            (
                Verdict::CertifiedNo,
                format!("incomplete graph on {n} <= 3 vertices"),
            )
        };
        return Ok(Certificate { verdict, reason, ..base });
    }

    let rigid = pebble_game_rigid_2d(g);
    let redundant = rigid
        && g.pairs().collect::<Vec<_>>().into_iter().all(|pair| {
            let reduced = g.without_member(pair).expect("member comes from the graph");
            pebble_game_rigid_2d(&reduced)
        });
    let three_connected = vertex_connectivity_at_least(g, 3);

    let mut failures = Vec::new();
    if !rigid {
        failures.push("not generically rigid in the plane".to_string());
    } else if !redundant {
        failures.push("not redundantly rigid: some member deletion breaks rigidity".to_string());
    }
    if !three_connected {
        failures.push("not 3-connected".to_string());
    }
    let (verdict, reason) = if failures.is_empty() {
        (
            Verdict::CertifiedYes,
            "redundantly rigid and 3-connected".to_string(),
        )
    } else {
        (Verdict::CertifiedNo, failures.join("; "))
    };
    Ok(Certificate { verdict, reason, ..base })
}

/// Test a supplied stress against the full super-stability criterion:
/// proper signs, equilibrium, positive semidefinite stress matrix of
/// maximal rank `n - d - 1`, and stressed member directions not all on a
/// conic at infinity. The first failed condition is named in the verdict's
/// reason; a passing stress makes the framework universally rigid.
///
/// The configuration must affinely span dimension `d`. Sign and
/// equilibrium checks use `psd_slack`-derived slack scaled by the stress
/// and coordinate magnitudes.
pub fn check_super_stability(
    f: &Framework,
    w: &Stress,
    tol: &NumericTolerance,
) -> Result<Certificate> {
    if !w.matches_graph(f.graph()) {
        return Err(Error::StressMismatch(
            "stress is not keyed by this framework's members".into(),
        ));
    }
    let d = f.dim();
    let n = f.vertex_count();
    let span = affine_span_dim(f.configuration(), tol)?;
    if span != d {
        return Err(Error::DegenerateSpan(format!(
            "configuration spans an affine subspace of dimension {span}, expected {d}"
        )));
    }

    let stress_scale = 1.0 + w.max_abs();
    let sign_slack = tol.psd_slack * stress_scale;
    let mut failure: Option<String> = None;

    for (pair, kind) in f.graph().members() {
        let v = w.get(pair);
        let bad = match kind {
            crate::model::MemberKind::Cable => v < -sign_slack,
            crate::model::MemberKind::Strut => v > sign_slack,
            crate::model::MemberKind::Bar => false,
        };
        if bad {
            failure = Some(format!("improper sign: {kind} {pair} carries stress {v}"));
            break;
        }
    }

    if failure.is_none() {
        let eq_tol =
            tol.psd_slack * stress_scale * (1.0 + f.configuration().max_coordinate_magnitude());
        if !verify_equilibrium(f, w, eq_tol)? {
            failure = Some("stress is not in equilibrium at this configuration".into());
        }
    }

    let s = stress_matrix(f.graph(), w)?;
    let rank = s.rank(tol)?;
    let target = n - d - 1;

    if failure.is_none() && !is_positive_semidefinite(&s, tol) {
        failure = Some("stress matrix is not positive semidefinite".into());
    }
    if failure.is_none() && rank != target {
        failure = Some(format!(
            "stress-matrix rank {rank} is below the maximal value n - d - 1 = {target}"
        ));
    }
    if failure.is_none() {
        let directions = stressed_directions(f, w, tol)?;
        if lies_on_conic_at_infinity(&directions, d, tol)? {
            failure = Some("stressed member directions all lie on a conic at infinity".into());
        }
    }

    let (verdict, reason) = match failure {
        Some(r) => (Verdict::CertifiedNo, r),
        None => (
            Verdict::CertifiedYes,
            format!(
                "proper equilibrium stress with PSD stress matrix of maximal rank {rank}, stressed directions on no conic at infinity"
            ),
        ),
    };
    Ok(Certificate {
        operation: CertifiedOperation::SuperStability,
        verdict,
        dimension: d,
        graph_fingerprint: f.graph().fingerprint(),
        witness: Some(Witness {
            configuration: f.configuration().clone(),
            stress: Some(w.clone()),
            rigidity_rank: None,
            stress_rank: Some(rank),
        }),
        tolerance: *tol,
        seed: None,
        trials: None,
        reason,
    })
}

/// Re-run the certifier a certificate came from, with its recorded seed,
/// trials, and tolerances, and return the fresh verdict. The graph must
/// match the certificate's fingerprint. Certification is deterministic
/// given those inputs, so a healthy certificate replays to its own verdict.
pub fn replay_certificate(g: &TensegrityGraph, cert: &Certificate) -> Result<Verdict> {
    if g.fingerprint() != cert.graph_fingerprint {
        return Err(Error::InvalidInput(
            "graph fingerprint does not match the certificate".into(),
        ));
    }
    match cert.operation {
        CertifiedOperation::GenericGlobalRigidity => {
            let seed = cert
                .seed
                .ok_or_else(|| Error::InvalidInput("certificate is missing its seed".into()))?;
            let trials = cert
                .trials
                .ok_or_else(|| Error::InvalidInput("certificate is missing its trial count".into()))?;
            Ok(certify_generic_global_rigidity(g, cert.dimension, trials, seed, &cert.tolerance)?.verdict)
        }
        CertifiedOperation::GlobalRigidity2dCombinatorial => {
            Ok(certify_global_rigidity_2d_combinatorial(g)?.verdict)
        }
        CertifiedOperation::SuperStability => {
            let witness = cert.witness.as_ref().ok_or_else(|| {
                Error::InvalidInput("super-stability certificate has no witness".into())
            })?;
            let stress = witness.stress.as_ref().ok_or_else(|| {
                Error::InvalidInput("super-stability certificate has no witness stress".into())
            })?;
            let f = Framework::new(g.clone(), witness.configuration.clone())?;
            Ok(check_super_stability(&f, stress, &cert.tolerance)?.verdict)
        }
    }
}

/// The (2,3)-pebble game decision for generic rigidity in the plane.
///
/// Every vertex starts with two pebbles. Inserting an edge requires four
/// pebbles on its endpoints; pebbles are recalled by reversing directed
/// paths. The accepted edges form a maximum-size (2,3)-sparse subset, so
/// the graph is generically rigid in the plane iff `2 n - 3` edges are
/// accepted. Member kinds are irrelevant here — this is a property of the
/// underlying graph. Deterministic, no tolerances.
pub fn pebble_game_rigid_2d(g: &TensegrityGraph) -> bool {
    let n = g.vertex_count();
    if n == 1 {
        return true;
    }
    let mut game = PebbleGame::new(n);
    let mut independent = 0usize;
    for pair in g.pairs() {
        if game.try_insert(pair.i(), pair.j()) {
            independent += 1;
        }
    }
    independent == 2 * n - 3
}

struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame { pebbles: vec![2; n], out: vec![Vec::new(); n] }
    }

    /// Accepts the edge iff four pebbles can be gathered on `{u, v}`;
    /// accepted edges are oriented `u -> v` and cost `u` one pebble.
    fn try_insert(&mut self, u: usize, v: usize) -> bool {
        while usize::from(self.pebbles[u]) + usize::from(self.pebbles[v]) < 4 {
            let progressed = (self.pebbles[u] < 2 && self.collect(u, v))
                || (self.pebbles[v] < 2 && self.collect(v, u));
            if !progressed {
                return false;
            }
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }

    /// Depth-first search along edge directions for a free pebble not on
    /// `root` or `blocked`; on success the path to it is reversed and the
    /// pebble moves to `root`.
    fn collect(&mut self, root: usize, blocked: usize) -> bool {
        let n = self.pebbles.len();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        seen[blocked] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for idx in 0..self.out[x].len() {
                let y = self.out[x][idx];
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                prev[y] = x;
                if self.pebbles[y] > 0 {
                    self.pebbles[y] -= 1;
                    self.pebbles[root] += 1;
                    let mut cur = y;
                    while cur != root {
                        let p = prev[cur];
                        let pos = self
                            .out[p]
                            .iter()
                            .position(|&t| t == cur)
                            .expect("path edge exists");
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }
}

/// Is the graph `m`-vertex-connected?
///
/// Complete graphs on `k` vertices count as `(k - 1)`-connected. For
/// `n <= 12` vertices every vertex subset of size `< m` is removed and
/// the remainder checked for connectivity; for larger graphs the answer
/// comes from unit-capacity max-flow between all non-adjacent pairs
/// (vertex-disjoint paths). Both routes are deterministic and agree.
pub fn vertex_connectivity_at_least(g: &TensegrityGraph, m: usize) -> bool {
    if m == 0 {
        return true;
    }
    let n = g.vertex_count();
    if g.is_complete() {
        return m <= n.saturating_sub(1);
    }
    if m > n.saturating_sub(1) {
        return false;
    }
    if n <= 12 {
        no_cut_below_exhaustive(g, m)
    } else {
        no_cut_below_flow(g, m)
    }
}

fn no_cut_below_exhaustive(g: &TensegrityGraph, m: usize) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    for mask in 0u32..(1u32 << n) {
        let removed = mask.count_ones() as usize;
        if removed >= m || n - removed < 2 {
            continue;
        }
        if !connected_outside_mask(&adj, n, mask) {
            return false;
        }
    }
    true
}

fn connected_outside_mask(adj: &[Vec<usize>], n: usize, mask: u32) -> bool {
    let alive = |v: usize| mask & (1u32 << v) == 0;
    let total = n - mask.count_ones() as usize;
    let start = match (0..n).find(|&v| alive(v)) {
        Some(v) => v,
        None => return true,
    };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1usize;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if alive(w) && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == total
}

/// Flow route, exposed separately so tests can cross-check it against the
/// exhaustive route on small graphs.
pub(crate) fn no_cut_below_flow(g: &TensegrityGraph, m: usize) -> bool {
    let n = g.vertex_count();
    let adj = g.adjacency();
    for u in 0..n {
        for v in (u + 1)..n {
            if g.contains(crate::model::Pair::new(u, v)) {
                continue;
            }
            if disjoint_path_count(&adj, n, u, v, m) < m {
                return false;
            }
        }
    }
    true
}

/// Number of vertex-disjoint `s`-`t` paths, computed as max flow on the
/// node-split digraph with unit vertex capacities; stops early once
/// `enough` paths are found (Menger: disjoint paths = minimum vertex cut).
fn disjoint_path_count(adj: &[Vec<usize>], n: usize, s: usize, t: usize, enough: usize) -> usize {
    const INF: i64 = i64::MAX / 4;
    // node v splits into in-node 2v and out-node 2v+1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == s || v == t { INF } else { 1 };
        net.add_edge(2 * v, 2 * v + 1, cap);
    }
    for (a, nbrs) in adj.iter().enumerate() {
        for &b in nbrs {
            net.add_edge(2 * a + 1, 2 * b, INF);
        }
    }
    let source = 2 * s + 1;
    let sink = 2 * t;
    let mut flow = 0usize;
    while flow < enough && net.augment(source, sink) {
        flow += 1;
    }
    flow
}

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, a: usize, b: usize, c: i64) {
        self.to.push(b);
        self.cap.push(c);
        self.head[a].push(self.to.len() - 1);
        self.to.push(a);
        self.cap.push(0);
        self.head[b].push(self.to.len() - 1);
    }

    /// One BFS augmentation of a single unit (all paths here carry
    /// capacity >= 1); returns false when the sink is unreachable.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut prev_edge = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[source] = true;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &e in &self.head[x] {
                let y = self.to[e];
                if !seen[y] && self.cap[e] > 0 {
                    seen[y] = true;
                    prev_edge[y] = e;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut cur = sink;
        while cur != source {
            let e = prev_edge[cur];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            cur = self.to[e ^ 1];
        }
        true
    }
}

/// Does the graph stay generically rigid after deleting any single member?
///
/// Returns `false` (not an error) when the graph is not rigid to begin
/// with. In the plane everything goes through the pebble game; in other
/// dimensions rigidity is the rank test at a seeded random configuration,
/// shared across all deletions, with one fresh configuration retried
/// before any deletion is declared rigidity-breaking.
pub fn is_redundantly_rigid(
    g: &TensegrityGraph,
    d: usize,
    seed: u64,
    tol: &NumericTolerance,
) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let n = g.vertex_count();
    if n == 1 {
        return Ok(true);
    }
    if d == 2 {
        if !pebble_game_rigid_2d(g) {
            return Ok(false);
        }
        for pair in g.pairs().collect::<Vec<_>>() {
            let reduced = g.without_member(pair)?;
            if !pebble_game_rigid_2d(&reduced) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    if n < d {
        return Err(Error::UnsupportedRegime(format!(
            "rank-based rigidity test needs n >= d, got n = {n}, d = {d}"
        )));
    }
    let target = d * n - d * (d + 1) / 2;
    let mut rng = SeededRandomSource::new(seed);
    // Both configurations are drawn up front so the stream does not depend
    // on which deletions hit the retry path.
    let config_a = random_configuration(n, d, &mut rng)?;
    let config_b = random_configuration(n, d, &mut rng)?;
    let rigid_at = |graph: &TensegrityGraph, config: &Configuration| -> Result<bool> {
        if graph.member_count() == 0 {
            return Ok(false);
        }
        let f = Framework::new(graph.clone(), config.clone())?;
        Ok(numeric_rank(rigidity_matrix(&f)?.matrix(), tol)? == target)
    };
    if !(rigid_at(g, &config_a)? || rigid_at(g, &config_b)?) {
        return Ok(false);
    }
    for pair in g.pairs().collect::<Vec<_>>() {
        let reduced = g.without_member(pair)?;
        if !(rigid_at(&reduced, &config_a)? || rigid_at(&reduced, &config_b)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The classical necessary condition for generic global rigidity in
/// dimension `d`: `(d + 1)`-vertex-connected and redundantly rigid.
/// Necessary in every dimension; sufficient only in the plane. In
/// particular some graphs satisfy it and are still not globally rigid in
/// space, so a `true` here must not be read as certification.
pub fn hendrickson_property(
    g: &TensegrityGraph,
    d: usize,
    seed: u64,
    tol: &NumericTolerance,
) -> Result<bool> {
    if d == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    Ok(vertex_connectivity_at_least(g, d + 1) && is_redundantly_rigid(g, d, seed, tol)?)
}
