//! Python bindings for the rigidity certification library.
//!
//! The module mirrors the core vocabulary: build a [`Framework`] from a
//! dimension, vertex coordinates, and typed members, then ask for
//! certificates. Stresses cross the boundary as plain dictionaries keyed by
//! `(i, j)` vertex pairs, and certificates come back as small objects
//! carrying the verdict string, the reason, and the witness data.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use rigidity_core::certify::{self, Certificate, DEFAULT_TRIALS};
use rigidity_core::combine::{self, SharedVertexMap};
use rigidity_core::generators::paper_examples;
use rigidity_core::{
    Framework as CoreFramework, MemberKind, NumericTolerance, Pair, Stress, TensegrityGraph,
};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kind(text: &str) -> PyResult<MemberKind> {
    match text {
        "bar" => Ok(MemberKind::Bar),
        "cable" => Ok(MemberKind::Cable),
        "strut" => Ok(MemberKind::Strut),
        other => Err(value_error(format!(
            "unknown kind {other:?}; expected \"bar\", \"cable\", or \"strut\""
        ))),
    }
}

fn stress_to_dict(w: &Stress) -> BTreeMap<(usize, usize), f64> {
    w.iter().map(|(pair, value)| ((pair.i(), pair.j()), value)).collect()
}

fn stress_from_dict(
    graph: &TensegrityGraph,
    values: &BTreeMap<(usize, usize), f64>,
) -> PyResult<Stress> {
    for &(i, j) in values.keys() {
        if i == j {
            return Err(value_error(format!("stress key ({i}, {j}) joins a vertex to itself")));
        }
    }
    Stress::new(graph, values.iter().map(|(&(i, j), &v)| (Pair::new(i, j), v)))
        .map_err(value_error)
}

/// A tensegrity graph placed in Euclidean space.
#[pyclass(frozen, name = "Framework")]
struct PyFramework {
    inner: CoreFramework,
}

impl PyFramework {
    fn wrap(inner: CoreFramework) -> Self {
        PyFramework { inner }
    }
}

#[pymethods]
impl PyFramework {
    /// Framework(dimension, vertices, members) with vertices a list of
    /// coordinate lists and members a list of (i, j, kind) triples, where
    /// kind is "bar", "cable", or "strut".
    #[new]
    fn new(
        dimension: usize,
        vertices: Vec<Vec<f64>>,
        members: Vec<(usize, usize, String)>,
    ) -> PyResult<Self> {
        let configuration = rigidity_core::Configuration::new(dimension, vertices)
            .map_err(value_error)?;
        let mut triples = Vec::with_capacity(members.len());
        for (i, j, kind) in &members {
            triples.push((*i, *j, parse_kind(kind)?));
        }
        let graph = TensegrityGraph::new(configuration.len(), triples).map_err(value_error)?;
        Ok(PyFramework::wrap(
            CoreFramework::new(graph, configuration).map_err(value_error)?,
        ))
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn member_count(&self) -> usize {
        self.inner.graph().member_count()
    }

    fn vertices(&self) -> Vec<Vec<f64>> {
        self.inner
            .configuration()
            .points()
            .iter()
            .map(|p| p.iter().copied().collect())
            .collect()
    }

    fn members(&self) -> Vec<(usize, usize, String)> {
        self.inner
            .graph()
            .members()
            .map(|(pair, kind)| (pair.i(), pair.j(), kind.as_str().to_string()))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Framework(dimension={}, vertices={}, members={})",
            self.inner.dim(),
            self.inner.vertex_count(),
            self.inner.graph().member_count()
        )
    }
}

/// The outcome of a certification: verdict, reason, and witness data.
#[pyclass(frozen, name = "Certificate")]
struct PyCertificate {
    #[pyo3(get)]
    operation: String,
    #[pyo3(get)]
    verdict: String,
    #[pyo3(get)]
    dimension: usize,
    #[pyo3(get)]
    reason: String,
    #[pyo3(get)]
    graph_fingerprint: String,
    #[pyo3(get)]
    seed: Option<u64>,
    #[pyo3(get)]
    trials: Option<u32>,
    #[pyo3(get)]
    rigidity_rank: Option<usize>,
    #[pyo3(get)]
    stress_rank: Option<usize>,
    #[pyo3(get)]
    witness_stress: Option<BTreeMap<(usize, usize), f64>>,
}

impl PyCertificate {
    fn from_core(cert: &Certificate) -> Self {
        PyCertificate {
            operation: cert.operation.as_str().to_string(),
            verdict: cert.verdict.as_str().to_string(),
            dimension: cert.dimension,
            reason: cert.reason.clone(),
            graph_fingerprint: cert.graph_fingerprint.clone(),
            seed: cert.seed,
            trials: cert.trials,
            rigidity_rank: cert.witness.as_ref().and_then(|w| w.rigidity_rank),
            stress_rank: cert.witness.as_ref().and_then(|w| w.stress_rank),
            witness_stress: cert
                .witness
                .as_ref()
                .and_then(|w| w.stress.as_ref())
                .map(stress_to_dict),
        }
    }
}

#[pymethods]
impl PyCertificate {
    /// True exactly when the verdict is "certified-yes".
    #[getter]
    fn is_yes(&self) -> bool {
        self.verdict == "certified-yes"
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(operation={:?}, verdict={:?})",
            self.operation, self.verdict
        )
    }
}

/// The result of joining two frameworks and erasing their common bar.
#[pyclass(frozen, name = "EraseBarResult")]
struct PyEraseBarResult {
    combined: CoreFramework,
    #[pyo3(get)]
    witness: BTreeMap<(usize, usize), f64>,
    #[pyo3(get)]
    witness_rank: usize,
    #[pyo3(get)]
    target_rank: usize,
    #[pyo3(get)]
    conclusive: bool,
    #[pyo3(get)]
    note: Option<String>,
}

#[pymethods]
impl PyEraseBarResult {
    #[getter]
    fn framework(&self) -> PyFramework {
        PyFramework::wrap(self.combined.clone())
    }
}

/// Randomized certification of generic global rigidity for the framework's
/// graph. `dimension` defaults to the framework's own dimension.
#[pyfunction]
#[pyo3(signature = (framework, dimension=None, trials=DEFAULT_TRIALS, seed=0))]
fn certify_generic_global_rigidity(
    framework: &PyFramework,
    dimension: Option<usize>,
    trials: u32,
    seed: u64,
) -> PyResult<PyCertificate> {
    let d = dimension.unwrap_or_else(|| framework.inner.dim());
    let cert = certify::certify_generic_global_rigidity(
        framework.inner.graph(),
        d,
        trials,
        seed,
        &NumericTolerance::default(),
    )
    .map_err(value_error)?;
    Ok(PyCertificate::from_core(&cert))
}

/// Deterministic planar certification via the pebble game and
/// 3-connectivity.
#[pyfunction]
fn certify_global_rigidity_2d(framework: &PyFramework) -> PyResult<PyCertificate> {
    let cert = certify::certify_global_rigidity_2d_combinatorial(framework.inner.graph())
        .map_err(value_error)?;
    Ok(PyCertificate::from_core(&cert))
}

/// Check super stability of the framework under the given stress, a dict
/// mapping (i, j) pairs to values covering every member.
#[pyfunction]
fn check_super_stability(
    framework: &PyFramework,
    stress: BTreeMap<(usize, usize), f64>,
) -> PyResult<PyCertificate> {
    let w = stress_from_dict(framework.inner.graph(), &stress)?;
    let cert = certify::check_super_stability(&framework.inner, &w, &NumericTolerance::default())
        .map_err(value_error)?;
    Ok(PyCertificate::from_core(&cert))
}

/// Decide generic planar rigidity of the framework's graph combinatorially.
#[pyfunction]
fn pebble_game_rigid_2d(framework: &PyFramework) -> bool {
    certify::pebble_game_rigid_2d(framework.inner.graph())
}

/// Join two bar frameworks that share `d + 1` vertices (given as a list of
/// (first-label, second-label) pairs), erase the shared bar named by two
/// first-framework labels, and return the combined framework with its
/// witness stress.
#[pyfunction]
#[pyo3(signature = (first, second, shared, erase_bar, seed=0))]
fn combine_erase_bar(
    first: &PyFramework,
    second: &PyFramework,
    shared: Vec<(usize, usize)>,
    erase_bar: (usize, usize),
    seed: u64,
) -> PyResult<PyEraseBarResult> {
    let map = SharedVertexMap::new(shared).map_err(value_error)?;
    let outcome = combine::combine_erase_bar(
        &first.inner,
        &second.inner,
        &map,
        erase_bar,
        seed,
        1e-9,
        &NumericTolerance::default(),
    )
    .map_err(value_error)?;
    let conclusive = outcome.is_conclusive();
    Ok(PyEraseBarResult {
        combined: outcome.framework,
        witness: stress_to_dict(&outcome.witness),
        witness_rank: outcome.witness_rank,
        target_rank: outcome.target_rank,
        conclusive,
        note: outcome.note,
    })
}

/// Superimpose two super-stable tensegrities over shared vertices so that
/// the `cancel` member (a cable in one, a strut in the other) drops out;
/// returns the combined tensegrity and its net stress.
#[pyfunction]
fn superimpose_tensegrities(
    first: &PyFramework,
    first_stress: BTreeMap<(usize, usize), f64>,
    second: &PyFramework,
    second_stress: BTreeMap<(usize, usize), f64>,
    shared: Vec<(usize, usize)>,
    cancel: (usize, usize),
) -> PyResult<(PyFramework, BTreeMap<(usize, usize), f64>)> {
    let w1 = stress_from_dict(first.inner.graph(), &first_stress)?;
    let w2 = stress_from_dict(second.inner.graph(), &second_stress)?;
    let map = SharedVertexMap::new(shared).map_err(value_error)?;
    let (framework, net) = combine::superimpose_tensegrities(
        &first.inner,
        &w1,
        &second.inner,
        &w2,
        &map,
        cancel,
        1e-9,
        &NumericTolerance::default(),
    )
    .map_err(value_error)?;
    Ok((PyFramework::wrap(framework), stress_to_dict(&net)))
}

/// Build the rim-cable / diagonal-strut tensegrity on four planar points in
/// convex position, together with its proper equilibrium stress.
#[pyfunction]
fn convex_quadrilateral_tensegrity(
    vertices: Vec<Vec<f64>>,
) -> PyResult<(PyFramework, BTreeMap<(usize, usize), f64>)> {
    let configuration =
        rigidity_core::Configuration::new(2, vertices).map_err(value_error)?;
    let (framework, stress) = rigidity_core::generators::convex_quadrilateral_tensegrity(
        &configuration,
        &NumericTolerance::default(),
    )
    .map_err(value_error)?;
    Ok((PyFramework::wrap(framework), stress_to_dict(&stress)))
}

/// Fetch a named example instance; returns the framework and, when the
/// example carries one, its stress dict.
#[pyfunction]
fn named_example(
    name: &str,
) -> PyResult<(PyFramework, Option<BTreeMap<(usize, usize), f64>>)> {
    let registry = paper_examples();
    let example = registry.get(name).ok_or_else(|| {
        value_error(format!(
            "unknown example {name:?}; known names: {}",
            registry.keys().map(|k| format!("{k:?}")).collect::<Vec<_>>().join(", ")
        ))
    })?;
    Ok((
        PyFramework::wrap(example.framework.clone()),
        example.stress.as_ref().map(stress_to_dict),
    ))
}

#[pymodule]
fn rigidity_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFramework>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyEraseBarResult>()?;
    m.add_function(wrap_pyfunction!(certify_generic_global_rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(certify_global_rigidity_2d, m)?)?;
    m.add_function(wrap_pyfunction!(check_super_stability, m)?)?;
    m.add_function(wrap_pyfunction!(pebble_game_rigid_2d, m)?)?;
    m.add_function(wrap_pyfunction!(combine_erase_bar, m)?)?;
    m.add_function(wrap_pyfunction!(superimpose_tensegrities, m)?)?;
    m.add_function(wrap_pyfunction!(convex_quadrilateral_tensegrity, m)?)?;
    m.add_function(wrap_pyfunction!(named_example, m)?)?;
    Ok(())
}
