//! On-disk JSON formats for frameworks and certificates.
//!
//! Both formats carry a `"format": 1` version marker. Numbers pass through
//! `serde_json`, which prints the shortest decimal that parses back to the
//! same `f64`, so a write/parse round-trip reproduces every coordinate and
//! stress value exactly.
//!
//! A certificate file embeds the graph it talks about, so
//! `verify-certificate` can replay it without the original framework file.

use serde::{Deserialize, Serialize};

use rigidity_core::certify::{Certificate, CertifiedOperation, Verdict, Witness};
use rigidity_core::{
    Configuration, Framework, MemberKind, NumericTolerance, Pair, Stress, TensegrityGraph,
};

/// Version marker written into every file this module produces.
pub const FORMAT_VERSION: u32 = 1;

/// One member line of a framework file: endpoints, kind, and an optional
/// stress value. A file where every member carries a stress describes a
/// framework *with* an attached stress; a file where none do describes a
/// bare framework; anything in between is rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberRecord {
    pub i: usize,
    pub j: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stress: Option<f64>,
}

/// A framework on disk: dimension, vertex coordinates, and members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameworkFile {
    pub format: u32,
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    pub members: Vec<MemberRecord>,
}

/// One stressed member inside a certificate witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StressRecord {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

/// The numerical evidence a certificate carries: the configuration it was
/// decided at, the stress found there, and the ranks attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub configuration: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stress: Option<Vec<StressRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rigidity_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stress_rank: Option<usize>,
}

/// Tolerances recorded in a certificate so a replay makes the same numeric
/// decisions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceRecord {
    pub rank_threshold_factor: f64,
    pub psd_slack: f64,
}

/// The graph a certificate talks about, embedded for self-contained replay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRecord {
    pub vertices: usize,
    pub members: Vec<MemberRecord>,
}

/// A certification result on disk. Replaying the embedded seed, trials, and
/// tolerances against the embedded graph reproduces the verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub format: u32,
    pub operation: String,
    pub verdict: String,
    pub dimension: usize,
    pub graph_fingerprint: String,
    pub graph: GraphRecord,
    pub tolerance: ToleranceRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
    pub reason: String,
}

fn parse_kind(text: &str) -> Result<MemberKind, String> {
    match text {
        "bar" => Ok(MemberKind::Bar),
        "cable" => Ok(MemberKind::Cable),
        "strut" => Ok(MemberKind::Strut),
        other => Err(format!(
            "unknown kind {other:?}; expected \"bar\", \"cable\", or \"strut\""
        )),
    }
}

fn check_version(format: u32) -> Result<(), String> {
    if format == FORMAT_VERSION {
        Ok(())
    } else {
        Err(format!(
            "unsupported format version {format}; this tool reads version {FORMAT_VERSION}"
        ))
    }
}

fn members_to_graph(
    vertex_count: usize,
    members: &[MemberRecord],
) -> Result<TensegrityGraph, String> {
    let mut triples = Vec::with_capacity(members.len());
    for (idx, m) in members.iter().enumerate() {
        let kind = parse_kind(&m.kind).map_err(|e| format!("member {idx}: {e}"))?;
        triples.push((m.i, m.j, kind));
    }
    TensegrityGraph::new(vertex_count, triples).map_err(|e| e.to_string())
}

/// Parse a framework file, returning the framework and, when every member
/// carries one, the attached stress.
pub fn parse_framework(text: &str) -> Result<(Framework, Option<Stress>), String> {
    let file: FrameworkFile =
        serde_json::from_str(text).map_err(|e| format!("malformed framework file: {e}"))?;
    framework_from_file(&file)
}

/// Validate an already-deserialized framework file.
pub fn framework_from_file(file: &FrameworkFile) -> Result<(Framework, Option<Stress>), String> {
    check_version(file.format)?;
    if file.dimension == 0 {
        return Err("dimension must be at least 1".into());
    }
    for (idx, v) in file.vertices.iter().enumerate() {
        if v.len() != file.dimension {
            return Err(format!(
                "vertex {idx}: has {} coordinates, expected {}",
                v.len(),
                file.dimension
            ));
        }
    }
    let configuration = Configuration::new(file.dimension, file.vertices.clone())
        .map_err(|e| e.to_string())?;
    let graph = members_to_graph(file.vertices.len(), &file.members)?;
    let framework = Framework::new(graph, configuration).map_err(|e| e.to_string())?;

    let stressed = file.members.iter().filter(|m| m.stress.is_some()).count();
    let stress = if stressed == 0 {
        None
    } else if stressed == file.members.len() {
        let values = file
            .members
            .iter()
            .map(|m| (Pair::new(m.i, m.j), m.stress.expect("counted above")));
        Some(Stress::new(framework.graph(), values).map_err(|e| e.to_string())?)
    } else {
        let missing = file
            .members
            .iter()
            .position(|m| m.stress.is_none())
            .expect("stressed < len");
        return Err(format!(
            "stress values must cover every member or none: member {missing} has no stress while {stressed} of {} members do",
            file.members.len()
        ));
    };
    Ok((framework, stress))
}

/// Serialize a framework (and optionally a stress on it) into the on-disk
/// representation. Members appear in canonical sorted order.
pub fn framework_to_file(f: &Framework, stress: Option<&Stress>) -> FrameworkFile {
    let vertices = f
        .configuration()
        .points()
        .iter()
        .map(|p| p.iter().copied().collect())
        .collect();
    let members = f
        .graph()
        .members()
        .map(|(pair, kind)| MemberRecord {
            i: pair.i(),
            j: pair.j(),
            kind: kind.as_str().to_string(),
            stress: stress.map(|w| w.get(pair)),
        })
        .collect();
    FrameworkFile {
        format: FORMAT_VERSION,
        dimension: f.dim(),
        vertices,
        members,
    }
}

/// Render a framework file as pretty-printed JSON with a trailing newline.
pub fn write_framework(f: &Framework, stress: Option<&Stress>) -> String {
    let file = framework_to_file(f, stress);
    let mut text = serde_json::to_string_pretty(&file).expect("framework files always serialize");
    text.push('\n');
    text
}

/// Bundle a certificate with the graph it certifies for writing.
pub fn certificate_to_file(cert: &Certificate, graph: &TensegrityGraph) -> CertificateFile {
    let witness = cert.witness.as_ref().map(|w| WitnessRecord {
        configuration: w
            .configuration
            .points()
            .iter()
            .map(|p| p.iter().copied().collect())
            .collect(),
        stress: w.stress.as_ref().map(|s| {
            s.iter()
                .map(|(pair, value)| StressRecord { i: pair.i(), j: pair.j(), value })
                .collect()
        }),
        rigidity_rank: w.rigidity_rank,
        stress_rank: w.stress_rank,
    });
    CertificateFile {
        format: FORMAT_VERSION,
        operation: cert.operation.as_str().to_string(),
        verdict: cert.verdict.as_str().to_string(),
        dimension: cert.dimension,
        graph_fingerprint: cert.graph_fingerprint.clone(),
        graph: GraphRecord {
            vertices: graph.vertex_count(),
            members: graph
                .members()
                .map(|(pair, kind)| MemberRecord {
                    i: pair.i(),
                    j: pair.j(),
                    kind: kind.as_str().to_string(),
                    stress: None,
                })
                .collect(),
        },
        tolerance: ToleranceRecord {
            rank_threshold_factor: cert.tolerance.rank_threshold_factor,
            psd_slack: cert.tolerance.psd_slack,
        },
        seed: cert.seed,
        trials: cert.trials,
        witness,
        reason: cert.reason.clone(),
    }
}

/// Render a certificate as pretty-printed JSON with a trailing newline.
pub fn write_certificate(cert: &Certificate, graph: &TensegrityGraph) -> String {
    let file = certificate_to_file(cert, graph);
    let mut text =
        serde_json::to_string_pretty(&file).expect("certificate files always serialize");
    text.push('\n');
    text
}

/// Parse a certificate file back into the graph it certifies and the
/// in-memory certificate, validating every recorded field.
pub fn parse_certificate(text: &str) -> Result<(TensegrityGraph, Certificate), String> {
    let file: CertificateFile =
        serde_json::from_str(text).map_err(|e| format!("malformed certificate file: {e}"))?;
    certificate_from_file(&file)
}

/// Validate an already-deserialized certificate file.
pub fn certificate_from_file(
    file: &CertificateFile,
) -> Result<(TensegrityGraph, Certificate), String> {
    check_version(file.format)?;
    let operation = CertifiedOperation::parse(&file.operation)
        .ok_or_else(|| format!("unknown operation {:?}", file.operation))?;
    let verdict = Verdict::parse(&file.verdict)
        .ok_or_else(|| format!("unknown verdict {:?}", file.verdict))?;
    if file.dimension == 0 {
        return Err("dimension must be at least 1".into());
    }
    let graph = members_to_graph(file.graph.vertices, &file.graph.members)?;
    let tolerance = NumericTolerance::new(
        file.tolerance.rank_threshold_factor,
        file.tolerance.psd_slack,
    )
    .map_err(|e| e.to_string())?;
    let witness = match &file.witness {
        None => None,
        Some(w) => {
            let configuration = Configuration::new(file.dimension, w.configuration.clone())
                .map_err(|e| format!("witness configuration: {e}"))?;
            let stress = match &w.stress {
                None => None,
                Some(records) => {
                    let values = records.iter().map(|r| (Pair::new(r.i, r.j), r.value));
                    Some(
                        Stress::new(&graph, values)
                            .map_err(|e| format!("witness stress: {e}"))?,
                    )
                }
            };
            Some(Witness {
                configuration,
                stress,
                rigidity_rank: w.rigidity_rank,
                stress_rank: w.stress_rank,
            })
        }
    };
    let cert = Certificate {
        operation,
        verdict,
        dimension: file.dimension,
        graph_fingerprint: file.graph_fingerprint.clone(),
        witness,
        tolerance,
        seed: file.seed,
        trials: file.trials,
        reason: file.reason.clone(),
    };
    Ok((graph, cert))
}
