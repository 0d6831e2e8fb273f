//! Command dispatch: flag parsing, file plumbing, and the verdict-to-exit-code
//! mapping.
//!
//! Every subcommand reads framework or certificate files in the [`crate::format`]
//! JSON layout and exits with `0` for a certified yes (or plain success),
//! `1` for a certified or probable no, `2` for an inconclusive construction,
//! and `3` for malformed input of any kind.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use rigidity_core::certify::{
    certify_generic_global_rigidity, certify_global_rigidity_2d_combinatorial,
    check_super_stability, pebble_game_rigid_2d, replay_certificate, Certificate, Verdict,
    DEFAULT_TRIALS,
};
use rigidity_core::combine::{combine_erase_bar, superimpose_tensegrities};
use rigidity_core::generators::{
    complete_bipartite, complete_graph, paper_examples, random_configuration, SeededRandomSource,
};
use rigidity_core::{Framework, NumericTolerance, SharedVertexMap, Stress, TensegrityGraph};

use crate::format::{parse_certificate, parse_framework, write_certificate, write_framework};
use crate::svg::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Tolerance for coordinates that are supposed to agree across two input
/// files (shared vertices of a glue or superposition).
const COORDINATE_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Certify local, global, and universal rigidity of bar frameworks and tensegrities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify generic global rigidity of each framework file's graph.
    Certify(CertifyArgs),
    /// Decide planar global rigidity combinatorially (pebble game plus
    /// 3-connectivity); deterministic, no seed involved.
    Certify2d(SingleFileArgs),
    /// Check super stability of a tensegrity file that carries its stress.
    Superstable(SuperstableArgs),
    /// Join two bar frameworks sharing d + 1 vertices, erase a common bar,
    /// and emit the combined framework with its witness stress.
    Combine(CombineArgs),
    /// Superimpose two super-stable tensegrities so that a shared
    /// cable/strut pair cancels, and emit the combined tensegrity.
    Superimpose(SuperimposeArgs),
    /// Run the planar pebble game on a framework file's graph.
    Pebble(SingleFileArgs),
    /// Write a named example or parametric graph as a framework file.
    Generate(GenerateArgs),
    /// Draw a framework file as a static SVG figure.
    ExportSvg(ExportSvgArgs),
    /// Re-run the certifier recorded in a certificate file and compare
    /// verdicts.
    VerifyCertificate(SingleFileArgs),
}

#[derive(Args)]
struct CertifyArgs {
    /// Framework files to certify; each gets a `<stem>.cert.json` next to it.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Certification dimension (defaults to each file's dimension).
    #[arg(long)]
    dim: Option<usize>,
    /// Seed for the pseudo-generic configuration sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random configurations (and stress draws) to try before giving up.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Relative singular-value cutoff factor for rank decisions.
    #[arg(long)]
    tol: Option<f64>,
    /// Certify this many files concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct SingleFileArgs {
    file: PathBuf,
}

#[derive(Args)]
struct SuperstableArgs {
    /// Tensegrity file whose members all carry a stress value.
    file: PathBuf,
    /// Relative singular-value cutoff factor for rank decisions.
    #[arg(long)]
    tol: Option<f64>,
    /// Where to write the certificate (default: `<stem>.cert.json`).
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct CombineArgs {
    file1: PathBuf,
    file2: PathBuf,
    /// Shared vertices as "a:b,a:b,..." pairs of first-file:second-file labels.
    #[arg(long, required = true)]
    shared: String,
    /// The common bar to erase, as two first-file vertex labels.
    #[arg(long = "erase-bar", num_args = 2, value_names = ["I", "J"], required = true)]
    erase_bar: Vec<usize>,
    /// Seed for the witness stress search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials for the re-certification of the combined graph.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
    /// Relative singular-value cutoff factor for rank decisions.
    #[arg(long)]
    tol: Option<f64>,
    /// Where to write the combined framework (default: `<stem1>.combined.json`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the re-certification certificate (default: next to --out).
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct SuperimposeArgs {
    /// Tensegrity files; both must carry their stresses.
    file1: PathBuf,
    file2: PathBuf,
    /// Shared vertices as "a:b,a:b,..." pairs of first-file:second-file labels.
    #[arg(long, required = true)]
    shared: String,
    /// The cancelling member, as two first-file vertex labels; must be a
    /// cable in one input and a strut in the other.
    #[arg(long, num_args = 2, value_names = ["I", "J"], required = true)]
    cancel: Vec<usize>,
    /// Relative singular-value cutoff factor for rank decisions.
    #[arg(long)]
    tol: Option<f64>,
    /// Where to write the combined tensegrity (default: `<stem1>.superimposed.json`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the super-stability certificate (default: next to --out).
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// A registry name ("fig2-square", "k4-d2", "k55-d3", "two-k4-glue-1",
    /// "two-k4-glue-2") or a parametric graph ("complete:N", "bipartite:A,B").
    name: String,
    /// Output file (default: the name with ':' and ',' turned into '-', plus ".json").
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dimension of the random configuration for parametric graphs.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Seed of the random configuration for parametric graphs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExportSvgArgs {
    file: PathBuf,
    /// Output file (default: the input with extension ".svg").
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parse `argv` (including the program name) and run the selected command,
/// returning the process exit code.
pub fn run_command(argv: &[&str]) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Certify(args) => run_certify(args),
        Command::Certify2d(args) => run_certify_2d(args),
        Command::Superstable(args) => run_superstable(args),
        Command::Combine(args) => run_combine(args),
        Command::Superimpose(args) => run_superimpose(args),
        Command::Pebble(args) => run_pebble(args),
        Command::Generate(args) => run_generate(args),
        Command::ExportSvg(args) => run_export_svg(args),
        Command::VerifyCertificate(args) => run_verify_certificate(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::CertifiedYes => EXIT_OK,
        Verdict::CertifiedNo | Verdict::ProbablyNo => EXIT_NO,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn tolerance_from(tol: Option<f64>) -> Result<NumericTolerance, String> {
    match tol {
        None => Ok(NumericTolerance::default()),
        Some(factor) => NumericTolerance::new(factor, NumericTolerance::DEFAULT_PSD_SLACK)
            .map_err(|e| e.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_framework(path: &Path) -> Result<(Framework, Option<Stress>), String> {
    parse_framework(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_stressed_framework(path: &Path) -> Result<(Framework, Stress), String> {
    let (f, stress) = load_framework(path)?;
    match stress {
        Some(w) => Ok((f, w)),
        None => Err(format!(
            "{}: the file carries no stress values, but this command needs the witness stress on every member",
            path.display()
        )),
    }
}

fn parse_shared(text: &str) -> Result<SharedVertexMap, String> {
    let mut pairs = Vec::new();
    for (idx, part) in text.split(',').enumerate() {
        let part = part.trim();
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| format!("shared entry {idx} ({part:?}) is not of the form a:b"))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| format!("shared entry {idx}: {:?} is not a vertex label", a.trim()))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| format!("shared entry {idx}: {:?} is not a vertex label", b.trim()))?;
        pairs.push((a, b));
    }
    SharedVertexMap::new(pairs).map_err(|e| e.to_string())
}

fn emit_certificate(
    path: &Path,
    cert: &Certificate,
    graph: &TensegrityGraph,
) -> Result<(), String> {
    write_file(path, &write_certificate(cert, graph))
}

fn certify_one(
    path: &Path,
    dim: Option<usize>,
    seed: u64,
    trials: u32,
    tol: &NumericTolerance,
) -> (String, i32) {
    let result = (|| -> Result<(String, i32), String> {
        let (framework, _) = load_framework(path)?;
        let d = dim.unwrap_or(framework.dim());
        let cert = certify_generic_global_rigidity(framework.graph(), d, trials, seed, tol)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let cert_path = path.with_extension("cert.json");
        emit_certificate(&cert_path, &cert, framework.graph())?;
        Ok((
            format!("{}: {} — {}", path.display(), cert.verdict, cert.reason),
            verdict_exit(cert.verdict),
        ))
    })();
    result.unwrap_or_else(|msg| (format!("{}: error: {msg}", path.display()), EXIT_INPUT))
}

fn run_certify(args: CertifyArgs) -> Result<i32, String> {
    let tol = tolerance_from(args.tol)?;
    let n = args.files.len();
    let workers = args.jobs.max(1).min(n);
    let results: Vec<Mutex<Option<(String, i32)>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let outcome = certify_one(&args.files[k], args.dim, args.seed, args.trials, &tol);
                *results[k].lock().expect("no panics while certifying") = Some(outcome);
            });
        }
    });
    let mut worst = EXIT_OK;
    for cell in results {
        let (line, code) = cell
            .into_inner()
            .expect("no panics while certifying")
            .expect("every file was processed");
        println!("{line}");
        worst = worst.max(code);
    }
    Ok(worst)
}

fn run_certify_2d(args: SingleFileArgs) -> Result<i32, String> {
    let (framework, _) = load_framework(&args.file)?;
    let cert = certify_global_rigidity_2d_combinatorial(framework.graph())
        .map_err(|e| format!("{}: {e}", args.file.display()))?;
    emit_certificate(&args.file.with_extension("cert.json"), &cert, framework.graph())?;
    println!("{}: {} — {}", args.file.display(), cert.verdict, cert.reason);
    Ok(verdict_exit(cert.verdict))
}

fn run_superstable(args: SuperstableArgs) -> Result<i32, String> {
    let tol = tolerance_from(args.tol)?;
    let (framework, stress) = load_stressed_framework(&args.file)?;
    let cert = check_super_stability(&framework, &stress, &tol)
        .map_err(|e| format!("{}: {e}", args.file.display()))?;
    let cert_path = args.cert.unwrap_or_else(|| args.file.with_extension("cert.json"));
    emit_certificate(&cert_path, &cert, framework.graph())?;
    println!("{}: {} — {}", args.file.display(), cert.verdict, cert.reason);
    Ok(verdict_exit(cert.verdict))
}

fn run_combine(args: CombineArgs) -> Result<i32, String> {
    let tol = tolerance_from(args.tol)?;
    let (f1, _) = load_framework(&args.file1)?;
    let (f2, _) = load_framework(&args.file2)?;
    let shared = parse_shared(&args.shared)?;
    let bar = (args.erase_bar[0], args.erase_bar[1]);
    let outcome = combine_erase_bar(
        &f1,
        &f2,
        &shared,
        bar,
        args.seed,
        COORDINATE_AGREEMENT_TOL,
        &tol,
    )
    .map_err(|e| e.to_string())?;

    let out_path = args
        .out
        .unwrap_or_else(|| args.file1.with_extension("combined.json"));
    write_file(
        &out_path,
        &write_framework(&outcome.framework, Some(&outcome.witness)),
    )?;
    println!(
        "combined framework: {} vertices, {} members, witness stress rank {} of {} — {}",
        outcome.framework.vertex_count(),
        outcome.framework.graph().member_count(),
        outcome.witness_rank,
        outcome.target_rank,
        out_path.display()
    );

    if !outcome.is_conclusive() {
        if let Some(note) = &outcome.note {
            println!("inconclusive: {note}");
        }
        return Ok(EXIT_INCONCLUSIVE);
    }

    let cert = certify_generic_global_rigidity(
        outcome.framework.graph(),
        outcome.framework.dim(),
        args.trials,
        args.seed,
        &tol,
    )
    .map_err(|e| e.to_string())?;
    let cert_path = args.cert.unwrap_or_else(|| out_path.with_extension("cert.json"));
    emit_certificate(&cert_path, &cert, outcome.framework.graph())?;
    println!("re-certification: {} — {}", cert.verdict, cert.reason);
    Ok(verdict_exit(cert.verdict))
}

fn run_superimpose(args: SuperimposeArgs) -> Result<i32, String> {
    let tol = tolerance_from(args.tol)?;
    let (t1, w1) = load_stressed_framework(&args.file1)?;
    let (t2, w2) = load_stressed_framework(&args.file2)?;
    let shared = parse_shared(&args.shared)?;
    let cancel = (args.cancel[0], args.cancel[1]);
    let (framework, stress) = superimpose_tensegrities(
        &t1,
        &w1,
        &t2,
        &w2,
        &shared,
        cancel,
        COORDINATE_AGREEMENT_TOL,
        &tol,
    )
    .map_err(|e| e.to_string())?;

    let out_path = args
        .out
        .unwrap_or_else(|| args.file1.with_extension("superimposed.json"));
    write_file(&out_path, &write_framework(&framework, Some(&stress)))?;
    println!(
        "superimposed tensegrity: {} vertices, {} members — {}",
        framework.vertex_count(),
        framework.graph().member_count(),
        out_path.display()
    );

    let cert = check_super_stability(&framework, &stress, &tol).map_err(|e| e.to_string())?;
    let cert_path = args.cert.unwrap_or_else(|| out_path.with_extension("cert.json"));
    emit_certificate(&cert_path, &cert, framework.graph())?;
    println!("super stability: {} — {}", cert.verdict, cert.reason);
    Ok(verdict_exit(cert.verdict))
}

fn run_pebble(args: SingleFileArgs) -> Result<i32, String> {
    let (framework, _) = load_framework(&args.file)?;
    let rigid = pebble_game_rigid_2d(framework.graph());
    if rigid {
        println!("{}: rigid (generically, in the plane)", args.file.display());
        Ok(EXIT_OK)
    } else {
        println!("{}: flexible (generically, in the plane)", args.file.display());
        Ok(EXIT_NO)
    }
}

fn run_generate(args: GenerateArgs) -> Result<i32, String> {
    let (framework, stress): (Framework, Option<Stress>) =
        if let Some(params) = args.name.strip_prefix("complete:") {
            let n: usize = params
                .parse()
                .map_err(|_| format!("complete:{params}: {params:?} is not a vertex count"))?;
            let graph = complete_graph(n).map_err(|e| e.to_string())?;
            let mut rng = SeededRandomSource::new(args.seed);
            let config = random_configuration(n, args.dim, &mut rng).map_err(|e| e.to_string())?;
            (Framework::new(graph, config).map_err(|e| e.to_string())?, None)
        } else if let Some(params) = args.name.strip_prefix("bipartite:") {
            let (a, b) = params
                .split_once(',')
                .ok_or_else(|| format!("bipartite:{params}: expected two part sizes \"A,B\""))?;
            let a: usize = a
                .parse()
                .map_err(|_| format!("bipartite part size {a:?} is not a number"))?;
            let b: usize = b
                .parse()
                .map_err(|_| format!("bipartite part size {b:?} is not a number"))?;
            let graph = complete_bipartite(a, b).map_err(|e| e.to_string())?;
            let mut rng = SeededRandomSource::new(args.seed);
            let config =
                random_configuration(a + b, args.dim, &mut rng).map_err(|e| e.to_string())?;
            (Framework::new(graph, config).map_err(|e| e.to_string())?, None)
        } else {
            let registry = paper_examples();
            let example = registry.get(args.name.as_str()).ok_or_else(|| {
                format!(
                    "unknown name {:?}; known names are {}, \"complete:N\", and \"bipartite:A,B\"",
                    args.name,
                    registry
                        .keys()
                        .map(|k| format!("{k:?}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })?;
            (example.framework.clone(), example.stress.clone())
        };
    let out_path = args.out.unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}.json",
            args.name.replace([':', ','], "-")
        ))
    });
    write_file(&out_path, &write_framework(&framework, stress.as_ref()))?;
    println!(
        "{}: {} vertices, {} members in dimension {} — {}",
        args.name,
        framework.vertex_count(),
        framework.graph().member_count(),
        framework.dim(),
        out_path.display()
    );
    Ok(EXIT_OK)
}

fn run_export_svg(args: ExportSvgArgs) -> Result<i32, String> {
    let (framework, _) = load_framework(&args.file)?;
    let svg = render_svg(&framework).map_err(|e| format!("{}: {e}", args.file.display()))?;
    let out_path = args.out.unwrap_or_else(|| args.file.with_extension("svg"));
    write_file(&out_path, &svg)?;
    println!("{} -> {}", args.file.display(), out_path.display());
    Ok(EXIT_OK)
}

fn run_verify_certificate(args: SingleFileArgs) -> Result<i32, String> {
    let text = read_file(&args.file)?;
    let (graph, cert) =
        parse_certificate(&text).map_err(|e| format!("{}: {e}", args.file.display()))?;
    let replayed = replay_certificate(&graph, &cert)
        .map_err(|e| format!("{}: replay failed: {e}", args.file.display()))?;
    if replayed == cert.verdict {
        println!("{}: verified ({})", args.file.display(), replayed);
        Ok(EXIT_OK)
    } else {
        println!(
            "{}: MISMATCH — recorded {}, replay produced {}",
            args.file.display(),
            cert.verdict,
            replayed
        );
        Ok(EXIT_NO)
    }
}
