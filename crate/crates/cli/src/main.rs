//! Command line front end for torus graph construction and classification.
//!
//! Every verb reads JSON documents, writes a JSON result to stdout (or the
//! `--output` file) and keeps all human-facing diagnostics on stderr, so the
//! output stream can always be piped into the next invocation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use tgk_core::{
    any_from_json, characteristic_from_json, classify, connected_sum, enumerate_characteristic,
    find_isomorphism, fold, from_characteristic, graph_from_json, is_equivalent, split, summarize,
    torus_from_json, torus_to_dot, torus_to_json, tree_to_json, AnyGraph, CharacteristicDoc,
    EdgeId, EquivalenceMode, Error, RecordDoc, SumSite, TorusDoc, TorusGraph, Vertex,
};

#[derive(Parser)]
#[command(name = "tgk", version, about = "Build, transform and classify torus graphs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dedup {
    /// Labels must match on the nose.
    Exact,
    /// Labels may differ by per-facet sign flips.
    Lifts,
}

impl Dedup {
    fn mode(self) -> EquivalenceMode {
        match self {
            Dedup::Exact => EquivalenceMode::Exact,
            Dedup::Lifts => EquivalenceMode::Lifts,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Dedup::Exact => "exact",
            Dedup::Lifts => "lifts",
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Check a graph or torus graph document against all axioms.
    Validate {
        /// Document to check.
        #[arg(short, long)]
        input: PathBuf,
        /// Where to write the verdict (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Label a rotation graph with a facet assignment.
    Build {
        /// Two documents: the rotation graph, then the assignment.
        #[arg(short, long, num_args = 1, action = clap::ArgAction::Append)]
        input: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decompose a torus graph into basic pieces.
    Classify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Equivalence used when re-checking the tree against its input.
        #[arg(long, value_enum, default_value_t = Dedup::Exact)]
        dedup: Dedup,
    },
    /// Glue two torus graphs at a pair of opposite-sign vertices.
    Sum {
        /// Two documents: the left graph, then the right graph.
        #[arg(short, long, num_args = 1, action = clap::ArgAction::Append)]
        input: Vec<PathBuf>,
        /// Vertices removed on each side, as "LEFT,RIGHT".
        #[arg(long)]
        site: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cut a torus graph along three edges and cap both halves.
    Split {
        #[arg(short, long)]
        input: PathBuf,
        /// The three cut edges, as "E1,E2,E3".
        #[arg(long)]
        cut: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(short, long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Decide whether two torus graphs are equivalent.
    Iso {
        /// Two documents to compare.
        #[arg(short, long, num_args = 1, action = clap::ArgAction::Append)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Dedup::Exact)]
        dedup: Dedup,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Stream every facet assignment of a rotation graph up to a bound.
    Enumerate {
        /// Rotation graph document.
        #[arg(short, long)]
        input: PathBuf,
        /// Largest absolute coordinate tried in any facet label.
        #[arg(short, long)]
        bound: u32,
        /// Total number of deterministic partitions of the stream.
        #[arg(long, default_value_t = 1)]
        shards: u64,
        /// Which partition this invocation emits (0-based).
        #[arg(long, default_value_t = 0)]
        shard: u64,
        /// When set, suppress assignments whose torus graphs repeat earlier ones.
        #[arg(long, value_enum)]
        dedup: Option<Dedup>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// A verb failed: carries the process exit code and a message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    /// The diagnostics were already printed; only the exit code remains.
    fn reported(code: u8) -> Failure {
        Failure { code, message: String::new() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TGK_LOG", "warn"))
        .format_timestamp(None)
        .init();
    match run(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(target: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match target {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn two_inputs(input: &[PathBuf], verb: &str) -> Result<(PathBuf, PathBuf), Failure> {
    match input {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(Failure::usage(format!(
            "{verb} takes exactly two --input documents, got {}",
            input.len()
        ))),
    }
}

fn parse_ids<const N: usize>(text: &str, what: &str) -> Result<[usize; N], Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(Failure::usage(format!("{what} needs {N} comma-separated ids, got {text:?}")));
    }
    let mut out = [0usize; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| Failure::usage(format!("{what}: {part:?} is not a vertex or edge id")))?;
    }
    Ok(out)
}

fn run(verb: Verb) -> Result<(), Failure> {
    match verb {
        Verb::Validate { input, output } => cmd_validate(&input, output.as_deref()),
        Verb::Build { input, output, format } => cmd_build(&input, output.as_deref(), format),
        Verb::Classify { input, output, dedup } => cmd_classify(&input, output.as_deref(), dedup),
        Verb::Sum { input, site, output, format } => {
            cmd_sum(&input, &site, output.as_deref(), format)
        }
        Verb::Split { input, cut, output, format } => {
            cmd_split(&input, &cut, output.as_deref(), format)
        }
        Verb::Iso { input, dedup, output } => cmd_iso(&input, dedup, output.as_deref()),
        Verb::Enumerate { input, bound, shards, shard, dedup, output } => {
            cmd_enumerate(&input, bound, shards, shard, dedup, output.as_deref())
        }
    }
}

fn cmd_validate(input: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let text = read_input(input)?;
    let verdict = match any_from_json(&text) {
        Ok(AnyGraph::Torus(tg)) => match tg.validate() {
            Ok(()) => {
                let n = tg.graph().vertex_count();
                eprintln!("valid torus graph, {n} vertices");
                Ok(("torus graph", n, tg.graph().edge_count(), tg.graph().facets().len()))
            }
            Err(e) => Err(Error::Validation(e)),
        },
        Ok(AnyGraph::Plain(g)) => match g.validate_nice() {
            Ok(()) => {
                let n = g.vertex_count();
                eprintln!("valid rotation graph, {n} vertices");
                Ok(("rotation graph", n, g.edge_count(), g.facets().len()))
            }
            Err(e) => Err(Error::Validation(e)),
        },
        // Malformed JSON or schema violations abort before any verdict.
        Err(e @ Error::Parse(_)) => return Err(e.into()),
        Err(e) => Err(e),
    };
    match verdict {
        Ok((kind, vertices, edges, facets)) => {
            let doc = serde_json::json!({
                "valid": true,
                "kind": kind,
                "vertices": vertices,
                "edges": edges,
                "facets": facets,
            });
            write_output(output, &serde_json::to_string_pretty(&doc).expect("verdicts serialize"))
        }
        Err(e) => {
            eprintln!("invalid: {e}");
            let doc = serde_json::json!({ "valid": false, "error": e.to_string() });
            write_output(output, &serde_json::to_string_pretty(&doc).expect("verdicts serialize"))?;
            Err(Failure::reported(e.exit_code() as u8))
        }
    }
}

fn cmd_build(input: &[PathBuf], output: Option<&Path>, format: Format) -> Result<(), Failure> {
    let (graph_path, assignment_path) = two_inputs(input, "build")?;
    let g = graph_from_json(&read_input(&graph_path)?)?;
    let lam = characteristic_from_json(&read_input(&assignment_path)?)?;
    let tg = from_characteristic(&g, &lam).map_err(Error::Validation)?;
    info!("built torus graph with {} vertices", tg.graph().vertex_count());
    let text = match format {
        Format::Json => torus_to_json(&tg),
        Format::Dot => torus_to_dot(&tg),
    };
    write_output(output, &text)
}

fn cmd_classify(input: &Path, output: Option<&Path>, dedup: Dedup) -> Result<(), Failure> {
    let tg = torus_from_json(&read_input(input)?)?;
    let tree = classify(&tg)?;
    let (refolded, _) = fold(&tree)?;
    if !is_equivalent(&refolded, &tg, dedup.mode()) {
        return Err(Error::internal("classification tree does not refold to its input").into());
    }
    debug!("refold check ({}): ok", dedup.name());
    eprintln!("{}", summarize(&tree));
    write_output(output, &tree_to_json(&tree))
}

fn cmd_sum(
    input: &[PathBuf],
    site: &str,
    output: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let (left_path, right_path) = two_inputs(input, "sum")?;
    let left = torus_from_json(&read_input(&left_path)?)?;
    let right = torus_from_json(&read_input(&right_path)?)?;
    let [p, q] = parse_ids::<2>(site, "--site")?;
    let site = SumSite { left: Vertex(p), right: Vertex(q) };
    let (tg, record) = connected_sum(&left, &right, &site)?;
    info!("sum has {} vertices", tg.graph().vertex_count());
    let text = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "graph": TorusDoc::of(&tg),
                "record": RecordDoc::of(&record),
            });
            serde_json::to_string_pretty(&doc).expect("documents serialize")
        }
        Format::Dot => torus_to_dot(&tg),
    };
    write_output(output, &text)
}

fn cmd_split(
    input: &Path,
    cut: &str,
    output: Option<&Path>,
    format: Format,
) -> Result<(), Failure> {
    let tg = torus_from_json(&read_input(input)?)?;
    let [a, b, c] = parse_ids::<3>(cut, "--cut")?;
    let (left, right, record) = split(&tg, [EdgeId(a), EdgeId(b), EdgeId(c)])?;
    info!("split into {} + {} vertices", left.graph().vertex_count(), right.graph().vertex_count());
    let text = match format {
        Format::Json => {
            let doc = serde_json::json!({
                "left": TorusDoc::of(&left),
                "right": TorusDoc::of(&right),
                "record": RecordDoc::of(&record),
            });
            serde_json::to_string_pretty(&doc).expect("documents serialize")
        }
        Format::Dot => format!("{}\n{}", torus_to_dot(&left), torus_to_dot(&right)),
    };
    write_output(output, &text)
}

/// Like the library's sign-flip search, but keeps the witness isomorphism.
fn find_lifted_isomorphism(a: &TorusGraph, b: &TorusGraph) -> Option<tgk_core::Isomorphism> {
    let facets = b.graph().facets().len();
    (0u64..1 << facets).find_map(|mask| {
        let flips: Vec<bool> = (0..facets).map(|i| mask & (1 << i) != 0).collect();
        find_isomorphism(a, &b.flip_facets(&flips))
    })
}

fn cmd_iso(input: &[PathBuf], dedup: Dedup, output: Option<&Path>) -> Result<(), Failure> {
    let (left_path, right_path) = two_inputs(input, "iso")?;
    let left = torus_from_json(&read_input(&left_path)?)?;
    let right = torus_from_json(&read_input(&right_path)?)?;
    let witness = match dedup {
        Dedup::Exact => find_isomorphism(&left, &right),
        Dedup::Lifts => find_lifted_isomorphism(&left, &right),
    };
    let equivalent = witness.is_some();
    eprintln!(
        "{} ({} labels)",
        if equivalent { "equivalent" } else { "not equivalent" },
        dedup.name()
    );
    let map = witness.map(|iso| iso.vertex_map.iter().map(|v| v.0 as u64).collect::<Vec<u64>>());
    let doc = serde_json::json!({
        "equivalent": equivalent,
        "mode": dedup.name(),
        "vertex_map": map,
    });
    write_output(output, &serde_json::to_string_pretty(&doc).expect("verdicts serialize"))
}

fn cmd_enumerate(
    input: &Path,
    bound: u32,
    shards: u64,
    shard: u64,
    dedup: Option<Dedup>,
    output: Option<&Path>,
) -> Result<(), Failure> {
    if shards == 0 {
        return Err(Failure::usage("--shards must be at least 1"));
    }
    if shard >= shards {
        return Err(Failure::usage(format!("--shard {shard} out of range for {shards} shards")));
    }
    let g = graph_from_json(&read_input(input)?)?;
    let mut kept: Vec<TorusGraph> = Vec::new();
    let mut lines = Vec::new();
    let mut emitted = 0u64;
    for (index, lam) in enumerate_characteristic(&g, bound)?.enumerate() {
        if index as u64 % shards != shard {
            continue;
        }
        if let Some(mode) = dedup {
            // The enumerator only yields assignments that label the graph,
            // so a failure here is a broken invariant, not bad input.
            let tg = from_characteristic(&g, &lam)
                .map_err(|e| Error::internal(format!("enumerated assignment rejected: {e}")))?;
            if kept.iter().any(|seen| is_equivalent(&tg, seen, mode.mode())) {
                continue;
            }
            kept.push(tg);
        }
        let doc = CharacteristicDoc::of(&lam);
        let line = serde_json::to_string(&doc).expect("assignments serialize");
        if output.is_none() {
            println!("{line}");
        } else {
            lines.push(line);
        }
        emitted += 1;
    }
    info!("enumerate: emitted {emitted} assignments (shard {shard}/{shards})");
    if output.is_some() {
        write_output(output, &lines.join("\n"))?;
    }
    Ok(())
}
