//! `qpkit` command-line front end.
//!
//! Exit codes: 0 success, 1 a proved theorem was violated, 2 bad input or
//! usage, 3 a size limit was exceeded.

use std::fs;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qpkit::constructions::{family_prime_clique, family_prime_independent_set, odd_cycle_family, Construction};
use qpkit::engine::DEFAULT_RECOGNITION_LIMIT;
use qpkit::graph6::read_graph6_stream;
use qpkit::harness::{self, GraphSource, HarnessError, SuiteReport};
use qpkit::{
    emit_edge_list, parse_edge_list, parse_graph6, Graph, Mode, PerfectionChecker, RecognitionConfig,
    RecognitionError, Recognizer,
};

#[derive(Parser)]
#[command(name = "qpkit", version, about = "Quasiperfect graph recognition and verification")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest graph order the recogniser accepts.
    #[arg(long, global = true, env = "QPKIT_LIMIT", default_value_t = DEFAULT_RECOGNITION_LIMIT)]
    limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Pure,
    Accelerated,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Theorem1,
    Theorem2,
    PerfectSubset,
    ColorRemoval,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurveyName {
    ColorRemoval,
    ReadingDivergence,
}

#[derive(Subcommand)]
enum Command {
    /// Classify graphs; prints one JSON record per input graph.
    Classify(ClassifyArgs),
    /// Build a graph from `family n=5 k={1,3}` or `c5blowup t=3`.
    Construct {
        spec: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Run verification suites; exits 1 if a theorem is violated.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        source: SourceArgs,
        /// Also sweep every optimal colouring of small graphs.
        #[arg(long)]
        all_colorings: bool,
    },
    /// Run an exploratory survey; findings never fail the run.
    Survey {
        #[arg(value_enum)]
        name: SurveyName,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        all_colorings: bool,
    },
    /// Search for a smallest quasiperfect graph containing the input.
    Supergraph {
        /// graph6 string (or edge-list file with --format edgelist).
        graph: String,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
}

#[derive(Args)]
struct ClassifyArgs {
    /// Input file; `-` or absent reads standard input.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    #[arg(long, value_enum, default_value = "accelerated")]
    mode: ModeArg,
    /// Accept perfect graphs via replication (accelerated mode only).
    #[arg(long)]
    perfect_shortcut: bool,
    /// Directory for certificate files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Do not write certificate files.
    #[arg(long)]
    no_certs: bool,
    /// Also write all records as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SourceArgs {
    /// Enumerate all graphs up to this order.
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Read graph6 records from a file (`-` for stdin) instead of enumerating.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Violation(String),
    Input(String),
    Limit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Limit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Violation(m) | Failure::Input(m) | Failure::Limit(m) => m,
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let m = e.to_string();
        match e {
            HarnessError::Recognition(_) | HarnessError::Perfection(_) | HarnessError::SupergraphLimit { .. } => {
                Failure::Limit(m)
            }
            HarnessError::Theorem1Violation { .. } => Failure::Violation(m),
            _ => Failure::Input(m),
        }
    }
}

impl From<RecognitionError> for Failure {
    fn from(e: RecognitionError) -> Self {
        Failure::Limit(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("qpkit: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qpkit: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limit = cli.limit;
    match cli.command {
        Command::Classify(args) => classify(args, limit),
        Command::Construct { spec, format } => construct(&spec, format),
        Command::Verify { suite, source, all_colorings } => verify(suite, &source, all_colorings, limit),
        Command::Survey { name, source, all_colorings } => survey(name, &source, all_colorings, limit),
        Command::Supergraph { graph, k_max, format } => supergraph(&graph, k_max, format, limit),
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn read_input(path: Option<&Path>) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match path {
        None => Box::new(BufReader::new(io::stdin())),
        Some(p) if p == Path::new("-") => Box::new(BufReader::new(io::stdin())),
        Some(p) => Box::new(BufReader::new(fs::File::open(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?)),
    })
}

fn read_graphs(path: Option<&Path>, format: Format) -> Result<Vec<Graph>, Failure> {
    let mut reader = read_input(path)?;
    match format {
        Format::Graph6 => read_graph6_stream(reader)
            .enumerate()
            .map(|(i, g)| g.map_err(|e| Failure::Input(format!("record {}: {e}", i + 1))))
            .collect(),
        Format::Edgelist => {
            let mut text = String::new();
            reader.read_to_string(&mut text)?;
            Ok(vec![parse_edge_list(&text).map_err(|e| Failure::Input(e.to_string()))?])
        }
    }
}

fn classify(args: ClassifyArgs, limit: usize) -> Result<(), Failure> {
    let graphs = read_graphs(args.input.as_deref(), args.format)?;
    let mode = match args.mode {
        ModeArg::Pure => Mode::Pure,
        ModeArg::Accelerated => Mode::Accelerated,
    };
    let config = RecognitionConfig { mode, limit, perfect_shortcut: args.perfect_shortcut, ..Default::default() };
    let recognizer = Recognizer::new(config);
    let perfection = PerfectionChecker::new(limit);
    if !args.no_certs {
        fs::create_dir_all(&args.out)?;
    }

    let mut records = harness::classify_all(&graphs, &recognizer, &perfection)?;
    let mut lines = String::new();
    for (i, (g, rec)) in graphs.iter().zip(records.iter_mut()).enumerate() {
        if rec.quasiperfect && !args.no_certs {
            let cert = recognizer.certificate(g)?.expect("accepted graph has a certificate");
            let name = format!("cert-{:06}.qpcert.json", i + 1);
            fs::write(args.out.join(&name), cert.to_json())?;
            rec.cert_ref = Some(name);
        }
        lines.push_str(&serde_json::to_string(rec).expect("record serialises"));
        lines.push('\n');
    }
    emit(&lines)?;
    if let Some(path) = &args.csv {
        let file = fs::File::create(path)?;
        harness::write_records_csv(&records, file)?;
    }
    Ok(())
}

fn construct(spec: &str, format: Format) -> Result<(), Failure> {
    let construction: Construction = spec.parse().map_err(|e: qpkit::constructions::ConstructionError| Failure::Input(e.to_string()))?;
    let graph = construction.build().map_err(|e| Failure::Input(e.to_string()))?;
    let mut text = match format {
        Format::Graph6 => format!("{}\n", graph.to_graph6()),
        Format::Edgelist => emit_edge_list(&graph),
    };
    if let Construction::Family(spec) = &construction {
        let fg = odd_cycle_family(spec);
        text += &format!("PK={:?}\n", family_prime_clique(&fg).to_vec());
        let pi = family_prime_independent_set(&fg).map_err(|e| Failure::Input(e.to_string()))?;
        text += &format!("PI={:?} method={:?}\n", pi.set.to_vec(), pi.method);
    }
    emit(&text)
}

fn load_source(source: &SourceArgs) -> Result<(Vec<Graph>, GraphSource), Failure> {
    match &source.input {
        Some(path) => {
            let graphs = read_graphs(Some(path), Format::Graph6)?;
            let count = graphs.len();
            Ok((graphs, GraphSource::Stream { count }))
        }
        None => Ok((harness::enumerate_up_to(source.n_max)?, GraphSource::Enumerated { n_max: source.n_max })),
    }
}

fn check_order(graphs: &[Graph], limit: usize) -> Result<(), Failure> {
    match graphs.iter().map(Graph::order).max() {
        Some(n) if n > limit => Err(RecognitionError::LimitExceeded { n, limit }.into()),
        _ => Ok(()),
    }
}

fn emit_reports(reports: &[SuiteReport], out: Option<&Path>) -> Result<(), Failure> {
    let text = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(reports).expect("reports serialise")
    };
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => emit(&(text + "\n"))?,
    }
    Ok(())
}

fn verify(suite: Suite, source: &SourceArgs, all_colorings: bool, limit: usize) -> Result<(), Failure> {
    let (graphs, origin) = load_source(source)?;
    check_order(&graphs, limit)?;
    let recognizer = Recognizer::new(RecognitionConfig::pure().with_limit(limit));
    let perfection = PerfectionChecker::new(limit);
    let wanted = |s: Suite| suite == s || suite == Suite::All;

    let mut reports = Vec::new();
    if wanted(Suite::Theorem1) {
        reports.push(harness::theorem1_suite(&graphs, &origin, &recognizer)?);
    }
    if wanted(Suite::Theorem2) {
        reports.push(harness::theorem2_suite(&graphs, &origin, &recognizer)?);
    }
    if wanted(Suite::PerfectSubset) {
        reports.push(harness::perfect_subset_suite(&graphs, &origin, &recognizer, &perfection)?);
    }
    if wanted(Suite::ColorRemoval) {
        reports.push(harness::color_class_removal_suite(&graphs, &origin, &recognizer, all_colorings)?);
    }
    emit_reports(&reports, source.out.as_deref())?;

    let failed: Vec<&str> = reports.iter().filter(|r| r.is_failure()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!("violations in {}", failed.join(", "))))
    }
}

fn survey(name: SurveyName, source: &SourceArgs, all_colorings: bool, limit: usize) -> Result<(), Failure> {
    let (graphs, origin) = load_source(source)?;
    check_order(&graphs, limit)?;
    let recognizer = Recognizer::new(RecognitionConfig::pure().with_limit(limit));
    let report = match name {
        SurveyName::ColorRemoval => harness::color_class_removal_suite(&graphs, &origin, &recognizer, all_colorings)?,
        SurveyName::ReadingDivergence => harness::reading_divergence_suite(&graphs, &origin, &recognizer)?,
    };
    emit_reports(&[report], source.out.as_deref())
}

fn supergraph(graph: &str, k_max: usize, format: Format, limit: usize) -> Result<(), Failure> {
    let g = match format {
        Format::Graph6 => parse_graph6(graph).map_err(|e| Failure::Input(e.to_string()))?,
        Format::Edgelist => read_graphs(Some(Path::new(graph)), Format::Edgelist)?.remove(0),
    };
    let recognizer = Recognizer::new(RecognitionConfig::pure().with_limit(limit));
    let found = harness::minimal_qp_supergraph(&g, k_max, &recognizer)?;
    let body = match found {
        Some(s) => json!({ "found": true, "added": s.added, "graph6": s.graph.to_graph6() }),
        None => json!({ "found": false, "k_max": k_max }),
    };
    emit(&(serde_json::to_string_pretty(&body).expect("json") + "\n"))
}
