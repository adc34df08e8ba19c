use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use shift_ramsey::coloring::{adversarial_coloring, all_colorings, constant_coloring};
use shift_ramsey::graph::{chromatic_number_with_budget, DEFAULT_NODE_BUDGET};
use shift_ramsey::sequence::{required_host_size, s_sequence, TowerValue};
use shift_ramsey::{
    classical_ramsey, clique_number, eh_graph, lemma1_extract, load_coloring, load_coloring_any,
    opportunistic_extract, ramsey_check, random_coloring, shift_graph, Adversary, BigNat, Color,
    Error, ExtractionKind, ExtractionTrace, Graph, Host, RamseyMode, Scope, ShiftGraph,
    TwoColoring, SCHEMA_VERSION,
};

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_ENV: &str = "SHIFT_RAMSEY_OUT_DIR";

#[derive(Parser)]
#[command(name = "shift-ramsey", version, about = "Shift graphs, edge colorings and monochromatic extraction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit G_k or Sh(N,k).
    Generate(GenerateArgs),
    /// Produce a red/blue edge coloring of a shift graph.
    Color(ColorArgs),
    /// Extract a monochromatic structured copy and emit its trace.
    Extract(ExtractArgs),
    /// Replay a trace against its coloring.
    Verify(VerifyArgs),
    /// Exact chromatic number.
    Chi(SolverArgs),
    /// Exact clique number.
    Omega(SolverArgs),
    /// Check whether every coloring of a host forces a monochromatic pattern.
    Ramsey(RamseyArgs),
    /// Print S_n of the tower recurrence.
    Sseq(SseqArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct HostArgs {
    /// G_k on 2^k + 1 points.
    #[arg(long, value_name = "K")]
    level: Option<u32>,
    /// Sh(N,k), given as N,k.
    #[arg(long, value_name = "N,K", value_parser = parse_pair)]
    shift: Option<(u32, u32)>,
}

impl HostArgs {
    fn build(&self) -> Result<ShiftGraph, Error> {
        match (self.level, self.shift) {
            (Some(k), _) => eh_graph(k),
            (_, Some((n, k))) => shift_graph(n, k),
            _ => unreachable!("clap enforces one host flag"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    EdgeList,
    Text,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    host: HostArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(multiple = false)]
struct SourceArgs {
    /// Seeded random coloring.
    #[arg(long)]
    seed: Option<u64>,
    /// One of the structured adversarial colorings.
    #[arg(long, value_parser = parse_adversary)]
    adversary: Option<Adversary>,
    /// Every edge gets this color (red or blue).
    #[arg(long, value_parser = parse_color)]
    constant: Option<Color>,
}

impl SourceArgs {
    fn given(&self) -> bool {
        self.seed.is_some() || self.adversary.is_some() || self.constant.is_some()
    }

    fn build(&self, host: ShiftGraph) -> Result<TwoColoring, Error> {
        if let Some(a) = self.adversary {
            adversarial_coloring(host, a)
        } else if let Some(c) = self.constant {
            Ok(constant_coloring(host, c))
        } else if let Some(s) = self.seed {
            Ok(random_coloring(host, s))
        } else {
            Err(Error::InvalidArgument("give --seed, --adversary or --constant".into()))
        }
    }
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, value_name = "K", conflicts_with_all = ["shift", "file"])]
    level: Option<u32>,
    #[arg(long, value_name = "N,K", value_parser = parse_pair, conflicts_with = "file")]
    shift: Option<(u32, u32)>,
    #[command(flatten)]
    source: SourceArgs,
    /// Read and normalize an existing coloring file.
    #[arg(long, conflicts_with_all = ["seed", "adversary", "constant", "all", "rank"])]
    file: Option<PathBuf>,
    /// Every coloring in binary-counter order, separated by blank lines.
    #[arg(long, conflicts_with_all = ["seed", "adversary", "constant", "rank"])]
    all: bool,
    /// The coloring at this position of the binary-counter order.
    #[arg(long, conflicts_with_all = ["seed", "adversary", "constant"])]
    rank: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExtractArgs {
    /// Star extraction at level t on host G_(2^(t+1)).
    #[arg(long, requires = "t", conflicts_with = "opportunistic")]
    lemma1: bool,
    #[arg(long)]
    t: Option<u32>,
    /// Nested extraction with actual set sizes on G_level.
    #[arg(long)]
    opportunistic: bool,
    #[arg(long, value_name = "K")]
    level: Option<u32>,
    #[command(flatten)]
    source: SourceArgs,
    /// Coloring file to extract from instead of a generated one.
    #[arg(long, conflicts_with_all = ["seed", "adversary", "constant"])]
    coloring: Option<PathBuf>,
    /// Write the trace here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the coloring that was used.
    #[arg(long)]
    coloring_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    trace: PathBuf,
    #[arg(long, conflicts_with_all = ["seed", "adversary", "constant"])]
    coloring: Option<PathBuf>,
    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_name = "K", conflicts_with_all = ["shift", "graph"])]
    level: Option<u32>,
    #[arg(long, value_name = "N,K", value_parser = parse_pair, conflicts_with = "graph")]
    shift: Option<(u32, u32)>,
    /// Edge-list file (`p n` then `e u v` lines).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Search-node budget for the chromatic solver.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct RamseyArgs {
    /// level:K, shift:N,K, complete:N or file:PATH.
    #[arg(long, required_unless_present = "classical")]
    host: Option<String>,
    /// Same forms as --host.
    #[arg(long, required_unless_present = "classical")]
    pattern: Option<String>,
    /// Red K_s or blue K_t in every coloring of K_n, given as s,t,n.
    #[arg(long, value_name = "S,T,N", conflicts_with_all = ["host", "pattern"])]
    classical: Option<String>,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Where to write a witness coloring, if one is found.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct SseqArgs {
    #[arg(required_unless_present = "host_size")]
    n: Option<u64>,
    /// Print the host level N = S_(2^(k+1)) instead.
    #[arg(long, value_name = "K", conflicts_with = "n")]
    host_size: Option<u32>,
}

#[derive(Serialize)]
struct GraphReport<'a> {
    schema_version: u32,
    name: String,
    points: u32,
    arity: u32,
    level: Option<u32>,
    vertex_count: u64,
    edge_count: u64,
    vertices: &'a [String],
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    schema_version: u32,
    verified: bool,
    kind: ExtractionKind,
    scope: Scope,
    final_color: Color,
    final_points: &'a [u32],
    achieved_level: u32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Lib(Error::Io(e))
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected N,K")?;
    Ok((
        a.trim().parse().map_err(|_| format!("bad number {a:?}"))?,
        b.trim().parse().map_err(|_| format!("bad number {b:?}"))?,
    ))
}

fn parse_adversary(s: &str) -> Result<Adversary, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Adversary::ALL.iter().map(|a| a.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_color(s: &str) -> Result<Color, String> {
    s.parse().map_err(|_| "expected red or blue".to_string())
}

fn out_path(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

/// Writes to `--out` if given, else to standard output.
fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(p) => write_file(p, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult {
    let path = out_path(path);
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(&path, text)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn solver_graph(a: &SolverArgs) -> CliResult<Graph> {
    Ok(match (a.level, a.shift, &a.graph) {
        (Some(k), _, _) => eh_graph(k)?.to_graph()?,
        (_, Some((n, k)), _) => shift_graph(n, k)?.to_graph()?,
        (_, _, Some(p)) => Graph::parse_edge_list(&read(p)?)?,
        _ => return Err(Failure::Usage("give --level, --shift or --graph".into())),
    })
}

/// `level:K`, `shift:N,K`, `complete:N` or `file:PATH`.
fn parse_host_spec(spec: &str) -> CliResult<Host> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| Failure::Usage(format!("bad graph spec {spec:?}")))?;
    let num = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("bad number in {spec:?}")))
    };
    Ok(match kind {
        "level" => eh_graph(num(arg)?)?.into(),
        "shift" => {
            let (n, k) = parse_pair(arg).map_err(Failure::Usage)?;
            shift_graph(n, k)?.into()
        }
        "complete" => shift_ramsey::complete_graph(num(arg)? as usize)?.into(),
        "file" => Graph::parse_edge_list(&read(Path::new(arg))?)?.into(),
        _ => return Err(Failure::Usage(format!("unknown graph kind {kind:?}"))),
    })
}

fn generate(a: GenerateArgs) -> CliResult {
    let g = a.host.build()?;
    let text = match a.format {
        Format::Json => {
            let graph = g.to_graph()?;
            let value = GraphReport {
                schema_version: SCHEMA_VERSION,
                name: g.name(),
                points: g.points(),
                arity: g.arity(),
                level: g.level(),
                vertex_count: g.vertex_count(),
                edge_count: g.edge_count(),
                vertices: graph.labels().unwrap_or_default(),
                edges: graph.edges().map(|(u, v)| [u, v]).collect(),
            };
            serde_json::to_string_pretty(&value).expect("json")
        }
        Format::Dot => g.to_graph()?.to_dot(&g.name()),
        Format::EdgeList => g.to_graph()?.to_edge_list(),
        Format::Text => format!(
            "{}\npoints {}\narity {}\nvertices {}\nedges {}\n",
            g.name(),
            g.points(),
            g.arity(),
            g.vertex_count(),
            g.edge_count()
        ),
    };
    emit(a.out.as_deref(), &text)
}

fn color(a: ColorArgs) -> CliResult {
    if let Some(p) = &a.file {
        let c = load_coloring_any(&read(p)?)?;
        return emit(a.out.as_deref(), &c.to_text());
    }
    let host = match (a.level, a.shift) {
        (Some(k), _) => eh_graph(k)?,
        (_, Some((n, k))) => shift_graph(n, k)?,
        _ => return Err(Failure::Usage("give --level or --shift".into())),
    };
    if a.all {
        let mut text = String::new();
        for (idx, c) in all_colorings(host)?.enumerate() {
            if idx > 0 {
                text.push('\n');
            }
            text.push_str(&c.to_text());
        }
        return emit(a.out.as_deref(), &text);
    }
    let c = match a.rank {
        Some(r) => TwoColoring::from_rank(host, r)?,
        None if a.source.given() => a.source.build(host)?,
        None => return Err(Failure::Usage("give --seed, --adversary, --constant, --rank, --all or --file".into())),
    };
    emit(a.out.as_deref(), &c.to_text())
}

fn extract(a: ExtractArgs) -> CliResult {
    if a.lemma1 == a.opportunistic {
        return Err(Failure::Usage("give exactly one of --lemma1 or --opportunistic".into()));
    }
    let host = if a.lemma1 {
        let t = a.t.expect("clap requires --t");
        let n = 1u32
            .checked_shl(t.saturating_add(1))
            .filter(|&n| n < 32)
            .ok_or_else(|| Failure::Usage(format!("t = {t} is too large")))?;
        if a.level.is_some_and(|l| l != n) {
            return Err(Failure::Lib(Error::Hypothesis(format!("t = {t} needs host G_{n}"))));
        }
        Some(n)
    } else {
        a.level
    };
    let c = match (&a.coloring, host) {
        (Some(p), Some(level)) => load_coloring(eh_graph(level)?, &read(p)?)?,
        (Some(p), None) => load_coloring_any(&read(p)?)?,
        (None, Some(level)) => a.source.build(eh_graph(level)?)?,
        (None, None) => return Err(Failure::Usage("--opportunistic needs --level or --coloring".into())),
    };
    let trace = if a.lemma1 {
        lemma1_extract(&c, a.t.unwrap())?
    } else {
        opportunistic_extract(&c)?
    };
    if let Some(p) = &a.coloring_out {
        write_file(p, &c.to_text())?;
    }
    eprintln!(
        "{} copy of G_{} on {} points",
        trace.final_color,
        trace.achieved_level,
        trace.final_points.len()
    );
    emit(a.out.as_deref(), &trace.to_json())
}

fn verify(a: VerifyArgs) -> CliResult {
    let trace = ExtractionTrace::from_json(&read(&a.trace)?)?;
    let c = match &a.coloring {
        Some(p) => load_coloring(trace.host, &read(p)?)?,
        None if a.source.given() => a.source.build(trace.host)?,
        None => return Err(Failure::Usage("give --coloring, --seed, --adversary or --constant".into())),
    };
    match trace.replay(&c) {
        Ok(()) => {
            let report = VerifyReport {
                schema_version: SCHEMA_VERSION,
                verified: true,
                kind: trace.kind,
                scope: trace.scope,
                final_color: trace.final_color,
                final_points: &trace.final_points,
                achieved_level: trace.achieved_level,
            };
            emit(None, &serde_json::to_string_pretty(&report).expect("json"))
        }
        Err(Error::Certification(why)) => Err(Failure::Verification(why)),
        Err(e) => Err(e.into()),
    }
}

fn sseq(a: SseqArgs) -> CliResult {
    let text = match (a.n, a.host_size) {
        (_, Some(k)) => required_host_size(k)?.to_string(),
        (Some(0), None) => return Err(Failure::Lib(Error::InvalidArgument("n must be at least 1".into()))),
        (Some(n), None) => match s_sequence(n) {
            Ok(v) => v.to_string(),
            Err(Error::TowerOverflow { .. }) => TowerValue::of_index(BigNat::from_u64(n)).to_string(),
            Err(e) => return Err(e.into()),
        },
        (None, None) => unreachable!("clap requires n or --host-size"),
    };
    emit(None, &text)
}

fn ramsey(a: RamseyArgs) -> CliResult {
    let mode = match a.mode {
        Mode::Exhaustive => RamseyMode::Exhaustive,
        Mode::Sampled => RamseyMode::Sampled {
            count: a.count,
            seed: a.seed,
        },
    };
    let verdict = if let Some(spec) = &a.classical {
        if !matches!(mode, RamseyMode::Exhaustive) {
            return Err(Failure::Usage("--classical is exhaustive only".into()));
        }
        let v: Vec<usize> = spec
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("bad --classical {spec:?}")))?;
        let [s, t, n] = v[..] else {
            return Err(Failure::Usage("--classical takes s,t,n".into()));
        };
        classical_ramsey(s, t, n, a.jobs)?
    } else {
        let host = parse_host_spec(a.host.as_deref().expect("clap requires --host"))?;
        let pattern = parse_host_spec(a.pattern.as_deref().expect("clap requires --pattern"))?.to_graph()?;
        ramsey_check(host, &pattern, mode, a.jobs)?
    };
    let witness_path = match (&verdict.witness_coloring, &a.witness_out) {
        (Some(w), Some(p)) => {
            write_file(p, &w.to_text())?;
            Some(out_path(p).display().to_string())
        }
        _ => None,
    };
    emit(None, &verdict.to_json(witness_path.as_deref()))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Color(a) => color(a),
        Command::Extract(a) => extract(a),
        Command::Verify(a) => verify(a),
        Command::Chi(a) => {
            let g = solver_graph(&a)?;
            emit(None, &chromatic_number_with_budget(&g, a.budget)?.to_string())
        }
        Command::Omega(a) => {
            let g = solver_graph(&a)?;
            emit(None, &clique_number(&g).to_string())
        }
        Command::Ramsey(a) => ramsey(a),
        Command::Sseq(a) => sseq(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(why)) => {
            eprintln!("verification failed: {why}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(why)) => {
            eprintln!("error: {why}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let guard = e.is_guard() || matches!(e, Error::InsufficientHost { .. });
            ExitCode::from(if guard { 3 } else { 2 })
        }
    }
}
