//! `distlap`: distance (signless) Laplacian spectra, graph families,
//! graft transformations, enumeration, and exhaustive certification.
//!
//! Exit codes: 0 success, 1 usage or parse errors, 2 verification
//! failure (violations or ambiguous family membership found).

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use distlap::verify::format_sig9;
use distlap::{
    add_edge, attach_pendant_paths, decode_graph6, double_broom, encode_graph6, extremal_search,
    graft_condition, move_branch, parse_edge_list, path, relocate_star, report_broom_profile,
    rho_l, rho_q, shift_pendant_path, star, sweep_lemma, triple_star_path, write_edge_list,
    BranchDecomposition, ClassQuery, Corpus, DoubleBroomParams, Graph, GraphClassQuery,
    GraftVariant, Method, Objective, StarEnd, SweepBounds, TreeClassQuery, TripleStarPathParams,
};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_VERIFICATION: i32 = 2;

#[derive(Parser)]
#[command(
    name = "distlap",
    version,
    about = "Distance (signless) Laplacian spectra of connected graphs: \
             spectra, families, graft transformations, enumeration, and \
             exhaustive extremal certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rho_L, rho_Q, Tr_max, and solver residuals for one graph.
    Spectrum(SpectrumArgs),
    /// Construct a named family member and print it.
    Family(FamilyArgs),
    /// Apply a graft transformation to a graph.
    #[command(subcommand)]
    Graft(GraftCommand),
    /// Stream a graph class as graph6 lines.
    Enumerate(EnumerateArgs),
    /// Exhaustive argmax search over a class, with a certificate.
    Extremal(ExtremalArgs),
    /// Check a lemma's inequality over a finite corpus.
    Sweep(SweepArgs),
    /// Empirical ordering of the double-broom splits for fixed (n, k).
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Graph6,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or '-' for stdin.
    #[arg(short, long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Input format.
    #[arg(long, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,
    /// Family spec instead of an input file: path:N, star:N,
    /// broom:N,K,T1,T2, triplestar:ELL,I,S1,SI,SL, or attach:FILE,U,P,Q.
    #[arg(long)]
    family: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<Graph> {
        match (&self.input, &self.family) {
            (Some(path), None) => read_graph(path, self.format),
            (None, Some(spec)) => parse_family_spec(spec),
            (None, None) => bail!("provide --input FILE (or '-') or --family SPEC"),
            (Some(_), Some(_)) => unreachable!("clap rejects conflicting flags"),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FamilyArgs {
    /// Family spec (see --family).
    spec: String,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    emit: GraphFormat,
}

#[derive(Subcommand)]
enum GraftCommand {
    /// Add the edge (u, v).
    AddEdge(AddEdgeArgs),
    /// Shift a pendant path pair at a vertex: G_{p,q} -> G_{p-1,q+1}.
    Shift(ShiftArgs),
    /// Move a branch from v0 to u and report the side condition.
    Move(MoveArgs),
    /// Move the interior star of a triple-star path to an end.
    Relocate(RelocateArgs),
}

#[derive(Args)]
struct AddEdgeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    u: usize,
    #[arg(long)]
    v: usize,
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    emit: GraphFormat,
}

#[derive(Args)]
struct ShiftArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Anchor vertex carrying both pendant paths.
    #[arg(long)]
    at: usize,
    /// p-path vertices outward from the anchor, comma-separated.
    #[arg(long, value_delimiter = ',')]
    p_path: Vec<usize>,
    /// q-path vertices outward from the anchor, comma-separated.
    #[arg(long, value_delimiter = ',')]
    q_path: Vec<usize>,
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    emit: GraphFormat,
}

#[derive(Args)]
struct MoveArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cut vertex.
    #[arg(long)]
    v0: usize,
    /// Interior vertices of the moved part G3, comma-separated.
    #[arg(long, value_delimiter = ',')]
    g3: Vec<usize>,
    /// Interior vertices of G1, comma-separated; the rest form G2.
    #[arg(long, value_delimiter = ',')]
    g1: Vec<usize>,
    /// Target vertex u in G2.
    #[arg(long)]
    u: usize,
    /// Print the eigenvector side-condition report as JSON instead of
    /// the transformed graph.
    #[arg(long)]
    report: bool,
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    emit: GraphFormat,
}

#[derive(Args)]
struct RelocateArgs {
    /// Triple-star parameters ELL,I,S1,SI,SL.
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
    /// Which end receives the star.
    #[arg(long, value_enum)]
    target: RelocateTarget,
    #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
    emit: GraphFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum RelocateTarget {
    End1,
    Endl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassKind {
    Tree,
    Graph,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, value_enum)]
    class: ClassKind,
    #[arg(long)]
    n: usize,
    /// Pendant-count filter (required for graph classes).
    #[arg(long)]
    k: Option<usize>,
    /// Safety cap on the number of emitted graphs.
    #[arg(long)]
    cap: Option<usize>,
    /// Raise the labeled-graph order cap (default 7, hard max 8).
    #[arg(long, default_value_t = 7)]
    max_order: usize,
}

#[derive(Args)]
struct ExtremalArgs {
    #[arg(long, value_enum)]
    class: ClassKind,
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with = "all_k")]
    k: Option<usize>,
    /// Search every class k = 2..=n-2 in turn.
    #[arg(long)]
    all_k: bool,
    #[arg(long, value_parser = parse_objective)]
    objective: Objective,
    /// Write the certificate(s) as JSON to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write a CSV summary row per (n, k, objective) to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Fail (exit 2) unless the winner is a double broom with no
    /// out-of-family ties.
    #[arg(long)]
    require_family: bool,
    #[arg(long, default_value_t = 7)]
    max_order: usize,
}

#[derive(Args)]
struct SweepArgs {
    /// Lemma id: 2.1, 2.2, 2.3, 2.5, 3.1, 3.2, 3.4, or nath-paul.
    #[arg(long)]
    lemma: String,
    /// Base-graph order bound (total order for lemma 2.2). Defaults per
    /// lemma: 8 for 2.1/3.1, 12 for 2.2, 6 otherwise.
    #[arg(long)]
    max_n: Option<usize>,
    /// Base corpus for the shift/edge/bound sweeps.
    #[arg(long, value_enum)]
    corpus: Option<CorpusArg>,
    /// Bound on p + q in the pendant-shift sweeps.
    #[arg(long, default_value_t = 6)]
    path_budget: usize,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusArg {
    Trees,
    Graphs,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_parser = parse_objective)]
    objective: Objective,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_objective(s: &str) -> Result<Objective, String> {
    match s.to_ascii_lowercase().as_str() {
        "rhol" | "rho_l" | "l" => Ok(Objective::RhoL),
        "rhoq" | "rho_q" | "q" => Ok(Objective::RhoQ),
        other => Err(format!("unknown objective {other:?}; use rhoL or rhoQ")),
    }
}

fn read_graph(path: &PathBuf, format: GraphFormat) -> Result<Graph> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    match format {
        GraphFormat::Edgelist => Ok(parse_edge_list(&text)?),
        GraphFormat::Graph6 => {
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| anyhow!("empty graph6 input"))?;
            Ok(decode_graph6(line.trim())?)
        }
    }
}

fn parse_family_spec(spec: &str) -> Result<Graph> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("family spec must look like kind:params, got {spec:?}"))?;
    let nums = |rest: &str| -> Result<Vec<usize>> {
        rest.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!("bad number {t:?}: {e}")))
            .collect()
    };
    match kind {
        "path" => Ok(path(rest.trim().parse()?)?),
        "star" => Ok(star(rest.trim().parse()?)?),
        "broom" => {
            let v = nums(rest)?;
            if v.len() != 4 {
                bail!("broom wants n,k,t1,t2");
            }
            Ok(double_broom(&DoubleBroomParams::new(v[0], v[1], v[2], v[3])?))
        }
        "triplestar" => {
            let v = nums(rest)?;
            if v.len() != 5 {
                bail!("triplestar wants ell,i,s1,si,sl");
            }
            Ok(triple_star_path(&TripleStarPathParams::new(
                v[0], v[1], v[2], v[3], v[4],
            )?))
        }
        "attach" => {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 4 {
                bail!("attach wants FILE,u,p,q");
            }
            let base = read_graph(&PathBuf::from(parts[0]), GraphFormat::Edgelist)?;
            Ok(attach_pendant_paths(
                &base,
                parts[1].trim().parse()?,
                parts[2].trim().parse()?,
                parts[3].trim().parse()?,
            )?)
        }
        other => bail!("unknown family kind {other:?}"),
    }
}

fn emit_graph(g: &Graph, format: GraphFormat) -> Result<()> {
    match format {
        GraphFormat::Graph6 => println!("{}", encode_graph6(g)?),
        GraphFormat::Edgelist => print!("{}", write_edge_list(g)),
    }
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::PowerIteration => "power",
        Method::JacobiFull => "jacobi",
    }
}

fn cmd_spectrum(args: &SpectrumArgs) -> Result<i32> {
    let g = args.input.load()?;
    let dd = g.distance_data();
    let l = rho_l(&g)?;
    let q = rho_q(&g)?;
    if args.json {
        let doc = serde_json::json!({
            "schema_version": distlap::SCHEMA_VERSION,
            "n": g.n(),
            "edge_count": g.edge_count(),
            "tr_max": dd.tr_max(),
            "rho_L": {
                "value": l.rho,
                "residual": l.residual,
                "iterations": l.iterations,
                "method": method_name(l.method),
            },
            "rho_Q": {
                "value": q.rho,
                "residual": q.residual,
                "iterations": q.iterations,
                "method": method_name(q.method),
            },
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        println!("n {}", g.n());
        println!("m {}", g.edge_count());
        println!("tr_max {}", dd.tr_max());
        println!(
            "rho_L {} residual {:.2e} method {}",
            format_sig9(l.rho),
            l.residual,
            method_name(l.method)
        );
        println!(
            "rho_Q {} residual {:.2e} method {}",
            format_sig9(q.rho),
            q.residual,
            method_name(q.method)
        );
    }
    Ok(EXIT_OK)
}

fn cmd_family(args: &FamilyArgs) -> Result<i32> {
    let g = parse_family_spec(&args.spec)?;
    emit_graph(&g, args.emit)?;
    Ok(EXIT_OK)
}

fn cmd_graft(cmd: &GraftCommand) -> Result<i32> {
    match cmd {
        GraftCommand::AddEdge(a) => {
            let g = a.input.load()?;
            emit_graph(&add_edge(&g, a.u, a.v)?, a.emit)?;
        }
        GraftCommand::Shift(a) => {
            let g = a.input.load()?;
            emit_graph(
                &shift_pendant_path(&g, a.at, &a.p_path, &a.q_path)?,
                a.emit,
            )?;
        }
        GraftCommand::Move(a) => {
            let g = a.input.load()?;
            let mut g1 = a.g1.clone();
            let mut g3 = a.g3.clone();
            g1.push(a.v0);
            g3.push(a.v0);
            let mut g2: Vec<usize> = (0..g.n())
                .filter(|v| !a.g1.contains(v) && !a.g3.contains(v))
                .collect();
            if !g2.contains(&a.v0) {
                g2.push(a.v0);
            }
            let d = BranchDecomposition::new(&g, a.v0, g1, g2, g3, a.u)?;
            if a.report {
                let l = rho_l(&g)?;
                let q = rho_q(&g)?;
                let cond_l = graft_condition(&g, &d, &l.vector, GraftVariant::LaplacianMinus)?;
                let cond_q = graft_condition(&g, &d, &q.vector, GraftVariant::SignlessPlus)?;
                let moved = move_branch(&g, &d);
                let doc = serde_json::json!({
                    "schema_version": distlap::SCHEMA_VERSION,
                    "laplacian": {
                        "lhs": cond_l.lhs,
                        "rhs": cond_l.rhs,
                        "strict": cond_l.strict,
                        "rho_before": l.rho,
                        "rho_after": rho_l(&moved)?.rho,
                    },
                    "signless": {
                        "lhs": cond_q.lhs,
                        "rhs": cond_q.rhs,
                        "holds_weak": cond_q.holds_weak(),
                        "rho_before": q.rho,
                        "rho_after": rho_q(&moved)?.rho,
                    },
                    "moved_graph6": encode_graph6(&moved)?,
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                emit_graph(&move_branch(&g, &d), a.emit)?;
            }
        }
        GraftCommand::Relocate(a) => {
            if a.params.len() != 5 {
                bail!("--params wants ell,i,s1,si,sl");
            }
            let p = TripleStarPathParams::new(
                a.params[0], a.params[1], a.params[2], a.params[3], a.params[4],
            )?;
            let target = match a.target {
                RelocateTarget::End1 => StarEnd::End1,
                RelocateTarget::Endl => StarEnd::EndL,
            };
            emit_graph(&relocate_star(&p, target), a.emit)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<i32> {
    match args.class {
        ClassKind::Tree => {
            let mut q = TreeClassQuery::new(args.n, args.k)?;
            q.cap = args.cap;
            for g in distlap::trees_with_k_leaves(&q)? {
                println!("{}", encode_graph6(&g)?);
            }
        }
        ClassKind::Graph => {
            let k = args
                .k
                .ok_or_else(|| anyhow!("graph classes need an explicit --k"))?;
            if args.max_order > 7 {
                eprintln!(
                    "warning: order cap {} means scanning 2^{} edge subsets",
                    args.max_order,
                    args.n * (args.n - 1) / 2
                );
            }
            let q = GraphClassQuery::with_cap(args.n, k, args.max_order)?;
            let mut count = 0usize;
            for g in distlap::connected_graphs_with_k_pendants(&q)? {
                println!("{}", encode_graph6(&g)?);
                count += 1;
                if args.cap.is_some_and(|cap| count >= cap) {
                    break;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn class_queries(args: &ExtremalArgs) -> Result<Vec<ClassQuery>> {
    let ks: Vec<Option<usize>> = if args.all_k {
        if args.n < 4 {
            bail!("--all-k needs n >= 4");
        }
        (2..=args.n - 2).map(Some).collect()
    } else {
        vec![args.k]
    };
    ks.into_iter()
        .map(|k| match args.class {
            ClassKind::Tree => Ok(ClassQuery::Trees(TreeClassQuery::new(args.n, k)?)),
            ClassKind::Graph => {
                let k = k.ok_or_else(|| anyhow!("graph classes need an explicit --k"))?;
                Ok(ClassQuery::Graphs(GraphClassQuery::with_cap(
                    args.n,
                    k,
                    args.max_order,
                )?))
            }
        })
        .collect()
}

fn cmd_extremal(args: &ExtremalArgs) -> Result<i32> {
    let queries = class_queries(args)?;
    let mut certs = Vec::new();
    for query in &queries {
        certs.push(extremal_search(query, args.objective, args.threads)?);
    }
    for cert in &certs {
        println!(
            "{} {}: winner {} rho {} in_family {} ties {} scanned {} ({} ms)",
            cert.class,
            cert.objective.name(),
            cert.winner,
            format_sig9(cert.winner_rho),
            cert.in_family,
            cert.ties.len(),
            cert.scanned,
            cert.runtime_ms
        );
    }
    if let Some(path) = &args.json {
        let body = if certs.len() == 1 {
            certs[0].to_json()
        } else {
            serde_json::to_string_pretty(&certs)?
        };
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.csv {
        let mut body = String::from(distlap::ExtremalCertificate::csv_header());
        body.push('\n');
        for cert in &certs {
            body.push_str(&cert.csv_row());
            body.push('\n');
        }
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    let ambiguous = certs.iter().any(|c| !c.out_of_family_ties().is_empty());
    let family_failure = args.require_family && certs.iter().any(|c| !c.family_claim_holds());
    if ambiguous || family_failure {
        eprintln!("verification failure: family membership does not hold unambiguously");
        return Ok(EXIT_VERIFICATION);
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let default_max_n = match args.lemma.as_str() {
        "2.1" | "3.1" => 8,
        "2.2" => 12,
        _ => 6,
    };
    let bounds = SweepBounds {
        max_n: args.max_n.unwrap_or(default_max_n),
        corpus: match args.corpus {
            Some(CorpusArg::Trees) => Corpus::Trees,
            Some(CorpusArg::Graphs) | None => Corpus::Graphs,
        },
        path_budget: args.path_budget,
    };
    let report = run_with_threads(args.threads, || sweep_lemma(&args.lemma, &bounds))?;
    println!(
        "lemma {}: instances {} confirmed {} ties {} violations {}",
        report.lemma,
        report.instances,
        report.confirmed,
        report.ties,
        report.violations.len()
    );
    if let Some(note) = &report.note {
        println!("note: {note}");
    }
    for v in &report.violations {
        println!(
            "violation {} lhs {} rhs {}",
            v.graph6,
            format_sig9(v.lhs),
            format_sig9(v.rhs)
        );
    }
    if let Some(path) = &args.json {
        fs::write(path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }
    if report.violations.is_empty() {
        Ok(EXIT_OK)
    } else {
        eprintln!("verification failure: {} violations", report.violations.len());
        Ok(EXIT_VERIFICATION)
    }
}

fn run_with_threads<T: Send>(
    threads: usize,
    job: impl FnOnce() -> Result<T, distlap::VerifyError> + Send,
) -> Result<T, distlap::VerifyError> {
    if threads == 0 {
        job()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool")
            .install(job)
    }
}

fn cmd_profile(args: &ProfileArgs) -> Result<i32> {
    let profile = report_broom_profile(args.n, args.k, args.objective)?;
    println!("{}", distlap::BroomProfile::csv_header());
    for row in profile.csv_rows() {
        println!("{row}");
    }
    if let Some(path) = &args.csv {
        let mut body = String::from(distlap::BroomProfile::csv_header());
        body.push('\n');
        for row in profile.csv_rows() {
            body.push_str(&row);
            body.push('\n');
        }
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.json {
        fs::write(path, profile.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(EXIT_OK)
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Family(args) => cmd_family(args),
        Command::Graft(cmd) => cmd_graft(cmd),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Extremal(args) => cmd_extremal(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Profile(args) => cmd_profile(args),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                std::process::exit(EXIT_OK);
            }
            eprint!("{err}");
            std::process::exit(EXIT_USAGE);
        }
    };
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_USAGE);
        }
    }
}
