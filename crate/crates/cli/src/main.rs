//! Command-line surface for the closure-network calculus: ingestion,
//! analysis, single-edge checks, map checks, the claim audit, and the
//! decomposition simulator. Identical inputs produce byte-identical output;
//! exit codes are the only success/failure channel (0 ok, 1 findings from
//! check/audit commands, 2 usage or parse errors, 3 size-guard refusals).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use netclosure::closure::{closure, enumerate_closed_sets, generators, is_closed, neighborhood, region};
use netclosure::dynamics::{run as run_sim, sig6, Checker, SimConfig, SimMode};
use netclosure::error::Error;
use netclosure::io;
use netclosure::oracle::{audit, oracle_continuous};
use netclosure::reduction::{chordless_cycles, is_irreducible, reduce, subsumed_pairs};
use netclosure::separation::{are_separated, is_connected_set};
use netclosure::system::{NodeId, NodeSet, System};
use netclosure::transform::{
    check_edge_addition, check_edge_deletion, Agreement, DelDecision, NodeMap,
};

use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Edgelist,
    Matrix,
}

#[derive(Debug, Parser)]
#[command(
    name = "netclosure",
    version,
    about = "Closure-system calculus on finite networks",
    max_term_width = 100
)]
struct Cli {
    /// Input graph format.
    #[arg(long, global = true, value_enum, default_value_t = GraphFormat::Edgelist)]
    format: GraphFormat,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Ceiling for exponential enumerations (default 20, hard cap 28; the
    /// audit command defaults to 4 with a ceiling of 6).
    #[arg(long, global = true)]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

impl Cli {
    fn max_n(&self) -> usize {
        self.max_n.unwrap_or(netclosure::DEFAULT_MAX_N)
    }
}

#[derive(Debug, Args)]
struct GraphArg {
    /// Graph file.
    graph: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Neighborhoods, regions, singleton closures, subsumption, cycles, and
    /// components of a graph.
    Analyze(GraphArg),
    /// Closure of a node set.
    Closure {
        #[command(flatten)]
        graph: GraphArg,
        /// Comma-separated node labels.
        #[arg(long)]
        set: String,
    },
    /// Every closed set of the system.
    ClosedSets(GraphArg),
    /// Inclusion-minimal subsets with the same closure as the given set.
    Generators {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        set: String,
    },
    /// Reduce to the irreducible core by deleting subsumed nodes.
    Reduce {
        #[command(flatten)]
        graph: GraphArg,
        /// Include the step-by-step deletion trace.
        #[arg(long)]
        trace: bool,
    },
    /// Chordless cycles of length at least four.
    Cycles {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 4)]
        min_len: usize,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Are two node sets separated (disjoint dominated regions)?
    Separated {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        z: String,
    },
    /// Is a node set connected (no separated bipartition)?
    Connected {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        set: String,
    },
    /// Fast two-clause verdict for deleting a symmetric edge, with optional
    /// exhaustive cross-check.
    CheckDel {
        #[command(flatten)]
        graph: GraphArg,
        /// Edge as `u,v`.
        #[arg(long)]
        edge: String,
        /// Also run the exhaustive continuity scan and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Audit one edge addition against the connected-endpoints continuity
    /// rule.
    CheckAdd {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Monotonicity, continuity, and surjectivity of a node map between two
    /// graphs.
    CheckMap {
        /// Source graph file.
        src: PathBuf,
        /// Target graph file.
        dst: PathBuf,
        /// Map file (`src => dst` or `src => !` lines).
        #[arg(long)]
        map: PathBuf,
    },
    /// Exhaustively audit every built-in claim on all small graphs.
    Audit,
    /// Seeded decomposition simulation under continuous edge deletions.
    Simulate {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::DeletionOnly)]
        mode: ModeArg,
        /// Triadic-addition probability per step.
        #[arg(long, default_value_t = 0.0)]
        p_add: f64,
        #[arg(long, value_enum, default_value_t = CheckerArg::Oracle)]
        checker: CheckerArg,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz DOT export: dashed subsumed nodes, bold cycle edges.
    ExportDot(GraphArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    DeletionOnly,
    DeletionPlusTriadic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckerArg {
    Oracle,
    Fastpath,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::SizeLimit { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(found_something) => {
            if found_something {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_graph(path: &Path, format: GraphFormat) -> Result<System, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let parsed = match format {
        GraphFormat::Edgelist => io::parse_edge_list(&text),
        GraphFormat::Matrix => io::parse_matrix(&text),
    };
    parsed.map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_set(s: &System, spec: &str) -> Result<NodeSet, Failure> {
    let labels: Vec<&str> = spec.split(',').filter(|t| !t.is_empty()).collect();
    s.set_from_labels(&labels).map_err(Failure::from)
}

fn parse_edge(s: &System, spec: &str) -> Result<(NodeId, NodeId), Failure> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure {
            code: 2,
            message: format!("expected an edge as `u,v`, found `{spec}`"),
        });
    }
    Ok((
        s.node_or_err(parts[0]).map_err(Failure::from)?,
        s.node_or_err(parts[1]).map_err(Failure::from)?,
    ))
}

fn graph_input(report: &mut Report, path: &Path, s: &System) {
    report.input("graph", path.display());
    report.input("nodes", s.node_count());
    report.input("arcs", s.arc_count());
    report.input("sym-edges", s.symmetric_edges().len());
    report.input("digest", format!("sha256:{}", io::system_digest(s)));
}

fn dispatch(cli: &Cli) -> Result<bool, Failure> {
    match &cli.command {
        Command::Analyze(g) => cmd_analyze(cli, g),
        Command::Closure { graph, set } => cmd_closure(cli, graph, set),
        Command::ClosedSets(g) => cmd_closed_sets(cli, g),
        Command::Generators { graph, set } => cmd_generators(cli, graph, set),
        Command::Reduce { graph, trace } => cmd_reduce(cli, graph, *trace),
        Command::Cycles {
            graph,
            min_len,
            max_len,
            limit,
        } => cmd_cycles(cli, graph, *min_len, *max_len, *limit),
        Command::Separated { graph, x, z } => cmd_separated(cli, graph, x, z),
        Command::Connected { graph, set } => cmd_connected(cli, graph, set),
        Command::CheckDel { graph, edge, oracle } => cmd_check_del(cli, graph, edge, *oracle),
        Command::CheckAdd { graph, edge, oracle } => cmd_check_add(cli, graph, edge, *oracle),
        Command::CheckMap { src, dst, map } => cmd_check_map(cli, src, dst, map),
        Command::Audit => cmd_audit(cli),
        Command::Simulate {
            graph,
            seed,
            max_steps,
            mode,
            p_add,
            checker,
            out,
        } => cmd_simulate(cli, graph, *seed, *max_steps, *mode, *p_add, *checker, out.as_deref()),
        Command::ExportDot(g) => cmd_export_dot(cli, g),
    }
}

fn cmd_analyze(cli: &Cli, g: &GraphArg) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);

    let rows = r.section("neighborhoods");
    for v in s.nodes() {
        let set = s.set_from_ids([v]);
        Report::entry(rows, s.label(v), s.render_set(&neighborhood(&s, &set).map_err(Failure::from)?));
    }
    let rows = r.section("regions");
    for v in s.nodes() {
        let set = s.set_from_ids([v]);
        Report::entry(rows, s.label(v), s.render_set(&region(&s, &set).map_err(Failure::from)?));
    }
    let rows = r.section("singleton-closures");
    for v in s.nodes() {
        let set = s.set_from_ids([v]);
        Report::entry(rows, s.label(v), s.render_set(&closure(&s, &set).map_err(Failure::from)?));
    }
    let rows = r.section("subsumed-pairs");
    let pairs = subsumed_pairs(&s);
    Report::entry(rows, "count", pairs.len());
    for (k, (y, x)) in pairs.iter().enumerate() {
        Report::entry(rows, format!("pair{k}"), format!("{} <= {}", s.label(*y), s.label(*x)));
    }
    let rows = r.section("kcycles");
    let cycles = chordless_cycles(&s, 4, s.node_count(), 10_000);
    Report::entry(rows, "count", cycles.cycles.len());
    Report::entry(rows, "truncated", cycles.truncated);
    for (k, c) in cycles.cycles.iter().enumerate() {
        Report::entry(rows, format!("cycle{k}"), c.render(&s));
    }
    let rows = r.section("structure");
    let m = netclosure::dynamics::metrics(&s, 10_000);
    Report::entry(rows, "components", m.component_count);
    Report::entry(rows, "irreducible", is_irreducible(&s));
    Report::entry(rows, "core-size", m.core_size);
    Report::entry(rows, "triangles", m.triangle_count);
    Report::entry(rows, "closed-triad-ratio", sig6(m.closed_triad_ratio));

    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_closure(cli: &Cli, g: &GraphArg, set_spec: &str) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let y = parse_set(&s, set_spec)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("closure");
    Report::entry(rows, "set", s.render_set(&y));
    Report::entry(rows, "neighborhood", s.render_set(&neighborhood(&s, &y).map_err(Failure::from)?));
    Report::entry(rows, "region", s.render_set(&region(&s, &y).map_err(Failure::from)?));
    Report::entry(rows, "closure", s.render_set(&closure(&s, &y).map_err(Failure::from)?));
    Report::entry(rows, "closed", is_closed(&s, &y).map_err(Failure::from)?);
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_closed_sets(cli: &Cli, g: &GraphArg) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let family = enumerate_closed_sets(&s, cli.max_n()).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("closed-sets");
    Report::entry(rows, "count", family.len());
    for (k, set) in family.iter().enumerate() {
        Report::entry(rows, format!("set{k}"), s.render_set(set));
    }
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_generators(cli: &Cli, g: &GraphArg, set_spec: &str) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let y = parse_set(&s, set_spec)?;
    let gens = generators(&s, &y, cli.max_n()).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("generators");
    Report::entry(rows, "set", s.render_set(&y));
    Report::entry(rows, "closure", s.render_set(&closure(&s, &y).map_err(Failure::from)?));
    Report::entry(rows, "count", gens.len());
    for (k, gen) in gens.iter().enumerate() {
        Report::entry(rows, format!("generator{k}"), s.render_set(gen));
    }
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_reduce(cli: &Cli, g: &GraphArg, with_trace: bool) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let trace = reduce(&s);
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("reduction");
    Report::entry(rows, "deleted", trace.steps.len());
    Report::entry(rows, "core-size", trace.core.node_count());
    Report::entry(rows, "core", s.render_set(&trace.core_nodes));
    Report::entry(rows, "irreducible-input", trace.steps.is_empty());
    if with_trace {
        let rows = r.section("trace");
        for (k, step) in trace.steps.iter().enumerate() {
            Report::entry(rows, format!("step{k}"), format!("{} <= {}", step.deleted, step.subsumer));
        }
    }
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_cycles(
    cli: &Cli,
    g: &GraphArg,
    min_len: usize,
    max_len: Option<usize>,
    limit: usize,
) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let max_len = max_len.unwrap_or(s.node_count());
    let cycles = chordless_cycles(&s, min_len, max_len, limit);
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("kcycles");
    Report::entry(rows, "min-len", min_len);
    Report::entry(rows, "max-len", max_len);
    Report::entry(rows, "count", cycles.cycles.len());
    Report::entry(rows, "truncated", cycles.truncated);
    for (k, c) in cycles.cycles.iter().enumerate() {
        Report::entry(rows, format!("cycle{k}"), c.render(&s));
    }
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_separated(cli: &Cli, g: &GraphArg, x_spec: &str, z_spec: &str) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let x = parse_set(&s, x_spec)?;
    let z = parse_set(&s, z_spec)?;
    let sep = are_separated(&s, &x, &z).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("separation");
    Report::entry(rows, "x", s.render_set(&x));
    Report::entry(rows, "z", s.render_set(&z));
    Report::entry(rows, "separated", sep.separated);
    let witness = |w: Option<NodeId>| w.map(|v| s.label(v).to_string()).unwrap_or_else(|| "-".to_string());
    Report::entry(rows, "overlap-set-set", witness(sep.set_set));
    Report::entry(rows, "overlap-set-nbhd", witness(sep.set_nbhd));
    Report::entry(rows, "overlap-nbhd-set", witness(sep.nbhd_set));
    Report::entry(rows, "overlap-nbhd-nbhd", witness(sep.nbhd_nbhd));
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_connected(cli: &Cli, g: &GraphArg, set_spec: &str) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let y = parse_set(&s, set_spec)?;
    let connected = is_connected_set(&s, &y).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("connectivity");
    Report::entry(rows, "set", s.render_set(&y));
    Report::entry(rows, "connected", connected);
    print!("{}", r.render(cli.json));
    Ok(false)
}

fn cmd_check_del(cli: &Cli, g: &GraphArg, edge: &str, with_oracle: bool) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let (x, z) = parse_edge(&s, edge)?;
    let verdict = check_edge_deletion(&s, x, z).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("edge-deletion");
    Report::entry(rows, "edge", format!("{}--{}", s.label(x), s.label(z)));
    let decision = match verdict.decision {
        DelDecision::Continuous => "continuous",
        DelDecision::DiscontinuousA => "discontinuous-a",
        DelDecision::DiscontinuousB => "discontinuous-b",
    };
    Report::entry(rows, "rule-verdict", decision);
    Report::entry(rows, "closure-x", s.render_set(&verdict.closure_x));
    Report::entry(rows, "closure-z", s.render_set(&verdict.closure_z));
    if let Some((member, owner)) = verdict.membership {
        Report::entry(
            rows,
            "clause-a-evidence",
            format!("{} in closure({{{}}})", s.label(member), s.label(owner)),
        );
    }
    if let Some(cycle) = &verdict.cycle {
        let names: Vec<&str> = cycle.iter().map(|&v| s.label(v)).collect();
        Report::entry(rows, "clause-b-cycle", format!("<{}>", names.join(",")));
    }
    let mut found = verdict.decision != DelDecision::Continuous;
    if with_oracle {
        let target = s.with_symmetric_edge_removed(x, z).map_err(Failure::from)?;
        let map = NodeMap::by_label(&s, &target).map_err(Failure::from)?;
        let scan = oracle_continuous(&map, cli.max_n()).map_err(Failure::from)?;
        Report::entry(
            rows,
            "oracle-verdict",
            if scan.continuous { "continuous" } else { "discontinuous" },
        );
        if let Some(w) = &scan.witness {
            Report::entry(rows, "oracle-witness", s.render_set(w));
        }
        let agree = scan.continuous == (verdict.decision == DelDecision::Continuous);
        Report::entry(rows, "agreement", agree);
        if !agree {
            r.finding(format!(
                "rule verdict {decision} disagrees with the exhaustive scan on {}--{}",
                s.label(x),
                s.label(z)
            ));
            found = true;
        }
        found = found || !scan.continuous;
    }
    print!("{}", r.render(cli.json));
    Ok(found)
}

fn cmd_check_add(cli: &Cli, g: &GraphArg, edge: &str, with_oracle: bool) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let (x, z) = parse_edge(&s, edge)?;
    let verdict = check_edge_addition(&s, x, z, with_oracle, cli.max_n()).map_err(Failure::from)?;
    let mut r = Report::new();
    graph_input(&mut r, &g.graph, &s);
    let rows = r.section("edge-addition");
    Report::entry(rows, "edge", format!("{}--{}", s.label(x), s.label(z)));
    Report::entry(rows, "claim-applies", verdict.claim_applies);
    let commons: Vec<&str> = verdict.common_neighbors.iter().map(|&v| s.label(v)).collect();
    Report::entry(rows, "common-neighbors", format!("{{{}}}", commons.join(",")));
    let mut found = false;
    if let Some(scan) = &verdict.oracle {
        Report::entry(
            rows,
            "oracle-verdict",
            if scan.continuous { "continuous" } else { "discontinuous" },
        );
        if let Some(w) = &scan.witness {
            Report::entry(rows, "oracle-witness", s.render_set(w));
        }
        found = !scan.continuous;
    }
    let agreement = match verdict.agreement {
        Agreement::Match => "match",
        Agreement::Mismatch => "mismatch",
        Agreement::Vacuous => "vacuous",
        Agreement::Unchecked => "unchecked",
    };
    Report::entry(rows, "agreement", agreement);
    if verdict.agreement == Agreement::Mismatch {
        r.finding(format!(
            "connected-endpoint addition {}--{} is discontinuous: counterexample to the continuity rule",
            s.label(x),
            s.label(z)
        ));
        found = true;
    }
    print!("{}", r.render(cli.json));
    Ok(found)
}

fn cmd_check_map(cli: &Cli, src: &Path, dst: &Path, map_path: &Path) -> Result<bool, Failure> {
    let source = load_graph(src, cli.format)?;
    let target = load_graph(dst, cli.format)?;
    let text = fs::read_to_string(map_path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", map_path.display()),
    })?;
    let map = io::parse_node_map(&text, &source, &target).map_err(Failure::from)?;
    let mut r = Report::new();
    r.input("source", src.display());
    r.input("target", dst.display());
    r.input("map", map_path.display());
    let rows = r.section("map-check");
    Report::entry(rows, "monotone", map.is_monotone());
    let verdict = map.is_continuous(cli.max_n()).map_err(Failure::from)?;
    Report::entry(rows, "continuous", verdict.continuous);
    if let Some(w) = &verdict.witness {
        Report::entry(rows, "witness", source.render_set(w));
        if let Some(offending) = verdict.offending {
            Report::entry(rows, "escaped-node", target.label(offending));
        }
    }
    Report::entry(rows, "surjective", map.is_surjective(cli.max_n()).map_err(Failure::from)?);
    if !verdict.continuous {
        r.finding("map is discontinuous".to_string());
    }
    print!("{}", r.render(cli.json));
    Ok(!verdict.continuous)
}

fn cmd_audit(cli: &Cli) -> Result<bool, Failure> {
    let report = audit(cli.max_n.unwrap_or(4)).map_err(Failure::from)?;
    let mut r = Report::new();
    r.input("max-n", report.max_n);
    let rows = r.section("scopes");
    for scope in &report.scopes {
        Report::entry(
            rows,
            format!("{}:{}", scope.claim, scope.family.tag()),
            format!("max-n={} instances={}", scope.max_n, scope.instances),
        );
    }
    let rows = r.section("summary");
    Report::entry(rows, "findings", report.findings.len());
    for f in &report.findings {
        r.finding(format!(
            "{} {} {} expected[{}] observed[{}] witness[{}]",
            f.claim,
            f.instance(),
            f.params,
            f.expected,
            f.observed,
            f.witness
        ));
    }
    print!("{}", r.render(cli.json));
    Ok(r.has_findings())
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    cli: &Cli,
    g: &GraphArg,
    seed: u64,
    max_steps: usize,
    mode: ModeArg,
    p_add: f64,
    checker: CheckerArg,
    out: Option<&Path>,
) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    let mut cfg = SimConfig::new(
        seed,
        max_steps,
        match mode {
            ModeArg::DeletionOnly => SimMode::DeletionOnly,
            ModeArg::DeletionPlusTriadic => SimMode::DeletionPlusTriadic,
        },
    );
    cfg.p_add = p_add;
    cfg.checker = match checker {
        CheckerArg::Oracle => Checker::Oracle,
        CheckerArg::Fastpath => Checker::FastPath,
    };
    cfg.oracle_max_n = cli.max_n();
    let trace = run_sim(&s, &cfg).map_err(Failure::from)?;
    let text = trace.render();
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Failure {
                code: 2,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            println!(
                "trace written to {} ({} steps, halt={})",
                path.display(),
                trace.steps.len(),
                trace.halt.tag()
            );
        }
        None => print!("{text}"),
    }
    Ok(false)
}

fn cmd_export_dot(cli: &Cli, g: &GraphArg) -> Result<bool, Failure> {
    let s = load_graph(&g.graph, cli.format)?;
    print!("{}", io::export_dot(&s));
    Ok(false)
}
