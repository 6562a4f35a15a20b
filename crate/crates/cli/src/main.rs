//! Command-line front end. Exact solvers, the clique-preserving reduction,
//! clique recovery, chromatic gadgets, the bracketing driver, the quadratic
//! cubelike embedding, lifts into supplied groups, and verification suites,
//! all over the library's plain-text file formats.
//!
//! Exit codes: 0 success, 1 internal or verification failure, 2 unparseable
//! input or missing argument, 3 search budget exhausted, 4 instance below
//! the reduction threshold without --allow-small. Nothing is written to
//! standard output on a failing exit except verify's per-property lines.

use clap::{Parser, Subcommand, ValueEnum};
use freecayley::cayley::{
    check_sum_distinctness, cover_structure, free_connection_set, lift_connection_set,
    parse_cayley_spec, quotient_connection_set, verify_induced_copy, verify_lift,
    write_cayley_spec, CayleyError, CayleySpec, CoverStructure, GroupKind,
};
use freecayley::codes::{parse_code, write_code, LinearCode, DEFAULT_DISTANCE_BUDGET};
use freecayley::dimacs::parse_dimacs;
use freecayley::ensemble::{seeded_graphs, DEFAULT_SEED};
use freecayley::fplinalg::extend_to_basis;
use freecayley::graph::Graph;
use freecayley::group::{cauchy_element, parse_group, write_group};
use freecayley::reduce::{
    approx_clique_driver, embed_cubelike, gadget, recover_omega, reduce_clique, CaveatPath,
    ChiOutcome, CliqueWitnessOracle, RecoveryReport, ReduceError, ReductionReport, SolverOracle,
};
use freecayley::solve::{self, SolveError, DEFAULT_MAX_NODES};
use std::error::Error;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "freecayley",
    version,
    about = "Cayley graphs on powers of small groups: solvers, code quotients, gadgets, lifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Prime modulus for commands that build connection sets.
    #[arg(long, global = true)]
    p: Option<u64>,

    /// Seed for the sampled verification suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Search-node budget for the exact solvers.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: u64,

    /// Largest graph order any command is willing to materialize.
    #[arg(long, global = true, default_value_t = 1 << 16)]
    max_vertices: u64,

    /// Ignore --seed and run with the fixed default.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Directory emitted files are written into.
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a clique, chromatic, or coclique number exactly.
    Solve {
        /// Which number to compute.
        #[arg(long, value_enum)]
        what: What,
        /// DIMACS graph or Cayley spec file.
        input: PathBuf,
    },
    /// Quotient a graph's free spec by a certified code of distance 7.
    Reduce {
        /// Below the v >= p^2 threshold, emit the free spec with a trivial
        /// code instead of failing.
        #[arg(long)]
        allow_small: bool,
        input: PathBuf,
    },
    /// Reduce, solve the quotient, and recover the input's clique number.
    Recover {
        /// Below the threshold, run the recovery on the free spec.
        #[arg(long)]
        allow_small: bool,
        input: PathBuf,
    },
    /// Build the level-i chromatic gadget over a base spec.
    Gadget {
        /// Gadget level, between 1 and the spec dimension.
        #[arg(long)]
        level: usize,
        input: PathBuf,
    },
    /// Bracket the spec's clique number within a factor of p by coloring
    /// gadgets level by level.
    Approx {
        /// Decide every gadget with the exact chromatic solver instead of
        /// the clique-witness argument.
        #[arg(long)]
        exact: bool,
        input: PathBuf,
    },
    /// Embed a graph into a cubelike spec of quadratic order.
    Embed { input: PathBuf },
    /// Lift a spec into a power of a supplied group and verify the copies.
    Lift {
        /// Group table file.
        #[arg(long)]
        group: PathBuf,
        /// Index of the order-p element the digits map onto; picked by
        /// order search when omitted.
        #[arg(long)]
        element: Option<usize>,
        input: PathBuf,
    },
    /// Check a property suite, printing one PASS/FAIL line per property.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Generator count for the sidon suite.
        #[arg(long)]
        v: Option<usize>,
        /// Sample count for the ladder suite.
        #[arg(long, default_value_t = 25)]
        count: usize,
        /// Code file for the distance-ladder suite.
        #[arg(long)]
        code: Option<PathBuf>,
        /// Graph file for suites that take one.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Positional alternative to --graph.
        input: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Clique,
    Chroma,
    Coclique,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Sidon,
    DistanceLadder,
    Cover,
    Ladder,
}

struct Failure {
    code: u8,
    message: String,
    /// Lines verify had already produced; printed even on failure.
    lines: Vec<String>,
}

fn fail(code: u8, message: impl std::fmt::Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
        lines: Vec::new(),
    }
}

/// Walk the source chain and map library errors onto the documented exit
/// codes: exhausted budgets and size caps are 3, small instances 4, a
/// composite modulus 2, everything else 1.
fn exit_code_of(err: &(dyn Error + 'static)) -> u8 {
    let mut cur = Some(err);
    while let Some(e) = cur {
        if let Some(s) = e.downcast_ref::<SolveError>() {
            if matches!(s, SolveError::BudgetExhausted { .. }) {
                return 3;
            }
        }
        if let Some(c) = e.downcast_ref::<CayleyError>() {
            match c {
                CayleyError::SizeCap { .. } => return 3,
                CayleyError::NotPrime(_) => return 2,
                _ => {}
            }
        }
        if let Some(r) = e.downcast_ref::<ReduceError>() {
            match r {
                ReduceError::SmallInstance { .. } => return 4,
                ReduceError::NotPrime(_) => return 2,
                _ => {}
            }
        }
        cur = e.source();
    }
    1
}

fn lib_err<E: Error + 'static>(e: E) -> Failure {
    let code = exit_code_of(&e);
    fail(code, e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            for l in f.lines {
                println!("{l}");
            }
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<Vec<String>, Failure> {
    let cap = cli.max_vertices as u128;
    let max_nodes = cli.max_nodes;
    let seed = if cli.deterministic {
        DEFAULT_SEED
    } else {
        cli.seed
    };
    let outdir = &cli.output_dir;
    match cli.command {
        Command::Solve { what, input } => cmd_solve(what, &input, cap, max_nodes),
        Command::Reduce { allow_small, input } => {
            cmd_reduce(&input, require_p(cli.p)?, allow_small, outdir)
        }
        Command::Recover { allow_small, input } => {
            cmd_recover(&input, require_p(cli.p)?, allow_small, max_nodes)
        }
        Command::Gadget { level, input } => cmd_gadget(&input, level, outdir),
        Command::Approx { exact, input } => {
            cmd_approx(&input, require_p(cli.p)?, exact, cap, max_nodes)
        }
        Command::Embed { input } => cmd_embed(&input, outdir),
        Command::Lift {
            group,
            element,
            input,
        } => cmd_lift(&input, &group, element, outdir, cap, max_nodes),
        Command::Verify {
            suite,
            v,
            count,
            code,
            graph,
            input,
        } => cmd_verify(
            suite,
            VerifyArgs {
                p: cli.p,
                v,
                count,
                seed,
                code,
                graph: graph.or(input),
                cap,
                max_nodes,
            },
        ),
    }
}

fn require_p(p: Option<u64>) -> Result<u64, Failure> {
    p.ok_or_else(|| fail(2, "this command needs --p"))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    parse_dimacs(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<CayleySpec, Failure> {
    let text = read_text(path)?;
    spec_from_text(&text, path)
}

fn spec_from_text(text: &str, path: &Path) -> Result<CayleySpec, Failure> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_cayley_spec(text, |name| {
        let gpath = dir.join(name);
        let gtext = fs::read_to_string(&gpath)
            .map_err(|e| format!("cannot read {}: {e}", gpath.display()))?;
        parse_group(&gtext).map_err(|e| e.to_string())
    })
    .map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

/// Solve inputs are either DIMACS graphs or spec files; specs are told
/// apart by their `cayley` header and materialized.
fn load_solve_input(path: &Path, cap: u128) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty());
    if first.is_some_and(|l| l.starts_with("cayley")) {
        let spec = spec_from_text(&text, path)?;
        spec.materialize(cap).map_err(lib_err)
    } else {
        parse_dimacs(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))
    }
}

fn stem_of(path: &Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("out")
        .to_string()
}

fn emit(outdir: &Path, name: &str, content: &str, lines: &mut Vec<String>) -> Result<(), Failure> {
    fs::create_dir_all(outdir)
        .map_err(|e| fail(1, format!("cannot create {}: {e}", outdir.display())))?;
    let path = outdir.join(name);
    fs::write(&path, content)
        .map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
    lines.push(format!("wrote {}", path.display()));
    Ok(())
}

fn index_list(indices: &[usize]) -> String {
    indices
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_solve(what: What, input: &Path, cap: u128, max_nodes: u64) -> Result<Vec<String>, Failure> {
    let g = load_solve_input(input, cap)?;
    let mut out = Vec::new();
    match what {
        What::Clique => {
            let w = solve::max_clique(&g, max_nodes).map_err(lib_err)?;
            out.push(format!("omega={}", w.len()));
            out.push(format!("witness: {}", index_list(&w)));
        }
        What::Chroma => {
            let c = solve::chromatic_number(&g, max_nodes).map_err(lib_err)?;
            out.push(format!("chi={}", c.count));
            out.push(format!("witness: {}", index_list(&c.colors)));
        }
        What::Coclique => {
            let w = solve::max_clique(&g.complement(), max_nodes).map_err(lib_err)?;
            out.push(format!("alpha={}", w.len()));
            out.push(format!("witness: {}", index_list(&w)));
        }
    }
    Ok(out)
}

fn caveat_text(path: CaveatPath) -> &'static str {
    match path {
        CaveatPath::None => "none",
        CaveatPath::P2Check34 => "searched 4-subsets to split 3 from 4 (p=2)",
        CaveatPath::P3Check23 => "searched triangles to split 2 from 3 (p=3)",
    }
}

fn render_report(r: &ReductionReport) -> String {
    let mut s = String::new();
    writeln!(s, "clique reduction report").unwrap();
    writeln!(s, "vertices: {}", r.vertices).unwrap();
    writeln!(s, "edges: {}", r.edges).unwrap();
    writeln!(s, "p: {}", r.p).unwrap();
    writeln!(s, "m: {}", r.m).unwrap();
    writeln!(s, "field modulus: {}", r.field_modulus).unwrap();
    let last = r.support_exponents.last().copied().unwrap_or(0);
    writeln!(s, "support: alpha^1 .. alpha^{last}").unwrap();
    writeln!(
        s,
        "code: length {} dimension {} distance {}",
        r.code_n, r.code_k, r.code_distance
    )
    .unwrap();
    writeln!(s, "quotient dimension: {}", r.quotient_dimension).unwrap();
    writeln!(s, "quotient degree: |C'| = |C| = {}", r.quotient_degree).unwrap();
    writeln!(s, "quotient order: {}", r.quotient_order).unwrap();
    writeln!(s, "size bound: {}", r.size_bound).unwrap();
    if let Some(w) = r.omega_quotient {
        writeln!(s, "omega quotient: {w}").unwrap();
    }
    if let Some(w) = r.omega_input {
        writeln!(s, "omega input: {w}").unwrap();
    }
    writeln!(s, "caveat: {}", caveat_text(r.caveat_path)).unwrap();
    writeln!(s, "elapsed ms: {}", r.elapsed_ms).unwrap();
    s
}

fn render_small_report(x: &Graph, p: u64, code: &LinearCode, spec: &CayleySpec) -> String {
    let mut s = String::new();
    writeln!(s, "free spec report (below the reduction threshold)").unwrap();
    writeln!(s, "vertices: {}", x.order()).unwrap();
    writeln!(s, "edges: {}", x.edges().count()).unwrap();
    writeln!(s, "p: {p}").unwrap();
    writeln!(
        s,
        "code: length {} dimension {} distance {}",
        code.n(),
        code.k(),
        code.distance_cert()
            .map_or(String::from("uncertified"), |c| c.distance.to_string())
    )
    .unwrap();
    writeln!(s, "quotient dimension: {}", spec.n()).unwrap();
    writeln!(s, "quotient degree: |C'| = |C| = {}", spec.degree()).unwrap();
    writeln!(s, "quotient order: {}", spec.order()).unwrap();
    s
}

fn cmd_reduce(
    input: &Path,
    p: u64,
    allow_small: bool,
    outdir: &Path,
) -> Result<Vec<String>, Failure> {
    let x = load_graph(input)?;
    let stem = stem_of(input);
    let mut lines = Vec::new();
    match reduce_clique(&x, p) {
        Ok(reduction) => {
            emit(
                outdir,
                &format!("{stem}.spec"),
                &write_cayley_spec(&reduction.quotient, None),
                &mut lines,
            )?;
            emit(
                outdir,
                &format!("{stem}.code"),
                &write_code(&reduction.code),
                &mut lines,
            )?;
            emit(
                outdir,
                &format!("{stem}.report"),
                &render_report(&reduction.report),
                &mut lines,
            )?;
        }
        Err(ReduceError::SmallInstance { .. }) if allow_small => {
            let spec = free_connection_set(&x, p).map_err(lib_err)?;
            let code = LinearCode::trivial(p, x.order()).map_err(lib_err)?;
            emit(
                outdir,
                &format!("{stem}.spec"),
                &write_cayley_spec(&spec, None),
                &mut lines,
            )?;
            emit(
                outdir,
                &format!("{stem}.code"),
                &write_code(&code),
                &mut lines,
            )?;
            emit(
                outdir,
                &format!("{stem}.report"),
                &render_small_report(&x, p, &code, &spec),
                &mut lines,
            )?;
        }
        Err(e) => return Err(lib_err(e)),
    }
    Ok(lines)
}

fn recovery_lines(recovery: &RecoveryReport) -> Vec<String> {
    let mut out = vec![
        format!("omega={}", recovery.omega_x),
        format!("caveat: {}", caveat_text(recovery.caveat_path)),
    ];
    if let Some(w) = &recovery.witness {
        out.push(format!("witness: {}", index_list(w)));
    }
    out
}

fn cmd_recover(
    input: &Path,
    p: u64,
    allow_small: bool,
    max_nodes: u64,
) -> Result<Vec<String>, Failure> {
    let x = load_graph(input)?;
    match freecayley::reduce::reduce_and_recover(&x, p, max_nodes) {
        Ok((_, recovery)) => Ok(recovery_lines(&recovery)),
        Err(ReduceError::SmallInstance { .. }) if allow_small => {
            let spec = free_connection_set(&x, p).map_err(lib_err)?;
            let omega = spec.clique_number(max_nodes).map_err(lib_err)?.size;
            Ok(recovery_lines(&recover_omega(omega, p, &x)))
        }
        Err(e) => Err(lib_err(e)),
    }
}

fn cmd_gadget(input: &Path, level: usize, outdir: &Path) -> Result<Vec<String>, Failure> {
    let base = load_spec(input)?;
    let built = gadget(&base, level).map_err(lib_err)?;
    let stem = stem_of(input);
    let mut lines = Vec::new();
    emit(
        outdir,
        &format!("{stem}.gamma{level}.spec"),
        &write_cayley_spec(&built.composite, None),
        &mut lines,
    )?;
    lines.push(format!("order={}", built.composite.order()));
    lines.push(format!("degree={}", built.composite.degree()));
    Ok(lines)
}

fn cmd_approx(
    input: &Path,
    p: u64,
    exact: bool,
    cap: u128,
    max_nodes: u64,
) -> Result<Vec<String>, Failure> {
    let x = load_graph(input)?;
    let report = if exact {
        let mut oracle = SolverOracle { cap, max_nodes };
        approx_clique_driver(&x, p, &mut oracle)
    } else {
        let mut oracle = CliqueWitnessOracle { max_nodes };
        approx_clique_driver(&x, p, &mut oracle)
    }
    .map_err(lib_err)?;
    let mut lines = Vec::new();
    for (i, outcome) in &report.evaluations {
        let verdict = match outcome {
            ChiOutcome::EqualBase => "chromatic number equals the base order",
            ChiOutcome::AboveBase => "chromatic number above the base order",
        };
        lines.push(format!("level {i}: {verdict}"));
    }
    lines.push(format!("low={}", report.bound_low));
    lines.push(format!("high={}", report.bound_high));
    if report.base_caveat {
        lines.push(format!(
            "caveat: bracket is on the spec; at p={} the spec's clique number can exceed the graph's",
            report.p
        ));
    }
    Ok(lines)
}

fn cmd_embed(input: &Path, outdir: &Path) -> Result<Vec<String>, Failure> {
    let x = load_graph(input)?;
    let embedding = embed_cubelike(&x).map_err(lib_err)?;
    let stem = stem_of(input);
    let mut lines = Vec::new();
    emit(
        outdir,
        &format!("{stem}.cube.spec"),
        &write_cayley_spec(&embedding.spec, None),
        &mut lines,
    )?;
    emit(
        outdir,
        &format!("{stem}.cube.code"),
        &write_code(&embedding.code),
        &mut lines,
    )?;
    let r = &embedding.report;
    lines.push(format!("vertices={}", r.vertices));
    lines.push(format!("padded={}", r.padded_vertices));
    lines.push(format!(
        "code: length {} dimension {} distance {}",
        r.code_n, r.code_k, r.code_distance
    ));
    lines.push(format!("order={}", r.spec_order));
    lines.push(format!("bound={}", r.size_bound));
    Ok(lines)
}

fn cmd_lift(
    input: &Path,
    group: &Path,
    element: Option<usize>,
    outdir: &Path,
    cap: u128,
    max_nodes: u64,
) -> Result<Vec<String>, Failure> {
    let spec = load_spec(input)?;
    let gtext = read_text(group)?;
    let table =
        Arc::new(parse_group(&gtext).map_err(|e| fail(2, format!("{}: {e}", group.display())))?);
    let GroupKind::ZpPower { p, .. } = *spec.kind() else {
        return Err(fail(2, "lift inputs must be specs over Z_p^n"));
    };
    let h = match element {
        Some(h) => h,
        None => cauchy_element(&table, p).map_err(|e| fail(2, e))?,
    };
    let report = verify_lift(&spec, table.clone(), h, cap, max_nodes).map_err(lib_err)?;
    let lifted = lift_connection_set(&spec, table.clone(), h).map_err(lib_err)?;
    let stem = stem_of(input);
    // Copy the table next to the spec and reference it by bare name, so the
    // emitted pair re-parses from anywhere.
    let groupname = group
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or("table.group")
        .to_string();
    let mut lines = Vec::new();
    emit(outdir, &groupname, &write_group(&table), &mut lines)?;
    emit(
        outdir,
        &format!("{stem}.lifted.spec"),
        &write_cayley_spec(&lifted, Some(&groupname)),
        &mut lines,
    )?;
    lines.push(format!("element={h}"));
    lines.push(format!("copies={}", report.copies));
    lines.push(format!("copy_order={}", report.copy_order));
    lines.push(format!("components_input={}", report.components_input));
    lines.push(format!("components_lifted={}", report.components_lifted));
    lines.push(format!("edges_input={}", report.edges_input));
    lines.push(format!("edges_lifted={}", report.edges_lifted));
    lines.push(format!("cross_edges={}", report.cross_edges));
    lines.push(format!("copies_isomorphic={}", report.copies_isomorphic));
    lines.push(format!("omega_input={}", report.omega_input));
    lines.push(format!("omega_lifted={}", report.omega_lifted));
    Ok(lines)
}

struct VerifyArgs {
    p: Option<u64>,
    v: Option<usize>,
    count: usize,
    seed: u64,
    code: Option<PathBuf>,
    graph: Option<PathBuf>,
    cap: u128,
    max_nodes: u64,
}

fn cmd_verify(suite: Suite, args: VerifyArgs) -> Result<Vec<String>, Failure> {
    let mut lines = Vec::new();
    let all_pass = match suite {
        Suite::Sidon => verify_sidon(&args, &mut lines)?,
        Suite::DistanceLadder => verify_distance_ladder(&args, &mut lines)?,
        Suite::Cover => verify_cover(&args, &mut lines)?,
        Suite::Ladder => verify_ladder(&args, &mut lines)?,
    };
    if all_pass {
        Ok(lines)
    } else {
        Err(Failure {
            code: 1,
            message: String::new(),
            lines,
        })
    }
}

fn verify_sidon(args: &VerifyArgs, lines: &mut Vec<String>) -> Result<bool, Failure> {
    let p = require_p(args.p)?;
    let v = args.v.ok_or_else(|| fail(2, "the sidon suite needs --v"))?;
    let report = check_sum_distinctness(&Graph::new(v), p).map_err(lib_err)?;
    if report.is_clean() {
        lines.push(format!(
            "PASS sidon: v={v} p={p}, {} permitted collision classes, no violations",
            report.permitted.len()
        ));
        Ok(true)
    } else {
        let c = &report.violations[0];
        lines.push(format!(
            "FAIL sidon: sums {:?} and {:?} collide at {:?}",
            c.left, c.right, c.value
        ));
        Ok(false)
    }
}

fn verify_distance_ladder(args: &VerifyArgs, lines: &mut Vec<String>) -> Result<bool, Failure> {
    let code_path = args
        .code
        .as_ref()
        .ok_or_else(|| fail(2, "the distance-ladder suite needs --code"))?;
    let graph_path = args
        .graph
        .as_ref()
        .ok_or_else(|| fail(2, "the distance-ladder suite needs --graph"))?;
    let mut code = parse_code(&read_text(code_path)?)
        .map_err(|e| fail(2, format!("{}: {e}", code_path.display())))?;
    let x = load_graph(graph_path)?;
    if code.n() != x.order() {
        return Err(fail(
            2,
            format!(
                "code length {} does not match graph order {}",
                code.n(),
                x.order()
            ),
        ));
    }
    let p = code.p();
    if code.distance_cert().is_none() {
        code.certify_distance(DEFAULT_DISTANCE_BUDGET)
            .map_err(lib_err)?;
    }
    let cert = code.distance_cert().expect("just certified").clone();
    let spec = free_connection_set(&x, p).map_err(lib_err)?;
    let mut all = true;

    // Distance 3 rung: nonzero codewords avoid the connection set.
    if cert.distance.at_least(3) {
        let words = (p as u128)
            .checked_pow(code.k() as u32)
            .filter(|&w| w <= args.cap)
            .ok_or_else(|| {
                fail(
                    3,
                    format!("{}^{} codewords exceed --max-vertices", p, code.k()),
                )
            })?;
        let mut bad = None;
        let mut coeffs = vec![0u64; code.k()];
        for _ in 1..words {
            let mut i = 0;
            loop {
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            let word = code.codeword(&coeffs).map_err(lib_err)?;
            if spec.contains_connection(&word) {
                bad = Some(word);
                break;
            }
        }
        match bad {
            None => lines.push(format!(
                "PASS coclique: checked {} nonzero codewords, none in the connection set",
                words - 1
            )),
            Some(word) => {
                all = false;
                lines.push(format!(
                    "FAIL coclique: codeword {word:?} is in the connection set"
                ));
            }
        }
    }

    // Distance 5 rung: the quotient contains an induced copy of the input.
    let basis_rows = code.generator().row_vecs();
    let basis = extend_to_basis(p, x.order(), &basis_rows).map_err(lib_err)?;
    if cert.distance.at_least(5) {
        let quotient = quotient_connection_set(&spec, &code, &basis).map_err(lib_err)?;
        let copy = verify_induced_copy(&x, &quotient, &code, &basis).map_err(lib_err)?;
        if copy.holds {
            lines.push(String::from(
                "PASS induced copy: the input appears on coset representatives",
            ));
        } else {
            all = false;
            let m = &copy.mismatches[0];
            lines.push(format!(
                "FAIL induced copy: pair ({}, {}) expected edge={}",
                m.i, m.j, m.expected_edge
            ));
        }
    }

    // Distance 7 rung: the quotient's clique number equals the free spec's.
    if cert.distance.at_least(7) {
        let quotient = quotient_connection_set(&spec, &code, &basis).map_err(lib_err)?;
        let a = spec.clique_number(args.max_nodes).map_err(lib_err)?.size;
        let b = quotient
            .clique_number(args.max_nodes)
            .map_err(lib_err)?
            .size;
        if a == b {
            lines.push(format!("PASS clique preserved: omega {a} = {b}"));
        } else {
            all = false;
            lines.push(format!("FAIL clique preserved: omega {a} != {b}"));
        }
    }

    if lines.is_empty() {
        all = false;
        lines.push(format!(
            "FAIL distance: certified distance {} reaches no rung (need 3)",
            cert.distance
        ));
    }
    Ok(all)
}

fn verify_cover(args: &VerifyArgs, lines: &mut Vec<String>) -> Result<bool, Failure> {
    let p = require_p(args.p)?;
    let graph_path = args
        .graph
        .as_ref()
        .ok_or_else(|| fail(2, "the cover suite needs a graph"))?;
    let x = load_graph(graph_path)?;
    match cover_structure(&x, p) {
        Ok(CoverStructure::Isomorphism { map }) => {
            lines.push(format!(
                "PASS cover: neighbourhood is isomorphic to the triangle graph ({} arcs)",
                map.image().len()
            ));
            Ok(true)
        }
        Ok(CoverStructure::DoubleCover { map }) => {
            lines.push(format!(
                "PASS cover: neighbourhood is a 2-fold cover of the triangle graph ({} arcs)",
                map.image().len()
            ));
            Ok(true)
        }
        Ok(CoverStructure::MatchingThenDoubleCover { matching, map }) => {
            lines.push(format!(
                "PASS cover: {} reverse pairs removed, then a 2-fold cover ({} arcs)",
                matching.len(),
                map.image().len()
            ));
            Ok(true)
        }
        Err(e) => {
            lines.push(format!("FAIL cover: {e}"));
            Ok(false)
        }
    }
}

fn verify_ladder(args: &VerifyArgs, lines: &mut Vec<String>) -> Result<bool, Failure> {
    let primes: Vec<u64> = match args.p {
        Some(p) => vec![p],
        None => vec![2, 3, 5],
    };
    let graphs = seeded_graphs(args.seed, args.count, 2, 7);
    let mut all = true;
    for p in primes {
        let mut failure = None;
        for x in &graphs {
            let w = solve::max_clique(x, args.max_nodes).map_err(lib_err)?.len();
            let expected = match (p, w) {
                (2, 3) => 4,
                (3, 2) => 3,
                _ => w,
            };
            let spec = free_connection_set(x, p).map_err(lib_err)?;
            let got = spec.clique_number(args.max_nodes).map_err(lib_err)?.size;
            if got != expected {
                failure = Some((x.order(), w, expected, got));
                break;
            }
        }
        match failure {
            None => lines.push(format!("PASS ladder: p={p}, {} graphs", graphs.len())),
            Some((order, w, expected, got)) => {
                all = false;
                lines.push(format!(
                    "FAIL ladder: p={p}, {order}-vertex graph with omega {w} gave {got}, expected {expected}"
                ));
            }
        }
    }
    Ok(all)
}
