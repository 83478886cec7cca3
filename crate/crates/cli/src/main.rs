//! Command-line front end for the swapnet solvers.
//!
//! Every command prints a single JSON object (or its flattened TSV form) on
//! standard output; instances, matchings, and witnesses travel through files
//! named on the command line. Exit codes: 0 for YES or success, 1 for NO,
//! 2 for usage errors, 3 when the enumeration oracle hit its state limit and
//! the answer is unknown.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use swapnet::cnf::{gen_random_2p1n, Cnf2p1n};
use swapnet::gen::{gen_instance, GenClass};
use swapnet::genstar::pareto_genstar;
use swapnet::instance::{
    matching_from_json, matching_to_json, swaps_from_json, swaps_to_json, validate_sequence,
    Instance, Matching, SwapSequence,
};
use swapnet::oracle::{
    enumerate_reachable, oracle_decide, serial_dictatorship_reference, OracleAnswer, OracleError,
    OracleQuery, DEFAULT_STATE_LIMIT,
};
use swapnet::path::{pareto_path_with, path_reachable_matching, reachable_object_path, PeStrategy};
use swapnet::reductions::{ro_to_rm, sat_to_clique_ro, sat_to_genstar_ro, RoInstance};
use swapnet::star::{pareto_star, reachable_object_star};
use swapnet::tree::{reachable_matching_tree, PopPolicy};
use swapnet::{classify_graph, Edge, GraphClass};

#[derive(Parser)]
#[command(
    name = "swapnet",
    version,
    about = "Reachability and efficiency solvers for rational swap dynamics on object networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Most states the enumeration oracle may visit before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_LIMIT)]
    limit: usize,

    /// Seed for every randomized generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Solver choice: the class-matched fast solver, the enumeration oracle,
    /// or whichever fits the instance.
    #[arg(long, global = true, value_enum, default_value = "auto")]
    method: Method,

    /// Decision output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Report the network class of an instance.
    Classify(InputArg),
    /// Decide reachability and efficiency questions.
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Exhaustive reachable-set queries (ground truth, exponential).
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Replay a swap-sequence witness from the initial endowment.
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// Swap-sequence JSON file to replay.
        #[arg(short, long, value_name = "FILE")]
        witness: PathBuf,
        /// Require the replay to end at this matching.
        #[arg(long, value_name = "FILE")]
        target: Option<PathBuf>,
    },
    /// Hardness reductions between satisfiability and reachability.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Seeded random generators.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Args)]
struct InputArg {
    /// Instance JSON file.
    #[arg(short, long, value_name = "FILE")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Can the agent ever hold the object?
    Ro {
        #[command(flatten)]
        input: InputArg,
        /// Querying agent (1-based).
        #[arg(long)]
        agent: usize,
        /// Target object (1-based).
        #[arg(long)]
        object: usize,
        /// Write the YES swap sequence to this file.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Is the target matching reachable from the endowment?
    Rm {
        #[command(flatten)]
        input: InputArg,
        /// Target matching JSON file.
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
        /// Write the YES swap sequence to this file.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
    /// Find a reachable Pareto-efficient matching.
    Pe {
        #[command(flatten)]
        input: InputArg,
        /// Threshold search used by the staged path solver.
        #[arg(long, value_enum, default_value = "bisect")]
        strategy: StrategyArg,
        /// Write the swap sequence reaching the matching to this file.
        #[arg(long, value_name = "FILE")]
        witness: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Enumerate the reachable set and report its size and Pareto front.
    Enum(InputArg),
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Encode a formula as an object query on a complete graph.
    Sat2clique {
        /// DIMACS CNF input file.
        #[arg(short, long, value_name = "FILE")]
        input: PathBuf,
        /// Where to write the produced instance.
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// Encode a formula as an object query on a generalized star.
    Sat2genstar {
        /// DIMACS CNF input file.
        #[arg(short, long, value_name = "FILE")]
        input: PathBuf,
        /// Where to write the produced instance.
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// Fold an object query into a matching query by doubling the instance.
    Ro2rm {
        #[command(flatten)]
        input: InputArg,
        /// Querying agent (1-based).
        #[arg(long)]
        agent: usize,
        /// Target object (1-based).
        #[arg(long)]
        object: usize,
        /// Produce a complete graph (requires a complete input graph).
        #[arg(long)]
        clique: bool,
        /// Where to write the produced instance.
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
        /// Also write the target matching document here.
        #[arg(long, value_name = "FILE")]
        target_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random instance of a given network class.
    Instance {
        /// Network class to produce.
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Number of objects.
        #[arg(long)]
        n: usize,
        /// Where to write the instance JSON.
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
    /// Random formula in the two-positive one-negative fragment.
    Cnf {
        /// Number of variables.
        #[arg(long)]
        vars: usize,
        /// Where to write the DIMACS file.
        #[arg(short, long, value_name = "FILE")]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Fast,
    Oracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Bisect,
    Slack,
}

impl From<StrategyArg> for PeStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Bisect => PeStrategy::Bisect,
            StrategyArg::Slack => PeStrategy::Slack,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Path,
    Star,
    Genstar,
    Tree,
    Clique,
}

impl From<ClassArg> for GenClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Path => GenClass::Path,
            ClassArg::Star => GenClass::Star,
            ClassArg::Genstar => GenClass::GeneralizedStar,
            ClassArg::Tree => GenClass::Tree,
            ClassArg::Clique => GenClass::Clique,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, code)) => {
            emit(cli.format, &doc);
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<(Value, u8)> {
    match &cli.command {
        Command::Classify(input) => cmd_classify(&input.input),
        Command::Solve(cmd) => match cmd {
            SolveCmd::Ro { input, agent, object, witness } => {
                cmd_solve_ro(cli, &input.input, *agent, *object, witness.as_deref())
            }
            SolveCmd::Rm { input, target, witness } => {
                cmd_solve_rm(cli, &input.input, target, witness.as_deref())
            }
            SolveCmd::Pe { input, strategy, witness } => {
                cmd_solve_pe(cli, &input.input, *strategy, witness.as_deref())
            }
        },
        Command::Oracle(OracleCmd::Enum(input)) => cmd_oracle_enum(cli, &input.input),
        Command::Verify { input, witness, target } => {
            cmd_verify(&input.input, witness, target.as_deref())
        }
        Command::Reduce(cmd) => cmd_reduce(cmd),
        Command::Gen(cmd) => cmd_gen(cli, cmd),
    }
}

/// Outcome of a decision command, carrying the exit code convention.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    fn word(self) -> &'static str {
        match self {
            Outcome::Yes => "yes",
            Outcome::No => "no",
            Outcome::Unknown => "unknown",
        }
    }

    fn code(self) -> u8 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Unknown => 3,
        }
    }
}

/// How a solve command gets answered, picked from `--method`, the network
/// class, and whether a class-matched fast solver exists for the problem.
enum Route {
    Fast,
    Oracle(Option<String>),
}

impl Route {
    fn label(&self) -> &'static str {
        match self {
            Route::Fast => "fast",
            Route::Oracle(_) => "oracle",
        }
    }
}

fn route(method: Method, problem: &'static str, class: &GraphClass, fast: bool) -> Result<Route> {
    match method {
        Method::Fast if fast => Ok(Route::Fast),
        Method::Fast => bail!(
            "no fast {problem} solver for {} networks; use --method oracle or --method auto",
            class.name()
        ),
        Method::Oracle => Ok(Route::Oracle(None)),
        Method::Auto if fast => Ok(Route::Fast),
        Method::Auto => Ok(Route::Oracle(Some(fallback_note(problem, class)))),
    }
}

/// One-line explanation attached to the decision whenever `--method auto`
/// had to fall back to enumeration.
fn fallback_note(problem: &str, class: &GraphClass) -> String {
    let hard = match (problem, class) {
        ("ro", GraphClass::GeneralizedStar { .. }) => {
            Some("reachable-object is NP-hard on generalized stars")
        }
        ("ro", GraphClass::Clique) => Some("reachable-object is NP-hard on cliques"),
        ("rm", GraphClass::Clique) => Some("reachable-matching is NP-hard on cliques"),
        ("rm", GraphClass::General) => Some("reachable-matching is NP-hard on general graphs"),
        ("pe", GraphClass::Clique) => Some("Pareto-efficient matching is NP-hard on cliques"),
        _ => None,
    };
    match hard {
        Some(reason) => format!("{reason}; only the enumeration oracle applies"),
        None => format!("no fast {problem} solver for this network class; using the enumeration oracle"),
    }
}

fn cmd_classify(input: &Path) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let class = classify_graph(&inst);
    let mut doc = json!({
        "command": "classify",
        "n": inst.n(),
        "edges": inst.edges().len(),
        "class": class.name(),
    });
    match &class {
        GraphClass::Path { order } => doc["order"] = one_based(order),
        GraphClass::Star { center } => doc["center"] = (center + 1).into(),
        GraphClass::GeneralizedStar { center, branches } => {
            doc["center"] = (center + 1).into();
            doc["branches"] = Value::Array(branches.iter().map(|b| one_based(b)).collect());
        }
        GraphClass::Tree | GraphClass::Clique | GraphClass::General => {}
    }
    Ok((doc, 0))
}

fn cmd_solve_ro(
    cli: &Cli,
    input: &Path,
    agent: usize,
    object: usize,
    witness: Option<&Path>,
) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let a = check_index("agent", agent, inst.n())?;
    let b = check_index("object", object, inst.n())?;
    let class = classify_graph(&inst);
    let fast = matches!(class, GraphClass::Path { .. } | GraphClass::Star { .. });
    let route = route(cli.method, "ro", &class, fast)?;
    let used = route.label();
    let (outcome, swaps, note) = match route {
        Route::Fast => {
            let seq = match &class {
                GraphClass::Path { .. } => {
                    reachable_object_path(&inst, a, b)?.map(|cert| tree_witness(&inst, &cert))
                }
                GraphClass::Star { .. } => reachable_object_star(&inst, a, b)?,
                _ => unreachable!("route() only picks fast for paths and stars"),
            };
            (if seq.is_some() { Outcome::Yes } else { Outcome::No }, seq, None)
        }
        Route::Oracle(note) => {
            let (o, s) = oracle_answer(&inst, OracleQuery::Object { agent: a, object: b }, cli.limit)?;
            (o, s, note)
        }
    };
    let mut doc = json!({
        "command": "solve",
        "problem": "ro",
        "class": class.name(),
        "method": used,
        "agent": agent,
        "object": object,
        "answer": outcome.word(),
    });
    finish_decision(&mut doc, outcome, swaps.as_deref(), note, witness)?;
    Ok((doc, outcome.code()))
}

fn cmd_solve_rm(
    cli: &Cli,
    input: &Path,
    target_path: &Path,
    witness: Option<&Path>,
) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let target = load_matching(target_path, inst.n())?;
    let class = classify_graph(&inst);
    let fast = matches!(
        class,
        GraphClass::Path { .. }
            | GraphClass::Star { .. }
            | GraphClass::GeneralizedStar { .. }
            | GraphClass::Tree
    );
    let route = route(cli.method, "rm", &class, fast)?;
    let used = route.label();
    let (outcome, swaps, note) = match route {
        Route::Fast => {
            let seq = if matches!(class, GraphClass::Path { .. }) {
                // The interval decision procedure answers; the worklist
                // solver supplies the swaps for YES instances.
                path_reachable_matching(&inst, &target)?.then(|| tree_witness(&inst, &target))
            } else {
                reachable_matching_tree(&inst, &target, PopPolicy::Lifo)?
            };
            (if seq.is_some() { Outcome::Yes } else { Outcome::No }, seq, None)
        }
        Route::Oracle(note) => {
            let (o, s) = oracle_answer(&inst, OracleQuery::Matching(&target), cli.limit)?;
            (o, s, note)
        }
    };
    let mut doc = json!({
        "command": "solve",
        "problem": "rm",
        "class": class.name(),
        "method": used,
        "target": one_based(&target.to_vec()),
        "answer": outcome.word(),
    });
    finish_decision(&mut doc, outcome, swaps.as_deref(), note, witness)?;
    Ok((doc, outcome.code()))
}

fn cmd_solve_pe(
    cli: &Cli,
    input: &Path,
    strategy: StrategyArg,
    witness: Option<&Path>,
) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let class = classify_graph(&inst);
    let fast = matches!(
        class,
        GraphClass::Path { .. } | GraphClass::Star { .. } | GraphClass::GeneralizedStar { .. }
    );
    let route = route(cli.method, "pe", &class, fast)?;
    let used = route.label();
    let (matching, swaps, note) = match route {
        Route::Fast => match &class {
            GraphClass::Path { .. } => {
                let m = pareto_path_with(&inst, strategy.into())?;
                let s = tree_witness(&inst, &m);
                (m, s, None)
            }
            GraphClass::Star { .. } => {
                let (m, s) = pareto_star(&inst)?;
                (m, s, None)
            }
            GraphClass::GeneralizedStar { .. } => {
                let m = pareto_genstar(&inst)?;
                let s = tree_witness(&inst, &m);
                (m, s, None)
            }
            _ => unreachable!("route() only picks fast where a staged solver exists"),
        },
        Route::Oracle(note) => {
            let order: Vec<usize> = (0..inst.n()).collect();
            match serial_dictatorship_reference(&inst, &order, cli.limit) {
                Ok(m) => {
                    let set = enumerate_reachable(&inst, cli.limit)?;
                    let idx = set.index_of(&m).expect("the dictatorship winner is reachable");
                    let s = set.witness(idx);
                    (m, s, note)
                }
                Err(OracleError::Truncated { .. }) => {
                    let mut doc = json!({
                        "command": "solve",
                        "problem": "pe",
                        "class": class.name(),
                        "method": "oracle",
                        "answer": "unknown",
                        "truncated": true,
                    });
                    if let Some(note) = note {
                        doc["note"] = note.into();
                    }
                    return Ok((doc, Outcome::Unknown.code()));
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    let mut doc = json!({
        "command": "solve",
        "problem": "pe",
        "class": class.name(),
        "method": used,
        "answer": "yes",
        "matching": one_based(&matching.to_vec()),
    });
    finish_decision(&mut doc, Outcome::Yes, Some(&swaps), note, witness)?;
    Ok((doc, 0))
}

fn cmd_oracle_enum(cli: &Cli, input: &Path) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let set = enumerate_reachable(&inst, cli.limit)?;
    let mut doc = json!({
        "command": "enum",
        "n": inst.n(),
        "size": set.size(),
        "truncated": set.truncated(),
    });
    if set.truncated() {
        return Ok((doc, Outcome::Unknown.code()));
    }
    doc["front_size"] = set.pareto_front(&inst).len().into();
    Ok((doc, 0))
}

fn cmd_verify(input: &Path, witness: &Path, target: Option<&Path>) -> Result<(Value, u8)> {
    let inst = load_instance(input)?;
    let text = fs::read_to_string(witness)
        .with_context(|| format!("reading {}", witness.display()))?;
    let swaps = swaps_from_json(&text)
        .with_context(|| format!("parsing {}", witness.display()))?;
    let mut doc = json!({ "command": "verify", "steps": swaps.len() });
    match validate_sequence(&inst, &inst.initial_matching(), &swaps) {
        Ok(end) => {
            doc["valid"] = true.into();
            doc["final"] = one_based(&end.to_vec());
            let ok = match target {
                Some(path) => {
                    let t = load_matching(path, inst.n())?;
                    let hit = end == t;
                    doc["matches_target"] = hit.into();
                    hit
                }
                None => true,
            };
            Ok((doc, if ok { 0 } else { 1 }))
        }
        Err(err) => {
            doc["valid"] = false.into();
            doc["error"] = err.to_string().into();
            Ok((doc, 1))
        }
    }
}

fn cmd_reduce(cmd: &ReduceCmd) -> Result<(Value, u8)> {
    match cmd {
        ReduceCmd::Sat2clique { input, output } => {
            reduce_sat(input, output, "sat2clique", sat_to_clique_ro)
        }
        ReduceCmd::Sat2genstar { input, output } => {
            reduce_sat(input, output, "sat2genstar", sat_to_genstar_ro)
        }
        ReduceCmd::Ro2rm { input, agent, object, clique, output, target_out } => {
            let inst = load_instance(&input.input)?;
            let a = check_index("agent", *agent, inst.n())?;
            let b = check_index("object", *object, inst.n())?;
            let rm = ro_to_rm(&inst, a, b, *clique)?;
            write_file(output, &rm.instance.to_json())?;
            let mut doc = json!({
                "command": "reduce",
                "encoding": "ro2rm",
                "n": rm.instance.n(),
                "class": classify_graph(&rm.instance).name(),
                "target": one_based(&rm.target.to_vec()),
                "output": output.display().to_string(),
            });
            if let Some(path) = target_out {
                write_file(path, &matching_to_json(&rm.target))?;
                doc["target_out"] = path.display().to_string().into();
            }
            Ok((doc, 0))
        }
    }
}

fn reduce_sat(
    input: &Path,
    output: &Path,
    encoding: &str,
    build: fn(&Cnf2p1n) -> RoInstance,
) -> Result<(Value, u8)> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let cnf = Cnf2p1n::from_dimacs(&text).with_context(|| format!("parsing {}", input.display()))?;
    let ro = build(&cnf);
    write_file(output, &ro.instance.to_json())?;
    let doc = json!({
        "command": "reduce",
        "encoding": encoding,
        "vars": cnf.num_vars(),
        "clauses": cnf.num_clauses(),
        "n": ro.instance.n(),
        "class": classify_graph(&ro.instance).name(),
        "agent": ro.agent + 1,
        "object": ro.object + 1,
        "output": output.display().to_string(),
    });
    Ok((doc, 0))
}

fn cmd_gen(cli: &Cli, cmd: &GenCmd) -> Result<(Value, u8)> {
    match cmd {
        GenCmd::Instance { class, n, output } => {
            let gen_class = GenClass::from(*class);
            let inst = gen_instance(gen_class, *n, cli.seed)?;
            write_file(output, &inst.to_json())?;
            let doc = json!({
                "command": "gen",
                "kind": "instance",
                "class": gen_class.name(),
                "n": n,
                "seed": cli.seed,
                "output": output.display().to_string(),
            });
            Ok((doc, 0))
        }
        GenCmd::Cnf { vars, output } => {
            if *vars == 0 {
                bail!("--vars must be at least 1");
            }
            let cnf = gen_random_2p1n(*vars, cli.seed);
            write_file(output, &cnf.to_dimacs())?;
            let doc = json!({
                "command": "gen",
                "kind": "cnf",
                "vars": vars,
                "clauses": cnf.num_clauses(),
                "seed": cli.seed,
                "output": output.display().to_string(),
            });
            Ok((doc, 0))
        }
    }
}

/// Swap sequence reaching `target` on a tree-shaped network. Callers only
/// pass targets another solver has already certified reachable.
fn tree_witness(inst: &Instance, target: &Matching) -> SwapSequence {
    reachable_matching_tree(inst, target, PopPolicy::Lifo)
        .expect("callers dispatch only tree-shaped networks here")
        .expect("callers pass only certified-reachable targets")
}

fn oracle_answer(
    inst: &Instance,
    query: OracleQuery,
    limit: usize,
) -> Result<(Outcome, Option<SwapSequence>)> {
    Ok(match oracle_decide(inst, query, limit)? {
        OracleAnswer::Yes(seq) => (Outcome::Yes, Some(seq)),
        OracleAnswer::No => (Outcome::No, None),
        OracleAnswer::Inconclusive => (Outcome::Unknown, None),
    })
}

/// Adds the shared decision fields and writes the witness file on YES.
fn finish_decision(
    doc: &mut Value,
    outcome: Outcome,
    swaps: Option<&[Edge]>,
    note: Option<String>,
    witness: Option<&Path>,
) -> Result<()> {
    if let Some(note) = note {
        doc["note"] = note.into();
    }
    if outcome == Outcome::Unknown {
        doc["truncated"] = true.into();
    }
    if let Some(seq) = swaps {
        doc["witness_len"] = seq.len().into();
        if let Some(path) = witness {
            write_file(path, &swaps_to_json(seq))?;
            doc["witness"] = path.display().to_string().into();
        }
    }
    Ok(())
}

fn emit(format: Format, doc: &Value) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(doc).expect("decision documents serialize"));
        }
        Format::Tsv => {
            let obj = doc.as_object().expect("decision documents are objects");
            for (key, value) in obj {
                match value {
                    Value::String(s) => println!("{key}\t{s}"),
                    other => println!("{key}\t{other}"),
                }
            }
        }
    }
}

/// 1-based command-line index checked against `1..=n`, returned 0-based.
fn check_index(what: &str, value: usize, n: usize) -> Result<usize> {
    if value == 0 || value > n {
        bail!("{what} {value} out of range 1..={n}");
    }
    Ok(value - 1)
}

fn one_based(xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| Value::from(x + 1)).collect())
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_matching(path: &Path, n: usize) -> Result<Matching> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    matching_from_json(&text, n).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
