use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use causalnet_core::inference::InferenceEngine;
use causalnet_core::ordering::{greedy_search, sample_orderings};
use causalnet_core::semantics::{expand_network, family_function};
use causalnet_core::{
    classify, clique_stats, generators, transform_network, validate, CliqueReport, Error, Evidence,
    ExpansionPlan, ExpansionStyle, Family, Heuristic, InteractionClass, Network, VarId,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::format::{self, FormatError};
use crate::json;

#[derive(Debug, Parser)]
#[command(
    name = "causalnet",
    version,
    about = "Belief networks with causal-independence families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Io {
    /// Input file; standard input when omitted.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Collapsed,
    Epsilon,
    Temporal,
}

impl From<StyleArg> for ExpansionStyle {
    fn from(s: StyleArg) -> Self {
        match s {
            StyleArg::Collapsed => ExpansionStyle::Collapsed,
            StyleArg::Epsilon => ExpansionStyle::ExplicitEpsilon,
            StyleArg::Temporal => ExpansionStyle::TemporalChain,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HeuristicArg {
    MinFill,
    MinWeight,
}

impl From<HeuristicArg> for Heuristic {
    fn from(h: HeuristicArg) -> Self {
        match h {
            HeuristicArg::MinFill => Heuristic::MinFill,
            HeuristicArg::MinWeight => Heuristic::MinWeight,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenNetwork {
    Bn2,
    Fig6,
    Chain,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a network for structural problems.
    Validate(Io),
    /// Interaction class of every family, or of a standalone function table.
    Classify(Io),
    /// Replace every causal-independence family by its full table.
    Expand(Io),
    /// Expand families into explicit chains.
    Transform {
        #[command(flatten)]
        io: Io,
        /// `effect=i,...` with 1-based link positions or cause names; repeatable.
        /// Without it every family is expanded in declaration order.
        #[arg(long, value_name = "EFFECT=ORDER")]
        order: Vec<String>,
        #[arg(long, value_enum, default_value = "collapsed")]
        style: StyleArg,
    },
    /// Clique statistics after moralization and triangulation.
    Stats {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum, default_value = "min-fill")]
        heuristic: HeuristicArg,
    },
    /// Posterior marginals by variable elimination.
    Infer {
        #[command(flatten)]
        io: Io,
        /// `var=state[,...]`.
        #[arg(long)]
        evidence: Option<String>,
        /// Variable name, or several separated by commas; all variables when omitted.
        #[arg(long)]
        query: Option<String>,
    },
    /// Clique totals over random expansion orderings.
    Sample {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 200)]
        k: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Greedy choice of expansion orderings.
    Search {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Write a reference network.
    Gen {
        #[arg(long, value_enum)]
        network: GenNetwork,
        #[arg(long, default_value_t = 2)]
        states: usize,
        /// Required for `random`; `bn2` falls back to a fixed seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Variable count for `chain` and `random`.
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability for `random`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
    Parse(String),
    Invalid(String),
    Domain(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Invalid(_) => "invalid_network",
            CliError::Domain(_) => "domain",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Io(m)
            | CliError::Parse(m)
            | CliError::Invalid(m)
            | CliError::Domain(m) => m,
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Parse(e.to_string())
    }
}

/// Outcome of a command: the document to print and the exit status.
struct Output {
    value: Value,
    code: i32,
    out: Option<PathBuf>,
}

impl Output {
    fn ok(value: Value, out: &Option<PathBuf>) -> Self {
        Output {
            value,
            code: 0,
            out: out.clone(),
        }
    }
}

/// Runs the command line `args` (program name first). Results and errors are
/// written to `stdout` as JSON; the return value is the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let first_line = e.to_string().lines().next().unwrap_or("").to_string();
            return report(
                stdout,
                &CliError::Usage(first_line.trim_start_matches("error: ").to_string()),
            );
        }
    };
    match execute(cli.command, stdin) {
        Ok(output) => {
            let text = json::render(output.value);
            match &output.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text) {
                        return report(stdout, &CliError::Io(format!("{}: {e}", path.display())));
                    }
                }
                None => {
                    if stdout.write_all(text.as_bytes()).is_err() {
                        return 1;
                    }
                }
            }
            output.code
        }
        Err(e) => report(stdout, &e),
    }
}

fn report(stdout: &mut dyn Write, e: &CliError) -> i32 {
    let line = json::render_line(json!({"error": {"kind": e.kind(), "message": e.message()}}));
    let _ = stdout.write_all(line.as_bytes());
    e.exit_code()
}

fn read_input(io: &Io, stdin: &mut dyn Read) -> Result<String, CliError> {
    match &io.input {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load_network(io: &Io, stdin: &mut dyn Read) -> Result<Network, CliError> {
    let net = format::parse_network(&read_input(io, stdin)?)?;
    let report = validate(&net);
    if !report.is_ok() {
        let messages: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(CliError::Invalid(messages.join("; ")));
    }
    Ok(net)
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Output, CliError> {
    match command {
        Command::Validate(io) => {
            let net = format::parse_network(&read_input(&io, stdin)?)?;
            let report = validate(&net);
            let violations: Vec<String> =
                report.violations.iter().map(ToString::to_string).collect();
            Ok(Output {
                value: json!({"valid": report.is_ok(), "violations": violations}),
                code: if report.is_ok() { 0 } else { 1 },
                out: io.out,
            })
        }
        Command::Classify(io) => {
            let text = read_input(&io, stdin)?;
            let value = if format::is_network_document(&text) {
                let net = format::parse_network(&text)?;
                let report = validate(&net);
                if !report.is_ok() {
                    let messages: Vec<String> =
                        report.violations.iter().map(ToString::to_string).collect();
                    return Err(CliError::Invalid(messages.join("; ")));
                }
                classify_network(&net)?
            } else {
                let f = format::parse_function(&text)?;
                let class = classify(&f.table, f.baseline)?;
                let names: Vec<String> = (1..=f.table.arity()).map(|i| format!("x{i}")).collect();
                class_json(&class, &f.states, &names)
            };
            Ok(Output::ok(value, &io.out))
        }
        Command::Expand(io) => {
            let net = load_network(&io, stdin)?;
            Ok(Output::ok(
                format::network_to_json(&expand_network(&net)?),
                &io.out,
            ))
        }
        Command::Transform { io, order, style } => {
            let net = load_network(&io, stdin)?;
            let plan = parse_plan(&net, &order, style.into())?;
            Ok(Output::ok(
                format::network_to_json(&transform_network(&net, &plan)?),
                &io.out,
            ))
        }
        Command::Stats { io, heuristic } => {
            let net = load_network(&io, stdin)?;
            Ok(Output::ok(
                report_json(&net, &clique_stats(&net, heuristic.into())),
                &io.out,
            ))
        }
        Command::Infer {
            io,
            evidence,
            query,
        } => {
            let net = load_network(&io, stdin)?;
            let evidence = parse_evidence(&net, evidence.as_deref().unwrap_or(""))?;
            let queries: Vec<VarId> = match query {
                Some(q) => q
                    .split(',')
                    .map(|name| find(&net, name.trim()))
                    .collect::<Result<_, _>>()?,
                None => net.ids().collect(),
            };
            let engine = InferenceEngine::new(&net)?;
            let mut out = Map::new();
            for q in queries {
                let marginal = engine.posterior(&evidence, q)?;
                let states: Map<String, Value> = net
                    .variable(q)
                    .states
                    .iter()
                    .cloned()
                    .zip(marginal.into_iter().map(Value::from))
                    .collect();
                out.insert(net.name(q).to_string(), Value::Object(states));
            }
            Ok(Output::ok(Value::Object(out), &io.out))
        }
        Command::Sample { io, k, seed } => {
            let net = load_network(&io, stdin)?;
            let s = sample_orderings(&net, k, seed)?;
            let histogram: Vec<Value> = s
                .histogram
                .iter()
                .map(|b| json!([b.lower, b.upper, b.count]))
                .collect();
            Ok(Output::ok(
                json!({
                    "count": s.count,
                    "min_total": s.min_total,
                    "max_total": s.max_total,
                    "mean_total": s.mean_total,
                    "histogram": histogram,
                    "best_plan": plan_json(&net, &s.best.plan),
                    "best_largest": s.best.report.largest,
                    "best_total": s.best.report.total,
                }),
                &io.out,
            ))
        }
        Command::Search { io, restarts, seed } => {
            let net = load_network(&io, stdin)?;
            let (plan, report) = greedy_search(&net, restarts, seed)?;
            let transformed = transform_network(&net, &plan)?;
            let mut value = report_json(&transformed, &report);
            value["plan"] = plan_json(&net, &plan);
            Ok(Output::ok(value, &io.out))
        }
        Command::Gen {
            network,
            states,
            seed,
            n,
            p,
            out,
        } => {
            if states < 2 {
                return Err(CliError::Usage("--states must be at least 2".into()));
            }
            let net = match network {
                GenNetwork::Bn2 => {
                    generators::bn2(states, seed.unwrap_or(generators::DEFAULT_SEED))
                }
                GenNetwork::Fig6 => generators::fig6(),
                GenNetwork::Chain => generators::chain(n.unwrap_or(5)),
                GenNetwork::Random => {
                    let seed = seed.ok_or_else(|| {
                        CliError::Usage("`gen --network random` requires --seed".into())
                    })?;
                    let n = n.ok_or_else(|| {
                        CliError::Usage("`gen --network random` requires --n".into())
                    })?;
                    let p = p.unwrap_or(0.3);
                    if !(0.0..=1.0).contains(&p) {
                        return Err(CliError::Usage("--p must lie in [0, 1]".into()));
                    }
                    generators::random_network(n, p, states, seed)
                }
            };
            Ok(Output::ok(format::network_to_json(&net), &out))
        }
    }
}

fn find(net: &Network, name: &str) -> Result<VarId, CliError> {
    net.find(name)
        .ok_or_else(|| CliError::Domain(format!("unknown variable `{name}`")))
}

fn parse_evidence(net: &Network, text: &str) -> Result<Evidence, CliError> {
    let mut evidence = Evidence::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, state) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("evidence `{item}` is not var=state")))?;
        let var = find(net, name.trim())?;
        let state = state.trim();
        let index = net
            .variable(var)
            .state_index(state)
            .or_else(|| {
                state
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i < net.cardinality(var))
            })
            .ok_or_else(|| CliError::Domain(format!("`{name}` has no state `{state}`")))?;
        evidence.insert(var, index);
    }
    Ok(evidence)
}

fn parse_plan(
    net: &Network,
    orders: &[String],
    style: ExpansionStyle,
) -> Result<ExpansionPlan, CliError> {
    if orders.is_empty() {
        return Ok(ExpansionPlan::declaration_order(net, style));
    }
    let mut plan = ExpansionPlan::new();
    for item in orders {
        let (effect, list) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("order `{item}` is not effect=i,...")))?;
        let effect = find(net, effect.trim())?;
        let ci = net.ci_family(effect)?;
        let ordering = list
            .split(',')
            .map(str::trim)
            .map(|tok| match tok.parse::<usize>() {
                Ok(0) => Err(CliError::Usage("order positions start at 1".into())),
                Ok(i) => Ok(i - 1),
                Err(_) => ci
                    .links
                    .iter()
                    .position(|l| net.name(l.cause) == tok)
                    .ok_or_else(|| {
                        CliError::Domain(format!(
                            "`{tok}` is not a cause of `{}`",
                            net.name(effect)
                        ))
                    }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        plan = plan.with(effect, ordering, style);
    }
    Ok(plan)
}

fn names(net: &Network, ids: &[VarId]) -> Vec<String> {
    ids.iter().map(|&v| net.name(v).to_string()).collect()
}

fn report_json(net: &Network, r: &CliqueReport) -> Value {
    let cliques: Vec<Vec<String>> = r.cliques.iter().map(|c| names(net, c)).collect();
    json!({
        "largest": r.largest,
        "total": r.total,
        "cliques": cliques,
        "order": names(net, &r.elimination_order),
    })
}

fn plan_json(net: &Network, plan: &ExpansionPlan) -> Value {
    let mut out = Map::new();
    for entry in &plan.entries {
        let causes: Vec<String> = match net.ci_family(entry.effect) {
            Ok(ci) => entry
                .ordering
                .iter()
                .map(|&i| net.name(ci.links[i].cause).to_string())
                .collect(),
            Err(_) => Vec::new(),
        };
        out.insert(net.name(entry.effect).to_string(), json!(causes));
    }
    Value::Object(out)
}

fn class_json(class: &InteractionClass, states: &[String], args: &[String]) -> Value {
    let mut v = json!({"class": class.number(), "label": class.label()});
    let ordering = |o: &[usize]| -> Vec<String> { o.iter().map(|&i| args[i].clone()).collect() };
    match class {
        InteractionClass::SinglyDecomposable { witness } => {
            v["witness"] = json!(ordering(&witness.ordering));
        }
        InteractionClass::FullyDecomposable { witness, sampled } => {
            v["witness"] = json!(ordering(&witness.ordering));
            v["sampled"] = json!(sampled);
        }
        InteractionClass::FullyDecomposableEqual { combiner, sampled } => {
            let rows: Vec<Vec<Value>> = combiner
                .values()
                .chunks(combiner.states().max(1))
                .map(|r| format::state_labels(states, r))
                .collect();
            v["combiner"] = json!(rows);
            v["sampled"] = json!(sampled);
        }
        _ => {}
    }
    v
}

fn classify_network(net: &Network) -> Result<Value, CliError> {
    let mut out = Map::new();
    for family in &net.families {
        let child = family.child();
        let value = match family {
            Family::Table(cpd) if cpd.parents.is_empty() => continue,
            Family::Table(_) => {
                json!({"class": 1, "label": InteractionClass::GeneralTable.label()})
            }
            Family::Ci(ci) => {
                let f = family_function(net, ci)?;
                let class = classify(&f, ci.baseline)?;
                let mut args: Vec<String> = Vec::new();
                if ci.leak.is_some() {
                    args.push("leak".into());
                }
                args.extend(ci.causes().map(|c| net.name(c).to_string()));
                class_json(&class, &net.variable(child).states, &args)
            }
        };
        out.insert(net.name(child).to_string(), value);
    }
    Ok(json!({"families": out}))
}
