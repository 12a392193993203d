#![cfg_attr(
    feature = "float-poison",
    deny(
        clippy::disallowed_types,
        clippy::float_arithmetic,
        clippy::float_cmp,
        clippy::float_cmp_const,
        clippy::cast_precision_loss,
        clippy::lossy_float_literal
    )
)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pbear_core::crosscheck::{self, CrosscheckConfig, Suite};
use pbear_core::document::{instance_to_string, outcome_to_value, parse_outcome};
use pbear_core::gen::{generate, CostModel, GenParams, PrefModel, WeightModel};
use pbear_core::oracles::{enumerate_feasible_outcomes, find_outcomes, first_outcome};
use pbear_core::report::{outcome_text, verdict_text, verdict_to_value};
use pbear_core::verify::Mutant;
use pbear_core::{
    pb_ear, parse_instance, Analyzer, Axiom, EarConfig, Limits, Outcome, ParseOptions, PbInstance, Rat, Reweighting,
    Selection,
};

const PASS: u8 = 0;
const VIOLATION: u8 = 1;
const USAGE: u8 = 2;
const EMPTY: u8 = 3;

#[derive(Parser)]
#[command(name = "pbear", version, about = "Participatory budgeting with weak preferences, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run PB-EAR and print the outcome.
    Compute(ComputeArgs),
    /// Check an outcome against one or more axioms.
    Verify(VerifyArgs),
    /// List the feasible outcomes satisfying an axiom.
    Search(SearchArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Run the property suites over random instances and the fixtures.
    Crosscheck(CrosscheckArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance document (JSON).
    instance: PathBuf,
    /// Treat the instance as a committee election of size K.
    #[arg(long, value_name = "K")]
    mw: Option<u64>,
    /// Rescale voter weights to sum to the number of voters.
    #[arg(long)]
    normalize: bool,
}

impl InstanceArgs {
    fn load(&self) -> Result<PbInstance> {
        let text = read(&self.instance)?;
        let opts = ParseOptions {
            normalize: self.normalize,
            multiwinner: self.mw,
        };
        parse_instance(&text, &opts).with_context(|| format!("{}", self.instance.display()))
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InstanceArgs,
    #[arg(long, default_value = "lex", value_parser = parse_with::<Selection>)]
    selection: Selection,
    #[arg(long, default_value = "proportional", value_parser = parse_with::<Reweighting>)]
    reweight: Reweighting,
    /// Write the execution trace here.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Write the outcome document here.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InstanceArgs,
    /// Comma-separated candidate ids; an empty string is the empty outcome.
    #[arg(long, conflicts_with = "outcome_file", required_unless_present = "outcome_file")]
    outcome: Option<String>,
    /// Outcome document, as written by `compute --output`.
    #[arg(long, value_name = "FILE")]
    outcome_file: Option<PathBuf>,
    /// Comma-separated axioms.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_with::<Axiom>)]
    axiom: Vec<Axiom>,
    /// Lift the size guard on the exhaustive searches.
    #[arg(long)]
    force: bool,
    /// Print verdicts as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: InstanceArgs,
    #[arg(long, value_parser = parse_with::<Axiom>)]
    axiom: Axiom,
    /// List every matching outcome (the default).
    #[arg(long, conflicts_with = "first")]
    all: bool,
    /// Stop at the first matching outcome.
    #[arg(long)]
    first: bool,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Unit,
    Rational,
    Integer,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrefArg {
    Strict,
    Dichotomous,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Unit,
    Random,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of voters.
    #[arg(long, short)]
    n: usize,
    /// Number of candidates.
    #[arg(long, short)]
    m: usize,
    /// Budget limit; defaults to half the candidate count, rounded up.
    #[arg(long, value_parser = parse_with::<Rat>)]
    limit: Option<Rat>,
    #[arg(long, value_enum, default_value = "unit")]
    costs: CostArg,
    #[arg(long, value_enum, default_value = "strict")]
    prefs: PrefArg,
    /// Approval probability for dichotomous preferences.
    #[arg(long, default_value = "1/2", value_parser = parse_with::<Rat>)]
    p: Rat,
    #[arg(long, value_enum, default_value = "unit")]
    weights: WeightArg,
    /// Write the instance here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Largest instances as VOTERSxCANDIDATES.
    #[arg(long, default_value = "6x5", value_parser = parse_sizes)]
    sizes: (usize, usize),
    /// Number of random instances per suite.
    #[arg(long, default_value_t = 200)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    first_seed: u64,
    /// Comma-separated suites to run (default: all).
    #[arg(long, value_delimiter = ',', value_parser = parse_with::<Suite>)]
    suite: Vec<Suite>,
    /// Run only the fixture suite.
    #[arg(long, conflicts_with = "suite")]
    fixtures: bool,
    #[arg(long, hide = true, value_parser = parse_with::<Mutant>)]
    mutant: Option<Mutant>,
}

fn parse_with<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

fn parse_sizes(s: &str) -> Result<(usize, usize), String> {
    let (n, m) = s.split_once(['x', ',']).ok_or("expected VOTERSxCANDIDATES, e.g. 6x5")?;
    let n = n.trim().parse().map_err(|e| format!("voters: {e}"))?;
    let m = m.trim().parse().map_err(|e| format!("candidates: {e}"))?;
    Ok((n, m))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn limits(force: bool) -> Limits {
    Limits { force }
}

fn compute(args: &ComputeArgs) -> Result<u8> {
    let inst = args.input.load()?;
    let config = EarConfig {
        selection: args.selection,
        reweighting: args.reweight,
    };
    let (w, trace) = pb_ear(&inst, &config);
    print!("{}", outcome_text(&inst, &w));
    if let Some(path) = &args.trace {
        write(path, &pretty(&trace.to_value(&inst, config)))?;
    }
    if let Some(path) = &args.output {
        write(path, &pretty(&outcome_to_value(&inst, &w)))?;
    }
    Ok(PASS)
}

fn verify(args: &VerifyArgs) -> Result<u8> {
    let inst = args.input.load()?;
    let w = match (&args.outcome, &args.outcome_file) {
        (Some(list), _) => {
            let ids: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            Outcome::from_ids(&inst, &ids)?
        }
        (None, Some(path)) => parse_outcome(&inst, &read(path)?).with_context(|| format!("{}", path.display()))?,
        (None, None) => bail!("an outcome is required"),
    };
    let analyzer = Analyzer::new(&inst, limits(args.force))?;
    let mut violated = false;
    let mut values = Vec::new();
    for &axiom in &args.axiom {
        let verdict = analyzer.check(axiom, &w)?;
        violated |= !verdict.is_satisfied();
        if args.json {
            values.push(verdict_to_value(&inst, axiom, &verdict));
        } else {
            print!("{}", verdict_text(&inst, axiom, &verdict));
        }
    }
    if args.json {
        print!("{}", pretty(&serde_json::Value::Array(values)));
    }
    Ok(if violated { VIOLATION } else { PASS })
}

fn search(args: &SearchArgs) -> Result<u8> {
    let inst = args.input.load()?;
    let limits = limits(args.force);
    // Validates the size guard and the axiom's preconditions up front.
    if let Some(w) = enumerate_feasible_outcomes(&inst, limits)?.next() {
        Analyzer::new(&inst, limits)?.check(args.axiom, &w)?;
    }
    let found = if args.first {
        first_outcome(&inst, args.axiom, limits)?.into_iter().collect()
    } else {
        find_outcomes(&inst, args.axiom, limits)?
    };
    if found.is_empty() {
        println!("no {} outcome exists", args.axiom.label());
        return Ok(EMPTY);
    }
    for w in &found {
        println!("{{{}}} cost {}", inst.candidate_ids(w.selected()).join(","), w.total_cost());
    }
    Ok(PASS)
}

fn gen(args: &GenArgs) -> Result<u8> {
    let defaults = GenParams::new(args.seed, args.n, args.m);
    let params = GenParams {
        limit: args.limit.clone().unwrap_or(defaults.limit.clone()),
        costs: match args.costs {
            CostArg::Unit => CostModel::Unit,
            CostArg::Rational => CostModel::UniformRational,
            CostArg::Integer => CostModel::Integer,
        },
        prefs: match args.prefs {
            PrefArg::Strict => PrefModel::Strict,
            PrefArg::Dichotomous => PrefModel::Dichotomous { p: args.p.clone() },
            PrefArg::Weak => PrefModel::Weak,
        },
        weights: match args.weights {
            WeightArg::Unit => WeightModel::Unit,
            WeightArg::Random => WeightModel::Random,
        },
        ..defaults
    };
    let text = instance_to_string(&generate(&params)?);
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(PASS)
}

fn run_crosscheck(args: &CrosscheckArgs) -> Result<u8> {
    let suites = if args.fixtures {
        vec![Suite::Fixtures]
    } else if args.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suite.clone()
    };
    let config = CrosscheckConfig {
        max_n: args.sizes.0,
        max_m: args.sizes.1,
        seeds: args.seeds,
        first_seed: args.first_seed,
        suites,
        mutant: args.mutant,
    };
    let report = crosscheck::run(&config);
    print!("{}", report.table());
    print!("{}", report.details());
    Ok(if report.passed() { PASS } else { VIOLATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
        Command::Gen(a) => gen(a),
        Command::Crosscheck(a) => run_crosscheck(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
