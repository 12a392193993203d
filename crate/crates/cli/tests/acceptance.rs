//! Acceptance criteria, one test each. Every test prints a single
//! `PASS criterion <id>` or `FAIL criterion <id>: <reason>` line; run with
//! `--nocapture` to see all of them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use pbear_core::crosscheck::{self, CrosscheckConfig, Suite};
use pbear_core::fixtures::instance;
use pbear_core::oracles::{cpsc_exists, find_outcomes, max_knapsack};
use pbear_core::report::witness_block;
use pbear_core::{
    check_cpsc, check_ipsc, check_pjr, pb_ear, Axiom, EarConfig, Limits, Outcome, PbInstance, Rat, Verdict,
};

fn report(id: &str, result: Result<String, String>) {
    match result {
        Ok(summary) => println!("PASS criterion {id}: {summary}"),
        Err(reason) => {
            println!("FAIL criterion {id}: {reason}");
            panic!("criterion {id} failed: {reason}");
        }
    }
}

fn ensure(ok: bool, reason: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(reason())
    }
}

fn outcome(inst: &PbInstance, ids: &[&str]) -> Outcome {
    Outcome::from_ids(inst, ids).unwrap()
}

fn describe(inst: &PbInstance, v: &Verdict) -> String {
    match v {
        Verdict::Satisfied => "satisfied".into(),
        Verdict::Violated(w) => format!("violated with\n{}", witness_block(inst, w).trim_end()),
    }
}

// Fixture reproduction: all five parts are computed together and timed as a
// whole.

struct FixtureResults {
    parts: Vec<(&'static str, Result<String, String>)>,
    elapsed: Duration,
}

fn fixture_results() -> &'static FixtureResults {
    static RESULTS: OnceLock<FixtureResults> = OnceLock::new();
    RESULTS.get_or_init(|| {
        let start = Instant::now();
        let parts = vec![
            ("1a", part_a()),
            ("1b", part_b()),
            ("1c", part_c()),
            ("1d", part_d()),
            ("1e", part_e()),
        ];
        FixtureResults {
            parts,
            elapsed: start.elapsed(),
        }
    })
}

fn fixture_criterion(id: &str) {
    let results = fixture_results();
    let (_, part) = results.parts.iter().find(|(p, _)| *p == id).unwrap();
    let result = part.clone().and_then(|summary| {
        ensure(results.elapsed < Duration::from_secs(1), || {
            format!("fixture reproduction took {:?}", results.elapsed)
        })?;
        Ok(format!("{summary} (all fixtures in {:?})", results.elapsed))
    });
    report(id, result);
}

fn part_a() -> Result<String, String> {
    let inst = instance("ipsc_not_cpsc");
    let w = outcome(&inst, &["b", "c"]);
    let ipsc = check_ipsc(&inst, &w).map_err(|e| e.to_string())?;
    let cpsc = check_cpsc(&inst, &w).map_err(|e| e.to_string())?;
    ensure(ipsc.is_satisfied(), || format!("IPSC {}", describe(&inst, &ipsc)))?;
    ensure(!cpsc.is_satisfied(), || "CPSC satisfied".into())?;
    Ok("W={b,c}: IPSC satisfied, CPSC violated".into())
}

fn part_b() -> Result<String, String> {
    let inst = instance("cpsc_not_ipsc");
    let w = outcome(&inst, &["c", "z"]);
    let ipsc = check_ipsc(&inst, &w).map_err(|e| e.to_string())?;
    let cpsc = check_cpsc(&inst, &w).map_err(|e| e.to_string())?;
    ensure(!ipsc.is_satisfied(), || "IPSC satisfied".into())?;
    ensure(cpsc.is_satisfied(), || format!("W={{c,z}} expected CPSC satisfied, got CPSC {}", describe(&inst, &cpsc)))?;
    Ok("W={c,z}: CPSC satisfied, IPSC violated".into())
}

fn part_c() -> Result<String, String> {
    let inst = instance("pjr_not_ipsc");
    let w = outcome(&inst, &["u", "v", "w", "x", "y", "z"]);
    let pjr = check_pjr(&inst, &w).map_err(|e| e.to_string())?;
    let ipsc = check_ipsc(&inst, &w).map_err(|e| e.to_string())?;
    ensure(pjr.is_satisfied(), || format!("PJR {}", describe(&inst, &pjr)))?;
    ensure(!ipsc.is_satisfied(), || "IPSC satisfied".into())?;
    Ok("W={u,v,w,x,y,z}: PJR satisfied, IPSC violated".into())
}

fn part_d() -> Result<String, String> {
    let inst = instance("ear_non_reachability");
    let wx = outcome(&inst, &["w", "x"]);
    for config in EarConfig::all() {
        let (w, _) = pb_ear(&inst, &config);
        ensure(w == wx, || format!("{config} returned {:?}", inst.candidate_ids(w.selected())))?;
    }
    let ipsc = find_outcomes(&inst, Axiom::Ipsc, Limits::default()).map_err(|e| e.to_string())?;
    ensure(ipsc.contains(&outcome(&inst, &["w", "y"])), || "{w,y} missing from the IPSC outcomes".into())?;
    Ok(format!("PB-EAR returns {{w,x}} under all {} configurations; {{w,y}} satisfies IPSC", EarConfig::all().count()))
}

fn part_e() -> Result<String, String> {
    let inst = instance("knapsack_single_voter");
    let exists = cpsc_exists(&inst, Limits::default()).map_err(|e| e.to_string())?;
    ensure(exists.is_none(), || "a CPSC outcome was found".into())?;
    let best = max_knapsack(&inst, &inst.all_candidates(), &Rat::from_integer(4));
    ensure(best.best_weight == Rat::from_integer(4), || format!("knapsack weight {}", best.best_weight))?;
    Ok("no CPSC outcome; knapsack at capacity 4 reaches 4".into())
}

#[test]
fn criterion_1a_fixture_ipsc_not_cpsc() {
    fixture_criterion("1a");
}

#[test]
fn criterion_1b_fixture_cpsc_not_ipsc() {
    fixture_criterion("1b");
}

#[test]
fn criterion_1c_fixture_pjr_not_ipsc() {
    fixture_criterion("1c");
}

#[test]
fn criterion_1d_fixture_ear_non_reachability() {
    fixture_criterion("1d");
}

#[test]
fn criterion_1e_fixture_single_voter() {
    fixture_criterion("1e");
}

fn suite_run(suite: Suite, max_n: usize, max_m: usize, seeds: u64, min_instances: usize) -> Result<String, String> {
    let config = CrosscheckConfig {
        max_n,
        max_m,
        seeds,
        first_seed: 0,
        suites: vec![suite],
        mutant: None,
    };
    let start = Instant::now();
    let report = crosscheck::run(&config);
    let elapsed = start.elapsed();
    let suite_report = report.suite(suite).expect("suite ran");
    ensure(report.passed(), || report.details())?;
    ensure(suite_report.instances >= min_instances, || format!("only {} instances", suite_report.instances))?;
    Ok(format!(
        "{} instances, {} checks, 0 counterexamples in {elapsed:?}",
        suite_report.instances, suite_report.checks
    ))
}

#[test]
fn criterion_2_ipsc_existence_and_pb_ear() {
    report("2", suite_run(Suite::Ear, 8, 6, 500, 500));
}

#[test]
fn criterion_3_implication_lattice() {
    report("3", suite_run(Suite::Lattice, 6, 5, 200, 200));
}

#[test]
fn criterion_4_specialization_agreement() {
    // Only the dichotomous instances among the lattice seeds take part.
    report("4", suite_run(Suite::Specialization, 6, 5, 200, 100));
}

// Exactness and determinism drive the binary.

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").canonicalize().unwrap()
}

fn fixture_path(name: &str) -> String {
    workspace_root().join("crates/core/fixtures").join(format!("{name}.json")).to_str().unwrap().to_string()
}

fn exec(bin: &Path, args: &[String]) -> Output {
    Command::new(bin).args(args).output().expect("binary runs")
}

fn transcript(out: &Output) -> String {
    format!(
        "exit {:?}\n{}{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    )
}

fn cargo(args: &[&str], target_dir: &Path) -> Result<Output, String> {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    Command::new(cargo)
        .args(args)
        .current_dir(workspace_root())
        .env("CARGO_TARGET_DIR", target_dir)
        .output()
        .map_err(|e| format!("cannot run cargo: {e}"))
}

/// Every `f32`/`f64` token in the library and binary sources.
fn float_tokens() -> Vec<String> {
    let mut hits = Vec::new();
    let mut stack = vec![workspace_root().join("crates")];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_str().unwrap();
            if path.is_dir() {
                if !matches!(name, "target" | "tests" | "benches") {
                    stack.push(path);
                }
            } else if name.ends_with(".rs") {
                let text = fs::read_to_string(&path).unwrap();
                for (no, line) in text.lines().enumerate() {
                    let words = line.split(|c: char| !c.is_ascii_alphanumeric() && c != '_');
                    if words.into_iter().any(|w| w == "f32" || w == "f64") {
                        hits.push(format!("{}:{}", path.display(), no + 1));
                    }
                }
            }
        }
    }
    hits
}

fn exactness() -> Result<String, String> {
    let hits = float_tokens();
    ensure(hits.is_empty(), || format!("float types in {}", hits.join(", ")))?;

    let target = workspace_root().join("target/float-poison");
    let features = "pbear-core/float-poison,pbear-cli/float-poison";
    let lint = cargo(&["clippy", "-q", "-p", "pbear-core", "-p", "pbear-cli", "--features", features], &target)?;
    ensure(lint.status.success(), || format!("clippy with float-poison failed:\n{}", String::from_utf8_lossy(&lint.stderr)))?;
    let build = cargo(&["build", "-q", "-p", "pbear-cli", "--features", "float-poison"], &target)?;
    ensure(build.status.success(), || format!("float-poison build failed:\n{}", String::from_utf8_lossy(&build.stderr)))?;

    let poisoned = target.join("debug").join(format!("pbear{}", std::env::consts::EXE_SUFFIX));
    let plain = PathBuf::from(env!("CARGO_BIN_EXE_pbear"));
    let runs: Vec<Vec<String>> = vec![
        vec!["crosscheck".into(), "--seeds".into(), "60".into()],
        vec!["compute".into(), fixture_path("ipsc_not_cpsc")],
        vec!["verify".into(), fixture_path("cpsc_not_ipsc"), "--outcome".into(), "c,z".into(), "--axiom".into(), "ipsc,cpsc".into()],
        vec!["search".into(), fixture_path("knapsack_single_voter"), "--axiom".into(), "maxcost".into()],
    ];
    for args in &runs {
        let (a, b) = (transcript(&exec(&plain, args)), transcript(&exec(&poisoned, args)));
        ensure(a == b, || format!("`pbear {}` differs under float-poison", args.join(" ")))?;
    }
    Ok(format!(
        "no float types; clippy float lints denied and clean; {} command transcripts identical under float-poison",
        runs.len()
    ))
}

#[test]
fn criterion_5_exactness() {
    report("5", exactness());
}

fn determinism() -> Result<String, String> {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_pbear"));
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = |run: usize, name: &str| dir.path().join(format!("{run}-{name}")).to_str().unwrap().to_string();

    let mut commands: Vec<Vec<String>> = Vec::new();
    let generated = dir.path().join("generated.json").to_str().unwrap().to_string();
    let gen_args = ["gen", "--seed", "7", "-n", "6", "-m", "6", "--costs", "rational", "--prefs", "weak", "--weights", "random"];
    let made = exec(&bin, &[gen_args.iter().map(|s| s.to_string()).collect(), vec!["-o".into(), generated.clone()]].concat());
    ensure(made.status.success(), || transcript(&made))?;

    let instances = [fixture_path("ipsc_not_cpsc"), fixture_path("cpsc_not_ipsc"), generated.clone()];
    for (i, inst) in instances.iter().enumerate() {
        for config in EarConfig::all() {
            let tag = format!("{i}-{}-{}", config.selection, config.reweighting);
            commands.push(vec![
                "compute".into(),
                inst.clone(),
                "--selection".into(),
                config.selection.to_string(),
                "--reweight".into(),
                config.reweighting.to_string(),
                "--trace".into(),
                format!("{{run}}trace-{tag}.json"),
                "-o".into(),
                format!("{{run}}outcome-{tag}.json"),
            ]);
        }
        commands.push(vec!["search".into(), inst.clone(), "--axiom".into(), "ipsc".into()]);
    }
    commands.push(vec!["verify".into(), fixture_path("ipsc_not_cpsc"), "--outcome".into(), "b,c".into(), "--axiom".into(), "ipsc,cpsc,cpsc-approval,bpjr-l,local-bpjr-l".into()]);
    commands.push(vec!["verify".into(), fixture_path("pjr_not_ipsc"), "--outcome".into(), "u,v,w,x,y,z".into(), "--axiom".into(), "pjr,ipsc,gen-psc,cpsc-mw".into(), "--json".into()]);
    commands.push(vec!["verify".into(), generated.clone(), "--outcome".into(), "".into(), "--axiom".into(), "exhaustive,maxcost,ipsc,cpsc".into()]);
    commands.push(vec!["search".into(), fixture_path("knapsack_single_voter"), "--axiom".into(), "cpsc".into()]);
    commands.push([gen_args.iter().map(|s| s.to_string()).collect(), vec!["-o".into(), "{run}gen.json".into()]].concat());
    commands.push(gen_args.iter().map(|s| s.to_string()).collect());
    commands.push(vec!["crosscheck".into(), "--seeds".into(), "40".into()]);

    let mut files = 0;
    for cmd in &commands {
        let mut seen: Vec<(String, Vec<Vec<u8>>)> = Vec::new();
        for run in 0..2 {
            let args: Vec<String> = cmd
                .iter()
                .map(|a| match a.strip_prefix("{run}") {
                    Some(name) => file(run, name),
                    None => a.clone(),
                })
                .collect();
            let out = exec(&bin, &args);
            let written: Vec<Vec<u8>> = cmd
                .iter()
                .filter_map(|a| a.strip_prefix("{run}"))
                .map(|name| fs::read(file(run, name)).unwrap_or_default())
                .collect();
            seen.push((transcript(&out), written));
        }
        ensure(seen[0] == seen[1], || format!("`pbear {}` differs between runs", cmd.join(" ")))?;
        files += seen[0].1.len();
    }
    Ok(format!("{} commands run twice, output and {files} written files byte-identical", commands.len()))
}

#[test]
fn criterion_6_determinism() {
    report("6", determinism());
}
