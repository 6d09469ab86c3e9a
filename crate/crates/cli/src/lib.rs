//! Command-line front end: solve single instances, compute exact optima,
//! run certification sweeps, inspect tree decompositions and generate
//! instance files.

pub mod io;
pub mod sweep;

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use extdom::decomposition::{algorithm2_detailed, build_auxiliary_graph};
use extdom::domination::{greedy_dominators, TieBreak};
use extdom::elections::{
    greedy_committee, matching_committee, solve_ext_representation, Committee,
};
use extdom::generators::{
    gen_classic, gen_random, gen_random_election, gen_reduction_graph, ClassicFamily,
    ElectionParams, RandomKind,
};
use extdom::matching::maximum_matching_undirected;
use extdom::optext::{reduce_and_solve, OptExtInstance};
use extdom::oracle::{
    exact_ext_domination, exact_ext_representation, exact_optext, exhaustive_max_matching, judge,
    Certification, Evaluation, RatioReport, Verdict, DEFAULT_BUDGET,
};
use extdom::{BoundName, ElectionInstance, Setting};
use serde_json::{json, Value};

use crate::io::{
    parse_graph_file, parse_instance_file, write_election, write_graph, Graph, Instance,
    ParsedGraph,
};
use crate::sweep::{Family, SweepSpec};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "extdom",
    version,
    about = "External domination solvers and ratio certification"
)]
pub struct RunConfig {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of subsets an exact oracle may enumerate.
    #[arg(long, global = true, env = "EXTDOM_ORACLE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run one algorithm on one instance file.
    Solve(SolveArgs),
    /// Exact optimum of one instance by exhaustive search.
    Oracle(OracleArgs),
    /// Check an algorithm against a claimed ratio on a sweep of instances.
    Certify(CertifyArgs),
    /// Print the tree decomposition, component classes and centers.
    Decompose(DecomposeArgs),
    /// Write a generated instance.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Best of greedy on the graph and on its decomposed auxiliary graph.
    Algorithm2,
    /// Plain greedy, lowest-id ties.
    Greedy,
    /// Plain greedy, highest-id ties.
    GreedyAdversarial,
    /// Maximum matching of a graph or digraph.
    Matching,
    /// Coverage greedy committee.
    ElectionGreedy,
    /// Committee from a maximum matching of the approval graph.
    ElectionMatching,
    /// Best of the greedy and matching committees.
    Election,
    /// OPT-EXT(0,1) allocation with `p` valued objects.
    Optext,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Algorithm2 => "algorithm2",
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyAdversarial => "greedy-adversarial",
            Algorithm::Matching => "matching",
            Algorithm::ElectionGreedy => "election-greedy",
            Algorithm::ElectionMatching => "election-matching",
            Algorithm::Election => "election",
            Algorithm::Optext => "optext",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub alg: Algorithm,
    /// Number of dominators, valued objects, or committee seats (elections
    /// default to the size in the file).
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=1))]
    pub delta: u64,
    /// Override the setting declared in an election file.
    #[arg(long)]
    pub setting: Option<Setting>,
    /// Also compute the optimum and judge the value against this bound.
    #[arg(long)]
    pub bound: Option<BoundName>,
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Domination,
    Optext,
    Matching,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Problem for graph files; election files are always solved as
    /// external representation.
    #[arg(long, value_enum, default_value_t = Problem::Domination)]
    pub problem: Problem,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long)]
    pub setting: Option<Setting>,
    pub file: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub bound: BoundName,
    /// Generated family; ignored when `--dir` is given.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Read every instance file in this directory instead of generating.
    #[arg(long)]
    pub dir: Option<PathBuf>,
    /// Vertices (graphs) or voters (elections); the largest size when
    /// `--min-n` is given.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Cycle instance sizes through `min_n..=n`.
    #[arg(long)]
    pub min_n: Option<usize>,
    /// Candidates per election.
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge or approval probability.
    #[arg(long, default_value_t = 0.3)]
    pub prob: f64,
    /// Fraction of candidates who are voters.
    #[arg(long, default_value_t = 0.5)]
    pub overlap: f64,
    /// Hop radius for the lemma bounds.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long)]
    pub setting: Option<Setting>,
    /// Print only failing reports and the summary.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DecomposeArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(0..=1))]
    pub delta: u64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenFamily {
    Path,
    Cycle,
    Star,
    Complete,
    Er,
    Tree,
    Connected,
    Election,
    Reduction,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: GenFamily,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 0.3)]
    pub prob: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 0.5)]
    pub overlap: f64,
    #[arg(long)]
    pub require_other: bool,
    #[arg(long, default_value = "non-secrecy")]
    pub setting: Setting,
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Base graph for the reduction family.
    #[arg(long)]
    pub base: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub hops: usize,
    #[arg(long, default_value_t = 2)]
    pub q1: usize,
    #[arg(long, default_value_t = 2)]
    pub q2: usize,
    /// Output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// What `run` produced: the process exit code and the report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { code: 0, output }
    }
}

pub fn run(config: RunConfig) -> anyhow::Result<Outcome> {
    match &config.command {
        Command::Solve(a) => solve(&config, a),
        Command::Oracle(a) => oracle(&config, a),
        Command::Certify(a) => certify(&config, a),
        Command::Decompose(a) => decompose(&config, a),
        Command::Gen(a) => generate(a),
    }
}

fn file_label(path: &std::path::Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn ratio_text(r: &RatioReport) -> String {
    match (&r.ratio, r.ratio_decimal) {
        (Some(exact), Some(dec)) => format!("{exact} ({dec:.12})"),
        _ => "n/a".into(),
    }
}

/// JSON object for one report with the documented keys.
pub fn report_json(r: &RatioReport) -> Value {
    let mut obj = json!({
        "instance": r.instance,
        "algorithm": r.algorithm,
        "value": r.value,
        "optimum": r.optimum,
        "ratio": r.ratio_decimal.map(|d| format!("{d:.12}")),
        "ratio_exact": r.ratio,
        "bound": r.bound_name,
        "bound_value": format!("{:.12}", r.bound),
        "verdict": r.verdict,
    });
    if let Some(e) = &r.error {
        obj["error"] = json!(e);
    }
    obj
}

fn report_line(r: &RatioReport) -> String {
    let verdict = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::VacuousPass => "PASS (vacuous)",
        Verdict::Fail => "FAIL",
        Verdict::Error => "ERROR",
    };
    match &r.error {
        Some(e) => format!("{verdict} {} [{}] {e}", r.instance, r.algorithm),
        None => format!(
            "{verdict} {} [{}] value={} optimum={} ratio={} bound={}={:.12}",
            r.instance,
            r.algorithm,
            r.value.unwrap_or(0),
            r.optimum.unwrap_or(0),
            ratio_text(r),
            r.bound_name,
            r.bound
        ),
    }
}

fn verdict_code(reports: &[RatioReport]) -> i32 {
    if reports.iter().all(|r| r.verdict.is_pass()) {
        0
    } else {
        1
    }
}

/// Result of a single solve, before formatting.
struct Solved {
    algorithm: String,
    value: usize,
    /// Chosen elements rendered with the file's labels.
    chosen: Vec<String>,
    chosen_key: &'static str,
    extra: Vec<(String, Value)>,
    /// `(optimum, bound)` when a bound was requested.
    judged: Option<RatioReport>,
}

fn graph_of(inst: &Instance) -> anyhow::Result<&ParsedGraph> {
    match inst {
        Instance::Graph(g) => Ok(g),
        Instance::Election(_) => bail!("this algorithm needs a graph file, got an election file"),
    }
}

fn election_of(
    inst: &Instance,
    setting: Option<Setting>,
    p: Option<usize>,
) -> anyhow::Result<ElectionInstance> {
    let Instance::Election(e) = inst else {
        bail!("this algorithm needs an election file, got a graph file");
    };
    let mut e = e.clone();
    if let Some(s) = setting {
        e = e.with_setting(s)?;
    }
    if let Some(p) = p {
        e = e.with_committee_size(p);
    }
    Ok(e)
}

fn undirected_only(pg: &ParsedGraph) -> anyhow::Result<extdom::UndirectedGraph> {
    match &pg.graph {
        Graph::Undirected(g) => Ok(g.clone()),
        Graph::Directed(_) => bail!("this algorithm needs an undirected graph"),
    }
}

fn committee_solved(alg: Algorithm, c: &Committee) -> (usize, Vec<String>, Vec<(String, Value)>) {
    (
        c.ext_value,
        c.members.iter().map(|m| format!("c{}", m + 1)).collect(),
        vec![
            ("represented".into(), json!(c.rep_value)),
            ("rule".into(), json!(alg.name())),
        ],
    )
}

fn solve(cfg: &RunConfig, a: &SolveArgs) -> anyhow::Result<Outcome> {
    let inst = parse_instance_file(&a.file)?;
    let label = file_label(&a.file);
    let k = a.k as usize;
    let delta = a.delta as usize;
    let need_p = || a.p.context("--p is required for this algorithm");
    let mut extra = Vec::new();
    let (algorithm, value, chosen, chosen_key, optimum) = match a.alg {
        Algorithm::Algorithm2 | Algorithm::Greedy | Algorithm::GreedyAdversarial => {
            let pg = graph_of(&inst)?;
            let g = undirected_only(pg)?;
            let p = need_p()?;
            let (name, sol) = match a.alg {
                Algorithm::Algorithm2 => {
                    let out = algorithm2_detailed(&g, p, k, delta)?;
                    extra.push(("branch".into(), json!(out.branch)));
                    (format!("algorithm2(k={k}, delta={delta}, p={p})"), out.best)
                }
                Algorithm::Greedy => (
                    format!("greedy(k={k}, p={p})"),
                    greedy_dominators(&g, p, k, &TieBreak::LowestId)?.solution(),
                ),
                _ => (
                    format!("greedy-adversarial(k={k}, p={p})"),
                    greedy_dominators(&g, p, k, &TieBreak::HighestId)?.solution(),
                ),
            };
            extra.push(("dom".into(), json!(sol.dom_value)));
            let optimum = a
                .bound
                .map(|_| exact_ext_domination(&g, p, k, cfg.budget).map(|o| o.optimum_ext))
                .transpose()?;
            let chosen = sol.dominators.iter().map(|&v| pg.name(v)).collect();
            (name, sol.ext_value, chosen, "dominators", optimum)
        }
        Algorithm::Optext => {
            let pg = graph_of(&inst)?;
            let g = undirected_only(pg)?;
            let p = need_p()?;
            let oi = OptExtInstance::with_ones(g, p)?;
            let alloc = reduce_and_solve(&oi)?;
            let optimum = a.bound.map(|_| exact_optext(&oi, cfg.budget)).transpose()?;
            extra.push(("assign".into(), json!(alloc.assign)));
            let chosen = alloc.holders(&oi).into_iter().map(|v| pg.name(v)).collect();
            (
                format!("optext(p={p})"),
                alloc.externality,
                chosen,
                "holders",
                optimum,
            )
        }
        Algorithm::Matching => {
            let pg = graph_of(&inst)?;
            let m = maximum_matching_undirected(&pg.graph.undirected());
            let chosen = m
                .iter()
                .map(|&(u, v)| format!("{}-{}", pg.name(u), pg.name(v)))
                .collect();
            if a.bound.is_some() {
                bail!("--bound does not apply to plain matching");
            }
            ("matching".to_string(), m.len(), chosen, "edges", None)
        }
        Algorithm::ElectionGreedy | Algorithm::ElectionMatching | Algorithm::Election => {
            let e = election_of(&inst, a.setting, a.p)?;
            let c = match a.alg {
                Algorithm::ElectionGreedy => greedy_committee(&e)?,
                Algorithm::ElectionMatching => matching_committee(&e)?,
                _ => solve_ext_representation(&e)?,
            };
            let (value, chosen, more) = committee_solved(a.alg, &c);
            extra.extend(more);
            let optimum = a
                .bound
                .map(|_| exact_ext_representation(&e, cfg.budget).map(|o| o.optimum_ext))
                .transpose()?;
            let name = format!(
                "{}({}, p={})",
                a.alg.name(),
                e.setting(),
                e.committee_size()
            );
            (name, value, chosen, "committee", optimum)
        }
    };
    let judged = a.bound.zip(optimum).map(|(b, opt)| {
        judge(
            &Evaluation {
                instance: label.clone(),
                value: value as u64,
                optimum: opt as u64,
            },
            &algorithm,
            b.as_str(),
            b.ratio(k),
        )
    });
    let solved = Solved {
        algorithm,
        value,
        chosen,
        chosen_key,
        extra,
        judged,
    };
    Ok(render_solved(cfg.format, &label, &solved))
}

fn render_solved(format: Format, label: &str, s: &Solved) -> Outcome {
    let code = s
        .judged
        .as_ref()
        .map_or(0, |r| verdict_code(std::slice::from_ref(r)));
    let output = match format {
        Format::Json => {
            let mut obj = match &s.judged {
                Some(r) => report_json(r),
                None => json!({
                    "instance": label,
                    "algorithm": s.algorithm,
                    "value": s.value,
                }),
            };
            obj[s.chosen_key] = json!(s.chosen);
            for (key, v) in &s.extra {
                obj[key.as_str()] = v.clone();
            }
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "instance: {label}");
            let _ = writeln!(out, "algorithm: {}", s.algorithm);
            let _ = writeln!(out, "{}: {}", s.chosen_key, s.chosen.join(" "));
            let _ = writeln!(out, "value: {}", s.value);
            for (key, v) in &s.extra {
                match v {
                    Value::String(text) => {
                        let _ = writeln!(out, "{key}: {text}");
                    }
                    other => {
                        let _ = writeln!(out, "{key}: {other}");
                    }
                }
            }
            if let Some(r) = &s.judged {
                let _ = writeln!(out, "optimum: {}", r.optimum.unwrap_or(0));
                let _ = writeln!(out, "ratio: {}", ratio_text(r));
                let _ = writeln!(out, "bound: {} = {:.12}", r.bound_name, r.bound);
                let _ = writeln!(out, "verdict: {:?}", r.verdict);
            }
            out
        }
    };
    Outcome { code, output }
}

fn oracle(cfg: &RunConfig, a: &OracleArgs) -> anyhow::Result<Outcome> {
    let inst = parse_instance_file(&a.file)?;
    let label = file_label(&a.file);
    let k = a.k as usize;
    let (problem, optimum, witness): (String, usize, Vec<String>) = match &inst {
        Instance::Election(_) => {
            let e = election_of(&inst, a.setting, a.p)?;
            let r = exact_ext_representation(&e, cfg.budget)?;
            (
                format!("representation({}, p={})", e.setting(), e.committee_size()),
                r.optimum_ext,
                r.witness.iter().map(|c| format!("c{}", c + 1)).collect(),
            )
        }
        Instance::Graph(pg) => match a.problem {
            Problem::Matching => {
                let m = exhaustive_max_matching(&pg.graph.undirected())?;
                let w = m
                    .iter()
                    .map(|&(u, v)| format!("{}-{}", pg.name(u), pg.name(v)))
                    .collect();
                ("matching".into(), m.len(), w)
            }
            Problem::Domination => {
                let g = undirected_only(pg)?;
                let p = a.p.context("--p is required")?;
                let r = exact_ext_domination(&g, p, k, cfg.budget)?;
                (
                    format!("domination(k={k}, p={p}, optimal sets={})", r.optimal_count),
                    r.optimum_ext,
                    r.witness.iter().map(|&v| pg.name(v)).collect(),
                )
            }
            Problem::Optext => {
                let g = undirected_only(pg)?;
                let p = a.p.context("--p is required")?;
                let oi = OptExtInstance::with_ones(g, p)?;
                (
                    format!("optext(p={p})"),
                    exact_optext(&oi, cfg.budget)?,
                    Vec::new(),
                )
            }
        },
    };
    let output = match cfg.format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "instance": label,
                "algorithm": format!("oracle:{problem}"),
                "optimum": optimum,
                "witness": witness,
            }))
            .expect("json")
        ),
        Format::Text => format!(
            "instance: {label}\nproblem: {problem}\noptimum: {optimum}\nwitness: {}\n",
            witness.join(" ")
        ),
    };
    Ok(Outcome::ok(output))
}

fn certify(cfg: &RunConfig, a: &CertifyArgs) -> anyhow::Result<Outcome> {
    let spec = SweepSpec {
        bound: a.bound,
        family: a.family,
        dir: a.dir.clone(),
        n: a.n,
        min_n: a.min_n,
        m: a.m,
        count: a.count,
        seed: a.seed,
        prob: a.prob,
        overlap: a.overlap,
        k: a.k as usize,
        setting: a.setting,
        budget: cfg.budget,
    };
    let sweep = sweep::run_sweep(&spec)?;
    let cert = &sweep.certification;
    let code = verdict_code(&cert.reports);
    let output = match cfg.format {
        Format::Json => {
            let reports: Vec<Value> = cert
                .reports
                .iter()
                .filter(|r| !a.quiet || !r.verdict.is_pass())
                .map(report_json)
                .collect();
            let doc = json!({
                "bound": a.bound.as_str(),
                "bound_value": format!("{:.12}", sweep.bound_value),
                "algorithm": sweep.algorithm,
                "reports": reports,
                "summary": summary_json(cert, sweep.instances, sweep.excluded),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text => {
            let mut out = String::new();
            for r in cert
                .reports
                .iter()
                .filter(|r| !a.quiet || !r.verdict.is_pass())
            {
                let _ = writeln!(out, "{}", report_line(r));
            }
            let _ = writeln!(
                out,
                "summary: bound {} = {:.12}, algorithm {}, {} instances ({} excluded), {} checks: {} pass, {} vacuous, {} fail, {} error; worst ratio {}",
                a.bound,
                sweep.bound_value,
                sweep.algorithm,
                sweep.instances,
                sweep.excluded,
                cert.reports.len(),
                cert.count(Verdict::Pass),
                cert.count(Verdict::VacuousPass),
                cert.count(Verdict::Fail),
                cert.count(Verdict::Error),
                cert.worst_ratio().map_or("n/a".into(), |w| format!("{w:.12}")),
            );
            let _ = writeln!(out, "verdict: {}", if code == 0 { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Outcome { code, output })
}

fn summary_json(cert: &Certification, instances: usize, excluded: usize) -> Value {
    json!({
        "instances": instances,
        "excluded": excluded,
        "checks": cert.reports.len(),
        "pass": cert.count(Verdict::Pass),
        "vacuous_pass": cert.count(Verdict::VacuousPass),
        "fail": cert.count(Verdict::Fail),
        "error": cert.count(Verdict::Error),
        "worst_ratio": cert.worst_ratio().map(|w| format!("{w:.12}")),
        "verdict": if cert.passed() { "pass" } else { "fail" },
    })
}

fn decompose(cfg: &RunConfig, a: &DecomposeArgs) -> anyhow::Result<Outcome> {
    let pg = parse_graph_file(&a.file)?;
    let g = undirected_only(&pg)?;
    let aux = build_auxiliary_graph(&g, a.delta as usize, a.k as usize)?;
    let centers: Vec<String> = aux.centers.iter().map(|&v| pg.name(v)).collect();
    let output = match cfg.format {
        Format::Json => {
            let comps: Vec<Value> = aux
                .components
                .iter()
                .zip(&aux.classes)
                .map(|(c, class)| {
                    json!({
                        "root": pg.name(c.root()),
                        "vertices": c.tree.vertices().map(|v| pg.name(v)).collect::<Vec<_>>(),
                        "absorbed_remainder": c.absorbed_remainder,
                        "class": class.map(|s| json!({
                            "hub": pg.name(s.hub),
                            "leaves": s.leaves,
                            "pendants": s.pendants,
                        })),
                    })
                })
                .collect();
            let doc = json!({
                "instance": file_label(&a.file),
                "delta": a.delta,
                "k": a.k,
                "components": comps,
                "centers": centers,
                "auxiliary_edges": aux.graph.edge_count(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} component(s), delta={}, k={}",
                aux.components.len(),
                a.delta,
                a.k
            );
            for (i, (c, class)) in aux.components.iter().zip(&aux.classes).enumerate() {
                let vs: Vec<String> = c.tree.vertices().map(|v| pg.name(v)).collect();
                let _ = write!(
                    out,
                    "component {i}: root {} vertices [{}]",
                    pg.name(c.root()),
                    vs.join(" ")
                );
                if c.absorbed_remainder {
                    out.push_str(" (absorbed remainder)");
                }
                if let Some(s) = class {
                    let _ = write!(
                        out,
                        " class S({},{}) hub {}",
                        s.leaves,
                        s.pendants,
                        pg.name(s.hub)
                    );
                }
                out.push('\n');
            }
            let _ = writeln!(out, "centers: {}", centers.join(" "));
            out
        }
    };
    Ok(Outcome::ok(output))
}

fn generate(a: &GenArgs) -> anyhow::Result<Outcome> {
    let classic =
        |f| -> anyhow::Result<String> { Ok(write_graph(&Graph::Undirected(gen_classic(f, a.n)?))) };
    let random = |kind| -> anyhow::Result<String> {
        Ok(write_graph(&Graph::Undirected(gen_random(
            kind,
            a.n,
            Some(a.prob),
            a.seed,
        )?)))
    };
    let text = match a.family {
        GenFamily::Path => classic(ClassicFamily::Path)?,
        GenFamily::Cycle => classic(ClassicFamily::Cycle)?,
        GenFamily::Star => classic(ClassicFamily::Star)?,
        GenFamily::Complete => classic(ClassicFamily::Complete)?,
        GenFamily::Er => random(RandomKind::ErGraph)?,
        GenFamily::Tree => random(RandomKind::Tree)?,
        GenFamily::Connected => random(RandomKind::Connected)?,
        GenFamily::Election => {
            let params = ElectionParams {
                n_voters: a.n,
                n_candidates: a.m,
                approval_prob: a.prob,
                overlap: a.overlap,
                require_other_approval: a.require_other,
                setting: a.setting,
                committee_size: a.p,
            };
            write_election(&gen_random_election(&params, a.seed)?)
        }
        GenFamily::Reduction => {
            let base = a
                .base
                .as_ref()
                .context("--base is required for the reduction family")?;
            let g = undirected_only(&parse_graph_file(base)?)?;
            let r = gen_reduction_graph(&g, a.hops, a.q1, a.q2)?;
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            format!(
                "# connectors: {}\n# star centers: {}\n{}",
                list(&r.connectors),
                list(&r.star_centers),
                write_graph(&Graph::Undirected(r.graph))
            )
        }
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(Outcome::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(Outcome::ok(text)),
    }
}
