//! Certification sweeps: build a list of instances (generated or read from
//! a directory), pick the algorithm a bound speaks about, and judge every
//! `(instance, p)` pair against the exact optimum.

use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::ValueEnum;
use extdom::decomposition::algorithm2;
use extdom::domination::{greedy_dominators, TieBreak};
use extdom::elections::{greedy_committee, solve_ext_representation};
use extdom::generators::{
    gen_classic, gen_random, gen_random_election, ClassicFamily, ElectionParams, RandomKind,
};
use extdom::optext::{reduce_and_solve, OptExtInstance};
use extdom::oracle::{
    certify, exact_ext_domination, exact_ext_representation, exact_optext, Certification,
    Evaluation,
};
use extdom::{BoundName, ElectionInstance, Error, Setting, UndirectedGraph};

use crate::io::{parse_instance_file, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Er,
    Tree,
    Connected,
    Path,
    Cycle,
    Star,
    Complete,
    Election,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub bound: BoundName,
    pub family: Option<Family>,
    pub dir: Option<PathBuf>,
    pub n: usize,
    pub min_n: Option<usize>,
    pub m: usize,
    pub count: usize,
    pub seed: u64,
    pub prob: f64,
    pub overlap: f64,
    pub k: usize,
    pub setting: Option<Setting>,
    pub budget: u128,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub certification: Certification,
    pub algorithm: String,
    pub bound_value: f64,
    pub instances: usize,
    /// Instances dropped for not meeting the bound's precondition.
    pub excluded: usize,
}

enum Case {
    Graph(String, UndirectedGraph),
    Election(String, ElectionInstance),
    Broken(String, String),
}

impl Case {
    fn label(&self) -> String {
        match self {
            Case::Graph(l, _) | Case::Election(l, _) | Case::Broken(l, _) => l.clone(),
        }
    }
}

fn is_election_bound(b: BoundName) -> bool {
    matches!(b, BoundName::Thm3 | BoundName::Thm4)
}

/// `(k, delta)` the bound is stated for.
fn graph_parameters(b: BoundName, k: usize) -> (usize, usize) {
    match b {
        BoundName::Lemma1D0 => (k, 0),
        BoundName::Lemma1D1 => (k, 1),
        _ => (1, 1),
    }
}

fn sizes(spec: &SweepSpec) -> anyhow::Result<impl Fn(usize) -> usize> {
    let hi = spec.n;
    let lo = spec.min_n.unwrap_or(hi);
    if lo > hi || lo == 0 {
        bail!("instance sizes must satisfy 1 <= min-n <= n");
    }
    Ok(move |i: usize| lo + i % (hi - lo + 1))
}

fn generate(spec: &SweepSpec, setting: Setting) -> anyhow::Result<Vec<Case>> {
    let election_bound = is_election_bound(spec.bound);
    let family = spec.family.unwrap_or(if election_bound {
        Family::Election
    } else {
        Family::Connected
    });
    if election_bound != (family == Family::Election) {
        bail!(
            "bound {} cannot be certified on the {:?} family",
            spec.bound,
            family
        );
    }
    let size = sizes(spec)?;
    let mut cases = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let n = size(i);
        let seed = spec.seed.wrapping_add(i as u64);
        let classic = |f| gen_classic(f, n).map(|g| (format!("{f:?}-n{n}").to_lowercase(), g));
        let random = |kind| {
            gen_random(kind, n, Some(spec.prob), seed)
                .map(|g| (format!("{kind:?}-n{n}-s{seed}").to_lowercase(), g))
        };
        let built = match family {
            Family::Er => random(RandomKind::ErGraph),
            Family::Tree => random(RandomKind::Tree),
            Family::Connected => random(RandomKind::Connected),
            Family::Path => classic(ClassicFamily::Path),
            Family::Cycle => classic(ClassicFamily::Cycle),
            Family::Star => classic(ClassicFamily::Star),
            Family::Complete => classic(ClassicFamily::Complete),
            Family::Election => {
                let params = ElectionParams {
                    n_voters: n,
                    n_candidates: spec.m,
                    approval_prob: spec.prob,
                    overlap: spec.overlap,
                    require_other_approval: spec.bound == BoundName::Thm4,
                    setting,
                    committee_size: 1,
                };
                let inst = gen_random_election(&params, seed)?;
                cases.push(Case::Election(
                    format!("election-v{n}-c{}-s{seed}", spec.m),
                    inst,
                ));
                continue;
            }
        };
        let (label, g) = built?;
        cases.push(Case::Graph(label, g));
    }
    Ok(cases)
}

fn read_dir(dir: &std::path::Path) -> anyhow::Result<Vec<Case>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.is_file());
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|p| {
            let label = p
                .file_name()
                .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
            match parse_instance_file(&p) {
                Ok(Instance::Graph(pg)) => Case::Graph(label, pg.graph.undirected()),
                Ok(Instance::Election(e)) => Case::Election(label, e),
                Err(e) => Case::Broken(label, format!("{e:#}")),
            }
        })
        .collect())
}

pub fn run_sweep(spec: &SweepSpec) -> anyhow::Result<SweepResult> {
    let bound = spec.bound;
    let setting = spec.setting.unwrap_or(Setting::NonSecrecy);
    if bound == BoundName::Thm3 && setting != Setting::NonSecrecy {
        bail!("thm3 is a non-secrecy guarantee");
    }
    let mut cases = match &spec.dir {
        Some(dir) => read_dir(dir)?,
        None => generate(spec, setting)?,
    };
    let total = cases.len();
    if bound == BoundName::Cor41 {
        cases.retain(|c| !matches!(c, Case::Graph(_, g) if g.has_isolated_vertex()));
    }
    let excluded = total - cases.len();

    let (k, delta) = graph_parameters(bound, spec.k);
    let algorithm = match bound {
        BoundName::Thm2 | BoundName::Lemma1D0 | BoundName::Lemma1D1 => {
            format!("algorithm2(k={k}, delta={delta})")
        }
        BoundName::Cor41 => "greedy(k=1)".into(),
        BoundName::Thm5 => "optext".into(),
        BoundName::Thm3 => "election(non-secrecy)".into(),
        BoundName::Thm4 => format!("election-greedy({setting})"),
    };
    let bound_value = bound.ratio(k);
    let budget = spec.budget;

    let evaluate = |case: &Case| -> extdom::Result<Vec<Evaluation>> {
        let eval = |label: &str, p: usize, value: usize, optimum: usize| Evaluation {
            instance: format!("{label}/p={p}"),
            value: value as u64,
            optimum: optimum as u64,
        };
        match case {
            Case::Broken(_, msg) => Err(Error::Instance(msg.clone())),
            Case::Graph(label, g) => {
                if is_election_bound(bound) {
                    return Err(Error::Instance(format!(
                        "bound {bound} needs election instances"
                    )));
                }
                (1..g.n())
                    .map(|p| {
                        let value = match bound {
                            BoundName::Cor41 => {
                                greedy_dominators(g, p, 1, &TieBreak::LowestId)?.final_ext()
                            }
                            BoundName::Thm5 => {
                                let inst = OptExtInstance::with_ones(g.clone(), p)?;
                                let value = reduce_and_solve(&inst)?.externality;
                                return Ok(eval(label, p, value, exact_optext(&inst, budget)?));
                            }
                            _ => algorithm2(g, p, k, delta)?.ext_value,
                        };
                        let opt = exact_ext_domination(g, p, k, budget)?.optimum_ext;
                        Ok(eval(label, p, value, opt))
                    })
                    .collect()
            }
            Case::Election(label, inst) => {
                if !is_election_bound(bound) {
                    return Err(Error::Instance(format!(
                        "bound {bound} needs graph instances"
                    )));
                }
                let inst = if spec.setting.is_some() {
                    inst.with_setting(setting)?
                } else {
                    inst.clone()
                };
                (1..inst.n_candidates().max(2))
                    .map(|p| {
                        let sized = inst.with_committee_size(p);
                        let value = match bound {
                            BoundName::Thm3 => solve_ext_representation(&sized)?,
                            _ => greedy_committee(&sized)?,
                        }
                        .ext_value;
                        let opt = exact_ext_representation(&sized, budget)?.optimum_ext;
                        Ok(eval(label, p, value, opt))
                    })
                    .collect()
            }
        }
    };
    let certification = certify(
        &cases,
        &algorithm,
        bound.as_str(),
        bound_value,
        Case::label,
        evaluate,
    );
    Ok(SweepResult {
        certification,
        algorithm,
        bound_value,
        instances: cases.len(),
        excluded,
    })
}
