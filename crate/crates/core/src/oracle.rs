//! Exhaustive solvers used to certify approximation ratios on small
//! instances.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::meets_bound;
use crate::elections::{external_rep_count, ElectionInstance};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::optext::{externality_of_allocation, OptExtInstance};

/// Default cap on the number of subsets an oracle may enumerate.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "EXTDOM_ORACLE_BUDGET";

/// Budget from `EXTDOM_ORACLE_BUDGET`, falling back to the default.
pub fn budget_from_env() -> Result<u128> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{BUDGET_ENV}=`{s}` is not an integer"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_budget(n: usize, p: usize, budget: u128) -> Result<()> {
    if p > n {
        return Err(Error::InfeasibleCardinality {
            requested: p,
            available: n,
        });
    }
    let required = binomial(n, p);
    if required > budget {
        return Err(Error::OracleBudget { required, budget });
    }
    Ok(())
}

/// Calls `visit` on every `p`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, p: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..p).rev().find(|&i| idx[i] != i + n - p) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactDomination {
    pub optimum_ext: usize,
    pub optimum_dom: usize,
    /// Lexicographically smallest optimal set.
    pub witness: Vec<usize>,
    pub optimal_count: u64,
}

/// Maximum of `ext` over all `p`-subsets, by depth-first enumeration in
/// lexicographic order with incremental coverage counts.
pub fn exact_ext_domination(
    g: &UndirectedGraph,
    p: usize,
    k: usize,
    budget: u128,
) -> Result<ExactDomination> {
    let n = g.n();
    check_budget(n, p, budget)?;
    let balls = g.all_balls(k);

    struct Search<'a> {
        balls: &'a [Vec<usize>],
        n: usize,
        p: usize,
        cover: Vec<u32>,
        covered: usize,
        stack: Vec<usize>,
        best: Option<usize>,
        witness: Vec<usize>,
        count: u64,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize) {
            if self.stack.len() == self.p {
                match self.best {
                    Some(b) if self.covered < b => {}
                    Some(b) if self.covered == b => self.count += 1,
                    _ => {
                        self.best = Some(self.covered);
                        self.witness = self.stack.clone();
                        self.count = 1;
                    }
                }
                return;
            }
            let remaining = self.p - self.stack.len();
            for v in start..=self.n - remaining {
                for &u in &self.balls[v] {
                    if self.cover[u] == 0 {
                        self.covered += 1;
                    }
                    self.cover[u] += 1;
                }
                self.stack.push(v);
                self.run(v + 1);
                self.stack.pop();
                for &u in &self.balls[v] {
                    self.cover[u] -= 1;
                    if self.cover[u] == 0 {
                        self.covered -= 1;
                    }
                }
            }
        }
    }

    let mut search = Search {
        balls: &balls,
        n,
        p,
        cover: vec![0; n],
        covered: 0,
        stack: Vec::with_capacity(p),
        best: None,
        witness: Vec::new(),
        count: 0,
    };
    search.run(0);
    let dom = search.best.expect("at least one p-subset exists");
    Ok(ExactDomination {
        optimum_ext: dom - p,
        optimum_dom: dom,
        witness: search.witness,
        optimal_count: search.count,
    })
}

/// Every dom-optimal set and every ext-optimal set, each in lexicographic order.
pub type OptimalSets = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// All optimal `p`-subsets for `dom` and for `ext`, enumerated separately.
pub fn optimal_sets(g: &UndirectedGraph, p: usize, k: usize, budget: u128) -> Result<OptimalSets> {
    type Scored = (Vec<usize>, usize, usize);
    check_budget(g.n(), p, budget)?;
    let mut scored = Vec::new();
    let mut err = None;
    for_each_combination(g.n(), p, |set| {
        match (
            crate::domination::dom_count(g, set, k),
            crate::domination::ext_count(g, set, k),
        ) {
            (Ok(d), Ok(e)) => scored.push((set.to_vec(), d, e)),
            (Err(e), _) | (_, Err(e)) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let best_dom = scored.iter().map(|s| s.1).max().unwrap_or(0);
    let best_ext = scored.iter().map(|s| s.2).max().unwrap_or(0);
    let by = |f: &dyn Fn(&Scored) -> bool| {
        scored
            .iter()
            .filter(|s| f(s))
            .map(|s| s.0.clone())
            .collect()
    };
    Ok((by(&|s| s.1 == best_dom), by(&|s| s.2 == best_ext)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactRepresentation {
    pub optimum_ext: usize,
    /// Lexicographically smallest optimal committee.
    pub witness: Vec<usize>,
}

/// Maximum of the setting's `ext` over all committees of the instance's size.
pub fn exact_ext_representation(
    inst: &ElectionInstance,
    budget: u128,
) -> Result<ExactRepresentation> {
    let m = inst.n_candidates();
    let p = inst.committee_size();
    check_budget(m, p, budget)?;
    let mut best: Option<ExactRepresentation> = None;
    let mut err = None;
    for_each_combination(m, p, |c| match external_rep_count(inst, c) {
        Ok(v) => {
            if best.as_ref().is_none_or(|b| v > b.optimum_ext) {
                best = Some(ExactRepresentation {
                    optimum_ext: v,
                    witness: c.to_vec(),
                });
            }
        }
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best.expect("at least one committee exists")),
    }
}

/// Maximum externality over all allocations, enumerating which `p`-subset of
/// vertices holds the 1-objects and scoring each allocation directly.
pub fn exact_optext(inst: &OptExtInstance, budget: u128) -> Result<usize> {
    let n = inst.graph().n();
    let p = inst.ones();
    check_budget(n, p, budget)?;
    let ones: Vec<usize> = (0..n).filter(|&o| inst.values()[o]).collect();
    let zeros: Vec<usize> = (0..n).filter(|&o| !inst.values()[o]).collect();
    let mut best = 0;
    let mut err = None;
    for_each_combination(n, p, |holders| {
        let mut assign = vec![0; n];
        let mut h = holders.iter().peekable();
        let (mut oi, mut zi) = (0, 0);
        for (v, slot) in assign.iter_mut().enumerate() {
            if h.peek() == Some(&&v) {
                h.next();
                *slot = ones[oi];
                oi += 1;
            } else {
                *slot = zeros[zi];
                zi += 1;
            }
        }
        match externality_of_allocation(inst, &assign) {
            Ok(x) => best = best.max(x),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(best),
    }
}

/// Largest vertex count the exhaustive matching search accepts.
pub const MATCHING_ORACLE_MAX_VERTICES: usize = 20;

/// Maximum matching by memoised search over vertex subsets. Independent of
/// the blossom implementation; exponential, so restricted to small graphs.
pub fn exhaustive_max_matching(g: &UndirectedGraph) -> Result<Vec<(usize, usize)>> {
    let n = g.n();
    if n > MATCHING_ORACLE_MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "exhaustive matching supports at most {MATCHING_ORACLE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();

    fn best(mask: u32, adj: &[u32], memo: &mut HashMap<u32, u32>) -> u32 {
        if mask == 0 {
            return 0;
        }
        if let Some(&b) = memo.get(&mask) {
            return b;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best(rest, adj, memo);
        let mut cand = adj[v] & rest;
        while cand != 0 {
            let u = cand.trailing_zeros();
            cand &= cand - 1;
            b = b.max(1 + best(rest & !(1 << u), adj, memo));
        }
        memo.insert(mask, b);
        b
    }

    let mut memo = HashMap::new();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let target = best(full, &adj, &mut memo);

    // walk the memo table back to a witness
    let mut pairs = Vec::with_capacity(target as usize);
    let mut mask = full;
    while mask != 0 {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let here = best(mask, &adj, &mut memo);
        if best(rest, &adj, &mut memo) == here {
            mask = rest;
            continue;
        }
        let mut cand = adj[v] & rest;
        loop {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let next = rest & !(1 << u);
            if 1 + best(next, &adj, &mut memo) == here {
                pairs.push((v, u));
                mask = next;
                break;
            }
        }
    }
    Ok(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The optimum is 0, so any value meets the bound.
    VacuousPass,
    Fail,
    Error,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::VacuousPass)
    }
}

/// Outcome of checking one instance against a claimed ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub instance: String,
    pub algorithm: String,
    pub value: Option<u64>,
    pub optimum: Option<u64>,
    /// `value / optimum` reduced, as `"a/b"`.
    pub ratio: Option<String>,
    pub ratio_decimal: Option<f64>,
    pub bound_name: String,
    pub bound: f64,
    pub verdict: Verdict,
    pub error: Option<String>,
}

/// Algorithm value and optimum for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub instance: String,
    pub value: u64,
    pub optimum: u64,
}

pub fn judge(eval: &Evaluation, algorithm: &str, bound_name: &str, bound: f64) -> RatioReport {
    let (ratio, ratio_decimal) = if eval.optimum == 0 {
        (None, None)
    } else {
        let r = Ratio::new(eval.value, eval.optimum);
        (
            Some(format!("{}/{}", r.numer(), r.denom())),
            Some(eval.value as f64 / eval.optimum as f64),
        )
    };
    let verdict = if eval.optimum == 0 {
        Verdict::VacuousPass
    } else if meets_bound(eval.value, eval.optimum, bound) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    RatioReport {
        instance: eval.instance.clone(),
        algorithm: algorithm.to_string(),
        value: Some(eval.value),
        optimum: Some(eval.optimum),
        ratio,
        ratio_decimal,
        bound_name: bound_name.to_string(),
        bound,
        verdict,
        error: None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certification {
    pub reports: Vec<RatioReport>,
}

impl Certification {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.verdict.is_pass())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RatioReport> {
        self.reports.iter().filter(|r| !r.verdict.is_pass())
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.reports.iter().filter(|r| r.verdict == verdict).count()
    }

    /// Smallest observed ratio among non-vacuous reports.
    pub fn worst_ratio(&self) -> Option<f64> {
        self.reports
            .iter()
            .filter_map(|r| r.ratio_decimal)
            .min_by(f64::total_cmp)
    }
}

/// Evaluates every instance (in parallel) and judges it against `bound`.
/// Each instance may yield several evaluations (e.g. one per `p`). Errors
/// become `Error` reports labelled with `label(instance)`; the stream is
/// not aborted. Reports keep input order.
pub fn certify<T, L, F>(
    instances: &[T],
    algorithm: &str,
    bound_name: &str,
    bound: f64,
    label: L,
    evaluate: F,
) -> Certification
where
    T: Sync,
    L: Fn(&T) -> String + Sync,
    F: Fn(&T) -> Result<Vec<Evaluation>> + Sync,
{
    let reports = instances
        .par_iter()
        .map(|inst| match evaluate(inst) {
            Ok(evals) => evals
                .iter()
                .map(|e| judge(e, algorithm, bound_name, bound))
                .collect(),
            Err(e) => vec![RatioReport {
                instance: label(inst),
                algorithm: algorithm.to_string(),
                value: None,
                optimum: None,
                ratio: None,
                ratio_decimal: None,
                bound_name: bound_name.to_string(),
                bound,
                verdict: Verdict::Error,
                error: Some(e.to_string()),
            }],
        })
        .collect::<Vec<Vec<_>>>()
        .into_iter()
        .flatten()
        .collect();
    Certification { reports }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elections::rule_divergence_instance;
    use crate::elections::Setting;
    use std::collections::BTreeSet;

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        let mut all = Vec::new();
        for_each_combination(4, 2, |c| all.push(c.to_vec()));
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        let mut empty = Vec::new();
        for_each_combination(3, 0, |c| empty.push(c.to_vec()));
        assert_eq!(empty, vec![Vec::<usize>::new()]);
        assert_eq!(binomial(10, 5), 252);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn domination_oracle_examples() {
        // {0,3}, {1,3} and {1,4} all dominate the whole path
        let r = exact_ext_domination(&path(5), 2, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (r.optimum_ext, r.witness.clone(), r.optimal_count),
            (3, vec![0, 3], 3)
        );

        let star = UndirectedGraph::new(5, (1..5).map(|i| (0, i))).unwrap();
        let r = exact_ext_domination(&star, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (r.optimum_ext, r.witness.clone(), r.optimal_count),
            (4, vec![0], 1)
        );

        let k4 = UndirectedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let r = exact_ext_domination(&k4, 1, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            (r.optimum_ext, r.witness.clone(), r.optimal_count),
            (3, vec![0], 4)
        );

        let r = exact_ext_domination(&path(4), 0, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.optimum_ext, r.optimal_count), (0, 1));
    }

    #[test]
    fn domination_oracle_budget() {
        let err = exact_ext_domination(&UndirectedGraph::empty(30), 15, 1, DEFAULT_BUDGET);
        assert!(matches!(err, Err(Error::OracleBudget { .. })));
    }

    #[test]
    fn representation_oracle_examples() {
        let r = exact_ext_representation(&rule_divergence_instance(2), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.optimum_ext, r.witness), (6, vec![1, 2]));

        let full = exact_ext_representation(&rule_divergence_instance(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(full.witness, vec![0, 1, 2]);

        let empty = ElectionInstance::new(
            3,
            vec![BTreeSet::new(); 2],
            vec![None; 3],
            Setting::NonSecrecy,
            2,
        )
        .unwrap();
        let r = exact_ext_representation(&empty, DEFAULT_BUDGET).unwrap();
        assert_eq!((r.optimum_ext, r.witness), (0, vec![0, 1]));
    }

    #[test]
    fn matching_oracle_small_cases() {
        let c5 = UndirectedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(exhaustive_max_matching(&c5).unwrap().len(), 2);
        let p4 = path(4);
        assert_eq!(exhaustive_max_matching(&p4).unwrap(), vec![(0, 1), (2, 3)]);
        assert!(exhaustive_max_matching(&UndirectedGraph::empty(21)).is_err());
    }

    #[test]
    fn judge_rules() {
        let e = |value, optimum| Evaluation {
            instance: "x".into(),
            value,
            optimum,
        };
        assert_eq!(judge(&e(0, 0), "a", "b", 0.9).verdict, Verdict::VacuousPass);
        let r = judge(&e(2, 3), "greedy", "two-thirds", 2.0 / 3.0);
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.ratio.as_deref(), Some("2/3"));
        assert_eq!(judge(&e(1, 3), "a", "b", 0.5).verdict, Verdict::Fail);
    }

    #[test]
    fn certify_keeps_order_and_isolates_errors() {
        let inputs = vec![3usize, 0, 5];
        let cert = certify(
            &inputs,
            "id",
            "half",
            0.5,
            |n| format!("n={n}"),
            |&n| {
                if n == 0 {
                    Err(Error::InvalidParameter("zero".into()))
                } else {
                    Ok(vec![Evaluation {
                        instance: format!("n={n}"),
                        value: n as u64,
                        optimum: n as u64,
                    }])
                }
            },
        );
        let labels: Vec<_> = cert.reports.iter().map(|r| r.instance.as_str()).collect();
        assert_eq!(labels, vec!["n=3", "n=0", "n=5"]);
        assert_eq!(cert.reports[1].verdict, Verdict::Error);
        assert!(!cert.passed());
    }
}
