//! The `dom` / `ext` objectives and the greedy dominator selection.
//!
//! `dom(A)` is the size of the union of closed k-hop balls of the vertices in
//! `A`; `ext(A) = dom(A) - |A|` counts only the vertices dominated from
//! outside. For a fixed `|A| = p` both objectives share their maximisers, but
//! approximation guarantees differ, which is why greedy traces keep both.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// A dominator set together with its objective values on some graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationSolution {
    /// In selection order.
    pub dominators: Vec<usize>,
    pub k: usize,
    pub dom_value: usize,
    pub ext_value: usize,
}

impl DominationSolution {
    /// Evaluates `dominators` on `g`.
    pub fn evaluate(g: &UndirectedGraph, dominators: Vec<usize>, k: usize) -> Result<Self> {
        let dom_value = dom_count(g, &dominators, k)?;
        let distinct = dominators.iter().collect::<BTreeSet<_>>().len();
        Ok(Self {
            dominators,
            k,
            dom_value,
            ext_value: dom_value - distinct,
        })
    }

    pub fn sorted_dominators(&self) -> Vec<usize> {
        let mut d = self.dominators.clone();
        d.sort_unstable();
        d
    }
}

/// `|∪_{v ∈ A} N_k[v]|`.
pub fn dom_count(g: &UndirectedGraph, dominators: &[usize], k: usize) -> Result<usize> {
    let mut covered = vec![false; g.n()];
    let mut count = 0;
    for &v in dominators {
        for u in g.k_hop_closed_neighborhood(v, k)? {
            if !covered[u] {
                covered[u] = true;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `dom(A) - |A|`, with `A` read as a set.
pub fn ext_count(g: &UndirectedGraph, dominators: &[usize], k: usize) -> Result<usize> {
    let dom = dom_count(g, dominators, k)?;
    let distinct = dominators.iter().collect::<BTreeSet<_>>().len();
    Ok(dom - distinct)
}

/// How greedy resolves equal marginal gains.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestId,
    /// Adversarial order, used to exhibit worst-case greedy behaviour.
    HighestId,
    /// Prefer designated centers, then (if enabled) vertices not yet
    /// dominated, then the lowest id.
    CenterPriority {
        centers: BTreeSet<usize>,
        prefer_undominated: bool,
    },
}

impl TieBreak {
    pub fn center_priority(centers: BTreeSet<usize>) -> Self {
        TieBreak::CenterPriority {
            centers,
            prefer_undominated: true,
        }
    }

    /// `Greater` when candidate `a` should win over `b` at equal gain.
    fn compare(&self, a: usize, b: usize, dominated: &[bool]) -> Ordering {
        match self {
            TieBreak::LowestId => b.cmp(&a),
            TieBreak::HighestId => a.cmp(&b),
            TieBreak::CenterPriority {
                centers,
                prefer_undominated,
            } => centers
                .contains(&a)
                .cmp(&centers.contains(&b))
                .then_with(|| {
                    if *prefer_undominated {
                        dominated[b].cmp(&dominated[a])
                    } else {
                        Ordering::Equal
                    }
                })
                .then_with(|| b.cmp(&a)),
        }
    }
}

/// One greedy step: the vertex added, its marginal `dom` gain, and the
/// objective values of the prefix ending with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreedyStep {
    pub vertex: usize,
    pub gain: usize,
    pub dom: usize,
    pub ext: usize,
}

/// The nested prefixes `A_1 ⊂ … ⊂ A_p` produced by greedy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyTrace {
    pub n: usize,
    pub k: usize,
    pub steps: Vec<GreedyStep>,
}

impl GreedyTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `A_i` for `i = 0..=p`.
    pub fn prefix(&self, i: usize) -> &[GreedyStep] {
        &self.steps[..i]
    }

    pub fn dominators(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    pub fn final_dom(&self) -> usize {
        self.steps.last().map_or(0, |s| s.dom)
    }

    pub fn final_ext(&self) -> usize {
        self.steps.last().map_or(0, |s| s.ext)
    }

    pub fn solution(&self) -> DominationSolution {
        DominationSolution {
            dominators: self.dominators(),
            k: self.k,
            dom_value: self.final_dom(),
            ext_value: self.final_ext(),
        }
    }

    pub fn profile(&self) -> ThetaSigmaProfile {
        theta_sigma_profile(self)
    }
}

/// Runs greedy for `p` steps: each step adds the unselected vertex with the
/// largest marginal `dom` gain, ties resolved by `policy`.
pub fn greedy_dominators(
    g: &UndirectedGraph,
    p: usize,
    k: usize,
    policy: &TieBreak,
) -> Result<GreedyTrace> {
    let n = g.n();
    if p > n {
        return Err(Error::InfeasibleCardinality {
            requested: p,
            available: n,
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter(
            "hop radius k must be at least 1".into(),
        ));
    }
    let balls = g.all_balls(k);
    let mut dominated = vec![false; n];
    let mut selected = vec![false; n];
    let mut dom = 0;
    let mut steps = Vec::with_capacity(p);

    for i in 1..=p {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| !selected[v]) {
            let gain = balls[v].iter().filter(|&&u| !dominated[u]).count();
            let better = match best {
                None => true,
                Some((bv, bg)) => gain
                    .cmp(&bg)
                    .then_with(|| policy.compare(v, bv, &dominated))
                    .is_gt(),
            };
            if better {
                best = Some((v, gain));
            }
        }
        let (v, gain) = best.expect("p <= n leaves an unselected vertex");
        selected[v] = true;
        for &u in &balls[v] {
            dominated[u] = true;
        }
        dom += gain;
        steps.push(GreedyStep {
            vertex: v,
            gain,
            dom,
            ext: dom - i,
        });
    }
    Ok(GreedyTrace { n, k, steps })
}

/// `θ_i = ext(A_i) / i` and `σ_i = ext(A_i) / (n - i)` as exact rationals.
/// `σ_i` is `None` where `i = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSigmaProfile {
    pub theta: Vec<Ratio<u64>>,
    pub sigma: Vec<Option<Ratio<u64>>>,
}

impl ThetaSigmaProfile {
    /// Indices `i` (1-based) where `θ_{i+1} > θ_i`.
    pub fn theta_violations(&self) -> Vec<usize> {
        self.theta
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Indices `i` (1-based) where both are defined and `σ_{i+1} < σ_i`.
    pub fn sigma_violations(&self) -> Vec<usize> {
        self.sigma
            .windows(2)
            .enumerate()
            .filter(|(_, w)| matches!((w[0], w[1]), (Some(a), Some(b)) if b < a))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

pub fn theta_sigma_profile(trace: &GreedyTrace) -> ThetaSigmaProfile {
    let n = trace.n as u64;
    let mut theta = Vec::with_capacity(trace.len());
    let mut sigma = Vec::with_capacity(trace.len());
    for (idx, step) in trace.steps.iter().enumerate() {
        let i = idx as u64 + 1;
        let ext = step.ext as u64;
        theta.push(Ratio::new(ext, i));
        sigma.push((i < n).then(|| Ratio::new(ext, n - i)));
    }
    ThetaSigmaProfile { theta, sigma }
}
