//! Deterministic instance generators.
//!
//! Randomness comes from [`SplitMix64`] so that every port of these
//! generators can reproduce the same instances from the same seed. The
//! consumption order of random numbers is part of each generator's contract
//! and is documented on the function.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::elections::{ElectionInstance, Setting};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// SplitMix64 (Steele, Lea, Flood 2014).
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// return z ^ (z >> 31)
/// ```
///
/// All arithmetic wraps modulo 2^64. Derived draws:
/// * `next_f64` = `(next_u64 >> 11) * 2^-53`, uniform in `[0, 1)`;
/// * `below(n)` = `next_u64 % n`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform-ish in `0..n` (modulo reduction); `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicFamily {
    Path,
    Cycle,
    Star,
    Complete,
}

impl FromStr for ClassicFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Self::Path),
            "cycle" => Ok(Self::Cycle),
            "star" => Ok(Self::Star),
            "complete" => Ok(Self::Complete),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph family `{other}`"
            ))),
        }
    }
}

/// Path edges `{i, i+1}`, cycle adds `{n-1, 0}`, star is centred at 0.
pub fn gen_classic(family: ClassicFamily, n: usize) -> Result<UndirectedGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "graph needs at least one vertex".into(),
        ));
    }
    let edges: Vec<(usize, usize)> = match family {
        ClassicFamily::Path => (1..n).map(|i| (i - 1, i)).collect(),
        ClassicFamily::Cycle => {
            if n < 3 {
                return Err(Error::InvalidParameter(format!(
                    "a cycle needs at least 3 vertices, got {n}"
                )));
            }
            (0..n).map(|i| (i, (i + 1) % n)).collect()
        }
        ClassicFamily::Star => (1..n).map(|i| (0, i)).collect(),
        ClassicFamily::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
    };
    UndirectedGraph::new(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    /// Erdős–Rényi G(n, p).
    ErGraph,
    /// Random recursive tree.
    Tree,
    /// Random recursive tree plus G(n, p) edges.
    Connected,
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" | "er-graph" => Ok(Self::ErGraph),
            "tree" => Ok(Self::Tree),
            "connected" => Ok(Self::Connected),
            other => Err(Error::InvalidParameter(format!(
                "unknown random kind `{other}`"
            ))),
        }
    }
}

/// Seeded random graph.
///
/// * `ErGraph`: for each pair `u < v` in lexicographic order, one `next_f64`
///   draw; the edge is kept when the draw is `< prob`.
/// * `Tree`: for `v = 1..n`, parent `below(v)`.
/// * `Connected`: the tree draws, then the ER draws over every pair, keeping
///   pairs that are not already tree edges.
pub fn gen_random(
    kind: RandomKind,
    n: usize,
    prob: Option<f64>,
    seed: u64,
) -> Result<UndirectedGraph> {
    let prob = prob.unwrap_or(0.0);
    if !(0.0..=1.0).contains(&prob) {
        return Err(Error::InvalidParameter(format!(
            "edge probability {prob} is outside [0, 1]"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut edges = BTreeSet::new();
    if matches!(kind, RandomKind::Tree | RandomKind::Connected) {
        for v in 1..n {
            let u = rng.below(v);
            edges.insert((u, v));
        }
    }
    if matches!(kind, RandomKind::ErGraph | RandomKind::Connected) {
        for u in 0..n {
            for v in u + 1..n {
                if rng.chance(prob) {
                    edges.insert((u, v));
                }
            }
        }
    }
    UndirectedGraph::new(n, edges)
}

/// Every labelled simple graph on `n` vertices, indexed by the bitmask over
/// lexicographically ordered pairs.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = UndirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    assert!(pairs.len() < 40, "too many graphs to enumerate");
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        UndirectedGraph::new(n, edges).expect("distinct pairs")
    })
}

/// One representative of every isomorphism class of graphs on `n`
/// vertices (`n <= 11`), in canonical labelling, sorted by canonical code.
///
/// Built by extending each class on `n - 1` vertices with a new vertex in
/// every possible way and deduplicating by [`canonical_code`].
pub fn nonisomorphic_graphs(n: usize) -> Vec<UndirectedGraph> {
    assert!(
        n <= 11,
        "canonical codes fit in 64 bits only up to 11 vertices"
    );
    if n == 0 {
        return vec![UndirectedGraph::empty(0)];
    }
    let mut reps = vec![UndirectedGraph::empty(1)];
    for m in 2..=n {
        let mut codes = BTreeSet::new();
        for g in &reps {
            let base: Vec<(usize, usize)> = g.edges().collect();
            for mask in 0u32..1 << (m - 1) {
                let extra = (0..m - 1)
                    .filter(|&u| mask >> u & 1 == 1)
                    .map(|u| (u, m - 1));
                let h = UndirectedGraph::new(m, base.iter().copied().chain(extra))
                    .expect("new vertex edges are fresh");
                codes.insert(canonical_code(&h));
            }
        }
        reps = codes.into_iter().map(|c| decode_canonical(m, c)).collect();
    }
    reps
}

/// Bit index of pair `(i, j)`, `i < j`, in the canonical code.
fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn decode_canonical(n: usize, code: u64) -> UndirectedGraph {
    let edges = (0..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| code >> pair_bit(i, j) & 1 == 1);
    UndirectedGraph::new(n, edges).expect("distinct pairs")
}

/// Isomorphism-invariant code: the smallest adjacency bitmask over all
/// vertex orderings that respect the colour-refinement partition.
pub fn canonical_code(g: &UndirectedGraph) -> u64 {
    let n = g.n();
    assert!(
        n <= 11,
        "canonical codes fit in 64 bits only up to 11 vertices"
    );
    let mut colour: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&u| colour[u]).collect();
                around.sort_unstable();
                (colour[v], around)
            })
            .collect();
        let distinct: Vec<&(usize, Vec<usize>)> =
            sigs.iter().collect::<BTreeSet<_>>().into_iter().collect();
        colour = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colour[v]].push(v);
    }
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut best = u64::MAX;
    search_orderings(g, &cells, 0, &mut order, &mut used, 0, &mut best);
    best
}

fn search_orderings(
    g: &UndirectedGraph,
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    code: u64,
    best: &mut u64,
) {
    let Some(members) = cells.get(cell) else {
        *best = (*best).min(code);
        return;
    };
    let placed_in_cell = members.iter().filter(|&&v| used[v]).count();
    if placed_in_cell == members.len() {
        search_orderings(g, cells, cell + 1, order, used, code, best);
        return;
    }
    let j = order.len();
    for &v in members {
        if used[v] {
            continue;
        }
        let mut next = code;
        for (i, &u) in order.iter().enumerate() {
            if g.has_edge(u, v) {
                next |= 1 << pair_bit(i, j);
            }
        }
        used[v] = true;
        order.push(v);
        search_orderings(g, cells, cell, order, used, next, best);
        order.pop();
        used[v] = false;
    }
}

/// `G_R^K` with the ids of its landmark vertices.
///
/// Layout for `n = |V(g)|`: copy `j` of vertex `i` is `j*n + i`; star `i`
/// occupies `q1*n + i*(q2+1) ..` with its center first; connector `v'_i` is
/// `(q1+q2+1)*n + i`; the `K-2` interior vertices of the connector path for
/// `i` follow after all connectors.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    pub graph: UndirectedGraph,
    pub connectors: Vec<usize>,
    pub star_centers: Vec<usize>,
}

pub fn gen_reduction_graph(
    g: &UndirectedGraph,
    hops: usize,
    q1: usize,
    q2: usize,
) -> Result<ReductionGraph> {
    let n = g.n();
    if hops < 2 {
        return Err(Error::InvalidParameter(format!(
            "K must be at least 2, got {hops}"
        )));
    }
    if n == 0 || q1 == 0 || q2 == 0 {
        return Err(Error::InvalidParameter(
            "reduction graph needs a non-empty g and positive q1, q2".into(),
        ));
    }
    let copy = |j: usize, i: usize| j * n + i;
    let star_base = q1 * n;
    let center = |i: usize| star_base + i * (q2 + 1);
    let conn_base = (q1 + q2 + 1) * n;
    let connector = |i: usize| conn_base + i;
    let interior_base = conn_base + n;
    let total = (q1 + q2 + hops) * n;

    let mut edges = Vec::new();
    for j in 0..q1 {
        edges.extend(g.edges().map(|(a, b)| (copy(j, a), copy(j, b))));
    }
    for i in 0..n {
        edges.extend((1..=q2).map(|l| (center(i), center(i) + l)));
        edges.extend((0..q1).map(|j| (connector(i), copy(j, i))));
        // path connector -> interior... -> center with hops-1 edges
        let mut prev = connector(i);
        for t in 0..hops - 2 {
            let w = interior_base + i * (hops - 2) + t;
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, center(i)));
    }
    Ok(ReductionGraph {
        graph: UndirectedGraph::new(total, edges)?,
        connectors: (0..n).map(connector).collect(),
        star_centers: (0..n).map(center).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectionParams {
    pub n_voters: usize,
    pub n_candidates: usize,
    pub approval_prob: f64,
    /// Fraction of candidates that are also voters.
    pub overlap: f64,
    /// Every candidate is a voter approving of at least one other candidate.
    pub require_other_approval: bool,
    pub setting: Setting,
    pub committee_size: usize,
}

/// Seeded random approval election.
///
/// Candidate `c` is voter `c` for `c < floor(overlap * m)` (all candidates
/// when `require_other_approval`). Ballots: for each voter, for each
/// candidate, one `next_f64` draw, approving when `< approval_prob`.
/// Candidate-voters then approve of themselves. With
/// `require_other_approval`, a candidate-voter approving no other candidate
/// draws `o = below(m - 1)` and approves `o` (or `o + 1` when `o >= c`).
pub fn gen_random_election(params: &ElectionParams, seed: u64) -> Result<ElectionInstance> {
    let ElectionParams {
        n_voters,
        n_candidates: m,
        approval_prob,
        overlap,
        require_other_approval,
        setting,
        committee_size,
    } = *params;
    if !(0.0..=1.0).contains(&approval_prob) || !(0.0..=1.0).contains(&overlap) {
        return Err(Error::InvalidParameter(
            "approval probability and overlap must lie in [0, 1]".into(),
        ));
    }
    let linked = if require_other_approval {
        if m < 2 {
            return Err(Error::InvalidParameter(
                "approving another candidate needs at least 2 candidates".into(),
            ));
        }
        m
    } else {
        (overlap * m as f64).floor() as usize
    };
    if linked > n_voters {
        return Err(Error::InvalidParameter(format!(
            "{linked} candidate-voters requested but only {n_voters} voters"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let mut approvals: Vec<BTreeSet<usize>> = (0..n_voters)
        .map(|_| (0..m).filter(|_| rng.chance(approval_prob)).collect())
        .collect();
    for (c, ballot) in approvals.iter_mut().enumerate().take(linked) {
        ballot.insert(c);
    }
    if require_other_approval {
        for (c, ballot) in approvals.iter_mut().enumerate().take(m) {
            if ballot.iter().all(|&d| d == c) {
                let o = rng.below(m - 1);
                ballot.insert(if o >= c { o + 1 } else { o });
            }
        }
    }
    let candidate_voter = (0..m).map(|c| (c < linked).then_some(c)).collect();
    ElectionInstance::new(m, approvals, candidate_voter, setting, committee_size)
}
