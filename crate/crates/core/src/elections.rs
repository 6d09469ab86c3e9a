//! External representation in approval elections.
//!
//! Voters are `0..n_voters`, candidates `0..n_candidates`. A candidate may
//! also be a voter; that identity link is what lets committee members be
//! recognised as internally represented.
//!
//! Two evaluation settings are supported:
//! * non-secrecy: `ext(C) = |∪_{c ∈ C} S_c \ C|` with real identities;
//! * rational-candidate: `ext(C) = rep(C) - |C_v|`, where `C_v` are the
//!   members who are voters and are assumed to approve of themselves.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::matching::maximum_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Setting {
    NonSecrecy,
    RationalCandidate,
}

impl Setting {
    pub fn as_str(self) -> &'static str {
        match self {
            Setting::NonSecrecy => "non-secrecy",
            Setting::RationalCandidate => "rational-candidate",
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Setting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "non-secrecy" => Ok(Setting::NonSecrecy),
            "rational-candidate" => Ok(Setting::RationalCandidate),
            other => Err(Error::InvalidParameter(format!(
                "unknown setting `{other}`"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionInstance {
    approvals: Vec<BTreeSet<usize>>,
    supporters: Vec<BTreeSet<usize>>,
    candidate_voter: Vec<Option<usize>>,
    voter_candidate: Vec<Option<usize>>,
    setting: Setting,
    committee_size: usize,
}

impl ElectionInstance {
    /// `approvals[v]` is the ballot of voter `v`; `candidate_voter[c]` is the
    /// voter identity of candidate `c`, if any.
    pub fn new(
        n_candidates: usize,
        approvals: Vec<BTreeSet<usize>>,
        candidate_voter: Vec<Option<usize>>,
        setting: Setting,
        committee_size: usize,
    ) -> Result<Self> {
        let n_voters = approvals.len();
        if candidate_voter.len() != n_candidates {
            return Err(Error::Instance(format!(
                "identity table has {} entries for {n_candidates} candidates",
                candidate_voter.len()
            )));
        }
        let mut supporters = vec![BTreeSet::new(); n_candidates];
        for (v, ballot) in approvals.iter().enumerate() {
            for &c in ballot {
                if c >= n_candidates {
                    return Err(Error::InvalidCandidate {
                        candidate: c,
                        m: n_candidates,
                    });
                }
                supporters[c].insert(v);
            }
        }
        let mut voter_candidate = vec![None; n_voters];
        for (c, &v) in candidate_voter.iter().enumerate() {
            let Some(v) = v else { continue };
            if v >= n_voters {
                return Err(Error::InvalidVoter {
                    voter: v,
                    n: n_voters,
                });
            }
            if let Some(other) = voter_candidate[v].replace(c) {
                return Err(Error::Instance(format!(
                    "voter {v} is linked to candidates {other} and {c}"
                )));
            }
            if setting == Setting::RationalCandidate && !approvals[v].contains(&c) {
                return Err(Error::SettingViolation(format!(
                    "candidate {c} votes as voter {v} without approving of itself"
                )));
            }
        }
        Ok(Self {
            approvals,
            supporters,
            candidate_voter,
            voter_candidate,
            setting,
            committee_size,
        })
    }

    pub fn n_voters(&self) -> usize {
        self.approvals.len()
    }

    pub fn n_candidates(&self) -> usize {
        self.supporters.len()
    }

    pub fn setting(&self) -> Setting {
        self.setting
    }

    pub fn committee_size(&self) -> usize {
        self.committee_size
    }

    pub fn with_committee_size(&self, p: usize) -> Self {
        Self {
            committee_size: p,
            ..self.clone()
        }
    }

    pub fn with_setting(&self, setting: Setting) -> Result<Self> {
        Self::new(
            self.n_candidates(),
            self.approvals.clone(),
            self.candidate_voter.clone(),
            setting,
            self.committee_size,
        )
    }

    /// `vote_v`.
    pub fn ballot(&self, v: usize) -> &BTreeSet<usize> {
        &self.approvals[v]
    }

    /// `S_c`: voters approving of `c`.
    pub fn supporters(&self, c: usize) -> &BTreeSet<usize> {
        &self.supporters[c]
    }

    pub fn voter_of(&self, c: usize) -> Option<usize> {
        self.candidate_voter[c]
    }

    pub fn candidate_of(&self, v: usize) -> Option<usize> {
        self.voter_candidate[v]
    }

    pub fn candidate_voters(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.candidate_voter
            .iter()
            .enumerate()
            .filter_map(|(c, v)| v.map(|v| (c, v)))
    }

    fn check_committee(&self, committee: &[usize]) -> Result<BTreeSet<usize>> {
        let m = self.n_candidates();
        committee
            .iter()
            .map(|&c| {
                if c < m {
                    Ok(c)
                } else {
                    Err(Error::InvalidCandidate { candidate: c, m })
                }
            })
            .collect()
    }

    fn represented(&self, committee: &BTreeSet<usize>) -> BTreeSet<usize> {
        committee
            .iter()
            .flat_map(|&c| self.supporters[c].iter().copied())
            .collect()
    }

    /// True when every candidate is a voter approving of some other
    /// candidate.
    pub fn every_candidate_approves_another(&self) -> bool {
        (0..self.n_candidates()).all(|c| {
            self.candidate_voter[c].is_some_and(|v| self.approvals[v].iter().any(|&d| d != c))
        })
    }
}

/// `rep(C) = |∪_{c ∈ C} S_c|`.
pub fn represented_count(inst: &ElectionInstance, committee: &[usize]) -> Result<usize> {
    let committee = inst.check_committee(committee)?;
    Ok(inst.represented(&committee).len())
}

/// Externally represented voters under the instance's setting.
pub fn external_rep_count(inst: &ElectionInstance, committee: &[usize]) -> Result<usize> {
    let committee = inst.check_committee(committee)?;
    let represented = inst.represented(&committee);
    Ok(match inst.setting {
        Setting::NonSecrecy => represented
            .iter()
            .filter(|&&v| !inst.voter_candidate[v].is_some_and(|c| committee.contains(&c)))
            .count(),
        Setting::RationalCandidate => {
            let members_voting = committee
                .iter()
                .filter(|&&c| inst.candidate_voter[c].is_some())
                .count();
            represented.len() - members_voting
        }
    })
}

/// Every candidate approves of itself; candidates that are not voters get a
/// fresh voter id (after all real voters, in candidate order) whose only
/// approval is that candidate. `ext` is unchanged for every committee and
/// equals `rep(C) - |C|` on the result.
pub fn self_approval_closure(inst: &ElectionInstance) -> ElectionInstance {
    let mut approvals = inst.approvals.clone();
    let mut candidate_voter = inst.candidate_voter.clone();
    for (c, identity) in candidate_voter.iter_mut().enumerate() {
        match *identity {
            Some(v) => {
                approvals[v].insert(c);
            }
            None => {
                *identity = Some(approvals.len());
                approvals.push(BTreeSet::from([c]));
            }
        }
    }
    ElectionInstance::new(
        inst.n_candidates(),
        approvals,
        candidate_voter,
        inst.setting,
        inst.committee_size,
    )
    .expect("closure preserves validity")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Committee {
    /// Ascending candidate ids.
    pub members: Vec<usize>,
    pub rep_value: usize,
    pub ext_value: usize,
}

impl Committee {
    pub fn evaluate(inst: &ElectionInstance, members: &[usize]) -> Result<Self> {
        let mut members = members.to_vec();
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            rep_value: represented_count(inst, &members)?,
            ext_value: external_rep_count(inst, &members)?,
            members,
        })
    }
}

fn check_size(inst: &ElectionInstance) -> Result<usize> {
    let p = inst.committee_size;
    if p > inst.n_candidates() {
        return Err(Error::InfeasibleCardinality {
            requested: p,
            available: inst.n_candidates(),
        });
    }
    Ok(p)
}

/// Coverage greedy on the self-approval closure (ties to the lowest id),
/// evaluated on the original instance.
pub fn greedy_committee(inst: &ElectionInstance) -> Result<Committee> {
    let p = check_size(inst)?;
    let closed = self_approval_closure(inst);
    let mut covered = vec![false; closed.n_voters()];
    let mut chosen: Vec<usize> = Vec::with_capacity(p);
    let mut taken = vec![false; inst.n_candidates()];
    for _ in 0..p {
        let (best, _) = (0..inst.n_candidates())
            .filter(|&c| !taken[c])
            .map(|c| {
                let gain = closed.supporters[c]
                    .iter()
                    .filter(|&&v| !covered[v])
                    .count();
                (c, gain)
            })
            // max_by_key keeps the last maximum; reverse so the lowest id wins
            .rev()
            .max_by_key(|&(_, gain)| gain)
            .expect("p <= m leaves a candidate");
        taken[best] = true;
        chosen.push(best);
        for &v in &closed.supporters[best] {
            covered[v] = true;
        }
    }
    Committee::evaluate(inst, &chosen)
}

/// Approval digraph over the shared identity namespace: nodes `0..n_voters`
/// are voters, followed by one node per candidate that is not a voter. Arcs
/// go from a voter to each candidate it approves; self-approvals are
/// dropped.
#[derive(Debug, Clone)]
pub struct ApprovalGraph {
    pub graph: DirectedGraph,
    /// Node of each candidate.
    pub candidate_node: Vec<usize>,
    /// Candidate at each node, if any.
    pub node_candidate: Vec<Option<usize>>,
}

pub fn approval_graph(inst: &ElectionInstance) -> ApprovalGraph {
    let nv = inst.n_voters();
    let mut candidate_node = Vec::with_capacity(inst.n_candidates());
    let mut node_candidate: Vec<Option<usize>> = inst.voter_candidate.clone();
    for c in 0..inst.n_candidates() {
        match inst.candidate_voter[c] {
            Some(v) => candidate_node.push(v),
            None => {
                candidate_node.push(node_candidate.len());
                node_candidate.push(Some(c));
            }
        }
    }
    let mut graph = DirectedGraph::empty(node_candidate.len());
    for v in 0..nv {
        for &c in &inst.approvals[v] {
            let node = candidate_node[c];
            if node != v {
                graph.add_arc(v, node).expect("distinct in-range arc");
            }
        }
    }
    ApprovalGraph {
        graph,
        candidate_node,
        node_candidate,
    }
}

/// Committee built from a maximum matching of the approval graph.
///
/// Matched edges are scanned in ascending order. From each edge one endpoint
/// that is a candidate approved by the other endpoint is elected (the lower
/// node when both qualify) and the other endpoint is reserved as its
/// externally represented partner. Remaining seats go to the lowest-id
/// candidates that are neither elected nor reserved, and only then to
/// reserved partners.
pub fn matching_committee(inst: &ElectionInstance) -> Result<Committee> {
    if inst.setting != Setting::NonSecrecy {
        return Err(Error::WrongSetting {
            required: "non-secrecy",
        });
    }
    let p = check_size(inst)?;
    let ag = approval_graph(inst);
    let matching = maximum_matching(&ag.graph);

    let n_nodes = ag.node_candidate.len();
    let mut elected = vec![false; inst.n_candidates()];
    let mut reserved = vec![false; n_nodes];
    let mut seats = p;
    for &(x, y) in &matching {
        if seats == 0 {
            break;
        }
        let pick = [(x, y), (y, x)].into_iter().find(|&(e, o)| {
            ag.node_candidate[e].is_some_and(|c| !elected[c])
                && ag.graph.has_arc(o, e)
                && !reserved[e]
                && !ag.node_candidate[o].is_some_and(|c| elected[c])
        });
        if let Some((e, o)) = pick {
            elected[ag.node_candidate[e].expect("checked")] = true;
            reserved[o] = true;
            seats -= 1;
        }
    }
    let fill_order = (0..inst.n_candidates())
        .filter(|&c| !reserved[ag.candidate_node[c]])
        .chain((0..inst.n_candidates()).filter(|&c| reserved[ag.candidate_node[c]]));
    for c in fill_order {
        if seats == 0 {
            break;
        }
        if !elected[c] {
            elected[c] = true;
            seats -= 1;
        }
    }
    let members: Vec<usize> = (0..inst.n_candidates()).filter(|&c| elected[c]).collect();
    Committee::evaluate(inst, &members)
}

/// Non-secrecy: the better of the greedy and matching committees (ties keep
/// greedy). Rational-candidate: the greedy committee.
pub fn solve_ext_representation(inst: &ElectionInstance) -> Result<Committee> {
    let greedy = greedy_committee(inst)?;
    if inst.setting == Setting::RationalCandidate {
        return Ok(greedy);
    }
    let matched = matching_committee(inst)?;
    Ok(if matched.ext_value > greedy.ext_value {
        matched
    } else {
        greedy
    })
}

/// The nine-voter, three-candidate instance on which the standard and the
/// external rule disagree. Voter `i` and candidate `i` (1-based labels) are
/// the same person for `i = 1, 2, 3`.
pub fn rule_divergence_instance(p: usize) -> ElectionInstance {
    let supporters: [&[usize]; 3] = [&[1, 2, 3, 4], &[5, 6, 7], &[1, 8, 9]];
    let mut approvals = vec![BTreeSet::new(); 9];
    for (c, voters) in supporters.iter().enumerate() {
        for &v in *voters {
            approvals[v - 1].insert(c);
        }
    }
    ElectionInstance::new(
        3,
        approvals,
        vec![Some(0), Some(1), Some(2)],
        Setting::NonSecrecy,
        p,
    )
    .expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obs2() -> ElectionInstance {
        rule_divergence_instance(2)
    }

    #[test]
    fn represented_examples() {
        let inst = obs2();
        assert_eq!(represented_count(&inst, &[0, 1]).unwrap(), 7);
        assert_eq!(represented_count(&inst, &[1, 2]).unwrap(), 6);
        assert_eq!(represented_count(&inst, &[]).unwrap(), 0);
        assert_eq!(
            represented_count(&inst, &[3]),
            Err(Error::InvalidCandidate { candidate: 3, m: 3 })
        );
    }

    #[test]
    fn external_examples() {
        let inst = obs2();
        assert_eq!(external_rep_count(&inst, &[0, 1]).unwrap(), 5);
        assert_eq!(external_rep_count(&inst, &[1, 2]).unwrap(), 6);
        assert_eq!(external_rep_count(&inst, &[0, 2]).unwrap(), 4);

        // rational-candidate with no voting members: ext = rep
        let rc = ElectionInstance::new(
            2,
            vec![BTreeSet::from([0]), BTreeSet::from([0, 1]), BTreeSet::new()],
            vec![None, None],
            Setting::RationalCandidate,
            1,
        )
        .unwrap();
        for c in [vec![0], vec![1], vec![0, 1]] {
            assert_eq!(
                external_rep_count(&rc, &c).unwrap(),
                represented_count(&rc, &c).unwrap()
            );
        }
    }

    #[test]
    fn closure_examples() {
        let inst = obs2();
        let closed = self_approval_closure(&inst);
        assert_eq!(closed.supporters(0), &BTreeSet::from([0, 1, 2, 3]));
        assert_eq!(closed.supporters(1), &BTreeSet::from([1, 4, 5, 6]));
        assert_eq!(closed.supporters(2), &BTreeSet::from([0, 2, 7, 8]));
        assert_eq!(represented_count(&closed, &[1, 2]).unwrap() - 2, 6);
        assert_eq!(external_rep_count(&closed, &[1, 2]).unwrap(), 6);

        // fixed point
        assert_eq!(self_approval_closure(&closed), closed);

        // non-voter candidate gets a synthetic voter
        let inst = ElectionInstance::new(
            1,
            vec![BTreeSet::from([0])],
            vec![None],
            Setting::NonSecrecy,
            1,
        )
        .unwrap();
        let closed = self_approval_closure(&inst);
        assert_eq!(closed.n_voters(), 2);
        assert_eq!(closed.ballot(1), &BTreeSet::from([0]));
        assert_eq!(closed.voter_of(0), Some(1));
    }

    #[test]
    fn rational_candidate_requires_self_approval() {
        let err = ElectionInstance::new(
            1,
            vec![BTreeSet::new()],
            vec![Some(0)],
            Setting::RationalCandidate,
            1,
        );
        assert!(matches!(err, Err(Error::SettingViolation(_))));
    }

    #[test]
    fn duplicate_identity_rejected() {
        let err = ElectionInstance::new(
            2,
            vec![BTreeSet::new()],
            vec![Some(0), Some(0)],
            Setting::NonSecrecy,
            1,
        );
        assert!(matches!(err, Err(Error::Instance(_))));
    }

    #[test]
    fn greedy_examples() {
        let c = greedy_committee(&rule_divergence_instance(1)).unwrap();
        assert_eq!((c.members.clone(), c.ext_value), (vec![0], 3));

        let full = greedy_committee(&rule_divergence_instance(3)).unwrap();
        assert_eq!(full.members, vec![0, 1, 2]);
        // everyone represented, minus the three members
        assert_eq!(full.ext_value, 6);

        // every voter approves candidate 0, who is not a voter
        let inst = ElectionInstance::new(
            2,
            vec![BTreeSet::from([0]); 4],
            vec![None, None],
            Setting::NonSecrecy,
            1,
        )
        .unwrap();
        let c = greedy_committee(&inst).unwrap();
        assert_eq!((c.members.clone(), c.ext_value), (vec![0], 4));

        assert!(matches!(
            greedy_committee(&rule_divergence_instance(4)),
            Err(Error::InfeasibleCardinality { .. })
        ));
    }

    #[test]
    fn matching_examples() {
        // voter 0 approves candidate 0, who is not a voter
        let inst = ElectionInstance::new(
            1,
            vec![BTreeSet::from([0])],
            vec![None],
            Setting::NonSecrecy,
            1,
        )
        .unwrap();
        let c = matching_committee(&inst).unwrap();
        assert_eq!(c.members, vec![0]);
        assert!(c.ext_value >= 1);

        let c = matching_committee(&obs2()).unwrap();
        assert_eq!(c.members.len(), 2);
        assert!(c.ext_value >= 2);

        let empty = ElectionInstance::new(
            3,
            vec![BTreeSet::new(); 4],
            vec![None, Some(1), None],
            Setting::NonSecrecy,
            2,
        )
        .unwrap();
        let c = matching_committee(&empty).unwrap();
        assert_eq!((c.members.clone(), c.ext_value), (vec![0, 1], 0));

        assert!(obs2().with_setting(Setting::RationalCandidate).is_err());
        let rc = self_approval_closure(&obs2())
            .with_setting(Setting::RationalCandidate)
            .unwrap();
        assert_eq!(
            matching_committee(&rc),
            Err(Error::WrongSetting {
                required: "non-secrecy"
            })
        );
    }

    #[test]
    fn solve_examples() {
        // greedy elects candidates 0 and 1; the matching is {0,3},{1,4},{2,7}, whose
        // first two edges elect the same committee. Both reach 5 of the optimal 6.
        let c = solve_ext_representation(&obs2()).unwrap();
        assert_eq!((c.members.clone(), c.ext_value), (vec![0, 1], 5));
        assert!(crate::bounds::meets_bound(
            5,
            6,
            crate::bounds::greedy_ext_ratio()
        ));
        let full = solve_ext_representation(&rule_divergence_instance(3)).unwrap();
        assert_eq!(full.members, vec![0, 1, 2]);
        assert_eq!(
            full,
            greedy_committee(&rule_divergence_instance(3)).unwrap()
        );
    }

    #[test]
    fn approval_graph_drops_self_arcs() {
        let ag = approval_graph(&obs2());
        assert_eq!(ag.graph.n(), 9);
        assert!(!ag.graph.has_arc(0, 0));
        assert!(ag.graph.has_arc(1, 0));
        assert!(ag.graph.has_arc(4, 1));
        assert_eq!(ag.graph.arc_count(), 4 + 3 + 3 - 1);
    }
}
