//! OPT-EXT(0,1): placing 0/1-valued objects on vertices so that as many
//! 0-holders as possible have a 1-holder neighbour. Solved by treating the
//! 1-holders as dominators (k = 1) and running the two-branch algorithm.

use serde::Serialize;

use crate::decomposition::algorithm2;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptExtInstance {
    graph: UndirectedGraph,
    /// Value of object `o` is `values[o]`.
    values: Vec<bool>,
}

impl OptExtInstance {
    /// With `pad`, fewer objects than vertices are topped up with 0-valued
    /// dummies; otherwise the counts must match. More objects than vertices
    /// is always rejected.
    pub fn new(graph: UndirectedGraph, mut values: Vec<bool>, pad: bool) -> Result<Self> {
        let n = graph.n();
        if values.len() > n || (values.len() < n && !pad) {
            return Err(Error::Instance(format!(
                "{} objects for {n} vertices",
                values.len()
            )));
        }
        values.resize(n, false);
        Ok(Self { graph, values })
    }

    /// `ones` objects of value 1 followed by zeros, padded to `n`.
    pub fn with_ones(graph: UndirectedGraph, ones: usize) -> Result<Self> {
        let n = graph.n();
        if ones > n {
            return Err(Error::Instance(format!(
                "{ones} valued objects for {n} vertices"
            )));
        }
        Self::new(graph, (0..n).map(|o| o < ones).collect(), false)
    }

    pub fn graph(&self) -> &UndirectedGraph {
        &self.graph
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Allocation {
    /// Object placed on each vertex.
    pub assign: Vec<usize>,
    pub externality: usize,
}

impl Allocation {
    /// Vertices that hold a 1-valued object.
    pub fn holders(&self, inst: &OptExtInstance) -> Vec<usize> {
        (0..self.assign.len())
            .filter(|&v| inst.values[self.assign[v]])
            .collect()
    }
}

/// Counts vertices holding a 0-object with at least one 1-holding neighbour.
pub fn externality_of_allocation(inst: &OptExtInstance, assign: &[usize]) -> Result<usize> {
    let n = inst.graph.n();
    if assign.len() != n {
        return Err(Error::InvalidAllocation(format!(
            "{} assignments for {n} vertices",
            assign.len()
        )));
    }
    let mut seen = vec![false; n];
    for &o in assign {
        if o >= n || std::mem::replace(&mut seen[o], true) {
            return Err(Error::InvalidAllocation(format!(
                "object {o} is out of range or assigned twice"
            )));
        }
    }
    let value = |v: usize| inst.values[assign[v]];
    Ok((0..n)
        .filter(|&v| !value(v) && inst.graph.neighbors(v).iter().any(|&u| value(u)))
        .count())
}

/// Places the 1-objects (ascending id) on the two-branch dominator set
/// (ascending id) and the 0-objects on the remaining vertices.
pub fn reduce_and_solve(inst: &OptExtInstance) -> Result<Allocation> {
    let n = inst.graph.n();
    let p = inst.ones();
    let holders: Vec<usize> = if p == 0 || p == n {
        (0..p).collect()
    } else {
        algorithm2(&inst.graph, p, 1, 1)?.sorted_dominators()
    };
    let mut is_holder = vec![false; n];
    for &v in &holders {
        is_holder[v] = true;
    }
    let ones = (0..n).filter(|&o| inst.values[o]);
    let zeros = (0..n).filter(|&o| !inst.values[o]);
    let mut assign = vec![usize::MAX; n];
    for (v, o) in holders.iter().copied().zip(ones) {
        assign[v] = o;
    }
    for (v, o) in (0..n).filter(|&v| !is_holder[v]).zip(zeros) {
        assign[v] = o;
    }
    let externality = externality_of_allocation(inst, &assign)?;
    Ok(Allocation {
        assign,
        externality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::ext_count;

    fn star(leaves: usize) -> UndirectedGraph {
        UndirectedGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn externality_examples() {
        let inst = OptExtInstance::with_ones(star(4), 1).unwrap();
        // object 0 is the only 1-object
        assert_eq!(
            externality_of_allocation(&inst, &[0, 1, 2, 3, 4]).unwrap(),
            4
        );
        assert_eq!(
            externality_of_allocation(&inst, &[1, 0, 2, 3, 4]).unwrap(),
            1
        );
        let all = OptExtInstance::with_ones(star(4), 5).unwrap();
        assert_eq!(
            externality_of_allocation(&all, &[0, 1, 2, 3, 4]).unwrap(),
            0
        );
    }

    #[test]
    fn invalid_allocations() {
        let inst = OptExtInstance::with_ones(star(2), 1).unwrap();
        assert!(matches!(
            externality_of_allocation(&inst, &[0, 0, 1]),
            Err(Error::InvalidAllocation(_))
        ));
        assert!(externality_of_allocation(&inst, &[0, 1]).is_err());
        assert!(externality_of_allocation(&inst, &[0, 1, 7]).is_err());
    }

    #[test]
    fn padding_rules() {
        let padded = OptExtInstance::new(star(3), vec![true], true).unwrap();
        assert_eq!(padded.values(), &[true, false, false, false]);
        assert!(OptExtInstance::new(star(3), vec![true], false).is_err());
        assert!(OptExtInstance::new(star(1), vec![true, false, true], true).is_err());
    }

    #[test]
    fn solve_examples() {
        let inst = OptExtInstance::with_ones(star(4), 1).unwrap();
        let a = reduce_and_solve(&inst).unwrap();
        assert_eq!(a.assign[0], 0);
        assert_eq!(a.externality, 4);

        let inst = OptExtInstance::with_ones(path(5), 2).unwrap();
        let a = reduce_and_solve(&inst).unwrap();
        assert_eq!(a.externality, 3);
        assert_eq!(a.holders(&inst), vec![1, 3]);
        assert_eq!(ext_count(inst.graph(), &a.holders(&inst), 1).unwrap(), 3);

        let inst = OptExtInstance::with_ones(path(5), 5).unwrap();
        assert_eq!(reduce_and_solve(&inst).unwrap().externality, 0);
        let inst = OptExtInstance::with_ones(path(5), 0).unwrap();
        assert_eq!(reduce_and_solve(&inst).unwrap().externality, 0);
    }
}
