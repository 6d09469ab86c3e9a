//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS formulation, O(V^3)).

use std::collections::VecDeque;

use crate::graph::{DirectedGraph, UndirectedGraph};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a UndirectedGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a UndirectedGraph) -> Self {
        let n = g.n();
        Self {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Grows an alternating tree from `root`; returns the free vertex that
    /// ends an augmenting path, if any.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn run(mut self) -> Vec<usize> {
        for v in 0..self.g.n() {
            if self.mate[v] == NONE {
                if let Some(end) = self.find_path(v) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }
}

/// A maximum matching of `g` as `(u, v)` pairs with `u < v`, sorted.
pub fn maximum_matching_undirected(g: &UndirectedGraph) -> Vec<(usize, usize)> {
    let mate = Blossom::new(g).run();
    mate.iter()
        .enumerate()
        .filter(|&(u, &v)| v != NONE && u < v)
        .map(|(u, &v)| (u, v))
        .collect()
}

/// Maximum matching of the underlying simple undirected graph of `d`.
pub fn maximum_matching(d: &DirectedGraph) -> Vec<(usize, usize)> {
    maximum_matching_undirected(&d.underlying())
}

/// True when `pairs` is a matching made of edges of `g`.
pub fn is_matching(g: &UndirectedGraph, pairs: &[(usize, usize)]) -> bool {
    let mut used = vec![false; g.n()];
    pairs.iter().all(|&(u, v)| {
        let ok = g.has_edge(u, v) && !used[u] && !used[v];
        if ok {
            used[u] = true;
            used[v] = true;
        }
        ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiparallel_arcs_collapse() {
        let d = DirectedGraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(maximum_matching(&d), vec![(0, 1)]);
    }

    #[test]
    fn directed_path() {
        let d = DirectedGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(maximum_matching(&d), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn odd_cycle() {
        let d = DirectedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let m = maximum_matching(&d);
        assert_eq!(m.len(), 2);
        assert!(is_matching(&d.underlying(), &m));
    }

    #[test]
    fn blossom_needs_contraction() {
        // triangle 0-1-2 with tails 0-3 and 2-4 and 1-5: perfect matching of 3
        let g = UndirectedGraph::new(6, [(0, 1), (1, 2), (0, 2), (0, 3), (2, 4), (1, 5)]).unwrap();
        let m = maximum_matching_undirected(&g);
        assert_eq!(m.len(), 3);
        assert!(is_matching(&g, &m));
    }

    #[test]
    fn petersen_is_perfect() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = UndirectedGraph::new(10, outer.chain(spokes).chain(inner)).unwrap();
        assert_eq!(maximum_matching_undirected(&g).len(), 5);
    }

    #[test]
    fn empty_graph() {
        assert!(maximum_matching_undirected(&UndirectedGraph::empty(4)).is_empty());
    }
}
