//! Vertex-indexed graphs, k-hop balls, spanning forests and rooted trees.
//!
//! Vertices are dense ids `0..n`. Adjacency lists are kept sorted so every
//! traversal visits neighbours in ascending id order, which makes greedy
//! traces and decompositions reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};

/// Simple undirected graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Like [`UndirectedGraph::new`] but silently drops duplicates and
    /// self-loops.
    pub fn from_edges_dedup<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::InvalidVertex { vertex: x, n });
                }
            }
            if u != v {
                set.insert((u.min(v), u.max(v)));
            }
        }
        Self::new(n, set)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u, v)),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    /// Closed k-hop neighbourhood `N_k[v]`, sorted ascending.
    pub fn k_hop_closed_neighborhood(&self, v: usize, k: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let mut out = self.ball(v, k, &mut vec![usize::MAX; self.n()]);
        out.sort_unstable();
        Ok(out)
    }

    /// BFS ball around `v` in discovery order. `dist` is scratch space of
    /// length n filled with `usize::MAX`; it is restored before returning.
    fn ball(&self, v: usize, k: usize, dist: &mut [usize]) -> Vec<usize> {
        let mut order = vec![v];
        dist[v] = 0;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            if dist[u] == k {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                }
            }
        }
        for &u in &order {
            dist[u] = usize::MAX;
        }
        order
    }

    /// `N_k[v]` for every vertex, each sorted ascending.
    pub fn all_balls(&self, k: usize) -> Vec<Vec<usize>> {
        let mut dist = vec![usize::MAX; self.n()];
        (0..self.n())
            .map(|v| {
                let mut b = self.ball(v, k, &mut dist);
                b.sort_unstable();
                b
            })
            .collect()
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        self.spanning_forest()
            .into_iter()
            .map(|t| t.vertices().collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// BFS spanning forest: one tree per component, rooted at the component's
    /// lowest id, children discovered in ascending id order.
    pub fn spanning_forest(&self) -> Vec<RootedTree> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut forest = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut parent = BTreeMap::new();
            parent.insert(root, root);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        parent.insert(w, u);
                        queue.push_back(w);
                    }
                }
            }
            forest.push(RootedTree::from_parent_map_unchecked(root, parent));
        }
        forest
    }

    /// Subgraph on the same vertex set keeping only the given edges.
    pub fn with_edges<I>(&self, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(self.n(), edges)
    }
}

/// Directed graph; arcs `(u, v)` with `u != v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedGraph {
    out: Vec<Vec<usize>>,
    arc_count: usize,
}

impl DirectedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            out: vec![Vec::new(); n],
            arc_count: 0,
        }
    }

    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::InvalidVertex { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.out[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u, v)),
            Err(pos) => {
                self.out[u].insert(pos, v);
                self.arc_count += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.out[u].binary_search(&v).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Underlying simple undirected graph: orientation dropped, antiparallel
    /// arcs merged.
    pub fn underlying(&self) -> UndirectedGraph {
        UndirectedGraph::from_edges_dedup(self.n(), self.arcs())
            .expect("arc endpoints are in range")
    }
}

/// A rooted tree over a subset of some host graph's vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    /// child -> parent; the root maps to itself.
    parent: BTreeMap<usize, usize>,
    /// parent -> children in ascending id order.
    children: BTreeMap<usize, Vec<usize>>,
}

impl RootedTree {
    pub fn singleton(v: usize) -> Self {
        Self::from_parent_map_unchecked(v, BTreeMap::from([(v, v)]))
    }

    /// Validates that `parent` describes a single tree hanging off `root`.
    pub fn from_parent_map(root: usize, parent: BTreeMap<usize, usize>) -> Result<Self> {
        match parent.get(&root) {
            Some(&r) if r == root => {}
            _ => {
                return Err(Error::MalformedTree(format!(
                    "root {root} must map to itself"
                )))
            }
        }
        for (&c, &p) in &parent {
            if c != root && c == p {
                return Err(Error::MalformedTree(format!("second root {c}")));
            }
            if !parent.contains_key(&p) {
                return Err(Error::MalformedTree(format!(
                    "parent {p} of {c} is not in the tree"
                )));
            }
        }
        let tree = Self::from_parent_map_unchecked(root, parent);
        // every vertex must reach the root; a cycle would leave some unvisited
        if tree.preorder().len() != tree.len() {
            return Err(Error::MalformedTree("parent map contains a cycle".into()));
        }
        Ok(tree)
    }

    fn from_parent_map_unchecked(root: usize, parent: BTreeMap<usize, usize>) -> Self {
        let mut children: BTreeMap<usize, Vec<usize>> =
            parent.keys().map(|&v| (v, Vec::new())).collect();
        for (&c, &p) in &parent {
            if c != root {
                children.get_mut(&p).expect("parent present").push(c);
            }
        }
        // BTreeMap iteration is ascending, so children lists are already sorted
        Self {
            root,
            parent,
            children,
        }
    }

    /// Roots the tree spanned by `edges` over `vertices` at `root`.
    pub fn from_edges(root: usize, vertices: &[usize], edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj: BTreeMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, vec![])).collect();
        if !adj.contains_key(&root) {
            return Err(Error::MalformedTree(format!(
                "root {root} not among vertices"
            )));
        }
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                adj.get_mut(&a)
                    .ok_or_else(|| Error::MalformedTree(format!("edge endpoint {a} not a vertex")))?
                    .push(b);
            }
        }
        if edges.len() + 1 != adj.len() {
            return Err(Error::MalformedTree(format!(
                "{} edges cannot span {} vertices as a tree",
                edges.len(),
                adj.len()
            )));
        }
        let mut parent = BTreeMap::from([(root, root)]);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[&u] {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(w) {
                    slot.insert(u);
                    queue.push_back(w);
                }
            }
        }
        if parent.len() != adj.len() {
            return Err(Error::MalformedTree(
                "edges do not connect all vertices".into(),
            ));
        }
        Ok(Self::from_parent_map_unchecked(root, parent))
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.parent.contains_key(&v)
    }

    /// Vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent.keys().copied()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent.get(&v).copied().filter(|&p| p != v)
    }

    pub fn children(&self, v: usize) -> &[usize] {
        self.children.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent
            .iter()
            .filter(|(c, p)| c != p)
            .map(|(&c, &p)| (p, c))
    }

    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        out
    }

    /// Post-order with children visited in ascending id order.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.children(v).iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Number of vertices in the subtree of each vertex.
    pub fn subtree_sizes(&self) -> BTreeMap<usize, usize> {
        let mut size = BTreeMap::new();
        for v in self.postorder() {
            let s = 1 + self.children(v).iter().map(|c| size[c]).sum::<usize>();
            size.insert(v, s);
        }
        size
    }

    /// `v` and all its descendants.
    pub fn descendants(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children(u));
        }
        out
    }

    /// Height of the subtree rooted at `v` (a leaf has height 0).
    pub fn height_from(&self, v: usize) -> usize {
        self.children(v)
            .iter()
            .map(|&c| 1 + self.height_from(c))
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> UndirectedGraph {
        UndirectedGraph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(UndirectedGraph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            UndirectedGraph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(1, 0))
        );
        assert_eq!(
            UndirectedGraph::new(3, [(0, 3)]),
            Err(Error::InvalidVertex { vertex: 3, n: 3 })
        );
        assert_eq!(DirectedGraph::new(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert!(DirectedGraph::new(2, [(0, 1), (1, 0)]).is_ok());
    }

    #[test]
    fn k_hop_examples() {
        let p5 = path(5);
        assert_eq!(p5.k_hop_closed_neighborhood(2, 1).unwrap(), vec![1, 2, 3]);
        assert_eq!(p5.k_hop_closed_neighborhood(0, 2).unwrap(), vec![0, 1, 2]);
        let s = star(4);
        assert_eq!(
            s.k_hop_closed_neighborhood(3, 2).unwrap(),
            vec![0, 1, 2, 3, 4]
        );
        assert_eq!(
            p5.k_hop_closed_neighborhood(5, 1),
            Err(Error::InvalidVertex { vertex: 5, n: 5 })
        );
    }

    #[test]
    fn spanning_forest_examples() {
        assert!(UndirectedGraph::empty(0).spanning_forest().is_empty());

        let tri = UndirectedGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = tri.spanning_forest();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].root(), 0);
        let mut edges: Vec<_> = f[0].edges().collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (0, 2)]);

        let two = UndirectedGraph::new(4, [(0, 1), (2, 3)]).unwrap();
        let roots: Vec<_> = two.spanning_forest().iter().map(RootedTree::root).collect();
        assert_eq!(roots, vec![0, 2]);
    }

    #[test]
    fn subtree_size_examples() {
        assert_eq!(
            RootedTree::singleton(7).subtree_sizes(),
            BTreeMap::from([(7, 1)])
        );
        let t = &path(5).spanning_forest()[0];
        let sizes: Vec<_> = (0..5).map(|v| t.subtree_sizes()[&v]).collect();
        assert_eq!(sizes, vec![5, 4, 3, 2, 1]);
        let s = &star(4).spanning_forest()[0];
        let sz = s.subtree_sizes();
        assert_eq!(sz[&0], 5);
        assert!((1..5).all(|v| sz[&v] == 1));
    }

    #[test]
    fn parent_map_validation() {
        assert!(RootedTree::from_parent_map(0, BTreeMap::from([(0, 0), (1, 0), (2, 1)])).is_ok());
        assert!(RootedTree::from_parent_map(0, BTreeMap::from([(0, 0), (1, 2), (2, 1)])).is_err());
        assert!(RootedTree::from_parent_map(0, BTreeMap::from([(0, 0), (1, 5)])).is_err());
        assert!(RootedTree::from_parent_map(0, BTreeMap::from([(0, 1), (1, 0)])).is_err());
    }

    #[test]
    fn reroot_from_edges() {
        let t =
            RootedTree::from_edges(2, &[0, 1, 2, 3, 4], &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(t.children(2), &[1, 3]);
        assert_eq!(t.parent(0), Some(1));
        assert_eq!(t.height_from(2), 2);
        assert!(RootedTree::from_edges(0, &[0, 1, 2], &[(0, 1)]).is_err());
    }

    #[test]
    fn underlying_merges_antiparallel_arcs() {
        let d = DirectedGraph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        let u = d.underlying();
        assert_eq!(u.edge_count(), 2);
        assert!(u.has_edge(2, 1));
    }
}
