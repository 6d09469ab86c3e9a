//! Tree decomposition into minimal rooted components, `S(n,m)`
//! classification with center designation, and the two-branch solver that
//! keeps the better of greedy on the input graph and greedy on the
//! decomposed auxiliary graph.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::domination::{greedy_dominators, DominationSolution, TieBreak};
use crate::error::{Error, Result};
use crate::graph::{RootedTree, UndirectedGraph};

/// One rooted piece emitted by [`decompose_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeComponent {
    /// Rooted at the chosen vertex `u_i`.
    pub tree: RootedTree,
    /// The whole remaining tree was folded into this component because what
    /// would have been left over was too small.
    pub absorbed_remainder: bool,
}

impl TreeComponent {
    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

/// Splits `t` into rooted components of at least `k + 1 + delta` vertices.
///
/// Each round picks the first vertex in post-order (children ascending) whose
/// remaining subtree reaches the threshold; such a subtree is minimal, i.e.
/// every child subtree has at most `k + delta` vertices. When detaching it
/// would leave a non-empty remainder below the threshold, the whole remainder
/// joins the component, still rooted at the chosen vertex.
pub fn decompose_tree(t: &RootedTree, delta: usize, k: usize) -> Result<Vec<TreeComponent>> {
    check_params(delta, k)?;
    let threshold = k + 1 + delta;
    if t.len() < threshold {
        return Ok(vec![TreeComponent {
            tree: t.clone(),
            absorbed_remainder: false,
        }]);
    }

    let mut remaining = t.clone();
    let mut components = Vec::new();
    while !remaining.is_empty() {
        let sizes = remaining.subtree_sizes();
        let chosen = remaining
            .postorder()
            .into_iter()
            .find(|v| sizes[v] >= threshold)
            .expect("remaining tree always meets the threshold at its root");
        let picked: BTreeSet<usize> = remaining.descendants(chosen).into_iter().collect();
        let rest = remaining.len() - picked.len();

        if rest > 0 && rest < threshold {
            let vertices: Vec<usize> = remaining.vertices().collect();
            let edges: Vec<_> = remaining.edges().collect();
            components.push(TreeComponent {
                tree: RootedTree::from_edges(chosen, &vertices, &edges)?,
                absorbed_remainder: true,
            });
            break;
        }

        let vertices: Vec<usize> = picked.iter().copied().collect();
        let edges: Vec<_> = remaining
            .edges()
            .filter(|(p, c)| picked.contains(p) && picked.contains(c))
            .collect();
        components.push(TreeComponent {
            tree: RootedTree::from_edges(chosen, &vertices, &edges)?,
            absorbed_remainder: false,
        });
        if rest == 0 {
            break;
        }
        let left: Vec<usize> = remaining
            .vertices()
            .filter(|v| !picked.contains(v))
            .collect();
        let left_edges: Vec<_> = remaining
            .edges()
            .filter(|(p, c)| !picked.contains(p) && !picked.contains(c))
            .collect();
        remaining = RootedTree::from_edges(remaining.root(), &left, &left_edges)?;
    }
    Ok(components)
}

fn check_params(delta: usize, k: usize) -> Result<()> {
    if delta > 1 {
        return Err(Error::InvalidParameter(format!(
            "delta must be 0 or 1, got {delta}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter(
            "hop radius k must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Membership in `S(leaves, pendants)`: a hub with `leaves` leaf neighbours
/// and `pendants` neighbours that each carry exactly one further leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SnmClass {
    pub hub: usize,
    pub leaves: usize,
    pub pendants: usize,
}

impl SnmClass {
    pub fn is_path_of_five(&self) -> bool {
        self.leaves == 0 && self.pendants == 2
    }
}

/// Shape of `tree` when read with `hub` as `u_0`, if it is an `S(n,m)` tree.
fn shape_at(tree: &RootedTree, hub: usize) -> Option<SnmClass> {
    let neighbors = |v: usize| -> Vec<usize> {
        tree.children(v)
            .iter()
            .copied()
            .chain(tree.parent(v))
            .collect()
    };
    let (mut leaves, mut pendants) = (0, 0);
    for c in neighbors(hub) {
        let further: Vec<usize> = neighbors(c).into_iter().filter(|&w| w != hub).collect();
        match further.as_slice() {
            [] => leaves += 1,
            [w] if neighbors(*w).len() == 1 => pendants += 1,
            _ => return None,
        }
    }
    Some(SnmClass {
        hub,
        leaves,
        pendants,
    })
}

/// Classifies a component of `Decomposition(T, 1, 1)`.
///
/// The component root is used as `u_0` whenever that reading has
/// `leaves + pendants >= 2`. The only other shape such components take is a
/// three-vertex path hanging from an endpoint, which is re-read with its
/// middle vertex as hub (`S(2,0)`).
pub fn classify_component(c: &TreeComponent) -> Result<SnmClass> {
    let tree = &c.tree;
    if tree.len() < 3 {
        return Err(Error::Structural(format!(
            "component rooted at {} has {} vertices; at least 3 required",
            c.root(),
            tree.len()
        )));
    }
    if let Some(class) = shape_at(tree, tree.root()) {
        if class.leaves + class.pendants >= 2 {
            return Ok(class);
        }
    }
    tree.vertices()
        .filter_map(|v| shape_at(tree, v))
        .find(|s| s.leaves + s.pendants >= 2)
        .ok_or_else(|| {
            Error::Structural(format!(
                "component rooted at {} ({} vertices) has no S(n,m) hub",
                c.root(),
                tree.len()
            ))
        })
}

/// The hub, except for five-vertex paths where the lower-id hub neighbour is
/// used.
pub fn designate_center(c: &TreeComponent) -> Result<usize> {
    let class = classify_component(c)?;
    Ok(center_of(&c.tree, &class))
}

fn center_of(tree: &RootedTree, class: &SnmClass) -> usize {
    if class.is_path_of_five() {
        tree.children(class.hub)
            .iter()
            .copied()
            .chain(tree.parent(class.hub))
            .min()
            .expect("S(0,2) hub has two neighbours")
    } else {
        class.hub
    }
}

/// Spanning-forest components decomposed and unioned into one graph over the
/// original vertex set.
#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    pub graph: UndirectedGraph,
    pub components: Vec<TreeComponent>,
    /// Class of each component, when one was computed (delta = 1, k = 1,
    /// at least three vertices).
    pub classes: Vec<Option<SnmClass>>,
    pub centers: BTreeSet<usize>,
    pub delta: usize,
    pub k: usize,
}

impl AuxiliaryGraph {
    fn tie_break(&self) -> TieBreak {
        if self.delta == 1 && self.k == 1 {
            TieBreak::center_priority(self.centers.clone())
        } else {
            TieBreak::LowestId
        }
    }
}

pub fn build_auxiliary_graph(
    g: &UndirectedGraph,
    delta: usize,
    k: usize,
) -> Result<AuxiliaryGraph> {
    check_params(delta, k)?;
    let mut components = Vec::new();
    for tree in g.spanning_forest() {
        components.extend(decompose_tree(&tree, delta, k)?);
    }
    let mut edges = Vec::new();
    let mut classes = Vec::with_capacity(components.len());
    let mut centers = BTreeSet::new();
    for c in &components {
        edges.extend(c.tree.edges());
        let class = if delta == 1 && k == 1 && c.len() >= 3 {
            let class = classify_component(c)?;
            centers.insert(center_of(&c.tree, &class));
            Some(class)
        } else {
            None
        };
        classes.push(class);
    }
    Ok(AuxiliaryGraph {
        graph: g.with_edges(edges)?,
        components,
        classes,
        centers,
        delta,
        k,
    })
}

/// Which greedy run produced the returned dominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    Original,
    Auxiliary,
}

/// Result of [`algorithm2_detailed`]; both candidates are evaluated on the
/// original graph.
#[derive(Debug, Clone, Serialize)]
pub struct TwoBranchOutcome {
    pub best: DominationSolution,
    pub branch: Branch,
    pub original: DominationSolution,
    pub auxiliary: DominationSolution,
}

/// Best of greedy on `g` (lowest-id ties) and greedy on the auxiliary graph
/// (center-priority ties when `delta = 1, k = 1`), compared by `ext` on `g`.
/// Ties keep the `g` branch.
pub fn algorithm2(
    g: &UndirectedGraph,
    p: usize,
    k: usize,
    delta: usize,
) -> Result<DominationSolution> {
    algorithm2_detailed(g, p, k, delta).map(|o| o.best)
}

pub fn algorithm2_detailed(
    g: &UndirectedGraph,
    p: usize,
    k: usize,
    delta: usize,
) -> Result<TwoBranchOutcome> {
    if p > g.n() {
        return Err(Error::InfeasibleCardinality {
            requested: p,
            available: g.n(),
        });
    }
    let aux = build_auxiliary_graph(g, delta, k)?;
    let original = greedy_dominators(g, p, k, &TieBreak::LowestId)?.solution();
    let aux_trace = greedy_dominators(&aux.graph, p, k, &aux.tie_break())?;
    let auxiliary = DominationSolution::evaluate(g, aux_trace.dominators(), k)?;
    let (best, branch) = if auxiliary.ext_value > original.ext_value {
        (auxiliary.clone(), Branch::Auxiliary)
    } else {
        (original.clone(), Branch::Original)
    };
    Ok(TwoBranchOutcome {
        best,
        branch,
        original,
        auxiliary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn path(n: usize) -> UndirectedGraph {
        UndirectedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn rooted(root: usize, edges: &[(usize, usize)]) -> RootedTree {
        let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.push(root);
        vs.sort_unstable();
        vs.dedup();
        RootedTree::from_edges(root, &vs, edges).unwrap()
    }

    fn vertex_sets(cs: &[TreeComponent]) -> Vec<Vec<usize>> {
        cs.iter().map(|c| c.tree.vertices().collect()).collect()
    }

    #[test]
    fn single_vertex_below_threshold() {
        let cs = decompose_tree(&RootedTree::singleton(0), 1, 1).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 1);
        assert!(!cs[0].absorbed_remainder);
    }

    #[test]
    fn path_of_five_delta_one_is_absorbed() {
        let t = &path(5).spanning_forest()[0];
        let cs = decompose_tree(t, 1, 1).unwrap();
        assert_eq!(vertex_sets(&cs), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(cs[0].root(), 2);
        assert!(cs[0].absorbed_remainder);
        let class = classify_component(&cs[0]).unwrap();
        assert_eq!((class.hub, class.leaves, class.pendants), (2, 0, 2));
        assert_eq!(designate_center(&cs[0]).unwrap(), 1);
    }

    #[test]
    fn path_of_five_delta_zero() {
        let t = &path(5).spanning_forest()[0];
        let cs = decompose_tree(t, 0, 1).unwrap();
        assert_eq!(vertex_sets(&cs), vec![vec![3, 4], vec![0, 1, 2]]);
        assert_eq!(cs[0].root(), 3);
        assert_eq!(cs[1].root(), 1);
        assert!(!cs[0].absorbed_remainder);
        assert!(cs[1].absorbed_remainder);
    }

    #[test]
    fn classify_examples() {
        let star = TreeComponent {
            tree: rooted(0, &[(0, 1), (0, 2)]),
            absorbed_remainder: false,
        };
        let c = classify_component(&star).unwrap();
        assert_eq!((c.leaves, c.pendants), (2, 0));
        assert_eq!(designate_center(&star).unwrap(), 0);

        let spider = TreeComponent {
            tree: rooted(0, &[(0, 1), (0, 2), (2, 3)]),
            absorbed_remainder: false,
        };
        let c = classify_component(&spider).unwrap();
        assert_eq!((c.hub, c.leaves, c.pendants), (0, 1, 1));
        assert_eq!(designate_center(&spider).unwrap(), 0);
    }

    #[test]
    fn three_path_hanging_from_endpoint_uses_middle_hub() {
        // path of 6 rooted at 0: first piece is {3,4,5} rooted at 3
        let t = &path(6).spanning_forest()[0];
        let cs = decompose_tree(t, 1, 1).unwrap();
        assert_eq!(vertex_sets(&cs), vec![vec![3, 4, 5], vec![0, 1, 2]]);
        assert_eq!(cs[0].root(), 3);
        let c = classify_component(&cs[0]).unwrap();
        assert_eq!((c.hub, c.leaves, c.pendants), (4, 2, 0));
        assert_eq!(designate_center(&cs[1]).unwrap(), 1);
    }

    #[test]
    fn non_snm_shape_is_structural_error() {
        let deep = TreeComponent {
            tree: rooted(0, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]),
            absorbed_remainder: false,
        };
        assert!(matches!(
            classify_component(&deep),
            Err(Error::Structural(_))
        ));
        let tiny = TreeComponent {
            tree: rooted(0, &[(0, 1)]),
            absorbed_remainder: false,
        };
        assert!(classify_component(&tiny).is_err());
    }

    #[test]
    fn auxiliary_graph_examples() {
        let tri = UndirectedGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let aux = build_auxiliary_graph(&tri, 1, 1).unwrap();
        assert_eq!(aux.components.len(), 1);
        assert_eq!(aux.graph.edge_count(), 2);
        assert!(!aux.graph.has_edge(1, 2));
        let class = aux.classes[0].unwrap();
        assert_eq!((class.leaves, class.pendants), (2, 0));
        assert_eq!(aux.centers, BTreeSet::from([0]));

        let iso = UndirectedGraph::empty(2);
        for (d, k) in [(0, 1), (1, 1), (1, 3)] {
            let aux = build_auxiliary_graph(&iso, d, k).unwrap();
            assert_eq!(aux.graph, iso);
            assert_eq!(aux.components.len(), 2);
            assert!(aux.components.iter().all(|c| c.len() == 1));
        }

        let aux = build_auxiliary_graph(&path(5), 0, 1).unwrap();
        let edges: Vec<_> = aux.graph.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2), (3, 4)]);
        assert!(aux.centers.is_empty());
    }

    #[test]
    fn algorithm2_examples() {
        let star = UndirectedGraph::new(5, (1..5).map(|i| (0, i))).unwrap();
        let s = algorithm2(&star, 1, 1, 1).unwrap();
        assert_eq!((s.dominators.clone(), s.ext_value), (vec![0], 4));

        let out = algorithm2_detailed(&path(5), 2, 1, 1).unwrap();
        assert_eq!(out.auxiliary.dominators, vec![1, 3]);
        assert_eq!(out.best.ext_value, 3);

        assert!(matches!(
            algorithm2(&path(3), 4, 1, 1),
            Err(Error::InfeasibleCardinality { .. })
        ));
        assert!(matches!(
            algorithm2(&path(3), 1, 1, 2),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn decomposition_of_handmade_tree() {
        // root 0 with children 1, 2; 1 has children 3, 4; 2 has child 5
        let parent = BTreeMap::from([(0, 0), (1, 0), (2, 0), (3, 1), (4, 1), (5, 2)]);
        let t = RootedTree::from_parent_map(0, parent).unwrap();
        let cs = decompose_tree(&t, 1, 1).unwrap();
        // post-order 3,4,1(size 3) -> {1,3,4}; remainder {0,2,5} has size 3
        assert_eq!(vertex_sets(&cs), vec![vec![1, 3, 4], vec![0, 2, 5]]);
        assert_eq!(cs[1].root(), 0);
    }
}
