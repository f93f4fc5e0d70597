//! Rooted tree view of a graph instance and exhaustive enumeration of its
//! connected multiway cuts.

use crate::cut::{evaluate, CutSolution};
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

/// Default vertex-count bound for [`enumerate_connected_cuts`].
pub const DEFAULT_ENUM_VERTEX_LIMIT: usize = 24;

/// Hard ceiling on edge-subset candidates visited by an enumeration, in
/// addition to any vertex limit.
pub const MAX_ENUM_CANDIDATES: u128 = 50_000_000;

/// A rooted, child-ordered view of a tree-shaped [`WeightedGraph`].
///
/// Children are ordered by ascending vertex id, so all traversals are
/// deterministic for a fixed input.
#[derive(Debug, Clone)]
pub struct TreeInstance {
    graph: WeightedGraph,
    root: Vertex,
    parent: Vec<Option<Vertex>>,
    /// Edge index of the parent edge, `None` for the root.
    parent_edge: Vec<Option<usize>>,
    children: Vec<Vec<Vertex>>,
    /// Vertices in post-order (children before parents, sibling order
    /// ascending); the root is last.
    post_order: Vec<Vertex>,
}

/// Rooted view of a tree-shaped graph; fails if the graph is not a tree.
pub fn as_tree(graph: &WeightedGraph, root: Vertex) -> Result<TreeInstance> {
    TreeInstance::new(graph.clone(), root)
}

impl TreeInstance {
    pub fn new(graph: WeightedGraph, root: Vertex) -> Result<Self> {
        let n = graph.vertex_count();
        if root == 0 || root > n {
            return Err(Error::InvalidInput(format!("root {root} outside 1..={n}")));
        }
        if !graph.is_tree() {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                graph.edge_count(),
                n
            )));
        }
        let mut parent = vec![None; n + 1];
        let mut parent_edge = vec![None; n + 1];
        let mut children = vec![Vec::new(); n + 1];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        let mut seen = vec![false; n + 1];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            // neighbors() is ascending, so children come out ascending too
            for &(w, e) in graph.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    parent_edge[w] = Some(e);
                    children[v].push(w);
                    stack.push(w);
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        // pre-order with children pushed ascending pops descending; fix up
        for ch in children.iter_mut() {
            ch.sort_unstable();
        }
        let mut post_order = Vec::with_capacity(n);
        let mut walk: Vec<(Vertex, usize)> = vec![(root, 0)];
        while let Some(&mut (v, ref mut next)) = walk.last_mut() {
            if *next < children[v].len() {
                let c = children[v][*next];
                *next += 1;
                walk.push((c, 0));
            } else {
                post_order.push(v);
                walk.pop();
            }
        }
        Ok(TreeInstance {
            graph,
            root,
            parent,
            parent_edge,
            children,
            post_order,
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    /// Index (into the graph edge list) of the edge joining `v` to its
    /// parent; `None` for the root.
    pub fn parent_edge(&self, v: Vertex) -> Option<usize> {
        self.parent_edge[v]
    }

    /// Weight of the parent edge of `v`.
    pub fn parent_weight(&self, v: Vertex) -> Option<u64> {
        self.parent_edge[v].map(|e| self.graph.edges()[e].w)
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn post_order(&self) -> &[Vertex] {
        &self.post_order
    }

    /// The same tree rooted elsewhere.
    pub fn rerooted(&self, root: Vertex) -> Result<Self> {
        Self::new(self.graph.clone(), root)
    }

    /// The cut that gives every terminal its own component: each
    /// non-terminal joins the component of its nearest terminal ancestor.
    /// Requires the root to be a terminal so that every vertex has one.
    pub fn canonical_cut(&self) -> Result<CutSolution> {
        if !self.graph.is_terminal(self.root) {
            return Err(Error::InvalidInput(
                "canonical cut needs a terminal root".into(),
            ));
        }
        let n = self.graph.vertex_count();
        let mut owner = vec![0; n + 1];
        // walk parents-first (reverse post-order)
        for &v in self.post_order.iter().rev() {
            owner[v] = if self.graph.is_terminal(v) {
                v
            } else {
                owner[self.parent[v].expect("non-root has a parent")]
            };
        }
        evaluate(&self.graph, &owner[1..])
    }
}

/// Enumerates every connected multiway cut of a tree, with the default
/// vertex limit of [`DEFAULT_ENUM_VERTEX_LIMIT`].
pub fn enumerate_connected_cuts(tree: &TreeInstance) -> Result<Vec<CutSolution>> {
    enumerate_connected_cuts_with_limit(tree, DEFAULT_ENUM_VERTEX_LIMIT)
}

/// Enumerates every connected multiway cut of a tree with at most
/// `max_vertices` vertices.
///
/// On a tree, a cut into `k` connected one-terminal parts is exactly a set
/// of `k - 1` deleted edges whose removal leaves one terminal per component,
/// so candidates are edge subsets of that size. Solutions are returned in
/// lexicographic order of their part-index vector (vertices ascending,
/// parts in terminal order), each exactly once.
pub fn enumerate_connected_cuts_with_limit(
    tree: &TreeInstance,
    max_vertices: usize,
) -> Result<Vec<CutSolution>> {
    let g = tree.graph();
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(Error::LimitExceeded(format!(
            "enumeration limited to {max_vertices} vertices, instance has {n}"
        )));
    }
    let m = g.edge_count();
    let k = g.terminal_count();
    if k == 0 || k > n {
        return Err(Error::InvalidInput("terminal count out of range".into()));
    }
    let picks = k - 1;
    if binomial(m as u128, picks as u128) > MAX_ENUM_CANDIDATES {
        return Err(Error::LimitExceeded(format!(
            "enumeration would visit more than {MAX_ENUM_CANDIDATES} edge subsets"
        )));
    }

    let mut solutions = Vec::new();
    let mut owner = vec![0usize; n + 1];
    let mut comb: Vec<usize> = (0..picks).collect();
    loop {
        if let Some(assignment) = try_cut(tree, &comb, &mut owner) {
            let sol = evaluate(g, &assignment).expect("enumerated assignment is total");
            solutions.push(sol);
        }
        if !advance(&mut comb, m) {
            break;
        }
    }
    let mut keyed: Vec<(Vec<usize>, CutSolution)> = solutions
        .into_iter()
        .map(|s| (s.part_vector(g), s))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, s)| s).collect())
}

/// Components of the tree after deleting `cut` must each hold exactly one
/// terminal; returns the assignment when they do.
fn try_cut(tree: &TreeInstance, cut: &[usize], owner: &mut [usize]) -> Option<Vec<Vertex>> {
    let g = tree.graph();
    let n = g.vertex_count();
    let mut is_cut = vec![false; g.edge_count()];
    for &e in cut {
        is_cut[e] = true;
    }
    for o in owner.iter_mut() {
        *o = 0;
    }
    // root each component at its terminal; a second terminal kills it
    let mut stack = Vec::new();
    for &t in g.terminals() {
        if owner[t] != 0 {
            return None;
        }
        owner[t] = t;
        stack.push(t);
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                if is_cut[e] || owner[w] == t {
                    continue;
                }
                if owner[w] != 0 || g.is_terminal(w) {
                    stack.clear();
                    return None;
                }
                owner[w] = t;
                stack.push(w);
            }
        }
    }
    if owner[1..=n].contains(&0) {
        return None;
    }
    Some(owner[1..=n].to_vec())
}

/// Advances a lexicographic combination of `0..m`; false when exhausted.
fn advance(comb: &mut [usize], m: usize) -> bool {
    let k = comb.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < m - (k - i) {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > MAX_ENUM_CANDIDATES {
            return acc;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::validate_connected;

    fn path_graph(weights: &[u64], terminals: Vec<Vertex>) -> WeightedGraph {
        let n = weights.len() + 1;
        let edges = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (i + 1, i + 2, w))
            .collect();
        WeightedGraph::new(n, edges, terminals).unwrap()
    }

    #[test]
    fn children_are_ascending() {
        let g = path_graph(&[1, 1], vec![1, 3]);
        let t = as_tree(&g, 2).unwrap();
        assert_eq!(t.children(2), &[1, 3]);
        assert_eq!(t.parent(1), Some(2));
        assert_eq!(t.parent(2), None);
    }

    #[test]
    fn non_tree_is_rejected() {
        let g = WeightedGraph::new(3, vec![(1, 2, 1), (2, 3, 1), (1, 3, 1)], vec![1, 2]).unwrap();
        assert!(matches!(as_tree(&g, 1), Err(Error::NotATree(_))));
    }

    #[test]
    fn star_rooted_at_leaf_has_depth_two() {
        let g = WeightedGraph::new(4, vec![(1, 2, 1), (1, 3, 1), (1, 4, 1)], vec![2, 3]).unwrap();
        let t = as_tree(&g, 2).unwrap();
        assert_eq!(t.children(2), &[1]);
        assert_eq!(t.children(1), &[3, 4]);
        assert_eq!(t.post_order().last(), Some(&2));
    }

    #[test]
    fn path_has_two_cuts() {
        let g = path_graph(&[3, 5], vec![1, 3]);
        let t = as_tree(&g, 1).unwrap();
        let cuts = enumerate_connected_cuts(&t).unwrap();
        assert_eq!(cuts.len(), 2);
        // lexicographic by part vector: v with t1 first
        assert_eq!(cuts[0].assignment[2], 1);
        assert_eq!(cuts[1].assignment[2], 3);
    }

    #[test]
    fn single_terminal_has_the_empty_cut() {
        let g = path_graph(&[2, 2, 2], vec![3]);
        let t = as_tree(&g, 1).unwrap();
        let cuts = enumerate_connected_cuts(&t).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].cost, 0);
        assert!(cuts[0].cut_edges.is_empty());
    }

    #[test]
    fn terminal_star_has_three_cuts() {
        let g =
            WeightedGraph::new(4, vec![(1, 2, 1), (1, 3, 2), (1, 4, 3)], vec![2, 3, 4]).unwrap();
        let t = as_tree(&g, 1).unwrap();
        let cuts = enumerate_connected_cuts(&t).unwrap();
        assert_eq!(cuts.len(), 3);
        for c in &cuts {
            assert!(validate_connected(&g, c).is_valid());
        }
    }

    #[test]
    fn limit_is_enforced() {
        let g = path_graph(&[1; 30], vec![1, 31]);
        let t = as_tree(&g, 1).unwrap();
        assert!(matches!(
            enumerate_connected_cuts(&t),
            Err(Error::LimitExceeded(_))
        ));
        assert!(enumerate_connected_cuts_with_limit(&t, 31).is_ok());
    }

    #[test]
    fn canonical_cut_is_valid() {
        let g = WeightedGraph::new(
            6,
            vec![(1, 2, 4), (2, 3, 1), (3, 4, 2), (2, 5, 9), (5, 6, 3)],
            vec![1, 4, 6],
        )
        .unwrap();
        let t = as_tree(&g, 1).unwrap();
        let c = t.canonical_cut().unwrap();
        assert!(validate_connected(&g, &c).is_valid());
        // non-terminals 2,3,5 chain up to terminal 1
        assert_eq!(c.assignment[3], 1);
        assert_eq!(c.assignment[5], 1);
    }
}
