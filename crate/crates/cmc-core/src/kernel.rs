//! FPT route for trees, parameterized by the number of terminals: prune
//! terminal-free subtrees, contract induced paths, solve the kernel of at
//! most `2|Γ| - 1` vertices exhaustively, then lift the cut back.

use crate::cut::evaluate;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::tree::TreeInstance;
use crate::treesolve::{assignment_from_cut_edges, SolveResult};

/// One kernel edge's origin: the path of source edges it replaced, ordered
/// from the endpoint closer to the root, and the position of the first
/// minimum-weight edge on it.
#[derive(Debug, Clone)]
pub struct KernelEdgePath {
    pub edges: Vec<usize>,
    pub argmin: usize,
}

/// A kernelized instance together with everything needed to lift a kernel
/// cut back to the source tree.
///
/// The kernel vertex set is the terminals plus all branching vertices of
/// the pruned tree, so it has at most `2|Γ| - 1` vertices and `2|Γ| - 2`
/// edges; each kernel edge carries the minimum weight of its source path.
#[derive(Debug, Clone)]
pub struct KernelMapping {
    pub kernel: TreeInstance,
    /// Kernel vertex id → source vertex id; index 0 is unused.
    pub vertex_map: Vec<Vertex>,
    /// Parallel to the kernel edge list.
    pub edge_paths: Vec<KernelEdgePath>,
    /// Source vertices removed by pruning (empty for a bare contraction).
    pub pruned: Vec<Vertex>,
}

/// Removes every vertex with no terminal in its subtree. The optimum is
/// unchanged: such vertices can always ride with their parent's component.
/// Vertices are re-indexed densely, preserving relative order.
pub fn prune_terminal_free(tree: &TreeInstance) -> Result<TreeInstance> {
    prune_terminal_free_mapped(tree).map(|(t, _, _)| t)
}

/// As [`prune_terminal_free`], also returning the vertex and edge maps from
/// new ids/indices back to the source.
pub fn prune_terminal_free_mapped(
    tree: &TreeInstance,
) -> Result<(TreeInstance, Vec<Vertex>, Vec<usize>)> {
    let g = tree.graph();
    assert!(
        g.is_terminal(tree.root()),
        "pruning requires a terminal root"
    );
    let n = g.vertex_count();
    let mut keep = vec![false; n + 1];
    for &v in tree.post_order() {
        if g.is_terminal(v) || tree.children(v).iter().any(|&c| keep[c]) {
            keep[v] = true;
        }
    }
    let mut new_id = vec![0; n + 1];
    let mut vertex_map = vec![0]; // slot 0 unused
    for v in 1..=n {
        if keep[v] {
            new_id[v] = vertex_map.len();
            vertex_map.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut edge_map = Vec::new();
    for v in 1..=n {
        if !keep[v] || v == tree.root() {
            continue;
        }
        let p = tree.parent(v).expect("non-root has a parent");
        let e = tree.parent_edge(v).unwrap();
        debug_assert!(keep[p]);
        edges.push((new_id[p], new_id[v], g.edges()[e].w));
        edge_map.push(e);
    }
    let terminals = g.terminals().iter().map(|&t| new_id[t]).collect();
    let graph = WeightedGraph::new(vertex_map.len() - 1, edges, terminals)?;
    let pruned_tree = TreeInstance::new(graph, new_id[tree.root()])?;
    Ok((pruned_tree, vertex_map, edge_map))
}

/// Contracts every maximal path between neighboring kernel vertices into a
/// single edge of the path's minimum weight. Requires all leaves to be
/// terminals (prune first) and the root to be a terminal or a branching
/// vertex.
pub fn contract_paths(tree: &TreeInstance) -> Result<KernelMapping> {
    let g = tree.graph();
    let n = g.vertex_count();
    for v in 1..=n {
        if g.degree(v) == 1 || n == 1 {
            assert!(
                g.is_terminal(v) || n == 1,
                "contraction requires all leaves to be terminals"
            );
        }
    }
    let in_kernel: Vec<bool> = (0..=n)
        .map(|v| v > 0 && (g.is_terminal(v) || g.degree(v) >= 3))
        .collect();
    assert!(
        in_kernel[tree.root()],
        "contraction requires the root to be a kernel vertex"
    );

    let mut new_id = vec![0; n + 1];
    let mut vertex_map = vec![0];
    for v in 1..=n {
        if in_kernel[v] {
            new_id[v] = vertex_map.len();
            vertex_map.push(v);
        }
    }
    let mut edges = Vec::new();
    let mut edge_paths = Vec::new();
    for v in 1..=n {
        if !in_kernel[v] {
            continue;
        }
        for &child in tree.children(v) {
            // walk down through degree-2 path vertices to the next kernel vertex
            let mut path = vec![tree.parent_edge(child).unwrap()];
            let mut cur = child;
            while !in_kernel[cur] {
                debug_assert_eq!(tree.children(cur).len(), 1);
                let next = tree.children(cur)[0];
                path.push(tree.parent_edge(next).unwrap());
                cur = next;
            }
            let min_w = path.iter().map(|&e| g.edges()[e].w).min().unwrap();
            let argmin = path.iter().position(|&e| g.edges()[e].w == min_w).unwrap();
            edges.push((new_id[v], new_id[cur], min_w));
            edge_paths.push(KernelEdgePath {
                edges: path,
                argmin,
            });
        }
    }
    let terminals = g.terminals().iter().map(|&t| new_id[t]).collect();
    let kernel_graph = WeightedGraph::new(vertex_map.len() - 1, edges, terminals)?;
    let kernel = TreeInstance::new(kernel_graph, new_id[tree.root()])?;
    Ok(KernelMapping {
        kernel,
        vertex_map,
        edge_paths,
        pruned: Vec::new(),
    })
}

/// Prune + contract with all maps expressed against the input instance.
/// The tree is re-rooted at the lowest-id terminal first.
pub fn kernelize(tree: &TreeInstance) -> Result<KernelMapping> {
    let root = *tree.graph().terminals().iter().min().unwrap();
    let rooted = if tree.root() == root {
        tree.clone()
    } else {
        tree.rerooted(root)?
    };
    let (pruned, vmap, emap) = prune_terminal_free_mapped(&rooted)?;
    let mut mapping = contract_paths(&pruned)?;
    for v in mapping.vertex_map.iter_mut().skip(1) {
        *v = vmap[*v];
    }
    for p in mapping.edge_paths.iter_mut() {
        for e in p.edges.iter_mut() {
            *e = emap[*e];
        }
    }
    let kept: std::collections::BTreeSet<Vertex> = vmap.iter().skip(1).copied().collect();
    mapping.pruned = (1..=tree.graph().vertex_count())
        .filter(|v| !kept.contains(v))
        .collect();
    Ok(mapping)
}

/// Exact optimum via kernelization: solve the kernel by enumerating its
/// edge subsets (at most `2^(2|Γ|-2)` of them), then cut, for every cut
/// kernel edge, the first minimum-weight edge of its source path. Pruned
/// subtrees simply stay attached, joining the component above them.
pub fn solve_fpt(tree: &TreeInstance) -> Result<SolveResult> {
    let mapping = kernelize(tree)?;
    let (kernel_cost, kernel_cut) = solve_kernel_exhaustive(&mapping.kernel)?;
    let cut_edges: Vec<usize> = kernel_cut
        .iter()
        .map(|&ke| {
            let p = &mapping.edge_paths[ke];
            p.edges[p.argmin]
        })
        .collect();
    let assignment = assignment_from_cut_edges(tree.graph(), &cut_edges)?;
    let solution = evaluate(tree.graph(), &assignment)?;
    if solution.cost != kernel_cost {
        return Err(Error::Internal(format!(
            "lifted cut costs {} but the kernel optimum is {kernel_cost}",
            solution.cost
        )));
    }
    Ok(SolveResult {
        cost: kernel_cost,
        solution,
    })
}

/// Minimum-cost connected multiway cut of a small tree by explicit edge
/// subset enumeration; returns the cost and the cut edge indices.
fn solve_kernel_exhaustive(kernel: &TreeInstance) -> Result<(u64, Vec<usize>)> {
    let g = kernel.graph();
    let n = g.vertex_count();
    let m = g.edge_count();
    if m > 30 {
        return Err(Error::LimitExceeded(format!(
            "kernel has {m} edges; exhaustive search is limited to 30"
        )));
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut comp = vec![0usize; n + 1];
    'masks: for mask in 0u32..(1u32 << m) {
        // components of the kernel tree minus the selected edges
        for c in comp.iter_mut() {
            *c = 0;
        }
        let mut num_comps = 0;
        let mut term_count = Vec::new();
        for start in 1..=n {
            if comp[start] != 0 {
                continue;
            }
            num_comps += 1;
            term_count.push(0usize);
            let mut stack = vec![start];
            comp[start] = num_comps;
            while let Some(v) = stack.pop() {
                if g.is_terminal(v) {
                    term_count[num_comps - 1] += 1;
                }
                for &(w, e) in g.neighbors(v) {
                    if mask & (1 << e) == 0 && comp[w] == 0 {
                        comp[w] = num_comps;
                        stack.push(w);
                    }
                }
            }
        }
        if term_count.iter().any(|&t| t != 1) {
            continue 'masks;
        }
        let mut boundaries = vec![0u64; num_comps];
        for (e, edge) in g.edges().iter().enumerate() {
            if mask & (1 << e) != 0 {
                boundaries[comp[edge.u] - 1] += edge.w;
                boundaries[comp[edge.v] - 1] += edge.w;
            }
        }
        let cost = boundaries.into_iter().max().unwrap_or(0);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            let cut = (0..m).filter(|&e| mask & (1 << e) != 0).collect();
            best = Some((cost, cut));
        }
    }
    best.ok_or_else(|| Error::Internal("kernel admits no connected multiway cut".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::validate_connected;
    use crate::tree::as_tree;
    use crate::treesolve::solve_exact_tree;

    fn tree(
        n: usize,
        edges: Vec<(usize, usize, u64)>,
        terms: Vec<usize>,
        root: usize,
    ) -> TreeInstance {
        as_tree(&WeightedGraph::new(n, edges, terms).unwrap(), root).unwrap()
    }

    #[test]
    fn prune_drops_terminal_free_branch() {
        // path t1 - a - b with terminals {t1, a}: b goes
        let t = tree(3, vec![(1, 2, 4), (2, 3, 9)], vec![1, 2], 1);
        let pruned = prune_terminal_free(&t).unwrap();
        assert_eq!(pruned.graph().vertex_count(), 2);
        assert_eq!(pruned.graph().edge_count(), 1);
        assert_eq!(pruned.graph().edges()[0].w, 4);
    }

    #[test]
    fn prune_is_identity_when_all_leaves_terminal() {
        let t = tree(3, vec![(1, 2, 4), (2, 3, 9)], vec![1, 3], 1);
        let pruned = prune_terminal_free(&t).unwrap();
        assert_eq!(pruned.graph().vertex_count(), 3);
    }

    #[test]
    fn prune_preserves_the_optimum() {
        // caterpillar with terminal-free pendant legs
        let t = tree(
            8,
            vec![
                (1, 2, 3),
                (2, 3, 2),
                (3, 4, 5),
                (2, 5, 1),
                (3, 6, 1),
                (6, 7, 2),
                (4, 8, 4),
            ],
            vec![1, 4],
            1,
        );
        let before = solve_exact_tree(&t).unwrap().cost;
        let pruned = prune_terminal_free(&t).unwrap();
        let after = solve_exact_tree(&pruned).unwrap().cost;
        assert_eq!(before, after);
    }

    #[test]
    fn contract_takes_the_path_minimum() {
        // t1 -2- a -5- b -3- t2 contracts to a single edge of weight 2
        let t = tree(4, vec![(1, 2, 2), (2, 3, 5), (3, 4, 3)], vec![1, 4], 1);
        let m = contract_paths(&t).unwrap();
        assert_eq!(m.kernel.graph().vertex_count(), 2);
        let e = m.kernel.graph().edges()[0];
        assert_eq!(e.w, 2);
        assert_eq!(m.edge_paths[0].argmin, 0);
        assert_eq!(m.edge_paths[0].edges.len(), 3);
    }

    #[test]
    fn contract_is_identity_on_kernel_trees() {
        let t = tree(3, vec![(1, 2, 1), (1, 3, 2)], vec![2, 3, 1], 1);
        let m = contract_paths(&t).unwrap();
        assert_eq!(m.kernel.graph().vertex_count(), 3);
        assert!(m.edge_paths.iter().all(|p| p.edges.len() == 1));
    }

    #[test]
    fn spider_contracts_to_a_star() {
        // three legs of length 4 hanging off a center, leaf terminals
        let mut edges = Vec::new();
        let mut id = 1; // center
        let mut leaf_ids = Vec::new();
        for _ in 0..3 {
            let mut prev = 1;
            for step in 0..4 {
                id += 1;
                edges.push((prev, id, (step as u64 % 3) + 1));
                prev = id;
            }
            leaf_ids.push(id);
        }
        let mut terms = leaf_ids.clone();
        terms.sort_unstable();
        let g = WeightedGraph::new(id, edges, terms).unwrap();
        let t = as_tree(&g, leaf_ids[0]).unwrap();
        let m = kernelize(&t).unwrap();
        assert_eq!(m.kernel.graph().vertex_count(), 4);
        assert_eq!(m.kernel.graph().edge_count(), 3);
        let kernel_cost = solve_exact_tree(&m.kernel).unwrap().cost;
        let direct = solve_exact_tree(&t).unwrap().cost;
        assert_eq!(kernel_cost, direct);
    }

    #[test]
    fn fpt_route_matches_dp_on_examples() {
        let t = tree(4, vec![(1, 2, 2), (2, 3, 5), (3, 4, 3)], vec![1, 4], 1);
        let res = solve_fpt(&t).unwrap();
        assert_eq!(res.cost, 2);
        // the witness cuts the first edge of the path
        assert!(res.solution.cut_edges.contains(&0));
        assert!(validate_connected(t.graph(), &res.solution).is_valid());
    }

    #[test]
    fn fpt_single_terminal_is_the_empty_cut() {
        let t = tree(4, vec![(1, 2, 2), (2, 3, 5), (3, 4, 3)], vec![3], 1);
        let res = solve_fpt(&t).unwrap();
        assert_eq!(res.cost, 0);
        assert!(res.solution.cut_edges.is_empty());
    }

    #[test]
    fn kernel_bound_and_value_on_random_trees() {
        for seed in 0..60u64 {
            let n = 10 + (seed as usize * 13) % 41;
            let k = 1 + (seed as usize) % 5;
            let g = crate::random::random_tree(n, k, 0..=9, seed);
            let t = as_tree(&g, 1).unwrap();
            let m = kernelize(&t).unwrap();
            let kt = m.kernel.graph().terminal_count();
            assert!(m.kernel.graph().vertex_count() < 2 * kt, "seed {seed}");
            assert!(
                m.kernel.graph().edge_count() <= 2 * kt.max(1) - 2,
                "seed {seed}"
            );
            let fpt = solve_fpt(&t).unwrap();
            let dp = solve_exact_tree(&t).unwrap();
            assert_eq!(fpt.cost, dp.cost, "seed {seed}");
            assert!(validate_connected(&g, &fpt.solution).is_valid());
            assert_eq!(fpt.solution.cost, fpt.cost);
        }
    }
}
