//! Cut solutions: cost evaluation and validity checking.

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

/// A multiway cut given by a total assignment of vertices to terminals,
/// together with everything derived from it: the cut edge set, the boundary
/// weight of every part, and the min-max cost.
///
/// Instances are only produced by [`evaluate`], so the derived fields are
/// always consistent with the assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSolution {
    /// `assignment[v]` is the terminal vertex owning `v`; index 0 is unused.
    pub assignment: Vec<Vertex>,
    /// Indices into the instance edge list of edges joining distinct parts.
    pub cut_edges: Vec<usize>,
    /// Boundary weight per part, in terminal order.
    pub boundaries: Vec<u64>,
    /// `max` over [`Self::boundaries`].
    pub cost: u64,
}

impl CutSolution {
    /// Part index (position in the terminal order) of vertex `v`.
    pub fn part_of(&self, graph: &WeightedGraph, v: Vertex) -> usize {
        graph
            .terminal_index(self.assignment[v])
            .expect("assignment values are terminals")
    }

    /// The assignment as part indices for vertices `1..=n`, the canonical
    /// key for deterministic orderings.
    pub fn part_vector(&self, graph: &WeightedGraph) -> Vec<usize> {
        (1..=graph.vertex_count())
            .map(|v| self.part_of(graph, v))
            .collect()
    }
}

/// Computes the cut induced by `assignment`, where `assignment[v - 1]` names
/// the terminal owning vertex `v`.
///
/// Every assigned value must be a terminal of the graph; each cut edge is
/// charged to the boundary of both incident parts, and the cost is the
/// largest boundary. Whether the parts are connected is not checked here —
/// see [`validate_connected`].
pub fn evaluate(graph: &WeightedGraph, assignment: &[Vertex]) -> Result<CutSolution> {
    let n = graph.vertex_count();
    if assignment.len() != n {
        return Err(Error::InvalidInput(format!(
            "assignment covers {} vertices, instance has {n}",
            assignment.len()
        )));
    }
    let mut by_vertex = vec![0; n + 1];
    for (i, &t) in assignment.iter().enumerate() {
        if t == 0 || t > n || !graph.is_terminal(t) {
            return Err(Error::InvalidInput(format!(
                "vertex {} assigned to non-terminal {t}",
                i + 1
            )));
        }
        by_vertex[i + 1] = t;
    }
    let mut boundaries = vec![0u64; graph.terminal_count()];
    let mut cut_edges = Vec::new();
    for (idx, e) in graph.edges().iter().enumerate() {
        let pu = graph.terminal_index(by_vertex[e.u]).unwrap();
        let pv = graph.terminal_index(by_vertex[e.v]).unwrap();
        if pu != pv {
            cut_edges.push(idx);
            boundaries[pu] += e.w;
            boundaries[pv] += e.w;
        }
    }
    let cost = boundaries.iter().copied().max().unwrap_or(0);
    Ok(CutSolution {
        assignment: by_vertex,
        cut_edges,
        boundaries,
        cost,
    })
}

/// Per-part outcome of a connectivity check.
#[derive(Debug, Clone)]
pub struct PartReport {
    pub terminal: Vertex,
    pub connected: bool,
    /// Number of terminals inside the part; a valid part has exactly one.
    pub terminal_count: usize,
    pub size: usize,
}

/// Outcome of [`validate_connected`]: one entry per part, plus the overall
/// verdict.
#[derive(Debug, Clone)]
pub struct ValidityReport {
    pub parts: Vec<PartReport>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.parts
            .iter()
            .all(|p| p.connected && p.terminal_count == 1)
    }

    /// Part indices that fail either the connectivity or the one-terminal
    /// requirement.
    pub fn failing_parts(&self) -> Vec<usize> {
        self.parts
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.connected || p.terminal_count != 1)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Checks, for every part, that the induced subgraph is connected and
/// contains exactly one terminal. Invalid solutions yield a failing report,
/// never an error.
pub fn validate_connected(graph: &WeightedGraph, solution: &CutSolution) -> ValidityReport {
    let n = graph.vertex_count();
    let mut parts = Vec::with_capacity(graph.terminal_count());
    let mut seen = vec![false; n + 1];
    for (idx, &t) in graph.terminals().iter().enumerate() {
        let members: Vec<Vertex> = (1..=n)
            .filter(|&v| graph.terminal_index(solution.assignment[v]) == Some(idx))
            .collect();
        let terminal_count = members.iter().filter(|&&v| graph.is_terminal(v)).count();
        let connected = if members.is_empty() {
            false
        } else {
            for &v in &members {
                seen[v] = false;
            }
            // flood from the lowest member, restricted to the part
            let mut stack = vec![members[0]];
            seen[members[0]] = true;
            let mut reached = 1;
            while let Some(v) = stack.pop() {
                for &(w, _) in graph.neighbors(v) {
                    if !seen[w] && graph.terminal_index(solution.assignment[w]) == Some(idx) {
                        seen[w] = true;
                        reached += 1;
                        stack.push(w);
                    }
                }
            }
            reached == members.len()
        };
        parts.push(PartReport {
            terminal: t,
            connected,
            terminal_count,
            size: members.len(),
        });
    }
    ValidityReport { parts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(weights: &[u64], terminals: Vec<Vertex>) -> WeightedGraph {
        let n = weights.len() + 1;
        let edges = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (i + 1, i + 2, w))
            .collect();
        WeightedGraph::new(n, edges, terminals).unwrap()
    }

    #[test]
    fn single_edge_is_counted_on_both_sides() {
        let g = path(&[5], vec![1, 2]);
        let s = evaluate(&g, &[1, 2]).unwrap();
        assert_eq!(s.boundaries, vec![5, 5]);
        assert_eq!(s.cost, 5);
        assert_eq!(s.cut_edges.len(), 1);
    }

    #[test]
    fn interior_vertex_joins_a_side() {
        // t1 -3- v -5- t2, v with t2: only the weight-3 edge is cut
        let g = path(&[3, 5], vec![1, 3]);
        let s = evaluate(&g, &[1, 3, 3]).unwrap();
        assert_eq!(s.boundaries, vec![3, 3]);
        assert_eq!(s.cost, 3);
    }

    #[test]
    fn star_boundaries() {
        let g =
            WeightedGraph::new(4, vec![(1, 2, 1), (1, 3, 2), (1, 4, 3)], vec![2, 3, 4]).unwrap();
        let s = evaluate(&g, &[4, 2, 3, 4]).unwrap();
        assert_eq!(s.boundaries, vec![1, 2, 3]);
        assert_eq!(s.cost, 3);
    }

    #[test]
    fn rejects_unknown_vertex_or_terminal() {
        let g = path(&[3, 5], vec![1, 3]);
        assert!(evaluate(&g, &[1, 3]).is_err());
        assert!(evaluate(&g, &[1, 2, 3]).is_err());
        assert!(evaluate(&g, &[1, 3, 9]).is_err());
    }

    #[test]
    fn disconnected_part_fails_validation() {
        // path x - t1 - t2 with x assigned to t2
        let g = path(&[4, 1], vec![2, 3]);
        let s = evaluate(&g, &[3, 2, 3]).unwrap();
        let report = validate_connected(&g, &s);
        assert!(!report.is_valid());
        assert_eq!(report.failing_parts(), vec![1]);
    }

    #[test]
    fn connected_assignment_passes() {
        let g = path(&[3, 5], vec![1, 3]);
        let s = evaluate(&g, &[1, 1, 3]).unwrap();
        assert!(validate_connected(&g, &s).is_valid());
    }

    #[test]
    fn two_terminals_in_one_part_is_invalid() {
        let g = path(&[3, 5], vec![1, 3]);
        // terminal 3 mapped onto terminal 1's part
        let s = evaluate(&g, &[1, 1, 1]).unwrap();
        let report = validate_connected(&g, &s);
        assert!(!report.is_valid());
        assert_eq!(report.parts[0].terminal_count, 2);
        assert_eq!(report.parts[1].size, 0);
    }

    #[test]
    fn boundary_sum_is_twice_the_cut_weight() {
        let g = WeightedGraph::new(
            5,
            vec![(1, 2, 2), (2, 3, 0), (3, 4, 7), (4, 5, 1), (1, 5, 3)],
            vec![2, 4],
        )
        .unwrap();
        let s = evaluate(&g, &[2, 2, 4, 4, 2]).unwrap();
        let cut_weight: u64 = s.cut_edges.iter().map(|&i| g.edges()[i].w).sum();
        assert_eq!(s.boundaries.iter().sum::<u64>(), 2 * cut_weight);
    }
}
