//! Instance data model: weighted graphs with terminals, and the number
//! instances consumed by the hardness-reduction generators.

use crate::error::{Error, Result};

/// Vertices are dense 1-based ids.
pub type Vertex = usize;

/// Keeps every boundary sum (and its double) representable in `u64`.
pub const MAX_TOTAL_WEIGHT: u64 = u64::MAX / 4;

/// An undirected edge with a nonnegative integer weight.
///
/// Endpoints are normalized so that `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: u64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A connected undirected graph with integer edge weights and an ordered,
/// nonempty set of terminal vertices.
///
/// Weight zero is allowed: some reduction gadgets rely on it. The terminal
/// order is significant — it defines the part indices used by cut solutions
/// and by the instance file format.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    terminals: Vec<Vertex>,
    /// `adj[v]` lists `(neighbor, edge index)` pairs, ascending by neighbor.
    adj: Vec<Vec<(Vertex, usize)>>,
    /// part index of each terminal vertex, `usize::MAX` for non-terminals
    term_index: Vec<usize>,
    total_weight: u64,
}

impl WeightedGraph {
    /// Builds a graph from an edge list, validating every structural
    /// invariant: ids in range, no loops or parallel edges, distinct
    /// terminals, connectivity, and bounded total weight.
    pub fn new(
        n: usize,
        edges: Vec<(Vertex, Vertex, u64)>,
        terminals: Vec<Vertex>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance(
                "graph must have at least one vertex".into(),
            ));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v, w) in &edges {
            if u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidInstance(format!(
                    "edge ({u},{v}) has an endpoint outside 1..={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidInstance(format!("self-loop at vertex {u}")));
            }
            norm.push(Edge {
                u: u.min(v),
                v: u.max(v),
                w,
            });
        }
        let mut seen = norm.iter().map(|e| (e.u, e.v)).collect::<Vec<_>>();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::InvalidInstance("parallel edge".into()));
        }
        if terminals.is_empty() {
            return Err(Error::InvalidInstance(
                "at least one terminal is required".into(),
            ));
        }
        let mut term_index = vec![usize::MAX; n + 1];
        for (i, &t) in terminals.iter().enumerate() {
            if t == 0 || t > n {
                return Err(Error::InvalidInstance(format!(
                    "terminal {t} outside 1..={n}"
                )));
            }
            if term_index[t] != usize::MAX {
                return Err(Error::InvalidInstance(format!("duplicate terminal {t}")));
            }
            term_index[t] = i;
        }
        let mut total: u64 = 0;
        for e in &norm {
            total = total
                .checked_add(e.w)
                .filter(|&t| t <= MAX_TOTAL_WEIGHT)
                .ok_or(Error::Overflow("summing edge weights"))?;
        }
        let mut adj = vec![Vec::new(); n + 1];
        for (i, e) in norm.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let g = WeightedGraph {
            n,
            edges: norm,
            terminals,
            adj,
            term_index,
            total_weight: total,
        };
        if !g.is_connected() {
            return Err(Error::InvalidInstance("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn terminals(&self) -> &[Vertex] {
        &self.terminals
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.term_index[v] != usize::MAX
    }

    /// Position of `v` in the terminal order, if it is a terminal.
    pub fn terminal_index(&self, v: Vertex) -> Option<usize> {
        match self.term_index[v] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// Neighbors of `v` as `(neighbor, edge index)` pairs, ascending.
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.n - 1
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Returns a copy with every weight mapped through `f`; structure and
    /// terminal order are unchanged.
    pub fn map_weights(&self, mut f: impl FnMut(u64) -> u64) -> Result<Self> {
        let edges = self.edges.iter().map(|e| (e.u, e.v, f(e.w))).collect();
        Self::new(self.n, edges, self.terminals.clone())
    }

    /// Two-colorability check, used by the reduction verifiers.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n + 1];
        let mut stack = vec![1];
        color[1] = 0;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if color[w] == u8::MAX {
                    color[w] = color[v] ^ 1;
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
        true
    }
}

/// Which number problem a [`NumberInstance`] encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberFlavor {
    /// Split into two halves of equal sum `B`.
    Partition,
    /// Split into three parts of equal sum `N`.
    ThreeWay,
    /// Find a subset with a prescribed sum.
    SubsetSum,
}

/// A multiset of positive integers together with its target, the input of
/// the reduction generators.
#[derive(Debug, Clone)]
pub struct NumberInstance {
    numbers: Vec<u64>,
    target: u64,
    flavor: NumberFlavor,
}

impl NumberInstance {
    /// A partition instance; the target `B` is half the total sum.
    pub fn partition(numbers: Vec<u64>) -> Result<Self> {
        let sum = Self::checked_sum(&numbers)?;
        if sum % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "partition instance needs an even sum, got {sum}"
            )));
        }
        Ok(NumberInstance {
            numbers,
            target: sum / 2,
            flavor: NumberFlavor::Partition,
        })
    }

    /// A three-way partition instance; the target `N` is a third of the sum.
    pub fn three_way(numbers: Vec<u64>) -> Result<Self> {
        let sum = Self::checked_sum(&numbers)?;
        if sum % 3 != 0 {
            return Err(Error::InvalidInput(format!(
                "three-way partition instance needs a sum divisible by 3, got {sum}"
            )));
        }
        Ok(NumberInstance {
            numbers,
            target: sum / 3,
            flavor: NumberFlavor::ThreeWay,
        })
    }

    /// A subset-sum instance with an explicit target.
    pub fn subset_sum(numbers: Vec<u64>, target: u64) -> Result<Self> {
        let sum = Self::checked_sum(&numbers)?;
        if target > sum {
            return Err(Error::InvalidInput(format!(
                "subset-sum target {target} exceeds total {sum}"
            )));
        }
        if target == 0 {
            return Err(Error::InvalidInput(
                "subset-sum target must be positive".into(),
            ));
        }
        Ok(NumberInstance {
            numbers,
            target,
            flavor: NumberFlavor::SubsetSum,
        })
    }

    fn checked_sum(numbers: &[u64]) -> Result<u64> {
        if numbers.is_empty() {
            return Err(Error::InvalidInput("number list must be nonempty".into()));
        }
        if numbers.contains(&0) {
            return Err(Error::InvalidInput("numbers must be positive".into()));
        }
        let mut sum: u64 = 0;
        for &a in numbers {
            sum = sum
                .checked_add(a)
                .filter(|&s| s <= MAX_TOTAL_WEIGHT)
                .ok_or(Error::Overflow("summing a number instance"))?;
        }
        Ok(sum)
    }

    pub fn numbers(&self) -> &[u64] {
        &self.numbers
    }

    pub fn len(&self) -> usize {
        self.numbers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numbers.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.numbers.iter().sum()
    }

    /// `B` for partition and subset-sum, `N` for three-way instances.
    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn flavor(&self) -> NumberFlavor {
        self.flavor
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_graphs() {
        assert!(WeightedGraph::new(2, vec![(1, 1, 3)], vec![1]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 2, 3), (2, 1, 4)], vec![1]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 3, 3)], vec![1]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 2, 3)], vec![]).is_err());
        assert!(WeightedGraph::new(2, vec![(1, 2, 3)], vec![1, 1]).is_err());
        assert!(WeightedGraph::new(3, vec![(1, 2, 3)], vec![1]).is_err());
    }

    #[test]
    fn zero_weight_edges_are_admitted() {
        let g = WeightedGraph::new(2, vec![(1, 2, 0)], vec![1, 2]).unwrap();
        assert_eq!(g.total_weight(), 0);
    }

    #[test]
    fn overflow_is_a_hard_error() {
        let heavy = MAX_TOTAL_WEIGHT;
        let g = WeightedGraph::new(3, vec![(1, 2, heavy), (2, 3, 1)], vec![1, 3]);
        assert!(matches!(g, Err(Error::Overflow(_))));
    }

    #[test]
    fn terminal_order_defines_part_indices() {
        let g = WeightedGraph::new(3, vec![(1, 2, 1), (2, 3, 1)], vec![3, 1]).unwrap();
        assert_eq!(g.terminal_index(3), Some(0));
        assert_eq!(g.terminal_index(1), Some(1));
        assert_eq!(g.terminal_index(2), None);
    }

    #[test]
    fn number_instance_constraints() {
        assert!(NumberInstance::partition(vec![1, 2]).is_err());
        assert!(NumberInstance::partition(vec![2, 2]).is_ok());
        assert!(NumberInstance::three_way(vec![2, 2, 1]).is_err());
        assert_eq!(
            NumberInstance::three_way(vec![2, 2, 2]).unwrap().target(),
            2
        );
        assert!(NumberInstance::subset_sum(vec![1, 2], 4).is_err());
        assert!(NumberInstance::partition(vec![0, 2]).is_err());
    }
}
