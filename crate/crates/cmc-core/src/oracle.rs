//! Exhaustive exact solvers for small general graphs: connected and
//! unconstrained min-max multiway cut, the repair procedure turning a
//! multiway cut into a connected one (for up to three terminals), brute
//! force spanning tree congestion, and verification of the bounds linking
//! congestion to connected cuts.

use crate::cut::{evaluate, validate_connected, CutSolution};
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::treesolve::SolveResult;

/// Search budgets for the exhaustive oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Assignments explored by the cut searches.
    pub max_nodes: u64,
    /// Spanning trees enumerated by the congestion search.
    pub max_trees: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_nodes: 10_000_000,
            max_trees: 1_000_000,
        }
    }
}

/// A dense 1-based working copy of a graph, optionally with one vertex
/// removed and with its own terminal list. Lets the bound verifiers work
/// on vertex-deleted subgraphs, which need not be connected.
struct DenseGraph {
    n: usize,
    edges: Vec<(usize, usize, u64)>,
    adj: Vec<Vec<(usize, usize)>>,
    terminals: Vec<usize>,
    to_orig: Vec<Vertex>,
}

impl DenseGraph {
    fn from(g: &WeightedGraph, drop: Option<Vertex>, terminals: &[Vertex]) -> Self {
        let mut to_dense = vec![0; g.vertex_count() + 1];
        let mut to_orig = vec![0];
        for (v, slot) in to_dense.iter_mut().enumerate().skip(1) {
            if Some(v) != drop {
                *slot = to_orig.len();
                to_orig.push(v);
            }
        }
        let n = to_orig.len() - 1;
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); n + 1];
        for e in g.edges() {
            if Some(e.u) == drop || Some(e.v) == drop {
                continue;
            }
            let (u, v) = (to_dense[e.u], to_dense[e.v]);
            adj[u].push((v, edges.len()));
            adj[v].push((u, edges.len()));
            edges.push((u, v, e.w));
        }
        for a in adj.iter_mut() {
            a.sort_unstable();
        }
        let terminals = terminals.iter().map(|&t| to_dense[t]).collect();
        DenseGraph {
            n,
            edges,
            adj,
            terminals,
            to_orig,
        }
    }
}

/// Result of a raw exhaustive search: cost and the part index per vertex.
struct RawCut {
    cost: u64,
    parts: Vec<usize>,
}

/// The cut grown by multi-source flooding from the terminals: each vertex
/// joins the part of the terminal that reaches it first, so every part is
/// connected and holds exactly one terminal. `None` when some vertex is
/// unreachable from every terminal, in which case no multiway cut exists.
fn canonical_region_cut(g: &DenseGraph) -> Option<(u64, Vec<usize>)> {
    let mut parts = vec![usize::MAX; g.n + 1];
    let mut queue = std::collections::VecDeque::new();
    for (j, &t) in g.terminals.iter().enumerate() {
        parts[t] = j;
        queue.push_back(t);
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &g.adj[v] {
            if parts[w] == usize::MAX {
                parts[w] = parts[v];
                queue.push_back(w);
            }
        }
    }
    if parts[1..].contains(&usize::MAX) {
        return None;
    }
    let mut bounds = vec![0u64; g.terminals.len()];
    for &(u, v, w) in &g.edges {
        if parts[u] != parts[v] {
            bounds[parts[u]] += w;
            bounds[parts[v]] += w;
        }
    }
    Some((bounds.into_iter().max().unwrap_or(0), parts))
}

/// Exhaustive search for the cheapest multiway cut, assigning non-terminals
/// in ascending vertex order with ascending part indices, so the first
/// optimum found is the lexicographically smallest. Prunes on partial
/// boundaries (seeded with a canonical feasible cut as a provisional upper
/// bound) and, when `connected` is set, on the changed part when it can no
/// longer reach its vertices through unassigned ones.
fn raw_min_cut(g: &DenseGraph, connected: bool, limit: u64) -> Result<Option<RawCut>> {
    let k = g.terminals.len();
    let Some((provisional, _)) = canonical_region_cut(g) else {
        // a vertex out of reach of every terminal: infeasible either way
        return Ok(None);
    };
    let mut parts = vec![usize::MAX; g.n + 1];
    for (i, &t) in g.terminals.iter().enumerate() {
        parts[t] = i;
    }
    let free: Vec<usize> = (1..=g.n).filter(|&v| parts[v] == usize::MAX).collect();
    // edges between two terminals are cut from the start
    let mut bounds = vec![0; k];
    for &(u, v, w) in &g.edges {
        if parts[u] != usize::MAX && parts[v] != usize::MAX && parts[u] != parts[v] {
            bounds[parts[u]] += w;
            bounds[parts[v]] += w;
        }
    }
    let mut state = SearchState {
        g,
        connected,
        parts,
        free,
        bounds,
        nodes: 0,
        limit,
        provisional,
        best: None,
        seen: vec![false; g.n + 1],
    };
    state.descend(0)?;
    Ok(state.best.map(|(cost, parts)| RawCut { cost, parts }))
}

struct SearchState<'a> {
    g: &'a DenseGraph,
    connected: bool,
    parts: Vec<usize>,
    free: Vec<usize>,
    bounds: Vec<u64>,
    nodes: u64,
    limit: u64,
    /// Cost of a known feasible cut; assignments are pruned once they can
    /// no longer match it.
    provisional: u64,
    best: Option<(u64, Vec<usize>)>,
    seen: Vec<bool>,
}

impl SearchState<'_> {
    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.free.len() {
            if self.connected && (0..self.g.terminals.len()).any(|j| !self.part_connectable(j)) {
                return Ok(());
            }
            let cost = self.bounds.iter().copied().max().unwrap_or(0);
            if self.best.as_ref().is_none_or(|(c, _)| cost < *c) {
                self.best = Some((cost, self.parts.clone()));
            }
            return Ok(());
        }
        let v = self.free[depth];
        for j in 0..self.g.terminals.len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::LimitExceeded(format!(
                    "cut search exceeded {} nodes",
                    self.limit
                )));
            }
            self.parts[v] = j;
            let mut touched = Vec::new();
            for &(w, e) in &self.g.adj[v] {
                let pw = self.parts[w];
                if pw != usize::MAX && pw != j {
                    let wt = self.g.edges[e].2;
                    self.bounds[j] += wt;
                    self.bounds[pw] += wt;
                    touched.push((j, wt));
                    touched.push((pw, wt));
                }
            }
            // a completion must beat the best assignment found, or at
            // least match the provisional feasible cut
            let cutoff = self
                .best
                .as_ref()
                .map(|(c, _)| *c)
                .unwrap_or(self.provisional + 1);
            let bound_ok = self.bounds.iter().all(|&b| b < cutoff);
            if bound_ok && (!self.connected || self.part_connectable(j)) {
                self.descend(depth + 1)?;
            }
            for (p, wt) in touched {
                self.bounds[p] -= wt;
            }
            self.parts[v] = usize::MAX;
        }
        Ok(())
    }

    /// Part `j` must reach all its vertices through members or
    /// still-unassigned vertices; otherwise no completion can fix it.
    fn part_connectable(&mut self, j: usize) -> bool {
        let g = self.g;
        let total = (1..=g.n).filter(|&v| self.parts[v] == j).count();
        for s in self.seen.iter_mut() {
            *s = false;
        }
        let t = g.terminals[j];
        let mut stack = vec![t];
        self.seen[t] = true;
        let mut reached = 1; // the terminal itself is assigned to j
        while let Some(v) = stack.pop() {
            for &(w, _) in &g.adj[v] {
                if self.seen[w] || (self.parts[w] != j && self.parts[w] != usize::MAX) {
                    continue;
                }
                self.seen[w] = true;
                if self.parts[w] == j {
                    reached += 1;
                }
                stack.push(w);
            }
        }
        reached == total
    }
}

fn raw_to_solution(g: &WeightedGraph, dense: &DenseGraph, raw: &RawCut) -> Result<SolveResult> {
    let mut assignment = vec![0; g.vertex_count()];
    for v in 1..=dense.n {
        let t = dense.terminals[raw.parts[v]];
        assignment[dense.to_orig[v] - 1] = dense.to_orig[t];
    }
    let solution = evaluate(g, &assignment)?;
    Ok(SolveResult {
        cost: raw.cost,
        solution,
    })
}

/// Minimum-cost connected multiway cut by exhaustive search over all
/// assignments with connectivity pruning; ties resolve to the
/// lexicographically smallest assignment.
pub fn brute_force_cmc(g: &WeightedGraph) -> Result<SolveResult> {
    brute_force_cmc_with_limits(g, &OracleLimits::default())
}

pub fn brute_force_cmc_with_limits(
    g: &WeightedGraph,
    limits: &OracleLimits,
) -> Result<SolveResult> {
    let dense = DenseGraph::from(g, None, g.terminals());
    let raw = raw_min_cut(&dense, true, limits.max_nodes)?.ok_or_else(|| {
        Error::Internal("connected graph admits no connected multiway cut".into())
    })?;
    raw_to_solution(g, &dense, &raw)
}

/// As [`brute_force_cmc`] but without the connectivity requirement.
pub fn brute_force_mmc(g: &WeightedGraph) -> Result<SolveResult> {
    brute_force_mmc_with_limits(g, &OracleLimits::default())
}

pub fn brute_force_mmc_with_limits(
    g: &WeightedGraph,
    limits: &OracleLimits,
) -> Result<SolveResult> {
    let k = g.terminal_count() as u128;
    let frees = (g.vertex_count() - g.terminal_count()) as u32;
    if k.saturating_pow(frees) > limits.max_nodes as u128 {
        return Err(Error::LimitExceeded(format!(
            "{}^{} assignments exceed the limit of {}",
            k, frees, limits.max_nodes
        )));
    }
    let dense = DenseGraph::from(g, None, g.terminals());
    let raw = raw_min_cut(&dense, false, limits.max_nodes)?
        .ok_or_else(|| Error::Internal("multiway cut search found nothing".into()))?;
    raw_to_solution(g, &dense, &raw)
}

/// Turns a valid multiway cut into a connected one of no larger cost, for
/// at most three terminals: repeatedly detach a connected piece that lost
/// its terminal and hand it to the neighboring part with the heaviest
/// attachment (ties to the lower terminal index). Each round reduces the
/// number of connected components.
pub fn repair_to_connected(g: &WeightedGraph, cut: &CutSolution) -> Result<CutSolution> {
    if g.terminal_count() > 3 {
        return Err(Error::Unsupported(format!(
            "repair is defined for at most 3 terminals, instance has {}",
            g.terminal_count()
        )));
    }
    for &t in g.terminals() {
        if cut.assignment[t] != t {
            return Err(Error::InvalidInput(format!(
                "terminal {t} is not assigned to itself"
            )));
        }
    }
    let n = g.vertex_count();
    let mut assignment: Vec<Vertex> = cut.assignment[1..].to_vec();
    let mut rounds = 0usize;
    loop {
        rounds += 1;
        if rounds > n * g.terminal_count() + 1 {
            return Err(Error::Internal("repair failed to terminate".into()));
        }
        let sol = evaluate(g, &assignment)?;
        let report = validate_connected(g, &sol);
        let Some(bad) = report.parts.iter().position(|p| !p.connected) else {
            debug_assert!(report.is_valid());
            debug_assert!(sol.cost <= cut.cost);
            return Ok(sol);
        };
        let terminal = g.terminals()[bad];
        // components of the failing part; detach the lowest one without
        // the terminal
        let members: Vec<Vertex> = (1..=n)
            .filter(|&v| g.terminal_index(sol.assignment[v]) == Some(bad))
            .collect();
        let mut comp = vec![usize::MAX; n + 1];
        let mut comps: Vec<Vec<Vertex>> = Vec::new();
        for &start in &members {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut cur = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in g.neighbors(v) {
                    if comp[w] == usize::MAX && g.terminal_index(sol.assignment[w]) == Some(bad) {
                        comp[w] = id;
                        cur.push(w);
                        stack.push(w);
                    }
                }
            }
            comps.push(cur);
        }
        let piece = comps
            .iter()
            .find(|c| !c.contains(&terminal))
            .expect("a disconnected part has a terminal-free component");
        // weight of edges from the piece to every other part; only parts
        // actually touched by an edge keep the component count shrinking
        let kcount = g.terminal_count();
        let mut weight_to = vec![0u64; kcount];
        let mut touches = vec![false; kcount];
        for &v in piece {
            for &(w, e) in g.neighbors(v) {
                let pw = g.terminal_index(sol.assignment[w]).unwrap();
                if pw != bad {
                    weight_to[pw] += g.edges()[e].w;
                    touches[pw] = true;
                }
            }
        }
        let target = (0..kcount)
            .filter(|&j| touches[j])
            .max_by(|&a, &b| weight_to[a].cmp(&weight_to[b]).then(b.cmp(&a)))
            .ok_or_else(|| Error::Internal("detached piece touches no other part".into()))?;
        let new_owner = g.terminals()[target];
        for &v in piece {
            assignment[v - 1] = new_owner;
        }
    }
}

/// Spanning tree congestion witness: the optimal congestion, the edges of
/// an optimal spanning tree, and the per-tree-edge congestion profile.
#[derive(Debug, Clone)]
pub struct StcResult {
    pub congestion: u64,
    /// Indices into the instance edge list.
    pub tree_edges: Vec<usize>,
    /// Parallel to `tree_edges`.
    pub profile: Vec<u64>,
}

/// Optimal spanning tree congestion by enumerating all spanning trees.
/// Congestion counts edges routed over a tree edge, ignoring weights.
pub fn stc_brute_force(g: &WeightedGraph) -> Result<StcResult> {
    stc_brute_force_with_limits(g, &OracleLimits::default())
}

pub fn stc_brute_force_with_limits(g: &WeightedGraph, limits: &OracleLimits) -> Result<StcResult> {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut best: Option<StcResult> = None;
    for_each_spanning_tree(g.vertex_count(), &edges, limits.max_trees, |tree| {
        let (max_c, profile) = tree_congestion(g.vertex_count(), &edges, tree);
        if best.as_ref().is_none_or(|b| max_c < b.congestion) {
            best = Some(StcResult {
                congestion: max_c,
                tree_edges: tree.to_vec(),
                profile,
            });
        }
    })?;
    best.ok_or_else(|| Error::Internal("connected graph has a spanning tree".into()))
}

/// Enumerates spanning trees by recursive edge inclusion/exclusion in edge
/// list order, skipping cycle-closing edges.
fn for_each_spanning_tree(
    n: usize,
    edges: &[(usize, usize)],
    max_trees: u64,
    mut visit: impl FnMut(&[usize]),
) -> Result<()> {
    if n == 1 {
        visit(&[]);
        return Ok(());
    }
    struct Dsu {
        parent: Vec<usize>,
        size: Vec<usize>,
    }
    impl Dsu {
        fn find(&self, mut v: usize) -> usize {
            while self.parent[v] != v {
                v = self.parent[v];
            }
            v
        }
    }
    let mut dsu = Dsu {
        parent: (0..=n).collect(),
        size: vec![1; n + 1],
    };
    let mut chosen = Vec::with_capacity(n - 1);
    let mut count = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        dsu: &mut Dsu,
        chosen: &mut Vec<usize>,
        edges: &[(usize, usize)],
        n: usize,
        count: &mut u64,
        max_trees: u64,
        visit: &mut impl FnMut(&[usize]),
    ) -> Result<()> {
        if chosen.len() == n - 1 {
            *count += 1;
            if *count > max_trees {
                return Err(Error::LimitExceeded(format!(
                    "spanning tree enumeration exceeded {max_trees} trees"
                )));
            }
            visit(chosen);
            return Ok(());
        }
        if idx == edges.len() || chosen.len() + (edges.len() - idx) < n - 1 {
            return Ok(());
        }
        let (u, v) = edges[idx];
        let (ru, rv) = (dsu.find(u), dsu.find(v));
        if ru != rv {
            // include edges[idx]; union by size with manual rollback
            let (big, small) = if dsu.size[ru] >= dsu.size[rv] {
                (ru, rv)
            } else {
                (rv, ru)
            };
            dsu.parent[small] = big;
            dsu.size[big] += dsu.size[small];
            chosen.push(idx);
            rec(idx + 1, dsu, chosen, edges, n, count, max_trees, visit)?;
            chosen.pop();
            dsu.size[big] -= dsu.size[small];
            dsu.parent[small] = small;
        }
        rec(idx + 1, dsu, chosen, edges, n, count, max_trees, visit)
    }
    rec(
        0,
        &mut dsu,
        &mut chosen,
        edges,
        n,
        &mut count,
        max_trees,
        &mut visit,
    )
}

/// Maximum congestion and per-tree-edge profile: each graph edge loads
/// every tree edge on its unique tree path.
fn tree_congestion(n: usize, edges: &[(usize, usize)], tree: &[usize]) -> (u64, Vec<u64>) {
    let mut adj = vec![Vec::new(); n + 1];
    for (pos, &e) in tree.iter().enumerate() {
        let (u, v) = edges[e];
        adj[u].push((v, pos));
        adj[v].push((u, pos));
    }
    let mut parent = vec![0usize; n + 1];
    let mut parent_pos = vec![usize::MAX; n + 1];
    let mut depth = vec![0usize; n + 1];
    let mut order = vec![1];
    let mut seen = vec![false; n + 1];
    seen[1] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &(w, pos) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                parent_pos[w] = pos;
                depth[w] = depth[v] + 1;
                order.push(w);
            }
        }
    }
    let mut load = vec![0u64; tree.len()];
    for &(mut u, mut v) in edges {
        while u != v {
            if depth[u] < depth[v] {
                std::mem::swap(&mut u, &mut v);
            }
            load[parent_pos[u]] += 1;
            u = parent[u];
        }
    }
    (load.iter().copied().max().unwrap_or(0), load)
}

/// One side of a congestion/cut inequality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundCheck {
    Holds { lhs: u64, rhs: u64 },
    Violated { lhs: u64, rhs: u64 },
    NotApplicable(String),
}

impl BoundCheck {
    pub fn holds_or_na(&self) -> bool {
        !matches!(self, BoundCheck::Violated { .. })
    }
}

/// Outcome of [`verify_stc_bounds`].
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub stc: u64,
    /// `STC(G) ≥ CMC(G − r, Γ) + 1` with Γ the neighbors of `r` in an
    /// optimal spanning tree where `r` is not a leaf.
    pub lower: BoundCheck,
    /// `STC(G) ≤ CMC(G − r, Γ') + max(1, max STC over the optimal parts)`
    /// with Γ' the neighbors of `r` in the graph.
    pub upper: BoundCheck,
}

/// Checks both congestion bounds around vertex `r` against the brute-force
/// oracles. The lower bound needs an optimal spanning tree in which `r` is
/// internal; when none exists the check reports not-applicable rather than
/// failing.
pub fn verify_stc_bounds(g: &WeightedGraph, r: Vertex) -> Result<BoundReport> {
    verify_stc_bounds_with_limits(g, r, &OracleLimits::default())
}

pub fn verify_stc_bounds_with_limits(
    g: &WeightedGraph,
    r: Vertex,
    limits: &OracleLimits,
) -> Result<BoundReport> {
    let n = g.vertex_count();
    if r == 0 || r > n {
        return Err(Error::InvalidInput(format!("vertex {r} outside 1..={n}")));
    }
    if n < 2 {
        return Ok(BoundReport {
            stc: 0,
            lower: BoundCheck::NotApplicable("graph has a single vertex".into()),
            upper: BoundCheck::NotApplicable("graph has a single vertex".into()),
        });
    }
    let stc = stc_brute_force_with_limits(g, limits)?.congestion;
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();

    // lower bound: find an optimal tree where r is internal
    let mut internal_tree: Option<Vec<usize>> = None;
    for_each_spanning_tree(n, &edges, limits.max_trees, |tree| {
        if internal_tree.is_some() {
            return;
        }
        let deg_r = tree
            .iter()
            .filter(|&&e| edges[e].0 == r || edges[e].1 == r)
            .count();
        if deg_r >= 2 && tree_congestion(n, &edges, tree).0 == stc {
            internal_tree = Some(tree.to_vec());
        }
    })?;
    let lower = match internal_tree {
        None => BoundCheck::NotApplicable(format!(
            "vertex {r} is a leaf of every optimal spanning tree"
        )),
        Some(tree) => {
            let mut gamma: Vec<Vertex> = tree
                .iter()
                .map(|&e| g.edges()[e])
                .filter(|e| e.u == r || e.v == r)
                .map(|e| e.other(r))
                .collect();
            gamma.sort_unstable();
            let dense = DenseGraph::from(g, Some(r), &gamma);
            match raw_min_cut(&dense, true, limits.max_nodes)? {
                None => BoundCheck::NotApplicable("no connected cut of G - r".into()),
                Some(raw) => {
                    let rhs = raw.cost + 1;
                    if stc >= rhs {
                        BoundCheck::Holds { lhs: stc, rhs }
                    } else {
                        BoundCheck::Violated { lhs: stc, rhs }
                    }
                }
            }
        }
    };

    // upper bound: neighbors of r in the graph, optimal parts of G - r
    let gamma: Vec<Vertex> = g.neighbors(r).iter().map(|&(w, _)| w).collect();
    let dense = DenseGraph::from(g, Some(r), &gamma);
    let upper = match raw_min_cut(&dense, true, limits.max_nodes)? {
        None => BoundCheck::NotApplicable("no connected cut of G - r".into()),
        Some(raw) => {
            let mut sub_stc = 0u64;
            for j in 0..gamma.len() {
                let members: Vec<usize> = (1..=dense.n).filter(|&v| raw.parts[v] == j).collect();
                if members.len() < 2 {
                    continue;
                }
                let mut local = vec![0usize; dense.n + 1];
                for (i, &v) in members.iter().enumerate() {
                    local[v] = i + 1;
                }
                let part_edges: Vec<(usize, usize)> = dense
                    .edges
                    .iter()
                    .filter(|&&(u, v, _)| local[u] != 0 && local[v] != 0)
                    .map(|&(u, v, _)| (local[u], local[v]))
                    .collect();
                let mut best: Option<u64> = None;
                for_each_spanning_tree(members.len(), &part_edges, limits.max_trees, |tree| {
                    let c = tree_congestion(members.len(), &part_edges, tree).0;
                    if best.is_none_or(|b| c < b) {
                        best = Some(c);
                    }
                })?;
                sub_stc = sub_stc.max(best.unwrap_or(0));
            }
            let rhs = raw.cost + sub_stc.max(1);
            if stc <= rhs {
                BoundCheck::Holds { lhs: stc, rhs }
            } else {
                BoundCheck::Violated { lhs: stc, rhs }
            }
        }
    };
    Ok(BoundReport { stc, lower, upper })
}

/// Searches for the smallest 4-terminal instance (by vertex count, then
/// edge count, then lexicographic weights) on which the unconstrained
/// min-max cut is strictly cheaper than the connected one. Terminals are
/// fixed to vertices 1–4; by relabeling, this loses no generality.
pub fn gap_search(max_n: usize, weight_set: &[u64]) -> Result<Option<WeightedGraph>> {
    if max_n > 6 {
        return Err(Error::InvalidInput(
            "gap search is limited to 6 vertices".into(),
        ));
    }
    let mut weights = weight_set.to_vec();
    weights.sort_unstable();
    weights.dedup();
    if weights.is_empty() {
        return Err(Error::InvalidInput("weight set must be nonempty".into()));
    }
    let limits = OracleLimits::default();
    for n in 4..=max_n {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        for edge_count in n - 1..=pairs.len() {
            let mut comb: Vec<usize> = (0..edge_count).collect();
            loop {
                if spans(n, &comb, &pairs) {
                    // odometer over weight choices, lexicographic
                    let mut pick = vec![0usize; edge_count];
                    loop {
                        let edges: Vec<(usize, usize, u64)> = comb
                            .iter()
                            .zip(&pick)
                            .map(|(&ei, &wi)| (pairs[ei].0, pairs[ei].1, weights[wi]))
                            .collect();
                        let g = WeightedGraph::new(n, edges, vec![1, 2, 3, 4])
                            .expect("spanning edge set is connected");
                        let mmc = brute_force_mmc_with_limits(&g, &limits)?.cost;
                        let cmc = brute_force_cmc_with_limits(&g, &limits)?.cost;
                        if mmc < cmc {
                            return Ok(Some(g));
                        }
                        if !odometer(&mut pick, weights.len()) {
                            break;
                        }
                    }
                }
                if !next_combination(&mut comb, pairs.len()) {
                    break;
                }
            }
        }
    }
    Ok(None)
}

fn spans(n: usize, comb: &[usize], pairs: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut comps = n;
    for &ei in comb {
        let (u, v) = pairs[ei];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            comps -= 1;
        }
    }
    comps == 1
}

fn odometer(pick: &mut [usize], base: usize) -> bool {
    for p in pick.iter_mut().rev() {
        *p += 1;
        if *p < base {
            return true;
        }
        *p = 0;
    }
    false
}

fn next_combination(comb: &mut [usize], m: usize) -> bool {
    let k = comb.len();
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
