//! Exact solver for weighted min-max connected multiway cut on trees.
//!
//! The solver runs a dynamic program over the rooted tree, processing the
//! children of every vertex left to right. A state describes the component
//! currently containing the subtree root (its *budget* `k`, the total weight
//! of cut edges incident to it so far, and whether it already holds a
//! terminal), together with the smallest possible maximum boundary over all
//! components completed so far. An edge to the next child is either kept
//! (merging the two open components, adding budgets) or cut (closing the
//! child component, which must hold exactly one terminal, with final
//! boundary `child budget + edge weight`).
//!
//! All budgets and values are capped: states exceeding the cap can never be
//! part of a solution within it, because the boundary of a component only
//! grows as the rest of the tree is processed. With the cap set to any upper
//! bound on the optimum this computes the exact optimum; the same machinery
//! answers capped feasibility queries and, with one extra flag tracking
//! whether some closed component hit a prescribed boundary exactly, the
//! exact-cost decision problem.

use crate::cut::{evaluate, CutSolution};
use crate::error::{Error, Result};
use crate::graph::Vertex;
use crate::kernel;
use crate::tree::TreeInstance;

const INF: u64 = u64::MAX;

/// Resource bounds for the dynamic program.
#[derive(Debug, Clone, Copy)]
pub struct SolveLimits {
    /// Maximum number of table entries across all prefixes (8 bytes each).
    pub max_table_entries: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        // ~256 MiB of table values
        SolveLimits {
            max_table_entries: 1 << 25,
        }
    }
}

/// Optimal cost together with a witness cut.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub cost: u64,
    pub solution: CutSolution,
}

/// A root state of a [`DpTable`], sufficient to reconstruct a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpEntry {
    /// Boundary weight of the root component.
    pub budget: u64,
    /// Maximum boundary over all completed (non-root) components.
    pub value: u64,
    /// Whether some completed component met the exact-cost target.
    pub hit: bool,
    /// Cost of the witness this entry describes.
    pub cost: u64,
}

struct PrefixTable {
    width: usize,
    vals: Vec<u64>,
}

impl PrefixTable {
    fn new(width: usize, hdim: usize) -> Self {
        PrefixTable {
            width,
            vals: vec![INF; 2 * hdim * width],
        }
    }

    #[inline]
    fn idx(&self, hdim: usize, t: usize, h: usize, k: usize) -> usize {
        (t * hdim + h) * self.width + k
    }

    #[inline]
    fn get(&self, hdim: usize, t: usize, h: usize, k: usize) -> u64 {
        self.vals[self.idx(hdim, t, h, k)]
    }

    #[inline]
    fn relax(&mut self, hdim: usize, t: usize, h: usize, k: usize, val: u64) {
        let i = self.idx(hdim, t, h, k);
        if val < self.vals[i] {
            self.vals[i] = val;
        }
    }
}

/// The filled dynamic-programming table for one rooted tree, retained in
/// full so that witnesses can be reconstructed from any finite entry.
pub struct DpTable {
    tree: TreeInstance,
    /// Edge weights saturated at `cap + 1`; heavier edges can never be cut
    /// within budget, and uncut edges contribute nothing, so this preserves
    /// every cut of cost at most `cap`.
    sat: Vec<u64>,
    cap: u64,
    target: Option<u64>,
    hdim: usize,
    /// `tables[v][i]` covers the subtree of `v` restricted to its first `i`
    /// children.
    tables: Vec<Vec<PrefixTable>>,
}

impl DpTable {
    /// Builds the table bottom-up. `cap` bounds every boundary; pass an
    /// exact-cost target to additionally track whether a completed
    /// component's boundary equals it.
    pub fn build(
        tree: &TreeInstance,
        cap: u64,
        target: Option<u64>,
        limits: &SolveLimits,
    ) -> Result<Self> {
        let g = tree.graph();
        let n = g.vertex_count();
        let cap = cap.min(g.total_weight());
        let hdim = if target.is_some() { 2 } else { 1 };
        let sat: Vec<u64> = g.edges().iter().map(|e| e.w.min(cap + 1)).collect();

        // saturated subtree weights drive the table widths
        let mut sub_w = vec![0u64; n + 1];
        for &u in tree.post_order() {
            let mut s = 0u64;
            for &c in tree.children(u) {
                s += sat[tree.parent_edge(c).expect("child has a parent edge")] + sub_w[c];
            }
            sub_w[u] = s;
        }
        let mut entries: u128 = 0;
        for &u in tree.post_order() {
            let mut sw = 0u64;
            entries += (2 * hdim) as u128;
            for &c in tree.children(u) {
                sw += sat[tree.parent_edge(c).unwrap()] + sub_w[c];
                entries += (2 * hdim) as u128 * (sw.min(cap) as u128 + 1);
            }
        }
        if entries > limits.max_table_entries as u128 {
            return Err(Error::LimitExceeded(format!(
                "dp table needs {entries} entries, limit is {}",
                limits.max_table_entries
            )));
        }

        let mut tables: Vec<Vec<PrefixTable>> = Vec::with_capacity(n + 1);
        tables.resize_with(n + 1, Vec::new);
        for &u in tree.post_order() {
            let mut base = PrefixTable::new(1, hdim);
            let t0 = usize::from(g.is_terminal(u));
            base.relax(hdim, t0, 0, 0, 0);
            tables[u].push(base);
            let mut sw = 0u64;
            for (i, &v) in tree.children(u).iter().enumerate() {
                let c = sat[tree.parent_edge(v).unwrap()];
                sw += c + sub_w[v];
                let width = sw.min(cap) as usize + 1;
                let merged = {
                    let prev = &tables[u][i];
                    let child = tables[v].last().expect("child processed before parent");
                    merge(prev, child, c, cap, target, hdim, width)
                };
                tables[u].push(merged);
            }
        }
        Ok(DpTable {
            tree: tree.clone(),
            sat,
            cap,
            target,
            hdim,
            tables,
        })
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn tree(&self) -> &TreeInstance {
        &self.tree
    }

    /// Value of the state `(terminal flag, budget)` for the subtree of `v`
    /// restricted to its first `prefix` children; `None` when infeasible.
    /// Exact-cost tables expose `hit = false` states here.
    pub fn state_value(
        &self,
        v: Vertex,
        prefix: usize,
        terminal_flag: bool,
        budget: u64,
    ) -> Option<u64> {
        let tbl = &self.tables[v][prefix];
        if budget as usize >= tbl.width {
            return None;
        }
        match tbl.get(self.hdim, usize::from(terminal_flag), 0, budget as usize) {
            INF => None,
            val => Some(val),
        }
    }

    /// The best root state: for plain solves, the entry minimizing
    /// `max(budget, value)` (smallest budget on ties); for exact-cost
    /// tables, the first feasible state whose cut attains the target.
    pub fn best_entry(&self) -> Option<DpEntry> {
        let root = self.tree.root();
        let tbl = self.tables[root].last().expect("root table present");
        match self.target {
            None => {
                let mut best: Option<DpEntry> = None;
                for k in 0..tbl.width {
                    let v = tbl.get(self.hdim, 1, 0, k);
                    if v == INF {
                        continue;
                    }
                    let cost = v.max(k as u64);
                    if best.as_ref().is_none_or(|b| cost < b.cost) {
                        best = Some(DpEntry {
                            budget: k as u64,
                            value: v,
                            hit: false,
                            cost,
                        });
                    }
                }
                best
            }
            Some(tb) => {
                for k in 0..tbl.width {
                    for h in 0..self.hdim {
                        let v = tbl.get(self.hdim, 1, h, k);
                        if v == INF {
                            continue;
                        }
                        if h == 1 || k as u64 == tb {
                            return Some(DpEntry {
                                budget: k as u64,
                                value: v,
                                hit: h == 1,
                                cost: tb,
                            });
                        }
                    }
                }
                None
            }
        }
    }

    /// Rebuilds the witness cut for a finite root entry by re-deriving, for
    /// every vertex and child, which decision produced the stored value:
    /// cutting the child edge is preferred, then smaller prefix budgets.
    pub fn reconstruct(&self, entry: &DpEntry) -> Result<CutSolution> {
        let g = self.tree.graph();
        let root = self.tree.root();
        let mut cut_edges: Vec<usize> = Vec::new();
        struct Frame {
            v: Vertex,
            prefix: usize,
            t: usize,
            h: usize,
            k: usize,
            val: u64,
        }
        let dangling =
            |what: &str| Error::Internal(format!("no dp decision reproduces entry at {what}"));
        let mut stack = vec![Frame {
            v: root,
            prefix: self.tree.children(root).len(),
            t: 1,
            h: usize::from(entry.hit),
            k: entry.budget as usize,
            val: entry.value,
        }];
        'frames: while let Some(f) = stack.pop() {
            if f.prefix == 0 {
                let t0 = usize::from(g.is_terminal(f.v));
                if f.t != t0 || f.h != 0 || f.k != 0 || f.val != 0 {
                    return Err(dangling(&format!("base of vertex {}", f.v)));
                }
                continue;
            }
            let child = self.tree.children(f.v)[f.prefix - 1];
            let edge = self.tree.parent_edge(child).unwrap();
            let c = self.sat[edge];
            let prev = &self.tables[f.v][f.prefix - 1];
            let ctbl = self.tables[child].last().unwrap();

            // cut decision first
            if f.k as u64 >= c {
                let kp = f.k - c as usize;
                if kp < prev.width {
                    for kc in 0..ctbl.width {
                        let b = kc as u64 + c;
                        if b > self.cap {
                            break;
                        }
                        for hc in 0..self.hdim {
                            let cv = ctbl.get(self.hdim, 1, hc, kc);
                            if cv == INF {
                                continue;
                            }
                            let close_hit = match self.target {
                                Some(tb) => hc | usize::from(b == tb),
                                None => 0,
                            };
                            for hp in 0..self.hdim {
                                if hp | close_hit != f.h {
                                    continue;
                                }
                                let pv = prev.get(self.hdim, f.t, hp, kp);
                                if pv == INF || pv.max(cv).max(b) != f.val {
                                    continue;
                                }
                                cut_edges.push(edge);
                                stack.push(Frame {
                                    v: child,
                                    prefix: self.tree.children(child).len(),
                                    t: 1,
                                    h: hc,
                                    k: kc,
                                    val: cv,
                                });
                                stack.push(Frame {
                                    v: f.v,
                                    prefix: f.prefix - 1,
                                    t: f.t,
                                    h: hp,
                                    k: kp,
                                    val: pv,
                                });
                                continue 'frames;
                            }
                        }
                    }
                }
            }
            // keep decision, scanning prefix budgets ascending
            for tc in 0..=f.t {
                let tp = f.t - tc;
                for kp in 0..prev.width.min(f.k + 1) {
                    let kc = f.k - kp;
                    if kc >= ctbl.width {
                        continue;
                    }
                    for hp in 0..self.hdim {
                        let pv = prev.get(self.hdim, tp, hp, kp);
                        if pv == INF {
                            continue;
                        }
                        for hc in 0..self.hdim {
                            if hp | hc != f.h {
                                continue;
                            }
                            let cv = ctbl.get(self.hdim, tc, hc, kc);
                            if cv == INF || pv.max(cv) != f.val {
                                continue;
                            }
                            stack.push(Frame {
                                v: child,
                                prefix: self.tree.children(child).len(),
                                t: tc,
                                h: hc,
                                k: kc,
                                val: cv,
                            });
                            stack.push(Frame {
                                v: f.v,
                                prefix: f.prefix - 1,
                                t: tp,
                                h: hp,
                                k: kp,
                                val: pv,
                            });
                            continue 'frames;
                        }
                    }
                }
            }
            return Err(dangling(&format!("vertex {} child {}", f.v, child)));
        }

        let assignment = assignment_from_cut_edges(g, &cut_edges)?;
        let solution = evaluate(g, &assignment)?;
        // cut edges never include saturated ones, so original weights agree
        if solution.cost != entry.cost {
            return Err(Error::Internal(format!(
                "reconstructed cost {} does not match entry cost {}",
                solution.cost, entry.cost
            )));
        }
        let root_part = g.terminal_index(solution.assignment[root]).unwrap();
        if solution.boundaries[root_part] != entry.budget {
            return Err(Error::Internal(format!(
                "root boundary {} does not match entry budget {}",
                solution.boundaries[root_part], entry.budget
            )));
        }
        Ok(solution)
    }
}

fn merge(
    prev: &PrefixTable,
    child: &PrefixTable,
    c: u64,
    cap: u64,
    target: Option<u64>,
    hdim: usize,
    width: usize,
) -> PrefixTable {
    let mut out = PrefixTable::new(width, hdim);
    // cheapest way to close the child component, per resulting hit flag
    let mut best_close = [INF; 2];
    for hc in 0..hdim {
        for kc in 0..child.width {
            let b = kc as u64 + c;
            if b > cap {
                break;
            }
            let cv = child.get(hdim, 1, hc, kc);
            if cv == INF {
                continue;
            }
            let hit = match target {
                Some(tb) => hc | usize::from(b == tb),
                None => 0,
            };
            let val = cv.max(b);
            if val < best_close[hit] {
                best_close[hit] = val;
            }
        }
    }
    for tp in 0..2usize {
        for hp in 0..hdim {
            for kp in 0..prev.width {
                let pv = prev.get(hdim, tp, hp, kp);
                if pv == INF {
                    continue;
                }
                let kn = kp as u64 + c;
                if kn <= cap {
                    for (hit, &close) in best_close.iter().enumerate().take(hdim) {
                        if close != INF {
                            out.relax(hdim, tp, hp | hit, kn as usize, pv.max(close));
                        }
                    }
                }
                for tc in 0..=(1 - tp) {
                    for hc in 0..hdim {
                        for kc in 0..child.width {
                            let kn = (kp + kc) as u64;
                            if kn > cap {
                                break;
                            }
                            let cv = child.get(hdim, tc, hc, kc);
                            if cv == INF {
                                continue;
                            }
                            out.relax(hdim, tp + tc, hp | hc, kp + kc, pv.max(cv));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Assignment induced by deleting `cut_edges` from a connected graph: each
/// component must contain exactly one terminal, which then owns it.
pub fn assignment_from_cut_edges(
    g: &crate::graph::WeightedGraph,
    cut_edges: &[usize],
) -> Result<Vec<Vertex>> {
    let n = g.vertex_count();
    let mut is_cut = vec![false; g.edge_count()];
    for &e in cut_edges {
        is_cut[e] = true;
    }
    let mut owner = vec![0; n + 1];
    for start in 1..=n {
        if owner[start] != 0 {
            continue;
        }
        let mut members = vec![start];
        let mut stack = vec![start];
        owner[start] = start; // provisional
        while let Some(v) = stack.pop() {
            for &(w, e) in g.neighbors(v) {
                if !is_cut[e] && owner[w] == 0 {
                    owner[w] = start;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        let mut terms = members.iter().filter(|&&v| g.is_terminal(v));
        let t = terms
            .next()
            .copied()
            .ok_or_else(|| Error::Internal(format!("component of {start} has no terminal")))?;
        if terms.next().is_some() {
            return Err(Error::Internal(format!(
                "component of {start} has several terminals"
            )));
        }
        for &v in &members {
            owner[v] = t;
        }
    }
    Ok(owner[1..].to_vec())
}

fn lowest_terminal_root(tree: &TreeInstance) -> Result<TreeInstance> {
    let root = *tree
        .graph()
        .terminals()
        .iter()
        .min()
        .expect("terminals are nonempty");
    if root == tree.root() {
        Ok(tree.clone())
    } else {
        tree.rerooted(root)
    }
}

fn dp_cost_estimate(tree: &TreeInstance, cap: u64) -> u128 {
    let g = tree.graph();
    let sat: Vec<u64> = g
        .edges()
        .iter()
        .map(|e| e.w.min(cap.saturating_add(1)))
        .collect();
    let mut sub_w = vec![0u64; g.vertex_count() + 1];
    let mut est: u128 = 0;
    for &u in tree.post_order() {
        let mut sw = 0u64;
        for &v in tree.children(u) {
            let c = sat[tree.parent_edge(v).unwrap()];
            let wc = (sub_w[v].min(cap) + 1) as u128;
            let wp = (sw.min(cap) + 1) as u128;
            est = est.saturating_add(4 * wp * wc);
            sw += c + sub_w[v];
        }
        sub_w[u] = sw;
    }
    est
}

fn kernel_cost_estimate(terminals: usize) -> u128 {
    if terminals == 0 || terminals > 20 {
        return u128::MAX;
    }
    let edges = 2 * terminals - 2;
    (1u128 << edges).saturating_mul((2 * terminals) as u128)
}

/// Exact optimum on a tree, with a witness.
///
/// Internally the tree is re-rooted at the lowest-id terminal and the
/// dynamic program is capped at the cost of the canonical cut (every
/// terminal gets its own component), which is always an upper bound. When
/// the terminal set is small and weights are large, the kernelization route
/// is cheaper than the pseudopolynomial table and is used instead; both
/// routes are exact.
pub fn solve_exact_tree(tree: &TreeInstance) -> Result<SolveResult> {
    solve_exact_tree_with_limits(tree, &SolveLimits::default())
}

/// Below this work estimate the dynamic program is taken unconditionally,
/// keeping the two exact routes independent at test scale.
const DP_DIRECT_THRESHOLD: u128 = 50_000_000;

pub fn solve_exact_tree_with_limits(
    tree: &TreeInstance,
    limits: &SolveLimits,
) -> Result<SolveResult> {
    let rooted = lowest_terminal_root(tree)?;
    let ub = rooted.canonical_cut()?.cost;
    let kernel_est = kernel_cost_estimate(rooted.graph().terminal_count());
    let dp_est = dp_cost_estimate(&rooted, ub);
    if dp_est > DP_DIRECT_THRESHOLD && kernel_est < dp_est {
        return kernel::solve_fpt(tree);
    }
    match solve_with_cap(&rooted, ub, limits) {
        Ok(Some(res)) => Ok(res),
        Ok(None) => Err(Error::Internal("canonical cut bound was infeasible".into())),
        Err(Error::LimitExceeded(msg)) => {
            if kernel_est < u128::MAX {
                kernel::solve_fpt(tree)
            } else {
                Err(Error::LimitExceeded(msg))
            }
        }
        Err(e) => Err(e),
    }
}

/// Minimal-cost cut of cost at most `cap`, or `None` if every connected
/// multiway cut costs more.
pub fn solve_capped_tree(tree: &TreeInstance, cap: u64) -> Result<Option<SolveResult>> {
    solve_capped_tree_with_limits(tree, cap, &SolveLimits::default())
}

pub fn solve_capped_tree_with_limits(
    tree: &TreeInstance,
    cap: u64,
    limits: &SolveLimits,
) -> Result<Option<SolveResult>> {
    let rooted = lowest_terminal_root(tree)?;
    solve_with_cap(&rooted, cap, limits)
}

fn solve_with_cap(
    rooted: &TreeInstance,
    cap: u64,
    limits: &SolveLimits,
) -> Result<Option<SolveResult>> {
    let table = DpTable::build(rooted, cap, None, limits)?;
    match table.best_entry() {
        None => Ok(None),
        Some(entry) => {
            let solution = table.reconstruct(&entry)?;
            Ok(Some(SolveResult {
                cost: entry.cost,
                solution,
            }))
        }
    }
}

/// A connected multiway cut whose maximum boundary equals `target` exactly,
/// or `None` if no such cut exists.
pub fn exact_cost_decide(tree: &TreeInstance, target: u64) -> Result<Option<CutSolution>> {
    exact_cost_decide_with_limits(tree, target, &SolveLimits::default())
}

pub fn exact_cost_decide_with_limits(
    tree: &TreeInstance,
    target: u64,
    limits: &SolveLimits,
) -> Result<Option<CutSolution>> {
    let rooted = lowest_terminal_root(tree)?;
    if target > rooted.graph().total_weight() {
        return Ok(None);
    }
    let table = DpTable::build(&rooted, target, Some(target), limits)?;
    match table.best_entry() {
        None => Ok(None),
        Some(entry) => Ok(Some(table.reconstruct(&entry)?)),
    }
}
