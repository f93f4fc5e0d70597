//! Instance generators for the hardness reductions, each paired with the
//! property it must satisfy. All constructions carry a global integer scale
//! so that halves and thirds of the input numbers stay integral; reported
//! decision thresholds are in scaled units.

use crate::error::{Error, Result};
use crate::graph::{NumberFlavor, NumberInstance, Vertex, WeightedGraph};

/// Which construction produced a [`GeneratedInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// Three-way partition → complete bipartite `K_{3,n}`.
    K3n,
    /// Partition → bipartite planar graph of tree-width two.
    Tw2,
    /// Partition → the rooted gadget tree whose cut polytope has the
    /// partition polytope as a face.
    Xc,
    /// The gadget tree plus an anchor terminal, for exact-cost decisions.
    ExactCost,
}

impl ReductionKind {
    pub fn name(&self) -> &'static str {
        match self {
            ReductionKind::K3n => "k3n",
            ReductionKind::Tw2 => "tw2",
            ReductionKind::Xc => "xc",
            ReductionKind::ExactCost => "exactcost",
        }
    }
}

/// Named vertices and edges of a generated instance; edge annotations index
/// into the graph's edge list.
#[derive(Debug, Clone, Default)]
pub struct Annotations {
    pub vertices: Vec<(String, Vertex)>,
    pub edges: Vec<(String, usize)>,
}

impl Annotations {
    pub fn vertex(&self, name: &str) -> Option<Vertex> {
        self.vertices
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }

    pub fn edge(&self, name: &str) -> Option<usize> {
        self.edges.iter().find(|(n, _)| n == name).map(|&(_, e)| e)
    }
}

/// Output of a reduction generator: the graph, its provenance, the weight
/// scale, and names for the construction's distinguished elements.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: WeightedGraph,
    pub kind: ReductionKind,
    pub scale: u64,
    pub source: NumberInstance,
    pub annotations: Annotations,
}

impl GeneratedInstance {
    /// The scaled cost characterizing yes-instances: `2N·scale` for the
    /// `K_{3,n}` reduction, `B·scale` for tree-width two, `(3B/2)·scale`
    /// for the gadget tree (its unconditional minimum), and `(7B/2)·scale`
    /// for the exact-cost construction.
    pub fn decision_cost(&self) -> u64 {
        let t = self.source.target();
        match self.kind {
            ReductionKind::K3n => 2 * t * self.scale,
            ReductionKind::Tw2 => t * self.scale,
            ReductionKind::Xc => 3 * t * self.scale / 2,
            ReductionKind::ExactCost => 7 * t * self.scale / 2,
        }
    }
}

fn require_flavor(nums: &NumberInstance, flavor: NumberFlavor, what: &str) -> Result<()> {
    if nums.flavor() != flavor {
        return Err(Error::InvalidInput(format!(
            "{what} requires a {flavor:?} instance"
        )));
    }
    Ok(())
}

/// Three-way partition with sum `3N` → `K_{3,n}` with terminals `t1,t2,t3`
/// and the edge `(v_i, t_j)` of weight `scale·a_i/2`.
///
/// The optimal connected cut costs at least `scale·2N`, with equality
/// exactly when the numbers split into three parts of sum `N`.
pub fn gen_k3n(nums: &NumberInstance) -> Result<GeneratedInstance> {
    require_flavor(nums, NumberFlavor::ThreeWay, "gen_k3n")?;
    let scale = 2;
    let n = nums.len();
    let mut edges = Vec::with_capacity(3 * n);
    let mut annotations = Annotations::default();
    for j in 1..=3 {
        annotations.vertices.push((format!("t{j}"), j));
    }
    for (i, &a) in nums.numbers().iter().enumerate() {
        let v = 3 + i + 1;
        annotations.vertices.push((format!("v{}", i + 1), v));
        for t in 1..=3 {
            edges.push((v, t, a)); // scale·a/2 with scale = 2
        }
    }
    let graph = WeightedGraph::new(n + 3, edges, vec![1, 2, 3])?;
    Ok(GeneratedInstance {
        graph,
        kind: ReductionKind::K3n,
        scale,
        source: nums.clone(),
        annotations,
    })
}

/// Partition with sum `2B` → bipartite planar graph of tree-width two.
///
/// Terminals `t1`, `t2` are joined to every `v_i` by weight-zero edges;
/// each `v_i` carries a six-terminal gadget: three neighbors of weight
/// `scale·a_i/3` each holding a pendant terminal of weight
/// `scale·(B - a_i/3)`. The scale is 6 so all thirds are integral.
///
/// The optimal connected cut costs `scale·B` exactly when the numbers admit
/// a balanced partition; placing any `v_i` outside the parts of `t1`, `t2`
/// forces a larger cost.
pub fn gen_tw2(nums: &NumberInstance) -> Result<GeneratedInstance> {
    require_flavor(nums, NumberFlavor::Partition, "gen_tw2")?;
    let scale = 6;
    let b = nums.target();
    let n = nums.len();
    let mut edges = Vec::new();
    let mut terminals = vec![1, 2];
    let mut annotations = Annotations::default();
    annotations.vertices.push(("t1".into(), 1));
    annotations.vertices.push(("t2".into(), 2));
    for (i, &a) in nums.numbers().iter().enumerate() {
        let base = 2 + 7 * i;
        let v = base + 1;
        let arms = [base + 2, base + 3, base + 4];
        let pendants = [base + 5, base + 6, base + 7];
        annotations.vertices.push((format!("v{}", i + 1), v));
        edges.push((v, 1, 0));
        edges.push((v, 2, 0));
        for (arm, pendant) in arms.iter().zip(&pendants) {
            edges.push((v, *arm, 2 * a)); // scale·a/3
            edges.push((*arm, *pendant, 6 * b - 2 * a)); // scale·(B - a/3)
            terminals.push(*arm);
            terminals.push(*pendant);
        }
    }
    terminals.sort_unstable();
    let graph = WeightedGraph::new(2 + 7 * n, edges, terminals)?;
    Ok(GeneratedInstance {
        graph,
        kind: ReductionKind::Tw2,
        scale,
        source: nums.clone(),
        annotations,
    })
}

/// Structural verification for [`gen_tw2`] output: two-colorable, and
/// shaped as `K_{2,n}` plus disjoint pendant gadget trees (hence planar and
/// of tree-width two by construction).
pub fn verify_tw2_structure(gen: &GeneratedInstance) -> Result<()> {
    if gen.kind != ReductionKind::Tw2 {
        return Err(Error::InvalidInput("not a tree-width-two instance".into()));
    }
    let g = &gen.graph;
    if !g.is_bipartite() {
        return Err(Error::Internal("generated graph is not bipartite".into()));
    }
    let n = gen.source.len();
    for (i, _) in gen.source.numbers().iter().enumerate() {
        let v = 2 + 7 * i + 1;
        let nbrs: Vec<Vertex> = g.neighbors(v).iter().map(|&(w, _)| w).collect();
        let expected = vec![1, 2, v + 1, v + 2, v + 3];
        if nbrs != expected {
            return Err(Error::Internal(format!(
                "hub v{} has neighbors {nbrs:?}",
                i + 1
            )));
        }
        for arm in [v + 1, v + 2, v + 3] {
            if g.degree(arm) != 2 || g.degree(arm + 3) != 1 {
                return Err(Error::Internal(format!(
                    "gadget {} is not a pendant tree",
                    i + 1
                )));
            }
        }
    }
    // t1 and t2 see exactly the hubs, so contracting the gadget trees
    // leaves K_{2,n}
    for t in [1, 2] {
        let hubs: Vec<Vertex> = g.neighbors(t).iter().map(|&(w, _)| w).collect();
        let expected: Vec<Vertex> = (0..n).map(|i| 2 + 7 * i + 1).collect();
        if hubs != expected {
            return Err(Error::Internal(format!(
                "terminal {t} has neighbors {hubs:?}"
            )));
        }
    }
    Ok(())
}

/// Partition with sum `2B` → the rooted gadget tree: per number a hub
/// `u_i` under the root with two terminal arms `x_i^1, x_i^2` and pendant
/// terminals `x_i^3, x_i^4`, with weights `scale·a_i/2` on
/// `e_i^0, e_i^1, e_i^2` and `scale·(3B/2 - a_i)` on `e_i^3, e_i^4`.
///
/// Every connected cut costs at least `scale·3B/2`; the boundary of the
/// root part is `scale·(B + w(S)/2)` where `S` collects the branches whose
/// hub edge `e_i^0` survives.
pub fn gen_xc_tree(nums: &NumberInstance) -> Result<GeneratedInstance> {
    require_flavor(nums, NumberFlavor::Partition, "gen_xc_tree")?;
    let scale = 2;
    let b = nums.target();
    for (i, &a) in nums.numbers().iter().enumerate() {
        if 2 * a > 3 * b {
            return Err(Error::InvalidInput(format!(
                "number {} = {a} exceeds 3B/2 = {}/2; gadget weights degenerate",
                i + 1,
                3 * b
            )));
        }
    }
    let n = nums.len();
    let mut edges = Vec::with_capacity(5 * n);
    let mut terminals = vec![1];
    let mut annotations = Annotations::default();
    annotations.vertices.push(("root".into(), 1));
    for (i, &a) in nums.numbers().iter().enumerate() {
        let base = 1 + 5 * i;
        let (u, x1, x2, x3, x4) = (base + 1, base + 2, base + 3, base + 4, base + 5);
        annotations.vertices.push((format!("u{}", i + 1), u));
        for (j, x) in [x1, x2, x3, x4].iter().enumerate() {
            annotations
                .vertices
                .push((format!("x{}_{}", i + 1, j + 1), *x));
            terminals.push(*x);
        }
        let heavy = 3 * b - 2 * a; // scale·(3B/2 - a)
        let light = a; // scale·a/2
        for (j, (eu, ev, w)) in [
            (1, u, light),
            (u, x1, light),
            (u, x2, light),
            (x1, x3, heavy),
            (x2, x4, heavy),
        ]
        .into_iter()
        .enumerate()
        {
            annotations
                .edges
                .push((format!("e{}_{}", i + 1, j), edges.len()));
            edges.push((eu, ev, w));
        }
    }
    terminals.sort_unstable();
    let graph = WeightedGraph::new(1 + 5 * n, edges, terminals)?;
    Ok(GeneratedInstance {
        graph,
        kind: ReductionKind::Xc,
        scale,
        source: nums.clone(),
        annotations,
    })
}

/// [`gen_xc_tree`] plus one anchor terminal tied to the root by an edge of
/// weight `scale·2B`, which makes the root part the unique maximum: its
/// boundary becomes `scale·(3B + w(S)/2)`, so a cut of cost exactly
/// `scale·7B/2` exists precisely when the partition instance is solvable.
pub fn gen_exact_cost(nums: &NumberInstance) -> Result<GeneratedInstance> {
    let base = gen_xc_tree(nums)?;
    let b = nums.target();
    let n = nums.len();
    let anchor = 5 * n + 2;
    let mut edges: Vec<(Vertex, Vertex, u64)> =
        base.graph.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    let mut annotations = base.annotations;
    annotations.vertices.push(("anchor".into(), anchor));
    annotations.edges.push(("e_anchor".into(), edges.len()));
    edges.push((1, anchor, 4 * b)); // scale·2B
    let mut terminals = base.graph.terminals().to_vec();
    terminals.push(anchor);
    let graph = WeightedGraph::new(anchor, edges, terminals)?;
    Ok(GeneratedInstance {
        graph,
        kind: ReductionKind::ExactCost,
        scale: base.scale,
        source: nums.clone(),
        annotations,
    })
}

/// Subset-sum `(Ŝ, B̂)` → partition on `Ŝ ∪ {ΣŜ, 2B̂}` with target
/// `B = B̂ + ΣŜ`; solvable exactly when the subset-sum instance is, with
/// the correspondence fixing which side the element `ΣŜ` lies on.
pub fn subsetsum_to_partition(nums: &NumberInstance) -> Result<NumberInstance> {
    require_flavor(nums, NumberFlavor::SubsetSum, "subsetsum_to_partition")?;
    let sum = nums.sum();
    let mut numbers = nums.numbers().to_vec();
    numbers.push(sum);
    numbers.push(2 * nums.target());
    let out = NumberInstance::partition(numbers)?;
    debug_assert_eq!(out.target(), nums.target() + sum);
    Ok(out)
}
