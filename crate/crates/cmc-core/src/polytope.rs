//! Vertices of the connected-cut polytope of a tree and combinatorial
//! verification of its face structure on the partition gadget trees.
//!
//! The polytope is the convex hull of one vector per connected multiway
//! cut: the 0/1 incidence vector of its cut edges extended by the cut's
//! cost. Face checks are performed directly over this finite vertex set —
//! a face is the subset of vertices tight for a valid inequality — so no
//! hull computation is needed and all arithmetic stays integral.

use std::collections::BTreeSet;

use crate::cut::CutSolution;
use crate::error::{Error, Result};
use crate::reductions::{GeneratedInstance, ReductionKind};
use crate::tree::{enumerate_connected_cuts_with_limit, TreeInstance};

/// Vertex limit used when enumerating gadget trees, which are larger than
/// the default enumeration bound but have few cuts.
const GADGET_ENUM_VERTEX_LIMIT: usize = 40;

/// The vertex set of the connected-cut polytope: one integer vector of
/// length `|E| + 1` per cut, edge coordinates in instance edge order,
/// the cost last.
#[derive(Debug, Clone)]
pub struct PolytopeVertexSet {
    pub edge_count: usize,
    pub vectors: Vec<Vec<u64>>,
}

impl PolytopeVertexSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Enumerates the polytope vertices of a tree instance.
pub fn cut_polytope_vertices(tree: &TreeInstance) -> Result<PolytopeVertexSet> {
    cut_polytope_vertices_with_limit(tree, crate::tree::DEFAULT_ENUM_VERTEX_LIMIT)
}

pub fn cut_polytope_vertices_with_limit(
    tree: &TreeInstance,
    max_vertices: usize,
) -> Result<PolytopeVertexSet> {
    let cuts = enumerate_connected_cuts_with_limit(tree, max_vertices)?;
    Ok(vertex_set_from_cuts(tree, &cuts))
}

fn vertex_set_from_cuts(tree: &TreeInstance, cuts: &[CutSolution]) -> PolytopeVertexSet {
    let m = tree.graph().edge_count();
    let vectors = cuts
        .iter()
        .map(|c| {
            let mut v = vec![0u64; m + 1];
            for &e in &c.cut_edges {
                v[e] = 1;
            }
            v[m] = c.cost;
            v
        })
        .collect();
    PolytopeVertexSet {
        edge_count: m,
        vectors,
    }
}

/// Outcome of the face-structure verification on a gadget-tree instance.
///
/// `F` is the face of minimum cost, `G` the sub-face where the root
/// boundary expression is tight; the projection drops every coordinate
/// except one indicator per branch.
#[derive(Debug, Clone)]
pub struct FaceReport {
    pub scale: u64,
    pub target: u64,
    /// Smallest cost over all vertices.
    pub min_value: u64,
    /// The minimum equals `scale·3B/2`.
    pub min_value_ok: bool,
    /// Vertex indices tight for the minimum.
    pub face_f: Vec<usize>,
    /// `F` is exactly the set of cuts with `w(S) ≤ B` and `S ≠ [n]`.
    pub face_f_characterized: bool,
    /// On every vertex, the root boundary equals `scale·(B + w(S)/2)` and
    /// equals the arm-edge expression.
    pub boundary_identity_ok: bool,
    /// On `F`, the expression stays at most `scale·3B/2`.
    pub face_f_bound_ok: bool,
    /// Vertex indices of `F` where the expression is tight.
    pub face_g: Vec<usize>,
    /// Branch indicators of the vertices of `G`, duplicates collapsed.
    pub projection: BTreeSet<Vec<u8>>,
    /// Characteristic vectors of subsets summing to `B`, enumerated
    /// independently of any cut machinery.
    pub partition_sets: BTreeSet<Vec<u8>>,
    /// The projection equals the partition solution set.
    pub projection_ok: bool,
}

impl FaceReport {
    pub fn all_ok(&self) -> bool {
        self.min_value_ok
            && self.face_f_characterized
            && self.boundary_identity_ok
            && self.face_f_bound_ok
            && self.projection_ok
    }
}

/// Verifies the face structure of a [`crate::reductions::gen_xc_tree`]
/// instance over its enumerated polytope vertices.
pub fn verify_face_structure(gen: &GeneratedInstance) -> Result<FaceReport> {
    if gen.kind != ReductionKind::Xc {
        return Err(Error::InvalidInput(format!(
            "face verification needs an xc instance, got {}",
            gen.kind.name()
        )));
    }
    let tree = TreeInstance::new(gen.graph.clone(), 1)?;
    let cuts = enumerate_connected_cuts_with_limit(&tree, GADGET_ENUM_VERTEX_LIMIT)?;
    let n = gen.source.len();
    let b = gen.source.target();
    let scale = gen.scale;
    let min_target = 3 * scale * b / 2;
    let root_part = gen.graph.terminal_index(1).expect("root is a terminal");

    let hub_edges: Vec<usize> = (0..n)
        .map(|i| {
            gen.annotations
                .edge(&format!("e{}_0", i + 1))
                .expect("hub edge annotated")
        })
        .collect();
    let arm_edges: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            (
                gen.annotations.edge(&format!("e{}_1", i + 1)).unwrap(),
                gen.annotations.edge(&format!("e{}_2", i + 1)).unwrap(),
            )
        })
        .collect();

    let min_value = cuts.iter().map(|c| c.cost).min().unwrap_or(0);
    let mut face_f = Vec::new();
    let mut face_g = Vec::new();
    let mut face_f_characterized = true;
    let mut boundary_identity_ok = true;
    let mut face_f_bound_ok = true;
    let mut projection = BTreeSet::new();
    for (idx, cut) in cuts.iter().enumerate() {
        let mut is_cut = vec![false; gen.graph.edge_count()];
        for &e in &cut.cut_edges {
            is_cut[e] = true;
        }
        let survivors: Vec<u8> = hub_edges.iter().map(|&e| u8::from(!is_cut[e])).collect();
        let w_s: u64 = gen
            .source
            .numbers()
            .iter()
            .zip(&survivors)
            .filter(|(_, &s)| s == 1)
            .map(|(&a, _)| a)
            .sum();
        let root_boundary = cut.boundaries[root_part];
        // root boundary must be scale·(B + w(S)/2), and must equal the
        // weighted arm-edge expression
        let expected_root = scale * b + scale * w_s / 2;
        let expr: u64 = arm_edges
            .iter()
            .map(|&(e1, e2)| {
                gen.graph.edges()[e1].w * u64::from(is_cut[e1])
                    + gen.graph.edges()[e2].w * u64::from(is_cut[e2])
            })
            .sum();
        if root_boundary != expected_root || expr != root_boundary {
            boundary_identity_ok = false;
        }
        let on_f = cut.cost == min_value;
        let predicted_on_f = w_s <= b && survivors.contains(&0);
        if on_f != predicted_on_f {
            face_f_characterized = false;
        }
        if on_f {
            face_f.push(idx);
            if expr > min_target {
                face_f_bound_ok = false;
            }
            if expr == min_target {
                face_g.push(idx);
                projection.insert(survivors);
            }
        }
    }

    let mut partition_sets = BTreeSet::new();
    if n <= 30 {
        for mask in 0..1u64 << n {
            let s: u64 = gen
                .source
                .numbers()
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &a)| a)
                .sum();
            if s == b {
                partition_sets.insert((0..n).map(|i| (mask >> i & 1) as u8).collect::<Vec<u8>>());
            }
        }
    }
    let projection_ok = projection == partition_sets;
    Ok(FaceReport {
        scale,
        target: b,
        min_value,
        min_value_ok: min_value == min_target,
        face_f,
        face_f_characterized,
        boundary_identity_ok,
        face_f_bound_ok,
        face_g,
        projection,
        partition_sets,
        projection_ok,
    })
}

/// Checks, over the enumerated vertices of a
/// [`crate::reductions::gen_exact_cost`] instance, that the root boundary
/// is the maximum on every cut and reports whether the exact target cost
/// `scale·7B/2` is attained.
#[derive(Debug, Clone)]
pub struct ExactCostReport {
    pub root_always_max: bool,
    pub target_attained: bool,
    pub target: u64,
}

pub fn verify_exact_cost_structure(gen: &GeneratedInstance) -> Result<ExactCostReport> {
    if gen.kind != ReductionKind::ExactCost {
        return Err(Error::InvalidInput(format!(
            "exact-cost verification needs an exactcost instance, got {}",
            gen.kind.name()
        )));
    }
    let tree = TreeInstance::new(gen.graph.clone(), 1)?;
    let cuts = enumerate_connected_cuts_with_limit(&tree, GADGET_ENUM_VERTEX_LIMIT + 1)?;
    let root_part = gen.graph.terminal_index(1).expect("root is a terminal");
    let target = gen.decision_cost();
    let root_always_max = cuts.iter().all(|c| c.boundaries[root_part] == c.cost);
    let target_attained = cuts.iter().any(|c| c.cost == target);
    Ok(ExactCostReport {
        root_always_max,
        target_attained,
        target,
    })
}
