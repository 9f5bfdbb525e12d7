//! Clar covers and the Clar number.
//!
//! A Clar cover picks vertex-disjoint interior faces and a perfect matching of
//! whatever they leave uncovered. The Clar number is the largest possible face
//! count. It is computed exactly from the 0/1 program
//!
//! ```text
//! maximise  sum_f x_f
//! subject to  sum_{f ∋ v} x_f + sum_{e ∋ v} y_e = 1   for every vertex v
//! ```
//!
//! by solving its LP relaxation with a rational simplex and branching on
//! fractional face variables when the relaxation is not integral.

pub mod simplex;

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::matching::{
    enumerate_perfect_matchings, is_unique_perfect_matching, max_matching, perfect_matching,
    MatchingError,
};
use crate::planegraph::{EdgeId, FaceId, PlaneBipartiteGraph, VertexId};
use simplex::{EqualityLp, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClarError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("LP relaxation is infeasible")]
    Infeasible,
    #[error("invalid Clar cover: {0}")]
    CoverInvalid(String),
    #[error("cover has {faces} faces but the Clar number is {optimum}")]
    CoverNotMaximum { faces: usize, optimum: usize },
    #[error(transparent)]
    Matching(MatchingError),
}

impl From<MatchingError> for ClarError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::NoPerfectMatching => ClarError::NoPerfectMatching,
            other => ClarError::Matching(other),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClarCover {
    pub faces: Vec<FaceId>,
    pub edges: Vec<EdgeId>,
}

impl ClarCover {
    /// Checks the cover spans `g` with every vertex covered exactly once.
    pub fn validate(&self, g: &PlaneBipartiteGraph) -> Result<(), ClarError> {
        let mut covered = vec![false; g.vertex_count()];
        let mut claim = |v: VertexId, what: String| -> Result<(), ClarError> {
            if std::mem::replace(&mut covered[v.0], true) {
                return Err(ClarError::CoverInvalid(format!(
                    "vertex {v} covered twice ({what})"
                )));
            }
            Ok(())
        };
        for &f in &self.faces {
            if f.0 >= g.face_count() {
                return Err(ClarError::CoverInvalid(format!("no face {f}")));
            }
            for &v in &g.face(f).boundary {
                claim(v, format!("face {f}"))?;
            }
        }
        for &e in &self.edges {
            if e.0 >= g.edge_count() {
                return Err(ClarError::CoverInvalid(format!("no edge {e}")));
            }
            for v in g.endpoints(e) {
                claim(v, format!("edge {e}"))?;
            }
        }
        match covered.iter().position(|c| !c) {
            Some(v) => Err(ClarError::CoverInvalid(format!("vertex {v} uncovered"))),
            None => Ok(()),
        }
    }

    /// Vertices on the boundaries of the cover's faces.
    pub fn face_vertices(&self, g: &PlaneBipartiteGraph) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .faces
            .iter()
            .flat_map(|&f| g.face(f).boundary.iter().copied())
            .collect();
        out.sort();
        out
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The root relaxation already had integral face variables.
    LpIntegral,
    /// Optimality proved by branch and bound.
    BranchAndBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClarResult {
    pub clar_number: usize,
    pub witness: ClarCover,
    pub certificate: Certificate,
    /// Optimum of the root relaxation, as `p/q`.
    #[serde(serialize_with = "serialize_rational")]
    pub lp_bound: BigRational,
    pub nodes: usize,
}

fn serialize_rational<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The 0/1 model. Columns are faces (by id) followed by edges (by id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    pub face_columns: Vec<FaceId>,
    pub edge_columns: Vec<EdgeId>,
    /// One row per vertex: the columns whose support contains it, ascending.
    pub rows: Vec<Vec<usize>>,
    /// Vertex set of each column.
    pub supports: Vec<Vec<VertexId>>,
}

impl IlpModel {
    pub fn column_count(&self) -> usize {
        self.face_columns.len() + self.edge_columns.len()
    }

    pub fn is_face_column(&self, col: usize) -> bool {
        col < self.face_columns.len()
    }

    pub fn column_name(&self, col: usize) -> String {
        if self.is_face_column(col) {
            format!("xF{}", self.face_columns[col].0)
        } else {
            format!("yE{}", self.edge_columns[col - self.face_columns.len()].0)
        }
    }

    /// CPLEX LP text of the model, for cross-checking with external solvers.
    pub fn to_cplex_lp(&self) -> String {
        let mut out = String::from("\\ Clar number model\nMaximize\n obj:");
        if self.face_columns.is_empty() {
            if self.column_count() > 0 {
                let _ = write!(out, " 0 {}", self.column_name(0));
            }
        } else {
            for col in 0..self.face_columns.len() {
                let sep = if col == 0 { " " } else { " + " };
                let _ = write!(out, "{sep}{}", self.column_name(col));
            }
        }
        out.push_str("\nSubject To\n");
        for (v, row) in self.rows.iter().enumerate() {
            let _ = write!(out, " v{v}:");
            for (i, &col) in row.iter().enumerate() {
                let sep = if i == 0 { " " } else { " + " };
                let _ = write!(out, "{sep}{}", self.column_name(col));
            }
            out.push_str(" = 1\n");
        }
        out.push_str("Binary\n");
        for col in 0..self.column_count() {
            let _ = writeln!(out, " {}", self.column_name(col));
        }
        out.push_str("End\n");
        out
    }

    /// The relaxation restricted by fixings. `fixed_one` face columns are
    /// forced to 1 (their vertices drop out); `fixed_zero` columns are removed.
    fn restricted_lp(&self, fixed_one: &[usize], fixed_zero: &[usize]) -> Option<Restricted> {
        let mut row_gone = vec![false; self.rows.len()];
        for &c in fixed_one {
            for v in &self.supports[c] {
                if std::mem::replace(&mut row_gone[v.0], true) {
                    return None;
                }
            }
        }
        let mut col_gone = vec![false; self.column_count()];
        for &c in fixed_one.iter().chain(fixed_zero) {
            col_gone[c] = true;
        }
        for (c, support) in self.supports.iter().enumerate() {
            if support.iter().any(|v| row_gone[v.0]) {
                col_gone[c] = true;
            }
        }
        let cols: Vec<usize> = (0..self.column_count()).filter(|&c| !col_gone[c]).collect();
        let mut local = vec![usize::MAX; self.column_count()];
        for (i, &c) in cols.iter().enumerate() {
            local[c] = i;
        }
        let mut lp = EqualityLp {
            cols: cols.len(),
            objective: cols
                .iter()
                .map(|&c| i64::from(self.is_face_column(c)))
                .collect(),
            ..Default::default()
        };
        for (v, row) in self.rows.iter().enumerate() {
            if row_gone[v] {
                continue;
            }
            let entries: Vec<(usize, i64)> = row
                .iter()
                .filter(|&&c| !col_gone[c])
                .map(|&c| (local[c], 1))
                .collect();
            if entries.is_empty() {
                return None;
            }
            lp.rows.push(entries);
            lp.rhs.push(1);
        }
        Some(Restricted { lp, cols })
    }
}

struct Restricted {
    lp: EqualityLp,
    cols: Vec<usize>,
}

pub fn build_ilp(g: &PlaneBipartiteGraph) -> IlpModel {
    let face_columns: Vec<FaceId> = g.face_ids().collect();
    let edge_columns: Vec<EdgeId> = g.edge_ids().collect();
    let mut supports: Vec<Vec<VertexId>> = face_columns
        .iter()
        .map(|&f| {
            let mut b = g.face(f).boundary.clone();
            b.sort();
            b
        })
        .collect();
    supports.extend(edge_columns.iter().map(|&e| g.endpoints(e).to_vec()));
    let mut rows = vec![Vec::new(); g.vertex_count()];
    for (c, support) in supports.iter().enumerate() {
        for v in support {
            rows[v.0].push(c);
        }
    }
    IlpModel {
        face_columns,
        edge_columns,
        rows,
        supports,
    }
}

/// Exact optimum of the relaxation with its assignment (one value per column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: BigRational,
    pub assignment: Vec<BigRational>,
}

pub fn solve_lp_relaxation(model: &IlpModel) -> Result<LpSolution, ClarError> {
    solve_restricted(model, &[], &[]).ok_or(ClarError::Infeasible)
}

fn solve_restricted(
    model: &IlpModel,
    fixed_one: &[usize],
    fixed_zero: &[usize],
) -> Option<LpSolution> {
    let restricted = model.restricted_lp(fixed_one, fixed_zero)?;
    let (outcome, _) = simplex::solve(&restricted.lp);
    match outcome {
        LpOutcome::Optimal { value, x } => {
            let mut assignment = vec![BigRational::zero(); model.column_count()];
            for &c in fixed_one {
                assignment[c] = BigRational::one();
            }
            for (i, &c) in restricted.cols.iter().enumerate() {
                assignment[c] = x[i].clone();
            }
            let value = value + BigRational::from_integer(fixed_one.len().into());
            Some(LpSolution { value, assignment })
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("every column is bounded by a row with rhs 1"),
    }
}

fn integral_faces(model: &IlpModel, sol: &LpSolution) -> Option<Vec<FaceId>> {
    let mut faces = Vec::new();
    for (col, &f) in model.face_columns.iter().enumerate() {
        let x = &sol.assignment[col];
        if !x.is_integer() {
            return None;
        }
        if x.is_one() {
            faces.push(f);
        }
    }
    Some(faces)
}

/// Most fractional face column (closest to 1/2), ties to the lowest face id.
fn branching_column(model: &IlpModel, sol: &LpSolution) -> Option<usize> {
    let half = BigRational::new(1.into(), 2.into());
    (0..model.face_columns.len())
        .filter(|&c| !sol.assignment[c].is_integer())
        .min_by_key(|&c| {
            let d = &sol.assignment[c] - &half;
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        })
}

struct Node {
    bound: BigRational,
    seq: usize,
    fixed_one: Vec<usize>,
    fixed_zero: Vec<usize>,
    sol: LpSolution,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // Max-heap: larger bound first, then earlier creation.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Completes a face set to a cover with a perfect matching of the remainder.
fn complete_cover(g: &PlaneBipartiteGraph, faces: Vec<FaceId>) -> Option<ClarCover> {
    let mut used = Vec::new();
    for &f in &faces {
        used.extend(g.face(f).boundary.iter().copied());
    }
    let rest = g.without_vertices(used);
    let m = max_matching(&rest.graph);
    if !m.is_perfect() {
        return None;
    }
    let mut edges: Vec<EdgeId> = m.edges().iter().map(|&e| rest.parent_edge(e)).collect();
    edges.sort();
    let mut faces = faces;
    faces.sort();
    Some(ClarCover { faces, edges })
}

/// Exact Clar number with a maximum cover.
pub fn solve_clar(g: &PlaneBipartiteGraph) -> Result<ClarResult, ClarError> {
    perfect_matching(g)?;
    if g.face_count() == 0 {
        let witness = complete_cover(g, Vec::new()).expect("graph has a perfect matching");
        return Ok(ClarResult {
            clar_number: 0,
            witness,
            certificate: Certificate::LpIntegral,
            lp_bound: BigRational::zero(),
            nodes: 0,
        });
    }
    let model = build_ilp(g);
    let root = solve_lp_relaxation(&model)?;
    let lp_bound = root.value.clone();

    if let Some(faces) = integral_faces(&model, &root) {
        let witness = complete_cover(g, faces).expect(
            "integral face variables leave a fractionally, hence integrally, matchable remainder",
        );
        return Ok(ClarResult {
            clar_number: witness.faces.len(),
            witness,
            certificate: Certificate::LpIntegral,
            lp_bound,
            nodes: 1,
        });
    }

    // Best-first branch and bound on fractional face variables.
    let mut incumbent: Option<ClarCover> = None;
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    let mut nodes = 1;
    heap.push(Node {
        bound: root.value.clone(),
        seq,
        fixed_one: Vec::new(),
        fixed_zero: Vec::new(),
        sol: root,
    });
    while let Some(node) = heap.pop() {
        let best = incumbent.as_ref().map_or(-1, |c| c.faces.len() as i64);
        // Objective is integral: a node is useful only if floor(bound) > best.
        if node.bound.floor().to_integer() <= best.into() {
            break;
        }
        if let Some(faces) = integral_faces(&model, &node.sol) {
            if let Some(cover) = complete_cover(g, faces) {
                incumbent = Some(cover);
            }
            continue;
        }
        let col =
            branching_column(&model, &node.sol).expect("fractional node has a fractional face");
        for one in [true, false] {
            let (mut fixed_one, mut fixed_zero) = (node.fixed_one.clone(), node.fixed_zero.clone());
            if one {
                fixed_one.push(col);
            } else {
                fixed_zero.push(col);
            }
            nodes += 1;
            if let Some(sol) = solve_restricted(&model, &fixed_one, &fixed_zero) {
                seq += 1;
                heap.push(Node {
                    bound: sol.value.clone(),
                    seq,
                    fixed_one,
                    fixed_zero,
                    sol,
                });
            }
        }
    }
    let witness = incumbent.expect("the all-edge cover is always feasible");
    Ok(ClarResult {
        clar_number: witness.faces.len(),
        witness,
        certificate: Certificate::BranchAndBound,
        lp_bound,
        nodes,
    })
}

/// Lazy enumeration of every Clar cover, optionally only those with exactly
/// `k` faces. Face subsets are visited in lexicographic order; each subset is
/// followed by every perfect matching of its remainder.
pub struct ClarCovers<'g> {
    g: &'g PlaneBipartiteGraph,
    exactly: Option<usize>,
    max_faces: usize,
    // current face subset and, per level, the next face to try
    chosen: Vec<FaceId>,
    used: Vec<bool>,
    next_face: Vec<usize>,
    pending: std::vec::IntoIter<ClarCover>,
    started: bool,
}

pub fn enumerate_clar_covers(
    g: &PlaneBipartiteGraph,
    exactly_k_faces: Option<usize>,
) -> ClarCovers<'_> {
    let smallest_face = g
        .faces()
        .iter()
        .map(|f| f.boundary.len())
        .min()
        .unwrap_or(4);
    ClarCovers {
        g,
        exactly: exactly_k_faces,
        max_faces: g.vertex_count() / smallest_face,
        chosen: Vec::new(),
        used: vec![false; g.vertex_count()],
        next_face: vec![0],
        pending: Vec::new().into_iter(),
        started: false,
    }
}

impl ClarCovers<'_> {
    fn covers_for_current(&self) -> Vec<ClarCover> {
        if self.exactly.is_some_and(|k| k != self.chosen.len()) {
            return Vec::new();
        }
        let rest = self
            .g
            .induced_subgraph(self.g.vertex_ids().filter(|v| !self.used[v.0]));
        let faces = self.chosen.clone();
        enumerate_perfect_matchings(&rest.graph)
            .map(|m| ClarCover {
                faces: faces.clone(),
                edges: m.edges().iter().map(|&e| rest.parent_edge(e)).collect(),
            })
            .collect()
    }

    fn face_fits(&self, f: usize) -> bool {
        self.g
            .face(FaceId(f))
            .boundary
            .iter()
            .all(|v| !self.used[v.0])
    }

    fn set_face(&mut self, f: FaceId, value: bool) {
        for &v in &self.g.face(f).boundary {
            self.used[v.0] = value;
        }
    }

    /// Advances to the next disjoint face subset in lexicographic order.
    fn advance(&mut self) -> bool {
        let limit = self.exactly.unwrap_or(self.max_faces).min(self.max_faces);
        loop {
            let depth = self.chosen.len();
            let start = self.next_face[depth];
            let candidate = if depth < limit {
                (start..self.g.face_count()).find(|&f| self.face_fits(f))
            } else {
                None
            };
            match candidate {
                Some(f) => {
                    self.next_face[depth] = f + 1;
                    self.chosen.push(FaceId(f));
                    self.set_face(FaceId(f), true);
                    self.next_face.push(f + 1);
                    return true;
                }
                None => {
                    // backtrack
                    self.next_face.pop();
                    let Some(f) = self.chosen.pop() else {
                        return false;
                    };
                    self.set_face(f, false);
                }
            }
        }
    }
}

impl Iterator for ClarCovers<'_> {
    type Item = ClarCover;

    fn next(&mut self) -> Option<ClarCover> {
        loop {
            if let Some(cover) = self.pending.next() {
                return Some(cover);
            }
            if !self.started {
                self.started = true;
            } else if !self.advance() {
                return None;
            }
            self.pending = self.covers_for_current().into_iter();
        }
    }
}

/// Checks that removing the faces of a maximum Clar cover leaves a graph with
/// exactly one perfect matching.
pub fn verify_unique_after_removal(
    g: &PlaneBipartiteGraph,
    cover: &ClarCover,
) -> Result<bool, ClarError> {
    cover.validate(g)?;
    let optimum = solve_clar(g)?.clar_number;
    verify_unique_after_removal_with(g, cover, optimum)
}

/// As [`verify_unique_after_removal`] with a known Clar number.
pub fn verify_unique_after_removal_with(
    g: &PlaneBipartiteGraph,
    cover: &ClarCover,
    clar_number: usize,
) -> Result<bool, ClarError> {
    cover.validate(g)?;
    if cover.faces.len() != clar_number {
        return Err(ClarError::CoverNotMaximum {
            faces: cover.faces.len(),
            optimum: clar_number,
        });
    }
    let rest = g.without_vertices(cover.face_vertices(g));
    Ok(is_unique_perfect_matching(&rest.graph)?.is_unique())
}

/// Largest face count over all Clar covers, by exhaustive face-subset search.
pub fn brute_force_clar_number(g: &PlaneBipartiteGraph) -> Option<usize> {
    enumerate_clar_covers(g, None).map(|c| c.faces.len()).max()
}

/// Distinct face sets among the maximum covers.
pub fn maximum_face_sets(g: &PlaneBipartiteGraph, clar_number: usize) -> BTreeSet<Vec<FaceId>> {
    enumerate_clar_covers(g, Some(clar_number))
        .map(|c| c.faces)
        .collect()
}
