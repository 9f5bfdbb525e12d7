//! Forcing numbers of perfect matchings.
//!
//! A subset `S` of a perfect matching `M` forces `M` when no other perfect
//! matching contains it, which holds exactly when no `M`-alternating cycle
//! avoids every endpoint of `S`. The forcing number `f(G; M)` is the smallest
//! such `|S|`; the maximum forcing number `F(G)` maximises it over all `M`.
//!
//! [`max_forcing_number`] computes `F(G)` in polynomial time as the sum of the
//! Clar numbers of the elementary components. The `brute_force_*` functions
//! sweep every perfect matching and serve as oracles.

use serde::Serialize;
use thiserror::Error;

use crate::clar::{solve_clar, Certificate, ClarCover, ClarError, ClarResult};
use crate::decomp::{elementary_components, BondClass, Decomposition};
use crate::matching::{
    enumerate_perfect_matchings, find_alternating_cycle_masked, AlternatingCycle, Matching,
    MatchingError,
};
use crate::planegraph::{Color, EdgeId, FaceId, PlaneBipartiteGraph, VertexId};

pub const DEFAULT_MATCHING_BUDGET: usize = 1_000_000;
pub const DEFAULT_DEPTH_BUDGET: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("more than {0} perfect matchings")]
    BudgetExceeded(usize),
    #[error("forcing search deeper than {0}")]
    DepthExceeded(usize),
    #[error(transparent)]
    Matching(MatchingError),
    #[error(transparent)]
    Clar(ClarError),
}

impl From<MatchingError> for ForcingError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::NoPerfectMatching => ForcingError::NoPerfectMatching,
            MatchingError::NotPerfect => ForcingError::NotPerfect,
            MatchingError::BudgetExceeded(n) => ForcingError::BudgetExceeded(n),
            other => ForcingError::Matching(other),
        }
    }
}

impl From<ClarError> for ForcingError {
    fn from(e: ClarError) -> Self {
        match e {
            ClarError::NoPerfectMatching => ForcingError::NoPerfectMatching,
            other => ForcingError::Clar(other),
        }
    }
}

/// Limits for the exhaustive searches.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub matchings: usize,
    pub depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            matchings: DEFAULT_MATCHING_BUDGET,
            depth: DEFAULT_DEPTH_BUDGET,
        }
    }
}

/// Edges of a reference matching that no other perfect matching contains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcingSet {
    pub edges: Vec<EdgeId>,
}

impl ForcingSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    fn endpoint_mask(&self, g: &PlaneBipartiteGraph) -> Vec<bool> {
        let mut mask = vec![false; g.vertex_count()];
        for &e in &self.edges {
            for v in g.endpoints(e) {
                mask[v.0] = true;
            }
        }
        mask
    }

    /// True when `self ⊆ m` and no `m`-alternating cycle avoids its endpoints.
    pub fn forces(&self, g: &PlaneBipartiteGraph, m: &Matching) -> bool {
        self.edges.iter().all(|&e| m.contains(e))
            && find_alternating_cycle_masked(g, m, &self.endpoint_mask(g)).is_none()
    }
}

struct HittingSearch<'a> {
    g: &'a PlaneBipartiteGraph,
    m: &'a Matching,
    forbidden: Vec<bool>,
    excluded: Vec<bool>,
    chosen: Vec<EdgeId>,
    best: Option<Vec<EdgeId>>,
    first_only: bool,
}

impl HittingSearch<'_> {
    /// Every hitting set of size at most `k` is reached exactly once: branch
    /// `i` at a cycle takes its `i`-th matched edge and excludes the earlier ones.
    fn search(&mut self, k: usize) {
        if self.first_only && self.best.is_some() {
            return;
        }
        let Some(cycle) = find_alternating_cycle_masked(self.g, self.m, &self.forbidden) else {
            let mut found = self.chosen.clone();
            found.sort();
            if self.best.as_ref().is_none_or(|b| found < *b) {
                self.best = Some(found);
            }
            return;
        };
        if self.chosen.len() == k {
            return;
        }
        let mut options: Vec<EdgeId> = cycle
            .edges
            .iter()
            .copied()
            .filter(|&e| self.m.contains(e) && !self.excluded[e.0])
            .collect();
        options.sort();
        let mut newly_excluded = Vec::new();
        for e in options {
            let ends = self.g.endpoints(e);
            for v in ends {
                self.forbidden[v.0] = true;
            }
            self.chosen.push(e);
            self.search(k);
            self.chosen.pop();
            for v in ends {
                self.forbidden[v.0] = false;
            }
            self.excluded[e.0] = true;
            newly_excluded.push(e);
        }
        for e in newly_excluded {
            self.excluded[e.0] = false;
        }
    }
}

fn hitting_set_of_size(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    k: usize,
    first_only: bool,
) -> Option<Vec<EdgeId>> {
    let mut s = HittingSearch {
        g,
        m,
        forbidden: vec![false; g.vertex_count()],
        excluded: vec![false; g.edge_count()],
        chosen: Vec::new(),
        best: None,
        first_only,
    };
    s.search(k);
    s.best
}

/// Exact forcing number of `m` with the lexicographically smallest minimum
/// forcing set, by iterative deepening on the set size.
pub fn forcing_number_of(
    g: &PlaneBipartiteGraph,
    m: &Matching,
) -> Result<(usize, ForcingSet), ForcingError> {
    forcing_number_bounded(g, m, 0, DEFAULT_DEPTH_BUDGET)
}

/// As [`forcing_number_of`], starting the deepening at `lower_bound` and
/// failing beyond `max_depth`.
pub fn forcing_number_bounded(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    lower_bound: usize,
    max_depth: usize,
) -> Result<(usize, ForcingSet), ForcingError> {
    m.check_perfect_on(g)?;
    for k in lower_bound..=max_depth {
        if let Some(edges) = hitting_set_of_size(g, m, k, false) {
            return Ok((edges.len(), ForcingSet { edges }));
        }
    }
    Err(ForcingError::DepthExceeded(max_depth))
}

/// Some forcing set of size at most `k`, without the lexicographic tie-break.
pub fn find_forcing_set(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    k: usize,
) -> Result<Option<ForcingSet>, ForcingError> {
    m.check_perfect_on(g)?;
    Ok(hitting_set_of_size(g, m, k, true).map(|edges| ForcingSet { edges }))
}

/// Every simple `m`-alternating cycle, each listed once starting from its
/// smallest red vertex.
pub fn alternating_cycles(
    g: &PlaneBipartiteGraph,
    m: &Matching,
) -> Result<Vec<AlternatingCycle>, ForcingError> {
    m.check_perfect_on(g)?;
    let reds: Vec<VertexId> = g
        .vertex_ids()
        .filter(|&v| g.color(v) == Color::Red)
        .collect();
    // successor arcs on red vertices: (unmatched edge, blue, next red)
    let succ: Vec<Vec<(EdgeId, VertexId, VertexId)>> = g
        .vertex_ids()
        .map(|r| {
            if g.color(r) != Color::Red {
                return Vec::new();
            }
            g.neighbors(r)
                .iter()
                .filter(|&&(_, e)| m.edge_at(r) != Some(e))
                .map(|&(b, e)| {
                    let me = m.edge_at(b).expect("perfect matching");
                    (e, b, g.opposite(me, b))
                })
                .collect()
        })
        .collect();

    let mut cycles = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for &start in &reds {
        // DFS over reds greater than start
        let mut path = vec![start];
        let mut arcs: Vec<(EdgeId, VertexId)> = Vec::new();
        let mut cursor = vec![0usize];
        on_path[start.0] = true;
        while let Some(&r) = path.last() {
            let depth = path.len() - 1;
            if cursor[depth] < succ[r.0].len() {
                let (e, b, next) = succ[r.0][cursor[depth]];
                cursor[depth] += 1;
                if next == start {
                    let mut vertices = Vec::new();
                    let mut edges = Vec::new();
                    for (i, &(ue, blue)) in arcs.iter().chain(std::iter::once(&(e, b))).enumerate()
                    {
                        vertices.push(path[i]);
                        edges.push(ue);
                        vertices.push(blue);
                        edges.push(m.edge_at(blue).unwrap());
                    }
                    cycles.push(AlternatingCycle { vertices, edges });
                } else if next > start && !on_path[next.0] {
                    on_path[next.0] = true;
                    path.push(next);
                    arcs.push((e, b));
                    cursor.push(0);
                }
            } else {
                on_path[r.0] = false;
                path.pop();
                arcs.pop();
                cursor.pop();
            }
        }
    }
    Ok(cycles)
}

/// A maximum set of vertex-disjoint `m`-alternating cycles, by exhaustive
/// branch and bound. Lower-bounds `f(G; m)`.
pub fn max_disjoint_alternating_cycles(
    g: &PlaneBipartiteGraph,
    m: &Matching,
) -> Result<Vec<AlternatingCycle>, ForcingError> {
    let cycles = alternating_cycles(g, m)?;
    let n = g.vertex_count();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in cycles.iter().enumerate() {
        for v in &c.vertices {
            through[v.0].push(i);
        }
    }

    struct Packing<'a> {
        cycles: &'a [AlternatingCycle],
        through: &'a [Vec<usize>],
        blocked: Vec<bool>,
        current: Vec<usize>,
        best: Vec<usize>,
    }

    impl Packing<'_> {
        fn fits(&self, c: usize) -> bool {
            self.cycles[c].vertices.iter().all(|v| !self.blocked[v.0])
        }

        fn go(&mut self, from: usize) {
            let free = self.blocked.iter().filter(|b| !**b).count();
            if self.current.len() + free / 4 <= self.best.len() {
                return;
            }
            // lowest free vertex that still lies on a placeable cycle
            let pivot = (from..self.blocked.len())
                .find(|&v| !self.blocked[v] && self.through[v].iter().any(|&c| self.fits(c)));
            let Some(v) = pivot else {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
                return;
            };
            let options: Vec<usize> = self.through[v]
                .iter()
                .copied()
                .filter(|&c| self.fits(c))
                .collect();
            for c in options {
                let verts = self.cycles[c].vertices.clone();
                for u in &verts {
                    self.blocked[u.0] = true;
                }
                self.current.push(c);
                self.go(v + 1);
                self.current.pop();
                for u in &verts {
                    self.blocked[u.0] = false;
                }
            }
            self.blocked[v] = true;
            self.go(v + 1);
            self.blocked[v] = false;
        }
    }

    let mut p = Packing {
        cycles: &cycles,
        through: &through,
        blocked: vec![false; n],
        current: Vec::new(),
        best: Vec::new(),
    };
    p.go(0);
    Ok(p.best.iter().map(|&i| cycles[i].clone()).collect())
}

/// Per-component part of a [`ForcingReport`], in parent ids.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentForcing {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
    pub clar_number: usize,
    pub cover_faces: Vec<FaceId>,
    pub certificate: Certificate,
}

/// Outcome of the polynomial-time maximum forcing computation.
#[derive(Clone, Debug, Serialize)]
pub struct ForcingReport {
    /// `F(G)`: sum of the components' Clar numbers.
    pub max_forcing: usize,
    pub components: Vec<ComponentForcing>,
    /// Maximum Clar cover of the whole graph assembled from the components
    /// and the fixed double bonds.
    pub cover: ClarCover,
    /// A perfect matching induced by `cover`: cover edges plus alternate
    /// boundary edges of each cover face.
    pub matching: Matching,
    /// Boundaries of the cover faces; vertex-disjoint `matching`-alternating cycles.
    pub packing: Vec<AlternatingCycle>,
    pub certificate: Certificate,
}

/// Perfect matching that takes every other boundary edge of each cover face,
/// starting from the first, plus the cover's edges.
pub fn cover_matching(g: &PlaneBipartiteGraph, cover: &ClarCover) -> Matching {
    let edges = cover.edges.iter().copied().chain(
        cover
            .faces
            .iter()
            .flat_map(|&f| g.face(f).edges.iter().copied().step_by(2)),
    );
    Matching::from_edges(g, edges).expect("a Clar cover induces a perfect matching")
}

fn face_cycle(g: &PlaneBipartiteGraph, f: FaceId) -> AlternatingCycle {
    let face = g.face(f);
    AlternatingCycle {
        vertices: face.boundary.clone(),
        edges: face.edges.clone(),
    }
}

/// `F(G)` as the sum of Clar numbers of the elementary components; fixed bonds
/// contribute nothing.
pub fn max_forcing_number(g: &PlaneBipartiteGraph) -> Result<ForcingReport, ForcingError> {
    let dec = elementary_components(g)?;
    max_forcing_from(g, &dec)
}

/// As [`max_forcing_number`] with a decomposition already at hand.
pub fn max_forcing_from(
    g: &PlaneBipartiteGraph,
    dec: &Decomposition,
) -> Result<ForcingReport, ForcingError> {
    let mut components = Vec::with_capacity(dec.components.len());
    let mut cover = ClarCover::default();
    let mut certificate = Certificate::LpIntegral;
    for comp in &dec.components {
        let sub = &comp.subgraph;
        let ClarResult {
            clar_number,
            witness,
            certificate: cert,
            ..
        } = solve_clar(&sub.graph)?;
        if cert == Certificate::BranchAndBound {
            certificate = cert;
        }
        let cover_faces: Vec<FaceId> = witness.faces.iter().map(|&f| sub.parent_face(f)).collect();
        cover.faces.extend(&cover_faces);
        cover
            .edges
            .extend(witness.edges.iter().map(|&e| sub.parent_edge(e)));
        components.push(ComponentForcing {
            vertices: comp.vertices.clone(),
            edges: comp.edges.clone(),
            faces: sub.face_map.clone(),
            clar_number,
            cover_faces,
            certificate: cert,
        });
    }
    cover.edges.extend(
        dec.bond_class
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == BondClass::FixedDouble)
            .map(|(i, _)| EdgeId(i)),
    );
    cover.faces.sort();
    cover.edges.sort();
    cover.validate(g)?;
    let matching = cover_matching(g, &cover);
    let packing = cover.faces.iter().map(|&f| face_cycle(g, f)).collect();
    Ok(ForcingReport {
        max_forcing: components.iter().map(|c| c.clar_number).sum(),
        components,
        cover,
        matching,
        packing,
        certificate,
    })
}

/// `F(G)` by sweeping every perfect matching; returns the first maximiser in
/// enumeration order.
pub fn brute_force_max_forcing(
    g: &PlaneBipartiteGraph,
    budget: Budget,
) -> Result<(usize, Matching), ForcingError> {
    let mut best: Option<(usize, Matching)> = None;
    for (i, m) in enumerate_perfect_matchings(g).enumerate() {
        if i == budget.matchings {
            return Err(ForcingError::BudgetExceeded(budget.matchings));
        }
        let (f, _) = forcing_number_bounded(g, &m, 0, budget.depth)?;
        if best.as_ref().is_none_or(|(b, _)| f > *b) {
            best = Some((f, m));
        }
    }
    best.ok_or(ForcingError::NoPerfectMatching)
}

/// `f(G)`: the minimum forcing number over every perfect matching.
pub fn brute_force_min_forcing(
    g: &PlaneBipartiteGraph,
    budget: Budget,
) -> Result<usize, ForcingError> {
    let mut best: Option<usize> = None;
    for (i, m) in enumerate_perfect_matchings(g).enumerate() {
        if i == budget.matchings {
            return Err(ForcingError::BudgetExceeded(budget.matchings));
        }
        let (f, _) = forcing_number_bounded(g, &m, 0, budget.depth)?;
        best = Some(best.map_or(f, |b| b.min(f)));
    }
    best.ok_or(ForcingError::NoPerfectMatching)
}
