//! Perfect matchings: maximum matching, enumeration, alternating cycles and
//! face resonance.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::planegraph::{Color, EdgeId, FaceId, PlaneBipartiteGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("graph has no perfect matching")]
    NoPerfectMatching,
    #[error("matching is not perfect")]
    NotPerfect,
    #[error("matching belongs to a different graph")]
    ForeignMatching,
    #[error("edges {0} and {1} share a vertex")]
    Conflict(EdgeId, EdgeId),
    #[error("more than {0} perfect matchings")]
    BudgetExceeded(usize),
}

/// A set of vertex-disjoint edges of one particular graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<EdgeId>,
    mate: Vec<Option<EdgeId>>,
    graph: u64,
}

impl Serialize for Matching {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.edges.serialize(serializer)
    }
}

impl Matching {
    pub fn from_edges(
        g: &PlaneBipartiteGraph,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self, MatchingError> {
        let mut mate = vec![None; g.vertex_count()];
        let mut list = Vec::new();
        for e in edges {
            for v in g.endpoints(e) {
                if let Some(other) = mate[v.0] {
                    return Err(MatchingError::Conflict(other, e));
                }
                mate[v.0] = Some(e);
            }
            list.push(e);
        }
        list.sort();
        Ok(Self {
            edges: list,
            mate,
            graph: g.fingerprint(),
        })
    }

    fn from_mate(g: &PlaneBipartiteGraph, mate: Vec<Option<EdgeId>>) -> Self {
        let edges: BTreeSet<EdgeId> = mate.iter().flatten().copied().collect();
        Self {
            edges: edges.into_iter().collect(),
            mate,
            graph: g.fingerprint(),
        }
    }

    /// Matched edges, ascending.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect(&self) -> bool {
        self.mate.iter().all(Option::is_some)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// The matched edge covering `v`, if any.
    pub fn edge_at(&self, v: VertexId) -> Option<EdgeId> {
        self.mate[v.0]
    }

    pub fn belongs_to(&self, g: &PlaneBipartiteGraph) -> bool {
        self.graph == g.fingerprint() && self.mate.len() == g.vertex_count()
    }

    pub(crate) fn check_perfect_on(&self, g: &PlaneBipartiteGraph) -> Result<(), MatchingError> {
        if !self.belongs_to(g) {
            return Err(MatchingError::ForeignMatching);
        }
        if !self.is_perfect() {
            return Err(MatchingError::NotPerfect);
        }
        Ok(())
    }

    /// The matching obtained by swapping matched and unmatched edges along `cycle`.
    pub fn switch_along(&self, g: &PlaneBipartiteGraph, cycle: &AlternatingCycle) -> Self {
        let mut set: BTreeSet<EdgeId> = self.edges.iter().copied().collect();
        for &e in &cycle.edges {
            if !set.remove(&e) {
                set.insert(e);
            }
        }
        Self::from_edges(g, set).expect("switching along an alternating cycle keeps a matching")
    }
}

/// A simple even cycle whose edges alternate in and out of a reference matching.
/// `edges[i]` joins `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AlternatingCycle {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl AlternatingCycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks simplicity, closure and alternation against `m`.
    pub fn is_alternating(&self, g: &PlaneBipartiteGraph, m: &Matching) -> bool {
        let n = self.vertices.len();
        if n < 4 || !n.is_multiple_of(2) || self.edges.len() != n {
            return false;
        }
        if self.vertices.iter().collect::<BTreeSet<_>>().len() != n {
            return false;
        }
        (0..n).all(|i| {
            let (a, b) = (self.vertices[i], self.vertices[(i + 1) % n]);
            g.edge_between(a, b) == Some(self.edges[i])
                && m.contains(self.edges[i]) != m.contains(self.edges[(i + 1) % n])
        })
    }
}

/// Maximum-cardinality matching by Hopcroft–Karp, red vertices on the left.
/// Deterministic for a given graph.
pub fn max_matching(g: &PlaneBipartiteGraph) -> Matching {
    let n = g.vertex_count();
    let reds: Vec<VertexId> = g
        .vertex_ids()
        .filter(|&v| g.color(v) == Color::Red)
        .collect();
    let mut mate: Vec<Option<EdgeId>> = vec![None; n];
    const INF: usize = usize::MAX;
    let mut dist = vec![INF; n];
    let mut cursor = vec![0usize; n];

    loop {
        let mut queue = VecDeque::new();
        for &r in &reds {
            if mate[r.0].is_none() {
                dist[r.0] = 0;
                queue.push_back(r);
            } else {
                dist[r.0] = INF;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &(w, _) in g.neighbors(u) {
                match mate[w.0] {
                    None => reachable_free = true,
                    Some(me) => {
                        let next = g.opposite(me, w);
                        if dist[next.0] == INF {
                            dist[next.0] = dist[u.0] + 1;
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        if !reachable_free {
            break;
        }

        for &r in &reds {
            cursor[r.0] = 0;
        }
        for &root in &reds {
            if mate[root.0].is_some() || dist[root.0] != 0 {
                continue;
            }
            let mut stack = vec![root];
            let mut path: Vec<EdgeId> = Vec::new();
            while let Some(&top) = stack.last() {
                let nbrs = g.neighbors(top);
                if cursor[top.0] < nbrs.len() {
                    let (w, e) = nbrs[cursor[top.0]];
                    cursor[top.0] += 1;
                    match mate[w.0] {
                        None => {
                            path.push(e);
                            for &pe in &path {
                                for v in g.endpoints(pe) {
                                    mate[v.0] = Some(pe);
                                }
                            }
                            break;
                        }
                        Some(me) => {
                            let next = g.opposite(me, w);
                            if dist[next.0] != INF && dist[next.0] == dist[top.0] + 1 {
                                path.push(e);
                                stack.push(next);
                            }
                        }
                    }
                } else {
                    dist[top.0] = INF;
                    stack.pop();
                    path.pop();
                }
            }
        }
    }
    Matching::from_mate(g, mate)
}

pub fn has_perfect_matching(g: &PlaneBipartiteGraph) -> bool {
    max_matching(g).is_perfect()
}

/// A perfect matching of `g`, or `NoPerfectMatching`.
pub fn perfect_matching(g: &PlaneBipartiteGraph) -> Result<Matching, MatchingError> {
    let m = max_matching(g);
    if m.is_perfect() {
        Ok(m)
    } else {
        Err(MatchingError::NoPerfectMatching)
    }
}

/// Lazy enumeration of all perfect matchings, lexicographic by sorted edge ids.
///
/// Branches on the lowest uncovered vertex, trying its edges in ascending id order.
/// Because edges are numbered by sorted endpoints, this order is lexicographic.
pub struct PerfectMatchings<'g> {
    g: &'g PlaneBipartiteGraph,
    mate: Vec<Option<EdgeId>>,
    // (branch vertex, next neighbour index, edge currently chosen)
    stack: Vec<(VertexId, usize, Option<EdgeId>)>,
    started: bool,
    done: bool,
}

pub fn enumerate_perfect_matchings(g: &PlaneBipartiteGraph) -> PerfectMatchings<'_> {
    PerfectMatchings {
        g,
        mate: vec![None; g.vertex_count()],
        stack: Vec::new(),
        started: false,
        done: false,
    }
}

impl PerfectMatchings<'_> {
    fn lowest_uncovered(&self, from: usize) -> Option<VertexId> {
        (from..self.mate.len())
            .find(|&v| self.mate[v].is_none())
            .map(VertexId)
    }
}

impl Iterator for PerfectMatchings<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            let reds = self
                .g
                .vertex_ids()
                .filter(|&v| self.g.color(v) == Color::Red)
                .count();
            if 2 * reds != self.g.vertex_count() {
                self.done = true;
                return None;
            }
            match self.lowest_uncovered(0) {
                None => {
                    self.done = true;
                    return Some(Matching::from_mate(self.g, self.mate.clone()));
                }
                Some(v) => self.stack.push((v, 0, None)),
            }
        }
        while let Some(frame) = self.stack.last_mut() {
            let (v, ref mut next, ref mut chosen) = *frame;
            if let Some(e) = chosen.take() {
                let w = self.g.opposite(e, v);
                self.mate[v.0] = None;
                self.mate[w.0] = None;
            }
            let nbrs = self.g.neighbors(v);
            let pick = (*next..nbrs.len()).find(|&i| self.mate[nbrs[i].0 .0].is_none());
            match pick {
                Some(i) => {
                    let (w, e) = nbrs[i];
                    *next = i + 1;
                    *chosen = Some(e);
                    self.mate[v.0] = Some(e);
                    self.mate[w.0] = Some(e);
                    match self.lowest_uncovered(v.0 + 1) {
                        None => return Some(Matching::from_mate(self.g, self.mate.clone())),
                        Some(u) => self.stack.push((u, 0, None)),
                    }
                }
                None => {
                    self.stack.pop();
                }
            }
        }
        self.done = true;
        None
    }
}

/// All perfect matchings, failing loudly once more than `budget` exist.
pub fn perfect_matchings_within(
    g: &PlaneBipartiteGraph,
    budget: usize,
) -> Result<Vec<Matching>, MatchingError> {
    let mut out = Vec::new();
    for m in enumerate_perfect_matchings(g) {
        if out.len() == budget {
            return Err(MatchingError::BudgetExceeded(budget));
        }
        out.push(m);
    }
    Ok(out)
}

/// Result of a uniqueness test.
#[derive(Clone, Debug)]
pub enum Uniqueness {
    Unique(Matching),
    NotUnique {
        matching: Matching,
        witness: Matching,
        cycle: AlternatingCycle,
    },
}

impl Uniqueness {
    pub fn is_unique(&self) -> bool {
        matches!(self, Uniqueness::Unique(_))
    }
}

/// Tests whether `g` has exactly one perfect matching via a single
/// alternating-cycle search. The empty graph has exactly one (empty) matching.
pub fn is_unique_perfect_matching(g: &PlaneBipartiteGraph) -> Result<Uniqueness, MatchingError> {
    let m = perfect_matching(g)?;
    let forbidden = vec![false; g.vertex_count()];
    Ok(match find_alternating_cycle_masked(g, &m, &forbidden) {
        None => Uniqueness::Unique(m),
        Some(cycle) => Uniqueness::NotUnique {
            witness: m.switch_along(g, &cycle),
            matching: m,
            cycle,
        },
    })
}

/// Some `m`-alternating cycle avoiding `forbidden`, or `None` if there is none.
pub fn find_alternating_cycle(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    forbidden: &BTreeSet<VertexId>,
) -> Result<Option<AlternatingCycle>, MatchingError> {
    m.check_perfect_on(g)?;
    let mut mask = vec![false; g.vertex_count()];
    for v in forbidden {
        mask[v.0] = true;
    }
    Ok(find_alternating_cycle_masked(g, m, &mask))
}

/// Directed-cycle search in the matching orientation, contracted onto red
/// vertices: red `r` steps along an unmatched edge to blue `b`, then along the
/// matched edge of `b` to the next red vertex.
pub(crate) fn find_alternating_cycle_masked(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    forbidden: &[bool],
) -> Option<AlternatingCycle> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.vertex_count();
    let mut state = vec![WHITE; n];
    let mut cursor = vec![0usize; n];

    // successor of red `r` via neighbour slot `i`: (unmatched edge, blue, next red)
    let step = |r: VertexId, i: usize| -> Option<(EdgeId, VertexId, VertexId)> {
        let (b, e) = g.neighbors(r)[i];
        if forbidden[b.0] || m.edge_at(r) == Some(e) {
            return None;
        }
        let me = m.edge_at(b)?;
        let next = g.opposite(me, b);
        (!forbidden[next.0]).then_some((e, b, next))
    };

    for root in g.vertex_ids() {
        if g.color(root) != Color::Red || forbidden[root.0] || state[root.0] != WHITE {
            continue;
        }
        let mut stack = vec![root];
        // arcs[i] = (unmatched edge, blue) leaving stack[i] towards stack[i + 1]
        let mut arcs: Vec<(EdgeId, VertexId)> = Vec::new();
        state[root.0] = GRAY;
        while let Some(&r) = stack.last() {
            if cursor[r.0] < g.neighbors(r).len() {
                let i = cursor[r.0];
                cursor[r.0] += 1;
                let Some((e, b, next)) = step(r, i) else {
                    continue;
                };
                match state[next.0] {
                    WHITE => {
                        state[next.0] = GRAY;
                        arcs.push((e, b));
                        stack.push(next);
                    }
                    GRAY => {
                        arcs.push((e, b));
                        let start = stack.iter().position(|&x| x == next).unwrap();
                        let mut vertices = Vec::new();
                        let mut edges = Vec::new();
                        for k in start..stack.len() {
                            let (ue, blue) = arcs[k];
                            vertices.push(stack[k]);
                            edges.push(ue);
                            vertices.push(blue);
                            edges.push(m.edge_at(blue).unwrap());
                        }
                        return Some(AlternatingCycle { vertices, edges });
                    }
                    _ => {}
                }
            } else {
                state[r.0] = BLACK;
                stack.pop();
                arcs.pop();
            }
        }
    }
    None
}

/// Interior faces whose boundary alternates for some perfect matching,
/// tested as: `g` minus the face's vertices still has a perfect matching.
pub fn resonant_faces(g: &PlaneBipartiteGraph) -> Result<Vec<FaceId>, MatchingError> {
    perfect_matching(g)?;
    Ok(g.face_ids()
        .filter(|&f| has_perfect_matching(&g.without_vertices(g.face(f).boundary.clone()).graph))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planegraph::parse_polyomino;

    fn poly(s: &str) -> PlaneBipartiteGraph {
        parse_polyomino(s).unwrap()
    }

    /// Exhaustive subset search for the largest matching.
    fn brute_max_matching_size(g: &PlaneBipartiteGraph) -> usize {
        fn go(g: &PlaneBipartiteGraph, e: usize, used: &mut Vec<bool>) -> usize {
            if e == g.edge_count() {
                return 0;
            }
            let skip = go(g, e + 1, used);
            let [a, b] = g.endpoints(EdgeId(e));
            if used[a.0] || used[b.0] {
                return skip;
            }
            used[a.0] = true;
            used[b.0] = true;
            let take = 1 + go(g, e + 1, used);
            used[a.0] = false;
            used[b.0] = false;
            skip.max(take)
        }
        go(g, 0, &mut vec![false; g.vertex_count()])
    }

    #[test]
    fn maximum_matchings() {
        let m = max_matching(&poly("#"));
        assert_eq!(m.len(), 2);
        assert!(m.is_perfect());
        let m = max_matching(&poly("##\n##"));
        assert_eq!(m.len(), 4);
        assert!(!m.is_perfect());
        let l = poly("##\n#.");
        assert_eq!(brute_max_matching_size(&l), 4);
        assert!(max_matching(&l).is_perfect());
        for s in ["###\n.#.", "##\n##\n#.", "#..\n###\n..#", "####"] {
            let g = poly(s);
            assert_eq!(max_matching(&g).len(), brute_max_matching_size(&g), "{s}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_perfect_matchings(&poly("#")).count(), 2);
        assert_eq!(enumerate_perfect_matchings(&poly("##")).count(), 3);
        assert_eq!(enumerate_perfect_matchings(&poly("###")).count(), 5);
        assert_eq!(enumerate_perfect_matchings(&poly("##\n#.")).count(), 4);
        assert_eq!(enumerate_perfect_matchings(&poly("##\n##")).count(), 0);
        assert_eq!(
            enumerate_perfect_matchings(&PlaneBipartiteGraph::single_edge()).count(),
            1
        );
    }

    #[test]
    fn enumeration_is_lexicographic_and_distinct() {
        let g = poly("###\n##.");
        let all: Vec<_> = enumerate_perfect_matchings(&g).collect();
        assert!(all.windows(2).all(|w| w[0].edges() < w[1].edges()));
        assert!(all.iter().all(|m| m.is_perfect()));
    }

    #[test]
    fn budget_is_loud() {
        let g = poly("###");
        assert_eq!(perfect_matchings_within(&g, 5).unwrap().len(), 5);
        assert_eq!(
            perfect_matchings_within(&g, 4).unwrap_err(),
            MatchingError::BudgetExceeded(4)
        );
    }

    #[test]
    fn uniqueness() {
        assert!(
            is_unique_perfect_matching(&PlaneBipartiteGraph::single_edge())
                .unwrap()
                .is_unique()
        );
        match is_unique_perfect_matching(&poly("#")).unwrap() {
            Uniqueness::NotUnique {
                matching,
                witness,
                cycle,
            } => {
                assert_eq!(cycle.len(), 4);
                assert_ne!(matching, witness);
                assert!(witness.is_perfect());
            }
            Uniqueness::Unique(_) => panic!("4-cycle has two matchings"),
        }
        let bar = poly("###");
        let rest = bar.without_vertices(
            [0, 2]
                .iter()
                .flat_map(|&f| bar.face(FaceId(f)).boundary.clone()),
        );
        assert!(is_unique_perfect_matching(&rest.graph).unwrap().is_unique());
        assert_eq!(
            is_unique_perfect_matching(&poly("##\n##")).unwrap_err(),
            MatchingError::NoPerfectMatching
        );
    }

    #[test]
    fn alternating_cycles_in_square() {
        let g = poly("#");
        for m in enumerate_perfect_matchings(&g) {
            let c = find_alternating_cycle(&g, &m, &BTreeSet::new())
                .unwrap()
                .unwrap();
            assert_eq!(c.len(), 4);
            assert!(c.is_alternating(&g, &m));
            for v in g.vertex_ids() {
                let forbidden = BTreeSet::from([v]);
                assert!(find_alternating_cycle(&g, &m, &forbidden)
                    .unwrap()
                    .is_none());
            }
        }
    }

    #[test]
    fn domino_vertical_matching_with_middle_forbidden() {
        // vertices 0 1 2 / 3 4 5; vertical edges 0-3, 1-4, 2-5
        let g = poly("##");
        let vertical = [(0, 3), (1, 4), (2, 5)]
            .map(|(a, b)| g.edge_between(VertexId(a), VertexId(b)).unwrap());
        let m = Matching::from_edges(&g, vertical).unwrap();
        assert!(find_alternating_cycle(&g, &m, &BTreeSet::new())
            .unwrap()
            .is_some());
        let forbidden = BTreeSet::from([VertexId(1), VertexId(4)]);
        assert!(find_alternating_cycle(&g, &m, &forbidden)
            .unwrap()
            .is_none());
    }

    #[test]
    fn non_perfect_matching_rejected() {
        let g = poly("#");
        let m = Matching::from_edges(&g, [EdgeId(0)]).unwrap();
        assert_eq!(
            find_alternating_cycle(&g, &m, &BTreeSet::new()).unwrap_err(),
            MatchingError::NotPerfect
        );
        let other = poly("##");
        let foreign = max_matching(&other);
        assert_eq!(
            find_alternating_cycle(&g, &foreign, &BTreeSet::new()).unwrap_err(),
            MatchingError::ForeignMatching
        );
    }

    #[test]
    fn resonance() {
        assert_eq!(resonant_faces(&poly("#")).unwrap(), vec![FaceId(0)]);
        assert_eq!(resonant_faces(&poly("###")).unwrap().len(), 3);
        assert_eq!(
            resonant_faces(&poly("##\n##")).unwrap_err(),
            MatchingError::NoPerfectMatching
        );
    }

    #[test]
    fn resonance_matches_enumeration() {
        // a face is resonant iff some perfect matching alternates around it
        for s in [
            "###\n.#.",
            "##\n#.",
            "###\n##.",
            "#..\n###",
            ".#.\n###\n.#.",
        ] {
            let g = poly(s);
            if !has_perfect_matching(&g) {
                continue;
            }
            let all: Vec<_> = enumerate_perfect_matchings(&g).collect();
            let oracle: Vec<_> = g
                .face_ids()
                .filter(|&f| {
                    let edges = &g.face(f).edges;
                    all.iter().any(|m| {
                        let inside = edges.iter().filter(|&&e| m.contains(e)).count();
                        inside * 2 == edges.len()
                            && (0..edges.len()).all(|i| {
                                m.contains(edges[i]) != m.contains(edges[(i + 1) % edges.len()])
                            })
                    })
                })
                .collect();
            assert_eq!(resonant_faces(&g).unwrap(), oracle, "{s}");
        }
    }
}
