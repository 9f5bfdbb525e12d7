//! Matching orientation, strongly connected components and the split of a
//! bipartite graph into elementary components and fixed bonds.

use serde::Serialize;

use crate::matching::{perfect_matching, Matching, MatchingError};
use crate::planegraph::{EdgeId, PlaneBipartiteGraph, Subgraph, VertexId};

/// The digraph obtained by pointing matched edges at their red endpoint and
/// unmatched edges at their blue endpoint.
#[derive(Clone, Debug)]
pub struct Orientation {
    matching: Matching,
    heads: Vec<VertexId>,
    out_arcs: Vec<Vec<(VertexId, EdgeId)>>,
}

impl Orientation {
    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn head(&self, e: EdgeId) -> VertexId {
        self.heads[e.0]
    }

    pub fn out_arcs(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.out_arcs[v.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.out_arcs.len()
    }
}

pub fn orient(g: &PlaneBipartiteGraph, m: &Matching) -> Result<Orientation, MatchingError> {
    m.check_perfect_on(g)?;
    let mut heads = Vec::with_capacity(g.edge_count());
    let mut out_arcs = vec![Vec::new(); g.vertex_count()];
    for e in g.edge_ids() {
        let (tail, head) = if m.contains(e) {
            (g.blue_endpoint(e), g.red_endpoint(e))
        } else {
            (g.red_endpoint(e), g.blue_endpoint(e))
        };
        heads.push(head);
        out_arcs[tail.0].push((head, e));
    }
    Ok(Orientation {
        matching: m.clone(),
        heads,
        out_arcs,
    })
}

/// Strongly connected components by iterative Tarjan. Returns a component
/// label per vertex and the number of components; labels follow completion
/// order (reverse topological).
pub fn strongly_connected_components(d: &Orientation) -> (Vec<usize>, usize) {
    let n = d.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut counter = 0;
    let mut count = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let arcs = &d.out_arcs[v];
            if *next < arcs.len() {
                let w = arcs[*next].0 .0;
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (comp, count)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BondClass {
    /// Lies in some but not every perfect matching.
    DoubleBond,
    /// Lies in no perfect matching.
    FixedSingle,
    /// Lies in every perfect matching.
    FixedDouble,
}

impl BondClass {
    pub fn is_fixed(self) -> bool {
        self != BondClass::DoubleBond
    }
}

/// One elementary component: a nontrivial strongly connected component.
#[derive(Clone, Debug)]
pub struct ElementaryComponent {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub subgraph: Subgraph,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub reference: Matching,
    pub components: Vec<ElementaryComponent>,
    pub bond_class: Vec<BondClass>,
    /// Component index per vertex; `None` for vertices outside every component.
    pub component_of: Vec<Option<usize>>,
}

impl Decomposition {
    pub fn fixed_bonds(&self) -> impl Iterator<Item = (EdgeId, BondClass)> + '_ {
        self.bond_class
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_fixed())
            .map(|(i, &c)| (EdgeId(i), c))
    }
}

/// Decomposes `g` using its deterministic maximum matching as reference.
pub fn elementary_components(g: &PlaneBipartiteGraph) -> Result<Decomposition, MatchingError> {
    let m = perfect_matching(g)?;
    decompose_with(g, &m)
}

/// Decomposition relative to an explicit perfect matching.
pub fn decompose_with(
    g: &PlaneBipartiteGraph,
    m: &Matching,
) -> Result<Decomposition, MatchingError> {
    let d = orient(g, m)?;
    let (label, count) = strongly_connected_components(&d);
    let mut size = vec![0usize; count];
    for &c in &label {
        size[c] += 1;
    }

    // Components numbered by their smallest vertex.
    let mut renumber = vec![None; count];
    let mut members: Vec<Vec<VertexId>> = Vec::new();
    for v in g.vertex_ids() {
        let c = label[v.0];
        if size[c] < 2 {
            continue;
        }
        let idx = *renumber[c].get_or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[idx].push(v);
    }
    let component_of: Vec<Option<usize>> = label.iter().map(|&c| renumber[c]).collect();

    let bond_class = g
        .edge_ids()
        .map(|e| {
            let [a, b] = g.endpoints(e);
            match (component_of[a.0], component_of[b.0]) {
                (Some(x), Some(y)) if x == y => BondClass::DoubleBond,
                _ if m.contains(e) => BondClass::FixedDouble,
                _ => BondClass::FixedSingle,
            }
        })
        .collect::<Vec<_>>();

    let components = members
        .into_iter()
        .map(|vertices| {
            let subgraph = g.induced_subgraph(vertices.iter().copied());
            ElementaryComponent {
                edges: subgraph.edge_map.clone(),
                vertices,
                subgraph,
            }
        })
        .collect();

    Ok(Decomposition {
        reference: m.clone(),
        components,
        bond_class,
        component_of,
    })
}

/// Connected with every edge in some perfect matching: one component covering
/// every vertex and no fixed bonds. K2 is not elementary under this test.
pub fn is_elementary(g: &PlaneBipartiteGraph) -> Result<bool, MatchingError> {
    let dec = elementary_components(g)?;
    Ok(dec.components.len() == 1
        && dec.components[0].vertices.len() == g.vertex_count()
        && dec.bond_class.iter().all(|c| !c.is_fixed()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::enumerate_perfect_matchings;
    use crate::planegraph::{parse_polyomino, Color};

    fn poly(s: &str) -> PlaneBipartiteGraph {
        parse_polyomino(s).unwrap()
    }

    /// in-all → FixedDouble, in-none → FixedSingle, otherwise DoubleBond.
    fn enumerated_classes(g: &PlaneBipartiteGraph) -> Vec<BondClass> {
        let all: Vec<_> = enumerate_perfect_matchings(g).collect();
        g.edge_ids()
            .map(|e| {
                let hits = all.iter().filter(|m| m.contains(e)).count();
                if hits == 0 {
                    BondClass::FixedSingle
                } else if hits == all.len() {
                    BondClass::FixedDouble
                } else {
                    BondClass::DoubleBond
                }
            })
            .collect()
    }

    #[test]
    fn k2_orientation_and_decomposition() {
        let g = PlaneBipartiteGraph::single_edge();
        let m = perfect_matching(&g).unwrap();
        let d = orient(&g, &m).unwrap();
        assert_eq!(d.head(EdgeId(0)), VertexId(0));
        assert_eq!(g.color(VertexId(0)), Color::Red);
        let dec = elementary_components(&g).unwrap();
        assert!(dec.components.is_empty());
        assert_eq!(dec.bond_class, vec![BondClass::FixedDouble]);
        assert!(!is_elementary(&g).unwrap());
    }

    #[test]
    fn square_orients_to_directed_cycle() {
        let g = poly("#");
        // top edge (0,1) and bottom edge (2,3)
        let top = g.edge_between(VertexId(0), VertexId(1)).unwrap();
        let bottom = g.edge_between(VertexId(2), VertexId(3)).unwrap();
        let m = Matching::from_edges(&g, [top, bottom]).unwrap();
        let d = orient(&g, &m).unwrap();
        for v in g.vertex_ids() {
            assert_eq!(d.out_arcs(v).len(), 1);
        }
        let (_, count) = strongly_connected_components(&d);
        assert_eq!(count, 1);
    }

    #[test]
    fn domino_vertical_orientation() {
        // 0 1 2 / 3 4 5; red = even x+y: 0, 2, 4
        let g = poly("##");
        let vertical = [(0, 3), (1, 4), (2, 5)]
            .map(|(a, b)| g.edge_between(VertexId(a), VertexId(b)).unwrap());
        let m = Matching::from_edges(&g, vertical).unwrap();
        let d = orient(&g, &m).unwrap();
        let arc = |a: usize, b: usize| {
            let e = g.edge_between(VertexId(a), VertexId(b)).unwrap();
            d.head(e) == VertexId(b)
        };
        // matched edges point at red, unmatched at blue
        assert!(arc(3, 0) && arc(1, 4) && arc(5, 2));
        assert!(arc(0, 1) && arc(2, 1) && arc(4, 3) && arc(4, 5));
        // left face 0→1→4→3→0, right face 2→1→4→5→2: both directed,
        // sharing the middle path 1→4 which is traversed the same way by both
        assert!(arc(0, 1) && arc(1, 4) && arc(4, 3) && arc(3, 0));
        assert!(arc(4, 5) && arc(5, 2) && arc(2, 1));
    }

    #[test]
    fn bond_classes_match_enumeration() {
        for s in [
            "#",
            "##\n#.",
            "###\n.#.",
            "###\n#..",
            "##\n##\n#.\n#.",
            "#..\n###\n..#",
        ] {
            let g = poly(s);
            if enumerate_perfect_matchings(&g).next().is_none() {
                continue;
            }
            let dec = elementary_components(&g).unwrap();
            assert_eq!(dec.bond_class, enumerated_classes(&g), "{s}");
        }
    }

    #[test]
    fn reference_matching_does_not_matter() {
        let g = poly("###\n.#.");
        let base = elementary_components(&g).unwrap();
        for m in enumerate_perfect_matchings(&g) {
            let dec = decompose_with(&g, &m).unwrap();
            assert_eq!(dec.bond_class, base.bond_class);
            assert_eq!(dec.component_of, base.component_of);
        }
    }

    #[test]
    fn elementary_flags() {
        assert!(is_elementary(&poly("#")).unwrap());
        assert!(is_elementary(&poly("##\n#.")).unwrap());
        assert_eq!(
            is_elementary(&poly("##\n##")).unwrap_err(),
            MatchingError::NoPerfectMatching
        );
        let dec = elementary_components(&poly("#")).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.fixed_bonds().count(), 0);
    }

    #[test]
    fn long_grid_does_not_overflow_stack() {
        let row = "#".repeat(400);
        let g = poly(&row);
        let dec = elementary_components(&g).unwrap();
        assert_eq!(dec.components.len(), 1);
    }
}
