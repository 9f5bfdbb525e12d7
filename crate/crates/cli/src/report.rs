use std::time::Instant;

use clarforce::clar::Certificate;
use clarforce::decomp::ElementaryComponent;
use clarforce::forcing::{find_forcing_set, max_forcing_from, ComponentForcing};
use clarforce::planegraph::Color;
use clarforce::{
    elementary_components, solve_clar, BondClass, Budget, ClarCover, Decomposition, EdgeId, FaceId,
    ForcingSet, GraphKind, Lattice, Matching, PlaneBipartiteGraph, VertexId,
};
use serde::Serialize;

use crate::error::CliError;
use crate::input::Input;

/// Names a check whose result is deliberately corrupted, so the exit-code
/// path for invariant violations can be exercised end to end.
pub const FAULT_ENV: &str = "CLARFORCE_INJECT_FAULT";

pub fn injected_fault() -> Option<String> {
    std::env::var(FAULT_ENV).ok().filter(|s| !s.is_empty())
}

#[derive(Serialize)]
pub struct VertexOut {
    pub id: VertexId,
    pub color: Color,
    pub pos: (i64, i64),
}

#[derive(Serialize)]
pub struct EdgeOut {
    pub id: EdgeId,
    pub endpoints: [VertexId; 2],
}

#[derive(Serialize)]
pub struct FaceOut {
    pub id: FaceId,
    pub cell: (i64, i64),
    pub boundary: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

/// Full serialization; every id in a report resolves against it.
#[derive(Serialize)]
pub struct GraphOut {
    pub kind: GraphKind,
    pub lattice: Lattice,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub vertices: Vec<VertexOut>,
    pub edges: Vec<EdgeOut>,
    pub faces: Vec<FaceOut>,
}

impl GraphOut {
    pub fn new(g: &PlaneBipartiteGraph) -> Self {
        GraphOut {
            kind: g.kind(),
            lattice: g.lattice(),
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            face_count: g.face_count(),
            vertices: g
                .vertex_ids()
                .map(|v| VertexOut {
                    id: v,
                    color: g.color(v),
                    pos: g.vertex(v).pos,
                })
                .collect(),
            edges: g
                .edge_ids()
                .map(|e| EdgeOut {
                    id: e,
                    endpoints: g.endpoints(e),
                })
                .collect(),
            faces: g
                .face_ids()
                .zip(g.faces())
                .map(|(id, face)| FaceOut {
                    id,
                    cell: face.cell,
                    boundary: face.boundary.clone(),
                    edges: face.edges.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct FixedBond {
    pub edge: EdgeId,
    pub class: BondClass,
}

fn fixed_bonds(dec: &Decomposition) -> Vec<FixedBond> {
    dec.fixed_bonds()
        .map(|(edge, class)| FixedBond { edge, class })
        .collect()
}

#[derive(Serialize)]
pub struct Witnesses {
    /// Maximum Clar cover assembled from the elementary components.
    pub clar_cover: ClarCover,
    /// Perfect matching induced by the cover. The cover faces bound disjoint
    /// alternating cycles, so its forcing number is at least `max_forcing`.
    pub matching: Matching,
    /// Forcing set of `matching` with `max_forcing` edges; `null` when beyond
    /// the depth budget.
    pub forcing_set: Option<ForcingSet>,
}

#[derive(Serialize, Default)]
pub struct Timings {
    pub decompose: f64,
    pub clar: f64,
    pub forcing: f64,
    pub witnesses: f64,
}

#[derive(Serialize)]
pub struct Report {
    pub input_fingerprint: String,
    pub graph: GraphOut,
    pub elementary: bool,
    pub components: Vec<ComponentForcing>,
    pub fixed_bonds: Vec<FixedBond>,
    pub clar_number: usize,
    pub max_forcing: usize,
    pub certificate: Certificate,
    pub lp_bound: String,
    pub witnesses: Witnesses,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Timings>,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn is_elementary(g: &PlaneBipartiteGraph, dec: &Decomposition) -> bool {
    dec.components.len() == 1
        && dec.components[0].vertices.len() == g.vertex_count()
        && dec.fixed_bonds().next().is_none()
}

/// Runs the whole pipeline and cross-checks the results before returning.
pub fn analyze(input: &Input, budget: Budget) -> Result<Report, CliError> {
    let g = &input.graph;
    let mut timings = Timings::default();

    let start = Instant::now();
    let dec = elementary_components(g)?;
    timings.decompose = elapsed_ms(start);

    let start = Instant::now();
    let clar = solve_clar(g)?;
    timings.clar = elapsed_ms(start);

    let start = Instant::now();
    let forcing = max_forcing_from(g, &dec)?;
    timings.forcing = elapsed_ms(start);

    let mut max_forcing = forcing.max_forcing;
    if injected_fault().as_deref() == Some("forcing-equals-clar") {
        max_forcing += 1;
    }
    if max_forcing != clar.clar_number {
        return Err(CliError::invariant(
            "forcing-equals-clar",
            format!(
                "component sum F={max_forcing} differs from whole-graph C={}",
                clar.clar_number
            ),
        ));
    }

    let start = Instant::now();
    let forcing_set = forcing_witness(g, &forcing.matching, &forcing.cover, max_forcing, budget)?;
    timings.witnesses = elapsed_ms(start);

    Ok(Report {
        input_fingerprint: input.fingerprint.clone(),
        graph: GraphOut::new(g),
        elementary: is_elementary(g, &dec),
        fixed_bonds: fixed_bonds(&dec),
        components: forcing.components,
        clar_number: clar.clar_number,
        max_forcing,
        certificate: clar.certificate,
        lp_bound: clar.lp_bound.to_string(),
        witnesses: Witnesses {
            clar_cover: forcing.cover,
            matching: forcing.matching,
            forcing_set,
        },
        timings_ms: Some(timings),
    })
}

/// A forcing set of size `f` for `m`. Tries one matched edge per cover face
/// first and falls back to the exact search when that does not force.
fn forcing_witness(
    g: &PlaneBipartiteGraph,
    m: &Matching,
    cover: &ClarCover,
    f: usize,
    budget: Budget,
) -> Result<Option<ForcingSet>, CliError> {
    let mut edges: Vec<EdgeId> = cover
        .faces
        .iter()
        .map(|&face| g.face(face).edges[0])
        .collect();
    edges.sort();
    let guess = ForcingSet { edges };
    if guess.forces(g, m) {
        return Ok(Some(guess));
    }
    if f > budget.depth {
        return Ok(None);
    }
    match find_forcing_set(g, m, f)? {
        Some(set) if set.len() == f => Ok(Some(set)),
        Some(set) => Err(CliError::invariant(
            "forcing-equals-clar",
            format!("matching is forced by {} < F={f} edges", set.len()),
        )),
        None => Err(CliError::invariant(
            "forcing-equals-clar",
            format!("no forcing set of size F={f} for the cover matching"),
        )),
    }
}

#[derive(Serialize)]
pub struct ComponentOut {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
}

impl From<&ElementaryComponent> for ComponentOut {
    fn from(c: &ElementaryComponent) -> Self {
        ComponentOut {
            vertices: c.vertices.clone(),
            edges: c.edges.clone(),
            faces: c.subgraph.face_map.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct DecomposeReport {
    pub input_fingerprint: String,
    pub graph: GraphOut,
    pub elementary: bool,
    pub reference_matching: Matching,
    /// Class of every edge, indexed by edge id.
    pub bond_classes: Vec<BondClass>,
    pub components: Vec<ComponentOut>,
    pub fixed_bonds: Vec<FixedBond>,
}

pub fn decompose(input: &Input) -> Result<DecomposeReport, CliError> {
    let g = &input.graph;
    let dec = elementary_components(g)?;
    Ok(DecomposeReport {
        input_fingerprint: input.fingerprint.clone(),
        graph: GraphOut::new(g),
        elementary: is_elementary(g, &dec),
        reference_matching: dec.reference.clone(),
        bond_classes: dec.bond_class.clone(),
        components: dec.components.iter().map(ComponentOut::from).collect(),
        fixed_bonds: fixed_bonds(&dec),
    })
}
