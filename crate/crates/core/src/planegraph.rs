//! Plane bipartite graphs built from square (polyomino) and hexagonal lattices.
//!
//! Vertices carry a red/blue colour and integer lattice coordinates; interior
//! faces carry their cyclic boundary. The outer face is never stored.
//!
//! Square lattice: cell `(row, col)` has corners `(x, y)` with `x = col..=col+1`
//! and `y = row..=row+1`, `y` growing downwards. A vertex is red when `x + y`
//! is even.
//!
//! Hexagonal lattice: pointy-top cells in axial coordinates `(q, r)`. Vertex
//! positions use a doubled integer grid (one x unit is half a hexagon width,
//! one y unit is half a side length), so the centre of `(q, r)` sits at
//! `(2q + r, 3r)`. A vertex is red when `y mod 3 == 1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};

use serde::Serialize;
use thiserror::Error;

macro_rules! dense_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
        #[serde(transparent)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

dense_id!(
    /// Index of a vertex, dense and 0-based.
    VertexId
);
dense_id!(
    /// Index of an edge, dense and 0-based. Edges are ordered by their sorted endpoints.
    EdgeId
);
dense_id!(
    /// Index of an interior face, dense and 0-based.
    FaceId
);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Polyomino,
    Hexagonal,
    General,
}

/// The lattice a graph was cut from; kept by subgraphs for rendering.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lattice {
    Square,
    Hexagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Vertex {
    pub color: Color,
    pub pos: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    /// Cyclic boundary, clockwise on screen.
    pub boundary: Vec<VertexId>,
    /// `edges[i]` joins `boundary[i]` and `boundary[i + 1]`.
    pub edges: Vec<EdgeId>,
    /// Lattice cell: `(row, col)` for squares, axial `(q, r)` for hexagons.
    pub cell: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("input contains no cells")]
    EmptyInput,
    #[error("unexpected character {found:?} at line {line}, column {column}")]
    InvalidCharacter {
        line: usize,
        column: usize,
        found: char,
    },
    #[error("line {line}: expected two integers \"q r\", got {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("cell ({0}, {1}) listed more than once")]
    DuplicateCell(i64, i64),
    #[error("cells do not form an edge-connected region")]
    DisconnectedCells,
    #[error("vertex {0} is a cut vertex")]
    CutVertex(VertexId),
    #[error("region encloses {0} hole(s)")]
    Holes(usize),
    #[error("edge {0} joins two vertices of the same colour")]
    NotBipartite(EdgeId),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("face {face}: {reason}")]
    BadFace { face: usize, reason: String },
    #[error("edge {0} lies on more than two interior faces")]
    EdgeOnTooManyFaces(EdgeId),
}

/// A plane bipartite graph with its interior faces. Immutable once built.
#[derive(Clone, Debug)]
pub struct PlaneBipartiteGraph {
    kind: GraphKind,
    lattice: Lattice,
    vertices: Vec<Vertex>,
    edges: Vec<[VertexId; 2]>,
    faces: Vec<Face>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    vertex_faces: Vec<Vec<FaceId>>,
    edge_faces: Vec<Vec<FaceId>>,
    fingerprint: u64,
}

/// An induced subgraph together with the ids it had in its parent.
#[derive(Clone, Debug)]
pub struct Subgraph {
    pub graph: PlaneBipartiteGraph,
    /// New vertex id → parent vertex id (ascending).
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    pub face_map: Vec<FaceId>,
}

impl Subgraph {
    pub fn parent_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn parent_edge(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e.0]
    }

    pub fn parent_face(&self, f: FaceId) -> FaceId {
        self.face_map[f.0]
    }
}

fn square_color(x: i64, y: i64) -> Color {
    if (x + y).rem_euclid(2) == 0 {
        Color::Red
    } else {
        Color::Blue
    }
}

fn hex_color(y: i64) -> Color {
    if y.rem_euclid(3) == 1 {
        Color::Red
    } else {
        Color::Blue
    }
}

fn square_corners(row: i64, col: i64) -> [(i64, i64); 4] {
    [
        (col, row),
        (col + 1, row),
        (col + 1, row + 1),
        (col, row + 1),
    ]
}

fn hex_corners(q: i64, r: i64) -> [(i64, i64); 6] {
    let (x, y) = (2 * q + r, 3 * r);
    [
        (x, y - 2),
        (x + 1, y - 1),
        (x + 1, y + 1),
        (x, y + 2),
        (x - 1, y + 1),
        (x - 1, y - 1),
    ]
}

const SQUARE_NEIGHBOURS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];
const HEX_NEIGHBOURS: [(i64, i64); 6] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)];

fn cells_edge_connected(cells: &BTreeSet<(i64, i64)>, steps: &[(i64, i64)]) -> bool {
    let Some(&start) = cells.iter().next() else {
        return true;
    };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        for &(da, db) in steps {
            let next = (a + da, b + db);
            if cells.contains(&next) && seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen.len() == cells.len()
}

/// Parses an ASCII polyomino: rows top to bottom, `#` marks a cell, `.` is empty.
pub fn parse_polyomino(text: &str) -> Result<PlaneBipartiteGraph, GraphError> {
    let mut cells = BTreeSet::new();
    for (row, line) in text.lines().enumerate() {
        for (col, ch) in line.trim_end().chars().enumerate() {
            match ch {
                '#' => {
                    cells.insert((row as i64, col as i64));
                }
                '.' => {}
                found => {
                    return Err(GraphError::InvalidCharacter {
                        line: row + 1,
                        column: col + 1,
                        found,
                    })
                }
            }
        }
    }
    polyomino_from_cells(cells)
}

/// Builds a polyomino graph from `(row, col)` cells.
pub fn polyomino_from_cells(
    cells: impl IntoIterator<Item = (i64, i64)>,
) -> Result<PlaneBipartiteGraph, GraphError> {
    let cells: BTreeSet<_> = cells.into_iter().collect();
    if cells.is_empty() {
        return Err(GraphError::EmptyInput);
    }
    if !cells_edge_connected(&cells, &SQUARE_NEIGHBOURS) {
        return Err(GraphError::DisconnectedCells);
    }
    let faces = cells
        .iter()
        .map(|&(row, col)| (square_corners(row, col).to_vec(), (row, col)))
        .collect();
    from_lattice_cells(GraphKind::Polyomino, Lattice::Square, faces, |x, y| {
        square_color(x, y)
    })
}

/// Parses the hexagonal file format: one `q r` pair per line, `#` comments.
pub fn parse_hexagonal_text(text: &str) -> Result<PlaneBipartiteGraph, GraphError> {
    let mut coords = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || GraphError::MalformedLine {
            line: idx + 1,
            content: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let q = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(malformed)?;
        let r = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(malformed)?;
        if parts.next().is_some() {
            return Err(malformed());
        }
        coords.push((q, r));
    }
    parse_hexagonal(&coords)
}

/// Builds a hexagonal system from axial `(q, r)` cell coordinates.
pub fn parse_hexagonal(coords: &[(i64, i64)]) -> Result<PlaneBipartiteGraph, GraphError> {
    let mut cells = BTreeSet::new();
    for &(q, r) in coords {
        if !cells.insert((q, r)) {
            return Err(GraphError::DuplicateCell(q, r));
        }
    }
    if cells.is_empty() {
        return Err(GraphError::EmptyInput);
    }
    if !cells_edge_connected(&cells, &HEX_NEIGHBOURS) {
        return Err(GraphError::DisconnectedCells);
    }
    let faces = cells
        .iter()
        .map(|&(q, r)| (hex_corners(q, r).to_vec(), (q, r)))
        .collect();
    from_lattice_cells(GraphKind::Hexagonal, Lattice::Hexagonal, faces, |_, y| {
        hex_color(y)
    })
}

/// Corner positions of one lattice cell, and the cell itself.
type CellCorners = (Vec<(i64, i64)>, (i64, i64));

fn from_lattice_cells(
    kind: GraphKind,
    lattice: Lattice,
    faces: Vec<CellCorners>,
    color: impl Fn(i64, i64) -> Color,
) -> Result<PlaneBipartiteGraph, GraphError> {
    // Row-major vertex order: key (y, x).
    let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for (corners, _) in &faces {
        for &(x, y) in corners {
            index.insert((y, x), 0);
        }
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let vertices = index
        .keys()
        .map(|&(y, x)| Vertex {
            color: color(x, y),
            pos: (x, y),
        })
        .collect();
    let mut edges = Vec::new();
    let faces = faces
        .into_iter()
        .map(|(corners, cell)| {
            let ids: Vec<usize> = corners.iter().map(|&(x, y)| index[&(y, x)]).collect();
            for i in 0..ids.len() {
                edges.push((ids[i], ids[(i + 1) % ids.len()]));
            }
            (ids, cell)
        })
        .collect();
    PlaneBipartiteGraph::from_parts(kind, lattice, vertices, &edges, faces)
}

impl PlaneBipartiteGraph {
    /// Assembles and validates a graph. Edges may be listed in any order and
    /// with duplicates; they are normalised and sorted by endpoints.
    pub fn from_parts(
        kind: GraphKind,
        lattice: Lattice,
        vertices: Vec<Vertex>,
        edges: &[(usize, usize)],
        faces: Vec<(Vec<usize>, (i64, i64))>,
    ) -> Result<Self, GraphError> {
        let n = vertices.len();
        let mut edge_set = BTreeSet::new();
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::UnknownVertex(v));
                }
            }
            edge_set.insert((a.min(b), a.max(b)));
        }
        let edges: Vec<[VertexId; 2]> = edge_set
            .into_iter()
            .map(|(a, b)| [VertexId(a), VertexId(b)])
            .collect();
        let edge_index: HashMap<(usize, usize), EdgeId> = edges
            .iter()
            .enumerate()
            .map(|(i, &[a, b])| ((a.0, b.0), EdgeId(i)))
            .collect();

        for (i, &[a, b]) in edges.iter().enumerate() {
            if a == b || vertices[a.0].color == vertices[b.0].color {
                return Err(GraphError::NotBipartite(EdgeId(i)));
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        for (i, &[a, b]) in edges.iter().enumerate() {
            adjacency[a.0].push((b, EdgeId(i)));
            adjacency[b.0].push((a, EdgeId(i)));
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(_, e)| e);
        }

        let required_len = match kind {
            GraphKind::Polyomino => Some(4),
            GraphKind::Hexagonal => Some(6),
            GraphKind::General => None,
        };
        let mut built_faces = Vec::with_capacity(faces.len());
        let mut vertex_faces = vec![Vec::new(); n];
        let mut edge_faces = vec![Vec::new(); edges.len()];
        for (fi, (boundary, cell)) in faces.into_iter().enumerate() {
            let bad = |reason: &str| GraphError::BadFace {
                face: fi,
                reason: reason.to_string(),
            };
            let len = boundary.len();
            if len < 4 || len % 2 != 0 {
                return Err(bad("boundary must be an even cycle of length at least 4"));
            }
            if let Some(required) = required_len {
                if len != required {
                    return Err(bad("boundary length does not match the lattice"));
                }
            }
            if boundary.iter().collect::<BTreeSet<_>>().len() != len {
                return Err(bad("boundary repeats a vertex"));
            }
            let mut face_edges = Vec::with_capacity(len);
            for i in 0..len {
                let (a, b) = (boundary[i], boundary[(i + 1) % len]);
                if a >= n || b >= n {
                    return Err(GraphError::UnknownVertex(a.max(b)));
                }
                let e = edge_index
                    .get(&(a.min(b), a.max(b)))
                    .copied()
                    .ok_or_else(|| bad("boundary uses a missing edge"))?;
                face_edges.push(e);
                edge_faces[e.0].push(FaceId(fi));
                if edge_faces[e.0].len() > 2 {
                    return Err(GraphError::EdgeOnTooManyFaces(e));
                }
            }
            for &v in &boundary {
                vertex_faces[v].push(FaceId(fi));
            }
            built_faces.push(Face {
                boundary: boundary.into_iter().map(VertexId).collect(),
                edges: face_edges,
                cell,
            });
        }

        let mut hasher = DefaultHasher::new();
        kind.hash(&mut hasher);
        vertices.hash(&mut hasher);
        edges.hash(&mut hasher);
        built_faces.hash(&mut hasher);

        let graph = Self {
            kind,
            lattice,
            vertices,
            edges,
            faces: built_faces,
            adjacency,
            vertex_faces,
            edge_faces,
            fingerprint: hasher.finish(),
        };

        if kind != GraphKind::General {
            if graph.component_labels().1 > 1 {
                return Err(GraphError::DisconnectedCells);
            }
            if let Some(&v) = graph.cut_vertices().first() {
                return Err(GraphError::CutVertex(v));
            }
            // Euler: V - E + F_interior = 1 - holes for a connected plane graph.
            let euler =
                graph.vertex_count() as i64 - graph.edge_count() as i64 + graph.face_count() as i64;
            if euler < 1 {
                return Err(GraphError::Holes((1 - euler) as usize));
            }
        }
        Ok(graph)
    }

    /// The single edge K2 as a general graph with no faces.
    pub fn single_edge() -> Self {
        let vertices = vec![
            Vertex {
                color: Color::Red,
                pos: (0, 0),
            },
            Vertex {
                color: Color::Blue,
                pos: (1, 0),
            },
        ];
        Self::from_parts(
            GraphKind::General,
            Lattice::Square,
            vertices,
            &[(0, 1)],
            vec![],
        )
        .expect("K2 is a valid graph")
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.vertices[v.0].color
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    /// Endpoints of `e`, lower id first.
    pub fn endpoints(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e.0]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let [a, b] = self.edges[e.0];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn red_endpoint(&self, e: EdgeId) -> VertexId {
        let [a, b] = self.edges[e.0];
        if self.color(a) == Color::Red {
            a
        } else {
            b
        }
    }

    pub fn blue_endpoint(&self, e: EdgeId) -> VertexId {
        self.opposite(e, self.red_endpoint(e))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.adjacency[a.0]
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    /// Neighbours of `v` with the connecting edge, ascending by edge id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v.0]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f.0]
    }

    /// Interior faces whose boundary contains `v`, ascending.
    pub fn faces_at(&self, v: VertexId) -> &[FaceId] {
        &self.vertex_faces[v.0]
    }

    /// Interior faces containing `e` (at most two).
    pub fn faces_on_edge(&self, e: EdgeId) -> &[FaceId] {
        &self.edge_faces[e.0]
    }

    /// Subgraph induced by `keep`. Faces survive when their whole boundary does.
    pub fn induced_subgraph(&self, keep: impl IntoIterator<Item = VertexId>) -> Subgraph {
        let mut keep_mask = vec![false; self.vertices.len()];
        for v in keep {
            keep_mask[v.0] = true;
        }
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        let mut vertex_map = Vec::new();
        for (i, _) in keep_mask.iter().enumerate().filter(|(_, &k)| k) {
            new_id[i] = vertex_map.len();
            vertex_map.push(VertexId(i));
        }
        let vertices = vertex_map
            .iter()
            .map(|&v| self.vertices[v.0].clone())
            .collect();
        let mut edge_map = Vec::new();
        let mut edges = Vec::new();
        for (i, &[a, b]) in self.edges.iter().enumerate() {
            if keep_mask[a.0] && keep_mask[b.0] {
                edge_map.push(EdgeId(i));
                edges.push((new_id[a.0], new_id[b.0]));
            }
        }
        let mut face_map = Vec::new();
        let mut faces = Vec::new();
        for (i, face) in self.faces.iter().enumerate() {
            if face.boundary.iter().all(|v| keep_mask[v.0]) {
                face_map.push(FaceId(i));
                faces.push((
                    face.boundary.iter().map(|v| new_id[v.0]).collect(),
                    face.cell,
                ));
            }
        }
        let graph = Self::from_parts(GraphKind::General, self.lattice, vertices, &edges, faces)
            .expect("induced subgraph of a valid graph is valid");
        debug_assert_eq!(graph.edge_count(), edge_map.len());
        Subgraph {
            graph,
            vertex_map,
            edge_map,
            face_map,
        }
    }

    /// Induced subgraph on every vertex not in `remove`.
    pub fn without_vertices(&self, remove: impl IntoIterator<Item = VertexId>) -> Subgraph {
        let mut removed = vec![false; self.vertices.len()];
        for v in remove {
            removed[v.0] = true;
        }
        self.induced_subgraph(self.vertex_ids().filter(|v| !removed[v.0]))
    }

    /// Connected components as induced subgraphs, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Subgraph> {
        let (labels, count) = self.component_labels();
        (0..count)
            .map(|c| self.induced_subgraph(self.vertex_ids().filter(|v| labels[v.0] == c)))
            .collect()
    }

    fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut labels = vec![usize::MAX; self.vertices.len()];
        let mut count = 0;
        for start in 0..self.vertices.len() {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if labels[w.0] == usize::MAX {
                        labels[w.0] = count;
                        stack.push(w.0);
                    }
                }
            }
            count += 1;
        }
        (labels, count)
    }

    pub fn is_connected(&self) -> bool {
        self.component_labels().1 <= 1
    }

    /// Articulation points, ascending. Iterative lowpoint DFS.
    pub fn cut_vertices(&self) -> Vec<VertexId> {
        let n = self.vertices.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent edge, next neighbour index)
            let mut stack = vec![(root, usize::MAX, 0usize)];
            while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
                if let Some(&(w, e)) = self.adjacency[v].get(*next) {
                    *next += 1;
                    if e.0 == parent_edge {
                        continue;
                    }
                    if disc[w.0] == usize::MAX {
                        disc[w.0] = time;
                        low[w.0] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w.0, e.0, 0));
                    } else {
                        low[v] = low[v].min(disc[w.0]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(parent, _, _)) = stack.last() {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).map(VertexId).collect()
    }

    /// Lattice cells of the interior faces, in face order.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        self.faces.iter().map(|f| f.cell).collect()
    }

    /// Renders the faces back to the input format of the graph's lattice.
    pub fn render(&self) -> String {
        match self.lattice {
            Lattice::Square => render_polyomino(&self.cells()),
            Lattice::Hexagonal => self
                .cells()
                .iter()
                .map(|(q, r)| format!("{q} {r}\n"))
                .collect(),
        }
    }
}

/// ASCII grid for `(row, col)` cells, translated so the bounding box starts at the origin.
pub fn render_polyomino(cells: &[(i64, i64)]) -> String {
    if cells.is_empty() {
        return String::new();
    }
    let min_row = cells.iter().map(|c| c.0).min().unwrap();
    let min_col = cells.iter().map(|c| c.1).min().unwrap();
    let set: BTreeSet<_> = cells
        .iter()
        .map(|&(r, c)| (r - min_row, c - min_col))
        .collect();
    let rows = set.iter().map(|c| c.0).max().unwrap() + 1;
    let mut out = String::new();
    for r in 0..rows {
        let width = set
            .iter()
            .filter(|c| c.0 == r)
            .map(|c| c.1 + 1)
            .max()
            .unwrap_or(0);
        for c in 0..width {
            out.push(if set.contains(&(r, c)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}
