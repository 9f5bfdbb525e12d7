//! Python bindings for the `clarforce` library.

use clarforce_cli::input::{self, Format};
use clarforce_cli::report;
use clarforce_cli::CliError;
use clarforce_core::forcing::{DEFAULT_DEPTH_BUDGET, DEFAULT_MATCHING_BUDGET};
use clarforce_core::verify::{run_checks, Outcome};
use clarforce_core::{
    BondClass, Budget, ClarError, ForcingError, GraphError, MatchingError, PlaneBipartiteGraph,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(clarforce, ParseError, PyValueError);
create_exception!(clarforce, NoPerfectMatchingError, PyValueError);
create_exception!(clarforce, BudgetExceededError, PyRuntimeError);
create_exception!(clarforce, InvariantError, PyRuntimeError);

fn parse_err(e: GraphError) -> PyErr {
    ParseError::new_err(e.to_string())
}

fn matching_err(e: MatchingError) -> PyErr {
    match e {
        MatchingError::NoPerfectMatching => NoPerfectMatchingError::new_err(e.to_string()),
        MatchingError::BudgetExceeded(_) => BudgetExceededError::new_err(e.to_string()),
        other => InvariantError::new_err(other.to_string()),
    }
}

fn clar_err(e: ClarError) -> PyErr {
    match e {
        ClarError::NoPerfectMatching => NoPerfectMatchingError::new_err(e.to_string()),
        other => InvariantError::new_err(other.to_string()),
    }
}

fn forcing_err(e: ForcingError) -> PyErr {
    match e {
        ForcingError::NoPerfectMatching => NoPerfectMatchingError::new_err(e.to_string()),
        ForcingError::BudgetExceeded(_) | ForcingError::DepthExceeded(_) => {
            BudgetExceededError::new_err(e.to_string())
        }
        other => InvariantError::new_err(other.to_string()),
    }
}

fn cli_err(e: CliError) -> PyErr {
    match e {
        CliError::Parse(g) => parse_err(g),
        CliError::NoPerfectMatching => NoPerfectMatchingError::new_err(e.to_string()),
        CliError::Budget(_) => BudgetExceededError::new_err(e.to_string()),
        CliError::Usage(_) | CliError::Read { .. } => PyValueError::new_err(e.to_string()),
        CliError::Invariant { .. } | CliError::Write { .. } => {
            InvariantError::new_err(e.to_string())
        }
    }
}

fn parse_format(format: Option<&str>) -> PyResult<Option<Format>> {
    match format {
        None => Ok(None),
        Some("poly") => Ok(Some(Format::Poly)),
        Some("hex") => Ok(Some(Format::Hex)),
        Some(other) => Err(PyValueError::new_err(format!(
            "format must be 'poly' or 'hex', got {other:?}"
        ))),
    }
}

/// A polyomino or hexagonal system as a plane bipartite graph.
#[pyclass(frozen, module = "clarforce")]
pub struct Graph {
    inner: PlaneBipartiteGraph,
}

#[pymethods]
impl Graph {
    /// Parses an ASCII polyomino (`#` cell, `.` empty).
    #[staticmethod]
    fn polyomino(text: &str) -> PyResult<Self> {
        let inner = clarforce_core::parse_polyomino(text).map_err(parse_err)?;
        Ok(Graph { inner })
    }

    /// Builds a hexagonal system from axial `(q, r)` cells.
    #[staticmethod]
    fn hexagonal(cells: Vec<(i64, i64)>) -> PyResult<Self> {
        let inner = clarforce_core::parse_hexagonal(&cells).map_err(parse_err)?;
        Ok(Graph { inner })
    }

    /// Parses text in either input format, detected unless `format` is given.
    #[staticmethod]
    #[pyo3(signature = (text, format=None))]
    fn parse(text: &str, format: Option<&str>) -> PyResult<Self> {
        let input = input::parse(text, parse_format(format)?).map_err(cli_err)?;
        Ok(Graph { inner: input.graph })
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn face_count(&self) -> usize {
        self.inner.face_count()
    }

    #[getter]
    fn lattice(&self) -> &'static str {
        match self.inner.lattice() {
            clarforce_core::Lattice::Square => "square",
            clarforce_core::Lattice::Hexagonal => "hexagonal",
        }
    }

    /// Lattice cell of every face, in face-id order.
    fn cells(&self) -> Vec<(i64, i64)> {
        self.inner.cells()
    }

    /// Vertex ids of edge `e`.
    fn endpoints(&self, e: usize) -> PyResult<(usize, usize)> {
        if e >= self.inner.edge_count() {
            return Err(PyValueError::new_err(format!("no edge {e}")));
        }
        let [a, b] = self.inner.endpoints(clarforce_core::EdgeId(e));
        Ok((a.0, b.0))
    }

    /// The graph in its input format.
    fn render(&self) -> String {
        self.inner.render()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(lattice={:?}, vertices={}, edges={}, faces={})",
            self.lattice(),
            self.vertex_count(),
            self.edge_count(),
            self.face_count()
        )
    }
}

/// Maximum number of pairwise disjoint faces in a Clar cover.
#[pyfunction]
fn clar_number(g: &Graph) -> PyResult<usize> {
    Ok(clarforce_core::solve_clar(&g.inner)
        .map_err(clar_err)?
        .clar_number)
}

/// A maximum Clar cover as `(face ids, edge ids)`.
#[pyfunction]
fn clar_cover(g: &Graph) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let w = clarforce_core::solve_clar(&g.inner)
        .map_err(clar_err)?
        .witness;
    Ok((
        w.faces.iter().map(|f| f.0).collect(),
        w.edges.iter().map(|e| e.0).collect(),
    ))
}

/// Largest forcing number over all perfect matchings.
#[pyfunction]
fn max_forcing_number(g: &Graph) -> PyResult<usize> {
    Ok(clarforce_core::max_forcing_number(&g.inner)
        .map_err(forcing_err)?
        .max_forcing)
}

#[pyfunction]
fn is_elementary(g: &Graph) -> PyResult<bool> {
    clarforce_core::is_elementary(&g.inner).map_err(matching_err)
}

/// Ids of faces whose boundary is alternating for some perfect matching.
#[pyfunction]
fn resonant_faces(g: &Graph) -> PyResult<Vec<usize>> {
    let faces = clarforce_core::matching::resonant_faces(&g.inner).map_err(matching_err)?;
    Ok(faces.iter().map(|f| f.0).collect())
}

/// `(components, bond_classes)`: vertex ids per elementary component and a
/// class name per edge id.
#[pyfunction]
fn decompose(g: &Graph) -> PyResult<(Vec<Vec<usize>>, Vec<&'static str>)> {
    let dec = clarforce_core::elementary_components(&g.inner).map_err(matching_err)?;
    let components = dec
        .components
        .iter()
        .map(|c| c.vertices.iter().map(|v| v.0).collect())
        .collect();
    let classes = dec
        .bond_class
        .iter()
        .map(|c| match c {
            BondClass::DoubleBond => "double_bond",
            BondClass::FixedSingle => "fixed_single",
            BondClass::FixedDouble => "fixed_double",
        })
        .collect();
    Ok((components, classes))
}

/// Oracle cross-checks as `(name, status, detail)` triples.
#[pyfunction]
#[pyo3(signature = (g, budget_matchings=DEFAULT_MATCHING_BUDGET, budget_depth=DEFAULT_DEPTH_BUDGET))]
fn verify(
    g: &Graph,
    budget_matchings: usize,
    budget_depth: usize,
) -> PyResult<Vec<(String, String, String)>> {
    let budget = Budget {
        matchings: budget_matchings,
        depth: budget_depth,
    };
    let checks = run_checks(&g.inner, budget).map_err(matching_err)?;
    Ok(checks
        .into_iter()
        .map(|c| {
            let (status, detail) = match c.outcome {
                Outcome::Pass(d) => ("PASS", d),
                Outcome::Fail(d) => ("FAIL", d),
                Outcome::Skipped(d) => ("SKIPPED", d),
            };
            (c.name.to_string(), status.to_string(), detail)
        })
        .collect())
}

/// Full analysis report of `text` as a JSON string, without timings.
#[pyfunction]
#[pyo3(signature = (text, format=None, budget_depth=DEFAULT_DEPTH_BUDGET))]
fn analyze(text: &str, format: Option<&str>, budget_depth: usize) -> PyResult<String> {
    let input = input::parse(text, parse_format(format)?).map_err(cli_err)?;
    let budget = Budget {
        matchings: DEFAULT_MATCHING_BUDGET,
        depth: budget_depth,
    };
    let mut r = report::analyze(&input, budget).map_err(cli_err)?;
    r.timings_ms = None;
    serde_json::to_string(&r).map_err(|e| InvariantError::new_err(e.to_string()))
}

#[pymodule]
fn clarforce(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(clar_number, m)?)?;
    m.add_function(wrap_pyfunction!(clar_cover, m)?)?;
    m.add_function(wrap_pyfunction!(max_forcing_number, m)?)?;
    m.add_function(wrap_pyfunction!(is_elementary, m)?)?;
    m.add_function(wrap_pyfunction!(resonant_faces, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    let py = m.py();
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add(
        "NoPerfectMatchingError",
        py.get_type::<NoPerfectMatchingError>(),
    )?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add("InvariantError", py.get_type::<InvariantError>())?;
    Ok(())
}
