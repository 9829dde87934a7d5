//! Python bindings. Structured values cross the boundary as canonical JSON
//! strings; graphs and models are wrapped as opaque classes.

use std::path::Path;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use layered_model::assembly::{assemble_model_detailed, knotted_certificate};
use layered_model::disk_oracle::{self, CurveWordMarking};
use layered_model::io::{from_json, to_canonical_json, Manifest};
use layered_model::model::{self, LinkId, ModelComplex};
use layered_model::moves::{self, Move, MovePath, Repairing};
use layered_model::pants_graph::{self, CurveId, Leg};
use layered_model::spines::{self, SpineTree};

fn err(e: layered_model::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn repairing(s: &str) -> PyResult<Repairing> {
    match s {
        "X1" => Ok(Repairing::Cross1),
        "X2" => Ok(Repairing::Cross2),
        _ => Err(PyValueError::new_err(format!("re-pairing must be \"X1\" or \"X2\", got {s:?}"))),
    }
}

#[pyclass(name = "PantsGraph", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPantsGraph(pants_graph::PantsGraph);

#[pymethods]
impl PyPantsGraph {
    /// `matching` lists pairs of legs `((vertex, slot), (vertex, slot))`.
    #[new]
    fn new(vertices: usize, matching: Vec<((u32, u8), (u32, u8))>) -> PyResult<Self> {
        let m: Vec<(Leg, Leg)> = matching.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        pants_graph::PantsGraph::new(vertices, &m).map(Self).map_err(err)
    }

    #[staticmethod]
    fn theta() -> Self {
        Self(pants_graph::PantsGraph::theta())
    }

    #[staticmethod]
    fn dumbbell() -> Self {
        Self(pants_graph::PantsGraph::dumbbell())
    }

    #[staticmethod]
    fn chain(genus: u32) -> PyResult<Self> {
        pants_graph::PantsGraph::chain(genus).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_json(s).map(Self).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_canonical_json(&self.0).map_err(err)
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.0.genus()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    fn curve_ids(&self) -> Vec<u32> {
        self.0.curve_ids().map(|c| c.0).collect()
    }

    fn canonical_form(&self) -> String {
        self.0.canonical_form().0
    }

    fn is_isomorphic(&self, other: &Self) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    fn s_move(&self, target: u32, new_curve: u32, twist: i64) -> PyResult<Self> {
        moves::apply_move(&self.0, &Move::s(CurveId(target), twist, CurveId(new_curve))).map(Self).map_err(err)
    }

    fn a_move(&self, target: u32, pairing: &str, new_curve: u32, twist: i64) -> PyResult<Self> {
        let m = Move::a(CurveId(target), repairing(pairing)?, twist, CurveId(new_curve));
        moves::apply_move(&self.0, &m).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("PantsGraph(genus={}, {})", self.0.genus(), self.0.canonical_form().0)
    }
}

#[pyclass(name = "ModelComplex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModel(ModelComplex);

#[pymethods]
impl PyModel {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_json(s).map(Self).map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        to_canonical_json(&self.0).map_err(err)
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.0.genus
    }

    #[getter]
    fn closed(&self) -> bool {
        self.0.closed
    }

    fn euler_characteristic(&self) -> PyResult<i64> {
        self.0.euler_characteristic().map_err(err)
    }

    fn internal_face_count(&self) -> usize {
        self.0.internal_face_count()
    }

    /// `(S-blocks, A-blocks)`.
    fn block_counts(&self) -> (usize, usize) {
        self.0.block_counts()
    }

    /// Validation report as JSON.
    fn validate(&self) -> PyResult<String> {
        to_canonical_json(&model::validate_complex(&self.0)).map_err(err)
    }

    fn induced_decomposition(&self) -> PyResult<PyPantsGraph> {
        spines::induced_boundary_decomposition(&self.0).map(PyPantsGraph).map_err(err)
    }

    /// Glue one block per move of the JSON path onto this spine.
    fn layer(&self, path_json: &str) -> PyResult<Self> {
        let path: MovePath = from_json(path_json).map_err(err)?;
        spines::layer_model(&self.0, &path).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        let (s, a) = self.0.block_counts();
        format!("ModelComplex(genus={}, faces={}, S={s}, A={a})", self.0.genus, self.0.faces.len())
    }
}

#[pyfunction]
fn enumerate(genus: u32) -> PyResult<Vec<PyPantsGraph>> {
    pants_graph::enumerate_pants_graphs(genus).map(|v| v.into_iter().map(PyPantsGraph).collect()).map_err(err)
}

#[pyfunction]
fn build_product_model(path_json: &str) -> PyResult<PyModel> {
    let path: MovePath = from_json(path_json).map_err(err)?;
    model::build_product_model(&path).map(PyModel).map_err(err)
}

#[pyfunction]
fn build_fat_spine(tree_json: &str) -> PyResult<PyModel> {
    let t: SpineTree = from_json(tree_json).map_err(err)?;
    spines::build_fat_spine(&t).map(PyModel).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (target, genus, max_depth = 4))]
fn layer_number_lower_bound(target: &PyPantsGraph, genus: u32, max_depth: usize) -> PyResult<Option<usize>> {
    spines::layer_number_lower_bound(&target.0, genus, max_depth).map_err(err)
}

#[pyfunction]
fn cyclic_reduce(word: &str) -> PyResult<String> {
    disk_oracle::cyclic_reduce_str(word).map_err(err)
}

/// Verdict of the word backend as JSON.
#[pyfunction]
fn free_group_verdict(marking_json: &str, link: u32) -> PyResult<String> {
    let m: CurveWordMarking = from_json(marking_json).map_err(err)?;
    let v = disk_oracle::free_group_verdict(&m, LinkId(link)).map_err(err)?;
    to_canonical_json(&v).map_err(err)
}

/// Assemble the manifest at `path`; returns the model and, when asked, the
/// certificate as JSON.
#[pyfunction]
#[pyo3(signature = (manifest, certify = false))]
fn assemble(manifest: &str, certify: bool) -> PyResult<(PyModel, Option<String>)> {
    let m = Manifest::load(Path::new(manifest)).map_err(err)?;
    let a = assemble_model_detailed(&m.splitting, &m.models, &m.thick_matchings, &m.thin_paths).map_err(err)?;
    let cert = if certify {
        let c = knotted_certificate(&a.model, m.marking.as_ref(), &m.attestations).map_err(err)?;
        Some(to_canonical_json(&c).map_err(err)?)
    } else {
        None
    };
    Ok((PyModel(a.model), cert))
}

#[pymodule]
fn pylayered(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPantsGraph>()?;
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(build_product_model, m)?)?;
    m.add_function(wrap_pyfunction!(build_fat_spine, m)?)?;
    m.add_function(wrap_pyfunction!(layer_number_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(free_group_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(assemble, m)?)?;
    Ok(())
}
