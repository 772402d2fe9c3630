//! Python bindings. Vertex labels and cycles are 1-based, as in the CLI.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hamnet::corpus::corpus_gen;
use hamnet::mesh::{emit_off, load_off, validate};
use hamnet::netio::{net_from_json, net_to_json};
use hamnet::search::{self, HamCycle, SearchOptions};
use hamnet::svg::{emit_svg, SvgConfig};
use hamnet::{fixtures, unfold, verify};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "Polyhedron", module = "hamnet", frozen)]
pub struct PyPolyhedron {
    inner: hamnet::Polyhedron,
}

impl PyPolyhedron {
    fn cycle(&self, text: &str) -> PyResult<HamCycle> {
        HamCycle::parse(&self.inner, text).map_err(err)
    }

    fn edge(&self, q: &HamCycle, edge: Option<(usize, usize)>) -> PyResult<(usize, usize)> {
        match edge {
            None => Ok((q.vertices()[0], q.vertices()[1])),
            Some((a, b)) if a >= 1 && b >= 1 => {
                q.directed_edge(a - 1, b - 1).ok_or_else(|| err(format!("{a}-{b} is not an edge of {q}")))
            }
            Some((a, b)) => Err(err(format!("{a}-{b} is not an edge of {q}"))),
        }
    }

    fn net(&self, cycle: &str, edge: Option<(usize, usize)>) -> PyResult<hamnet::Net> {
        let q = self.cycle(cycle)?;
        let e = self.edge(&q, edge)?;
        unfold::unfold(&self.inner, &q, e).map_err(err)
    }
}

#[pymethods]
impl PyPolyhedron {
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name).map(|inner| PyPolyhedron { inner }).ok_or_else(|| err(format!("unknown fixture {name:?}")))
    }

    #[staticmethod]
    fn from_off(text: &str) -> PyResult<Self> {
        load_off(text).map(|inner| PyPolyhedron { inner }).map_err(err)
    }

    #[staticmethod]
    fn random(n_points: usize, seed: u64) -> PyResult<Self> {
        corpus_gen(n_points, seed).map(|inner| PyPolyhedron { inner }).map_err(err)
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    #[getter]
    fn num_faces(&self) -> usize {
        self.inner.num_faces()
    }

    fn vertices(&self) -> Vec<(f64, f64, f64)> {
        self.inner.vertices().iter().map(|v| (v.x, v.y, v.z)).collect()
    }

    /// Faces as lists of 1-based vertex labels.
    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner.faces().iter().map(|f| f.iter().map(|v| v + 1).collect()).collect()
    }

    fn curvature(&self, vertex: usize) -> PyResult<f64> {
        if vertex == 0 || vertex > self.inner.num_vertices() {
            return Err(err(format!("no vertex {vertex}")));
        }
        Ok(self.inner.vertex_curvature(vertex - 1))
    }

    /// List of `(check, passed, details)`.
    #[pyo3(signature = (convex = true))]
    fn validate(&self, convex: bool) -> Vec<(String, bool, String)> {
        validate(&self.inner, convex).checks.into_iter().map(|c| (c.name, c.pass, c.details)).collect()
    }

    fn to_off(&self) -> String {
        emit_off(&self.inner)
    }

    #[pyo3(signature = (limit = None))]
    fn quasigeodesics(&self, limit: Option<usize>) -> Vec<String> {
        let opts = SearchOptions { limit, parallel: true };
        search::search(&self.inner, true, opts).iter().map(|q| q.to_string()).collect()
    }

    #[pyo3(signature = (limit = None))]
    fn hamiltonian_cycles(&self, limit: Option<usize>) -> Vec<String> {
        let opts = SearchOptions { limit, parallel: true };
        search::search(&self.inner, false, opts).iter().map(|q| q.to_string()).collect()
    }

    /// `(is_quasigeodesic, [(vertex, left, right), ...])`.
    fn side_split(&self, cycle: &str) -> PyResult<(bool, Vec<(usize, f64, f64)>)> {
        let q = self.cycle(cycle)?;
        let (ok, split) = search::is_quasigeodesic(&self.inner, &q).map_err(err)?;
        Ok((ok, split.0.iter().map(|s| (s.vertex + 1, s.left, s.right)).collect()))
    }

    #[pyo3(signature = (cycle, edge = None))]
    fn unfold_json(&self, cycle: &str, edge: Option<(usize, usize)>) -> PyResult<String> {
        Ok(net_to_json(&self.net(cycle, edge)?))
    }

    #[pyo3(signature = (cycle, edge = None))]
    fn unfold_svg(&self, cycle: &str, edge: Option<(usize, usize)>) -> PyResult<String> {
        Ok(emit_svg(&self.net(cycle, edge)?, &SvgConfig::default()))
    }

    #[pyo3(signature = (cycle, dedupe = false))]
    fn nets(&self, cycle: &str, dedupe: bool) -> PyResult<Vec<String>> {
        let q = self.cycle(cycle)?;
        let nets = unfold::enumerate_nets(&self.inner, &q, dedupe).map_err(err)?;
        Ok(nets.iter().map(net_to_json).collect())
    }

    /// `(passed, report_json)` for a net JSON document of this polyhedron.
    fn verify(&self, net_json: &str) -> PyResult<(bool, String)> {
        let net = net_from_json(&self.inner, net_json).map_err(err)?;
        let report = verify::verify_net(Some(&self.inner), &net);
        Ok((report.passed(), serde_json::to_string(&report).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "Polyhedron({:?}, V={}, E={}, F={})",
            self.inner.name(),
            self.inner.num_vertices(),
            self.inner.num_edges(),
            self.inner.num_faces()
        )
    }
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::NAMES.to_vec()
}

#[pymodule(name = "hamnet")]
fn hamnet_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolyhedron>()?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
