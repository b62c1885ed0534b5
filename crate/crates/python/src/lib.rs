//! Python module `tunneltime`: media, stacks, scans, phase times and scenarios.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use tunneltime::scenarios as sc;
use tunneltime::{dispersion, timing, virtuality, Error};

fn py_err(e: Error) -> PyErr {
    if e.is_validation() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

/// A homogeneous region for one field kind.
#[pyclass(name = "Medium", frozen, from_py_object)]
#[derive(Clone)]
struct PyMedium(tunneltime::Medium);

#[pymethods]
impl PyMedium {
    /// Lossless non-magnetic dielectric of refractive index `n`.
    #[staticmethod]
    fn dielectric(n: f64) -> Self {
        PyMedium(tunneltime::Medium::dielectric(n))
    }

    /// Relative permittivity and permeability, both complex.
    #[staticmethod]
    #[pyo3(signature = (permittivity, permeability = Complex64::new(1.0, 0.0)))]
    fn electromagnetic(permittivity: Complex64, permeability: Complex64) -> PyResult<Self> {
        tunneltime::Medium::electromagnetic(permittivity, permeability)
            .map(PyMedium)
            .map_err(py_err)
    }

    /// Sound speed (m/s) and density (kg/m³).
    #[staticmethod]
    fn acoustic(sound_speed: f64, density: f64) -> PyResult<Self> {
        tunneltime::Medium::acoustic(sound_speed, density)
            .map(PyMedium)
            .map_err(py_err)
    }

    /// Potential energy (J) and particle mass (kg).
    #[staticmethod]
    fn quantum(potential: f64, mass: f64) -> PyResult<Self> {
        tunneltime::Medium::quantum(potential, mass)
            .map(PyMedium)
            .map_err(py_err)
    }

    #[getter]
    fn field_kind(&self) -> &'static str {
        self.0.field_kind().name()
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// A finite layer: medium and thickness in metres.
#[pyclass(name = "Layer", frozen, from_py_object)]
#[derive(Clone)]
struct PyLayer(tunneltime::Layer);

#[pymethods]
impl PyLayer {
    #[new]
    fn new(medium: PyMedium, thickness: f64) -> PyResult<Self> {
        tunneltime::Layer::new(medium.0, thickness)
            .map(PyLayer)
            .map_err(py_err)
    }

    #[getter]
    fn thickness(&self) -> f64 {
        self.0.thickness
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.0)
    }
}

/// Layers between two semi-infinite leads.
///
/// Optional geometry: `ftir_angle` (rad, with optional `ftir_pinned` in
/// rad/s) or `waveguide_cutoff` (rad/s).
#[pyclass(name = "Stack", frozen)]
struct PyStack(tunneltime::Stack);

#[pymethods]
impl PyStack {
    #[new]
    #[pyo3(signature = (left, layers, right = None, ftir_angle = None, ftir_pinned = None, waveguide_cutoff = None))]
    fn new(
        left: PyMedium,
        layers: Vec<PyLayer>,
        right: Option<PyMedium>,
        ftir_angle: Option<f64>,
        ftir_pinned: Option<f64>,
        waveguide_cutoff: Option<f64>,
    ) -> PyResult<Self> {
        let layers: Vec<tunneltime::Layer> = layers.into_iter().map(|l| l.0).collect();
        let right = right.map(|m| m.0).unwrap_or(left.0);
        let index = |m: &tunneltime::Medium| m.refractive_index().map(|n| n.re).unwrap_or(f64::NAN);
        let geometry = match (ftir_angle, waveguide_cutoff) {
            (Some(_), Some(_)) => {
                return Err(PyValueError::new_err(
                    "choose either an FTIR or a waveguide geometry",
                ))
            }
            (Some(angle), None) => {
                let gap = layers.first().map(|l| &l.medium).unwrap_or(&right);
                let mut g =
                    dispersion::FtirGeometry::new(angle, index(&left.0), index(gap)).map_err(py_err)?;
                if let Some(w) = ftir_pinned {
                    g = g.pinned_at(w).map_err(py_err)?;
                }
                Some(dispersion::Geometry::Ftir(g))
            }
            (None, Some(c)) => Some(dispersion::Geometry::Waveguide(
                dispersion::WaveguideGeometry::new(c).map_err(py_err)?,
            )),
            (None, None) => None,
        };
        tunneltime::Stack::new(left.0, layers, right, geometry)
            .map(PyStack)
            .map_err(py_err)
    }

    /// `(t, r)` at one drive value (rad/s, or J for quantum stacks).
    fn scatter(&self, drive: f64) -> PyResult<(Complex64, Complex64)> {
        let ctx = self.0.context(drive).map_err(py_err)?;
        let a = tunneltime::stack_scatter(&self.0, &ctx).map_err(py_err)?;
        Ok((a.t, a.r))
    }

    /// Transmission and reflection amplitudes over an increasing grid.
    fn scan(&self, grid: Vec<f64>) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
        let s = tunneltime::transmission_scan(&self.0, &grid).map_err(py_err)?;
        Ok((
            s.amplitudes.iter().map(|a| a.t).collect(),
            s.amplitudes.iter().map(|a| a.r).collect(),
        ))
    }

    /// Phase time in seconds at every grid point (at least 3 points).
    fn phase_time(&self, grid: Vec<f64>) -> PyResult<Vec<f64>> {
        let s = tunneltime::transmission_scan(&self.0, &grid).map_err(py_err)?;
        let phase = timing::transmission_phase(&s).map_err(py_err)?;
        timing::phase_time(&phase).map_err(py_err)
    }

    #[getter]
    fn field_kind(&self) -> &'static str {
        self.0.field_kind.name()
    }

    fn __len__(&self) -> usize {
        self.0.layers.len()
    }
}

/// A validated scenario in SI units.
#[pyclass(name = "Scenario", frozen)]
struct PyScenario(sc::ScenarioConfig);

#[pymethods]
impl PyScenario {
    #[getter]
    fn name(&self) -> &str {
        &self.0.name
    }

    #[getter]
    fn analyses(&self) -> Vec<&'static str> {
        self.0.analyses.iter().map(|a| a.name()).collect()
    }

    fn to_toml(&self) -> String {
        self.0.to_toml()
    }

    /// Runs the requested analyses; returns a dict of results.
    fn run<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = sc::run_scenario(&self.0).map_err(py_err)?;
        let d = PyDict::new(py);
        d.set_item("name", &report.name)?;
        d.set_item("csv", sc::emit_csv(&report))?;
        d.set_item("probe_drive", report.probe_drive())?;
        d.set_item("probe_tau", report.probe_tau())?;
        d.set_item("probe_factor", report.probe_factor())?;
        if let Some(h) = &report.hartman {
            d.set_item("hartman_lengths", h.lengths.clone())?;
            d.set_item("hartman_tau", h.tau.clone())?;
            d.set_item("hartman_tau_saturated", h.tau_saturated)?;
        }
        if let Some(p) = &report.pulse {
            d.set_item("pulse_transmitted_delay", p.report.transmitted_delay())?;
            d.set_item("pulse_reflected_delay", p.report.reflected_delay())?;
            d.set_item("pulse_csv", sc::emit_pulse_csv(p))?;
        }
        if !report.virtuality.is_empty() {
            d.set_item("virtuality", sc::emit_virtuality(&report))?;
            d.set_item(
                "virtual",
                report
                    .virtuality
                    .iter()
                    .map(|v| v.is_virtual())
                    .collect::<Vec<_>>(),
            )?;
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Scenario({:?})", self.0.name)
    }
}

#[pyfunction]
fn load_scenario(text: &str) -> PyResult<PyScenario> {
    sc::load_scenario(text).map(PyScenario).map_err(py_err)
}

#[pyfunction]
fn builtin_scenario(name: &str) -> PyResult<PyScenario> {
    sc::builtin_scenario(name).map(PyScenario).map_err(py_err)
}

#[pyfunction]
fn builtin_names() -> Vec<&'static str> {
    sc::builtin_names().collect()
}

/// Rows of the traversal-time table as dicts.
#[pyfunction]
fn table1<'py>(py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    sc::table1_report()
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("label", r.label)?;
            d.set_item("reference", r.reference)?;
            d.set_item("tau_printed", r.tau_measured.text)?;
            d.set_item("tau_measured", r.tau_measured.seconds)?;
            d.set_item("period_printed", r.period.text)?;
            d.set_item("period", r.period.seconds)?;
            d.set_item("tau_simulated", r.tau_simulated)?;
            d.set_item("factor", r.factor)?;
            Ok(d)
        })
        .collect()
}

#[pyfunction]
fn render_table1() -> String {
    sc::render_table1(&sc::table1_report())
}

/// `1/ν` for an angular frequency in rad/s.
#[pyfunction]
fn universal_time_frequency(angular_frequency: f64) -> PyResult<f64> {
    let ctx = tunneltime::WaveContext::electromagnetic(angular_frequency).map_err(py_err)?;
    timing::universal_time(&ctx).map_err(py_err)
}

/// `h/W` for a kinetic energy in J.
#[pyfunction]
fn universal_time_energy(kinetic_energy: f64) -> PyResult<f64> {
    let ctx = tunneltime::WaveContext::quantum(kinetic_energy).map_err(py_err)?;
    timing::universal_time(&ctx).map_err(py_err)
}

#[pyfunction]
fn interface_reflectance(n1: Complex64, n2: Complex64) -> PyResult<f64> {
    virtuality::interface_reflectance(n1, n2).map_err(py_err)
}

/// `(Δx, Δp_min)` for a particle of mass `m` under a barrier `U > W`.
#[pyfunction]
fn localization_bound(potential: f64, kinetic_energy: f64, mass: f64) -> PyResult<(f64, f64)> {
    let b = virtuality::localization_bound(potential, kinetic_energy, mass).map_err(py_err)?;
    Ok((b.delta_x, b.delta_p_min))
}

#[pymodule]
#[pyo3(name = "tunneltime")]
fn tunneltime_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMedium>()?;
    m.add_class::<PyLayer>()?;
    m.add_class::<PyStack>()?;
    m.add_class::<PyScenario>()?;
    m.add_function(wrap_pyfunction!(load_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(render_table1, m)?)?;
    m.add_function(wrap_pyfunction!(universal_time_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(universal_time_energy, m)?)?;
    m.add_function(wrap_pyfunction!(interface_reflectance, m)?)?;
    m.add_function(wrap_pyfunction!(localization_bound, m)?)?;
    m.add("ELECTRON_VOLT", tunneltime::constants::ELECTRON_VOLT)?;
    m.add("ELECTRON_MASS", tunneltime::constants::ELECTRON_MASS)?;
    m.add("SPEED_OF_LIGHT", tunneltime::constants::SPEED_OF_LIGHT)?;
    Ok(())
}
