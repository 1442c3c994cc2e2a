//! Python bindings: `import ngdc`.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ngdc::geodesy::{DEFAULT_VINCENTY_MAX_ITER, DEFAULT_VINCENTY_TOL};
use ngdc::{DistanceMethod, Ellipsoid, RegistryFormat, Smoothing};

create_exception!(ngdc, VincentyNonConvergence, PyRuntimeError);

fn value_error(e: ngdc::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

pub fn parse_method(name: &str) -> Result<DistanceMethod, String> {
    match name.to_ascii_lowercase().as_str() {
        "published" | "published_first" => Ok(DistanceMethod::PublishedFirst),
        "haversine" => Ok(DistanceMethod::Haversine),
        "lambert" => Ok(DistanceMethod::Lambert),
        "vincenty" => Ok(DistanceMethod::Vincenty),
        other => Err(format!("unknown distance method `{other}`")),
    }
}

#[pyclass(frozen, skip_from_py_object, name = "GeoPoint", module = "ngdc")]
#[derive(Clone, Copy)]
pub struct PyGeoPoint(ngdc::GeoPoint);

#[pymethods]
impl PyGeoPoint {
    #[new]
    fn new(lat_deg: f64, lon_deg: f64) -> PyResult<Self> {
        ngdc::GeoPoint::new(lat_deg, lon_deg)
            .map(PyGeoPoint)
            .map_err(value_error)
    }

    #[getter]
    fn lat_deg(&self) -> f64 {
        self.0.lat_deg()
    }

    #[getter]
    fn lon_deg(&self) -> f64 {
        self.0.lon_deg()
    }

    fn __repr__(&self) -> String {
        format!("GeoPoint({}, {})", self.0.lat_deg(), self.0.lon_deg())
    }
}

#[pyfunction]
fn haversine_km(p1: PyRef<'_, PyGeoPoint>, p2: PyRef<'_, PyGeoPoint>) -> f64 {
    ngdc::haversine_km(p1.0, p2.0)
}

#[pyfunction]
fn lambert_km(p1: PyRef<'_, PyGeoPoint>, p2: PyRef<'_, PyGeoPoint>) -> f64 {
    ngdc::lambert_km(p1.0, p2.0, Ellipsoid::WGS84)
}

/// Raises `VincentyNonConvergence` instead of returning a doubtful value.
#[pyfunction]
#[pyo3(signature = (p1, p2, tol = DEFAULT_VINCENTY_TOL, max_iter = DEFAULT_VINCENTY_MAX_ITER))]
fn vincenty_km(
    p1: PyRef<'_, PyGeoPoint>,
    p2: PyRef<'_, PyGeoPoint>,
    tol: f64,
    max_iter: usize,
) -> PyResult<f64> {
    if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
        return Err(PyValueError::new_err("tol must be positive and max_iter at least 1"));
    }
    ngdc::vincenty_km(p1.0, p2.0, Ellipsoid::WGS84, tol, max_iter)
        .map(|s| s.distance_km)
        .map_err(|e| VincentyNonConvergence::new_err(e.to_string()))
}

#[pyclass(frozen, skip_from_py_object, name = "NgdcParams", module = "ngdc")]
#[derive(Clone, Copy)]
pub struct PyNgdcParams(ngdc::NgdcParams);

#[pymethods]
impl PyNgdcParams {
    #[new]
    #[pyo3(signature = (c = 0.4, d_max_km = 5000.0, apply_penalty = true, d_scale = 1000.0, s_scale = 1.0))]
    fn new(c: f64, d_max_km: f64, apply_penalty: bool, d_scale: f64, s_scale: f64) -> PyResult<Self> {
        let p = ngdc::NgdcParams {
            c,
            d_max_km,
            apply_penalty,
            d_scale,
            s_scale,
        };
        p.validate().map_err(value_error)?;
        Ok(PyNgdcParams(p))
    }

    #[getter]
    fn c(&self) -> f64 {
        self.0.c
    }

    #[getter]
    fn d_max_km(&self) -> f64 {
        self.0.d_max_km
    }

    #[getter]
    fn apply_penalty(&self) -> bool {
        self.0.apply_penalty
    }

    #[getter]
    fn d_scale(&self) -> f64 {
        self.0.d_scale
    }

    #[getter]
    fn s_scale(&self) -> f64 {
        self.0.s_scale
    }

    fn __repr__(&self) -> String {
        format!(
            "NgdcParams(c={}, d_max_km={}, apply_penalty={}, d_scale={}, s_scale={})",
            self.0.c, self.0.d_max_km, self.0.apply_penalty, self.0.d_scale, self.0.s_scale
        )
    }
}

fn params_or_default(p: Option<PyRef<'_, PyNgdcParams>>) -> ngdc::NgdcParams {
    p.map(|p| p.0).unwrap_or_default()
}

#[pyclass(frozen, get_all, name = "NgdcScore", module = "ngdc")]
pub struct PyNgdcScore {
    code: String,
    d_km: f64,
    s_m: f64,
    z: f64,
    delta: f64,
    penalized: bool,
    distance_source: String,
}

#[pymethods]
impl PyNgdcScore {
    fn __repr__(&self) -> String {
        format!(
            "NgdcScore(code={:?}, d_km={}, s_m={}, z={}, delta={}, penalized={})",
            self.code, self.d_km, self.s_m, self.z, self.delta, self.penalized
        )
    }
}

impl From<&ngdc::NgdcScore> for PyNgdcScore {
    fn from(s: &ngdc::NgdcScore) -> Self {
        PyNgdcScore {
            code: s.code.clone(),
            d_km: s.d_km,
            s_m: s.s_m,
            z: s.z,
            delta: s.delta,
            penalized: s.penalized,
            distance_source: s.distance_source.name().to_string(),
        }
    }
}

#[pyfunction]
#[pyo3(signature = (d_km, s_m, params = None))]
fn ngdc_z(d_km: f64, s_m: f64, params: Option<PyRef<'_, PyNgdcParams>>) -> PyResult<f64> {
    ngdc::ngdc_z(d_km, s_m, &params_or_default(params)).map_err(value_error)
}

/// Coefficient for a raw (distance, corpus size) pair; `code` is empty.
#[pyfunction]
#[pyo3(signature = (d_km, s_m, params = None))]
fn ngdc_delta(d_km: f64, s_m: f64, params: Option<PyRef<'_, PyNgdcParams>>) -> PyResult<PyNgdcScore> {
    let c = ngdc::ngdc_delta(d_km, s_m, &params_or_default(params)).map_err(value_error)?;
    Ok(PyNgdcScore {
        code: String::new(),
        d_km: c.d_km,
        s_m: c.s_m,
        z: c.z,
        delta: c.delta,
        penalized: c.penalized,
        distance_source: "given".into(),
    })
}

#[pyclass(frozen, name = "Registry", module = "ngdc")]
pub struct PyRegistry(ngdc::Registry);

#[pymethods]
impl PyRegistry {
    #[staticmethod]
    fn builtin() -> Self {
        PyRegistry(ngdc::builtin_registry())
    }

    #[staticmethod]
    fn from_tsv(text: &str) -> PyResult<Self> {
        ngdc::load_registry(text, RegistryFormat::Tsv)
            .map(PyRegistry)
            .map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ngdc::load_registry(text, RegistryFormat::Json)
            .map(PyRegistry)
            .map_err(value_error)
    }

    fn to_tsv(&self) -> String {
        ngdc::export_registry(&self.0, RegistryFormat::Tsv)
    }

    fn to_json(&self) -> String {
        ngdc::export_registry(&self.0, RegistryFormat::Json)
    }

    fn codes(&self) -> Vec<String> {
        self.0.entries().map(|e| e.code.clone()).collect()
    }

    fn candidate_codes(&self) -> Vec<String> {
        self.0.candidates().map(|e| e.code.clone()).collect()
    }

    #[getter]
    fn target_code(&self) -> Option<String> {
        self.0.target_code().map(str::to_string)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: PyRef<'_, PyRegistry>) -> bool {
        self.0 == other.0
    }
}

#[pyfunction]
#[pyo3(signature = (registry, params = None, method = "published"))]
fn rank_candidates(
    registry: PyRef<'_, PyRegistry>,
    params: Option<PyRef<'_, PyNgdcParams>>,
    method: &str,
) -> PyResult<Vec<PyNgdcScore>> {
    let method = parse_method(method).map_err(PyValueError::new_err)?;
    let ranking =
        ngdc::rank_candidates(&registry.0, &params_or_default(params), method).map_err(value_error)?;
    Ok(ranking.iter().map(PyNgdcScore::from).collect())
}

#[pyclass(frozen, get_all, name = "BleuReport", module = "ngdc")]
pub struct PyBleuReport {
    precisions: Vec<f64>,
    matches: Vec<u64>,
    totals: Vec<u64>,
    brevity_penalty: f64,
    score: f64,
    hyp_length: u64,
    ref_length: u64,
}

#[pymethods]
impl PyBleuReport {
    fn __repr__(&self) -> String {
        format!(
            "BleuReport(score={}, brevity_penalty={}, precisions={:?})",
            self.score, self.brevity_penalty, self.precisions
        )
    }
}

/// `hypotheses[i]` is a token list, `references[i]` a list of token lists.
#[pyfunction]
#[pyo3(signature = (hypotheses, references, max_n = 4, smoothing = "none"))]
fn corpus_bleu(
    hypotheses: Vec<Vec<String>>,
    references: Vec<Vec<Vec<String>>>,
    max_n: usize,
    smoothing: &str,
) -> PyResult<PyBleuReport> {
    if hypotheses.len() != references.len() {
        return Err(PyValueError::new_err(format!(
            "{} hypotheses but {} reference sets",
            hypotheses.len(),
            references.len()
        )));
    }
    let smoothing: Smoothing = smoothing.parse().map_err(value_error)?;
    let pairs = hypotheses
        .into_iter()
        .zip(references)
        .map(|(h, r)| ngdc::SentencePair::new(h, r))
        .collect::<Result<Vec<_>, _>>()
        .map_err(value_error)?;
    let r = ngdc::corpus_bleu(&pairs, max_n, smoothing).map_err(value_error)?;
    Ok(PyBleuReport {
        precisions: r.precisions,
        matches: r.matches,
        totals: r.totals,
        brevity_penalty: r.brevity_penalty,
        score: r.score,
        hyp_length: r.hyp_length,
        ref_length: r.ref_length,
    })
}

#[pyfunction]
fn tokenize_basic(line: &str) -> Vec<String> {
    ngdc::tokenize_basic(line)
}

#[pymodule]
#[pyo3(name = "ngdc")]
fn ngdc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGeoPoint>()?;
    m.add_class::<PyNgdcParams>()?;
    m.add_class::<PyNgdcScore>()?;
    m.add_class::<PyRegistry>()?;
    m.add_class::<PyBleuReport>()?;
    m.add("VincentyNonConvergence", m.py().get_type::<VincentyNonConvergence>())?;
    m.add_function(wrap_pyfunction!(haversine_km, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_km, m)?)?;
    m.add_function(wrap_pyfunction!(vincenty_km, m)?)?;
    m.add_function(wrap_pyfunction!(ngdc_z, m)?)?;
    m.add_function(wrap_pyfunction!(ngdc_delta, m)?)?;
    m.add_function(wrap_pyfunction!(rank_candidates, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_bleu, m)?)?;
    m.add_function(wrap_pyfunction!(tokenize_basic, m)?)?;
    Ok(())
}
