use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use segvis::corpus::{self, Method};
use segvis::geometry::{self as geo, Coord, Point, SimplePolygon};
use segvis::index::{Format, WvpIndex};
use segvis::render::{render_svg, WvpDocument};
use segvis::structure::{triangulate, Triangulation};
use segvis::visibility::{self, WeakVisibilityPolygon};

create_exception!(segvis, SegmentNotInside, PyException);

/// Coordinates arrive as ints, strings like "3/4" or "0.25", or anything whose
/// `str()` is one of those (`fractions.Fraction`, short floats).
fn coord(obj: &Bound<'_, PyAny>) -> PyResult<Coord> {
    let text = obj.str()?.to_string();
    text.parse::<Coord>()
        .map_err(|e| PyValueError::new_err(format!("bad coordinate {text:?}: {}", e.0)))
}

fn point(xy: (Bound<'_, PyAny>, Bound<'_, PyAny>)) -> PyResult<Point> {
    Ok(Point::new(coord(&xy.0)?, coord(&xy.1)?))
}

fn exact(p: &Point) -> (String, String) {
    (p.x.to_string(), p.y.to_string())
}

fn not_inside(_: visibility::SegmentNotInside) -> PyErr {
    SegmentNotInside::new_err("segment is not inside the polygon")
}

/// A validated counter-clockwise simple polygon.
#[pyclass(module = "segvis", frozen)]
struct Polygon {
    inner: SimplePolygon,
    tri: Triangulation,
}

impl Polygon {
    fn wrap(inner: SimplePolygon) -> Polygon {
        let tri = triangulate(&inner);
        Polygon { inner, tri }
    }
}

#[pymethods]
impl Polygon {
    #[new]
    fn new(vertices: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>) -> PyResult<Polygon> {
        let raw = vertices.into_iter().map(point).collect::<PyResult<Vec<_>>>()?;
        let poly = geo::validate_polygon(&raw).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Polygon::wrap(poly))
    }

    /// Parses the `.poly` text format.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Polygon> {
        let raw = geo::parse_polygon(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let poly = geo::validate_polygon(&raw).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Polygon::wrap(poly))
    }

    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Polygon> {
        corpus::fixture(&name.to_uppercase())
            .map(Polygon::wrap)
            .ok_or_else(|| PyValueError::new_err(format!("no fixture named {name:?}")))
    }

    fn to_text(&self) -> String {
        geo::format_polygon(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn reflex_count(&self) -> usize {
        self.inner.reflex_count()
    }

    /// Exact vertex coordinates as strings.
    fn vertices(&self) -> Vec<(String, String)> {
        self.inner.vertices().iter().map(exact).collect()
    }

    fn vertices_f64(&self) -> Vec<(f64, f64)> {
        self.inner.vertices().iter().map(|p| (p.x.to_f64(), p.y.to_f64())).collect()
    }

    fn svg(&self, wvp: Option<&Wvp>) -> String {
        render_svg(&self.inner, wvp.map(|w| &w.doc))
    }

    fn __repr__(&self) -> String {
        format!("Polygon(n={}, reflex={})", self.inner.len(), self.inner.reflex_count())
    }
}

/// The answer to one query.
#[pyclass(module = "segvis", frozen)]
struct Wvp {
    doc: WvpDocument,
    outline: Vec<(f64, f64)>,
}

impl Wvp {
    fn wrap(poly: &SimplePolygon, w: &WeakVisibilityPolygon) -> Wvp {
        let outline = w.boundary.outline(poly).iter().map(|p| (p.x.to_f64(), p.y.to_f64())).collect();
        Wvp { doc: WvpDocument::new(poly, w), outline }
    }
}

#[pymethods]
impl Wvp {
    #[getter]
    fn visible_vertices(&self) -> Vec<usize> {
        self.doc.visible_vertices.clone()
    }

    #[getter]
    fn outline(&self) -> Vec<(f64, f64)> {
        self.outline.clone()
    }

    fn __len__(&self) -> usize {
        self.doc.elements.len()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.doc).expect("documents serialize")
    }

    fn __repr__(&self) -> String {
        format!("Wvp(elements={}, visible={})", self.doc.elements.len(), self.doc.visible_vertices.len())
    }
}

#[pyclass(module = "segvis", frozen)]
struct Index {
    inner: WvpIndex,
}

#[pymethods]
impl Index {
    #[new]
    fn new(polygon: &Polygon) -> Index {
        Index { inner: WvpIndex::build(&polygon.inner) }
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Index> {
        WvpIndex::read_from(data)
            .map(|inner| Index { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[pyo3(signature = (format = "binary"))]
    fn to_bytes<'py>(&self, py: Python<'py>, format: &str) -> PyResult<Bound<'py, PyBytes>> {
        let f = match format {
            "binary" => Format::Binary,
            "json" => Format::Json,
            other => return Err(PyValueError::new_err(format!("unknown format {other:?}"))),
        };
        Ok(PyBytes::new(py, &self.inner.to_bytes(f)))
    }

    fn polygon(&self) -> Polygon {
        Polygon::wrap(self.inner.polygon.clone())
    }

    fn stats(&self) -> String {
        serde_json::to_string(&self.inner.stats()).expect("stats serialize")
    }

    fn query(&self, p: (Bound<'_, PyAny>, Bound<'_, PyAny>), q: (Bound<'_, PyAny>, Bound<'_, PyAny>)) -> PyResult<Wvp> {
        let pq = geo::Segment::new(point(p)?, point(q)?);
        let w = self.inner.query(&pq).map_err(not_inside)?;
        Ok(Wvp::wrap(&self.inner.polygon, &w))
    }
}

/// Linear-time reference answer without an index.
#[pyfunction]
fn wvp_linear(
    polygon: &Polygon,
    p: (Bound<'_, PyAny>, Bound<'_, PyAny>),
    q: (Bound<'_, PyAny>, Bound<'_, PyAny>),
) -> PyResult<Wvp> {
    let pq = geo::Segment::new(point(p)?, point(q)?);
    let w = visibility::wvp_linear(&polygon.inner, &polygon.tri, &pq).map_err(not_inside)?;
    Ok(Wvp::wrap(&polygon.inner, &w))
}

/// Brute-force set of vertices weakly visible from the segment.
#[pyfunction]
fn oracle(
    polygon: &Polygon,
    p: (Bound<'_, PyAny>, Bound<'_, PyAny>),
    q: (Bound<'_, PyAny>, Bound<'_, PyAny>),
) -> PyResult<Vec<usize>> {
    let pq = geo::Segment::new(point(p)?, point(q)?);
    let set = visibility::weak_visibility_oracle(&polygon.inner, &polygon.tri, &pq).map_err(not_inside)?;
    Ok(set.into_iter().collect())
}

#[pyfunction]
#[pyo3(signature = (n, seed = 0, method = "space"))]
fn generate(n: usize, seed: u64, method: &str) -> PyResult<Polygon> {
    let m = match method {
        "space" => Method::SpacePartition,
        "two-opt" => Method::TwoOptRepair,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    corpus::generate(seed, n, m)
        .map(Polygon::wrap)
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A seeded segment strictly inside the polygon, as exact string coordinates.
#[pyfunction]
#[pyo3(signature = (polygon, seed = 0))]
fn random_segment(polygon: &Polygon, seed: u64) -> PyResult<((String, String), (String, String))> {
    let s = corpus::random_interior_segment(&polygon.inner, seed).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((exact(&s.a), exact(&s.b)))
}

#[pymodule]
#[pyo3(name = "segvis")]
fn segvis_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polygon>()?;
    m.add_class::<Index>()?;
    m.add_class::<Wvp>()?;
    m.add_function(wrap_pyfunction!(wvp_linear, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(random_segment, m)?)?;
    m.add("FIXTURES", corpus::FIXTURE_NAMES.to_vec())?;
    m.add("SegmentNotInside", m.py().get_type::<SegmentNotInside>())?;
    Ok(())
}
