//! Python bindings: `import mrbound`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use mrbound_core::cli::{probe_csv, scan_csv};
use mrbound_core::document::{ParsedSpec, RecurrenceDoc};
use mrbound_core::heights;
use mrbound_core::interval::{format_sig, RealInterval};
use mrbound_core::multirec::{sample_points, LatticePoint};
use mrbound_core::numberfield::{self, DEFAULT_PREC};
use mrbound_core::poly::IntPolynomial;
use mrbound_core::verifier::{self, Place, RatioOutcome, VerifierConfig};
use mrbound_core::{Error, Rational};

create_exception!(mrbound, MrboundError, PyValueError);

fn err(e: Error) -> PyErr {
    MrboundError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.numer().clone(), q.denom().clone()))
}

fn rational_from(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = obj.str()?.to_string();
    verifier::parse_rational(&s).map_err(err)
}

fn point(coords: Vec<u64>) -> LatticePoint {
    LatticePoint::new(coords)
}

/// Rigorous real enclosure [lo, hi].
#[pyclass(name = "Interval", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInterval(RealInterval);

#[pymethods]
impl PyInterval {
    #[getter]
    fn lo(&self) -> f64 {
        self.0.lo().to_f64()
    }

    #[getter]
    fn hi(&self) -> f64 {
        self.0.hi().to_f64()
    }

    /// Exact endpoints as fractions.
    fn exact<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
        Ok((fraction(py, &self.0.lo().to_rational())?, fraction(py, &self.0.hi().to_rational())?))
    }

    fn contains(&self, value: &Bound<'_, PyAny>) -> PyResult<bool> {
        Ok(self.0.contains_rational(&rational_from(value)?))
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64_mid()
    }

    fn __repr__(&self) -> String {
        format!("Interval[{}, {}]", format_sig(self.0.lo(), 17), format_sig(self.0.hi(), 17))
    }
}

#[pyclass(name = "NumberField", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyNumberField(numberfield::NumberField);

#[pymethods]
impl PyNumberField {
    /// Field Q[X]/(p) for a monic irreducible p given lowest degree first.
    #[new]
    fn new(minpoly: Vec<BigInt>) -> PyResult<Self> {
        numberfield::NumberField::new(IntPolynomial::new(minpoly)).map(PyNumberField).map_err(err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn minpoly(&self) -> Vec<BigInt> {
        self.0.minpoly().coeffs().to_vec()
    }

    /// Element from power-basis coordinates (ints, fractions or "p/q" strings).
    fn element(&self, coords: Vec<Bound<'_, PyAny>>) -> PyResult<PyFieldElement> {
        let q = coords.iter().map(rational_from).collect::<PyResult<Vec<_>>>()?;
        self.0.element(q).map(PyFieldElement).map_err(err)
    }

    fn generator(&self) -> PyFieldElement {
        PyFieldElement(self.0.generator())
    }

    fn one(&self) -> PyFieldElement {
        PyFieldElement(self.0.one())
    }

    /// Approximate embeddings of the generator as complex numbers, in place order.
    fn roots(&self) -> PyResult<Vec<(f64, f64)>> {
        let t = self.0.roots(64).map_err(err)?;
        Ok(t.roots.iter().map(|r| (r.re.to_f64_mid(), r.im.to_f64_mid())).collect())
    }

    fn __repr__(&self) -> String {
        format!("NumberField(Q[X]/({}))", self.0.minpoly())
    }
}

#[pyclass(name = "FieldElement", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFieldElement(numberfield::FieldElement);

impl PyFieldElement {
    fn other(&self, o: &Bound<'_, PyAny>) -> PyResult<numberfield::FieldElement> {
        if let Ok(e) = o.cast::<PyFieldElement>() {
            return Ok(e.get().0.clone());
        }
        Ok(self.0.field().from_rational(rational_from(o)?))
    }
}

#[pymethods]
impl PyFieldElement {
    fn coords<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.coords().iter().map(|c| fraction(py, c)).collect()
    }

    fn __add__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.add(&self.other(o)?).map(PyFieldElement).map_err(err)
    }

    fn __radd__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.sub(&self.other(o)?).map(PyFieldElement).map_err(err)
    }

    fn __mul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.mul(&self.other(o)?).map(PyFieldElement).map_err(err)
    }

    fn __rmul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __truediv__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.div(&self.other(o)?).map(PyFieldElement).map_err(err)
    }

    fn __neg__(&self) -> Self {
        PyFieldElement(self.0.neg())
    }

    fn __pow__(&self, e: u64, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        PyFieldElement(self.0.pow(e))
    }

    fn __eq__(&self, o: &Bound<'_, PyAny>) -> bool {
        self.other(o).map(|x| x == self.0).unwrap_or(false)
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.0.coords().hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("FieldElement({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    /// Primitive integer minimal polynomial, lowest degree first.
    fn minimal_polynomial(&self) -> Vec<BigInt> {
        self.0.minimal_polynomial().coeffs().to_vec()
    }

    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.norm())
    }

    fn trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.trace())
    }

    fn is_algebraic_integer(&self) -> bool {
        self.0.is_algebraic_integer()
    }

    fn is_root_of_unity(&self) -> bool {
        self.0.is_root_of_unity()
    }

    fn denominator(&self) -> BigInt {
        self.0.denominator()
    }

    #[pyo3(signature = (bits = 64))]
    fn house(&self, py: Python<'_>, bits: u32) -> PyResult<PyInterval> {
        py.detach(|| self.0.house(bits)).map(PyInterval).map_err(err)
    }

    #[pyo3(signature = (place = 0, bits = 64))]
    fn abs_at(&self, py: Python<'_>, place: usize, bits: u32) -> PyResult<PyInterval> {
        py.detach(|| self.0.abs_at(place, bits)).map(PyInterval).map_err(err)
    }

    #[pyo3(signature = (bits = 64))]
    fn height(&self, py: Python<'_>, bits: u32) -> PyResult<PyInterval> {
        py.detach(|| heights::height_k(&self.0, bits)).map(PyInterval).map_err(err)
    }

    fn finite_part(&self) -> PyResult<BigInt> {
        heights::finite_part_exact(&self.0).map_err(err)
    }
}

#[pyclass(name = "MultiRecurrence", frozen, skip_from_py_object)]
struct PyMultiRecurrence {
    spec: ParsedSpec,
    g: mrbound_core::MultiRecurrence,
}

impl PyMultiRecurrence {
    fn config(&self, i0: usize, eps: &Bound<'_, PyAny>, max_norm: u64, precision: u32, place: usize) -> PyResult<VerifierConfig> {
        let i = self.spec.canonical_index(&self.g, i0).map_err(err)?;
        let mut cfg = VerifierConfig::new(rational_from(eps)?, i, max_norm);
        cfg.precision = precision;
        cfg.place = Place::Archimedean(place);
        Ok(cfg)
    }
}

fn opt_interval(iv: &Option<RealInterval>) -> Option<PyInterval> {
    iv.clone().map(PyInterval)
}

#[pymethods]
impl PyMultiRecurrence {
    /// Parses a recurrence document. Term indices in other methods refer to document order.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec = RecurrenceDoc::from_json(text).and_then(|d| d.validate()).map_err(err)?;
        let g = spec.recurrence().map_err(err)?;
        Ok(PyMultiRecurrence { spec, g })
    }

    /// Canonical form as a document.
    fn to_json(&self) -> String {
        mrbound_core::serialize_spec(&self.g)
    }

    #[getter]
    fn field(&self) -> PyNumberField {
        PyNumberField(self.g.field().clone())
    }

    #[getter]
    fn arity(&self) -> usize {
        self.g.arity()
    }

    fn __len__(&self) -> usize {
        self.g.len()
    }

    fn eval(&self, n: Vec<u64>) -> PyResult<PyFieldElement> {
        self.g.eval(&point(n)).map(PyFieldElement).map_err(err)
    }

    fn term_eval(&self, i: usize, n: Vec<u64>) -> PyResult<PyFieldElement> {
        let i = self.spec.canonical_index(&self.g, i).map_err(err)?;
        self.g.term_eval(i, &point(n)).map(PyFieldElement).map_err(err)
    }

    /// Vanishing subsets in canonical term indices.
    fn pointwise_vanishing_subsums(&self, n: Vec<u64>, i0: usize) -> PyResult<Vec<Vec<usize>>> {
        let i = self.spec.canonical_index(&self.g, i0).map_err(err)?;
        self.g.pointwise_vanishing_subsums(&point(n), i).map_err(err)
    }

    /// r(n) as an Interval, or the string "zero_f" / "vanishing" / "undecided".
    #[pyo3(signature = (n, i0, eps, precision = DEFAULT_PREC, place = 0))]
    fn bound_ratio<'py>(
        &self,
        py: Python<'py>,
        n: Vec<u64>,
        i0: usize,
        eps: &Bound<'py, PyAny>,
        precision: u32,
        place: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let cfg = self.config(i0, eps, 1, precision, place)?;
        let out = py.detach(|| verifier::bound_ratio(&self.g, &cfg, &point(n))).map_err(err)?;
        match out {
            RatioOutcome::Ratio(r) => Ok(Bound::new(py, PyInterval(r))?.into_any()),
            RatioOutcome::SkipZeroF => Ok(pyo3::types::PyString::new(py, "zero_f").into_any()),
            RatioOutcome::SkipVanishing(_) => Ok(pyo3::types::PyString::new(py, "vanishing").into_any()),
            RatioOutcome::Undecided(_) => Ok(pyo3::types::PyString::new(py, "undecided").into_any()),
        }
    }

    /// One dict per shell plus the threshold estimate.
    #[pyo3(signature = (i0, eps, max_norm, precision = DEFAULT_PREC, place = 0))]
    fn scan<'py>(
        &self,
        py: Python<'py>,
        i0: usize,
        eps: &Bound<'py, PyAny>,
        max_norm: u64,
        precision: u32,
        place: usize,
    ) -> PyResult<(Vec<Bound<'py, PyDict>>, Option<u64>)> {
        let cfg = self.config(i0, eps, max_norm, precision, place)?;
        let rep = py.detach(|| verifier::scan_shells(&self.g, &cfg)).map_err(err)?;
        let mut rows = Vec::with_capacity(rep.shells.len());
        for s in &rep.shells {
            let d = PyDict::new(py);
            d.set_item("N", s.norm)?;
            d.set_item("min_ratio", opt_interval(&s.min_ratio))?;
            d.set_item("argmin", s.argmin.as_ref().map(|p| p.coords().to_vec()))?;
            d.set_item("points_total", s.points_total)?;
            d.set_item("evaluated", s.evaluated)?;
            d.set_item("skipped_vanishing", s.skipped_vanishing)?;
            d.set_item("skipped_zero_f", s.skipped_zero_f)?;
            d.set_item("undecided", s.undecided)?;
            rows.push(d);
        }
        Ok((rows, rep.threshold))
    }

    #[pyo3(signature = (i0, eps, max_norm, precision = DEFAULT_PREC, place = 0))]
    fn scan_csv(&self, py: Python<'_>, i0: usize, eps: &Bound<'_, PyAny>, max_norm: u64, precision: u32, place: usize) -> PyResult<String> {
        let cfg = self.config(i0, eps, max_norm, precision, place)?;
        py.detach(|| verifier::scan_shells(&self.g, &cfg)).map(|r| scan_csv(&r)).map_err(err)
    }

    #[pyo3(signature = (i0, eps, max_norm, precision = DEFAULT_PREC, place = 0))]
    fn probe_csv(&self, py: Python<'_>, i0: usize, eps: &Bound<'_, PyAny>, max_norm: u64, precision: u32, place: usize) -> PyResult<String> {
        let cfg = self.config(i0, eps, max_norm, precision, place)?;
        py.detach(|| verifier::evertse_probe(&self.g, &cfg)).map(|r| probe_csv(&r)).map_err(err)
    }

    /// Per-shell minimum of the probe value, as Intervals (None for empty shells).
    #[pyo3(signature = (i0, eps, max_norm, precision = DEFAULT_PREC, place = 0))]
    fn probe(&self, py: Python<'_>, i0: usize, eps: &Bound<'_, PyAny>, max_norm: u64, precision: u32, place: usize) -> PyResult<Vec<Option<PyInterval>>> {
        let cfg = self.config(i0, eps, max_norm, precision, place)?;
        let rep = py.detach(|| verifier::evertse_probe(&self.g, &cfg)).map_err(err)?;
        Ok(rep.rows.iter().map(|r| opt_interval(&r.min)).collect())
    }

    #[pyo3(signature = (n, precision = DEFAULT_PREC))]
    fn norm_bound_check<'py>(&self, py: Python<'py>, n: Vec<u64>, precision: u32) -> PyResult<Bound<'py, PyDict>> {
        let r = py.detach(|| verifier::norm_bound_check(&self.g, &point(n), precision)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("house", PyInterval(r.house))?;
        d.set_item("bound", fraction(py, &r.bound.to_rational())?)?;
        d.set_item("holds", r.holds)?;
        Ok(d)
    }

    fn denominator_z(&self) -> BigInt {
        verifier::denominator_z(&self.g)
    }

    #[pyo3(signature = (precision = DEFAULT_PREC))]
    fn a_constant(&self, precision: u32) -> PyResult<PyInterval> {
        verifier::a_constant(&self.g, precision).map(PyInterval).map_err(err)
    }

    /// Height-bound check for term `term_index`'s polynomial on seeded sample points.
    #[pyo3(signature = (term_index, samples = 500, seed = 0, max_norm = 100, precision = 64))]
    fn lemma_check<'py>(
        &self,
        py: Python<'py>,
        term_index: usize,
        samples: usize,
        seed: u64,
        max_norm: u64,
        precision: u32,
    ) -> PyResult<Bound<'py, PyDict>> {
        let i = self.spec.canonical_index(&self.g, term_index).map_err(err)?;
        let f = self.g.term(i).map_err(err)?.poly();
        let pts = sample_points(self.g.arity(), samples, max_norm.max(1), seed);
        let r = py.detach(|| heights::lemma_check(f, &pts, precision)).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("c1", PyInterval(r.constants.c1.clone()))?;
        d.set_item("c2", fraction(py, &r.constants.c2)?)?;
        d.set_item("c", PyInterval(r.constants.c.clone()))?;
        d.set_item("m", r.constants.m)?;
        d.set_item("passed", r.passed)?;
        d.set_item("skipped_zero", r.skipped_zero.len())?;
        d.set_item("violations", r.violations.len())?;
        d.set_item("undecided", r.undecided.len())?;
        Ok(d)
    }
}

#[pyfunction]
#[pyo3(signature = (coeffs, bits = 64))]
fn mahler_measure(coeffs: Vec<BigInt>, bits: u32) -> PyResult<PyInterval> {
    heights::mahler_measure(&IntPolynomial::new(coeffs), bits).map(PyInterval).map_err(err)
}

/// Points of N₀^s with |n| = norm, in scan order.
#[pyfunction]
fn shell(py: Python<'_>, arity: usize, norm: u64) -> PyResult<Bound<'_, PyList>> {
    let pts: Vec<Vec<u64>> = mrbound_core::multirec::shell(arity, norm).iter().map(|p| p.coords().to_vec()).collect();
    PyList::new(py, pts)
}

#[pymodule]
fn mrbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("MrboundError", m.py().get_type::<MrboundError>())?;
    m.add_class::<PyInterval>()?;
    m.add_class::<PyNumberField>()?;
    m.add_class::<PyFieldElement>()?;
    m.add_class::<PyMultiRecurrence>()?;
    m.add_function(wrap_pyfunction!(mahler_measure, m)?)?;
    m.add_function(wrap_pyfunction!(shell, m)?)?;
    Ok(())
}
