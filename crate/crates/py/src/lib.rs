//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may be `int`, `Fraction`, a decimal string or a `"p/q"` string.
//! Partitions are lists of blocks of 0-based variable indices, with bit `i`
//! of a table index set meaning `x_{i+1} = -1`.

use fknlab::bounds::{self, BoundReport, RequiredConstant};
use fknlab::exact::parse_rational;
use fknlab::harness::{self, SweepConfig, Target};
use fknlab::{constructions, fourier, BigRational, PaperConstants, Partition};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::sync::PyOnceLock;
use pyo3::types::{PyDict, PyList};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

struct Rational(BigRational);

impl<'a, 'py> FromPyObject<'a, 'py> for Rational {
    type Error = PyErr;

    fn extract(obj: Borrowed<'a, 'py, PyAny>) -> PyResult<Self> {
        if obj.is_instance_of::<pyo3::types::PyFloat>() {
            let x: f64 = obj.extract()?;
            if !x.is_finite() {
                return Err(err("non-finite float"));
            }
            return Ok(Rational(BigRational::from_float(x).expect("finite")));
        }
        let text = obj.str()?.to_string();
        parse_rational(text.trim()).map(Rational).map_err(err)
    }
}

static FRACTION: PyOnceLock<Py<PyAny>> = PyOnceLock::new();

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    let cls = FRACTION.get_or_try_init(py, || -> PyResult<_> {
        Ok(py.import("fractions")?.getattr("Fraction")?.unbind())
    })?;
    cls.bind(py).call1((r.to_string(),))
}

fn constants(k0: Option<Rational>, k1: Option<Rational>, k2: Option<Rational>) -> PaperConstants {
    let mut c = k0.map_or_else(PaperConstants::paper, |k| PaperConstants::from_k0(k.0));
    if let Some(k) = k1 {
        c = c.with_k1(k.0);
    }
    if let Some(k) = k2 {
        c = c.with_k2(k.0);
    }
    c
}

fn partition(m: usize, blocks: Vec<Vec<usize>>) -> PyResult<Partition> {
    Partition::new(m, blocks).map_err(err)
}

fn required<'py>(py: Python<'py>, r: &RequiredConstant) -> PyResult<Bound<'py, PyAny>> {
    match r {
        RequiredConstant::Finite(k) => fraction(py, k),
        RequiredConstant::Any => Ok("any".into_pyobject(py)?.into_any()),
        RequiredConstant::Unbounded => Ok("unbounded".into_pyobject(py)?.into_any()),
    }
}

/// `{lhs, rhs, holds, ratio, required_constant, witness}`.
fn report<'py>(py: Python<'py>, r: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("lhs", fraction(py, &r.lhs)?)?;
    d.set_item("rhs", fraction(py, &r.rhs)?)?;
    d.set_item("holds", r.holds)?;
    d.set_item("ratio", r.ratio().map(|q| fraction(py, &q)).transpose()?)?;
    d.set_item("required_constant", required(py, &r.required_constant)?)?;
    let w = PyDict::new(py);
    for (k, v) in r.witness.pairs() {
        w.set_item(k, v)?;
    }
    d.set_item("witness", w)?;
    Ok(d)
}

/// A `±1`-valued function on `{-1,1}^m`, stored as its truth table.
#[pyclass(module = "fknlab", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct BooleanFunction(fourier::BooleanFunction);

#[pymethods]
impl BooleanFunction {
    #[new]
    fn new(m: usize, table: Vec<i8>) -> PyResult<Self> {
        fourier::BooleanFunction::new(m, table).map(Self).map_err(err)
    }

    #[staticmethod]
    fn from_bits(m: usize, bits: u64) -> PyResult<Self> {
        fourier::BooleanFunction::from_bits(m, bits).map(Self).map_err(err)
    }

    /// The dictator `x_i`, 1-based.
    #[staticmethod]
    fn dictator(m: usize, i: usize) -> PyResult<Self> {
        fourier::BooleanFunction::dictator(m, i).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parity(m: usize, mask: usize) -> PyResult<Self> {
        fourier::BooleanFunction::parity(m, mask).map(Self).map_err(err)
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.vars()
    }

    #[getter]
    fn table(&self) -> Vec<i8> {
        self.0.table().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.table().len()
    }

    fn __getitem__(&self, x: usize) -> PyResult<i8> {
        self.0.table().get(x).copied().ok_or_else(|| pyo3::exceptions::PyIndexError::new_err(x))
    }

    fn __repr__(&self) -> String {
        let t: String = self.0.table().iter().map(|&v| if v == 1 { '+' } else { '-' }).collect();
        format!("BooleanFunction(m={}, '{t}')", self.0.vars())
    }

    fn fourier(&self) -> Vec<f64> {
        fourier::wht(&self.0).coeffs().to_vec()
    }

    fn mean<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &fknlab::exact::ratio_from_f64(fourier::wht(&self.0).constant_term()))
    }

    fn variance<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &fourier::variance_exact(&self.0))
    }

    fn distance<'py>(&self, py: Python<'py>, other: &Self) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &fourier::sq_l2_dist_exact(&self.0, &other.0).map_err(err)?)
    }

    fn cross_weight<'py>(&self, py: Python<'py>, blocks: Vec<Vec<usize>>) -> PyResult<Bound<'py, PyAny>> {
        let p = partition(self.0.vars(), blocks)?;
        fraction(py, &fourier::cross_partition_weight_exact(&self.0, &p).map_err(err)?)
    }

    fn balance_extend(&self) -> PyResult<Self> {
        fourier::balance_extend(&self.0).map(Self).map_err(err)
    }
}

/// A finitely supported random variable with rational values and
/// probabilities.
#[pyclass(module = "fknlab", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct DiscreteRV(fknlab::DiscreteRV);

#[pymethods]
impl DiscreteRV {
    /// `atoms` is a list of `(value, probability)` pairs summing to one.
    #[new]
    fn new(atoms: Vec<(Rational, Rational)>) -> PyResult<Self> {
        fknlab::DiscreteRV::new(atoms.into_iter().map(|(v, p)| (v.0, p.0)).collect())
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn atoms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let items = self
            .0
            .atoms()
            .iter()
            .map(|(v, p)| Ok((fraction(py, v)?, fraction(py, p)?)))
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, items)
    }

    fn __repr__(&self) -> String {
        format!("DiscreteRV({})", self.0)
    }

    fn expectation<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.expectation())
    }

    fn variance<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.variance())
    }

    /// `Var|X + e|`.
    fn var_abs_shifted<'py>(&self, py: Python<'py>, e: Rational) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.var_abs_shifted(&e.0))
    }

    fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    fn center(&self) -> Self {
        Self(self.0.center())
    }

    fn shift(&self, c: Rational) -> Self {
        Self(self.0.shift(&c.0))
    }

    /// Distribution of `X + Y` for independent `X, Y`.
    fn convolve(&self, other: &Self) -> PyResult<Self> {
        self.0.convolve(&other.0).map(Self).map_err(err)
    }

    /// Writes a mean-zero variable as a mixture of two-point mean-zero
    /// variables; returns `(weight, component)` pairs.
    fn two_point_decompose<'py>(&self, py: Python<'py>) -> PyResult<Vec<(Bound<'py, PyAny>, Self)>> {
        self.0
            .two_point_decompose()
            .map_err(err)?
            .into_iter()
            .map(|(w, t)| Ok((fraction(py, &w)?, Self(t.to_rv()))))
            .collect()
    }
}

#[pyfunction]
fn wht(f: &BooleanFunction) -> Vec<f64> {
    f.fourier()
}

#[pyfunction]
#[pyo3(signature = (x, y, *, k0=None, k1=None, k2=None))]
fn lemma4<'py>(
    py: Python<'py>,
    x: &DiscreteRV,
    y: &DiscreteRV,
    k0: Option<Rational>,
    k1: Option<Rational>,
    k2: Option<Rational>,
) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::lemma4_bound(&x.0, &y.0, &constants(k0, k1, k2)).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (x, y, *, k0=None))]
fn lemma5<'py>(py: Python<'py>, x: &DiscreteRV, y: &DiscreteRV, k0: Option<Rational>) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::lemma5_bound(&x.0, &y.0, &constants(k0, None, None)).map_err(err)?)
}

/// `x_bar` and `y_bar` must have mean zero.
#[pyfunction]
#[pyo3(signature = (x_bar, y_bar, e, *, k0=None))]
fn lemma7<'py>(
    py: Python<'py>,
    x_bar: &DiscreteRV,
    y_bar: &DiscreteRV,
    e: Rational,
    k0: Option<Rational>,
) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::lemma7_bound(&x_bar.0, &y_bar.0, &e.0, &constants(k0, None, None)).map_err(err)?)
}

/// `y_bar` is given by its two-point parameters: values `d/p` and
/// `-d/(1-p)`.
#[pyfunction]
fn claim8<'py>(py: Python<'py>, x1: Rational, x2: Rational, d: Rational, p: Rational) -> PyResult<Bound<'py, PyDict>> {
    let y = fknlab::TwoPointBalancedRV::new(d.0, p.0).map_err(err)?;
    let d = report(py, &bounds::claim8_check(&x1.0, &x2.0, &y))?;
    d.set_item("case", bounds::claim8_case(&x1.0, &x2.0, &y))?;
    Ok(d)
}

#[pyfunction]
fn claim9<'py>(py: Python<'py>, x_bar: &DiscreteRV, y_bar: &DiscreteRV, e: Rational) -> PyResult<Bound<'py, PyDict>> {
    report(py, &bounds::claim9_bound(&x_bar.0, &y_bar.0, &e.0).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (vars, *, k0=None, k1=None, k2=None))]
fn theorem1<'py>(
    py: Python<'py>,
    vars: Vec<DiscreteRV>,
    k0: Option<Rational>,
    k1: Option<Rational>,
    k2: Option<Rational>,
) -> PyResult<Bound<'py, PyDict>> {
    let vars: Vec<_> = vars.into_iter().map(|v| v.0).collect();
    report(py, &bounds::theorem1_check(&vars, &constants(k0, k1, k2)).map_err(err)?)
}

/// Applies the partition bound to `f`. `k` in the result is 0-based.
#[pyfunction]
#[pyo3(signature = (f, blocks, *, k0=None, k1=None, k2=None))]
fn corollary2<'py>(
    py: Python<'py>,
    f: &BooleanFunction,
    blocks: Vec<Vec<usize>>,
    k0: Option<Rational>,
    k1: Option<Rational>,
    k2: Option<Rational>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = partition(f.0.vars(), blocks)?;
    let r = bounds::corollary2_apply(&f.0, &p, &constants(k0, k1, k2)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("k", r.k)?;
    for (key, v) in [
        ("mean", &r.mean),
        ("variance", &r.variance),
        ("cross_weight", &r.cross_weight),
        ("epsilon", &r.epsilon),
        ("dist", &r.dist),
        ("dist_fourier", &r.dist_fourier),
        ("bound", &r.bound),
    ] {
        d.set_item(key, fraction(py, v)?)?;
    }
    let blocks = r.block_distances.iter().map(|v| fraction(py, v)).collect::<PyResult<Vec<_>>>()?;
    d.set_item("block_distances", blocks)?;
    d.set_item("holds", r.holds)?;
    Ok(d)
}

/// Runs a sweep and returns a summary dict. The GIL is released while the
/// instances run.
#[pyfunction]
#[pyo3(signature = (target, n=1000, seed=0, *, k0=None, k1=None, k2=None, include_claim6=false, exhaustive_m=None, workers=None))]
#[allow(clippy::too_many_arguments)]
fn sweep<'py>(
    py: Python<'py>,
    target: &str,
    n: usize,
    seed: u64,
    k0: Option<Rational>,
    k1: Option<Rational>,
    k2: Option<Rational>,
    include_claim6: bool,
    exhaustive_m: Option<usize>,
    workers: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let target: Target = target.parse().map_err(err)?;
    let mut cfg = SweepConfig::new(target).with_instances(n).with_seed(seed);
    cfg.constants = constants(k0, k1, k2);
    cfg.include_claim6 = include_claim6;
    cfg.exhaustive_m = exhaustive_m;
    cfg.workers = workers;
    let r = py.detach(|| harness::run_sweep(&cfg)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("target", r.target.name())?;
    d.set_item("instances", r.instances)?;
    d.set_item("violations", r.violations.clone())?;
    d.set_item("errors", r.errors.clone())?;
    match &r.min_ratio {
        Some((q, i)) => d.set_item("min_ratio", (fraction(py, q)?, *i))?,
        None => d.set_item("min_ratio", py.None())?,
    }
    let k = if target.is_ratio_form() { r.empirical_constant().ok() } else { None };
    d.set_item("empirical_constant", k.map(|k| fraction(py, &k)).transpose()?)?;
    d.set_item("csv", r.to_csv(false))?;
    Ok(d)
}

#[pyfunction]
fn tightness_scan<'py>(py: Python<'py>, max_m: usize) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let rows = py.detach(|| harness::tightness::tightness_scan(max_m)).map_err(err)?;
    rows.iter()
        .map(|row| {
            let d = PyDict::new(py);
            d.set_item("m", row.m)?;
            for (key, v) in [
                ("variance", &row.variance),
                ("cross_weight", &row.cross_weight),
                ("linear_distance", &row.linear_distance),
                ("min_dist", &row.min_dist),
                ("scaled_epsilon", &row.scaled_epsilon),
                ("scaled_dist", &row.scaled_dist),
            ] {
                d.set_item(key, fraction(py, v)?)?;
            }
            d.set_item("in_bracket", row.in_bracket)?;
            d.set_item("table_checked", row.table_checked)?;
            Ok(d)
        })
        .collect()
}

/// The two-variable pair for which the absolute-value transfer needs a
/// constant of at least 4/3.
#[pyfunction]
fn claim6_example() -> (DiscreteRV, DiscreteRV) {
    let (x, y) = constructions::claim6_example();
    (DiscreteRV(x), DiscreteRV(y))
}

/// `(f, blocks)` for the tribes function on two blocks of `m` variables.
#[pyfunction]
fn tribes_example(m: usize) -> PyResult<(BooleanFunction, Vec<Vec<usize>>)> {
    let (f, p) = constructions::tribes_example(m).map_err(err)?;
    Ok((BooleanFunction(f), p.blocks().to_vec()))
}

/// Experimental: best `g(h_1, ..., h_n)` approximation of `f` with one
/// Boolean `h_j` per block. Returns `(dist, g, hs)`.
#[pyfunction]
fn probe<'py>(
    py: Python<'py>,
    f: &BooleanFunction,
    blocks: Vec<Vec<usize>>,
) -> PyResult<(Bound<'py, PyAny>, BooleanFunction, Vec<BooleanFunction>)> {
    let p = partition(f.0.vars(), blocks)?;
    let r = py.detach(|| harness::probe::conjecture_probe(&f.0, &p)).map_err(err)?;
    Ok((fraction(py, &r.dist)?, BooleanFunction(r.g), r.hs.into_iter().map(BooleanFunction).collect()))
}

#[pymodule(name = "fknlab")]
fn fknlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<BooleanFunction>()?;
    m.add_class::<DiscreteRV>()?;
    m.add_function(wrap_pyfunction!(wht, m)?)?;
    m.add_function(wrap_pyfunction!(lemma4, m)?)?;
    m.add_function(wrap_pyfunction!(lemma5, m)?)?;
    m.add_function(wrap_pyfunction!(lemma7, m)?)?;
    m.add_function(wrap_pyfunction!(claim8, m)?)?;
    m.add_function(wrap_pyfunction!(claim9, m)?)?;
    m.add_function(wrap_pyfunction!(theorem1, m)?)?;
    m.add_function(wrap_pyfunction!(corollary2, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(tightness_scan, m)?)?;
    m.add_function(wrap_pyfunction!(claim6_example, m)?)?;
    m.add_function(wrap_pyfunction!(tribes_example, m)?)?;
    m.add_function(wrap_pyfunction!(probe, m)?)?;
    Ok(())
}
