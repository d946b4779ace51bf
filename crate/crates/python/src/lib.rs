//! Python bindings: parsing, type checking, reduction, weights and suites.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lineal::check::{self, Context, Forgetter};
use lineal::harness::{self, GenConfig, Suite};
use lineal::rewrite::{self, Mode, RewriteError, DEFAULT_FUEL};
use lineal::source::{prelude_scope, resugar_term, resugar_type};
use lineal::syntax::{self, Scope};
use lineal::types;

create_exception!(pylineal, ParseError, PyException);
create_exception!(pylineal, LinealTypeError, PyException);
create_exception!(pylineal, FuelExhausted, PyException);

fn scope(prelude: bool) -> Scope {
    if prelude {
        prelude_scope()
    } else {
        Scope::default()
    }
}

fn parse_err(e: syntax::ParseError) -> PyErr {
    ParseError::new_err(e.to_string())
}

fn type_err(e: check::TypeError) -> PyErr {
    LinealTypeError::new_err(e.to_string())
}

fn mode(name: &str) -> PyResult<Mode> {
    match name {
        "restricted" => Ok(Mode::Restricted),
        "unrestricted" => Ok(Mode::Unrestricted),
        other => Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    }
}

fn fraction<'py>(py: Python<'py>, s: &lineal::Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((s.to_string(),))
}

/// A term of the calculus.
#[pyclass(frozen, eq, from_py_object, module = "pylineal")]
#[derive(Clone, PartialEq)]
pub struct Term {
    inner: lineal::Term,
}

#[pymethods]
impl Term {
    #[new]
    #[pyo3(signature = (src, prelude = false))]
    fn new(src: &str, prelude: bool) -> PyResult<Self> {
        let inner = syntax::parse_term_in(src, &scope(prelude)).map_err(parse_err)?;
        Ok(Term { inner })
    }

    fn erase(&self) -> Term {
        Term { inner: self.inner.erase() }
    }

    fn weight<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &rewrite::weight(&self.inner))
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn is_normal(&self, mode_name: &str) -> PyResult<bool> {
        Ok(rewrite::is_normal(&self.inner, mode(mode_name)?))
    }

    /// Printed with prelude names (`true`, `false`) put back.
    fn resugar(&self) -> String {
        resugar_term(&self.inner, &prelude_scope()).to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }
}

/// A type; equality is syntactic, use `type_equiv` for equivalence.
#[pyclass(frozen, eq, from_py_object, module = "pylineal")]
#[derive(Clone, PartialEq)]
pub struct Type {
    inner: types::Type,
}

#[pymethods]
impl Type {
    #[new]
    #[pyo3(signature = (src, prelude = false))]
    fn new(src: &str, prelude: bool) -> PyResult<Self> {
        let inner = syntax::parse_type_in(src, &scope(prelude)).map_err(parse_err)?;
        Ok(Type { inner })
    }

    /// Canonical form as `(scalar, unit)`; the zero type gives `(0, None)`.
    fn canonical<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, Option<Type>)> {
        let c = types::canonicalize(&self.inner);
        let unit = c.unit_part().map(|u| Type { inner: u.as_type().clone() });
        Ok((fraction(py, &c.scalar())?, unit))
    }

    fn resugar(&self) -> String {
        resugar_type(&self.inner, &prelude_scope()).to_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Type({:?})", self.inner.to_string())
    }
}

fn context(ctx: Option<&Bound<'_, PyDict>>, prelude: bool) -> PyResult<Context> {
    let mut pairs = Vec::new();
    if let Some(d) = ctx {
        for (k, v) in d.iter() {
            let name: String = k.extract()?;
            let ty = match v.extract::<Type>() {
                Ok(t) => t.inner,
                Err(_) => syntax::parse_type_in(&v.extract::<String>()?, &scope(prelude)).map_err(parse_err)?,
            };
            pairs.push((name, ty));
        }
    }
    Context::from_pairs(pairs).map_err(type_err)
}

#[pyfunction]
fn type_equiv(a: &Type, b: &Type) -> bool {
    types::type_equiv(&a.inner, &b.inner)
}

/// Canonical type of `term` in the scalar system. `context` maps names to
/// types (as `Type` or source text).
#[pyfunction]
#[pyo3(signature = (term, context = None, prelude = false))]
fn infer(term: &Term, context: Option<&Bound<'_, PyDict>>, prelude: bool) -> PyResult<Type> {
    let ctx = self::context(context, prelude)?;
    let (c, _) = check::infer_scalar(&ctx, &term.inner).map_err(type_err)?;
    Ok(Type { inner: c.to_type() })
}

/// The typing derivation in the export format.
#[pyfunction]
#[pyo3(signature = (term, context = None, prelude = false))]
fn derivation(term: &Term, context: Option<&Bound<'_, PyDict>>, prelude: bool) -> PyResult<String> {
    let ctx = self::context(context, prelude)?;
    let (_, d) = check::infer_scalar(&ctx, &term.inner).map_err(type_err)?;
    Ok(d.export())
}

/// `(accepted, type)` for the barycentric fragment.
#[pyfunction]
#[pyo3(signature = (term, context = None, prelude = false))]
fn check_barycentric(term: &Term, context: Option<&Bound<'_, PyDict>>, prelude: bool) -> PyResult<(bool, Type)> {
    let ctx = self::context(context, prelude)?;
    let (ok, c, _) = check::check_barycentric(&ctx, &term.inner).map_err(type_err)?;
    Ok((ok, Type { inner: c.to_type() }))
}

/// Type in the scalar-free System F variant, after forgetting scalars in the
/// context and annotations.
#[pyfunction]
#[pyo3(signature = (term, context = None, prelude = false))]
fn infer_f(term: &Term, context: Option<&Bound<'_, PyDict>>, prelude: bool) -> PyResult<Type> {
    let ctx = self::context(context, prelude)?;
    let mut fg = Forgetter::default();
    let fctx = ctx.map(|ty| fg.forget(ty)).map_err(type_err)?;
    let t = fg.forget_term(&term.inner);
    let inner = check::infer_f(&fctx, &t).map_err(type_err)?;
    Ok(Type { inner })
}

fn fuel_err(e: RewriteError) -> PyErr {
    FuelExhausted::new_err(e.to_string())
}

/// Normal form of the erased term.
#[pyfunction]
#[pyo3(signature = (term, mode = "restricted", fuel = DEFAULT_FUEL))]
fn normalize(py: Python<'_>, term: &Term, mode: &str, fuel: usize) -> PyResult<Term> {
    let m = self::mode(mode)?;
    let t = term.inner.erase();
    let (inner, _) = py.detach(|| rewrite::normal_form(&t, m, fuel)).map_err(fuel_err)?;
    Ok(Term { inner })
}

/// Reduction steps as `(position, rule, result)` triples.
#[pyfunction]
#[pyo3(signature = (term, mode = "restricted", fuel = DEFAULT_FUEL))]
fn trace(term: &Term, mode: &str, fuel: usize) -> PyResult<Vec<(String, String, Term)>> {
    let n = rewrite::normalize(&term.inner.erase(), self::mode(mode)?, fuel).map_err(fuel_err)?;
    Ok(n.trace
        .steps
        .into_iter()
        .map(|s| (rewrite::format_position(&s.redex.position), s.redex.rule.to_string(), Term { inner: s.result }))
        .collect())
}

/// All one-step reducts as `(position, rule, result)` triples.
#[pyfunction]
#[pyo3(signature = (term, mode = "restricted"))]
fn reducts(term: &Term, mode: &str) -> PyResult<Vec<(String, String, Term)>> {
    Ok(rewrite::one_step_reducts(&term.inner, self::mode(mode)?)
        .into_iter()
        .map(|(r, t)| (rewrite::format_position(&r.position), r.rule.to_string(), Term { inner: t }))
        .collect())
}

/// Run a property suite; returns a dict with the counts and the full report.
#[pyfunction]
#[pyo3(signature = (name, seed = 0, cases = 100))]
fn run_suite<'py>(py: Python<'py>, name: &str, seed: u64, cases: usize) -> PyResult<Bound<'py, PyDict>> {
    let suite: Suite = name.parse().map_err(|e: harness::UnknownSuite| PyValueError::new_err(e.to_string()))?;
    let report = py.detach(|| harness::run_suite(suite, &GenConfig::with_seed(seed), cases));
    let d = PyDict::new(py);
    d.set_item("suite", &report.suite)?;
    d.set_item("seed", report.seed)?;
    d.set_item("cases", report.cases.len())?;
    d.set_item("failures", report.failures())?;
    d.set_item("inconclusive", report.inconclusive())?;
    d.set_item("summary", report.summary())?;
    d.set_item("report", report.render())?;
    Ok(d)
}

#[pymodule]
pub fn pylineal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Term>()?;
    m.add_class::<Type>()?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("LinealTypeError", m.py().get_type::<LinealTypeError>())?;
    m.add("FuelExhausted", m.py().get_type::<FuelExhausted>())?;
    m.add("PRELUDE", lineal::source::PRELUDE)?;
    m.add_function(wrap_pyfunction!(type_equiv, m)?)?;
    m.add_function(wrap_pyfunction!(infer, m)?)?;
    m.add_function(wrap_pyfunction!(derivation, m)?)?;
    m.add_function(wrap_pyfunction!(check_barycentric, m)?)?;
    m.add_function(wrap_pyfunction!(infer_f, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(trace, m)?)?;
    m.add_function(wrap_pyfunction!(reducts, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
