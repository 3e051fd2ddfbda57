//! Python bindings: an `Algebra` built from a JSON configuration and the
//! forms and tensors it contains.

use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyTypeError};
use pyo3::prelude::*;

use twistforms::braidrep::{export_json, Representation, Window};
use twistforms::cli::{self, parse_expression, BraidingKind, Config, Suite, Value};
use twistforms::omega::AlgebraCtx;
use twistforms::Error;

create_exception!(pytwistforms, TwistformsError, PyException);
create_exception!(pytwistforms, ParseError, TwistformsError);
create_exception!(pytwistforms, CapExceeded, TwistformsError);

fn err(e: Error) -> PyErr {
    match e {
        Error::CapExceeded { .. } => CapExceeded::new_err(e.to_string()),
        Error::Syntax { .. } | Error::UnknownIdentifier { .. } | Error::Config(_) => ParseError::new_err(e.to_string()),
        _ => TwistformsError::new_err(e.to_string()),
    }
}

fn braiding_kind(name: &str) -> PyResult<BraidingKind> {
    match name {
        "closed" => Ok(BraidingKind::Closed),
        "oracle" => Ok(BraidingKind::Oracle),
        "flip" => Ok(BraidingKind::Flip),
        _ => Err(ParseError::new_err(format!("unknown braiding `{name}`"))),
    }
}

fn json_to_py(py: Python<'_>, text: &str) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A commutative algebra with endomorphism, its twisted forms and braiding.
#[pyclass(frozen, module = "pytwistforms")]
struct Algebra {
    config: Config,
    ctx: Arc<AlgebraCtx>,
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(config_json: &str) -> PyResult<Self> {
        let config = Config::from_json(config_json).map_err(err)?;
        let ctx = Arc::new(config.build().map_err(err)?);
        Ok(Algebra { config, ctx })
    }

    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| err(e.into()))?;
        Self::new(&text)
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.ctx.names().to_vec()
    }

    #[getter]
    fn field(&self) -> String {
        self.ctx.field().describe()
    }

    /// Parses a form or tensor expression.
    fn parse(&self, expr: &str) -> PyResult<Element> {
        let value = parse_expression(expr, &self.ctx).map_err(err)?;
        Ok(Element {
            ctx: self.ctx.clone(),
            value,
        })
    }

    fn normalize(&self, expr: &str) -> PyResult<String> {
        Ok(self.parse(expr)?.__str__())
    }

    fn d(&self, expr: &str) -> PyResult<String> {
        Ok(self.parse(expr)?.d()?.__str__())
    }

    #[pyo3(name = "I")]
    fn homotopy(&self, expr: &str) -> PyResult<String> {
        Ok(self.parse(expr)?.homotopy()?.__str__())
    }

    fn alpha(&self, expr: &str) -> PyResult<String> {
        Ok(self.parse(expr)?.alpha()?.__str__())
    }

    #[pyo3(signature = (expr, oracle = false))]
    fn braid(&self, expr: &str, oracle: bool) -> PyResult<String> {
        Ok(self.parse(expr)?.braid(oracle)?.__str__())
    }

    /// Basis labels of the forms of the given form-degree and
    /// variable-degree.
    fn block_basis(&self, form_degree: usize, var_degree: usize) -> PyResult<Vec<String>> {
        let b = self.ctx.block_basis(form_degree, var_degree).map_err(err)?;
        Ok(b.basis().iter().map(|l| l.fmt_with(self.ctx.names())).collect())
    }

    /// Runs a verification suite and returns its reports as dictionaries.
    #[pyo3(signature = (suite = "all", max_var_degree = 2, max_form_degree = 1, arity = 3, braiding = "closed"))]
    fn verify(
        &self,
        py: Python<'_>,
        suite: &str,
        max_var_degree: usize,
        max_form_degree: usize,
        arity: usize,
        braiding: &str,
    ) -> PyResult<Py<PyAny>> {
        let suite = match suite {
            "omega" => Suite::Omega,
            "braiding" => Suite::Braiding,
            "braidrep" => Suite::Braidrep,
            "all" => Suite::All,
            _ => return Err(ParseError::new_err(format!("unknown suite `{suite}`"))),
        };
        let kind = braiding_kind(braiding)?;
        let reports = py
            .detach(|| cli::verify(&self.config, suite, max_var_degree, max_form_degree, arity, kind))
            .map_err(err)?;
        json_to_py(py, &serde_json::to_string(&reports).expect("reports serialize"))
    }

    /// The generators `sigma_1 ... sigma_{arity-1}` on one block, in the
    /// same document layout as the `repmat` command's JSON export.
    #[pyo3(signature = (arity, var_degree, form_degree, braiding = "closed"))]
    fn sigma_matrices(
        &self,
        py: Python<'_>,
        arity: usize,
        var_degree: usize,
        form_degree: usize,
        braiding: &str,
    ) -> PyResult<Py<PyAny>> {
        let braid = cli::make_braid(self.ctx.clone(), braiding_kind(braiding)?);
        let rep = Representation::new(&*braid, Window::full(&self.ctx), arity, var_degree, form_degree).map_err(err)?;
        let block = rep.block(var_degree, form_degree).map_err(err)?;
        let gens = (1..arity)
            .map(|i| Ok((format!("sigma_{i}"), rep.sigma(var_degree, form_degree, i)?)))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(err)?;
        json_to_py(py, &export_json(&self.ctx, &block, &gens).to_string())
    }

    fn __repr__(&self) -> String {
        format!("Algebra(field={}, variables={:?})", self.ctx.field().describe(), self.ctx.names())
    }
}

/// A normalized form or tensor.
#[pyclass(frozen, module = "pytwistforms", name = "Element")]
struct Element {
    ctx: Arc<AlgebraCtx>,
    value: Value,
}

impl Element {
    fn wrap(&self, value: Value) -> Element {
        Element {
            ctx: self.ctx.clone(),
            value,
        }
    }

    fn form(&self, op: &str) -> PyResult<&twistforms::omega::Form> {
        match &self.value {
            Value::Form(f) => Ok(f),
            Value::Tensor(_) => Err(PyTypeError::new_err(format!("{op} needs a form, not a tensor"))),
        }
    }

    fn same_algebra(&self, other: &Element) -> PyResult<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(PyTypeError::new_err("elements of different algebras"))
        }
    }
}

#[pymethods]
impl Element {
    #[getter]
    fn is_tensor(&self) -> bool {
        matches!(self.value, Value::Tensor(_))
    }

    fn is_zero(&self) -> bool {
        match &self.value {
            Value::Form(f) => f.is_zero(),
            Value::Tensor(t) => t.is_zero(),
        }
    }

    fn d(&self) -> PyResult<Element> {
        let v = match &self.value {
            Value::Form(f) => Value::Form(self.ctx.differential(f).map_err(err)?),
            Value::Tensor(t) => Value::Tensor(self.ctx.tensor_differential(t).map_err(err)?),
        };
        Ok(self.wrap(v))
    }

    #[pyo3(name = "I")]
    fn homotopy(&self) -> PyResult<Element> {
        let f = self.form("I")?;
        Ok(self.wrap(Value::Form(self.ctx.homotopy(f).map_err(err)?)))
    }

    fn alpha(&self) -> PyResult<Element> {
        let f = self.form("alpha")?;
        Ok(self.wrap(Value::Form(self.ctx.alpha_form(f).map_err(err)?)))
    }

    /// Applies the braiding to the first two factors of a tensor.
    #[pyo3(signature = (oracle = false))]
    fn braid(&self, oracle: bool) -> PyResult<Element> {
        let Value::Tensor(t) = &self.value else {
            return Err(PyTypeError::new_err("the braiding acts on tensors"));
        };
        let kind = if oracle { BraidingKind::Oracle } else { BraidingKind::Closed };
        let r = cli::make_braid(self.ctx.clone(), kind).braid(t).map_err(err)?;
        Ok(self.wrap(Value::Tensor(r)))
    }

    fn __add__(&self, other: &Element) -> PyResult<Element> {
        self.same_algebra(other)?;
        match (&self.value, &other.value) {
            (Value::Form(a), Value::Form(b)) => Ok(self.wrap(Value::Form(a.add(b)))),
            (Value::Tensor(a), Value::Tensor(b)) => Ok(self.wrap(Value::Tensor(a.add(b)))),
            _ => Err(PyTypeError::new_err("cannot add a form and a tensor")),
        }
    }

    fn __sub__(&self, other: &Element) -> PyResult<Element> {
        self.same_algebra(other)?;
        match (&self.value, &other.value) {
            (Value::Form(a), Value::Form(b)) => Ok(self.wrap(Value::Form(a.sub(b)))),
            (Value::Tensor(a), Value::Tensor(b)) => Ok(self.wrap(Value::Tensor(a.sub(b)))),
            _ => Err(PyTypeError::new_err("cannot subtract a form and a tensor")),
        }
    }

    fn __mul__(&self, other: &Element) -> PyResult<Element> {
        self.same_algebra(other)?;
        let p = self.ctx.mul(self.form("*")?, other.form("*")?).map_err(err)?;
        Ok(self.wrap(Value::Form(p)))
    }

    fn __neg__(&self) -> Element {
        match &self.value {
            Value::Form(f) => self.wrap(Value::Form(f.neg())),
            Value::Tensor(t) => self.wrap(Value::Tensor(t.neg())),
        }
    }

    fn __eq__(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.value == other.value
    }

    fn __str__(&self) -> String {
        self.value.format(&self.ctx)
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.__str__())
    }
}

#[pymodule]
pub fn pytwistforms(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Element>()?;
    m.add("TwistformsError", m.py().get_type::<TwistformsError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("CapExceeded", m.py().get_type::<CapExceeded>())?;
    Ok(())
}
