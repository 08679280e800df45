use ::cbrws::graph::{fixtures as core_fixtures, BundleGraph, BundlePresentation};
use ::cbrws::kb::{self, CompletionLimits, Verdict, DEFAULT_RESOLVE_STEP_CAP, DEFAULT_RULE_CAP};
use ::cbrws::normal::{self, IrreducibleAutomaton, TwoBundleLayout};
use ::cbrws::orders::{self, Precedence};
use ::cbrws::reduce::{self, DEFAULT_STEP_CAP};
use ::cbrws::{Error, RewritingSystem};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    match e {
        Error::StepCapExceeded { .. } | Error::RuleCap(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// A rewriting system over named letters.
#[pyclass(name = "System", module = "cbrws", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySystem {
    inner: RewritingSystem,
}

#[pymethods]
impl PySystem {
    /// Parses `.rws` text.
    #[staticmethod]
    fn from_rws(text: &str) -> PyResult<PySystem> {
        Ok(PySystem { inner: RewritingSystem::from_rws(text).map_err(err)? })
    }

    fn to_rws(&self) -> String {
        self.inner.to_rws()
    }

    /// Letter tokens in declaration order.
    #[getter]
    fn letters(&self) -> Vec<String> {
        self.inner.alphabet().tokens().to_vec()
    }

    /// `(lhs, rhs, family)` triples; family is `None` for untagged rules.
    #[getter]
    fn rules(&self) -> Vec<(String, String, Option<String>)> {
        let a = self.inner.alphabet();
        self.inner
            .rules()
            .iter()
            .map(|r| (a.format(&r.lhs), a.format(&r.rhs), r.family.map(|f| f.name().to_string())))
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("System({} letters, {} rules)", self.inner.alphabet().len(), self.inner.len())
    }

    #[pyo3(signature = (word, step_cap = DEFAULT_STEP_CAP))]
    fn reduce(&self, word: &str, step_cap: usize) -> PyResult<String> {
        let w = self.inner.parse_word(word).map_err(err)?;
        Ok(self.inner.format_word(&reduce::reduce(&w, &self.inner, step_cap).map_err(err)?))
    }

    fn is_irreducible(&self, word: &str) -> PyResult<bool> {
        Ok(reduce::is_irreducible(&self.inner.parse_word(word).map_err(err)?, &self.inner))
    }

    #[pyo3(signature = (u, v, step_cap = DEFAULT_STEP_CAP))]
    fn words_equal(&self, u: &str, v: &str, step_cap: usize) -> PyResult<bool> {
        let (u, v) = (self.inner.parse_word(u).map_err(err)?, self.inner.parse_word(v).map_err(err)?);
        normal::words_equal(&u, &v, &self.inner, step_cap).map_err(err)
    }

    /// Returns `(verdict, lines)` with verdict one of `complete`, `refuted`,
    /// `inconclusive` and one report line per critical pair.
    #[pyo3(signature = (step_cap = DEFAULT_RESOLVE_STEP_CAP))]
    fn check_complete(&self, step_cap: usize) -> (String, Vec<String>) {
        let report = kb::check_complete(&self.inner, step_cap);
        let verdict = match report.verdict() {
            Verdict::Complete => "complete",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        };
        let lines = report.reports.iter().map(|r| r.line(self.inner.alphabet())).collect();
        (verdict.to_string(), lines)
    }

    /// Knuth-Bendix completion. `precedence` lists tiers greatest first,
    /// separated by `>`; the default is declaration order.
    #[pyo3(signature = (precedence = None, rule_cap = DEFAULT_RULE_CAP, step_cap = DEFAULT_RESOLVE_STEP_CAP))]
    fn complete(&self, precedence: Option<&str>, rule_cap: usize, step_cap: usize) -> PyResult<PySystem> {
        let a = self.inner.alphabet().clone();
        let prec = match precedence {
            Some(text) => Precedence::parse(a, text).map_err(err)?,
            None => Precedence::declaration_order(a),
        };
        let inner = kb::complete(&self.inner, &prec, CompletionLimits { rule_cap, step_cap }).map_err(err)?;
        Ok(PySystem { inner })
    }

    /// Irreducible words of each length `0..=max_len`.
    fn growth(&self, max_len: usize) -> PyResult<Vec<u128>> {
        IrreducibleAutomaton::new(&self.inner).growth(max_len).map_err(err)
    }

    /// `u > v` in the path ordering from `precedence`.
    fn rpo_greater(&self, u: &str, v: &str, precedence: &str) -> PyResult<bool> {
        let prec = Precedence::parse(self.inner.alphabet().clone(), precedence).map_err(err)?;
        let (u, v) = (self.inner.parse_word(u).map_err(err)?, self.inner.parse_word(v).map_err(err)?);
        orders::rpo_greater(&u, &v, &prec).map_err(err)
    }
}

/// A graph of circle bundles.
#[pyclass(name = "Graph", module = "cbrws", frozen)]
struct PyGraph {
    presentation: BundlePresentation,
}

#[pymethods]
impl PyGraph {
    /// Parses and validates `.gob` text.
    #[staticmethod]
    fn from_gob(text: &str) -> PyResult<PyGraph> {
        let graph = BundleGraph::from_gob(text).map_err(err)?;
        Ok(PyGraph { presentation: BundlePresentation::new(&graph).map_err(err)? })
    }

    fn to_gob(&self) -> String {
        self.presentation.graph().to_gob()
    }

    /// `variant` is `full` or `restricted`.
    #[pyo3(signature = (variant = "full"))]
    fn system(&self, variant: &str) -> PyResult<PySystem> {
        let inner = match variant {
            "full" => self.presentation.system(),
            "restricted" => self.presentation.restricted().restricted().clone(),
            other => return Err(PyValueError::new_err(format!("unknown variant `{other}`"))),
        };
        Ok(PySystem { inner })
    }

    /// Precedence tiers greatest first.
    fn lemma_precedence(&self) -> Vec<Vec<String>> {
        let prec = orders::lemma_precedence(&self.presentation);
        let a = self.presentation.alphabet();
        prec.tiers().iter().map(|t| t.iter().map(|&l| a.letter_name(l)).collect()).collect()
    }

    fn relators(&self) -> Vec<String> {
        let a = self.presentation.alphabet();
        self.presentation.defining_relators().iter().map(|r| a.format(r)).collect()
    }

    /// `(u, v, w)` blocks of an irreducible word; two-vertex graphs only.
    fn block_decompose(&self, word: &str) -> PyResult<Vec<(String, String, String)>> {
        let layout = TwoBundleLayout::new(&self.presentation).map_err(err)?;
        let sys = self.presentation.system();
        let theta = sys.parse_word(word).map_err(err)?;
        let d = normal::block_decompose(&theta, &sys, &layout).map_err(err)?;
        let a = sys.alphabet();
        Ok(d.blocks.iter().map(|b| (a.format(&b.u), a.format(&b.v), a.format(&b.w))).collect())
    }
}

/// Named fixture systems.
#[pyfunction]
fn fixtures() -> Vec<(String, PySystem)> {
    core_fixtures().into_iter().map(|f| (f.name, PySystem { inner: f.system })).collect()
}

#[pymodule]
#[pyo3(name = "cbrws")]
fn cbrws_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(fixtures, m)?)?;
    Ok(())
}
