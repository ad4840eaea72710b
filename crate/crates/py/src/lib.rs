//! Python bindings: formulas, permutations and the analysis pipeline.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use symscope::cnf::{format_literal_cycles, parse_dimacs_str, parse_literal_cycles, CnfFormula};
use symscope::orbit_equivalence::{canonical_cycles, equivalent_orbits};
use symscope::perm::{format_cycles, orbits as orbit_partition, parse_cycles, GeneratingSet, Parity, Permutation};
use symscope::pipeline::{run_check_partition, run_pipeline, AnalysisConfig, PipelineError};
use symscope::symmetric_action::{harvest_unique_cycles, new_source, symmetric_action_orbits, Verdict};

fn pipeline_err(e: PipelineError) -> PyErr {
    match e {
        PipelineError::Parse(_) | PipelineError::Contract(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn json_loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

/// A permutation of `0..degree`, written in 1-based cycle notation.
#[pyclass(name = "Permutation", module = "symscope_py", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation {
    inner: Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: parse_cycles(cycles, degree).map_err(value_err)?,
        })
    }

    /// Signed literal cycles such as `(1,2)(-1,-2)` over `n_vars` variables.
    #[staticmethod]
    fn from_literal_cycles(cycles: &str, n_vars: usize) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: parse_literal_cycles(cycles, n_vars).map_err(value_err)?,
        })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Image of a 0-based point.
    fn apply(&self, x: u32) -> PyResult<u32> {
        if x as usize >= self.inner.degree() {
            return Err(value_err(format!("point {x} outside degree {}", self.inner.degree())));
        }
        Ok(self.inner.apply(x))
    }

    /// `self` first, then `other`.
    fn compose(&self, other: &PyPermutation) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: self.inner.compose(&other.inner).map_err(value_err)?,
        })
    }

    fn inverse(&self) -> Self {
        PyPermutation {
            inner: self.inner.inverse(),
        }
    }

    /// Non-trivial cycles over 0-based points.
    fn cycles(&self) -> Vec<Vec<u32>> {
        self.inner.cycles()
    }

    fn is_even(&self) -> bool {
        self.inner.parity() == Parity::Even
    }

    fn literal_cycles(&self) -> String {
        format_literal_cycles(&self.inner)
    }

    fn __str__(&self) -> String {
        format_cycles(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}', {})", format_cycles(&self.inner), self.inner.degree())
    }
}

/// A CNF formula over variables `1..=n_vars`.
#[pyclass(name = "Formula", module = "symscope_py", frozen)]
struct PyFormula {
    inner: CnfFormula,
}

#[pymethods]
impl PyFormula {
    #[new]
    fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> PyResult<Self> {
        Ok(PyFormula {
            inner: CnfFormula::new(n_vars, clauses).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Self> {
        Ok(PyFormula {
            inner: parse_dimacs_str(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn n_vars(&self) -> usize {
        self.inner.n_vars()
    }

    /// Clauses as signed literals.
    #[getter]
    fn clauses(&self) -> Vec<Vec<i32>> {
        (0..self.inner.clauses().len())
            .map(|j| self.inner.clause_lits(j))
            .collect()
    }

    fn to_dimacs(&self) -> String {
        self.inner.to_dimacs()
    }

    /// Runs every stage and returns the report as a dictionary. Without
    /// `generators` the symmetries are enumerated by brute force.
    #[pyo3(signature = (generators=None, seed=0, giant_c=20.0, oracle=false, graph_domain=false))]
    fn analyze<'py>(
        &self,
        py: Python<'py>,
        generators: Option<&str>,
        seed: u64,
        giant_c: f64,
        oracle: bool,
        graph_domain: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let config = AnalysisConfig {
            seed,
            giant_c,
            oracle,
            graph_domain,
            ..AnalysisConfig::default()
        };
        let report = run_pipeline(self.inner.clone(), generators, &config).map_err(pipeline_err)?;
        json_loads(py, &serde_json::to_string(&report).expect("report serializes"))
    }

    /// Tests a literal partition (lists of signed literals); returns
    /// `(accepted, rejection)` with the rejection as a dictionary or `None`.
    #[pyo3(signature = (parts, generators=None))]
    fn check_partition<'py>(
        &self,
        py: Python<'py>,
        parts: Vec<Vec<i32>>,
        generators: Option<&str>,
    ) -> PyResult<(bool, Bound<'py, PyAny>)> {
        let verdict = run_check_partition(self.inner.clone(), generators, &parts, &AnalysisConfig::default())
            .map_err(pipeline_err)?;
        let rejection = match &verdict.rejection {
            Some(r) => json_loads(py, &serde_json::to_string(r).expect("rejection serializes"))?,
            None => py.None().into_bound(py),
        };
        Ok((verdict.accepted, rejection))
    }
}

fn generating_set(gens: Vec<PyPermutation>, degree: usize) -> PyResult<GeneratingSet> {
    GeneratingSet::new(degree, gens.into_iter().map(|p| p.inner).collect()).map_err(value_err)
}

/// Orbits of the group generated by `gens` on `0..degree`.
#[pyfunction]
fn orbits(gens: Vec<PyPermutation>, degree: usize) -> PyResult<Vec<Vec<u32>>> {
    Ok(orbit_partition(&generating_set(gens, degree)?).classes().to_vec())
}

/// Per orbit, whether the group induces the full symmetric group on it:
/// one of `natural_symmetric`, `alternating_at_most`, `not_symmetric`, `undetermined`.
#[pyfunction]
#[pyo3(signature = (gens, degree, seed=0, giant_c=20.0))]
fn symmetric_action(
    gens: Vec<PyPermutation>,
    degree: usize,
    seed: u64,
    giant_c: f64,
) -> PyResult<Vec<(Vec<u32>, String)>> {
    let s = generating_set(gens, degree)?;
    let o = orbit_partition(&s);
    let mut source = new_source(&s, seed);
    let report = symmetric_action_orbits(&s, &o, giant_c, &mut source).map_err(value_err)?;
    Ok(report
        .orbits
        .iter()
        .map(|a| {
            let name = match a.verdict {
                Verdict::NaturalSymmetric => "natural_symmetric",
                Verdict::AlternatingAtMost => "alternating_at_most",
                Verdict::NotSymmetric => "not_symmetric",
                Verdict::Undetermined => "undetermined",
            };
            (o.class(a.orbit).to_vec(), name.to_string())
        })
        .collect())
}

/// Classes of equivalent orbits, each a list of orbits (lists of points).
#[pyfunction]
#[pyo3(signature = (gens, degree, seed=0))]
fn equivalent_orbit_classes(gens: Vec<PyPermutation>, degree: usize, seed: u64) -> PyResult<Vec<Vec<Vec<u32>>>> {
    let s = generating_set(gens, degree)?;
    let o = orbit_partition(&s);
    let mut source = new_source(&s, seed);
    let targets: Vec<u32> = (0..o.num_classes() as u32).collect();
    let unique = harvest_unique_cycles(&s, &o, &targets, &mut source);
    let canonical = canonical_cycles(&s, &o, &unique).map_err(value_err)?;
    let eq = equivalent_orbits(&s, &o, &canonical).map_err(value_err)?;
    Ok(eq
        .classes
        .iter()
        .map(|c| c.iter().map(|&id| o.class(id).to_vec()).collect())
        .collect())
}

#[pymodule]
fn symscope_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyFormula>()?;
    m.add_function(wrap_pyfunction!(orbits, m)?)?;
    m.add_function(wrap_pyfunction!(symmetric_action, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent_orbit_classes, m)?)?;
    m.add("SCHEMA_VERSION", symscope::pipeline::SCHEMA_VERSION)?;
    Ok(())
}
