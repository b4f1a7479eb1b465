//! Python bindings. Results with structure are returned as plain Python
//! objects decoded from the library's JSON forms.

use std::time::Duration;

use stable_kneser::coloring::{afl_min_block_coloring_for, best_construction, Coloring};
use stable_kneser::harness::formulas::main1_mod_condition;
use stable_kneser::harness::{run_instance, Claim, InstanceSpec, RunOptions};
use stable_kneser::solver::{chromatic_number_with, independence_number, SolveOptions};
use stable_kneser::tucker::{build_lambda_with, verify_tucker_conditions, LabelScheme};
use stable_kneser::wgraph::{build_w_graph, coloring_to_st_partition, is_butterfly_free};
use stable_kneser::{build_kneser, build_stable_kneser, Error, Hypergraph, KSubset, StabilityVector};

type Res<T> = std::result::Result<T, Error>;

fn svec_of(s: Vec<u32>) -> Res<StabilityVector> {
    StabilityVector::new(s)
}

fn budget_of(seconds: Option<f64>) -> Option<Duration> {
    seconds.filter(|&s| s > 0.0).map(Duration::from_secs_f64)
}

fn coloring_of(h: &Hypergraph, colors: Vec<u32>) -> Res<Coloring> {
    if colors.len() != h.vertex_count() {
        return Err(Error::Argument(format!("{} colors for {} vertices", colors.len(), h.vertex_count())));
    }
    Coloring::new(colors)
}

fn scheme_of(name: &str) -> Res<LabelScheme> {
    match name {
        "published" => Ok(LabelScheme::Published),
        "shifted" => Ok(LabelScheme::ShiftedThreshold),
        other => Err(Error::Argument(format!("unknown label scheme `{other}`"))),
    }
}

fn chi_json(h: &Hypergraph, budget: Option<f64>) -> String {
    chromatic_number_with(h, None, &SolveOptions { decision_budget: budget_of(budget) }).to_json()
}

fn tucker_json(n: u32, svec: Vec<u32>, colors: Vec<u32>, scheme: &str) -> Res<String> {
    let svec = svec_of(svec)?;
    let h = build_stable_kneser(n, svec.k() as u32, 2, &svec)?;
    let c = coloring_of(&h, colors)?;
    Ok(verify_tucker_conditions(&build_lambda_with(n, &svec, &c, scheme_of(scheme)?)?)?.to_json())
}

fn verify_json(family: &str, n: u32, r: u32, svec: Vec<u32>, claim: &str, budget: Option<f64>) -> Res<String> {
    let claim = Claim::parse(claim)?;
    let spec = match family {
        "uniform" | "uniform-stable" => {
            let s = *svec.first().ok_or_else(|| Error::Argument("empty stability vector".into()))?;
            if svec.iter().any(|&x| x != s) {
                return Err(Error::Argument("uniform family needs equal entries".into()));
            }
            InstanceSpec::uniform(n, svec.len() as u32, r, s, claim)
        }
        "vector" | "vector-stable" => InstanceSpec::vector(n, r, &svec, claim),
        "w-graph" => match svec[..] {
            [s1, s2] => InstanceSpec::w_graph(n, s1, s2),
            _ => return Err(Error::Argument("w-graph needs [s1, s2]".into())),
        },
        other => return Err(Error::Argument(format!("unknown family `{other}`"))),
    };
    Ok(run_instance(&spec, &RunOptions { budget: budget_of(budget), artifact_dir: None })?.canonical().to_json())
}

#[pyo3::pymodule(name = "stable_kneser")]
mod py_stable_kneser {
    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;

    use super::*;

    fn err(e: Error) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
        py.import("json")?.call_method1("loads", (text,))
    }

    /// A stable or full Kneser hypergraph with its vertex order.
    #[pyclass(name = "Hypergraph", frozen)]
    pub struct PyHypergraph {
        inner: Hypergraph,
    }

    #[pymethods]
    impl PyHypergraph {
        #[getter]
        fn n(&self) -> u32 {
            self.inner.n()
        }

        #[getter]
        fn k(&self) -> u32 {
            self.inner.k()
        }

        #[getter]
        fn r(&self) -> u32 {
            self.inner.r()
        }

        #[getter]
        fn svec(&self) -> Vec<u32> {
            self.inner.svec().as_slice().to_vec()
        }

        fn __len__(&self) -> usize {
            self.inner.vertex_count()
        }

        fn __repr__(&self) -> String {
            format!(
                "Hypergraph(n={}, k={}, r={}, svec={:?}, vertices={})",
                self.inner.n(),
                self.inner.k(),
                self.inner.r(),
                self.inner.svec().as_slice(),
                self.inner.vertex_count()
            )
        }

        /// Vertices as sorted element lists, in id order.
        fn vertices(&self) -> Vec<Vec<u32>> {
            self.inner.vertices().iter().map(|v| v.elements()).collect()
        }

        /// Id of a vertex, or None when the set is not a vertex.
        fn index_of(&self, subset: Vec<u32>) -> PyResult<Option<usize>> {
            Ok(self.inner.index_of(KSubset::new(self.inner.n(), &subset).map_err(err)?))
        }

        /// Up to `limit` hyperedges as lists of vertex ids.
        #[pyo3(signature = (limit=None))]
        fn hyperedges(&self, limit: Option<usize>) -> Vec<Vec<usize>> {
            self.inner.enumerate_hyperedges(limit).collect()
        }

        fn to_json(&self) -> String {
            self.inner.to_json()
        }

        #[staticmethod]
        fn from_json(text: &str) -> PyResult<Self> {
            Hypergraph::from_json(text).map(|inner| PyHypergraph { inner }).map_err(err)
        }

        /// Exact chromatic number with certificate; `budget` is seconds per
        /// decision, None or 0 for no limit.
        #[pyo3(signature = (budget=Some(60.0)))]
        fn chromatic_number<'py>(&self, py: Python<'py>, budget: Option<f64>) -> PyResult<Bound<'py, PyAny>> {
            let text = py.detach(|| chi_json(&self.inner, budget));
            loads(py, &text)
        }

        fn validate_coloring<'py>(&self, py: Python<'py>, colors: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
            let c = coloring_of(&self.inner, colors).map_err(err)?;
            let v = ::stable_kneser::validate_coloring(&self.inner, &c).map_err(err)?;
            loads(py, &serde_json::to_string(&v).expect("serializable"))
        }

        /// Coloring by `scheme`: block, afl, interval or best.
        #[pyo3(signature = (scheme="best"))]
        fn coloring(&self, scheme: &str) -> PyResult<Vec<u32>> {
            let h = &self.inner;
            let c = match scheme {
                "block" => ::stable_kneser::block_coloring(h),
                "afl" => afl_min_block_coloring_for(h),
                "interval" => ::stable_kneser::interval_coloring(h.n(), h.svec()),
                "best" => best_construction(h).map(|s| s.coloring),
                other => Err(Error::Argument(format!("unknown scheme `{other}`"))),
            };
            c.map(|c| c.assignment().to_vec()).map_err(err)
        }

        /// ST-partition of W(n, s1, s2) matching a coloring (k = 2, r = 2).
        fn st_partition<'py>(&self, py: Python<'py>, colors: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
            let c = coloring_of(&self.inner, colors).map_err(err)?;
            let p = coloring_to_st_partition(&self.inner, &c).map_err(err)?;
            loads(py, &p.to_json())
        }
    }

    /// `KG^r(n, k)` restricted to vertices stable for `svec` (k = len(svec)).
    #[pyfunction]
    #[pyo3(signature = (n, svec, r=2))]
    fn stable_kneser(n: u32, svec: Vec<u32>, r: u32) -> PyResult<PyHypergraph> {
        let s = svec_of(svec).map_err(err)?;
        build_stable_kneser(n, s.k() as u32, r, &s).map(|inner| PyHypergraph { inner }).map_err(err)
    }

    /// The full Kneser hypergraph `KG^r(n, k)`.
    #[pyfunction]
    #[pyo3(signature = (n, k, r=2))]
    fn kneser(n: u32, k: u32, r: u32) -> PyResult<PyHypergraph> {
        build_kneser(n, k, r).map(|inner| PyHypergraph { inner }).map_err(err)
    }

    #[pyfunction]
    fn is_vec_stable(subset: Vec<u32>, n: u32, svec: Vec<u32>) -> PyResult<bool> {
        let a = KSubset::new(n, &subset).map_err(err)?;
        ::stable_kneser::is_vec_stable(a, n, &svec_of(svec).map_err(err)?).map_err(err)
    }

    /// Edges of W(n, s1, s2), 1-based.
    #[pyfunction]
    fn w_graph_edges(n: u32, s1: u32, s2: u32) -> Vec<(usize, usize)> {
        build_w_graph(n, s1, s2).edges().into_iter().map(|(u, v)| (u + 1, v + 1)).collect()
    }

    /// Independence number of W(n, s1, s2) and a 1-based witness.
    #[pyfunction]
    fn w_graph_alpha(n: u32, s1: u32, s2: u32) -> (usize, Vec<usize>) {
        let a = independence_number(&build_w_graph(n, s1, s2));
        (a.alpha, a.witness.iter().map(|v| v + 1).collect())
    }

    /// An induced butterfly of W(n, s1, s2), centre first, 1-based; None if
    /// there is none.
    #[pyfunction]
    fn w_graph_butterfly(n: u32, s1: u32, s2: u32) -> Option<[usize; 5]> {
        is_butterfly_free(&build_w_graph(n, s1, s2)).map(|b| b.map(|v| v + 1))
    }

    /// Exhaustive check of the Tucker conditions for the labeling built from
    /// a coloring of `KG^2(n, k)_svec`.
    #[pyfunction]
    #[pyo3(signature = (n, svec, colors, scheme="shifted"))]
    fn tucker_check<'py>(py: Python<'py>, n: u32, svec: Vec<u32>, colors: Vec<u32>, scheme: &str) -> PyResult<Bound<'py, PyAny>> {
        let text = tucker_json(n, svec, colors, scheme).map_err(err)?;
        loads(py, &text)
    }

    /// Residue and residue-set membership for exponent `m`.
    #[pyfunction]
    fn mod_condition<'py>(py: Python<'py>, n: u32, k: u32, m: u32) -> PyResult<Bound<'py, PyAny>> {
        let mc = main1_mod_condition(n, k, m).map_err(err)?;
        loads(py, &serde_json::to_string(&mc).expect("serializable"))
    }

    /// Runs one instance against a claim and returns the verdict record.
    #[pyfunction]
    #[pyo3(signature = (family, n, svec, claim, r=2, budget=Some(60.0)))]
    fn verify<'py>(
        py: Python<'py>,
        family: &str,
        n: u32,
        svec: Vec<u32>,
        claim: &str,
        r: u32,
        budget: Option<f64>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let family = family.to_owned();
        let claim = claim.to_owned();
        let text = py.detach(move || verify_json(&family, n, r, svec, &claim, budget)).map_err(err)?;
        loads(py, &text)
    }

    /// Claim identifiers accepted by `verify`.
    #[pyfunction]
    fn claims() -> Vec<&'static str> {
        Claim::ALL.iter().map(|c| c.id()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_helpers() {
        let h = build_stable_kneser(6, 2, 2, &StabilityVector::new(vec![1, 4]).unwrap()).unwrap();
        assert!(chi_json(&h, Some(10.0)).contains(r#""chi":3"#));
        let t = tucker_json(6, vec![2, 2], vec![1; 3], "shifted");
        assert!(t.is_err());
        assert!(scheme_of("nope").is_err());
        let v = verify_json("vector", 6, 2, vec![1, 4], "none", None).unwrap();
        assert!(v.contains("NOT_APPLICABLE"));
        assert!(verify_json("uniform", 6, 2, vec![2, 3], "none", None).is_err());
    }
}
