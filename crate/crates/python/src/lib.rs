//! Python bindings: the square-well closed forms, the radial solver, the
//! expansion family, and the fitting/inverse-design helpers.
//!
//! Build with `cargo build -p erange-py --release`, then rename the produced
//! `liberange.so` to `erange.so` (or run `python/smoke_test.py`, which does
//! this in a scratch directory) and `import erange`.

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use erange_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// One momentum point of scattering output.
#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PhaseRecord {
    #[pyo3(get)]
    k: f64,
    #[pyo3(get)]
    delta: f64,
    #[pyo3(get)]
    tan_delta_over_k: f64,
    #[pyo3(get)]
    k_cot_delta: f64,
    #[pyo3(get)]
    pole_near_tan: bool,
    #[pyo3(get)]
    pole_near_kcot: bool,
}

impl From<core::PhaseRecord> for PhaseRecord {
    fn from(rec: core::PhaseRecord) -> Self {
        Self {
            k: rec.k,
            delta: rec.delta,
            tan_delta_over_k: rec.tan_delta_over_k,
            k_cot_delta: rec.k_cot_delta,
            pole_near_tan: rec.pole_near_tan,
            pole_near_kcot: rec.pole_near_kcot,
        }
    }
}

#[pymethods]
impl PhaseRecord {
    fn __repr__(&self) -> String {
        format!(
            "PhaseRecord(k={}, delta={}, tan_delta_over_k={}, k_cot_delta={})",
            self.k, self.delta, self.tan_delta_over_k, self.k_cot_delta
        )
    }
}

/// Short-range attractive radial potential in units hbar = 2m = 1.
#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct Potential {
    inner: core::Potential,
}

#[pymethods]
impl Potential {
    #[staticmethod]
    fn square_well(range: f64, beta: f64) -> PyResult<Self> {
        Ok(Self { inner: core::Potential::square_well(range, beta).map_err(err)? })
    }

    #[staticmethod]
    fn gaussian(strength: f64, width: f64) -> PyResult<Self> {
        Ok(Self { inner: core::Potential::gaussian(strength, width).map_err(err)? })
    }

    #[staticmethod]
    fn exponential(strength: f64, scale: f64) -> PyResult<Self> {
        Ok(Self { inner: core::Potential::exponential(strength, scale).map_err(err)? })
    }

    #[staticmethod]
    fn yukawa(strength: f64, scale: f64) -> PyResult<Self> {
        Ok(Self { inner: core::Potential::yukawa(strength, scale).map_err(err)? })
    }

    /// V(r); the Yukawa core raises ValueError at r = 0.
    fn value(&self, r: f64) -> PyResult<f64> {
        self.inner.value(r).map_err(err)
    }

    #[getter]
    fn range(&self) -> f64 {
        self.inner.range()
    }

    fn __repr__(&self) -> String {
        format!("Potential({:?})", self.inner)
    }
}

/// Attractive square well of range R and depth beta^2, with every closed form.
#[pyclass(frozen, from_py_object)]
#[derive(Clone, Copy)]
struct SquareWell {
    inner: core::SquareWell,
}

#[pymethods]
impl SquareWell {
    #[new]
    fn new(range: f64, beta: f64) -> PyResult<Self> {
        Ok(Self { inner: core::SquareWell::new(range, beta).map_err(err)? })
    }

    #[getter]
    fn range(&self) -> f64 {
        self.inner.range()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    fn scattering_length(&self) -> PyResult<f64> {
        self.inner.scattering_length().map_err(err)
    }

    fn tan_delta_over_k(&self, k: f64) -> PyResult<f64> {
        self.inner.tan_delta_over_k(k).map_err(err)
    }

    fn phase_shift(&self, k: f64) -> PyResult<f64> {
        self.inner.phase_shift(k).map_err(err)
    }

    fn interior_wavefunction(&self, k: f64, delta: f64, r: f64) -> PyResult<f64> {
        self.inner.interior_wavefunction(k, delta, r).map_err(err)
    }

    /// dict with keys a, b_small, c_large, r0_full (the last two are None
    /// when the scattering length vanishes).
    fn taylor_coefficients(&self) -> PyResult<HashMap<String, Option<f64>>> {
        let c = self.inner.taylor_coefficients().map_err(err)?;
        Ok(HashMap::from([
            ("a".to_string(), Some(c.a)),
            ("b_small".to_string(), Some(c.b_small)),
            ("c_large".to_string(), c.c_large),
            ("r0_full".to_string(), c.r0_full),
        ]))
    }

    fn phase_record(&self, k: f64) -> PyResult<PhaseRecord> {
        Ok(self.inner.phase_record(k).map_err(err)?.into())
    }

    fn potential(&self) -> Potential {
        Potential { inner: self.inner.potential() }
    }

    fn __repr__(&self) -> String {
        format!("SquareWell(range={}, beta={})", self.inner.range(), self.inner.beta())
    }
}

fn config_for(pot: &core::Potential, step: Option<f64>) -> core::SolverConfig {
    let mut cfg = core::SolverConfig::for_potential(pot);
    if let Some(step) = step {
        cfg.step = step;
    }
    cfg
}

/// Numerov integration of the radial equation with phase extraction.
#[pyfunction]
#[pyo3(signature = (potential, k, step=None))]
fn solve_phase(potential: &Potential, k: f64, step: Option<f64>) -> PyResult<PhaseRecord> {
    let cfg = config_for(&potential.inner, step);
    Ok(core::solve_phase(&potential.inner, k, &cfg).map_err(err)?.into())
}

/// -int u v V dr with u normalized to sin(kr+delta)/k; equals
/// tan(delta)/k up to the quadrature tolerance.
#[pyfunction]
#[pyo3(signature = (potential, k, step=None))]
fn integral_identity(potential: &Potential, k: f64, step: Option<f64>) -> PyResult<f64> {
    let cfg = config_for(&potential.inner, step);
    core::integral_identity(&potential.inner, k, &cfg).map_err(err)
}

fn kind_from(token: &str) -> PyResult<core::ExpansionKind> {
    core::ExpansionKind::from_token(token).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown expansion kind `{token}`; expected one of {:?}",
            core::ExpansionKind::ALL.map(|k| k.token())
        ))
    })
}

/// The stable kind tokens, in the order er1, er2, er18, er19, er22, er23, er24, inv4.
#[pyfunction]
fn expansion_kinds() -> Vec<&'static str> {
    core::ExpansionKind::ALL.iter().map(|k| k.token()).collect()
}

/// Evaluate one truncated expansion at momentum k.
#[pyfunction]
fn eval_expansion(kind: &str, a: f64, r0: f64, k: f64) -> PyResult<f64> {
    core::eval_expansion(kind_from(kind)?, &core::ErParams { a, r0 }, k).map_err(err)
}

/// (intercept, slope) of the k^2-truncated reciprocal of -a + b k^2.
#[pyfunction]
fn reciprocal_coefficients(a: f64, b: f64) -> PyResult<(f64, f64)> {
    core::reciprocal_coefficients(a, b).map_err(err)
}

/// Well depth beta with scattering length `a_target`, bracketed in beta*R.
#[pyfunction]
fn solve_beta_for_target_a(range: f64, a_target: f64, lo: f64, hi: f64) -> PyResult<f64> {
    core::solve_beta_for_target_a(range, a_target, (lo, hi)).map_err(err)
}

/// (beta*R, a/R or None, pole_flag) on a uniform beta*R grid.
#[pyfunction]
fn scattering_length_scan(range: f64, beta_max: f64, n: usize) -> PyResult<Vec<(f64, Option<f64>, bool)>> {
    Ok(core::scattering_length_scan(range, beta_max, n)
        .map_err(err)?
        .into_iter()
        .map(|p| (p.beta_r, p.a_over_r, p.pole))
        .collect())
}

/// Least-squares (a, effective range) from parallel arrays of k and
/// tan(delta)/k, restricted to kk_min <= k^2 <= kk_max.
#[pyfunction]
fn fit_effective_range(
    k: Vec<f64>,
    tan_delta_over_k: Vec<f64>,
    kind: &str,
    kk_min: f64,
    kk_max: f64,
) -> PyResult<HashMap<String, f64>> {
    if k.len() != tan_delta_over_k.len() {
        return Err(PyValueError::new_err("k and tan_delta_over_k must have equal lengths"));
    }
    let records: Vec<core::PhaseRecord> = k
        .iter()
        .zip(&tan_delta_over_k)
        .map(|(&k, &t)| core::PhaseRecord::from_tan_delta_over_k(k, t))
        .collect();
    let fit = core::fit_effective_range(&records, kind_from(kind)?, (kk_min, kk_max)).map_err(err)?;
    Ok(HashMap::from([
        ("a".to_string(), fit.params.a),
        ("r0".to_string(), fit.params.r0),
        ("intercept".to_string(), fit.intercept),
        ("slope".to_string(), fit.slope),
        ("rms_residual".to_string(), fit.rms_residual),
        ("n_points".to_string(), fit.n_points as f64),
    ]))
}

/// Per-kind absolute-deviation statistics of the expansions against the
/// exact square-well function, with both effective ranges set to R.
#[pyfunction]
#[pyo3(signature = (range, beta, kinds, kk_min=0.005, kk_max=0.5, n=100))]
fn compare_expansions(
    range: f64,
    beta: f64,
    kinds: Vec<String>,
    kk_min: f64,
    kk_max: f64,
    n: usize,
) -> PyResult<Vec<HashMap<String, f64>>> {
    let well = core::SquareWell::new(range, beta).map_err(err)?;
    let kinds = kinds
        .iter()
        .map(|t| kind_from(t))
        .collect::<PyResult<Vec<_>>>()?;
    let reports = core::compare_expansions(
        &well,
        &kinds,
        core::ParamsPolicy::UseRangeR,
        (kk_min, kk_max),
        n,
    )
    .map_err(err)?;
    Ok(reports
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            HashMap::from([
                ("kind_index".to_string(), i as f64),
                ("max_abs_dev".to_string(), r.max_abs_dev),
                ("mean_abs_dev".to_string(), r.mean_abs_dev),
                ("n_excluded".to_string(), r.n_excluded as f64),
            ])
        })
        .collect())
}

#[pymodule]
fn erange(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Potential>()?;
    m.add_class::<SquareWell>()?;
    m.add_class::<PhaseRecord>()?;
    m.add_function(wrap_pyfunction!(solve_phase, m)?)?;
    m.add_function(wrap_pyfunction!(integral_identity, m)?)?;
    m.add_function(wrap_pyfunction!(expansion_kinds, m)?)?;
    m.add_function(wrap_pyfunction!(eval_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(solve_beta_for_target_a, m)?)?;
    m.add_function(wrap_pyfunction!(scattering_length_scan, m)?)?;
    m.add_function(wrap_pyfunction!(fit_effective_range, m)?)?;
    m.add_function(wrap_pyfunction!(compare_expansions, m)?)?;
    Ok(())
}
