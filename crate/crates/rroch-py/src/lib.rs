//! Python bindings for the characteristic-class calculator.
//!
//! The module exposes a small object surface: a `Context` fixes the
//! variable table and truncation degree, `Series` wraps a truncated
//! graded series with rational coefficients, and `Bundle` wraps a
//! virtual bundle given by Chern roots or by a total Chern class.
//! Module-level functions render universal polynomials and run the
//! verification suites.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use std::sync::Arc;

use rroch::render::{lift_rational, series_latex, series_text};
use rroch::{
    inverse, verify_generating_identity, verify_grr_zero_section, verify_lambda_chern,
    verify_pushforward_basis, verify_rr_without_denominators, verify_star_kernel, CalcError,
    IVPoly, Rational, Series as CoreSeries, SignedRoot, SuiteReport,
    UniversalContext, VarTable, VirtualBundle,
};

fn calc_err(e: CalcError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Shared variable table and truncation degree for series and bundles.
#[pyclass]
#[derive(Clone)]
struct Context {
    table: Arc<VarTable>,
    trunc: u32,
}

#[pymethods]
impl Context {
    /// `vars` is a list of (name, weight) pairs; `truncate` bounds the
    /// total weighted degree kept by every operation.
    #[new]
    fn new(vars: Vec<(String, u32)>, truncate: u32) -> PyResult<Self> {
        if truncate > 16 {
            return Err(PyValueError::new_err("truncate must be at most 16"));
        }
        let table = VarTable::new(&vars).map_err(calc_err)?;
        Ok(Context {
            table,
            trunc: truncate,
        })
    }

    fn truncate(&self) -> u32 {
        self.trunc
    }

    fn var_names(&self) -> Vec<String> {
        self.table.names().map(str::to_string).collect()
    }

    fn one(&self) -> Series {
        Series {
            inner: CoreSeries::one(self.table.clone(), self.trunc),
        }
    }

    fn zero(&self) -> Series {
        Series {
            inner: CoreSeries::zero(self.table.clone(), self.trunc),
        }
    }

    fn var(&self, name: &str) -> PyResult<Series> {
        Ok(Series {
            inner: CoreSeries::var(self.table.clone(), self.trunc, name).map_err(calc_err)?,
        })
    }

    /// Bundle from signed Chern roots, given as (variable name, multiplicity).
    fn bundle_from_roots(&self, roots: Vec<(String, i64)>) -> PyResult<Bundle> {
        let sample = CoreSeries::<Rational>::one(self.table.clone(), self.trunc);
        let signed: Vec<SignedRoot<CoreSeries<Rational>>> = roots
            .into_iter()
            .map(|(name, mult)| {
                Ok(SignedRoot {
                    class: CoreSeries::var(self.table.clone(), self.trunc, &name)
                        .map_err(calc_err)?,
                    mult,
                })
            })
            .collect::<PyResult<_>>()?;
        Ok(Bundle {
            inner: VirtualBundle::from_roots(&sample, signed).map_err(calc_err)?,
        })
    }

    /// Bundle from an integer rank and a total Chern class with constant
    /// term 1.
    fn bundle_from_chern(&self, rank: i64, chern: &Series) -> PyResult<Bundle> {
        Ok(Bundle {
            inner: VirtualBundle::from_chern(
                IVPoly::constant(Rational::from_int(rank)),
                chern.inner.clone(),
            )
            .map_err(calc_err)?,
        })
    }
}

/// Truncated graded series with exact rational coefficients.
#[pyclass]
#[derive(Clone)]
struct Series {
    inner: CoreSeries<Rational>,
}

impl Series {
    fn lifted(&self) -> CoreSeries<IVPoly> {
        lift_rational(&self.inner)
    }
}

#[pymethods]
impl Series {
    fn text(&self) -> String {
        series_text(&self.lifted())
    }

    fn latex(&self) -> String {
        series_latex(&self.lifted())
    }

    fn __repr__(&self) -> String {
        format!("Series({})", self.text())
    }

    fn __eq__(&self, other: &Series) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &Series) -> PyResult<Series> {
        Ok(Series {
            inner: self.inner.try_add(&other.inner).map_err(calc_err)?,
        })
    }

    fn __sub__(&self, other: &Series) -> PyResult<Series> {
        Ok(Series {
            inner: self.inner.try_sub(&other.inner).map_err(calc_err)?,
        })
    }

    fn __mul__(&self, other: &Series) -> PyResult<Series> {
        Ok(Series {
            inner: self.inner.try_mul(&other.inner).map_err(calc_err)?,
        })
    }

    fn __neg__(&self) -> Series {
        Series {
            inner: self.inner.neg(),
        }
    }

    /// Multiply by an integer scalar.
    fn scale(&self, c: i64) -> Series {
        Series {
            inner: self.inner.scale(&Rational::from_int(c)),
        }
    }

    /// Homogeneous component of the given weighted degree.
    fn component(&self, degree: u32) -> Series {
        Series {
            inner: self.inner.component(degree),
        }
    }

    /// Multiplicative inverse; requires constant term 1.
    fn inverse(&self) -> PyResult<Series> {
        Ok(Series {
            inner: inverse(&self.inner)
                .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))?,
        })
    }

    /// Coefficient of the monomial with the given exponent vector, as an
    /// exact fraction string.
    fn coeff(&self, exps: Vec<u16>) -> PyResult<String> {
        if exps.len() != self.inner.vars().len() {
            return Err(PyValueError::new_err("exponent vector length mismatch"));
        }
        Ok(self.inner.coeff(&exps).to_string())
    }
}

/// Virtual bundle: an integer rank with a total Chern class, optionally
/// remembering the signed Chern roots it was built from.
#[pyclass]
#[derive(Clone)]
struct Bundle {
    inner: VirtualBundle<CoreSeries<Rational>>,
}

#[pymethods]
impl Bundle {
    fn rank(&self) -> String {
        self.inner.rank().to_string()
    }

    fn chern(&self) -> Series {
        Series {
            inner: self.inner.chern().clone(),
        }
    }

    fn chern_class(&self, k: u32) -> Series {
        Series {
            inner: self.inner.chern().component(k),
        }
    }

    fn chern_character(&self) -> PyResult<Series> {
        Ok(Series {
            inner: self.inner.chern_character().map_err(calc_err)?,
        })
    }

    fn todd(&self) -> PyResult<Series> {
        Ok(Series {
            inner: self.inner.todd().map_err(calc_err)?,
        })
    }

    /// Whitney sum.
    fn sum(&self, other: &Bundle) -> Bundle {
        Bundle {
            inner: self.inner.sum(&other.inner),
        }
    }

    fn dual(&self) -> Bundle {
        Bundle {
            inner: self.inner.dual(),
        }
    }

    /// Tensor product on the level of Chern classes.
    fn star(&self, other: &Bundle) -> PyResult<Bundle> {
        Ok(Bundle {
            inner: self.inner.star(&other.inner).map_err(calc_err)?,
        })
    }

    /// k-th exterior power; requires explicit nonnegative roots.
    fn exterior_power(&self, k: u32) -> PyResult<Bundle> {
        Ok(Bundle {
            inner: self.inner.exterior_power(k as usize).map_err(calc_err)?,
        })
    }

    /// Alternating sum of exterior powers of the dual.
    fn lambda_minus_one_dual(&self) -> PyResult<Bundle> {
        Ok(Bundle {
            inner: self.inner.lambda_minus_one_dual().map_err(calc_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "Bundle(rank={}, chern={})",
            self.inner.rank(),
            series_text(&lift_rational(self.inner.chern()))
        )
    }
}

/// Render the universal polynomial P[n, r] as text or LaTeX.
#[pyfunction]
#[pyo3(signature = (n, r, format = "text"))]
fn universal_poly(n: u32, r: u32, format: &str) -> PyResult<String> {
    if r == 0 {
        return Err(PyValueError::new_err("r must be at least 1"));
    }
    if n + r > 10 {
        return Err(PyValueError::new_err("n + r must be at most 10"));
    }
    let ctx = UniversalContext::new(n, r, n + r).map_err(calc_err)?;
    let p = ctx.p_nr().map_err(calc_err)?;
    match format {
        "text" => Ok(series_text(&p)),
        "latex" => Ok(series_latex(&p)),
        other => Err(PyValueError::new_err(format!(
            "unknown format {other}; use text or latex"
        ))),
    }
}

fn report_pairs(report: &SuiteReport) -> (bool, Vec<(String, bool)>) {
    (
        report.pass,
        report
            .cases
            .iter()
            .map(|c| (c.id.clone(), c.pass))
            .collect(),
    )
}

/// Run a verification suite. Returns (overall_pass, [(case_id, pass)]).
/// Suites: lambda-chern, star-kernel, generating, pushforward, rrwd, grr.
#[pyfunction]
#[pyo3(signature = (suite, n = 1, r = 1, truncate = 4))]
fn verify(suite: &str, n: u32, r: u32, truncate: u32) -> PyResult<(bool, Vec<(String, bool)>)> {
    if n > 4 || r > 4 || r == 0 || truncate > 10 {
        return Err(PyValueError::new_err(
            "bounds: 1 <= r <= 4, n <= 4, truncate <= 10",
        ));
    }
    let trunc = truncate.max(n + r);
    let report = match suite {
        "lambda-chern" => verify_lambda_chern(r, trunc),
        "star-kernel" => verify_star_kernel(n, r, trunc),
        "generating" => verify_generating_identity(r, trunc.max(r)),
        "pushforward" => verify_pushforward_basis(r, trunc),
        "rrwd" => verify_rr_without_denominators(n, r, trunc),
        "grr" => verify_grr_zero_section(n, r, trunc),
        other => {
            return Err(PyValueError::new_err(format!("unknown suite {other}")));
        }
    }
    .map_err(calc_err)?;
    Ok(report_pairs(&report))
}

#[pymodule]
fn rroch_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Context>()?;
    m.add_class::<Series>()?;
    m.add_class::<Bundle>()?;
    m.add_function(wrap_pyfunction!(universal_poly, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
