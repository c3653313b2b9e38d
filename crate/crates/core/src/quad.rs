//! Adaptive Simpson quadrature with an absolute-error budget.
//!
//! Used for weight-cell integrals of non-piecewise-linear weight functions and
//! for the nested double integral behind the L-statistic truth values. The
//! classic bisection scheme with Richardson extrapolation is enough here: the
//! integrands are smooth except at isolated kinks, and the budget is split in
//! half at every bisection so the accumulated error stays under the requested
//! tolerance.

use crate::error::{Error, Result};

/// Maximum bisection depth before giving up on a subinterval.
const MAX_DEPTH: u32 = 40;

/// Bisections forced before the error estimate may stop the recursion.
/// Piecewise integrands can make the two-level Simpson errors cancel exactly
/// on a coarse panel (a kink placed symmetrically does it), so the estimate is
/// only trusted once the panels are reasonably fine.
const MIN_SPLITS: u32 = 6;

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
///
/// `a > b` integrates backwards with the usual sign flip. Returns
/// `QuadratureFailure` if the error estimate cannot be brought under the
/// budget, and `NonFiniteResult` if the integrand produces NaN or infinities.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);
    let mut worst: f64 = 0.0;
    let value = adapt(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH, MIN_SPLITS, &mut worst)?;
    if !value.is_finite() {
        return Err(Error::NonFiniteResult);
    }
    if worst > tol {
        return Err(Error::QuadratureFailure { tol, estimate: worst });
    }
    Ok(value)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
    worst: &mut f64,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    if !(flm.is_finite() && frm.is_finite()) {
        return Err(Error::NonFiniteResult);
    }
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let err = (left + right - whole) / 15.0;
    // Also stop when the interval has collapsed to adjacent floats.
    if (force == 0 && err.abs() <= tol) || m <= a || m >= b {
        return Ok(left + right + err);
    }
    if depth == 0 {
        // Out of depth: record the unmet local error and keep the best value.
        *worst = worst.max(err.abs());
        return Ok(left + right + err);
    }
    let half = 0.5 * tol;
    let next_force = force.saturating_sub(1);
    let l = adapt(f, a, m, fa, flm, fm, left, half, depth - 1, next_force, worst)?;
    let r = adapt(f, m, b, fm, frm, fb, right, half, depth - 1, next_force, worst)?;
    Ok(l + r)
}
