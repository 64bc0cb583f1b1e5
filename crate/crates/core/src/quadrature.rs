//! Adaptive Gauss-Kronrod quadrature (7/15 pair with interval bisection).

use crate::error::{Error, Result};

// 15-point Kronrod nodes on [0, 1] side of the symmetric rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// 7-point Gauss weights for the embedded rule (odd Kronrod indices plus center).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    /// Accumulated error estimate over all accepted subintervals.
    pub error: f64,
    pub evaluations: usize,
}

/// One Gauss-Kronrod 7/15 panel on [a, b]: returns (kronrod value, error estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(mid);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        resk += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    (resk * half, ((resk - resg) * half).abs())
}

/// Integrates f over [a, b] to an absolute tolerance by recursive bisection.
///
/// Each subinterval must meet a tolerance proportional to its share of the
/// total length, so the accumulated error stays below `tol_abs`.  Fails with
/// [`Error::QuadratureTolerance`] when the recursion depth limit is reached
/// before the estimate converges.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol_abs: f64) -> Result<QuadResult> {
    if !(tol_abs > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {tol_abs}"
        )));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let total_len = (b - a).abs();
    let mut out = QuadResult { value: 0.0, error: 0.0, evaluations: 0 };
    recurse(f, a, b, tol_abs, total_len, 0, &mut out);
    if out.error > tol_abs {
        return Err(Error::QuadratureTolerance { tol: tol_abs, estimate: out.error });
    }
    Ok(out)
}

const MAX_DEPTH: u32 = 48;

fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol_abs: f64,
    total_len: f64,
    depth: u32,
    out: &mut QuadResult,
) {
    let (value, err) = gk15(f, a, b);
    out.evaluations += 15;
    let local_tol = tol_abs * ((b - a).abs() / total_len).max(f64::EPSILON);
    // panels at the depth cap are accepted with their error on the books;
    // the caller rejects the whole integral if the total exceeds tol_abs
    if err <= local_tol || depth >= MAX_DEPTH || (b - a).abs() < f64::EPSILON * total_len {
        out.value += value;
        out.error += err;
        return;
    }
    let mid = 0.5 * (a + b);
    recurse(f, a, mid, tol_abs, total_len, depth + 1, out);
    recurse(f, mid, b, tol_abs, total_len, depth + 1, out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_adaptive(&|x: f64| x * x, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_integrand() {
        // int_0^pi sin = 2
        let r = integrate_adaptive(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        // many wavelengths
        let r = integrate_adaptive(&|x: f64| (40.0 * x).sin(), 0.0, 1.0, 1e-12).unwrap();
        let exact = (1.0 - (40.0f64).cos()) / 40.0;
        assert!((r.value - exact).abs() < 1e-12);
    }

    #[test]
    fn reports_nonconvergence_on_divergent_core() {
        // 1/x is not integrable at 0; the recursion depth cap must trip.
        let r = integrate_adaptive(&|x: f64| 1.0 / x, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::QuadratureTolerance { .. })));
    }

    #[test]
    fn integrable_endpoint_singularity_converges() {
        // int_0^1 x^{-1/2} dx = 2, reachable at a modest tolerance
        let r = integrate_adaptive(&|x: f64| x.abs().sqrt().recip().min(1e14), 0.0, 1.0, 1e-6).unwrap();
        assert!((r.value - 2.0).abs() < 1e-5);
    }
}
