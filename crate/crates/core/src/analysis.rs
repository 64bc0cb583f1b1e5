//! Root finding on the scattering-length curve, inverse design (depth for a
//! target scattering length), least-squares extraction of effective-range
//! parameters from phase-shift records, and expansion-versus-exact error
//! reports for the square well.

use crate::error::{Error, Result};
use crate::expansions::{eval_expansion, ErParams, ExpansionKind, ValueRole};
use crate::solver::PhaseRecord;
use crate::squarewell::SquareWell;

use std::f64::consts::PI;

/// One point of the a(beta R) scan.  Pole points carry no value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub beta_r: f64,
    pub a_over_r: Option<f64>,
    pub pole: bool,
}

const SCAN_POLE_GUARD: f64 = 1e-6;

/// Samples a/R = 1 - tan(x)/x on a uniform grid of x = beta R over
/// (0, beta_max * R], flagging points within 1e-6 of a tan pole.
pub fn scattering_length_scan(range: f64, beta_max: f64, n: usize) -> Result<Vec<ScanPoint>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("scan needs n >= 2, got {n}")));
    }
    if !(beta_max > 0.0 && range > 0.0) {
        return Err(Error::InvalidParameter(
            "scan needs beta_max > 0 and range > 0".into(),
        ));
    }
    let x_max = beta_max * range;
    Ok((1..=n)
        .map(|i| {
            let x = x_max * i as f64 / n as f64;
            if distance_to_pole(x) < SCAN_POLE_GUARD {
                ScanPoint { beta_r: x, a_over_r: None, pole: true }
            } else {
                ScanPoint { beta_r: x, a_over_r: Some(1.0 - x.tan() / x), pole: false }
            }
        })
        .collect())
}

fn distance_to_pole(x: f64) -> f64 {
    let m = (x / PI - 0.5).round();
    (x - (m + 0.5) * PI).abs()
}

fn nearest_pole(x: f64) -> f64 {
    let m = (x / PI - 0.5).round();
    (m + 0.5) * PI
}

/// Nearest zero of a(x) = R (1 - tan x / x): either the trivial zero at the
/// origin or a root of tan x = x in the branch containing x.
fn nearest_zero_of_a(x: f64) -> f64 {
    let m = (x / PI - 0.5).round().max(0.0);
    if m < 1.0 {
        return 0.0;
    }
    // bisect tan t - t on ((m - 1/2) pi, (m + 1/2) pi)
    let mut lo = (m - 0.5) * PI + 1e-9;
    let mut hi = (m + 0.5) * PI - 1e-9;
    let f = |t: f64| t.tan() - t;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Finds beta such that the square well (range, beta) has scattering length
/// `a_target`, searching the bracket `(beta_r_lo, beta_r_hi)` in beta*R.
///
/// Bisection to 1e-12 in beta R, then a secant polish until
/// |a(beta) - a_target| < 1e-10 max(R, |a_target|).  The bracket must
/// exclude the tan poles and produce a sign change.
pub fn solve_beta_for_target_a(range: f64, a_target: f64, bracket: (f64, f64)) -> Result<f64> {
    let (lo, hi) = bracket;
    if !(range > 0.0) {
        return Err(Error::InvalidParameter(format!("range must be positive, got {range}")));
    }
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let bracket_err = || Error::Bracketing {
        lo,
        hi,
        target: a_target,
        nearest_pole: nearest_pole(0.5 * (lo + hi)),
        nearest_zero: nearest_zero_of_a(0.5 * (lo + hi)),
    };
    // a pole strictly inside makes the sign change meaningless
    let first_pole = {
        let m = (lo / PI - 0.5).ceil();
        (m + 0.5) * PI
    };
    if first_pole > lo && first_pole < hi {
        return Err(bracket_err());
    }

    let g = |x: f64| range * (1.0 - x.tan() / x) - a_target;
    let (mut xa, mut xb) = (lo, hi);
    let (ga, gb) = (g(xa), g(xb));
    if ga == 0.0 {
        return Ok(xa / range);
    }
    if gb == 0.0 {
        return Ok(xb / range);
    }
    if ga.signum() == gb.signum() {
        return Err(bracket_err());
    }
    let mut sign_a = ga.signum();
    for _ in 0..200 {
        let mid = 0.5 * (xa + xb);
        let gm = g(mid);
        if gm == 0.0 {
            xa = mid;
            xb = mid;
            break;
        }
        if gm.signum() == sign_a {
            xa = mid;
            sign_a = gm.signum();
        } else {
            xb = mid;
        }
        if xb - xa < 1e-12 {
            break;
        }
    }
    // secant polish for the last digits
    let tol = 1e-10 * range.max(a_target.abs());
    let (mut x0, mut x1) = (xa, xb.max(xa + 1e-13));
    let (mut g0, mut g1) = (g(x0), g(x1));
    let mut best = if g0.abs() < g1.abs() { x0 } else { x1 };
    for _ in 0..60 {
        if g(best).abs() <= tol {
            return Ok(best / range);
        }
        if g1 == g0 {
            break;
        }
        let x2 = x1 - g1 * (x1 - x0) / (g1 - g0);
        if !x2.is_finite() {
            break;
        }
        x0 = x1;
        g0 = g1;
        x1 = x2;
        g1 = g(x1);
        if g1.abs() < g(best).abs() {
            best = x1;
        }
    }
    if g(best).abs() <= tol {
        Ok(best / range)
    } else {
        Err(Error::InvalidParameter(format!(
            "inverse solve stalled: residual {:e} above tolerance {:e}",
            g(best).abs(),
            tol
        )))
    }
}

/// Outcome of a two-parameter least-squares fit of one expansion kind.
#[derive(Debug, Clone, PartialEq)]
pub struct ErFitResult {
    pub kind: ExpansionKind,
    pub params: ErParams,
    /// Raw regression coefficients of value = intercept + slope * k^2.
    pub intercept: f64,
    pub slope: f64,
    pub rms_residual: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

/// Ordinary least squares of the kind's effective-range function against
/// intercept + slope * k^2, followed by the kind's back-map from regression
/// coefficients to (a, effective range).
///
/// Records outside the k^2 window, records flagged near the pole of the
/// kind's function, and non-finite values are dropped; at least three points
/// must survive.
pub fn fit_effective_range(
    records: &[PhaseRecord],
    kind: ExpansionKind,
    window: (f64, f64),
) -> Result<ErFitResult> {
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "fit window must satisfy 0 <= lo < hi, got ({lo}, {hi})"
        )));
    }
    let role = kind.value_role();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for rec in records {
        let kk = rec.kk();
        if kk < lo || kk > hi {
            continue;
        }
        let y = match role {
            ValueRole::TanDeltaOverK => {
                if rec.pole_near_tan {
                    continue;
                }
                rec.tan_delta_over_k
            }
            ValueRole::KCotDelta => {
                if rec.pole_near_kcot {
                    continue;
                }
                rec.k_cot_delta
            }
            ValueRole::MinusDeltaOverK => -rec.delta / rec.k,
        };
        if !y.is_finite() {
            continue;
        }
        xs.push(kk);
        ys.push(y);
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::InsufficientRecords { needed: 3, found: n });
    }

    let xm = xs.iter().sum::<f64>() / n as f64;
    let ym = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter("all fit abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let rms = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum::<f64>()
        / n as f64)
        .sqrt();

    let params = invert_coefficients(kind, intercept, slope)?;
    Ok(ErFitResult { kind, params, intercept, slope, rms_residual: rms, window, n_points: n })
}

/// Maps (intercept, slope) back to (a, effective range) for each kind.
fn invert_coefficients(kind: ExpansionKind, intercept: f64, slope: f64) -> Result<ErParams> {
    use ExpansionKind::*;
    match kind {
        TextbookLargeA => {
            if intercept == 0.0 {
                return Err(Error::FitInversion { slope });
            }
            Ok(ErParams { a: -1.0 / intercept, r0: 2.0 * slope })
        }
        LowestLarge => {
            if intercept == 0.0 {
                return Err(Error::FitInversion { slope });
            }
            let r0 = 2.0 * slope;
            if !(r0 > 0.0) {
                return Err(Error::FitInversion { slope });
            }
            Ok(ErParams { a: -1.0 / intercept, r0 })
        }
        ReciprocalSmallA | LowestSmall => {
            if !(slope > 0.0) {
                return Err(Error::FitInversion { slope });
            }
            Ok(ErParams { a: -intercept, r0: (6.0 * slope).cbrt() })
        }
        InverseOfTextbook => {
            let a = -intercept;
            if a == 0.0 {
                return Err(Error::FitInversion { slope });
            }
            let r0 = -2.0 * slope / (a * a);
            if !(r0 > 0.0) {
                return Err(Error::FitInversion { slope });
            }
            Ok(ErParams { a, r0 })
        }
        KetterleParam => {
            let a = intercept;
            if a == 0.0 {
                return Err(Error::FitInversion { slope });
            }
            Ok(ErParams { a, r0: 2.0 * (slope + a.powi(3) / 3.0) / (a * a) })
        }
        ImprovedSmallA => {
            let a = -intercept;
            // slope = r^3/6 - a^2 r/2  =>  r^3 - 3 a^2 r - 6 slope = 0
            let r0 = smallest_positive_root(0.0, -3.0 * a * a, -6.0 * slope)
                .ok_or(Error::FitInversion { slope })?;
            Ok(ErParams { a, r0 })
        }
        ImprovedLargeA => {
            if intercept == 0.0 {
                return Err(Error::FitInversion { slope });
            }
            let a = -1.0 / intercept;
            // slope = r/2 - r^3/(6a^2) - 2r^2/(pi^2 a)
            //   =>  r^3 + (12 a / pi^2) r^2 - 3 a^2 r + 6 a^2 slope = 0
            let c2 = 12.0 * a / (PI * PI);
            let r0 = smallest_positive_root(c2, -3.0 * a * a, 6.0 * a * a * slope)
                .ok_or(Error::FitInversion { slope })?;
            Ok(ErParams { a, r0 })
        }
    }
}

/// Real roots of x^3 + c2 x^2 + c1 x + c0, each polished by two Newton steps.
fn cubic_real_roots(c2: f64, c1: f64, c0: f64) -> Vec<f64> {
    let p = c1 - c2 * c2 / 3.0;
    let q = 2.0 * c2.powi(3) / 27.0 - c2 * c1 / 3.0 + c0;
    let shift = -c2 / 3.0;
    let mut roots = Vec::with_capacity(3);
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    if disc > 0.0 {
        // three distinct real roots, trigonometric form
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for j in 0..3 {
            roots.push(shift + m * (theta - 2.0 * PI * j as f64 / 3.0).cos());
        }
    } else {
        // one real root, Cardano
        let s = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        let t = (-q / 2.0 + s).cbrt() + (-q / 2.0 - s).cbrt();
        roots.push(shift + t);
    }
    let f = |x: f64| ((x + c2) * x + c1) * x + c0;
    let df = |x: f64| (3.0 * x + 2.0 * c2) * x + c1;
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let d = df(*r);
            if d != 0.0 {
                *r -= f(*r) / d;
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Smallest strictly positive real root, the physical branch for the
/// effective-range back-maps.
fn smallest_positive_root(c2: f64, c1: f64, c0: f64) -> Option<f64> {
    cubic_real_roots(c2, c1, c0).into_iter().find(|&r| r > 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsPolicy {
    /// Set both effective ranges equal to the well range and take a from the
    /// closed-form scattering length (the configuration of the reference
    /// tables).
    UseRangeR,
    /// Extract (a, effective range) per kind by least squares on the exact
    /// samples inside the window.
    UseFitted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSample {
    pub kk: f64,
    pub exact: f64,
    pub approx: f64,
}

/// Deviation statistics of one expansion kind against the exact function.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub kind: ExpansionKind,
    pub max_abs_dev: f64,
    pub mean_abs_dev: f64,
    pub window: (f64, f64),
    pub samples: Vec<ErrorSample>,
    /// Sample points excluded because the exact function has a pole there.
    pub n_excluded: usize,
}

/// Flag threshold for a pole of the exact k cot delta inside the window.
const COT_POLE_GUARD: f64 = 1e-9;

/// Samples the exact square-well effective-range function and each kind's
/// expansion on `n` uniform k^2 points and reports absolute deviations.
///
/// Sample points where the exact function of the kind's role diverges
/// (tan delta / k crossing zero for the cot family, isolated poles of the
/// closed form) are excluded from the statistics and counted.
pub fn compare_expansions(
    well: &SquareWell,
    kinds: &[ExpansionKind],
    policy: ParamsPolicy,
    window: (f64, f64),
    n: usize,
) -> Result<Vec<ErrorReport>> {
    let (lo, hi) = window;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("comparison needs n >= 2, got {n}")));
    }
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "window must satisfy 0 <= lo < hi, got ({lo}, {hi})"
        )));
    }
    let beta = well.beta();
    if !(hi < beta * beta) {
        return Err(Error::InvalidParameter(format!(
            "window top {hi} is outside the low-energy validity k^2 < beta^2 = {}",
            beta * beta
        )));
    }
    let a = well.scattering_length()?;
    let range = well.range();

    let kk_at: Vec<f64> = (0..n).map(|j| lo + (hi - lo) * j as f64 / (n - 1) as f64).collect();
    let exact_t: Vec<Option<f64>> = kk_at
        .iter()
        .map(|&kk| well.tan_delta_over_k(kk.sqrt()).ok())
        .collect();

    let mut reports = Vec::with_capacity(kinds.len());
    for &kind in kinds {
        let params = match policy {
            ParamsPolicy::UseRangeR => ErParams { a, r0: range },
            ParamsPolicy::UseFitted => {
                let records: Vec<PhaseRecord> = kk_at
                    .iter()
                    .zip(&exact_t)
                    .filter_map(|(&kk, t)| t.map(|t| PhaseRecord::from_tan_delta_over_k(kk.sqrt(), t)))
                    .collect();
                fit_effective_range(&records, kind, window)?.params
            }
        };
        let mut samples = Vec::with_capacity(n);
        let mut excluded = 0usize;
        for (&kk, t) in kk_at.iter().zip(&exact_t) {
            let k = kk.sqrt();
            let t = match t {
                Some(t) => *t,
                None => {
                    excluded += 1;
                    continue;
                }
            };
            let exact = match kind.value_role() {
                ValueRole::TanDeltaOverK => t,
                ValueRole::KCotDelta => {
                    if t.abs() < COT_POLE_GUARD * range {
                        excluded += 1;
                        continue;
                    }
                    1.0 / t
                }
                ValueRole::MinusDeltaOverK => -(k * t).atan() / k,
            };
            let approx = eval_expansion(kind, &params, k)?;
            samples.push(ErrorSample { kk, exact, approx });
        }
        if samples.is_empty() {
            return Err(Error::InsufficientRecords { needed: 1, found: 0 });
        }
        let devs: Vec<f64> = samples.iter().map(|s| (s.exact - s.approx).abs()).collect();
        let max_abs_dev = devs.iter().cloned().fold(0.0, f64::max);
        let mean_abs_dev = devs.iter().sum::<f64>() / devs.len() as f64;
        reports.push(ErrorReport { kind, max_abs_dev, mean_abs_dev, window, samples, n_excluded: excluded });
    }
    Ok(reports)
}

/// Exact-phase records on a uniform k^2 grid, the standard input for fits
/// and the reference tables.
pub fn exact_records(well: &SquareWell, window: (f64, f64), n: usize) -> Result<Vec<PhaseRecord>> {
    let (lo, hi) = window;
    if n < 2 || !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "record grid needs n >= 2 and 0 < lo < hi, got n={n}, ({lo}, {hi})"
        )));
    }
    (0..n)
        .map(|j| {
            let kk = lo + (hi - lo) * j as f64 / (n - 1) as f64;
            well.phase_record(kk.sqrt())
        })
        .collect()
}
