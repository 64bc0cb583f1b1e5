//! Numerical solution of the S-wave radial equation
//! u'' + [k^2 - V(r)] u = 0, u(0) = 0, with phase-shift extraction by
//! logarithmic-derivative matching, plus the integral identity
//! tan(delta)/k = -int u v V dr as an independent cross-check of the whole
//! derivation chain.
//!
//! The integrator is the three-point Numerov recurrence (fourth order
//! accurate), carried in summed form: the first difference of the working
//! variable is updated and accumulated instead of recomputing it from
//! near-equal neighbors.  That keeps the roundoff floor near eps*sqrt(n)
//! even for tails that need a few hundred thousand steps, where the naive
//! recurrence loses five digits to cancellation.

use crate::error::{Error, Result};
use crate::potentials::Potential;
use crate::quadrature::integrate_adaptive;
use crate::squarewell::SquareWell;

/// Matching-radius policy: `Auto` stops at the well edge for the square well
/// and otherwise marches outward until |V| drops below
/// `tail_epsilon * max(k^2, 1/R^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatchRadius {
    Auto,
    Explicit(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Grid spacing; the actual step is nudged so the grid lands exactly on
    /// the matching radius.
    pub step: f64,
    pub r_match: MatchRadius,
    /// Tail threshold for auto-matching, relative to max(k^2, 1/R^2).
    pub tail_epsilon: f64,
    /// Absolute tolerance of the identity quadrature.
    pub quadrature_tol: f64,
}

impl SolverConfig {
    /// Defaults scaled to the potential: h = 1e-4 R, auto matching.
    pub fn for_potential(pot: &Potential) -> Self {
        Self {
            step: 1e-4 * pot.range(),
            r_match: MatchRadius::Auto,
            tail_epsilon: 1e-12,
            quadrature_tol: 1e-10,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {}", self.step)));
        }
        if let MatchRadius::Explicit(r) = self.r_match {
            if !(r > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "explicit matching radius must be positive, got {r}"
                )));
            }
        }
        if !(self.tail_epsilon > 0.0 && self.tail_epsilon <= 1e-6) {
            return Err(Error::InvalidParameter(format!(
                "tail_epsilon must lie in (0, 1e-6], got {}",
                self.tail_epsilon
            )));
        }
        if !(self.quadrature_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature_tol must be positive, got {}",
                self.quadrature_tol
            )));
        }
        Ok(())
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { step: 1e-4, r_match: MatchRadius::Auto, tail_epsilon: 1e-12, quadrature_tol: 1e-10 }
    }
}

/// One momentum point of scattering output.
///
/// `delta` is the principal value in (-pi/2, pi/2].  The two effective-range
/// functions are stored redundantly; their product is 1 whenever both are
/// finite.  Flags mark proximity to the poles of either function (delta near
/// +-pi/2 for tan, delta near 0 for cot), where the corresponding value blows
/// up and should be excluded from fits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRecord {
    pub k: f64,
    pub delta: f64,
    pub tan_delta_over_k: f64,
    pub k_cot_delta: f64,
    pub pole_near_kcot: bool,
    pub pole_near_tan: bool,
}

const FLAG_GUARD: f64 = 1e-8;

impl PhaseRecord {
    pub fn from_delta(k: f64, delta: f64) -> Self {
        let t = delta.tan();
        Self {
            k,
            delta,
            tan_delta_over_k: t / k,
            k_cot_delta: k / t,
            pole_near_kcot: delta.sin().abs() < FLAG_GUARD,
            pole_near_tan: delta.cos().abs() < FLAG_GUARD,
        }
    }

    pub fn from_tan_delta_over_k(k: f64, t: f64) -> Self {
        let delta = (k * t).atan();
        Self {
            k,
            delta,
            tan_delta_over_k: t,
            k_cot_delta: 1.0 / t,
            pole_near_kcot: delta.sin().abs() < FLAG_GUARD,
            pole_near_tan: delta.cos().abs() < FLAG_GUARD,
        }
    }

    /// k^2, the natural abscissa of every expansion in this crate.
    pub fn kk(&self) -> f64 {
        self.k * self.k
    }
}

/// Reduces a phase to the principal branch (-pi/2, pi/2].
pub(crate) fn principal_phase(d: f64) -> f64 {
    let mut d = d - std::f64::consts::PI * (d / std::f64::consts::PI).round();
    if d <= -std::f64::consts::FRAC_PI_2 {
        d += std::f64::consts::PI;
    }
    d
}

/// Radial solution sampled on a uniform grid r_i = r_start + i h.
struct RadialSolution {
    r_start: f64,
    h: f64,
    u: Vec<f64>,
    /// Carried first differences u_{i+1} - u_i of the last four steps,
    /// oldest first; these come out of the summed recurrence without the
    /// cancellation that differencing stored values would reintroduce.
    end_diffs: [f64; 4],
}

impl RadialSolution {
    fn r_match(&self) -> f64 {
        self.r_start + (self.u.len() - 1) as f64 * self.h
    }

    /// One-sided five-point endpoint derivative, fourth order, written in
    /// first differences so its roundoff stays at machine level instead of
    /// eps/h.
    fn endpoint_derivative(&self) -> f64 {
        let [d4, d3, d2, d1] = self.end_diffs;
        (25.0 * d1 - 23.0 * d2 + 13.0 * d3 - 3.0 * d4) / (12.0 * self.h)
    }

    /// Cubic Lagrange interpolation off the grid.
    fn eval(&self, r: f64) -> f64 {
        let n = self.u.len() - 1;
        let t = (r - self.r_start) / self.h;
        let i = (t.floor() as isize).clamp(1, n as isize - 2) as usize;
        let s = t - i as f64;
        let u = &self.u;
        -s * (s - 1.0) * (s - 2.0) / 6.0 * u[i - 1]
            + (s * s - 1.0) * (s - 2.0) / 2.0 * u[i]
            - s * (s + 1.0) * (s - 2.0) / 2.0 * u[i + 1]
            + s * (s * s - 1.0) / 6.0 * u[i + 2]
    }
}

fn resolve_r_match(pot: &Potential, k: f64, cfg: &SolverConfig) -> Result<f64> {
    match cfg.r_match {
        MatchRadius::Explicit(r) => Ok(r),
        MatchRadius::Auto => match *pot {
            // identically zero beyond the edge, so match right there
            Potential::SquareWell { range, .. } => Ok(range),
            _ => {
                let range = pot.range();
                let threshold = cfg.tail_epsilon * (k * k).max(1.0 / (range * range));
                let cap = 1000.0 * range;
                let mut r = range;
                while pot.value_unchecked(r).abs() >= threshold {
                    r += 0.05 * range;
                    if r > cap {
                        return Err(Error::NotShortRange { r_max: cap });
                    }
                }
                Ok(r)
            }
        },
    }
}

/// Numerov integration in summed (difference-carried) form.
///
/// Working variable y_i = (1 + h^2 g_i / 12) u_i with g = k^2 - V; the
/// update is d_i = d_{i-1} - h^2 g_i y_i / (1 + h^2 g_i / 12), y_{i+1} =
/// y_i + d_i.  Starting values: u(0) = 0, u(h) = h scale for regular
/// potentials; u(h) = h scale, u(2h) = 2h scale when the core is singular
/// at the origin (the first-step error there is O(h^2 log h) and is covered
/// by the grid-convergence tests).
fn integrate_radial(pot: &Potential, k: f64, step: f64, r_match: f64, start_scale: f64) -> Result<RadialSolution> {
    if !(start_scale > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "start scale must be positive, got {start_scale}"
        )));
    }
    let singular = pot.is_singular_at_origin();
    let r_start = if singular { step } else { 0.0 };
    let span = r_match - r_start;
    if !(span > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "matching radius {r_match} leaves no integration span"
        )));
    }
    let n = ((span / step - 1e-9).ceil() as usize).max(6);
    let h = span / n as f64;

    let r_at = |i: usize| if i == n { r_match } else { r_start + i as f64 * h };
    // h^2 g / 12 at every node; the final node takes the interior limit of V
    // so a jump at the matching radius (square-well edge) never leaks into
    // the interior recurrence.
    let mut f = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = if i == n { pot.interior_value(r_at(i)) } else { pot.value_unchecked(r_at(i)) };
        f.push(h * h * (k * k - v) / 12.0);
    }

    let (u0, u1) = if singular {
        (step * start_scale, 2.0 * step * start_scale)
    } else {
        (0.0, step * start_scale)
    };

    // Both running sums are Kahan-compensated: y accumulates n increments d,
    // and d accumulates n curvature kicks, so uncompensated rounding would
    // random-walk as eps*sqrt(n) and show up in the extracted phase once the
    // tail needs a few hundred thousand steps.
    let mut u = Vec::with_capacity(n + 1);
    let y0 = (1.0 + f[0]) * u0;
    let mut y = (1.0 + f[1]) * u1;
    let mut y_c = 0.0;
    let mut d = y - y0;
    let mut d_c = 0.0;
    let mut end_diffs = [0.0f64; 4];
    u.push(u0);
    u.push(u1);
    for i in 1..n {
        let kick = -12.0 * f[i] * y / (1.0 + f[i]);
        let dx = kick + d_c;
        let d_new = d + dx;
        d_c = dx - (d_new - d);
        d = d_new;
        let dy = d + y_c;
        let y_new = y + dy;
        y_c = dy - (y_new - y);
        if i >= n - 4 {
            // u_{i+1} - u_i from the carried difference d plus the drift of
            // the Numerov weight.  d is accurate relative to itself (the
            // kick sum is compensated), unlike any difference of stored
            // trajectory values, which would carry eps*|y| into a quantity
            // of size h*|u'| and get amplified by 1/h in the derivative.
            let du = d / (1.0 + f[i + 1])
                - y * (f[i + 1] - f[i]) / ((1.0 + f[i]) * (1.0 + f[i + 1]));
            end_diffs[i - (n - 4)] = du;
        }
        y = y_new;
        u.push(y / (1.0 + f[i + 1]));
    }
    Ok(RadialSolution { r_start, h, u, end_diffs })
}

/// Phase extraction at the matching radius via the two-argument arctangent
/// of (k u, u'), which stays well conditioned even when u has a node there.
fn extract_phase(k: f64, sol: &RadialSolution) -> (f64, bool) {
    let n = sol.u.len() - 1;
    let um = sol.u[n];
    let up = sol.endpoint_derivative();
    let amplitude = (k * um).hypot(up) / k;
    let node = um.abs() < 1e-9 * amplitude;
    let theta = (k * um).atan2(up);
    (principal_phase(theta - k * sol.r_match()), node)
}

fn solve_radial(pot: &Potential, k: f64, cfg: &SolverConfig, start_scale: f64) -> Result<(RadialSolution, f64)> {
    cfg.validate()?;
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("momentum must be positive, got {k}")));
    }
    let r_match = resolve_r_match(pot, k, cfg)?;
    let sol = integrate_radial(pot, k, cfg.step, r_match, start_scale)?;
    let (delta, node) = extract_phase(k, &sol);
    if !node {
        return Ok((sol, delta));
    }
    // node at the matching point: push the match five steps out and redo;
    // the atan2 extraction tolerates the near-node case either way
    let sol = integrate_radial(pot, k, cfg.step, r_match + 5.0 * sol.h, start_scale)?;
    let (delta, _) = extract_phase(k, &sol);
    Ok((sol, delta))
}

/// Integrates the radial equation for `pot` at momentum `k` and returns the
/// phase-shift record.  The result is independent of the (arbitrary)
/// starting normalization.
pub fn solve_phase(pot: &Potential, k: f64, cfg: &SolverConfig) -> Result<PhaseRecord> {
    solve_phase_scaled(pot, k, cfg, 1.0)
}

/// [`solve_phase`] with the starting slope scaled by `start_scale`; exposed
/// so normalization independence can be exercised directly.
pub fn solve_phase_scaled(pot: &Potential, k: f64, cfg: &SolverConfig, start_scale: f64) -> Result<PhaseRecord> {
    let (_, delta) = solve_radial(pot, k, cfg, start_scale)?;
    Ok(PhaseRecord::from_delta(k, delta))
}

/// Evaluates -int_0^inf u(r) v(r) V(r) dr with u normalized to the
/// asymptotic form sin(kr + delta)/k and v = sin(kr)/(k cos delta); the
/// result equals tan(delta)/k up to the quadrature tolerance.
///
/// For the square well the closed-form interior wavefunction is used, so the
/// check closes to the quadrature tolerance itself; for every other variant
/// the numerically integrated u is interpolated into the integrand.  The
/// tail beyond the matching radius is neglected (bounded by the tail
/// threshold).
pub fn integral_identity(pot: &Potential, k: f64, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    if !(k > 0.0) {
        return Err(Error::InvalidParameter(format!("momentum must be positive, got {k}")));
    }
    match *pot {
        Potential::SquareWell { range, beta } => {
            let well = SquareWell::new(range, beta)?;
            let t = well.tan_delta_over_k(k)?;
            let delta = (k * t).atan();
            let cos_d = delta.cos();
            if cos_d.abs() < FLAG_GUARD {
                return Err(Error::DegeneratePhase { delta });
            }
            let gamma = (beta * beta + k * k).sqrt();
            let cg = (gamma * range).cos();
            if cg.abs() < crate::squarewell::EPS_POLE {
                return Err(Error::DegenerateNormalization { value: cg.abs() });
            }
            let pref = (k * range + delta).cos() / (gamma * cg);
            let v0 = -beta * beta;
            let f = |r: f64| pref * (gamma * r).sin() * ((k * r).sin() / (k * cos_d)) * v0;
            let q = integrate_adaptive(&f, 0.0, range, cfg.quadrature_tol)?;
            Ok(-q.value)
        }
        _ => {
            let (sol, delta) = solve_radial(pot, k, cfg, 1.0)?;
            let cos_d = delta.cos();
            if cos_d.abs() < FLAG_GUARD {
                return Err(Error::DegeneratePhase { delta });
            }
            let rm = sol.r_match();
            let um = sol.u[sol.u.len() - 1];
            let up = sol.endpoint_derivative();
            let theta = k * rm + delta;
            // project (u, u') onto the asymptotic sinusoid to find the
            // rescaling that sends the exterior form to sin(kr+delta)/k
            let scale = 1.0 / (k * um * theta.sin() + up * theta.cos());
            let f = |r: f64| {
                sol.eval(r) * scale * ((k * r).sin() / (k * cos_d)) * pot.value_unchecked(r)
            };
            let q = integrate_adaptive(&f, sol.r_start, rm, cfg.quadrature_tol)?;
            Ok(-q.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg_for(pot: &Potential) -> SolverConfig {
        SolverConfig::for_potential(pot)
    }

    #[test]
    fn free_particle_has_zero_phase() {
        let pot = Potential::square_well(1.0, 0.0).unwrap();
        for k in [0.1, 0.5, 0.7] {
            let rec = solve_phase(&pot, k, &cfg_for(&pot)).unwrap();
            assert!(rec.delta.abs() < 1e-12, "k={k}: delta={}", rec.delta);
            // delta/k amplifies the phase noise floor at small k
            assert!(rec.tan_delta_over_k.abs() < 1e-11);
        }
    }

    #[test]
    fn square_well_matches_closed_form() {
        let well = SquareWell::new(1.0, 4.4934).unwrap();
        let pot = well.potential();
        let cfg = cfg_for(&pot);
        for kk in [0.1, 0.2, 0.3, 0.4, 0.5] {
            let k = f64::sqrt(kk);
            let rec = solve_phase(&pot, k, &cfg).unwrap();
            let exact = well.tan_delta_over_k(k).unwrap();
            assert!(
                (rec.tan_delta_over_k - exact).abs() < 1e-6,
                "kk={kk}: numeric={}, exact={}",
                rec.tan_delta_over_k,
                exact
            );
        }
    }

    #[test]
    fn normalization_independence() {
        let pot = Potential::gaussian(2.0, 1.0).unwrap();
        let cfg = cfg_for(&pot);
        let base = solve_phase_scaled(&pot, 0.4, &cfg, 1.0).unwrap();
        for scale in [1e-6, 0.3, 7.0, 1e8] {
            let rec = solve_phase_scaled(&pot, 0.4, &cfg, scale).unwrap();
            assert!(
                (rec.delta - base.delta).abs() < 1e-12,
                "scale={scale}: {} vs {}",
                rec.delta,
                base.delta
            );
        }
    }

    #[test]
    fn fourth_order_grid_convergence() {
        // truncation-dominated steps: halving h must shrink the phase error
        // by about 2^4
        let well = SquareWell::new(1.0, 4.4).unwrap();
        let pot = well.potential();
        let k = 0.3f64.sqrt();
        let exact = well.tan_delta_over_k(k).unwrap();
        let mut errs = Vec::new();
        for step in [4e-3, 2e-3] {
            let cfg = SolverConfig { step, ..cfg_for(&pot) };
            let rec = solve_phase(&pot, k, &cfg).unwrap();
            errs.push((rec.tan_delta_over_k - exact).abs());
        }
        let ratio = errs[0] / errs[1];
        assert!((10.0..26.0).contains(&ratio), "ratio={ratio}, errs={errs:?}");
    }

    #[test]
    fn weak_gaussian_agrees_with_born() {
        // first Born approximation: delta ~ -(1/k) int V sin^2(kr) dr
        let pot = Potential::gaussian(0.01, 1.0).unwrap();
        let k = 0.5;
        let born = -(1.0 / k)
            * integrate_adaptive(
                &|r: f64| pot.value_unchecked(r) * (k * r).sin().powi(2),
                0.0,
                40.0,
                1e-14,
            )
            .unwrap()
            .value;
        let rec = solve_phase(&pot, k, &cfg_for(&pot)).unwrap();
        assert!(
            (rec.delta - born).abs() < 0.05 * born.abs(),
            "delta={}, born={born}",
            rec.delta
        );
    }

    #[test]
    fn numerov_interior_matches_closed_form_shape() {
        // the integrated interior solution and the closed-form interior
        // wavefunction agree up to overall normalization
        let well = SquareWell::new(1.0, 4.4).unwrap();
        let pot = well.potential();
        let k = 0.1f64.sqrt();
        let sol = integrate_radial(&pot, k, 1e-4, 1.0, 1.0).unwrap();
        let delta = well.phase_shift(k).unwrap();
        let exact_mid = well.interior_wavefunction(k, delta, 0.5).unwrap();
        let exact_edge = well.interior_wavefunction(k, delta, 1.0).unwrap();
        let num_mid = sol.eval(0.5);
        let num_edge = *sol.u.last().unwrap();
        assert!(
            (num_mid / num_edge - exact_mid / exact_edge).abs() < 1e-10,
            "{} vs {}",
            num_mid / num_edge,
            exact_mid / exact_edge
        );
    }

    #[test]
    fn identity_closes_for_square_well() {
        let well = SquareWell::new(1.0, 4.4).unwrap();
        let pot = well.potential();
        let cfg = cfg_for(&pot);
        let k = 0.2f64.sqrt();
        let ident = integral_identity(&pot, k, &cfg).unwrap();
        let exact = well.tan_delta_over_k(k).unwrap();
        assert!(
            (ident - exact).abs() < 1e-8 * exact.abs().max(1.0),
            "ident={ident}, exact={exact}"
        );
    }

    #[test]
    fn identity_closes_for_exponential_self_consistently() {
        let pot = Potential::exponential(2.0, 1.0).unwrap();
        let cfg = cfg_for(&pot);
        let k = 0.3;
        let rec = solve_phase(&pot, k, &cfg).unwrap();
        let ident = integral_identity(&pot, k, &cfg).unwrap();
        assert!(
            (ident - rec.tan_delta_over_k).abs() < 1e-6,
            "ident={ident}, t={}",
            rec.tan_delta_over_k
        );
    }

    #[test]
    fn identity_vanishes_for_free_particle() {
        let pot = Potential::square_well(1.0, 0.0).unwrap();
        let ident = integral_identity(&pot, 0.3, &cfg_for(&pot)).unwrap();
        assert!(ident.abs() < 1e-12);
    }

    #[test]
    fn yukawa_solves_with_shifted_origin() {
        let pot = Potential::yukawa(1.0, 1.0).unwrap();
        let rec = solve_phase(&pot, 0.3f64.sqrt(), &cfg_for(&pot)).unwrap();
        assert!(rec.delta.is_finite());
        assert!(rec.delta != 0.0);
    }

    #[test]
    fn record_reciprocity_and_flags() {
        let rec = PhaseRecord::from_delta(0.4, 0.3);
        assert!((rec.tan_delta_over_k * rec.k_cot_delta - 1.0).abs() < 1e-12);
        assert!(!rec.pole_near_kcot && !rec.pole_near_tan);
        let rec = PhaseRecord::from_delta(0.4, 0.0);
        assert!(rec.pole_near_kcot);
        assert_eq!(rec.tan_delta_over_k, 0.0);
        let rec = PhaseRecord::from_delta(0.4, std::f64::consts::FRAC_PI_2);
        assert!(rec.pole_near_tan);
    }

    #[test]
    fn principal_phase_range() {
        for d in [-7.0, -1.6, -0.3, 0.0, 1.2, 1.6, 9.0] {
            let p = principal_phase(d);
            assert!(p > -std::f64::consts::FRAC_PI_2 && p <= std::f64::consts::FRAC_PI_2);
            // tan is pi-periodic so the reduction preserves it
            if (d - p).abs() > 1e-12 {
                assert_abs_diff_eq!(d.tan(), p.tan(), epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn config_validation() {
        let pot = Potential::gaussian(1.0, 1.0).unwrap();
        let bad = SolverConfig { step: 0.0, ..SolverConfig::default() };
        assert!(solve_phase(&pot, 0.3, &bad).is_err());
        let bad = SolverConfig { tail_epsilon: 1e-3, ..SolverConfig::default() };
        assert!(solve_phase(&pot, 0.3, &bad).is_err());
        let bad = SolverConfig { r_match: MatchRadius::Explicit(-1.0), ..SolverConfig::default() };
        assert!(solve_phase(&pot, 0.3, &bad).is_err());
        assert!(solve_phase(&pot, 0.0, &SolverConfig::default()).is_err());
    }
}
