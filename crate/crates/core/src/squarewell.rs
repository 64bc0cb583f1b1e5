//! Closed-form S-wave results for the attractive square well of range R and
//! depth beta^2: scattering length, tan(delta)/k at any momentum, the interior
//! wavefunction, and the k^2 Taylor coefficients of both effective-range
//! functions.
//!
//! Evaluation is kept pole-safe: expressions are written with sin/cos products
//! instead of raw tangents, so crossings of tan(gamma R) or tan(kR) poles cost
//! nothing.  Genuine singularities (zero-energy bound states at
//! beta R = (n + 1/2) pi, isolated zeros of the denominator) are reported as
//! errors.

use crate::error::{Error, Result};
use crate::potentials::Potential;
use crate::solver::PhaseRecord;

/// Guard width for genuine pole detection, in the natural scale of each
/// denominator.  Tight enough not to mask resonances that the caller asked
/// to see.
pub(crate) const EPS_POLE: f64 = 1e-12;

/// Below k = 1e-8/R the exact expression is replaced by its analytic
/// zero-energy limit -a to avoid 0/0 noise.
const K_ANALYTIC_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWell {
    range: f64,
    beta: f64,
}

/// k^2 Taylor data of the two effective-range functions for one well.
///
/// `b_small` multiplies k^2 in tan(delta)/k; `c_large` multiplies k^2 in
/// k cot(delta) and only exists when the scattering length is nonzero
/// (1/a terms).  `r0_full` = 2 c_large is the full effective range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquareWellCoefficients {
    pub a: f64,
    pub b_small: f64,
    pub c_large: Option<f64>,
    pub r0_full: Option<f64>,
}

impl SquareWell {
    pub fn new(range: f64, beta: f64) -> Result<Self> {
        match Potential::square_well(range, beta)? {
            Potential::SquareWell { range, beta } => Ok(Self { range, beta }),
            _ => unreachable!(),
        }
    }

    pub fn range(&self) -> f64 {
        self.range
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn potential(&self) -> Potential {
        Potential::SquareWell { range: self.range, beta: self.beta }
    }

    /// Distance from beta*R to the nearest odd multiple of pi/2.
    fn pole_distance(&self) -> (f64, f64) {
        let x = self.beta * self.range;
        let m = (x / std::f64::consts::PI - 0.5).round();
        let pole = (m + 0.5) * std::f64::consts::PI;
        ((x - pole).abs(), pole)
    }

    /// Zero-energy scattering length a = R - tan(beta R)/beta.
    ///
    /// beta = 0 returns the analytic limit 0.  Reports
    /// [`Error::ResonancePole`] when beta R sits within the pole guard of an
    /// odd multiple of pi/2, where a diverges.
    pub fn scattering_length(&self) -> Result<f64> {
        if self.beta == 0.0 {
            return Ok(0.0);
        }
        let x = self.beta * self.range;
        let (dist, _) = self.pole_distance();
        if dist < EPS_POLE * x.max(1.0) {
            return Err(Error::ResonancePole { beta_r: x });
        }
        Ok(self.range - x.tan() / self.beta)
    }

    /// Exact tan(delta)/k, written with sin/cos products so tangent poles of
    /// the textbook form cancel instead of overflowing:
    ///
    ///   (k sin(gR) cos(kR) - g sin(kR) cos(gR)) /
    ///   (k^2 sin(gR) sin(kR) + g k cos(gR) cos(kR)),   g = sqrt(beta^2 + k^2)
    ///
    /// For k below 1e-8/R the analytic limit -a is returned.
    pub fn tan_delta_over_k(&self, k: f64) -> Result<f64> {
        if !(k >= 0.0) {
            return Err(Error::InvalidParameter(format!("momentum must be nonnegative, got {k}")));
        }
        if k < K_ANALYTIC_LIMIT / self.range {
            return self.scattering_length().map(|a| -a);
        }
        let r = self.range;
        let gamma = (self.beta * self.beta + k * k).sqrt();
        let (sg, cg) = (gamma * r).sin_cos();
        let (sk, ck) = (k * r).sin_cos();
        let num = k * sg * ck - gamma * sk * cg;
        let den = k * k * sg * sk + gamma * k * cg * ck;
        let scale = k * k + gamma * k;
        if den.abs() < EPS_POLE * scale {
            return Err(Error::IsolatedPole { k });
        }
        Ok(num / den)
    }

    /// Principal-branch phase shift delta = atan(k * tan(delta)/k).
    pub fn phase_shift(&self, k: f64) -> Result<f64> {
        Ok((k * self.tan_delta_over_k(k)?).atan())
    }

    /// Interior wavefunction u(r) = cos(kR + delta) sin(gamma r) / (gamma cos(gamma R))
    /// for 0 <= r <= R, normalized so the exterior continuation is
    /// sin(kr + delta)/k.  `delta` is taken as given; pass the phase from
    /// [`tan_delta_over_k`](Self::tan_delta_over_k) to get the matched solution.
    pub fn interior_wavefunction(&self, k: f64, delta: f64, r: f64) -> Result<f64> {
        if !(0.0..=self.range).contains(&r) {
            return Err(Error::InvalidParameter(format!(
                "interior form is valid on [0, R]; got r = {r}"
            )));
        }
        let gamma = (self.beta * self.beta + k * k).sqrt();
        let cg = (gamma * self.range).cos();
        if cg.abs() < EPS_POLE {
            return Err(Error::DegenerateNormalization { value: cg.abs() });
        }
        Ok((k * self.range + delta).cos() * (gamma * r).sin() / (gamma * cg))
    }

    /// k^2 Taylor coefficients of both effective-range functions:
    ///
    ///   b_small = a/(2 beta^2) + R^3/6 - a^2 R / 2
    ///   c_large = R/2 - R^3/(6 a^2) - 1/(2 a beta^2)       (a != 0)
    ///
    /// and the reciprocal-series relation c_large = -b_small / a^2.
    pub fn taylor_coefficients(&self) -> Result<SquareWellCoefficients> {
        if self.beta <= 0.0 {
            return Err(Error::InvalidParameter(
                "Taylor coefficients need beta > 0".into(),
            ));
        }
        let a = self.scattering_length()?;
        let r = self.range;
        let b2 = self.beta * self.beta;
        let b_small = a / (2.0 * b2) + r.powi(3) / 6.0 - a * a * r / 2.0;
        if a.abs() < f64::EPSILON * r {
            // k cot delta has its 1/a pole at zero energy; only the
            // tan(delta)/k coefficient survives.
            return Ok(SquareWellCoefficients { a, b_small, c_large: None, r0_full: None });
        }
        let c_large = r / 2.0 - r.powi(3) / (6.0 * a * a) - 1.0 / (2.0 * a * b2);
        Ok(SquareWellCoefficients { a, b_small, c_large: Some(c_large), r0_full: Some(2.0 * c_large) })
    }

    /// One momentum point packaged as a [`PhaseRecord`], with
    /// tan_delta_over_k taken from the closed form.
    pub fn phase_record(&self, k: f64) -> Result<PhaseRecord> {
        if !(k > 0.0) {
            return Err(Error::InvalidParameter(format!("momentum must be positive, got {k}")));
        }
        Ok(PhaseRecord::from_tan_delta_over_k(k, self.tan_delta_over_k(k)?))
    }
}
