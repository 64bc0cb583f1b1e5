//! The low-energy expansions, each an explicit polynomial truncated at k^2.
//!
//! Two families share the parameters (a, r0):
//!
//! * k cot(delta) kinds, suited to |a| > R:
//!   - `TextbookLargeA` (er1):   -1/a + (r0/2) k^2
//!   - `LowestLarge` (er19):     -1/a + (R/2) k^2, R playing r0
//!   - `ImprovedLargeA` (er24):  -1/a + [r0/2 - r0^3/(6a^2) - 2 r0^2/(pi^2 a)] k^2
//! * tan(delta)/k kinds, suited to |a| < R (effective range written r~0):
//!   - `ReciprocalSmallA` (er22): -a + (r0^3/6) k^2
//!   - `LowestSmall` (er18):      -a + (R^3/6) k^2, R playing r0
//!   - `ImprovedSmallA` (er23):   -a + [r0^3/6 - a^2 r0/2] k^2
//!   - `InverseOfTextbook` (inv4): -a - (a^2 r0/2) k^2, the k^2-truncated
//!     reciprocal of er1
//!
//! plus `KetterleParam` (er2), which parametrizes -delta/k directly:
//! a - [a^3/3 - a^2 r0/2] k^2.
//!
//! No k^4 coefficient is modeled anywhere.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionKind {
    TextbookLargeA,
    KetterleParam,
    LowestSmall,
    LowestLarge,
    ReciprocalSmallA,
    ImprovedSmallA,
    ImprovedLargeA,
    InverseOfTextbook,
}

/// Which function of the phase shift a kind evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueRole {
    TanDeltaOverK,
    KCotDelta,
    MinusDeltaOverK,
}

/// Scattering length plus one range-like parameter.
///
/// For the large-a kinds `r0` is the textbook effective range (any real,
/// it is a fit parameter there); for the small-a kinds it is the modified
/// effective range and must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErParams {
    pub a: f64,
    pub r0: f64,
}

impl ExpansionKind {
    pub const ALL: [ExpansionKind; 8] = [
        ExpansionKind::TextbookLargeA,
        ExpansionKind::KetterleParam,
        ExpansionKind::LowestSmall,
        ExpansionKind::LowestLarge,
        ExpansionKind::ReciprocalSmallA,
        ExpansionKind::ImprovedSmallA,
        ExpansionKind::ImprovedLargeA,
        ExpansionKind::InverseOfTextbook,
    ];

    pub fn value_role(self) -> ValueRole {
        match self {
            Self::TextbookLargeA | Self::LowestLarge | Self::ImprovedLargeA => ValueRole::KCotDelta,
            Self::ReciprocalSmallA | Self::ImprovedSmallA | Self::LowestSmall | Self::InverseOfTextbook => {
                ValueRole::TanDeltaOverK
            }
            Self::KetterleParam => ValueRole::MinusDeltaOverK,
        }
    }

    /// Stable CLI token for the kind.
    pub fn token(self) -> &'static str {
        match self {
            Self::TextbookLargeA => "er1",
            Self::KetterleParam => "er2",
            Self::LowestSmall => "er18",
            Self::LowestLarge => "er19",
            Self::ReciprocalSmallA => "er22",
            Self::ImprovedSmallA => "er23",
            Self::ImprovedLargeA => "er24",
            Self::InverseOfTextbook => "inv4",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.token() == token)
    }

    /// (intercept, k^2 slope) of the kind at the given parameters.
    pub fn coefficients(self, p: &ErParams) -> Result<(f64, f64)> {
        let ErParams { a, r0 } = *p;
        let needs_positive_range = !matches!(self, Self::TextbookLargeA | Self::KetterleParam);
        if needs_positive_range && !(r0 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "{} needs a positive effective range, got {r0}",
                self.token()
            )));
        }
        match self {
            Self::TextbookLargeA | Self::LowestLarge => {
                if a == 0.0 {
                    return Err(Error::PoleAtZeroEnergy);
                }
                Ok((-1.0 / a, r0 / 2.0))
            }
            Self::ImprovedLargeA => {
                if a == 0.0 {
                    return Err(Error::PoleAtZeroEnergy);
                }
                let pi2 = std::f64::consts::PI * std::f64::consts::PI;
                Ok((-1.0 / a, r0 / 2.0 - r0.powi(3) / (6.0 * a * a) - 2.0 * r0 * r0 / (pi2 * a)))
            }
            Self::ReciprocalSmallA | Self::LowestSmall => Ok((-a, r0.powi(3) / 6.0)),
            Self::ImprovedSmallA => Ok((-a, r0.powi(3) / 6.0 - a * a * r0 / 2.0)),
            Self::InverseOfTextbook => Ok((-a, -a * a * r0 / 2.0)),
            Self::KetterleParam => Ok((a, -(a.powi(3) / 3.0 - a * a * r0 / 2.0))),
        }
    }
}

/// Evaluates the kind's truncated polynomial at momentum k.
pub fn eval_expansion(kind: ExpansionKind, p: &ErParams, k: f64) -> Result<f64> {
    let (intercept, slope) = kind.coefficients(p)?;
    Ok(intercept + slope * k * k)
}

/// k^2-truncated reciprocal of the series f(k^2) = -a + b k^2:
/// 1/f = -1/a - (b/a^2) k^2 + O(k^4), returned as (intercept, slope).
pub fn reciprocal_coefficients(a: f64, b: f64) -> Result<(f64, f64)> {
    if a == 0.0 {
        return Err(Error::PoleAtZeroEnergy);
    }
    Ok((-1.0 / a, -b / (a * a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use ExpansionKind::*;

    #[test]
    fn trivial_values() {
        // direct arithmetic on the small-a form
        let v = eval_expansion(ReciprocalSmallA, &ErParams { a: 0.0, r0: 1.0 }, 0.2f64.sqrt()).unwrap();
        assert_abs_diff_eq!(v, 0.2 / 6.0, epsilon = 1e-15);
        // intercept of the textbook form
        let v = eval_expansion(TextbookLargeA, &ErParams { a: 2.54, r0: 1.0 }, 0.0).unwrap();
        assert_abs_diff_eq!(v, -1.0 / 2.54, epsilon = 1e-15);
        // the a^2 correction vanishes at a = 0
        let p = ErParams { a: 0.0, r0: 1.0 };
        for kk in [0.0f64, 0.1, 0.4] {
            let k = kk.sqrt();
            assert_eq!(
                eval_expansion(ImprovedSmallA, &p, k).unwrap(),
                eval_expansion(ReciprocalSmallA, &p, k).unwrap()
            );
        }
    }

    #[test]
    fn improved_large_a_point() {
        let p = ErParams { a: 2.54, r0: 1.0 };
        let v = eval_expansion(ImprovedLargeA, &p, 0.2f64.sqrt()).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let expect = -1.0 / 2.54 + (0.5 - 1.0 / (6.0 * 2.54 * 2.54) - 2.0 / (pi2 * 2.54)) * 0.2;
        assert_abs_diff_eq!(v, expect, epsilon = 1e-15);
    }

    #[test]
    fn intercepts_are_exact_for_all_kinds() {
        let p = ErParams { a: 0.37, r0: 1.4 };
        for kind in ExpansionKind::ALL {
            let at0 = eval_expansion(kind, &p, 0.0).unwrap();
            let expect = match kind.value_role() {
                ValueRole::TanDeltaOverK => -p.a,
                ValueRole::KCotDelta => -1.0 / p.a,
                ValueRole::MinusDeltaOverK => p.a,
            };
            assert_eq!(at0, expect, "{kind:?}");
        }
    }

    #[test]
    fn zero_a_pole_for_kcot_kinds() {
        let p = ErParams { a: 0.0, r0: 1.0 };
        for kind in [TextbookLargeA, LowestLarge, ImprovedLargeA] {
            assert!(matches!(
                eval_expansion(kind, &p, 0.1),
                Err(Error::PoleAtZeroEnergy)
            ));
        }
    }

    #[test]
    fn improved_large_a_coefficient_reduces_to_textbook() {
        // |a|/r0 -> inf: the k^2 coefficient tends to r0/2
        let r0 = 1.0;
        let p = ErParams { a: 1e6, r0 };
        let (_, slope) = ImprovedLargeA.coefficients(&p).unwrap();
        assert!((slope - r0 / 2.0).abs() < 1e-5 * (r0 / 2.0));
    }

    #[test]
    fn recovers_textbook_from_reciprocal() {
        // b = -a^2 r0/2 maps back to (-1/a, r0/2) exactly
        let (a, r0) = (0.7, 1.3);
        let (ic, sl) = reciprocal_coefficients(a, -a * a * r0 / 2.0).unwrap();
        assert_abs_diff_eq!(ic, -1.0 / a, epsilon = 1e-15);
        assert_abs_diff_eq!(sl, r0 / 2.0, epsilon = 1e-15);
        // constant series
        assert_eq!(reciprocal_coefficients(1.0, 0.0).unwrap(), (-1.0, 0.0));
        assert!(matches!(reciprocal_coefficients(0.0, 1.0), Err(Error::PoleAtZeroEnergy)));
    }

    #[test]
    fn truncation_order_against_exact_square_well() {
        // with the true (a, coefficient) the residual is O(k^4): quartering
        // k^2 cuts it ~16x
        let well = crate::squarewell::SquareWell::new(1.0, 4.4).unwrap();
        let c = well.taylor_coefficients().unwrap();
        let resid_tan = |kk: f64| {
            let k = kk.sqrt();
            let exact = well.tan_delta_over_k(k).unwrap();
            (exact - (-c.a + c.b_small * kk)).abs()
        };
        let ratio = resid_tan(0.2) / resid_tan(0.05);
        assert!((10.0..22.0).contains(&ratio), "tan family ratio={ratio}");

        let c_large = c.c_large.unwrap();
        let resid_cot = |kk: f64| {
            let k = kk.sqrt();
            let exact = 1.0 / well.tan_delta_over_k(k).unwrap();
            (exact - (-1.0 / c.a + c_large * kk)).abs()
        };
        let ratio = resid_cot(0.2) / resid_cot(0.05);
        assert!((10.0..22.0).contains(&ratio), "cot family ratio={ratio}");
    }

    #[test]
    fn ketterle_matches_exact_minus_delta_over_k_to_k4() {
        // with r0 equal to the well's full effective range, halving k^2
        // shrinks the residual ~4x
        let well = crate::squarewell::SquareWell::new(1.0, 4.4).unwrap();
        let c = well.taylor_coefficients().unwrap();
        let p = ErParams { a: c.a, r0: c.r0_full.unwrap() };
        let resid = |kk: f64| {
            let k = kk.sqrt();
            let exact = -well.phase_shift(k).unwrap() / k;
            (exact - eval_expansion(KetterleParam, &p, k).unwrap()).abs()
        };
        let r1 = resid(0.1) / resid(0.05);
        let r2 = resid(0.05) / resid(0.025);
        assert!((3.0..5.5).contains(&r1), "r1={r1}");
        assert!((3.0..5.5).contains(&r2), "r2={r2}");
    }

    proptest! {
        // applying the truncated reciprocal twice returns the original series
        #[test]
        fn reciprocal_round_trip(a in prop_oneof![1e-6f64..10.0, -10.0f64..-1e-6], b in -5.0f64..5.0) {
            let (ic, sl) = reciprocal_coefficients(a, b).unwrap();
            let (a2, b2) = (-ic, sl);
            let (ic2, sl2) = reciprocal_coefficients(a2, b2).unwrap();
            prop_assert!(((-ic2) - a).abs() <= 1e-12 * a.abs());
            prop_assert!((sl2 - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}
