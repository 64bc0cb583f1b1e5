//! Short-range attractive radial potentials in units hbar = 2m = 1.
//!
//! Every variant is written V(r) = -V0 * f(r/R) with a nonnegative profile f,
//! so energies carry units of inverse length squared and the potential is
//! attractive by construction.  Profiles:
//!
//! * square well:  f = 1 for r < R, 0 beyond, with V0 = beta^2
//! * gaussian:     f(x) = exp(-x^2)
//! * exponential:  f(x) = exp(-x)
//! * yukawa:       V(r) = -V0 exp(-r/R)/r  (strength carries 1/length)
//!
//! All tails vanish faster than 1/r^3, which is what the phase-shift
//! machinery downstream relies on.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    SquareWell { range: f64, beta: f64 },
    Gaussian { strength: f64, width: f64 },
    Exponential { strength: f64, scale: f64 },
    Yukawa { strength: f64, scale: f64 },
}

impl Potential {
    pub fn square_well(range: f64, beta: f64) -> Result<Self> {
        if !(range > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "square well range must be positive, got {range}"
            )));
        }
        if !(beta >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "square well depth parameter beta must be nonnegative, got {beta}"
            )));
        }
        Ok(Self::SquareWell { range, beta })
    }

    pub fn gaussian(strength: f64, width: f64) -> Result<Self> {
        Self::check(strength, width)?;
        Ok(Self::Gaussian { strength, width })
    }

    pub fn exponential(strength: f64, scale: f64) -> Result<Self> {
        Self::check(strength, scale)?;
        Ok(Self::Exponential { strength, scale })
    }

    pub fn yukawa(strength: f64, scale: f64) -> Result<Self> {
        Self::check(strength, scale)?;
        Ok(Self::Yukawa { strength, scale })
    }

    fn check(strength: f64, scale: f64) -> Result<()> {
        if !(scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "potential length scale must be positive, got {scale}"
            )));
        }
        if !(strength >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "well strength must be nonnegative, got {strength}"
            )));
        }
        Ok(())
    }

    /// Characteristic length scale R of the variant.
    pub fn range(&self) -> f64 {
        match *self {
            Self::SquareWell { range, .. } => range,
            Self::Gaussian { width, .. } => width,
            Self::Exponential { scale, .. } | Self::Yukawa { scale, .. } => scale,
        }
    }

    /// True when V(r) diverges as r -> 0 (the Yukawa 1/r core).
    pub fn is_singular_at_origin(&self) -> bool {
        matches!(self, Self::Yukawa { .. })
    }

    /// Evaluates V(r) for r >= 0.
    ///
    /// The square-well edge is right-continuous: V(R) = 0.  The Yukawa core
    /// reports [`Error::SingularOrigin`] at r = 0 instead of returning an
    /// infinity.
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "radial coordinate must be nonnegative, got {r}"
            )));
        }
        if r == 0.0 && self.is_singular_at_origin() {
            return Err(Error::SingularOrigin);
        }
        Ok(self.value_unchecked(r))
    }

    /// Same as [`value`](Self::value) but without the domain checks; callers
    /// guarantee r > 0 for singular cores.
    pub(crate) fn value_unchecked(&self, r: f64) -> f64 {
        match *self {
            Self::SquareWell { range, beta } => {
                if r < range {
                    -beta * beta
                } else {
                    0.0
                }
            }
            Self::Gaussian { strength, width } => {
                let x = r / width;
                -strength * (-x * x).exp()
            }
            Self::Exponential { strength, scale } => -strength * (-r / scale).exp(),
            Self::Yukawa { strength, scale } => -strength * (-r / scale).exp() / r,
        }
    }

    /// V evaluated as the limit from below in r.  Differs from
    /// [`value`](Self::value) only at jump discontinuities, i.e. the
    /// square-well edge, where the interior value -beta^2 is returned.
    /// The radial integrator uses this for its final grid node so the
    /// interior recurrence never mixes in the exterior value.
    pub(crate) fn interior_value(&self, r: f64) -> f64 {
        match *self {
            Self::SquareWell { range, beta } => {
                if r <= range {
                    -beta * beta
                } else {
                    0.0
                }
            }
            _ => self.value_unchecked(r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_well_is_exact_inside_and_outside() {
        let v = Potential::square_well(1.0, 4.4).unwrap();
        assert_eq!(v.value(0.5).unwrap(), -19.360000000000003);
        assert_eq!(v.value(0.0).unwrap(), -4.4 * 4.4);
        assert_eq!(v.value(1.0).unwrap(), 0.0);
        assert_eq!(v.value(1.5).unwrap(), 0.0);
        assert_eq!(v.value(0.999_999).unwrap(), -4.4 * 4.4);
        // left limit used by the solver at the edge node
        assert_eq!(v.interior_value(1.0), -4.4 * 4.4);
    }

    #[test]
    fn gaussian_closed_form() {
        let v = Potential::gaussian(5.0, 1.0).unwrap();
        let got = v.value(1.0).unwrap();
        assert!((got - (-5.0 * (-1.0f64).exp())).abs() < 1e-15);
        assert!((got - (-1.8393972058572117)).abs() < 1e-12);
    }

    #[test]
    fn yukawa_singular_origin_is_reported() {
        let v = Potential::yukawa(1.0, 1.0).unwrap();
        assert!(matches!(v.value(0.0), Err(Error::SingularOrigin)));
        assert!(v.value(1e-12).unwrap().is_finite());
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(Potential::square_well(0.0, 1.0).is_err());
        assert!(Potential::square_well(1.0, -0.1).is_err());
        assert!(Potential::gaussian(1.0, -1.0).is_err());
        assert!(Potential::yukawa(-1.0, 1.0).is_err());
        let v = Potential::gaussian(1.0, 1.0).unwrap();
        assert!(v.value(-0.5).is_err());
    }

    fn any_potential() -> impl Strategy<Value = Potential> {
        let s = 0.0f64..30.0;
        let r = 0.1f64..5.0;
        prop_oneof![
            (r.clone(), 0.0f64..6.0).prop_map(|(range, beta)| Potential::SquareWell { range, beta }),
            (s.clone(), r.clone()).prop_map(|(strength, width)| Potential::Gaussian { strength, width }),
            (s.clone(), r.clone()).prop_map(|(strength, scale)| Potential::Exponential { strength, scale }),
            (s, r).prop_map(|(strength, scale)| Potential::Yukawa { strength, scale }),
        ]
    }

    proptest! {
        // attractive, bounded below away from the origin, and short-range:
        // |V| falls below any fixed threshold once r is a few ranges out
        #[test]
        fn bounded_below_and_short_range(pot in any_potential(), r in 1e-6f64..20.0) {
            let v = pot.value(r).unwrap();
            prop_assert!(v <= 0.0);
            let floor = match pot {
                Potential::SquareWell { beta, .. } => -beta * beta - 1e-12,
                Potential::Gaussian { strength, .. } | Potential::Exponential { strength, .. } =>
                    -strength - 1e-12,
                Potential::Yukawa { strength, scale } => -strength / (1e-6) * scale.max(1.0),
            };
            prop_assert!(v >= floor);
            // r^3 * V(r) -> 0: check at a far point
            let far = 60.0 * pot.range();
            let tail = pot.value(far).unwrap().abs() * far.powi(3);
            prop_assert!(tail < 1e-6);
        }
    }
}
