use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Yukawa-type potentials diverge like 1/r at the origin.
    #[error("potential is singular at the origin; evaluate at r > 0")]
    SingularOrigin,

    /// beta*R sits on an odd multiple of pi/2, where the scattering length
    /// diverges and a bound state crosses threshold.
    #[error("scattering length diverges at beta*R = {beta_r} (zero-energy bound state)")]
    ResonancePole { beta_r: f64 },

    /// The closed-form tan(delta)/k denominator vanishes at this momentum.
    #[error("isolated pole of tan(delta)/k at k = {k}")]
    IsolatedPole { k: f64 },

    /// cos(gamma*R) ~ 0: the interior wavefunction normalization degenerates.
    #[error("interior normalization degenerates: |cos(gamma*R)| = {value:e}")]
    DegenerateNormalization { value: f64 },

    /// 1/a terms diverge when the scattering length vanishes.
    #[error("expansion has a pole at zero energy: a = 0")]
    PoleAtZeroEnergy,

    /// delta ~ +-pi/2: the free comparison function sin(kr)/(k cos delta)
    /// degenerates and the integral identity is skipped.
    #[error("phase shift {delta} is too close to +-pi/2; identity evaluation skipped")]
    DegeneratePhase { delta: f64 },

    #[error("quadrature did not reach tolerance {tol:e} (error estimate {estimate:e})")]
    QuadratureTolerance { tol: f64, estimate: f64 },

    /// Auto-matching marched past its cap without the tail dropping below
    /// threshold; the potential does not look short-range.
    #[error("potential tail stayed above threshold out to r = {r_max}; not short-range")]
    NotShortRange { r_max: f64 },

    #[error(
        "no sign change of a(beta*R) - target in bracket [{lo}, {hi}] for target {target} \
         (nearest tan pole at beta*R = {nearest_pole}, nearest zero of a at beta*R = {nearest_zero})"
    )]
    Bracketing {
        lo: f64,
        hi: f64,
        target: f64,
        nearest_pole: f64,
        nearest_zero: f64,
    },

    #[error("need at least {needed} usable records in the fit window, found {found}")]
    InsufficientRecords { needed: usize, found: usize },

    /// The coefficient equation mapping a fitted slope back to an effective
    /// range has no admissible positive real root.
    #[error("no positive real effective range reproduces fitted slope {slope}")]
    FitInversion { slope: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
