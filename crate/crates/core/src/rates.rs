//! Rate and potential coefficients that drive the two-atom dynamics.
//!
//! Everything here is expressed in reduced units: rates in multiples of
//! Γ₀, the static single-atom spontaneous emission rate in vacuum, and
//! times in 1/Γ₀. Physical units only enter through
//! [`physical_to_reduced`].

use serde::Serialize;

use crate::error::{require_finite, Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;

/// Largest acceleration parameter α = a/(πω₀c) accepted by the
/// first-order acceleration correction.
pub const MAX_ALPHA: f64 = 0.2;

/// Below this separation the modulation ratio uses the truncated Dicke
/// series 1 − R²/10 + R⁴/280.
pub const DICKE_SERIES_CUTOFF: f64 = 1e-3;

/// Below this separation (and above [`DICKE_SERIES_CUTOFF`]) the
/// modulation ratio is summed from its full Taylor series; the closed
/// form loses ~3ε/R² relative accuracy to cancellation.
pub const TAYLOR_CUTOFF: f64 = 0.5;

/// Taylor coefficients of 3(sin R − R cos R)/R³ in powers of R²:
/// (−1)ᵏ·3(2k+2)/(2k+3)!.
const MODULATION_TAYLOR: [f64; 9] = [
    1.0,
    -1.0 / 10.0,
    1.0 / 280.0,
    -1.0 / 15_120.0,
    1.0 / 1_330_560.0,
    -1.0 / 172_972_800.0,
    1.0 / 31_135_104_000.0,
    -1.0 / 7_410_154_752_000.0,
    1.0 / 2_252_687_044_608_000.0,
];

/// Dimensionless interatomic separation R = r·ω₀/c.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ReducedSeparation(f64);

impl ReducedSeparation {
    pub fn new(r: f64) -> Result<Self> {
        require_finite("R", r)?;
        if r < 0.0 {
            return Err(Error::Domain(format!("R must be non-negative, got {r}")));
        }
        Ok(Self(r))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Converts a physical separation (meters) and transition frequency (Hz)
/// to the reduced separation R = r·ω₀/c.
pub fn physical_to_reduced(r: f64, omega0: f64) -> Result<ReducedSeparation> {
    require_finite("r", r)?;
    require_finite("omega0", omega0)?;
    if r < 0.0 {
        return Err(Error::Domain(format!("separation must be non-negative, got {r}")));
    }
    if omega0 <= 0.0 {
        return Err(Error::Domain(format!("omega0 must be positive, got {omega0}")));
    }
    ReducedSeparation::new(r * omega0 / SPEED_OF_LIGHT)
}

/// Γ¹²_↓/Γ¹¹_↓ = 3(sin R − R cos R)/R³ for two parallel dipoles along
/// their separation in free space. Equals 1 at R = 0.
pub fn free_space_modulation_ratio(r: ReducedSeparation) -> f64 {
    let r = r.value();
    if r < DICKE_SERIES_CUTOFF {
        let r2 = r * r;
        1.0 - r2 / 10.0 + r2 * r2 / 280.0
    } else if r < TAYLOR_CUTOFF {
        let r2 = r * r;
        MODULATION_TAYLOR.iter().rev().fold(0.0, |acc, &c| acc * r2 + c)
    } else {
        3.0 * (r.sin() - r * r.cos()) / (r * r * r)
    }
}

/// V/Γ¹¹_↓ = −3(cos R + R sin R)/(2R³). Diverges at contact.
pub fn free_space_potential_ratio(r: ReducedSeparation) -> Result<f64> {
    let r = r.value();
    if r == 0.0 {
        return Err(Error::Singularity { r, leading: f64::NEG_INFINITY });
    }
    let r3 = r * r * r;
    let value = -3.0 * (r.cos() + r * r.sin()) / (2.0 * r3);
    if !value.is_finite() {
        return Err(Error::Singularity { r, leading: -1.5 / r3 });
    }
    Ok(value)
}

/// The dynamical coefficients of the two-atom system, in units of Γ₀.
///
/// `s` is the level shift common to both atoms. It only contributes a
/// global phase and drops out of every observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateSet {
    pub g11_down: f64,
    pub g11_up: f64,
    pub g12_down: f64,
    pub g12_up: f64,
    pub v: f64,
    pub s: f64,
}

impl RateSet {
    pub fn new(g11_down: f64, g11_up: f64, g12_down: f64, g12_up: f64, v: f64) -> Result<Self> {
        let rates = Self { g11_down, g11_up, g12_down, g12_up, v, s: 0.0 };
        rates.validate()?;
        Ok(rates)
    }

    pub fn with_shift(mut self, s: f64) -> Self {
        self.s = s;
        self
    }

    /// Atoms near a perfectly conducting plate with dipoles in the surface:
    /// the tangential field correlations vanish, so do all rates.
    pub fn near_boundary() -> Self {
        Self { g11_down: 0.0, g11_up: 0.0, g12_down: 0.0, g12_up: 0.0, v: 0.0, s: 0.0 }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("g11_down", self.g11_down),
            ("g11_up", self.g11_up),
            ("g12_down", self.g12_down),
            ("g12_up", self.g12_up),
            ("v", self.v),
            ("s", self.s),
        ] {
            require_finite(name, value)?;
        }
        if self.g11_down < 0.0 || self.g11_up < 0.0 {
            return Err(Error::Domain(format!(
                "single-atom rates must be non-negative (g11_down = {}, g11_up = {})",
                self.g11_down, self.g11_up
            )));
        }
        if self.g12_down.abs() > self.g11_down {
            return Err(Error::Domain(format!(
                "|g12_down| = {} exceeds g11_down = {}",
                self.g12_down.abs(),
                self.g11_down
            )));
        }
        if self.g12_up.abs() > self.g11_up {
            return Err(Error::Domain(format!(
                "|g12_up| = {} exceeds g11_up = {}",
                self.g12_up.abs(),
                self.g11_up
            )));
        }
        Ok(())
    }

    /// Γ¹¹ = Γ¹¹_↓ + Γ¹¹_↑.
    pub fn gamma11(&self) -> f64 {
        self.g11_down + self.g11_up
    }

    /// Γ¹² = Γ¹²_↓ + Γ¹²_↑.
    pub fn gamma12(&self) -> f64 {
        self.g12_down + self.g12_up
    }

    /// Total decay rate of the antisymmetric channel, Γ¹¹ − Γ¹².
    pub fn subradiant_decay(&self) -> f64 {
        self.gamma11() - self.gamma12()
    }

    /// Total decay rate of the symmetric channel, Γ¹¹ + Γ¹².
    pub fn superradiant_decay(&self) -> f64 {
        self.gamma11() + self.gamma12()
    }
}

/// Static atoms in free space with dipoles along the separation axis.
pub fn static_free_space_rates(r: ReducedSeparation) -> Result<RateSet> {
    let v = free_space_potential_ratio(r)?;
    let g12_down = free_space_modulation_ratio(r);
    Ok(RateSet { g11_down: 1.0, g11_up: 0.0, g12_down, g12_up: 0.0, v, s: 0.0 })
}

/// The state of the field or the motion the atoms see.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Environment {
    Vacuum,
    /// Thermal bath with mean photon number n = 1/(e^{ω₀β} − 1).
    Thermal { n: f64 },
    /// Uniform acceleration perpendicular to the separation, α = a/(πω₀c).
    Accelerated { alpha: f64 },
}

impl Environment {
    pub fn thermal(n: f64) -> Result<Self> {
        let env = Self::Thermal { n };
        env.validate()?;
        Ok(env)
    }

    /// Thermal bath specified by ω₀β instead of the occupation number.
    pub fn thermal_from_beta(omega0_beta: f64) -> Result<Self> {
        Self::thermal(bose_occupation(omega0_beta)?)
    }

    pub fn accelerated(alpha: f64) -> Result<Self> {
        let env = Self::Accelerated { alpha };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Vacuum => Ok(()),
            Self::Thermal { n } => {
                require_finite("n", n)?;
                if n < 0.0 {
                    return Err(Error::Domain(format!("occupation n must be >= 0, got {n}")));
                }
                Ok(())
            }
            Self::Accelerated { alpha } => {
                require_finite("alpha", alpha)?;
                if alpha < 0.0 {
                    return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
                }
                if alpha > MAX_ALPHA {
                    return Err(Error::Domain(format!(
                        "alpha = {alpha} is outside the first-order regime (alpha <= {MAX_ALPHA})"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// n = 1/(e^{ω₀β} − 1).
pub fn bose_occupation(omega0_beta: f64) -> Result<f64> {
    require_finite("omega0_beta", omega0_beta)?;
    if omega0_beta <= 0.0 {
        return Err(Error::Domain(format!(
            "omega0_beta must be positive, got {omega0_beta}"
        )));
    }
    Ok(1.0 / omega0_beta.exp_m1())
}

/// Maps vacuum rates to the rates seen in `env`.
///
/// In a thermal bath the vacuum emission rate splits into total emission
/// (1+n)Γ_↓ and absorption nΓ_↓, for the self and the cross terms alike.
/// Under weak acceleration every rate picks up the factor 1+α. The
/// potential and the common shift are unchanged in both cases.
pub fn apply_environment(base: &RateSet, env: &Environment) -> Result<RateSet> {
    base.validate()?;
    env.validate()?;
    Ok(match *env {
        Environment::Vacuum => *base,
        Environment::Thermal { n } => RateSet {
            g11_down: (1.0 + n) * base.g11_down,
            g11_up: n * base.g11_down,
            g12_down: (1.0 + n) * base.g12_down,
            g12_up: n * base.g12_down,
            ..*base
        },
        Environment::Accelerated { alpha } => {
            let k = 1.0 + alpha;
            RateSet {
                g11_down: k * base.g11_down,
                g11_up: k * base.g11_up,
                g12_down: k * base.g12_down,
                g12_up: k * base.g12_up,
                ..*base
            }
        }
    })
}

/// Super- (plus) and sub-radiant (minus) combinations of a [`RateSet`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollectiveRates {
    pub gamma_plus_down: f64,
    pub gamma_minus_down: f64,
    pub gamma_plus_up: f64,
    pub gamma_minus_up: f64,
    pub gamma11_total: f64,
    pub gamma12_total: f64,
}

pub fn collective(rates: &RateSet) -> CollectiveRates {
    CollectiveRates {
        gamma_plus_down: rates.g11_down + rates.g12_down,
        gamma_minus_down: rates.g11_down - rates.g12_down,
        gamma_plus_up: rates.g11_up + rates.g12_up,
        gamma_minus_up: rates.g11_up - rates.g12_up,
        gamma11_total: rates.gamma11(),
        gamma12_total: rates.gamma12(),
    }
}

/// Thermal emission and absorption rates from a vacuum emission rate via
/// detailed balance: down/up = e^{ω₀β} and down − up = Γ_↓.
pub fn kms_pair(gamma_down_vacuum: f64, omega0_beta: f64) -> Result<(f64, f64)> {
    require_finite("gamma_down_vacuum", gamma_down_vacuum)?;
    if gamma_down_vacuum < 0.0 {
        return Err(Error::Domain(format!(
            "vacuum emission rate must be >= 0, got {gamma_down_vacuum}"
        )));
    }
    let n = bose_occupation(omega0_beta)?;
    Ok(((1.0 + n) * gamma_down_vacuum, n * gamma_down_vacuum))
}
