//! Collective radiative rates and l1-norm coherence dynamics of two
//! identical two-level atoms sharing a stationary trajectory.
//!
//! * [`rates`]: free-space rates, thermal and acceleration scaling,
//!   super-/sub-radiant combinations.
//! * [`dynamics`]: closed-form amplitudes and observables.
//! * [`analysis`]: frozen-coherence classification and regime helpers.
//! * [`oracle`]: RK4 and eigen-structure cross-checks of the closed forms.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod oracle;
pub mod rates;

pub use analysis::{check_frozen, FrozenClass, FrozenReport, DEFAULT_EPSILON};
pub use dynamics::{AtomicState, CoherenceTrace, InitialState, Observables, XStateMatrix};
pub use error::{Error, Result};
pub use rates::{CollectiveRates, Environment, RateSet, ReducedSeparation};
