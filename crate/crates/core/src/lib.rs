//! Exact enumerative geometry of rational curves on ℙʳ and ℙ¹×ℙ¹.
//!
//! * [`arith`]: big rationals, binomials, factorials.
//! * [`surfaces`]: the curve counts `N_d` on ℙ² and `N_(d,e)` on ℙ¹×ℙ¹.
//! * [`gw`]: genus-zero Gromov–Witten invariants.
//! * [`series`], [`potentials`]: truncated potentials and WDVV residuals.
//! * [`quantum`]: small and big quantum products.
//! * [`boundary`]: boundary divisors of the spaces of stable maps.

pub mod arith;
pub mod boundary;
pub mod error;
pub mod gw;
pub mod potentials;
pub mod quantum;
pub mod series;
pub mod space;
pub mod surfaces;

pub use arith::{BigInt, Rational};
pub use error::{ArithError, BoundaryError, GeometryError, QuantumError, SeriesError};
pub use gw::{ExponentVector, GwEngine, InvariantKey};
pub use series::TruncatedSeries;
pub use space::{Bidegree, Degree, TargetSpace};
pub use surfaces::{CurveCounts, KeyMode};
