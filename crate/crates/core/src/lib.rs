//! Polar-invariant description of planar anisotropic elasticity and elastic
//! bounds for laminates with membrane/bending coupling.
//!
//! The crate is organized in four layers:
//!
//! - [`polar`]: fourth- and second-rank plane tensors in polar form
//!   (invariant moduli plus angles), conversions, rotation, symmetry
//!   classification and the single-layer admissibility margins.
//! - [`lamination`]: classical lamination theory for stacks of identical
//!   plies, the polar form of the extension/coupling/bending triple, derived
//!   shift angles and the 6x6 plate stiffness law.
//! - [`bounds`]: the feasibility machinery. Assembles the quadratic-form
//!   matrix of the plate energy, evaluates its leading principal minors,
//!   provides closed-form condition sets for the general laminate and for
//!   the symmetric special cases, and globally minimizes the quartic
//!   determinant surface when no closed form exists.
//! - [`oracle`]: independent ground truth used for differential testing:
//!   eigenvalue positive-definiteness of the plate law, direct energy
//!   sampling, exhaustive angle-grid minima and seeded random laminate
//!   generation.
//!
//! All values are plain `f64`; all operations are pure functions of their
//! inputs and safe for concurrent use.

pub mod bounds;
pub mod lamination;
pub mod oracle;
pub mod polar;

pub use bounds::{BoundsReport, CheckOptions, ConditionMargin, Verdict};
pub use lamination::{DerivedAngles, LaminatePolar, PlateLaw, Stacking};
pub use polar::{
    Cartesian2, Cartesian4, EngineeringConstants, Polar2, PolarElastic4, SymmetryClass,
};
