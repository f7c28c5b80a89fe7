//! Sign-determined non-abelian Reidemeister torsion of fibered knot
//! exteriors.
//!
//! The crate is layered:
//!
//! * [`torsion`]: based chain complexes over ℂ, their torsion and the
//!   multiplicativity relation for short exact sequences.
//! * [`group`]: finitely presented groups, SU(2) / SL2(ℂ) representations,
//!   the adjoint action and twisted cochain complexes via Fox calculus.
//! * [`fibered`]: fibered knots given by a fiber presentation and a
//!   monodromy, the action of the monodromy on twisted first cohomology of
//!   the fiber and the torsion obtained from its eigenvalues.
//! * [`verify`]: canned numerical checks used by the command line tool.

pub mod error;
pub mod fibered;
pub mod group;
pub mod linalg;
pub mod tolerance;
pub mod torsion;
pub mod verify;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
