//! Fibered knots, the monodromy action on twisted cohomology of the fiber
//! and the resulting torsion.
//!
//! For a γ-regular representation ρ the torsion is
//! `𝕋 = −ε₀ ∏ 1/(1 − λᵢ)` where `ε₀ = sgn det(I − φ*)` on `H¹(F; ℤ)` and
//! `λᵢ` are the eigenvalues other than the simple eigenvalue 1 of the
//! monodromy on `H¹(F; 𝔤)`.

mod catalog;
mod character;
mod knot;
mod monodromy;
mod poly;
mod wang;

pub use catalog::{
    catalog, figure_eight, lookup, torus_closed_form, trefoil, CatalogEntry, CatalogListing,
};
pub use character::{
    figure_eight_holonomy, figure_eight_holonomy_point, fixed_point_characters,
    lift_character_to_rep, polynomial_roots, FixedLocus, LiftSign,
};
pub use knot::{abelianized_monodromy, epsilon0, integer_det, FiberedKnot, MERIDIAN};
pub use monodromy::{
    character_point, eigenvalues_excluding_one, jacobian_torsion, main_theorem_torsion,
    multiset_distance, twisted_monodromy_on_h1, JacobianCheck, Method, MonodromyAction,
    TorsionReport, TorsionReportJson,
};
pub use poly::{trace_jacobian, Exponents, Polynomial, TraceCoordMap};
pub use wang::{
    exterior_torsion, real_exterior_complex, wang_complex_from_matrix, wang_exact_sequence,
    wang_sequence_torsion, WangComplex, WangSequence,
};
