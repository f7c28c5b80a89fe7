use serde::{Deserialize, Serialize};

/// Numerical policy shared by every computation.
///
/// Rank decisions use singular values: σ counts as nonzero when
/// `σ > max(rank_rel · σ_max, rank_abs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank_rel: f64,
    pub rank_abs: f64,
    /// Relative bound on ‖d∘d‖ and on other identities that must hold exactly
    /// in exact arithmetic (chain maps, exactness, compatibility).
    pub identity: f64,
    /// Bound on ‖ρ(r) − I‖ for relators.
    pub relator: f64,
    /// An eigenvalue counts as 1 when |λ − 1| is below this.
    pub unit_eigenvalue: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_rel: 1e-9,
            rank_abs: 1e-12,
            identity: 1e-8,
            relator: 1e-8,
            unit_eigenvalue: 1e-6,
        }
    }
}

impl Tolerances {
    /// Override the relative rank threshold.
    pub fn with_rank_rel(mut self, rank_rel: f64) -> Self {
        self.rank_rel = rank_rel;
        self
    }
}
