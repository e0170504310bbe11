//! Desk-scale bounds for the exact oracles.

use std::sync::OnceLock;

pub const MAX_EXACT_ENV: &str = "CLIQUECOLOR_MAX_EXACT";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest graph handed to the exact chromatic-number oracle.
    pub chromatic: usize,
    /// Largest graph handed to the exact clique oracles.
    pub clique: usize,
    /// Largest graph for the pot-bounded choosability decision.
    pub choosability: usize,
    /// Largest graph for the unpruned choosability oracle.
    pub naive_vertices: usize,
    /// Largest total list size (the color universe) for the unpruned oracle.
    pub naive_total: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            chromatic: 30,
            clique: 40,
            choosability: 10,
            naive_vertices: 7,
            naive_total: 16,
        }
    }
}

impl Limits {
    /// Defaults, with the chromatic and clique bounds replaced by `CLIQUECOLOR_MAX_EXACT` if set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(v) = std::env::var(MAX_EXACT_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.chromatic = v;
            limits.clique = v;
        }
        limits
    }

    pub fn current() -> &'static Limits {
        static LIMITS: OnceLock<Limits> = OnceLock::new();
        LIMITS.get_or_init(Limits::from_env)
    }
}
