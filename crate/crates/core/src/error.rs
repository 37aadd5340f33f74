use thiserror::Error;

use crate::category::ValidationReport;
use crate::functor::FunctorViolations;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    InvalidCategory(#[from] ValidationReport),

    #[error("invalid functor: {0}")]
    InvalidFunctor(#[from] FunctorViolations),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("unknown preorder element `{0}`")]
    UnknownElement(String),

    #[error("relation is not a preorder; missing pairs {missing:?}")]
    NotAPreorder { missing: Vec<(String, String)> },

    #[error("functors are not composable or parallel: {0}")]
    CategoryMismatch(String),

    /// The search visited more nodes than allowed. This is never a verdict.
    #[error("search budget of {budget} nodes exceeded (visited {visited})")]
    BudgetExceeded { budget: u64, visited: u64 },

    #[error("{what} is {actual}, cap is {cap}")]
    CapExceeded {
        what: String,
        actual: usize,
        cap: usize,
    },

    #[error("functor is not an equivalence")]
    NotAnEquivalence,

    #[error("functor is not an automorphism of {0}")]
    NotAnAutomorphism(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("invalid concrete structure: {0}")]
    InvalidConcrete(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    /// A constructed object failed its own certification. Always a bug.
    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::CapExceeded { .. })
    }

    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidCategory(_)
                | Error::InvalidFunctor(_)
                | Error::UnknownObject(_)
                | Error::UnknownMorphism(_)
                | Error::UnknownElement(_)
                | Error::NotAPreorder { .. }
                | Error::CategoryMismatch(_)
                | Error::NotAnEquivalence
                | Error::NotAnAutomorphism(_)
                | Error::Precondition(_)
                | Error::UnknownCatalogEntry(_)
                | Error::InvalidConcrete(_)
                | Error::InvalidMonoid(_)
                | Error::Format(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }
}
