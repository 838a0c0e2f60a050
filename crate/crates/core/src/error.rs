use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} cap exceeded: limit {limit}, got {got}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("minor search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },
    #[error("operation needs a graph with at least one vertex")]
    EmptyGraph,
    #[error("family has no members on {n} vertices")]
    EmptyFamilySlice { n: usize },
    #[error("family is not trimmable: {0}")]
    NotTrimmable(String),
    #[error("root solver did not converge: {0}")]
    NonConvergence(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn invalid(msg: &str) -> Self {
        Error::Invalid(msg.into())
    }

    /// True for errors caused by a configured cap or search budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
