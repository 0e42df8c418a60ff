use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("invalid cycle configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("unknown cycle `{0}`")]
    UnknownCycle(String),

    #[error("the {cycle} cycle is not applicable to a {bath} bath")]
    NotApplicable {
        cycle: &'static str,
        bath: &'static str,
    },

    #[error(
        "second-kind excess drives the working-fluid occupation negative (n2 + Δn = {n_total})"
    )]
    InvalidExcess { n_total: f64 },

    #[error(
        "Fock cutoff {cutoff} too small: trace deficit {deficit:e} exceeds tolerance {tail_tol:e}"
    )]
    CutoffTooSmall {
        cutoff: usize,
        deficit: f64,
        tail_tol: f64,
    },

    #[error("no Fock cutoff up to {cap} reaches the tail tolerance (deficit {deficit:e})")]
    CutoffSearchFailed { cap: usize, deficit: f64 },

    #[error("density matrix has eigenvalue {value:e} below the round-off floor")]
    NegativeEigenvalue { value: f64 },
}

impl Error {
    /// True for errors caused by malformed input rather than by the physics or
    /// the numerics of a well-formed request.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::InvalidConfig(_)
                | Error::InvalidSweep(_)
                | Error::UnknownCycle(_)
        )
    }
}
