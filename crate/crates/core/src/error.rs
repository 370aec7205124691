use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation requested beyond the certified radius.
    #[error("radius {radius} exceeds certified radius r_max = {r_max}")]
    Radius { radius: f64, r_max: f64 },

    /// A sampled function value was NaN or infinite.
    #[error("non-finite sample at t = {t}")]
    NonFinite { t: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    /// Every point of a dilatation grid had vanishing `f_z`.
    #[error("dilatation field is degenerate at every grid point")]
    DegenerateField,

    /// A membership-gated operation received a lift outside the admissible set.
    #[error("lift is not admissible: {0}")]
    NotMember(String),
}
