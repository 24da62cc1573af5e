use thiserror::Error;

use crate::report::IdentityReport;

/// Failures of constructions and checkers. Checkers that merely find failing
/// identities return report lists instead; these variants mean the input was
/// malformed or a precondition did not hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not an ideal")]
    NotIdeal,

    #[error("twist does not descend to the quotient")]
    TwistDoesNotDescend,

    #[error("not a subalgebra")]
    NotSubalgebra,

    #[error("invalid algebra ({} failing instances)", .0.len())]
    InvalidAlgebra(Vec<IdentityReport>),

    #[error("invalid representation ({} failing instances)", .0.len())]
    InvalidRepresentation(Vec<IdentityReport>),

    #[error("invalid action ({} failing instances)", .0.len())]
    InvalidAction(Vec<IdentityReport>),

    #[error("invalid crossed module ({} failing instances)", .0.len())]
    InvalidXmod(Vec<IdentityReport>),

    #[error("invalid Cat1 structure ({} failing instances)", .0.len())]
    InvalidCat1(Vec<IdentityReport>),

    #[error("image of the boundary is not an ideal")]
    ImageNotIdeal,

    #[error("kernel of the boundary is not central: {0}")]
    KernelNotCentral(String),

    #[error("induced action on the kernel depends on the lift")]
    LiftDependence,

    #[error("defect not in Im ∂ ({0})")]
    DefectNotInImage(String),

    #[error("kernel-membership failure in component {0}")]
    KernelMembership(usize),

    #[error("s - s̄ not in Im ∂ (or no twist-equivariant solution)")]
    SectionDifferenceNotInImage,

    #[error("no twist-equivariant section exists")]
    NoEquivariantSection,

    #[error("ladder does not commute: {0}")]
    LadderDoesNotCommute(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("postcondition failed: {what} ({} failing instances)", .reports.len())]
    Postcondition {
        what: String,
        reports: Vec<IdentityReport>,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),
}

impl Error {
    /// Reports carried by the error, if any.
    pub fn reports(&self) -> &[IdentityReport] {
        match self {
            Error::InvalidAlgebra(r)
            | Error::InvalidRepresentation(r)
            | Error::InvalidAction(r)
            | Error::InvalidXmod(r)
            | Error::InvalidCat1(r) => r,
            Error::Postcondition { reports, .. } => reports,
            _ => &[],
        }
    }

    /// Malformed input as opposed to a mathematical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Dimension(_) | Error::Parameter(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
