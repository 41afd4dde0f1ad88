use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("homomorphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("element does not belong to the group: {0}")]
    ForeignElement(String),

    #[error("cannot enumerate an infinite group: {0}")]
    InfiniteEnumeration(String),

    #[error("unsupported dimension n = {0} (supported: 2..=7)")]
    UnsupportedDimension(u32),

    #[error("elements of different dimensions: {0} and {1}")]
    MixedDimension(u32, u32),

    #[error("matrix {0} is not in the submonoid M (entries must be 0 or 1)")]
    NotInM(String),

    #[error("n = {0} is odd and the extension N_n is not known to split; composition needs assume-split")]
    OpenExtension(u32),

    #[error("invalid target data: {0}")]
    InvalidTarget(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
