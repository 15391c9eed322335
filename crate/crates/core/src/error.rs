use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: wrong sizes, bad parities, unknown names.
    #[error("input error: {0}")]
    Input(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dim { expected: usize, got: usize },
    /// A mathematical hypothesis of an operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    /// `ad(f_j) != ad(e_j)^p` for a proposed p-map image.
    #[error("ad-condition fails at basis index {index}")]
    AdCondition { index: usize, defect: Box<crate::exactla::Mat> },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures of mathematics rather than of input.
    pub fn is_mathematical(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::Verification(_) | Error::AdCondition { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dim { expected, got })
    }
}
