use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {index} is not a nontrivial involution")]
    NotAnInvolution { index: usize },

    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),

    #[error("inadmissible region: {0}")]
    InadmissibleRegion(String),

    #[error("word length {0} is not supported on this lattice (vertex degree 6)")]
    BadRingLength(usize),

    #[error("assignment does not fit region: {0}")]
    RegionMismatch(String),

    #[error("invalid transverse choice sequence: {0}")]
    BadTransition(String),

    #[error("alphabet size {0} out of range (need 1..=8)")]
    BadAlphabet(usize),
}
