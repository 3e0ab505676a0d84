use crate::shapes::{Cell, Partition};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cell {cell} lies outside shape {shape}")]
    CellOutsideShape { cell: Cell, shape: Partition },
    #[error("the two cells must be distinct")]
    SameCell,
    #[error("inner shape {inner} is not contained in {outer}")]
    InnerNotContained { inner: Partition, outer: Partition },
    #[error("shape has {cells} cells, enumeration cap is {cap}")]
    ShapeTooLarge { cells: usize, cap: usize },
    #[error("rational-function fit failed: {0}")]
    FitFailed(String),
    #[error("function diverges at infinity")]
    DivergesAtInfinity,
    #[error("distribution is degenerate (zero variance)")]
    DegenerateDistribution,
}
