use thiserror::Error;

use crate::fish::CellId;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell {0} does not exist")]
    BadCell(CellId),
    #[error("edge {slot} of cell {cell} is already glued")]
    EdgeOccupied { cell: CellId, slot: &'static str },
    #[error("cells {0} and {1} are not the two right neighbours of a common cell")]
    NotDoubleSite(CellId, CellId),
    #[error("not a fighting fish: {0}")]
    InvalidFish(String),
    #[error("the tree is empty")]
    EmptyTree,
    #[error("inconsistent direction labels: {0}")]
    InconsistentLabels(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a left tree: node {node} has abscissa {abscissa}")]
    NotLeftTree { node: String, abscissa: i64 },
    #[error("cell {0} is not a tail")]
    NotATail(CellId),
    #[error("the fish is not symmetric")]
    NotSymmetric,
    #[error("tree pair has {found} nodes, expected {expected}")]
    BadPairTotal { expected: usize, found: usize },
    #[error("strip index {index} out of range ({count} descending strips)")]
    BadStripIndex { index: usize, count: usize },
    #[error("the strip is not a descending strip of this fish")]
    NotAStrip,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("statistic `{stat}` does not apply to family `{family}`")]
    StatisticFamilyMismatch { stat: String, family: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
