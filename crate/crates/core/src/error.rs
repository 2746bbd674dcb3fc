use thiserror::Error;

use crate::geometry::CircleId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("circle index {0} out of range (expected 1, 2 or 3)")]
    CircleIndex(i64),

    #[error("point on circle {found} cannot move along circle {requested}")]
    WrongCircle { found: CircleId, requested: CircleId },

    #[error("robots A and B coincide ({0}): state lies on the collision diagonal")]
    Collision(String),

    #[error("chart is not a valid state: {0}")]
    Chart(String),

    #[error("state is not in the network")]
    NotInNetwork,

    #[error("segments do not chain at index {index}: gap {gap:e}")]
    Chaining { index: usize, gap: f64 },

    #[error("subdivision needs at least 3 edges per circle, got {0}")]
    Subdivision(usize),

    #[error("invalid input: {0}")]
    Input(String),
}
