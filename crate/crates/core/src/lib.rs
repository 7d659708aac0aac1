//! Fighting fish, ternary trees and the bijections between them.

pub mod bijection;
pub mod enumerate;
pub mod error;
pub mod fish;
pub mod render;
pub mod stem;
pub mod ternary;
pub mod verify;

pub use bijection::{MarkedFish, TreePair};
pub use error::{Error, Result};
pub use fish::{Cell, CellCoord, CellId, Fish, Growth, Orientation, Slot, StemKind, StripRef};
pub use stem::StemTree;
pub use ternary::{Child, Dir, TernaryTree};
