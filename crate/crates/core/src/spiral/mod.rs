//! The spiral exact couple, natural homotopy groups and the spiral long exact
//! sequence.

pub mod cotower;
pub mod couple;
pub mod les;
pub mod natural;
pub mod system;
pub mod tower;

pub use cotower::TotCouple;
pub use couple::ExactCouple;
pub use les::{cospiral_les, cospiral_les_of_couple, spiral_les, spiral_les_of_couple, spiral_les_of_space, Inexact, LesKind, LesNode, LesRow, SpiralLes};
pub use natural::{cone_natural_homotopy, d0_onto_through, natural_homotopy, NatHomotopy};
pub use system::{spiral_system, SpiralSystem, SystemFailure, SystemWindow, WindowCouple, WindowModel};
pub use tower::SpiralCouple;
