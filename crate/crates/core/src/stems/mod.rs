//! Postnikov stems: windows of chain complexes, the window ladder, and simplicial
//! stems built levelwise.

pub mod examples;
pub mod stem;
pub mod window;

pub use stem::{
    costem_of, stem_forget, stem_of, stem_of_chains, stem_of_grid, stem_of_space, stem_validate, CosimplicialStem, Grid,
    Realization, SimplicialStem, Stem, StemAxiom, StemVerdict, StemViolation,
};
pub use window::{truncate_range, truncate_window, window_triangle, StemWindow, WindowTriangle};
