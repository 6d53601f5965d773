//! Spectral-sequence pages: the full sequences of both towers, truncated sequences
//! rebuilt from stems, and their comparison.

pub mod full;
pub mod spectral;
pub mod truncated;

pub use full::{cosimplicial_ss, spiral_ss, spiral_ss_of_chains, spiral_ss_of_space};
pub use spectral::{compare_pages, Abutment, AbutmentDegree, Agreement, Grading, Page, PageFailure, Pos, SpectralPages};
pub use truncated::{compare_invariants, compare_with_source, obstruction_images, truncated_ss, truncated_ss_with, ChaseChoices, TruncatedSS, TruncationError};
