//! Independent reference computations used to check the engine.

pub mod corpus;
pub mod e2;
pub mod filtration;

pub use corpus::{random_cochain_corpus, random_corpus, random_corpus_with, CorpusParams};
pub use e2::{copi_pi, pi_pi};
pub use filtration::{classical_coss, classical_ss, total_cohomology, total_homology, FiltrationSS};
