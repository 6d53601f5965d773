//! Exact arithmetic over the integers: matrices, lattices, presented
//! finitely generated abelian groups and their homomorphisms.

pub mod chain;
pub mod error;
pub mod exact;
pub mod group;
pub mod hom;
pub mod int;
pub mod lattice;
pub mod matrix;
pub mod snf;
pub mod subquotient;

pub use chain::{ChainComplex, ChainMap};
pub use error::AlgebraError;
pub use exact::{check_exact, connecting_map, ChainSes, ExactVerdict};
pub use group::{FgAbGroup, Invariants};
pub use hom::AbHom;
pub use int::Int;
pub use lattice::Lattice;
pub use matrix::Matrix;
pub use snf::{smith_normal_form, Snf};
pub use subquotient::Subquotient;
