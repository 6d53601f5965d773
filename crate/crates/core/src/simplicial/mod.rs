//! Simplicial and bisimplicial abelian groups, Dold–Kan in both directions,
//! cycles and chains objects, and double complexes.

pub mod bicomplex;
pub mod bisimplicial;
pub mod cochain;
pub mod gamma;
pub mod simplicial_ab;
pub mod space;

pub use bicomplex::{Bicomplex, BicomplexBuilder, Bideg, TotalComplex};
pub use bisimplicial::BisimplicialAb;
pub use cochain::{CochainBicomplex, CochainBuilder};
pub use simplicial_ab::{dold_kan, IdentityFailure, SimplicialAb};
pub use space::{GammaSpace, MatchingVerdict, Normalization, SimplicialSpace, SubLevel};

use crate::zmod::ChainComplex;

/// Moore complex of a simplicial abelian group.
pub fn normalize(x: &SimplicialAb) -> ChainComplex {
    x.normalize()
}

/// `Z_n X`, the levelwise intersection of the kernels of all faces.
pub fn cycles_object(x: &SimplicialSpace, n: usize) -> SubLevel {
    x.cycles_object(n)
}

/// `C_n X`, the levelwise intersection of the kernels of the faces `d_1 .. d_n`.
pub fn chains_object(x: &SimplicialSpace, n: usize) -> SubLevel {
    x.chains_object(n)
}
