//! Spiral exact couples, truncated spectral sequences and their comparison
//! with the classical spectral sequence of a bisimplicial abelian group.

pub mod io;
pub mod oracle;
pub mod pages;
pub mod simplicial;
pub mod spiral;
pub mod stems;
pub mod zmod;
