//! Exact Gromov–Witten partition functions of local toric surfaces.

pub mod characters;
pub mod coefrings;
pub mod document;
pub mod feynman;
pub mod fock;
pub mod graphs;
pub mod partitions;
pub mod suites;
pub mod toric;
pub mod wzw;
