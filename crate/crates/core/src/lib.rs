//! Exact construction of Kustin–Miller unprojection ideals.
//!
//! The crate provides integer polynomial arithmetic ([`ring`]), polynomial
//! matrices with determinants, signed maximal minors and Pfaffians
//! ([`linalg`]), Koszul and Buchsbaum–Eisenbud complexes with chain-map
//! checks ([`complexes`]), a Buchberger-based membership oracle
//! ([`groebner`]) and the three unprojection constructions: complete
//! intersection inside complete intersection, Tom and Jerry ([`unproj`]).

pub mod cli;
pub mod complexes;
pub mod error;
pub mod groebner;
pub mod json;
pub mod linalg;
pub mod ring;
pub mod unproj;

pub use error::{Error, Result};
pub use ring::{Ctx, Ideal, MonomialOrder, Polynomial, Substitution, VarContext};
