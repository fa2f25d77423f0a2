//! Sharp Descartes bounds for polynomial systems supported on circuits.
//!
//! A circuit is a configuration `A = {a_0, ..., a_{n+1}}` of `n + 2` lattice
//! points in `Z^n` that is minimally affinely dependent. For a coefficient
//! matrix `C` of size `n x (n + 2)` this crate computes:
//!
//! * the Gale vector `B` of `A` and the Gale dual `P` of `C` ([`circuit`],
//!   [`galedual`]);
//! * the ordering of the Gale rows, the sequences `lambda` and `mu`, and the
//!   bound `1 + sgnvar(mu)` on the number of positive solutions
//!   ([`descartes`]);
//! * the exact number of positive solutions counted with multiplicity, via the
//!   univariate Gale equation and Sturm sequences ([`oracle`]);
//! * Viro systems whose positive-solution count attains the bound, with the
//!   positively decorated mixed cells that certify it ([`viro`]);
//! * the classification of planar circuits by their maximal number of
//!   positive solutions ([`moduli2d`]).
//!
//! All arithmetic is exact. The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circuit;
pub mod descartes;
pub mod error;
pub mod exact;
pub mod galedual;
pub mod moduli2d;
pub mod oracle;
pub mod poly;
pub mod viro;

pub use circuit::{ExponentConfig, GaleVectorB, Volumes};
pub use descartes::{MuSequence, OrderingData};
pub use error::{Error, Result};
pub use exact::{Matrix, Rational};
pub use galedual::{CoefficientMatrix, GaleDualP, PositivityInterval};
pub use oracle::{CountResult, GaleFunction, OracleConfig, RootCounting};
pub use viro::{MixedCell, ViroWitness};
