//! Cluster characters of acyclic quivers and exact checks of the cluster
//! multiplication formulas.

#![allow(clippy::needless_range_loop)]

pub mod ar;
pub mod character;
pub mod corpus;
pub mod error;
pub mod grass;
pub mod laurent;
pub mod linalg;
pub mod multiplication;
pub mod mutation;
pub mod primes;
pub mod quiver;
pub mod rep;
mod ser;

use num_bigint::BigInt;

pub use ar::ClusterObject;
pub use error::{Error, Result};
pub use laurent::{LaurentPolynomial, Monomial};
pub use linalg::{Matrix, PrimeField};
pub use quiver::{DimVector, Quiver, RawQuiver};
pub use rep::{Morphism, RawModule, Representation, StandardKind};

/// Laurent polynomials with integer coefficients.
pub type Laurent = LaurentPolynomial<BigInt>;
