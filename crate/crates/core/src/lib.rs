#![no_std]
//! Exact and modular machinery for checking supercongruences and
//! combinatorial identities involving dual sequences, Delannoy-type
//! polynomials and Apéry-like sums.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod domain;
pub mod error;
pub mod exact;
pub mod identity;
pub mod sequences;
pub mod suite;

/// Crate version; keys persisted caches.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use catalog::{catalog, represent_form, Form, FormRepresentation};
pub use domain::{Domain, Exact, ModPk};
pub use error::{Error, Result};
pub use exact::{PrimeConstraint, PrimeRange, Rational, ResiduePK};
pub use suite::{CheckRecord, Filter, Kind, Params, Statement, SuiteConfig, Summary};
