//! Numerical machinery behind omega-theorems for ζ and its derivatives
//! near the line `Re s = 1`.

pub mod dirichlet;
pub mod growth;
pub mod perron;
pub mod primes;
pub mod quadrature;
pub mod scan;
pub mod zeta;

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Hex SHA-256 of the compact JSON encoding of `value`.
pub fn canonical_hash<T: Serialize + ?Sized>(value: &T) -> String {
    let json = serde_json::to_vec(value).expect("value serializes");
    hex::encode(Sha256::digest(&json))
}

/// Sizes the global rayon pool. Fails if the pool was already built.
pub fn set_worker_threads(n: usize) -> Result<(), rayon::ThreadPoolBuildError> {
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()
}
