//! Serialization helpers for report types.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::laurent::{Coefficient, LaurentPolynomial};

struct Big<'a>(&'a BigInt);

impl Serialize for Big<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Integers as JSON numbers when they fit in 64 bits, decimal strings otherwise.
pub fn bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    Big(v).serialize(s)
}

pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(Big))
}

/// Laurent polynomials in canonical string form.
pub fn laurent<C: Coefficient, S: Serializer>(
    v: &LaurentPolynomial<C>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_canonical_string())
}
