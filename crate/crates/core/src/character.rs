//! The cluster character of an object `M ⊕ ⊕ P_i[1]^{p_i}`.
//!
//! [`cc`] evaluates the classical exponent form
//! `Π x_i^{-m_i} Σ_e χ(Gr_e M) Π x_i^{Σ_{j->i} e_j + Σ_{i->j} (m_j - e_j)}`,
//! times `Π x_i^{p_i}`. [`cc_palu_form`] evaluates
//! `x^{-coind M} Σ_e χ(Gr_e M) Π x_i^{<s_i, e>_a}` under the calibrated
//! convention and must agree with it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::ar::{coindex, index, ClusterObject, ObjectDescriptor};
use crate::error::{Error, Result};
use crate::grass::grassmannian_profile;
use crate::laurent::Monomial;
use crate::linalg::PrimeField;
use crate::primes::SamplePrimes;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{direct_sum, standard_module, StandardKind};
use crate::Laurent;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterValue {
    #[serde(serialize_with = "crate::ser::laurent")]
    pub value: Laurent,
    pub source: ObjectDescriptor,
}

/// Which class plays the role of the coindex in the exponent prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoindexKind {
    /// `[P_0] - [P_1]` from a minimal projective presentation.
    ProjectivePresentation,
    /// `[P^0] - [P^1]` from a minimal injective copresentation `M -> νP^0 -> νP^1`.
    InjectiveCopresentation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaluConvention {
    pub coindex: CoindexKind,
    /// Multiplies `<s_i, e>_a = <s_i, e> - <e, s_i>`.
    pub sign: i64,
}

/// Result of [`calibrate`], fixed here and guarded by a test.
pub const PALU_CONVENTION: PaluConvention =
    PaluConvention { coindex: CoindexKind::InjectiveCopresentation, sign: 1 };

fn check_object(q: &Quiver, obj: &ClusterObject) -> Result<()> {
    if obj.shifted.len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: obj.shifted.len() });
    }
    if obj.module.dim().len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: obj.module.dim().len() });
    }
    Ok(())
}

fn shift_monomial(shifted: &[usize]) -> Monomial {
    Monomial(shifted.iter().map(|&p| p as i64).collect())
}

/// Classical form from a Grassmannian profile.
pub fn cc_from_profile(
    q: &Quiver,
    dim: &DimVector,
    profile: &BTreeMap<DimVector, BigInt>,
    shifted: &[usize],
) -> Laurent {
    let n = q.n();
    let m = dim.as_i64();
    let terms = profile.iter().map(|(e, chi)| {
        let e = e.as_i64();
        let mut exp: Vec<i64> = m.iter().map(|&mi| -mi).collect();
        for &(s, t) in q.arrows() {
            exp[t] += e[s];
            exp[s] += m[t] - e[t];
        }
        (Monomial(exp), chi.clone())
    });
    Laurent::from_terms(n, terms).mul_monomial(&shift_monomial(shifted))
}

/// Palu form from a profile and a coindex vector.
pub fn palu_from_profile(
    q: &Quiver,
    sign: i64,
    coind: &[i64],
    profile: &BTreeMap<DimVector, BigInt>,
) -> Laurent {
    let n = q.n();
    let terms = profile.iter().map(|(e, chi)| {
        let e = e.as_i64();
        let exp: Vec<i64> = (0..n)
            .map(|i| {
                let mut s = vec![0; n];
                s[i] = 1;
                sign * q.antisym_form_vec(&s, &e) - coind[i]
            })
            .collect();
        (Monomial(exp), chi.clone())
    });
    Laurent::from_terms(n, terms)
}

pub fn cc(q: &Quiver, primes: &SamplePrimes, obj: &ClusterObject) -> Result<CharacterValue> {
    check_object(q, obj)?;
    let profile = grassmannian_profile(q, primes, &obj.module)?;
    Ok(CharacterValue {
        value: cc_from_profile(q, obj.module.dim(), &profile, &obj.shifted),
        source: obj.descriptor(),
    })
}

/// Coindex under the given convention; shifted summands `P_i[1]` contribute `-[P_i]`.
pub fn coindex_with(q: &Quiver, fp: &PrimeField, obj: &ClusterObject, kind: CoindexKind) -> Vec<i64> {
    match kind {
        CoindexKind::InjectiveCopresentation => coindex(q, fp, obj),
        CoindexKind::ProjectivePresentation => index(q, fp, &obj.module)
            .into_iter()
            .zip(&obj.shifted)
            .map(|(c, &s)| c - s as i64)
            .collect(),
    }
}

pub fn cc_palu_form_with(
    q: &Quiver,
    primes: &SamplePrimes,
    obj: &ClusterObject,
    conv: PaluConvention,
) -> Result<CharacterValue> {
    check_object(q, obj)?;
    let profile = grassmannian_profile(q, primes, &obj.module)?;
    let p = primes.select(1, obj.module.max_abs_entry())?[0];
    let coind = coindex_with(q, &PrimeField::new(p), obj, conv.coindex);
    Ok(CharacterValue {
        value: palu_from_profile(q, conv.sign, &coind, &profile),
        source: obj.descriptor(),
    })
}

pub fn cc_palu_form(q: &Quiver, primes: &SamplePrimes, obj: &ClusterObject) -> Result<CharacterValue> {
    cc_palu_form_with(q, primes, obj, PALU_CONVENTION)
}

/// Finds the unique convention for which the Palu form agrees with the
/// classical form on `S_1`, `S_2` and `P_1` of `1 -> 2`.
pub fn calibrate(primes: &SamplePrimes) -> Result<PaluConvention> {
    let q = Quiver::linear_a(2);
    let objects: Vec<ClusterObject> = [
        (StandardKind::Simple, 0),
        (StandardKind::Simple, 1),
        (StandardKind::Projective, 0),
    ]
    .into_iter()
    .map(|(k, i)| ClusterObject::module(standard_module(&q, k, i).expect("vertex")))
    .collect();
    let mut winners = Vec::new();
    for coindex in [CoindexKind::ProjectivePresentation, CoindexKind::InjectiveCopresentation] {
        for sign in [1, -1] {
            let conv = PaluConvention { coindex, sign };
            let mut ok = true;
            for obj in &objects {
                ok &= cc_palu_form_with(&q, primes, obj, conv)?.value == cc(&q, primes, obj)?.value;
            }
            if ok {
                winners.push(conv);
            }
        }
    }
    match winners.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Calibration(format!("{} conventions fit, expected exactly one", winners.len()))),
    }
}

/// `cc(M ⊕ N)` and `cc(M) cc(N)`.
pub fn multiplicativity_pair(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &ClusterObject,
    n: &ClusterObject,
) -> Result<(Laurent, Laurent)> {
    let sum = ClusterObject {
        module: direct_sum(&m.module, &n.module),
        shifted: m.shifted.iter().zip(&n.shifted).map(|(a, b)| a + b).collect(),
    };
    let lhs = cc(q, primes, &sum)?.value;
    let rhs = &cc(q, primes, m)?.value * &cc(q, primes, n)?.value;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::Representation;

    fn lp(n: usize, s: &str) -> Laurent {
        Laurent::parse(n, s).unwrap()
    }

    fn module(q: &Quiver, kind: StandardKind, i: usize) -> ClusterObject {
        ClusterObject::module(standard_module(q, kind, i).unwrap())
    }

    #[test]
    fn calibration_is_pinned() {
        assert_eq!(calibrate(&SamplePrimes::Auto).unwrap(), PALU_CONVENTION);
    }

    #[test]
    fn a2_values() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let s1 = module(&q, StandardKind::Simple, 0);
        let p1 = module(&q, StandardKind::Projective, 0);
        assert_eq!(cc(&q, &auto, &s1).unwrap().value.to_canonical_string(), "x1^-1 + x1^-1*x2");
        assert_eq!(cc(&q, &auto, &p1).unwrap().value, lp(2, "x1^-1*x2^-1 + x2^-1 + x1^-1"));
        let shifted = ClusterObject::shifted_projective(&q, vec![1, 0]).unwrap();
        assert_eq!(cc(&q, &auto, &shifted).unwrap().value, lp(2, "x1"));
        assert_eq!(cc(&q, &auto, &ClusterObject::zero(&q)).unwrap().value, Laurent::one(2));
        for obj in [s1, p1, shifted] {
            assert_eq!(
                cc_palu_form(&q, &auto, &obj).unwrap().value,
                cc(&q, &auto, &obj).unwrap().value
            );
        }
    }

    #[test]
    fn multiplicative_with_shifts() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let s2 = module(&q, StandardKind::Simple, 1);
        let mut obj = module(&q, StandardKind::Projective, 0);
        obj.shifted = vec![0, 2];
        let (lhs, rhs) = multiplicativity_pair(&q, &auto, &s2, &obj).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_wrong_arity() {
        let q = Quiver::linear_a(2);
        let bad = ClusterObject { module: Representation::zero(&q), shifted: vec![1] };
        assert!(cc(&q, &SamplePrimes::Auto, &bad).is_err());
    }
}
