//! Exact Laurent polynomials in `x1..xn`.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic (total degree first, then lexicographic on the exponent
//! vector). Zero coefficients are never stored, so structural equality is
//! value equality and printing is deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient ring for [`LaurentPolynomial`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + FromStr + Zero + One + Signed
{
}

impl<T> Coefficient for T where
    T: Clone + PartialEq + fmt::Debug + fmt::Display + FromStr + Zero + One + Signed
{
}

/// Exponent vector of a Laurent monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i64>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Monomial(v)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> LaurentPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The variable `x_{i+1}` (0-indexed argument).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), C::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: C) -> Self {
        assert_eq!(m.0.len(), nvars, "monomial length");
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from arbitrary terms; duplicates are summed.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same ring");
        }
        acc
    }

    fn neg_ref(&self) -> Self {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Equality of canonical forms; errors if the rings differ.
    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }

    /// Componentwise minimum of the exponents, i.e. the largest monomial
    /// dividing every term.
    pub fn min_exponents(&self) -> Monomial {
        let mut min = vec![i64::MAX; self.nvars];
        for m in self.terms.keys() {
            for (slot, &e) in min.iter_mut().zip(&m.0) {
                *slot = (*slot).min(e);
            }
        }
        if self.terms.is_empty() {
            min.iter_mut().for_each(|e| *e = 0);
        }
        Monomial(min)
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Canonical string form, e.g. `x1^-1 + x1^-1*x2`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }

    pub fn parse(nvars: usize, s: &str) -> Result<Self> {
        parse_laurent(nvars, s)
    }
}

impl<C: Coefficient + Integer> LaurentPolynomial<C> {
    /// Exact quotient `self / divisor` in the Laurent ring, or `None` when the
    /// quotient is not a Laurent polynomial with coefficients in `C`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Ok(None);
        }
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        // Shift both to honest polynomials with no monomial factor; in the
        // Laurent ring divisibility then reduces to polynomial divisibility.
        let shift_num = self.min_exponents();
        let shift_den = divisor.min_exponents();
        let num = self.mul_monomial(&Monomial(shift_num.0.iter().map(|e| -e).collect()));
        let den = divisor.mul_monomial(&Monomial(shift_den.0.iter().map(|e| -e).collect()));
        let (lead_m, lead_c) = {
            let (m, c) = den.leading_term().expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut rem = num;
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(&lead_m);
            if qm.0.iter().any(|&e| e < 0) {
                return Ok(None);
            }
            let (q, r) = rc.div_rem(&lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            let step = Self::monomial(self.nvars, qm, q);
            rem = rem.try_sub(&step.try_mul(&den)?)?;
            quot = quot.try_add(&step)?;
        }
        Ok(Some(quot.mul_monomial(&shift_num.div(&shift_den))))
    }
}

impl<C: Coefficient> Add for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn add(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_add(rhs).expect("laurent add: variable count mismatch")
    }
}

impl<C: Coefficient> Sub for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn sub(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_sub(rhs).expect("laurent sub: variable count mismatch")
    }
}

impl<C: Coefficient> Mul for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn mul(self, rhs: Self) -> LaurentPolynomial<C> {
        self.try_mul(rhs).expect("laurent mul: variable count mismatch")
    }
}

impl<C: Coefficient> Neg for &LaurentPolynomial<C> {
    type Output = LaurentPolynomial<C>;
    fn neg(self) -> LaurentPolynomial<C> {
        self.neg_ref()
    }
}

impl<C: Coefficient> fmt::Display for LaurentPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

fn parse_laurent<C: Coefficient>(nvars: usize, s: &str) -> Result<LaurentPolynomial<C>> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentPolynomial::zero(nvars));
    }
    // Split into signed terms at top-level " + " / " - " (and a leading '-').
    let mut terms = Vec::new();
    let mut sign = 1i8;
    let mut rest = s;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let plus = rest.find(" + ");
        let minus = rest.find(" - ");
        let next = match (plus, minus) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        match next {
            Some(pos) => {
                terms.push((sign, rest[..pos].trim()));
                sign = if rest[pos..].starts_with(" - ") { -1 } else { 1 };
                rest = &rest[pos + 3..];
            }
            None => {
                terms.push((sign, rest.trim()));
                break;
            }
        }
    }
    let mut out = LaurentPolynomial::zero(nvars);
    for (sign, t) in terms {
        if t.is_empty() {
            return Err(Error::Parse(format!("empty term in {s:?}")));
        }
        let mut coeff = C::one();
        let mut mono = vec![0i64; nvars];
        for factor in t.split('*') {
            let factor = factor.trim();
            if let Some(var) = factor.strip_prefix('x') {
                let (idx, exp) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad(factor))?),
                    None => (var, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad(factor))?;
                if idx == 0 || idx > nvars {
                    return Err(Error::Parse(format!("variable x{idx} out of range")));
                }
                mono[idx - 1] += exp;
            } else {
                let c: C = factor.parse().map_err(|_| bad(factor))?;
                coeff = coeff * c;
            }
        }
        if sign < 0 {
            coeff = -coeff;
        }
        out.add_term(Monomial(mono), coeff);
    }
    Ok(out)
}

fn bad(factor: &str) -> Error {
    Error::Parse(format!("bad factor {factor:?}"))
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use proptest::prelude::*;

    use super::*;

    type L = LaurentPolynomial<BigInt>;

    fn x(n: usize, i: usize) -> L {
        L::var(n, i)
    }

    fn xinv(n: usize, i: usize) -> L {
        let mut m = Monomial::one(n);
        m.0[i] = -1;
        L::monomial(n, m, BigInt::one())
    }

    #[test]
    fn unit_cancellation() {
        assert_eq!(&x(2, 0) * &xinv(2, 0), L::one(2));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let z = &x(2, 0) + &(-&x(2, 0));
        assert!(z.is_zero());
        assert_eq!(z.nterms(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn distributes_and_prints() {
        let p = &(&L::one(2) + &x(2, 1)) * &xinv(2, 0);
        assert_eq!(p.to_string(), "x1^-1 + x1^-1*x2");
    }

    #[test]
    fn equality_ignores_construction_order() {
        let a = L::from_terms(
            2,
            [(Monomial(vec![-1, 1]), BigInt::one()), (Monomial(vec![-1, 0]), BigInt::one())],
        );
        let b = L::from_terms(
            2,
            [(Monomial(vec![-1, 0]), BigInt::one()), (Monomial(vec![-1, 1]), BigInt::one())],
        );
        assert!(a.try_eq(&b).unwrap());
        assert!(!x(2, 0).try_eq(&x(2, 1)).unwrap());
    }

    #[test]
    fn variable_count_mismatch() {
        assert!(matches!(x(2, 0).try_add(&x(3, 0)), Err(Error::VariableCountMismatch(2, 3))));
        assert!(x(2, 0).try_mul(&x(3, 0)).is_err());
        assert!(x(2, 0).try_eq(&x(3, 0)).is_err());
    }

    #[test]
    fn scale_by_zero_clears() {
        assert!(x(2, 0).scale(&BigInt::zero()).is_zero());
        assert_eq!(x(2, 0).scale(&BigInt::from(-3)).to_string(), "-3*x1");
    }

    #[test]
    fn prints_negative_and_constant_terms() {
        let p = L::parse(2, "2 - x1^-1*x2^3 + x2").unwrap();
        assert_eq!(p.to_string(), "2 + x2 - x1^-1*x2^3");
        assert_eq!(L::parse(2, "-1").unwrap().to_string(), "-1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(L::parse(2, "x3").is_err());
        assert!(L::parse(2, "y1").is_err());
        assert!(L::parse(2, "x1 + ").is_err());
    }

    #[test]
    fn exact_division() {
        let num = L::parse(2, "1 + x1 + x2 + x1*x2").unwrap();
        let den = L::parse(2, "1 + x1").unwrap();
        assert_eq!(num.exact_div(&den).unwrap().unwrap().to_string(), "1 + x2");
        let laurent = L::parse(2, "x1^-1 + x1^-1*x2").unwrap();
        assert_eq!(laurent.exact_div(&x(2, 1)).unwrap().unwrap().to_string(), "x1^-1*x2^-1 + x1^-1");
        assert!(L::one(2).exact_div(&den).unwrap().is_none());
        let two = L::constant(2, BigInt::from(2));
        assert!(L::one(2).exact_div(&two).unwrap().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = L> {
        prop::collection::vec(((-2i64..3, -2i64..3), -3i64..4), 0..5).prop_map(|terms| {
            L::from_terms(
                2,
                terms.into_iter().map(|((a, b), c)| (Monomial(vec![a, b]), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            prop_assert_eq!(L::parse(2, &a.to_string()).unwrap(), a);
        }

        #[test]
        fn division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.exact_div(&b).unwrap(), Some(a));
        }
    }
}
