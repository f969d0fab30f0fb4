//! Quiver Grassmannians: point counts over prime fields, counting polynomials
//! and Euler characteristics.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use crate::primes::SamplePrimes;
use crate::quiver::{DimVector, Quiver};
use crate::rep::Representation;

/// Gaussian binomial `[n choose k]_p`, the number of k-dimensional subspaces
/// of `F_p^n`.
pub fn gaussian_binomial(p: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let p = p as u128;
    let mut g: u128 = 1;
    for i in 0..k {
        g = g * (p.pow((n - i) as u32) - 1) / (p.pow((i + 1) as u32) - 1);
    }
    g
}

/// Calls `f` with a basis (as columns) of every `k`-dimensional subspace of
/// `F_p^w`, each subspace once, via reduced row echelon representatives.
pub fn for_each_subspace<F: FnMut(&Matrix)>(p: u64, w: usize, k: usize, mut f: F) {
    let mut pivots: Vec<usize> = (0..k).collect();
    if k > w {
        return;
    }
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = &pivots;
                (pv[r] + 1..w).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut vals = vec![0i64; free.len()];
        loop {
            let mut basis = Matrix::zeros(w, k);
            for (r, &c) in pivots.iter().enumerate() {
                basis.set(c, r, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                basis.set(c, r, v);
            }
            f(&basis);
            if !odometer(&mut vals, p as i64) {
                break;
            }
        }
        if !next_combination(&mut pivots, w) {
            break;
        }
    }
}

fn odometer(vals: &mut [i64], base: i64) -> bool {
    for v in vals.iter_mut() {
        *v += 1;
        if *v < base {
            return true;
        }
        *v = 0;
    }
    false
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Enumerator<'a> {
    q: &'a Quiver,
    fp: PrimeField,
    m: Representation,
    order: Vec<usize>,
    has_incoming: Vec<bool>,
    target: Option<&'a DimVector>,
    out: BTreeMap<DimVector, u128>,
}

impl Enumerator<'_> {
    /// Vectors of `M_v` mapped into the chosen subspaces by every arrow out of `v`.
    fn admissible(&self, v: usize, chosen: &[Option<Matrix>]) -> Matrix {
        let dv = self.m.dim()[v];
        let mut constraints = Matrix::zeros(0, dv);
        for (a, &(s, t)) in self.q.arrows().iter().enumerate() {
            if s != v {
                continue;
            }
            let b = chosen[t].as_ref().expect("targets are chosen first");
            let annihilator = self.fp.nullspace(&b.transpose()).transpose();
            let c = self.fp.matmul(&annihilator, self.m.map(a));
            constraints = Matrix::vstack(&constraints, &c);
        }
        self.fp.nullspace(&constraints)
    }

    fn run(&mut self, idx: usize, chosen: &mut Vec<Option<Matrix>>, e: &mut Vec<usize>, mult: u128) {
        if idx == self.order.len() {
            *self.out.entry(DimVector(e.clone())).or_insert(0) += mult;
            return;
        }
        let v = self.order[idx];
        let w_basis = self.admissible(v, chosen);
        let w = w_basis.cols();
        let ks: Vec<usize> = match self.target {
            Some(t) if t[v] > w => return,
            Some(t) => vec![t[v]],
            None => (0..=w).collect(),
        };
        let p = self.fp.p();
        for k in ks {
            e[v] = k;
            if !self.has_incoming[v] {
                // nothing downstream depends on the choice at a source
                self.run(idx + 1, chosen, e, mult * gaussian_binomial(p, w, k));
                continue;
            }
            let mut subspaces = Vec::new();
            for_each_subspace(p, w, k, |s| subspaces.push(self.fp.matmul(&w_basis, s)));
            for basis in subspaces {
                chosen[v] = Some(basis);
                self.run(idx + 1, chosen, e, mult);
            }
            chosen[v] = None;
        }
        e[v] = 0;
    }
}

fn enumerate(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    target: Option<&DimVector>,
) -> BTreeMap<DimVector, u128> {
    let mut has_incoming = vec![false; q.n()];
    for &(_, t) in q.arrows() {
        has_incoming[t] = true;
    }
    let mut en = Enumerator {
        q,
        fp: *fp,
        m: m.reduce(fp),
        order: q.topological_order().iter().rev().copied().collect(),
        has_incoming,
        target,
        out: BTreeMap::new(),
    };
    let mut chosen = vec![None; q.n()];
    let mut e = vec![0; q.n()];
    en.run(0, &mut chosen, &mut e, 1);
    en.out
}

/// Number of `F_p`-points of `Gr_e(M)`.
pub fn count_subreps(q: &Quiver, m: &Representation, e: &DimVector, p: u64) -> Result<u128> {
    if e.len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: e.len() });
    }
    if !e.le(m.dim()) {
        return Err(Error::Precondition(format!("{e} exceeds dim M = {}", m.dim())));
    }
    let fp = PrimeField::new(p);
    Ok(enumerate(q, &fp, m, Some(e)).get(e).copied().unwrap_or(0))
}

/// Point counts of every `Gr_e(M)` at one prime; empty Grassmannians omitted.
pub fn subrep_counts(q: &Quiver, fp: &PrimeField, m: &Representation) -> BTreeMap<DimVector, u128> {
    let mut out = enumerate(q, fp, m, None);
    out.retain(|_, c| *c > 0);
    out
}

/// Integer polynomial in `q` whose values are point counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountingPolynomial {
    /// Coefficients by ascending degree, without trailing zeros.
    #[serde(serialize_with = "crate::ser::bigints")]
    pub coefficients: Vec<BigInt>,
}

impl CountingPolynomial {
    /// Interpolates through the first `degree_bound + 1` points and checks
    /// every remaining point. At least one check point is required.
    pub fn interpolate(points: &[(u64, BigInt)], degree_bound: usize) -> Result<Self> {
        if points.len() < degree_bound + 2 {
            return Err(Error::Configuration(format!(
                "degree bound {degree_bound} needs {} sample primes, got {}",
                degree_bound + 2,
                points.len()
            )));
        }
        let (fit, check) = points.split_at(degree_bound + 1);
        let mut coeffs = vec![BigRational::zero(); fit.len()];
        for (i, (xi, yi)) in fit.iter().enumerate() {
            let xi = BigInt::from(*xi);
            let mut basis = vec![BigRational::one()];
            let mut denom = BigInt::one();
            for (j, (xj, _)) in fit.iter().enumerate() {
                if i == j {
                    continue;
                }
                let xj = BigInt::from(*xj);
                // basis *= (x - xj)
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * BigRational::from_integer(xj.clone());
                }
                basis = next;
                denom *= &xi - &xj;
            }
            let scale = BigRational::new(yi.clone(), denom);
            for (d, c) in basis.into_iter().enumerate() {
                coeffs[d] += c * &scale;
            }
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_integer()) {
            return Err(Error::NotPolynomialCount(format!(
                "interpolated coefficient {bad} is not an integer"
            )));
        }
        let mut coefficients: Vec<BigInt> = coeffs.into_iter().map(|c| c.to_integer()).collect();
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        let poly = CountingPolynomial { coefficients };
        for (x, y) in check {
            let v = poly.eval(&BigInt::from(*x));
            if &v != y {
                return Err(Error::NotPolynomialCount(format!(
                    "count {y} at p = {x} disagrees with interpolated value {v}"
                )));
            }
        }
        Ok(poly)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Euler characteristic, the value at 1.
    pub fn chi(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }
}

/// Largest Grassmannian degree bound over all `e <= dim`.
pub fn profile_degree_bound(dim: &DimVector) -> usize {
    dim.0.iter().map(|d| (d / 2) * (d - d / 2)).sum()
}

pub fn euler_char_grassmannian(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &Representation,
    e: &DimVector,
) -> Result<BigInt> {
    if e.len() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), got: e.len() });
    }
    let bound = m.dim().grassmannian_degree_bound(e);
    let ps = primes.select(bound + 2, m.max_abs_entry())?;
    let points = ps
        .par_iter()
        .map(|&p| count_subreps(q, m, e, p).map(|c| (p, BigInt::from(c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(CountingPolynomial::interpolate(&points, bound)?.chi())
}

/// χ(Gr_e M) for every `e <= dim M`; zero entries omitted.
pub fn grassmannian_profile(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &Representation,
) -> Result<BTreeMap<DimVector, BigInt>> {
    let ps = primes.select(profile_degree_bound(m.dim()) + 2, m.max_abs_entry())?;
    let counts: Vec<(u64, BTreeMap<DimVector, u128>)> = ps
        .par_iter()
        .map(|&p| (p, subrep_counts(q, &PrimeField::new(p), m)))
        .collect();
    interpolate_profiles(m.dim(), &counts)
}

/// Interpolates per-prime count profiles of modules of dimension `dim` (one
/// module per prime, possibly different reductions) into Euler
/// characteristics.
pub fn interpolate_profiles(
    dim: &DimVector,
    counts: &[(u64, BTreeMap<DimVector, u128>)],
) -> Result<BTreeMap<DimVector, BigInt>> {
    let keys: BTreeSet<&DimVector> = counts.iter().flat_map(|(_, c)| c.keys()).collect();
    let mut out = BTreeMap::new();
    for e in keys {
        let points: Vec<(u64, BigInt)> = counts
            .iter()
            .map(|(p, c)| (*p, BigInt::from(c.get(e).copied().unwrap_or(0))))
            .collect();
        let poly = CountingPolynomial::interpolate(&points, dim.grassmannian_degree_bound(e))
            .map_err(|err| match err {
                Error::NotPolynomialCount(msg) => Error::NotPolynomialCount(format!("Gr_{e}: {msg}")),
                other => other,
            })?;
        let chi = poly.chi();
        if !chi.is_zero() {
            out.insert(e.clone(), chi);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{direct_sum, standard_module, StandardKind};

    fn dv(v: &[usize]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(3, 2, 1), 4);
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(5, 3, 0), 1);
        assert_eq!(gaussian_binomial(5, 3, 4), 0);
        for (w, k) in [(3, 1), (3, 2), (4, 2)] {
            let mut n = 0;
            for_each_subspace(3, w, k, |_| n += 1);
            assert_eq!(n as u128, gaussian_binomial(3, w, k));
        }
    }

    #[test]
    fn a2_counts() {
        let q = Quiver::linear_a(2);
        let p1 = standard_module(&q, StandardKind::Projective, 0).unwrap();
        let s2 = standard_module(&q, StandardKind::Simple, 1).unwrap();
        let s2s2 = direct_sum(&s2, &s2);
        for p in [2, 23, 29] {
            assert_eq!(count_subreps(&q, &p1, &dv(&[0, 0]), p).unwrap(), 1);
            assert_eq!(count_subreps(&q, &p1, &dv(&[0, 1]), p).unwrap(), 1);
            assert_eq!(count_subreps(&q, &p1, &dv(&[1, 0]), p).unwrap(), 0);
            assert_eq!(count_subreps(&q, &s2s2, &dv(&[0, 1]), p).unwrap(), p as u128 + 1);
        }
        assert!(count_subreps(&q, &p1, &dv(&[2, 0]), 23).is_err());
    }

    #[test]
    fn a2_euler_characteristics() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let p1 = standard_module(&q, StandardKind::Projective, 0).unwrap();
        let s1 = standard_module(&q, StandardKind::Simple, 0).unwrap();
        let s2 = standard_module(&q, StandardKind::Simple, 1).unwrap();
        let s2s2 = direct_sum(&s2, &s2);
        assert_eq!(euler_char_grassmannian(&q, &auto, &p1, &dv(&[0, 1])).unwrap(), 1.into());
        assert_eq!(euler_char_grassmannian(&q, &auto, &s2s2, &dv(&[0, 1])).unwrap(), 2.into());
        assert_eq!(euler_char_grassmannian(&q, &auto, &p1, &dv(&[1, 0])).unwrap(), 0.into());
        let prof = |m| grassmannian_profile(&q, &auto, m).unwrap();
        let one = BigInt::from(1);
        assert_eq!(
            prof(&s1),
            BTreeMap::from([(dv(&[0, 0]), one.clone()), (dv(&[1, 0]), one.clone())])
        );
        assert_eq!(
            prof(&p1),
            BTreeMap::from([
                (dv(&[0, 0]), one.clone()),
                (dv(&[0, 1]), one.clone()),
                (dv(&[1, 1]), one.clone())
            ])
        );
        assert_eq!(prof(&Representation::zero(&q)), BTreeMap::from([(dv(&[0, 0]), one)]));
    }

    #[test]
    fn interpolation_detects_non_polynomial_counts() {
        let pts: Vec<(u64, BigInt)> = [23u64, 29, 31].iter().map(|&p| (p, BigInt::from(p + 1))).collect();
        let poly = CountingPolynomial::interpolate(&pts, 1).unwrap();
        assert_eq!(poly.coefficients, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(poly.chi(), BigInt::from(2));
        let bad: Vec<(u64, BigInt)> =
            [23u64, 29, 31].iter().map(|&p| (p, BigInt::from(p * p))).collect();
        assert!(matches!(
            CountingPolynomial::interpolate(&bad, 1),
            Err(Error::NotPolynomialCount(_))
        ));
        assert!(matches!(
            CountingPolynomial::interpolate(&pts[..2], 1),
            Err(Error::Configuration(_))
        ));
    }

    #[test]
    fn profile_sums_to_total_count() {
        let q = Quiver::generalized_kronecker(2);
        let p1 = standard_module(&q, StandardKind::Projective, 0).unwrap();
        let i2 = standard_module(&q, StandardKind::Injective, 1).unwrap();
        let m = direct_sum(&p1, &i2);
        let fp = PrimeField::new(5);
        let total: u128 = subrep_counts(&q, &fp, &m).values().sum();
        let by_e: u128 =
            m.dim().sub_vectors().iter().map(|e| count_subreps(&q, &m, e, 5).unwrap()).sum();
        assert_eq!(total, by_e);
    }
}
