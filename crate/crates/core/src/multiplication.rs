//! Stratified verification of cluster multiplication formulas.
//!
//! Each projectivized morphism space is enumerated point by point over
//! several prime fields. Points are grouped by the prime-independent
//! fingerprint of their middle term; every group must have a single
//! subrepresentation count profile at each prime, so its character is well
//! defined. Group sizes are interpolated into counting polynomials whose value
//! at 1 is the Euler characteristic of the stratum.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::ar::{
    ar_inverse, has_projective_summand, hom_side_middle_term, injective_sum, is_projective,
    projective_multiplicities, projective_side_middle_term, ClusterObject, HomSide,
    ObjectDescriptor,
};
use crate::character::{cc, cc_from_profile};
use crate::error::{Error, Result};
use crate::grass::{interpolate_profiles, profile_degree_bound, subrep_counts, CountingPolynomial};
use crate::laurent::Monomial;
use crate::linalg::PrimeField;
use crate::primes::SamplePrimes;
use crate::quiver::{DimVector, Quiver};
use crate::rep::{
    battery, ext1_space, fingerprint, hom_basis, kernel, cokernel, middle_term, ExtCocycle,
    Fingerprint, Morphism, Representation,
};
use crate::Laurent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// ℙExt^1(M, L), middle terms of extensions.
    Ext,
    /// ℙHom(L, τM), middle terms `Ker g ⊕ τ⁻¹ Coker g`.
    Hom,
    /// ℙHom(P, M), middle terms `Coker f ⊕ (Ker f)[1]`.
    ProjShiftHom,
    /// ℙHom(M, νP), middle terms `Ker h ⊕ τ⁻¹ Coker h`.
    ProjShiftInj,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Ext => "ext",
            Side::Hom => "hom",
            Side::ProjShiftHom => "proj-shift-hom",
            Side::ProjShiftInj => "proj-shift-inj",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumReport {
    pub side: Side,
    pub space: String,
    pub middle_term: ObjectDescriptor,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub chi: BigInt,
    pub counting_polynomial: CountingPolynomial,
    #[serde(serialize_with = "crate::ser::laurent")]
    pub character: Laurent,
}

/// All strata of one projectivized space.
#[derive(Debug, Clone, Serialize)]
pub struct Stratification {
    pub side: Side,
    pub space: String,
    pub dimension: usize,
    pub primes: Vec<u64>,
    pub strata: Vec<StratumReport>,
}

impl Stratification {
    pub fn chi_sum(&self) -> BigInt {
        self.strata.iter().map(|s| &s.chi).sum()
    }

    /// `Σ χ(Y) X_Y`.
    pub fn weighted_sum(&self, nvars: usize) -> Laurent {
        self.strata.iter().fold(Laurent::zero(nvars), |acc, s| {
            &acc + &s.character.scale(&s.chi)
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub kind: String,
    /// The scalar on the left-hand side.
    pub coefficient: usize,
    #[serde(serialize_with = "crate::ser::laurent")]
    pub lhs: Laurent,
    #[serde(serialize_with = "crate::ser::laurent")]
    pub rhs: Laurent,
    pub stratifications: Vec<Stratification>,
    pub verdict: bool,
}

impl VerificationReport {
    fn new(kind: &str, coefficient: usize, lhs: Laurent, stratifications: Vec<Stratification>) -> Self {
        let n = lhs.nvars();
        let rhs = stratifications
            .iter()
            .fold(Laurent::zero(n), |acc, s| &acc + &s.weighted_sum(n));
        let verdict = lhs == rhs;
        VerificationReport { kind: kind.into(), coefficient, lhs, rhs, stratifications, verdict }
    }

    pub fn strata(&self) -> impl Iterator<Item = &StratumReport> {
        self.stratifications.iter().flat_map(|s| &s.strata)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "lhs: {}", self.lhs)?;
        for s in &self.stratifications {
            writeln!(f, "space {} [{}]: dim {}, chi sum {}", s.space, s.side, s.dimension, s.chi_sum())?;
            for st in &s.strata {
                writeln!(f, "  {}: chi = {}, X = {}", st.middle_term, st.chi, st.character)?;
            }
        }
        writeln!(f, "rhs: {}", self.rhs)?;
        write!(f, "verdict: {}", self.verdict)
    }
}

type Builder<'a> = Box<dyn Fn(&[i64]) -> Result<ClusterObject> + 'a>;

#[derive(Debug, Clone)]
struct Bucket {
    count: u128,
    dim: DimVector,
    shifted: Vec<usize>,
    profile: BTreeMap<DimVector, u128>,
}

type Survey = (usize, BTreeMap<(Fingerprint, Vec<usize>), Bucket>);

/// Calls `f` on the normalized representative (first nonzero coordinate 1)
/// of every point of ℙ(F_p^d).
fn for_each_projective_point<F: FnMut(&[i64]) -> Result<()>>(p: u64, d: usize, mut f: F) -> Result<()> {
    for lead in 0..d {
        let mut c = vec![0i64; d];
        c[lead] = 1;
        loop {
            f(&c)?;
            let mut k = lead + 1;
            loop {
                if k == d {
                    break;
                }
                c[k] += 1;
                if c[k] < p as i64 {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
        }
    }
    Ok(())
}

fn survey(q: &Quiver, fp: &PrimeField, d: usize, build: &Builder<'_>) -> Result<Survey> {
    let bat = battery(q);
    let mut buckets: BTreeMap<(Fingerprint, Vec<usize>), Bucket> = BTreeMap::new();
    for_each_projective_point(fp.p(), d, |c| {
        let y = build(c)?;
        let key = (fingerprint(q, fp, &bat, &y.module), y.shifted.clone());
        let profile = subrep_counts(q, fp, &y.module);
        match buckets.get_mut(&key) {
            Some(b) => {
                if b.profile != profile {
                    return Err(Error::NotPolynomialCount(format!(
                        "middle terms with equal invariants {} have different subrepresentation counts at p = {}",
                        y.descriptor(),
                        fp.p()
                    )));
                }
                b.count += 1;
            }
            None => {
                buckets.insert(
                    key,
                    Bucket { count: 1, dim: y.module.dim().clone(), shifted: y.shifted, profile },
                );
            }
        }
        Ok(())
    })?;
    Ok((d, buckets))
}

fn stratify<'s, F>(
    q: &Quiver,
    primes: &SamplePrimes,
    max_entry: i64,
    side: Side,
    space: &str,
    setup: F,
) -> Result<Stratification>
where
    F: Fn(PrimeField) -> Result<(usize, Builder<'s>)> + Sync,
{
    let run = |p: u64| -> Result<Survey> {
        let fp = PrimeField::new(p);
        let (d, build) = setup(fp)?;
        survey(q, &fp, d, &build)
    };
    let mut surveys: BTreeMap<u64, Survey> = BTreeMap::new();
    let mut needed = 2;
    let ps = loop {
        let ps = primes.select(needed, max_entry)?;
        let fresh: Vec<(u64, Survey)> = ps
            .par_iter()
            .filter(|p| !surveys.contains_key(p))
            .map(|&p| run(p).map(|s| (p, s)))
            .collect::<Result<Vec<_>>>()?;
        surveys.extend(fresh);
        let dims: BTreeSet<usize> = ps.iter().map(|p| surveys[p].0).collect();
        if dims.len() > 1 {
            return Err(Error::PrimeInstability(format!("{space} has dimensions {dims:?}")));
        }
        let d = *dims.iter().next().expect("at least one prime");
        let bound = ps
            .iter()
            .flat_map(|p| surveys[p].1.values())
            .map(|b| profile_degree_bound(&b.dim))
            .max()
            .unwrap_or(0);
        let want = (d + 1).max(bound + 2);
        if ps.len() >= want {
            break ps;
        }
        needed = want;
    };
    let d = surveys[&ps[0]].0;
    let keys: BTreeSet<&(Fingerprint, Vec<usize>)> =
        ps.iter().flat_map(|p| surveys[p].1.keys()).collect();
    let mut strata = Vec::new();
    for key in keys {
        let mut points = Vec::new();
        let mut profiles = Vec::new();
        let mut sample: Option<&Bucket> = None;
        for p in &ps {
            let Some(b) = surveys[p].1.get(key) else {
                return Err(Error::NotPolynomialCount(format!(
                    "a stratum of {space} is empty at p = {p} but not at other primes"
                )));
            };
            points.push((*p, BigInt::from(b.count)));
            profiles.push((*p, b.profile.clone()));
            sample = Some(b);
        }
        let b = sample.expect("nonempty stratum");
        let poly = CountingPolynomial::interpolate(&points, d.saturating_sub(1))?;
        let chi = poly.chi();
        let profile = interpolate_profiles(&b.dim, &profiles)?;
        let character = cc_from_profile(q, &b.dim, &profile, &b.shifted);
        strata.push(StratumReport {
            side,
            space: space.into(),
            middle_term: ObjectDescriptor { dim: b.dim.clone(), shifted: b.shifted.clone() },
            chi,
            counting_polynomial: poly,
            character,
        });
    }
    let st = Stratification { side, space: space.into(), dimension: d, primes: ps, strata };
    let sum = st.chi_sum();
    if sum != BigInt::from(d) {
        return Err(Error::StratumSum { expected: d as i64, got: sum.to_string() });
    }
    Ok(st)
}

fn max_entry(modules: &[&Representation]) -> i64 {
    modules.iter().map(|m| m.max_abs_entry()).max().unwrap_or(0)
}

fn first_prime(primes: &SamplePrimes, entry: i64) -> Result<PrimeField> {
    Ok(PrimeField::new(primes.select(1, entry)?[0]))
}

/// Strata of ℙExt^1(M, L) by middle term of `0 -> L -> Y -> M -> 0`.
pub fn stratify_ext_side(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &Representation,
    l: &Representation,
) -> Result<Stratification> {
    ext_side_labeled(q, primes, m, l, "Ext1(M,L)")
}

fn ext_side_labeled(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &Representation,
    l: &Representation,
    space: &str,
) -> Result<Stratification> {
    stratify(q, primes, max_entry(&[m, l]), Side::Ext, space, |fp| {
        let sp = ext1_space(q, &fp, m, l);
        let d = sp.dim();
        let build: Builder<'_> = Box::new(move |c: &[i64]| {
            let phi = ExtCocycle::linear_combination(&fp, &sp.basis, c);
            Ok(ClusterObject::module(middle_term(q, &fp, m, l, &phi)?))
        });
        Ok((d, build))
    })
}

/// Strata of ℙHom(L, τM) by `Ker g ⊕ τ⁻¹ Coker g`. `M` must not have
/// projective summands.
pub fn stratify_hom_side(
    q: &Quiver,
    primes: &SamplePrimes,
    l: &Representation,
    m: &Representation,
) -> Result<Stratification> {
    if has_projective_summand(q, &first_prime(primes, max_entry(&[m]))?, m) {
        return Err(Error::Precondition("M has a projective direct summand".into()));
    }
    hom_side_labeled(q, primes, l, m, "Hom(L,tauM)")
}

fn hom_side_labeled(
    q: &Quiver,
    primes: &SamplePrimes,
    l: &Representation,
    m: &Representation,
    space: &str,
) -> Result<Stratification> {
    stratify(q, primes, max_entry(&[m, l]), Side::Hom, space, |fp| {
        let side = HomSide::new(q, &fp, m);
        let basis = hom_basis(q, &fp, l, &side.tau_m);
        let d = basis.len();
        let build: Builder<'_> = Box::new(move |c: &[i64]| {
            let g = Morphism::linear_combination(&fp, &basis, c);
            hom_side_middle_term(q, &fp, l, &side, &g)
        });
        Ok((d, build))
    })
}

/// `dim Ext^1(M, L) X_L X_M = Σ_Y (χ_ext(Y) + χ_hom(Y)) X_Y`.
pub fn verify_xx1(
    q: &Quiver,
    primes: &SamplePrimes,
    l: &Representation,
    m: &Representation,
) -> Result<VerificationReport> {
    let fp = first_prime(primes, max_entry(&[l, m]))?;
    if has_projective_summand(q, &fp, m) {
        return Err(Error::Precondition("M has a projective direct summand".into()));
    }
    let ext = stratify_ext_side(q, primes, m, l)?;
    if ext.dimension == 0 {
        return Err(Error::Precondition("Ext^1(M, L) = 0".into()));
    }
    let hom = stratify_hom_side(q, primes, l, m)?;
    let xl = cc(q, primes, &ClusterObject::module(l.clone()))?.value;
    let xm = cc(q, primes, &ClusterObject::module(m.clone()))?.value;
    let lhs = (&xl * &xm).scale(&BigInt::from(ext.dimension));
    Ok(VerificationReport::new("xx1", ext.dimension, lhs, vec![ext, hom]))
}

fn xx2_stratifications(
    q: &Quiver,
    primes: &SamplePrimes,
    p: &Representation,
    m: &Representation,
) -> Result<(usize, Vec<usize>, Vec<Stratification>)> {
    let entry = max_entry(&[p, m]);
    let fp = first_prime(primes, entry)?;
    if !is_projective(q, &fp, p) {
        return Err(Error::Precondition("P is not projective".into()));
    }
    let mults = projective_multiplicities(q, p);
    let summands: Vec<usize> =
        mults.iter().enumerate().flat_map(|(i, &r)| std::iter::repeat_n(i, r)).collect();
    let i = injective_sum(q, &summands);
    let inj = stratify(q, primes, entry, Side::ProjShiftInj, "Hom(M,nuP)", |fp| {
        let basis = hom_basis(q, &fp, m, &i);
        let d = basis.len();
        let i = &i;
        let build: Builder<'_> = Box::new(move |c: &[i64]| {
            let h = Morphism::linear_combination(&fp, &basis, c);
            let (ker, _) = kernel(q, &fp, m, &h);
            let (coker, _) = cokernel(q, &fp, i, &h);
            Ok(ClusterObject::module(ker).direct_sum(&ar_inverse(q, &fp, &coker)))
        });
        Ok((d, build))
    })?;
    let proj = stratify(q, primes, entry, Side::ProjShiftHom, "Hom(P,M)", |fp| {
        let basis = hom_basis(q, &fp, p, m);
        let d = basis.len();
        let build: Builder<'_> = Box::new(move |c: &[i64]| {
            let f = Morphism::linear_combination(&fp, &basis, c);
            projective_side_middle_term(q, &fp, p, m, &f)
        });
        Ok((d, build))
    })?;
    if proj.dimension == 0 {
        return Err(Error::Precondition("Hom(P, M) = 0".into()));
    }
    Ok((proj.dimension, mults, vec![inj, proj]))
}

/// `dim Hom(P, M) X_M X_{P[1]} = Σ_Y χ(ℙHom(M, νP)_Y) X_Y + Σ_Y' χ(ℙHom(P, M)_Y') X_Y'`.
pub fn verify_xx2(
    q: &Quiver,
    primes: &SamplePrimes,
    p: &Representation,
    m: &Representation,
) -> Result<VerificationReport> {
    let (d, mults, strat) = xx2_stratifications(q, primes, p, m)?;
    let xm = cc(q, primes, &ClusterObject::module(m.clone()))?.value;
    let shift = Monomial(mults.iter().map(|&r| r as i64).collect());
    let lhs = xm.mul_monomial(&shift).scale(&BigInt::from(d));
    Ok(VerificationReport::new("xx2", d, lhs, strat))
}

/// `dim Ext^1_C(M, N) X_M X_N` against both direction-wise stratifications.
/// Supports two modules, or one module together with a shifted projective.
pub fn verify_unified(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &ClusterObject,
    n: &ClusterObject,
) -> Result<VerificationReport> {
    let pure_module = |o: &ClusterObject| o.shifted.iter().all(|&s| s == 0);
    let pure_shift = |o: &ClusterObject| o.module.is_zero() && !pure_module(o);
    if pure_module(m) && pure_module(n) {
        let (mm, nn) = (&m.module, &n.module);
        let strat = vec![
            ext_side_labeled(q, primes, mm, nn, "Ext1(M,N)")?,
            hom_side_labeled(q, primes, nn, mm, "Hom(N,tauM)")?,
            ext_side_labeled(q, primes, nn, mm, "Ext1(N,M)")?,
            hom_side_labeled(q, primes, mm, nn, "Hom(M,tauN)")?,
        ];
        let d = strat[0].dimension + strat[2].dimension;
        if d == 0 {
            return Err(Error::Precondition("Ext^1_C(M, N) = 0".into()));
        }
        let lhs = (&cc(q, primes, m)?.value * &cc(q, primes, n)?.value).scale(&BigInt::from(d));
        return Ok(VerificationReport::new("unified", d, lhs, strat));
    }
    let (shift, module) = if pure_shift(m) && pure_module(n) {
        (m, n)
    } else if pure_shift(n) && pure_module(m) {
        (n, m)
    } else {
        return Err(Error::Precondition(
            "unified check needs two modules, or a module and a shifted projective".into(),
        ));
    };
    let summands: Vec<usize> =
        shift.shifted.iter().enumerate().flat_map(|(i, &r)| std::iter::repeat_n(i, r)).collect();
    let p = crate::ar::projective_sum(q, &summands);
    let (d, _, strat) = xx2_stratifications(q, primes, &p, &module.module)?;
    let lhs = (&cc(q, primes, m)?.value * &cc(q, primes, n)?.value).scale(&BigInt::from(d));
    Ok(VerificationReport::new("unified", d, lhs, strat))
}

/// `dim Ext^1_C(M, N) = dim Ext^1(M, N) + dim Ext^1(N, M)` for modules.
pub fn cluster_ext_dim(
    q: &Quiver,
    primes: &SamplePrimes,
    m: &Representation,
    n: &Representation,
) -> Result<usize> {
    let ps = primes.select(2, max_entry(&[m, n]))?;
    let (_, mn) = crate::rep::stable_dims(q, &ps, m, n)?;
    let (_, nm) = crate::rep::stable_dims(q, &ps, n, m)?;
    Ok(mn + nm)
}

impl StratumReport {
    pub fn is_zero_object(&self) -> bool {
        self.middle_term.dim.is_zero() && self.middle_term.shifted.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{d4_tilde_e1, d4_tilde_e2};
    use crate::rep::{standard_module, StandardKind};

    fn std(q: &Quiver, kind: StandardKind, i: usize) -> Representation {
        standard_module(q, kind, i).unwrap()
    }

    fn lp(n: usize, s: &str) -> Laurent {
        Laurent::parse(n, s).unwrap()
    }

    #[test]
    fn projective_points() {
        let mut n = 0;
        for_each_projective_point(5, 3, |_| {
            n += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(n, 31);
        for_each_projective_point(5, 0, |_| panic!("no points")).unwrap();
    }

    #[test]
    fn a2_exchange() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let (s1, s2) = (std(&q, StandardKind::Simple, 0), std(&q, StandardKind::Simple, 1));
        let r = verify_xx1(&q, &auto, &s2, &s1).unwrap();
        assert!(r.verdict, "{r}");
        assert_eq!(r.coefficient, 1);
        let p1 = cc(&q, &auto, &ClusterObject::module(std(&q, StandardKind::Projective, 0))).unwrap();
        assert_eq!(r.rhs, &p1.value + &Laurent::one(2));
        let ext = &r.stratifications[0];
        assert_eq!(ext.strata.len(), 1);
        assert_eq!(ext.strata[0].middle_term.dim.0, vec![1, 1]);
        assert!(r.stratifications[1].strata[0].is_zero_object());
    }

    #[test]
    fn xx1_rejects_projective_m() {
        let q = Quiver::linear_a(2);
        let p2 = std(&q, StandardKind::Projective, 1);
        let s1 = std(&q, StandardKind::Simple, 0);
        assert!(matches!(
            verify_xx1(&q, &SamplePrimes::Auto, &s1, &p2),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn a2_projective_shift() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let p1 = std(&q, StandardKind::Projective, 0);
        let p2 = std(&q, StandardKind::Projective, 1);
        let r = verify_xx2(&q, &auto, &p2, &p1).unwrap();
        assert!(r.verdict, "{r}");
        let s1 = cc(&q, &auto, &ClusterObject::module(std(&q, StandardKind::Simple, 0))).unwrap();
        assert_eq!(r.rhs, &s1.value + &Laurent::one(2));
        let r = verify_xx2(&q, &auto, &p1, &p1).unwrap();
        assert!(r.verdict, "{r}");
        let s2 = std(&q, StandardKind::Simple, 1);
        assert!(matches!(verify_xx2(&q, &auto, &p1, &s2), Err(Error::Precondition(_))));
    }

    #[test]
    fn kronecker_simples() {
        let q = Quiver::generalized_kronecker(2);
        let auto = SamplePrimes::Auto;
        let (s1, s2) = (std(&q, StandardKind::Simple, 0), std(&q, StandardKind::Simple, 1));
        let r = verify_xx1(&q, &auto, &s2, &s1).unwrap();
        assert!(r.verdict, "{r}");
        assert_eq!(r.coefficient, 2);
        let ext = &r.stratifications[0];
        assert_eq!(ext.strata.len(), 1);
        assert_eq!(ext.strata[0].chi, BigInt::from(2));
        assert_eq!(ext.strata[0].character, lp(2, "x1^-1*x2^-1 + x1*x2^-1 + x1^-1*x2"));
        let hom = &r.stratifications[1];
        assert_eq!(hom.strata[0].middle_term.shifted, vec![1, 1]);
    }

    #[test]
    fn d4_tilde_flagship() {
        let q = Quiver::d4_tilde_sink();
        let auto = SamplePrimes::Auto;
        let (e1, e2) = (d4_tilde_e1(&q).unwrap(), d4_tilde_e2(&q).unwrap());
        let r = verify_xx1(&q, &auto, &e2, &e1).unwrap();
        assert!(r.verdict, "{r}");
        assert_eq!(r.stratifications[0].strata[0].middle_term.dim.0, vec![1, 1, 1, 1, 2]);
        let u = verify_unified(&q, &auto, &ClusterObject::module(e1), &ClusterObject::module(e2))
            .unwrap();
        assert!(u.verdict, "{u}");
        assert_eq!(u.coefficient, 2);
    }

    #[test]
    fn unified_with_shift() {
        let q = Quiver::linear_a(2);
        let auto = SamplePrimes::Auto;
        let p1 = ClusterObject::module(std(&q, StandardKind::Projective, 0));
        let shift = ClusterObject::shifted_projective(&q, vec![0, 1]).unwrap();
        let r = verify_unified(&q, &auto, &shift, &p1).unwrap();
        assert!(r.verdict, "{r}");
        let mixed = p1.direct_sum(&shift);
        assert!(verify_unified(&q, &auto, &mixed, &p1).is_err());
    }
}
