//! Named modules used throughout the tests and the command line.

use crate::ar::ar_inverse;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{standard_module, Representation, StandardKind};

fn d4_tilde_check(q: &Quiver) -> Result<()> {
    if *q != Quiver::d4_tilde_sink() {
        return Err(Error::Precondition("expected the four-leaf star with sink center".into()));
    }
    Ok(())
}

fn star_module(q: &Quiver, leaves: [usize; 2]) -> Result<Representation> {
    d4_tilde_check(q)?;
    let mut dim = vec![0, 0, 0, 0, 1];
    leaves.iter().for_each(|&l| dim[l] = 1);
    let maps = (0..4).map(|l| Matrix::from_rows(1, dim[l], vec![1; dim[l]])).collect();
    Representation::new(q, DimVector(dim), maps)
}

/// Regular simple of dimension (1,1,0,0,1) in a rank-2 tube of the star.
pub fn d4_tilde_e1(q: &Quiver) -> Result<Representation> {
    star_module(q, [0, 1])
}

/// Regular simple of dimension (0,0,1,1,1), the τ-partner of [`d4_tilde_e1`].
pub fn d4_tilde_e2(q: &Quiver) -> Result<Representation> {
    star_module(q, [2, 3])
}

/// Kronecker module `k --(a, b)--> k`.
pub fn kronecker_regular(a: i64, b: i64) -> Representation {
    let q = Quiver::generalized_kronecker(2);
    Representation::new(
        &q,
        DimVector(vec![1, 1]),
        vec![Matrix::from_rows(1, 1, vec![a]), Matrix::from_rows(1, 1, vec![b])],
    )
    .expect("shapes")
}

/// Interval module supported on vertices `i..=j` (0-based) of `1 -> ... -> n`.
pub fn interval_module(n: usize, i: usize, j: usize) -> Result<Representation> {
    if i > j || j >= n {
        return Err(Error::Precondition(format!("bad interval [{}, {}]", i + 1, j + 1)));
    }
    let q = Quiver::linear_a(n);
    let dim: Vec<usize> = (0..n).map(|k| usize::from(i <= k && k <= j)).collect();
    let maps = (0..n - 1)
        .map(|a| {
            let (s, t) = (dim[a], dim[a + 1]);
            Matrix::from_rows(t, s, vec![1; s * t])
        })
        .collect();
    Representation::new(&q, DimVector(dim), maps)
}

/// All indecomposable modules of a representation-finite quiver, as the
/// τ⁻¹-orbits of the indecomposable projectives.
pub fn finite_type_indecomposables(q: &Quiver) -> Result<Vec<Representation>> {
    if !q.is_finite_type() {
        return Err(Error::Precondition("quiver is not of finite representation type".into()));
    }
    let fp = PrimeField::new(101);
    let limit = 64 * q.n() * q.n();
    let mut out = Vec::new();
    for i in 0..q.n() {
        let mut m = standard_module(q, StandardKind::Projective, i)?;
        loop {
            out.push(m.clone());
            if out.len() > limit {
                return Err(Error::Precondition("τ⁻¹-orbit does not terminate".into()));
            }
            let next = ar_inverse(q, &fp, &m);
            if next.module.is_zero() {
                break;
            }
            m = next.module.symmetric_lift(fp.p());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{ext1_dim, hom_dim};

    #[test]
    fn star_modules_form_a_tube() {
        let q = Quiver::d4_tilde_sink();
        let fp = PrimeField::new(23);
        let e1 = d4_tilde_e1(&q).unwrap();
        let e2 = d4_tilde_e2(&q).unwrap();
        assert_eq!(ext1_dim(&q, &fp, &e1, &e2), 1);
        assert_eq!(ext1_dim(&q, &fp, &e2, &e1), 1);
        assert_eq!(hom_dim(&q, &fp, &e1, &e2), 0);
        assert!(d4_tilde_e1(&Quiver::linear_a(5)).is_err());
    }

    #[test]
    fn indecomposable_counts() {
        assert_eq!(finite_type_indecomposables(&Quiver::linear_a(2)).unwrap().len(), 3);
        assert_eq!(finite_type_indecomposables(&Quiver::linear_a(3)).unwrap().len(), 6);
        let d4 = Quiver::new(4, vec![(0, 3), (1, 3), (2, 3)]).unwrap();
        assert_eq!(finite_type_indecomposables(&d4).unwrap().len(), 12);
        assert!(finite_type_indecomposables(&Quiver::generalized_kronecker(2)).is_err());
    }

    #[test]
    fn intervals() {
        let m = interval_module(3, 0, 1).unwrap();
        assert_eq!(m.dim().0, vec![1, 1, 0]);
        assert!(interval_module(3, 2, 1).is_err());
    }
}
