//! Seed mutation for skew-symmetric exchange matrices.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::Monomial;
use crate::quiver::Quiver;
use crate::Laurent;

/// Exchange matrix and cluster, the latter as Laurent polynomials in the
/// initial variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    pub b: Vec<Vec<i64>>,
    pub cluster: Vec<Laurent>,
}

impl Seed {
    pub fn initial(q: &Quiver) -> Self {
        let n = q.n();
        Seed { b: q.exchange_matrix(), cluster: (0..n).map(|i| Laurent::var(n, i)).collect() }
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    /// Mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.rank();
        if k >= n {
            return Err(Error::InvalidDirection { k: k + 1, n });
        }
        let b = &self.b;
        let mut plus = Laurent::one(n);
        let mut minus = Laurent::one(n);
        for i in 0..n {
            let e = b[i][k];
            if e > 0 {
                plus = &plus * &self.cluster[i].pow(e as u32);
            } else if e < 0 {
                minus = &minus * &self.cluster[i].pow((-e) as u32);
            }
        }
        let numerator = &plus + &minus;
        let x_new = numerator.exact_div(&self.cluster[k])?.ok_or_else(|| {
            Error::NotLaurent(format!("({numerator}) / ({})", self.cluster[k]))
        })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = x_new;
        let b_new = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Seed { b: b_new, cluster })
    }
}

/// Variables reached by mutation sequences of bounded length.
#[derive(Debug, Clone)]
pub struct Closure {
    /// Sorted by canonical string.
    pub variables: Vec<Laurent>,
    /// Number of distinct variables known after each depth `0..=depth`.
    pub counts: Vec<usize>,
}

impl Closure {
    /// Whether the last explored depth produced no new variable.
    pub fn stabilized(&self) -> bool {
        let c = &self.counts;
        c.len() >= 2 && c[c.len() - 1] == c[c.len() - 2]
    }
}

fn key(v: &Laurent) -> String {
    v.to_canonical_string()
}

/// Breadth-first closure under mutation up to `depth` steps.
pub fn enumerate_cluster_variables(q: &Quiver, depth: usize) -> Result<Closure> {
    let n = q.n();
    let start = Seed::initial(q);
    let mut variables: BTreeMap<String, Laurent> =
        start.cluster.iter().map(|v| (key(v), v.clone())).collect();
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    seen.insert(start.cluster.iter().map(key).collect());
    let mut frontier = vec![(start, usize::MAX)];
    let mut counts = vec![variables.len()];
    for _ in 0..depth {
        let next: Vec<(Seed, usize)> = frontier
            .par_iter()
            .flat_map_iter(|(seed, last)| {
                (0..n).filter(move |&k| k != *last).map(move |k| seed.mutate(k).map(|s| (s, k)))
            })
            .collect::<Result<Vec<_>>>()?;
        frontier.clear();
        for (seed, k) in next {
            let ordered: Vec<String> = seed.cluster.iter().map(key).collect();
            if !seen.insert(ordered) {
                continue;
            }
            for v in &seed.cluster {
                if !v.all_coefficients_positive() {
                    return Err(Error::NotLaurent(format!("non-positive coefficient in {v}")));
                }
                variables.entry(key(v)).or_insert_with(|| v.clone());
            }
            frontier.push((seed, k));
        }
        counts.push(variables.len());
    }
    Ok(Closure { variables: variables.into_values().collect(), counts })
}

/// The monomial-free numerator and denominator monomial of a Laurent
/// polynomial, e.g. `(1 + x2, x1)` for `x1^-1 + x1^-1*x2`.
pub fn as_fraction(v: &Laurent) -> (Laurent, Monomial) {
    let min = v.min_exponents();
    let shift = Monomial(min.0.iter().map(|&e| -e.min(0)).collect());
    (v.mul_monomial(&shift), shift)
}
