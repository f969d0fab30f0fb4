//! Acyclic quivers, dimension vectors and the Euler forms.
//!
//! Vertices are 1-indexed at the boundary (file formats, printed output) and
//! 0-indexed inside the library. Arrows keep their input order, so the i-th
//! matrix of a representation always belongs to the i-th arrow.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Quiver as read from a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawQuiver {
    pub vertices: usize,
    pub arrows: Vec<[i64; 2]>,
}

/// A path, stored as its source and the arrows in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    topo: Vec<usize>,
    paths: Vec<Path>,
    // paths_between[i][j] = indices into `paths` of the paths i -> j
    paths_between: Vec<Vec<Vec<usize>>>,
    path_index: HashMap<(usize, Vec<usize>), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from 0-indexed arrows.
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        for (k, &(s, t)) in arrows.iter().enumerate() {
            for v in [s, t] {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v as i64 + 1, n });
                }
            }
            if s == t {
                return Err(Error::Loop(k + 1, s + 1));
            }
        }
        let topo = topological_order(n, &arrows)?;
        let mut q = Quiver {
            n,
            arrows,
            topo,
            paths: Vec::new(),
            paths_between: vec![vec![Vec::new(); n]; n],
            path_index: HashMap::new(),
        };
        q.build_paths();
        Ok(q)
    }

    pub fn validate(raw: &RawQuiver) -> Result<Self> {
        let n = raw.vertices;
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for &[s, t] in &raw.arrows {
            for v in [s, t] {
                if v < 1 || v > n as i64 {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            arrows.push((s as usize - 1, t as usize - 1));
        }
        Self::new(n, arrows)
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| [s as i64 + 1, t as i64 + 1])
                .collect(),
        }
    }

    /// Linear orientation 1 -> 2 -> ... -> n.
    pub fn linear_a(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path quiver is acyclic")
    }

    /// Two vertices with `m` parallel arrows 1 -> 2.
    pub fn generalized_kronecker(m: usize) -> Self {
        Self::new(2, vec![(0, 1); m]).expect("kronecker quiver is acyclic")
    }

    /// Four leaves pointing into the center, which is the last vertex.
    pub fn d4_tilde_sink() -> Self {
        Self::new(5, (0..4).map(|i| (i, 4)).collect()).expect("star quiver is acyclic")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, idx: usize) -> &Path {
        &self.paths[idx]
    }

    /// Indices of all paths from `i` to `j`, trivial path first when `i == j`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.paths_between[i][j]
    }

    /// Index of the path with the given source and arrow sequence.
    pub fn find_path(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.path_index.get(&(source, arrows.to_vec())).copied()
    }

    /// Index of `first` followed by `second`, if they compose.
    pub fn concat(&self, first: usize, second: usize) -> Option<usize> {
        let (a, b) = (&self.paths[first], &self.paths[second]);
        if a.target != b.source {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows);
        self.find_path(a.source, &arrows)
    }

    pub fn arrows_between(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&(s, t)| s == i && t == j).count()
    }

    /// Exchange matrix of the initial seed: b_ij = #(i -> j) - #(j -> i).
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0i64; self.n]; self.n];
        for &(s, t) in &self.arrows {
            b[s][t] += 1;
            b[t][s] -= 1;
        }
        b
    }

    fn check_len(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: d.len() });
        }
        Ok(())
    }

    /// Euler form: sum_i d_i e_i - sum_{a: i -> j} d_i e_j.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        self.check_len(d)?;
        self.check_len(e)?;
        let diag: i64 = (0..self.n).map(|i| d[i] as i64 * e[i] as i64).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] as i64 * e[t] as i64).sum();
        Ok(diag - off)
    }

    /// Antisymmetrized form <d,e> - <e,d>.
    pub fn antisym_form(&self, d: &DimVector, e: &DimVector) -> Result<i64> {
        Ok(self.euler_form(d, e)? - self.euler_form(e, d)?)
    }

    /// Same as [`Quiver::antisym_form`] on raw integer vectors (classes in K_0
    /// need not be effective).
    pub fn antisym_form_vec(&self, d: &[i64], e: &[i64]) -> i64 {
        let mut acc = 0;
        for &(s, t) in &self.arrows {
            // -(d_s e_t) + (e_s d_t)
            acc += e[s] * d[t] - d[s] * e[t];
        }
        acc
    }

    /// True when the symmetrized Euler form is positive definite, i.e. the
    /// underlying graph is a Dynkin diagram.
    pub fn is_finite_type(&self) -> bool {
        let n = self.n;
        let mut m = vec![vec![0f64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2.0;
        }
        for &(s, t) in &self.arrows {
            m[s][t] -= 1.0;
            m[t][s] -= 1.0;
        }
        // Sylvester's criterion via Cholesky; entries are small integers.
        for k in 0..n {
            let mut pivot = m[k][k];
            for j in 0..k {
                pivot -= m[k][j] * m[k][j];
            }
            if pivot <= 1e-9 {
                return false;
            }
            let pivot = pivot.sqrt();
            m[k][k] = pivot;
            for i in (k + 1)..n {
                let mut v = m[i][k];
                for j in 0..k {
                    v -= m[i][j] * m[k][j];
                }
                m[i][k] = v / pivot;
            }
        }
        true
    }

    /// Dimension vector of the indecomposable projective at `i`.
    pub fn projective_dim(&self, i: usize) -> DimVector {
        DimVector((0..self.n).map(|j| self.paths_between(i, j).len()).collect())
    }

    /// Dimension vector of the indecomposable injective at `i`.
    pub fn injective_dim(&self, i: usize) -> DimVector {
        DimVector((0..self.n).map(|j| self.paths_between(j, i).len()).collect())
    }

    /// Writes `v` as an integer combination of projective dimension vectors.
    pub fn projective_coordinates(&self, v: &[i64]) -> Vec<i64> {
        // dim P_j is supported on vertices reachable from j, with 1 at j.
        let mut c = vec![0i64; self.n];
        for &j in &self.topo {
            let mut r = v[j];
            for i in 0..self.n {
                if i != j {
                    r -= c[i] * self.paths_between(i, j).len() as i64;
                }
            }
            c[j] = r;
        }
        c
    }

    /// Writes `v` as an integer combination of injective dimension vectors.
    pub fn injective_coordinates(&self, v: &[i64]) -> Vec<i64> {
        let mut c = vec![0i64; self.n];
        for &j in self.topo.iter().rev() {
            let mut r = v[j];
            for i in 0..self.n {
                if i != j {
                    r -= c[i] * self.paths_between(j, i).len() as i64;
                }
            }
            c[j] = r;
        }
        c
    }

    fn build_paths(&mut self) {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (k, &(s, _)) in self.arrows.iter().enumerate() {
            out[s].push(k);
        }
        for start in 0..self.n {
            let mut stack = vec![Path { source: start, target: start, arrows: Vec::new() }];
            while let Some(p) = stack.pop() {
                for &a in out[p.target].iter().rev() {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    stack.push(Path { source: start, target: self.arrows[a].1, arrows });
                }
                let idx = self.paths.len();
                self.path_index.insert((p.source, p.arrows.clone()), idx);
                self.paths_between[p.source][p.target].push(idx);
                self.paths.push(p);
            }
        }
        for row in self.paths_between.iter_mut() {
            for list in row.iter_mut() {
                list.sort_by(|&a, &b| {
                    let (pa, pb) = (&self.paths[a], &self.paths[b]);
                    pa.len().cmp(&pb.len()).then_with(|| pa.arrows.cmp(&pb.arrows))
                });
            }
        }
    }
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        let mut next = Vec::new();
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    next.push(t);
                }
            }
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        next.dedup();
        ready.extend(next);
        ready.sort_unstable_by(|a, b| b.cmp(a));
    }
    if order.len() < n {
        let stuck = (0..n).find(|v| !order.contains(v)).unwrap_or(0);
        return Err(Error::Cycle(stuck + 1));
    }
    Ok(order)
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(n={}; ", self.n)?;
        for (k, (s, t)) in self.arrows.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", s + 1, t + 1)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<usize>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&d| d as i64).collect()
    }

    /// Dimension of the ambient product of Grassmannians containing Gr_e(M)
    /// for `self = dim M`.
    pub fn grassmannian_degree_bound(&self, e: &DimVector) -> usize {
        self.0.iter().zip(&e.0).map(|(d, e)| e * (d - e)).sum()
    }

    /// All vectors `e` with `0 <= e <= self`, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &d in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (d + 1));
            for prefix in &out {
                for k in 0..=d {
                    let mut v: Vec<usize> = prefix.clone();
                    v.push(k);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(DimVector).collect()
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl From<Vec<usize>> for DimVector {
    fn from(v: Vec<usize>) -> Self {
        DimVector(v)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}
