//! Quiver representations over prime fields.
//!
//! A [`Representation`] stores one integer matrix per arrow, with shape
//! `dim[target] x dim[source]`. Integer input modules are reduced modulo each
//! sample prime on demand; representations produced by computations at a
//! prime (kernels, extensions, translates) hold residues and are only
//! meaningful at that prime.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use crate::quiver::{DimVector, Quiver};

/// Module file contents: dimension vector plus one row-major matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawModule {
    pub dim: Vec<usize>,
    pub matrices: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    dim: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(q: &Quiver, dim: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        if dim.len() != q.n() {
            return Err(Error::LengthMismatch { expected: q.n(), got: dim.len() });
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::LengthMismatch { expected: q.arrows().len(), got: maps.len() });
        }
        for (k, (&(s, t), m)) in q.arrows().iter().zip(&maps).enumerate() {
            if m.rows() != dim[t] || m.cols() != dim[s] {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} ({}->{}) needs a {}x{} matrix, got {}x{}",
                    k + 1,
                    s + 1,
                    t + 1,
                    dim[t],
                    dim[s],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Representation { dim, maps })
    }

    pub fn from_raw(q: &Quiver, raw: &RawModule) -> Result<Self> {
        let dim = DimVector(raw.dim.clone());
        if dim.len() != q.n() {
            return Err(Error::LengthMismatch { expected: q.n(), got: dim.len() });
        }
        if raw.matrices.len() != q.arrows().len() {
            return Err(Error::LengthMismatch {
                expected: q.arrows().len(),
                got: raw.matrices.len(),
            });
        }
        let mut maps = Vec::with_capacity(raw.matrices.len());
        for (k, (&(s, t), rows)) in q.arrows().iter().zip(&raw.matrices).enumerate() {
            let (r, c) = (dim[t], dim[s]);
            // Zero-dimensional endpoints may be written as [] or as [[], ..].
            let empty = rows.iter().all(|row| row.is_empty());
            if (r == 0 || c == 0) && empty && (rows.is_empty() || rows.len() == r) {
                maps.push(Matrix::zeros(r, c));
                continue;
            }
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} ({}->{}) needs a {}x{} matrix",
                    k + 1,
                    s + 1,
                    t + 1,
                    r,
                    c
                )));
            }
            maps.push(Matrix::from_rows(r, c, rows.iter().flatten().copied().collect()));
        }
        Self::new(q, dim, maps)
    }

    pub fn to_raw(&self) -> RawModule {
        RawModule {
            dim: self.dim.0.clone(),
            matrices: self
                .maps
                .iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).to_vec()).collect())
                .collect(),
        }
    }

    pub fn zero(q: &Quiver) -> Self {
        let dim = DimVector::zero(q.n());
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { dim, maps }
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn is_zero(&self) -> bool {
        self.dim.is_zero()
    }

    pub fn max_abs_entry(&self) -> i64 {
        self.maps.iter().map(Matrix::max_abs_entry).max().unwrap_or(0)
    }

    pub fn reduce(&self, fp: &PrimeField) -> Self {
        Representation {
            dim: self.dim.clone(),
            maps: self.maps.iter().map(|m| fp.reduce_matrix(m)).collect(),
        }
    }

    /// Replaces residues by their symmetric integer lifts.
    pub fn symmetric_lift(&self, p: u64) -> Self {
        Representation {
            dim: self.dim.clone(),
            maps: self.maps.iter().map(|m| m.symmetric_lift(p)).collect(),
        }
    }

    /// Matrix of the path with the given index (identity for trivial paths).
    pub fn path_map(&self, q: &Quiver, fp: &PrimeField, path: usize) -> Matrix {
        let path = q.path(path);
        let mut acc = Matrix::identity(self.dim[path.source]);
        for &a in &path.arrows {
            acc = fp.matmul(&self.maps[a], &acc);
        }
        acc
    }
}

pub fn direct_sum(m: &Representation, n: &Representation) -> Representation {
    Representation {
        dim: m.dim.add(&n.dim),
        maps: m.maps.iter().zip(&n.maps).map(|(a, b)| Matrix::block_diag(a, b)).collect(),
    }
}

pub fn direct_sum_all<'a, I>(q: &Quiver, parts: I) -> Representation
where
    I: IntoIterator<Item = &'a Representation>,
{
    parts.into_iter().fold(Representation::zero(q), |acc, m| direct_sum(&acc, m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Simple,
    Projective,
    Injective,
}

/// The simple, indecomposable projective or indecomposable injective module
/// at vertex `i` (0-indexed), in its path basis.
pub fn standard_module(q: &Quiver, kind: StandardKind, i: usize) -> Result<Representation> {
    if i >= q.n() {
        return Err(Error::IndexOutOfRange { index: i as i64 + 1, n: q.n() });
    }
    let rep = match kind {
        StandardKind::Simple => {
            let dim = DimVector::unit(q.n(), i);
            let maps = q.arrows().iter().map(|&(s, t)| Matrix::zeros(dim[t], dim[s])).collect();
            Representation { dim, maps }
        }
        StandardKind::Projective => {
            // (P_i)_k has basis the paths i -> k; arrow a sends p to p.a
            let dim = q.projective_dim(i);
            let maps = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut m = Matrix::zeros(dim[t], dim[s]);
                    for (col, &p) in q.paths_between(i, s).iter().enumerate() {
                        let mut arrows = q.path(p).arrows.clone();
                        arrows.push(a);
                        let target = q.find_path(i, &arrows).expect("extended path exists");
                        let row = position(q.paths_between(i, t), target);
                        m.set(row, col, 1);
                    }
                    m
                })
                .collect();
            Representation { dim, maps }
        }
        StandardKind::Injective => {
            // (I_i)_k has the dual basis of paths k -> i; arrow a: s -> t sends
            // p* to q* when p = a followed by q.
            let dim = q.injective_dim(i);
            let maps = q
                .arrows()
                .iter()
                .enumerate()
                .map(|(a, &(s, t))| {
                    let mut m = Matrix::zeros(dim[t], dim[s]);
                    for (col, &p) in q.paths_between(s, i).iter().enumerate() {
                        let path = q.path(p);
                        if path.arrows.first() == Some(&a) {
                            let rest = q.find_path(t, &path.arrows[1..]).expect("suffix path");
                            m.set(position(q.paths_between(t, i), rest), col, 1);
                        }
                    }
                    m
                })
                .collect();
            Representation { dim, maps }
        }
    };
    Ok(rep)
}

pub(crate) fn position(list: &[usize], item: usize) -> usize {
    list.iter().position(|&x| x == item).expect("path listed")
}

/// Vertexwise linear maps `M_i -> N_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub blocks: Vec<Matrix>,
}

impl Morphism {
    pub fn zero(m: &Representation, n: &Representation) -> Self {
        Morphism {
            blocks: m.dim.0.iter().zip(&n.dim.0).map(|(&c, &r)| Matrix::zeros(r, c)).collect(),
        }
    }

    pub fn identity(m: &Representation) -> Self {
        Morphism { blocks: m.dim.0.iter().map(|&d| Matrix::identity(d)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self` followed by `next`.
    pub fn then(&self, fp: &PrimeField, next: &Morphism) -> Morphism {
        Morphism {
            blocks: self.blocks.iter().zip(&next.blocks).map(|(f, g)| fp.matmul(g, f)).collect(),
        }
    }

    pub fn is_invertible(&self, fp: &PrimeField) -> bool {
        self.blocks.iter().all(|b| fp.is_invertible(b))
    }

    /// Checks `f_t M_a = N_a f_s` for every arrow.
    pub fn is_morphism(
        &self,
        q: &Quiver,
        fp: &PrimeField,
        m: &Representation,
        n: &Representation,
    ) -> bool {
        q.arrows().iter().enumerate().all(|(a, &(s, t))| {
            fp.matmul(&self.blocks[t], m.map(a)) == fp.matmul(n.map(a), &self.blocks[s])
        })
    }

    pub fn linear_combination(fp: &PrimeField, basis: &[Morphism], coeffs: &[i64]) -> Morphism {
        assert_eq!(basis.len(), coeffs.len());
        let mut acc = Morphism {
            blocks: basis[0].blocks.iter().map(|b| Matrix::zeros(b.rows(), b.cols())).collect(),
        };
        for (f, &c) in basis.iter().zip(coeffs) {
            if fp.reduce(c) == 0 {
                continue;
            }
            for (dst, src) in acc.blocks.iter_mut().zip(&f.blocks) {
                *dst = fp.mat_add(dst, &fp.mat_scale(src, c));
            }
        }
        acc
    }
}

/// Linear map f -> (f_t M_a - N_a f_s)_a from the vertexwise Hom spaces to
/// the arrowwise ones. Its kernel is Hom(M, N) and its cokernel Ext^1(M, N).
fn coboundary_matrix(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    n: &Representation,
) -> (Matrix, Vec<usize>, Vec<usize>) {
    let mut var_off = Vec::with_capacity(q.n());
    let mut nvars = 0;
    for i in 0..q.n() {
        var_off.push(nvars);
        nvars += n.dim[i] * m.dim[i];
    }
    let mut eq_off = Vec::with_capacity(q.arrows().len());
    let mut neqs = 0;
    for &(s, t) in q.arrows() {
        eq_off.push(neqs);
        neqs += n.dim[t] * m.dim[s];
    }
    let mut d = Matrix::zeros(neqs, nvars);
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let ma = fp.reduce_matrix(m.map(a));
        let na = fp.reduce_matrix(n.map(a));
        let (ms, nt, mt, ns) = (m.dim[s], n.dim[t], m.dim[t], n.dim[s]);
        for r in 0..nt {
            for c in 0..ms {
                let row = eq_off[a] + r * ms + c;
                // (f_t M_a)[r, c] = sum_k f_t[r, k] M_a[k, c]
                for k in 0..mt {
                    let v = ma.get(k, c);
                    if v != 0 {
                        let col = var_off[t] + r * mt + k;
                        d.set(row, col, fp.add(d.get(row, col), v));
                    }
                }
                // -(N_a f_s)[r, c] = -sum_k N_a[r, k] f_s[k, c]
                for k in 0..ns {
                    let v = na.get(r, k);
                    if v != 0 {
                        let col = var_off[s] + k * ms + c;
                        d.set(row, col, fp.sub(d.get(row, col), v));
                    }
                }
            }
        }
    }
    (d, var_off, eq_off)
}

pub fn hom_basis(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    n: &Representation,
) -> Vec<Morphism> {
    let (d, var_off, _) = coboundary_matrix(q, fp, m, n);
    let ns = fp.nullspace(&d);
    (0..ns.cols())
        .map(|k| {
            let v = ns.column(k);
            Morphism {
                blocks: (0..q.n())
                    .map(|i| {
                        let (r, c) = (n.dim[i], m.dim[i]);
                        Matrix::from_rows(r, c, v[var_off[i]..var_off[i] + r * c].to_vec())
                    })
                    .collect(),
            }
        })
        .collect()
}

pub fn hom_dim(q: &Quiver, fp: &PrimeField, m: &Representation, n: &Representation) -> usize {
    let (d, _, _) = coboundary_matrix(q, fp, m, n);
    d.cols() - fp.rank(&d)
}

/// An element of the arrowwise space `⊕_{a: s -> t} Hom(M_s, L_t)`, read as
/// an extension of `M` by `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtCocycle {
    pub components: Vec<Matrix>,
}

impl ExtCocycle {
    pub fn zero(q: &Quiver, m: &Representation, l: &Representation) -> Self {
        ExtCocycle {
            components: q.arrows().iter().map(|&(s, t)| Matrix::zeros(l.dim[t], m.dim[s])).collect(),
        }
    }

    pub fn linear_combination(fp: &PrimeField, basis: &[ExtCocycle], coeffs: &[i64]) -> Self {
        let mut acc = ExtCocycle {
            components: basis[0]
                .components
                .iter()
                .map(|c| Matrix::zeros(c.rows(), c.cols()))
                .collect(),
        };
        for (phi, &c) in basis.iter().zip(coeffs) {
            for (dst, src) in acc.components.iter_mut().zip(&phi.components) {
                *dst = fp.mat_add(dst, &fp.mat_scale(src, c));
            }
        }
        acc
    }
}

/// Ext^1(M, L) as a complement of the coboundaries.
#[derive(Debug, Clone)]
pub struct ExtSpace {
    pub basis: Vec<ExtCocycle>,
    coboundaries: Matrix,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether the cocycle is a coboundary, i.e. represents the split class.
    pub fn is_coboundary(&self, fp: &PrimeField, phi: &ExtCocycle) -> bool {
        let v: Vec<i64> = phi.components.iter().flat_map(|c| c.data().to_vec()).collect();
        fp.solve(&self.coboundaries, &Matrix::from_columns(v.len(), &[v])).is_some()
    }
}

pub fn ext1_space(q: &Quiver, fp: &PrimeField, m: &Representation, l: &Representation) -> ExtSpace {
    let (d, _, eq_off) = coboundary_matrix(q, fp, m, l);
    let image = fp.column_space(&d);
    let units = fp.complement_units(&image);
    let basis = units
        .into_iter()
        .map(|u| {
            let mut phi = ExtCocycle::zero(q, m, l);
            let a = (0..q.arrows().len())
                .find(|&a| {
                    let (s, t) = q.arrows()[a];
                    eq_off[a] <= u && u < eq_off[a] + l.dim[t] * m.dim[s]
                })
                .expect("coordinate inside some arrow block");
            let ms = m.dim[q.arrows()[a].0];
            let local = u - eq_off[a];
            phi.components[a].set(local / ms, local % ms, 1);
            phi
        })
        .collect();
    ExtSpace { basis, coboundaries: d }
}

pub fn ext1_basis(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    l: &Representation,
) -> Vec<ExtCocycle> {
    ext1_space(q, fp, m, l).basis
}

pub fn ext1_dim(q: &Quiver, fp: &PrimeField, m: &Representation, l: &Representation) -> usize {
    let (d, _, _) = coboundary_matrix(q, fp, m, l);
    d.rows() - fp.rank(&d)
}

/// Middle term of the extension `0 -> L -> Y -> M -> 0` given by `phi`, with
/// `Y_a = [[L_a, phi_a], [0, M_a]]`.
pub fn middle_term(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    l: &Representation,
    phi: &ExtCocycle,
) -> Result<Representation> {
    if phi.components.len() != q.arrows().len() {
        return Err(Error::ShapeMismatch("cocycle arity".into()));
    }
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let c = &phi.components[a];
        if c.rows() != l.dim[t] || c.cols() != m.dim[s] {
            return Err(Error::ShapeMismatch(format!("cocycle component for arrow {}", a + 1)));
        }
        let mut y = Matrix::zeros(l.dim[t] + m.dim[t], l.dim[s] + m.dim[s]);
        y.paste(0, 0, &fp.reduce_matrix(l.map(a)));
        y.paste(0, l.dim[s], &fp.reduce_matrix(c));
        y.paste(l.dim[t], l.dim[s], &fp.reduce_matrix(m.map(a)));
        maps.push(y);
    }
    Ok(Representation { dim: l.dim.add(&m.dim), maps })
}

/// Kernel of `f: M -> N` with its inclusion into `M`.
pub fn kernel(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    f: &Morphism,
) -> (Representation, Morphism) {
    let bases: Vec<Matrix> = f.blocks.iter().map(|b| fp.nullspace(b)).collect();
    subrepresentation(q, fp, m, bases)
}

/// Subrepresentation spanned vertexwise by the columns of `bases` (which must
/// be independent and arrow-stable), with its inclusion.
pub fn subrepresentation(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    bases: Vec<Matrix>,
) -> (Representation, Morphism) {
    let dim = DimVector(bases.iter().map(Matrix::cols).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let image = fp.matmul(m.map(a), &bases[s]);
            fp.solve(&bases[t], &image).expect("subspace is arrow-stable")
        })
        .collect();
    (Representation { dim, maps }, Morphism { blocks: bases })
}

/// Cokernel of `f: M -> N` with the projection from `N`.
pub fn cokernel(
    q: &Quiver,
    fp: &PrimeField,
    n: &Representation,
    f: &Morphism,
) -> (Representation, Morphism) {
    let mut projections = Vec::with_capacity(q.n());
    let mut complements = Vec::with_capacity(q.n());
    for (i, block) in f.blocks.iter().enumerate() {
        let image = fp.column_space(block);
        let units = fp.complement_units(&image);
        let d = n.dim[i];
        let comp = Matrix::from_columns(
            d,
            &units
                .iter()
                .map(|&u| {
                    let mut v = vec![0; d];
                    v[u] = 1;
                    v
                })
                .collect::<Vec<_>>(),
        );
        let full = Matrix::hstack(&image, &comp);
        let inv = fp.inverse(&full).expect("image plus complement is a basis");
        projections.push(inv.submatrix(image.cols(), 0, comp.cols(), d));
        complements.push(comp);
    }
    let dim = DimVector(complements.iter().map(Matrix::cols).collect());
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            fp.matmul(&projections[t], &fp.matmul(n.map(a), &complements[s]))
        })
        .collect();
    (Representation { dim, maps }, Morphism { blocks: projections })
}

/// The battery of test modules used for fingerprints: all simples,
/// projectives and injectives.
pub fn battery(q: &Quiver) -> Vec<Representation> {
    let mut out = Vec::with_capacity(3 * q.n());
    for kind in [StandardKind::Simple, StandardKind::Projective, StandardKind::Injective] {
        for i in 0..q.n() {
            out.push(standard_module(q, kind, i).expect("vertex in range"));
        }
    }
    out
}

/// Prime-independent invariants of a module: dimension vector, Hom dimensions
/// to and from the battery, and the dimension of its endomorphism ring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: DimVector,
    pub hom_to: Vec<usize>,
    pub hom_from: Vec<usize>,
    pub end: usize,
}

pub fn fingerprint(
    q: &Quiver,
    fp: &PrimeField,
    battery: &[Representation],
    m: &Representation,
) -> Fingerprint {
    Fingerprint {
        dim: m.dim.clone(),
        hom_to: battery.iter().map(|b| hom_dim(q, fp, m, b)).collect(),
        hom_from: battery.iter().map(|b| hom_dim(q, fp, b, m)).collect(),
        end: hom_dim(q, fp, m, m),
    }
}

const EXHAUSTIVE_LIMIT: u128 = 100_000;
const RANDOM_TRIES: usize = 256;

/// Decides `M ≅ N` at the given prime. Fingerprints are compared first; on a
/// tie an invertible element of Hom(M, N) is searched for, exhaustively when
/// Hom(M, N) has at most 10^5 elements and by seeded random sampling
/// otherwise (a miss then has probability below (dim M / p)^256).
pub fn is_isomorphic(q: &Quiver, fp: &PrimeField, m: &Representation, n: &Representation) -> bool {
    if m.dim != n.dim {
        return false;
    }
    let bat = battery(q);
    if fingerprint(q, fp, &bat, m) != fingerprint(q, fp, &bat, n) {
        return false;
    }
    find_isomorphism(q, fp, m, n).is_some()
}

pub fn find_isomorphism(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
    n: &Representation,
) -> Option<Morphism> {
    if m.dim != n.dim {
        return None;
    }
    if m.is_zero() {
        return Some(Morphism::zero(m, n));
    }
    let basis = hom_basis(q, fp, m, n);
    if basis.is_empty() {
        return None;
    }
    let h = basis.len() as u32;
    let p = fp.p();
    if (p as u128).checked_pow(h).is_some_and(|total| total <= EXHAUSTIVE_LIMIT) {
        let mut coeffs = vec![0i64; basis.len()];
        loop {
            // odometer over F_p^h
            let mut k = 0;
            loop {
                if k == coeffs.len() {
                    return None;
                }
                coeffs[k] += 1;
                if coeffs[k] == p as i64 {
                    coeffs[k] = 0;
                    k += 1;
                } else {
                    break;
                }
            }
            let f = Morphism::linear_combination(fp, &basis, &coeffs);
            if f.is_invertible(fp) {
                return Some(f);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(0..p as i64)).collect();
        let f = Morphism::linear_combination(fp, &basis, &coeffs);
        if f.is_invertible(fp) {
            return Some(f);
        }
    }
    None
}

/// Socle dimensions: at vertex j, the common kernel of all arrows out of j.
pub fn socle_dims(q: &Quiver, fp: &PrimeField, m: &Representation) -> Vec<usize> {
    (0..q.n()).map(|j| socle_basis(q, fp, m, j).cols()).collect()
}

pub(crate) fn socle_basis(q: &Quiver, fp: &PrimeField, m: &Representation, j: usize) -> Matrix {
    let outgoing: Vec<usize> =
        q.arrows().iter().enumerate().filter(|(_, &(s, _))| s == j).map(|(a, _)| a).collect();
    if outgoing.is_empty() {
        return Matrix::identity(m.dim[j]);
    }
    let stacked = outgoing
        .iter()
        .skip(1)
        .fold(m.map(outgoing[0]).clone(), |acc, &a| Matrix::vstack(&acc, m.map(a)));
    fp.nullspace(&stacked)
}

/// Top dimensions: at vertex i, the codimension of the images of all arrows
/// into i.
pub fn top_dims(q: &Quiver, fp: &PrimeField, m: &Representation) -> Vec<usize> {
    (0..q.n()).map(|i| top_generators(q, fp, m, i).len()).collect()
}

pub(crate) fn top_generators(q: &Quiver, fp: &PrimeField, m: &Representation, i: usize) -> Vec<usize> {
    let incoming: Vec<usize> =
        q.arrows().iter().enumerate().filter(|(_, &(_, t))| t == i).map(|(a, _)| a).collect();
    let radical = incoming
        .iter()
        .fold(Matrix::zeros(m.dim[i], 0), |acc, &a| Matrix::hstack(&acc, m.map(a)));
    let radical = fp.column_space(&radical);
    fp.complement_units(&radical)
}

/// Hom and Ext^1 dimensions at every prime, which must agree.
pub fn stable_dims(
    q: &Quiver,
    primes: &[u64],
    m: &Representation,
    n: &Representation,
) -> Result<(usize, usize)> {
    let mut seen: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for &p in primes {
        let fp = PrimeField::new(p);
        let dims = (hom_dim(q, &fp, m, n), ext1_dim(q, &fp, m, n));
        seen.entry(dims).or_default().push(p);
    }
    if seen.len() > 1 {
        return Err(Error::PrimeInstability(format!("{seen:?}")));
    }
    seen.into_keys().next().ok_or_else(|| Error::Configuration("no sample primes".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> PrimeField {
        PrimeField::new(23)
    }

    fn std(q: &Quiver, kind: StandardKind, i: usize) -> Representation {
        standard_module(q, kind, i).unwrap()
    }

    fn kronecker_regular(a: i64, b: i64) -> Representation {
        let q = Quiver::generalized_kronecker(2);
        Representation::new(
            &q,
            DimVector(vec![1, 1]),
            vec![Matrix::from_rows(1, 1, vec![a]), Matrix::from_rows(1, 1, vec![b])],
        )
        .unwrap()
    }

    #[test]
    fn standard_modules_a2() {
        let q = Quiver::linear_a(2);
        let p1 = std(&q, StandardKind::Projective, 0);
        assert_eq!(p1.dim().0, vec![1, 1]);
        assert_eq!(p1.map(0), &Matrix::from_rows(1, 1, vec![1]));
        assert_eq!(std(&q, StandardKind::Injective, 1).dim().0, vec![1, 1]);
        let d4 = Quiver::d4_tilde_sink();
        assert_eq!(std(&d4, StandardKind::Projective, 4).dim().0, vec![0, 0, 0, 0, 1]);
        assert!(standard_module(&q, StandardKind::Simple, 2).is_err());
    }

    #[test]
    fn standard_modules_are_modules_with_01_entries() {
        for q in [Quiver::linear_a(3), Quiver::generalized_kronecker(2), Quiver::d4_tilde_sink()] {
            for m in battery(&q) {
                assert!(m.maps().iter().all(|mat| mat.data().iter().all(|&v| v == 0 || v == 1)));
                assert_eq!(hom_dim(&q, &fp(), &m, &m) >= 1, !m.is_zero());
            }
        }
    }

    #[test]
    fn hom_dims_a2() {
        let q = Quiver::linear_a(2);
        let (s1, s2) = (std(&q, StandardKind::Simple, 0), std(&q, StandardKind::Simple, 1));
        let (p1, p2) = (std(&q, StandardKind::Projective, 0), std(&q, StandardKind::Projective, 1));
        assert_eq!(hom_dim(&q, &fp(), &s1, &s1), 1);
        assert_eq!(hom_dim(&q, &fp(), &p1, &s2), 0);
        assert_eq!(hom_dim(&q, &fp(), &p2, &p1), 1);
        for f in hom_basis(&q, &fp(), &p2, &p1) {
            assert!(f.is_morphism(&q, &fp(), &p2, &p1));
        }
    }

    #[test]
    fn ext_dims() {
        let q = Quiver::linear_a(2);
        let (s1, s2) = (std(&q, StandardKind::Simple, 0), std(&q, StandardKind::Simple, 1));
        assert_eq!(ext1_dim(&q, &fp(), &s1, &s2), 1);
        assert_eq!(ext1_dim(&q, &fp(), &s2, &s1), 0);
        for m in battery(&q) {
            for i in 0..2 {
                let p = std(&q, StandardKind::Projective, i);
                assert_eq!(ext1_dim(&q, &fp(), &p, &m), 0);
            }
        }
        let kr = Quiver::generalized_kronecker(2);
        let (k1, k2) = (std(&kr, StandardKind::Simple, 0), std(&kr, StandardKind::Simple, 1));
        assert_eq!(ext1_space(&kr, &fp(), &k1, &k2).dim(), 2);
    }

    #[test]
    fn middle_terms_a2() {
        let q = Quiver::linear_a(2);
        let (s1, s2) = (std(&q, StandardKind::Simple, 0), std(&q, StandardKind::Simple, 1));
        let space = ext1_space(&q, &fp(), &s1, &s2);
        let y = middle_term(&q, &fp(), &s1, &s2, &space.basis[0]).unwrap();
        let p1 = std(&q, StandardKind::Projective, 0);
        assert!(is_isomorphic(&q, &fp(), &y, &p1));
        let split = middle_term(&q, &fp(), &s1, &s2, &ExtCocycle::zero(&q, &s1, &s2)).unwrap();
        assert!(is_isomorphic(&q, &fp(), &split, &direct_sum(&s2, &s1)));
        assert!(space.is_coboundary(&fp(), &ExtCocycle::zero(&q, &s1, &s2)));
        assert!(!space.is_coboundary(&fp(), &space.basis[0]));
        let bad = ExtCocycle { components: vec![Matrix::zeros(2, 2)] };
        assert!(middle_term(&q, &fp(), &s1, &s2, &bad).is_err());
    }

    #[test]
    fn iso_tests() {
        let q = Quiver::linear_a(2);
        let s1 = std(&q, StandardKind::Simple, 0);
        let s2 = std(&q, StandardKind::Simple, 1);
        let p1 = std(&q, StandardKind::Projective, 0);
        assert!(is_isomorphic(&q, &fp(), &s1, &s1));
        assert!(!is_isomorphic(&q, &fp(), &p1, &direct_sum(&s1, &s2)));
        let kr = Quiver::generalized_kronecker(2);
        let (r10, r01) = (kronecker_regular(1, 0), kronecker_regular(0, 1));
        assert_eq!(hom_dim(&kr, &fp(), &r10, &r01), 0);
        assert!(!is_isomorphic(&kr, &fp(), &r10, &r01));
        assert!(is_isomorphic(&kr, &fp(), &kronecker_regular(2, 3), &kronecker_regular(4, 6)));
    }

    #[test]
    fn kernel_and_cokernel() {
        let q = Quiver::linear_a(2);
        let (p2, p1) = (std(&q, StandardKind::Projective, 1), std(&q, StandardKind::Projective, 0));
        let f = &hom_basis(&q, &fp(), &p2, &p1)[0];
        let (k, _) = kernel(&q, &fp(), &p2, f);
        assert!(k.is_zero());
        let (c, proj) = cokernel(&q, &fp(), &p1, f);
        assert!(is_isomorphic(&q, &fp(), &c, &std(&q, StandardKind::Simple, 0)));
        assert!(proj.is_morphism(&q, &fp(), &p1, &c));
    }

    #[test]
    fn raw_round_trip_and_shapes() {
        let q = Quiver::d4_tilde_sink();
        let raw = RawModule {
            dim: vec![1, 1, 0, 0, 1],
            matrices: vec![vec![vec![1]], vec![vec![1]], vec![], vec![]],
        };
        let e1 = Representation::from_raw(&q, &raw).unwrap();
        let again = Representation::from_raw(&q, &e1.to_raw()).unwrap();
        assert_eq!(e1, again);
        let bad = RawModule { dim: vec![1, 1, 0, 0, 1], matrices: vec![vec![vec![1, 2]]; 4] };
        assert!(Representation::from_raw(&q, &bad).is_err());
    }

    #[test]
    fn socle_and_top() {
        let q = Quiver::linear_a(3);
        let p1 = std(&q, StandardKind::Projective, 0);
        assert_eq!(socle_dims(&q, &fp(), &p1), vec![0, 0, 1]);
        assert_eq!(top_dims(&q, &fp(), &p1), vec![1, 0, 0]);
    }

    #[test]
    fn prime_stability_of_dims() {
        let kr = Quiver::generalized_kronecker(2);
        let r = kronecker_regular(1, 1);
        let primes = [23, 29, 31, 37];
        assert_eq!(stable_dims(&kr, &primes, &r, &r).unwrap(), (1, 1));
        // (1, 23) reduces to (1, 0) at 23 only: End changes with the prime.
        let skewed = kronecker_regular(1, 23);
        let other = kronecker_regular(1, 0);
        assert!(matches!(
            stable_dims(&kr, &primes, &skewed, &other),
            Err(Error::PrimeInstability(_))
        ));
    }
}
