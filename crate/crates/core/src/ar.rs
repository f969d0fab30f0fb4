//! Auslander-Reiten translates via the Nakayama functor, and objects of the
//! cluster category.
//!
//! A morphism between direct sums of indecomposable projectives (or of
//! indecomposable injectives) is a matrix of path combinations: the component
//! from a summand at vertex `j` to a summand at vertex `i` is a vector over the
//! paths `i -> j`. The Nakayama functor keeps this matrix and swaps `P` for
//! `I`, which is all that τ and τ⁻¹ need.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, PrimeField};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{
    cokernel, direct_sum, direct_sum_all, kernel, position, socle_basis, standard_module,
    top_generators, Morphism, Representation, StandardKind,
};

/// An object `M ⊕ ⊕_i P_i[1]^{shifted_i}` of the cluster category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterObject {
    pub module: Representation,
    pub shifted: Vec<usize>,
}

impl ClusterObject {
    pub fn zero(q: &Quiver) -> Self {
        ClusterObject { module: Representation::zero(q), shifted: vec![0; q.n()] }
    }

    pub fn module(m: Representation) -> Self {
        let n = m.dim().len();
        ClusterObject { module: m, shifted: vec![0; n] }
    }

    pub fn shifted_projective(q: &Quiver, shifted: Vec<usize>) -> Result<Self> {
        if shifted.len() != q.n() {
            return Err(Error::LengthMismatch { expected: q.n(), got: shifted.len() });
        }
        Ok(ClusterObject { module: Representation::zero(q), shifted })
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero() && self.shifted.iter().all(|&s| s == 0)
    }

    pub fn direct_sum(&self, other: &ClusterObject) -> ClusterObject {
        ClusterObject {
            module: direct_sum(&self.module, &other.module),
            shifted: self.shifted.iter().zip(&other.shifted).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn descriptor(&self) -> ObjectDescriptor {
        ObjectDescriptor { dim: self.module.dim().clone(), shifted: self.shifted.clone() }
    }
}

/// Printable summary of a cluster object.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ObjectDescriptor {
    pub dim: DimVector,
    pub shifted: Vec<usize>,
}

impl std::fmt::Display for ObjectDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let shifted: Vec<String> = self
            .shifted
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, &m)| if m == 1 { format!("P{}[1]", i + 1) } else { format!("P{}[1]^{m}", i + 1) })
            .collect();
        match (self.dim.is_zero(), shifted.is_empty()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "M{}", self.dim),
            (true, false) => write!(f, "{}", shifted.join(" + ")),
            (false, false) => write!(f, "M{} + {}", self.dim, shifted.join(" + ")),
        }
    }
}

/// Direct sum of indecomposable projectives (or injectives) at the listed
/// vertices, in order.
fn standard_sum(q: &Quiver, kind: StandardKind, summands: &[usize]) -> Representation {
    let parts: Vec<Representation> =
        summands.iter().map(|&i| standard_module(q, kind, i).expect("vertex")).collect();
    direct_sum_all(q, &parts)
}

pub fn projective_sum(q: &Quiver, summands: &[usize]) -> Representation {
    standard_sum(q, StandardKind::Projective, summands)
}

pub fn injective_sum(q: &Quiver, summands: &[usize]) -> Representation {
    standard_sum(q, StandardKind::Injective, summands)
}

/// `offsets[k][c]` = position of summand `c`'s block inside vertex `k`.
fn offsets(q: &Quiver, summands: &[usize], projective: bool) -> Vec<Vec<usize>> {
    (0..q.n())
        .map(|k| {
            let mut acc = 0;
            summands
                .iter()
                .map(|&i| {
                    let here = acc;
                    acc += if projective {
                        q.paths_between(i, k).len()
                    } else {
                        q.paths_between(k, i).len()
                    };
                    here
                })
                .collect()
        })
        .collect()
}

/// Matrix of path combinations; `comps[r][c]` is indexed like
/// `q.paths_between(dst[r], src[c])`.
pub type PathMatrix = Vec<Vec<Vec<i64>>>;

/// The morphism `⊕ P_{src} -> ⊕ P_{dst}` given by path combinations, where a
/// path `w: i -> j` sends `p` in `P_j` to `w` followed by `p` in `P_i`.
pub fn projective_sum_morphism(
    q: &Quiver,
    fp: &PrimeField,
    src: &[usize],
    dst: &[usize],
    comps: &PathMatrix,
) -> Morphism {
    let (so, dof) = (offsets(q, src, true), offsets(q, dst, true));
    let blocks = (0..q.n())
        .map(|k| {
            let rows: usize = dst.iter().map(|&i| q.paths_between(i, k).len()).sum();
            let cols: usize = src.iter().map(|&j| q.paths_between(j, k).len()).sum();
            let mut m = Matrix::zeros(rows, cols);
            for (r, &i) in dst.iter().enumerate() {
                for (c, &j) in src.iter().enumerate() {
                    for (wi, &w) in q.paths_between(i, j).iter().enumerate() {
                        let coef = fp.reduce(comps[r][c][wi]);
                        if coef == 0 {
                            continue;
                        }
                        for (pi, &p) in q.paths_between(j, k).iter().enumerate() {
                            let target = q.concat(w, p).expect("composable");
                            let row = dof[k][r] + position(q.paths_between(i, k), target);
                            let col = so[k][c] + pi;
                            m.set(row, col, fp.add(m.get(row, col), coef));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Morphism { blocks }
}

/// The morphism `⊕ I_{src} -> ⊕ I_{dst}` corresponding under the Nakayama
/// functor to [`projective_sum_morphism`] with the same path matrix.
pub fn injective_sum_morphism(
    q: &Quiver,
    fp: &PrimeField,
    src: &[usize],
    dst: &[usize],
    comps: &PathMatrix,
) -> Morphism {
    let (so, dof) = (offsets(q, src, false), offsets(q, dst, false));
    let blocks = (0..q.n())
        .map(|l| {
            let rows: usize = dst.iter().map(|&i| q.paths_between(l, i).len()).sum();
            let cols: usize = src.iter().map(|&j| q.paths_between(l, j).len()).sum();
            let mut m = Matrix::zeros(rows, cols);
            for (r, &i) in dst.iter().enumerate() {
                for (c, &j) in src.iter().enumerate() {
                    for (wi, &w) in q.paths_between(i, j).iter().enumerate() {
                        let coef = fp.reduce(comps[r][c][wi]);
                        if coef == 0 {
                            continue;
                        }
                        // u* -> dual of (u followed by w)
                        for (ui, &u) in q.paths_between(l, i).iter().enumerate() {
                            let qpath = q.concat(u, w).expect("composable");
                            let row = dof[l][r] + ui;
                            let col = so[l][c] + position(q.paths_between(l, j), qpath);
                            m.set(row, col, fp.add(m.get(row, col), coef));
                        }
                    }
                }
            }
            m
        })
        .collect();
    Morphism { blocks }
}

fn read_projective_paths(q: &Quiver, src: &[usize], dst: &[usize], f: &Morphism) -> PathMatrix {
    let (so, dof) = (offsets(q, src, true), offsets(q, dst, true));
    dst.iter()
        .enumerate()
        .map(|(r, &i)| {
            src.iter()
                .enumerate()
                .map(|(c, &j)| {
                    // image of the trivial path e_j of summand c, at vertex j
                    let col = so[j][c];
                    (0..q.paths_between(i, j).len())
                        .map(|wi| f.blocks[j].get(dof[j][r] + wi, col))
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn read_injective_paths(q: &Quiver, src: &[usize], dst: &[usize], f: &Morphism) -> PathMatrix {
    let (so, dof) = (offsets(q, src, false), offsets(q, dst, false));
    dst.iter()
        .enumerate()
        .map(|(r, &i)| {
            src.iter()
                .enumerate()
                .map(|(c, &j)| {
                    // at vertex i the summand I_i is spanned by e_i*
                    let row = dof[i][r];
                    (0..q.paths_between(i, j).len())
                        .map(|wi| f.blocks[i].get(row, so[i][c] + wi))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Projective cover `⊕ P_{summands} -> M`.
pub fn projective_cover(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
) -> (Vec<usize>, Morphism) {
    let mut gens = Vec::new();
    for i in 0..q.n() {
        for u in top_generators(q, fp, m, i) {
            gens.push((i, u));
        }
    }
    let summands: Vec<usize> = gens.iter().map(|&(i, _)| i).collect();
    let so = offsets(q, &summands, true);
    let blocks = (0..q.n())
        .map(|k| {
            let cols: usize = summands.iter().map(|&i| q.paths_between(i, k).len()).sum();
            let mut b = Matrix::zeros(m.dim()[k], cols);
            for (c, &(i, u)) in gens.iter().enumerate() {
                for (pi, &p) in q.paths_between(i, k).iter().enumerate() {
                    let mp = m.path_map(q, fp, p);
                    for row in 0..m.dim()[k] {
                        b.set(row, so[k][c] + pi, mp.get(row, u));
                    }
                }
            }
            b
        })
        .collect();
    (summands, Morphism { blocks })
}

/// Injective envelope `M -> ⊕ I_{summands}`.
pub fn injective_envelope(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
) -> (Vec<usize>, Morphism) {
    // functionals on M_j restricting to a dual basis of the socle at j
    let mut gens: Vec<(usize, Vec<i64>)> = Vec::new();
    for j in 0..q.n() {
        let soc = socle_basis(q, fp, m, j);
        if soc.cols() == 0 {
            continue;
        }
        let units = fp.complement_units(&soc);
        let d = m.dim()[j];
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
        let inv = fp.inverse(&Matrix::hstack(&soc, &comp)).expect("basis");
        for r in 0..soc.cols() {
            gens.push((j, inv.row(r).to_vec()));
        }
    }
    let summands: Vec<usize> = gens.iter().map(|(j, _)| *j).collect();
    let dof = offsets(q, &summands, false);
    let blocks = (0..q.n())
        .map(|k| {
            let rows: usize = summands.iter().map(|&j| q.paths_between(k, j).len()).sum();
            let mut b = Matrix::zeros(rows, m.dim()[k]);
            for (c, (j, phi)) in gens.iter().enumerate() {
                for (qi, &qp) in q.paths_between(k, *j).iter().enumerate() {
                    let mq = m.path_map(q, fp, qp);
                    let row = fp.reduce_matrix(&Matrix::from_rows(1, phi.len(), phi.clone()));
                    let val = fp.matmul(&row, &mq);
                    for col in 0..m.dim()[k] {
                        b.set(dof[k][c] + qi, col, val.get(0, col));
                    }
                }
            }
            b
        })
        .collect();
    (summands, Morphism { blocks })
}

fn coordinates_to_mult(v: Vec<i64>) -> Vec<usize> {
    v.into_iter()
        .map(|c| usize::try_from(c).expect("nonnegative multiplicity"))
        .collect()
}

/// τM together with the multiplicities of the projective summands of `M`
/// (which τ annihilates).
pub fn translate_with_projectives(
    q: &Quiver,
    fp: &PrimeField,
    m: &Representation,
) -> (Representation, Vec<usize>) {
    let (p0, cover) = projective_cover(q, fp, m);
    let p0_rep = projective_sum(q, &p0);
    let (k, incl) = kernel(q, fp, &p0_rep, &cover);
    let (p1, cover_k) = projective_cover(q, fp, &k);
    let presentation = cover_k.then(fp, &incl);
    let paths = read_projective_paths(q, &p1, &p0, &presentation);
    let nu = injective_sum_morphism(q, fp, &p1, &p0, &paths);
    let i1 = injective_sum(q, &p1);
    let i0 = injective_sum(q, &p0);
    let (tau, _) = kernel(q, fp, &i1, &nu);
    let (nu_m, _) = cokernel(q, fp, &i0, &nu);
    let proj = coordinates_to_mult(q.injective_coordinates(&nu_m.dim().as_i64()));
    (tau, proj)
}

/// Auslander-Reiten translate of a module without projective summands.
pub fn ar_translate(q: &Quiver, fp: &PrimeField, m: &Representation) -> Result<Representation> {
    let (tau, proj) = translate_with_projectives(q, fp, m);
    if proj.iter().any(|&r| r > 0) {
        return Err(Error::ProjectiveSummand);
    }
    Ok(tau)
}

/// Inverse translate in the cluster category: injective summands `I_j` of
/// `M` go to `P_j[1]`.
pub fn ar_inverse(q: &Quiver, fp: &PrimeField, m: &Representation) -> ClusterObject {
    let (i0, env) = injective_envelope(q, fp, m);
    let i0_rep = injective_sum(q, &i0);
    let (c, proj) = cokernel(q, fp, &i0_rep, &env);
    let (i1, env_c) = injective_envelope(q, fp, &c);
    let copresentation = proj.then(fp, &env_c);
    let paths = read_injective_paths(q, &i0, &i1, &copresentation);
    let nu_inv = projective_sum_morphism(q, fp, &i0, &i1, &paths);
    let p0 = projective_sum(q, &i0);
    let p1 = projective_sum(q, &i1);
    let (module, _) = cokernel(q, fp, &p1, &nu_inv);
    let (inj_part, _) = kernel(q, fp, &p0, &nu_inv);
    let shifted = coordinates_to_mult(q.projective_coordinates(&inj_part.dim().as_i64()));
    ClusterObject { module, shifted }
}

/// Whether `M` has a projective direct summand: over a hereditary algebra this
/// happens exactly when some indecomposable projective receives a nonzero map.
pub fn has_projective_summand(q: &Quiver, fp: &PrimeField, m: &Representation) -> bool {
    (0..q.n()).any(|i| {
        let p = standard_module(q, StandardKind::Projective, i).expect("vertex");
        crate::rep::hom_dim(q, fp, m, &p) > 0
    })
}

/// Whether `M` is projective: Ext^1(M, S_i) = 0 for every simple.
pub fn is_projective(q: &Quiver, fp: &PrimeField, m: &Representation) -> bool {
    (0..q.n()).all(|i| {
        let s = standard_module(q, StandardKind::Simple, i).expect("vertex");
        crate::rep::ext1_dim(q, fp, m, &s) == 0
    })
}

/// Multiplicities of `P_j` in a projective module, read off its dimension.
pub fn projective_multiplicities(q: &Quiver, m: &Representation) -> Vec<usize> {
    coordinates_to_mult(q.projective_coordinates(&m.dim().as_i64()))
}

/// Data needed to turn an element of Hom(L, τM) into a middle term.
#[derive(Debug, Clone)]
pub struct HomSide {
    pub tau_m: Representation,
    /// Projective summands of `M`, which reappear in every middle term.
    pub projective_part: Vec<usize>,
}

impl HomSide {
    pub fn new(q: &Quiver, fp: &PrimeField, m: &Representation) -> Self {
        let (tau_m, projective_part) = translate_with_projectives(q, fp, m);
        HomSide { tau_m, projective_part }
    }
}

/// Middle term `Ker g ⊕ τ⁻¹(Coker g)` of the triangle attached to
/// `g: L -> τM`, plus the projective part of `M`.
pub fn hom_side_middle_term(
    q: &Quiver,
    fp: &PrimeField,
    l: &Representation,
    side: &HomSide,
    g: &Morphism,
) -> Result<ClusterObject> {
    check_shape(l, &side.tau_m, g)?;
    let (ker, _) = kernel(q, fp, l, g);
    let (coker, _) = cokernel(q, fp, &side.tau_m, g);
    let mut y = ClusterObject::module(ker).direct_sum(&ar_inverse(q, fp, &coker));
    if side.projective_part.iter().any(|&r| r > 0) {
        let summands: Vec<usize> = side
            .projective_part
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| std::iter::repeat_n(i, r))
            .collect();
        y = y.direct_sum(&ClusterObject::module(projective_sum(q, &summands)));
    }
    Ok(y)
}

/// Middle term `Coker f ⊕ (Ker f)[1]` for `f: P -> M` with `P` projective.
pub fn projective_side_middle_term(
    q: &Quiver,
    fp: &PrimeField,
    p: &Representation,
    m: &Representation,
    f: &Morphism,
) -> Result<ClusterObject> {
    check_shape(p, m, f)?;
    let (ker, _) = kernel(q, fp, p, f);
    let (coker, _) = cokernel(q, fp, m, f);
    Ok(ClusterObject { module: coker, shifted: projective_multiplicities(q, &ker) })
}

fn check_shape(src: &Representation, dst: &Representation, f: &Morphism) -> Result<()> {
    let ok = f.blocks.len() == src.dim().len()
        && f.blocks
            .iter()
            .enumerate()
            .all(|(i, b)| b.rows() == dst.dim()[i] && b.cols() == src.dim()[i]);
    if ok {
        Ok(())
    } else {
        Err(Error::ShapeMismatch("morphism blocks do not match the modules".into()))
    }
}

/// Class `[P_0] - [P_1]` of a minimal projective presentation.
pub fn index(q: &Quiver, fp: &PrimeField, m: &Representation) -> Vec<i64> {
    let (p0, cover) = projective_cover(q, fp, m);
    let p0_rep = projective_sum(q, &p0);
    let (k, _) = kernel(q, fp, &p0_rep, &cover);
    let (p1, _) = projective_cover(q, fp, &k);
    let mut v = vec![0i64; q.n()];
    p0.iter().for_each(|&i| v[i] += 1);
    p1.iter().for_each(|&i| v[i] -= 1);
    v
}

/// Class `[P^0] - [P^1]` where `0 -> M -> νP^0 -> νP^1 -> 0` is a minimal
/// injective copresentation; shifted summands `P_i[1]` contribute `-[P_i]`.
pub fn coindex(q: &Quiver, fp: &PrimeField, obj: &ClusterObject) -> Vec<i64> {
    let m = &obj.module;
    let (i0, env) = injective_envelope(q, fp, m);
    let i0_rep = injective_sum(q, &i0);
    let (c, _) = cokernel(q, fp, &i0_rep, &env);
    let (i1, _) = injective_envelope(q, fp, &c);
    let mut v = vec![0i64; q.n()];
    i0.iter().for_each(|&i| v[i] += 1);
    i1.iter().for_each(|&i| v[i] -= 1);
    for (slot, &s) in v.iter_mut().zip(&obj.shifted) {
        *slot -= s as i64;
    }
    v
}
