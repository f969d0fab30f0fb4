#![allow(dead_code)]

use cclab::ar::{ar_translate, ClusterObject};
use cclab::corpus::{d4_tilde_e1, d4_tilde_e2, finite_type_indecomposables, kronecker_regular};
use cclab::rep::{ext1_basis, middle_term, standard_module};
use cclab::{PrimeField, Quiver, Representation, StandardKind};

pub struct Corpus {
    pub name: &'static str,
    pub q: Quiver,
    pub modules: Vec<(String, Representation)>,
}

impl Corpus {
    pub fn objects(&self) -> Vec<(String, ClusterObject)> {
        let mut out: Vec<(String, ClusterObject)> = self
            .modules
            .iter()
            .map(|(n, m)| (n.clone(), ClusterObject::module(m.clone())))
            .collect();
        for i in 0..self.q.n() {
            let mut s = vec![0; self.q.n()];
            s[i] = 1;
            out.push((format!("P{}[1]", i + 1), ClusterObject::shifted_projective(&self.q, s).unwrap()));
        }
        out
    }
}

fn standard(q: &Quiver, kinds: &[StandardKind]) -> Vec<(String, Representation)> {
    let mut out = Vec::new();
    for &k in kinds {
        for i in 0..q.n() {
            let tag = match k {
                StandardKind::Simple => "S",
                StandardKind::Projective => "P",
                StandardKind::Injective => "I",
            };
            out.push((format!("{tag}{}", i + 1), standard_module(q, k, i).unwrap()));
        }
    }
    out
}

/// The nonsplit extension of `m` by `l` for a one-dimensional Ext^1(m, l).
pub fn unique_extension(q: &Quiver, m: &Representation, l: &Representation) -> Representation {
    let fp = PrimeField::new(101);
    let basis = ext1_basis(q, &fp, m, l);
    assert_eq!(basis.len(), 1);
    middle_term(q, &fp, m, l, &basis[0]).unwrap().symmetric_lift(101)
}

pub fn a2() -> Corpus {
    let q = Quiver::linear_a(2);
    let modules = finite_type_indecomposables(&q)
        .unwrap()
        .into_iter()
        .map(|m| (format!("M{}", m.dim()), m))
        .collect();
    Corpus { name: "A2", q, modules }
}

pub fn a3() -> Corpus {
    let q = Quiver::linear_a(3);
    let modules = finite_type_indecomposables(&q)
        .unwrap()
        .into_iter()
        .map(|m| (format!("M{}", m.dim()), m))
        .collect();
    Corpus { name: "A3", q, modules }
}

pub fn kronecker() -> Corpus {
    let q = Quiver::generalized_kronecker(2);
    let mut modules = standard(&q, &[StandardKind::Simple, StandardKind::Projective, StandardKind::Injective]);
    for (a, b) in [(1, 0), (0, 1), (1, 1), (1, 2)] {
        modules.push((format!("R({a}:{b})"), kronecker_regular(a, b)));
    }
    let fp = PrimeField::new(101);
    let tau_s1 = ar_translate(&q, &fp, &modules[0].1).unwrap().symmetric_lift(101);
    modules.push(("tauS1".into(), tau_s1));
    Corpus { name: "Kronecker", q, modules }
}

pub fn d4_tilde() -> Corpus {
    let q = Quiver::d4_tilde_sink();
    let mut modules = standard(&q, &[StandardKind::Simple, StandardKind::Projective]);
    let (e1, e2) = (d4_tilde_e1(&q).unwrap(), d4_tilde_e2(&q).unwrap());
    modules.push(("E1[2]".into(), unique_extension(&q, &e1, &e2)));
    modules.push(("E1".into(), e1));
    modules.push(("E2".into(), e2));
    Corpus { name: "D4~", q, modules }
}

pub fn all() -> Vec<Corpus> {
    vec![a2(), a3(), kronecker(), d4_tilde()]
}
