//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use plectic::exactla::{CMatrix, CSubspace, Field, Scalar, Subspace};
use plectic::extcalc::RepComplex;
use plectic::hodge1::exp_nilpotent;
use plectic::realforms::{
    direct_sum_r, exterior_r, tate_r, tensor_r, RealPlecticRep, RealStructure,
};
use plectic::repcore::{self, Bidegree, PlecticRep};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a/b + (c/d)i` with small numerators and denominators in `{1, 2}`.
pub fn scalar(rng: &mut TestRng) -> Scalar {
    Scalar::from_ratios(rng.gen_range(-2..=2), rng.gen_range(1..=2), rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

pub fn nonzero_scalar(rng: &mut TestRng) -> Scalar {
    loop {
        let x = scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn rational_scalar(rng: &mut TestRng) -> Scalar {
    Scalar::from_ratios(rng.gen_range(-2..=2), rng.gen_range(1..=3), 0, 1)
}

fn invertible_with(rng: &mut TestRng, n: usize, entry: fn(&mut TestRng) -> Scalar) -> CMatrix {
    loop {
        let m = CMatrix::from_fn(n, n, |_, _| entry(rng));
        if m.rank() == n {
            return m;
        }
    }
}

pub fn invertible(rng: &mut TestRng, n: usize) -> CMatrix {
    invertible_with(rng, n, scalar)
}

/// An invertible matrix with rational entries; it commutes with complex conjugation.
pub fn real_invertible(rng: &mut TestRng, n: usize) -> CMatrix {
    invertible_with(rng, n, rational_scalar)
}

fn entry(rng: &mut TestRng) -> i64 {
    rng.gen_range(-2..=1)
}

/// Coordinate bidegrees; later coordinates often sit strictly below an earlier one in
/// variable `mu`, so that a nontrivial `t_mu` is possible.
fn grading(rng: &mut TestRng, g: usize, dim: usize, mu: usize, diagonal: bool) -> Vec<Bidegree> {
    let mut out: Vec<Bidegree> = Vec::with_capacity(dim);
    for _ in 0..dim {
        let bd = if !out.is_empty() && rng.gen_bool(0.6) {
            let mut b = out.choose(rng).expect("nonempty").clone();
            let a = rng.gen_range(1..=2);
            let c = if diagonal { a } else { rng.gen_range(1..=2) };
            b.p[mu] -= a;
            b.q[mu] -= c;
            b
        } else {
            let p: Vec<i64> = (0..g).map(|_| entry(rng)).collect();
            let q = if diagonal { p.clone() } else { (0..g).map(|_| entry(rng)).collect() };
            Bidegree::new(p, q)
        };
        out.push(bd);
    }
    out
}

/// A random nilpotent map that strictly lowers both indices in variable `mu` and keeps the others.
fn lowering(rng: &mut TestRng, degrees: &[Bidegree], mu: usize, entry: fn(&mut TestRng) -> Scalar) -> CMatrix {
    let g = degrees[0].g();
    let dim = degrees.len();
    CMatrix::from_fn(dim, dim, |i, j| {
        let (di, dj) = (&degrees[i], &degrees[j]);
        let (pi, qi) = di.at(mu);
        let (pj, qj) = dj.at(mu);
        let same = (0..g).filter(|&nu| nu != mu).all(|nu| di.at(nu) == dj.at(nu));
        if same && pi < pj && qi < qj && rng.gen_bool(0.7) {
            entry(rng)
        } else {
            Scalar::zero()
        }
    })
}

/// Coordinate grading with one unipotent `t_mu = 1 + N`; the other `t_ν` are trivial.
pub fn unipotent_rep(rng: &mut TestRng, g: usize, dim: usize) -> PlecticRep {
    let mu = rng.gen_range(0..g);
    let degrees = grading(rng, g, dim, mu, false);
    let base = PlecticRep::from_coordinate_grading(g, &degrees).expect("shapes");
    let n = lowering(rng, &degrees, mu, nonzero_scalar);
    let mut t = vec![CMatrix::identity(dim); g];
    t[mu] = t[mu].add(&n);
    PlecticRep::checked(g, dim, base.pieces().clone(), t).expect("valid by construction")
}

pub fn tate_block(rng: &mut TestRng, g: usize) -> PlecticRep {
    let n: Vec<i64> = (0..g).map(|_| rng.gen_range(-1..=2)).collect();
    repcore::tate(&n)
}

/// A random valid representation with `dim ≤ max_dim`, built from Tate blocks, direct sums,
/// tensor and exterior products and unipotent monodromy, then moved by a random basis change.
pub fn random_rep(rng: &mut TestRng, g: usize, max_dim: usize) -> PlecticRep {
    let choice = rng.gen_range(0..4);
    let u = match choice {
        0 => {
            let d = rng.gen_range(1..=max_dim);
            let mut u = unipotent_rep(rng, g, d);
            for _ in 0..rng.gen_range(0..=max_dim - d) {
                u = repcore::direct_sum(&u, &tate_block(rng, g)).expect("same g");
            }
            u
        }
        1 if max_dim >= 2 => {
            let d1 = rng.gen_range(1..=max_dim / 2);
            let d2 = rng.gen_range(1..=max_dim / d1);
            let a = unipotent_rep(rng, g, d1);
            let b = unipotent_rep(rng, g, d2);
            repcore::tensor(&a, &b).expect("same g")
        }
        2 if g >= 2 => {
            let g1 = rng.gen_range(1..g);
            let d1 = rng.gen_range(1..=max_dim.min(3));
            let d2 = rng.gen_range(1..=(max_dim / d1).max(1));
            let a = random_rep(rng, g1, d1);
            let b = random_rep(rng, g - g1, d2);
            repcore::exterior(&a, &b)
        }
        _ => {
            let d = rng.gen_range(1..=max_dim);
            let u = unipotent_rep(rng, g, d);
            let t = tate_block(rng, g);
            repcore::tensor(&u, &t).expect("same g")
        }
    };
    if rng.gen_bool(0.5) {
        let h = invertible(rng, u.dim());
        u.change_basis(&h).expect("invertible")
    } else {
        u
    }
}

/// The corpus used by the round-trip and splitting suites.
pub fn corpus(seed: u64, count: usize) -> Vec<PlecticRep> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let g = r.gen_range(1..=3);
            random_rep(&mut r, g, 6)
        })
        .collect()
}

fn conj_subspace(s: &CSubspace) -> CSubspace {
    RealStructure::conj(s.ambient()).image(s)
}

/// `Ū`: pieces `conj(U^{q,p})` and monodromy `conj(t)⁻¹`.
pub fn conjugate_rep(u: &PlecticRep) -> PlecticRep {
    let pieces: BTreeMap<Bidegree, CSubspace> =
        u.pieces().iter().map(|(b, s)| (b.swapped(), conj_subspace(s))).collect();
    let t = u.ts().iter().map(|t| t.conj().inverse().expect("invertible")).collect();
    PlecticRep::new(u.g(), u.dim(), pieces, t).expect("shapes")
}

/// `U ⊕ Ū` with `σ(x, y) = (ȳ, x̄)`.
pub fn realify_rep(u: &PlecticRep) -> RealPlecticRep {
    let n = u.dim();
    let sum = repcore::direct_sum(u, &conjugate_rep(u)).expect("same g");
    let swap = CMatrix::from_fn(2 * n, 2 * n, |i, j| if (i + n) % (2 * n) == j { Scalar::one() } else { Scalar::zero() });
    RealPlecticRep::checked(sum, RealStructure::from_matrix(swap).expect("involution")).expect("real by construction")
}

/// Hodge-diagonal coordinate grading, `σ = conj` and `t_mu = exp(iN)` with `N` real.
pub fn real_unipotent_block(rng: &mut TestRng, g: usize, dim: usize) -> RealPlecticRep {
    let mu = rng.gen_range(0..g);
    let degrees = grading(rng, g, dim, mu, true);
    let base = PlecticRep::from_coordinate_grading(g, &degrees).expect("shapes");
    let n = lowering(rng, &degrees, mu, rational_scalar).scale(&Scalar::i());
    let mut t = vec![CMatrix::identity(dim); g];
    t[mu] = exp_nilpotent(&n).expect("nilpotent");
    let rep = PlecticRep::checked(g, dim, base.pieces().clone(), t).expect("valid by construction");
    RealPlecticRep::checked(rep, RealStructure::conj(dim)).expect("real by construction")
}

pub fn tate_real(rng: &mut TestRng, g: usize) -> RealPlecticRep {
    let n: Vec<i64> = (0..g).map(|_| rng.gen_range(-1..=2)).collect();
    tate_r(&n)
}

/// A random real representation with `dim ≤ max_dim`.
pub fn random_real(rng: &mut TestRng, g: usize, max_dim: usize) -> RealPlecticRep {
    let u = match rng.gen_range(0..6) {
        0 => tate_real(rng, g),
        1 if max_dim >= 2 => {
            let d = rng.gen_range(1..=max_dim / 2);
            realify_rep(&unipotent_rep(rng, g, d))
        }
        2 if max_dim >= 2 => {
            let d = rng.gen_range(1..=max_dim - 1);
            let a = random_real(rng, g, d);
            let b = random_real(rng, g, max_dim - a.dim());
            direct_sum_r(&a, &b).expect("same g")
        }
        3 if max_dim >= 2 => {
            let a = random_real(rng, g, max_dim / 2);
            let b = random_real(rng, g, max_dim / a.dim());
            tensor_r(&a, &b).expect("same g")
        }
        4 if g >= 2 => {
            let g1 = rng.gen_range(1..g);
            let a = random_real(rng, g1, max_dim.min(3));
            let b = random_real(rng, g - g1, (max_dim / a.dim()).max(1));
            exterior_r(&a, &b)
        }
        _ => {
            let d = rng.gen_range(1..=max_dim.min(3));
            real_unipotent_block(rng, g, d)
        }
    };
    if rng.gen_bool(0.5) {
        let h = real_invertible(rng, u.dim());
        u.change_basis(&h).expect("invertible")
    } else {
        u
    }
}

/// A short exact sequence `0 → S → E → Q → 0` with `S` a weight step in the first variable.
pub struct Ses {
    pub sub: RealPlecticRep,
    pub total: RealPlecticRep,
    pub quotient: RealPlecticRep,
    /// `dim E × dim S`.
    pub inclusion: CMatrix,
    /// `dim Q × dim E`.
    pub projection: CMatrix,
}

pub fn weight_step(e: &RealPlecticRep, k: i64) -> CSubspace {
    e.rep.sum_where(|b| b.at(0).0 + b.at(0).1 <= k)
}

fn first_weights(e: &RealPlecticRep) -> Vec<i64> {
    let mut w: Vec<i64> = e.rep.pieces().keys().map(|b| b.at(0).0 + b.at(0).1).collect();
    w.sort_unstable();
    w.dedup();
    w
}

/// A random real representation with at least two distinct weights in the first direction.
pub fn random_mixed_real(rng: &mut TestRng, g: usize, max_dim: usize) -> RealPlecticRep {
    loop {
        let e = random_real(rng, g, max_dim);
        if first_weights(&e).len() > 1 {
            return e;
        }
    }
}

/// `0 → W_k E → E → E/W_k E → 0`; both ends are nonzero whenever `E` has two weights.
pub fn random_ses(rng: &mut TestRng, total: RealPlecticRep) -> Ses {
    let weights = first_weights(&total);
    let proper = &weights[..weights.len().saturating_sub(1).max(1)];
    let k = *proper.choose(rng).expect("nonzero representation");
    let s = weight_step(&total, k);
    let sub = total.sub_rep(&s).expect("stable");
    let (quotient, projection) = total.quotient_rep(&s).expect("stable");
    Ses { sub, total, quotient, inclusion: s.basis_matrix(), projection }
}

pub fn zero_real(g: usize) -> RealPlecticRep {
    let rep = PlecticRep::new(g, 0, BTreeMap::new(), vec![CMatrix::zeros(0, 0); g]).expect("shapes");
    RealPlecticRep::new(rep, RealStructure::conj(0)).expect("dimensions")
}

/// Termwise direct sum with block-diagonal differentials.
pub fn direct_sum_complex(a: &RepComplex, b: &RepComplex) -> RepComplex {
    let g = a.g().or(b.g()).expect("nonempty complexes");
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    let zero = zero_real(g);
    let obj = |c: &RepComplex, k: i64| c.object(k).cloned().unwrap_or_else(|| zero.clone());
    let objects: Vec<RealPlecticRep> =
        (lo..=hi).map(|k| direct_sum_r(&obj(a, k), &obj(b, k)).expect("same g")).collect();
    let diff = |c: &RepComplex, k: i64| {
        c.d(k).cloned().unwrap_or_else(|| CMatrix::zeros(obj(c, k + 1).dim(), obj(c, k).dim()))
    };
    let d = (lo..hi).map(|k| diff(a, k).direct_sum(&diff(b, k))).collect();
    RepComplex::new(lo, objects, d).expect("shapes")
}

/// `A --id--> A` in degrees `lo`, `lo + 1`; acyclic.
pub fn cone_of_identity(a: &RealPlecticRep, lo: i64) -> RepComplex {
    RepComplex::new(lo, vec![a.clone(), a.clone()], vec![CMatrix::identity(a.dim())]).expect("shapes")
}

/// Replaces each term by an isomorphic copy under a random real basis change.
pub fn scramble_complex(rng: &mut TestRng, c: &RepComplex) -> RepComplex {
    let hs: Vec<CMatrix> = c.objects().iter().map(|o| real_invertible(rng, o.dim())).collect();
    let objects = c.objects().iter().zip(&hs).map(|(o, h)| o.change_basis(h).expect("invertible")).collect();
    let d = c
        .differentials()
        .iter()
        .enumerate()
        .map(|(k, m)| hs[k + 1].mul(m).mul(&hs[k].inverse().expect("invertible")))
        .collect();
    RepComplex::new(c.lo(), objects, d).expect("shapes")
}

/// A pair of quasi-isomorphic complexes.
pub fn quasi_isomorphic_pair(rng: &mut TestRng, g: usize) -> (RepComplex, RepComplex) {
    let e = random_real(rng, g, 4);
    let ses = random_ses(rng, e);
    let resolved = RepComplex::new(-1, vec![ses.sub.clone(), ses.total.clone()], vec![ses.inclusion.clone()]).expect("shapes");
    let (left, right) = if rng.gen_bool(0.5) {
        (RepComplex::single(ses.quotient.clone(), 0), resolved)
    } else {
        let y = RepComplex::single(ses.total.clone(), 0);
        let a = random_real(rng, g, 2);
        let shift = rng.gen_range(-2..=1);
        (y.clone(), direct_sum_complex(&y, &cone_of_identity(&a, shift)))
    };
    (left, scramble_complex(rng, &right))
}

pub fn subspace_sum<'a>(dim: usize, parts: impl IntoIterator<Item = &'a CSubspace>) -> CSubspace {
    Subspace::sum_all(dim, parts)
}
