//! Ext groups of real plectic representations.
//!
//! `𝒜^𝐦(U)` is the ℚ-space of real points of `∩_μ 𝒜^{m_μ}_μ(U)` for the twisted involution
//! `v ↦ (−t₁)^{m₁}⋯(−t_g)^{m_g} σ(v)`.  Everything after that is linear algebra over ℚ in
//! realified coordinates `(re, im) ∈ ℚ^{2n}`.  The total complex orders directions as
//! `(1, …, g, complex degree)` and lays out each degree lexicographically in
//! `(m₁, …, m_g, k)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{
    quotient_map, realify, AntiLinearMap, CMatrix, CSubspace, Field, QMatrix, QSubspace, Quotient, Rational, Scalar,
    Subspace,
};
use crate::realforms::{RealPlecticRep, RealStructure, ValidateReal};
use crate::repcore::{Bidegree, PlecticRep, RepMorphism};

/// A bounded complex of real representations; `d[k]` goes from degree `lo + k` to `lo + k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepComplex {
    lo: i64,
    objects: Vec<RealPlecticRep>,
    d: Vec<CMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComplexViolation {
    VariableCount { degree: i64 },
    Object { degree: i64, detail: String },
    Morphism { degree: i64, detail: String },
    NotReal { degree: i64 },
    NotComplex { degree: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexReport {
    pub valid: bool,
    pub violations: Vec<ComplexViolation>,
}

impl RepComplex {
    /// Checks shapes only.
    pub fn new(lo: i64, objects: Vec<RealPlecticRep>, d: Vec<CMatrix>) -> Result<Self> {
        if d.len() + 1 != objects.len().max(1) {
            return Err(Error::Malformed(format!("{} objects need {} differentials", objects.len(), objects.len().saturating_sub(1))));
        }
        for (k, m) in d.iter().enumerate() {
            let (s, t) = (objects[k].dim(), objects[k + 1].dim());
            if m.nrows() != t || m.ncols() != s {
                return Err(Error::Dimension { expected: t * s, found: m.nrows() * m.ncols() });
            }
        }
        Ok(RepComplex { lo, objects, d })
    }

    /// `U` placed in degree `degree`.
    pub fn single(u: RealPlecticRep, degree: i64) -> Self {
        RepComplex { lo: degree, objects: vec![u], d: Vec::new() }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// The top degree; `lo − 1` for the empty complex.
    pub fn hi(&self) -> i64 {
        self.lo + self.objects.len() as i64 - 1
    }

    pub fn objects(&self) -> &[RealPlecticRep] {
        &self.objects
    }

    pub fn differentials(&self) -> &[CMatrix] {
        &self.d
    }

    pub fn object(&self, degree: i64) -> Option<&RealPlecticRep> {
        usize::try_from(degree - self.lo).ok().and_then(|k| self.objects.get(k))
    }

    /// `d^degree`, if both ends exist.
    pub fn d(&self, degree: i64) -> Option<&CMatrix> {
        usize::try_from(degree - self.lo).ok().and_then(|k| self.d.get(k))
    }

    pub fn g(&self) -> Option<usize> {
        self.objects.first().map(RealPlecticRep::g)
    }

    pub fn validate(&self) -> ComplexReport {
        let mut out = Vec::new();
        let g = self.g();
        for (k, u) in self.objects.iter().enumerate() {
            let degree = self.lo + k as i64;
            if Some(u.g()) != g {
                out.push(ComplexViolation::VariableCount { degree });
                continue;
            }
            let r = u.validate_real();
            if !r.valid {
                out.push(ComplexViolation::Object { degree, detail: format!("{:?}", r.violations) });
            }
        }
        if !out.is_empty() {
            return ComplexReport { valid: false, violations: out };
        }
        for (k, m) in self.d.iter().enumerate() {
            let degree = self.lo + k as i64;
            let (s, t) = (&self.objects[k], &self.objects[k + 1]);
            if let Some(v) = RepMorphism::new(s.rep.clone(), t.rep.clone(), m.clone()).validate().violation {
                out.push(ComplexViolation::Morphism { degree, detail: format!("{v:?}") });
            }
            // d ∘ σ_s = σ_t ∘ d, i.e. d S_s = S_t conj(d).
            if m.mul(s.sigma.matrix()) != t.sigma.matrix().mul(&m.conj()) {
                out.push(ComplexViolation::NotReal { degree });
            }
        }
        for (k, pair) in self.d.windows(2).enumerate() {
            if !pair[1].mul(&pair[0]).is_zero() {
                out.push(ComplexViolation::NotComplex { degree: self.lo + k as i64 });
            }
        }
        ComplexReport { valid: out.is_empty(), violations: out }
    }

    fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if !r.valid {
            return Err(Error::Invalid(format!("invalid complex: {:?}", r.violations)));
        }
        Ok(())
    }
}

/// A bounded complex of finite-dimensional ℚ-spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainComplex {
    pub lo: i64,
    pub dims: Vec<usize>,
    /// One label per basis vector of each degree.
    pub labels: Vec<Vec<String>>,
    /// `d[k]: C^{lo+k} → C^{lo+k+1}`.
    #[serde(skip)]
    pub d: Vec<QMatrix>,
}

impl CochainComplex {
    pub fn new(lo: i64, dims: Vec<usize>, d: Vec<QMatrix>) -> Result<Self> {
        let labels = dims.iter().map(|&n| (0..n).map(|j| format!("#{j}")).collect()).collect();
        Self::with_labels(lo, dims, labels, d)
    }

    pub fn with_labels(lo: i64, dims: Vec<usize>, labels: Vec<Vec<String>>, d: Vec<QMatrix>) -> Result<Self> {
        if d.len() + 1 != dims.len().max(1) || labels.len() != dims.len() {
            return Err(Error::Malformed("degree counts disagree".into()));
        }
        for (k, m) in d.iter().enumerate() {
            if m.ncols() != dims[k] || m.nrows() != dims[k + 1] {
                return Err(Error::Dimension { expected: dims[k + 1] * dims[k], found: m.nrows() * m.ncols() });
            }
        }
        Ok(CochainComplex { lo, dims, labels, d })
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, m: i64) -> usize {
        usize::try_from(m - self.lo).ok().and_then(|k| self.dims.get(k).copied()).unwrap_or(0)
    }

    /// `d^m`, or a zero map at the ends.
    pub fn differential(&self, m: i64) -> QMatrix {
        usize::try_from(m - self.lo)
            .ok()
            .and_then(|k| self.d.get(k).cloned())
            .unwrap_or_else(|| QMatrix::zeros(self.dim(m + 1), self.dim(m)))
    }

    /// Degrees `m` where `d^{m+1} ∘ d^m ≠ 0`.
    pub fn square_failures(&self) -> Vec<i64> {
        self.d.windows(2).enumerate().filter(|(_, p)| !p[1].mul(&p[0]).is_zero()).map(|(k, _)| self.lo + k as i64).collect()
    }

    pub fn is_complex(&self) -> bool {
        self.square_failures().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub dim: usize,
    /// Cocycles whose classes form a basis.
    #[serde(skip)]
    pub representatives: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub groups: BTreeMap<i64, CohomologyGroup>,
}

impl Cohomology {
    /// `dim H^m`, zero outside the stored range.
    pub fn dim(&self, m: i64) -> usize {
        self.groups.get(&m).map_or(0, |h| h.dim)
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups.iter().map(|(&m, h)| (m, h.dim)).collect()
    }
}

pub fn cohomology(c: &CochainComplex) -> Result<Cohomology> {
    if let Some(&m) = c.square_failures().first() {
        return Err(Error::Invalid(format!("d ∘ d ≠ 0 starting in degree {m}")));
    }
    let mut groups = BTreeMap::new();
    for m in c.lo..=c.hi() {
        let ker = c.differential(m).kernel();
        let im = c.differential(m - 1).image();
        let q = quotient_map(&ker, &im)?;
        groups.insert(m, CohomologyGroup { dim: q.dim(), representatives: q.complement().to_vec() });
    }
    Ok(Cohomology { groups })
}

fn check_mu(u: &RealPlecticRep, mu: usize) -> Result<()> {
    if mu == 0 || mu > u.g() {
        return Err(Error::OutOfRange(format!("μ = {mu} but g = {}", u.g())));
    }
    Ok(())
}

/// `𝒜^0_μ` (`p_μ = q_μ = 0`) or `𝒜^1_μ` (`p_μ, q_μ < 0`); `mu` is one-based.
pub fn a_space(u: &RealPlecticRep, mu: usize, m: u8) -> Result<CSubspace> {
    check_mu(u, mu)?;
    let k = mu - 1;
    match m {
        0 => Ok(u.rep.sum_where(|b| b.p[k] == 0 && b.q[k] == 0)),
        1 => Ok(u.rep.sum_where(|b| b.p[k] < 0 && b.q[k] < 0)),
        _ => Err(Error::OutOfRange(format!("m = {m} is not 0 or 1"))),
    }
}

fn check_multi(u: &RealPlecticRep, m: &[u8], len: usize) -> Result<()> {
    if m.len() != len {
        return Err(Error::VariableCount(len, m.len()));
    }
    if m.iter().any(|&x| x > 1) {
        return Err(Error::OutOfRange(format!("{m:?} is not in {{0,1}}^{len}")));
    }
    let _ = u;
    Ok(())
}

/// `𝒜^𝐦(U)` as a ℚ-subspace of `ℚ^{2 dim U}`.
pub fn a_multi(u: &RealPlecticRep, m: &[u8]) -> Result<QSubspace> {
    check_multi(u, m, u.g())?;
    let dim = u.dim();
    let mut host = Subspace::full(dim);
    for (k, &mk) in m.iter().enumerate() {
        host = host.intersect(&a_space(u, k + 1, mk)?);
    }
    let mut twist = CMatrix::identity(dim);
    for (k, &mk) in m.iter().enumerate() {
        if mk == 1 {
            twist = twist.mul(&u.rep.t(k).neg());
        }
    }
    let tau = AntiLinearMap::new(twist.mul(u.sigma.matrix()))?;
    if !tau.restrict_to(&host)?.is_involution() {
        return Err(Error::NotInvolution);
    }
    let fixed = tau.fixed_space_unchecked();
    Ok(fixed.intersect(&realify(&host)))
}

fn multi_indices(g: usize) -> Vec<Vec<u8>> {
    (0..1u32 << g).map(|bits| (0..g).map(|k| ((bits >> (g - 1 - k)) & 1) as u8).collect()).collect()
}

/// `(t_μ − 1)` realified; `mu` zero-based.
fn realified_monodromy(u: &PlecticRep, mu: usize) -> QMatrix {
    u.t(mu).sub(&CMatrix::identity(u.dim())).realify()
}

/// Coordinates of `m·b` in `target` for every basis vector `b` of `source`, as columns.
fn restricted_map(m: &QMatrix, source: &QSubspace, target: &QSubspace) -> Result<QMatrix> {
    let cols = source
        .basis()
        .iter()
        .map(|b| target.coordinates(&m.apply(b)).ok_or_else(|| Error::NotContained("map leaves the target space".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(QMatrix::from_columns(target.dim(), &cols))
}

/// `Λ•(U•)` together with the spaces it was assembled from.
#[derive(Clone, Debug)]
pub struct Lambda {
    pub complex: CochainComplex,
    /// `𝒜^𝐦(U^k)` keyed by `(𝐦, k)`.
    pub spaces: BTreeMap<(Vec<u8>, i64), QSubspace>,
}

pub fn lambda_complex(u: &RepComplex) -> Result<Lambda> {
    u.require_valid()?;
    let Some(g) = u.g() else {
        return Ok(Lambda { complex: CochainComplex::new(u.lo, Vec::new(), Vec::new())?, spaces: BTreeMap::new() });
    };
    let ms = multi_indices(g);
    let mut spaces = BTreeMap::new();
    for k in u.lo..=u.hi() {
        let obj = u.object(k).expect("in range");
        for m in &ms {
            spaces.insert((m.clone(), k), a_multi(obj, m)?);
        }
    }
    let weight = |m: &[u8]| m.iter().map(|&x| x as i64).sum::<i64>();
    let (lo, hi) = (u.lo, u.hi() + g as i64);
    // Blocks of each total degree in lexicographic order of (𝐦, k).
    let blocks: Vec<Vec<(Vec<u8>, i64)>> = (lo..=hi)
        .map(|deg| spaces.keys().filter(|(m, k)| weight(m) + k == deg).cloned().collect())
        .collect();
    let offsets: Vec<BTreeMap<(Vec<u8>, i64), usize>> = blocks
        .iter()
        .map(|bs| {
            let mut off = 0;
            bs.iter()
                .map(|key| {
                    let o = off;
                    off += spaces[key].dim();
                    (key.clone(), o)
                })
                .collect()
        })
        .collect();
    let dims: Vec<usize> = blocks.iter().map(|bs| bs.iter().map(|key| spaces[key].dim()).sum()).collect();
    let labels: Vec<Vec<String>> = blocks
        .iter()
        .map(|bs| {
            bs.iter()
                .flat_map(|(m, k)| {
                    let tag: String = m.iter().map(|x| char::from(b'0' + x)).collect();
                    (0..spaces[&(m.clone(), *k)].dim()).map(move |j| format!("A^{tag}(U^{k})#{j}"))
                })
                .collect()
        })
        .collect();
    let monodromy: BTreeMap<(i64, usize), QMatrix> = (u.lo..=u.hi())
        .flat_map(|k| (0..g).map(move |mu| (k, mu)))
        .map(|(k, mu)| ((k, mu), realified_monodromy(&u.object(k).expect("in range").rep, mu)))
        .collect();
    let mut d = Vec::new();
    for (idx, bs) in blocks.iter().enumerate().take(blocks.len().saturating_sub(1)) {
        let mut mat = QMatrix::zeros(dims[idx + 1], dims[idx]);
        for key in bs {
            let (m, k) = key;
            let src = &spaces[key];
            let col0 = offsets[idx][key];
            let mut place = |tkey: (Vec<u8>, i64), block: QMatrix, sign: bool| {
                let row0 = offsets[idx + 1][&tkey];
                for r in 0..block.nrows() {
                    for c in 0..block.ncols() {
                        let x = block.get(r, c);
                        mat.set(row0 + r, col0 + c, if sign { -x } else { x.clone() });
                    }
                }
            };
            for mu in 0..g {
                if m[mu] == 1 {
                    continue;
                }
                let mut tm = m.clone();
                tm[mu] = 1;
                let tkey = (tm, *k);
                let block = restricted_map(&monodromy[&(*k, mu)], src, &spaces[&tkey])?;
                let sign = m[..mu].iter().map(|&x| x as i64).sum::<i64>() % 2 == 1;
                place(tkey, block, sign);
            }
            if let Some(dk) = u.d(*k) {
                let tkey = (m.clone(), k + 1);
                let block = restricted_map(&dk.realify(), src, &spaces[&tkey])?;
                place(tkey, block, weight(m) % 2 == 1);
            }
        }
        d.push(mat);
    }
    let complex = CochainComplex::with_labels(lo, dims, labels, d)?;
    if let Some(&m) = complex.square_failures().first() {
        return Err(Error::Invalid(format!("total complex has d ∘ d ≠ 0 in degree {m}")));
    }
    Ok(Lambda { complex, spaces })
}

/// `Ext^m(ℝ(0), U•) = H^m(Λ•(U•))`.
pub fn ext_groups(u: &RepComplex) -> Result<Cohomology> {
    cohomology(&lambda_complex(u)?.complex)
}

/// `∩_{ν>μ} (𝒜^0_ν ∩ ker(t_ν − 1))`, the complex span of `Γ_μ`.
fn gamma_span(u: &RealPlecticRep, mu: usize) -> Result<CSubspace> {
    let mut s = Subspace::full(u.dim());
    for nu in mu + 1..=u.g() {
        let k = u.rep.t(nu - 1).sub(&CMatrix::identity(u.dim())).kernel();
        s = s.intersect(&a_space(u, nu, 0)?).intersect(&k);
    }
    Ok(s)
}

/// `Γ_μ(U)` as a representation in `μ` variables (`0 ≤ μ ≤ g`).
pub fn gamma(u: &RealPlecticRep, mu: usize) -> Result<RealPlecticRep> {
    if mu > u.g() {
        return Err(Error::OutOfRange(format!("μ = {mu} but g = {}", u.g())));
    }
    let s = gamma_span(u, mu)?;
    let sub = u.rep.sub_rep(&s)?;
    let pieces = sub
        .pieces()
        .iter()
        .map(|(b, p)| (Bidegree::new(b.p[..mu].to_vec(), b.q[..mu].to_vec()), p.clone()))
        .collect();
    let rep = PlecticRep::new(mu, sub.dim(), pieces, sub.ts()[..mu].to_vec())?;
    RealPlecticRep::new(rep, u.sigma.restrict_to(&s)?)
}

/// The ℚ-space `Γ₀(U)` inside `ℚ^{2 dim U}`.
pub fn gamma0(u: &RealPlecticRep) -> Result<QSubspace> {
    let s = gamma_span(u, 0)?;
    Ok(u.sigma.real_points().intersect(&realify(&s)))
}

/// `(𝓑_μ^𝐦(U), 𝓒_μ^𝐦(U))`; `𝓑` lives in `ℚ^{2 dim U}` and `𝓒` is a quotient of a subspace there.
#[derive(Clone, Debug)]
pub struct BcSpaces {
    pub b: QSubspace,
    pub c: Quotient<Rational>,
}

pub fn bc_spaces(u: &RealPlecticRep, mu: usize, m: &[u8]) -> Result<BcSpaces> {
    if mu > u.g() {
        return Err(Error::OutOfRange(format!("μ = {mu} but g = {}", u.g())));
    }
    check_multi(u, m, mu)?;
    if mu == u.g() {
        let b = a_multi(u, m)?;
        let c = quotient_map(&b, &b)?;
        return Ok(BcSpaces { b, c });
    }
    let extend = |x: u8| m.iter().copied().chain([x]).collect::<Vec<u8>>();
    let b0 = bc_spaces(u, mu + 1, &extend(0))?.b;
    let b1 = bc_spaces(u, mu + 1, &extend(1))?.b;
    let t = realified_monodromy(&u.rep, mu);
    let b = b0.intersect(&t.kernel());
    let c = quotient_map(&b1, &b0.image(&t))?;
    Ok(BcSpaces { b, c })
}

fn zero_rep(g: usize) -> RealPlecticRep {
    let rep = PlecticRep::new(g, 0, BTreeMap::new(), vec![CMatrix::zeros(0, 0); g]).expect("empty shapes agree");
    RealPlecticRep::new(rep, RealStructure::conj(0)).expect("dimensions agree")
}

/// `Hom•(T•, U•)` with `d(f)^i = d_U ∘ f^i − (−1)^n f^{i+1} ∘ d_T`; each degree is
/// `⊕_i Hom(T^i, U^{i+n})` in increasing `i`.
pub fn hom_complex(t: &RepComplex, u: &RepComplex) -> Result<RepComplex> {
    let (Some(gt), Some(gu)) = (t.g(), u.g()) else {
        return Ok(RepComplex { lo: 0, objects: Vec::new(), d: Vec::new() });
    };
    if gt != gu {
        return Err(Error::VariableCount(gt, gu));
    }
    let (lo, hi) = (u.lo - t.hi(), u.hi() - t.lo);
    let components = |n: i64| (t.lo..=t.hi()).filter(move |i| u.object(i + n).is_some()).collect::<Vec<i64>>();
    let mut objects = Vec::new();
    for n in lo..=hi {
        let mut acc = zero_rep(gt);
        for i in components(n) {
            let h = crate::realforms::hom_r(t.object(i).expect("in range"), u.object(i + n).expect("in range"))?;
            acc = crate::realforms::direct_sum_r(&acc, &h)?;
        }
        objects.push(acc);
    }
    let offsets = |n: i64| {
        let mut off = 0;
        components(n)
            .into_iter()
            .map(|i| {
                let o = off;
                off += t.object(i).unwrap().dim() * u.object(i + n).unwrap().dim();
                (i, o)
            })
            .collect::<BTreeMap<i64, usize>>()
    };
    let mut ds = Vec::new();
    for n in lo..hi {
        let (src, dst) = (offsets(n), offsets(n + 1));
        let mut mat = CMatrix::zeros(objects[(n + 1 - lo) as usize].dim(), objects[(n - lo) as usize].dim());
        let mut place = |row0: usize, col0: usize, block: &CMatrix| {
            for r in 0..block.nrows() {
                for c in 0..block.ncols() {
                    let x = mat.get(row0 + r, col0 + c) + block.get(r, c);
                    mat.set(row0 + r, col0 + c, x);
                }
            }
        };
        for (&i, &col0) in &src {
            let dim_t = t.object(i).unwrap().dim();
            // d_U ∘ f^i lands in component i of degree n + 1.
            if let (Some(du), Some(&row0)) = (u.d(i + n), dst.get(&i)) {
                place(row0, col0, &du.kron(&CMatrix::identity(dim_t)));
            }
            // −(−1)^n f^i ∘ d_T^{i−1} lands in component i − 1.
            if let (Some(dt), Some(&row0)) = (t.d(i - 1), dst.get(&(i - 1))) {
                let dim_u = u.object(i + n).unwrap().dim();
                let sign = if n.rem_euclid(2) == 0 { Scalar::from_int(-1) } else { Scalar::one() };
                place(row0, col0, &CMatrix::identity(dim_u).kron(&dt.transpose()).scale(&sign));
            }
        }
        ds.push(mat);
    }
    RepComplex::new(lo, objects, ds)
}

/// `dim H^m(Γ₀(Hom•(T•, U•)))`, homotopy classes of maps `T• → U•[m]`.
pub fn homotopy_hom(t: &RepComplex, u: &RepComplex, m: i64) -> Result<usize> {
    t.require_valid()?;
    u.require_valid()?;
    let h = hom_complex(t, u)?;
    let spaces = h.objects.iter().map(gamma0).collect::<Result<Vec<_>>>()?;
    let d = h
        .d
        .iter()
        .enumerate()
        .map(|(k, dk)| restricted_map(&dk.realify(), &spaces[k], &spaces[k + 1]))
        .collect::<Result<Vec<_>>>()?;
    let c = CochainComplex::new(h.lo, spaces.iter().map(Subspace::dim).collect(), d)?;
    Ok(cohomology(&c)?.dim(m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realforms::{exterior_r, include_rep_r, tate_r, with_conj};

    fn q(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn single(u: RealPlecticRep) -> RepComplex {
        RepComplex::single(u, 0)
    }

    #[test]
    fn cohomology_examples() {
        let id = CochainComplex::new(0, vec![1, 1], vec![QMatrix::identity(1)]).unwrap();
        assert_eq!(cohomology(&id).unwrap().dims(), BTreeMap::from([(0, 0), (1, 0)]));
        let zero = CochainComplex::new(0, vec![2, 3], vec![QMatrix::zeros(3, 2)]).unwrap();
        assert_eq!(cohomology(&zero).unwrap().dims(), BTreeMap::from([(0, 2), (1, 3)]));
        let mut r = QMatrix::zeros(3, 3);
        r.set(0, 0, q(1));
        let rank1 = CochainComplex::new(0, vec![3, 3], vec![r]).unwrap();
        assert_eq!(cohomology(&rank1).unwrap().dims(), BTreeMap::from([(0, 2), (1, 2)]));
        let bad = CochainComplex::new(0, vec![1, 1, 1], vec![QMatrix::identity(1), QMatrix::identity(1)]).unwrap();
        assert!(cohomology(&bad).is_err());
    }

    #[test]
    fn tate_a_spaces() {
        for g in 1..=3usize {
            for n in -1..=2 {
                let t = tate_r(&vec![n; g]);
                for m in multi_indices(g) {
                    let ones = m.iter().all(|&x| x == 1);
                    let zeros = m.iter().all(|&x| x == 0);
                    let expect = usize::from((n == 0 && zeros) || (n > 0 && ones));
                    assert_eq!(a_multi(&t, &m).unwrap().dim(), expect, "g={g} n={n} m={m:?}");
                }
            }
        }
        assert!(a_space(&tate_r(&[-1]), 1, 0).unwrap().is_zero());
        assert!(a_space(&tate_r(&[1]), 1, 1).unwrap().is_full());
        assert!(a_space(&tate_r(&[1]), 2, 0).is_err());
    }

    #[test]
    fn tate_ext() {
        for g in 1..=3usize {
            for n in -1..=2 {
                let h = ext_groups(&single(tate_r(&vec![n; g]))).unwrap();
                for m in -1..=g as i64 + 1 {
                    let expect = usize::from((n == 0 && m == 0) || (n > 0 && m == g as i64));
                    assert_eq!(h.dim(m), expect, "g={g} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn gamma_of_tate_and_padding() {
        assert_eq!(gamma0(&tate_r(&[0, 0])).unwrap().dim(), 1);
        assert_eq!(gamma0(&tate_r(&[0, 1])).unwrap().dim(), 0);
        let u = tate_r(&[2]);
        let padded = include_rep_r(&u, 3).unwrap();
        assert_eq!(gamma(&padded, 1).unwrap(), u);
        let bc = bc_spaces(&tate_r(&[1, 1]), 1, &[1]).unwrap();
        assert_eq!(bc.b.dim(), 0);
        assert_eq!(bc.c.dim(), 1);
    }

    #[test]
    fn unipotent_extension() {
        // Pieces (0,0) = e₁, (−1,−1) = e₂, t = I + i·E₂₁, σ = conj: σ t σ = I − i E₂₁ = t⁻¹.
        let mut rep = PlecticRep::from_coordinate_grading(
            1,
            &[Bidegree::new(vec![0], vec![0]), Bidegree::new(vec![-1], vec![-1])],
        )
        .unwrap();
        let mut t = CMatrix::identity(2);
        t.set(1, 0, Scalar::i());
        rep = PlecticRep::new(1, 2, rep.pieces().clone(), vec![t]).unwrap();
        let u = RealPlecticRep::checked(rep, RealStructure::conj(2)).unwrap();
        let lambda = lambda_complex(&single(u.clone())).unwrap();
        assert_eq!(lambda.complex.dims, vec![1, 1]);
        // 𝒜⁰ = ℚe₁; 𝒜¹ = {v ∈ ℂe₂ : −σ v = v} = ℚ·i e₂; (t − 1)e₁ = i e₂.
        assert_eq!(lambda.complex.differential(0).rank(), 1);
        let h = ext_groups(&single(u.clone())).unwrap();
        assert_eq!((h.dim(0), h.dim(1)), (0, 0));
        let e = exterior_r(&u, &with_conj(crate::repcore::unit(1)));
        assert_eq!(ext_groups(&single(e)).unwrap().dims().values().sum::<usize>(), 0);
    }

    #[test]
    fn homotopy_hom_of_tate() {
        let t0 = single(tate_r(&[0, 0]));
        assert_eq!(homotopy_hom(&t0, &t0, 0).unwrap(), 1);
        assert_eq!(homotopy_hom(&t0, &single(tate_r(&[1, 0])), 0).unwrap(), 0);
    }
}
