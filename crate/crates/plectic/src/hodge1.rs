//! Mixed ℂ-Hodge structures in one variable.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{quotient_map, AscFiltration, CMatrix, CSubspace, DescFiltration, Field, Quotient, Rational, Scalar, Subspace};
use crate::repcore::{Bidegree, PlecticRep};

/// Pieces of a bigrading keyed by `(p, q)`.
pub type Splitting = BTreeMap<(i64, i64), CSubspace>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedHodge {
    dim: usize,
    w: AscFiltration<Scalar>,
    f: DescFiltration<Scalar>,
    fbar: DescFiltration<Scalar>,
}

/// `Gr^W_n` with its induced Hodge filtrations.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub weight: i64,
    pub quotient: Quotient<Scalar>,
    pub f: DescFiltration<Scalar>,
    pub fbar: DescFiltration<Scalar>,
}

impl MixedHodge {
    pub fn new(w: AscFiltration<Scalar>, f: DescFiltration<Scalar>, fbar: DescFiltration<Scalar>) -> Result<Self> {
        let dim = w.ambient();
        for d in [f.ambient(), fbar.ambient()] {
            if d != dim {
                return Err(Error::Dimension { expected: dim, found: d });
            }
        }
        Ok(MixedHodge { dim, w, f, fbar })
    }

    /// A pure structure of weight `n` viewed as mixed.
    pub fn pure(f: DescFiltration<Scalar>, fbar: DescFiltration<Scalar>, n: i64) -> Result<Self> {
        let w = AscFiltration::pure(f.ambient(), n);
        Self::new(w, f, fbar)
    }

    /// `ℂ(n)`: weight `−2n`, `F^{−n} = F̄^{−n} = V`, zero above.
    pub fn tate(n: i64) -> Self {
        let f = DescFiltration::pure(1, -n);
        MixedHodge { dim: 1, w: AscFiltration::pure(1, -2 * n), f: f.clone(), fbar: f }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn w(&self) -> &AscFiltration<Scalar> {
        &self.w
    }

    pub fn f(&self) -> &DescFiltration<Scalar> {
        &self.f
    }

    pub fn fbar(&self) -> &DescFiltration<Scalar> {
        &self.fbar
    }

    /// `(V, W, F̄, F)`.
    pub fn swapped(&self) -> Self {
        MixedHodge { dim: self.dim, w: self.w.clone(), f: self.fbar.clone(), fbar: self.f.clone() }
    }

    /// Indices `n` with `Gr^W_n ≠ 0`.
    pub fn weights(&self) -> Vec<i64> {
        self.w.jumps()
    }

    pub fn graded(&self, n: i64) -> GradedPiece {
        let quotient = quotient_map(&self.w.get(n), &self.w.get(n - 1)).expect("W is monotone");
        GradedPiece { weight: n, f: self.f.on_quotient(&quotient), fbar: self.fbar.on_quotient(&quotient), quotient }
    }

    /// Filtrations induced on a subspace, in its canonical coordinates.
    pub fn restrict_to(&self, s: &CSubspace) -> Self {
        MixedHodge { dim: s.dim(), w: self.w.restrict_to(s), f: self.f.restrict_to(s), fbar: self.fbar.restrict_to(s) }
    }

    /// Filtrations induced on a quotient of the whole space.
    pub fn on_quotient(&self, q: &Quotient<Scalar>) -> Self {
        MixedHodge { dim: q.dim(), w: self.w.on_quotient(q), f: self.f.on_quotient(q), fbar: self.fbar.on_quotient(q) }
    }

    /// Transport along an invertible map.
    pub fn image(&self, h: &CMatrix) -> Self {
        MixedHodge { dim: h.nrows(), w: self.w.image(h), f: self.f.image(h), fbar: self.fbar.image(h) }
    }
}

fn desc_range(f: &DescFiltration<Scalar>) -> Option<(i64, i64)> {
    f.bounds()
}

/// `p` values at which `F^p ⊕ F̄^{n+1−p}` can change, padded by one on the left.
fn opposition_range(f: &DescFiltration<Scalar>, fbar: &DescFiltration<Scalar>, n: i64) -> Vec<i64> {
    let pts: Vec<i64> = f.jumps().into_iter().chain(fbar.jumps().into_iter().map(|j| n + 1 - j)).collect();
    match (pts.iter().min(), pts.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo - 1..=hi).collect(),
        _ => vec![0],
    }
}

/// The `p` at which `V = F^p ⊕ F̄^{n+1−p}` fails.
pub fn pure_failures(f: &DescFiltration<Scalar>, fbar: &DescFiltration<Scalar>, n: i64) -> Vec<i64> {
    let dim = f.ambient();
    opposition_range(f, fbar, n)
        .into_iter()
        .filter(|&p| {
            let a = f.get(p);
            let b = fbar.get(n + 1 - p);
            a.dim() + b.dim() != dim || !a.intersect(&b).is_zero()
        })
        .collect()
}

/// Whether `(F, F̄)` is pure of weight `n`.
pub fn validate_pure(f: &DescFiltration<Scalar>, fbar: &DescFiltration<Scalar>, n: i64) -> bool {
    pure_failures(f, fbar, n).is_empty()
}

/// `F^p ∩ F̄^{n−p}` for every `p` where it is nonzero.
pub fn hodge_pieces(f: &DescFiltration<Scalar>, fbar: &DescFiltration<Scalar>, n: i64) -> Splitting {
    let mut out = Splitting::new();
    if let (Some((plo, phi)), Some((qlo, qhi))) = (desc_range(f), desc_range(fbar)) {
        for p in plo.min(n - qhi)..=phi.max(n - qlo) {
            let s = f.get(p).intersect(&fbar.get(n - p));
            if !s.is_zero() {
                out.insert((p, n - p), s);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MhsReport {
    pub valid: bool,
    /// Names of filtrations that are not monotone.
    pub bad_filtrations: Vec<String>,
    /// Weights `n` where `Gr^W_n` is not pure of weight `n`.
    pub failing_weights: Vec<i64>,
}

pub fn validate_mhs(v: &MixedHodge) -> MhsReport {
    let mut bad = Vec::new();
    if !v.w.validate().valid {
        bad.push("W".to_string());
    }
    if !v.f.validate().valid {
        bad.push("F".to_string());
    }
    if !v.fbar.validate().valid {
        bad.push("Fbar".to_string());
    }
    let failing: Vec<i64> = if bad.is_empty() {
        v.weights()
            .into_iter()
            .filter(|&n| {
                let g = v.graded(n);
                !validate_pure(&g.f, &g.fbar, n)
            })
            .collect()
    } else {
        Vec::new()
    };
    MhsReport { valid: bad.is_empty() && failing.is_empty(), bad_filtrations: bad, failing_weights: failing }
}

fn require_mhs(v: &MixedHodge) -> Result<()> {
    let r = validate_mhs(v);
    if r.valid {
        Ok(())
    } else {
        Err(Error::Invalid(format!("not a mixed Hodge structure: {r:?}")))
    }
}

/// `(F^p ∩ W_n) ∩ (F̄^q ∩ W_n + Σ_{j≥1} F̄^{q−j} ∩ W_{n−j−1})` with `n = p + q`.
pub(crate) fn splitting_piece(
    w: &AscFiltration<Scalar>,
    f: &DescFiltration<Scalar>,
    fbar: &DescFiltration<Scalar>,
    p: i64,
    q: i64,
) -> CSubspace {
    let n = p + q;
    let wn = w.get(n);
    let left = f.get(p).intersect(&wn);
    if left.is_zero() {
        return left;
    }
    let Some((wlo, _)) = w.bounds() else { return left };
    let mut right = fbar.get(q).intersect(&wn);
    let mut j = 1;
    while n - j - 1 >= wlo {
        right = right.sum(&fbar.get(q - j).intersect(&w.get(n - j - 1)));
        j += 1;
    }
    left.intersect(&right)
}

pub(crate) fn splitting_unchecked(w: &AscFiltration<Scalar>, f: &DescFiltration<Scalar>, fbar: &DescFiltration<Scalar>) -> Splitting {
    let mut out = Splitting::new();
    let (Some((plo, phi)), Some((qlo, qhi))) = (f.bounds(), fbar.bounds()) else { return out };
    for n in w.jumps() {
        for p in plo..=phi {
            let q = n - p;
            if q < qlo || q > qhi {
                continue;
            }
            let a = splitting_piece(w, f, fbar, p, q);
            if !a.is_zero() {
                out.insert((p, q), a);
            }
        }
    }
    out
}

/// The Deligne splitting `{A^{p,q}}`.
pub fn deligne_splitting(v: &MixedHodge) -> Result<Splitting> {
    require_mhs(v)?;
    Ok(splitting_unchecked(&v.w, &v.f, &v.fbar))
}

/// The conjugate splitting `{Ā^{p,q}}`, where `p` indexes `F̄` and `q` indexes `F`.
pub fn conjugate_splitting(v: &MixedHodge) -> Result<Splitting> {
    require_mhs(v)?;
    Ok(splitting_unchecked(&v.w, &v.fbar, &v.f))
}

/// Projectors onto the pieces of a complete grading, grouped by `key`.
pub(crate) fn group_projectors<K: Ord + Clone, L>(
    dim: usize,
    pieces: &BTreeMap<L, CSubspace>,
    key: impl Fn(&L) -> K,
) -> BTreeMap<K, CMatrix> {
    let mut labels = Vec::with_capacity(dim);
    let mut cols = Vec::with_capacity(dim);
    for (l, s) in pieces {
        for b in s.basis() {
            labels.push(key(l));
            cols.push(b.clone());
        }
    }
    let b = CMatrix::from_columns(dim, &cols);
    let b_inv = b.inverse().expect("pieces form a basis");
    let mut out = BTreeMap::new();
    for k in labels.iter().cloned().collect::<std::collections::BTreeSet<K>>() {
        let mask = CMatrix::from_fn(dim, dim, |i, j| if i == j && labels[i] == k { Scalar::one() } else { Scalar::zero() });
        out.insert(k, b.mul(&mask).mul(&b_inv));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictFailure {
    /// One of `"F∩W"`, `"Fbar∩W"`, `"A"`, `"Abar"`.
    pub filtration: String,
    pub p: i64,
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrictnessReport {
    pub strict: bool,
    pub failures: Vec<StrictFailure>,
}

/// A linear map between mixed Hodge structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhsMorphism {
    pub source: MixedHodge,
    pub target: MixedHodge,
    /// `dim target × dim source`.
    pub matrix: CMatrix,
}

impl MhsMorphism {
    pub fn new(source: MixedHodge, target: MixedHodge, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != target.dim || matrix.ncols() != source.dim {
            return Err(Error::Dimension { expected: target.dim, found: matrix.nrows() });
        }
        Ok(MhsMorphism { source, target, matrix })
    }

    /// Whether `W`, `F`, `F̄` are each carried into their counterparts.
    pub fn is_compatible(&self) -> bool {
        let m = &self.matrix;
        let (s, t) = (&self.source, &self.target);
        let ok_asc = |a: &AscFiltration<Scalar>, b: &AscFiltration<Scalar>| {
            a.jumps().iter().all(|&n| a.get(n).image(m).is_subspace_of(&b.get(n)))
        };
        let ok_desc = |a: &DescFiltration<Scalar>, b: &DescFiltration<Scalar>| {
            a.jumps().iter().all(|&n| a.get(n).image(m).is_subspace_of(&b.get(n)))
                && a.bounds().map_or(true, |(lo, _)| a.get(lo).image(m).is_subspace_of(&b.get(lo)))
        };
        ok_asc(&s.w, &t.w) && ok_desc(&s.f, &t.f) && ok_desc(&s.fbar, &t.fbar)
    }
}

fn index_range(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (Some(x), Some(y)) => Some((x.0.min(y.0), x.1.max(y.1))),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Checks `f(F^p ∩ W_n) = f(U) ∩ (F^p ∩ W_n)` (and for `F̄`) and `f(A^{p,q}) = f(U) ∩ A^{p,q}`.
pub fn check_strictness(m: &MhsMorphism) -> Result<StrictnessReport> {
    require_mhs(&m.source)?;
    require_mhs(&m.target)?;
    let f = &m.matrix;
    let (s, t) = (&m.source, &m.target);
    let image = Subspace::full(s.dim).image(f);
    let mut failures = Vec::new();
    let wr = index_range(s.w.bounds(), t.w.bounds());
    for (name, fs, ft) in [("F∩W", &s.f, &t.f), ("Fbar∩W", &s.fbar, &t.fbar)] {
        let (Some((wlo, whi)), Some((plo, phi))) = (wr, index_range(fs.bounds(), ft.bounds())) else { continue };
        for n in wlo - 1..=whi {
            for p in plo..=phi + 1 {
                let lhs = fs.get(p).intersect(&s.w.get(n)).image(f);
                let rhs = image.intersect(&ft.get(p).intersect(&t.w.get(n)));
                if lhs != rhs {
                    failures.push(StrictFailure { filtration: name.into(), p, n });
                }
            }
        }
    }
    for (name, a, b) in [
        ("A", deligne_splitting(s)?, deligne_splitting(t)?),
        ("Abar", conjugate_splitting(s)?, conjugate_splitting(t)?),
    ] {
        let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).copied().collect();
        for (p, q) in keys {
            let lhs = a.get(&(p, q)).map_or(Subspace::zero(t.dim), |x| x.image(f));
            let rhs = b.get(&(p, q)).map_or(Subspace::zero(t.dim), |x| image.intersect(x));
            if lhs != rhs {
                failures.push(StrictFailure { filtration: name.into(), p, n: p + q });
            }
        }
    }
    Ok(StrictnessReport { strict: failures.is_empty(), failures })
}

/// Kernel and cokernel with induced filtrations; the kernel is in the canonical
/// coordinates of `ker f`, the cokernel in the coordinates of a complement of `im f`.
pub fn kernel_cokernel(m: &MhsMorphism) -> Result<(MixedHodge, MixedHodge)> {
    require_mhs(&m.source)?;
    require_mhs(&m.target)?;
    if !m.is_compatible() {
        return Err(Error::Invalid("map does not respect the filtrations".into()));
    }
    let ker = m.matrix.kernel();
    let im = Subspace::full(m.source.dim).image(&m.matrix);
    let q = quotient_map(&Subspace::full(m.target.dim), &im)?;
    Ok((m.source.restrict_to(&ker), m.target.on_quotient(&q)))
}

/// `(W^μ, F_μ, F̄_μ)` of `φ` applied to one direction of a representation (`mu` zero-based).
pub(crate) fn phi_component(u: &PlecticRep, mu: usize) -> MixedHodge {
    let dim = u.dim();
    let keys: Vec<&Bidegree> = u.pieces().keys().collect();
    let weights: Vec<i64> = keys.iter().map(|b| b.p[mu] + b.q[mu]).collect();
    let ps: Vec<i64> = keys.iter().map(|b| b.p[mu]).collect();
    let qs: Vec<i64> = keys.iter().map(|b| b.q[mu]).collect();
    let range = |v: &[i64]| (v.iter().min().copied().unwrap_or(0), v.iter().max().copied().unwrap_or(0));
    let (wlo, whi) = range(&weights);
    let (plo, phi) = range(&ps);
    let (qlo, qhi) = range(&qs);
    let t = u.t(mu);
    let t_inv = t.inverse().expect("t is invertible");
    let w = AscFiltration::from_fn(dim, wlo - 1, whi, |n| u.sum_where(|b| b.p[mu] + b.q[mu] <= n));
    let f = DescFiltration::from_fn(dim, plo, phi + 1, |p| u.sum_where(|b| b.p[mu] >= p).image(t));
    let fbar = DescFiltration::from_fn(dim, qlo, qhi + 1, |q| u.sum_where(|b| b.q[mu] >= q).image(&t_inv));
    MixedHodge { dim, w, f, fbar }
}

/// `φ`: the mixed Hodge structure of a one-variable representation.
pub fn phi1(u: &PlecticRep) -> Result<MixedHodge> {
    if u.g() != 1 {
        return Err(Error::VariableCount(1, u.g()));
    }
    let r = u.validate();
    if let Some(v) = r.violation {
        return Err(Error::Invalid(format!("{v:?}")));
    }
    Ok(phi_component(u, 0))
}

/// `Σ_{k≥0} c_k N^k` truncated at the nilpotency order of `N`.
fn nilpotent_series(n: &CMatrix, coeff: impl Fn(u32) -> Rational) -> CMatrix {
    let dim = n.nrows();
    let mut acc = CMatrix::identity(dim).scale(&Scalar::from_rational(coeff(0)));
    let mut pow = CMatrix::identity(dim);
    for k in 1..=dim as u32 {
        pow = pow.mul(n);
        if pow.is_zero() {
            break;
        }
        acc = acc.add(&pow.scale(&Scalar::from_rational(coeff(k))));
    }
    acc
}

fn require_unipotent(s: &CMatrix) -> Result<CMatrix> {
    if !s.is_square() || !s.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    Ok(s.sub(&CMatrix::identity(s.nrows())))
}

/// `√s = Σ (1/2 choose k)(s − 1)^k` for unipotent `s`.
pub fn sqrt_unipotent(s: &CMatrix) -> Result<CMatrix> {
    let n = require_unipotent(s)?;
    Ok(nilpotent_series(&n, |k| {
        let half = Rational::new(1, 2);
        (0..k).fold(<Rational as Field>::one(), |acc, i| acc * (&half - Rational::from_i64(i as i64)) / Rational::from_i64(i as i64 + 1))
    }))
}

/// `exp(N)` for nilpotent `N`.
pub fn exp_nilpotent(n: &CMatrix) -> Result<CMatrix> {
    let s = n.add(&CMatrix::identity(n.nrows()));
    require_unipotent(&s)?;
    Ok(nilpotent_series(n, |k| (1..=k as i64).fold(<Rational as Field>::one(), |acc, i| acc / Rational::from_i64(i))))
}

/// `log(s)` for unipotent `s`.
pub fn log_unipotent(s: &CMatrix) -> Result<CMatrix> {
    let n = require_unipotent(s)?;
    Ok(nilpotent_series(&n, |k| {
        if k == 0 {
            Rational::from_i64(0)
        } else {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(sign, k as i64)
        }
    }))
}

/// `s = Σ_n Π^A_n Π^Ā_n`: the comparison of the two splittings, written on `V`.
pub(crate) fn comparison_unipotent(v: &MixedHodge) -> Result<CMatrix> {
    let a = deligne_splitting(v)?;
    let abar = conjugate_splitting(v)?;
    let pa = group_projectors(v.dim, &a, |(p, q)| p + q);
    let pb = group_projectors(v.dim, &abar, |(p, q)| p + q);
    let mut s = CMatrix::zeros(v.dim, v.dim);
    for (n, x) in &pa {
        if let Some(y) = pb.get(n) {
            s = s.add(&x.mul(y));
        }
    }
    Ok(s)
}

/// `ψ` written on `V` itself: pieces `t⁻¹(A^{p,q})` with `t = √s`.
///
/// With this presentation `ψ(φ(U)) = U` and `φ(ψ(V)) = V` hold literally.
pub fn psi1(v: &MixedHodge) -> Result<PlecticRep> {
    let (pieces, t) = psi_pieces(v)?;
    let pieces = pieces.into_iter().map(|((p, q), s)| (Bidegree::new(vec![p], vec![q]), s)).collect();
    PlecticRep::new(1, v.dim, pieces, vec![t])
}

pub(crate) fn psi_pieces(v: &MixedHodge) -> Result<(Splitting, CMatrix)> {
    let s = comparison_unipotent(v)?;
    let t = sqrt_unipotent(&s)?;
    let t_inv = t.inverse().ok_or(Error::Singular)?;
    let a = deligne_splitting(v)?;
    Ok((a.into_iter().map(|(k, x)| (k, x.image(&t_inv))).collect(), t))
}

/// `ψ` on `⊕_n Gr^W_n` together with the isomorphism `V → ⊕_n Gr^W_n`
/// (the composite of `ρ` and `t`) identifying `V` with `φ(ψ(V))`.
#[derive(Clone, Debug)]
pub struct GradedPsi {
    pub rep: PlecticRep,
    pub comparison: CMatrix,
}

pub fn psi1_graded(v: &MixedHodge) -> Result<GradedPsi> {
    let on_v = psi1(v)?;
    let a = deligne_splitting(v)?;
    let pa = group_projectors(v.dim, &a, |(p, q)| p + q);
    // ρ(v) = (class of Π^A_n v in Gr_n)_n, stacked by increasing n.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(v.dim);
    for (n, proj) in &pa {
        let g = v.graded(*n);
        let block = g.quotient.projection().mul(proj);
        rows.extend(block.rows_vec());
    }
    let rho = CMatrix::from_rows_with_cols(rows, v.dim)?;
    let j = rho.mul(on_v.t(0));
    let rep = on_v.change_basis(&j)?;
    Ok(GradedPsi { rep, comparison: j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;

    fn line(n: usize, v: Vec<i64>) -> CSubspace {
        let _ = n;
        Subspace::span(v.len(), vec![v.into_iter().map(Scalar::from_int).collect()]).unwrap()
    }

    fn desc(dim: usize, steps: Vec<(i64, CSubspace)>) -> DescFiltration<Scalar> {
        DescFiltration::from_steps(dim, steps).unwrap()
    }

    #[test]
    fn pure_examples() {
        let t = MixedHodge::tate(3);
        assert!(validate_pure(t.f(), t.fbar(), -6));
        assert!(!validate_pure(t.f(), t.fbar(), -5));
        let f = desc(2, vec![(0, CSubspace::full(2)), (1, line(2, vec![1, 0])), (2, CSubspace::zero(2))]);
        let fb = desc(2, vec![(0, CSubspace::full(2)), (1, line(2, vec![0, 1])), (2, CSubspace::zero(2))]);
        assert!(validate_pure(&f, &fb, 1));
        assert!(!validate_pure(&f, &fb, 0));
        assert!(!validate_pure(&f, &f, 1));
        assert_eq!(hodge_pieces(&f, &fb, 1).keys().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn sqrt_examples() {
        let s = CMatrix::from_rows(vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]]).unwrap();
        let half = Scalar::from_ratios(1, 2, 0, 1);
        let t = sqrt_unipotent(&s).unwrap();
        assert_eq!(t, CMatrix::from_rows(vec![vec![1.into(), half], vec![0.into(), 1.into()]]).unwrap());
        assert_eq!(sqrt_unipotent(&CMatrix::identity(3)).unwrap(), CMatrix::identity(3));
        assert_eq!(sqrt_unipotent(&CMatrix::identity(1).scale(&Scalar::from_int(2))), Err(Error::NotUnipotent));
        let l = log_unipotent(&s).unwrap();
        assert_eq!(exp_nilpotent(&l).unwrap(), s);
    }

    #[test]
    fn tate_round_trip() {
        let t = MixedHodge::tate(2);
        assert!(validate_mhs(&t).valid);
        let a = deligne_splitting(&t).unwrap();
        assert_eq!(a.keys().copied().collect::<Vec<_>>(), vec![(-2, -2)]);
        let u = psi1(&t).unwrap();
        assert_eq!(u, crate::repcore::tate(&[2]));
        assert_eq!(phi1(&u).unwrap(), t);
        assert!(Scalar::one().is_one());
    }

    fn two_weight(f0: Vec<i64>, fb0: Vec<i64>) -> MixedHodge {
        let w = AscFiltration::from_steps(2, vec![(-2, line(2, vec![0, 1])), (0, CSubspace::full(2))]).unwrap();
        let f = desc(2, vec![(-1, CSubspace::full(2)), (0, line(2, f0)), (1, CSubspace::zero(2))]);
        let fb = desc(2, vec![(-1, CSubspace::full(2)), (0, line(2, fb0)), (1, CSubspace::zero(2))]);
        MixedHodge::new(w, f, fb).unwrap()
    }

    #[test]
    fn split_two_weights() {
        let v = two_weight(vec![1, 0], vec![1, 0]);
        assert!(validate_mhs(&v).valid);
        let a = deligne_splitting(&v).unwrap();
        assert_eq!(a, Splitting::from([((-1, -1), line(2, vec![0, 1])), ((0, 0), line(2, vec![1, 0]))]));
        assert_eq!(comparison_unipotent(&v).unwrap(), CMatrix::identity(2));
    }

    #[test]
    fn non_split_extension() {
        let v = two_weight(vec![1, 1], vec![1, -1]);
        assert!(validate_mhs(&v).valid);
        let a = deligne_splitting(&v).unwrap();
        assert_eq!(a[&(0, 0)], line(2, vec![1, 1]));
        let abar = conjugate_splitting(&v).unwrap();
        assert_eq!(abar[&(0, 0)], line(2, vec![1, -1]));
        let e21 = |c: i64| CMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (1, 0) => Scalar::from_int(c),
            _ if i == j => Scalar::one(),
            _ => Scalar::zero(),
        });
        assert_eq!(comparison_unipotent(&v).unwrap(), e21(2));
        let u = psi1(&v).unwrap();
        assert_eq!(u.t(0), &e21(1));
        assert!(u.validate().valid);
        assert_eq!(phi1(&u).unwrap(), v);
        let g = psi1_graded(&v).unwrap();
        assert!(g.rep.validate().valid);
        assert_eq!(phi1(&g.rep).unwrap(), v.image(&g.comparison));
    }

    #[test]
    fn rejects_impure_graded() {
        let v = two_weight(vec![1, 0], vec![0, 1]);
        let r = validate_mhs(&v);
        assert!(!r.valid);
        assert_eq!(r.failing_weights, vec![-2, 0]);
        assert!(deligne_splitting(&v).is_err());
    }
}
