//! Real structures.
//!
//! A real object is a complex object together with an anti-linear involution `σ`; the real
//! points are recovered as `fixed_space(σ)`.  Tate objects carry only the sign of their
//! period: `σ = (−1)^{|𝐧|}·conj` on `ℝ(𝐧)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{AntiLinearMap, AscFiltration, CMatrix, CSubspace, DescFiltration, QSubspace, Scalar};
use crate::hodge1::{self, MixedHodge, GradedPsi};
use crate::plectic::{self, MultiFiltered, OrthFamily, Subset, WeakPlectic};
use crate::repcore::{self, PlecticRep};

/// An anti-linear involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealStructure(AntiLinearMap);

impl RealStructure {
    pub fn new(map: AntiLinearMap) -> Result<Self> {
        if !map.is_involution() {
            return Err(Error::NotInvolution);
        }
        Ok(RealStructure(map))
    }

    pub fn from_matrix(s: CMatrix) -> Result<Self> {
        Self::new(AntiLinearMap::new(s)?)
    }

    pub fn conj(n: usize) -> Self {
        RealStructure(AntiLinearMap::conj(n))
    }

    /// `(−1)^k · conj` on `ℂ^n`.
    pub fn signed_conj(n: usize, k: i64) -> Self {
        let id = CMatrix::identity(n);
        let m = if k.rem_euclid(2) == 0 { id } else { id.neg() };
        RealStructure(AntiLinearMap::new(m).expect("square"))
    }

    pub fn map(&self) -> &AntiLinearMap {
        &self.0
    }

    pub fn matrix(&self) -> &CMatrix {
        self.0.matrix()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.0.apply(v)
    }

    pub fn image(&self, s: &CSubspace) -> CSubspace {
        self.0.image(s)
    }

    /// The real points, as a ℚ-subspace of `ℚ^{2n}` in `(re, im)` coordinates.
    pub fn real_points(&self) -> QSubspace {
        self.0.fixed_space_unchecked()
    }

    pub fn tensor(&self, other: &RealStructure) -> RealStructure {
        RealStructure(self.0.tensor(&other.0))
    }

    pub fn direct_sum(&self, other: &RealStructure) -> RealStructure {
        RealStructure(self.0.direct_sum(&other.0))
    }

    /// `α ↦ σ_U ∘ α ∘ σ_T` on `Hom(T, U)` in row-major coordinates.
    pub fn hom(src: &RealStructure, dst: &RealStructure) -> RealStructure {
        let m = dst.matrix().kron(&src.matrix().conj().transpose());
        RealStructure(AntiLinearMap::new(m).expect("square"))
    }

    /// `σ` in the coordinates `x ↦ h x`.
    pub fn transport(&self, h: &CMatrix) -> Result<RealStructure> {
        let h_inv = h.inverse().ok_or(Error::Singular)?;
        Ok(RealStructure(self.0.transport(h, &h_inv)))
    }

    pub fn restrict_to(&self, s: &CSubspace) -> Result<RealStructure> {
        Ok(RealStructure(self.0.restrict_to(s)?))
    }

    pub fn on_quotient(&self, q: &crate::exactla::Quotient<Scalar>) -> RealStructure {
        RealStructure(self.0.on_quotient(q))
    }

    /// `σ ∘ m ∘ σ` for a linear `m`.
    pub fn conjugate(&self, m: &CMatrix) -> CMatrix {
        self.0.conjugate_linear(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RealViolation {
    Shape { expected: usize, found: usize },
    NotInvolution,
    Underlying { detail: String },
    /// `σ(U^{𝐩,𝐪}) ≠ U^{𝐪,𝐩}`.
    PieceNotSwapped { p: Vec<i64>, q: Vec<i64> },
    /// `σ t_μ σ ≠ t_μ⁻¹`; `mu` is one-based.
    Monodromy { mu: usize },
    /// A step `W^k_n` that is not σ-stable or has too few real points; `k` is one-based.
    WeightNotReal { k: usize, n: i64 },
    /// `σ(F_μ^p) ≠ F̄_μ^p`; `mu` is one-based.
    HodgeNotConjugate { mu: usize, p: i64 },
    RealPoints { expected: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealReport {
    pub valid: bool,
    pub violations: Vec<RealViolation>,
}

impl RealReport {
    fn from(violations: Vec<RealViolation>) -> Self {
        RealReport { valid: violations.is_empty(), violations }
    }
}

/// Objects that carry a real structure.
pub trait ValidateReal {
    fn validate_real(&self) -> RealReport;
}

fn sigma_basics(sigma: &RealStructure, dim: usize, out: &mut Vec<RealViolation>) -> bool {
    if sigma.dim() != dim {
        out.push(RealViolation::Shape { expected: dim, found: sigma.dim() });
        return false;
    }
    if !sigma.map().is_involution() {
        out.push(RealViolation::NotInvolution);
        return false;
    }
    let found = sigma.real_points().dim();
    if found != dim {
        out.push(RealViolation::RealPoints { expected: dim, found });
    }
    true
}

/// A representation with a real structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealPlecticRep {
    pub rep: PlecticRep,
    pub sigma: RealStructure,
}

impl RealPlecticRep {
    /// Pairs the data, checking only dimensions.
    pub fn new(rep: PlecticRep, sigma: RealStructure) -> Result<Self> {
        if rep.dim() != sigma.dim() {
            return Err(Error::Dimension { expected: rep.dim(), found: sigma.dim() });
        }
        Ok(RealPlecticRep { rep, sigma })
    }

    /// Pairs the data and rejects anything `validate_real` flags.
    pub fn checked(rep: PlecticRep, sigma: RealStructure) -> Result<Self> {
        let r = Self::new(rep, sigma)?;
        let report = r.validate_real();
        if !report.valid {
            return Err(Error::Invalid(format!("not a real representation: {:?}", report.violations)));
        }
        Ok(r)
    }

    pub fn g(&self) -> usize {
        self.rep.g()
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn change_basis(&self, h: &CMatrix) -> Result<RealPlecticRep> {
        Ok(RealPlecticRep { rep: self.rep.change_basis(h)?, sigma: self.sigma.transport(h)? })
    }

    pub fn sub_rep(&self, s: &CSubspace) -> Result<RealPlecticRep> {
        Ok(RealPlecticRep { rep: self.rep.sub_rep(s)?, sigma: self.sigma.restrict_to(s)? })
    }

    /// The quotient by a σ-stable subrepresentation, with the projection matrix.
    pub fn quotient_rep(&self, s: &CSubspace) -> Result<(RealPlecticRep, CMatrix)> {
        let (rep, proj) = self.rep.quotient_rep(s)?;
        let q = crate::exactla::quotient_map(&CSubspace::full(self.dim()), s)?;
        if q.projection() != &proj {
            return Err(Error::Invalid("quotient coordinates disagree".into()));
        }
        Ok((RealPlecticRep { rep, sigma: self.sigma.on_quotient(&q) }, proj))
    }
}

impl ValidateReal for RealPlecticRep {
    fn validate_real(&self) -> RealReport {
        let mut out = Vec::new();
        if let Some(v) = self.rep.validate().violation {
            out.push(RealViolation::Underlying { detail: format!("{v:?}") });
            return RealReport::from(out);
        }
        if !sigma_basics(&self.sigma, self.dim(), &mut out) {
            return RealReport::from(out);
        }
        for (bd, piece) in self.rep.pieces() {
            if self.sigma.image(piece) != self.rep.piece(&bd.swapped()) {
                out.push(RealViolation::PieceNotSwapped { p: bd.p.clone(), q: bd.q.clone() });
            }
        }
        for (mu, t) in self.rep.ts().iter().enumerate() {
            let inv = t.inverse().expect("validated");
            if self.sigma.conjugate(t) != inv {
                out.push(RealViolation::Monodromy { mu: mu + 1 });
            }
        }
        RealReport::from(out)
    }
}

/// A filtered object with a real structure: real orthogonal families, real weak plectic
/// structures and real mixed plectic Hodge structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealFiltered {
    pub obj: MultiFiltered,
    pub sigma: RealStructure,
}

impl RealFiltered {
    pub fn new(obj: MultiFiltered, sigma: RealStructure) -> Result<Self> {
        if obj.dim() != sigma.dim() {
            return Err(Error::Dimension { expected: obj.dim(), found: sigma.dim() });
        }
        Ok(RealFiltered { obj, sigma })
    }

    pub fn checked(obj: MultiFiltered, sigma: RealStructure) -> Result<Self> {
        let r = Self::new(obj, sigma)?;
        let report = r.validate_real();
        if !report.valid {
            return Err(Error::Invalid(format!("not a real filtered object: {:?}", report.violations)));
        }
        Ok(r)
    }

    /// `Gr^W_n` with the induced real structure (`l = 1`).
    pub fn graded(&self, n: i64) -> Result<RealFiltered> {
        let (obj, q) = self.obj.graded(n)?;
        Ok(RealFiltered { obj, sigma: self.sigma.on_quotient(&q) })
    }
}

impl ValidateReal for RealFiltered {
    fn validate_real(&self) -> RealReport {
        let mut out = Vec::new();
        let bad = self.obj.bad_filtrations();
        if !bad.is_empty() {
            out.push(RealViolation::Underlying { detail: format!("non-monotone filtrations: {}", bad.join(", ")) });
            return RealReport::from(out);
        }
        if !sigma_basics(&self.sigma, self.obj.dim(), &mut out) {
            return RealReport::from(out);
        }
        for (k, w) in self.obj.ws().iter().enumerate() {
            for n in w.jumps() {
                let step = w.get(n);
                let real = self.sigma.image(&step) == step
                    && self.sigma.restrict_to(&step).map(|s| s.real_points().dim() == step.dim()).unwrap_or(false);
                if !real {
                    out.push(RealViolation::WeightNotReal { k: k + 1, n });
                }
            }
        }
        for mu in 0..self.obj.g() {
            let (f, fbar) = (self.obj.f(mu), self.obj.fbar(mu));
            let mut idx: Vec<i64> = f.jumps().into_iter().chain(fbar.jumps()).collect();
            idx.sort_unstable();
            idx.dedup();
            for p in idx {
                if self.sigma.image(&f.get(p)) != fbar.get(p) {
                    out.push(RealViolation::HodgeNotConjugate { mu: mu + 1, p });
                }
            }
        }
        RealReport::from(out)
    }
}

/// `ℝ(𝐧)`.
pub fn tate_r(n: &[i64]) -> RealPlecticRep {
    RealPlecticRep { rep: repcore::tate(n), sigma: RealStructure::signed_conj(1, repcore::total(n)) }
}

/// `ℝ(𝐧)` as an orthogonal family.
pub fn tate_r_orth(n: &[i64]) -> RealFiltered {
    RealFiltered { obj: plectic::tate_orth(n).into_inner(), sigma: RealStructure::signed_conj(1, repcore::total(n)) }
}

/// The trivial real structure `σ = conj` on a representation.
pub fn with_conj(rep: PlecticRep) -> RealPlecticRep {
    let sigma = RealStructure::conj(rep.dim());
    RealPlecticRep { rep, sigma }
}

fn require_real(x: &impl ValidateReal) -> Result<()> {
    let r = x.validate_real();
    if !r.valid {
        return Err(Error::Invalid(format!("invalid real structure: {:?}", r.violations)));
    }
    Ok(())
}

/// `φ_ℝ^g`.
pub fn phi_r(u: &RealPlecticRep) -> Result<RealFiltered> {
    require_real(u)?;
    Ok(RealFiltered { obj: plectic::phi_g(&u.rep)?.into_inner(), sigma: u.sigma.clone() })
}

/// `ψ_ℝ^g`, on `V` itself.  Since `φ^g ∘ ψ^g` is the identity of `V`, the real structure is
/// carried over unchanged.
pub fn psi_r(v: &RealFiltered) -> Result<RealPlecticRep> {
    require_real(v)?;
    let orth = OrthFamily::new(v.obj.clone())?;
    Ok(RealPlecticRep { rep: plectic::psi_g(&orth)?, sigma: v.sigma.clone() })
}

/// `T_ℝ^g`.
pub fn total_weight_r(v: &RealFiltered) -> Result<RealFiltered> {
    require_real(v)?;
    OrthFamily::new(v.obj.clone())?;
    Ok(RealFiltered { obj: plectic::total_weight(&v.obj)?, sigma: v.sigma.clone() })
}

/// `P_ℝ^g`, using the splitting for `I = ∅`.
pub fn partial_weights_r(v: &RealFiltered) -> Result<RealFiltered> {
    require_real(v)?;
    let weak = WeakPlectic::new(v.obj.clone())?;
    let obj = plectic::partial_weights(&weak, &Subset::empty(v.obj.g()))?;
    Ok(RealFiltered { obj, sigma: v.sigma.clone() })
}

/// The graded presentation of `ψ_ℝ` for one variable: the representation on
/// `⊕_n Gr^W_n` with the induced real structure `Gr(σ)`.
#[derive(Clone, Debug)]
pub struct GradedPsiR {
    pub rep: RealPlecticRep,
    /// `V → ⊕_n Gr^W_n`.
    pub comparison: CMatrix,
}

pub fn psi1_graded_r(v: &RealFiltered) -> Result<GradedPsiR> {
    require_real(v)?;
    let w = v.obj.weight()?.clone();
    let mhs = MixedHodge::new(w.clone(), v.obj.f(0).clone(), v.obj.fbar(0).clone())?;
    let GradedPsi { rep, comparison } = hodge1::psi1_graded(&mhs)?;
    let weights: Vec<i64> = hodge1::deligne_splitting(&mhs)?
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|((p, q), _)| p + q)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut sigma = RealStructure(AntiLinearMap::new(CMatrix::zeros(0, 0))?);
    for n in weights {
        let q = mhs.graded(n).quotient;
        sigma = sigma.direct_sum(&v.sigma.on_quotient(&q));
    }
    Ok(GradedPsiR { rep: RealPlecticRep::new(rep, sigma)?, comparison })
}

pub fn tensor_r(a: &RealPlecticRep, b: &RealPlecticRep) -> Result<RealPlecticRep> {
    Ok(RealPlecticRep { rep: repcore::tensor(&a.rep, &b.rep)?, sigma: a.sigma.tensor(&b.sigma) })
}

pub fn hom_r(src: &RealPlecticRep, dst: &RealPlecticRep) -> Result<RealPlecticRep> {
    Ok(RealPlecticRep { rep: repcore::internal_hom(&src.rep, &dst.rep)?, sigma: RealStructure::hom(&src.sigma, &dst.sigma) })
}

pub fn exterior_r(a: &RealPlecticRep, b: &RealPlecticRep) -> RealPlecticRep {
    RealPlecticRep { rep: repcore::exterior(&a.rep, &b.rep), sigma: a.sigma.tensor(&b.sigma) }
}

pub fn direct_sum_r(a: &RealPlecticRep, b: &RealPlecticRep) -> Result<RealPlecticRep> {
    Ok(RealPlecticRep { rep: repcore::direct_sum(&a.rep, &b.rep)?, sigma: a.sigma.direct_sum(&b.sigma) })
}

pub fn twist_r(u: &RealPlecticRep, n: &[i64]) -> Result<RealPlecticRep> {
    tensor_r(u, &tate_r(n))
}

pub fn include_rep_r(u: &RealPlecticRep, g: usize) -> Result<RealPlecticRep> {
    Ok(RealPlecticRep { rep: repcore::include_rep(&u.rep, g)?, sigma: u.sigma.clone() })
}

pub fn tensor_filtered_r(a: &RealFiltered, b: &RealFiltered) -> Result<RealFiltered> {
    Ok(RealFiltered { obj: plectic::tensor_pmhs(&a.obj, &b.obj)?, sigma: a.sigma.tensor(&b.sigma) })
}

pub fn hom_filtered_r(src: &RealFiltered, dst: &RealFiltered) -> Result<RealFiltered> {
    Ok(RealFiltered { obj: plectic::hom_pmhs(&src.obj, &dst.obj)?, sigma: RealStructure::hom(&src.sigma, &dst.sigma) })
}

/// A one-variable real mixed Hodge structure from `(W, F)`, with `F̄ = σ(F)`.
pub fn real_mhs(w: AscFiltration<Scalar>, f: DescFiltration<Scalar>, sigma: RealStructure) -> Result<RealFiltered> {
    let fbar = f.transform(f.ambient(), |s| sigma.image(s));
    let obj = MultiFiltered::from_mhs(&MixedHodge::new(w, f, fbar)?);
    RealFiltered::checked(obj, sigma)
}

/// The real points of each piece of a real representation: only `𝐩 = 𝐪` pieces are σ-stable.
pub fn real_pieces(u: &RealPlecticRep) -> Result<BTreeMap<Vec<i64>, QSubspace>> {
    let mut out = BTreeMap::new();
    for (bd, piece) in u.rep.pieces() {
        if bd.p == bd.q {
            out.insert(bd.p.clone(), u.sigma.restrict_to(piece)?.real_points());
        }
    }
    Ok(out)
}
