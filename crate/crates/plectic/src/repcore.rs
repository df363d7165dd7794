//! Representations of the g-fold plectic group in the explicit presentation:
//! a 2g-graded space `U = ⊕ U^{p,q}` with g commuting automorphisms `t_μ`
//! such that each `t_μ − 1` strictly lowers both μ-indices and fixes the others.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{CMatrix, CSubspace, Field, Scalar, Subspace};

/// Upper bound on g accepted by the exhaustive condition checks.
pub const DEFAULT_MAX_G: usize = 4;

pub type MultiIndex = Vec<i64>;

pub(crate) fn add(a: &[i64], b: &[i64]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i64], b: &[i64]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn neg(a: &[i64]) -> MultiIndex {
    a.iter().map(|x| -x).collect()
}

pub(crate) fn total(a: &[i64]) -> i64 {
    a.iter().sum()
}

/// `(𝐩, 𝐪) ∈ ℤ^g × ℤ^g`, ordered lexicographically on `𝐩` then `𝐪`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bidegree {
    pub p: MultiIndex,
    pub q: MultiIndex,
}

impl Bidegree {
    pub fn new(p: MultiIndex, q: MultiIndex) -> Self {
        Bidegree { p, q }
    }

    pub fn g(&self) -> usize {
        self.p.len()
    }

    /// The (p_μ, q_μ) pair; `mu` is zero-based.
    pub fn at(&self, mu: usize) -> (i64, i64) {
        (self.p[mu], self.q[mu])
    }

    /// `|𝐩 + 𝐪|`.
    pub fn weight(&self) -> i64 {
        total(&self.p) + total(&self.q)
    }

    pub fn shift(&self, other: &Bidegree) -> Bidegree {
        Bidegree { p: add(&self.p, &other.p), q: add(&self.q, &other.q) }
    }

    pub fn swapped(&self) -> Bidegree {
        Bidegree { p: self.q.clone(), q: self.p.clone() }
    }

    pub fn concat(&self, other: &Bidegree) -> Bidegree {
        Bidegree {
            p: self.p.iter().chain(&other.p).copied().collect(),
            q: self.q.iter().chain(&other.q).copied().collect(),
        }
    }
}

/// First failure found by [`PlecticRep::validate`]; `mu`, `nu` are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RepViolation {
    NotDirectSum,
    NotSpanning { dim: usize, covered: usize },
    NotInvertible { mu: usize },
    NotCommuting { mu: usize, nu: usize },
    Unipotence { mu: usize, p: MultiIndex, q: MultiIndex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub valid: bool,
    pub violation: Option<RepViolation>,
}

impl RepReport {
    fn from(violation: Option<RepViolation>) -> Self {
        RepReport { valid: violation.is_none(), violation }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlecticRep {
    g: usize,
    dim: usize,
    pieces: BTreeMap<Bidegree, CSubspace>,
    t: Vec<CMatrix>,
}

impl PlecticRep {
    /// Checks shapes only; see [`PlecticRep::validate`] for the defining conditions.
    pub fn new(g: usize, dim: usize, pieces: BTreeMap<Bidegree, CSubspace>, t: Vec<CMatrix>) -> Result<Self> {
        if t.len() != g {
            return Err(Error::VariableCount(g, t.len()));
        }
        for m in &t {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::Dimension { expected: dim, found: m.nrows().max(m.ncols()) });
            }
        }
        for (bd, s) in &pieces {
            if bd.p.len() != g || bd.q.len() != g {
                return Err(Error::VariableCount(g, bd.p.len().max(bd.q.len())));
            }
            if s.ambient() != dim {
                return Err(Error::Dimension { expected: dim, found: s.ambient() });
            }
        }
        let pieces = pieces.into_iter().filter(|(_, s)| !s.is_zero()).collect();
        Ok(PlecticRep { g, dim, pieces, t })
    }

    /// Builds a representation and rejects it unless [`PlecticRep::validate`] passes.
    pub fn checked(g: usize, dim: usize, pieces: BTreeMap<Bidegree, CSubspace>, t: Vec<CMatrix>) -> Result<Self> {
        let r = Self::new(g, dim, pieces, t)?;
        match r.validate().violation {
            None => Ok(r),
            Some(v) => Err(Error::Invalid(format!("{v:?}"))),
        }
    }

    /// Pieces spanned by coordinate vectors, `t_μ = 1`.
    pub fn from_coordinate_grading(g: usize, degrees: &[Bidegree]) -> Result<Self> {
        let dim = degrees.len();
        let mut pieces: BTreeMap<Bidegree, Vec<usize>> = BTreeMap::new();
        for (k, d) in degrees.iter().enumerate() {
            pieces.entry(d.clone()).or_default().push(k);
        }
        let pieces = pieces.into_iter().map(|(d, ks)| (d, Subspace::coordinate(dim, ks))).collect();
        Self::new(g, dim, pieces, vec![CMatrix::identity(dim); g])
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pieces(&self) -> &BTreeMap<Bidegree, CSubspace> {
        &self.pieces
    }

    pub fn piece(&self, bd: &Bidegree) -> CSubspace {
        self.pieces.get(bd).cloned().unwrap_or_else(|| Subspace::zero(self.dim))
    }

    /// `t_μ` with zero-based `mu`.
    pub fn t(&self, mu: usize) -> &CMatrix {
        &self.t[mu]
    }

    pub fn ts(&self) -> &[CMatrix] {
        &self.t
    }

    /// `⊕ U^{𝐩,𝐪}` over the pieces satisfying `pred`.
    pub fn sum_where(&self, pred: impl Fn(&Bidegree) -> bool) -> CSubspace {
        Subspace::sum_all(self.dim, self.pieces.iter().filter(|(b, _)| pred(b)).map(|(_, s)| s))
    }

    /// Concatenated piece bases as columns, with the bidegree of each column.
    pub fn adapted_basis(&self) -> (Vec<Bidegree>, CMatrix) {
        let mut labels = Vec::with_capacity(self.dim);
        let mut cols = Vec::with_capacity(self.dim);
        for (bd, s) in &self.pieces {
            for b in s.basis() {
                labels.push(bd.clone());
                cols.push(b.clone());
            }
        }
        (labels, CMatrix::from_columns(self.dim, &cols))
    }

    /// Projector onto `U^{bd}` along the other pieces; requires a valid grading.
    pub fn projector(&self, bd: &Bidegree) -> CMatrix {
        let (labels, b) = self.adapted_basis();
        let b_inv = b.inverse().expect("pieces span the space");
        let mask = CMatrix::from_fn(self.dim, self.dim, |i, j| {
            if i == j && &labels[i] == bd { Scalar::one() } else { Scalar::zero() }
        });
        b.mul(&mask).mul(&b_inv)
    }

    pub fn validate(&self) -> RepReport {
        RepReport::from(self.first_violation())
    }

    fn first_violation(&self) -> Option<RepViolation> {
        let covered: usize = self.pieces.values().map(Subspace::dim).sum();
        let span = Subspace::sum_all(self.dim, self.pieces.values());
        if span.dim() != covered {
            return Some(RepViolation::NotDirectSum);
        }
        if covered != self.dim {
            return Some(RepViolation::NotSpanning { dim: self.dim, covered });
        }
        for (mu, t) in self.t.iter().enumerate() {
            if t.rank() != self.dim {
                return Some(RepViolation::NotInvertible { mu: mu + 1 });
            }
        }
        for mu in 0..self.g {
            for nu in mu + 1..self.g {
                if !self.t[mu].commutes_with(&self.t[nu]) {
                    return Some(RepViolation::NotCommuting { mu: mu + 1, nu: nu + 1 });
                }
            }
        }
        let one = CMatrix::identity(self.dim);
        for (mu, t) in self.t.iter().enumerate() {
            let n = t.sub(&one);
            for (bd, s) in &self.pieces {
                let (p, q) = bd.at(mu);
                let allowed = self.sum_where(|r| {
                    let (rp, rq) = r.at(mu);
                    rp < p
                        && rq < q
                        && (0..self.g).filter(|&nu| nu != mu).all(|nu| r.at(nu) == bd.at(nu))
                });
                if !s.image(&n).is_subspace_of(&allowed) {
                    return Some(RepViolation::Unipotence { mu: mu + 1, p: bd.p.clone(), q: bd.q.clone() });
                }
            }
        }
        None
    }

    /// Image under the change of coordinates `x ↦ h x`.
    pub fn change_basis(&self, h: &CMatrix) -> Result<PlecticRep> {
        let h_inv = h.inverse().ok_or(Error::Singular)?;
        if h.nrows() != self.dim {
            return Err(Error::Dimension { expected: self.dim, found: h.nrows() });
        }
        Ok(PlecticRep {
            g: self.g,
            dim: self.dim,
            pieces: self.pieces.iter().map(|(b, s)| (b.clone(), s.image(h))).collect(),
            t: self.t.iter().map(|t| h.mul(t).mul(&h_inv)).collect(),
        })
    }

    /// The sub-representation carried by a stable graded subspace, in its canonical coordinates.
    pub fn sub_rep(&self, s: &CSubspace) -> Result<PlecticRep> {
        let pieces: BTreeMap<_, _> =
            self.pieces.iter().map(|(b, p)| (b.clone(), p.restrict_to(s))).filter(|(_, p)| !p.is_zero()).collect();
        let covered: usize = pieces.values().map(Subspace::dim).sum();
        if covered != s.dim() {
            return Err(Error::NotContained("subspace is not graded".into()));
        }
        let sb = s.basis_matrix();
        let t = self
            .t
            .iter()
            .map(|t| {
                let cols = sb
                    .columns()
                    .iter()
                    .map(|b| s.coordinates(&t.apply(b)).ok_or_else(|| Error::NotContained("subspace is not stable".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(CMatrix::from_columns(s.dim(), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PlecticRep { g: self.g, dim: s.dim(), pieces, t })
    }

    /// The quotient by a stable graded subspace, in the coordinates of the chosen complement.
    pub fn quotient_rep(&self, s: &CSubspace) -> Result<(PlecticRep, CMatrix)> {
        self.sub_rep(s)?;
        let q = crate::exactla::quotient_map(&Subspace::full(self.dim), s)?;
        let pieces = self
            .pieces
            .iter()
            .map(|(b, p)| (b.clone(), q.project_subspace(p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        let lift = q.lift_matrix();
        let t = self.t.iter().map(|t| q.projection().mul(t).mul(&lift)).collect();
        Ok((PlecticRep { g: self.g, dim: q.dim(), pieces, t }, q.projection().clone()))
    }

    /// Identity on this representation.
    pub fn identity(&self) -> RepMorphism {
        RepMorphism { source: self.clone(), target: self.clone(), matrix: CMatrix::identity(self.dim) }
    }
}

fn check_g(a: &PlecticRep, b: &PlecticRep) -> Result<()> {
    if a.g != b.g {
        return Err(Error::VariableCount(a.g, b.g));
    }
    Ok(())
}

/// `ℂ(𝐧)`: one-dimensional, sole piece at `𝐩 = 𝐪 = −𝐧`, all `t_μ = 1`.
pub fn tate(n: &[i64]) -> PlecticRep {
    let g = n.len();
    let bd = Bidegree::new(neg(n), neg(n));
    PlecticRep { g, dim: 1, pieces: BTreeMap::from([(bd, Subspace::full(1))]), t: vec![CMatrix::identity(1); g] }
}

/// The unit `ℂ(𝟎)`.
pub fn unit(g: usize) -> PlecticRep {
    tate(&vec![0; g])
}

pub fn tensor(a: &PlecticRep, b: &PlecticRep) -> Result<PlecticRep> {
    check_g(a, b)?;
    let mut pieces: BTreeMap<Bidegree, CSubspace> = BTreeMap::new();
    let dim = a.dim * b.dim;
    for (da, sa) in &a.pieces {
        for (db, sb) in &b.pieces {
            let e = pieces.entry(da.shift(db)).or_insert_with(|| Subspace::zero(dim));
            *e = e.sum(&sa.tensor(sb));
        }
    }
    let t = a.t.iter().zip(&b.t).map(|(x, y)| x.kron(y)).collect();
    Ok(PlecticRep { g: a.g, dim, pieces, t })
}

/// `Hom(T, U)`; a map `α` is stored as the row-major vector of its `dim U × dim T` matrix.
pub fn internal_hom(src: &PlecticRep, dst: &PlecticRep) -> Result<PlecticRep> {
    check_g(src, dst)?;
    let dim = src.dim * dst.dim;
    let (labels, b) = src.adapted_basis();
    let b_inv = b.inverse().ok_or(Error::Invalid("source pieces do not span".into()))?;
    let mut duals: BTreeMap<&Bidegree, Vec<Vec<Scalar>>> = BTreeMap::new();
    for (k, l) in labels.iter().enumerate() {
        duals.entry(l).or_default().push(b_inv.row(k).to_vec());
    }
    let mut pieces: BTreeMap<Bidegree, CSubspace> = BTreeMap::new();
    for (ds, fs) in duals {
        let dual = Subspace::span_unchecked(src.dim, fs);
        for (dd, sd) in &dst.pieces {
            let shift = Bidegree::new(sub(&dd.p, &ds.p), sub(&dd.q, &ds.q));
            let e = pieces.entry(shift).or_insert_with(|| Subspace::zero(dim));
            *e = e.sum(&sd.tensor(&dual));
        }
    }
    let t = src
        .t
        .iter()
        .zip(&dst.t)
        .map(|(ts, td)| Ok(td.kron(&ts.inverse().ok_or(Error::Singular)?.transpose())))
        .collect::<Result<Vec<_>>>()?;
    Ok(PlecticRep { g: src.g, dim, pieces, t })
}

/// `T ⊠ U` over `g₁ + g₂` variables.
pub fn exterior(a: &PlecticRep, b: &PlecticRep) -> PlecticRep {
    let dim = a.dim * b.dim;
    let mut pieces = BTreeMap::new();
    for (da, sa) in &a.pieces {
        for (db, sb) in &b.pieces {
            pieces.insert(da.concat(db), sa.tensor(sb));
        }
    }
    let ia = CMatrix::identity(a.dim);
    let ib = CMatrix::identity(b.dim);
    let t = a.t.iter().map(|t| t.kron(&ib)).chain(b.t.iter().map(|t| ia.kron(t))).collect();
    PlecticRep { g: a.g + b.g, dim, pieces, t }
}

pub fn direct_sum(a: &PlecticRep, b: &PlecticRep) -> Result<PlecticRep> {
    check_g(a, b)?;
    let dim = a.dim + b.dim;
    let mut pieces: BTreeMap<Bidegree, CSubspace> = BTreeMap::new();
    for (d, s) in &a.pieces {
        pieces.insert(d.clone(), s.direct_sum(&Subspace::zero(b.dim)));
    }
    for (d, s) in &b.pieces {
        let e = pieces.entry(d.clone()).or_insert_with(|| Subspace::zero(dim));
        *e = e.sum(&Subspace::zero(a.dim).direct_sum(s));
    }
    let t = a.t.iter().zip(&b.t).map(|(x, y)| x.direct_sum(y)).collect();
    Ok(PlecticRep { g: a.g, dim, pieces, t })
}

/// Tate twist `U(𝐧) = U ⊗ ℂ(𝐧)`: every index moves by `−𝐧`.
pub fn twist(u: &PlecticRep, n: &[i64]) -> Result<PlecticRep> {
    tensor(u, &tate(n))
}

/// Pads a representation over `μ` variables to `g` variables.
pub fn include_rep(u: &PlecticRep, g: usize) -> Result<PlecticRep> {
    if u.g > g {
        return Err(Error::OutOfRange(format!("cannot include {} variables into {g}", u.g)));
    }
    let pad = |v: &MultiIndex| v.iter().copied().chain(std::iter::repeat(0).take(g - u.g)).collect::<MultiIndex>();
    let pieces = u.pieces.iter().map(|(b, s)| (Bidegree::new(pad(&b.p), pad(&b.q)), s.clone())).collect();
    let mut t = u.t.clone();
    t.resize(g, CMatrix::identity(u.dim));
    Ok(PlecticRep { g, dim: u.dim, pieces, t })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismViolation {
    Shape,
    Grading { p: MultiIndex, q: MultiIndex },
    NotEquivariant { mu: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub valid: bool,
    pub violation: Option<MorphismViolation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: PlecticRep,
    pub target: PlecticRep,
    /// `dim target × dim source`.
    pub matrix: CMatrix,
}

impl RepMorphism {
    pub fn new(source: PlecticRep, target: PlecticRep, matrix: CMatrix) -> Self {
        RepMorphism { source, target, matrix }
    }

    pub fn zero(source: PlecticRep, target: PlecticRep) -> Self {
        let m = CMatrix::zeros(target.dim, source.dim);
        RepMorphism { source, target, matrix: m }
    }

    pub fn validate(&self) -> MorphismReport {
        let v = self.first_violation();
        MorphismReport { valid: v.is_none(), violation: v }
    }

    fn first_violation(&self) -> Option<MorphismViolation> {
        let (s, t, f) = (&self.source, &self.target, &self.matrix);
        if s.g != t.g || f.nrows() != t.dim || f.ncols() != s.dim {
            return Some(MorphismViolation::Shape);
        }
        for (bd, piece) in &s.pieces {
            if !piece.image(f).is_subspace_of(&t.piece(bd)) {
                return Some(MorphismViolation::Grading { p: bd.p.clone(), q: bd.q.clone() });
            }
        }
        for mu in 0..s.g {
            if f.mul(s.t(mu)) != t.t(mu).mul(f) {
                return Some(MorphismViolation::NotEquivariant { mu: mu + 1 });
            }
        }
        None
    }
}
