use super::matrix::{CMatrix, QMatrix};
use super::scalar::{Field, Rational, Scalar};
use super::subspace::{CSubspace, QSubspace, Subspace};
use crate::error::{Error, Result};

/// The anti-linear map `v ↦ S · conj(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AntiLinearMap {
    matrix: CMatrix,
}

impl AntiLinearMap {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Malformed("anti-linear map needs a square matrix".into()));
        }
        Ok(AntiLinearMap { matrix })
    }

    /// Complex conjugation of coordinates.
    pub fn conj(n: usize) -> Self {
        AntiLinearMap { matrix: CMatrix::identity(n) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let c: Vec<Scalar> = v.iter().map(Scalar::conj).collect();
        self.matrix.apply(&c)
    }

    /// `self ∘ other`, which is complex-linear: `S conj(T)`.
    pub fn compose(&self, other: &AntiLinearMap) -> CMatrix {
        self.matrix.mul(&other.matrix.conj())
    }

    /// `self ∘ m`: `v ↦ S conj(m v)`.
    pub fn after(&self, m: &CMatrix) -> AntiLinearMap {
        AntiLinearMap { matrix: self.matrix.mul(&m.conj()) }
    }

    /// `m ∘ self`.
    pub fn before(&self, m: &CMatrix) -> AntiLinearMap {
        AntiLinearMap { matrix: m.mul(&self.matrix) }
    }

    /// `self ∘ m ∘ self`, a complex-linear map.
    pub fn conjugate_linear(&self, m: &CMatrix) -> CMatrix {
        self.matrix.mul(&m.conj()).mul(&self.matrix.conj())
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }

    pub fn image(&self, s: &CSubspace) -> CSubspace {
        let rows = s.basis().iter().map(|b| self.apply(b)).collect();
        Subspace::span_unchecked(s.ambient(), rows)
    }

    /// `A ⊗ B` acting by `v ↦ (S_A ⊗ S_B) conj(v)`.
    pub fn tensor(&self, other: &AntiLinearMap) -> AntiLinearMap {
        AntiLinearMap { matrix: self.matrix.kron(&other.matrix) }
    }

    pub fn direct_sum(&self, other: &AntiLinearMap) -> AntiLinearMap {
        AntiLinearMap { matrix: self.matrix.direct_sum(&other.matrix) }
    }

    /// Transport along a change of basis `x ↦ h x`: `h S conj(h)^{-1}`.
    pub fn transport(&self, h: &CMatrix, h_inv: &CMatrix) -> AntiLinearMap {
        AntiLinearMap { matrix: h.mul(&self.matrix).mul(&h_inv.conj()) }
    }

    /// Restriction to an invariant subspace, in its canonical coordinates.
    pub fn restrict_to(&self, host: &CSubspace) -> Result<AntiLinearMap> {
        let cols = host
            .basis()
            .iter()
            .map(|b| host.coordinates(&self.apply(b)).ok_or_else(|| Error::NotContained("subspace is not stable".into())))
            .collect::<Result<Vec<_>>>()?;
        // σ(Σ c_k b_k) = Σ conj(c_k) σ(b_k): the coordinate matrix has columns coords(σ b_k).
        Ok(AntiLinearMap { matrix: CMatrix::from_columns(host.dim(), &cols) })
    }

    /// Induced map on a quotient by a stable subspace.
    pub fn on_quotient(&self, q: &super::subspace::Quotient<Scalar>) -> AntiLinearMap {
        let cols: Vec<Vec<Scalar>> = q.complement().iter().map(|b| q.project(&self.apply(b))).collect();
        AntiLinearMap { matrix: CMatrix::from_columns(q.dim(), &cols) }
    }

    /// The ℚ-subspace of fixed vectors inside `ℚ^{2n}` (coordinates `(re, im)`).
    pub fn fixed_space(&self) -> Result<QSubspace> {
        if !self.is_involution() {
            return Err(Error::NotInvolution);
        }
        Ok(self.fixed_space_unchecked())
    }

    pub(crate) fn fixed_space_unchecked(&self) -> QSubspace {
        // S conj(x + iy) = (P + iQ)(x − iy) = (Px + Qy) + i(Qx − Py).
        let n = self.dim();
        let m = QMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let z = self.matrix.get(i % n, j % n);
            let v = match (i < n, j < n) {
                (true, true) => z.re.clone(),
                (true, false) | (false, true) => z.im.clone(),
                (false, false) => -&z.re,
            };
            if i == j { v - Rational::one() } else { v }
        });
        m.kernel()
    }
}

/// `{(x, y) : x + iy ∈ L}` as a ℚ-subspace of `ℚ^{2n}`.
pub fn realify(l: &CSubspace) -> QSubspace {
    let n = l.ambient();
    let mut rows = Vec::with_capacity(2 * l.dim());
    for b in l.basis() {
        let re: Vec<Rational> = b.iter().map(|z| z.re.clone()).collect();
        let im: Vec<Rational> = b.iter().map(|z| z.im.clone()).collect();
        rows.push(re.iter().chain(&im).cloned().collect());
        // i·b = −im + i·re
        rows.push(im.iter().map(|x| -x).chain(re.iter().cloned()).collect());
    }
    Subspace::span_unchecked(2 * n, rows)
}

/// `x + iy` from a realified vector.
pub fn complexify_vector(v: &[Rational]) -> Vec<Scalar> {
    let n = v.len() / 2;
    (0..n).map(|k| Scalar::new(v[k].clone(), v[n + k].clone())).collect()
}

/// The ℂ-span of a ℚ-subspace of `ℚ^{2n}`.
pub fn complex_span(q: &QSubspace) -> CSubspace {
    let n = q.ambient() / 2;
    Subspace::span_unchecked(n, q.basis().iter().map(|v| complexify_vector(v)).collect())
}
