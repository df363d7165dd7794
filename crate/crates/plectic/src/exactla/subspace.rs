use super::matrix::Matrix;
use super::scalar::{Field, Rational, Scalar};
use crate::error::{Error, Result};

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot columns.
pub(crate) fn rref_in_place<F: Field>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv();
        if !inv.is_one() {
            for x in rows[r][col..].iter_mut() {
                *x = x.mul(&inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let f = other[col].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if !y.is_zero() {
                    *x = x.sub(&y.mul(&f));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// A linear subspace of `F^n`, stored as the unique reduced row-echelon basis.
///
/// Equality of subspaces is structural equality of this form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

pub type CSubspace = Subspace<Scalar>;
pub type QSubspace = Subspace<Rational>;

/// Row space of `rows` in canonical form; rejects ragged input.
pub fn rref<F: Field>(ambient: usize, rows: Vec<Vec<F>>) -> Result<Subspace<F>> {
    Subspace::span(ambient, rows)
}

impl<F: Field> Subspace<F> {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Subspace { ambient: n, basis, pivots: (0..n).collect() }
    }

    pub fn span(ambient: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(Error::Malformed(format!(
                "vector of length {} in ambient dimension {ambient}",
                r.len()
            )));
        }
        Ok(Self::span_unchecked(ambient, rows))
    }

    pub(crate) fn span_unchecked(ambient: usize, mut rows: Vec<Vec<F>>) -> Self {
        let pivots = rref_in_place(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    /// The span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let rows = indices
            .into_iter()
            .map(|k| (0..ambient).map(|j| if j == k { F::one() } else { F::zero() }).collect())
            .collect();
        Self::span_unchecked(ambient, rows)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Residue of `v` after reduction against the basis; zero iff `v` lies in the span.
    fn reduce(&self, v: &[F]) -> Vec<F> {
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row).skip(p) {
                if !y.is_zero() {
                    *x = x.sub(&y.mul(&f));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        if self.is_full() {
            return true;
        }
        self.reduce(v).iter().all(F::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        self.dim() <= other.dim() && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if other.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_full() {
            return other.clone();
        }
        let rows = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span_unchecked(self.ambient, rows)
    }

    pub fn sum_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut rows = Vec::new();
        for p in parts {
            assert_eq!(p.ambient, ambient, "ambient mismatch");
            if p.is_full() {
                return p.clone();
            }
            rows.extend(p.basis.iter().cloned());
        }
        Self::span_unchecked(ambient, rows)
    }

    /// `{x : b · x = 0 for every basis vector b}` (bilinear, no conjugation).
    pub fn annihilator(&self) -> Self {
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let rows = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![F::zero(); n];
                x[f] = F::one();
                for (row, &p) in self.basis.iter().zip(&self.pivots) {
                    x[p] = row[f].neg();
                }
                x
            })
            .collect();
        Self::span_unchecked(n, rows)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        if other.is_zero() || self.is_full() {
            return other.clone();
        }
        if self.is_subspace_of(other) {
            return self.clone();
        }
        if other.is_subspace_of(self) {
            return other.clone();
        }
        // Combinations of the smaller basis whose residue modulo the larger space vanishes.
        let (small, big) = if self.dim() <= other.dim() { (self, other) } else { (other, self) };
        let (n, k) = (self.ambient, small.dim());
        let mut rows: Vec<Vec<F>> = small
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = big.reduce(b);
                r.extend((0..k).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        rref_in_place(&mut rows, n + k);
        let meet = rows
            .iter()
            .filter(|r| r[..n].iter().all(F::is_zero))
            .map(|r| {
                let mut v = vec![F::zero(); n];
                for (c, b) in r[n..].iter().zip(&small.basis) {
                    if !c.is_zero() {
                        for (x, y) in v.iter_mut().zip(b) {
                            if !y.is_zero() {
                                *x = x.add(&c.mul(y));
                            }
                        }
                    }
                }
                v
            })
            .collect();
        Self::span_unchecked(n, meet)
    }

    pub fn intersect_all<'a>(ambient: usize, parts: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut acc = Self::full(ambient);
        for p in parts {
            acc = acc.intersect(p);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn try_sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.sum(other))
    }

    pub fn try_intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(self.intersect(other))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// `M(self)` for a matrix with `ambient` columns.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.ncols(), self.ambient, "ambient mismatch");
        Self::span_unchecked(m.nrows(), self.basis.iter().map(|b| m.apply(b)).collect())
    }

    /// `{x : M x ∈ self}` for a matrix with `ambient` rows.
    pub fn preimage(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.nrows(), self.ambient, "ambient mismatch");
        let constraints: Vec<Vec<F>> = self
            .annihilator()
            .basis
            .iter()
            .map(|c| {
                (0..m.ncols())
                    .map(|j| {
                        let mut acc = F::zero();
                        for (i, ci) in c.iter().enumerate() {
                            if !ci.is_zero() {
                                acc = acc.add(&ci.mul(m.get(i, j)));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Self::span_unchecked(m.ncols(), constraints).annihilator()
    }

    /// Coefficients of `v` in the canonical basis; `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// `Σ c_k b_k` over the canonical basis.
    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        let mut v = vec![F::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.add(&y.mul(c));
            }
        }
        v
    }

    /// The matrix (ambient × dim) whose columns are the canonical basis vectors.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    /// `self ∩ host` written in the canonical coordinates of `host`.
    pub fn restrict_to(&self, host: &Self) -> Self {
        let meet = self.intersect(host);
        let rows = meet.basis.iter().map(|b| host.coordinates(b).unwrap()).collect();
        Self::span_unchecked(host.dim(), rows)
    }

    /// Inverse of [`Subspace::restrict_to`]: a subspace of `host`-coordinates pushed to the ambient space.
    pub fn embed_in(&self, host: &Self) -> Self {
        assert_eq!(self.ambient, host.dim());
        Self::span_unchecked(host.ambient, self.basis.iter().map(|c| host.lift(c)).collect())
    }

    /// `A ⊗ B` inside `F^n ⊗ F^m` with the Kronecker index convention.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut rows = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                let mut v = Vec::with_capacity(a.len() * b.len());
                for x in a {
                    for y in b {
                        v.push(x.mul(y));
                    }
                }
                rows.push(v);
            }
        }
        Self::span_unchecked(self.ambient * other.ambient, rows)
    }

    /// `A ⊕ B ⊆ F^{n+m}`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.ambient + other.ambient;
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.basis {
            let mut v = a.clone();
            v.resize(n, F::zero());
            rows.push(v);
        }
        for b in &other.basis {
            let mut v = vec![F::zero(); self.ambient];
            v.extend(b.iter().cloned());
            rows.push(v);
        }
        Self::span_unchecked(n, rows)
    }

    /// The quotient `self / sub`; requires `sub ⊆ self`.
    pub fn quotient(&self, sub: &Self) -> Result<Quotient<F>> {
        quotient_map(self, sub)
    }
}

/// The quotient `A/B` with a distinguished complement basis and projection matrix.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    total: Subspace<F>,
    sub: Subspace<F>,
    complement: Vec<Vec<F>>,
    projection: Matrix<F>,
}

/// Builds `A/B`.  The complement consists of the canonical basis vectors of `A`
/// not already spanned by `B` and earlier choices.  The projection matrix is
/// defined on the whole ambient space and agrees with the quotient map on `A`.
pub fn quotient_map<F: Field>(a: &Subspace<F>, b: &Subspace<F>) -> Result<Quotient<F>> {
    if a.ambient != b.ambient {
        return Err(Error::Dimension { expected: a.ambient, found: b.ambient });
    }
    if !b.is_subspace_of(a) {
        return Err(Error::NotContained("quotient by a space not contained in the total".into()));
    }
    let n = a.ambient;
    let mut acc = b.clone();
    let mut complement = Vec::new();
    for v in &a.basis {
        if !acc.contains(v) {
            acc = acc.sum(&Subspace::span_unchecked(n, vec![v.clone()]));
            complement.push(v.clone());
        }
    }
    // Complete B ∪ complement to a basis of the ambient space and invert.
    let mut cols: Vec<Vec<F>> = b.basis.clone();
    cols.extend(complement.iter().cloned());
    for k in 0..n {
        if acc.is_full() {
            break;
        }
        let e: Vec<F> = (0..n).map(|j| if j == k { F::one() } else { F::zero() }).collect();
        if !acc.contains(&e) {
            acc = acc.sum(&Subspace::span_unchecked(n, vec![e.clone()]));
            cols.push(e);
        }
    }
    let inv = Matrix::from_columns(n, &cols).inverse().expect("completed basis is invertible");
    let off = b.dim();
    let projection = Matrix::from_fn(complement.len(), n, |i, j| inv.get(off + i, j).clone());
    Ok(Quotient { total: a.clone(), sub: b.clone(), complement, projection })
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn total(&self) -> &Subspace<F> {
        &self.total
    }

    pub fn sub(&self) -> &Subspace<F> {
        &self.sub
    }

    pub fn complement(&self) -> &[Vec<F>] {
        &self.complement
    }

    pub fn projection(&self) -> &Matrix<F> {
        &self.projection
    }

    pub fn project(&self, v: &[F]) -> Vec<F> {
        self.projection.apply(v)
    }

    /// Image in quotient coordinates of a subspace of the total space.
    pub fn project_subspace(&self, s: &Subspace<F>) -> Subspace<F> {
        s.image(&self.projection)
    }

    /// The complement representative of quotient coordinates.
    pub fn lift(&self, coords: &[F]) -> Vec<F> {
        assert_eq!(coords.len(), self.dim());
        let n = self.total.ambient;
        let mut v = vec![F::zero(); n];
        for (c, b) in coords.iter().zip(&self.complement) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = x.add(&y.mul(c));
            }
        }
        v
    }

    /// The matrix (ambient × dim) of the lift.
    pub fn lift_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.total.ambient, &self.complement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sp(n: usize, rows: Vec<Vec<i64>>) -> CSubspace {
        Subspace::span(n, rows.into_iter().map(|r| r.into_iter().map(c).collect()).collect()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let i = Scalar::i();
        let s = rref(2, vec![vec![c(1), i.clone()], vec![i.clone(), c(-1)]]).unwrap();
        assert_eq!(s.basis(), &[vec![c(1), i]]);
        assert!(rref::<Scalar>(3, vec![]).unwrap().is_zero());
        let f = sp(2, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(f, CSubspace::full(2));
        assert!(rref(2, vec![vec![c(1)]]).is_err());
    }

    #[test]
    fn intersection_example() {
        let a = sp(3, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let b = sp(3, vec![vec![1, 0, 0], vec![0, 1, 1]]);
        assert_eq!(a.intersect(&b), sp(3, vec![vec![1, 1, 1]]));
        assert_eq!(a.sum(&b), CSubspace::full(3));
        let x = sp(2, vec![vec![1, 0]]);
        let y = sp(2, vec![vec![0, 1]]);
        assert!(x.intersect(&y).is_zero());
        assert!(x.try_sum(&CSubspace::full(3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let full = CSubspace::full(2);
        let b = sp(2, vec![vec![0, 1]]);
        let q = quotient_map(&full, &b).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.project(&[c(3), c(5)]), vec![c(3)]);
        assert_eq!(quotient_map(&b, &b).unwrap().dim(), 0);
        assert!(quotient_map(&b, &full).is_err());
    }

    #[test]
    fn preimage_and_restrict() {
        let m = crate::exactla::CMatrix::from_rows(vec![vec![c(0), c(1)], vec![c(0), c(0)]]).unwrap();
        let line = sp(2, vec![vec![1, 0]]);
        assert_eq!(line.preimage(&m), CSubspace::full(2));
        assert_eq!(line.image(&m), CSubspace::zero(2));
        let host = sp(3, vec![vec![1, 1, 0], vec![0, 0, 1]]);
        let s = sp(3, vec![vec![2, 2, 1]]);
        let r = s.restrict_to(&host);
        assert_eq!(r.embed_in(&host), s);
    }
}
