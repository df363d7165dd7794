//! Finite ascending and descending filtrations.
//!
//! Both kinds store a sorted map `index → subspace` and are piecewise constant:
//! the value at `n` is the step stored at the largest index `≤ n`.  Outside the
//! stored range an ascending filtration is `0` below and everything above; a
//! descending one is everything below and `0` above.

use std::collections::BTreeMap;

use serde::Serialize;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::subspace::{Quotient, Subspace};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub valid: bool,
    /// Stored index range `[lo, hi]`; `None` when nothing is stored.
    pub support: Option<(i64, i64)>,
    /// Consecutive stored index pairs `(n, n')` where monotonicity fails.
    pub violations: Vec<(i64, i64)>,
}

macro_rules! filtration_common {
    ($name:ident, $below:ident, $above:ident, $le:expr) => {
        impl<F: Field> $name<F> {
            pub fn new(ambient: usize, steps: BTreeMap<i64, Subspace<F>>) -> Result<Self> {
                if let Some(s) = steps.values().find(|s| s.ambient() != ambient) {
                    return Err(Error::Dimension { expected: ambient, found: s.ambient() });
                }
                Ok($name { ambient, steps })
            }

            pub fn from_steps(ambient: usize, steps: impl IntoIterator<Item = (i64, Subspace<F>)>) -> Result<Self> {
                Self::new(ambient, steps.into_iter().collect())
            }

            /// Evaluates `f` on `lo..=hi` and keeps only the jumps.
            pub fn from_fn(ambient: usize, lo: i64, hi: i64, f: impl FnMut(i64) -> Subspace<F>) -> Self {
                let steps = (lo..=hi).map(f).zip(lo..=hi).map(|(s, k)| (k, s)).collect();
                $name { ambient, steps }.normalized()
            }

            pub fn ambient(&self) -> usize {
                self.ambient
            }

            pub fn steps(&self) -> &BTreeMap<i64, Subspace<F>> {
                &self.steps
            }

            pub fn get(&self, n: i64) -> Subspace<F> {
                match self.steps.range(..=n).next_back() {
                    None => Subspace::$below(self.ambient),
                    Some((&k, _)) if n > k && self.steps.keys().next_back() == Some(&k) => {
                        Subspace::$above(self.ambient)
                    }
                    Some((_, s)) => s.clone(),
                }
            }

            /// Indices `n` with `get(n) ≠ get(n − 1)`, in increasing order.
            pub fn jumps(&self) -> Vec<i64> {
                let (Some(&lo), Some(&hi)) = (self.steps.keys().next(), self.steps.keys().next_back()) else {
                    return Vec::new();
                };
                let mut out = Vec::new();
                let mut prev = Subspace::$below(self.ambient);
                for n in lo..=hi + 1 {
                    let cur = self.get(n);
                    if cur != prev {
                        out.push(n);
                    }
                    prev = cur;
                }
                out
            }

            /// The same filtration stored only at its jumps.
            pub fn normalized(&self) -> Self {
                let steps = self.jumps().into_iter().map(|n| (n, self.get(n))).collect();
                $name { ambient: self.ambient, steps }
            }

            pub fn validate(&self) -> FiltrationReport {
                let le = $le;
                let keys: Vec<i64> = self.steps.keys().copied().collect();
                let violations: Vec<(i64, i64)> = keys
                    .windows(2)
                    .filter(|w| !le(&self.steps[&w[0]], &self.steps[&w[1]]))
                    .map(|w| (w[0], w[1]))
                    .collect();
                FiltrationReport {
                    valid: violations.is_empty(),
                    support: keys.first().map(|&lo| (lo, *keys.last().unwrap())),
                    violations,
                }
            }

            /// Applies a map that sends `0 ↦ 0` and everything to everything.
            pub fn transform<G: Field>(&self, ambient: usize, f: impl Fn(&Subspace<F>) -> Subspace<G>) -> $name<G> {
                $name { ambient, steps: self.steps.iter().map(|(&k, s)| (k, f(s))).collect() }.normalized()
            }
        }

        impl<F: Field> PartialEq for $name<F> {
            fn eq(&self, other: &Self) -> bool {
                self.ambient == other.ambient && self.normalized().steps == other.normalized().steps
            }
        }
        impl<F: Field> Eq for $name<F> {}

        impl $name<Scalar> {
            /// Image under an invertible (or at least everything-preserving) linear map.
            pub fn image(&self, m: &Matrix<Scalar>) -> Self {
                self.transform(m.nrows(), |s| s.image(m))
            }

            /// Induced filtration on `host` in host coordinates.
            pub fn restrict_to(&self, host: &Subspace<Scalar>) -> Self {
                self.transform(host.dim(), |s| s.restrict_to(host))
            }

            /// Induced filtration on a quotient: `q(step ∩ total)`.
            pub fn on_quotient(&self, q: &Quotient<Scalar>) -> Self {
                self.transform(q.dim(), |s| q.project_subspace(&s.intersect(q.total())))
            }
        }
    };
}

/// Ascending filtration: zero below the stored range, everything above it.
#[derive(Clone, Debug)]
pub struct AscFiltration<F: Field> {
    ambient: usize,
    steps: BTreeMap<i64, Subspace<F>>,
}

/// Descending filtration: everything below the stored range, zero above it.
#[derive(Clone, Debug)]
pub struct DescFiltration<F: Field> {
    ambient: usize,
    steps: BTreeMap<i64, Subspace<F>>,
}

filtration_common!(AscFiltration, zero, full, |a: &Subspace<F>, b: &Subspace<F>| a.is_subspace_of(b));
filtration_common!(DescFiltration, full, zero, |a: &Subspace<F>, b: &Subspace<F>| b.is_subspace_of(a));

impl<F: Field> AscFiltration<F> {
    /// Single jump from `0` to everything at `n`.
    pub fn pure(ambient: usize, n: i64) -> Self {
        let steps = if ambient == 0 { BTreeMap::new() } else { BTreeMap::from([(n, Subspace::full(ambient))]) };
        AscFiltration { ambient, steps }
    }

    /// `(first index with a nonzero step, first index where the step is everything)`;
    /// `None` for a zero-dimensional ambient space.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        let j = self.jumps();
        Some((*j.first()?, *j.last()?))
    }
}

impl<F: Field> DescFiltration<F> {
    /// Everything up to `p`, zero afterwards.
    pub fn pure(ambient: usize, p: i64) -> Self {
        let steps = if ambient == 0 {
            BTreeMap::new()
        } else {
            BTreeMap::from([(p, Subspace::full(ambient)), (p + 1, Subspace::zero(ambient))])
        };
        DescFiltration { ambient, steps }
    }

    /// `(last index where the step is everything, last index with a nonzero step)`;
    /// `None` for a zero-dimensional ambient space.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        let j = self.jumps();
        Some((*j.first()? - 1, *j.last()? - 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::CSubspace;

    fn line(n: usize, k: usize) -> CSubspace {
        Subspace::coordinate(n, [k])
    }

    #[test]
    fn asc_semantics_and_validation() {
        let w = AscFiltration::from_steps(2, [(-1, CSubspace::zero(2)), (0, CSubspace::full(2))]).unwrap();
        let r = w.validate();
        assert!(r.valid);
        assert_eq!(r.support, Some((-1, 0)));
        assert!(w.get(-5).is_zero());
        assert!(w.get(7).is_full());
        assert_eq!(w.bounds(), Some((0, 0)));

        let bad = AscFiltration::from_steps(2, [(0, line(2, 0)), (1, line(2, 1))]).unwrap();
        assert_eq!(bad.validate().violations, vec![(0, 1)]);
    }

    #[test]
    fn desc_semantics() {
        // Tate twist by n = 2: F^{-2} = everything, F^{-1} = 0.
        let f = DescFiltration::from_steps(1, [(-2, CSubspace::full(1)), (-1, CSubspace::zero(1))]).unwrap();
        assert!(f.validate().valid);
        assert!(f.get(-9).is_full());
        assert!(f.get(-1).is_zero());
        assert_eq!(f.bounds(), Some((-2, -2)));
        // Gaps hold the value of the step at the largest stored index below.
        let g = DescFiltration::from_steps(2, [(-3, CSubspace::full(2)), (-2, line(2, 0)), (1, CSubspace::zero(2))])
            .unwrap();
        assert_eq!(g.get(0), line(2, 0));
        assert_eq!(g.jumps(), vec![-2, 1]);
        assert_eq!(g.bounds(), Some((-3, 0)));
        assert_eq!(g, g.normalized());
    }
}
