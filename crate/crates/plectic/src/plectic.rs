//! Mixed plectic Hodge structures in `g` variables.
//!
//! Objects of `Fil^l_g` are stored as [`MultiFiltered`]: `l` weight filtrations and `g`
//! pairs `(F_μ, F̄_μ)` of Hodge filtrations.  `l = g` gives orthogonal families,
//! `l = 1` the weak plectic structures, `l = 0` pure ones.
//!
//! Multi-index sums are evaluated on finite boxes.  Outside the box where a filtration
//! changes, every summand is either zero or contained in a summand inside the box, so the
//! truncation is exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactla::{quotient_map, AscFiltration, CMatrix, CSubspace, DescFiltration, Scalar, Subspace};
use crate::hodge1::{self, MhsReport, MixedHodge, Splitting};
use crate::repcore::{total, Bidegree, MultiIndex, PlecticRep, DEFAULT_MAX_G};

/// A subset `I ⊆ {1, …, g}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    g: usize,
    bits: u64,
}

impl Subset {
    pub fn empty(g: usize) -> Self {
        Subset { g, bits: 0 }
    }

    pub fn full(g: usize) -> Self {
        Subset { g, bits: (1u64 << g) - 1 }
    }

    /// From one-based members.
    pub fn from_members(g: usize, members: &[usize]) -> Result<Self> {
        let mut bits = 0;
        for &m in members {
            if m == 0 || m > g {
                return Err(Error::OutOfRange(format!("index {m} is not in 1..={g}")));
            }
            bits |= 1 << (m - 1);
        }
        Ok(Subset { g, bits })
    }

    /// All `2^g` subsets; fails beyond `limit`.
    pub fn all(g: usize, limit: usize) -> Result<Vec<Subset>> {
        if g > limit {
            return Err(Error::TooManyVariables { g, limit });
        }
        Ok((0..1u64 << g).map(|bits| Subset { g, bits }).collect())
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Membership of the zero-based index `mu`.
    pub fn contains(&self, mu: usize) -> bool {
        self.bits >> mu & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Subset { g: self.g, bits: !self.bits & ((1u64 << self.g) - 1) }
    }

    /// One-based members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        (0..self.g).filter(|&m| self.contains(m)).map(|m| m + 1).collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members())
    }
}

/// An object of `Fil^l_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFiltered {
    dim: usize,
    w: Vec<AscFiltration<Scalar>>,
    f: Vec<DescFiltration<Scalar>>,
    fbar: Vec<DescFiltration<Scalar>>,
}

impl MultiFiltered {
    pub fn new(
        dim: usize,
        w: Vec<AscFiltration<Scalar>>,
        f: Vec<DescFiltration<Scalar>>,
        fbar: Vec<DescFiltration<Scalar>>,
    ) -> Result<Self> {
        if f.len() != fbar.len() {
            return Err(Error::VariableCount(f.len(), fbar.len()));
        }
        let ambients = w.iter().map(AscFiltration::ambient).chain(f.iter().chain(&fbar).map(DescFiltration::ambient));
        for a in ambients {
            if a != dim {
                return Err(Error::Dimension { expected: dim, found: a });
            }
        }
        Ok(MultiFiltered { dim, w, f, fbar })
    }

    /// `Fil^1_1` view of a one-variable structure.
    pub fn from_mhs(v: &MixedHodge) -> Self {
        MultiFiltered { dim: v.dim(), w: vec![v.w().clone()], f: vec![v.f().clone()], fbar: vec![v.fbar().clone()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of weight filtrations.
    pub fn l(&self) -> usize {
        self.w.len()
    }

    /// Number of Hodge filtration pairs.
    pub fn g(&self) -> usize {
        self.f.len()
    }

    pub fn w(&self, k: usize) -> &AscFiltration<Scalar> {
        &self.w[k]
    }

    pub fn ws(&self) -> &[AscFiltration<Scalar>] {
        &self.w
    }

    pub fn f(&self, mu: usize) -> &DescFiltration<Scalar> {
        &self.f[mu]
    }

    pub fn fbar(&self, mu: usize) -> &DescFiltration<Scalar> {
        &self.fbar[mu]
    }

    pub fn fs(&self) -> &[DescFiltration<Scalar>] {
        &self.f
    }

    pub fn fbars(&self) -> &[DescFiltration<Scalar>] {
        &self.fbar
    }

    /// Names (`W1`, `F2`, `Fbar1`, …) of filtrations that are not monotone.
    pub fn bad_filtrations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (k, w) in self.w.iter().enumerate() {
            if !w.validate().valid {
                out.push(format!("W{}", k + 1));
            }
        }
        for mu in 0..self.g() {
            if !self.f[mu].validate().valid {
                out.push(format!("F{}", mu + 1));
            }
            if !self.fbar[mu].validate().valid {
                out.push(format!("Fbar{}", mu + 1));
            }
        }
        out
    }

    /// `(V, W^k, F_μ, F̄_μ)`, with `k = μ` when `l = g` and `k = 0` when `l = 1`.
    pub fn component(&self, mu: usize) -> MixedHodge {
        let k = if self.l() == 1 { 0 } else { mu };
        MixedHodge::new(self.w[k].clone(), self.f[mu].clone(), self.fbar[mu].clone()).expect("shapes checked")
    }

    /// The single weight filtration of an `l = 1` object.
    pub fn weight(&self) -> Result<&AscFiltration<Scalar>> {
        if self.l() != 1 {
            return Err(Error::Invalid(format!("expected one weight filtration, found {}", self.l())));
        }
        Ok(&self.w[0])
    }

    fn map_all(
        &self,
        dim: usize,
        a: impl Fn(&AscFiltration<Scalar>) -> AscFiltration<Scalar>,
        d: impl Fn(&DescFiltration<Scalar>) -> DescFiltration<Scalar>,
    ) -> Self {
        MultiFiltered {
            dim,
            w: self.w.iter().map(&a).collect(),
            f: self.f.iter().map(&d).collect(),
            fbar: self.fbar.iter().map(&d).collect(),
        }
    }

    /// Induced filtrations on a subspace, in its canonical coordinates.
    pub fn restrict_to(&self, s: &CSubspace) -> Self {
        self.map_all(s.dim(), |w| w.restrict_to(s), |f| f.restrict_to(s))
    }

    /// Induced filtrations on a quotient.
    pub fn on_quotient(&self, q: &crate::exactla::Quotient<Scalar>) -> Self {
        self.map_all(q.dim(), |w| w.on_quotient(q), |f| f.on_quotient(q))
    }

    /// Transport along an invertible map.
    pub fn image(&self, h: &CMatrix) -> Self {
        self.map_all(h.nrows(), |w| w.image(h), |f| f.image(h))
    }

    /// `Gr^W_n` of an `l = 1` object as an `l = 0` object, with its quotient map.
    pub fn graded(&self, n: i64) -> Result<(MultiFiltered, crate::exactla::Quotient<Scalar>)> {
        let w = self.weight()?;
        let q = quotient_map(&w.get(n), &w.get(n - 1))?;
        let mut gr = self.on_quotient(&q);
        gr.w.clear();
        Ok((gr, q))
    }

    /// Drops the weight filtrations.
    pub fn without_weights(&self) -> Self {
        MultiFiltered { dim: self.dim, w: Vec::new(), f: self.f.clone(), fbar: self.fbar.clone() }
    }

    /// Replaces the weight filtrations.
    pub fn with_weights(&self, w: Vec<AscFiltration<Scalar>>) -> Result<Self> {
        Self::new(self.dim, w, self.f.clone(), self.fbar.clone())
    }
}

fn check_g(v: &MultiFiltered, i: &Subset, idx: &[i64]) -> Result<()> {
    if i.g() != v.g() {
        return Err(Error::VariableCount(v.g(), i.g()));
    }
    if idx.len() != v.g() {
        return Err(Error::VariableCount(v.g(), idx.len()));
    }
    Ok(())
}

/// `𝐅_I^𝐩 = ∩_{μ∉I} F_μ^{p_μ} ∩ ∩_{ν∈I} F̄_ν^{p_ν}`.
pub fn plectic_filtration(v: &MultiFiltered, i: &Subset, p: &[i64]) -> Result<CSubspace> {
    check_g(v, i, p)?;
    Ok(Plectic::new(v, *i).bold(false, p))
}

/// `F̄𝐅_I^𝐪 = 𝐅_{I^c}^𝐪`.
pub fn plectic_filtration_bar(v: &MultiFiltered, i: &Subset, q: &[i64]) -> Result<CSubspace> {
    plectic_filtration(v, &i.complement(), q)
}

/// `𝐅_I^𝐩 Gr^W_n = (W_n ∩ 𝐅_I^𝐩)/(W_{n−1} ∩ 𝐅_I^𝐩)`, in the coordinates of [`MultiFiltered::graded`].
pub fn graded_plectic_filtration(v: &MultiFiltered, i: &Subset, n: i64, p: &[i64]) -> Result<CSubspace> {
    check_g(v, i, p)?;
    let (_, q) = v.graded(n)?;
    Ok(q.project_subspace(&Plectic::new(v, *i).bold_w(false, p, n)))
}

/// `F_I^p = Σ_{|𝐩| = p} 𝐅_I^𝐩`.
pub fn total_filtration(v: &MultiFiltered, i: &Subset, p: i64) -> Result<CSubspace> {
    check_g(v, i, &vec![0; v.g()])?;
    Ok(Plectic::new(v, *i).total_at(false, p))
}

/// `(F_I, F̄_I)` as filtrations.
pub fn total_filtrations(v: &MultiFiltered, i: &Subset) -> Result<(DescFiltration<Scalar>, DescFiltration<Scalar>)> {
    check_g(v, i, &vec![0; v.g()])?;
    let mut ctx = Plectic::new(v, *i);
    Ok((ctx.total(false), ctx.total(true)))
}

/// Cartesian product of inclusive ranges.
pub(crate) fn box_iter(ranges: &[(i64, i64)]) -> Vec<MultiIndex> {
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix: MultiIndex| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// Members of the box with coordinate sum `target`.
pub(crate) fn box_with_sum(ranges: &[(i64, i64)], target: i64) -> Vec<MultiIndex> {
    fn go(ranges: &[(i64, i64)], target: i64, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        let Some((&(lo, hi), rest)) = ranges.split_first() else {
            if target == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let rest_lo: i64 = rest.iter().map(|r| r.0).sum();
        let rest_hi: i64 = rest.iter().map(|r| r.1).sum();
        for x in lo.max(target - rest_hi)..=hi.min(target - rest_lo) {
            prefix.push(x);
            go(rest, target - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if ranges.iter().all(|r| r.0 <= r.1) {
        go(ranges, target, &mut Vec::with_capacity(ranges.len()), &mut out);
    }
    out
}

/// Plectic filtrations of one object with respect to one subset, with memoisation.
struct Plectic<'a> {
    v: &'a MultiFiltered,
    i: Subset,
    bold: HashMap<(bool, MultiIndex), CSubspace>,
    bold_w: HashMap<(bool, MultiIndex, i64), CSubspace>,
    ranges: [Vec<(i64, i64)>; 2],
}

impl<'a> Plectic<'a> {
    fn new(v: &'a MultiFiltered, i: Subset) -> Self {
        let range = |bar: bool| {
            (0..v.g())
                .map(|mu| if i.contains(mu) != bar { &v.fbar[mu] } else { &v.f[mu] }.bounds().unwrap_or((0, -1)))
                .collect()
        };
        let ranges = [range(false), range(true)];
        Plectic { v, i, bold: HashMap::new(), bold_w: HashMap::new(), ranges }
    }

    /// The filtration used in coordinate `mu` of `𝐅_I` (or of `F̄𝐅_I` when `bar`).
    fn filt(&self, mu: usize, bar: bool) -> &'a DescFiltration<Scalar> {
        if self.i.contains(mu) != bar {
            &self.v.fbar[mu]
        } else {
            &self.v.f[mu]
        }
    }

    /// Per-coordinate `(last full, last nonzero)`; `dim > 0` is assumed.
    fn bounds(&self, bar: bool) -> Vec<(i64, i64)> {
        self.ranges[usize::from(bar)].clone()
    }

    fn bold(&mut self, bar: bool, p: &[i64]) -> CSubspace {
        let p = clamp(p, &self.ranges[usize::from(bar)]);
        let key = (bar, p.clone());
        if let Some(s) = self.bold.get(&key) {
            return s.clone();
        }
        // Intersections are built up one coordinate at a time so that prefixes are shared.
        let acc = match p.split_last() {
            None => Subspace::full(self.v.dim),
            Some((&x, head)) => {
                let f = self.filt(head.len(), bar).get(x);
                if head.is_empty() {
                    f
                } else {
                    let prefix = self.bold(bar, head);
                    prefix.intersect(&f)
                }
            }
        };
        self.bold.insert(key, acc.clone());
        acc
    }

    fn bold_w(&mut self, bar: bool, p: &[i64], n: i64) -> CSubspace {
        let p = clamp(p, &self.ranges[usize::from(bar)]);
        let key = (bar, p.clone(), n);
        if let Some(s) = self.bold_w.get(&key) {
            return s.clone();
        }
        let s = self.bold(bar, &p).intersect(&self.v.w[0].get(n));
        self.bold_w.insert(key, s.clone());
        s
    }

    fn total_at(&mut self, bar: bool, p: i64) -> CSubspace {
        if self.v.dim == 0 {
            return Subspace::zero(0);
        }
        let b = self.bounds(bar);
        let lo: i64 = b.iter().map(|r| r.0).sum();
        let hi: i64 = b.iter().map(|r| r.1).sum();
        if p <= lo {
            return Subspace::full(self.v.dim);
        }
        if p > hi {
            return Subspace::zero(self.v.dim);
        }
        let parts: Vec<CSubspace> = box_with_sum(&b, p).iter().map(|x| self.bold(bar, x)).collect();
        Subspace::sum_all(self.v.dim, &parts)
    }

    fn total(&mut self, bar: bool) -> DescFiltration<Scalar> {
        if self.v.dim == 0 {
            return DescFiltration::from_steps(0, []).unwrap();
        }
        let b = self.bounds(bar);
        let lo: i64 = b.iter().map(|r| r.0).sum();
        let hi: i64 = b.iter().map(|r| r.1).sum();
        DescFiltration::from_fn(self.v.dim, lo, hi + 1, |p| self.total_at(bar, p))
    }

    /// `Σ_{𝐣 ≥ 0, 𝐣 ≠ 0} F̄𝐅^{𝐪−𝐣} ∩ W_{n−|𝐣|−1}` plus `start`, stopping early once `goal ⊆` the sum.
    fn tail_sum(&mut self, q: &[i64], n: i64, start: CSubspace, goal: Option<&CSubspace>) -> CSubspace {
        let w = &self.v.w[0];
        let Some((wlo, _)) = w.bounds() else { return start };
        let lo = self.bounds(true);
        let ranges: Vec<(i64, i64)> = q.iter().zip(&lo).map(|(&x, r)| (0, (x - r.0).max(0))).collect();
        let mut acc = start;
        for j in box_iter(&ranges) {
            let s = total(&j);
            if s == 0 || n - s - 1 < wlo {
                continue;
            }
            let idx: MultiIndex = q.iter().zip(&j).map(|(a, b)| a - b).collect();
            acc = acc.sum(&self.bold_w(true, &idx, n - s - 1));
            if goal.is_some_and(|g| g.is_subspace_of(&acc)) {
                break;
            }
        }
        acc
    }

    /// `𝐀_I^{𝐩,𝐪}`.
    fn splitting_piece(&mut self, p: &[i64], q: &[i64]) -> CSubspace {
        let n = total(p) + total(q);
        let left = self.bold_w(false, p, n);
        if left.is_zero() {
            return left;
        }
        let start = self.bold_w(true, q, n);
        let right = self.tail_sum(q, n, start, Some(&left));
        left.intersect(&right)
    }

    fn splitting(&mut self) -> BTreeMap<Bidegree, CSubspace> {
        let mut out = BTreeMap::new();
        if self.v.dim == 0 {
            return out;
        }
        let (bf, bb) = (self.bounds(false), self.bounds(true));
        for n in self.v.w[0].jumps() {
            // Each piece maps injectively to (𝐅^𝐩 ∩ F̄𝐅^𝐪)Gr^W_n, so pairs whose graded images meet trivially are skipped.
            let gr = quotient_map(&self.v.w[0].get(n), &self.v.w[0].get(n - 1)).expect("W is monotone");
            for p in box_iter(&bf) {
                let fp = gr.project_subspace(&self.bold_w(false, &p, n));
                if fp.is_zero() {
                    continue;
                }
                for q in box_with_sum(&bb, n - total(&p)) {
                    if fp.intersect(&gr.project_subspace(&self.bold_w(true, &q, n))).is_zero() {
                        continue;
                    }
                    let a = self.splitting_piece(&p, &q);
                    if !a.is_zero() {
                        out.insert(Bidegree::new(p.clone(), q), a);
                    }
                }
            }
        }
        out
    }
}

/// `p` moved into `[lo, hi + 1]` per coordinate; a descending filtration is constant outside.
fn clamp(p: &[i64], b: &[(i64, i64)]) -> MultiIndex {
    p.iter().zip(b).map(|(&x, r)| x.clamp(r.0, r.1 + 1)).collect()
}

/// Failures of `𝐅^𝐩 = ⊕_{𝐫≥𝐩, |𝐫+𝐬|=n} 𝐅^𝐫 ∩ F̄𝐅^𝐬` on a space of dimension `dim`, where
/// `fil(bar, 𝐩)` evaluates `𝐅^𝐩` or `F̄𝐅^𝐩` and `bf`, `bb` bound where they change.
/// Returns the failing `𝐩` and whether the total decomposition of the space holds.
fn opposition_failures(
    dim: usize,
    n: i64,
    bf: &[(i64, i64)],
    bb: &[(i64, i64)],
    mut fil: impl FnMut(bool, &[i64]) -> CSubspace,
) -> (Vec<MultiIndex>, bool) {
    let hf: i64 = bf.iter().map(|r| r.1).sum();
    let hb: i64 = bb.iter().map(|r| r.1).sum();
    let mut cache: HashMap<(bool, MultiIndex), CSubspace> = HashMap::new();
    let mut get = |bar: bool, p: &[i64]| -> CSubspace {
        let key = (bar, clamp(p, if bar { bb } else { bf }));
        cache.entry(key).or_insert_with_key(|k| fil(k.0, &k.1)).clone()
    };
    // Below `rlo` every term with |𝐫+𝐬| = n has some s_μ above its range, hence vanishes.
    let rlo: Vec<i64> = bf.iter().map(|r| r.0.min(n - (hf - r.1) - hb)).collect();
    let g = bf.len();
    // Each term lies in the intersection of its one-coordinate relaxations; a depth-first
    // search over coordinates discards clamped index pairs whose relaxation is already zero.
    let lo_f: Vec<i64> = bf.iter().map(|r| r.0).collect();
    let lo_b: Vec<i64> = bb.iter().map(|r| r.0).collect();
    let mut axis_pairs: Vec<Vec<(i64, i64, CSubspace)>> = Vec::with_capacity(g);
    for mu in 0..g {
        let mut pairs = Vec::new();
        for x in bf[mu].0..=bf[mu].1 {
            let mut pf = lo_f.clone();
            pf[mu] = x;
            let fx = get(false, &pf);
            for y in bb[mu].0..=bb[mu].1 {
                let mut pb = lo_b.clone();
                pb[mu] = y;
                let m = fx.intersect(&get(true, &pb));
                if !m.is_zero() {
                    pairs.push((x, y, m));
                }
            }
        }
        axis_pairs.push(pairs);
    }
    let reach: Vec<i64> = (0..=g).map(|mu| bf[mu..].iter().zip(&bb[mu..]).map(|(a, b)| a.1 + b.1).sum()).collect();
    let mut leaves: Vec<(MultiIndex, MultiIndex)> = Vec::new();
    let mut stack = vec![(Vec::new(), Vec::new(), Subspace::full(dim))];
    while let Some((r, s, acc)) = stack.pop() {
        let mu = r.len();
        if mu == g {
            leaves.push((r, s));
            continue;
        }
        let sofar = total(&r) + total(&s);
        for (x, y, m) in &axis_pairs[mu] {
            if sofar + x + y + reach[mu + 1] < n {
                continue;
            }
            let next = acc.intersect(m);
            if !next.is_zero() {
                let (mut r, mut s) = (r.clone(), s.clone());
                r.push(*x);
                s.push(*y);
                stack.push((r, s, next));
            }
        }
    }
    leaves.sort();
    let mut terms: Vec<(MultiIndex, usize)> = Vec::new();
    let mut spaces: Vec<CSubspace> = Vec::new();
    for (rc, sc) in leaves {
        let t = get(false, &rc).intersect(&get(true, &sc));
        if t.is_zero() {
            continue;
        }
        // Every (𝐫, 𝐬) with |𝐫+𝐬| = n that clamps to (rc, sc) contributes a copy of `t`.
        let rranges: Vec<(i64, i64)> =
            (0..g).map(|mu| if rc[mu] > bf[mu].0 { (rc[mu], rc[mu]) } else { (rlo[mu], bf[mu].0) }).collect();
        let k = spaces.len();
        let mut used = false;
        for r in box_iter(&rranges) {
            let rest = n - total(&r);
            let sranges: Vec<(i64, i64)> = (0..g)
                .map(|mu| if sc[mu] > bb[mu].0 { (sc[mu], sc[mu]) } else { (rest - (hb - bb[mu].1), bb[mu].0) })
                .collect();
            for _ in box_with_sum(&sranges, rest) {
                terms.push((r.clone(), k));
                used = true;
            }
        }
        if used {
            spaces.push(t);
        }
    }
    // Sums are memoised by the multiset of chosen terms.
    let mut sums: HashMap<Vec<usize>, (usize, CSubspace)> = HashMap::new();
    let mut sum_of = |chosen: Vec<usize>| -> (usize, CSubspace) {
        sums.entry(chosen)
            .or_insert_with_key(|c| {
                let d = c.iter().map(|&k| spaces[k].dim()).sum();
                (d, Subspace::sum_all(dim, c.iter().map(|&k| &spaces[k])))
            })
            .clone()
    };
    let pbox: Vec<(i64, i64)> = rlo.iter().zip(bf).map(|(&a, r)| (a, r.1 + 1)).collect();
    let mut failures = Vec::new();
    for p in box_iter(&pbox) {
        let lhs = get(false, &p);
        let mut chosen: Vec<usize> =
            terms.iter().filter(|(r, _)| r.iter().zip(&p).all(|(a, b)| a >= b)).map(|&(_, k)| k).collect();
        chosen.sort_unstable();
        let (d, sum) = sum_of(chosen);
        if d != sum.dim() || sum != lhs {
            failures.push(p);
        }
    }
    let mut all: Vec<usize> = terms.iter().map(|&(_, k)| k).collect();
    all.sort_unstable();
    let (d, sum) = sum_of(all);
    (failures, d == dim && sum.is_full())
}

/// Whether `𝐅^𝐩 ∩ F̄𝐅^𝐪 = 0` whenever `|𝐩+𝐪| > n`.
fn vanishing_holds(
    n: i64,
    bf: &[(i64, i64)],
    bb: &[(i64, i64)],
    mut fil: impl FnMut(bool, &[i64]) -> CSubspace,
) -> bool {
    let g = bf.len();
    let ranges: Vec<(i64, i64)> = bf.iter().chain(bb).copied().collect();
    let lo: i64 = ranges.iter().map(|r| r.0).sum();
    let target = (n + 1).max(lo);
    box_with_sum(&ranges, target).iter().all(|pq| fil(false, &pq[..g]).intersect(&fil(true, &pq[g..])).is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureWeakFailure {
    pub subset: Subset,
    pub p: MultiIndex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureWeakReport {
    pub valid: bool,
    pub failures: Vec<PureWeakFailure>,
    /// `V = ⊕_{|𝐩+𝐪|=n} 𝐅_I^𝐩 ∩ F̄𝐅_I^𝐪` for every `I`.
    pub decomposes: bool,
    /// `𝐅_I^𝐩 ∩ F̄𝐅_I^𝐪 = 0` for `|𝐩+𝐪| > n` and every `I`.
    pub vanishing: bool,
}

/// Checks the pure weak condition of weight `n`; weight filtrations, if any, are ignored.
pub fn check_pure_weak(v: &MultiFiltered, n: i64) -> Result<PureWeakReport> {
    check_pure_weak_limited(v, n, DEFAULT_MAX_G)
}

pub fn check_pure_weak_limited(v: &MultiFiltered, n: i64, limit: usize) -> Result<PureWeakReport> {
    let subsets = Subset::all(v.g(), limit)?;
    let mut report = PureWeakReport { valid: true, failures: Vec::new(), decomposes: true, vanishing: true };
    if v.dim == 0 {
        return Ok(report);
    }
    for i in subsets {
        let mut ctx = Plectic::new(v, i);
        let (bf, bb) = (ctx.bounds(false), ctx.bounds(true));
        let (fails, dec) = opposition_failures(v.dim, n, &bf, &bb, |bar, p| ctx.bold(bar, p));
        report.failures.extend(fails.into_iter().map(|p| PureWeakFailure { subset: i, p }));
        report.decomposes &= dec;
        report.vanishing &= vanishing_holds(n, &bf, &bb, |bar, p| ctx.bold(bar, p));
    }
    report.valid = report.failures.is_empty() && report.decomposes && report.vanishing;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "a",
            Condition::B => "b",
            Condition::C => "c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeakFailure {
    /// `(a_I)` fails on `Gr^W_n` at `𝐩`.
    Graded { n: i64, p: MultiIndex },
    /// `(b_I)`: the total structure is not mixed Hodge.
    Total { report: MhsReport },
    /// `(c_I)` fails at `(𝐩, 𝐪)`.
    Inclusion { p: MultiIndex, q: MultiIndex },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub condition: Condition,
    pub subset: Subset,
    pub holds: bool,
    pub failures: Vec<WeakFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeakReport {
    pub valid: bool,
    /// Names of non-monotone filtrations; when nonempty no condition is evaluated.
    pub bad_filtrations: Vec<String>,
    pub verdicts: Vec<ConditionVerdict>,
}

impl WeakReport {
    pub fn verdict(&self, c: Condition, i: &Subset) -> Option<&ConditionVerdict> {
        self.verdicts.iter().find(|v| v.condition == c && &v.subset == i)
    }
}

/// Conditions `(a_I)`, `(b_I)`, `(c_I)` for every `I`.
pub fn check_weak(v: &MultiFiltered) -> Result<WeakReport> {
    check_weak_limited(v, DEFAULT_MAX_G)
}

pub fn check_weak_limited(v: &MultiFiltered, limit: usize) -> Result<WeakReport> {
    v.weight()?;
    let subsets = Subset::all(v.g(), limit)?;
    let bad = v.bad_filtrations();
    if !bad.is_empty() {
        return Ok(WeakReport { valid: false, bad_filtrations: bad, verdicts: Vec::new() });
    }
    let mut verdicts = Vec::new();
    for i in subsets {
        let mut ctx = Plectic::new(v, i);
        for (c, failures) in [
            (Condition::A, condition_a(&mut ctx)),
            (Condition::B, condition_b(&mut ctx)),
            (Condition::C, condition_c(&mut ctx)),
        ] {
            verdicts.push(ConditionVerdict { condition: c, subset: i, holds: failures.is_empty(), failures });
        }
    }
    Ok(WeakReport { valid: verdicts.iter().all(|v| v.holds), bad_filtrations: Vec::new(), verdicts })
}

fn condition_a(ctx: &mut Plectic) -> Vec<WeakFailure> {
    let v = ctx.v;
    if v.dim == 0 {
        return Vec::new();
    }
    let (bf, bb) = (ctx.bounds(false), ctx.bounds(true));
    let mut out = Vec::new();
    for n in v.w[0].jumps() {
        let q = quotient_map(&v.w[0].get(n), &v.w[0].get(n - 1)).expect("W is monotone");
        let (fails, _) = opposition_failures(q.dim(), n, &bf, &bb, |bar, p| {
            q.project_subspace(&ctx.bold_w(bar, p, n))
        });
        out.extend(fails.into_iter().map(|p| WeakFailure::Graded { n, p }));
    }
    out
}

fn condition_b(ctx: &mut Plectic) -> Vec<WeakFailure> {
    let (f, fbar) = (ctx.total(false), ctx.total(true));
    let m = MixedHodge::new(ctx.v.w[0].clone(), f, fbar).expect("shapes checked");
    let report = hodge1::validate_mhs(&m);
    if report.valid {
        Vec::new()
    } else {
        vec![WeakFailure::Total { report }]
    }
}

fn condition_c(ctx: &mut Plectic) -> Vec<WeakFailure> {
    let v = ctx.v;
    let Some((wlo, whi)) = v.w[0].bounds() else { return Vec::new() };
    let (bf, bb) = (ctx.bounds(false), ctx.bounds(true));
    let hf: i64 = bf.iter().map(|r| r.1).sum();
    let hb: i64 = bb.iter().map(|r| r.1).sum();
    let mut out = Vec::new();
    // The verdict only depends on the clamped indices.
    let mut seen: HashMap<(MultiIndex, MultiIndex, i64), bool> = HashMap::new();
    // Outside wlo < n ≤ whi either W_{n−1} = 0 or W_{n−1} = V and the inclusion is immediate.
    for n in wlo + 1..=whi {
        if v.w[0].get(n) == v.w[0].get(n - 1) {
            continue;
        }
        let gr = quotient_map(&v.w[0].get(n), &v.w[0].get(n - 1)).expect("W is monotone");
        let mut images: HashMap<(bool, MultiIndex), CSubspace> = HashMap::new();
        let mut image = |ctx: &mut Plectic, bar: bool, p: &[i64]| -> CSubspace {
            let key = (bar, clamp(p, if bar { &bb } else { &bf }));
            images.entry(key).or_insert_with_key(|k| gr.project_subspace(&ctx.bold_w(k.0, &k.1, n))).clone()
        };
        let pbox: Vec<(i64, i64)> = bf.iter().map(|r| (n - (hf - r.1) - hb, r.1)).collect();
        for p in box_iter(&pbox) {
            let fp = ctx.bold_w(false, &p, n);
            let rest = n - total(&p);
            let qbox: Vec<(i64, i64)> = bb.iter().map(|b| (rest - (hb - b.1), b.1)).collect();
            let fp1 = ctx.bold_w(false, &p, n - 1);
            for q in box_with_sum(&qbox, rest) {
                let key = (clamp(&p, &bf), clamp(&q, &bb), n);
                let holds = match seen.get(&key) {
                    Some(&h) => h,
                    None => {
                        // The left side exceeds 𝐅^𝐩∩W_{n−1} + F̄𝐅^𝐪∩W_{n−1} only by the part of
                        // 𝐅^𝐩Gr_n ∩ F̄𝐅^𝐪Gr_n not lifted by 𝐅^𝐩 ∩ F̄𝐅^𝐪 ∩ W_n.
                        let gp = image(ctx, false, &p);
                        let immediate = gp.is_zero() || gp.intersect(&image(ctx, true, &q)).is_zero();
                        let h = immediate || {
                            let lhs = fp.sum(&ctx.bold_w(true, &q, n)).intersect(&v.w[0].get(n - 1));
                            let start = fp1.sum(&ctx.bold_w(true, &q, n - 1));
                            lhs.is_subspace_of(&ctx.tail_sum(&q, n, start, Some(&lhs)))
                        };
                        seen.insert(key, h);
                        h
                    }
                };
                if !holds {
                    out.push(WeakFailure::Inclusion { p: p.clone(), q });
                }
            }
        }
    }
    out
}

/// A validated mixed weak plectic structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakPlectic(MultiFiltered);

impl WeakPlectic {
    pub fn new(v: MultiFiltered) -> Result<Self> {
        let r = check_weak(&v)?;
        if !r.valid {
            return Err(Error::Invalid(describe_weak(&r)));
        }
        Ok(WeakPlectic(v))
    }

    pub fn into_inner(self) -> MultiFiltered {
        self.0
    }
}

impl Deref for WeakPlectic {
    type Target = MultiFiltered;
    fn deref(&self) -> &MultiFiltered {
        &self.0
    }
}

fn describe_weak(r: &WeakReport) -> String {
    if !r.bad_filtrations.is_empty() {
        return format!("non-monotone filtrations: {}", r.bad_filtrations.join(", "));
    }
    let failed: Vec<String> =
        r.verdicts.iter().filter(|v| !v.holds).map(|v| format!("({}_{})", v.condition, v.subset)).collect();
    format!("not mixed weak plectic: {}", failed.join(" "))
}

/// The plectic Deligne splitting `{𝐀_I^{𝐩,𝐪}}`.
pub fn plectic_splitting(v: &WeakPlectic, i: &Subset) -> Result<BTreeMap<Bidegree, CSubspace>> {
    check_g(v, i, &vec![0; v.g()])?;
    Ok(Plectic::new(v, *i).splitting())
}

/// `T^g`: the total weight `W_n = Σ_{|𝐧|=n} ∩_μ W^μ_{n_μ}`.
pub fn total_weight(v: &MultiFiltered) -> Result<MultiFiltered> {
    if v.l() != v.g() {
        return Err(Error::VariableCount(v.g(), v.l()));
    }
    let dim = v.dim;
    let bounds: Option<Vec<(i64, i64)>> = v.w.iter().map(AscFiltration::bounds).collect();
    let w = match bounds {
        Some(b) if dim > 0 && !b.is_empty() => {
            let lo: i64 = b.iter().map(|r| r.0).sum();
            let hi: i64 = b.iter().map(|r| r.1).sum();
            AscFiltration::from_fn(dim, lo - 1, hi, |n| {
                let parts: Vec<CSubspace> = box_with_sum(&b, n)
                    .iter()
                    .map(|k| Subspace::intersect_all(dim, &k.iter().enumerate().map(|(mu, &x)| v.w[mu].get(x)).collect::<Vec<_>>()))
                    .collect();
                Subspace::sum_all(dim, &parts)
            })
        }
        // g = 0: the trivial weight 0 structure.
        _ => AscFiltration::pure(dim, 0),
    };
    Ok(MultiFiltered { dim, w: vec![w], f: v.f.clone(), fbar: v.fbar.clone() })
}

/// `P_I`: `W^{I,μ}_n = Σ_{p_μ+q_μ ≤ n} 𝐀_I^{𝐩,𝐪}`.
pub fn partial_weights(v: &WeakPlectic, i: &Subset) -> Result<MultiFiltered> {
    let a = plectic_splitting(v, i)?;
    Ok(weights_from_splitting(v, &a))
}

fn weights_from_splitting(v: &MultiFiltered, a: &BTreeMap<Bidegree, CSubspace>) -> MultiFiltered {
    let dim = v.dim;
    let w = (0..v.g())
        .map(|mu| {
            let ws: Vec<i64> = a.keys().map(|b| b.p[mu] + b.q[mu]).collect();
            let (lo, hi) = (ws.iter().min().copied().unwrap_or(0), ws.iter().max().copied().unwrap_or(0));
            AscFiltration::from_fn(dim, lo - 1, hi, |n| {
                Subspace::sum_all(dim, a.iter().filter(|(b, _)| b.p[mu] + b.q[mu] <= n).map(|(_, s)| s))
            })
        })
        .collect();
    MultiFiltered { dim, w, f: v.f.clone(), fbar: v.fbar.clone() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmhsMismatch {
    /// One-based.
    pub mu: usize,
    pub n: i64,
    /// The subset whose partial weight differs from that of `∅`.
    pub subset: Subset,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PmhsReport {
    pub valid: bool,
    pub mismatches: Vec<PmhsMismatch>,
}

/// Whether `P_I(V)` is independent of `I`.
pub fn check_pmhs(v: &WeakPlectic) -> Result<PmhsReport> {
    let g = v.g();
    let subsets = Subset::all(g, DEFAULT_MAX_G)?;
    let base = partial_weights(v, &Subset::empty(g))?;
    let mut mismatches = Vec::new();
    for i in subsets.into_iter().skip(1) {
        let other = partial_weights(v, &i)?;
        for mu in 0..g {
            let (a, b) = (base.w(mu), other.w(mu));
            let mut idx: Vec<i64> = a.jumps().into_iter().chain(b.jumps()).collect();
            idx.sort_unstable();
            idx.dedup();
            for n in idx {
                if a.get(n) != b.get(n) {
                    mismatches.push(PmhsMismatch { mu: mu + 1, n, subset: i });
                }
            }
        }
    }
    Ok(PmhsReport { valid: mismatches.is_empty(), mismatches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthFailure {
    /// One-based index of the structure whose filtration step is examined.
    pub mu: usize,
    /// One-based index of the structure induced on that step; `None` for `(V, W^μ, F_μ, F̄_μ)` itself.
    pub nu: Option<usize>,
    /// `"W"`, `"F"` or `"Fbar"`, empty when `nu` is `None`.
    pub filtration: String,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthReport {
    pub valid: bool,
    pub bad_filtrations: Vec<String>,
    pub failures: Vec<OrthFailure>,
}

/// Checks that each `(V, W^μ, F_μ, F̄_μ)` is mixed Hodge and that every filtration step of
/// the μ-th data is mixed Hodge for the induced ν-th filtrations.
pub fn validate_orth(v: &MultiFiltered) -> Result<OrthReport> {
    if v.l() != v.g() {
        return Err(Error::VariableCount(v.g(), v.l()));
    }
    let bad = v.bad_filtrations();
    if !bad.is_empty() {
        return Ok(OrthReport { valid: false, bad_filtrations: bad, failures: Vec::new() });
    }
    let g = v.g();
    let mut failures = Vec::new();
    for mu in 0..g {
        let c = v.component(mu);
        if !hodge1::validate_mhs(&c).valid {
            failures.push(OrthFailure { mu: mu + 1, nu: None, filtration: String::new(), index: 0 });
        }
    }
    for mu in 0..g {
        let steps: Vec<(&str, i64, CSubspace)> = v.w[mu]
            .jumps()
            .into_iter()
            .map(|n| ("W", n, v.w[mu].get(n)))
            .chain(v.f[mu].jumps().into_iter().map(|p| ("F", p, v.f[mu].get(p))))
            .chain(v.fbar[mu].jumps().into_iter().map(|p| ("Fbar", p, v.fbar[mu].get(p))))
            .filter(|(_, _, s)| !s.is_zero() && !s.is_full())
            .collect();
        for (name, idx, s) in steps {
            for nu in (0..g).filter(|&nu| nu != mu) {
                if !hodge1::validate_mhs(&v.component(nu).restrict_to(&s)).valid {
                    failures.push(OrthFailure { mu: mu + 1, nu: Some(nu + 1), filtration: name.into(), index: idx });
                }
            }
        }
    }
    Ok(OrthReport { valid: failures.is_empty(), bad_filtrations: Vec::new(), failures })
}

/// A validated orthogonal family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthFamily(MultiFiltered);

impl OrthFamily {
    pub fn new(v: MultiFiltered) -> Result<Self> {
        let r = validate_orth(&v)?;
        if !r.valid {
            return Err(Error::Invalid(format!("not an orthogonal family: {r:?}")));
        }
        Ok(OrthFamily(v))
    }

    pub fn into_inner(self) -> MultiFiltered {
        self.0
    }
}

impl Deref for OrthFamily {
    type Target = MultiFiltered;
    fn deref(&self) -> &MultiFiltered {
        &self.0
    }
}

/// `A_{I,μ}`: the Deligne splitting of `(V, W^μ, F_μ, F̄_μ)` for `μ ∉ I`, and for `μ ∈ I`
/// that of `(V, W^μ, F̄_μ, F_μ)` (so the first index follows `F̄_μ`).  `mu` is zero-based.
pub fn partial_splitting(v: &OrthFamily, i: &Subset, mu: usize) -> Result<Splitting> {
    if mu >= v.g() {
        return Err(Error::OutOfRange(format!("μ = {} but g = {}", mu + 1, v.g())));
    }
    let c = v.component(mu);
    if i.contains(mu) {
        hodge1::conjugate_splitting(&c)
    } else {
        hodge1::deligne_splitting(&c)
    }
}

/// `∩_μ A_{I,μ}^{p_μ,q_μ}` over all nonzero combinations.
pub fn intersected_partial_splittings(v: &OrthFamily, i: &Subset) -> Result<BTreeMap<Bidegree, CSubspace>> {
    let per_mu = (0..v.g()).map(|mu| partial_splitting(v, i, mu)).collect::<Result<Vec<_>>>()?;
    Ok(intersect_gradings(v.dim, &per_mu))
}

fn intersect_gradings(dim: usize, per_mu: &[Splitting]) -> BTreeMap<Bidegree, CSubspace> {
    let mut acc = vec![(Vec::new(), Vec::new(), Subspace::full(dim))];
    for split in per_mu {
        let mut next = Vec::new();
        for (p, q, s) in &acc {
            for (&(a, b), piece) in split {
                let x = s.intersect(piece);
                if !x.is_zero() {
                    let (mut p, mut q) = (p.clone(), q.clone());
                    p.push(a);
                    q.push(b);
                    next.push((p, q, x));
                }
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(p, q, s)| (Bidegree::new(p, q), s)).collect()
}

/// `φ^g`: `W^μ_n = ⊕_{p_μ+q_μ≤n} U^{𝐩,𝐪}`, `F_μ^p = t_μ(⊕_{r_μ≥p})`, `F̄_μ^q = t_μ⁻¹(⊕_{s_μ≥q})`.
pub fn phi_g(u: &PlecticRep) -> Result<OrthFamily> {
    if let Some(v) = u.validate().violation {
        return Err(Error::Invalid(format!("{v:?}")));
    }
    let comps: Vec<MixedHodge> = (0..u.g()).map(|mu| hodge1::phi_component(u, mu)).collect();
    Ok(OrthFamily(MultiFiltered {
        dim: u.dim(),
        w: comps.iter().map(|c| c.w().clone()).collect(),
        f: comps.iter().map(|c| c.f().clone()).collect(),
        fbar: comps.iter().map(|c| c.fbar().clone()).collect(),
    }))
}

/// `ψ^g`, written on `V`: the one-variable construction for each μ, with the pieces
/// intersected.  `φ^g(ψ^g(V)) = V` holds literally.
pub fn psi_g(v: &OrthFamily) -> Result<PlecticRep> {
    let mut per_mu = Vec::with_capacity(v.g());
    let mut ts = Vec::with_capacity(v.g());
    for mu in 0..v.g() {
        let (pieces, t) = hodge1::psi_pieces(&v.component(mu))?;
        per_mu.push(pieces);
        ts.push(t);
    }
    PlecticRep::checked(v.g(), v.dim, intersect_gradings(v.dim, &per_mu), ts)
}

fn tensor_asc(a: &AscFiltration<Scalar>, b: &AscFiltration<Scalar>) -> AscFiltration<Scalar> {
    let dim = a.ambient() * b.ambient();
    let (Some((alo, ahi)), Some((blo, bhi))) = (a.bounds(), b.bounds()) else {
        return AscFiltration::from_steps(dim, []).unwrap();
    };
    AscFiltration::from_fn(dim, alo + blo - 1, ahi + bhi, |n| {
        let parts: Vec<CSubspace> = (alo..=ahi).map(|k| a.get(k).tensor(&b.get(n - k))).collect();
        Subspace::sum_all(dim, &parts)
    })
}

fn tensor_desc(a: &DescFiltration<Scalar>, b: &DescFiltration<Scalar>) -> DescFiltration<Scalar> {
    let dim = a.ambient() * b.ambient();
    let (Some((alo, ahi)), Some((blo, bhi))) = (a.bounds(), b.bounds()) else {
        return DescFiltration::from_steps(dim, []).unwrap();
    };
    DescFiltration::from_fn(dim, alo + blo, ahi + bhi + 1, |p| {
        let parts: Vec<CSubspace> = (alo..=ahi).map(|k| a.get(k).tensor(&b.get(p - k))).collect();
        Subspace::sum_all(dim, &parts)
    })
}

/// `{α : α(S) ⊆ T}` inside `Hom(U, V)` with row-major index `i·dim U + j`.
fn maps_into(s: &CSubspace, t: &CSubspace) -> CSubspace {
    let du = s.ambient();
    let ann = t.annihilator();
    let mut rows = Vec::with_capacity(ann.dim() * s.dim());
    for a in ann.basis() {
        for b in s.basis() {
            rows.push(a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect::<Vec<Scalar>>());
        }
    }
    let constraints = CMatrix::from_rows_with_cols(rows, du * t.ambient()).expect("rows have the right length");
    constraints.kernel()
}

fn hom_asc(u: &AscFiltration<Scalar>, v: &AscFiltration<Scalar>) -> AscFiltration<Scalar> {
    let dim = u.ambient() * v.ambient();
    let (Some((ulo, uhi)), Some((vlo, vhi))) = (u.bounds(), v.bounds()) else {
        return AscFiltration::pure(dim, 0);
    };
    let jumps = u.jumps();
    AscFiltration::from_fn(dim, vlo - uhi - 1, vhi - ulo, |n| {
        let parts: Vec<CSubspace> = jumps.iter().map(|&m| maps_into(&u.get(m), &v.get(m + n))).collect();
        Subspace::intersect_all(dim, &parts)
    })
}

fn hom_desc(u: &DescFiltration<Scalar>, v: &DescFiltration<Scalar>) -> DescFiltration<Scalar> {
    let dim = u.ambient() * v.ambient();
    let (Some((ulo, uhi)), Some((vlo, vhi))) = (u.bounds(), v.bounds()) else {
        return DescFiltration::pure(dim, 0);
    };
    // F^m U is constant on [j−1, …) between jumps; the binding constraint is at m = j − 1.
    let ms: Vec<i64> = u.jumps().iter().map(|j| j - 1).collect();
    DescFiltration::from_fn(dim, vlo - uhi - 1, vhi - ulo + 1, |p| {
        let parts: Vec<CSubspace> = ms.iter().map(|&m| maps_into(&u.get(m), &v.get(m + p))).collect();
        Subspace::intersect_all(dim, &parts)
    })
}

fn check_same_shape(a: &MultiFiltered, b: &MultiFiltered) -> Result<()> {
    if a.g() != b.g() {
        return Err(Error::VariableCount(a.g(), b.g()));
    }
    if a.l() != b.l() {
        return Err(Error::VariableCount(a.l(), b.l()));
    }
    Ok(())
}

/// Tensor product: convolution of every filtration; works for any `l`.
pub fn tensor_pmhs(a: &MultiFiltered, b: &MultiFiltered) -> Result<MultiFiltered> {
    check_same_shape(a, b)?;
    MultiFiltered::new(
        a.dim * b.dim,
        a.w.iter().zip(&b.w).map(|(x, y)| tensor_asc(x, y)).collect(),
        a.f.iter().zip(&b.f).map(|(x, y)| tensor_desc(x, y)).collect(),
        a.fbar.iter().zip(&b.fbar).map(|(x, y)| tensor_desc(x, y)).collect(),
    )
}

/// Internal hom on `Hom(U, V)` in row-major coordinates; works for any `l`.
pub fn hom_pmhs(u: &MultiFiltered, v: &MultiFiltered) -> Result<MultiFiltered> {
    check_same_shape(u, v)?;
    MultiFiltered::new(
        u.dim * v.dim,
        u.w.iter().zip(&v.w).map(|(x, y)| hom_asc(x, y)).collect(),
        u.f.iter().zip(&v.f).map(|(x, y)| hom_desc(x, y)).collect(),
        u.fbar.iter().zip(&v.fbar).map(|(x, y)| hom_desc(x, y)).collect(),
    )
}

/// `ℂ(𝐧)` as an `l = g` orthogonal family.
pub fn tate_orth(n: &[i64]) -> OrthFamily {
    phi_g(&crate::repcore::tate(n)).expect("Tate objects are valid")
}

/// `ℂ(𝐧)` as an `l = 1` object: weight `−2|𝐧|`, `F_μ^{−n_μ} = F̄_μ^{−n_μ} = V`.
pub fn tate_pmhs(n: &[i64]) -> MultiFiltered {
    total_weight(&tate_orth(n)).expect("l = g")
}
