//! JSON documents.
//!
//! One document holds one object.  Scalars are strings such as `"1/2+3/4*i"`, matrices are
//! lists of rows, subspaces are lists of basis rows and filtrations are lists of
//! `{"index", "basis"}` steps at their jumps.  Output is canonical: pieces and steps are
//! sorted and bases are in reduced echelon form, so equal objects serialize identically.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{AscFiltration, CMatrix, CSubspace, DescFiltration, Scalar, Subspace};
use crate::extcalc::RepComplex;
use crate::plectic::MultiFiltered;
use crate::realforms::{RealPlecticRep, RealStructure};
use crate::repcore::{Bidegree, PlecticRep};

pub type Rows = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    pub basis: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub index: i64,
    pub basis: Rows,
}

pub type Metadata = BTreeMap<String, String>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub g: usize,
    pub dim: usize,
    pub pieces: Vec<PieceDoc>,
    pub t: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilteredDoc {
    pub g: usize,
    pub dim: usize,
    #[serde(rename = "W")]
    pub w: Vec<Vec<StepDoc>>,
    #[serde(rename = "F")]
    pub f: Vec<Vec<StepDoc>>,
    #[serde(rename = "Fbar")]
    pub fbar: Vec<Vec<StepDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub g: usize,
    pub lo: i64,
    pub hi: i64,
    /// Real representations; `sigma` defaults to coordinate conjugation.
    pub objects: Vec<RepDoc>,
    pub d: Vec<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

/// Which validator applies to a filtered document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FilteredKind {
    /// Any `Fil^l_g` object; only monotonicity is checked.
    Filtered,
    /// `l = g` orthogonal family.
    Orth,
    /// `l = 1` mixed weak plectic structure.
    Weak,
    /// `l = 1` mixed plectic Hodge structure.
    Pmhs,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Rep(RepDoc),
    RealRep(RepDoc),
    Filtered(FilteredKind, FilteredDoc),
    Complex(ComplexDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Rep(_) => "rep",
            Document::RealRep(_) => "real-rep",
            Document::Filtered(FilteredKind::Filtered, _) => "filtered",
            Document::Filtered(FilteredKind::Orth, _) => "orth",
            Document::Filtered(FilteredKind::Weak, _) => "weak",
            Document::Filtered(FilteredKind::Pmhs, _) => "pmhs",
            Document::Complex(_) => "complex",
        }
    }

    pub fn metadata(&self) -> Option<&Metadata> {
        match self {
            Document::Rep(d) | Document::RealRep(d) => d.metadata.as_ref(),
            Document::Filtered(_, d) => d.metadata.as_ref(),
            Document::Complex(d) => d.metadata.as_ref(),
        }
    }

    pub fn with_metadata(mut self, m: Metadata) -> Self {
        let slot = match &mut self {
            Document::Rep(d) | Document::RealRep(d) => &mut d.metadata,
            Document::Filtered(_, d) => &mut d.metadata,
            Document::Complex(d) => &mut d.metadata,
        };
        *slot = Some(m);
        self
    }

    pub fn g(&self) -> usize {
        match self {
            Document::Rep(d) | Document::RealRep(d) => d.g,
            Document::Filtered(_, d) => d.g,
            Document::Complex(d) => d.g,
        }
    }

    pub fn from_rep(u: &PlecticRep) -> Self {
        Document::Rep(rep_doc(u, None))
    }

    pub fn from_real_rep(u: &RealPlecticRep) -> Self {
        Document::RealRep(rep_doc(&u.rep, Some(&u.sigma)))
    }

    pub fn from_filtered(kind: FilteredKind, v: &MultiFiltered, sigma: Option<&RealStructure>) -> Self {
        Document::Filtered(kind, filtered_doc(v, sigma))
    }

    pub fn from_complex(c: &RepComplex) -> Self {
        Document::Complex(ComplexDoc {
            g: c.g().unwrap_or(0),
            lo: c.lo(),
            hi: c.hi(),
            objects: c.objects().iter().map(|u| rep_doc(&u.rep, Some(&u.sigma))).collect(),
            d: c.differentials().iter().map(CMatrix::rows_vec).collect(),
            metadata: None,
        })
    }

    /// The representation of a `rep` or `real-rep` document.
    pub fn to_rep(&self) -> Result<PlecticRep> {
        match self {
            Document::Rep(d) | Document::RealRep(d) => parse_rep(d),
            _ => Err(self.wrong_kind("rep")),
        }
    }

    /// A real representation; a plain `rep` gets `σ = conj`.
    pub fn to_real_rep(&self) -> Result<RealPlecticRep> {
        match self {
            Document::Rep(d) | Document::RealRep(d) => parse_real_rep(d),
            _ => Err(self.wrong_kind("real-rep")),
        }
    }

    pub fn to_filtered(&self) -> Result<(FilteredKind, MultiFiltered, Option<RealStructure>)> {
        match self {
            Document::Filtered(k, d) => {
                let (v, s) = parse_filtered(d)?;
                Ok((*k, v, s))
            }
            _ => Err(self.wrong_kind("filtered")),
        }
    }

    pub fn to_complex(&self) -> Result<RepComplex> {
        match self {
            Document::Complex(d) => parse_complex(d),
            _ => Err(self.wrong_kind("complex")),
        }
    }

    fn wrong_kind(&self, want: &str) -> Error {
        Error::Malformed(format!("expected a {want} document, found {}", self.kind()))
    }
}

fn rep_doc(u: &PlecticRep, sigma: Option<&RealStructure>) -> RepDoc {
    RepDoc {
        g: u.g(),
        dim: u.dim(),
        pieces: u
            .pieces()
            .iter()
            .map(|(b, s)| PieceDoc { p: b.p.clone(), q: b.q.clone(), basis: s.basis().to_vec() })
            .collect(),
        t: u.ts().iter().map(CMatrix::rows_vec).collect(),
        sigma: sigma.map(|s| s.matrix().rows_vec()),
        metadata: None,
    }
}

fn asc_doc(w: &AscFiltration<Scalar>) -> Vec<StepDoc> {
    w.normalized().steps().iter().map(|(&index, s)| StepDoc { index, basis: s.basis().to_vec() }).collect()
}

fn desc_doc(f: &DescFiltration<Scalar>) -> Vec<StepDoc> {
    f.normalized().steps().iter().map(|(&index, s)| StepDoc { index, basis: s.basis().to_vec() }).collect()
}

fn filtered_doc(v: &MultiFiltered, sigma: Option<&RealStructure>) -> FilteredDoc {
    FilteredDoc {
        g: v.g(),
        dim: v.dim(),
        w: v.ws().iter().map(asc_doc).collect(),
        f: v.fs().iter().map(desc_doc).collect(),
        fbar: v.fbars().iter().map(desc_doc).collect(),
        sigma: sigma.map(|s| s.matrix().rows_vec()),
        metadata: None,
    }
}

fn square(rows: &Rows, n: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != n {
        return Err(Error::Malformed(format!("{what}: expected {n} rows, found {}", rows.len())));
    }
    CMatrix::from_rows_with_cols(rows.clone(), n).map_err(|_| Error::Malformed(format!("{what}: ragged or wrong width")))
}

fn matrix(rows: &Rows, r: usize, c: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != r {
        return Err(Error::Malformed(format!("{what}: expected {r} rows, found {}", rows.len())));
    }
    CMatrix::from_rows_with_cols(rows.clone(), c).map_err(|_| Error::Malformed(format!("{what}: ragged or wrong width")))
}

fn span(dim: usize, rows: &Rows, what: &str) -> Result<CSubspace> {
    Subspace::span(dim, rows.clone()).map_err(|_| Error::Malformed(format!("{what}: basis vectors must have length {dim}")))
}

fn parse_rep(d: &RepDoc) -> Result<PlecticRep> {
    let mut pieces = BTreeMap::new();
    for (k, pc) in d.pieces.iter().enumerate() {
        if pc.p.len() != d.g || pc.q.len() != d.g {
            return Err(Error::VariableCount(d.g, pc.p.len().max(pc.q.len())));
        }
        let s = span(d.dim, &pc.basis, &format!("piece {k}"))?;
        let b = Bidegree::new(pc.p.clone(), pc.q.clone());
        if pieces.insert(b, s).is_some() {
            return Err(Error::Malformed(format!("piece {k}: repeated bidegree")));
        }
    }
    let t = d.t.iter().enumerate().map(|(k, m)| square(m, d.dim, &format!("t[{k}]"))).collect::<Result<Vec<_>>>()?;
    PlecticRep::new(d.g, d.dim, pieces, t)
}

fn parse_sigma(rows: Option<&Rows>, dim: usize) -> Result<Option<RealStructure>> {
    rows.map(|m| RealStructure::from_matrix(square(m, dim, "sigma")?)).transpose()
}

fn parse_real_rep(d: &RepDoc) -> Result<RealPlecticRep> {
    let rep = parse_rep(d)?;
    let sigma = parse_sigma(d.sigma.as_ref(), d.dim)?.unwrap_or_else(|| RealStructure::conj(d.dim));
    RealPlecticRep::new(rep, sigma)
}

fn parse_filtered(d: &FilteredDoc) -> Result<(MultiFiltered, Option<RealStructure>)> {
    let steps = |list: &Vec<StepDoc>, what: &str| {
        list.iter()
            .map(|s| Ok((s.index, span(d.dim, &s.basis, &format!("{what} step {}", s.index))?)))
            .collect::<Result<Vec<_>>>()
    };
    let w = d.w.iter().map(|l| AscFiltration::from_steps(d.dim, steps(l, "W")?)).collect::<Result<Vec<_>>>()?;
    let f = d.f.iter().map(|l| DescFiltration::from_steps(d.dim, steps(l, "F")?)).collect::<Result<Vec<_>>>()?;
    let fbar = d.fbar.iter().map(|l| DescFiltration::from_steps(d.dim, steps(l, "Fbar")?)).collect::<Result<Vec<_>>>()?;
    if f.len() != d.g || fbar.len() != d.g {
        return Err(Error::VariableCount(d.g, f.len().max(fbar.len())));
    }
    Ok((MultiFiltered::new(d.dim, w, f, fbar)?, parse_sigma(d.sigma.as_ref(), d.dim)?))
}

fn parse_complex(d: &ComplexDoc) -> Result<RepComplex> {
    if d.hi - d.lo + 1 != d.objects.len() as i64 {
        return Err(Error::Malformed(format!("degrees {}..={} but {} objects", d.lo, d.hi, d.objects.len())));
    }
    let objects = d.objects.iter().map(parse_real_rep).collect::<Result<Vec<_>>>()?;
    if let Some(u) = objects.iter().find(|u| u.g() != d.g) {
        return Err(Error::VariableCount(d.g, u.g()));
    }
    if d.d.len() != objects.len().saturating_sub(1) {
        return Err(Error::Malformed(format!("{} objects but {} differentials", objects.len(), d.d.len())));
    }
    let ds = d
        .d
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(m, objects[k + 1].dim(), objects[k].dim(), &format!("d[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    RepComplex::new(d.lo, objects, ds)
}

fn body<T: DeserializeOwned>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse(bytes: &[u8]) -> Result<Document> {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v.as_object_mut().ok_or_else(|| Error::Parse("a document is a JSON object".into()))?;
    let kind = match obj.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        _ => return Err(Error::Parse("missing string field \"kind\"".into())),
    };
    Ok(match kind.as_str() {
        "rep" => Document::Rep(body(v)?),
        "real-rep" => Document::RealRep(body(v)?),
        "filtered" => Document::Filtered(FilteredKind::Filtered, body(v)?),
        "orth" => Document::Filtered(FilteredKind::Orth, body(v)?),
        "weak" => Document::Filtered(FilteredKind::Weak, body(v)?),
        "pmhs" => Document::Filtered(FilteredKind::Pmhs, body(v)?),
        "complex" => Document::Complex(body(v)?),
        other => return Err(Error::Parse(format!("unknown kind {other:?}"))),
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn serialize(doc: &Document) -> String {
    let payload = match doc {
        Document::Rep(d) | Document::RealRep(d) => serde_json::to_value(d),
        Document::Filtered(_, d) => serde_json::to_value(d),
        Document::Complex(d) => serde_json::to_value(d),
    }
    .expect("documents serialize");
    let mut out = serde_json::Map::new();
    out.insert("kind".into(), doc.kind().into());
    if let serde_json::Value::Object(m) = payload {
        out.extend(m);
    }
    let mut s = serde_json::to_string_pretty(&serde_json::Value::Object(out)).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcore::tate;

    #[test]
    fn tate_document() {
        let doc = Document::from_rep(&tate(&[1, 0]));
        let text = serialize(&doc);
        assert!(text.starts_with("{\n  \"dim\": 1,\n  \"g\": 2,\n  \"kind\": \"rep\""));
        let back = parse(text.as_bytes()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_rep().unwrap(), tate(&[1, 0]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse(br#"{"kind":"nope"}"#).is_err());
        assert!(parse(br#"{"kind":"rep","g":0,"dim":0,"pieces":[],"t":[],"extra":1}"#).is_err());
        assert!(parse(br#"{"kind":"rep","g":0,"dim":1,"pieces":[{"p":[],"q":[],"basis":[["1/0"]]}],"t":[]}"#).is_err());
        let ragged = parse(br#"{"kind":"rep","g":1,"dim":2,"pieces":[],"t":[[["1","0"],["0"]]]}"#).unwrap();
        assert!(ragged.to_rep().is_err());
    }

    #[test]
    fn scalar_strings() {
        let s: Scalar = serde_json::from_str("\"1/2+3/4*i\"").unwrap();
        assert_eq!(s, Scalar::from_ratios(1, 2, 3, 4));
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"1/2+3/4*i\"");
        let n: Scalar = serde_json::from_str("-3").unwrap();
        assert_eq!(n, Scalar::from_int(-3));
    }
}
