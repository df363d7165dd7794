//! The `plectic` command line.
//!
//! Every subcommand prints one JSON value (or a table with `--format table`).  Exit codes:
//! 0 success or valid, 2 a validator rejected the input, 1 any error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::extcalc::{self, RepComplex};
use crate::io::{self, Document, FilteredKind};
use crate::plectic::{self, MultiFiltered, OrthFamily, Subset, WeakPlectic};
use crate::realforms::{self, RealFiltered, RealPlecticRep, RealStructure, ValidateReal};
use crate::repcore::{self, PlecticRep};

#[derive(Parser, Debug)]
#[command(name = "plectic", version, about = "Exact computations with mixed plectic Hodge structures")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Treat inputs as real objects (σ defaults to coordinate conjugation).
    #[arg(long, global = true)]
    pub real: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Rep,
    Orth,
    Pmhs,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the validator for the document kind.
    Validate { file: PathBuf },
    /// Deligne splitting of a weak, pmhs or orth document for the subset I.
    Splitting {
        file: PathBuf,
        /// One-based members of I, comma separated; empty by default.
        #[arg(long = "I", value_delimiter = ',')]
        i: Vec<usize>,
    },
    /// Apply φ, ψ, T or P.
    Convert {
        file: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Dimensions of Ext^m(ℝ(0), U) for a representation or a complex.
    Ext {
        file: PathBuf,
        /// Also print representative cocycles in Λ•.
        #[arg(long)]
        cocycles: bool,
    },
    Tensor { a: PathBuf, b: PathBuf },
    Hom { a: PathBuf, b: PathBuf },
    Exterior { a: PathBuf, b: PathBuf },
    /// The Tate object with the given twist.
    Tate {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        n: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Target::Rep)]
        to: Target,
    },
    /// Γ_μ of a representation.
    Gamma {
        file: PathBuf,
        #[arg(long)]
        mu: usize,
    },
}

/// Exit code and everything written to stdout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

enum Reply {
    Ok(Value, String),
    Invalid(Value, String),
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome { code, stdout: e.to_string() };
        }
    };
    let format = cli.format;
    let (code, value, table) = match dispatch(&cli) {
        Ok(Reply::Ok(v, t)) => (0, v, t),
        Ok(Reply::Invalid(v, t)) => (2, v, t),
        Err(e) => {
            let v = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            (1, v, format!("error: {e}\n"))
        }
    };
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Table => table,
    };
    Outcome { code, stdout }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Malformed(_) => "malformed",
        Error::Dimension { .. } => "dimension",
        Error::VariableCount(..) => "variable_count",
        Error::TooManyVariables { .. } => "too_many_variables",
        Error::OutOfRange(_) => "out_of_range",
        Error::NotContained(_) => "not_contained",
        Error::NotUnipotent => "not_unipotent",
        Error::NotInvolution => "not_involution",
        Error::Singular => "singular",
        Error::Invalid(_) => "invalid",
    }
}

fn load(path: &Path) -> Result<Document> {
    let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse(&bytes)
}

fn doc_value(doc: &Document) -> Value {
    serde_json::from_str(&io::serialize(doc)).expect("documents are JSON")
}

fn doc_reply(doc: Document) -> Reply {
    let table = doc_table(&doc);
    Reply::Ok(doc_value(&doc), table)
}

fn doc_table(doc: &Document) -> String {
    let mut s = format!("kind  {}\ng     {}\n", doc.kind(), doc.g());
    match doc {
        Document::Rep(d) | Document::RealRep(d) => {
            let _ = writeln!(s, "dim   {}", d.dim);
            let _ = writeln!(s, "{:<16} {:<16} dim", "p", "q");
            for pc in &d.pieces {
                let _ = writeln!(s, "{:<16} {:<16} {}", format!("{:?}", pc.p), format!("{:?}", pc.q), pc.basis.len());
            }
        }
        Document::Filtered(_, d) => {
            let _ = writeln!(s, "dim   {}", d.dim);
            for (name, list) in [("W", &d.w), ("F", &d.f), ("Fbar", &d.fbar)] {
                for (k, steps) in list.iter().enumerate() {
                    let jumps: Vec<String> = steps.iter().map(|st| format!("{}:{}", st.index, st.basis.len())).collect();
                    let _ = writeln!(s, "{name}{}  {}", k + 1, jumps.join(" "));
                }
            }
        }
        Document::Complex(d) => {
            for (k, o) in d.objects.iter().enumerate() {
                let _ = writeln!(s, "degree {}  dim {}", d.lo + k as i64, o.dim);
            }
        }
    }
    s
}

fn dispatch(cli: &Cli) -> Result<Reply> {
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?, cli.real),
        Command::Splitting { file, i } => splitting(&load(file)?, i),
        Command::Convert { file, to } => convert(&load(file)?, *to, cli.real),
        Command::Ext { file, cocycles } => ext(&load(file)?, *cocycles),
        Command::Tensor { a, b } => binary(&load(a)?, &load(b)?, Binary::Tensor, cli.real),
        Command::Hom { a, b } => binary(&load(a)?, &load(b)?, Binary::Hom, cli.real),
        Command::Exterior { a, b } => binary(&load(a)?, &load(b)?, Binary::Exterior, cli.real),
        Command::Tate { n, to } => tate(n, *to, cli.real),
        Command::Gamma { file, mu } => gamma(&load(file)?, *mu),
    }
}

fn subset_label(i: &Subset) -> String {
    if i.members().is_empty() {
        "∅".into()
    } else {
        i.to_string()
    }
}

fn verdict(kind: &str, valid: bool, reason: Option<String>, report: Value) -> Reply {
    let table = match &reason {
        None => format!("kind   {kind}\nvalid  {}\n", if valid { "yes" } else { "no" }),
        Some(r) => format!("kind   {kind}\nvalid  {}\nreason {r}\n", if valid { "yes" } else { "no" }),
    };
    let v = json!({"kind": kind, "valid": valid, "reason": reason, "report": report});
    if valid {
        Reply::Ok(v, table)
    } else {
        Reply::Invalid(v, table)
    }
}

fn weak_reason(r: &plectic::WeakReport) -> Option<String> {
    if !r.bad_filtrations.is_empty() {
        return Some(format!("non-monotone filtrations: {}", r.bad_filtrations.join(", ")));
    }
    let failed: Vec<String> = r
        .verdicts
        .iter()
        .filter(|v| !v.holds)
        .map(|v| format!("({}_{})", v.condition, subset_label(&v.subset)))
        .collect();
    (!failed.is_empty()).then(|| format!("{} fails", failed.join(", ")))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn validate(doc: &Document, real: bool) -> Result<Reply> {
    let kind = doc.kind();
    match doc {
        Document::Rep(_) if !real => {
            let r = doc.to_rep()?.validate();
            let reason = r.violation.as_ref().map(|v| format!("{v:?}"));
            Ok(verdict(kind, r.valid, reason, to_value(&r)))
        }
        Document::Rep(_) | Document::RealRep(_) => {
            let u = doc.to_real_rep()?;
            let r = u.validate_real();
            let reason = r.violations.first().map(|v| format!("{v:?}"));
            Ok(verdict(kind, r.valid, reason, to_value(&r)))
        }
        Document::Filtered(fk, _) => {
            let (_, v, sigma) = doc.to_filtered()?;
            let sigma = match (sigma, real) {
                (Some(s), _) => Some(s),
                (None, true) => Some(RealStructure::conj(v.dim())),
                (None, false) => None,
            };
            let (mut valid, mut reason, mut report) = validate_filtered(*fk, &v)?;
            if let Some(s) = sigma {
                let r = RealFiltered::new(v, s)?.validate_real();
                if !r.valid {
                    valid = false;
                    reason.get_or_insert_with(|| format!("real structure: {:?}", r.violations[0]));
                }
                report = json!({"complex": report, "real": to_value(&r)});
            }
            Ok(verdict(kind, valid, reason, report))
        }
        Document::Complex(_) => {
            let c = doc.to_complex()?;
            let r = c.validate();
            let reason = r.violations.first().map(|v| format!("{v:?}"));
            Ok(verdict(kind, r.valid, reason, to_value(&r)))
        }
    }
}

fn validate_filtered(kind: FilteredKind, v: &MultiFiltered) -> Result<(bool, Option<String>, Value)> {
    Ok(match kind {
        FilteredKind::Filtered => {
            let bad = v.bad_filtrations();
            let reason = (!bad.is_empty()).then(|| format!("non-monotone filtrations: {}", bad.join(", ")));
            (bad.is_empty(), reason, json!({"bad_filtrations": bad}))
        }
        FilteredKind::Orth => {
            let r = plectic::validate_orth(v)?;
            let reason = (!r.valid).then(|| format!("not an orthogonal family: {} failures", r.failures.len().max(r.bad_filtrations.len())));
            (r.valid, reason, to_value(&r))
        }
        FilteredKind::Weak => {
            let r = plectic::check_weak(v)?;
            (r.valid, weak_reason(&r), to_value(&r))
        }
        FilteredKind::Pmhs => {
            let r = plectic::check_weak(v)?;
            if !r.valid {
                return Ok((false, weak_reason(&r), json!({"weak": to_value(&r)})));
            }
            let p = plectic::check_pmhs(&WeakPlectic::new(v.clone())?)?;
            let reason = p.mismatches.first().map(|m| {
                format!("W^{{{},{}}}_{} differs from W^{{∅,{}}}_{}", subset_label(&m.subset), m.mu, m.n, m.mu, m.n)
            });
            (p.valid, reason, json!({"weak": to_value(&r), "pmhs": to_value(&p)}))
        }
    })
}

fn splitting_value(split: &BTreeMap<repcore::Bidegree, crate::exactla::CSubspace>) -> (Value, String) {
    let mut table = format!("{:<16} {:<16} dim\n", "p", "q");
    let pieces: Vec<Value> = split
        .iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(b, s)| {
            let _ = writeln!(table, "{:<16} {:<16} {}", format!("{:?}", b.p), format!("{:?}", b.q), s.dim());
            json!({"p": b.p, "q": b.q, "basis": to_value(&s.basis())})
        })
        .collect();
    (json!({"pieces": pieces}), table)
}

fn splitting(doc: &Document, members: &[usize]) -> Result<Reply> {
    let (kind, v, _) = doc.to_filtered()?;
    let i = Subset::from_members(v.g(), members)?;
    let split = match kind {
        FilteredKind::Orth => plectic::intersected_partial_splittings(&OrthFamily::new(v)?, &i)?,
        FilteredKind::Weak | FilteredKind::Pmhs => plectic::plectic_splitting(&WeakPlectic::new(v)?, &i)?,
        FilteredKind::Filtered => {
            if v.l() == v.g() {
                plectic::intersected_partial_splittings(&OrthFamily::new(v)?, &i)?
            } else {
                plectic::plectic_splitting(&WeakPlectic::new(v)?, &i)?
            }
        }
    };
    let (mut value, table) = splitting_value(&split);
    value["subset"] = to_value(&i);
    Ok(Reply::Ok(value, table))
}

fn real_filtered(v: MultiFiltered, sigma: Option<RealStructure>, real: bool) -> Option<Result<RealFiltered>> {
    match (sigma, real) {
        (Some(s), _) => Some(RealFiltered::new(v, s)),
        (None, true) => {
            let s = RealStructure::conj(v.dim());
            Some(RealFiltered::new(v, s))
        }
        (None, false) => None,
    }
}

fn convert(doc: &Document, to: Target, real: bool) -> Result<Reply> {
    let out = match doc {
        Document::Rep(_) | Document::RealRep(_) => {
            let is_real = real || matches!(doc, Document::RealRep(_));
            if is_real {
                let u = doc.to_real_rep()?;
                match to {
                    Target::Rep => Document::from_real_rep(&u),
                    Target::Orth => {
                        let o = realforms::phi_r(&u)?;
                        Document::from_filtered(FilteredKind::Orth, &o.obj, Some(&o.sigma))
                    }
                    Target::Pmhs => {
                        let t = realforms::total_weight_r(&realforms::phi_r(&u)?)?;
                        Document::from_filtered(FilteredKind::Pmhs, &t.obj, Some(&t.sigma))
                    }
                }
            } else {
                let u = doc.to_rep()?;
                match to {
                    Target::Rep => Document::from_rep(&u),
                    Target::Orth => Document::from_filtered(FilteredKind::Orth, &plectic::phi_g(&u)?.into_inner(), None),
                    Target::Pmhs => {
                        Document::from_filtered(FilteredKind::Pmhs, &plectic::total_weight(&*plectic::phi_g(&u)?)?, None)
                    }
                }
            }
        }
        Document::Filtered(kind, _) => {
            let (_, v, sigma) = doc.to_filtered()?;
            let is_orth = match kind {
                FilteredKind::Orth => true,
                FilteredKind::Weak | FilteredKind::Pmhs => false,
                FilteredKind::Filtered => v.l() == v.g() && v.l() != 1,
            };
            match real_filtered(v.clone(), sigma, real) {
                Some(r) => convert_real(r?, is_orth, to)?,
                None => convert_complex(v, is_orth, to)?,
            }
        }
        Document::Complex(_) => return Err(Error::Malformed("convert takes a single object".into())),
    };
    Ok(doc_reply(out))
}

fn convert_complex(v: MultiFiltered, is_orth: bool, to: Target) -> Result<Document> {
    let orth = if is_orth {
        OrthFamily::new(v)?
    } else {
        let weak = WeakPlectic::new(v)?;
        OrthFamily::new(plectic::partial_weights(&weak, &Subset::empty(weak.g()))?)?
    };
    Ok(match to {
        Target::Orth => Document::from_filtered(FilteredKind::Orth, &orth, None),
        Target::Rep => Document::from_rep(&plectic::psi_g(&orth)?),
        Target::Pmhs => Document::from_filtered(FilteredKind::Pmhs, &plectic::total_weight(&orth)?, None),
    })
}

fn convert_real(v: RealFiltered, is_orth: bool, to: Target) -> Result<Document> {
    let orth = if is_orth { v } else { realforms::partial_weights_r(&v)? };
    Ok(match to {
        Target::Orth => Document::from_filtered(FilteredKind::Orth, &orth.obj, Some(&orth.sigma)),
        Target::Rep => Document::from_real_rep(&realforms::psi_r(&orth)?),
        Target::Pmhs => {
            let t = realforms::total_weight_r(&orth)?;
            Document::from_filtered(FilteredKind::Pmhs, &t.obj, Some(&t.sigma))
        }
    })
}

fn complex_of(doc: &Document) -> Result<RepComplex> {
    match doc {
        Document::Complex(_) => doc.to_complex(),
        _ => Ok(RepComplex::single(doc.to_real_rep()?, 0)),
    }
}

fn ext(doc: &Document, cocycles: bool) -> Result<Reply> {
    let c = complex_of(doc)?;
    let lambda = extcalc::lambda_complex(&c)?;
    let h = extcalc::cohomology(&lambda.complex)?;
    let mut dims = serde_json::Map::new();
    let mut table = "m    dim\n".to_string();
    for (m, g) in &h.groups {
        dims.insert(m.to_string(), g.dim.into());
        let _ = writeln!(table, "{m:<4} {}", g.dim);
    }
    if !cocycles {
        return Ok(Reply::Ok(Value::Object(dims), table));
    }
    let reps: serde_json::Map<String, Value> = h
        .groups
        .iter()
        .map(|(m, g)| {
            let vs: Vec<Vec<String>> = g.representatives.iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
            (m.to_string(), json!({"labels": lambda.complex.labels[(m - lambda.complex.lo) as usize], "cocycles": vs}))
        })
        .collect();
    Ok(Reply::Ok(json!({"dims": dims, "representatives": reps}), table))
}

#[derive(Clone, Copy)]
enum Binary {
    Tensor,
    Hom,
    Exterior,
}

fn binary(a: &Document, b: &Document, op: Binary, real: bool) -> Result<Reply> {
    let out = match (a, b) {
        (Document::Filtered(ka, _), Document::Filtered(..)) => {
            let (_, x, sx) = a.to_filtered()?;
            let (_, y, sy) = b.to_filtered()?;
            let obj = match op {
                Binary::Tensor => plectic::tensor_pmhs(&x, &y)?,
                Binary::Hom => plectic::hom_pmhs(&x, &y)?,
                Binary::Exterior => return Err(Error::Malformed("exterior takes representations".into())),
            };
            let sigma = match (sx, sy) {
                (Some(p), Some(q)) => Some(match op {
                    Binary::Hom => RealStructure::hom(&p, &q),
                    _ => p.tensor(&q),
                }),
                _ => None,
            };
            Document::from_filtered(*ka, &obj, sigma.as_ref())
        }
        (Document::Rep(_) | Document::RealRep(_), Document::Rep(_) | Document::RealRep(_)) => {
            let is_real = real || matches!(a, Document::RealRep(_)) || matches!(b, Document::RealRep(_));
            if is_real {
                let (x, y) = (a.to_real_rep()?, b.to_real_rep()?);
                let r: RealPlecticRep = match op {
                    Binary::Tensor => realforms::tensor_r(&x, &y)?,
                    Binary::Hom => realforms::hom_r(&x, &y)?,
                    Binary::Exterior => realforms::exterior_r(&x, &y),
                };
                Document::from_real_rep(&r)
            } else {
                let (x, y) = (a.to_rep()?, b.to_rep()?);
                let r: PlecticRep = match op {
                    Binary::Tensor => repcore::tensor(&x, &y)?,
                    Binary::Hom => repcore::internal_hom(&x, &y)?,
                    Binary::Exterior => repcore::exterior(&x, &y),
                };
                Document::from_rep(&r)
            }
        }
        _ => return Err(Error::Malformed(format!("cannot combine {} with {}", a.kind(), b.kind()))),
    };
    Ok(doc_reply(out))
}

fn tate(n: &[i64], to: Target, real: bool) -> Result<Reply> {
    let doc = match (to, real) {
        (Target::Rep, false) => Document::from_rep(&repcore::tate(n)),
        (Target::Rep, true) => Document::from_real_rep(&realforms::tate_r(n)),
        (Target::Orth, false) => Document::from_filtered(FilteredKind::Orth, &plectic::tate_orth(n), None),
        (Target::Pmhs, false) => Document::from_filtered(FilteredKind::Pmhs, &plectic::tate_pmhs(n), None),
        (Target::Orth | Target::Pmhs, true) => {
            let o = realforms::tate_r_orth(n);
            if to == Target::Orth {
                Document::from_filtered(FilteredKind::Orth, &o.obj, Some(&o.sigma))
            } else {
                let t = realforms::total_weight_r(&o)?;
                Document::from_filtered(FilteredKind::Pmhs, &t.obj, Some(&t.sigma))
            }
        }
    };
    Ok(doc_reply(doc))
}

fn gamma(doc: &Document, mu: usize) -> Result<Reply> {
    let u = doc.to_real_rep()?;
    if mu == 0 {
        let q = extcalc::gamma0(&u)?;
        let basis: Vec<Vec<String>> = q.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect();
        let table = format!("mu   0\ndim  {}\n", q.dim());
        return Ok(Reply::Ok(json!({"mu": 0, "dim": q.dim(), "real_basis": basis}), table));
    }
    Ok(doc_reply(Document::from_real_rep(&extcalc::gamma(&u, mu)?)))
}
