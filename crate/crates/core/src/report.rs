//! Report documents and their markdown, JSON and CSV renderings.
//!
//! Every scalar is carried twice: its exact symbolic form (which parses back
//! to the same value) and a correctly rounded decimal. Output is fully
//! determined by the input; there are no timestamps.
//!
//! CSV layouts, one per command:
//!
//! | command          | header                                                                   |
//! |------------------|--------------------------------------------------------------------------|
//! | `audit`          | `chain,k2,r,l2,lhs,rhs,verdict`                                          |
//! | `bound`          | `section,value,symbolic,source,scope,sharp,witness`                      |
//! | `bound` (invalid)| `rule,message`                                                           |
//! | `wps`, `example` | `weights,degree,canonical_coefficient,k2,pg,integrality_warning,picard1` |

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canonical::CanonicalCase;
use crate::comparative::{
    audit_chain, bound_comparison, summarize, AuditFinding, AuditGrid, BoundRow, BoundTable, Chain, ChainSummary,
    ComparativeError, Verdict,
};
use crate::genus::{BoundCertificate, BoundSource, CurveClass, PointScope};
use crate::scalar::ExactScalar;
use crate::surface::{PolarizedSurface, Violation};
use crate::wps::{
    hypersurface_invariants, sharpness_example, steenbrink_check, WeightedHypersurface, Weights, WpsError,
};

pub const TOOL_NAME: &str = "seshadri";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_DIGITS: usize = 6;

pub const AUDIT_CSV_HEADER: [&str; 7] = ["chain", "k2", "r", "l2", "lhs", "rhs", "verdict"];
pub const BOUND_CSV_HEADER: [&str; 7] = ["section", "value", "symbolic", "source", "scope", "sharp", "witness"];
pub const VIOLATION_CSV_HEADER: [&str; 2] = ["rule", "message"];
pub const HYPERSURFACE_CSV_HEADER: [&str; 7] = [
    "weights",
    "degree",
    "canonical_coefficient",
    "k2",
    "pg",
    "integrality_warning",
    "picard1",
];

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Comparative(#[from] ComparativeError),
    #[error(transparent)]
    Wps(#[from] WpsError),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("unknown format {0:?} (expected md, json or csv)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(ReportError::UnknownFormat(other.to_owned())),
        }
    }
}

/// An exact value with its decimal rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedScalar {
    pub symbolic: ExactScalar,
    pub decimal: String,
}

impl RenderedScalar {
    pub fn new(value: &ExactScalar, digits: usize) -> Self {
        RenderedScalar {
            symbolic: value.clone(),
            decimal: value.to_decimal(digits),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Ok,
    ValidationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: BTreeMap<String, String>,
    pub digits: usize,
    pub status: ReportStatus,
    pub items: Vec<ReportItem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    Validation(ValidationRecord),
    BoundTable(BoundTableRecord),
    CanonicalTrace(CanonicalRecord),
    AuditFinding(FindingRecord),
    AuditSummary(ChainSummary),
    Hypersurface(HypersurfaceRecord),
    Example(ExampleRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub surface: String,
    pub valid: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub source: BoundSource,
    pub label: String,
    pub value: RenderedScalar,
    pub scope: PointScope,
    pub sharp: bool,
    pub assumptions: Vec<String>,
    pub witness: Option<CurveClass>,
}

impl CertificateRecord {
    pub fn new(c: &BoundCertificate, digits: usize) -> Self {
        CertificateRecord {
            source: c.source,
            label: c.source.label().to_owned(),
            value: RenderedScalar::new(&c.value, digits),
            scope: c.scope,
            sharp: c.sharp,
            assumptions: c.assumptions.clone(),
            witness: c.witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub value: RenderedScalar,
    pub certificates: Vec<CertificateRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTableRecord {
    pub surface: String,
    pub all_points: Vec<RowRecord>,
    pub general_point: Vec<RowRecord>,
    pub reference: Vec<RowRecord>,
}

fn rows(rows: &[BoundRow], digits: usize) -> Vec<RowRecord> {
    rows.iter()
        .map(|r| RowRecord {
            value: RenderedScalar::new(&r.value, digits),
            certificates: r
                .certificates
                .iter()
                .map(|c| CertificateRecord::new(c, digits))
                .collect(),
        })
        .collect()
}

impl BoundTableRecord {
    pub fn new(t: &BoundTable, digits: usize) -> Self {
        BoundTableRecord {
            surface: t.surface.to_string(),
            all_points: rows(&t.all_points, digits),
            general_point: rows(&t.general_point, digits),
            reference: rows(&t.reference, digits),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalRecord {
    pub case: CanonicalCase,
    pub bound: RenderedScalar,
    pub sharp: bool,
    pub narrative: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingRecord {
    pub chain: Chain,
    pub k2: Option<u64>,
    pub r: Option<i64>,
    pub l2: Option<u64>,
    pub p: Option<u64>,
    pub lhs: RenderedScalar,
    pub rhs: RenderedScalar,
    pub verdict: Verdict,
    pub note: String,
}

impl FindingRecord {
    pub fn new(f: &AuditFinding, digits: usize) -> Self {
        FindingRecord {
            chain: f.chain,
            k2: f.k2,
            r: f.r,
            l2: f.l2,
            p: f.p,
            lhs: RenderedScalar::new(&f.lhs, digits),
            rhs: RenderedScalar::new(&f.rhs, digits),
            verdict: f.verdict,
            note: f.note.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceRecord {
    pub weights: Weights,
    pub degree: u64,
    pub canonical_coefficient: i64,
    pub k2: RenderedScalar,
    pub pg: u64,
    pub integrality_warning: bool,
    /// `None` when the weights are not of the form `(1,1,a,b)`.
    pub picard1: Option<bool>,
    pub steenbrink_reasons: Vec<String>,
}

impl HypersurfaceRecord {
    pub fn new(h: &WeightedHypersurface, digits: usize) -> Self {
        let inv = hypersurface_invariants(h);
        let (picard1, steenbrink_reasons) = match steenbrink_check(&h.weights, h.degree) {
            Ok(check) => (Some(check.picard_one), check.reasons),
            Err(e) => (None, vec![e.to_string()]),
        };
        HypersurfaceRecord {
            weights: h.weights,
            degree: h.degree,
            canonical_coefficient: inv.canonical_coefficient,
            k2: RenderedScalar::new(&inv.k2, digits),
            pg: u64::try_from(inv.pg).unwrap_or(u64::MAX),
            integrality_warning: inv.integrality_warning,
            picard1,
            steenbrink_reasons,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub hypersurface: HypersurfaceRecord,
    pub bound: CertificateRecord,
    pub sharp: bool,
    pub theorem_bound: RenderedScalar,
    pub challenge_threshold: RenderedScalar,
}

fn document(command: &str, input: BTreeMap<String, String>, digits: usize) -> ReportDocument {
    ReportDocument {
        tool: TOOL_NAME.to_owned(),
        version: TOOL_VERSION.to_owned(),
        command: command.to_owned(),
        input,
        digits,
        status: ReportStatus::Ok,
        items: Vec::new(),
    }
}

/// Comparison table for one surface. An invalid surface yields a
/// `ValidationFailed` document carrying only the violations.
pub fn bound_report(s: &PolarizedSurface, p_max: u64, digits: usize) -> Result<ReportDocument, ReportError> {
    let input = BTreeMap::from([
        ("surface".to_owned(), s.to_string()),
        ("p_max".to_owned(), p_max.to_string()),
    ]);
    let mut doc = document("bound", input, digits);
    let validation = s.validate();
    doc.items.push(ReportItem::Validation(ValidationRecord {
        surface: s.to_string(),
        valid: validation.is_valid(),
        violations: validation.violations.clone(),
    }));
    if !validation.is_valid() {
        doc.status = ReportStatus::ValidationFailed;
        return Ok(doc);
    }
    let table = bound_comparison(s, p_max)?;
    doc.items
        .push(ReportItem::BoundTable(BoundTableRecord::new(&table, digits)));
    if let Some(trace) = &table.canonical {
        doc.items.push(ReportItem::CanonicalTrace(CanonicalRecord {
            case: trace.case,
            bound: RenderedScalar::new(&trace.bound, digits),
            sharp: trace.sharp,
            narrative: trace.narrative.clone(),
        }));
    }
    Ok(doc)
}

pub fn audit_report(grid: &AuditGrid, digits: usize) -> Result<ReportDocument, ReportError> {
    let range = |a: String, b: String| format!("{a}..={b}");
    let input = BTreeMap::from([
        (
            "k2".to_owned(),
            range(grid.k2.start().to_string(), grid.k2.end().to_string()),
        ),
        (
            "r".to_owned(),
            range(grid.r.start().to_string(), grid.r.end().to_string()),
        ),
        (
            "l2".to_owned(),
            range(grid.l2.start().to_string(), grid.l2.end().to_string()),
        ),
    ]);
    let mut doc = document("audit", input, digits);
    let findings = audit_chain(grid)?;
    doc.items
        .extend(summarize(&findings).into_iter().map(ReportItem::AuditSummary));
    doc.items.extend(
        findings
            .iter()
            .map(|f| ReportItem::AuditFinding(FindingRecord::new(f, digits))),
    );
    Ok(doc)
}

pub fn wps_report(h: &WeightedHypersurface, digits: usize) -> ReportDocument {
    let input = BTreeMap::from([
        ("weights".to_owned(), h.weights.to_string()),
        ("degree".to_owned(), h.degree.to_string()),
    ]);
    let mut doc = document("wps", input, digits);
    doc.items
        .push(ReportItem::Hypersurface(HypersurfaceRecord::new(h, digits)));
    doc
}

pub fn example_report(digits: usize) -> Result<ReportDocument, ReportError> {
    let ex = sharpness_example()?;
    let mut doc = document("example", BTreeMap::new(), digits);
    doc.items.push(ReportItem::Example(ExampleRecord {
        hypersurface: HypersurfaceRecord::new(&ex.hypersurface, digits),
        bound: CertificateRecord::new(&ex.certificate, digits),
        sharp: ex.certificate.sharp,
        theorem_bound: RenderedScalar::new(&ex.theorem_bound, digits),
        challenge_threshold: RenderedScalar::new(&ex.challenge_threshold, digits),
    }));
    Ok(doc)
}

pub fn render(doc: &ReportDocument, format: Format) -> Result<String, ReportError> {
    match format {
        Format::Markdown => Ok(to_markdown(doc)),
        Format::Json => to_json(doc),
        Format::Csv => to_csv(doc),
    }
}

pub fn to_json(doc: &ReportDocument) -> Result<String, ReportError> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(s: &str) -> Result<ReportDocument, ReportError> {
    Ok(serde_json::from_str(s)?)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn witness_text(w: Option<CurveClass>) -> String {
    w.map(|w| format!("p={} m={}", w.p, w.m)).unwrap_or_default()
}

fn scope_text(s: PointScope) -> &'static str {
    match s {
        PointScope::AllPoints => "all_points",
        PointScope::GeneralPoint => "general_point",
        PointScope::Reference => "reference",
    }
}

fn hypersurface_csv_row(h: &HypersurfaceRecord) -> [String; 7] {
    [
        h.weights.to_string(),
        h.degree.to_string(),
        h.canonical_coefficient.to_string(),
        h.k2.symbolic.to_string(),
        h.pg.to_string(),
        h.integrality_warning.to_string(),
        opt(h.picard1),
    ]
}

pub fn to_csv(doc: &ReportDocument) -> Result<String, ReportError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc.command.as_str() {
        "audit" => {
            w.write_record(AUDIT_CSV_HEADER)?;
            for item in &doc.items {
                if let ReportItem::AuditFinding(f) = item {
                    w.write_record([
                        f.chain.to_string(),
                        opt(f.k2),
                        opt(f.r),
                        opt(f.l2),
                        f.lhs.decimal.clone(),
                        f.rhs.decimal.clone(),
                        f.verdict.to_string(),
                    ])?;
                }
            }
        }
        "bound" if doc.status == ReportStatus::ValidationFailed => {
            w.write_record(VIOLATION_CSV_HEADER)?;
            for item in &doc.items {
                if let ReportItem::Validation(v) = item {
                    for violation in &v.violations {
                        let rule = serde_json::to_value(violation.rule)?;
                        w.write_record([rule.as_str().unwrap_or_default(), &violation.message])?;
                    }
                }
            }
        }
        "bound" => {
            w.write_record(BOUND_CSV_HEADER)?;
            for item in &doc.items {
                let ReportItem::BoundTable(t) = item else { continue };
                let sections = [
                    ("all_points", &t.all_points),
                    ("general_point", &t.general_point),
                    ("reference", &t.reference),
                ];
                for (section, rows) in sections {
                    for row in rows {
                        for c in &row.certificates {
                            w.write_record([
                                section.to_owned(),
                                c.value.decimal.clone(),
                                c.value.symbolic.to_string(),
                                format!("{:?}", c.source),
                                scope_text(c.scope).to_owned(),
                                c.sharp.to_string(),
                                witness_text(c.witness),
                            ])?;
                        }
                    }
                }
            }
        }
        _ => {
            w.write_record(HYPERSURFACE_CSV_HEADER)?;
            for item in &doc.items {
                match item {
                    ReportItem::Hypersurface(h) => w.write_record(hypersurface_csv_row(h))?,
                    ReportItem::Example(e) => w.write_record(hypersurface_csv_row(&e.hypersurface))?,
                    _ => {}
                }
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

fn md_rows(out: &mut String, title: &str, rows: &[RowRecord]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n### {title}\n");
    let _ = writeln!(out, "| value | exact | source | sharp | witness |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    for row in rows {
        for (i, c) in row.certificates.iter().enumerate() {
            let (value, exact) = if i == 0 {
                (row.value.decimal.clone(), format!("`{}`", row.value.symbolic))
            } else {
                ("=".to_owned(), String::new())
            };
            let _ = writeln!(
                out,
                "| {value} | {exact} | {} | {} | {} |",
                c.label,
                if c.sharp { "yes" } else { "" },
                witness_text(c.witness)
            );
        }
    }
}

pub fn to_markdown(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} {}: {}", doc.tool, doc.version, doc.command);
    if !doc.input.is_empty() {
        let echo: Vec<String> = doc.input.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        let _ = writeln!(out, "\ninput: {}", echo.join(", "));
    }
    let mut findings = Vec::new();
    for item in &doc.items {
        match item {
            ReportItem::Validation(v) => {
                if v.valid {
                    let _ = writeln!(out, "\nsurface `{}` passes validation", v.surface);
                } else {
                    let _ = writeln!(out, "\n## Validation failed for `{}`\n", v.surface);
                    for violation in &v.violations {
                        let _ = writeln!(
                            out,
                            "- {:?}: {} ({})",
                            violation.rule, violation.message, violation.reference
                        );
                    }
                }
            }
            ReportItem::BoundTable(t) => {
                let _ = writeln!(out, "\n## Lower bounds for epsilon(L, x)");
                md_rows(&mut out, "At every point", &t.all_points);
                md_rows(&mut out, "At a general point", &t.general_point);
                md_rows(&mut out, "Reference values (not bounds)", &t.reference);
            }
            ReportItem::CanonicalTrace(c) => {
                let _ = writeln!(
                    out,
                    "\ncanonical case {:?}: epsilon(K_S, x) >= {}{}. {}",
                    c.case,
                    c.bound.decimal,
                    if c.sharp { " (sharp)" } else { "" },
                    c.narrative
                );
            }
            ReportItem::AuditSummary(s) => {
                if out.contains("## Chain summary") {
                    let _ = writeln!(out, "| {} | {} | {} | {} |", s.chain, s.holds, s.fails, s.equal);
                } else {
                    let _ = writeln!(
                        out,
                        "\n## Chain summary\n\n| chain | holds | fails | equal |\n|---|---|---|---|"
                    );
                    let _ = writeln!(out, "| {} | {} | {} | {} |", s.chain, s.holds, s.fails, s.equal);
                }
            }
            ReportItem::AuditFinding(f) => findings.push(f),
            ReportItem::Hypersurface(h) => md_hypersurface(&mut out, h),
            ReportItem::Example(e) => {
                md_hypersurface(&mut out, &e.hypersurface);
                let _ = writeln!(
                    out,
                    "\nepsilon(K_S, x) >= {} at every point, attained: {}; closed-form bound {}; challenge threshold {}",
                    e.bound.value.decimal, e.sharp, e.theorem_bound.decimal, e.challenge_threshold.decimal
                );
                for a in &e.bound.assumptions {
                    let _ = writeln!(out, "- {a}");
                }
            }
        }
    }
    if !findings.is_empty() {
        let _ = writeln!(
            out,
            "\n## Findings\n\n| chain | k2 | r | l2 | lhs | rhs | verdict | note |\n|---|---|---|---|---|---|---|---|"
        );
        for f in findings {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                f.chain,
                opt(f.k2),
                opt(f.r),
                opt(f.l2),
                f.lhs.decimal,
                f.rhs.decimal,
                f.verdict,
                f.note
            );
        }
    }
    out
}

fn md_hypersurface(out: &mut String, h: &HypersurfaceRecord) {
    let _ = writeln!(out, "\n## Degree {} surface in P({})\n", h.degree, h.weights);
    let _ = writeln!(out, "- K_S = O_S({})", h.canonical_coefficient);
    let _ = writeln!(
        out,
        "- K^2 = {}{}",
        h.k2.symbolic,
        if h.integrality_warning {
            " (not an integer: input is not well formed)"
        } else {
            ""
        }
    );
    let _ = writeln!(out, "- p_g = {}", h.pg);
    match h.picard1 {
        Some(p) => {
            let _ = writeln!(out, "- Picard number 1 (Steenbrink criterion): {p}");
        }
        None => {
            let _ = writeln!(out, "- Picard number criterion not applicable");
        }
    }
    for r in &h.steenbrink_reasons {
        let _ = writeln!(out, "  - {r}");
    }
}
