//! Deterministic report documents and the certify/oracle runners.

use crate::parse::{CliInputError, PresentationFile};
use serde::Serialize;
use solvcert::algebra::{self, AlgebraError};
use solvcert::certifier::{self, CertError, CertReport, SearchConfig};
use solvcert::deroracle::{self, CrossCheck};
use std::time::Instant;
use thiserror::Error;

/// Automatic oracle runs are limited by the quotient dimension cap and by
/// the Leibniz-system size n * dim A.
pub const ORACLE_WORK_CAP: usize = 1000;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Input(#[from] CliInputError),
    #[error("internal conflict: {0}")]
    Conflict(String),
}

impl From<AlgebraError> for RunError {
    fn from(e: AlgebraError) -> Self {
        RunError::Input(CliInputError::Algebra(e))
    }
}

impl From<CertError> for RunError {
    fn from(e: CertError) -> Self {
        match e {
            CertError::Conflict(msg) => RunError::Conflict(msg),
            CertError::Algebra(a) => a.into(),
            CertError::NotHomogeneous => {
                RunError::Conflict("homogeneous-only rule invoked on inhomogeneous input".into())
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleMode {
    Auto,
    Forced,
    Disabled,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: u32,
    pub bound: i64,
    pub oracle: OracleMode,
    pub dim_cap: usize,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 0,
            trials: 64,
            bound: 10,
            oracle: OracleMode::Auto,
            dim_cap: 1000,
            timing: false,
        }
    }
}

impl RunOptions {
    fn search_config(&self) -> SearchConfig {
        SearchConfig { seed: self.seed, trials: self.trials, coefficient_bound: self.bound }
    }
}

// --- document -------------------------------------------------------------

#[derive(Serialize, Clone, Debug)]
pub struct ReportDocument {
    pub schema_version: String,
    pub input: InputEcho,
    pub invariants: InvariantsDoc,
    pub verdict: VerdictDoc,
    pub rules: Vec<RuleDoc>,
    pub oracle: OracleDoc,
    pub seed: u64,
    pub timing_ms: Option<u64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct InputEcho {
    pub field: u64,
    pub vars: Vec<String>,
    pub lowey_cap: Option<u32>,
    pub generators: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct InvariantsDoc {
    pub dim_a: Option<u64>,
    pub n: usize,
    pub lowey: u32,
    pub dim_w: u64,
    pub min_degree: u32,
    pub min_generators: Option<u64>,
    pub homogeneous: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerdictDoc {
    pub status: String,
    pub rank_bound: Option<u64>,
    pub nilpotency_annotation: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct RuleDoc {
    pub tag: String,
    pub polarity: String,
    pub witness: Option<String>,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct OracleDoc {
    pub status: String, // "ok" | "skipped_too_large" | "disabled"
    pub der_dim: Option<usize>,
    pub derived_series: Option<Vec<usize>>,
    pub der_solvable: Option<bool>,
    pub cross_check: Option<String>,
    pub note: Option<String>,
}

impl OracleDoc {
    fn disabled() -> Self {
        OracleDoc {
            status: "disabled".into(),
            der_dim: None,
            derived_series: None,
            der_solvable: None,
            cross_check: None,
            note: None,
        }
    }

    fn skipped(note: String) -> Self {
        OracleDoc {
            status: "skipped_too_large".into(),
            der_dim: None,
            derived_series: None,
            der_solvable: None,
            cross_check: None,
            note: Some(note),
        }
    }
}

fn input_echo(file: &PresentationFile) -> InputEcho {
    InputEcho {
        field: file.field.characteristic(),
        vars: file.var_names.clone(),
        lowey_cap: file.lowey_cap,
        generators: file
            .generators
            .iter()
            .map(|g| g.canonical_string(&file.var_names))
            .collect(),
    }
}

fn verdict_doc(report: &CertReport) -> VerdictDoc {
    VerdictDoc {
        status: report.verdict.as_str().into(),
        rank_bound: Some(report.rank_bound),
        nilpotency_annotation: report.nilpotency_annotation.map(|a| {
            match a {
                certifier::NilpotencyAnnotation::Torus => "torus".into(),
                certifier::NilpotencyAnnotation::UnipotentIfNilpotent => {
                    "unipotent_if_nilpotent".into()
                }
            }
        }),
        notes: report.notes.clone(),
    }
}

fn rule_docs(report: &CertReport, names: &[String]) -> Vec<RuleDoc> {
    report
        .fired_rules
        .iter()
        .map(|r| RuleDoc {
            tag: r.rule.tag().into(),
            polarity: r.polarity.as_str().into(),
            witness: r.witness.as_ref().map(|w| w.canonical_string(names)),
            detail: r.detail.clone(),
        })
        .collect()
}

fn invariants_doc(report: &CertReport) -> InvariantsDoc {
    let inv = &report.invariants;
    InvariantsDoc {
        dim_a: inv.dim_a,
        n: inv.n,
        lowey: inv.lowey,
        dim_w: inv.dim_w,
        min_degree: inv.min_degree,
        min_generators: inv.min_generators,
        homogeneous: inv.homogeneous,
    }
}

/// Oracle outcome on a validated presentation, honoring mode and caps.
fn oracle_doc(
    ap: &solvcert::AdmissiblePresentation,
    report: Option<&CertReport>,
    opts: &RunOptions,
) -> Result<OracleDoc, RunError> {
    match opts.oracle {
        OracleMode::Disabled => return Ok(OracleDoc::disabled()),
        OracleMode::Auto | OracleMode::Forced => {}
    }
    let dim = match algebra::algebra_dimension(ap) {
        Ok(d) => d,
        Err(AlgebraError::TooLarge(msg)) => {
            return Ok(OracleDoc::skipped(format!("quotient dimension not computable: {msg}")))
        }
        Err(e) => return Err(e.into()),
    };
    if dim > opts.dim_cap as u64 {
        return Ok(OracleDoc::skipped(format!(
            "dim A = {dim} exceeds the dimension cap {}",
            opts.dim_cap
        )));
    }
    let work = dim.saturating_mul(ap.n_vars() as u64);
    if opts.oracle == OracleMode::Auto && work > ORACLE_WORK_CAP as u64 {
        return Ok(OracleDoc::skipped(format!(
            "Leibniz system has {work} unknowns, beyond the automatic budget {ORACLE_WORK_CAP} \
             (force with --oracle)"
        )));
    }
    let qa = algebra::quotient_algebra(ap, opts.dim_cap)?;
    let der = deroracle::derivation_space(&qa, ap)?;
    let series = deroracle::derived_series(&der);
    let char0 = ap.field().is_rational();
    let cross = report.map(|r| match deroracle::cross_check(r, &series, char0) {
        CrossCheck::Pass => "pass".to_string(),
        CrossCheck::Fail { .. } => "fail".to_string(),
        CrossCheck::GroundTruthOnly { .. } => "ground_truth_only".to_string(),
        CrossCheck::NotApplicable => "not_applicable".to_string(),
    });
    Ok(OracleDoc {
        status: "ok".into(),
        der_dim: Some(der.dim()),
        derived_series: Some(series.dims.clone()),
        der_solvable: Some(series.solvable),
        cross_check: cross,
        note: None,
    })
}

/// Full certify run: validation, rules, optional oracle, one document.
pub fn run_certify(file: &PresentationFile, opts: &RunOptions) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let ap = algebra::validate_admissible(&file.to_ideal()?)?;
    let report = certifier::certify(&ap, &opts.search_config())?;
    let oracle = oracle_doc(&ap, Some(&report), opts)?;
    Ok(ReportDocument {
        schema_version: "1".into(),
        input: input_echo(file),
        invariants: invariants_doc(&report),
        verdict: verdict_doc(&report),
        rules: rule_docs(&report, &file.var_names),
        oracle,
        seed: opts.seed,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

/// Oracle-only run; pairs with a certify pass when `with_certify` is set.
/// An oracle that cannot run at the caps is an input-level failure here.
pub fn run_oracle(
    file: &PresentationFile,
    opts: &RunOptions,
    with_certify: bool,
) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let ap = algebra::validate_admissible(&file.to_ideal()?)?;
    let report = if with_certify {
        Some(certifier::certify(&ap, &opts.search_config())?)
    } else {
        None
    };
    let forced = RunOptions { oracle: OracleMode::Forced, ..opts.clone() };
    let oracle = oracle_doc(&ap, report.as_ref(), &forced)?;
    if oracle.status == "skipped_too_large" {
        return Err(RunError::Input(CliInputError::Algebra(AlgebraError::TooLarge(
            oracle.note.unwrap_or_else(|| "oracle".into()),
        ))));
    }
    let (invariants, verdict, rules) = match &report {
        Some(r) => (invariants_doc(r), verdict_doc(r), rule_docs(r, &file.var_names)),
        None => (
            InvariantsDoc {
                dim_a: algebra::algebra_dimension(&ap).ok(),
                n: ap.n_vars(),
                lowey: ap.lowey_length(),
                dim_w: 0,
                min_degree: ap.min_degree(),
                min_generators: None,
                homogeneous: ap.is_homogeneous_ideal()?,
            },
            VerdictDoc {
                status: "not_requested".into(),
                rank_bound: None,
                nilpotency_annotation: None,
                notes: vec![],
            },
            vec![],
        ),
    };
    Ok(ReportDocument {
        schema_version: "1".into(),
        input: input_echo(file),
        invariants,
        verdict,
        rules,
        oracle,
        seed: opts.seed,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

pub fn to_json(doc: &ReportDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "presentation: {} variables over {}, lowey length {}\n",
        doc.invariants.n,
        if doc.input.field == 0 { "Q".to_string() } else { format!("F_{}", doc.input.field) },
        doc.invariants.lowey
    ));
    match doc.invariants.dim_a {
        Some(d) => out.push_str(&format!("dim A = {d}\n")),
        None => out.push_str("dim A = (not computed)\n"),
    }
    out.push_str(&format!(
        "invariants: dim W = {}, min degree = {}, min generators = {}, homogeneous = {}\n",
        doc.invariants.dim_w,
        doc.invariants.min_degree,
        doc.invariants
            .min_generators
            .map(|m| m.to_string())
            .unwrap_or_else(|| "?".into()),
        doc.invariants.homogeneous
    ));
    out.push_str(&format!("verdict: {}", doc.verdict.status));
    if let Some(rb) = doc.verdict.rank_bound {
        out.push_str(&format!(" (rank bound {rb})"));
    }
    out.push('\n');
    for r in &doc.rules {
        out.push_str(&format!("  rule {} [{}]: {}\n", r.tag, r.polarity, r.detail));
        if let Some(w) = &r.witness {
            out.push_str(&format!("    witness: {w}\n"));
        }
    }
    match doc.oracle.status.as_str() {
        "ok" => {
            out.push_str(&format!(
                "oracle: dim Der(A) = {}, derived series {:?}, solvable = {}",
                doc.oracle.der_dim.unwrap_or(0),
                doc.oracle.derived_series.clone().unwrap_or_default(),
                doc.oracle.der_solvable.unwrap_or(false)
            ));
            if let Some(c) = &doc.oracle.cross_check {
                out.push_str(&format!(", cross-check {c}"));
            }
            out.push('\n');
        }
        status => {
            out.push_str(&format!("oracle: {status}"));
            if let Some(n) = &doc.oracle.note {
                out.push_str(&format!(" ({n})"));
            }
            out.push('\n');
        }
    }
    for n in &doc.verdict.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    if let Some(a) = &doc.verdict.nilpotency_annotation {
        out.push_str(&format!("nilpotency annotation: {a}\n"));
    }
    if let Some(t) = doc.timing_ms {
        out.push_str(&format!("elapsed: {t} ms\n"));
    }
    out
}
