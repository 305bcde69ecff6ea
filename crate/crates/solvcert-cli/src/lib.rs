//! Library surface of the certifier CLI: presentation-file parsing, report
//! documents, and the built-in fixture corpus.

pub mod fixtures;
pub mod parse;
pub mod report;

use report::{ReportDocument, RunError, RunOptions};

/// Runs the whole corpus (optionally name-filtered) and renders the summary
/// table. Returns the table; an empty filter match is an input error.
pub fn run_fixtures(filter: Option<&str>, opts: &RunOptions) -> Result<String, RunError> {
    let selected: Vec<&fixtures::Fixture> = match filter {
        Some(f) => fixtures::find(f),
        None => fixtures::FIXTURES.iter().collect(),
    };
    if selected.is_empty() {
        return Err(RunError::Input(parse::CliInputError::Parse {
            line: 0,
            col: 0,
            message: format!("no fixture matches {:?}", filter.unwrap_or("")),
        }));
    }
    let mut out = String::new();
    out.push_str(&format!(
        "{:<14} {:<24} {:<28} {:<18} {}\n",
        "fixture", "verdict", "rules", "oracle", "agreement"
    ));
    for fx in selected {
        let file = parse::PresentationFile::parse(fx.source)?;
        let doc = report::run_certify(&file, opts)?;
        out.push_str(&render_row(fx.name, &doc));
    }
    Ok(out)
}

fn render_row(name: &str, doc: &ReportDocument) -> String {
    let rules = if doc.rules.is_empty() {
        "-".to_string()
    } else {
        doc.rules.iter().map(|r| r.tag.as_str()).collect::<Vec<_>>().join(",")
    };
    let oracle = match doc.oracle.status.as_str() {
        "ok" => match doc.oracle.der_solvable {
            Some(true) => "solvable".to_string(),
            Some(false) => "not_solvable".to_string(),
            None => "ok".to_string(),
        },
        other => other.to_string(),
    };
    let agreement = doc.oracle.cross_check.clone().unwrap_or_else(|| "-".into());
    format!(
        "{:<14} {:<24} {:<28} {:<18} {}\n",
        name,
        doc.verdict.status,
        rules,
        oracle,
        if doc.oracle.status == "ok" { agreement.to_uppercase() } else { "-".into() }
    )
}
