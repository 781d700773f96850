use std::io::Write;
use std::path::Path;

use msa_decide_core::dot::export_dot;
use msa_decide_core::engine::{Movement, RecommendationReport, WarningCode, WhatIfDiff};
use msa_decide_core::knowledge::{Effect, Fact, FactValue, FindingSeverity, ValidationReport};
use msa_decide_core::{
    default_model, load_model, recommend, tradeoff_matrix, validate_model, what_if, DecisionModel,
    EngineError, KbError, Requirements,
};

use crate::args::{Command, MatrixFormat, ModelArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NO_CANDIDATES: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable file, malformed document or bad flag value.
    #[error("{0}")]
    Input(String),
    /// The knowledge base loads but is not a valid decision model.
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Input(format!("E_IO: {}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn kb_error(path: &Path, e: KbError) -> CliError {
    let message = format!("{}: {}: {e}", e.code(), path.display());
    match e {
        KbError::Syntax { .. } | KbError::InvalidValue { .. } => CliError::Input(message),
        _ => CliError::Invalid(message),
    }
}

fn engine_error(e: EngineError) -> CliError {
    let message = format!("{}: {e}", e.code());
    match e {
        EngineError::BadRequirements(_) => CliError::Input(message),
        _ => CliError::Invalid(message),
    }
}

fn load(arg: &ModelArg) -> Result<DecisionModel, CliError> {
    match &arg.model {
        None => Ok(default_model()),
        Some(path) => load_model(&read(path)?).map_err(|e| kb_error(path, e)),
    }
}

/// Loads and rejects models with validation errors.
pub fn load_valid(arg: &ModelArg) -> Result<DecisionModel, CliError> {
    let model = load(arg)?;
    let report = validate_model(&model);
    if !report.ok {
        let lines: Vec<String> = report
            .errors()
            .map(|f| format!("{}: {}", f.code, f.message))
            .collect();
        return Err(CliError::Invalid(format!(
            "invalid knowledge base\n{}",
            lines.join("\n")
        )));
    }
    Ok(model)
}

/// Splits `key=value`, naming the flag in the error.
fn assignment<'a>(flag: &str, raw: &'a str) -> Result<(&'a str, &'a str), CliError> {
    raw.split_once('=')
        .filter(|(k, _)| !k.is_empty())
        .ok_or_else(|| CliError::Input(format!("invalid --{flag} `{raw}`: expected NAME=VALUE")))
}

pub fn apply_weight(
    req: &mut Requirements,
    model: &DecisionModel,
    raw: &str,
) -> Result<(), CliError> {
    let (qa, value) = assignment("weight", raw)?;
    let bad = |why: String| CliError::Input(format!("invalid --weight `{raw}`: {why}"));
    let w: f64 = value
        .trim()
        .parse()
        .map_err(|_| bad(format!("`{value}` is not a number")))?;
    if !w.is_finite() || w < 0.0 {
        return Err(bad("weight must be a finite non-negative number".into()));
    }
    if model.qa(qa).is_none() {
        return Err(bad(format!("unknown quality attribute `{qa}`")));
    }
    req.weights.insert(qa.to_string(), w);
    Ok(())
}

pub fn apply_fact(req: &mut Requirements, raw: &str) -> Result<(), CliError> {
    let (name, value) = assignment("fact", raw)?;
    let bad = |why: String| CliError::Input(format!("invalid --fact `{raw}`: {why}"));
    let fact = Fact::parse(name).ok_or_else(|| {
        let names: Vec<&str> = Fact::ALL.iter().map(|f| f.as_str()).collect();
        bad(format!(
            "unknown fact `{name}` (expected one of {})",
            names.join(", ")
        ))
    })?;
    let v = FactValue::parse(value).ok_or_else(|| bad(format!("unknown value `{value}`")))?;
    req.context.set(fact, v).map_err(bad)
}

fn requirements_file(path: &Path, model: &DecisionModel) -> Result<Requirements, CliError> {
    let req = Requirements::from_json(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {}: {e}", e.code(), path.display())))?;
    req.validate(model)
        .map_err(|e| CliError::Input(format!("{}: {}: {e}", e.code(), path.display())))?;
    Ok(req)
}

fn out_err(e: std::io::Error) -> CliError {
    CliError::Input(format!("E_IO: cannot write output: {e}"))
}

/// Runs every command except `serve`. Returns the process exit code.
pub fn run(command: &Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Validate { model, json } => cmd_validate(model, *json, out),
        Command::Recommend {
            model,
            weights,
            facts,
            req,
            json,
        } => {
            let m = load_valid(model)?;
            let mut r = match req {
                Some(path) => requirements_file(path, &m)?,
                None => Requirements::default(),
            };
            for w in weights {
                apply_weight(&mut r, &m, w)?;
            }
            for f in facts {
                apply_fact(&mut r, f)?;
            }
            let report = recommend(&m, &r).map_err(engine_error)?;
            let text = if *json {
                report.to_json()
            } else {
                recommend_table(&report)
            };
            out.write_all(text.as_bytes()).map_err(out_err)?;
            Ok(if report.has_warning(WarningCode::NoCandidates) {
                EXIT_NO_CANDIDATES
            } else {
                EXIT_OK
            })
        }
        Command::Matrix { model, format } => {
            let matrix = tradeoff_matrix(&load_valid(model)?);
            let text = match format {
                MatrixFormat::Text => matrix.to_text(),
                MatrixFormat::Csv => matrix.to_csv(),
                MatrixFormat::Json => matrix.to_json(),
            };
            out.write_all(text.as_bytes()).map_err(out_err)?;
            Ok(EXIT_OK)
        }
        Command::Whatif {
            model,
            base,
            variant,
            json,
        } => {
            let m = load_valid(model)?;
            let b = requirements_file(base, &m)?;
            let v = requirements_file(variant, &m)?;
            let diff = what_if(&m, &b, &v).map_err(engine_error)?;
            let text = if *json {
                diff.to_json()
            } else {
                whatif_table(&diff)
            };
            out.write_all(text.as_bytes()).map_err(out_err)?;
            Ok(EXIT_OK)
        }
        Command::ExportDot { model } => {
            out.write_all(export_dot(&load_valid(model)?).as_bytes())
                .map_err(out_err)?;
            Ok(EXIT_OK)
        }
        Command::Serve { .. } => unreachable!("serve is dispatched by main"),
    }
}

fn cmd_validate(arg: &ModelArg, json: bool, out: &mut dyn Write) -> Result<u8, CliError> {
    let model = load(arg)?;
    let report = validate_model(&model);
    let text = if json {
        msa_decide_core::engine::report::to_canonical_json(&report)
    } else {
        validation_text(&model, &report)
    };
    out.write_all(text.as_bytes()).map_err(out_err)?;
    Ok(if report.ok { EXIT_OK } else { 2 })
}

fn validation_text(model: &DecisionModel, report: &ValidationReport) -> String {
    let meta = model.metadata();
    let mut s = format!(
        "{}@{}: {} patterns, {} quality attributes, {} nodes, {} edges\n",
        meta.id,
        meta.version,
        model.patterns().len(),
        model.qas().len(),
        model.nodes().len(),
        model.edges().len()
    );
    for f in &report.findings {
        let sev = match f.severity {
            FindingSeverity::Error => "error",
            FindingSeverity::Warning => "warning",
        };
        s.push_str(&format!("{sev} {}: {}\n", f.code, f.message));
    }
    let errors = report.errors().count();
    s.push_str(&if report.ok {
        "ok\n".to_string()
    } else {
        format!("invalid: {errors} error(s)\n")
    });
    s
}

/// Fixed-width columns, trailing whitespace trimmed.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    s
}

fn fmt_score(x: f64) -> String {
    msa_decide_core::engine::report::fmt_num(x)
}

fn recommend_table(report: &RecommendationReport) -> String {
    let mut s = format!("model {}\n", report.model_version);
    if report.entries.is_empty() {
        s.push_str("no eligible patterns\n");
    } else {
        let rows: Vec<Vec<String>> = report
            .entries
            .iter()
            .map(|e| {
                let list = |effect: Effect| {
                    let qas: Vec<&str> = e
                        .contributions
                        .iter()
                        .filter(|c| c.effect == effect && c.value != 0.0)
                        .map(|c| c.qa.as_str())
                        .collect();
                    if qas.is_empty() {
                        "-".to_string()
                    } else {
                        qas.join(", ")
                    }
                };
                vec![
                    e.rank.to_string(),
                    e.pattern_id.clone(),
                    fmt_score(e.score),
                    list(Effect::Positive),
                    list(Effect::Negative),
                    e.warnings.len().to_string(),
                ]
            })
            .collect();
        s.push_str(&table(
            &[
                "rank",
                "pattern",
                "score",
                "positives",
                "negatives",
                "warnings",
            ],
            &rows,
        ));
    }
    let notes: Vec<String> = report
        .entries
        .iter()
        .flat_map(|e| {
            let complements = (!e.complements.is_empty()).then(|| {
                format!(
                    "  {}: complements {}",
                    e.pattern_id,
                    e.complements.join(", ")
                )
            });
            complements.into_iter().chain(
                e.warnings
                    .iter()
                    .map(move |w| format!("  {}: {} {}", e.pattern_id, w.code.as_str(), w.message)),
            )
        })
        .chain(
            report
                .global_warnings
                .iter()
                .map(|w| format!("  {} {}", w.code.as_str(), w.message)),
        )
        .collect();
    if !notes.is_empty() {
        s.push_str("\nnotes:\n");
        for n in notes {
            s.push_str(&n);
            s.push('\n');
        }
    }
    s
}

fn whatif_table(diff: &WhatIfDiff) -> String {
    let opt_rank = |r: Option<usize>| r.map_or("-".to_string(), |r| r.to_string());
    let opt_score = |x: Option<f64>| x.map_or("-".to_string(), fmt_score);
    let rows: Vec<Vec<String>> = diff
        .entries
        .iter()
        .map(|e| {
            let status = match e.status {
                Movement::Promoted => "promoted",
                Movement::Demoted => "demoted",
                Movement::Unchanged => "unchanged",
                Movement::Entered => "entered",
                Movement::Left => "left",
            };
            vec![
                e.pattern_id.clone(),
                opt_rank(e.base_rank),
                opt_rank(e.variant_rank),
                opt_score(e.base_score),
                opt_score(e.variant_score),
                status.to_string(),
            ]
        })
        .collect();
    table(
        &[
            "pattern",
            "base rank",
            "variant rank",
            "base score",
            "variant score",
            "status",
        ],
        &rows,
    )
}
