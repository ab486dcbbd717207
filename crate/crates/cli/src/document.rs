//! Canonical result documents: fixed key order, rationals as "p/q" strings,
//! no floating point anywhere. JSON output preserves struct declaration
//! order; text output renders the same data as indented key/value lines with
//! alphabetically ordered keys. Both are byte-deterministic.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use folner_core::cheeger::CheegerValue;
use folner_core::decompose::{PartCertificate, VerificationReport};
use folner_core::qi::QiViolation;
use folner_core::{DecompositionResult, Graph, Ratio, VertexSet};

use crate::CliError;

pub fn sha256_hex(parts: &[&str]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.as_bytes());
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(7 + 64);
    out.push_str("sha256:");
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub fn graph_digest(g: &Graph) -> String {
    sha256_hex(&[&g.to_edge_list()])
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Serialize)]
pub struct ResultDocument<P: Serialize> {
    pub command: String,
    pub input_digest: String,
    pub status: String,
    pub payload: P,
}

impl<P: Serialize> ResultDocument<P> {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut text =
                    serde_json::to_string_pretty(self).expect("documents are serializable");
                text.push('\n');
                text
            }
            OutputFormat::Text => {
                let value = serde_json::to_value(self).expect("documents are serializable");
                let map = value.as_object().expect("documents are objects");
                let mut out = String::new();
                // Keep the envelope keys in declaration order; nested keys
                // render alphabetically.
                for key in ["command", "input_digest", "status", "payload"] {
                    let inner = &map[key];
                    if is_scalar(inner) {
                        out.push_str(&format!("{key}: {}\n", scalar_to_string(inner)));
                    } else {
                        out.push_str(&format!("{key}:\n"));
                        render_value(&mut out, inner, 1, false);
                    }
                }
                out
            }
        }
    }
}

fn is_scalar(value: &Value) -> bool {
    !matches!(value, Value::Object(_) | Value::Array(_))
}

fn scalar_to_string(value: &Value) -> String {
    match value {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_value(out: &mut String, value: &Value, indent: usize, inline_first: bool) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (i, (key, inner)) in map.iter().enumerate() {
                let prefix = if inline_first && i == 0 {
                    String::new()
                } else {
                    pad.clone()
                };
                if is_scalar(inner) {
                    out.push_str(&format!("{prefix}{key}: {}\n", scalar_to_string(inner)));
                } else if let Value::Array(items) = inner {
                    if items.iter().all(is_scalar) {
                        let rendered: Vec<String> = items.iter().map(scalar_to_string).collect();
                        out.push_str(&format!("{prefix}{key}: [{}]\n", rendered.join(", ")));
                    } else {
                        out.push_str(&format!("{prefix}{key}:\n"));
                        render_value(out, inner, indent + 1, false);
                    }
                } else {
                    out.push_str(&format!("{prefix}{key}:\n"));
                    render_value(out, inner, indent + 1, false);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar_to_string(item)));
                } else if let Value::Array(inner) = item {
                    if inner.iter().all(is_scalar) {
                        let rendered: Vec<String> = inner.iter().map(scalar_to_string).collect();
                        out.push_str(&format!("{pad}- [{}]\n", rendered.join(", ")));
                    } else {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(out, item, indent + 1, false);
                    }
                } else {
                    out.push_str(&format!("{pad}- "));
                    render_value(out, item, indent + 1, true);
                }
            }
        }
        scalar => {
            out.push_str(&format!("{pad}{}\n", scalar_to_string(scalar)));
        }
    }
}

// ---------------------------------------------------------------------------
// payload DTOs

#[derive(Serialize)]
pub struct EmptyPayload {}

#[derive(Serialize)]
pub struct CheegerPayload {
    pub value: String,
    pub realizer: Option<Vec<u32>>,
    pub exact: bool,
}

#[derive(Serialize)]
pub struct FolnerFoundPayload {
    pub set: Vec<u32>,
    pub ratio: String,
}

#[derive(Serialize)]
pub struct FolnerEnumeratePayload {
    pub count: usize,
    pub sets: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
pub struct PartDto {
    pub vertices: Vec<u32>,
    pub depth: usize,
    pub threshold: String,
    pub part_cheeger: String,
    pub alpha_big: bool,
}

#[derive(Serialize, Deserialize)]
pub struct DecomposedPayload {
    pub k: usize,
    pub delta: String,
    pub parts: Vec<PartDto>,
}

#[derive(Serialize, Deserialize)]
pub struct WitnessPayload {
    pub witness: Vec<u32>,
    pub ratio: String,
}

#[derive(Serialize)]
pub struct CheckDto {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct VerifyPayload {
    pub ok: bool,
    pub checks: Vec<CheckDto>,
}

#[derive(Serialize)]
pub struct StructurePayload {
    pub folner: Vec<u32>,
    pub folner_ratio: String,
    pub alpha: String,
    pub derived_alpha: String,
    pub k: usize,
    pub delta: String,
    pub parts: Vec<PartDto>,
}

#[derive(Serialize)]
pub struct StructureRefusedPayload {
    pub folner: Vec<u32>,
    pub size: usize,
}

#[derive(Serialize)]
pub struct DichotomyEntryDto {
    pub graph: String,
    pub input_digest: String,
    pub best_folner_fraction: Option<String>,
    pub expander_part: Option<PartDto>,
}

#[derive(Serialize)]
pub struct DichotomyPayload {
    pub epsilon: String,
    pub alpha: String,
    pub entries: Vec<DichotomyEntryDto>,
}

#[derive(Serialize)]
pub struct RhoPayload {
    pub m: usize,
    pub value: String,
    pub witness: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize)]
pub struct QiViolationDto {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain_distance: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub codomain_distance: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearest_image_distance: Option<u32>,
}

#[derive(Serialize)]
pub struct FiberDto {
    pub holds: bool,
    pub max_fiber: usize,
    pub bound: String,
}

#[derive(Serialize)]
pub struct DensityDto {
    pub holds: bool,
    pub codomain_size: usize,
    pub image_size: usize,
    pub domain_size: usize,
    pub factor: String,
}

#[derive(Serialize)]
pub struct BetaDto {
    pub value: String,
    pub degree_le_one: bool,
}

#[derive(Serialize)]
pub struct PreimageDto {
    pub status: String,
    pub beta: String,
    pub preimage_size: Option<usize>,
    pub nonempty_beta_small_exists: Option<bool>,
}

#[derive(Serialize)]
pub struct QiPayload {
    pub qi_verified: bool,
    pub degree_bound: usize,
    pub violations: Vec<QiViolationDto>,
    pub fiber: Option<FiberDto>,
    pub density: Option<DensityDto>,
    pub beta: Option<BetaDto>,
    pub preimage: Option<PreimageDto>,
}

// ---------------------------------------------------------------------------
// conversions

pub fn part_to_dto(part: &PartCertificate) -> PartDto {
    PartDto {
        vertices: part.vertices.members().to_vec(),
        depth: part.depth,
        threshold: part.threshold.to_string(),
        part_cheeger: part.part_cheeger.to_string(),
        alpha_big: part.alpha_big,
    }
}

pub fn verify_report_to_payload(
    report: &VerificationReport,
    extra: Vec<CheckDto>,
) -> VerifyPayload {
    let mut checks = extra;
    checks.extend(report.checks.iter().map(|c| CheckDto {
        label: c.label.clone(),
        passed: c.passed,
        detail: c.detail.clone(),
    }));
    VerifyPayload {
        ok: report.ok && checks.iter().all(|c| c.passed),
        checks,
    }
}

pub fn violation_to_dto(v: &QiViolation) -> QiViolationDto {
    match *v {
        QiViolation::LowerBound {
            x,
            x2,
            domain_distance,
            codomain_distance,
        } => QiViolationDto {
            kind: "lower-bound".into(),
            x: Some(x),
            x2: Some(x2),
            y: None,
            domain_distance: Some(domain_distance),
            codomain_distance: Some(codomain_distance),
            nearest_image_distance: None,
        },
        QiViolation::UpperBound {
            x,
            x2,
            domain_distance,
            codomain_distance,
        } => QiViolationDto {
            kind: "upper-bound".into(),
            x: Some(x),
            x2: Some(x2),
            y: None,
            domain_distance: Some(domain_distance),
            codomain_distance: Some(codomain_distance),
            nearest_image_distance: None,
        },
        QiViolation::Density {
            y,
            nearest_image_distance,
        } => QiViolationDto {
            kind: "density".into(),
            x: None,
            x2: None,
            y: Some(y),
            domain_distance: None,
            codomain_distance: None,
            nearest_image_distance: Some(nearest_image_distance),
        },
    }
}

// ---------------------------------------------------------------------------
// reading decomposition documents back for `verify`

#[derive(Deserialize)]
pub struct ResultDocumentIn {
    #[serde(default)]
    pub input_digest: Option<String>,
    pub status: String,
    pub payload: Value,
}

pub fn parse_cheeger_value(text: &str) -> Result<CheegerValue, CliError> {
    if text == "inf" {
        Ok(CheegerValue::Infinite)
    } else {
        Ok(CheegerValue::Finite(Ratio::parse(text)?))
    }
}

/// Rebuilds a core decomposition result from a previously emitted document.
pub fn decomposition_from_document(
    doc: &ResultDocumentIn,
    n: usize,
) -> Result<DecompositionResult, CliError> {
    match doc.status.as_str() {
        "decomposed" => {
            let payload: DecomposedPayload = serde_json::from_value(doc.payload.clone())
                .map_err(|e| CliError::Usage(format!("malformed decomposition payload: {e}")))?;
            let parts = payload
                .parts
                .iter()
                .map(|dto| {
                    Ok(PartCertificate {
                        vertices: VertexSet::new(n, dto.vertices.iter().copied())?,
                        depth: dto.depth,
                        threshold: Ratio::parse(&dto.threshold)?,
                        part_cheeger: parse_cheeger_value(&dto.part_cheeger)?,
                        alpha_big: dto.alpha_big,
                    })
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(DecompositionResult::Decomposed {
                parts,
                k: payload.k,
                delta: Ratio::parse(&payload.delta)?,
            })
        }
        "witness" => {
            let payload: WitnessPayload = serde_json::from_value(doc.payload.clone())
                .map_err(|e| CliError::Usage(format!("malformed witness payload: {e}")))?;
            Ok(DecompositionResult::Witness {
                witness: VertexSet::new(n, payload.witness.iter().copied())?,
                ratio: Ratio::parse(&payload.ratio)?,
            })
        }
        other => Err(CliError::Usage(format!(
            "result document has status {other:?}; expected \"decomposed\" or \"witness\""
        ))),
    }
}
