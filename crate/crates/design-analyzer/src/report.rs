//! Output formats: DOT for the interaction graph, a JSON document for
//! machine consumption, CSV for the metric matrix (also re-read by the
//! replay flow), and a plain-text analysis report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interactions::{InteractionGraph, InteractionKind};
use crate::registry::ClassId;
use crate::metrics::{MetricsMatrix, Orientation};
use crate::pca::{MeasureSelection, PcaResult, Recommendation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ReportError {
    #[error("metric rows must be classes and columns measures for this format")]
    WrongOrientation,
    #[error("malformed csv at line {line}: {message}")]
    MalformedCsv { line: usize, message: String },
}

/// Aggregate per-kind evidence counts for every deduplicated edge, in
/// edge order.
fn edge_counts(graph: &InteractionGraph) -> BTreeMap<(ClassId, ClassId), [u64; 4]> {
    let mut counts: BTreeMap<(ClassId, ClassId), [u64; 4]> = BTreeMap::new();
    for evidence in &graph.evidences {
        let slot = InteractionKind::ALL
            .iter()
            .position(|k| *k == evidence.kind)
            .expect("every kind is listed");
        counts.entry((evidence.source, evidence.target)).or_default()[slot] += 1;
    }
    counts
}

/// Render the deduplicated interaction graph as a DOT digraph. Every
/// class appears as a node; each edge is labeled with its interaction
/// kinds and the total number of evidences behind it.
pub fn to_dot(graph: &InteractionGraph) -> String {
    let counts = edge_counts(graph);
    let mut out = String::from("digraph design_pattern {\n");
    for node in &graph.nodes {
        out.push_str(&format!("  \"{}\";\n", node.name));
    }
    for &(source, target) in &graph.ccig_edges {
        let per_kind = counts.get(&(source, target)).copied().unwrap_or_default();
        let kinds: Vec<&str> = InteractionKind::ALL
            .iter()
            .enumerate()
            .filter(|(slot, _)| per_kind[*slot] > 0)
            .map(|(_, kind)| kind.short_name())
            .collect();
        let total: u64 = per_kind.iter().sum();
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{} x{}\"];\n",
            graph.label(source),
            graph.label(target),
            kinds.join(","),
            total
        ));
    }
    out.push_str("}\n");
    out
}

/// Schema version stamped into every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassEntry {
    pub name: String,
    pub kind: String,
    pub file: String,
    pub line: u32,
    pub visible_members: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct EdgeKinds {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inherit: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decl: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub param: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r#return: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EdgeEntry {
    pub source: String,
    pub target: String,
    pub kinds: EdgeKinds,
    pub total: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GraphDoc {
    pub schema_version: u32,
    pub classes: Vec<ClassEntry>,
    pub edges: Vec<EdgeEntry>,
}

/// Build the JSON-facing document for an interaction graph.
pub fn graph_doc(graph: &InteractionGraph) -> GraphDoc {
    let counts = edge_counts(graph);
    let classes = graph
        .nodes
        .iter()
        .map(|node| ClassEntry {
            name: node.name.clone(),
            kind: node.kind.as_str().to_string(),
            file: node.location.file.to_string(),
            line: node.location.line,
            visible_members: node.visible_members,
        })
        .collect();
    let edges = graph
        .ccig_edges
        .iter()
        .map(|&(source, target)| {
            let per_kind = counts.get(&(source, target)).copied().unwrap_or_default();
            let pick = |slot: usize| (per_kind[slot] > 0).then_some(per_kind[slot]);
            EdgeEntry {
                source: graph.label(source).to_string(),
                target: graph.label(target).to_string(),
                kinds: EdgeKinds {
                    inherit: pick(0),
                    decl: pick(1),
                    param: pick(2),
                    r#return: pick(3),
                },
                total: per_kind.iter().sum(),
            }
        })
        .collect();
    GraphDoc {
        schema_version: SCHEMA_VERSION,
        classes,
        edges,
    }
}

/// Pretty-printed JSON for the graph document, newline-terminated.
pub fn to_json(graph: &InteractionGraph) -> String {
    let doc = graph_doc(graph);
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

/// Whole numbers print without a decimal point so the CSV stays readable
/// and round-trips exactly for integer metrics.
fn format_number<T: Scalar>(value: T) -> String {
    let v = value.as_f64();
    if v.is_finite() && v.fract() == 0.0 && v.abs() <= 9_007_199_254_740_992.0 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Serialize a classes-by-measures metric matrix as CSV with a `class`
/// label column.
pub fn metrics_csv<T: Scalar>(matrix: &MetricsMatrix<T>) -> Result<String, ReportError> {
    if matrix.orientation != Orientation::ClassesByMeasures {
        return Err(ReportError::WrongOrientation);
    }
    let mut out = String::from("class");
    for label in &matrix.col_labels {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    for (i, row_label) in matrix.row_labels.iter().enumerate() {
        out.push_str(row_label);
        for j in 0..matrix.values.cols() {
            out.push(',');
            out.push_str(&format_number(matrix.values.get(i, j)));
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parse a CSV produced by [`metrics_csv`] (or hand-written in the same
/// shape) back into a classes-by-measures matrix. Fields are split on
/// bare commas; labels therefore must not contain commas.
pub fn parse_metrics_csv<T: Scalar>(text: &str) -> Result<MetricsMatrix<T>, ReportError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(ReportError::MalformedCsv {
        line: 1,
        message: "missing header".to_string(),
    })?;
    let header_fields: Vec<&str> = header.split(',').collect();
    if header_fields.len() < 2 {
        return Err(ReportError::MalformedCsv {
            line: 1,
            message: "header needs a label column and at least one measure".to_string(),
        });
    }
    let col_labels: Vec<String> = header_fields[1..].iter().map(|s| s.to_string()).collect();
    let mut row_labels = Vec::new();
    let mut rows: Vec<Vec<T>> = Vec::new();
    for (index, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header_fields.len() {
            return Err(ReportError::MalformedCsv {
                line: index + 1,
                message: format!(
                    "expected {} fields, found {}",
                    header_fields.len(),
                    fields.len()
                ),
            });
        }
        row_labels.push(fields[0].to_string());
        let mut row = Vec::with_capacity(col_labels.len());
        for field in &fields[1..] {
            let value: f64 = field.trim().parse().map_err(|e| ReportError::MalformedCsv {
                line: index + 1,
                message: format!("bad number {field:?}: {e}"),
            })?;
            row.push(T::from_f64(value));
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ReportError::MalformedCsv {
            line: 2,
            message: "no data rows".to_string(),
        });
    }
    Ok(MetricsMatrix {
        values: crate::linalg::DenseMatrix::from_rows(&rows),
        row_labels,
        col_labels,
        orientation: Orientation::ClassesByMeasures,
    })
}

/// Plain-text report for an analysis: eigenpairs, cumulative variance,
/// and optionally the selected measure and the integration-class
/// recommendation.
pub fn pca_report<T: Scalar>(
    pca: &PcaResult<T>,
    selection: Option<&MeasureSelection>,
    recommendation: Option<&Recommendation>,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("components: {}\n", pca.labels.join(", ")));
    out.push_str(" #  eigenvalue  component vector\n");
    for (i, (value, vector)) in pca.eigenvalues.iter().zip(&pca.eigenvectors).enumerate() {
        let parts: Vec<String> = vector.iter().map(|w| format!("{:.6}", w.as_f64())).collect();
        out.push_str(&format!(
            "{:>2}  {:>10.4}  [{}]\n",
            i + 1,
            value.as_f64(),
            parts.join(", ")
        ));
    }
    out.push_str("variance retained:\n");
    if pca.variance_retained.is_empty() {
        out.push_str("  undefined (total variance is zero)\n");
    } else {
        for (i, ratio) in pca.variance_retained.iter().enumerate() {
            out.push_str(&format!(
                "  d={:<2} {:>7.2}%\n",
                i + 1,
                ratio.as_f64() * 100.0
            ));
        }
    }
    if let Some(selection) = selection {
        out.push_str(&format!("most significant measure: {}\n", selection.measure));
    }
    if let Some(recommendation) = recommendation {
        let classes = if recommendation.classes.is_empty() {
            "(none)".to_string()
        } else {
            recommendation.classes.join(", ")
        };
        out.push_str(&format!(
            "recommendation (rule: {}): {}\n",
            recommendation.rule, classes
        ));
    }
    out
}
