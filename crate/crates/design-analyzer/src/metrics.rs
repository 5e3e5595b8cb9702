//! Per-class coupling measures and the metric matrix.
//!
//! Six measures per class, derived from the interaction graph:
//!
//! - NUCD: distinct classes this class has dependency evidence toward;
//! - TNUCD: total outgoing dependency evidences;
//! - NUCC: distinct classes with dependency evidence toward this class;
//! - TNUCC: total incoming dependency evidences;
//! - ClassCoupling: out-degree plus in-degree over the deduplicated edge
//!   set, all interaction kinds included;
//! - VisibleMembers: declared fields and methods that are not private.
//!
//! Dependency evidence means the ParamPass, ReturnType and ObjectDecl
//! kinds; inheritance participates only in ClassCoupling.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::interactions::InteractionGraph;
use crate::linalg::DenseMatrix;
use crate::registry::ClassId;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("unknown class id {0}")]
    UnknownClass(usize),
    #[error("no user-defined classes found")]
    EmptyCorpus,
}

/// Fixed measure column order used by every matrix, report and table.
pub const MEASURE_LABELS: [&str; 6] = [
    "NUCD",
    "TNUCD",
    "NUCC",
    "TNUCC",
    "ClassCoupling",
    "VisibleMembers",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricVector {
    pub class: ClassId,
    pub nucd: u64,
    pub tnucd: u64,
    pub nucc: u64,
    pub tnucc: u64,
    pub class_coupling: u64,
    pub visible_members: u64,
}

impl MetricVector {
    /// Values in the fixed measure order.
    pub fn as_array(&self) -> [u64; 6] {
        [
            self.nucd,
            self.tnucd,
            self.nucc,
            self.tnucc,
            self.class_coupling,
            self.visible_members,
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Rows are classes, columns are the six measures.
    ClassesByMeasures,
    /// Rows are the six measures, columns are classes.
    MeasuresByClasses,
}

/// Labeled real-valued matrix of metric values.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsMatrix<T> {
    pub values: DenseMatrix<T>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub orientation: Orientation,
}

impl<T: Scalar> MetricsMatrix<T> {
    /// The same data with rows and columns (and the orientation flag)
    /// swapped.
    pub fn transposed(&self) -> MetricsMatrix<T> {
        MetricsMatrix {
            values: self.values.transposed(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
            orientation: match self.orientation {
                Orientation::ClassesByMeasures => Orientation::MeasuresByClasses,
                Orientation::MeasuresByClasses => Orientation::ClassesByMeasures,
            },
        }
    }
}

/// The dependency-evidence multiset: every (source, target) pair from
/// evidences of the three dependency kinds, duplicates preserved.
pub fn dependency_edges(graph: &InteractionGraph) -> Vec<(ClassId, ClassId)> {
    graph
        .evidences
        .iter()
        .filter(|e| e.kind.is_dependency())
        .map(|e| (e.source, e.target))
        .collect()
}

/// All six measures for one class.
pub fn compute_class_metrics(
    graph: &InteractionGraph,
    class: ClassId,
) -> Result<MetricVector, MetricsError> {
    let node = graph
        .nodes
        .get(class.0)
        .ok_or(MetricsError::UnknownClass(class.0))?;
    let deps = dependency_edges(graph);
    let mut out_targets: BTreeSet<ClassId> = BTreeSet::new();
    let mut in_sources: BTreeSet<ClassId> = BTreeSet::new();
    let mut tnucd = 0u64;
    let mut tnucc = 0u64;
    for &(source, target) in &deps {
        if source == class {
            out_targets.insert(target);
            tnucd += 1;
        }
        if target == class {
            in_sources.insert(source);
            tnucc += 1;
        }
    }
    let class_coupling = graph
        .ccig_edges
        .iter()
        .filter(|(s, t)| *s == class || *t == class)
        .count() as u64;
    Ok(MetricVector {
        class,
        nucd: out_targets.len() as u64,
        tnucd,
        nucc: in_sources.len() as u64,
        tnucc,
        class_coupling,
        visible_members: node.visible_members,
    })
}

/// Metric vectors for every class, in id order.
pub fn all_class_metrics(graph: &InteractionGraph) -> Vec<MetricVector> {
    graph
        .nodes
        .iter()
        .map(|n| compute_class_metrics(graph, n.id).expect("node ids are dense"))
        .collect()
}

/// Assemble the labeled metric matrix in the requested orientation.
/// Rows and columns follow id order (lexicographic class names) and the
/// fixed measure order.
pub fn metrics_matrix<T: Scalar>(
    graph: &InteractionGraph,
    orientation: Orientation,
) -> Result<MetricsMatrix<T>, MetricsError> {
    if graph.nodes.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let vectors = all_class_metrics(graph);
    let class_labels: Vec<String> = graph.nodes.iter().map(|n| n.name.clone()).collect();
    let measure_labels: Vec<String> = MEASURE_LABELS.iter().map(|s| s.to_string()).collect();
    let rows: Vec<Vec<T>> = vectors
        .iter()
        .map(|v| {
            v.as_array()
                .iter()
                .map(|&n| T::from_f64(n as f64))
                .collect()
        })
        .collect();
    let classes_by_measures = MetricsMatrix {
        values: DenseMatrix::from_rows(&rows),
        row_labels: class_labels,
        col_labels: measure_labels,
        orientation: Orientation::ClassesByMeasures,
    };
    Ok(match orientation {
        Orientation::ClassesByMeasures => classes_by_measures,
        Orientation::MeasuresByClasses => classes_by_measures.transposed(),
    })
}
