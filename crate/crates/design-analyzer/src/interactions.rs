//! Interaction detection and the class-interaction graph.
//!
//! Four detectors turn parsed declarations into evidence of directed
//! interactions between registered classes:
//!
//! - `ParamPass`: a method parameter whose type is another registered class;
//! - `ReturnType`: a method return type that is another registered class;
//! - `ObjectDecl`: a field whose declared type is another registered class,
//!   or a `new T(...)` expression inside a method body;
//! - `Inheritance`: an `extends` or `implements` clause naming another
//!   registered class.
//!
//! Field initializers never add evidence on top of the field's declared
//! type, self references are discarded, and only registered classes count.
//! The graph keeps every evidence (the multiset) plus the deduplicated
//! directed edge set used for coupling.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lexer::Location;
use crate::parser::{ClassDecl, ClassKind};
use crate::registry::{ClassId, ClassRegistry};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("no user-defined classes found")]
    EmptyCorpus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InteractionKind {
    ParamPass,
    ReturnType,
    ObjectDecl,
    Inheritance,
}

impl InteractionKind {
    /// Fixed rendering order used by the reports.
    pub const ALL: [InteractionKind; 4] = [
        InteractionKind::Inheritance,
        InteractionKind::ObjectDecl,
        InteractionKind::ParamPass,
        InteractionKind::ReturnType,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            InteractionKind::Inheritance => "inherit",
            InteractionKind::ObjectDecl => "decl",
            InteractionKind::ParamPass => "param",
            InteractionKind::ReturnType => "return",
        }
    }

    /// Inheritance is structural; the other three kinds are the
    /// dependency evidences behind NUCD/TNUCD/NUCC/TNUCC.
    pub fn is_dependency(self) -> bool {
        !matches!(self, InteractionKind::Inheritance)
    }
}

impl std::fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.short_name())
    }
}

/// One detected interaction. `source` interacts with (depends on,
/// inherits from) `target`; source and target always differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionEvidence {
    pub source: ClassId,
    pub target: ClassId,
    pub kind: InteractionKind,
    pub location: Location,
    /// Member or expression the evidence came from: a method or field
    /// name, `new T` for local instantiations, the supertype name for
    /// inheritance.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassNode {
    pub id: ClassId,
    pub name: String,
    pub kind: ClassKind,
    pub location: Location,
    /// Declared fields plus methods that are not private.
    pub visible_members: u64,
}

/// The interaction graph: every node the registry knows, the full
/// evidence multiset, and the deduplicated directed edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    /// In id order; node index equals `ClassId.0`.
    pub nodes: Vec<ClassNode>,
    /// Sorted by (file, line, detail); duplicates preserved.
    pub evidences: Vec<InteractionEvidence>,
    /// Deduplicated directed edges: one entry per (source, target) pair
    /// with at least one evidence of any kind.
    pub ccig_edges: BTreeSet<(ClassId, ClassId)>,
}

impl InteractionGraph {
    /// Assemble a graph from prebuilt parts, deriving the deduplicated
    /// edge set and the canonical evidence order. Used by the pipeline and
    /// by synthetic-graph tests.
    pub fn from_parts(
        nodes: Vec<ClassNode>,
        mut evidences: Vec<InteractionEvidence>,
    ) -> Result<Self, GraphError> {
        if nodes.is_empty() {
            return Err(GraphError::EmptyCorpus);
        }
        debug_assert!(evidences.iter().all(|e| e.source != e.target));
        evidences.sort_by(|a, b| {
            (a.location.file.as_ref(), a.location.line, a.detail.as_str()).cmp(&(
                b.location.file.as_ref(),
                b.location.line,
                b.detail.as_str(),
            ))
        });
        let ccig_edges = evidences.iter().map(|e| (e.source, e.target)).collect();
        Ok(InteractionGraph {
            nodes,
            evidences,
            ccig_edges,
        })
    }

    pub fn label(&self, id: ClassId) -> &str {
        &self.nodes[id.0].name
    }
}

fn own_id(decl: &ClassDecl, registry: &ClassRegistry) -> Option<ClassId> {
    registry.resolve(&decl.name)
}

/// Parameter-type evidence: one per parameter position whose type
/// resolves to a different registered class.
pub fn detect_param_interactions(
    decl: &ClassDecl,
    registry: &ClassRegistry,
) -> Vec<InteractionEvidence> {
    let Some(source) = own_id(decl, registry) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for method in &decl.methods {
        for param in &method.parameter_types {
            if let Some(target) = registry.resolve(param) {
                if target != source {
                    out.push(InteractionEvidence {
                        source,
                        target,
                        kind: InteractionKind::ParamPass,
                        location: method.location.clone(),
                        detail: method.name.clone(),
                    });
                }
            }
        }
    }
    out
}

/// Return-type evidence: one per method whose return type resolves to a
/// different registered class.
pub fn detect_return_interactions(
    decl: &ClassDecl,
    registry: &ClassRegistry,
) -> Vec<InteractionEvidence> {
    let Some(source) = own_id(decl, registry) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for method in &decl.methods {
        if let Some(target) = registry.resolve(&method.return_type) {
            if target != source {
                out.push(InteractionEvidence {
                    source,
                    target,
                    kind: InteractionKind::ReturnType,
                    location: method.location.clone(),
                    detail: method.name.clone(),
                });
            }
        }
    }
    out
}

/// Object-declaration evidence: one per field whose declared type
/// resolves to a different registered class, and one per `new T(...)`
/// inside a method body. A field's initializer never adds a second
/// evidence for the same field.
pub fn detect_decl_interactions(
    decl: &ClassDecl,
    registry: &ClassRegistry,
) -> Vec<InteractionEvidence> {
    let Some(source) = own_id(decl, registry) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for field in &decl.fields {
        if let Some(target) = registry.resolve(&field.declared_type) {
            if target != source {
                out.push(InteractionEvidence {
                    source,
                    target,
                    kind: InteractionKind::ObjectDecl,
                    location: field.location.clone(),
                    detail: field.name.clone(),
                });
            }
        }
    }
    for local in &decl.local_instantiations {
        if let Some(target) = registry.resolve(&local.type_name) {
            if target != source {
                out.push(InteractionEvidence {
                    source,
                    target,
                    kind: InteractionKind::ObjectDecl,
                    location: local.location.clone(),
                    detail: format!("new {}", local.type_name),
                });
            }
        }
    }
    out
}

/// Inheritance evidence: one per resolved `extends` or `implements` name,
/// directed subtype to supertype.
pub fn detect_inheritance_interactions(
    decl: &ClassDecl,
    registry: &ClassRegistry,
) -> Vec<InteractionEvidence> {
    let Some(source) = own_id(decl, registry) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let supers = decl
        .extends_name
        .iter()
        .chain(decl.implements_names.iter());
    for name in supers {
        if let Some(target) = registry.resolve(name) {
            if target != source {
                out.push(InteractionEvidence {
                    source,
                    target,
                    kind: InteractionKind::Inheritance,
                    location: decl.location.clone(),
                    detail: name.clone(),
                });
            }
        }
    }
    out
}

/// Run all four detectors over the corpus and assemble the graph.
/// Isolated classes stay as nodes without edges.
pub fn build_interaction_graph(
    decls: &[ClassDecl],
    registry: &ClassRegistry,
) -> Result<InteractionGraph, GraphError> {
    if decls.is_empty() || registry.is_empty() {
        return Err(GraphError::EmptyCorpus);
    }
    let mut by_id: Vec<Option<&ClassDecl>> = vec![None; registry.len()];
    for decl in decls {
        if let Some(id) = registry.resolve(&decl.name) {
            by_id[id.0] = Some(decl);
        }
    }
    let mut nodes = Vec::with_capacity(registry.len());
    let mut evidences = Vec::new();
    for id in registry.ids() {
        let decl = by_id[id.0].expect("registry names come from these declarations");
        let visible_members = decl
            .fields
            .iter()
            .filter(|f| f.access.is_visible())
            .count() as u64
            + decl
                .methods
                .iter()
                .filter(|m| m.access.is_visible())
                .count() as u64;
        nodes.push(ClassNode {
            id,
            name: decl.name.clone(),
            kind: decl.kind,
            location: decl.location.clone(),
            visible_members,
        });
        evidences.extend(detect_param_interactions(decl, registry));
        evidences.extend(detect_return_interactions(decl, registry));
        evidences.extend(detect_decl_interactions(decl, registry));
        evidences.extend(detect_inheritance_interactions(decl, registry));
    }
    InteractionGraph::from_parts(nodes, evidences)
}
