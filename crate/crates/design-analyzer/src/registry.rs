//! Registry of user-defined classes.
//!
//! Assigns a dense id to every declared type, lexicographically by final
//! name, and resolves type-name references. Only names found here ever
//! produce interaction evidence; `String`, `int`, library types and other
//! unresolved names map to nothing.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::parser::ClassDecl;

/// Dense class id. Ids are assigned lexicographically over final names, so
/// id order equals name order everywhere downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Resolution {
    Unique(ClassId),
    Ambiguous,
}

#[derive(Debug, Clone)]
pub struct ClassRegistry {
    names: Vec<String>,
    table: HashMap<String, Resolution>,
}

impl ClassRegistry {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: ClassId) -> &str {
        &self.names[id.0]
    }

    pub fn ids(&self) -> impl Iterator<Item = ClassId> {
        (0..self.names.len()).map(ClassId)
    }

    /// Resolve a captured type name to a registered class. Returns nothing
    /// for unknown names and for simple names that became ambiguous after
    /// duplicate qualification.
    pub fn resolve(&self, name: &str) -> Option<ClassId> {
        match self.table.get(name) {
            Some(Resolution::Unique(id)) => Some(*id),
            _ => None,
        }
    }
}

#[derive(Debug)]
pub struct RegistryBuild {
    pub registry: ClassRegistry,
    /// The input declarations with collision-qualified names applied.
    pub decls: Vec<ClassDecl>,
    pub warnings: Vec<String>,
}

fn file_stem(file: &str) -> String {
    Path::new(file)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| file.to_string())
}

/// Build the registry. When two files declare the same name, both names
/// are qualified by file stem (`a.java` and `b.java` declaring `Dup`
/// become `a.Dup` and `b.Dup`) and a warning is emitted; references to the
/// now-ambiguous simple name resolve to nothing.
pub fn build_registry(mut decls: Vec<ClassDecl>) -> RegistryBuild {
    let mut warnings = Vec::new();

    let mut by_name: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, d) in decls.iter().enumerate() {
        by_name.entry(d.name.clone()).or_default().push(i);
    }
    let mut ambiguous_simple: Vec<String> = Vec::new();
    for (name, indices) in &by_name {
        if indices.len() < 2 {
            continue;
        }
        let mut ordered = indices.clone();
        ordered.sort_by(|&a, &b| {
            (decls[a].location.file.as_ref(), decls[a].location.line)
                .cmp(&(decls[b].location.file.as_ref(), decls[b].location.line))
        });
        let mut qualified_names = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for &i in &ordered {
            let mut qualified = format!("{}.{}", file_stem(&decls[i].location.file), name);
            let n = seen.entry(qualified.clone()).or_insert(0);
            *n += 1;
            if *n > 1 {
                qualified = format!("{qualified}#{n}");
            }
            qualified_names.push(qualified.clone());
            decls[i].name = qualified;
        }
        warnings.push(format!(
            "duplicate class name `{}` declared {} times; qualified as {}",
            name,
            indices.len(),
            qualified_names.join(", ")
        ));
        ambiguous_simple.push(name.clone());
    }

    let mut names: Vec<String> = decls.iter().map(|d| d.name.clone()).collect();
    names.sort();
    names.dedup();

    let mut table: HashMap<String, Resolution> = HashMap::new();
    for (idx, name) in names.iter().enumerate() {
        table.insert(name.clone(), Resolution::Unique(ClassId(idx)));
    }
    // Simple-name aliases for dotted names (nested types, duplicate
    // qualifications). A declared full name always wins over an alias;
    // two aliases for the same simple name cancel out.
    for (idx, name) in names.iter().enumerate() {
        let Some(simple) = name.rsplit('.').next() else {
            continue;
        };
        if simple == name {
            continue;
        }
        match table.get(simple) {
            None => {
                table.insert(simple.to_string(), Resolution::Unique(ClassId(idx)));
            }
            Some(Resolution::Unique(existing)) => {
                let existing_is_full = names.get(existing.0).map(String::as_str) == Some(simple);
                if !existing_is_full {
                    table.insert(simple.to_string(), Resolution::Ambiguous);
                }
            }
            Some(Resolution::Ambiguous) => {}
        }
    }
    for name in ambiguous_simple {
        table.insert(name, Resolution::Ambiguous);
    }

    RegistryBuild {
        registry: ClassRegistry { names, table },
        decls,
        warnings,
    }
}
