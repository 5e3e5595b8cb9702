//! Corpus handling: collect `.java` files from paths, parse every unit,
//! and assemble the interaction graph. This is the front door used by the
//! command-line interface and by tests that drive whole source trees.

use std::path::{Path, PathBuf};

use thiserror::Error;
use walkdir::WalkDir;

use crate::interactions::{build_interaction_graph, GraphError, InteractionGraph};
use crate::lexer::tokenize;
use crate::parser::{parse_classes, ClassDecl, ParseError};
use crate::registry::{build_registry, ClassRegistry};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// One source file: its display path and full text.
#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub path: String,
    pub text: String,
}

/// Everything the pipeline produces for a corpus.
#[derive(Debug)]
pub struct CorpusAnalysis {
    pub decls: Vec<ClassDecl>,
    pub registry: ClassRegistry,
    pub graph: InteractionGraph,
    /// Human-readable notes: skipped files in lenient mode, renamed
    /// duplicate classes, and similar non-fatal events.
    pub warnings: Vec<String>,
}

/// Expand the given paths into a sorted, deduplicated list of `.java`
/// files. Files are taken as given; directories are walked recursively,
/// skipping hidden directories.
pub fn collect_java_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, CorpusError> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let walker = WalkDir::new(path).into_iter().filter_entry(|entry| {
                // Skip hidden directories below the root; the root itself
                // may legitimately be hidden (e.g. a temp dir).
                if entry.depth() == 0 || !entry.file_type().is_dir() {
                    return true;
                }
                !entry
                    .file_name()
                    .to_str()
                    .map(|name| name.starts_with('.') && name.len() > 1)
                    .unwrap_or(false)
            });
            for entry in walker {
                let entry = entry.map_err(|e| CorpusError::Io {
                    path: path.display().to_string(),
                    source: e.into(),
                })?;
                if entry.file_type().is_file()
                    && entry.path().extension().is_some_and(|ext| ext == "java")
                {
                    files.push(entry.into_path());
                }
            }
        } else {
            files.push(path.clone());
        }
    }
    files.sort();
    files.dedup();
    Ok(files)
}

/// Parse the units and build the interaction graph. In lenient mode a
/// unit that fails to lex or parse is skipped with a warning; otherwise
/// the first failure aborts the run.
pub fn analyze_sources(
    mut units: Vec<SourceUnit>,
    lenient: bool,
) -> Result<CorpusAnalysis, CorpusError> {
    units.sort_by(|a, b| a.path.cmp(&b.path));
    let mut decls = Vec::new();
    let mut warnings = Vec::new();
    for unit in &units {
        let parsed = tokenize(&unit.text, &unit.path)
            .map_err(ParseError::from)
            .and_then(|tokens| parse_classes(&tokens));
        match parsed {
            Ok(mut classes) => decls.append(&mut classes),
            Err(error) if lenient => {
                warnings.push(format!("skipping {}: {}", unit.path, error));
            }
            Err(error) => return Err(error.into()),
        }
    }
    let build = build_registry(decls);
    warnings.extend(build.warnings);
    let graph = build_interaction_graph(&build.decls, &build.registry)?;
    Ok(CorpusAnalysis {
        decls: build.decls,
        registry: build.registry,
        graph,
        warnings,
    })
}

/// Read the files behind `paths` (UTF-8, lossily) and analyze them.
pub fn analyze_paths(paths: &[PathBuf], lenient: bool) -> Result<CorpusAnalysis, CorpusError> {
    let files = collect_java_files(paths)?;
    let mut units = Vec::with_capacity(files.len());
    for file in files {
        let bytes = std::fs::read(&file).map_err(|e| CorpusError::Io {
            path: file.display().to_string(),
            source: e,
        })?;
        units.push(SourceUnit {
            path: display_path(&file),
            text: String::from_utf8_lossy(&bytes).into_owned(),
        });
    }
    analyze_sources(units, lenient)
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}
