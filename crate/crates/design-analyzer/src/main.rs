//! Command-line interface: analyze Java sources, print coupling metrics,
//! run the principal component analysis, recommend integration classes,
//! and replay an analysis from a previously exported metric matrix.

use std::collections::BTreeMap;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use design_analyzer::corpus::{analyze_paths, CorpusAnalysis};
use design_analyzer::metrics::{all_class_metrics, metrics_matrix, MetricsMatrix, Orientation};
use design_analyzer::pca::{
    pca_from_matrix, recommend_integration_class, select_significant_measure, MeasureSelection,
};
use design_analyzer::report;
use design_analyzer::Real;

#[derive(Parser)]
#[command(
    name = "design-analyzer",
    version,
    about = "Class-coupling analysis for Java source trees"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArgs {
    /// Java files or directories to scan recursively.
    #[arg(required = true, value_name = "PATH")]
    inputs: Vec<PathBuf>,
    /// Skip files that fail to parse instead of aborting.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args)]
struct OutArg {
    /// Write the report to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PcaMode {
    /// Rows are classes, columns are measures; selects the most
    /// significant coupling measure.
    Measure,
    /// Rows are measures, columns are classes; recommends integration
    /// classes.
    Class,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the class interaction graph.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Output format for the graph.
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
        #[command(flatten)]
        out: OutArg,
    },
    /// Print the per-class coupling metrics as CSV.
    Metrics {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Run the principal component analysis over the metric matrix.
    Pca {
        #[command(flatten)]
        input: InputArgs,
        /// Orientation of the analysis.
        #[arg(long, value_enum, default_value = "measure")]
        mode: PcaMode,
        /// Number of top components the recommendation rule examines
        /// (class mode only).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 3)]
        components: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Recommend integration classes (shorthand for `pca --mode class`).
    Recommend {
        #[command(flatten)]
        input: InputArgs,
        /// Number of top components the recommendation rule examines.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 3)]
        components: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Re-run the analysis from a metric matrix exported by `metrics`.
    Replay {
        /// CSV file with a header row and one row per class.
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        /// Orientation of the analysis.
        #[arg(long, value_enum, default_value = "measure")]
        mode: PcaMode,
        /// Number of top components the recommendation rule examines
        /// (class mode only).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 3)]
        components: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Analyze { input, format, out } => {
            let analysis = analyze(&input)?;
            let text = match format {
                GraphFormat::Dot => report::to_dot(&analysis.graph),
                GraphFormat::Json => report::to_json(&analysis.graph),
            };
            emit(&out, &text)
        }
        Cmd::Metrics { input, out } => {
            let analysis = analyze(&input)?;
            let matrix = metrics_matrix::<Real>(&analysis.graph, Orientation::ClassesByMeasures)?;
            let text = report::metrics_csv(&matrix)?;
            emit(&out, &text)
        }
        Cmd::Pca {
            input,
            mode,
            components,
            out,
        } => {
            let analysis = analyze(&input)?;
            let text = match mode {
                PcaMode::Measure => {
                    let matrix =
                        metrics_matrix::<Real>(&analysis.graph, Orientation::ClassesByMeasures)?;
                    measure_report(&matrix)?
                }
                PcaMode::Class => {
                    let matrix =
                        metrics_matrix::<Real>(&analysis.graph, Orientation::MeasuresByClasses)?;
                    class_report(&matrix, components as usize, coupling_of(&analysis))?
                }
            };
            emit(&out, &text)
        }
        Cmd::Recommend {
            input,
            components,
            out,
        } => {
            let analysis = analyze(&input)?;
            let matrix = metrics_matrix::<Real>(&analysis.graph, Orientation::MeasuresByClasses)?;
            let text = class_report(&matrix, components as usize, coupling_of(&analysis))?;
            emit(&out, &text)
        }
        Cmd::Replay {
            matrix,
            mode,
            components,
            out,
        } => {
            let csv = std::fs::read_to_string(&matrix)
                .with_context(|| format!("cannot read {}", matrix.display()))?;
            let parsed = report::parse_metrics_csv::<Real>(&csv)?;
            let text = match mode {
                PcaMode::Measure => measure_report(&parsed)?,
                PcaMode::Class => {
                    let coupling = coupling_from_matrix(&parsed);
                    if coupling.is_empty() {
                        eprintln!(
                            "note: no ClassCoupling column in the matrix; \
                             fallback recommendations are unavailable"
                        );
                    }
                    class_report(&parsed.transposed(), components as usize, coupling)?
                }
            };
            emit(&out, &text)
        }
    }
}

fn analyze(input: &InputArgs) -> Result<CorpusAnalysis> {
    let analysis = analyze_paths(&input.inputs, input.lenient)?;
    for warning in &analysis.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(analysis)
}

/// Classes-by-measures analysis: report eigenpairs plus the selected
/// measure, warning on exact ties.
fn measure_report(matrix: &MetricsMatrix<Real>) -> Result<String> {
    let pca = pca_from_matrix(matrix)?;
    let selection = select_significant_measure(&pca)?;
    warn_on_tie(&selection);
    Ok(report::pca_report(&pca, Some(&selection), None))
}

/// Measures-by-classes analysis: report eigenpairs plus the integration
/// recommendation.
fn class_report(
    matrix: &MetricsMatrix<Real>,
    components: usize,
    coupling: BTreeMap<String, u64>,
) -> Result<String> {
    let pca = pca_from_matrix(matrix)?;
    let k = components.min(pca.eigenvectors.len().max(1));
    if k < components {
        eprintln!(
            "note: only {k} components available; using {k} instead of {components}"
        );
    }
    let recommendation = recommend_integration_class(&pca, k, &coupling)?;
    Ok(report::pca_report(&pca, None, Some(&recommendation)))
}

fn warn_on_tie(selection: &MeasureSelection) {
    if !selection.tied_with.is_empty() {
        eprintln!(
            "warning: measure selection tied between {} and {}",
            selection.measure,
            selection.tied_with.join(", ")
        );
    }
}

/// Coupling per class, for the recommendation fallback.
fn coupling_of(analysis: &CorpusAnalysis) -> BTreeMap<String, u64> {
    all_class_metrics(&analysis.graph)
        .into_iter()
        .map(|m| {
            (
                analysis.graph.label(m.class).to_string(),
                m.class_coupling,
            )
        })
        .collect()
}

/// Pull coupling values out of a replayed classes-by-measures matrix, if
/// it carries a ClassCoupling column.
fn coupling_from_matrix(matrix: &MetricsMatrix<Real>) -> BTreeMap<String, u64> {
    let Some(col) = matrix
        .col_labels
        .iter()
        .position(|label| label == "ClassCoupling")
    else {
        return BTreeMap::new();
    };
    matrix
        .row_labels
        .iter()
        .enumerate()
        .map(|(i, label)| (label.clone(), matrix.values.get(i, col).round() as u64))
        .collect()
}

fn emit(out: &OutArg, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
