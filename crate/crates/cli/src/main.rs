use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use presenter_core::ahp::{parse_checklists, parse_decision_table, parse_matrix_file, run_analysis, AhpInputs};
use presenter_core::document::has_errors;
use presenter_core::io::{export_bundle, load_project, render_frames, save_project, OutputFormat, RenderSpec};
use presenter_core::mindmap::{compile_mindmap, parse_outline, CompileOptions};
use presenter_core::{validate_project, Execution, Screen};

#[derive(Parser)]
#[command(name = "presenter", version, about = "Zoomable canvas presentations: validate, render, export")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a project file and its asset references
    Validate { project: PathBuf },
    /// Render the presentation flow to numbered SVG frames
    Render {
        project: PathBuf,
        #[arg(long)]
        fps: f64,
        /// Screen size in pixels, e.g. 1920x1080
        #[arg(long)]
        size: Screen,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "svg-sequence")]
        format: OutputFormat,
        /// Also write per-frame camera and ink state as JSON
        #[arg(long)]
        emit_debug_states: bool,
        /// Render frames on one thread
        #[arg(long)]
        sequential: bool,
    },
    /// Write a self-contained bundle for the web player
    Export {
        project: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compile a tab-indented outline into a mind-map project with a tour
    Tour {
        outline: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 300.0)]
        spacing: f64,
        #[arg(long, default_value = "1920x1080")]
        size: Screen,
        #[arg(long, default_value_t = 0.1)]
        margin: f64,
    },
    /// Rank alternatives with the analytic hierarchy process
    Ahp {
        /// Judgment matrix with criterion directions (JSON)
        #[arg(long)]
        matrix: PathBuf,
        /// Decision table (CSV)
        #[arg(long)]
        table: PathBuf,
        /// Feature checklists that replace the applicability column (JSON)
        #[arg(long)]
        features: Option<PathBuf>,
        /// Report destination (JSON)
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Validate { project } => {
            let p = load_project(&project)?;
            let diagnostics = validate_project(&p);
            for d in &diagnostics {
                eprintln!("{d}");
            }
            if has_errors(&diagnostics) {
                anyhow::bail!("{} is not valid", project.display());
            }
            println!(
                "{}: ok ({} elements, {} flow steps)",
                project.display(),
                p.elements.len(),
                p.flow.len()
            );
        }
        Command::Render {
            project,
            fps,
            size,
            out,
            format,
            emit_debug_states,
            sequential,
        } => {
            let p = load_project(&project)?;
            let spec = RenderSpec {
                fps,
                out_dir: out.clone(),
                format,
                screen: size,
                emit_debug_states,
            };
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let summary = render_frames(&p, &spec, exec)?;
            println!("{} frames, {} files in {}", summary.frame_count, summary.files.len(), out.display());
        }
        Command::Export { project, out } => {
            let p = load_project(&project)?;
            let base = project.parent().unwrap_or(Path::new("."));
            let manifest = export_bundle(&p, base, &out)?;
            println!(
                "bundle in {}: {} assets, {} ink logs",
                out.display(),
                manifest.assets.len(),
                manifest.ink.len()
            );
        }
        Command::Tour {
            outline,
            out,
            spacing,
            size,
            margin,
        } => {
            let root = parse_outline(&read(&outline)?)?;
            let options = CompileOptions {
                ring_spacing: spacing,
                screen: size,
                margin,
            };
            let project = compile_mindmap(&root, &options)?;
            save_project(&project, &out)?;
            println!("{}: {} tour stops", out.display(), project.flow.len());
        }
        Command::Ahp {
            matrix,
            table,
            features,
            out,
        } => {
            let mut inputs = AhpInputs::new(
                parse_matrix_file(&read(&matrix)?).with_context(|| matrix.display().to_string())?,
                parse_decision_table(&read(&table)?).with_context(|| table.display().to_string())?,
            );
            if let Some(f) = &features {
                inputs.checklists = Some(parse_checklists(&read(f)?).with_context(|| f.display().to_string())?);
            }
            let report = run_analysis(&inputs, Execution::default())?;
            let value = serde_json::to_value(&report)?;
            let mut json = serde_json::to_string_pretty(&value)?;
            json.push('\n');
            fs::write(&out, json).with_context(|| format!("writing {}", out.display()))?;
            print!("{}", report.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors and 0 for --help/--version
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
