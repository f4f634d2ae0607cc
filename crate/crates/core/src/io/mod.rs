//! Project persistence, frame rendering and bundle export.

mod bundle;
mod project;
mod render;
mod svg;

pub use bundle::{export_bundle, BundleAsset, BundleInk, BundleManifest, MANIFEST_FILE, PROJECT_FILE};
pub use project::{check_assets, load_project, parse_project, project_to_json, save_project};
pub use render::{
    frame_file_name, plan_frames, render_frame_svgs, render_frames, FrameState, InkState, OutputFormat, RenderSpec, RenderSummary,
    DEBUG_STATES_FILE, REPLAY_MANIFEST_FILE,
};
pub use svg::render_svg;

use std::path::PathBuf;

use thiserror::Error;

use crate::document::{Diagnostic, FlowError};
use crate::geometry::GeometryError;
use crate::ink::InkError;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Fs {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("JSON syntax error at line {line}, column {column} (byte {offset}): {message}")]
    Syntax {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },
    #[error("unsupported project format {found}; this build reads format {expected}")]
    Version { found: String, expected: u32 },
    #[error("project schema error at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error("project does not validate:\n{}", list(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("missing asset files:\n{}", .0.join("\n"))]
    MissingAssets(Vec<String>),
    #[error("invalid render settings: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Ink(#[from] InkError),
}

fn list(diagnostics: &[Diagnostic]) -> String {
    diagnostics
        .iter()
        .map(|d| format!("  {d}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub(crate) fn fs_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> IoError {
    let path = path.into();
    move |source| IoError::Fs { path, source }
}
