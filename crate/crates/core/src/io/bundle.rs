//! Self-contained web bundle for the player.
//!
//! Layout:
//!
//! ```text
//! out/
//!   manifest.json
//!   project.json        asset paths rewritten to point inside the bundle
//!   assets/...          copies of every referenced asset
//!   ink/<id>.log        each stroke collection in the plain-text log format
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Component, Path, PathBuf};

use serde::Serialize;

use super::project::project_to_json;
use super::{check_assets, fs_err, IoError};
use crate::document::{has_errors, validate_project, Payload, Project, FORMAT_VERSION};
use crate::ink::write_stroke_log;

pub const MANIFEST_FILE: &str = "manifest.json";
pub const PROJECT_FILE: &str = "project.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleAsset {
    /// Path as written in the source project.
    pub source: String,
    /// Path inside the bundle.
    pub path: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleInk {
    pub collection: String,
    pub path: String,
    pub strokes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleManifest {
    pub format: u32,
    pub title: String,
    pub project: String,
    pub flow_length: usize,
    pub assets: Vec<BundleAsset>,
    pub ink: Vec<BundleInk>,
}

/// Lexically normalizes a relative path. Returns `None` for absolute paths
/// and paths that climb above their starting directory.
fn contained(path: &str) -> Option<PathBuf> {
    let mut parts: Vec<&str> = Vec::new();
    for c in Path::new(path).components() {
        match c {
            Component::Normal(s) => parts.push(s.to_str()?),
            Component::CurDir => {}
            Component::ParentDir => {
                parts.pop()?;
            }
            Component::RootDir | Component::Prefix(_) => return None,
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.iter().collect())
    }
}

/// Bundle-relative destinations, always with forward slashes. Paths that
/// would escape the project directory go under `assets/external/`, prefixed
/// with their index so equal file names stay distinct.
fn destinations(sources: &[String]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut external = 0usize;
    for src in sources {
        let dest = match contained(src) {
            Some(rel) => {
                let parts: Vec<String> = rel.iter().map(|p| p.to_string_lossy().into_owned()).collect();
                format!("assets/{}", parts.join("/"))
            }
            None => {
                let name = Path::new(src)
                    .file_name()
                    .map_or_else(|| "asset".to_owned(), |n| n.to_string_lossy().into_owned());
                external += 1;
                format!("assets/external/{external}_{name}")
            }
        };
        out.insert(src.clone(), dest);
    }
    out
}

/// Writes a closed bundle of `project` (whose assets resolve against
/// `base_dir`) into `out_dir`. Re-exporting the same input reproduces the
/// same bytes.
pub fn export_bundle(project: &Project, base_dir: &Path, out_dir: &Path) -> Result<BundleManifest, IoError> {
    let diagnostics = validate_project(project);
    if has_errors(&diagnostics) {
        return Err(IoError::Invalid(diagnostics));
    }
    check_assets(project, base_dir)?;

    let mut sources: Vec<String> = project
        .elements
        .iter()
        .filter_map(|e| e.asset_path())
        .map(str::to_owned)
        .collect();
    sources.sort();
    sources.dedup();
    let dest = destinations(&sources);

    let mut bundled = project.clone();
    for e in &mut bundled.elements {
        if let Payload::Asset { asset, .. } = &mut e.payload {
            *asset = dest[asset.as_str()].clone();
        }
    }

    fs::create_dir_all(out_dir).map_err(fs_err(out_dir))?;
    let mut assets = Vec::new();
    for src in &sources {
        let to = out_dir.join(&dest[src]);
        if let Some(parent) = to.parent() {
            fs::create_dir_all(parent).map_err(fs_err(parent))?;
        }
        let from = base_dir.join(src);
        let bytes = fs::copy(&from, &to).map_err(fs_err(&from))?;
        assets.push(BundleAsset {
            source: src.clone(),
            path: dest[src].clone(),
            bytes,
        });
    }

    let mut ink = Vec::new();
    if !project.ink.is_empty() {
        let dir = out_dir.join("ink");
        fs::create_dir_all(&dir).map_err(fs_err(&dir))?;
        for (i, c) in project.ink.iter().enumerate() {
            // collection ids are free text, so the file name uses the index
            let rel = format!("ink/{i:03}.log");
            let path = out_dir.join(&rel);
            fs::write(&path, write_stroke_log(c)).map_err(fs_err(&path))?;
            ink.push(BundleInk {
                collection: c.id.clone(),
                path: rel,
                strokes: c.len(),
            });
        }
    }

    let project_path = out_dir.join(PROJECT_FILE);
    fs::write(&project_path, project_to_json(&bundled)).map_err(fs_err(&project_path))?;

    let manifest = BundleManifest {
        format: FORMAT_VERSION,
        title: project.metadata.title.clone(),
        project: PROJECT_FILE.to_owned(),
        flow_length: project.flow.len(),
        assets,
        ink,
    };
    let manifest_path = out_dir.join(MANIFEST_FILE);
    let mut text = serde_json::to_string_pretty(&serde_json::to_value(&manifest).expect("manifest serializes"))
        .expect("value serializes");
    text.push('\n');
    fs::write(&manifest_path, text).map_err(fs_err(&manifest_path))?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment() {
        assert_eq!(contained("a/./b/../c.png"), Some(PathBuf::from("a/c.png")));
        assert_eq!(contained("../x.png"), None);
        assert_eq!(contained("/etc/x.png"), None);
        assert_eq!(contained("."), None);
    }

    #[test]
    fn escaping_paths_are_renamed() {
        let d = destinations(&["../a/x.png".into(), "../b/x.png".into(), "img/y.png".into()]);
        assert_eq!(d["../a/x.png"], "assets/external/1_x.png");
        assert_eq!(d["../b/x.png"], "assets/external/2_x.png");
        assert_eq!(d["img/y.png"], "assets/img/y.png");
    }
}
