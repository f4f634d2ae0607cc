use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde_json::Value;

use super::{fs_err, IoError};
use crate::document::{has_errors, validate_project, Project, FORMAT_VERSION};

/// Reads, parses and version-checks a project, then makes sure every
/// referenced asset exists relative to the project file's directory.
pub fn load_project(path: &Path) -> Result<Project, IoError> {
    let text = fs::read_to_string(path).map_err(fs_err(path))?;
    let project = parse_project(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    check_assets(&project, base)?;
    Ok(project)
}

/// Parses project JSON in three passes so each failure is reported at the
/// right level: syntax (with byte offset), format version, then schema.
pub fn parse_project(text: &str) -> Result<Project, IoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        offset: if e.is_eof() {
            text.len()
        } else {
            byte_offset(text, e.line(), e.column())
        },
        message: strip_position(&e),
    })?;
    if let Some(found) = value.get("format") {
        if found.as_u64() != Some(FORMAT_VERSION as u64) {
            return Err(IoError::Version {
                found: found.to_string(),
                expected: FORMAT_VERSION,
            });
        }
    }
    serde_json::from_str(text).map_err(|e| IoError::Schema {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e),
    })
}

/// serde_json appends " at line L column C"; the caller reports those separately.
fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_owned(),
        None => s,
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let line_start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

/// Lists asset paths that do not resolve to a file under `base`.
pub fn check_assets(project: &Project, base: &Path) -> Result<(), IoError> {
    let missing: BTreeSet<String> = project
        .elements
        .iter()
        .filter_map(|e| e.asset_path())
        .filter(|p| !base.join(p).is_file())
        .map(str::to_owned)
        .collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(IoError::MissingAssets(missing.into_iter().collect()))
    }
}

/// Canonical JSON text: keys sorted, two-space indent, trailing newline.
pub fn project_to_json(project: &Project) -> String {
    // going through Value sorts every object's keys, including flattened extras
    let value = serde_json::to_value(project).expect("project serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

/// Writes the project after checking it validates.
pub fn save_project(project: &Project, path: &Path) -> Result<(), IoError> {
    let diagnostics = validate_project(project);
    if has_errors(&diagnostics) {
        return Err(IoError::Invalid(diagnostics));
    }
    fs::write(path, project_to_json(project)).map_err(fs_err(path))
}
