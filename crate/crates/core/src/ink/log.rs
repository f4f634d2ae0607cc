//! Plain-text stroke log, as captured from a digitizer or exported by the
//! browser player:
//!
//! ```text
//! # comments and blank lines are ignored
//! collection lecture-3
//! stroke s0 0.0 1.25 #1f77b4 2.5
//! s0 10.0 20.0 0.4
//! s0 11.5 20.5 0.6
//! ```
//!
//! A `stroke` header declares id, start, finish, color and base width;
//! sample lines are `stroke_id x y pressure`. Samples of different strokes
//! may interleave. The `collection` line is optional.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{InkError, InkSample, PressureClamped, Stroke, StrokeCollection};
use crate::geometry::{fmt_num, Color};

#[derive(Debug, Error, PartialEq)]
pub enum StrokeLogError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: stroke `{id}`: {source}")]
    Ink {
        line: usize,
        id: String,
        #[source]
        source: InkError,
    },
    #[error("stroke `{0}` has a header but no samples")]
    Empty(String),
}

/// Parses a stroke log. Returns the collection (sorted by start time) and
/// one warning per clamped pressure, tagged with its line number.
pub fn parse_stroke_log(
    text: &str,
    default_id: &str,
) -> Result<(StrokeCollection, Vec<(usize, PressureClamped)>), StrokeLogError> {
    let mut collection_id = default_id.to_owned();
    let mut order: Vec<String> = Vec::new();
    let mut strokes: HashMap<String, Stroke> = HashMap::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let syntax = |message: String| StrokeLogError::Syntax { line, message };
        let num = |s: &str| -> Result<f64, StrokeLogError> {
            s.parse::<f64>()
                .map_err(|_| StrokeLogError::Syntax { line, message: format!("`{s}` is not a number") })
        };
        match fields[0] {
            "collection" => {
                if fields.len() != 2 {
                    return Err(syntax("expected `collection <id>`".into()));
                }
                collection_id = fields[1].to_owned();
            }
            "stroke" => {
                if fields.len() != 6 {
                    return Err(syntax("expected `stroke <id> <start> <finish> <color> <width>`".into()));
                }
                let id = fields[1].to_owned();
                if strokes.contains_key(&id) {
                    return Err(syntax(format!("stroke `{id}` declared twice")));
                }
                let color: Color = fields[4].parse().map_err(syntax)?;
                let stroke = Stroke {
                    samples: Vec::new(),
                    start_time: num(fields[2])?,
                    finish_time: num(fields[3])?,
                    color,
                    base_width: num(fields[5])?,
                };
                order.push(id.clone());
                strokes.insert(id, stroke);
            }
            id => {
                if fields.len() != 4 {
                    return Err(syntax("expected `<stroke_id> <x> <y> <pressure>`".into()));
                }
                let stroke = strokes
                    .get_mut(id)
                    .ok_or_else(|| syntax(format!("sample for undeclared stroke `{id}`")))?;
                let sample = InkSample::new(num(fields[1])?, num(fields[2])?, num(fields[3])?);
                let warning = stroke.append_sample(sample).map_err(|source| StrokeLogError::Ink {
                    line,
                    id: id.to_owned(),
                    source,
                })?;
                if let Some(w) = warning {
                    warnings.push((line, w));
                }
            }
        }
    }

    let mut out = Vec::with_capacity(order.len());
    for id in order {
        let stroke = strokes.remove(&id).expect("declared");
        if stroke.samples.is_empty() {
            return Err(StrokeLogError::Empty(id));
        }
        stroke
            .validate()
            .map_err(|source| StrokeLogError::Ink { line: 0, id: id.clone(), source })?;
        out.push(stroke);
    }
    Ok((StrokeCollection::new(collection_id, out), warnings))
}

/// Serializes a collection; stroke ids are `s0`, `s1`, … in start order.
pub fn write_stroke_log(collection: &StrokeCollection) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "collection {}", collection.id);
    for (i, s) in collection.strokes().iter().enumerate() {
        let _ = writeln!(
            out,
            "stroke s{i} {} {} {} {}",
            fmt_num(s.start_time),
            fmt_num(s.finish_time),
            s.color,
            fmt_num(s.base_width)
        );
        for p in &s.samples {
            let _ = writeln!(
                out,
                "s{i} {} {} {}",
                fmt_num(p.position.x),
                fmt_num(p.position.y),
                fmt_num(p.pressure)
            );
        }
    }
    out
}
