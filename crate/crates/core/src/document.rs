//! The project document: canvas elements, slide frames placed on the same
//! canvas, ink collections and the ordered presentation flow.
//!
//! A linear step is just a viewport that frames a slide rectangle, so linear
//! and nonlinear steps can interleave freely in one flow.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::geometry::{Color, GeometryError, Point, Rect, Screen};
use crate::ink::{stroke_bbox, PenStyle, StrokeCollection};
use crate::viewport::{frame_bounds, Easing, Keyframe, Viewport, DEFAULT_TRANSITION_SECS};

/// Current project file schema version.
pub const FORMAT_VERSION: u32 = 1;

pub type Extra = BTreeMap<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    VectorShape,
    ImageAsset,
    Text,
    LatexAsset,
    VideoPlaceholder,
    PdfPageAsset,
    InkRef,
}

impl ElementKind {
    pub fn is_asset(self) -> bool {
        matches!(
            self,
            ElementKind::ImageAsset | ElementKind::LatexAsset | ElementKind::VideoPlaceholder | ElementKind::PdfPageAsset
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Size {
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Shape {
    /// Centered on the element position.
    Rect { width: f64, height: f64 },
    Ellipse { rx: f64, ry: f64 },
    Polyline {
        points: Vec<Point>,
        #[serde(default)]
        closed: bool,
    },
    Cubic { from: Point, c1: Point, c2: Point, to: Point },
}

impl Shape {
    fn local_bounds(&self) -> Option<Rect> {
        match self {
            Shape::Rect { width, height } => Some(Rect::from_center(Point::ORIGIN, *width, *height)),
            Shape::Ellipse { rx, ry } => Some(Rect::from_center(Point::ORIGIN, 2.0 * rx, 2.0 * ry)),
            Shape::Polyline { points, .. } => Rect::bounding(points.iter().copied()),
            Shape::Cubic { from, c1, c2, to } => Rect::bounding([*from, *c1, *c2, *to]),
        }
    }

    fn is_well_formed(&self) -> bool {
        match self {
            Shape::Rect { width, height } => *width > 0.0 && *height > 0.0 && width.is_finite() && height.is_finite(),
            Shape::Ellipse { rx, ry } => *rx > 0.0 && *ry > 0.0 && rx.is_finite() && ry.is_finite(),
            Shape::Polyline { points, .. } => points.len() >= 2 && points.iter().all(|p| p.is_finite()),
            Shape::Cubic { from, c1, c2, to } => [from, c1, c2, to].iter().all(|p| p.is_finite()),
        }
    }
}

/// Replay schedule for an ink element: the ink is written out during flow
/// step `step` at `speed`, hidden before it and complete after it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InkReplay {
    pub step: usize,
    #[serde(default = "one")]
    pub speed: f64,
}

fn one() -> f64 {
    1.0
}

fn default_font_size() -> f64 {
    24.0
}

fn is_default_pen(p: &PenStyle) -> bool {
    *p == PenStyle::default()
}

/// Kind-specific content. Which variant is legal depends on the element kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Payload {
    Shape {
        shape: Shape,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fill: Option<Color>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        stroke: Option<Color>,
        #[serde(default = "one")]
        stroke_width: f64,
    },
    Text {
        text: String,
        #[serde(default = "default_font_size")]
        font_size: f64,
        #[serde(default = "black")]
        color: Color,
    },
    /// Pre-rendered content referenced by a path relative to the project
    /// file. For videos the path names the poster image.
    Asset {
        asset: String,
        size: Size,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        page: Option<u32>,
    },
    Ink {
        collection: String,
        #[serde(default, skip_serializing_if = "is_default_pen")]
        pen: PenStyle,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        replay: Option<InkReplay>,
    },
}

fn black() -> Color {
    Color::BLACK
}

impl Payload {
    fn fits(&self, kind: ElementKind) -> bool {
        match self {
            Payload::Shape { .. } => kind == ElementKind::VectorShape,
            Payload::Text { .. } => kind == ElementKind::Text,
            Payload::Asset { .. } => kind.is_asset(),
            Payload::Ink { .. } => kind == ElementKind::InkRef,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanvasElement {
    pub id: String,
    pub kind: ElementKind,
    pub position: Point,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub rotation: f64,
    #[serde(default)]
    pub z_order: i32,
    pub payload: Payload,
    #[serde(flatten)]
    pub extra: Extra,
}

impl CanvasElement {
    pub fn new(id: impl Into<String>, kind: ElementKind, position: Point, payload: Payload) -> Self {
        CanvasElement {
            id: id.into(),
            kind,
            position,
            scale: 1.0,
            rotation: 0.0,
            z_order: 0,
            payload,
            extra: Extra::new(),
        }
    }

    pub fn asset_path(&self) -> Option<&str> {
        match &self.payload {
            Payload::Asset { asset, .. } => Some(asset),
            _ => None,
        }
    }

    /// Bounds in the element's own frame, before scale/rotation/translation.
    pub fn local_bounds(&self, ink: &[StrokeCollection]) -> Option<Rect> {
        match &self.payload {
            Payload::Shape { shape, stroke, stroke_width, .. } => {
                let r = shape.local_bounds()?;
                let pad = if stroke.is_some() { stroke_width / 2.0 } else { 0.0 };
                Some(Rect::new(r.min - Point::new(pad, pad), r.max + Point::new(pad, pad)))
            }
            Payload::Text { text, font_size, .. } => Some(Rect::from_center(
                Point::ORIGIN,
                text_width(text, *font_size),
                *font_size,
            )),
            Payload::Asset { size, .. } => Some(Rect::from_center(Point::ORIGIN, size.width, size.height)),
            Payload::Ink { collection, pen, .. } => {
                let c = ink.iter().find(|c| &c.id == collection)?;
                c.strokes()
                    .iter()
                    .map(|s| stroke_bbox(s, pen))
                    .reduce(Rect::union)
            }
        }
    }

    /// Canvas-space bounds after the element transform.
    pub fn bounds(&self, ink: &[StrokeCollection]) -> Option<Rect> {
        let local = self.local_bounds(ink)?;
        Rect::bounding(
            local
                .corners()
                .map(|c| (c * self.scale).rotated(self.rotation) + self.position),
        )
    }
}

/// Rough advance width used for text bounds (0.6 em per character).
pub fn text_width(text: &str, font_size: f64) -> f64 {
    0.6 * font_size * text.chars().count().max(1) as f64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slide {
    pub id: String,
    pub frame: Rect,
    #[serde(default)]
    pub element_ids: Vec<String>,
    #[serde(flatten)]
    pub extra: Extra,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FlowStep {
    Nonlinear {
        keyframe: Keyframe,
    },
    Linear {
        slide_id: String,
        #[serde(default = "default_transition")]
        transition_duration: f64,
        #[serde(default)]
        dwell_duration: f64,
        #[serde(default)]
        easing: Easing,
    },
}

fn default_transition() -> f64 {
    DEFAULT_TRANSITION_SECS
}

impl FlowStep {
    pub fn linear(slide_id: impl Into<String>) -> Self {
        FlowStep::Linear {
            slide_id: slide_id.into(),
            transition_duration: DEFAULT_TRANSITION_SECS,
            dwell_duration: 0.0,
            easing: Easing::Linear,
        }
    }

    pub fn nonlinear(keyframe: Keyframe) -> Self {
        FlowStep::Nonlinear { keyframe }
    }

    pub fn durations(&self) -> (f64, f64) {
        match self {
            FlowStep::Nonlinear { keyframe } => (keyframe.transition_duration, keyframe.dwell_duration),
            FlowStep::Linear {
                transition_duration,
                dwell_duration,
                ..
            } => (*transition_duration, *dwell_duration),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub author: String,
    #[serde(default = "white")]
    pub background: Color,
    #[serde(flatten)]
    pub extra: Extra,
}

fn white() -> Color {
    Color::WHITE
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata {
            title: String::new(),
            author: String::new(),
            background: Color::WHITE,
            extra: Extra::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Settings {
    /// Expected slide width:height ratio; 16:9 unless the project overrides it.
    #[serde(default = "default_aspect")]
    pub slide_aspect: [f64; 2],
    /// Margin fraction used when a linear step frames its slide.
    #[serde(default)]
    pub slide_margin: f64,
}

fn default_aspect() -> [f64; 2] {
    [16.0, 9.0]
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            slide_aspect: default_aspect(),
            slide_margin: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Project {
    pub format: u32,
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default)]
    pub settings: Settings,
    #[serde(default)]
    pub elements: Vec<CanvasElement>,
    #[serde(default)]
    pub slides: Vec<Slide>,
    #[serde(default)]
    pub flow: Vec<FlowStep>,
    #[serde(default)]
    pub ink: Vec<StrokeCollection>,
    #[serde(flatten)]
    pub extra: Extra,
}

impl Default for Project {
    fn default() -> Self {
        Project {
            format: FORMAT_VERSION,
            metadata: Metadata::default(),
            settings: Settings::default(),
            elements: Vec::new(),
            slides: Vec::new(),
            flow: Vec::new(),
            ink: Vec::new(),
            extra: Extra::new(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FlowError {
    #[error("cursor {cursor} outside flow of length {len}")]
    OutOfRange { cursor: usize, len: usize },
    #[error("flow step {0} references unknown slide `{1}`")]
    UnknownSlide(usize, String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Result of moving the flow cursor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowMove {
    Moved(usize),
    /// Already on the last step; the cursor is unchanged.
    AtEnd(usize),
    /// Already on the first step; the cursor is unchanged.
    AtStart(usize),
}

impl FlowMove {
    pub fn cursor(self) -> usize {
        match self {
            FlowMove::Moved(c) | FlowMove::AtEnd(c) | FlowMove::AtStart(c) => c,
        }
    }
}

impl Project {
    pub fn slide(&self, id: &str) -> Option<&Slide> {
        self.slides.iter().find(|s| s.id == id)
    }

    pub fn collection(&self, id: &str) -> Option<&StrokeCollection> {
        self.ink.iter().find(|c| c.id == id)
    }

    pub fn flow_advance(&self, cursor: usize) -> Result<FlowMove, FlowError> {
        let len = self.flow.len();
        if cursor >= len {
            return Err(FlowError::OutOfRange { cursor, len });
        }
        Ok(if cursor + 1 < len {
            FlowMove::Moved(cursor + 1)
        } else {
            FlowMove::AtEnd(cursor)
        })
    }

    pub fn flow_back(&self, cursor: usize) -> Result<FlowMove, FlowError> {
        let len = self.flow.len();
        if cursor >= len {
            return Err(FlowError::OutOfRange { cursor, len });
        }
        Ok(if cursor > 0 {
            FlowMove::Moved(cursor - 1)
        } else {
            FlowMove::AtStart(cursor)
        })
    }

    /// The camera target of flow step `index` on `screen`.
    pub fn step_keyframe(&self, index: usize, screen: Screen) -> Result<Keyframe, FlowError> {
        let step = self.flow.get(index).ok_or(FlowError::OutOfRange {
            cursor: index,
            len: self.flow.len(),
        })?;
        match step {
            FlowStep::Nonlinear { keyframe } => Ok(*keyframe),
            FlowStep::Linear {
                slide_id,
                transition_duration,
                dwell_duration,
                easing,
            } => {
                let slide = self
                    .slide(slide_id)
                    .ok_or_else(|| FlowError::UnknownSlide(index, slide_id.clone()))?;
                let viewport = slide_viewport(slide, screen, self.settings.slide_margin)?;
                Ok(Keyframe {
                    viewport,
                    transition_duration: *transition_duration,
                    dwell_duration: *dwell_duration,
                    easing: *easing,
                })
            }
        }
    }

    /// Union of every element's canvas bounds.
    pub fn content_bounds(&self) -> Option<Rect> {
        self.elements
            .iter()
            .filter_map(|e| e.bounds(&self.ink))
            .reduce(Rect::union)
    }
}

/// Viewport that shows a slide's frame centered and entirely on screen.
pub fn slide_viewport(slide: &Slide, screen: Screen, margin_fraction: f64) -> Result<Viewport, GeometryError> {
    frame_bounds(&slide.frame, screen, margin_fraction)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    /// Id (or `flow[i]` / `ink[id][i]` path) of the offending item.
    pub subject: String,
    pub message: String,
}

impl Diagnostic {
    fn error(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            subject: subject.into(),
            message: message.into(),
        }
    }

    fn warning(subject: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            subject: subject.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}: {}", self.subject, self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(|d| d.severity == Severity::Error)
}

/// Checks every invariant and cross-reference. An empty result means the
/// project is well formed and presentable.
pub fn validate_project(project: &Project) -> Vec<Diagnostic> {
    let mut out = Vec::new();

    if project.format != FORMAT_VERSION {
        out.push(Diagnostic::error(
            "format",
            format!("unsupported format {}, expected {FORMAT_VERSION}", project.format),
        ));
    }

    let mut element_ids = HashSet::new();
    for e in &project.elements {
        if !element_ids.insert(e.id.as_str()) {
            out.push(Diagnostic::error(&e.id, "duplicate element id"));
        }
        if !(e.scale > 0.0 && e.scale.is_finite()) {
            out.push(Diagnostic::error(&e.id, format!("scale {} must be positive", e.scale)));
        }
        if !e.position.is_finite() {
            out.push(Diagnostic::error(&e.id, "position is not finite"));
        }
        if !e.rotation.is_finite() {
            out.push(Diagnostic::error(&e.id, "rotation is not finite"));
        }
        if !e.payload.fits(e.kind) {
            out.push(Diagnostic::error(&e.id, format!("payload does not match kind {:?}", e.kind)));
            continue;
        }
        match &e.payload {
            Payload::Shape { shape, stroke_width, .. } => {
                if !shape.is_well_formed() {
                    out.push(Diagnostic::error(&e.id, "shape geometry is degenerate or not finite"));
                }
                if !(*stroke_width >= 0.0 && stroke_width.is_finite()) {
                    out.push(Diagnostic::error(&e.id, "stroke width must be non-negative"));
                }
            }
            Payload::Text { font_size, .. } => {
                if !(*font_size > 0.0 && font_size.is_finite()) {
                    out.push(Diagnostic::error(&e.id, "font size must be positive"));
                }
            }
            Payload::Asset { asset, size, .. } => {
                if asset.is_empty() {
                    out.push(Diagnostic::error(&e.id, "empty asset path"));
                }
                if !(size.width > 0.0 && size.height > 0.0 && size.width.is_finite() && size.height.is_finite()) {
                    out.push(Diagnostic::error(&e.id, "asset size must be positive"));
                }
            }
            Payload::Ink { collection, pen, replay } => {
                if project.collection(collection).is_none() {
                    out.push(Diagnostic::error(&e.id, format!("unknown ink collection `{collection}`")));
                }
                if !pen.is_valid() {
                    out.push(Diagnostic::error(&e.id, "pen style out of range"));
                }
                if let Some(r) = replay {
                    if r.step >= project.flow.len() {
                        out.push(Diagnostic::error(&e.id, format!("replay step {} outside flow", r.step)));
                    }
                    if !(r.speed > 0.0 && r.speed.is_finite()) {
                        out.push(Diagnostic::error(&e.id, "replay speed must be positive"));
                    }
                }
            }
        }
    }

    let [aw, ah] = project.settings.slide_aspect;
    let aspect_ok = aw > 0.0 && ah > 0.0 && aw.is_finite() && ah.is_finite();
    if !aspect_ok {
        out.push(Diagnostic::error("settings", "slide aspect must be positive"));
    }
    if !(0.0..0.5).contains(&project.settings.slide_margin) {
        out.push(Diagnostic::error("settings", "slide margin must be in [0, 0.5)"));
    }

    let mut slide_ids = HashSet::new();
    for s in &project.slides {
        if !slide_ids.insert(s.id.as_str()) {
            out.push(Diagnostic::error(&s.id, "duplicate slide id"));
        }
        if !s.frame.has_positive_area() || !s.frame.min.is_finite() {
            out.push(Diagnostic::error(&s.id, "slide frame must have positive width and height"));
        } else if aspect_ok {
            let ratio = s.frame.width() / s.frame.height();
            let expected = aw / ah;
            if ((ratio - expected) / expected).abs() > 1e-6 {
                out.push(Diagnostic::warning(
                    &s.id,
                    format!("frame aspect {ratio:.4} differs from project aspect {expected:.4}"),
                ));
            }
        }
        for id in &s.element_ids {
            if !element_ids.contains(id.as_str()) {
                out.push(Diagnostic::error(&s.id, format!("references unknown element `{id}`")));
            }
        }
    }

    if project.flow.is_empty() {
        out.push(Diagnostic::error("flow", "flow is empty; nothing to present"));
    }
    for (i, step) in project.flow.iter().enumerate() {
        let subject = format!("flow[{i}]");
        match step {
            FlowStep::Nonlinear { keyframe } => {
                if let Err(e) = keyframe.viewport.validate() {
                    out.push(Diagnostic::error(&subject, e.to_string()));
                }
            }
            FlowStep::Linear { slide_id, .. } => {
                if !slide_ids.contains(slide_id.as_str()) {
                    out.push(Diagnostic::error(slide_id, format!("{subject} references a missing slide")));
                }
            }
        }
        let (t, d) = step.durations();
        if !(t.is_finite() && t >= 0.0 && d.is_finite() && d >= 0.0) {
            out.push(Diagnostic::error(&subject, "durations must be finite and non-negative"));
        }
    }

    let mut collection_ids = HashMap::new();
    for c in &project.ink {
        if collection_ids.insert(c.id.as_str(), ()).is_some() {
            out.push(Diagnostic::error(&c.id, "duplicate ink collection id"));
        }
        for (i, s) in c.strokes().iter().enumerate() {
            if let Err(e) = s.validate() {
                out.push(Diagnostic::error(format!("ink[{}][{i}]", c.id), e.to_string()));
            }
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Screen;

    fn minimal() -> Project {
        Project {
            slides: vec![Slide {
                id: "s1".into(),
                frame: Rect::from_coords(0.0, 0.0, 160.0, 90.0),
                element_ids: vec![],
                extra: Extra::new(),
            }],
            flow: vec![FlowStep::linear("s1")],
            ..Project::default()
        }
    }

    fn three_steps() -> Project {
        let mut p = minimal();
        p.flow = vec![FlowStep::linear("s1"), FlowStep::linear("s1"), FlowStep::linear("s1")];
        p
    }

    #[test]
    fn minimal_project_is_clean() {
        assert_eq!(validate_project(&minimal()), vec![]);
    }

    #[test]
    fn missing_slide_is_reported() {
        let mut p = minimal();
        p.flow.push(FlowStep::linear("missing"));
        let d = validate_project(&p);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].severity, Severity::Error);
        assert_eq!(d[0].subject, "missing");
    }

    #[test]
    fn zero_scale_is_reported() {
        let mut p = minimal();
        let mut e = CanvasElement::new(
            "box",
            ElementKind::VectorShape,
            Point::ORIGIN,
            Payload::Shape {
                shape: Shape::Rect { width: 1.0, height: 1.0 },
                fill: None,
                stroke: None,
                stroke_width: 1.0,
            },
        );
        e.scale = 0.0;
        p.elements.push(e);
        let d = validate_project(&p);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].subject, "box");
    }

    #[test]
    fn validation_is_repeatable() {
        let mut p = minimal();
        p.flow.push(FlowStep::linear("nope"));
        assert_eq!(validate_project(&p), validate_project(&p));
    }

    #[test]
    fn mismatched_payload_and_aspect() {
        let mut p = minimal();
        p.elements.push(CanvasElement::new(
            "t",
            ElementKind::ImageAsset,
            Point::ORIGIN,
            Payload::Text {
                text: "hi".into(),
                font_size: 10.0,
                color: Color::BLACK,
            },
        ));
        p.slides[0].frame = Rect::from_coords(0.0, 0.0, 100.0, 100.0);
        let d = validate_project(&p);
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|x| x.severity == Severity::Warning && x.subject == "s1"));
    }

    #[test]
    fn empty_flow_is_error() {
        let mut p = minimal();
        p.flow.clear();
        assert!(has_errors(&validate_project(&p)));
    }

    #[test]
    fn advance_and_back() {
        let p = three_steps();
        assert_eq!(p.flow_advance(1).unwrap(), FlowMove::Moved(2));
        assert_eq!(p.flow_advance(2).unwrap(), FlowMove::AtEnd(2));
        assert_eq!(p.flow_back(0).unwrap(), FlowMove::AtStart(0));
        assert_eq!(p.flow_back(p.flow_advance(1).unwrap().cursor()).unwrap(), FlowMove::Moved(1));
        assert_eq!(p.flow_advance(3).unwrap_err(), FlowError::OutOfRange { cursor: 3, len: 3 });
        assert!(Project::default().flow_advance(0).is_err());
    }

    #[test]
    fn slide_viewport_delegates_to_framing() {
        let p = minimal();
        let screen = Screen::new(1920.0, 1080.0);
        let v = slide_viewport(&p.slides[0], screen, 0.0).unwrap();
        assert_eq!(v.center, Point::new(80.0, 45.0));
        assert!((v.zoom - 12.0).abs() < 1e-12);
        let k = p.step_keyframe(0, screen).unwrap();
        assert_eq!(k.viewport, v);
        let mut flat = p.slides[0].clone();
        flat.frame = Rect::from_coords(0.0, 0.0, 0.0, 1.0);
        assert!(slide_viewport(&flat, screen, 0.1).is_err());
    }

    #[test]
    fn rotated_element_bounds() {
        let mut e = CanvasElement::new(
            "r",
            ElementKind::VectorShape,
            Point::new(10.0, 0.0),
            Payload::Shape {
                shape: Shape::Rect { width: 4.0, height: 2.0 },
                fill: None,
                stroke: None,
                stroke_width: 1.0,
            },
        );
        e.rotation = std::f64::consts::FRAC_PI_2;
        e.scale = 2.0;
        let b = e.bounds(&[]).unwrap();
        assert!((b.width() - 4.0).abs() < 1e-12 && (b.height() - 8.0).abs() < 1e-12);
        assert!(b.center().distance(Point::new(10.0, 0.0)) < 1e-12);
    }

    #[test]
    fn json_keeps_unknown_fields() {
        let text = r#"{"format":1,"custom":{"a":1},"metadata":{"title":"t","theme":"dark"},
            "elements":[{"id":"e","kind":"text","position":{"x":0,"y":0},"payload":{"text":"hi"},"note":"keep"}],
            "slides":[],"flow":[{"type":"nonlinear","keyframe":{"viewport":{"center":{"x":0,"y":0},"zoom":1,"rotation":0}}}]}"#;
        let p: Project = serde_json::from_str(text).unwrap();
        assert_eq!(p.extra["custom"], serde_json::json!({"a": 1}));
        assert_eq!(p.metadata.extra["theme"], "dark");
        assert_eq!(p.elements[0].extra["note"], "keep");
        assert!(matches!(p.elements[0].payload, Payload::Text { font_size, .. } if font_size == 24.0));
        let back: Project = serde_json::from_value(serde_json::to_value(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert_eq!(validate_project(&p), vec![]);
    }
}
