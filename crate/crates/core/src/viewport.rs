//! Camera geometry on the infinite canvas: viewport interpolation for
//! zoom/pan/rotate transitions, canvas/screen mapping and rectangle framing.
//!
//! Every function here is pure. Zoom interpolates in log space so that deep
//! zooms progress at a constant perceived rate, rotation follows the shortest
//! arc (exactly opposite angles turn counterclockwise), and the center moves
//! along a straight line.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry::{GeometryError, Point, Rect, Screen};

/// Default transition length for generated keyframes, in seconds.
pub const DEFAULT_TRANSITION_SECS: f64 = 1.0;

/// Camera state: canvas point at the screen center, screen pixels per canvas
/// unit, and counterclockwise rotation in radians within `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub center: Point,
    pub zoom: f64,
    pub rotation: f64,
}

impl Viewport {
    /// Builds a viewport, normalizing `rotation` into `[0, 2π)`.
    pub fn new(center: Point, zoom: f64, rotation: f64) -> Self {
        Viewport {
            center,
            zoom,
            rotation: normalize_angle(rotation),
        }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !self.center.is_finite() {
            return Err(GeometryError::InvalidViewport("center is not finite".into()));
        }
        if !(self.zoom > 0.0 && self.zoom.is_finite()) {
            return Err(GeometryError::InvalidViewport(format!(
                "zoom {} must be positive and finite",
                self.zoom
            )));
        }
        if !(0.0..TAU).contains(&self.rotation) {
            return Err(GeometryError::InvalidViewport(format!(
                "rotation {} outside [0, 2π)",
                self.rotation
            )));
        }
        Ok(())
    }

    /// Axis-aligned canvas region visible on `screen`.
    pub fn visible_region(&self, screen: Screen) -> Rect {
        let corners = [
            Point::new(0.0, 0.0),
            Point::new(screen.width, 0.0),
            Point::new(screen.width, screen.height),
            Point::new(0.0, screen.height),
        ]
        .map(|s| screen_to_canvas(s, self, screen));
        Rect::bounding(corners).expect("four corners")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Easing {
    #[default]
    Linear,
    Smoothstep,
}

impl Easing {
    pub fn apply(self, t: f64) -> f64 {
        match self {
            Easing::Linear => t,
            Easing::Smoothstep => t * t * (3.0 - 2.0 * t),
        }
    }
}

/// A timed viewport target: the camera travels to `viewport` over
/// `transition_duration` seconds and then rests for `dwell_duration`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Keyframe {
    pub viewport: Viewport,
    #[serde(default = "default_transition")]
    pub transition_duration: f64,
    #[serde(default)]
    pub dwell_duration: f64,
    #[serde(default)]
    pub easing: Easing,
}

fn default_transition() -> f64 {
    DEFAULT_TRANSITION_SECS
}

impl Keyframe {
    pub fn new(viewport: Viewport) -> Self {
        Keyframe {
            viewport,
            transition_duration: DEFAULT_TRANSITION_SECS,
            dwell_duration: 0.0,
            easing: Easing::Linear,
        }
    }

    pub fn with_durations(mut self, transition: f64, dwell: f64) -> Self {
        self.transition_duration = transition;
        self.dwell_duration = dwell;
        self
    }

    pub fn with_easing(mut self, easing: Easing) -> Self {
        self.easing = easing;
        self
    }

    pub fn durations_valid(&self) -> bool {
        [self.transition_duration, self.dwell_duration]
            .iter()
            .all(|d| d.is_finite() && *d >= 0.0)
    }

    /// Number of frames this keyframe contributes at `fps`.
    pub fn frame_count(&self, fps: f64) -> usize {
        frames_for(self.transition_duration, fps) + frames_for(self.dwell_duration, fps)
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let r = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Signed shortest rotation from `from` to `to`, in `(-π, π]`.
pub fn shortest_arc(from: f64, to: f64) -> f64 {
    let delta = (to - from).rem_euclid(TAU);
    if delta > PI {
        delta - TAU
    } else {
        delta
    }
}

/// `ceil(duration * fps)`, tolerant of products that land a rounding error
/// above an integer (0.3 s at 10 fps is three frames, not four).
pub fn frames_for(duration: f64, fps: f64) -> usize {
    let exact = duration * fps;
    if !(exact > 0.0) {
        return 0;
    }
    (exact - 1e-9).ceil().max(0.0) as usize
}

pub fn interpolate_viewport(a: &Viewport, b: &Viewport, t: f64) -> Result<Viewport, GeometryError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(GeometryError::ParameterOutOfRange(t));
    }
    if t == 0.0 {
        return Ok(*a);
    }
    if t == 1.0 {
        return Ok(*b);
    }
    let center = a.center.lerp(b.center, t);
    let zoom = ((1.0 - t) * a.zoom.ln() + t * b.zoom.ln()).exp();
    let rotation = normalize_angle(a.rotation + t * shortest_arc(a.rotation, b.rotation));
    Ok(Viewport {
        center,
        zoom,
        rotation,
    })
}

/// Canvas point to screen pixels: translate by −center, rotate by −rotation,
/// scale by zoom, flip y, then move the origin to the screen center.
pub fn canvas_to_screen(p: Point, v: &Viewport, screen: Screen) -> Point {
    let local = (p - v.center).rotated(-v.rotation) * v.zoom;
    Point::new(screen.width / 2.0 + local.x, screen.height / 2.0 - local.y)
}

pub fn screen_to_canvas(s: Point, v: &Viewport, screen: Screen) -> Point {
    let local = Point::new(s.x - screen.width / 2.0, screen.height / 2.0 - s.y) * (1.0 / v.zoom);
    local.rotated(v.rotation) + v.center
}

/// The affine canvas→screen map as SVG `matrix(a b c d e f)` coefficients.
pub fn screen_matrix(v: &Viewport, screen: Screen) -> [f64; 6] {
    let (s, c) = v.rotation.sin_cos();
    let a = v.zoom * c;
    let b = v.zoom * s;
    let cc = v.zoom * s;
    let d = -v.zoom * c;
    let e = screen.width / 2.0 - a * v.center.x - cc * v.center.y;
    let f = screen.height / 2.0 - b * v.center.x - d * v.center.y;
    [a, b, cc, d, e, f]
}

/// Unrotated viewport centered on `bbox` that fits it on `screen` with
/// `margin_fraction` of padding.
pub fn frame_bounds(bbox: &Rect, screen: Screen, margin_fraction: f64) -> Result<Viewport, GeometryError> {
    if !(0.0..0.5).contains(&margin_fraction) {
        return Err(GeometryError::MarginOutOfRange(margin_fraction));
    }
    if !bbox.has_positive_area() {
        return Err(GeometryError::DegenerateRect {
            width: bbox.width(),
            height: bbox.height(),
        });
    }
    screen.validate()?;
    let pad = 1.0 + margin_fraction;
    let zoom = (screen.width / (bbox.width() * pad)).min(screen.height / (bbox.height() * pad));
    Ok(Viewport {
        center: bbox.center(),
        zoom,
        rotation: 0.0,
    })
}

/// Frames for the move from `a` to `b`: `ceil(transition·fps)` eased
/// interpolation frames ending exactly on `b`, then `ceil(dwell·fps)` copies
/// of `b`.
pub fn sample_transition(a: &Keyframe, b: &Keyframe, fps: f64) -> Result<Vec<Viewport>, GeometryError> {
    if !(fps > 0.0 && fps.is_finite()) {
        return Err(GeometryError::ParameterOutOfRange(fps));
    }
    let moving = frames_for(b.transition_duration, fps);
    let resting = frames_for(b.dwell_duration, fps);
    let mut frames = Vec::with_capacity(moving + resting);
    for i in 1..=moving {
        let t = if i == moving { 1.0 } else { i as f64 / moving as f64 };
        frames.push(interpolate_viewport(&a.viewport, &b.viewport, b.easing.apply(t))?);
    }
    frames.extend(std::iter::repeat_n(b.viewport, resting));
    Ok(frames)
}
