//! Digital ink: strokes sampled as position + pressure with stroke-level
//! start/finish times and color, plus the two ways of showing them: a
//! pressure-modulated outline, and a time-scaled replay.

mod log;
mod outline;
mod replay;

pub use log::{parse_stroke_log, write_stroke_log, StrokeLogError};
pub use outline::{outline_all, stroke_bbox, stroke_outline, ARC_SEGMENTS};
pub use replay::{replay_visible, visible_prefix, Reveal};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Color, Point};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InkError {
    #[error("sample position ({x}, {y}) is not finite")]
    NonFinitePosition { x: f64, y: f64 },
    #[error("sample pressure {0} is not finite")]
    NonFinitePressure(f64),
    #[error("sample pressure {0} outside [0, 1]")]
    PressureOutOfRange(f64),
    #[error("stroke has no samples")]
    EmptyStroke,
    #[error("stroke finishes at {finish} before it starts at {start}")]
    TimeReversed { start: f64, finish: f64 },
    #[error("stroke start time {0} must be finite and non-negative")]
    BadStartTime(f64),
    #[error("stroke base width {0} must be positive and finite")]
    BadWidth(f64),
    #[error("replay speed {0} must be positive")]
    BadSpeed(f64),
    #[error("replay time {0} must be non-negative")]
    BadTime(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InkSample {
    pub position: Point,
    pub pressure: f64,
}

impl InkSample {
    pub fn new(x: f64, y: f64, pressure: f64) -> Self {
        InkSample {
            position: Point::new(x, y),
            pressure,
        }
    }
}

/// Emitted when an out-of-range pressure is clamped on ingest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureClamped {
    pub original: f64,
    pub stored: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stroke {
    pub samples: Vec<InkSample>,
    pub start_time: f64,
    pub finish_time: f64,
    pub color: Color,
    pub base_width: f64,
}

impl Stroke {
    /// Creates a stroke from its first sample.
    pub fn begin(first: InkSample, start_time: f64, color: Color, base_width: f64) -> Result<Self, InkError> {
        let mut stroke = Stroke {
            samples: Vec::new(),
            start_time,
            finish_time: start_time,
            color,
            base_width,
        };
        stroke.push_checked(first)?;
        stroke.validate()?;
        Ok(stroke)
    }

    /// Builds a stroke from complete data, clamping pressures.
    pub fn from_samples(
        samples: impl IntoIterator<Item = InkSample>,
        start_time: f64,
        finish_time: f64,
        color: Color,
        base_width: f64,
    ) -> Result<Self, InkError> {
        let mut stroke = Stroke {
            samples: Vec::new(),
            start_time,
            finish_time,
            color,
            base_width,
        };
        for s in samples {
            stroke.push_checked(s)?;
        }
        stroke.validate()?;
        Ok(stroke)
    }

    /// Appends a digitizer sample. Pressure outside `[0, 1]` is clamped and
    /// reported back to the caller.
    pub fn append_sample(&mut self, sample: InkSample) -> Result<Option<PressureClamped>, InkError> {
        self.push_checked(sample)
    }

    fn push_checked(&mut self, sample: InkSample) -> Result<Option<PressureClamped>, InkError> {
        if !sample.position.is_finite() {
            return Err(InkError::NonFinitePosition {
                x: sample.position.x,
                y: sample.position.y,
            });
        }
        if !sample.pressure.is_finite() {
            return Err(InkError::NonFinitePressure(sample.pressure));
        }
        let stored = sample.pressure.clamp(0.0, 1.0);
        self.samples.push(InkSample {
            position: sample.position,
            pressure: stored,
        });
        Ok((stored != sample.pressure).then_some(PressureClamped {
            original: sample.pressure,
            stored,
        }))
    }

    pub fn validate(&self) -> Result<(), InkError> {
        if self.samples.is_empty() {
            return Err(InkError::EmptyStroke);
        }
        for s in &self.samples {
            if !s.position.is_finite() {
                return Err(InkError::NonFinitePosition {
                    x: s.position.x,
                    y: s.position.y,
                });
            }
            if !(0.0..=1.0).contains(&s.pressure) {
                return Err(InkError::PressureOutOfRange(s.pressure));
            }
        }
        if !(self.start_time.is_finite() && self.start_time >= 0.0) {
            return Err(InkError::BadStartTime(self.start_time));
        }
        if !(self.finish_time.is_finite() && self.finish_time >= self.start_time) {
            return Err(InkError::TimeReversed {
                start: self.start_time,
                finish: self.finish_time,
            });
        }
        if !(self.base_width > 0.0 && self.base_width.is_finite()) {
            return Err(InkError::BadWidth(self.base_width));
        }
        Ok(())
    }

    pub fn duration(&self) -> f64 {
        self.finish_time - self.start_time
    }

    /// Total polyline length in canvas units.
    pub fn arc_length(&self) -> f64 {
        self.samples
            .windows(2)
            .map(|w| w[0].position.distance(w[1].position))
            .sum()
    }
}

/// Strokes kept sorted by start time; sorting happens on construction and
/// on deserialization (stable, so equal start times keep capture order).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "RawCollection")]
pub struct StrokeCollection {
    pub id: String,
    strokes: Vec<Stroke>,
}

#[derive(Deserialize)]
struct RawCollection {
    id: String,
    strokes: Vec<Stroke>,
}

impl From<RawCollection> for StrokeCollection {
    fn from(raw: RawCollection) -> Self {
        StrokeCollection::new(raw.id, raw.strokes)
    }
}

impl StrokeCollection {
    pub fn new(id: impl Into<String>, mut strokes: Vec<Stroke>) -> Self {
        strokes.sort_by(|a, b| a.start_time.total_cmp(&b.start_time));
        StrokeCollection {
            id: id.into(),
            strokes,
        }
    }

    pub fn strokes(&self) -> &[Stroke] {
        &self.strokes
    }

    /// Inserts a stroke at its start-time position (after any equal starts).
    pub fn push(&mut self, stroke: Stroke) {
        let at = self
            .strokes
            .partition_point(|s| s.start_time <= stroke.start_time);
        self.strokes.insert(at, stroke);
    }

    pub fn remove(&mut self, index: usize) -> Option<Stroke> {
        (index < self.strokes.len()).then(|| self.strokes.remove(index))
    }

    pub fn len(&self) -> usize {
        self.strokes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strokes.is_empty()
    }

    /// Time at which the last stroke finishes (0 for an empty collection).
    pub fn finish_time(&self) -> f64 {
        self.strokes.iter().map(|s| s.finish_time).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PenKind {
    #[default]
    Pen,
    Highlighter,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenStyle {
    pub kind: PenKind,
    /// Width fraction at zero pressure, in `(0, 1]`. A value of 1 ignores
    /// pressure entirely.
    pub min_width_fraction: f64,
    pub opacity: f64,
}

impl Default for PenStyle {
    fn default() -> Self {
        PenStyle::pen()
    }
}

impl PenStyle {
    pub fn pen() -> Self {
        PenStyle {
            kind: PenKind::Pen,
            min_width_fraction: 0.1,
            opacity: 1.0,
        }
    }

    pub fn highlighter() -> Self {
        PenStyle {
            kind: PenKind::Highlighter,
            min_width_fraction: 1.0,
            opacity: 0.4,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.min_width_fraction > 0.0
            && self.min_width_fraction <= 1.0
            && self.opacity > 0.0
            && self.opacity <= 1.0
    }

    /// Half of the drawn width at a given pressure.
    pub fn half_width(&self, base_width: f64, pressure: f64) -> f64 {
        let f = self.min_width_fraction;
        base_width / 2.0 * (f + (1.0 - f) * pressure)
    }
}
