//! Presentation engine core: an infinite vector canvas presented through
//! keyframed zoom/pan/rotate flows that interleave with ordinary slides,
//! pressure-aware ink with replay, mind-map tours, and an analytic
//! hierarchy process (AHP) toolkit for ranking alternatives.

// `!(x > 0.0)` guards are how NaN gets rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ahp;
pub mod document;
pub mod geometry;
pub mod ink;
pub mod io;
pub mod mindmap;
pub mod par;
pub mod viewport;

pub use document::{validate_project, CanvasElement, Diagnostic, FlowStep, Project, Severity, Slide};
pub use geometry::{Color, Point, Rect, Screen};
pub use par::Execution;
pub use viewport::{Easing, Keyframe, Viewport};
