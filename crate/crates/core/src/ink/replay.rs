use serde::{Deserialize, Serialize};

use super::{InkError, InkSample, Stroke, StrokeCollection};

/// How much of one stroke is on screen during replay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reveal {
    /// Index into the collection's start-time-sorted strokes.
    pub stroke: usize,
    pub fraction: f64,
}

/// Strokes visible `t` seconds into a replay running at `speed`.
///
/// The replay clock is `τ = t · speed`. Strokes already finished are fully
/// revealed, strokes starting after `τ` are absent, and a stroke in progress
/// reveals the elapsed share of its duration. A stroke starting exactly at
/// `τ` is listed with fraction 0; a zero-duration stroke is complete as soon
/// as its start is reached.
pub fn replay_visible(collection: &StrokeCollection, t: f64, speed: f64) -> Result<Vec<Reveal>, InkError> {
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(InkError::BadSpeed(speed));
    }
    if !(t >= 0.0) {
        return Err(InkError::BadTime(t));
    }
    let tau = t * speed;
    Ok(collection
        .strokes()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| {
            let fraction = if s.finish_time <= tau {
                1.0
            } else if s.start_time > tau {
                return None;
            } else {
                (tau - s.start_time) / (s.finish_time - s.start_time)
            };
            Some(Reveal { stroke: i, fraction })
        })
        .collect())
}

/// Leading part of a stroke covering `fraction` of its arc length. Sample
/// times are not stored, so the reveal advances uniformly along the curve;
/// the cut point interpolates both position and pressure.
pub fn visible_prefix(stroke: &Stroke, fraction: f64) -> Vec<InkSample> {
    let samples = &stroke.samples;
    if fraction >= 1.0 || samples.len() == 1 {
        return samples.clone();
    }
    let total = stroke.arc_length();
    if total == 0.0 {
        return if fraction > 0.0 { samples.clone() } else { vec![samples[0]] };
    }
    let target = fraction.max(0.0) * total;
    let mut out = vec![samples[0]];
    let mut walked = 0.0;
    for w in samples.windows(2) {
        let seg = w[0].position.distance(w[1].position);
        if walked + seg <= target {
            walked += seg;
            out.push(w[1]);
            continue;
        }
        let t = (target - walked) / seg;
        if t > 0.0 {
            out.push(InkSample {
                position: w[0].position.lerp(w[1].position, t),
                pressure: w[0].pressure + (w[1].pressure - w[0].pressure) * t,
            });
        }
        break;
    }
    out
}
