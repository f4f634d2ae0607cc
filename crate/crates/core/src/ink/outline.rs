use std::f64::consts::{PI, TAU};

use super::{PenKind, PenStyle, Stroke};
use crate::geometry::{Point, Rect};
use crate::par::Execution;

/// Segments in a full circle; caps use half of them, joins a proportional share.
pub const ARC_SEGMENTS: usize = 16;

const ARC_STEP: f64 = TAU / ARC_SEGMENTS as f64;

/// Closed outline polygon of a stroke, in canvas units.
///
/// Each sample's half-width follows the pen's pressure law; the centerline is
/// offset perpendicular to its local direction on both sides. Pens get round
/// caps and round outer joins, highlighters flat caps. A stroke whose samples
/// all coincide becomes a regular 16-gon disc.
pub fn stroke_outline(stroke: &Stroke, pen: &PenStyle) -> Vec<Point> {
    let spine = collapse(stroke, pen);
    if spine.len() == 1 {
        let (center, r) = spine[0];
        return (0..ARC_SEGMENTS)
            .map(|k| center + Point::from_polar(r, k as f64 * ARC_STEP))
            .collect();
    }

    let n = spine.len();
    let dirs: Vec<Point> = spine
        .windows(2)
        .map(|w| (w[1].0 - w[0].0).normalized().expect("collapsed spine"))
        .collect();

    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for i in 1..n - 1 {
        let (p, h) = spine[i];
        let d_in = dirs[i - 1];
        let d_out = dirs[i];
        let turn = d_in.cross(d_out);
        let tangent = (d_in + d_out).normalized().unwrap_or(d_in);
        let inner = tangent.perp() * h;
        if turn > 0.0 {
            left.push(vec![p + inner]);
            right.push(arc(p, h, angle_of(d_out.perp() * -1.0), angle_of(d_in.perp() * -1.0)));
        } else if turn < 0.0 {
            left.push(arc(p, h, angle_of(d_in.perp()), angle_of(d_out.perp())));
            right.push(vec![p - inner]);
        } else {
            left.push(vec![p + inner]);
            right.push(vec![p - inner]);
        }
    }

    let (first, h_first) = spine[0];
    let (last, h_last) = spine[n - 1];
    let n_first = dirs[0].perp();
    let n_last = dirs[n - 2].perp();

    let mut polygon = Vec::new();
    match pen.kind {
        PenKind::Pen => {
            polygon.extend(half_disc(first, h_first, angle_of(n_first * -1.0)));
            polygon.extend(left.into_iter().flatten());
            polygon.extend(half_disc(last, h_last, angle_of(n_last)));
        }
        PenKind::Highlighter => {
            polygon.push(first - n_first * h_first);
            polygon.push(first + n_first * h_first);
            polygon.extend(left.into_iter().flatten());
            polygon.push(last + n_last * h_last);
            polygon.push(last - n_last * h_last);
        }
    }
    polygon.extend(right.into_iter().rev().flatten());
    polygon
}

/// Tight bounds of [`stroke_outline`].
pub fn stroke_bbox(stroke: &Stroke, pen: &PenStyle) -> Rect {
    Rect::bounding(stroke_outline(stroke, pen)).expect("outline is never empty")
}

/// Outlines for many strokes, optionally in parallel.
pub fn outline_all(strokes: &[Stroke], pen: &PenStyle, exec: Execution) -> Vec<Vec<Point>> {
    exec.map(strokes, |s| stroke_outline(s, pen))
}

/// Centerline with consecutive duplicate positions merged (keeping the wider
/// half-width), paired with each point's half-width.
fn collapse(stroke: &Stroke, pen: &PenStyle) -> Vec<(Point, f64)> {
    let mut spine: Vec<(Point, f64)> = Vec::with_capacity(stroke.samples.len());
    for s in &stroke.samples {
        let h = pen.half_width(stroke.base_width, s.pressure);
        match spine.last_mut() {
            Some((p, prev)) if *p == s.position => *prev = prev.max(h),
            _ => spine.push((s.position, h)),
        }
    }
    spine
}

fn angle_of(v: Point) -> f64 {
    v.y.atan2(v.x)
}

/// Nine points sweeping π clockwise from `start` around `center`.
fn half_disc(center: Point, r: f64, start: f64) -> impl Iterator<Item = Point> {
    (0..=ARC_SEGMENTS / 2).map(move |k| center + Point::from_polar(r, start - k as f64 * ARC_STEP))
}

/// Arc from angle `from` to `to` along the shorter way, inclusive of both ends.
fn arc(center: Point, r: f64, from: f64, to: f64) -> Vec<Point> {
    let mut sweep = (to - from).rem_euclid(TAU);
    if sweep > PI {
        sweep -= TAU;
    }
    let segments = ((sweep.abs() / ARC_STEP).ceil() as usize).max(1);
    (0..=segments)
        .map(|k| center + Point::from_polar(r, from + sweep * k as f64 / segments as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Color;
    use crate::ink::InkSample;

    fn stroke(samples: &[(f64, f64, f64)], width: f64) -> Stroke {
        Stroke::from_samples(
            samples.iter().map(|&(x, y, p)| InkSample::new(x, y, p)),
            0.0,
            1.0,
            Color::BLACK,
            width,
        )
        .unwrap()
    }

    fn close(a: Point, b: Point) -> bool {
        a.distance(b) < 1e-9
    }

    fn contains_vertex(poly: &[Point], v: Point) -> bool {
        poly.iter().any(|&p| close(p, v))
    }

    /// Distance from `p` to segment `a`-`b`.
    fn seg_dist(p: Point, a: Point, b: Point) -> f64 {
        let ab = b - a;
        let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
        p.distance(a + ab * t)
    }

    #[test]
    fn single_sample_is_disc() {
        let s = stroke(&[(5.0, 5.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::pen());
        assert_eq!(poly.len(), 16);
        assert!(poly.iter().all(|p| (p.distance(Point::new(5.0, 5.0)) - 1.0).abs() < 1e-12));
        let bb = stroke_bbox(&s, &PenStyle::pen());
        assert!(close(bb.min, Point::new(4.0, 4.0)) && close(bb.max, Point::new(6.0, 6.0)));
    }

    #[test]
    fn full_pressure_is_uniform_ribbon() {
        let s = stroke(&[(0.0, 0.0, 1.0), (4.0, 3.0, 1.0), (8.0, 0.0, 1.0), (12.0, 2.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::pen());
        let pts: Vec<Point> = s.samples.iter().map(|x| x.position).collect();
        for v in &poly {
            let d = pts
                .windows(2)
                .map(|w| seg_dist(*v, w[0], w[1]))
                .fold(f64::INFINITY, f64::min);
            assert!((d - 1.0).abs() < 1e-9 || d < 1.0, "vertex {v:?} at distance {d}");
        }
        // every cap/join vertex on the outer boundary sits exactly one half-width away
        let on_boundary = poly
            .iter()
            .filter(|v| {
                let d = pts.windows(2).map(|w| seg_dist(**v, w[0], w[1])).fold(f64::INFINITY, f64::min);
                (d - 1.0).abs() < 1e-9
            })
            .count();
        assert!(on_boundary >= poly.len() - 2);
    }

    #[test]
    fn zero_pressure_uses_floor_width() {
        let s = stroke(&[(0.0, 0.0, 0.0), (10.0, 0.0, 0.0)], 2.0);
        let bb = stroke_bbox(&s, &PenStyle::pen());
        assert!((bb.height() - 0.2).abs() < 1e-12);
    }

    #[test]
    fn trapezoid_matches_hand_offsets() {
        let w = 3.0;
        let s = stroke(&[(0.0, 0.0, 0.0), (10.0, 0.0, 1.0)], w);
        let poly = stroke_outline(&s, &PenStyle::pen());
        // hand oracle: half-widths 0.05w at start and 0.5w at end, normals ±y
        let h0 = 0.05 * w;
        let h1 = 0.5 * w;
        assert_eq!(poly.len(), 18);
        assert!(close(poly[0], Point::new(0.0, -h0)));
        assert!(close(poly[4], Point::new(-h0, 0.0)));
        assert!(close(poly[8], Point::new(0.0, h0)));
        assert!(close(poly[9], Point::new(10.0, h1)));
        assert!(close(poly[13], Point::new(10.0 + h1, 0.0)));
        assert!(close(poly[17], Point::new(10.0, -h1)));
    }

    #[test]
    fn horizontal_bbox_includes_round_caps() {
        let s = stroke(&[(0.0, 0.0, 1.0), (10.0, 0.0, 1.0)], 2.0);
        let bb = stroke_bbox(&s, &PenStyle::pen());
        assert!(close(bb.min, Point::new(-1.0, -1.0)), "{bb:?}");
        assert!(close(bb.max, Point::new(11.0, 1.0)), "{bb:?}");
    }

    #[test]
    fn highlighter_has_flat_caps() {
        let s = stroke(&[(0.0, 0.0, 1.0), (10.0, 0.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::highlighter());
        assert_eq!(poly.len(), 4);
        let bb = Rect::bounding(poly).unwrap();
        assert!(close(bb.min, Point::new(0.0, -1.0)) && close(bb.max, Point::new(10.0, 1.0)));
    }

    #[test]
    fn outer_join_is_rounded() {
        // left turn of 90 degrees at (10, 0): outer side is the right side
        let s = stroke(&[(0.0, 0.0, 1.0), (10.0, 0.0, 1.0), (10.0, 10.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::pen());
        assert!(contains_vertex(&poly, Point::new(10.0, -1.0)));
        assert!(contains_vertex(&poly, Point::new(11.0, 0.0)));
        let corner = Point::new(10.0, 0.0) + Point::new(1.0, -1.0).normalized().unwrap();
        assert!(contains_vertex(&poly, corner));
    }

    #[test]
    fn duplicate_positions_collapse() {
        let s = stroke(&[(1.0, 1.0, 0.2), (1.0, 1.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::pen());
        assert_eq!(poly.len(), 16);
        assert!(poly.iter().all(|p| (p.distance(Point::new(1.0, 1.0)) - 1.0).abs() < 1e-12));
    }

    #[test]
    fn reversal_does_not_panic() {
        let s = stroke(&[(0.0, 0.0, 1.0), (5.0, 0.0, 1.0), (0.0, 0.0, 1.0)], 2.0);
        let poly = stroke_outline(&s, &PenStyle::pen());
        assert!(poly.iter().all(|p| p.is_finite()));
    }
}
