//! SVG 1.1 serialization of one frame.
//!
//! The outer group carries the canvas-to-screen matrix, so elements are
//! written in canvas units with y up. Text and raster content would appear
//! mirrored under that flip, so each gets a local `scale(1 -1)`.

use std::fmt::Write as _;

use super::render::FrameState;
use crate::document::{CanvasElement, ElementKind, Payload, Project, Shape};
use crate::geometry::{fmt_num, Color, Point, Screen};
use crate::ink::{stroke_outline, visible_prefix, PenStyle, Stroke};
use crate::viewport::screen_matrix;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn paint(attr: &str, color: Option<Color>) -> String {
    match color {
        None => format!(" {attr}=\"none\""),
        Some(c) if c.alpha() < 1.0 => format!(" {attr}=\"{}\" {attr}-opacity=\"{}\"", c.hex_rgb(), fmt_num(c.alpha())),
        Some(c) => format!(" {attr}=\"{}\"", c.hex_rgb()),
    }
}

fn points_attr(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| format!("{},{}", fmt_num(p.x), fmt_num(p.y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn polygon_path(points: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, fmt_num(p.x), fmt_num(p.y));
    }
    d.push('Z');
    d
}

fn element_transform(e: &CanvasElement) -> String {
    let mut t = format!("translate({} {})", fmt_num(e.position.x), fmt_num(e.position.y));
    if e.rotation != 0.0 {
        let _ = write!(t, " rotate({})", fmt_num(e.rotation.to_degrees()));
    }
    if e.scale != 1.0 {
        let _ = write!(t, " scale({})", fmt_num(e.scale));
    }
    t
}

fn write_shape(out: &mut String, shape: &Shape, fill: Option<Color>, stroke: Option<Color>, width: f64) {
    let mut style = paint("fill", fill) + &paint("stroke", stroke);
    if stroke.is_some() {
        let _ = write!(style, " stroke-width=\"{}\"", fmt_num(width));
    }
    let _ = match shape {
        Shape::Rect { width, height } => writeln!(
            out,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"{style}/>",
            fmt_num(-width / 2.0),
            fmt_num(-height / 2.0),
            fmt_num(*width),
            fmt_num(*height)
        ),
        Shape::Ellipse { rx, ry } => writeln!(out, "<ellipse rx=\"{}\" ry=\"{}\"{style}/>", fmt_num(*rx), fmt_num(*ry)),
        Shape::Polyline { points, closed } => writeln!(
            out,
            "<{} points=\"{}\"{style}/>",
            if *closed { "polygon" } else { "polyline" },
            points_attr(points)
        ),
        Shape::Cubic { from, c1, c2, to } => writeln!(
            out,
            "<path d=\"M{} {} C{} {} {} {} {} {}\"{style}/>",
            fmt_num(from.x),
            fmt_num(from.y),
            fmt_num(c1.x),
            fmt_num(c1.y),
            fmt_num(c2.x),
            fmt_num(c2.y),
            fmt_num(to.x),
            fmt_num(to.y)
        ),
    };
}

fn write_image(out: &mut String, href: &str, w: f64, h: f64, page: Option<u32>) {
    let page = page.map(|p| format!(" data-page=\"{p}\"")).unwrap_or_default();
    let _ = writeln!(
        out,
        "<image x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" preserveAspectRatio=\"none\" xlink:href=\"{}\"{page}/>",
        fmt_num(-w / 2.0),
        fmt_num(-h / 2.0),
        fmt_num(w),
        fmt_num(h),
        escape(href)
    );
}

fn write_element(out: &mut String, project: &Project, frame: &FrameState, e: &CanvasElement) {
    let _ = writeln!(out, "<g id=\"{}\" transform=\"{}\">", escape(&e.id), element_transform(e));
    match &e.payload {
        Payload::Shape {
            shape,
            fill,
            stroke,
            stroke_width,
        } => write_shape(out, shape, *fill, *stroke, *stroke_width),
        Payload::Text { text, font_size, color } => {
            let _ = writeln!(
                out,
                "<text transform=\"scale(1 -1)\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\" dominant-baseline=\"central\"{}>{}</text>",
                fmt_num(*font_size),
                paint("fill", Some(*color)),
                escape(text)
            );
        }
        Payload::Asset { asset, size, page } => {
            out.push_str("<g transform=\"scale(1 -1)\">\n");
            if e.kind == ElementKind::VideoPlaceholder {
                // static poster with a play icon; playback belongs to the player
                write_shape(
                    out,
                    &Shape::Rect {
                        width: size.width,
                        height: size.height,
                    },
                    Some(Color::rgb(0x22, 0x22, 0x22)),
                    None,
                    0.0,
                );
                write_image(out, asset, size.width, size.height, None);
                let r = 0.15 * size.width.min(size.height);
                let icon = [Point::new(-0.6 * r, -r), Point::new(-0.6 * r, r), Point::new(r, 0.0)];
                let _ = writeln!(
                    out,
                    "<polygon class=\"play\" points=\"{}\" fill=\"#ffffff\" fill-opacity=\"0.85\"/>",
                    points_attr(&icon)
                );
            } else {
                write_image(out, asset, size.width, size.height, *page);
            }
            out.push_str("</g>\n");
        }
        Payload::Ink { collection, pen, .. } => {
            let state = frame.ink.iter().find(|s| s.element == e.id);
            if let (Some(c), Some(state)) = (project.collection(collection), state) {
                for reveal in state.reveals.iter().filter(|r| r.fraction > 0.0) {
                    let full = &c.strokes()[reveal.stroke];
                    write_ink(out, full, reveal.fraction, pen);
                }
            }
        }
    }
    out.push_str("</g>\n");
}

fn write_ink(out: &mut String, full: &Stroke, fraction: f64, pen: &PenStyle) {
    let partial;
    let stroke = if fraction >= 1.0 {
        full
    } else {
        partial = Stroke {
            samples: visible_prefix(full, fraction),
            ..full.clone()
        };
        &partial
    };
    let outline = stroke_outline(stroke, pen);
    let color = full.color;
    let _ = writeln!(
        out,
        "<path class=\"ink\" d=\"{}\" fill=\"{}\" fill-opacity=\"{}\"/>",
        polygon_path(&outline),
        color.hex_rgb(),
        fmt_num(pen.opacity * color.alpha())
    );
}

/// One complete SVG document for `frame`. Elements outside the visible
/// region are culled; the rest are drawn in ascending z order, ties in
/// document order.
pub fn render_svg(project: &Project, frame: &FrameState, screen: Screen) -> String {
    let (w, h) = (fmt_num(screen.width), fmt_num(screen.height));
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(
        out,
        "<rect class=\"background\" width=\"{w}\" height=\"{h}\"{}/>",
        paint("fill", Some(project.metadata.background))
    );

    let visible = frame.viewport.visible_region(screen);
    let mut elements: Vec<&CanvasElement> = project
        .elements
        .iter()
        .filter(|e| e.bounds(&project.ink).is_some_and(|b| b.intersects(&visible)))
        .collect();
    elements.sort_by_key(|e| e.z_order);

    if !elements.is_empty() {
        let m = screen_matrix(&frame.viewport, screen).map(fmt_num);
        let _ = writeln!(out, "<g transform=\"matrix({})\">", m.join(" "));
        for e in elements {
            write_element(&mut out, project, frame, e);
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
