//! Generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;

use presenter_core::document::{CanvasElement, ElementKind, FlowStep, InkReplay, Payload, Shape, Size, Slide};
use presenter_core::ink::{InkSample, PenStyle, Stroke, StrokeCollection};
use presenter_core::mindmap::MindMapNode;
use presenter_core::{Color, Easing, Keyframe, Point, Project, Rect, Viewport};

/// Builds a mind map from a parent list: node `i + 1` hangs under
/// `parents[i]`, which always indexes an earlier node.
pub fn tree_from_parents(parents: &[usize]) -> MindMapNode {
    let n = parents.len() + 1;
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &p) in parents.iter().enumerate() {
        children[p].push(i + 1);
    }
    fn build(i: usize, children: &[Vec<usize>]) -> MindMapNode {
        let id = format!("n{i}");
        let kids: Vec<MindMapNode> = children[i].iter().map(|&c| build(c, children)).collect();
        let node = if i == 0 {
            MindMapNode::central(id.clone(), id)
        } else if kids.is_empty() {
            return MindMapNode::leaf(id.clone(), id);
        } else {
            MindMapNode::branch(id.clone(), id)
        };
        node.with_children(kids)
    }
    build(0, &children)
}

/// Random trees with up to `max_nodes` nodes.
pub fn arb_tree(max_nodes: usize) -> impl Strategy<Value = MindMapNode> {
    (1..=max_nodes)
        .prop_flat_map(|n| {
            (1..n)
                .map(|i| (0..i).boxed())
                .collect::<Vec<_>>()
        })
        .prop_map(|parents| tree_from_parents(&parents))
}

pub fn arb_point(range: f64) -> impl Strategy<Value = Point> {
    (-range..range, -range..range).prop_map(|(x, y)| Point::new(x, y))
}

pub fn arb_viewport() -> impl Strategy<Value = Viewport> {
    (arb_point(1000.0), -4.6f64..4.6, -10.0f64..10.0)
        .prop_map(|(c, log_zoom, rot)| Viewport::new(c, log_zoom.exp(), rot))
}

pub fn arb_stroke() -> impl Strategy<Value = Stroke> {
    (
        prop::collection::vec((arb_point(200.0), 0.0f64..=1.0), 1..7),
        0.0f64..5.0,
        0.0f64..3.0,
        1.0f64..10.0,
    )
        .prop_map(|(samples, start, duration, width)| {
            Stroke::from_samples(
                samples.into_iter().map(|(p, pr)| InkSample::new(p.x, p.y, pr)),
                start,
                start + duration,
                Color::rgb(0x20, 0x40, 0x80),
                width,
            )
            .expect("generated stroke is valid")
        })
}

pub fn arb_collection(id: &'static str) -> impl Strategy<Value = StrokeCollection> {
    prop::collection::vec(arb_stroke(), 1..6).prop_map(move |s| StrokeCollection::new(id, s))
}

/// Durations in whole milliseconds so frame counts have an exact integer oracle.
pub fn arb_millis() -> impl Strategy<Value = u32> {
    prop_oneof![Just(0u32), 0u32..3000]
}

fn arb_element(i: usize) -> impl Strategy<Value = CanvasElement> {
    let payload = prop_oneof![
        (1.0f64..200.0, 1.0f64..200.0).prop_map(|(w, h)| (
            ElementKind::VectorShape,
            Payload::Shape {
                shape: Shape::Rect { width: w, height: h },
                fill: Some(Color::RED),
                stroke: None,
                stroke_width: 1.0,
            }
        )),
        (1.0f64..100.0, 1.0f64..100.0).prop_map(|(rx, ry)| (
            ElementKind::VectorShape,
            Payload::Shape {
                shape: Shape::Ellipse { rx, ry },
                fill: None,
                stroke: Some(Color::BLACK),
                stroke_width: 2.0,
            }
        )),
        prop::collection::vec(arb_point(100.0), 2..5).prop_map(|points| (
            ElementKind::VectorShape,
            Payload::Shape {
                shape: Shape::Polyline { points, closed: true },
                fill: None,
                stroke: Some(Color::BLACK),
                stroke_width: 1.0,
            }
        )),
        "[a-z <&>]{1,12}".prop_map(|text| (
            ElementKind::Text,
            Payload::Text {
                text,
                font_size: 18.0,
                color: Color::BLACK,
            }
        )),
        prop_oneof![
            Just(ElementKind::ImageAsset),
            Just(ElementKind::LatexAsset),
            Just(ElementKind::PdfPageAsset),
            Just(ElementKind::VideoPlaceholder)
        ]
        .prop_map(|kind| (
            kind,
            Payload::Asset {
                asset: "assets/a.svg".into(),
                size: Size {
                    width: 40.0,
                    height: 30.0,
                },
                page: None,
            }
        )),
        (any::<bool>(), 0.25f64..4.0).prop_map(|(static_ink, speed)| (
            ElementKind::InkRef,
            Payload::Ink {
                collection: "c0".into(),
                pen: PenStyle::pen(),
                replay: (!static_ink).then_some(InkReplay { step: 0, speed }),
            }
        )),
    ];
    (payload, arb_point(500.0), 0.5f64..2.0, -PI..PI, -3i32..3).prop_map(
        move |((kind, payload), position, scale, rotation, z)| {
            let mut e = CanvasElement::new(format!("e{i}"), kind, position, payload);
            e.scale = scale;
            e.rotation = rotation;
            e.z_order = z;
            e
        },
    )
}

fn arb_step() -> impl Strategy<Value = FlowStep> {
    let easing = prop_oneof![Just(Easing::Linear), Just(Easing::Smoothstep)];
    prop_oneof![
        (arb_viewport(), arb_millis(), arb_millis(), easing.clone()).prop_map(|(v, t, d, e)| {
            FlowStep::nonlinear(
                Keyframe::new(v)
                    .with_durations(t as f64 / 1000.0, d as f64 / 1000.0)
                    .with_easing(e),
            )
        }),
        (arb_millis(), arb_millis(), easing).prop_map(|(t, d, e)| FlowStep::Linear {
            slide_id: "s0".into(),
            transition_duration: t as f64 / 1000.0,
            dwell_duration: d as f64 / 1000.0,
            easing: e,
        }),
    ]
}

/// Small projects that pass validation: mixed elements, one slide, one
/// ink collection and a short flow.
pub fn arb_project() -> impl Strategy<Value = Project> {
    (
        (0usize..7).prop_flat_map(|n| (0..n).map(arb_element).collect::<Vec<_>>()),
        arb_point(300.0),
        50.0f64..1000.0,
        arb_collection("c0"),
        prop::collection::vec(arb_step(), 1..4),
        any::<prop::sample::Index>(),
    )
        .prop_map(|(mut elements, corner, width, ink, flow, replay_step)| {
            let step = replay_step.index(flow.len());
            for e in &mut elements {
                if let Payload::Ink { replay: Some(r), .. } = &mut e.payload {
                    r.step = step;
                }
            }
            let mut p = Project::default();
            p.metadata.title = "generated".into();
            p.slides.push(Slide {
                id: "s0".into(),
                frame: Rect::new(corner, corner + Point::new(width, width * 9.0 / 16.0)),
                element_ids: elements.iter().map(|e| e.id.clone()).collect(),
                extra: Default::default(),
            });
            p.elements = elements;
            p.ink.push(ink);
            p.flow = flow;
            p
        })
}
