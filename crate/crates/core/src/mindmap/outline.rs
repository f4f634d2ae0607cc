//! Tab-indented outline import and compilation into a presentable project.

use super::{generate_tour, radial_layout, MindMapError, MindMapNode, NodeKind};
use crate::document::{CanvasElement, ElementKind, FlowStep, Payload, Project, Shape};
use crate::geometry::{Color, Point, Screen};

/// Parses one node per line; the number of leading tabs is the depth.
/// The single depth-0 line becomes the central node, nodes with children
/// become branches and the rest leaves. Ids are `n0`, `n1`, … in line order.
pub fn parse_outline(text: &str) -> Result<MindMapNode, MindMapError> {
    // (depth, node) chain from the root to the most recent line
    let mut stack: Vec<(usize, MindMapNode)> = Vec::new();
    let mut root: Option<MindMapNode> = None;
    let mut count = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let depth = raw.chars().take_while(|c| *c == '\t').count();
        let label = raw[depth..].trim();
        let err = |message: &str| MindMapError::Outline {
            line,
            message: message.to_owned(),
        };
        if raw[depth..].starts_with(' ') {
            return Err(err("indent with tabs only"));
        }
        if count == 0 && depth != 0 {
            return Err(err("first line must not be indented"));
        }
        if count > 0 && depth == 0 {
            return Err(err("only one top-level (central) line is allowed"));
        }
        if stack.last().is_some_and(|(d, _)| depth > d + 1) {
            return Err(err("indented more than one level below its parent"));
        }
        // the root (depth 0) is never popped here, since later lines have depth >= 1
        while stack.last().is_some_and(|(d, _)| *d >= depth) {
            let (_, done) = stack.pop().expect("checked");
            attach(&mut stack, &mut root, done);
        }
        let node = if depth == 0 {
            MindMapNode::central(format!("n{count}"), label)
        } else {
            MindMapNode::leaf(format!("n{count}"), label)
        };
        stack.push((depth, node));
        count += 1;
    }
    while let Some((_, done)) = stack.pop() {
        attach(&mut stack, &mut root, done);
    }
    root.ok_or(MindMapError::Outline {
        line: 0,
        message: "outline is empty".into(),
    })
}

fn attach(stack: &mut [(usize, MindMapNode)], root: &mut Option<MindMapNode>, node: MindMapNode) {
    match stack.last_mut() {
        Some((_, parent)) => {
            if parent.kind == NodeKind::Leaf {
                // a line gained children: it was a branch all along
                *parent = MindMapNode::branch(std::mem::take(&mut parent.id), std::mem::take(&mut parent.label));
            }
            parent.children.push(node);
        }
        None => *root = Some(node),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompileOptions {
    pub ring_spacing: f64,
    pub screen: Screen,
    pub margin: f64,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            ring_spacing: 300.0,
            screen: Screen::new(1920.0, 1080.0),
            margin: 0.1,
        }
    }
}

/// Lays out a mind map and emits a project: one box and one label per node,
/// cubic edges behind them, and a flow that follows the generated tour.
pub fn compile_mindmap(root: &MindMapNode, options: &CompileOptions) -> Result<Project, MindMapError> {
    let layout = radial_layout(root, options.ring_spacing)?;
    let tour = generate_tour(root, &layout, options.screen, options.margin)?;
    let size = layout.node_size;
    let spacing = options.ring_spacing;
    let mut elements = Vec::new();

    for (node, _) in root.walk() {
        let here = layout.get(&node.id).expect("laid out");
        for child in &node.children {
            let there = layout.get(&child.id).expect("laid out");
            let out_dir = if here.depth == 0 { there.bisector() } else { here.bisector() };
            let from = here.position;
            let to = there.position;
            let mut edge = CanvasElement::new(
                format!("edge-{}-{}", node.id, child.id),
                ElementKind::VectorShape,
                Point::ORIGIN,
                Payload::Shape {
                    shape: Shape::Cubic {
                        from,
                        c1: from + Point::from_polar(spacing / 2.0, out_dir),
                        c2: to - Point::from_polar(spacing / 2.0, there.bisector()),
                        to,
                    },
                    fill: None,
                    stroke: Some(Color::rgb(0x88, 0x88, 0x88)),
                    stroke_width: spacing / 60.0,
                },
            );
            edge.z_order = -1;
            elements.push(edge);
        }

        let shape = match node.kind {
            NodeKind::Central => Shape::Ellipse {
                rx: size.width / 2.0,
                ry: size.height / 2.0,
            },
            _ => Shape::Rect {
                width: size.width,
                height: size.height,
            },
        };
        elements.push(CanvasElement::new(
            format!("node-{}", node.id),
            ElementKind::VectorShape,
            here.position,
            Payload::Shape {
                shape,
                fill: Some(node.color),
                stroke: None,
                stroke_width: 1.0,
            },
        ));
        let mut label = CanvasElement::new(
            format!("label-{}", node.id),
            ElementKind::Text,
            here.position,
            Payload::Text {
                text: node.label.clone(),
                font_size: size.height * 0.35,
                color: Color::WHITE,
            },
        );
        label.z_order = 1;
        elements.push(label);
    }

    let flow = tour
        .into_iter()
        .map(|stop| FlowStep::nonlinear(stop.keyframe))
        .collect();

    let mut project = Project {
        elements,
        flow,
        ..Project::default()
    };
    project.metadata.title = root.label.clone();
    Ok(project)
}
