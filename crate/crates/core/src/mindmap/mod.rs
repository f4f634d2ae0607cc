//! Mind-map diagrams for literature reviews: a central topic, branches that
//! add detail outward, and leaf nodes holding the studies. Maps are laid out
//! radially and compiled into keyframe tours that move from general to
//! specific. The same machinery turns prioritized regions of a static
//! infographic into an animated sequence.

mod layout;
mod outline;
mod tour;

pub use layout::{radial_layout, Placement, RadialLayout};
pub use outline::{compile_mindmap, parse_outline, CompileOptions};
pub use tour::{build_keyframe_timeline, generate_tour, PrioritizedRegion, TourStop, TourTarget};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Color, GeometryError, Point};

#[derive(Debug, Error, PartialEq)]
pub enum MindMapError {
    #[error("node id `{0}` occurs more than once (cyclic or shared subtree)")]
    Cyclic(String),
    #[error("root node `{0}` must be the central node")]
    RootNotCentral(String),
    #[error("node `{0}` is marked central but is not the root")]
    ExtraCentral(String),
    #[error("leaf node `{0}` has children")]
    LeafWithChildren(String),
    #[error("ring spacing {0} must be positive")]
    BadSpacing(f64),
    #[error("region list is empty")]
    NoRegions,
    #[error("region `{0}` has no area")]
    DegenerateRegion(String),
    #[error("node `{0}` is missing from the layout")]
    NotLaidOut(String),
    #[error("outline line {line}: {message}")]
    Outline { line: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Central,
    Branch,
    Leaf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MindMapNode {
    pub id: String,
    pub label: String,
    pub kind: NodeKind,
    #[serde(default)]
    pub children: Vec<MindMapNode>,
    pub color: Color,
    /// Manual placement; overrides the radial position of this node only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub position: Option<Point>,
}

impl MindMapNode {
    fn with_kind(id: impl Into<String>, label: impl Into<String>, kind: NodeKind) -> Self {
        let color = match kind {
            NodeKind::Central => Color::rgb(0x1f, 0x3a, 0x5f),
            NodeKind::Branch => Color::rgb(0x33, 0x33, 0x33),
            NodeKind::Leaf => Color::RED,
        };
        MindMapNode {
            id: id.into(),
            label: label.into(),
            kind,
            children: Vec::new(),
            color,
            position: None,
        }
    }

    pub fn central(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self::with_kind(id, label, NodeKind::Central)
    }

    pub fn branch(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self::with_kind(id, label, NodeKind::Branch)
    }

    pub fn leaf(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self::with_kind(id, label, NodeKind::Leaf)
    }

    pub fn with_children(mut self, children: Vec<MindMapNode>) -> Self {
        self.children = children;
        self
    }

    /// Number of terminal nodes below (a childless node counts itself).
    pub fn leaf_count(&self) -> usize {
        if self.children.is_empty() {
            1
        } else {
            self.children.iter().map(MindMapNode::leaf_count).sum()
        }
    }

    /// Pre-order walk with depths.
    pub fn walk(&self) -> Vec<(&MindMapNode, usize)> {
        let mut out = Vec::new();
        let mut stack = vec![(self, 0)];
        while let Some((node, depth)) = stack.pop() {
            out.push((node, depth));
            stack.extend(node.children.iter().rev().map(|c| (c, depth + 1)));
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.walk().len()
    }

    /// Checks the tree shape: a central root, no other central node, leaves
    /// without children and unique ids.
    pub fn validate(&self) -> Result<(), MindMapError> {
        if self.kind != NodeKind::Central {
            return Err(MindMapError::RootNotCentral(self.id.clone()));
        }
        let mut seen = HashSet::new();
        for (node, depth) in self.walk() {
            if !seen.insert(node.id.as_str()) {
                return Err(MindMapError::Cyclic(node.id.clone()));
            }
            if depth > 0 && node.kind == NodeKind::Central {
                return Err(MindMapError::ExtraCentral(node.id.clone()));
            }
            if node.kind == NodeKind::Leaf && !node.children.is_empty() {
                return Err(MindMapError::LeafWithChildren(node.id.clone()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_rules() {
        let ok = MindMapNode::central("c", "C").with_children(vec![MindMapNode::leaf("l", "L")]);
        assert_eq!(ok.validate(), Ok(()));

        let dup = MindMapNode::central("c", "C")
            .with_children(vec![MindMapNode::leaf("x", "1"), MindMapNode::leaf("x", "2")]);
        assert_eq!(dup.validate(), Err(MindMapError::Cyclic("x".into())));

        let leafy = MindMapNode::central("c", "C")
            .with_children(vec![MindMapNode::leaf("l", "L").with_children(vec![MindMapNode::leaf("m", "M")])]);
        assert_eq!(leafy.validate(), Err(MindMapError::LeafWithChildren("l".into())));

        let two = MindMapNode::central("c", "C").with_children(vec![MindMapNode::central("d", "D")]);
        assert_eq!(two.validate(), Err(MindMapError::ExtraCentral("d".into())));

        assert!(MindMapNode::branch("b", "B").validate().is_err());
    }

    #[test]
    fn leaves_default_red() {
        assert_eq!(MindMapNode::leaf("l", "L").color, Color::RED);
    }

    #[test]
    fn walk_is_preorder() {
        let t = MindMapNode::central("r", "R").with_children(vec![
            MindMapNode::branch("a", "A").with_children(vec![MindMapNode::leaf("a1", ""), MindMapNode::leaf("a2", "")]),
            MindMapNode::leaf("b", ""),
        ]);
        let ids: Vec<&str> = t.walk().iter().map(|(n, _)| n.id.as_str()).collect();
        assert_eq!(ids, ["r", "a", "a1", "a2", "b"]);
        assert_eq!(t.leaf_count(), 3);
    }
}
