use std::collections::BTreeMap;
use std::f64::consts::TAU;

use super::{MindMapError, MindMapNode};
use crate::document::Size;
use crate::geometry::{Point, Rect};

/// Where one node sits and the angular sector it owns (radians, `start < end`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub position: Point,
    pub depth: usize,
    pub sector: (f64, f64),
}

impl Placement {
    pub fn bisector(&self) -> f64 {
        (self.sector.0 + self.sector.1) / 2.0
    }

    pub fn sector_width(&self) -> f64 {
        self.sector.1 - self.sector.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialLayout {
    pub ring_spacing: f64,
    /// Box drawn around every node, centered on its position.
    pub node_size: Size,
    placements: BTreeMap<String, Placement>,
}

impl RadialLayout {
    pub fn get(&self, id: &str) -> Option<&Placement> {
        self.placements.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Placement)> {
        self.placements.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    pub fn with_node_size(mut self, size: Size) -> Self {
        self.node_size = size;
        self
    }

    pub fn node_bounds(&self, id: &str) -> Result<Rect, MindMapError> {
        let p = self.get(id).ok_or_else(|| MindMapError::NotLaidOut(id.to_owned()))?;
        Ok(Rect::from_center(p.position, self.node_size.width, self.node_size.height))
    }

    /// Union of the node boxes of `node` and all its descendants.
    pub fn subtree_bounds(&self, node: &MindMapNode) -> Result<Rect, MindMapError> {
        let mut acc: Option<Rect> = None;
        for (n, _) in node.walk() {
            let b = self.node_bounds(&n.id)?;
            acc = Some(acc.map_or(b, |a| a.union(b)));
        }
        Ok(acc.expect("walk yields at least the node itself"))
    }
}

/// Radial tree layout. The root sits at the origin with the full circle;
/// depth-`d` nodes sit on the circle of radius `d · ring_spacing`. Each child
/// receives a slice of its parent's sector proportional to its leaf count
/// and is placed on that slice's bisector.
pub fn radial_layout(root: &MindMapNode, ring_spacing: f64) -> Result<RadialLayout, MindMapError> {
    if !(ring_spacing > 0.0 && ring_spacing.is_finite()) {
        return Err(MindMapError::BadSpacing(ring_spacing));
    }
    root.validate()?;

    let mut placements = BTreeMap::new();
    // explicit stack: (node, depth, sector)
    let mut stack = vec![(root, 0usize, (0.0, TAU))];
    while let Some((node, depth, (start, end))) = stack.pop() {
        let mid = (start + end) / 2.0;
        let position = node
            .position
            .unwrap_or_else(|| Point::from_polar(depth as f64 * ring_spacing, mid));
        placements.insert(
            node.id.clone(),
            Placement {
                position,
                depth,
                sector: (start, end),
            },
        );

        let total = node.leaf_count() as f64;
        let mut cursor = start;
        let last = node.children.len().saturating_sub(1);
        for (i, child) in node.children.iter().enumerate() {
            let next = if i == last {
                end
            } else {
                cursor + (end - start) * child.leaf_count() as f64 / total
            };
            stack.push((child, depth + 1, (cursor, next)));
            cursor = next;
        }
    }

    Ok(RadialLayout {
        ring_spacing,
        node_size: Size {
            width: 0.8 * ring_spacing,
            height: 0.3 * ring_spacing,
        },
        placements,
    })
}
