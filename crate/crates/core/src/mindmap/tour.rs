use serde::{Deserialize, Serialize};

use super::{MindMapError, MindMapNode, RadialLayout};
use crate::geometry::{Rect, Screen};
use crate::viewport::{frame_bounds, Keyframe};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "id", rename_all = "lowercase")]
pub enum TourTarget {
    Overview,
    Node(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourStop {
    pub target: TourTarget,
    pub keyframe: Keyframe,
}

/// Keyframe tour over a laid-out mind map: an overview of the whole
/// diagram, then a depth-first walk framing each branch's subtree and each
/// leaf's own box, then the overview again. The central node is represented
/// by the overviews. A map with no children collapses to one overview.
pub fn generate_tour(
    root: &MindMapNode,
    layout: &RadialLayout,
    screen: Screen,
    margin: f64,
) -> Result<Vec<TourStop>, MindMapError> {
    let overview = TourStop {
        target: TourTarget::Overview,
        keyframe: Keyframe::new(frame_bounds(&layout.subtree_bounds(root)?, screen, margin)?),
    };
    if root.children.is_empty() {
        return Ok(vec![overview]);
    }

    let mut stops = vec![overview.clone()];
    for (node, _) in root.walk().into_iter().skip(1) {
        let bounds = if node.children.is_empty() {
            layout.node_bounds(&node.id)?
        } else {
            layout.subtree_bounds(node)?
        };
        stops.push(TourStop {
            target: TourTarget::Node(node.id.clone()),
            keyframe: Keyframe::new(frame_bounds(&bounds, screen, margin)?),
        });
    }
    stops.push(overview);
    Ok(stops)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrioritizedRegion {
    pub bbox: Rect,
    pub priority: i32,
    #[serde(default)]
    pub label: String,
}

/// Turns a static infographic into a sequence: an overview of every region,
/// then each region in ascending priority (ties keep input order).
pub fn build_keyframe_timeline(
    regions: &[PrioritizedRegion],
    screen: Screen,
    margin: f64,
) -> Result<Vec<Keyframe>, MindMapError> {
    if regions.is_empty() {
        return Err(MindMapError::NoRegions);
    }
    if let Some(r) = regions.iter().find(|r| !r.bbox.has_positive_area()) {
        return Err(MindMapError::DegenerateRegion(r.label.clone()));
    }
    let union = regions
        .iter()
        .map(|r| r.bbox)
        .reduce(Rect::union)
        .expect("non-empty");
    let mut ordered: Vec<&PrioritizedRegion> = regions.iter().collect();
    ordered.sort_by_key(|r| r.priority);

    let mut out = Vec::with_capacity(regions.len() + 1);
    out.push(Keyframe::new(frame_bounds(&union, screen, margin)?));
    for r in ordered {
        out.push(Keyframe::new(frame_bounds(&r.bbox, screen, margin)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::mindmap::radial_layout;

    const SCREEN: Screen = Screen::new(1280.0, 720.0);

    fn targets(stops: &[TourStop]) -> Vec<String> {
        stops
            .iter()
            .map(|s| match &s.target {
                TourTarget::Overview => "overview".to_owned(),
                TourTarget::Node(id) => id.clone(),
            })
            .collect()
    }

    #[test]
    fn single_node_tour() {
        let root = MindMapNode::central("c", "C");
        let l = radial_layout(&root, 100.0).unwrap();
        let t = generate_tour(&root, &l, SCREEN, 0.1).unwrap();
        assert_eq!(targets(&t), ["overview"]);
    }

    #[test]
    fn two_branch_tour_order() {
        let root = MindMapNode::central("c", "C").with_children(vec![
            MindMapNode::branch("B1", "").with_children(vec![MindMapNode::leaf("L1", ""), MindMapNode::leaf("L2", "")]),
            MindMapNode::branch("B2", "").with_children(vec![MindMapNode::leaf("L3", "")]),
        ]);
        let l = radial_layout(&root, 100.0).unwrap();
        let t = generate_tour(&root, &l, SCREEN, 0.1).unwrap();
        assert_eq!(targets(&t), ["overview", "B1", "L1", "L2", "B2", "L3", "overview"]);
        assert_eq!(t.first().unwrap().keyframe, t.last().unwrap().keyframe);
        // leaves are framed closer than their branch
        assert!(t[2].keyframe.viewport.zoom >= t[1].keyframe.viewport.zoom);
    }

    #[test]
    fn timeline_orders_by_priority() {
        let region = |x: f64, p: i32, label: &str| PrioritizedRegion {
            bbox: Rect::from_coords(x, 0.0, x + 10.0, 10.0),
            priority: p,
            label: label.into(),
        };
        let regions = [region(0.0, 2, "a"), region(20.0, 1, "b"), region(40.0, 3, "c")];
        let k = build_keyframe_timeline(&regions, SCREEN, 0.0).unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(k[0].viewport.center, Point::new(25.0, 5.0));
        let centers: Vec<f64> = k[1..].iter().map(|f| f.viewport.center.x).collect();
        assert_eq!(centers, [25.0, 5.0, 45.0]);

        let ties = [region(0.0, 1, "a"), region(20.0, 1, "b")];
        let k = build_keyframe_timeline(&ties, SCREEN, 0.0).unwrap();
        assert_eq!(k[1].viewport.center.x, 5.0);
        assert_eq!(k[2].viewport.center.x, 25.0);

        let one = [region(0.0, 0, "only")];
        let k = build_keyframe_timeline(&one, SCREEN, 0.0).unwrap();
        assert_eq!(k[0].viewport, k[1].viewport);

        assert_eq!(build_keyframe_timeline(&[], SCREEN, 0.0), Err(MindMapError::NoRegions));
    }
}
