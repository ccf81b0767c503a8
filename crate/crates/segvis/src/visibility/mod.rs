//! Visibility regions: point visibility, weak visibility from a segment, and
//! the brute-force oracle used to check them.

pub mod boundary;
pub mod oracle;
pub mod vp;
pub mod wvp;

pub use boundary::{complement_of_arcs, edge_pos, vertex_pos, Element, VisibleBoundary};
pub use oracle::{region_meets_segment, weak_visibility_oracle};
pub use vp::{visibility_polygon, VisibilityPolygon};
pub use wvp::{shadow_arc, shadows, turn_is_bad, wvp_linear, Side, WeakVisibilityPolygon};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("segment does not lie inside the polygon")]
pub struct SegmentNotInside;
