//! Partial visibility decomposition of one side of a diagonal, with
//! persistent shortest-path-tree profiles per cell.

pub mod arrangement;
pub mod constraints;
pub mod decomposition;
pub mod profile;
pub mod relevance;
pub mod view;

pub use arrangement::{ArrEdge, Arrangement, TourStep};
pub use constraints::{critical_constraints, CriticalConstraint};
pub use decomposition::{
    OutsideRegion, PartialDecomposition, SegmentOutsideRegion, SptL, TreeNode,
};
pub use profile::{CellProfile, Crit, Ctx, NodeGeometry, ProfileStore, ScratchTree, LEFT, RIGHT};
pub use relevance::{Relevance, Sides};
pub use view::{position_on_edge, SecondaryEdgeTable, Views, Wedge};
