//! Triangulation, balanced cutting, point location and shortest path trees.

pub mod cut_tree;
pub mod locator;
pub mod spt;
pub mod triangulation;

pub use cut_tree::{balance_bound, balanced_diagonal, balanced_split, CutNode, CutTree, Split};
pub use locator::{FaceEdge, SlabLocator};
pub use spt::{
    shortest_path_tree, triangles_containing, EdgeClass, OutsidePolygon, Parent, ShortestPathTree,
};
pub use triangulation::{build_adjacency, point_in_triangle, triangulate, Triangulation};
