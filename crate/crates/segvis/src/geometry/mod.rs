//! Exact rational geometry: scalars, points, segments, predicates and polygons.

pub mod angle;
pub mod coord;
pub mod io;
pub mod point;
pub mod polygon;

pub use angle::{cmp_around, cmp_dirs};
pub use coord::Coord;
pub use io::{format_polygon, parse_polygon, parse_segment, ParseError};
pub use point::{
    cross, in_box, line_intersection, on_segment, orient, orient_sign, proper_crossing,
    segment_intersection, strictly_on_segment, Intersection, Orientation, Point, Segment,
};
pub use polygon::{
    find_collinear_triple, point_in_polygon, segment_in_polygon, validate_polygon, winding_number,
    Containment, PolygonError, SimplePolygon,
};
