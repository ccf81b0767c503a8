pub mod fixtures;
pub mod generator;

pub use fixtures::{all as all_fixtures, comb, fixture, NAMES as FIXTURE_NAMES};
pub use generator::{
    generate, random_interior_point, random_interior_segment, GenerationFailure, Method,
    PolygonGenerator,
};
