pub mod config;
pub mod corpus;
pub mod geometry;
pub mod index;
pub mod partial;
pub mod persistent;
pub mod render;
pub mod structure;
pub mod visibility;
