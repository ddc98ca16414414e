#![allow(clippy::needless_range_loop)]
//! Perfect-matching cuts in cubic graphs: orientation search, gadget
//! constructions, planar duality checks and graph generation.

pub mod error;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod matchings;
pub mod planar;
pub mod search;

pub use error::{Error, Result};
pub use graph::{Dir, MultiGraph, OrientedGraph, PartialOrientation};
