//! Gallai colorings and monochromatic books: exact detectors, Gallai
//! partitions, explicit lower-bound constructions, closed-form bounds,
//! witness searches and executable checks of the finite case facts.

pub mod bitset;
pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod gallai;
pub mod io;
pub mod lemmas;
pub mod report;
pub mod residue;
pub mod search;
pub mod union_find;

pub use coloring::{Color, ColoringError, EdgeColoring, Witness};
pub use gallai::GallaiPartition;
