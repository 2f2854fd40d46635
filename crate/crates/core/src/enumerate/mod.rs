//! Vertex enumeration and Latin square enumeration.

mod dd;
mod latin;

pub use dd::{enumerate_vertices, VertexSet};
pub use latin::{count_latin_squares, enumerate_latin_squares, MAX_LATIN_ORDER};
