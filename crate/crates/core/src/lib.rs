//! Exact computations on the polytope of `n x n x n` stochastic tensors:
//! construction, vertex enumeration, Carathéodory decomposition, Latin square
//! counting, and every known bound on the number of vertices.

pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod linalg;
pub mod polytope;
pub mod tensor;

pub use enumerate::{enumerate_latin_squares, enumerate_vertices, VertexSet};
pub use error::{BoundsError, FormatError, LinalgError, PolytopeError, TensorError};
pub use linalg::RationalMatrix;
pub use polytope::{build_omega_h, HRepresentation, Inequality, VertexCertificate};
pub use tensor::{random_tensor, validate, LatinSquare, StochasticTensor, Violation};
