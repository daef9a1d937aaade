//! Quivers of Le-diagrams.
//!
//! Three independent routes produce the quiver of a Le-diagram:
//!
//! * [`plabic`]: Le-diagram → Γ-graph → plabic graph → faces → dual quiver;
//! * [`construct::quiver_from_le`]: delete boxes from the rectangular grid
//!   quiver, then merge the vertex sets attached to each 0-box;
//! * [`construct::grid_to_le_script`]: a replayable script of mutations and
//!   deletions taking the grid quiver to the same mutable part.
//!
//! [`gseed`] tracks g-vectors and green/red vertices through mutation and
//! checks green-to-red and maximal green sequences; [`search`] looks for
//! them by iterative deepening.
//!
//! All matrix arithmetic is exact and generic over [`Scalar`]; the aliases
//! below fix the common choices.

pub mod construct;
pub mod crosscheck;
pub mod gseed;
pub mod le;
pub mod plabic;
pub mod quiver;
pub mod scalar;
pub mod search;
pub mod vertex;

pub use le::{enumerate, random_diagram, Cell, LeDiagram, LeError, MergeSet, Shape, ZeroCase};
pub use quiver::QuiverError;
pub use scalar::{Overflow, Scalar};
pub use vertex::VertexId;

pub use num_bigint::BigInt;

/// Arbitrary-precision quiver, the default for user-facing work.
pub type Quiver = quiver::Quiver<BigInt>;
/// Machine-word quiver for hot loops; overflow surfaces as an error.
pub type SmallQuiver = quiver::Quiver<i64>;
pub type GSeed = gseed::GSeed<BigInt>;
pub type SmallGSeed = gseed::GSeed<i64>;
