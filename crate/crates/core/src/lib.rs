//! Partial set partitions: restriction, quotient, insertion, the coproduct
//! built from admissible quotients, insertion composition with its Lie
//! bracket, and the half-edge graph encodings (Feynman diagrams, ordinary
//! graphs, admissible graphs) that reduce to them.
//!
//! Linear combinations are generic over an exact coefficient ring through
//! [`Coefficient`]; [`Rational`] and the aliases below fix it to arbitrary
//! precision rationals.

pub mod atom;
pub mod block;
pub mod coalgebra;
pub mod enumerate;
pub mod error;
pub mod graphs;
pub mod laws;
pub mod lie;
pub mod linear;
pub mod partition;
pub mod union_find;

pub use atom::{Atom, Interner};
pub use block::Block;
pub use coalgebra::Tensor;
pub use error::{Error, Result};
pub use graphs::{AdmissibleGraph, Graph, GraphKind, GraphLinComb, StructureMap};
pub use linear::{Coefficient, LinComb};
pub use partition::{InsertionMap, OrderedPartition, Partition, PartitionTuple, QuotientResult};

/// Arbitrary precision rational numbers.
pub type Rational = num_rational::BigRational;

/// Rational combination of partitions.
pub type PartitionComb = LinComb<Partition, Rational>;
/// Rational combination of ordered partitions (signed composition).
pub type OrderedComb = LinComb<OrderedPartition, Rational>;
/// Rational combination of tensors of partition tuples.
pub type TensorComb = LinComb<Tensor, Rational>;
/// Rational combination of graphs over one structure map.
pub type GraphComb = GraphLinComb<Rational>;
