//! Discrete trace and extension operators between interior Dirichlet energy
//! and boundary Besov smoothness on sampled metric measure domains.
//!
//! The crate works on weighted point clouds ([`space::SampledSpace`]) split
//! into an interior and a true boundary carrying separate measures
//! ([`domain::Domain`]). On top of that it builds Whitney ball covers with
//! subordinate partitions of unity, cone-shaped ball chains along uniform
//! curves, three equivalent forms of the boundary smoothness seminorm, and
//! the trace / extension operator pair, together with verification reports
//! for the geometric estimates those operators rest on.
//!
//! All numerics are generic over the scalar type through [`scalar::Scalar`];
//! the `*64` aliases below are the double-precision instantiation used by
//! the CLI and the verification suites.

pub mod besov;
pub mod chain;
pub mod curve;
pub mod domain;
pub mod error;
pub mod family;
pub mod field;
pub mod io;
pub mod partition;
pub mod rng;
pub mod scalar;
pub mod space;
pub mod trace_ext;
pub mod whitney;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Space64 = space::SampledSpace<f64>;
pub type Domain64 = domain::Domain<f64>;
pub type Field64 = field::ScalarField<f64>;
pub type Cover64 = whitney::WhitneyCover<f64>;
pub type Partition64 = partition::PartitionOfUnity<f64>;
pub type Chain64 = chain::ConeChain<f64>;

pub type Space32 = space::SampledSpace<f32>;
pub type Domain32 = domain::Domain<f32>;
pub type Field32 = field::ScalarField<f32>;
