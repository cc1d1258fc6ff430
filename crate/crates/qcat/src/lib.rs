//! Quantale-enriched category theory at desk scale.
//!
//! This crate implements quantales (complete lattice-ordered monoids whose
//! product distributes over joins), categories enriched in a quantale,
//! functors and distributors between them, Cauchy degrees of object
//! sequences, and a Picard-style fixpoint solver for contractions controlled
//! by a function on the quantale. Enriching in the four provided instances
//! recovers ordered sets, generalized metric spaces, fuzzy preorders, and
//! probabilistic metric spaces, and the solver specializes to the Banach and
//! Boyd-Wong fixpoint theorems on the metric instance.
//!
//! Everything numeric is generic over a [`real::Real`] scalar (`f32` or
//! `f64`); the `*64` aliases at the crate root fix the default `f64`.
//! Values are immutable and all operations are pure, so everything here can
//! be shared freely across threads.

pub mod category;
pub mod cauchy;
pub mod control;
pub mod distributor;
pub mod error;
pub mod instances;
pub mod lattice;
pub mod quantale;
pub mod real;
pub mod report;
pub mod solver;
pub mod step;

pub use error::{Error, Result};

/// Default tolerance for comparisons on real payloads.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Default horizon for truncated sup-inf computations on sequences.
pub const DEFAULT_CAUCHY_HORIZON: usize = 64;

/// Default horizon for solver runs; geometric contractions stabilize far
/// earlier.
pub const DEFAULT_SOLVER_HORIZON: usize = 256;

/// Concrete aliases over the default `f64` scalar.
pub type Value64 = quantale::QuantaleValue<f64>;
pub type Quantale64 = quantale::Quantale<f64>;
pub type TNorm64 = quantale::TNorm<f64>;
pub type Step64 = step::StepDistribution<f64>;
pub type Object64 = category::Object<f64>;
pub type Category64 = category::QCategory<f64>;
pub type Functor64 = category::QFunctor<f64>;
pub type Distributor64 = distributor::Distributor<f64>;
pub type Sequence64 = cauchy::ObjectSequence<f64>;
pub type Control64 = control::ControlFunction<f64>;
pub type FixpointResult64 = solver::FixpointResult<f64>;
