//! Scalar abstraction for the real payloads of quantale values.
//!
//! Everything numeric in this crate (Lawvere distances, fuzzy truth values,
//! step-function plateaus, tolerances) is generic over a [`Real`] scalar.
//! `f64` is the default used by the concrete aliases at the crate root;
//! `f32` works too at a correspondingly looser tolerance.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// A floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Converts an `f64` constant into the scalar type.
pub(crate) fn r64<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("f64 constant must be representable in the scalar type")
}
