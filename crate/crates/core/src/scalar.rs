use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar the geometry kernel is generic over: `f32` or `f64`.
///
/// The default tolerances are part of the scalar because single precision
/// cannot resolve the `1e-9` relative epsilon used for `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    const DEFAULT_REL_EPS: f64;
    const DEFAULT_ABS_EPS: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    const DEFAULT_REL_EPS: f64 = 1e-9;
    const DEFAULT_ABS_EPS: f64 = 1e-12;
}

impl Real for f32 {
    const DEFAULT_REL_EPS: f64 = 2e-4;
    const DEFAULT_ABS_EPS: f64 = 1e-6;
}
