use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative/absolute epsilon pair threaded through every geometric predicate.
///
/// Lengths are compared against `rel * scale` (never below `abs`), where the
/// scale is normally the radius of the smallest enclosing ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    rel: T,
    abs: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(rel: T, abs: T) -> Result<Self> {
        if !(rel > T::zero() && abs > T::zero() && rel.is_finite() && abs.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "tolerance epsilons must be positive and finite (rel={rel}, abs={abs})"
            )));
        }
        Ok(Self { rel, abs })
    }

    pub fn rel(&self) -> T {
        self.rel
    }

    pub fn abs(&self) -> T {
        self.abs
    }

    /// Length threshold for objects of size `scale`.
    #[inline]
    pub fn len(&self, scale: T) -> T {
        (self.rel * scale.abs()).max(self.abs)
    }

    /// Threshold for dimensionless quantities (angles, cosines, matrix entries).
    ///
    /// Angles derived from coordinates lose roughly two digits relative to
    /// lengths, hence the wider band.
    #[inline]
    pub fn angle(&self) -> T {
        self.rel * T::lit(100.0)
    }

    #[inline]
    pub fn unit(&self) -> T {
        self.rel.max(self.abs)
    }

    /// Same tolerance with the relative epsilon multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self { rel: self.rel * factor, abs: self.abs * factor }
    }

    pub fn cast<U: Real>(&self) -> Tolerance<U> {
        Tolerance { rel: U::lit(self.rel.as_f64()), abs: U::lit(self.abs.as_f64()) }
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Self { rel: T::lit(T::DEFAULT_REL_EPS), abs: T::lit(T::DEFAULT_ABS_EPS) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonpositive_epsilons() {
        assert!(Tolerance::new(0.0_f64, 1e-12).is_err());
        assert!(Tolerance::new(1e-9_f64, -1.0).is_err());
        assert!(Tolerance::new(f64::NAN, 1e-12).is_err());
    }

    #[test]
    fn length_threshold_has_absolute_floor() {
        let t = Tolerance::<f64>::default();
        assert_eq!(t.len(1.0), 1e-9);
        assert_eq!(t.len(0.0), 1e-12);
    }
}
