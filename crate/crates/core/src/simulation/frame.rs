use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Mat3, Tolerance, Vec3};
use crate::scalar::Real;

/// A robot's right-handed local coordinate system. The columns of
/// `rotation` are the local axes in global coordinates and `scale` is the
/// global length of one local unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame<T> {
    pub rotation: Mat3<T>,
    pub scale: T,
    /// Always the robot's current position.
    pub origin: Vec3<T>,
}

impl<T: Real> Frame<T> {
    pub fn new(rotation: Mat3<T>, scale: T, origin: Vec3<T>, tol: &Tolerance<T>) -> Result<Self> {
        if !(scale > T::zero() && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("frame scale must be positive, got {scale}")));
        }
        let orthonormal = (rotation.transpose() * rotation).frobenius_dist(&Mat3::identity()) <= tol.angle();
        if !orthonormal || (rotation.det() - T::one()).abs() > tol.angle() {
            return Err(Error::InvalidArgument("frame rotation must be orthonormal with det +1".into()));
        }
        Ok(Self { rotation, scale, origin })
    }

    pub fn identity(origin: Vec3<T>) -> Self {
        Self { rotation: Mat3::identity(), scale: T::one(), origin }
    }

    /// Global point in local coordinates.
    #[inline]
    pub fn to_local(&self, p: Vec3<T>) -> Vec3<T> {
        self.rotation.transpose() * (p - self.origin) / self.scale
    }

    /// Local point in global coordinates.
    #[inline]
    pub fn to_global(&self, d: Vec3<T>) -> Vec3<T> {
        self.origin + self.rotation * (d * self.scale)
    }

    pub fn moved_to(&self, origin: Vec3<T>) -> Self {
        Self { origin, ..*self }
    }

    /// A frame drawn from `rng`: uniform rotation, scale log-uniform in
    /// `[0.1, 10]`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, origin: Vec3<T>) -> Self {
        let rotation = random_rotation(rng);
        let scale = T::lit(10f64.powf(rng.gen_range(-1.0..=1.0)));
        Self { rotation, scale, origin }
    }
}

/// Uniformly distributed rotation (Shoemake's quaternion method).
pub fn random_rotation<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Mat3<T> {
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let tau = std::f64::consts::TAU;
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let q = [a * (tau * u2).sin(), a * (tau * u2).cos(), b * (tau * u3).sin(), b * (tau * u3).cos()];
    Mat3::from_quaternion(T::lit(q[3]), T::lit(q[0]), T::lit(q[1]), T::lit(q[2])).expect("unit quaternion")
}

/// One random frame per robot, reproducible from `seed`.
pub fn random_frames<T: Real>(points: &[Vec3<T>], seed: u64) -> Vec<Frame<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    points.iter().map(|&p| Frame::random(&mut rng, p)).collect()
}

/// `points` as seen from `frame`.
pub fn observe<T: Real>(points: &[Vec3<T>], frame: &Frame<T>) -> Vec<Vec3<T>> {
    points.iter().map(|&p| frame.to_local(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_observation() {
        let o = Vec3::new(1.0, -2.0, 0.5);
        let f = Frame { rotation: Mat3::identity(), scale: 2.0, origin: o };
        let v = f.to_local(o + Vec3::new(2.0, 0.0, 0.0));
        assert_eq!(v, Vec3::new(1.0, 0.0, 0.0));
        assert_eq!(f.to_local(o), Vec3::zero());
    }

    #[test]
    fn identity_frame_translates() {
        let p = [Vec3::new(1.0, 2.0, 3.0), Vec3::new(-1.0, 0.0, 4.0)];
        let obs = observe(&p, &Frame::identity(p[1]));
        assert_eq!(obs, vec![Vec3::new(2.0, 2.0, -1.0), Vec3::zero()]);
    }

    #[test]
    fn random_frames_are_valid_and_invertible() {
        let p: Vec<Vec3<f64>> = (0..50).map(|i| Vec3::new(i as f64, (i * i) as f64 * 0.1, -0.3 * i as f64)).collect();
        for f in random_frames(&p, 7) {
            let checked = Frame::new(f.rotation, f.scale, f.origin, &Tolerance::default()).unwrap();
            assert!((0.1..=10.0).contains(&checked.scale));
            for &q in &p {
                assert!(f.to_global(f.to_local(q)).dist(q) < 1e-12 * (1.0 + q.norm()));
            }
        }
    }

    #[test]
    fn left_handed_frame_is_rejected() {
        let m = Mat3::new([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(Frame::new(m, 1.0, Vec3::zero(), &Tolerance::default()).is_err());
    }

    #[test]
    fn seeds_reproduce() {
        let p = [Vec3::new(0.0, 0.0, 1.0); 3];
        assert_eq!(random_frames(&p, 11), random_frames(&p, 11));
        assert_ne!(random_frames(&p, 11), random_frames(&p, 12));
    }
}
