use super::matrix::{symmetric_eigen, Mat3};
use super::vector::{centroid, Vec3};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Oriented plane `{x : normal . x = offset}` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane<T> {
    normal: Vec3<T>,
    offset: T,
}

impl<T: Real> Plane<T> {
    /// Plane with the given normal direction passing through `point`.
    pub fn through(normal: Vec3<T>, point: Vec3<T>) -> Result<Self> {
        let normal = normal
            .normalized()
            .ok_or_else(|| Error::InvalidArgument("plane normal is zero".into()))?;
        Ok(Self { normal, offset: normal.dot(point) })
    }

    pub fn from_points(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>) -> Result<Self> {
        let n = (b - a).cross(c - a);
        Self::through(n, a).map_err(|_| Error::CollinearBasis)
    }

    pub fn normal(&self) -> Vec3<T> {
        self.normal
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn signed_distance(&self, p: Vec3<T>) -> T {
        self.normal.dot(p) - self.offset
    }

    /// Foot of the perpendicular from `p`.
    pub fn project(&self, p: Vec3<T>) -> Vec3<T> {
        p - self.normal * self.signed_distance(p)
    }

    /// Same plane with the normal reversed.
    pub fn flipped(&self) -> Self {
        Self { normal: -self.normal, offset: -self.offset }
    }

    /// Least-squares plane through `points` and its largest absolute residual.
    pub fn best_fit(points: &[Vec3<T>]) -> Result<(Self, T)> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let c = centroid(points);
        let mut cov = [[T::zero(); 3]; 3];
        for p in points {
            let d = *p - c;
            let d = [d.x, d.y, d.z];
            for i in 0..3 {
                for j in 0..3 {
                    cov[i][j] = cov[i][j] + d[i] * d[j];
                }
            }
        }
        let (_, vecs) = symmetric_eigen(&Mat3::new(cov));
        let plane = Self::through(vecs[0], c)?;
        let dev = points
            .iter()
            .map(|p| plane.signed_distance(*p).abs())
            .fold(T::zero(), T::max);
        Ok((plane, dev))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_lands_on_plane() {
        let pl = Plane::through(Vec3::new(0.0, 0.0, 2.0), Vec3::new(0.0, 0.0, 1.0)).unwrap();
        let f = pl.project(Vec3::new(3.0, -1.0, 7.0));
        assert_eq!(f, Vec3::new(3.0, -1.0, 1.0));
        assert_eq!(pl.signed_distance(Vec3::new(0.0, 0.0, -1.0)), -2.0);
    }

    #[test]
    fn best_fit_of_tilted_square_is_exact() {
        let r = Mat3::<f64>::from_quaternion(0.9, 0.2, 0.3, -0.1).unwrap();
        let pts: Vec<_> = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)]
            .iter()
            .map(|&(x, y)| r * Vec3::new(x, y, 0.0) + Vec3::new(5.0, 0.0, 1.0))
            .collect();
        let (pl, dev) = Plane::best_fit(&pts).unwrap();
        assert!(dev < 1e-12);
        assert!(pl.normal().cross(r.col(2)).norm() < 1e-12);
    }
}
