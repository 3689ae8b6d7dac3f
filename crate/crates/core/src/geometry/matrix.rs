use std::ops::Mul;

use super::vector::Vec3;
use crate::scalar::Real;

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T: Real> Mat3<T> {
    pub fn new(rows: [[T; 3]; 3]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self::new([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn from_cols(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>) -> Self {
        Self::new([[a.x, b.x, c.x], [a.y, b.y, c.y], [a.z, b.z, c.z]])
    }

    pub fn col(&self, j: usize) -> Vec3<T> {
        Vec3::new(self.rows[0][j], self.rows[1][j], self.rows[2][j])
    }

    pub fn row(&self, i: usize) -> Vec3<T> {
        Vec3::new(self.rows[i][0], self.rows[i][1], self.rows[i][2])
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Self::new([
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ])
    }

    pub fn det(&self) -> T {
        self.row(0).dot(self.row(1).cross(self.row(2)))
    }

    pub fn trace(&self) -> T {
        self.rows[0][0] + self.rows[1][1] + self.rows[2][2]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() || !d.is_finite() {
            return None;
        }
        let (r0, r1, r2) = (self.row(0), self.row(1), self.row(2));
        // columns of the inverse are the cross products of rows over det
        Some(Self::from_cols(r1.cross(r2) / d, r2.cross(r0) / d, r0.cross(r1) / d))
    }

    /// Frobenius norm of `self - other`.
    pub fn frobenius_dist(&self, other: &Self) -> T {
        let mut s = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                let d = self.rows[i][j] - other.rows[i][j];
                s = s + d * d;
            }
        }
        s.sqrt()
    }

    /// Rotation by `angle` about the unit vector `axis` (right-hand rule).
    pub fn rotation(axis: Vec3<T>, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let t = T::one() - c;
        let Vec3 { x, y, z } = axis;
        Self::new([
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ])
    }

    /// Rotation from a (not necessarily normalized) quaternion `w + xi + yj + zk`.
    pub fn from_quaternion(w: T, x: T, y: T, z: T) -> Option<Self> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if n == T::zero() || !n.is_finite() {
            return None;
        }
        let (w, x, y, z) = (w / n, x / n, y / n, z / n);
        let two = T::lit(2.0);
        let o = T::one();
        Some(Self::new([
            [o - two * (y * y + z * z), two * (x * y - w * z), two * (x * z + w * y)],
            [two * (x * y + w * z), o - two * (x * x + z * z), two * (y * z - w * x)],
            [two * (x * z - w * y), two * (y * z + w * x), o - two * (x * x + y * y)],
        ]))
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|v| v.is_finite())
    }

    pub fn cast<U: Real>(&self) -> Mat3<U> {
        let r = &self.rows;
        let c = |v: T| U::lit(v.as_f64());
        Mat3::new([
            [c(r[0][0]), c(r[0][1]), c(r[0][2])],
            [c(r[1][0]), c(r[1][1]), c(r[1][2])],
            [c(r[2][0]), c(r[2][1]), c(r[2][2])],
        ])
    }
}

impl<T: Real> Mul<Vec3<T>> for Mat3<T> {
    type Output = Vec3<T>;
    #[inline]
    fn mul(self, v: Vec3<T>) -> Vec3<T> {
        Vec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }
}

impl<T: Real> Mul for Mat3<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut rows = [[T::zero(); 3]; 3];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.row(i).dot(o.col(j));
            }
        }
        Self::new(rows)
    }
}

/// Eigen-decomposition of a symmetric 3x3 matrix by cyclic Jacobi sweeps.
///
/// Returns eigenvalues in ascending order with matching unit eigenvectors.
pub fn symmetric_eigen<T: Real>(m: &Mat3<T>) -> ([T; 3], [Vec3<T>; 3]) {
    let mut a = m.rows;
    let mut v = Mat3::<T>::identity().rows;
    let two = T::lit(2.0);
    for _sweep in 0..64 {
        let off = a[0][1].abs() + a[0][2].abs() + a[1][2].abs();
        let scale = a[0][0].abs() + a[1][1].abs() + a[2][2].abs() + off;
        if off <= T::epsilon() * scale * T::lit(1e-3) || off == T::zero() {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            if a[p][q] == T::zero() {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
            let c = T::one() / (t * t + T::one()).sqrt();
            let s = t * c;
            for k in 0..3 {
                let akp = a[k][p];
                let akq = a[k][q];
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let apk = a[p][k];
                let aqk = a[q][k];
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let vm = Mat3::new(v);
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&i, &j| super::vector::cmp_total(a[i][i], a[j][j]));
    (
        [a[idx[0]][idx[0]], a[idx[1]][idx[1]], a[idx[2]][idx[2]]],
        [vm.col(idx[0]), vm.col(idx[1]), vm.col(idx[2])],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_turn_about_z() {
        let r = Mat3::<f64>::rotation(Vec3::unit_z(), std::f64::consts::FRAC_PI_2);
        let v = r * Vec3::unit_x();
        assert!((v - Vec3::unit_y()).norm() < 1e-15);
        assert!((r.det() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_of_rotation_is_transpose() {
        let r = Mat3::<f64>::from_quaternion(0.3, -0.2, 0.9, 0.1).unwrap();
        let inv = r.inverse().unwrap();
        assert!(inv.frobenius_dist(&r.transpose()) < 1e-14);
    }

    #[test]
    fn jacobi_recovers_diagonal_spectrum() {
        let r = Mat3::<f64>::from_quaternion(0.5, 0.1, -0.4, 0.7).unwrap();
        let d = Mat3::new([[3.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.5]]);
        let m = r * d * r.transpose();
        let (vals, vecs) = symmetric_eigen(&m);
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 0.5).abs() < 1e-12);
        assert!((vals[2] - 3.0).abs() < 1e-12);
        for (val, vec) in vals.iter().zip(vecs) {
            assert!((m * vec - vec * *val).norm() < 1e-12);
        }
    }
}
