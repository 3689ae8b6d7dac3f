use std::fmt;

use super::matrix::Mat3;
use super::tolerance::Tolerance;
use super::vector::Vec3;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest rotation order considered when snapping angles.
pub const MAX_ORDER: u32 = 60;

/// A proper rotation about an axis through a fixed center.
///
/// The matrix is the linear part; the center is supplied when the rotation
/// is applied to points. The angle is `2 pi turns / order` about `axis`
/// (right-hand rule), with `turns` coprime to `order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationOp<T> {
    matrix: Mat3<T>,
    axis: Vec3<T>,
    order: u32,
    turns: u32,
}

impl<T: Real> RotationOp<T> {
    pub fn identity() -> Self {
        Self { matrix: Mat3::identity(), axis: Vec3::unit_z(), order: 1, turns: 0 }
    }

    /// Rotation by `2 pi turns / order` about `axis`, built from exact angles.
    pub fn about_axis(axis: Vec3<T>, order: u32, turns: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("rotation order must be positive".into()));
        }
        let g = gcd(turns % order, order);
        let (order, turns) = (order / g, (turns % order) / g);
        if order == 1 {
            return Ok(Self::identity());
        }
        let axis = axis
            .normalized()
            .ok_or_else(|| Error::InvalidArgument("rotation axis is zero".into()))?;
        let (axis, turns) = canonical_axis_turns(axis, order, turns);
        let angle = T::TAU() * T::from_u32(turns).unwrap() / T::from_u32(order).unwrap();
        Ok(Self { matrix: Mat3::rotation(axis, angle), axis, order, turns })
    }

    /// Snap an approximately orthonormal matrix to the nearest rotation of
    /// finite order `<= MAX_ORDER`. Returns `None` when the matrix is not a
    /// proper rotation within tolerance or its angle is not a rational turn.
    pub fn from_matrix(m: &Mat3<T>, tol: &Tolerance<T>) -> Option<Self> {
        if !m.is_finite() {
            return None;
        }
        let eps = tol.angle();
        if (m.transpose() * *m).frobenius_dist(&Mat3::identity()) > eps {
            return None;
        }
        if (m.det() - T::one()).abs() > eps {
            return None;
        }
        let r = &m.rows;
        let half = T::lit(0.5);
        // sin(theta) * axis from the skew part, cos(theta) from the trace
        let skew = Vec3::new(r[2][1] - r[1][2], r[0][2] - r[2][0], r[1][0] - r[0][1]) * half;
        let cos = (m.trace() - T::one()) * half;
        let sin = skew.norm();
        let theta = sin.atan2(cos);
        let (order, j) = snap_angle(theta, eps)?;
        if order == 1 {
            return Some(Self::identity());
        }
        let axis = if j * 2 == order {
            // half turn: axis from the symmetric part, M + I = 2 a a^T
            let mut best = 0;
            for i in 1..3 {
                if r[i][i] > r[best][best] {
                    best = i;
                }
            }
            let col = Vec3::new(r[0][best], r[1][best], r[2][best]);
            let col = col + Vec3::new(
                if best == 0 { T::one() } else { T::zero() },
                if best == 1 { T::one() } else { T::zero() },
                if best == 2 { T::one() } else { T::zero() },
            );
            col.normalized()?
        } else {
            skew.normalized()?
        };
        let out = Self::about_axis(axis, order, j).ok()?;
        if out.matrix.frobenius_dist(m) > eps * T::lit(10.0) {
            return None;
        }
        Some(out)
    }

    pub fn matrix(&self) -> &Mat3<T> {
        &self.matrix
    }

    /// Canonical unit direction of the axis (meaningless for the identity).
    pub fn axis(&self) -> Vec3<T> {
        self.axis
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn turns(&self) -> u32 {
        self.turns
    }

    pub fn is_identity(&self) -> bool {
        self.order == 1
    }

    /// Signed rotation angle in `(-pi, pi]` about the canonical axis.
    pub fn angle(&self) -> T {
        let (k, j) = (self.order, self.turns);
        let j = if 2 * j > k { j as i64 - k as i64 } else { j as i64 };
        T::TAU() * T::from_i64(j).unwrap() / T::from_u32(k).unwrap()
    }

    /// Apply the rotation to `p` about `center`.
    #[inline]
    pub fn apply(&self, p: Vec3<T>, center: Vec3<T>) -> Vec3<T> {
        center + self.matrix * (p - center)
    }

    pub fn inverse(&self) -> Self {
        if self.is_identity() {
            return *self;
        }
        Self { matrix: self.matrix.transpose(), axis: self.axis, order: self.order, turns: self.order - self.turns }
    }

    /// `self` after `other`, re-snapped.
    pub fn compose(&self, other: &Self, tol: &Tolerance<T>) -> Option<Self> {
        Self::from_matrix(&(self.matrix * other.matrix), tol)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        self.matrix.frobenius_dist(&other.matrix) <= tol.angle()
    }
}

impl<T: Real> fmt::Display for RotationOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            write!(f, "identity")
        } else {
            write!(f, "C{}^{} about {}", self.order, self.turns, self.axis)
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Smallest `k` with `theta ~ 2 pi j / k`; returns `(k, j)` with `0 <= j <= k/2`.
fn snap_angle<T: Real>(theta: T, eps: T) -> Option<(u32, u32)> {
    let tau = T::TAU();
    for k in 1..=MAX_ORDER {
        let kt = T::from_u32(k).unwrap();
        let j = (theta * kt / tau).round();
        if (theta - tau * j / kt).abs() <= eps {
            return Some((k, j.to_u32()?));
        }
    }
    None
}

/// Flip the axis to its canonical orientation, adjusting the turn count.
fn canonical_axis_turns<T: Real>(axis: Vec3<T>, order: u32, turns: u32) -> (Vec3<T>, u32) {
    let canon = canonical_direction(axis);
    if canon == axis {
        (axis, turns)
    } else {
        (canon, (order - turns) % order)
    }
}

/// Representative of the line spanned by `dir`: the sign is chosen so the
/// leading coordinate that is clearly nonzero is positive.
pub fn canonical_direction<T: Real>(dir: Vec3<T>) -> Vec3<T> {
    let eps = T::lit(1e-7);
    for c in [dir.x, dir.y, dir.z] {
        if c.abs() > eps {
            return if c < T::zero() { -dir } else { dir };
        }
    }
    dir
}

/// The unique proper linear map sending `a -> a2`, `b -> b2` and
/// `a x b -> a2 x b2`, if it is a finite-order rotation within tolerance.
pub fn rotation_from_vector_pairs<T: Real>(
    a: Vec3<T>,
    b: Vec3<T>,
    a2: Vec3<T>,
    b2: Vec3<T>,
    tol: &Tolerance<T>,
) -> Result<Option<RotationOp<T>>> {
    let c = a.cross(b);
    if c.norm() <= tol.angle() * a.norm() * b.norm() || c.norm() == T::zero() {
        return Err(Error::CollinearBasis);
    }
    let c2 = a2.cross(b2);
    let src = Mat3::from_cols(a, b, c);
    let dst = Mat3::from_cols(a2, b2, c2);
    let Some(inv) = src.inverse() else {
        return Err(Error::CollinearBasis);
    };
    Ok(RotationOp::from_matrix(&(dst * inv), tol))
}
