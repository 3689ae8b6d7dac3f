use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use crate::scalar::Real;

/// A 3-vector, used both for positions and for directions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

/// A robot position in some coordinate system.
pub type Point3<T> = Vec3<T>;

impl<T: Real> Vec3<T> {
    #[inline]
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    /// Convenience constructor from `f64` components.
    pub fn from_f64(x: f64, y: f64, z: f64) -> Self {
        Self::new(T::lit(x), T::lit(y), T::lit(z))
    }

    pub fn to_f64(self) -> [f64; 3] {
        [self.x.as_f64(), self.y.as_f64(), self.z.as_f64()]
    }

    #[inline]
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm_sq(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        // hypot-style scaling keeps tiny and huge coordinates finite
        let m = self.x.abs().max(self.y.abs()).max(self.z.abs());
        if m == T::zero() || !m.is_finite() {
            return m;
        }
        (self / m).norm_sq().sqrt() * m
    }

    #[inline]
    pub fn dist(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Component of `self` orthogonal to the unit vector `axis`.
    pub fn reject(self, axis: Self) -> Self {
        self - axis * self.dot(axis)
    }

    /// Angle in `[0, pi]` between two nonzero vectors.
    pub fn angle_to(self, o: Self) -> T {
        // atan2 of |a x b| and a.b is accurate near 0 and pi
        let c = self.cross(o).norm();
        c.atan2(self.dot(o))
    }

    pub fn lerp(self, o: Self, t: T) -> Self {
        self + (o - self) * t
    }

    /// Exact lexicographic comparison on (x, y, z) with NaN sorted last.
    pub fn lex_cmp(&self, o: &Self) -> Ordering {
        cmp_total(self.x, o.x)
            .then_with(|| cmp_total(self.y, o.y))
            .then_with(|| cmp_total(self.z, o.z))
    }

    /// Lexicographic comparison treating coordinates within `eps` as equal.
    pub fn lex_cmp_tol(&self, o: &Self, eps: T) -> Ordering {
        cmp_tol(self.x, o.x, eps)
            .then_with(|| cmp_tol(self.y, o.y, eps))
            .then_with(|| cmp_tol(self.z, o.z, eps))
    }

    pub fn map(self, f: impl Fn(T) -> T) -> Self {
        Self::new(f(self.x), f(self.y), f(self.z))
    }

    /// Lossy cast between scalar types.
    pub fn cast<U: Real>(self) -> Vec3<U> {
        Vec3::new(U::lit(self.x.as_f64()), U::lit(self.y.as_f64()), U::lit(self.z.as_f64()))
    }

    /// Some unit vector orthogonal to the unit vector `self`.
    pub fn any_orthogonal(self) -> Self {
        let a = self.map(|c| c.abs());
        let helper = if a.x <= a.y && a.x <= a.z {
            Self::unit_x()
        } else if a.y <= a.z {
            Self::unit_y()
        } else {
            Self::unit_z()
        };
        self.cross(helper).normalized().expect("nonzero unit vector")
    }
}

pub(crate) fn cmp_total<T: Real>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).unwrap_or_else(|| a.is_nan().cmp(&b.is_nan()))
}

/// Three-way comparison where values closer than `eps` compare equal.
pub fn cmp_tol<T: Real>(a: T, b: T, eps: T) -> Ordering {
    if (a - b).abs() <= eps {
        Ordering::Equal
    } else {
        cmp_total(a, b)
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> SubAssign for Vec3<T> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl<T: Real> std::iter::Sum for Vec3<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<T: Real> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Mean of a nonempty slice of points.
pub fn centroid<T: Real>(points: &[Vec3<T>]) -> Vec3<T> {
    let n = T::from_usize(points.len().max(1)).unwrap();
    points.iter().copied().sum::<Vec3<T>>() / n
}

/// Sort `items` lexicographically by `dims` scalar keys where keys closer
/// than `eps` count as ties.
///
/// A plain `sort_by` with a tolerant comparator is not a total order. Here
/// each key is sorted exactly, consecutive runs within `eps` are grouped and
/// the next key decides inside each group, so the result is deterministic
/// and stable under perturbations far below `eps`.
pub fn sort_lex_tol<X, T: Real>(items: &mut [X], dims: usize, key: impl Fn(&X, usize) -> T + Copy, eps: T) {
    sort_lex_tol_by(items, dims, key, |_| eps);
}

/// [`sort_lex_tol`] with a separate tie threshold per key.
pub fn sort_lex_tol_by<X, T: Real>(
    items: &mut [X],
    dims: usize,
    key: impl Fn(&X, usize) -> T + Copy,
    eps: impl Fn(usize) -> T + Copy,
) {
    fn rec<X, T: Real>(
        items: &mut [X],
        d: usize,
        dims: usize,
        key: impl Fn(&X, usize) -> T + Copy,
        eps: impl Fn(usize) -> T + Copy,
    ) {
        if d == dims || items.len() < 2 {
            return;
        }
        items.sort_by(|a, b| cmp_total(key(a, d), key(b, d)));
        let e = eps(d);
        let mut start = 0;
        for i in 1..=items.len() {
            if i == items.len() || key(&items[i], d) - key(&items[i - 1], d) > e {
                rec(&mut items[start..i], d + 1, dims, key, eps);
                start = i;
            }
        }
    }
    rec(items, 0, dims, key, eps);
}
