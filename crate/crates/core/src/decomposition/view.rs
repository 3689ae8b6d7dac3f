use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::{cmp_tol, innermost_empty_ball, sort_lex_tol, Plane, Tolerance, Vec3};
use crate::scalar::Real;

/// Frame-independent encoding of one robot's observation.
///
/// `triples[k]` is `(altitude, longitude, latitude)` of robot `order[k]`;
/// the observer comes first, its meridian robot second, the rest ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalView<T> {
    pub triples: Vec<[T; 3]>,
    pub order: Vec<usize>,
    pub meridian: usize,
}

impl<T: Real> LocalView<T> {
    pub fn observer(&self) -> usize {
        self.order[0]
    }

    /// Lexicographic comparison of the triple sequences within tolerance.
    pub fn cmp_with(&self, other: &Self, eps: &ViewEps<T>) -> Ordering {
        cmp_views(&self.triples, &other.triples, eps)
    }
}

/// Per-component thresholds for comparing view triples.
#[derive(Debug, Clone, Copy)]
pub struct ViewEps<T> {
    pub altitude: T,
    pub angle: T,
}

/// Shared geometry for computing views of every robot of one configuration.
#[derive(Debug, Clone)]
pub(crate) struct ViewContext<'a, T> {
    pub points: &'a [Vec3<T>],
    pub center: Vec3<T>,
    altitudes: Vec<T>,
    len_eps: T,
    pub eps: ViewEps<T>,
}

impl<'a, T: Real> ViewContext<'a, T> {
    pub fn new(points: &'a [Vec3<T>], center: Vec3<T>, outer: T, tol: &Tolerance<T>) -> Result<Self> {
        let len_eps = tol.len(outer);
        if points.len() >= 3 {
            let (_, dev) = Plane::best_fit(points)?;
            if dev <= len_eps {
                return Err(Error::LocalViewOnPlane);
            }
        } else {
            return Err(Error::LocalViewOnPlane);
        }
        let inner = innermost_empty_ball(points, center, tol)?.radius;
        let span = outer - inner;
        let altitude = if span > len_eps { len_eps / span } else { T::zero() };
        let eps = ViewEps { altitude: altitude.max(tol.unit()), angle: tol.angle() };
        let altitudes = points
            .iter()
            .map(|p| {
                if span <= len_eps {
                    T::one()
                } else {
                    (((*p - center).norm() - inner) / span).max(T::zero()).min(T::one())
                }
            })
            .collect();
        Ok(Self { points, center, altitudes, len_eps, eps })
    }

    pub fn altitude(&self, j: usize) -> T {
        self.altitudes[j]
    }

    fn north(&self, i: usize) -> Vec3<T> {
        (self.points[i] - self.center).normalized().expect("center not occupied")
    }

    /// Latitude of `j` and its component orthogonal to the earth axis.
    fn latitude(&self, north: Vec3<T>, j: usize) -> (T, Vec3<T>) {
        let v = self.points[j] - self.center;
        let along = v.dot(north);
        let r = v - north * along;
        (r.norm().atan2(along), r)
    }

    fn off_axis(&self, radial: Vec3<T>) -> bool {
        radial.norm() > self.len_eps
    }

    /// Latitude and off-axis component of every robot as seen from `i`.
    pub fn latitudes(&self, i: usize) -> Vec<(T, Vec3<T>)> {
        let north = self.north(i);
        (0..self.points.len()).map(|j| self.latitude(north, j)).collect()
    }

    /// `(altitude, latitude)` of the best meridian candidates for observer `i`.
    pub fn key_from(&self, i: usize, polar: &[(T, Vec3<T>)]) -> [T; 2] {
        let mut best: Option<[T; 2]> = None;
        for (j, (phi, radial)) in polar.iter().enumerate() {
            if j == i || !self.off_axis(*radial) {
                continue;
            }
            let key = [self.altitude(j), *phi];
            if best.map_or(true, |b| self.cmp_key(&key, &b) == Ordering::Less) {
                best = Some(key);
            }
        }
        best.expect("non-coplanar set has an off-axis robot")
    }

    fn cmp_key(&self, a: &[T; 2], b: &[T; 2]) -> Ordering {
        cmp_tol(a[0], b[0], self.eps.altitude).then(cmp_tol(a[1], b[1], self.eps.angle))
    }

    /// Full local view of robot `i`.
    pub fn view(&self, i: usize) -> LocalView<T> {
        let lat = self.latitudes(i);
        let key = self.key_from(i, &lat);
        self.view_from(i, &lat, key)
    }

    /// [`Self::view`] from precomputed [`Self::latitudes`] and meridian key.
    pub fn view_from(&self, i: usize, lat: &[(T, Vec3<T>)], key: [T; 2]) -> LocalView<T> {
        let north = self.north(i);
        // longitudes against an arbitrary reference; each meridian shifts them
        let e1 = north.any_orthogonal();
        let e2 = north.cross(e1);
        let polar: Vec<(T, Option<T>)> =
            lat.iter().map(|&(phi, r)| (phi, self.off_axis(r).then(|| r.dot(e2).atan2(r.dot(e1))))).collect();
        let mut best: Option<LocalView<T>> = None;
        for m in 0..self.points.len() {
            let Some(base) = polar[m].1 else { continue };
            if m == i || self.cmp_key(&[self.altitude(m), polar[m].0], &key) != Ordering::Equal {
                continue;
            }
            let v = self.view_with_meridian(i, m, base, &polar);
            if best.as_ref().map_or(true, |b| cmp_views(&v.triples, &b.triples, &self.eps) == Ordering::Less) {
                best = Some(v);
            }
        }
        best.expect("meridian candidate exists")
    }

    fn view_with_meridian(&self, i: usize, m: usize, base: T, polar: &[(T, Option<T>)]) -> LocalView<T> {
        let tau = T::TAU();
        let triple = |j: usize| -> [T; 3] {
            let (phi, lon) = polar[j];
            let theta = lon.map_or(T::zero(), |l| {
                let t = l - base;
                let t = if t < T::zero() { t + tau } else { t };
                if tau - t <= self.eps.angle {
                    T::zero()
                } else {
                    t
                }
            });
            [self.altitude(j), theta, if j == i { T::zero() } else { phi }]
        };
        let mut rest: Vec<(usize, [T; 3])> =
            (0..self.points.len()).filter(|&j| j != i && j != m).map(|j| (j, triple(j))).collect();
        // tolerant clustered sort; altitude and angles share the coarser threshold
        sort_lex_tol(&mut rest, 3, |e, d| e.1[d], self.eps.altitude.max(self.eps.angle));
        let mut triples = Vec::with_capacity(self.points.len());
        triples.push([self.altitude(i), T::zero(), T::zero()]);
        triples.push([self.altitude(m), T::zero(), polar[m].0]);
        let mut order = vec![i, m];
        for (j, t) in rest {
            order.push(j);
            triples.push(t);
        }
        LocalView { triples, order, meridian: m }
    }
}

pub(crate) fn cmp_views<T: Real>(a: &[[T; 3]], b: &[[T; 3]], eps: &ViewEps<T>) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let o = cmp_tol(x[0], y[0], eps.altitude)
            .then(cmp_tol(x[1], y[1], eps.angle))
            .then(cmp_tol(x[2], y[2], eps.angle));
        if o != Ordering::Equal {
            return o;
        }
    }
    a.len().cmp(&b.len())
}
