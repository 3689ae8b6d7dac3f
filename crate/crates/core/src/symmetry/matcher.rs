use crate::geometry::{cmp_total, Vec3};
use crate::scalar::Real;

/// Nearest-point lookup by binary search on a sorted x coordinate.
///
/// Point sets here are small and well separated relative to the match
/// radius, so a 1-d sweep is enough.
#[derive(Debug, Clone)]
pub struct PointMatcher<T> {
    sorted: Vec<(T, usize)>,
    points: Vec<Vec3<T>>,
    eps: T,
}

impl<T: Real> PointMatcher<T> {
    pub fn new(points: &[Vec3<T>], eps: T) -> Self {
        let mut sorted: Vec<(T, usize)> = points.iter().enumerate().map(|(i, p)| (p.x, i)).collect();
        sorted.sort_by(|a, b| cmp_total(a.0, b.0).then(a.1.cmp(&b.1)));
        Self { sorted, points: points.to_vec(), eps }
    }

    pub fn eps(&self) -> T {
        self.eps
    }

    /// Index of the closest point within `eps` of `q`, if any.
    pub fn find(&self, q: Vec3<T>) -> Option<usize> {
        let lo = self.sorted.partition_point(|(x, _)| *x < q.x - self.eps);
        let mut best: Option<(T, usize)> = None;
        for &(x, i) in &self.sorted[lo..] {
            if x > q.x + self.eps {
                break;
            }
            let d = self.points[i].dist(q);
            if d <= self.eps && best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, i));
            }
        }
        best.map(|(_, i)| i)
    }

    /// Map every point through `f` and return the induced permutation, or
    /// `None` if some image misses the set or two images coincide.
    pub fn permutation(&self, f: impl Fn(Vec3<T>) -> Vec3<T>) -> Option<Vec<usize>> {
        let n = self.points.len();
        let mut perm = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for (i, p) in self.points.iter().enumerate() {
            let j = self.find(f(*p))?;
            if hit[j] {
                return None;
            }
            hit[j] = true;
            perm[i] = j;
        }
        Some(perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_points_within_radius_only() {
        let pts = [Vec3::new(0.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0), Vec3::new(1.0, 1.0, 0.0)];
        let m = PointMatcher::new(&pts, 1e-6);
        assert_eq!(m.find(Vec3::new(1.0, 1.0 + 1e-9, 0.0)), Some(2));
        assert_eq!(m.find(Vec3::new(0.5, 0.0, 0.0)), None);
    }

    #[test]
    fn swap_is_a_permutation_but_collapse_is_not() {
        let pts = [Vec3::new(-1.0, 0.0, 0.0), Vec3::new(1.0, 0.0, 0.0)];
        let m = PointMatcher::new(&pts, 1e-9);
        assert_eq!(m.permutation(|p| -p), Some(vec![1, 0]));
        assert_eq!(m.permutation(|_| Vec3::new(1.0, 0.0, 0.0)), None);
    }
}
