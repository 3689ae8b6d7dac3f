use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tolerance::Tolerance;
use super::vector::Vec3;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball<T> {
    pub center: Vec3<T>,
    pub radius: T,
}

impl<T: Real> Ball<T> {
    pub fn new(center: Vec3<T>, radius: T) -> Self {
        debug_assert!(radius >= T::zero());
        Self { center, radius }
    }

    /// `p` lies in the closed ball, up to `slack`.
    pub fn contains(&self, p: Vec3<T>, slack: T) -> bool {
        p.dist(self.center) <= self.radius + slack
    }

    /// `p` lies on the bounding sphere, up to `slack`.
    pub fn on_sphere(&self, p: Vec3<T>, slack: T) -> bool {
        (p.dist(self.center) - self.radius).abs() <= slack
    }
}

/// Relative slack of the inclusion test inside the welzl recursion. Tighter
/// than any user tolerance so the result stays within `1e-9` of the optimum.
fn inclusion_slack<T: Real>(radius: T) -> T {
    T::epsilon() * T::lit(4096.0) * radius.max(T::min_positive_value())
}

/// Smallest ball enclosing all `points`.
///
/// Move-to-front welzl recursion over a deterministically shuffled copy of
/// the input, so the result does not depend on the caller's ordering beyond
/// rounding.
pub fn smallest_enclosing_ball<T: Real>(points: &[Vec3<T>]) -> Result<Ball<T>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coordinate".into()));
    }
    let mut pts = points.to_vec();
    // canonical order first, so the shuffle is a function of the set
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eb));
    let mut support = Vec::with_capacity(4);
    let n = pts.len();
    let ball = move_to_front(&mut pts, n, &mut support);
    Ok(ball.expect("nonempty input yields a ball"))
}

fn move_to_front<T: Real>(
    pts: &mut [Vec3<T>],
    end: usize,
    support: &mut Vec<Vec3<T>>,
) -> Option<Ball<T>> {
    let mut ball = ball_on_boundary(support);
    if support.len() == 4 {
        return ball;
    }
    for i in 0..end {
        let p = pts[i];
        let inside = ball.map_or(false, |b| b.contains(p, inclusion_slack(b.radius)));
        if !inside {
            support.push(p);
            ball = move_to_front(pts, i, support);
            support.pop();
            pts[..=i].rotate_right(1);
        }
    }
    ball
}

/// Smallest ball having every support point on its sphere.
fn ball_on_boundary<T: Real>(support: &[Vec3<T>]) -> Option<Ball<T>> {
    match support {
        [] => None,
        [a] => Some(Ball::new(*a, T::zero())),
        [a, b] => Some(two_point_ball(*a, *b)),
        [a, b, c] => Some(circumball3(*a, *b, *c).unwrap_or_else(|| widest_pair_ball(support))),
        [a, b, c, d] => Some(circumball4(*a, *b, *c, *d).unwrap_or_else(|| {
            // near-coplanar support: the largest circumcircle of a triple
            [[*a, *b, *c], [*a, *b, *d], [*a, *c, *d], [*b, *c, *d]]
                .iter()
                .map(|t| circumball3(t[0], t[1], t[2]).unwrap_or_else(|| widest_pair_ball(t)))
                .fold(Ball::new(*a, T::zero()), |acc, b| if b.radius > acc.radius { b } else { acc })
        })),
        _ => unreachable!("support never exceeds four points"),
    }
}

fn two_point_ball<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Ball<T> {
    let half = T::lit(0.5);
    Ball::new(a.lerp(b, half), a.dist(b) * half)
}

fn widest_pair_ball<T: Real>(pts: &[Vec3<T>]) -> Ball<T> {
    let mut best = Ball::new(pts[0], T::zero());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let b = two_point_ball(pts[i], pts[j]);
            if b.radius > best.radius {
                best = b;
            }
        }
    }
    best
}

/// Circumscribed ball of a triangle (center in the triangle's plane).
pub(crate) fn circumball3<T: Real>(a: Vec3<T>, b: Vec3<T>, c: Vec3<T>) -> Option<Ball<T>> {
    let u = b - a;
    let v = c - a;
    let w = u.cross(v);
    let w2 = w.norm_sq();
    let scale = u.norm_sq() * v.norm_sq();
    if w2 <= scale * T::epsilon() * T::lit(64.0) || w2 == T::zero() {
        return None;
    }
    let off = (v * u.norm_sq() - u * v.norm_sq()).cross(w) / (T::lit(2.0) * w2);
    let center = a + off;
    let radius = [a, b, c].iter().map(|p| p.dist(center)).fold(T::zero(), T::max);
    Some(Ball::new(center, radius))
}

/// Circumscribed ball of a tetrahedron.
pub(crate) fn circumball4<T: Real>(
    a: Vec3<T>,
    b: Vec3<T>,
    c: Vec3<T>,
    d: Vec3<T>,
) -> Option<Ball<T>> {
    let u = b - a;
    let v = c - a;
    let w = d - a;
    let vol = u.dot(v.cross(w));
    let scale = u.norm() * v.norm() * w.norm();
    if vol.abs() <= scale * T::epsilon().sqrt() * T::lit(1e-2) || vol == T::zero() {
        return None;
    }
    let off = (v.cross(w) * u.norm_sq() + w.cross(u) * v.norm_sq() + u.cross(v) * w.norm_sq())
        / (T::lit(2.0) * vol);
    let center = a + off;
    let radius = [a, b, c, d].iter().map(|p| p.dist(center)).fold(T::zero(), T::max);
    Some(Ball::new(center, radius))
}

/// Ball around `center` whose sphere touches the nearest point of `points`.
pub fn innermost_empty_ball<T: Real>(
    points: &[Vec3<T>],
    center: Vec3<T>,
    tol: &Tolerance<T>,
) -> Result<Ball<T>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let (lo, hi) = points
        .iter()
        .map(|p| p.dist(center))
        .fold((T::infinity(), T::zero()), |(lo, hi), d| (lo.min(d), hi.max(d)));
    if lo <= tol.len(hi) {
        return Err(Error::CenterOccupied);
    }
    Ok(Ball::new(center, lo))
}
