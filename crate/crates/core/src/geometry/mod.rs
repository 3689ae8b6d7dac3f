//! Euclidean primitives shared by every other module: vectors, matrices,
//! balls, planes, rotations and the tolerance that governs all predicates.

mod ball;
mod matrix;
mod plane;
mod rotation;
mod tolerance;
mod vector;

pub use ball::{innermost_empty_ball, smallest_enclosing_ball, Ball};
pub use matrix::{symmetric_eigen, Mat3};
pub use plane::Plane;
pub use rotation::{canonical_direction, rotation_from_vector_pairs, RotationOp, MAX_ORDER};
pub use tolerance::Tolerance;
pub use vector::{centroid, cmp_tol, sort_lex_tol, sort_lex_tol_by, Point3, Vec3};

pub(crate) use vector::cmp_total;

use crate::scalar::Real;

/// Smallest pairwise distance, or `None` for fewer than two points.
pub fn min_pairwise_distance<T: Real>(points: &[Vec3<T>]) -> Option<T> {
    let mut best: Option<T> = None;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].dist(points[j]);
            best = Some(best.map_or(d, |b| b.min(d)));
        }
    }
    best
}

/// All points on one line, within `eps` (absolute).
pub fn is_collinear<T: Real>(points: &[Vec3<T>], eps: T) -> bool {
    let Some(&a) = points.first() else { return true };
    let Some(far) = points
        .iter()
        .copied()
        .max_by(|p, q| cmp_total(p.dist(a), q.dist(a)))
    else {
        return true;
    };
    let Some(dir) = (far - a).normalized() else { return true };
    points.iter().all(|p| (*p - a).reject(dir).norm() <= eps)
}
