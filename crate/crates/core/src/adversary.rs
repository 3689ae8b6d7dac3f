//! Symmetric local frames that keep a configuration's polyhedral symmetry
//! forever, whatever oblivious algorithm the robots run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{smallest_enclosing_ball, RotationOp, Tolerance, Vec3};
use crate::scalar::Real;
use crate::simulation::Frame;
use crate::solvability::{check_solvable, Witness};
use crate::symmetry::{find_subgroup, GroupKind, PointMatcher, RotationGroup};

#[derive(Debug, Clone)]
pub struct AdversaryPlan<T> {
    pub group: GroupKind,
    /// Center the embedded rotations fix.
    pub center: Vec3<T>,
    /// The target group as a subgroup of the configuration's rotation group.
    pub embedding: Vec<RotationOp<T>>,
    /// Robot indices of each orbit under the embedding; the robot at
    /// position `k` is the image of the first one under `embedding[k]`.
    pub orbits: Vec<Vec<usize>>,
    /// Per robot, the index into `embedding` of its group element.
    pub assignment: Vec<usize>,
    /// Per orbit, the frame of its first robot.
    pub base_frames: Vec<Frame<T>>,
    pub frames: Vec<Frame<T>>,
}

/// The group the adversary plays when `points` is unsolvable.
pub fn adversary_group<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<GroupKind> {
    match check_solvable(points, tol)?.witness {
        Witness::Adversary(g) => Ok(g),
        _ => Err(Error::NoAdversary),
    }
}

/// Frames under which all robots of one orbit of `group` see the same thing.
///
/// Robot `g(s)` gets the frame of the orbit's first robot `s` rotated by
/// `g`; base rotations and scales come from `seed`.
pub fn build_symmetric_frames<T: Real>(
    points: &[Vec3<T>],
    group: GroupKind,
    seed: u64,
    tol: &Tolerance<T>,
) -> Result<AdversaryPlan<T>> {
    if !group.is_3d() {
        return Err(Error::InvalidArgument(format!("adversary group must be T, O or I, got {group}")));
    }
    let gamma = RotationGroup::of_points(points, tol)?;
    let embedding = find_subgroup(&gamma.rotations, group, tol).ok_or(Error::NoEmbedding)?;
    let center = gamma.center;
    let matcher = PointMatcher::new(points, tol.len(gamma.radius));

    let n = points.len();
    let mut assignment = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for s in 0..n {
        if assignment[s] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::with_capacity(embedding.len());
        for (k, g) in embedding.iter().enumerate() {
            let j = matcher.find(g.apply(points[s], center)).ok_or(Error::NotClosed)?;
            if assignment[j] != usize::MAX {
                return Err(Error::FoldingTooLarge);
            }
            assignment[j] = k;
            orbit.push(j);
        }
        orbits.push(orbit);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base_frames: Vec<Frame<T>> = orbits.iter().map(|o| Frame::random(&mut rng, points[o[0]])).collect();
    let mut frames = vec![Frame::identity(Vec3::zero()); n];
    for (orbit, base) in orbits.iter().zip(&base_frames) {
        for (k, &j) in orbit.iter().enumerate() {
            let g = embedding[k].matrix();
            frames[j] = Frame { rotation: *g * base.rotation, scale: base.scale, origin: points[j] };
        }
    }
    Ok(AdversaryPlan { group, center, embedding, orbits, assignment, base_frames, frames })
}

/// Largest distance, relative to the enclosing radius, from the image of a
/// point under one of `rotations` (about the enclosing ball's center) to
/// the nearest point of `points`. Zero when every rotation permutes the set.
pub fn closure_defect<T: Real>(points: &[Vec3<T>], rotations: &[RotationOp<T>]) -> Result<T> {
    let ball = smallest_enclosing_ball(points)?;
    let scale = if ball.radius > T::zero() { ball.radius } else { T::one() };
    let mut worst = T::zero();
    for g in rotations {
        for &p in points {
            let q = g.apply(p, ball.center);
            let d = points.iter().map(|&x| x.dist(q)).fold(T::infinity(), T::min);
            worst = worst.max(d);
        }
    }
    Ok(worst / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sort_lex_tol;
    use crate::polyhedra::{compound, Generator, GENERIC_SEED};
    use crate::simulation::observe;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    fn sorted(mut v: Vec<Vec3<f64>>) -> Vec<Vec3<f64>> {
        sort_lex_tol(&mut v, 3, |p, k| p[k], 1e-9);
        v
    }

    fn assert_identical_views(p: &[Vec3<f64>], plan: &AdversaryPlan<f64>) {
        for orbit in &plan.orbits {
            let first = sorted(observe(p, &plan.frames[orbit[0]]));
            for &j in &orbit[1..] {
                let other = sorted(observe(p, &plan.frames[j]));
                for (a, b) in first.iter().zip(&other) {
                    assert!(a.dist(*b) < 1e-12, "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn icosahedron_frames_look_alike() {
        let p = Generator::Icosahedron.points(1.0).unwrap();
        assert_eq!(adversary_group(&p, &tol()).unwrap(), GroupKind::Tetrahedral);
        let plan = build_symmetric_frames(&p, GroupKind::Tetrahedral, 1, &tol()).unwrap();
        assert_eq!(plan.frames.len(), 12);
        assert_eq!(plan.orbits.len(), 1);
        assert_identical_views(&p, &plan);
        assert!(closure_defect(&p, &plan.embedding).unwrap() < 1e-12);
        let moved: Vec<_> = p.iter().map(|&q| q + Vec3::new(0.0, 0.0, 0.1 * q.x)).collect();
        assert!(closure_defect(&moved, &plan.embedding).unwrap() > 1e-3);
    }

    #[test]
    fn cuboctahedron_with_truncated_cube_splits_into_three_t_orbits() {
        let p = compound(&[(Generator::Cuboctahedron, 1.0), (Generator::TruncatedCube, 1.0)]).unwrap();
        let plan = build_symmetric_frames(&p, GroupKind::Tetrahedral, 2, &tol()).unwrap();
        assert_eq!(plan.orbits.iter().map(Vec::len).collect::<Vec<_>>(), vec![12, 12, 12]);
        assert_identical_views(&p, &plan);
    }

    #[test]
    fn generic_o_orbit_uses_o() {
        let p = Generator::Orbit(GroupKind::Octahedral, GENERIC_SEED).points(1.0).unwrap();
        assert_eq!(adversary_group(&p, &tol()).unwrap(), GroupKind::Octahedral);
        let plan = build_symmetric_frames(&p, GroupKind::Octahedral, 3, &tol()).unwrap();
        assert_identical_views(&p, &plan);
    }

    #[test]
    fn icosahedron_with_truncated_icosahedron_uses_t() {
        let p = compound(&[(Generator::Icosahedron, 1.0), (Generator::TruncatedIcosahedron, 2.0)]).unwrap();
        assert_eq!(adversary_group(&p, &tol()).unwrap(), GroupKind::Tetrahedral);
    }

    #[test]
    fn tetrahedron_has_folding_three() {
        let p = Generator::Tetrahedron.points(1.0).unwrap();
        assert_eq!(build_symmetric_frames(&p, GroupKind::Tetrahedral, 0, &tol()).unwrap_err(), Error::FoldingTooLarge);
        assert_eq!(adversary_group(&p, &tol()), Err(Error::NoAdversary));
    }

    #[test]
    fn cube_has_no_icosahedral_embedding() {
        let p = Generator::Cube.points(1.0).unwrap();
        assert_eq!(build_symmetric_frames(&p, GroupKind::Icosahedral, 0, &tol()).unwrap_err(), Error::NoEmbedding);
    }
}
