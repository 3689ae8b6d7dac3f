//! The oblivious per-robot plane formation algorithm and the go-to-midpoint
//! demonstration algorithm.
//!
//! Every function takes one local observation and the observer's index in
//! it, and returns a destination in the same coordinates.

mod breaking;
mod landing;

pub use breaking::{break_candidates, break_symmetry, go_to_midpoint, incident_edges, incident_faces, Face, FaceChoice};
pub use landing::{land, select_destination, select_plane};

use crate::decomposition::{check_distinct, decompose_with, OrbitDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{innermost_empty_ball, smallest_enclosing_ball, Ball, Plane, Tolerance, Vec3};
use crate::scalar::Real;
use crate::solvability::is_unbreakable_size;
use crate::symmetry::RotationGroup;

/// Phase predicates. `t1`: the first orbit can be broken (or the group is
/// not polyhedral); `t2`: the group is cyclic or dihedral; `t3`: all robots
/// lie on one plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Conditions {
    pub t1: bool,
    pub t2: bool,
    pub t3: bool,
}

impl Conditions {
    pub const PLANAR: Conditions = Conditions { t1: true, t2: true, t3: true };
}

/// Everything a robot derives from one observation.
#[derive(Debug, Clone)]
pub(crate) struct Snapshot<'a, T> {
    pub points: &'a [Vec3<T>],
    pub tol: Tolerance<T>,
    pub ball: Ball<T>,
    pub eps: T,
    pub conditions: Conditions,
    /// `None` for coplanar configurations.
    pub decomposition: Option<OrbitDecomposition<T>>,
}

impl<'a, T: Real> Snapshot<'a, T> {
    pub fn new(points: &'a [Vec3<T>], tol: &Tolerance<T>) -> Result<Self> {
        check_distinct(points, tol)?;
        let ball = smallest_enclosing_ball(points)?;
        let eps = tol.len(ball.radius);
        let planar = points.len() <= 3 || Plane::best_fit(points)?.1 <= eps;
        if planar {
            return Ok(Self { points, tol: *tol, ball, eps, conditions: Conditions::PLANAR, decomposition: None });
        }
        let group = RotationGroup::of_points(points, tol)?;
        let d = decompose_with(points, group, tol)?;
        let kind = d.group.kind();
        let t1 = !kind.is_3d() || !is_unbreakable_size(d.orbits[0].len());
        let conditions = Conditions { t1, t2: kind.is_2d(), t3: false };
        Ok(Self { points, tol: *tol, ball, eps, conditions, decomposition: Some(d) })
    }

    pub fn decomposition(&self) -> Result<&OrbitDecomposition<T>> {
        self.decomposition.as_ref().ok_or(Error::AlreadyPlanar)
    }

    pub fn center_occupied(&self) -> bool {
        self.points.iter().any(|p| p.dist(self.ball.center) <= self.eps)
    }

    /// Unsolvable: polyhedral group and every orbit of size 12, 24 or 60.
    pub fn unsolvable(&self) -> bool {
        self.decomposition.as_ref().map_or(false, |d| {
            d.group.kind().is_3d() && !self.center_occupied() && d.orbits.iter().all(|o| is_unbreakable_size(o.len()))
        })
    }
}

pub(crate) fn check_index<T>(points: &[Vec3<T>], me: usize) -> Result<()> {
    if me >= points.len() {
        return Err(Error::IndexOutOfRange { index: me, len: points.len() });
    }
    Ok(())
}

pub fn eval_conditions<T: Real>(points: &[Vec3<T>], tol: &Tolerance<T>) -> Result<Conditions> {
    Ok(Snapshot::new(points, tol)?.conditions)
}

/// First phase: robots of the first breakable orbit move halfway to the
/// center of the innermost empty ball, making their orbit the innermost one.
pub fn prepare<T: Real>(local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
    check_index(local_obs, me)?;
    prepare_in(&Snapshot::new(local_obs, tol)?, me)
}

fn prepare_in<T: Real>(snap: &Snapshot<'_, T>, me: usize) -> Result<Vec3<T>> {
    if snap.conditions.t1 {
        return Err(Error::WrongPhase);
    }
    let d = snap.decomposition()?;
    let s = d.orbits.iter().position(|o| !is_unbreakable_size(o.len())).ok_or(Error::UnsolvableInput)?;
    let here = snap.points[me];
    if d.orbits[s].indices.binary_search(&me).is_err() {
        return Ok(here);
    }
    let b = snap.ball.center;
    let inner = innermost_empty_ball(snap.points, b, &snap.tol)?.radius;
    let dir = (here - b).normalized().ok_or(Error::CenterOccupied)?;
    Ok(b + dir * (inner / T::lit(2.0)))
}

/// Move of the robot sitting on the center of the enclosing ball: along its
/// own `+x` axis to half the radius of the innermost ball of the others.
fn leave_center<T: Real>(snap: &Snapshot<'_, T>, me: usize) -> Result<Vec3<T>> {
    let b = snap.ball.center;
    let here = snap.points[me];
    if here.dist(b) > snap.eps {
        return Ok(here);
    }
    let others: Vec<Vec3<T>> = snap.points.iter().copied().filter(|p| p.dist(b) > snap.eps).collect();
    let inner = innermost_empty_ball(&others, b, &snap.tol)?.radius;
    Ok(b + Vec3::unit_x() * (inner / T::lit(2.0)))
}

/// One Compute phase of the plane formation algorithm.
pub fn plane_formation_step<T: Real>(local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
    check_index(local_obs, me)?;
    let snap = Snapshot::new(local_obs, tol)?;
    let here = local_obs[me];
    let c = snap.conditions;
    if c.t3 {
        return Ok(here);
    }
    if snap.center_occupied() {
        return leave_center(&snap, me);
    }
    if snap.unsolvable() {
        return Err(Error::UnsolvableInput);
    }
    if !c.t1 {
        prepare_in(&snap, me)
    } else if !c.t2 {
        breaking::break_in(&snap, me, FaceChoice::default())
    } else {
        landing::land_in(&snap, me)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::Generator;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn square_is_planar() {
        let p = Generator::Prism(4).points(1.0).unwrap();
        let sq: Vec<Vec3<f64>> = p.into_iter().filter(|v| v.z > 0.0).collect();
        assert_eq!(eval_conditions(&sq, &tol()).unwrap(), Conditions::PLANAR);
        assert_eq!(plane_formation_step(&sq, 2, &tol()).unwrap(), sq[2]);
    }

    #[test]
    fn dodecahedron_breaks_first() {
        let p = Generator::Dodecahedron.points(1.0).unwrap();
        assert_eq!(eval_conditions(&p, &tol()).unwrap(), Conditions { t1: true, t2: false, t3: false });
    }

    #[test]
    fn icosahedron_is_refused() {
        let p = Generator::Icosahedron.points(1.0).unwrap();
        assert!(!eval_conditions(&p, &tol()).unwrap().t1);
        assert_eq!(plane_formation_step(&p, 0, &tol()), Err(Error::UnsolvableInput));
    }

    #[test]
    fn prepare_pulls_the_octahedron_inside() {
        // icosahedron, generic O-orbit and octahedron share the group T
        let parts = [
            (Generator::Icosahedron, 1.0),
            (Generator::Orbit(crate::symmetry::GroupKind::Octahedral, crate::polyhedra::GENERIC_SEED), 1.5),
            (Generator::Octahedron, 2.0),
        ];
        let p = crate::polyhedra::compound(&parts).unwrap();
        let snap = Snapshot::new(&p, &tol()).unwrap();
        assert!(!snap.conditions.t1);
        let d = snap.decomposition().unwrap();
        assert_eq!(d.sizes(), vec![12, 12, 12, 6]);
        let moved: Vec<Vec3<f64>> = (0..p.len()).map(|i| prepare(&p, i, &tol()).unwrap()).collect();
        for (i, m) in moved.iter().enumerate() {
            if i >= 36 {
                assert!((m.norm() - 0.5).abs() < 1e-12);
            } else {
                assert_eq!(*m, p[i]);
            }
        }
        let after = Snapshot::new(&moved, &tol()).unwrap();
        assert_eq!(after.decomposition().unwrap().orbits[0].len(), 6);
        assert!(after.conditions.t1);
        assert_eq!(after.decomposition().unwrap().group.kind(), crate::symmetry::GroupKind::Tetrahedral);
    }

    #[test]
    fn prepare_outside_its_phase_is_an_error() {
        let p = Generator::Cube.points(1.0).unwrap();
        assert_eq!(prepare(&p, 0, &tol()), Err(Error::WrongPhase));
    }

    #[test]
    fn centered_robot_steps_along_its_x_axis() {
        let mut p = Generator::Icosahedron.points(2.0).unwrap();
        p.push(Vec3::zero());
        let d = plane_formation_step(&p, 12, &tol()).unwrap();
        assert!((d - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-12);
        assert_eq!(plane_formation_step(&p, 0, &tol()).unwrap(), p[0]);
    }
}
