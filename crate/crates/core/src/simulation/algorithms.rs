use crate::error::{Error, Result};
use crate::formation::{go_to_midpoint, plane_formation_step};
use crate::geometry::{smallest_enclosing_ball, Mat3, Tolerance, Vec3};
use crate::scalar::Real;

/// The Compute phase of an oblivious robot: a destination in the robot's
/// own coordinates from one local observation, `local_obs[me]` being the
/// robot itself.
pub trait Algorithm<T: Real>: Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PlaneFormation;

impl<T: Real> Algorithm<T> for PlaneFormation {
    fn name(&self) -> &'static str {
        "plane_formation"
    }

    fn compute(&self, local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
        plane_formation_step(local_obs, me, tol)
    }
}

/// Go to (just short of) the midpoint of the chosen incident edge while the
/// robots form a regular polyhedron; stay otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct GoToMidpoint {
    pub edge: usize,
}

impl<T: Real> Algorithm<T> for GoToMidpoint {
    fn name(&self) -> &'static str {
        "go_to_midpoint"
    }

    fn compute(&self, local_obs: &[Vec3<T>], me: usize, tol: &Tolerance<T>) -> Result<Vec3<T>> {
        match go_to_midpoint(local_obs, me, self.edge, tol) {
            Err(Error::NotPolyhedral) => Ok(local_obs[me]),
            r => r,
        }
    }
}

/// Turn about the axis through the enclosing ball's center parallel to the
/// robot's own z axis. Keeps every robot's distance to the center, so the
/// configuration never shrinks, but depends on the local frame.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricDrift {
    pub angle: f64,
}

impl Default for SymmetricDrift {
    fn default() -> Self {
        Self { angle: 0.3 }
    }
}

impl<T: Real> Algorithm<T> for SymmetricDrift {
    fn name(&self) -> &'static str {
        "symmetric_drift"
    }

    fn compute(&self, local_obs: &[Vec3<T>], me: usize, _tol: &Tolerance<T>) -> Result<Vec3<T>> {
        let b = smallest_enclosing_ball(local_obs)?.center;
        let turn = Mat3::rotation(Vec3::unit_z(), T::lit(self.angle));
        Ok(b + turn * (local_obs[me] - b))
    }
}
