//! Rotation groups of finite point sets in 3D and plane formation by
//! oblivious, fully synchronous mobile robots.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar for the common double precision case.

pub mod adversary;
pub mod decomposition;
pub mod error;
pub mod formation;
pub mod geometry;
pub mod polyhedra;
pub mod scalar;
pub mod simulation;
pub mod solvability;
pub mod symmetry;

pub use adversary::{adversary_group, build_symmetric_frames, closure_defect, AdversaryPlan};
pub use decomposition::{gamma_decomposition, Orbit, OrbitDecomposition};
pub use error::{Error, Result};
pub use formation::{eval_conditions, plane_formation_step, Conditions, FaceChoice};
pub use geometry::{smallest_enclosing_ball, Ball, Plane, Point3, RotationOp, Tolerance, Vec3};
pub use polyhedra::Generator;
pub use scalar::Real;
pub use simulation::{run, verify_terminal, Algorithm, Frame, Status, Trace};
pub use solvability::{check_solvable, Verdict, Witness};
pub use symmetry::{GroupClass, GroupKind, RotationGroup};

pub type Point3d = Vec3<f64>;
pub type Point3f = Vec3<f32>;
pub type Tolerance64 = Tolerance<f64>;
pub type Tolerance32 = Tolerance<f32>;
pub type Frame64 = Frame<f64>;
pub type Trace64 = Trace<f64>;
